//! Randomized invariant suites shared by the command line front end and the tests.
//!
//! Every suite is deterministic for a given seed. Cases either pass, fail with a
//! message, or are skipped when the generated instance falls outside the suite's
//! preconditions.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::curve::{disjoint_union, glue, split_components, Curve, CurveDesc, EdgeImage, Embedding, PointRef, Subgraph, SubgraphSpec};
use crate::error::{Error, Result};
use crate::morphism::{weight_check, weight_from_generators, EdgeTarget, Localization, Morphism};
use crate::random::{self, Rng8};
use crate::rat_fun::{
    chip_fire, components_of, div_of, extend, glue_function, is_harmonic_at, module_degree, pseudo_tuple,
    respects_parallel, restrict, witness_conditions, Divisor, PlFunction, Profile, Value, WitnessOutcome,
};
use crate::rational::{q, qq, Extended, Rational};
use crate::realization::{bezout_check, fit_tropical_polynomial, harmonic_realization_check, ingest_balanced, intersect, realize, PolyComplex};
use crate::tropical::{hypersurface2, verify_rn_generators, Degree, Germ, TropPoly, TropValue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failed: usize,
    pub skipped: usize,
    /// The first few failure messages.
    pub messages: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }
}

type SuiteFn = fn(u64) -> SuiteResult;

/// Suite names in execution and report order.
pub const SUITES: &[(&str, SuiteFn)] = &[
    ("tropical-scalar-laws", tropical_scalar_laws),
    ("germ-laws", germ_laws),
    ("function-semifield-laws", function_semifield_laws),
    ("germ-generators", germ_generators),
    ("worked-examples", worked_examples),
    ("degree-invariance", degree_invariance),
    ("localization-homomorphism", localization_homomorphism),
    ("pullback-homomorphism", pullback_homomorphism),
    ("complex-round-trip", complex_round_trip),
    ("polynomial-fit", polynomial_fit),
    ("intersection-bezout", intersection_bezout),
    ("disconnection-witness", disconnection_witness),
    ("restrict-extend", restrict_extend),
    ("glue-agreement", glue_agreement),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs the named suites (all when `names` is empty). With `parallel`, suites run on
/// separate threads; results always come back in registry order.
pub fn run_suites(names: &[String], parallel: bool, seed: u64) -> Result<Vec<SuiteResult>> {
    for n in names {
        if !SUITES.iter().any(|(s, _)| s == n) {
            return Err(Error::Parse(format!("unknown suite {n}; known suites: {}", suite_names().join(", "))));
        }
    }
    let chosen: Vec<(usize, SuiteFn)> = SUITES
        .iter()
        .enumerate()
        .filter(|(_, (n, _))| names.is_empty() || names.iter().any(|m| m == n))
        .map(|(i, (_, f))| (i, *f))
        .collect();
    let seed_for = |i: usize| seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut out: Vec<(usize, SuiteResult)> = if parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = chosen.iter().map(|&(i, f)| (i, s.spawn(move || f(seed_for(i))))).collect();
            handles.into_iter().map(|(i, h)| (i, h.join().expect("suite thread panicked"))).collect()
        })
    } else {
        chosen.iter().map(|&(i, f)| (i, f(seed_for(i)))).collect()
    };
    out.sort_by_key(|(i, _)| *i);
    Ok(out.into_iter().map(|(_, r)| r).collect())
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteResult> {
    Ok(run_suites(&[name.to_string()], false, seed)?.remove(0))
}

struct Fail(String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(format!("error: {e}"))
    }
}

type Case = std::result::Result<(), Fail>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Case {
    if cond {
        Ok(())
    } else {
        Err(Fail(msg()))
    }
}

const KEEP_MESSAGES: usize = 8;

struct Tally(SuiteResult);

impl Tally {
    fn new(name: &str) -> Self {
        Tally(SuiteResult { name: name.into(), cases: 0, failed: 0, skipped: 0, messages: Vec::new() })
    }

    fn case(&mut self, f: impl FnOnce() -> Case) {
        self.0.cases += 1;
        if let Err(Fail(m)) = f() {
            self.0.failed += 1;
            if self.0.messages.len() < KEEP_MESSAGES {
                self.0.messages.push(m);
            }
        }
    }

    fn fail(&mut self, msg: String) {
        self.case(|| Err(Fail(msg)));
    }

    fn skip(&mut self) {
        self.0.skipped += 1;
    }

    fn done(self) -> SuiteResult {
        self.0
    }
}

fn trop(r: &mut Rng8) -> TropValue {
    if r.gen_bool(0.1) {
        TropValue::NegInf
    } else {
        TropValue::Finite(random::rational(r, 8, 3))
    }
}

fn as_option(v: &TropValue) -> Option<Rational> {
    match v {
        TropValue::NegInf => None,
        TropValue::Finite(x) => Some(x.clone()),
    }
}

fn tropical_scalar_laws(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("tropical-scalar-laws");
    let (zero, one) = (TropValue::zero(), TropValue::one());
    for _ in 0..1000 {
        let (a, b, c) = (trop(&mut r), trop(&mut r), trop(&mut r));
        t.case(|| {
            let ctx = || format!("a={a}, b={b}, c={c}");
            ensure(a.oplus(&b) == b.oplus(&a), || format!("addition not commutative: {}", ctx()))?;
            ensure(a.otimes(&b) == b.otimes(&a), || format!("multiplication not commutative: {}", ctx()))?;
            ensure(a.oplus(&b).oplus(&c) == a.oplus(&b.oplus(&c)), || format!("addition not associative: {}", ctx()))?;
            ensure(a.otimes(&b).otimes(&c) == a.otimes(&b.otimes(&c)), || format!("multiplication not associative: {}", ctx()))?;
            ensure(a.otimes(&b.oplus(&c)) == a.otimes(&b).oplus(&a.otimes(&c)), || format!("distributivity fails: {}", ctx()))?;
            ensure(a.oplus(&a) == a, || format!("addition not idempotent: {}", ctx()))?;
            ensure(a.oplus(&zero) == a && a.otimes(&one) == a, || format!("identities fail: {}", ctx()))?;
            ensure(a.otimes(&zero) == zero, || format!("zero does not absorb: {}", ctx()))?;
            match a.inv() {
                Ok(i) => ensure(!a.is_neg_inf() && a.otimes(&i) == one, || format!("bad inverse: {}", ctx()))?,
                Err(_) => ensure(a.is_neg_inf(), || format!("finite value without inverse: {}", ctx()))?,
            }
            let (x, y) = (as_option(&a), as_option(&b));
            ensure(as_option(&a.oplus(&b)) == x.clone().max(y.clone()), || format!("sum is not the max: {}", ctx()))?;
            let prod = x.zip(y).map(|(x, y)| x + y);
            ensure(as_option(&a.otimes(&b)) == prod, || format!("product is not the sum: {}", ctx()))
        });
    }
    t.done()
}

fn germ(r: &mut Rng8, n: usize) -> Germ {
    if r.gen_bool(0.1) {
        Germ::neg_inf(n)
    } else {
        Germ::new(qq(r.gen_range(-4..=4), 2), (0..n).map(|_| r.gen_range(-3..=3)).collect())
    }
}

/// Values of a germ a short distance `s` along each direction.
fn germ_samples(g: &Germ, s: &Rational) -> Vec<Option<Rational>> {
    match g {
        Germ::NegInf { n } => vec![None; *n],
        Germ::Finite { coeff, slopes } => slopes.iter().map(|k| Some(coeff + q(*k) * s)).collect(),
    }
}

fn germ_laws(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("germ-laws");
    // Coefficients differ by at least 1/2 and slopes by at most 6, so 1/64 is short enough.
    let s = qq(1, 64);
    for _ in 0..1000 {
        let n = r.gen_range(1..=5);
        let (a, b, c) = (germ(&mut r, n), germ(&mut r, n), germ(&mut r, n));
        t.case(|| {
            let ctx = || format!("a={a}, b={b}, c={c}");
            let one = Germ::one(n);
            let zero = Germ::neg_inf(n);
            ensure(a.oplus(&b)? == b.oplus(&a)?, || format!("addition not commutative: {}", ctx()))?;
            ensure(a.otimes(&b)? == b.otimes(&a)?, || format!("multiplication not commutative: {}", ctx()))?;
            ensure(a.oplus(&b)?.oplus(&c)? == a.oplus(&b.oplus(&c)?)?, || format!("addition not associative: {}", ctx()))?;
            ensure(a.otimes(&b)?.otimes(&c)? == a.otimes(&b.otimes(&c)?)?, || format!("multiplication not associative: {}", ctx()))?;
            ensure(a.otimes(&b.oplus(&c)?)? == a.otimes(&b)?.oplus(&a.otimes(&c)?)?, || format!("distributivity fails: {}", ctx()))?;
            ensure(a.oplus(&a)? == a && a.oplus(&zero)? == a && a.otimes(&one)? == a, || format!("identities fail: {}", ctx()))?;
            if !a.is_neg_inf() {
                ensure(a.otimes(&a.inv()?)? == one, || format!("bad inverse: {}", ctx()))?;
                ensure(a.pow(-2)? == a.inv()?.otimes(&a.inv()?)?, || format!("negative power: {}", ctx()))?;
            }
            let sum = germ_samples(&a.oplus(&b)?, &s);
            let pointwise: Vec<_> = germ_samples(&a, &s).into_iter().zip(germ_samples(&b, &s)).map(|(x, y)| x.max(y)).collect();
            ensure(sum == pointwise, || format!("sum disagrees with the pointwise max of nearby values: {}", ctx()))
        });
    }
    t.done()
}

fn function_semifield_laws(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("function-semifield-laws");
    for _ in 0..1000 {
        let c = random::connected_curve(&mut r, 3);
        let (f, g, h) = (random::function(&mut r, &c), random::function(&mut r, &c), random::function(&mut r, &c));
        let pts: Vec<PointRef> = (0..3).map(|_| random::finite_point(&mut r, &c)).collect();
        t.case(|| {
            let zero = PlFunction::neg_inf(c.clone());
            let one = PlFunction::constant(c.clone(), q(0));
            ensure(f.oplus(&g)? == g.oplus(&f)?, || "addition not commutative".into())?;
            ensure(f.otimes(&g)? == g.otimes(&f)?, || "multiplication not commutative".into())?;
            ensure(f.oplus(&g)?.oplus(&h)? == f.oplus(&g.oplus(&h)?)?, || "addition not associative".into())?;
            ensure(f.otimes(&g)?.otimes(&h)? == f.otimes(&g.otimes(&h)?)?, || "multiplication not associative".into())?;
            ensure(f.otimes(&g.oplus(&h)?)? == f.otimes(&g)?.oplus(&f.otimes(&h)?)?, || "distributivity fails".into())?;
            ensure(f.oplus(&f)? == f && f.oplus(&zero)? == f && f.otimes(&one)? == f, || "identities fail".into())?;
            ensure(f.otimes(&f.inv()?)? == one, || "bad inverse".into())?;
            ensure(f.otimes(&zero)? == zero, || "zero does not absorb".into())?;
            let (sum, prod) = (f.oplus(&g)?, f.otimes(&g)?);
            for p in &pts {
                let (a, b) = (f.eval_finite(p)?, g.eval_finite(p)?);
                let label = c.point_label(p);
                ensure(sum.eval(p)? == Value::Finite(a.clone().max(b.clone())), || format!("sum at {label} is not the max"))?;
                ensure(prod.eval(p)? == Value::Finite(a + b), || format!("product at {label} is not the sum"))?;
            }
            Ok(())
        });
    }
    t.done()
}

fn germ_generators(_seed: u64) -> SuiteResult {
    let mut t = Tally::new("germ-generators");
    for n in 1..=8 {
        t.case(|| {
            let rep = verify_rn_generators(n)?;
            let bad: Vec<_> = rep.identities_checked.iter().filter(|c| !c.holds).map(|c| c.identity.clone()).collect();
            ensure(rep.pass && bad.is_empty(), || format!("n={n}: identities fail: {}", bad.join("; ")))
        });
    }
    t.case(|| {
        let lhs = Germ::new(q(0), vec![1, -1]).oplus(&Germ::new(q(0), vec![0, 0]))?;
        ensure(lhs == Germ::new(q(0), vec![1, 0]), || format!("(0,(1,-1)) + (0,(0,0)) gave {lhs}"))
    });
    t.done()
}

/// The real line with a vertex `o` and rays `l`, `r` in classes `left`, `right`.
pub fn real_line() -> Arc<Curve> {
    Arc::new(Curve::build(CurveDesc::default().vertex("o", false).ray("l", "o", "left").ray("r", "o", "right")).expect("valid"))
}

/// `x ↦ k·x` on a curve containing rays `l` and `r` out of one vertex, `0` elsewhere.
pub fn linear_on_line(c: &Arc<Curve>, l: usize, r: usize, k: i64) -> Result<PlFunction> {
    let profiles = (0..c.edges().len())
        .map(|e| {
            let s = if e == l { -k } else if e == r { k } else { 0 };
            Profile::affine(&c.edge(e).length, q(0), s)
        })
        .collect();
    PlFunction::from_profiles(c.clone(), profiles, &BTreeMap::new())
}

/// The disjoint union of two real lines whose left rays share one class and whose
/// right rays share another.
pub fn doubled_line() -> Result<Arc<Curve>> {
    let line = real_line();
    let mut shared = BTreeMap::new();
    for i in 0..2 {
        shared.insert((i, "left".to_string()), "left".to_string());
        shared.insert((i, "right".to_string()), "right".to_string());
    }
    Ok(Arc::new(disjoint_union(&[&line, &line], Some(&shared))?))
}

fn worked_examples(_seed: u64) -> SuiteResult {
    let mut t = Tally::new("worked-examples");
    let c = real_line();
    let (l, r) = (c.edge_id("l").unwrap(), c.edge_id("r").unwrap());
    t.case(|| {
        let f = linear_on_line(&c, l, r, 2)?;
        let expected = Divisor::new(c.clone(), [(PointRef::Vertex(c.edge(l).v), 2), (PointRef::Vertex(c.edge(r).v), -2)])?;
        let d = div_of(&f)?;
        ensure(d == expected, || format!("div(2x) = {:?}", d.labelled()))
    });
    t.case(|| {
        let d1 = module_degree(&[linear_on_line(&c, l, r, 1)?])?;
        let d2 = module_degree(&[linear_on_line(&c, l, r, 2)?])?;
        ensure(d1 == Degree::Finite(1) && d2 == Degree::Finite(2), || format!("module degrees {d1} and {d2}, expected 1 and 2"))
    });
    t.case(|| {
        let double = Morphism { degrees: vec![2, 2], ..Morphism::identity(c.clone()) };
        for (m, w) in [(Morphism::identity(c.clone()), 1u64), (double.clone(), 2)] {
            let rep = weight_check(&m)?;
            let ok = rep.is_weight && rep.edge_weights.as_ref().is_some_and(|ws| ws.values().all(|&x| x == w));
            ensure(ok, || format!("weight check for degree {w}: {rep:?}"))?;
            let gen = linear_on_line(&c, l, r, w as i64)?;
            for e in [l, r] {
                let got = weight_from_generators(std::slice::from_ref(&gen), e)?;
                ensure(got == w, || format!("weight from generators on {}: {got}, expected {w}", c.edge(e).id))?;
            }
        }
        let pulled = double.pullback(&linear_on_line(&c, l, r, 1)?)?;
        ensure(pulled == linear_on_line(&c, l, r, 2)?, || "pullback of x under doubling is not 2x".into())
    });
    t.case(|| {
        let u = doubled_line()?;
        let (l0, r0) = (u.edge_id("0.l")?, u.edge_id("0.r")?);
        let f = linear_on_line(&u, l0, r0, 1)?;
        let glued = pseudo_tuple(&u, &components_of(&f)?)?;
        ensure(glued == f, || "pseudo tuple of (x, 0) does not reassemble it".into())?;
        ensure(respects_parallel(&f).is_err(), || "(x, 0) wrongly respects the parallel rays".into())
    });
    t.done()
}

fn degree_invariance(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("degree-invariance");
    for _ in 0..200 {
        let c = random::connected_curve(&mut r, 3);
        let mut gens: Vec<PlFunction> = (0..r.gen_range(1..=3)).map(|_| random::function(&mut r, &c)).collect();
        let before = module_degree(&gens);
        for _ in 0..r.gen_range(1..=2) {
            let extra = random::combination(&mut r, &gens);
            gens.push(extra);
        }
        let after = module_degree(&gens);
        t.case(|| ensure(before == after, || format!("degree {before:?} became {after:?} after adding combinations")));
    }
    t.done()
}

fn localization_homomorphism(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("localization-homomorphism");
    for _ in 0..500 {
        let c = random::connected_curve(&mut r, 4);
        let x = random::finite_point(&mut r, &c);
        let (f, g) = (random::function(&mut r, &c), random::function(&mut r, &c));
        let coeff = random::rational(&mut r, 10, 4);
        let extra: Vec<i64> = (0..8).map(|_| r.gen_range(-5..=5)).collect();
        t.case(|| {
            let label = c.point_label(&x);
            let loc = Localization::new(c.clone(), &x, None)?;
            let (lf, lg) = (loc.apply(&f)?, loc.apply(&g)?);
            ensure(loc.apply(&f.oplus(&g)?)? == lf.oplus(&lg)?, || format!("sum not preserved at {label}"))?;
            ensure(loc.apply(&f.otimes(&g)?)? == lf.otimes(&lg)?, || format!("product not preserved at {label}"))?;
            ensure(loc.apply(&f.inv()?)? == lf.inv()?, || format!("inverse not preserved at {label}"))?;
            let balanced = lf.omega()? == 0;
            let harmonic = is_harmonic_at(&f, &x)?;
            ensure(balanced == harmonic, || format!("omega test {balanced} but harmonic test {harmonic} at {label}"))?;
            let target = Germ::new(coeff.clone(), extra[..loc.order().len()].to_vec());
            let back = loc.apply(&loc.bump(&target)?)?;
            ensure(back == target, || format!("bump for {target} localizes to {back} at {label}"))
        });
    }
    t.done()
}

fn loopless_curve(r: &mut Rng8) -> Arc<Curve> {
    loop {
        let c = random::connected_curve(r, 4);
        if !c.edges().iter().any(|e| e.is_loop()) {
            return c;
        }
    }
}

/// A copy of `c` whose edges are stretched by random degrees, with the covering map.
/// Rays of one class share a degree.
fn stretched(r: &mut Rng8, c: &Arc<Curve>) -> Result<Morphism> {
    let mut class_deg: BTreeMap<String, u64> = BTreeMap::new();
    let mut degrees = Vec::new();
    let mut desc = c.to_desc();
    for (i, e) in c.edges().iter().enumerate() {
        let d = match c.ray_class(i) {
            Some(cl) => *class_deg.entry(cl.to_string()).or_insert_with(|| r.gen_range(1..=3)),
            None => r.gen_range(1..=3),
        };
        if let Extended::Finite(l) = &e.length {
            desc.edges[i].length = Extended::Finite(l * q(d as i64));
        }
        degrees.push(d);
    }
    let target = Arc::new(Curve::build(desc)?);
    let vertex_map = c.vertices().iter().map(|v| target.vertex_id(&v.id)).collect::<Result<_>>()?;
    let edge_map = c
        .edges()
        .iter()
        .map(|e| Ok(EdgeTarget::Edge { edge: target.edge_id(&e.id)?, reversed: false }))
        .collect::<Result<_>>()?;
    Ok(Morphism { source: c.clone(), target, vertex_map, edge_map, degrees })
}

fn pullback_homomorphism(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("pullback-homomorphism");
    for _ in 0..150 {
        let c = loopless_curve(&mut r);
        let (phi, psi) = match stretched(&mut r, &c).and_then(|phi| Ok((stretched(&mut r, &phi.target)?, phi))) {
            Ok((psi, phi)) => (phi, psi),
            Err(e) => {
                t.fail(format!("could not build test morphisms: {e}"));
                continue;
            }
        };
        let (f, g) = (random::function(&mut r, &psi.target), random::function(&mut r, &psi.target));
        let pts: Vec<PointRef> = (0..3).map(|_| random::finite_point(&mut r, &c)).collect();
        t.case(|| {
            for m in [&phi, &psi] {
                let rep = m.validate();
                ensure(rep.ok, || format!("stretch map invalid: {:?}", rep.violations))?;
            }
            let both = phi.then(&psi)?;
            ensure(both.validate().ok, || "composite is invalid".into())?;
            let pf = both.pullback(&f)?;
            ensure(pf == phi.pullback(&psi.pullback(&f)?)?, || "pullback of a composite is not the composite of pullbacks".into())?;
            let pg = both.pullback(&g)?;
            ensure(both.pullback(&f.oplus(&g)?)? == pf.oplus(&pg)?, || "pullback does not preserve sums".into())?;
            ensure(both.pullback(&f.otimes(&g)?)? == pf.otimes(&pg)?, || "pullback does not preserve products".into())?;
            ensure(both.pullback(&f.inv()?)? == pf.inv()?, || "pullback does not preserve inverses".into())?;
            for p in &pts {
                let image = both.apply(p)?;
                ensure(pf.eval(p)? == f.eval(&image)?, || format!("pullback at {} is not f at the image", c.point_label(p)))?;
            }
            Ok(())
        });
    }
    t.done()
}

fn monomials(terms: &[(i64, i64, i64)]) -> TropPoly {
    TropPoly::from_terms(2, terms.iter().map(|&(c, i, j)| (q(c), vec![i, j]))).expect("two variables")
}

/// Fixed test library: the tropical line, the line with weight-two rays and a smooth conic,
/// each with its expected degree.
pub fn library() -> Vec<(&'static str, TropPoly, u64)> {
    let conic: Vec<(i64, i64, i64)> =
        [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)].iter().map(|&(i, j)| (-(i * i + i * j + j * j), i, j)).collect();
    vec![
        ("line", monomials(&[(0, 0, 0), (0, 1, 0), (0, 0, 1)]), 1),
        ("weight-two line", monomials(&[(0, 0, 0), (0, 2, 0), (0, 0, 2)]), 2),
        ("conic", monomials(&conic), 2),
    ]
}

/// Hypersurface of a random polynomial with up to six terms. Polynomials whose
/// curve is disconnected (collinear exponents) are counted in `skipped`.
fn random_curve_complex(r: &mut Rng8, skipped: &mut usize) -> Result<(TropPoly, PolyComplex)> {
    loop {
        let terms = r.gen_range(2..=6);
        let p = random::poly2(r, terms, 3);
        let k = hypersurface2(&p, None)?;
        if k.is_connected() {
            return Ok((p, k));
        }
        *skipped += 1;
    }
}

fn round_trip(k: &PolyComplex) -> Case {
    let ing = ingest_balanced(k)?;
    let rep = harmonic_realization_check(&ing.realization)?;
    ensure(rep.all_harmonic, || "ingested coordinates are not harmonic everywhere".into())?;
    let again = realize(&ing.curve, &ing.fs)?;
    ensure(again.image.same_as(k), || "realization does not reproduce the complex".into())
}

fn complex_round_trip(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("complex-round-trip");
    for (name, p, _) in library() {
        t.case(|| round_trip(&hypersurface2(&p, None)?).map_err(|Fail(m)| Fail(format!("{name}: {m}"))));
    }
    let mut skipped = 0;
    for _ in 0..30 {
        match random_curve_complex(&mut r, &mut skipped) {
            Ok((p, k)) => t.case(|| round_trip(&k).map_err(|Fail(m)| Fail(format!("{p}: {m}")))),
            Err(e) => t.fail(format!("hypersurface failed: {e}")),
        }
    }
    (0..skipped).for_each(|_| t.skip());
    t.done()
}

fn fit_case(k: &PolyComplex, expected: Option<u64>) -> Case {
    let p = fit_tropical_polynomial(k)?;
    ensure(hypersurface2(&p, None)?.same_as(k), || format!("hypersurface of the fit {p} differs"))?;
    if let Some(d) = expected {
        let got = p.degree()?;
        ensure(got == Degree::Finite(d), || format!("fitted degree {got}, expected {d}"))?;
    }
    Ok(())
}

fn polynomial_fit(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("polynomial-fit");
    for (name, p, d) in library() {
        t.case(|| fit_case(&hypersurface2(&p, None)?, Some(d)).map_err(|Fail(m)| Fail(format!("{name}: {m}"))));
    }
    let mut skipped = 0;
    for _ in 0..30 {
        match random_curve_complex(&mut r, &mut skipped) {
            Ok((p, k)) => t.case(|| fit_case(&k, None).map_err(|Fail(m)| Fail(format!("{p}: {m}")))),
            Err(e) => t.fail(format!("hypersurface failed: {e}")),
        }
    }
    (0..skipped).for_each(|_| t.skip());
    t.done()
}

fn offset(r: &mut Rng8) -> Vec<Rational> {
    vec![random::rational(r, 9, 4), random::rational(r, 9, 4)]
}

fn sorted_crossings(k1: &PolyComplex, k2: &PolyComplex) -> Result<Vec<(Vec<Rational>, u64)>> {
    let mut v: Vec<_> = intersect(k1, k2)?.into_iter().map(|c| (c.point, c.mult)).collect();
    v.sort();
    Ok(v)
}

/// Translates `k2` until it meets `k1` transversally.
fn transversal_translate(r: &mut Rng8, k1: &PolyComplex, k2: &PolyComplex) -> Option<PolyComplex> {
    (0..25).map(|_| k2.translate(&offset(r))).find(|k| !matches!(intersect(k1, k), Err(Error::NonTransversal { .. })))
}

fn intersection_bezout(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("intersection-bezout");
    let lib: Vec<PolyComplex> = library().iter().map(|(_, p, _)| hypersurface2(p, None).expect("library complex")).collect();
    for (a, b, total) in [(0, 0, 1u64), (1, 0, 2)] {
        match transversal_translate(&mut r, &lib[a], &lib[b]) {
            Some(k2) => t.case(|| {
                let sum: u64 = intersect(&lib[a], &k2)?.iter().map(|c| c.mult).sum();
                ensure(sum == total, || format!("library pair ({a}, {b}) has total multiplicity {sum}, expected {total}"))
            }),
            None => t.fail(format!("no transversal translate for library pair ({a}, {b})")),
        }
    }
    let mut skipped = 0;
    let mut pairs = 0;
    while pairs < 60 {
        let k1 = if r.gen_bool(0.3) {
            lib[r.gen_range(0..lib.len())].clone()
        } else {
            match random_curve_complex(&mut r, &mut skipped) {
                Ok((_, k)) => k,
                Err(e) => {
                    t.fail(format!("hypersurface failed: {e}"));
                    break;
                }
            }
        };
        let Ok((_, base)) = random_curve_complex(&mut r, &mut skipped) else { continue };
        let Some(k2) = transversal_translate(&mut r, &k1, &base) else {
            t.skip();
            continue;
        };
        pairs += 1;
        let shift = offset(&mut r);
        t.case(|| {
            let b = bezout_check(&k1, &k2)?;
            ensure(b.ok, || format!("total multiplicity {} exceeds degree product {}", b.sum, b.bound))?;
            let forward = sorted_crossings(&k1, &k2)?;
            ensure(forward == sorted_crossings(&k2, &k1)?, || "intersection is not symmetric".into())?;
            let moved = sorted_crossings(&k1.translate(&shift), &k2.translate(&shift))?;
            let expected: Vec<_> =
                forward.iter().map(|(p, m)| (p.iter().zip(&shift).map(|(a, s)| a + s).collect::<Vec<_>>(), *m)).collect();
            ensure(moved == expected, || "intersection does not commute with translation".into())
        });
    }
    (0..skipped).for_each(|_| t.skip());
    t.done()
}

fn disconnection_witness(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("disconnection-witness");
    for _ in 0..100 {
        let parts: Vec<Arc<Curve>> = (0..r.gen_range(2..=3)).map(|_| random::connected_curve(&mut r, 3)).collect();
        let refs: Vec<&Curve> = parts.iter().map(|c| &**c).collect();
        t.case(|| {
            let c = Arc::new(disjoint_union(&refs, None)?);
            let WitnessOutcome::Found { s, a, conditions } = crate::rat_fun::disconnect_witness(&c)? else {
                return Err(Fail("no witness on a disconnected curve".into()));
            };
            ensure(conditions.all(), || "witness conditions fail".into())?;
            ensure(&a[0] - &a[1] == &a[1] - &a[2] && a[0] > a[1], || "constants are not equally spaced and decreasing".into())?;
            // Pointwise oracle: the identity holds at v iff v ≤ a3 or v ≥ a1.
            let (mut below, mut above) = (false, false);
            for sc in split_components(&c) {
                let p = sc.vertex_points[0].clone();
                let v = s.eval_finite(&p)?;
                let lhs = v.clone().max(a[0].clone()) + v.clone().min(a[1].clone());
                let rhs = &a[0] - &a[1] + v.clone().max(a[1].clone()) + v.clone().min(a[2].clone());
                ensure(lhs == rhs, || format!("identity fails at {}", c.point_label(&p)))?;
                below |= v < a[2];
                above |= v > a[0];
            }
            ensure(below && above, || "witness does not take values on both sides".into())
        });
    }
    let consts: Vec<[Rational; 3]> = [(-2, 1, 2), (0, 1, 1), (1, 2, 1), (3, 1, 2), (0, 2, 1)]
        .iter()
        .map(|&(a, n, d)| {
            let e = qq(n, d);
            [q(a), q(a) - &e, q(a) - q(2) * e]
        })
        .collect();
    for _ in 0..100 {
        let c = random::connected_curve(&mut r, 4);
        let mut cands: Vec<PlFunction> = (0..3).map(|_| random::function(&mut r, &c)).collect();
        for _ in 0..2 {
            let g = random::subgraph(&mut r, &c);
            match chip_fire(&g, &Extended::Finite(q(r.gen_range(1..=4)))) {
                Ok(f) => cands.push(f),
                Err(e) => t.fail(format!("chip firing failed: {e}")),
            }
        }
        t.case(|| {
            for s in &cands {
                for a in &consts {
                    let w = witness_conditions(s, a)?;
                    ensure(!w.all(), || format!("a witness shape was found on a connected curve with constants {a:?}"))?;
                }
            }
            Ok(())
        });
    }
    t.done()
}

fn restrict_extend(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("restrict-extend");
    let mut attempts = 0;
    while t.0.cases < 200 && attempts < 1000 {
        attempts += 1;
        let c = random::connected_curve(&mut r, 4);
        let g = random::subgraph(&mut r, &c);
        let f = random::function(&mut r, &c);
        let parts = match restrict(&f, &g) {
            Ok(p) => p,
            Err(e) => {
                t.fail(format!("restriction failed: {e}"));
                continue;
            }
        };
        let e = match extend(&parts, &g, -1) {
            Err(Error::SlopeTooShallow { min_abs, .. }) => extend(&parts, &g, -min_abs),
            other => other,
        };
        match e {
            Ok(e) => t.case(|| ensure(restrict(&e, &g)? == parts, || "restricting the extension changed the parts".into())),
            // The parts fix slopes on rays of a class that leaves the subgraph; no extension exists.
            Err(Error::ParallelViolation { .. }) => t.skip(),
            Err(err) => t.fail(format!("extension failed: {err}")),
        }
    }
    t.done()
}

fn glue_agreement(seed: u64) -> SuiteResult {
    let mut r = random::rng(seed);
    let mut t = Tally::new("glue-agreement");
    let mut cases = 0;
    while cases < 150 {
        let c = random::connected_curve(&mut r, 4);
        let finite: Vec<usize> = (0..c.edges().len()).filter(|&e| !c.edge(e).is_infinite() && !c.edge(e).is_loop()).collect();
        if finite.is_empty() {
            continue;
        }
        let e = finite[r.gen_range(0..finite.len())];
        let len = c.finite_length(e).unwrap().clone() / q(2);
        let shared =
            Arc::new(Curve::build(CurveDesc::default().vertex("S", false).vertex("T", false).edge("s", "S", "T", Extended::Finite(len.clone()))).unwrap());
        let emb = match (c.normalize(&PointRef::OnEdge(e, q(0))), c.normalize(&PointRef::OnEdge(e, len.clone()))) {
            (Ok(a), Ok(b)) => Embedding { vertices: vec![a, b], edges: vec![EdgeImage { edge: e, start: q(0), reversed: false }] },
            _ => continue,
        };
        let glued = match glue(c.clone(), c.clone(), shared, emb.clone(), emb) {
            Ok(g) => g,
            Err(err) => {
                t.fail(format!("gluing failed: {err}"));
                continue;
            }
        };
        cases += 1;
        let h1 = random::function(&mut r, &c);
        // h2 = h1 ⊙ CF(G): agrees with h1 on the shared segment exactly when G contains it.
        let g = match r.gen_range(0..3) {
            0 => Subgraph::new(c.clone(), &SubgraphSpec { intervals: vec![(e, q(0), Extended::Finite(len.clone()))], ..Default::default() }),
            1 => Subgraph::new(c.clone(), &SubgraphSpec { intervals: vec![(e, &len / q(2), Extended::Finite(&len / q(2)))], ..Default::default() }),
            _ => Ok(random::subgraph(&mut r, &c)),
        };
        let grid: Vec<PointRef> = (0..=64).map(|i| c.normalize(&PointRef::OnEdge(e, &len * qq(i, 64)))).collect::<Result<_>>().unwrap();
        let samples: Vec<PointRef> = (0..4).map(|_| random::finite_point(&mut r, &c)).collect();
        t.case(|| {
            let g = g?;
            let h2 = h1.otimes(&chip_fire(&g, &Extended::Finite(q(1)))?)?;
            // Gaps in G have length at least len/4, so the grid sees every one of them.
            let mut agree = true;
            for p in &grid {
                agree &= h1.eval(p)? == h2.eval(p)?;
            }
            match glue_function(&h1, &h2, &glued) {
                Ok(h) => {
                    ensure(agree, || "gluing accepted functions that differ on the shared segment".into())?;
                    for (side, f) in [(0, &h1), (1, &h2)] {
                        for p in &samples {
                            ensure(h.eval(&glued.map(side, p)?)? == f.eval(p)?, || format!("glued function differs from side {side}"))?;
                        }
                    }
                    Ok(())
                }
                Err(Error::GlueMismatch { point, .. }) => {
                    ensure(!agree, || format!("gluing rejected functions that agree on the shared segment (at {point})"))
                }
                Err(err) => Err(err.into()),
            }
        });
    }
    t.done()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique() {
        let mut n = suite_names();
        n.sort();
        n.dedup();
        assert_eq!(n.len(), SUITES.len());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suites(&["nope".into()], false, 0).is_err());
    }

    #[test]
    fn worked_examples_pass() {
        let r = run_suite("worked-examples", 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.cases, 4);
    }

    #[test]
    fn parallel_matches_serial() {
        let names = vec!["germ-generators".to_string(), "worked-examples".to_string()];
        assert_eq!(run_suites(&names, true, 5).unwrap(), run_suites(&names, false, 5).unwrap());
    }
}
