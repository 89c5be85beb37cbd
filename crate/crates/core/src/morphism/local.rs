//! Localization of functions at a finite point, and bump functions realizing given germs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::curve::{Curve, Dir, PointRef};
use crate::error::{Error, Result};
use crate::morphism::weight::weight_check;
use crate::morphism::Morphism;
use crate::rat_fun::{PlFunction, Profile};
use crate::random;
use crate::rational::{q, Extended, Rational};
use crate::tropical::Germ;

/// Evaluation of functions at `point` as germs, with slopes listed in `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localization {
    curve: Arc<Curve>,
    point: PointRef,
    order: Vec<Dir>,
}

impl Localization {
    /// `order` defaults to the curve's direction order at the point.
    pub fn new(curve: Arc<Curve>, x: &PointRef, order: Option<Vec<Dir>>) -> Result<Localization> {
        let point = curve.normalize(x)?;
        if curve.is_at_infinity(&point)? {
            return Err(Error::InvalidPoint(format!("{} is at infinity", curve.point_label(&point))));
        }
        let dirs = curve.directions_at(&point)?;
        let order = match order {
            None => dirs,
            Some(o) => {
                let given: BTreeSet<Dir> = o.iter().copied().collect();
                let want: BTreeSet<Dir> = dirs.iter().copied().collect();
                if o.len() != dirs.len() || given != want {
                    return Err(Error::InvalidDirection(format!(
                        "expected a permutation of the {} directions at {}",
                        dirs.len(),
                        curve.point_label(&point)
                    )));
                }
                o
            }
        };
        Ok(Localization { curve, point, order })
    }

    pub fn point(&self) -> &PointRef {
        &self.point
    }

    pub fn order(&self) -> &[Dir] {
        &self.order
    }

    pub fn apply(&self, f: &PlFunction) -> Result<Germ> {
        if *f.curve().as_ref() != *self.curve {
            return Err(Error::CurveMismatch);
        }
        if f.is_neg_inf() {
            return Ok(Germ::neg_inf(self.order.len()));
        }
        let slopes = self.order.iter().map(|d| f.outgoing_slope(&self.point, *d)).collect::<Result<_>>()?;
        Ok(Germ::new(f.eval_finite(&self.point)?, slopes))
    }

    /// A function with the given germ at the point that vanishes away from a small
    /// neighbourhood. `−∞` maps to the constant `−∞`.
    pub fn bump(&self, germ: &Germ) -> Result<PlFunction> {
        let n = self.order.len();
        if germ.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: germ.dim() });
        }
        let Germ::Finite { coeff: a, slopes } = germ else { return Ok(PlFunction::neg_inf(self.curve.clone())) };
        let c = &*self.curve;
        // (edge, start offset, +1/-1, room toward the next vertex)
        let mut arms = Vec::new();
        for d in &self.order {
            let e = c.edge(d.edge);
            let o = match &self.point {
                PointRef::OnEdge(_, t) => t.clone(),
                _ if d.forward => Rational::zero(),
                _ => c.finite_length(d.edge).unwrap().clone(),
            };
            let room = match (&e.length, d.forward) {
                (Extended::Infinite, true) => q(1),
                (Extended::Finite(l), _) if e.is_loop() && !matches!(self.point, PointRef::OnEdge(..)) => l / q(2),
                (Extended::Finite(l), true) => l - &o,
                _ => o.clone(),
            };
            arms.push((d.edge, o, if d.forward { 1 } else { -1 }, room));
        }
        let r = arms.iter().map(|a| a.3.clone()).min().unwrap_or_else(|| q(1)) / q(2);
        let delta = &r / q(2);
        let mut points: BTreeMap<usize, BTreeMap<Rational, Rational>> = BTreeMap::new();
        for ((e, o, sign, _), i) in arms.iter().zip(slopes) {
            let w = a + q(*i) * &delta;
            let pts = points.entry(*e).or_default();
            let at = |d: &Rational| o + q(*sign) * d;
            pts.insert(at(&Rational::zero()), a.clone());
            pts.insert(at(&delta), w.clone());
            if !w.is_zero() {
                let m = (q(2) * w.abs() / &r).ceil().to_integer().to_i64().unwrap().max(1);
                pts.insert(at(&(&delta + w.abs() / q(m))), Rational::zero());
            }
        }
        let mut profiles = Vec::with_capacity(c.edges().len());
        for (i, e) in c.edges().iter().enumerate() {
            let mut pts = points.remove(&i).unwrap_or_default();
            pts.entry(Rational::zero()).or_insert_with(Rational::zero);
            let tail = match &e.length {
                Extended::Finite(l) => {
                    pts.entry(l.clone()).or_insert_with(Rational::zero);
                    None
                }
                Extended::Infinite => Some(0),
            };
            profiles.push(Profile { breakpoints: pts.into_iter().collect(), slope_at_infinity: tail });
        }
        let isolated: BTreeMap<usize, Rational> = (0..c.vertices().len())
            .filter(|&v| c.incident(v).is_empty())
            .map(|v| (v, if self.point == PointRef::Vertex(v) { a.clone() } else { Rational::zero() }))
            .collect();
        PlFunction::from_profiles(self.curve.clone(), profiles, &isolated)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub point: String,
    pub valence: usize,
    pub samples: usize,
    pub matched: usize,
    pub failures: Vec<String>,
    /// Whether asking for germs with one slope more than the valence was rejected.
    pub oversized_rejected: bool,
}

impl SurjectivityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.matched == self.samples && self.oversized_rejected
    }
}

/// Builds bump preimages of random germs at `x` and checks that localization recovers them.
pub fn localization_surjectivity(c: &Arc<Curve>, x: &PointRef, samples: usize, seed: u64) -> Result<SurjectivityReport> {
    let loc = Localization::new(c.clone(), x, None)?;
    let n = loc.order.len();
    let mut rng = random::rng(seed);
    let mut failures = Vec::new();
    let mut matched = 0;
    for _ in 0..samples {
        let germ = Germ::new(random::rational(&mut rng, 20, 6), (0..n).map(|_| rng.gen_range(-6..=6)).collect());
        let got = loc.apply(&loc.bump(&germ)?)?;
        if got == germ {
            matched += 1;
        } else {
            failures.push(format!("bump for {germ} localizes to {got}"));
        }
    }
    let oversized_rejected = loc.bump(&Germ::one(n + 1)).is_err() && {
        let mut order = loc.order.clone();
        order.extend(loc.order.first().copied());
        Localization::new(c.clone(), x, Some(order)).is_err()
    };
    Ok(SurjectivityReport { point: c.point_label(&loc.point), valence: n, samples, matched, failures, oversized_rejected })
}

/// The slope lattice `R × w₁Z × … × wₙZ` of pulled-back germs at a source point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalImage {
    pub point: String,
    pub order: Vec<Dir>,
    pub moduli: Vec<u64>,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl fmt::Display for LocalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("R")?;
        for m in &self.moduli {
            write!(f, " x {m}Z")?;
        }
        Ok(())
    }
}

/// Lists the lattice for a weight at source point `x` and checks it against the
/// germs of pullbacks of `samples`.
pub fn weighted_local_image(m: &Morphism, x: &PointRef, samples: &[PlFunction]) -> Result<LocalImage> {
    if !weight_check(m)?.is_weight {
        return Err(Error::NotAWeight);
    }
    let loc = Localization::new(m.source.clone(), x, None)?;
    let moduli: Vec<u64> = loc.order.iter().map(|d| m.degrees[d.edge]).collect();
    let mut violations = Vec::new();
    for f in samples {
        if let Germ::Finite { slopes, .. } = loc.apply(&m.pullback(f)?)? {
            if slopes.iter().zip(&moduli).any(|(s, &w)| s.unsigned_abs() % w != 0) {
                violations.push(format!("pullback slopes {slopes:?} leave the lattice"));
            }
        }
    }
    Ok(LocalImage { point: m.source.point_label(&loc.point), order: loc.order, moduli, checked: samples.len(), violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{CurveDesc, Subgraph, SubgraphSpec};
    use crate::morphism::map::tests::{doubling, line_fn, real_line};
    use crate::morphism::EdgeTarget;
    use crate::rat_fun::chip_fire;

    fn star() -> Arc<Curve> {
        let mut d = CurveDesc::default().vertex("c", false);
        for k in 0..3 {
            let v = format!("l{k}");
            d = d.vertex(&v, false).edge(&format!("e{k}"), "c", &v, Extended::Finite(q(k + 1)));
        }
        Arc::new(Curve::build(d).unwrap())
    }

    #[test]
    fn chip_fire_germ_at_star_center() {
        let c = star();
        let x = PointRef::Vertex(c.vertex_id("c").unwrap());
        let g = Subgraph::new(c.clone(), &SubgraphSpec { vertices: vec![0], ..Default::default() }).unwrap();
        let f = chip_fire(&g, &Extended::Finite(crate::rational::qq(1, 2))).unwrap();
        let loc = Localization::new(c.clone(), &x, None).unwrap();
        assert_eq!(loc.apply(&f).unwrap(), Germ::new(q(0), vec![-1, -1, -1]));
        assert_eq!(loc.apply(&PlFunction::constant(c.clone(), q(7))).unwrap(), Germ::new(q(7), vec![0, 0, 0]));
        assert_eq!(loc.apply(&PlFunction::neg_inf(c)).unwrap(), Germ::neg_inf(3));
    }

    #[test]
    fn bumps_realize_germs() {
        let c = star();
        let seg_point = PointRef::OnEdge(c.edge_id("e1").unwrap(), q(1));
        let loc = Localization::new(c.clone(), &seg_point, None).unwrap();
        let germ = Germ::new(q(1), vec![3, -4]);
        assert_eq!(loc.apply(&loc.bump(&germ).unwrap()).unwrap(), germ);
        let leaf = PointRef::Vertex(c.vertex_id("l0").unwrap());
        let loc = Localization::new(c.clone(), &leaf, None).unwrap();
        let germ = Germ::new(q(0), vec![5]);
        assert_eq!(loc.apply(&loc.bump(&germ).unwrap()).unwrap(), germ);
        let rep = localization_surjectivity(&c, &PointRef::Vertex(0), 40, 7).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert_eq!(rep.valence, 3);
    }

    #[test]
    fn bump_near_the_base_of_a_loop() {
        let d = CurveDesc::default().vertex("v", false).edge("o", "v", "v", Extended::Finite(q(8)));
        let c = Arc::new(Curve::build(d).unwrap());
        for x in [PointRef::OnEdge(0, q(1)), PointRef::OnEdge(0, q(7)), PointRef::Vertex(0)] {
            let loc = Localization::new(c.clone(), &x, None).unwrap();
            let germ = Germ::new(q(2), vec![6; loc.order().len()]);
            assert_eq!(loc.apply(&loc.bump(&germ).unwrap()).unwrap(), germ);
        }
    }

    #[test]
    fn bad_orders_rejected() {
        let c = star();
        let x = PointRef::Vertex(0);
        let dirs = c.directions_at(&x).unwrap();
        assert!(Localization::new(c.clone(), &x, Some(dirs[..2].to_vec())).is_err());
        let mut rev = dirs.clone();
        rev.reverse();
        assert_eq!(Localization::new(c.clone(), &x, Some(rev.clone())).unwrap().order(), &rev[..]);
        let line = real_line();
        let inf = PointRef::InfinityOf(line.edge_id("r").unwrap());
        assert!(Localization::new(line, &inf, None).is_err());
    }

    #[test]
    fn doubling_local_lattice() {
        let c = real_line();
        let m = doubling(&c);
        let x = PointRef::OnEdge(c.edge_id("r").unwrap(), q(3));
        let samples = [line_fn(&c, 1), line_fn(&c, 3), line_fn(&c, 1).oplus(&PlFunction::constant(c.clone(), q(4))).unwrap()];
        let img = weighted_local_image(&m, &x, &samples).unwrap();
        assert_eq!(img.to_string(), "R x 2Z x 2Z");
        assert!(img.violations.is_empty());
        let id = weighted_local_image(&Morphism::identity(c.clone()), &PointRef::Vertex(0), &samples).unwrap();
        assert_eq!(id.moduli, vec![1, 1]);
    }

    #[test]
    fn mixed_weights_at_weld_point() {
        let mk = |a: i64, b: i64| {
            let d = CurveDesc::default()
                .vertex("p", false)
                .vertex("w", false)
                .vertex("s", false)
                .edge("a", "p", "w", Extended::Finite(q(a)))
                .edge("b", "w", "s", Extended::Finite(q(b)));
            Arc::new(Curve::build(d).unwrap())
        };
        let (src, tgt) = (mk(1, 1), mk(1, 3));
        let m = Morphism {
            source: src.clone(),
            target: tgt,
            vertex_map: vec![0, 1, 2],
            edge_map: vec![EdgeTarget::Edge { edge: 0, reversed: false }, EdgeTarget::Edge { edge: 1, reversed: false }],
            degrees: vec![1, 3],
        };
        let w = PointRef::Vertex(src.vertex_id("w").unwrap());
        let img = weighted_local_image(&m, &w, &[]).unwrap();
        assert_eq!(img.to_string(), "R x 1Z x 3Z");
    }
}
