//! Seeded generators for curves, points, subgraphs, functions and polynomials.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{Curve, CurveDesc, PointRef, Subgraph, SubgraphSpec};
use crate::rat_fun::{chip_fire, PlFunction};
use crate::rational::{q, qq, Extended, Rational};
use crate::tropical::TropPoly;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(r: &mut Rng8, max_num: i64, max_den: i64) -> Rational {
    qq(r.gen_range(-max_num..=max_num), r.gen_range(1..=max_den))
}

fn length(r: &mut Rng8) -> Extended {
    Extended::Finite(qq(r.gen_range(1..=6), r.gen_range(1..=2)))
}

/// A connected curve with up to `max_vertices` finite vertices, a few extra edges
/// (loops included) and up to three rays drawn from two class labels.
pub fn connected_curve(r: &mut Rng8, max_vertices: usize) -> Arc<Curve> {
    let n = r.gen_range(1..=max_vertices.max(1));
    let mut d = CurveDesc::default();
    for i in 0..n {
        d = d.vertex(&format!("v{i}"), false);
    }
    let mut k = 0;
    for i in 1..n {
        let j = r.gen_range(0..i);
        d = d.edge(&format!("e{k}"), &format!("v{j}"), &format!("v{i}"), length(r));
        k += 1;
    }
    for _ in 0..r.gen_range(0..=2) {
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        d = d.edge(&format!("e{k}"), &format!("v{a}"), &format!("v{b}"), length(r));
        k += 1;
    }
    let rays = r.gen_range(if k == 0 { 1 } else { 0 }..=3);
    for i in 0..rays {
        let a = r.gen_range(0..n);
        let class = if r.gen_bool(0.5) { "p".to_string() } else { format!("c{i}") };
        d = d.ray(&format!("r{i}"), &format!("v{a}"), &class);
    }
    Arc::new(Curve::build(d).expect("generated curve is valid"))
}

/// A finite point: a finite vertex or an interior edge point.
pub fn finite_point(r: &mut Rng8, c: &Curve) -> PointRef {
    let finite: Vec<usize> = (0..c.vertices().len()).filter(|&v| !c.vertex(v).at_infinity).collect();
    if c.edges().is_empty() || r.gen_bool(0.4) {
        return PointRef::Vertex(*finite.choose(r).unwrap());
    }
    let e = r.gen_range(0..c.edges().len());
    let t = match &c.edge(e).length {
        Extended::Finite(l) => l * qq(r.gen_range(1..=7), 8),
        Extended::Infinite => qq(r.gen_range(1..=24), 4),
    };
    c.normalize(&PointRef::OnEdge(e, t)).unwrap()
}

/// A nonempty closed subgraph without lone points at infinity.
pub fn subgraph(r: &mut Rng8, c: &Arc<Curve>) -> Subgraph {
    loop {
        let mut spec = SubgraphSpec::default();
        for v in 0..c.vertices().len() {
            if !c.vertex(v).at_infinity && r.gen_bool(0.3) {
                spec.vertices.push(v);
            }
        }
        for (e, edge) in c.edges().iter().enumerate() {
            if !r.gen_bool(0.4) {
                continue;
            }
            match &edge.length {
                Extended::Finite(l) => {
                    let a = l * qq(r.gen_range(0..=3), 8);
                    let b = l * qq(r.gen_range(4..=8), 8);
                    spec.intervals.push((e, a, Extended::Finite(b)));
                }
                Extended::Infinite => {
                    let a = qq(r.gen_range(0..=8), 2);
                    let b = if r.gen_bool(0.5) { Extended::Infinite } else { Extended::Finite(&a + q(r.gen_range(0..=3))) };
                    spec.intervals.push((e, a, b));
                }
            }
        }
        if let Ok(g) = Subgraph::new(c.clone(), &spec) {
            if !g.is_empty() {
                return g;
            }
        }
    }
}

/// A random element built from chip-firing moves with ⊕, ⊙ and inverses.
pub fn function(r: &mut Rng8, c: &Arc<Curve>) -> PlFunction {
    let terms = r.gen_range(1..=3);
    let mut acc: Option<PlFunction> = None;
    for _ in 0..terms {
        let mut t = PlFunction::constant(c.clone(), rational(r, 6, 2));
        for _ in 0..r.gen_range(0..=2) {
            let g = subgraph(r, c);
            let l = if r.gen_bool(0.3) { Extended::Infinite } else { length(r) };
            let mut cf = chip_fire(&g, &l).unwrap();
            if r.gen_bool(0.4) {
                cf = cf.inv().unwrap();
            }
            t = t.otimes(&cf).unwrap();
        }
        acc = Some(match acc {
            None => t,
            Some(a) => a.oplus(&t).unwrap(),
        });
    }
    acc.unwrap()
}

/// A random tropical combination `⊕ cᵢ ⊙ gᵢ` of the given functions.
pub fn combination(r: &mut Rng8, gens: &[PlFunction]) -> PlFunction {
    let mut acc = PlFunction::neg_inf(gens[0].curve().clone());
    for g in gens {
        if r.gen_bool(0.7) {
            acc = acc.oplus(&g.scale(&rational(r, 5, 2))).unwrap();
        }
    }
    if acc.is_neg_inf() {
        acc = gens[0].scale(&rational(r, 5, 2));
    }
    acc
}

/// A random polynomial in two variables with `terms` distinct exponents in `[0, deg]²`.
pub fn poly2(r: &mut Rng8, terms: usize, deg: i64) -> TropPoly {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < terms {
        let e = vec![r.gen_range(0..=deg), r.gen_range(0..=deg)];
        if seen.insert(e.clone()) {
            out.push((Rational::from_integer(r.gen_range(-4..=4).into()), e));
        }
    }
    TropPoly::from_terms(2, out).expect("two variables")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let (mut a, mut b) = (rng(7), rng(7));
        let (c1, c2) = (connected_curve(&mut a, 4), connected_curve(&mut b, 4));
        assert_eq!(c1, c2);
        assert_eq!(function(&mut a, &c1), function(&mut b, &c2));
        assert!(c1.is_connected());
    }
}
