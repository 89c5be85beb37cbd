//! Weights: bijective morphisms with matching ray classes, and weight recovery from slopes.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::morphism::{EdgeTarget, Morphism};
use crate::rat_fun::PlFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub is_weight: bool,
    /// Target edge index to the degree of its preimage.
    pub edge_weights: Option<BTreeMap<usize, u64>>,
    pub reasons: Vec<String>,
}

pub fn weight_check(m: &Morphism) -> Result<WeightReport> {
    let v = m.validate();
    if !v.ok {
        return Err(Error::InvalidMorphism(v.violations));
    }
    let (s, t) = (&*m.source, &*m.target);
    let mut reasons = Vec::new();
    let images: BTreeSet<usize> = m.vertex_map.iter().copied().collect();
    if images.len() != s.vertices().len() || images.len() != t.vertices().len() {
        reasons.push("vertex map is not bijective".to_string());
    }
    let mut hit = BTreeMap::new();
    for (i, img) in m.edge_map.iter().enumerate() {
        match img {
            EdgeTarget::Vertex(_) => reasons.push(format!("edge {} is collapsed", s.edge(i).id)),
            EdgeTarget::Edge { edge, .. } => {
                if hit.insert(*edge, m.degrees[i]).is_some() {
                    reasons.push(format!("edge {} has several preimages", t.edge(*edge).id));
                }
            }
        }
    }
    if hit.len() != t.edges().len() {
        reasons.push("edge map is not surjective".to_string());
    }
    if reasons.is_empty() {
        let mut forward: BTreeMap<&str, &str> = BTreeMap::new();
        let mut backward: BTreeMap<&str, &str> = BTreeMap::new();
        for (&e, class) in s.ray_classes() {
            let EdgeTarget::Edge { edge, .. } = m.edge_map[e] else { unreachable!() };
            let image = t.ray_class(edge).unwrap();
            if *forward.entry(class).or_insert(image) != image || *backward.entry(image).or_insert(class) != class {
                reasons.push(format!("class {class} does not correspond to a single target class"));
            }
        }
    }
    let is_weight = reasons.is_empty();
    Ok(WeightReport { is_weight, edge_weights: is_weight.then_some(hit), reasons })
}

/// The gcd of the absolute slopes of the generators on edge `e`.
pub fn weight_from_generators(gens: &[PlFunction], e: usize) -> Result<u64> {
    let mut g: u64 = 0;
    for f in gens {
        let Some(p) = f.profile(e) else { continue };
        let pieces = if p.slope_at_infinity.is_some() { p.breakpoints.len() } else { p.breakpoints.len() - 1 };
        if pieces != 1 {
            return Err(Error::NonConstantSlope(f.curve().edge(e).id.clone()));
        }
        let s = p.slope_at_infinity.unwrap_or_else(|| p.first_slope());
        g = g.gcd(&s.unsigned_abs());
    }
    if g == 0 {
        return Err(Error::WeightUndetermined);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{Curve, CurveDesc};
    use crate::morphism::map::tests::{doubling, line_fn, real_line};
    use crate::rational::{q, Extended};
    use std::sync::Arc;

    #[test]
    fn doubling_is_weight_two() {
        let c = real_line();
        let r = weight_check(&doubling(&c)).unwrap();
        assert!(r.is_weight);
        assert!(r.edge_weights.unwrap().values().all(|&w| w == 2));
        let id = weight_check(&Morphism::identity(c)).unwrap();
        assert!(id.edge_weights.unwrap().values().all(|&w| w == 1));
    }

    #[test]
    fn folding_is_not_weight() {
        let d = CurveDesc::default()
            .vertex("a", false)
            .vertex("m", false)
            .vertex("b", false)
            .edge("e1", "a", "m", Extended::Finite(q(1)))
            .edge("e2", "m", "b", Extended::Finite(q(1)));
        let path = Arc::new(Curve::build(d).unwrap());
        let seg = Arc::new(
            Curve::build(CurveDesc::default().vertex("x", false).vertex("y", false).edge("s", "x", "y", Extended::Finite(q(1))))
                .unwrap(),
        );
        let m = Morphism {
            source: path,
            target: seg,
            vertex_map: vec![0, 1, 0],
            edge_map: vec![EdgeTarget::Edge { edge: 0, reversed: false }, EdgeTarget::Edge { edge: 0, reversed: true }],
            degrees: vec![1, 1],
        };
        let r = weight_check(&m).unwrap();
        assert!(!r.is_weight && r.edge_weights.is_none());
    }

    #[test]
    fn gcd_of_slopes() {
        let c = real_line();
        let r = c.edge_id("r").unwrap();
        assert_eq!(weight_from_generators(&[line_fn(&c, 2)], r).unwrap(), 2);
        assert_eq!(weight_from_generators(&[line_fn(&c, 1)], r).unwrap(), 1);
        assert_eq!(weight_from_generators(&[line_fn(&c, 2), line_fn(&c, 3)], r).unwrap(), 1);
        let k = PlFunction::constant(c.clone(), q(1));
        assert_eq!(weight_from_generators(&[k], r), Err(Error::WeightUndetermined));
        let bent = line_fn(&c, 1).oplus(&PlFunction::constant(c.clone(), q(1))).unwrap();
        assert!(matches!(weight_from_generators(&[bent], r), Err(Error::NonConstantSlope(_))));
    }
}
