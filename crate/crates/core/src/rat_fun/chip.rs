use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::curve::Subgraph;
use crate::error::{Error, Result};
use crate::rat_fun::{PlFunction, Profile};
use crate::rational::{Extended, Rational};

/// Negated distance to the closed interval `[a, b]` of an edge of the given length.
fn neg_distance_to_interval(len: &Extended, a: &Rational, b: &Extended) -> Profile {
    let mut pts = Vec::new();
    if a.is_positive() {
        pts.push((Rational::zero(), -a.clone()));
    }
    pts.push((a.clone(), Rational::zero()));
    match (b, len) {
        (Extended::Infinite, _) => return Profile { breakpoints: pts, slope_at_infinity: Some(0) },
        (Extended::Finite(b), Extended::Finite(l)) => {
            if b > a {
                pts.push((b.clone(), Rational::zero()));
            }
            if b < l {
                pts.push((l.clone(), b - l));
            }
            Profile { breakpoints: pts, slope_at_infinity: None }
        }
        (Extended::Finite(b), Extended::Infinite) => {
            if b > a {
                pts.push((b.clone(), Rational::zero()));
            }
            Profile { breakpoints: pts, slope_at_infinity: Some(-1) }
        }
    }
}

/// The chip-firing move `x ↦ −min(dist(g, x), l)`. Components of the curve that do
/// not meet `g` get the constant 0.
pub fn chip_fire(g: &Subgraph, l: &Extended) -> Result<PlFunction> {
    if g.is_empty() {
        return Err(Error::InvalidSubgraph("chip firing needs a nonempty subgraph".into()));
    }
    if let Extended::Finite(x) = l {
        if !x.is_positive() {
            return Err(Error::InvalidSubgraph("chip firing distance must be positive".into()));
        }
    }
    let c = g.curve().clone();
    let table = c.vertex_distances(&g.distance_sources());
    let mut profiles = Vec::with_capacity(c.edges().len());
    for (i, e) in c.edges().iter().enumerate() {
        let mut cands: Vec<Profile> = Vec::new();
        if let Some(du) = &table[e.u] {
            cands.push(Profile::affine(&e.length, -du.clone(), -1));
        }
        if let (Extended::Finite(len), Some(dv)) = (&e.length, &table[e.v]) {
            cands.push(Profile::affine(&e.length, -(dv + len), 1));
        }
        for (a, b) in g.intervals().get(&i).into_iter().flatten() {
            cands.push(neg_distance_to_interval(&e.length, a, b));
        }
        let mut prof = match cands.split_first() {
            None => Profile::affine(&e.length, Rational::zero(), 0),
            Some((first, rest)) => rest.iter().fold(first.clone().canonical(), |acc, p| acc.max(p)),
        };
        if let Extended::Finite(x) = l {
            prof = prof.max(&Profile::affine(&e.length, -x.clone(), 0));
        }
        profiles.push(prof);
    }
    let isolated: BTreeMap<usize, Rational> = (0..c.vertices().len())
        .filter(|&v| c.incident(v).is_empty())
        .map(|v| (v, Rational::zero()))
        .collect();
    PlFunction::from_profiles(c, profiles, &isolated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{Curve, CurveDesc, Dir, PointRef, SubgraphSpec};
    use crate::rat_fun::{div_of, Value};
    use crate::rational::q;
    use std::sync::Arc;

    fn segment() -> Arc<Curve> {
        Arc::new(
            Curve::build(CurveDesc::default().vertex("A", false).vertex("B", false).edge("e", "A", "B", Extended::Finite(q(3))))
                .unwrap(),
        )
    }

    #[test]
    fn segment_example() {
        let c = segment();
        let g = Subgraph::new(c.clone(), &SubgraphSpec { vertices: vec![0], ..Default::default() }).unwrap();
        let f = chip_fire(&g, &Extended::Finite(q(2))).unwrap();
        assert_eq!(f.profile(0).unwrap().breakpoints, vec![(q(0), q(0)), (q(2), q(-2)), (q(3), q(-2))]);
        assert_eq!(f.eval(&PointRef::OnEdge(0, q(1))).unwrap(), Value::Finite(q(-1)));
        let d = div_of(&f).unwrap();
        assert_eq!(d.labelled(), vec![("A".to_string(), -1), ("e@2".to_string(), 1)]);
    }

    #[test]
    fn whole_curve_gives_zero() {
        let c = segment();
        let g = Subgraph::whole(c.clone()).unwrap();
        assert!(chip_fire(&g, &Extended::Infinite).unwrap().is_constant());
    }

    #[test]
    fn star_center() {
        let c = Arc::new(
            Curve::build(
                CurveDesc::default()
                    .vertex("O", false)
                    .ray("a", "O", "a")
                    .ray("b", "O", "b")
                    .ray("c", "O", "c"),
            )
            .unwrap(),
        );
        let g = Subgraph::new(c.clone(), &SubgraphSpec { vertices: vec![0], ..Default::default() }).unwrap();
        let f = chip_fire(&g, &Extended::Infinite).unwrap();
        let o = PointRef::Vertex(0);
        for d in c.incident(0) {
            assert_eq!(f.outgoing_slope(&o, *d).unwrap(), -1);
        }
        assert_eq!(f.outgoing_slope(&PointRef::InfinityOf(0), Dir { edge: 0, forward: false }).unwrap(), 1);
        assert_eq!(div_of(&f).unwrap().get(&o), -3);
    }

    #[test]
    fn other_component_is_zero() {
        let c = Arc::new(
            Curve::build(
                CurveDesc::default()
                    .vertex("A", false)
                    .vertex("B", false)
                    .vertex("C", false)
                    .vertex("D", false)
                    .edge("x", "A", "B", Extended::Finite(q(2)))
                    .edge("y", "C", "D", Extended::Finite(q(2))),
            )
            .unwrap(),
        );
        let g = Subgraph::new(c.clone(), &SubgraphSpec { vertices: vec![0], ..Default::default() }).unwrap();
        let f = chip_fire(&g, &Extended::Finite(q(1))).unwrap();
        assert_eq!(f.eval(&PointRef::Vertex(1)).unwrap(), Value::Finite(q(-1)));
        assert_eq!(f.profile(1).unwrap(), &Profile::affine(&Extended::Finite(q(2)), q(0), 0));
    }

    #[test]
    fn interval_in_the_middle() {
        let c = segment();
        let spec = SubgraphSpec { intervals: vec![(0, q(1), Extended::Finite(q(2)))], ..Default::default() };
        let g = Subgraph::new(c, &spec).unwrap();
        let f = chip_fire(&g, &Extended::Infinite).unwrap();
        assert_eq!(
            f.profile(0).unwrap().breakpoints,
            vec![(q(0), q(-1)), (q(1), q(0)), (q(2), q(0)), (q(3), q(-1))]
        );
    }
}
