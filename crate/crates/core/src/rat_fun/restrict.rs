//! Restriction to subgraphs and extension back to the whole curve.
//!
//! Extension keeps the given values on the subgraph. From every boundary point it
//! walks into the complement with slope `s` toward 0 (slope `-s` when the boundary
//! value is negative), stays at 0, and on a ray whose class also contains a ray of
//! the subgraph it then leaves with that class's slope at infinity.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::curve::{PointRef, SubCurve, Subgraph};
use crate::error::{Error, Result};
use crate::rat_fun::{PlFunction, Profile};
use crate::rational::{Extended, Rational};

/// One function per component of `g`, each on that component viewed as a curve.
pub fn restrict(f: &PlFunction, g: &Subgraph) -> Result<Vec<PlFunction>> {
    if **g.curve() != **f.curve() {
        return Err(Error::CurveMismatch);
    }
    g.component_curves().into_iter().map(|sc| restrict_to(f, &sc)).collect()
}

/// Restriction of `f` to one component curve.
pub fn restrict_to(f: &PlFunction, sc: &SubCurve) -> Result<PlFunction> {
    if f.is_neg_inf() {
        return Ok(PlFunction::neg_inf(sc.curve.clone()));
    }
    let profiles = sc.pieces.iter().map(|p| f.profile(p.edge).unwrap().slice(&p.start, &p.end)).collect();
    let mut isolated = BTreeMap::new();
    for (v, p) in sc.vertex_points.iter().enumerate() {
        if sc.curve.incident(v).is_empty() {
            isolated.insert(v, f.eval_finite(p)?);
        }
    }
    PlFunction::from_profiles(sc.curve.clone(), profiles, &isolated)
}

struct Lookup<'a> {
    g: &'a Subgraph,
    subs: Vec<SubCurve>,
    parts: &'a [PlFunction],
}

impl Lookup<'_> {
    fn value(&self, p: &PointRef) -> Result<Rational> {
        let comp = self.g.component_of(p)?.ok_or_else(|| Error::Internal("boundary point outside subgraph".into()))?;
        let sc = &self.subs[comp];
        let p = self.g.curve().normalize(p)?;
        if let Some(v) = sc.vertex_points.iter().position(|q| *q == p) {
            return Ok(self.parts[comp].vertex_value(v).expect("finite boundary").clone());
        }
        let PointRef::OnEdge(e, t) = &p else { unreachable!("vertices are listed") };
        for (k, piece) in sc.pieces.iter().enumerate() {
            if piece.edge == *e && piece.start < *t && Extended::Finite(t.clone()) < piece.end {
                return Ok(self.parts[comp].profile(k).unwrap().value_at(&(t - &piece.start)));
            }
        }
        Err(Error::Internal("point not covered by its component".into()))
    }

    /// Profile of the component function over the interval `[a, b]` of edge `e`.
    fn covered(&self, e: usize, a: &Rational, b: &Extended) -> Result<Option<Profile>> {
        if Extended::Finite(a.clone()) == *b {
            return Ok(None);
        }
        for (comp, sc) in self.subs.iter().enumerate() {
            for (k, piece) in sc.pieces.iter().enumerate() {
                if piece.edge == e && piece.start == *a && piece.end == *b {
                    return Ok(Some(self.parts[comp].profile(k).unwrap().clone()));
                }
            }
        }
        Err(Error::Internal("interval without component edge".into()))
    }
}

fn descent(value: &Rational, step: &Rational) -> Rational {
    value.abs() / step
}

fn gap(vl: &Rational, vr: Option<&Rational>, length: &Extended, step: &Rational, tail: i64) -> Profile {
    let zero = Rational::zero();
    let mut pts = vec![(zero.clone(), vl.clone())];
    if !vl.is_zero() {
        pts.push((descent(vl, step), zero.clone()));
    }
    match (length, vr) {
        (Extended::Finite(d), Some(vr)) => {
            let x = d - descent(vr, step);
            if pts.last().unwrap().0 < x {
                pts.push((x, zero));
            }
            if pts.last().unwrap().0 < *d {
                pts.push((d.clone(), vr.clone()));
            }
            Profile { breakpoints: pts, slope_at_infinity: None }
        }
        _ => Profile { breakpoints: pts, slope_at_infinity: Some(tail) },
    }
}

/// Extends one function per component of `g` to the whole curve using descent slope `s < 0`.
pub fn extend(parts: &[PlFunction], g: &Subgraph, s: i64) -> Result<PlFunction> {
    if s >= 0 {
        return Err(Error::NonNegativeSlope(s));
    }
    let subs = g.component_curves();
    if parts.len() != subs.len() {
        return Err(Error::InvalidFunction(format!("expected {} component functions, got {}", subs.len(), parts.len())));
    }
    for (f, sc) in parts.iter().zip(&subs) {
        if **f.curve() != *sc.curve {
            return Err(Error::CurveMismatch);
        }
        if f.is_neg_inf() {
            return Err(Error::ZeroFunction);
        }
    }
    let c = g.curve().clone();
    let look = Lookup { g, subs, parts };

    let mut class_slope: BTreeMap<String, i64> = BTreeMap::new();
    for (comp, sc) in look.subs.iter().enumerate() {
        for (k, piece) in sc.pieces.iter().enumerate() {
            if piece.end.is_infinite() {
                let class = c.ray_class(piece.edge).expect("rays carry classes").to_string();
                let sigma = parts[comp].profile(k).unwrap().slope_at_infinity.unwrap();
                if *class_slope.entry(class.clone()).or_insert(sigma) != sigma {
                    return Err(Error::ParallelViolation { class });
                }
            }
        }
    }

    let step = Rational::from_integer((-s).into());
    let mut need: Option<(String, i64)> = None;
    let mut profiles = Vec::with_capacity(c.edges().len());
    let vertex_value = |v: usize| -> Result<Option<Rational>> {
        if g.vertex_set().contains(&v) {
            Ok(Some(look.value(&PointRef::Vertex(v))?))
        } else {
            Ok(None)
        }
    };
    for (i, e) in c.edges().iter().enumerate() {
        let tail = c.ray_class(i).and_then(|cl| class_slope.get(cl).copied()).unwrap_or(0);
        let mut parts: Vec<Profile> = Vec::new();
        let mut cur = Rational::zero();
        let mut left = vertex_value(e.u)?.unwrap_or_else(Rational::zero);
        let mut gaps: Vec<(Rational, Rational, Extended)> = Vec::new();
        for (a, b) in g.intervals().get(&i).into_iter().flatten() {
            if *a > cur {
                let vr = look.value(&PointRef::OnEdge(i, a.clone()))?;
                gaps.push((left.clone(), vr.clone(), Extended::Finite(a - &cur)));
                parts.push(gap(&left, Some(&vr), &Extended::Finite(a - &cur), &step, tail));
            }
            if let Some(p) = look.covered(i, a, b)? {
                parts.push(p);
            }
            match b {
                Extended::Finite(b) => {
                    cur = b.clone();
                    left = look.value(&PointRef::OnEdge(i, b.clone()))?;
                }
                Extended::Infinite => break,
            }
        }
        let reaches_end = g.intervals().get(&i).and_then(|l| l.last()).is_some_and(|(_, b)| *b == e.length);
        if !reaches_end {
            match &e.length {
                Extended::Finite(l) => {
                    let vr = vertex_value(e.v)?.unwrap_or_else(Rational::zero);
                    let d = Extended::Finite(l - &cur);
                    gaps.push((left.clone(), vr.clone(), d.clone()));
                    parts.push(gap(&left, Some(&vr), &d, &step, tail));
                }
                Extended::Infinite => parts.push(gap(&left, None, &Extended::Infinite, &step, tail)),
            }
        }
        for (vl, vr, d) in gaps {
            let d = d.finite().unwrap().clone();
            let total = vl.abs() + vr.abs();
            if total > &step * &d {
                let m = (total / d).ceil().to_integer();
                let m: i64 = i64::try_from(m).unwrap_or(i64::MAX);
                if need.as_ref().map_or(true, |(_, x)| m > *x) {
                    need = Some((e.id.clone(), m));
                }
            }
        }
        profiles.push(Profile::concat(parts));
    }
    if let Some((edge, min_abs)) = need {
        return Err(Error::SlopeTooShallow { edge, min_abs });
    }
    let mut isolated = BTreeMap::new();
    for v in 0..c.vertices().len() {
        if c.incident(v).is_empty() {
            isolated.insert(v, vertex_value(v)?.unwrap_or_else(Rational::zero));
        }
    }
    PlFunction::from_profiles(c, profiles, &isolated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{Curve, CurveDesc, SubgraphSpec};
    use crate::rational::{q, qq};
    use std::sync::Arc;

    fn segment(len: i64) -> Arc<Curve> {
        Arc::new(
            Curve::build(CurveDesc::default().vertex("A", false).vertex("B", false).edge("e", "A", "B", Extended::Finite(q(len))))
                .unwrap(),
        )
    }

    #[test]
    fn restrict_linear() {
        let c = segment(3);
        let f = PlFunction::from_profiles(c.clone(), vec![Profile::affine(&Extended::Finite(q(3)), q(0), 1)], &BTreeMap::new())
            .unwrap();
        let spec = SubgraphSpec { intervals: vec![(0, q(1), Extended::Finite(q(2)))], ..Default::default() };
        let g = Subgraph::new(c, &spec).unwrap();
        let r = restrict(&f, &g).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].profile(0).unwrap().breakpoints, vec![(q(0), q(1)), (q(1), q(2))]);
        assert!(restrict(&PlFunction::neg_inf(f.curve().clone()), &g).unwrap()[0].is_neg_inf());
    }

    #[test]
    fn tent() {
        let c = segment(10);
        let spec = SubgraphSpec { intervals: vec![(0, qq(9, 2), Extended::Finite(qq(11, 2)))], ..Default::default() };
        let g = Subgraph::new(c, &spec).unwrap();
        let sc = &g.component_curves()[0];
        let fp = PlFunction::constant(sc.curve.clone(), q(2));
        let f = extend(&[fp.clone()], &g, -2).unwrap();
        assert_eq!(
            f.profile(0).unwrap().breakpoints,
            vec![(q(0), q(0)), (qq(7, 2), q(0)), (qq(9, 2), q(2)), (qq(11, 2), q(2)), (qq(13, 2), q(0)), (q(10), q(0))]
        );
        assert_eq!(restrict(&f, &g).unwrap(), vec![fp.clone()]);
        assert_eq!(extend(&[fp], &g, 0), Err(Error::NonNegativeSlope(0)));
    }

    #[test]
    fn too_shallow() {
        let c = segment(2);
        let spec = SubgraphSpec { intervals: vec![(0, q(1), Extended::Finite(q(1)))], ..Default::default() };
        let g = Subgraph::new(c, &spec).unwrap();
        let fp = PlFunction::constant(g.component_curves()[0].curve.clone(), q(5));
        assert_eq!(extend(&[fp.clone()], &g, -2), Err(Error::SlopeTooShallow { edge: "e".into(), min_abs: 5 }));
        assert!(extend(&[fp], &g, -5).is_ok());
    }

    #[test]
    fn whole_curve() {
        let c = segment(3);
        let f = PlFunction::from_profiles(c.clone(), vec![Profile::affine(&Extended::Finite(q(3)), q(0), 1)], &BTreeMap::new())
            .unwrap();
        let g = Subgraph::whole(c).unwrap();
        let parts = restrict(&f, &g).unwrap();
        assert_eq!(extend(&parts, &g, -1).unwrap(), f);
    }

    #[test]
    fn parallel_rays_share_tail() {
        let c = Arc::new(
            Curve::build(CurveDesc::default().vertex("O", false).ray("r1", "O", "k").ray("r2", "O", "k")).unwrap(),
        );
        let spec = SubgraphSpec { intervals: vec![(0, q(1), Extended::Infinite)], ..Default::default() };
        let g = Subgraph::new(c.clone(), &spec).unwrap();
        let sc = &g.component_curves()[0];
        let fp = PlFunction::from_profiles(sc.curve.clone(), vec![Profile::affine(&Extended::Infinite, q(0), 3)], &BTreeMap::new())
            .unwrap();
        let f = extend(&[fp], &g, -1).unwrap();
        assert_eq!(f.profile(1).unwrap().slope_at_infinity, Some(3));
        assert_eq!(f.profile(0).unwrap().slope_at_infinity, Some(3));
    }
}
