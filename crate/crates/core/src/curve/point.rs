use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::curve::{Curve, Dir};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, Extended, Rational};

/// A point of a curve. After [`Curve::normalize`] only `Vertex` and interior `OnEdge` remain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointRef {
    Vertex(usize),
    OnEdge(usize, Rational),
    InfinityOf(usize),
}

/// A distance in ℚ ∪ {∞}, flagged when the points lie in different components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distance {
    pub value: Extended,
    pub across_components: bool,
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointRef::Vertex(v) => write!(f, "v{v}"),
            PointRef::OnEdge(e, t) => write!(f, "e{e}@{}", fmt_rational(t)),
            PointRef::InfinityOf(e) => write!(f, "e{e}@inf"),
        }
    }
}

impl Curve {
    pub fn normalize(&self, p: &PointRef) -> Result<PointRef> {
        match p {
            PointRef::Vertex(v) => {
                if *v >= self.vertices().len() {
                    return Err(Error::InvalidPoint(format!("vertex index {v} out of range")));
                }
                Ok(p.clone())
            }
            PointRef::InfinityOf(e) => {
                let edge = self.edges().get(*e).ok_or_else(|| Error::InvalidPoint(format!("no edge {e}")))?;
                if !edge.is_infinite() {
                    return Err(Error::InvalidPoint(format!("edge {} has no point at infinity", edge.id)));
                }
                Ok(PointRef::Vertex(edge.v))
            }
            PointRef::OnEdge(e, t) => {
                let edge = self.edges().get(*e).ok_or_else(|| Error::InvalidPoint(format!("no edge {e}")))?;
                if t.is_negative() {
                    return Err(Error::InvalidPoint(format!("negative offset on edge {}", edge.id)));
                }
                if t.is_zero() {
                    return Ok(PointRef::Vertex(edge.u));
                }
                match &edge.length {
                    Extended::Finite(l) if t == l => Ok(PointRef::Vertex(edge.v)),
                    Extended::Finite(l) if t > l => {
                        Err(Error::InvalidPoint(format!("offset {} beyond edge {}", fmt_rational(t), edge.id)))
                    }
                    _ => Ok(p.clone()),
                }
            }
        }
    }

    pub fn is_at_infinity(&self, p: &PointRef) -> Result<bool> {
        Ok(match self.normalize(p)? {
            PointRef::Vertex(v) => self.vertex(v).at_infinity,
            _ => false,
        })
    }

    pub fn component_of_point(&self, p: &PointRef) -> Result<usize> {
        Ok(match self.normalize(p)? {
            PointRef::Vertex(v) => self.component_of(v),
            PointRef::OnEdge(e, _) => self.component_of(self.edge(e).u),
            PointRef::InfinityOf(_) => unreachable!(),
        })
    }

    /// Human-readable label: the vertex id, or `edge@offset` for interior points.
    pub fn point_label(&self, p: &PointRef) -> String {
        match self.normalize(p) {
            Ok(PointRef::Vertex(v)) => self.vertex(v).id.clone(),
            Ok(PointRef::OnEdge(e, t)) => format!("{}@{}", self.edge(e).id, fmt_rational(&t)),
            _ => p.to_string(),
        }
    }

    /// Inverse of [`Curve::point_label`]; also accepts `edge@inf`.
    pub fn parse_point(&self, label: &str) -> Result<PointRef> {
        if let Ok(v) = self.vertex_id(label) {
            return Ok(PointRef::Vertex(v));
        }
        let (e, t) = label
            .rsplit_once('@')
            .ok_or_else(|| Error::InvalidPoint(format!("unknown point {label:?}")))?;
        let e = self.edge_id(e)?;
        let p = if t == "inf" { PointRef::InfinityOf(e) } else { PointRef::OnEdge(e, parse_rational(t)?) };
        self.normalize(&p)
    }

    /// Leaving directions at `p` in the default order: by edge id with the `u` end
    /// first at a vertex, and toward `u` before toward `v` at an interior point.
    pub fn directions_at(&self, p: &PointRef) -> Result<Vec<Dir>> {
        Ok(match self.normalize(p)? {
            PointRef::Vertex(v) => self.incident(v).to_vec(),
            PointRef::OnEdge(e, _) => vec![Dir { edge: e, forward: false }, Dir { edge: e, forward: true }],
            PointRef::InfinityOf(_) => unreachable!(),
        })
    }

    pub fn valence(&self, p: &PointRef) -> Result<usize> {
        Ok(self.directions_at(p)?.len())
    }

    /// Multi-source shortest distances to all vertices; `None` means unreachable.
    /// Points at infinity are never reached from finite sources.
    pub fn vertex_distances(&self, sources: &[(usize, Rational)]) -> Vec<Option<Rational>> {
        let mut dist: Vec<Option<Rational>> = vec![None; self.vertices().len()];
        let mut heap = BinaryHeap::new();
        for (v, d) in sources {
            if dist[*v].as_ref().map_or(true, |x| d < x) {
                dist[*v] = Some(d.clone());
                heap.push(Reverse((d.clone(), *v)));
            }
        }
        while let Some(Reverse((d, v))) = heap.pop() {
            if dist[v].as_ref().is_some_and(|x| *x < d) {
                continue;
            }
            if self.vertex(v).at_infinity {
                continue;
            }
            for dir in self.incident(v) {
                let e = self.edge(dir.edge);
                let Extended::Finite(l) = &e.length else { continue };
                let w = if dir.forward { e.v } else { e.u };
                let nd = &d + l;
                if dist[w].as_ref().map_or(true, |x| nd < *x) {
                    dist[w] = Some(nd.clone());
                    heap.push(Reverse((nd, w)));
                }
            }
        }
        dist
    }

    /// Sources for `vertex_distances` equivalent to the point `p`.
    pub(crate) fn point_sources(&self, p: &PointRef) -> Result<Vec<(usize, Rational)>> {
        Ok(match self.normalize(p)? {
            PointRef::Vertex(v) => vec![(v, Rational::zero())],
            PointRef::OnEdge(e, t) => {
                let edge = self.edge(e);
                let mut s = vec![(edge.u, t.clone())];
                if let Extended::Finite(l) = &edge.length {
                    s.push((edge.v, l - &t));
                }
                s
            }
            PointRef::InfinityOf(_) => unreachable!(),
        })
    }

    /// Distance from precomputed vertex distances (and, for same-edge shortcuts, the source point) to `q`.
    pub(crate) fn distance_from_table(&self, table: &[Option<Rational>], q: &PointRef) -> Extended {
        match q {
            PointRef::Vertex(v) => table[*v].clone().map_or(Extended::Infinite, Extended::Finite),
            PointRef::OnEdge(e, t) => {
                let edge = self.edge(*e);
                let mut best = table[edge.u].as_ref().map_or(Extended::Infinite, |d| Extended::Finite(d + t));
                if let Extended::Finite(l) = &edge.length {
                    if let Some(d) = &table[edge.v] {
                        best = best.min(Extended::Finite(d + l - t));
                    }
                }
                best
            }
            PointRef::InfinityOf(_) => unreachable!(),
        }
    }

    pub fn distance(&self, p: &PointRef, q: &PointRef) -> Result<Distance> {
        let (p, q) = (self.normalize(p)?, self.normalize(q)?);
        let across = self.component_of_point(&p)? != self.component_of_point(&q)?;
        if p == q {
            return Ok(Distance { value: Extended::Finite(Rational::zero()), across_components: false });
        }
        if across || self.is_at_infinity(&p)? || self.is_at_infinity(&q)? {
            return Ok(Distance { value: Extended::Infinite, across_components: across });
        }
        let table = self.vertex_distances(&self.point_sources(&p)?);
        let mut best = self.distance_from_table(&table, &q);
        if let (PointRef::OnEdge(e1, a), PointRef::OnEdge(e2, b)) = (&p, &q) {
            if e1 == e2 {
                best = best.min(Extended::Finite((a - b).abs()));
            }
        }
        Ok(Distance { value: best, across_components: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveDesc;
    use crate::rational::{q, qq};

    fn segment(len: i64) -> Curve {
        Curve::build(CurveDesc::default().vertex("A", false).vertex("B", false).edge("e", "A", "B", Extended::Finite(q(len))))
            .unwrap()
    }

    #[test]
    fn normalization() {
        let c = segment(3);
        assert_eq!(c.normalize(&PointRef::OnEdge(0, q(0))).unwrap(), PointRef::Vertex(0));
        assert_eq!(c.normalize(&PointRef::OnEdge(0, q(3))).unwrap(), PointRef::Vertex(1));
        assert!(c.normalize(&PointRef::OnEdge(0, q(4))).is_err());
        assert!(c.normalize(&PointRef::InfinityOf(0)).is_err());
        assert_eq!(c.parse_point("e@3/2").unwrap(), PointRef::OnEdge(0, qq(3, 2)));
        assert_eq!(c.point_label(&PointRef::OnEdge(0, qq(3, 2))), "e@3/2");
        assert_eq!(c.parse_point("B").unwrap(), PointRef::Vertex(1));
    }

    #[test]
    fn distances() {
        let c = segment(3);
        let d = c.distance(&PointRef::OnEdge(0, q(1)), &PointRef::OnEdge(0, qq(5, 2))).unwrap();
        assert_eq!(d.value, Extended::Finite(qq(3, 2)));
        let ray = Curve::build(CurveDesc::default().vertex("A", false).ray("r", "A", "c")).unwrap();
        let d = ray.distance(&PointRef::Vertex(0), &PointRef::InfinityOf(0)).unwrap();
        assert_eq!(d.value, Extended::Infinite);
        let two = Curve::build(CurveDesc::default().vertex("A", false).vertex("B", false)).unwrap();
        let d = two.distance(&PointRef::Vertex(0), &PointRef::Vertex(1)).unwrap();
        assert!(d.across_components && d.value.is_infinite());
    }

    #[test]
    fn valences() {
        let star = Curve::build(
            CurveDesc::default()
                .vertex("O", false)
                .vertex("A", false)
                .vertex("B", false)
                .vertex("C", false)
                .edge("a", "O", "A", Extended::Finite(q(1)))
                .edge("b", "O", "B", Extended::Finite(q(1)))
                .edge("c", "O", "C", Extended::Finite(q(1))),
        )
        .unwrap();
        assert_eq!(star.valence(&PointRef::Vertex(0)).unwrap(), 3);
        assert_eq!(star.valence(&PointRef::OnEdge(0, qq(1, 2))).unwrap(), 2);
        let ray = Curve::build(CurveDesc::default().vertex("A", false).ray("r", "A", "c")).unwrap();
        assert_eq!(ray.valence(&PointRef::InfinityOf(0)).unwrap(), 1);
    }

    #[test]
    fn loop_directions() {
        let c = Curve::build(CurveDesc::default().vertex("A", false).edge("l", "A", "A", Extended::Finite(q(3)))).unwrap();
        assert_eq!(c.valence(&PointRef::Vertex(0)).unwrap(), 2);
        let d = c.distance(&PointRef::OnEdge(0, q(1)), &PointRef::OnEdge(0, qq(5, 2))).unwrap();
        assert_eq!(d.value, Extended::Finite(qq(3, 2)));
        let d = c.distance(&PointRef::OnEdge(0, qq(1, 2)), &PointRef::OnEdge(0, qq(5, 2))).unwrap();
        assert_eq!(d.value, Extended::Finite(q(1)));
    }
}
