use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Signed;

use crate::curve::{Curve, Edge, PointRef, Vertex};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Extended, Rational};

/// A refinement of a curve model obtained by inserting 2-valent vertices.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub curve: Arc<Curve>,
    /// Index in `curve` of each original vertex.
    pub vertex_map: Vec<usize>,
    /// For each original edge, the new edges covering it as `(start offset, new edge)`.
    pub pieces: Vec<Vec<(Rational, usize)>>,
}

/// Inserts a vertex at each listed interior offset. Offsets at an edge end are ignored.
pub fn subdivide(c: &Curve, cuts: &BTreeMap<usize, BTreeSet<Rational>>) -> Result<Subdivision> {
    let mut vertices: Vec<Vertex> = c.vertices().to_vec();
    let mut taken: BTreeSet<String> = vertices.iter().map(|v| v.id.clone()).collect();
    let mut edges = Vec::new();
    let mut classes = BTreeMap::new();
    let mut pieces = Vec::with_capacity(c.edges().len());
    for (i, e) in c.edges().iter().enumerate() {
        let mut inner: Vec<Rational> = Vec::new();
        for t in cuts.get(&i).into_iter().flatten() {
            if t.is_negative() || Extended::Finite(t.clone()) > e.length {
                return Err(Error::InvalidPoint(format!("cut {} outside edge {}", fmt_rational(t), e.id)));
            }
            if t.is_positive() && Extended::Finite(t.clone()) < e.length {
                inner.push(t.clone());
            }
        }
        if inner.is_empty() {
            if let Some(cl) = c.ray_class(i) {
                classes.insert(edges.len(), cl.to_string());
            }
            pieces.push(vec![(Rational::from_integer(0.into()), edges.len())]);
            edges.push(e.clone());
            continue;
        }
        let mut stops = vec![e.u];
        for t in &inner {
            let mut id = format!("{}@{}", e.id, fmt_rational(t));
            while taken.contains(&id) {
                id.push('\'');
            }
            taken.insert(id.clone());
            stops.push(vertices.len());
            vertices.push(Vertex { id, at_infinity: false });
        }
        stops.push(e.v);
        let mut bounds: Vec<Extended> = vec![Extended::Finite(Rational::from_integer(0.into()))];
        bounds.extend(inner.iter().cloned().map(Extended::Finite));
        bounds.push(e.length.clone());
        let mut list = Vec::new();
        for k in 0..stops.len() - 1 {
            let a = bounds[k].finite().unwrap().clone();
            let length = match &bounds[k + 1] {
                Extended::Finite(b) => Extended::Finite(b - &a),
                Extended::Infinite => Extended::Infinite,
            };
            if length.is_infinite() {
                if let Some(cl) = c.ray_class(i) {
                    classes.insert(edges.len(), cl.to_string());
                }
            }
            list.push((a.clone(), edges.len()));
            edges.push(Edge {
                id: format!("{}[{},{}]", e.id, fmt_rational(&a), bounds[k + 1]),
                u: stops[k],
                v: stops[k + 1],
                length,
            });
        }
        pieces.push(list);
    }
    let curve = Curve::assemble(vertices, edges, classes)?;
    Ok(Subdivision { curve: Arc::new(curve), vertex_map: (0..c.vertices().len()).collect(), pieces })
}

impl Subdivision {
    /// Image in the refined model of a point of the original curve.
    pub fn map_point(&self, original: &Curve, p: &PointRef) -> Result<PointRef> {
        match original.normalize(p)? {
            PointRef::Vertex(v) => Ok(PointRef::Vertex(self.vertex_map[v])),
            PointRef::OnEdge(e, t) => {
                let (start, ne) = self.pieces[e].iter().rev().find(|(s, _)| *s <= t).expect("first piece starts at 0");
                self.curve.normalize(&PointRef::OnEdge(*ne, &t - start))
            }
            PointRef::InfinityOf(_) => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveDesc;
    use crate::rational::{q, qq};

    #[test]
    fn cuts_a_ray() {
        let c = Curve::build(CurveDesc::default().vertex("A", false).ray("r", "A", "k")).unwrap();
        let cuts = BTreeMap::from([(0, BTreeSet::from([q(1), q(3)]))]);
        let s = subdivide(&c, &cuts).unwrap();
        assert_eq!(s.curve.edges().len(), 3);
        assert_eq!(s.curve.edge(2).id, "r[3,inf]");
        assert_eq!(s.curve.ray_class(2), Some("k"));
        assert_eq!(s.map_point(&c, &PointRef::OnEdge(0, qq(7, 2))).unwrap(), PointRef::OnEdge(2, qq(1, 2)));
        assert_eq!(s.map_point(&c, &PointRef::OnEdge(0, q(1))).unwrap(), PointRef::Vertex(2));
    }
}
