//! Closed subsets of a curve with finitely many components.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::curve::{Curve, Edge, PointRef, Vertex};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Extended, Rational};

/// Input for [`Subgraph::new`]: whole vertices, whole edges and closed intervals `[a, b]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubgraphSpec {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub intervals: Vec<(usize, Rational, Extended)>,
}

/// A normalized closed subset. Intervals that reach an edge end also put that
/// end's vertex into `vertices`; intervals that are a single edge end are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    curve: Arc<Curve>,
    vertices: BTreeSet<usize>,
    intervals: BTreeMap<usize, Vec<(Rational, Extended)>>,
    components: Vec<Component>,
}

/// One connected component as lists of member vertices and intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub intervals: Vec<(usize, Rational, Extended)>,
}

/// A piece of an original edge: offsets `[start, end]`, same orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub edge: usize,
    pub start: Rational,
    pub end: Extended,
}

/// A component of a subgraph viewed as a curve of its own.
#[derive(Clone, Debug)]
pub struct SubCurve {
    pub curve: Arc<Curve>,
    /// Original point of each vertex of `curve`.
    pub vertex_points: Vec<PointRef>,
    /// Original piece covered by each edge of `curve`.
    pub pieces: Vec<Piece>,
}

impl Subgraph {
    pub fn new(curve: Arc<Curve>, spec: &SubgraphSpec) -> Result<Subgraph> {
        let bad = |m: String| Err(Error::InvalidSubgraph(m));
        let mut vertices = BTreeSet::new();
        for &v in &spec.vertices {
            if v >= curve.vertices().len() {
                return bad(format!("vertex index {v} out of range"));
            }
            vertices.insert(v);
        }
        let mut raw: BTreeMap<usize, Vec<(Rational, Extended)>> = BTreeMap::new();
        for &e in &spec.edges {
            if e >= curve.edges().len() {
                return bad(format!("edge index {e} out of range"));
            }
            raw.entry(e).or_default().push((Rational::zero(), curve.edge(e).length.clone()));
        }
        for (e, a, b) in &spec.intervals {
            let Some(edge) = curve.edges().get(*e) else { return bad(format!("edge index {e} out of range")) };
            if a.is_negative() || Extended::Finite(a.clone()) > *b || *b > edge.length {
                return bad(format!("interval [{}, {b}] invalid on edge {}", fmt_rational(a), edge.id));
            }
            raw.entry(*e).or_default().push((a.clone(), b.clone()));
        }
        let mut intervals = BTreeMap::new();
        for (e, mut list) in raw {
            list.sort();
            let edge = curve.edge(e);
            let mut merged: Vec<(Rational, Extended)> = Vec::new();
            for (a, b) in list {
                match merged.last_mut() {
                    Some((_, hi)) if Extended::Finite(a.clone()) <= *hi => {
                        if b > *hi {
                            *hi = b;
                        }
                    }
                    _ => merged.push((a, b)),
                }
            }
            let mut kept = Vec::new();
            for (a, b) in merged {
                let at_u = a.is_zero();
                let at_v = b == edge.length;
                if at_u {
                    vertices.insert(edge.u);
                }
                if at_v {
                    vertices.insert(edge.v);
                }
                let degenerate = Extended::Finite(a.clone()) == b;
                if !(degenerate && (at_u || at_v)) {
                    kept.push((a, b));
                }
            }
            if !kept.is_empty() {
                intervals.insert(e, kept);
            }
        }
        let mut sg = Subgraph { curve, vertices, intervals, components: Vec::new() };
        sg.components = sg.compute_components()?;
        Ok(sg)
    }

    /// The whole curve as a subgraph.
    pub fn whole(curve: Arc<Curve>) -> Result<Subgraph> {
        let spec = SubgraphSpec {
            vertices: (0..curve.vertices().len()).collect(),
            edges: (0..curve.edges().len()).collect(),
            intervals: vec![],
        };
        Subgraph::new(curve, &spec)
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn vertex_set(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn intervals(&self) -> &BTreeMap<usize, Vec<(Rational, Extended)>> {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.intervals.is_empty()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    fn compute_components(&self) -> Result<Vec<Component>> {
        let vlist: Vec<usize> = self.vertices.iter().copied().collect();
        let ilist: Vec<(usize, Rational, Extended)> = self
            .intervals
            .iter()
            .flat_map(|(e, l)| l.iter().map(move |(a, b)| (*e, a.clone(), b.clone())))
            .collect();
        let n = vlist.len() + ilist.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let vpos: BTreeMap<usize, usize> = vlist.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        for (k, (e, a, b)) in ilist.iter().enumerate() {
            let edge = self.curve.edge(*e);
            let node = vlist.len() + k;
            let mut join = |v: usize| {
                let (x, y) = (find(&mut parent, node), find(&mut parent, vpos[&v]));
                parent[x.max(y)] = x.min(y);
            };
            if a.is_zero() {
                join(edge.u);
            }
            if *b == edge.length {
                join(edge.v);
            }
        }
        let mut groups: BTreeMap<usize, Component> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            let c = groups.entry(r).or_insert(Component { vertices: vec![], intervals: vec![] });
            if i < vlist.len() {
                c.vertices.push(vlist[i]);
            } else {
                c.intervals.push(ilist[i - vlist.len()].clone());
            }
        }
        let comps: Vec<Component> = groups.into_values().collect();
        for c in &comps {
            if c.intervals.is_empty() && c.vertices.len() == 1 && self.curve.vertex(c.vertices[0]).at_infinity {
                return Err(Error::InvalidSubgraph(format!(
                    "component consisting only of the point at infinity {}",
                    self.curve.vertex(c.vertices[0]).id
                )));
            }
        }
        Ok(comps)
    }

    pub fn contains(&self, p: &PointRef) -> Result<bool> {
        Ok(match self.curve.normalize(p)? {
            PointRef::Vertex(v) => self.vertices.contains(&v),
            PointRef::OnEdge(e, t) => self
                .intervals
                .get(&e)
                .is_some_and(|l| l.iter().any(|(a, b)| *a <= t && Extended::Finite(t.clone()) <= *b)),
            PointRef::InfinityOf(_) => unreachable!(),
        })
    }

    /// Index of the component containing `p`, if any.
    pub fn component_of(&self, p: &PointRef) -> Result<Option<usize>> {
        let p = self.curve.normalize(p)?;
        for (i, c) in self.components.iter().enumerate() {
            let hit = match &p {
                PointRef::Vertex(v) => c.vertices.contains(v),
                PointRef::OnEdge(e, t) => c
                    .intervals
                    .iter()
                    .any(|(ee, a, b)| ee == e && a <= t && Extended::Finite(t.clone()) <= *b),
                PointRef::InfinityOf(_) => unreachable!(),
            };
            if hit {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Seeds for a multi-source shortest-path search from the subgraph.
    pub(crate) fn distance_sources(&self) -> Vec<(usize, Rational)> {
        let mut s: Vec<(usize, Rational)> = self.vertices.iter().map(|v| (*v, Rational::zero())).collect();
        for (e, list) in &self.intervals {
            let edge = self.curve.edge(*e);
            for (a, b) in list {
                s.push((edge.u, a.clone()));
                if let (Extended::Finite(l), Extended::Finite(b)) = (&edge.length, b) {
                    s.push((edge.v, l - b));
                }
            }
        }
        s
    }

    /// Infimum of distances from subgraph points to `q`; ∞ if unreachable.
    pub fn distance_to(&self, q: &PointRef) -> Result<Extended> {
        let q = self.curve.normalize(q)?;
        if self.contains(&q)? {
            return Ok(Extended::Finite(Rational::zero()));
        }
        if self.curve.is_at_infinity(&q)? {
            return Ok(Extended::Infinite);
        }
        let table = self.curve.vertex_distances(&self.distance_sources());
        let mut best = self.curve.distance_from_table(&table, &q);
        if let PointRef::OnEdge(e, t) = &q {
            for (a, b) in self.intervals.get(e).map(Vec::as_slice).unwrap_or(&[]) {
                if t < a {
                    best = best.min(Extended::Finite(a - t));
                } else if let Extended::Finite(b) = b {
                    best = best.min(Extended::Finite(t - b));
                }
            }
        }
        Ok(best)
    }

    /// Each component as a curve in its own right, with inherited lengths and ray classes.
    pub fn component_curves(&self) -> Vec<SubCurve> {
        self.components.iter().map(|c| self.component_curve(c)).collect()
    }

    fn component_curve(&self, comp: &Component) -> SubCurve {
        let cv = &self.curve;
        let mut vertices = Vec::new();
        let mut vertex_points = Vec::new();
        let mut index: BTreeMap<PointRef, usize> = BTreeMap::new();
        for &v in &comp.vertices {
            index.insert(PointRef::Vertex(v), vertices.len());
            vertices.push(cv.vertex(v).clone());
            vertex_points.push(PointRef::Vertex(v));
        }
        fn point(
            cv: &Curve,
            p: PointRef,
            index: &mut BTreeMap<PointRef, usize>,
            vertices: &mut Vec<Vertex>,
            vertex_points: &mut Vec<PointRef>,
        ) -> usize {
            if let Some(i) = index.get(&p) {
                return *i;
            }
            let id = cv.point_label(&p);
            index.insert(p.clone(), vertices.len());
            vertices.push(Vertex { id, at_infinity: false });
            vertex_points.push(p);
            vertices.len() - 1
        }
        let mut edges = Vec::new();
        let mut pieces = Vec::new();
        let mut classes = BTreeMap::new();
        for (e, a, b) in &comp.intervals {
            let edge = cv.edge(*e);
            let pa = cv.normalize(&PointRef::OnEdge(*e, a.clone())).expect("valid offset");
            let u = point(cv, pa, &mut index, &mut vertices, &mut vertex_points);
            if Extended::Finite(a.clone()) == *b {
                continue;
            }
            let v = match b {
                Extended::Infinite => index[&PointRef::Vertex(edge.v)],
                Extended::Finite(bf) => {
                    let pb = cv.normalize(&PointRef::OnEdge(*e, bf.clone())).expect("valid offset");
                    point(cv, pb, &mut index, &mut vertices, &mut vertex_points)
                }
            };
            let whole = a.is_zero() && *b == edge.length;
            let id = if whole { edge.id.clone() } else { format!("{}[{},{}]", edge.id, fmt_rational(a), b) };
            let length = match b {
                Extended::Infinite => Extended::Infinite,
                Extended::Finite(bf) => Extended::Finite(bf - a),
            };
            if let Some(c) = cv.ray_class(*e) {
                if length.is_infinite() {
                    classes.insert(edges.len(), c.to_string());
                }
            }
            edges.push(Edge { id, u, v, length });
            pieces.push(Piece { edge: *e, start: a.clone(), end: b.clone() });
        }
        let curve = Curve::assemble(vertices, edges, classes).expect("pieces of a valid curve");
        SubCurve { curve: Arc::new(curve), vertex_points, pieces }
    }
}

impl SubCurve {
    /// Maps a point of the component curve back to the original curve.
    pub fn to_original(&self, p: &PointRef) -> Result<PointRef> {
        match self.curve.normalize(p)? {
            PointRef::Vertex(v) => Ok(self.vertex_points[v].clone()),
            PointRef::OnEdge(e, t) => {
                let piece = &self.pieces[e];
                Ok(PointRef::OnEdge(piece.edge, &piece.start + t))
            }
            PointRef::InfinityOf(_) => unreachable!(),
        }
    }
}

/// Splits a curve into its connected components.
pub fn split_components(curve: &Arc<Curve>) -> Vec<SubCurve> {
    Subgraph::whole(curve.clone()).expect("whole curve is a valid subgraph").component_curves()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveDesc;
    use crate::rational::{q, qq};

    fn segment(len: i64) -> Arc<Curve> {
        Arc::new(
            Curve::build(CurveDesc::default().vertex("A", false).vertex("B", false).edge("e", "A", "B", Extended::Finite(q(len))))
                .unwrap(),
        )
    }

    #[test]
    fn whole_curve() {
        let c = segment(3);
        let s = Subgraph::whole(c.clone()).unwrap();
        assert_eq!(s.num_components(), 1);
        let parts = s.component_curves();
        assert_eq!(*parts[0].curve, *c);
    }

    #[test]
    fn point_subgraph() {
        let c = segment(3);
        let spec = SubgraphSpec { intervals: vec![(0, q(1), Extended::Finite(q(1)))], ..Default::default() };
        let s = Subgraph::new(c, &spec).unwrap();
        assert_eq!(s.num_components(), 1);
        let parts = s.component_curves();
        assert_eq!(parts[0].curve.vertices().len(), 1);
        assert_eq!(parts[0].curve.vertex(0).id, "e@1");
        assert!(s.contains(&PointRef::OnEdge(0, q(1))).unwrap());
        assert_eq!(s.distance_to(&PointRef::Vertex(1)).unwrap(), Extended::Finite(q(2)));
    }

    #[test]
    fn normalization_merges_and_folds() {
        let c = segment(3);
        let spec = SubgraphSpec {
            vertices: vec![],
            edges: vec![],
            intervals: vec![
                (0, q(0), Extended::Finite(q(1))),
                (0, qq(1, 2), Extended::Finite(q(2))),
                (0, q(3), Extended::Finite(q(3))),
            ],
        };
        let s = Subgraph::new(c.clone(), &spec).unwrap();
        assert_eq!(s.vertex_set().iter().copied().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(s.intervals()[&0], vec![(q(0), Extended::Finite(q(2)))]);
        assert_eq!(s.num_components(), 2);
        let parts = s.component_curves();
        assert_eq!(parts[0].curve.edge(0).id, "e[0,2]");
        assert_eq!(parts[0].curve.edge(0).length, Extended::Finite(q(2)));
        assert_eq!(parts[1].curve.edges().len(), 0);
    }

    #[test]
    fn lone_infinity_rejected() {
        let c = Arc::new(Curve::build(CurveDesc::default().vertex("A", false).ray("r", "A", "c")).unwrap());
        let spec = SubgraphSpec { vertices: vec![1], ..Default::default() };
        assert!(matches!(Subgraph::new(c.clone(), &spec), Err(Error::InvalidSubgraph(_))));
        let spec = SubgraphSpec { intervals: vec![(0, q(2), Extended::Infinite)], ..Default::default() };
        let s = Subgraph::new(c, &spec).unwrap();
        let parts = s.component_curves();
        assert_eq!(parts[0].curve.edge(0).length, Extended::Infinite);
        assert_eq!(parts[0].curve.ray_class(0), Some("c"));
        assert!(parts[0].curve.vertex(parts[0].curve.edge(0).v).at_infinity);
    }

    #[test]
    fn invalid_intervals() {
        let c = segment(3);
        let spec = SubgraphSpec { intervals: vec![(0, q(2), Extended::Finite(q(1)))], ..Default::default() };
        assert!(Subgraph::new(c.clone(), &spec).is_err());
        let spec = SubgraphSpec { intervals: vec![(0, q(2), Extended::Infinite)], ..Default::default() };
        assert!(Subgraph::new(c, &spec).is_err());
    }
}
