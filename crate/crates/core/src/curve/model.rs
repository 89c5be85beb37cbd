use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, Extended, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub at_infinity: bool,
}

/// An edge `u → v`. Infinite edges are stored with the finite end as `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub length: Extended,
}

impl Edge {
    pub fn is_infinite(&self) -> bool {
        self.length.is_infinite()
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// A leaving direction at a point: along `edge` toward larger offsets (`forward`) or smaller ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dir {
    pub edge: usize,
    pub forward: bool,
}

/// Input description for [`Curve::build`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurveDesc {
    pub vertices: Vec<(String, bool)>,
    pub edges: Vec<EdgeDesc>,
    pub ray_classes: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDesc {
    pub id: String,
    pub u: String,
    /// May be omitted for an infinite edge; an at-infinity endpoint is then created.
    pub v: Option<String>,
    pub length: Extended,
}

impl CurveDesc {
    pub fn vertex(mut self, id: &str, at_infinity: bool) -> Self {
        self.vertices.push((id.to_string(), at_infinity));
        self
    }

    pub fn edge(mut self, id: &str, u: &str, v: &str, length: Extended) -> Self {
        self.edges.push(EdgeDesc { id: id.into(), u: u.into(), v: Some(v.into()), length });
        self
    }

    /// An infinite edge from `u` with its at-infinity end synthesized.
    pub fn ray(mut self, id: &str, u: &str, class: &str) -> Self {
        self.edges.push(EdgeDesc { id: id.into(), u: u.into(), v: None, length: Extended::Infinite });
        self.ray_classes.insert(id.into(), class.into());
        self
    }

    pub fn class(mut self, edge: &str, class: &str) -> Self {
        self.ray_classes.insert(edge.into(), class.into());
        self
    }
}

/// A model (G, l) of a possibly disconnected tropical curve with parallel-ray classes.
#[derive(Clone, Debug)]
pub struct Curve {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    ray_class: BTreeMap<usize, String>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    incident: Vec<Vec<Dir>>,
    component: Vec<usize>,
    num_components: usize,
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.ray_class == other.ray_class
    }
}

impl Eq for Curve {}

/// Suffix used for synthesized at-infinity vertex ids.
pub const INF_SUFFIX: &str = ".inf";

impl Curve {
    pub fn build(desc: CurveDesc) -> Result<Curve> {
        let bad = |m: String| Err(Error::InvalidCurve(m));
        let mut vertices: Vec<Vertex> =
            desc.vertices.iter().map(|(id, inf)| Vertex { id: id.clone(), at_infinity: *inf }).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.id.is_empty() || vertex_index.insert(v.id.clone(), i).is_some() {
                return bad(format!("duplicate or empty vertex id {:?}", v.id));
            }
        }
        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        for e in &desc.edges {
            if e.id.is_empty() || edge_index.insert(e.id.clone(), edges.len()).is_some() {
                return bad(format!("duplicate or empty edge id {:?}", e.id));
            }
            if let Extended::Finite(l) = &e.length {
                if !l.is_positive() {
                    return bad(format!("edge {} has nonpositive length {}", e.id, fmt_rational(l)));
                }
            }
            let u = *vertex_index
                .get(&e.u)
                .ok_or_else(|| Error::InvalidCurve(format!("edge {} references unknown vertex {}", e.id, e.u)))?;
            let v = match &e.v {
                Some(name) => *vertex_index
                    .get(name)
                    .ok_or_else(|| Error::InvalidCurve(format!("edge {} references unknown vertex {name}", e.id)))?,
                None => {
                    if !e.length.is_infinite() {
                        return bad(format!("edge {} has no second endpoint", e.id));
                    }
                    let id = format!("{}{INF_SUFFIX}", e.id);
                    if vertex_index.contains_key(&id) {
                        return bad(format!("synthesized vertex id {id} already taken"));
                    }
                    vertex_index.insert(id.clone(), vertices.len());
                    vertices.push(Vertex { id, at_infinity: true });
                    vertices.len() - 1
                }
            };
            let (iu, iv) = (vertices[u].at_infinity, vertices[v].at_infinity);
            let (u, v) = match (&e.length, iu, iv) {
                (Extended::Infinite, _, _) if u == v => return bad(format!("loop {} cannot be infinite", e.id)),
                (Extended::Infinite, false, true) => (u, v),
                (Extended::Infinite, true, false) => (v, u),
                (Extended::Infinite, _, _) => {
                    return bad(format!("infinite edge {} needs exactly one at-infinity endpoint", e.id))
                }
                (Extended::Finite(_), false, false) => (u, v),
                (Extended::Finite(_), _, _) => {
                    return bad(format!("finite edge {} touches a point at infinity", e.id))
                }
            };
            edges.push(Edge { id: e.id.clone(), u, v, length: e.length.clone() });
        }
        if vertices.is_empty() {
            return bad("empty graph".into());
        }
        let mut ray_class = BTreeMap::new();
        for (eid, label) in &desc.ray_classes {
            let i = *edge_index
                .get(eid)
                .ok_or_else(|| Error::InvalidCurve(format!("ray class for unknown edge {eid}")))?;
            if !edges[i].is_infinite() {
                return bad(format!("ray class given for finite edge {eid}"));
            }
            ray_class.insert(i, label.clone());
        }
        for (i, e) in edges.iter().enumerate() {
            if e.is_infinite() && !ray_class.contains_key(&i) {
                return bad(format!("infinite edge {} has no ray class", e.id));
            }
        }
        let curve = Curve::assemble(vertices, edges, ray_class)?;
        for (i, v) in curve.vertices.iter().enumerate() {
            if v.at_infinity && curve.incident[i].len() != 1 {
                return bad(format!("point at infinity {} must have valence 1", v.id));
            }
        }
        Ok(curve)
    }

    /// Builds derived tables for already-validated parts.
    pub(crate) fn assemble(vertices: Vec<Vertex>, edges: Vec<Edge>, ray_class: BTreeMap<usize, String>) -> Result<Curve> {
        let vertex_index = vertices.iter().enumerate().map(|(i, v)| (v.id.clone(), i)).collect();
        let edge_index = edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        let mut incident = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incident[e.u].push(Dir { edge: i, forward: true });
            incident[e.v].push(Dir { edge: i, forward: false });
        }
        for list in &mut incident {
            list.sort_by(|a: &Dir, b: &Dir| (&edges[a.edge].id, !a.forward).cmp(&(&edges[b.edge].id, !b.forward)));
        }
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for e in &edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = HashMap::new();
        let mut component = Vec::with_capacity(vertices.len());
        for i in 0..vertices.len() {
            let root = find(&mut parent, i);
            let next = label.len();
            component.push(*label.entry(root).or_insert(next));
        }
        let num_components = label.len();
        Ok(Curve { vertices, edges, ray_class, vertex_index, edge_index, incident, component, num_components })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn vertex_id(&self, name: &str) -> Result<usize> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::InvalidPoint(format!("no vertex {name}")))
    }

    pub fn edge_id(&self, name: &str) -> Result<usize> {
        self.edge_index.get(name).copied().ok_or_else(|| Error::InvalidPoint(format!("no edge {name}")))
    }

    pub fn ray_classes(&self) -> &BTreeMap<usize, String> {
        &self.ray_class
    }

    pub fn ray_class(&self, edge: usize) -> Option<&str> {
        self.ray_class.get(&edge).map(String::as_str)
    }

    /// Leaving directions at a vertex, sorted by edge id with the `u` end first.
    pub fn incident(&self, v: usize) -> &[Dir] {
        &self.incident[v]
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    pub fn is_connected(&self) -> bool {
        self.num_components == 1
    }

    pub fn finite_length(&self, e: usize) -> Option<&Rational> {
        self.edges[e].length.finite()
    }

    /// Ray edges grouped by class label.
    pub fn classes(&self) -> BTreeMap<&str, Vec<usize>> {
        let mut out: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (e, c) in &self.ray_class {
            out.entry(c.as_str()).or_default().push(*e);
        }
        out
    }

    /// Returns a copy with ray classes replaced; every infinite edge must be labelled.
    pub fn with_classes(&self, classes: BTreeMap<usize, String>) -> Result<Curve> {
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_infinite() != classes.contains_key(&i) {
                return Err(Error::InvalidCurve(format!("ray class mismatch on edge {}", e.id)));
            }
        }
        Curve::assemble(self.vertices.clone(), self.edges.clone(), classes)
    }

    pub fn to_desc(&self) -> CurveDesc {
        CurveDesc {
            vertices: self.vertices.iter().map(|v| (v.id.clone(), v.at_infinity)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDesc {
                    id: e.id.clone(),
                    u: self.vertices[e.u].id.clone(),
                    v: Some(self.vertices[e.v].id.clone()),
                    length: e.length.clone(),
                })
                .collect(),
            ray_classes: self.ray_class.iter().map(|(e, c)| (self.edges[*e].id.clone(), c.clone())).collect(),
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} vertices, {} edges, {} component(s)", self.vertices.len(), self.edges.len(), self.num_components)?;
        for e in &self.edges {
            write!(f, "  {}: {} -- {} length {}", e.id, self.vertices[e.u].id, self.vertices[e.v].id, e.length)?;
            if let Some(c) = self.ray_class.get(&self.edge_index[&e.id]) {
                write!(f, " class {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parses `"p/q"`, an integer, or `"inf"`.
pub fn parse_length(s: &str) -> Result<Extended> {
    match s.trim() {
        "inf" | "∞" => Ok(Extended::Infinite),
        t => parse_rational(t).map(Extended::Finite),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn fin(x: i64) -> Extended {
        Extended::Finite(q(x))
    }

    #[test]
    fn segment() {
        let c = Curve::build(CurveDesc::default().vertex("A", false).vertex("B", false).edge("e", "A", "B", fin(3)))
            .unwrap();
        assert_eq!((c.vertices().len(), c.edges().len()), (2, 1));
        assert!(c.is_connected());
    }

    #[test]
    fn synthesized_infinity() {
        let c = Curve::build(CurveDesc::default().vertex("A", false).ray("r", "A", "e+")).unwrap();
        assert_eq!(c.vertices().len(), 2);
        assert!(c.vertex(1).at_infinity);
        assert_eq!(c.vertex(1).id, "r.inf");
        assert_eq!(c.ray_class(0), Some("e+"));
    }

    #[test]
    fn real_line_with_classes() {
        for (l, r) in [("left", "right"), ("same", "same")] {
            let c = Curve::build(
                CurveDesc::default()
                    .vertex("A", false)
                    .vertex("B", false)
                    .edge("m", "A", "B", fin(1))
                    .ray("L", "A", l)
                    .ray("R", "B", r),
            )
            .unwrap();
            assert_eq!(c.classes().len(), if l == r { 1 } else { 2 });
        }
    }

    #[test]
    fn reversed_infinite_edge_is_normalized() {
        let c = Curve::build(
            CurveDesc::default()
                .vertex("X", true)
                .vertex("A", false)
                .edge("r", "X", "A", Extended::Infinite)
                .class("r", "c"),
        )
        .unwrap();
        assert_eq!(c.edge(0).u, 1);
    }

    #[test]
    fn rejections() {
        let base = CurveDesc::default().vertex("A", false).vertex("B", false);
        assert!(Curve::build(base.clone().edge("e", "A", "B", fin(0))).is_err());
        assert!(Curve::build(base.clone().edge("e", "A", "A", Extended::Infinite).class("e", "c")).is_err());
        assert!(Curve::build(base.clone().edge("e", "A", "B", Extended::Infinite).class("e", "c")).is_err());
        let missing_class = CurveDesc {
            edges: vec![EdgeDesc { id: "r".into(), u: "A".into(), v: None, length: Extended::Infinite }],
            ..base.clone()
        };
        assert!(Curve::build(missing_class).is_err());
        assert!(Curve::build(CurveDesc::default()).is_err());
        // an at-infinity vertex with two edges is not a leaf end
        let two = CurveDesc::default()
            .vertex("A", false)
            .vertex("B", false)
            .vertex("X", true)
            .edge("r", "A", "X", Extended::Infinite)
            .edge("s", "B", "X", Extended::Infinite)
            .class("r", "c")
            .class("s", "c");
        assert!(Curve::build(two).is_err());
    }
}
