//! Gluing two curves along a common subgraph.
//!
//! A subgraph Γ′ is given as a curve of its own together with two embeddings.
//! Each edge of Γ′ must land inside a single edge of the target model, so callers
//! subdivide Γ′ first when an image would pass through a vertex.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::curve::{subdivide, Subdivision};
use crate::curve::{Curve, Edge, PointRef, Vertex};
use crate::error::{Error, Result};
use crate::rational::{Extended, Rational};

/// Where one edge of the shared curve goes: `u` maps to offset `start` of `edge`,
/// and the image runs toward increasing offsets unless `reversed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeImage {
    pub edge: usize,
    pub start: Rational,
    pub reversed: bool,
}

/// An isometric embedding of the shared curve, listed per shared vertex and edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub vertices: Vec<PointRef>,
    pub edges: Vec<EdgeImage>,
}

/// Result of [`glue`]: the quotient curve and the maps from both inputs.
#[derive(Clone, Debug)]
pub struct Glued {
    pub curve: Arc<Curve>,
    pub shared: Arc<Curve>,
    pub inputs: [Arc<Curve>; 2],
    pub embeddings: [Embedding; 2],
    subdivisions: [Subdivision; 2],
    /// Glued vertex of each vertex of the second refined input.
    second_vertices: Vec<usize>,
    /// Glued edge of each edge of the second refined input, with orientation flip.
    second_edges: Vec<(usize, bool)>,
    /// Source of each glued edge: (input side, original edge, start offset).
    origins: Vec<(usize, usize, Rational)>,
}

fn interval(shared: &Curve, k: usize, img: &EdgeImage) -> (Rational, Extended) {
    match (&shared.edge(k).length, img.reversed) {
        (Extended::Finite(l), false) => (img.start.clone(), Extended::Finite(&img.start + l)),
        (Extended::Finite(l), true) => (&img.start - l, Extended::Finite(img.start.clone())),
        (Extended::Infinite, _) => (img.start.clone(), Extended::Infinite),
    }
}

/// Checks that `emb` is an injective isometric embedding of `shared` into `target`.
pub fn validate_embedding(shared: &Curve, target: &Curve, emb: &Embedding) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidEmbedding(m));
    if emb.vertices.len() != shared.vertices().len() || emb.edges.len() != shared.edges().len() {
        return bad("embedding does not match the shared curve".into());
    }
    let mut images = Vec::new();
    for (w, p) in emb.vertices.iter().enumerate() {
        let p = target.normalize(p)?;
        if target.is_at_infinity(&p)? != shared.vertex(w).at_infinity {
            return bad(format!("vertex {} changes finiteness", shared.vertex(w).id));
        }
        if images.contains(&p) {
            return bad(format!("vertex {} is not mapped injectively", shared.vertex(w).id));
        }
        images.push(p);
    }
    let mut spans: Vec<(usize, Rational, Extended)> = Vec::new();
    for (k, img) in emb.edges.iter().enumerate() {
        let se = shared.edge(k);
        let te = target.edges().get(img.edge).ok_or_else(|| Error::InvalidEmbedding(format!("no target edge {}", img.edge)))?;
        if se.is_infinite() && (img.reversed || !te.is_infinite()) {
            return bad(format!("ray {} must map onto a ray in its own direction", se.id));
        }
        let (a, b) = interval(shared, k, img);
        if a < Rational::zero() || b > te.length || (se.is_infinite() != b.is_infinite()) {
            return bad(format!("edge {} does not fit in edge {}", se.id, te.id));
        }
        let start = target.normalize(&PointRef::OnEdge(img.edge, img.start.clone()))?;
        let end = match (&b, img.reversed) {
            (Extended::Infinite, _) => PointRef::Vertex(te.v),
            (Extended::Finite(_), true) => target.normalize(&PointRef::OnEdge(img.edge, a.clone()))?,
            (Extended::Finite(b), false) => target.normalize(&PointRef::OnEdge(img.edge, b.clone()))?,
        };
        if start != images[se.u] || end != images[se.v] {
            return bad(format!("edge {} endpoints disagree with the vertex images", se.id));
        }
        for (w, p) in images.iter().enumerate() {
            if let PointRef::OnEdge(e, t) = p {
                if *e == img.edge && a < *t && Extended::Finite(t.clone()) < b {
                    return bad(format!("vertex {} lies inside the image of edge {}", shared.vertex(w).id, se.id));
                }
            }
        }
        for (e, a2, b2) in &spans {
            let lo = if a > *a2 { a.clone() } else { a2.clone() };
            let hi = if b < *b2 { b.clone() } else { b2.clone() };
            if *e == img.edge && Extended::Finite(lo) < hi {
                return bad(format!("edge {} overlaps another edge image", se.id));
            }
        }
        spans.push((img.edge, a, b));
    }
    Ok(())
}

fn refine(shared: &Curve, c: &Curve, emb: &Embedding) -> Result<Subdivision> {
    let mut cuts: BTreeMap<usize, BTreeSet<Rational>> = BTreeMap::new();
    for p in &emb.vertices {
        if let PointRef::OnEdge(e, t) = c.normalize(p)? {
            cuts.entry(e).or_default().insert(t);
        }
    }
    for (k, img) in emb.edges.iter().enumerate() {
        let (a, b) = interval(shared, k, img);
        let set = cuts.entry(img.edge).or_default();
        set.insert(a);
        if let Extended::Finite(b) = b {
            set.insert(b);
        }
    }
    subdivide(c, &cuts)
}

fn image_edge(shared: &Curve, sub: &Subdivision, k: usize, img: &EdgeImage) -> usize {
    let (a, _) = interval(shared, k, img);
    sub.pieces[img.edge].iter().find(|(s, _)| *s == a).expect("refined at the image start").1
}

/// Glues `c1` and `c2` along the images of `shared`. Ids in the result are
/// prefixed `0.` or `1.` by input; identified parts keep the first input's id.
pub fn glue(c1: Arc<Curve>, c2: Arc<Curve>, shared: Arc<Curve>, e1: Embedding, e2: Embedding) -> Result<Glued> {
    validate_embedding(&shared, &c1, &e1)?;
    validate_embedding(&shared, &c2, &e2)?;
    let s1 = refine(&shared, &c1, &e1)?;
    let s2 = refine(&shared, &c2, &e2)?;
    let (r1, r2) = (&s1.curve, &s2.curve);

    let mut vertices: Vec<Vertex> =
        r1.vertices().iter().map(|v| Vertex { id: format!("0.{}", v.id), at_infinity: v.at_infinity }).collect();
    let mut second_vertices = vec![usize::MAX; r2.vertices().len()];
    for (w, p) in e2.vertices.iter().enumerate() {
        let (PointRef::Vertex(x2), PointRef::Vertex(x1)) = (s2.map_point(&c2, p)?, s1.map_point(&c1, &e1.vertices[w])?) else {
            return Err(Error::Internal("refined vertex image is not a vertex".into()));
        };
        second_vertices[x2] = x1;
    }
    for (i, v) in r2.vertices().iter().enumerate() {
        if second_vertices[i] == usize::MAX {
            second_vertices[i] = vertices.len();
            vertices.push(Vertex { id: format!("1.{}", v.id), at_infinity: v.at_infinity });
        }
    }

    let mut edges: Vec<Edge> = r1
        .edges()
        .iter()
        .map(|e| Edge { id: format!("0.{}", e.id), u: e.u, v: e.v, length: e.length.clone() })
        .collect();
    let mut second_edges = vec![(usize::MAX, false); r2.edges().len()];
    let mut class_parent: BTreeMap<(usize, String), (usize, String)> = BTreeMap::new();
    fn find(p: &mut BTreeMap<(usize, String), (usize, String)>, x: (usize, String)) -> (usize, String) {
        let mut r = x;
        while let Some(n) = p.get(&r) {
            if *n == r {
                break;
            }
            r = n.clone();
        }
        r
    }
    for k in 0..shared.edges().len() {
        let g1 = image_edge(&shared, &s1, k, &e1.edges[k]);
        let g2 = image_edge(&shared, &s2, k, &e2.edges[k]);
        second_edges[g2] = (g1, e1.edges[k].reversed != e2.edges[k].reversed);
        if let (Some(a), Some(b)) = (r1.ray_class(g1), r2.ray_class(g2)) {
            let (ra, rb) = (find(&mut class_parent, (0, a.to_string())), find(&mut class_parent, (1, b.to_string())));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                class_parent.insert(hi, lo);
            }
        }
    }
    let mut classes = BTreeMap::new();
    let mut origins = Vec::new();
    for i in 0..r1.edges().len() {
        if let Some(c) = r1.ray_class(i) {
            let (s, l) = find(&mut class_parent, (0, c.to_string()));
            classes.insert(i, format!("{s}.{l}"));
        }
        origins.push(origin(0, &s1, i));
    }
    for (i, e) in r2.edges().iter().enumerate() {
        if second_edges[i].0 != usize::MAX {
            continue;
        }
        second_edges[i] = (edges.len(), false);
        if let Some(c) = r2.ray_class(i) {
            let (s, l) = find(&mut class_parent, (1, c.to_string()));
            classes.insert(edges.len(), format!("{s}.{l}"));
        }
        origins.push(origin(1, &s2, i));
        edges.push(Edge {
            id: format!("1.{}", e.id),
            u: second_vertices[e.u],
            v: second_vertices[e.v],
            length: e.length.clone(),
        });
    }
    let curve = Curve::assemble(vertices, edges, classes)?;
    Ok(Glued {
        curve: Arc::new(curve),
        shared,
        inputs: [c1, c2],
        embeddings: [e1, e2],
        subdivisions: [s1, s2],
        second_vertices,
        second_edges,
        origins,
    })
}

fn origin(side: usize, sub: &Subdivision, refined: usize) -> (usize, usize, Rational) {
    for (orig, list) in sub.pieces.iter().enumerate() {
        if let Some((s, _)) = list.iter().find(|(_, n)| *n == refined) {
            return (side, orig, s.clone());
        }
    }
    unreachable!("every refined edge lies on an original edge")
}

impl Glued {
    /// Image in the glued curve of a point of input `side` (0 or 1).
    pub fn map(&self, side: usize, p: &PointRef) -> Result<PointRef> {
        let sub = &self.subdivisions[side];
        let r = sub.map_point(&self.inputs[side], p)?;
        let out = match (side, r) {
            (0, r) => r,
            (_, PointRef::Vertex(v)) => PointRef::Vertex(self.second_vertices[v]),
            (_, PointRef::OnEdge(e, t)) => {
                let (g, flip) = self.second_edges[e];
                if flip {
                    let l = sub.curve.edge(e).length.finite().expect("flipped edges are finite").clone();
                    PointRef::OnEdge(g, l - t)
                } else {
                    PointRef::OnEdge(g, t)
                }
            }
            (_, PointRef::InfinityOf(_)) => unreachable!(),
        };
        self.curve.normalize(&out)
    }

    /// Image of a shared point under the embedding into input `side`.
    pub fn embed(&self, side: usize, p: &PointRef) -> Result<PointRef> {
        let emb = &self.embeddings[side];
        let target = &self.inputs[side];
        match self.shared.normalize(p)? {
            PointRef::Vertex(w) => target.normalize(&emb.vertices[w]),
            PointRef::OnEdge(k, t) => {
                let img = &emb.edges[k];
                let off = if img.reversed { &img.start - t } else { &img.start + t };
                target.normalize(&PointRef::OnEdge(img.edge, off))
            }
            PointRef::InfinityOf(_) => unreachable!(),
        }
    }

    /// For each glued edge: input side, original edge, and the offset on that edge
    /// matching the glued edge's `u` end. Orientation always agrees.
    pub fn origins(&self) -> &[(usize, usize, Rational)] {
        &self.origins
    }

    pub fn describe_shared_point(&self, p: &PointRef) -> String {
        match self.shared.normalize(p) {
            Ok(q) => self.shared.point_label(&q),
            Err(_) => format!("{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveDesc;
    use crate::rational::q;

    fn segment(a: &str, b: &str, e: &str, len: i64) -> Arc<Curve> {
        Arc::new(
            Curve::build(CurveDesc::default().vertex(a, false).vertex(b, false).edge(e, a, b, Extended::Finite(q(len))))
                .unwrap(),
        )
    }

    fn point() -> Arc<Curve> {
        Arc::new(Curve::build(CurveDesc::default().vertex("P", false)).unwrap())
    }

    #[test]
    fn two_segments_make_a_path() {
        let (s1, s2) = (segment("A", "B", "x", 1), segment("C", "D", "y", 1));
        let e1 = Embedding { vertices: vec![PointRef::Vertex(1)], edges: vec![] };
        let e2 = Embedding { vertices: vec![PointRef::Vertex(0)], edges: vec![] };
        let g = glue(s1, s2, point(), e1, e2).unwrap();
        assert_eq!(g.curve.vertices().len(), 3);
        assert_eq!(g.curve.edges().len(), 2);
        assert!(g.curve.is_connected());
        let a = g.map(0, &PointRef::Vertex(0)).unwrap();
        let d = g.map(1, &PointRef::Vertex(1)).unwrap();
        assert_eq!(g.curve.distance(&a, &d).unwrap().value, Extended::Finite(q(2)));
        assert_eq!(g.map(1, &PointRef::Vertex(0)).unwrap(), g.map(0, &PointRef::Vertex(1)).unwrap());
    }

    #[test]
    fn wedge_at_interior_point() {
        let (s1, s2) = (segment("A", "B", "x", 2), segment("C", "D", "y", 2));
        let e1 = Embedding { vertices: vec![PointRef::OnEdge(0, q(1))], edges: vec![] };
        let e2 = Embedding { vertices: vec![PointRef::OnEdge(0, q(1))], edges: vec![] };
        let g = glue(s1, s2, point(), e1, e2).unwrap();
        assert_eq!(g.curve.edges().len(), 4);
        assert_eq!(g.curve.vertices().len(), 5);
        let mid = g.map(0, &PointRef::OnEdge(0, q(1))).unwrap();
        assert_eq!(g.curve.valence(&mid).unwrap(), 4);
    }

    fn tripod(prefix: &str) -> Arc<Curve> {
        let c = |s: &str| format!("{prefix}{s}");
        Arc::new(
            Curve::build(
                CurveDesc::default()
                    .vertex(&c("O"), false)
                    .vertex(&c("A"), false)
                    .vertex(&c("B"), false)
                    .vertex(&c("C"), false)
                    .edge(&c("a"), &c("O"), &c("A"), Extended::Finite(q(1)))
                    .edge(&c("b"), &c("O"), &c("B"), Extended::Finite(q(1)))
                    .edge(&c("c"), &c("O"), &c("C"), Extended::Finite(q(1))),
            )
            .unwrap(),
        )
    }

    #[test]
    fn tripods_along_a_leg() {
        let (t1, t2) = (tripod("p"), tripod("q"));
        let shared = segment("S", "T", "s", 1);
        let emb = Embedding {
            vertices: vec![PointRef::Vertex(0), PointRef::Vertex(1)],
            edges: vec![EdgeImage { edge: 0, start: q(0), reversed: false }],
        };
        let g = glue(t1, t2, shared, emb.clone(), emb).unwrap();
        assert_eq!(g.curve.vertices().len(), 6);
        assert_eq!(g.curve.edges().len(), 5);
        let o = g.map(1, &PointRef::Vertex(0)).unwrap();
        assert_eq!(g.curve.valence(&o).unwrap(), 5);
    }

    #[test]
    fn reversed_image() {
        let (s1, s2) = (segment("A", "B", "x", 3), segment("C", "D", "y", 3));
        let shared = segment("S", "T", "s", 1);
        let e1 = Embedding {
            vertices: vec![PointRef::OnEdge(0, q(1)), PointRef::OnEdge(0, q(2))],
            edges: vec![EdgeImage { edge: 0, start: q(1), reversed: false }],
        };
        let e2 = Embedding {
            vertices: vec![PointRef::OnEdge(0, q(2)), PointRef::OnEdge(0, q(1))],
            edges: vec![EdgeImage { edge: 0, start: q(2), reversed: true }],
        };
        validate_embedding(&shared, &s2, &e2).unwrap();
        let g = glue(s1, s2, shared, e1, e2).unwrap();
        assert_eq!(g.curve.edges().len(), 5);
        let x = g.map(1, &PointRef::OnEdge(0, crate::rational::qq(3, 2))).unwrap();
        let y = g.map(0, &PointRef::OnEdge(0, crate::rational::qq(3, 2))).unwrap();
        assert_eq!(x, y);
        let z = g.map(1, &PointRef::OnEdge(0, crate::rational::qq(5, 4))).unwrap();
        let w = g.map(0, &PointRef::OnEdge(0, crate::rational::qq(7, 4))).unwrap();
        assert_eq!(z, w);
    }

    #[test]
    fn rejects_bad_embeddings() {
        let s1 = segment("A", "B", "x", 3);
        let shared = segment("S", "T", "s", 2);
        let e = Embedding {
            vertices: vec![PointRef::Vertex(0), PointRef::OnEdge(0, q(1))],
            edges: vec![EdgeImage { edge: 0, start: q(0), reversed: false }],
        };
        assert!(validate_embedding(&shared, &s1, &e).is_err());
        let e = Embedding { vertices: vec![PointRef::Vertex(0)], edges: vec![] };
        assert!(validate_embedding(&shared, &s1, &e).is_err());
    }

    #[test]
    fn rays_merge_classes() {
        let c = || {
            Arc::new(Curve::build(CurveDesc::default().vertex("O", false).ray("r", "O", "k").ray("l", "O", "m")).unwrap())
        };
        let shared = Arc::new(Curve::build(CurveDesc::default().vertex("S", false).ray("s", "S", "z")).unwrap());
        let emb = Embedding {
            vertices: vec![PointRef::Vertex(0), PointRef::Vertex(1)],
            edges: vec![EdgeImage { edge: 0, start: q(0), reversed: false }],
        };
        let g = glue(c(), c(), shared, emb.clone(), emb).unwrap();
        assert_eq!(g.curve.edges().len(), 3);
        assert_eq!(g.curve.classes().len(), 3);
        assert_eq!(g.curve.classes()["0.k"].len(), 1);
    }
}
