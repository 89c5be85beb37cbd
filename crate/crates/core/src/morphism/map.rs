//! Morphisms of curves with parallel-ray classes, and pullback of functions.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::curve::{Curve, PointRef};
use crate::error::{Error, Result};
use crate::rat_fun::{PlFunction, Profile};
use crate::rational::{fmt_rational, Extended, Rational};

/// Image of a source edge: a whole target edge, or a single target vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EdgeTarget {
    /// `reversed` means the source `u` end lands on the target `v` end.
    Edge { edge: usize, reversed: bool },
    Vertex(usize),
}

/// A map between curve models given on vertices and edges, with a degree per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: Arc<Curve>,
    pub target: Arc<Curve>,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<EdgeTarget>,
    pub degrees: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

impl Morphism {
    pub fn identity(c: Arc<Curve>) -> Morphism {
        Morphism {
            vertex_map: (0..c.vertices().len()).collect(),
            edge_map: (0..c.edges().len()).map(|edge| EdgeTarget::Edge { edge, reversed: false }).collect(),
            degrees: vec![1; c.edges().len()],
            target: c.clone(),
            source: c,
        }
    }

    pub fn validate(&self) -> MorphismReport {
        let mut bad = Vec::new();
        let (s, t) = (&*self.source, &*self.target);
        if self.vertex_map.len() != s.vertices().len() {
            bad.push(format!("vertex map has {} entries for {} vertices", self.vertex_map.len(), s.vertices().len()));
        }
        if self.edge_map.len() != s.edges().len() || self.degrees.len() != s.edges().len() {
            bad.push(format!("edge map or degrees do not cover the {} source edges", s.edges().len()));
        }
        if !bad.is_empty() {
            return MorphismReport { ok: false, violations: bad };
        }
        for (name, c) in [("source", s), ("target", t)] {
            for e in c.edges().iter().filter(|e| e.is_loop()) {
                bad.push(format!("{name} edge {} is a loop; subdivide to a loopless model", e.id));
            }
        }
        for (v, &w) in self.vertex_map.iter().enumerate() {
            if w >= t.vertices().len() {
                bad.push(format!("vertex {} maps to missing vertex {w}", s.vertex(v).id));
            } else if !s.vertex(v).at_infinity && t.vertex(w).at_infinity {
                bad.push(format!("finite vertex {} maps to a point at infinity", s.vertex(v).id));
            }
        }
        if !bad.is_empty() {
            return MorphismReport { ok: false, violations: bad };
        }
        for (i, e) in s.edges().iter().enumerate() {
            let deg = self.degrees[i];
            let (pu, pv) = (self.vertex_map[e.u], self.vertex_map[e.v]);
            match &self.edge_map[i] {
                EdgeTarget::Vertex(w) => {
                    if deg != 0 {
                        bad.push(format!("edge {} is collapsed but has degree {deg}", e.id));
                    }
                    if *w >= t.vertices().len() || t.vertex(*w).at_infinity {
                        bad.push(format!("edge {} collapses onto a non-finite vertex", e.id));
                    } else if pu != *w || pv != *w {
                        bad.push(format!("edge {} collapses to {} but its ends map elsewhere", e.id, t.vertex(*w).id));
                    }
                }
                EdgeTarget::Edge { edge, reversed } => {
                    let Some(te) = t.edges().get(*edge) else {
                        bad.push(format!("edge {} maps to missing edge {edge}", e.id));
                        continue;
                    };
                    if deg == 0 {
                        bad.push(format!("edge {} maps onto edge {} with degree 0", e.id, te.id));
                    }
                    let (tu, tv) = if *reversed { (te.v, te.u) } else { (te.u, te.v) };
                    if (pu, pv) != (tu, tv) {
                        bad.push(format!("endpoints of edge {} do not map to the ends of {}", e.id, te.id));
                    }
                    match (&e.length, &te.length) {
                        (Extended::Finite(l), Extended::Finite(m)) => {
                            let expect = l * Rational::from_integer(deg.into());
                            if *m != expect {
                                bad.push(format!(
                                    "metric law fails on edge {}: {} != {deg} * {}",
                                    e.id,
                                    fmt_rational(m),
                                    fmt_rational(l)
                                ));
                            }
                        }
                        (Extended::Infinite, Extended::Infinite) => {
                            if *reversed {
                                bad.push(format!("ray {} maps onto ray {} reversed", e.id, te.id));
                            }
                        }
                        _ => bad.push(format!("edge {} and its image {} differ in finiteness", e.id, te.id)),
                    }
                }
            }
        }
        for (class, rays) in s.classes() {
            let mut images: Vec<(Option<&str>, u64)> = Vec::new();
            for &r in &rays {
                match &self.edge_map[r] {
                    EdgeTarget::Vertex(_) => images.push((None, 0)),
                    EdgeTarget::Edge { edge, .. } => images.push((t.ray_class(*edge), self.degrees[r])),
                }
            }
            if images.windows(2).any(|w| w[0] != w[1]) {
                bad.push(format!("class {class} maps to rays of different classes or degrees"));
            }
        }
        MorphismReport { ok: bad.is_empty(), violations: bad }
    }

    fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.ok {
            Ok(())
        } else {
            Err(Error::InvalidMorphism(r.violations))
        }
    }

    /// Image of a source point.
    pub fn apply(&self, p: &PointRef) -> Result<PointRef> {
        self.require_valid()?;
        Ok(match self.source.normalize(p)? {
            PointRef::Vertex(v) => PointRef::Vertex(self.vertex_map[v]),
            PointRef::OnEdge(e, t) => match &self.edge_map[e] {
                EdgeTarget::Vertex(w) => PointRef::Vertex(*w),
                EdgeTarget::Edge { edge, reversed } => {
                    let s = t * Rational::from_integer(self.degrees[e].into());
                    let s = if *reversed { self.target.finite_length(*edge).unwrap() - s } else { s };
                    self.target.normalize(&PointRef::OnEdge(*edge, s))?
                }
            },
            PointRef::InfinityOf(_) => unreachable!(),
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        self.require_valid()?;
        next.require_valid()?;
        if *self.target != *next.source {
            return Err(Error::CurveMismatch);
        }
        let mut edge_map = Vec::new();
        let mut degrees = Vec::new();
        for (i, img) in self.edge_map.iter().enumerate() {
            match img {
                EdgeTarget::Vertex(w) => {
                    edge_map.push(EdgeTarget::Vertex(next.vertex_map[*w]));
                    degrees.push(0);
                }
                EdgeTarget::Edge { edge, reversed } => {
                    match &next.edge_map[*edge] {
                        EdgeTarget::Vertex(w) => edge_map.push(EdgeTarget::Vertex(*w)),
                        EdgeTarget::Edge { edge: e2, reversed: r2 } => {
                            edge_map.push(EdgeTarget::Edge { edge: *e2, reversed: reversed ^ r2 })
                        }
                    }
                    degrees.push(self.degrees[i] * next.degrees[*edge]);
                }
            }
        }
        Ok(Morphism {
            source: self.source.clone(),
            target: next.target.clone(),
            vertex_map: self.vertex_map.iter().map(|&w| next.vertex_map[w]).collect(),
            edge_map,
            degrees,
        })
    }

    /// The pullback `f ∘ φ`.
    pub fn pullback(&self, f: &PlFunction) -> Result<PlFunction> {
        self.require_valid()?;
        if *f.curve().as_ref() != *self.target {
            return Err(Error::CurveMismatch);
        }
        if f.is_neg_inf() {
            return Ok(PlFunction::neg_inf(self.source.clone()));
        }
        let mut profiles = Vec::with_capacity(self.edge_map.len());
        for (i, img) in self.edge_map.iter().enumerate() {
            let e = self.source.edge(i);
            profiles.push(match img {
                EdgeTarget::Vertex(w) => Profile::affine(&e.length, f.vertex_value(*w).unwrap().clone(), 0),
                EdgeTarget::Edge { edge, reversed } => {
                    let p = f.profile(*edge).unwrap();
                    let p = if *reversed { p.reversed() } else { p.clone() };
                    p.compress(self.degrees[i] as i64)
                }
            });
        }
        let isolated: BTreeMap<usize, Rational> = (0..self.source.vertices().len())
            .filter(|&v| self.source.incident(v).is_empty())
            .map(|v| (v, f.vertex_value(self.vertex_map[v]).unwrap().clone()))
            .collect();
        PlFunction::from_profiles(self.source.clone(), profiles, &isolated)
    }
}
