//! Weighted one-dimensional rational polyhedral complexes in ℚⁿ.

use std::collections::{BTreeMap, BTreeSet};


use crate::error::{Error, Result};
use crate::rational::{gcd_slice, primitive, Rational};
use crate::realization::geometry::{intersect_cells, Cell, Meet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: usize,
    pub b: usize,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    pub from: usize,
    pub dir: Vec<i64>,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyComplex {
    pub dim: usize,
    pub vertices: Vec<Vec<Rational>>,
    pub segments: Vec<Segment>,
    pub rays: Vec<Ray>,
}

/// An outgoing cell at a vertex: its primitive direction, weight, and which cell it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spoke {
    pub dir: Vec<i64>,
    pub weight: u64,
    pub cell: CellRef,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellRef {
    Segment(usize),
    Ray(usize),
}

impl PolyComplex {
    pub fn new(dim: usize) -> Self {
        PolyComplex { dim, vertices: Vec::new(), segments: Vec::new(), rays: Vec::new() }
    }

    /// Index of the vertex at `p`, inserting it if absent.
    pub fn vertex(&mut self, p: Vec<Rational>) -> usize {
        if let Some(i) = self.vertices.iter().position(|v| *v == p) {
            return i;
        }
        self.vertices.push(p);
        self.vertices.len() - 1
    }

    pub fn num_cells(&self) -> usize {
        self.segments.len() + self.rays.len()
    }

    /// Checks indices, primitive ray directions, positive weights and nondegenerate segments.
    pub fn validate_basic(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidComplex(m));
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != self.dim {
                return bad(format!("vertex {i} has {} coordinates, expected {}", v.len(), self.dim));
            }
        }
        let nv = self.vertices.len();
        for (i, s) in self.segments.iter().enumerate() {
            if s.a >= nv || s.b >= nv {
                return bad(format!("segment {i} references a missing vertex"));
            }
            if self.vertices[s.a] == self.vertices[s.b] {
                return bad(format!("segment {i} has zero length"));
            }
            if s.weight == 0 {
                return bad(format!("segment {i} has weight 0"));
            }
        }
        for (i, r) in self.rays.iter().enumerate() {
            if r.from >= nv {
                return bad(format!("ray {i} references a missing vertex"));
            }
            if r.dir.len() != self.dim {
                return bad(format!("ray {i} direction has wrong dimension"));
            }
            if gcd_slice(&r.dir) != 1 {
                return bad(format!("ray {i} direction {:?} is not primitive", r.dir));
            }
            if r.weight == 0 {
                return bad(format!("ray {i} has weight 0"));
            }
        }
        Ok(())
    }

    /// `validate_basic` plus the complex property: cells meet only at shared vertices.
    pub fn validate(&self) -> Result<()> {
        self.validate_basic()?;
        let cells = self.cells();
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                match intersect_cells(&cells[i].1, &cells[j].1) {
                    Meet::Empty => {}
                    Meet::Overlap => {
                        return Err(Error::InvalidComplex(format!("cells {:?} and {:?} overlap", cells[i].0, cells[j].0)))
                    }
                    Meet::Point(p) => {
                        let ends_i = self.cell_vertices(cells[i].0);
                        let ends_j = self.cell_vertices(cells[j].0);
                        let shared = ends_i.iter().any(|&a| ends_j.contains(&a) && self.vertices[a] == p);
                        if !shared {
                            return Err(Error::InvalidComplex(format!(
                                "cells {:?} and {:?} cross away from a shared vertex",
                                cells[i].0, cells[j].0
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cell_vertices(&self, c: CellRef) -> Vec<usize> {
        match c {
            CellRef::Segment(i) => vec![self.segments[i].a, self.segments[i].b],
            CellRef::Ray(i) => vec![self.rays[i].from],
        }
    }

    pub fn cell_weight(&self, c: CellRef) -> u64 {
        match c {
            CellRef::Segment(i) => self.segments[i].weight,
            CellRef::Ray(i) => self.rays[i].weight,
        }
    }

    /// Primitive direction of a cell (segments oriented from `a` to `b`).
    pub fn cell_direction(&self, c: CellRef) -> Vec<i64> {
        match c {
            CellRef::Segment(i) => self.segment_direction(i).0,
            CellRef::Ray(i) => self.rays[i].dir.clone(),
        }
    }

    /// Primitive direction from `a` to `b` and the lattice length of the segment.
    pub fn segment_direction(&self, i: usize) -> (Vec<i64>, Rational) {
        let s = &self.segments[i];
        let diff: Vec<Rational> =
            self.vertices[s.b].iter().zip(&self.vertices[s.a]).map(|(x, y)| x - y).collect();
        primitive(&diff).expect("segment of positive length")
    }

    pub fn cells(&self) -> Vec<(CellRef, Cell)> {
        let mut out = Vec::new();
        for (i, s) in self.segments.iter().enumerate() {
            out.push((CellRef::Segment(i), Cell::Segment(self.vertices[s.a].clone(), self.vertices[s.b].clone())));
        }
        for (i, r) in self.rays.iter().enumerate() {
            let d = r.dir.iter().map(|&x| Rational::from_integer(x.into())).collect();
            out.push((CellRef::Ray(i), Cell::Ray(self.vertices[r.from].clone(), d)));
        }
        out
    }

    /// Outgoing primitive directions at every vertex.
    pub fn spokes(&self) -> Vec<Vec<Spoke>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, s) in self.segments.iter().enumerate() {
            let (d, _) = self.segment_direction(i);
            let back = d.iter().map(|x| -x).collect();
            out[s.a].push(Spoke { dir: d, weight: s.weight, cell: CellRef::Segment(i) });
            out[s.b].push(Spoke { dir: back, weight: s.weight, cell: CellRef::Segment(i) });
        }
        for (i, r) in self.rays.iter().enumerate() {
            out[r.from].push(Spoke { dir: r.dir.clone(), weight: r.weight, cell: CellRef::Ray(i) });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for s in &self.segments {
            let (a, b) = (find(&mut parent, s.a), find(&mut parent, s.b));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..self.vertices.len()).all(|i| find(&mut parent, i) == root)
    }

    /// A normal form under which two complexes with the same weighted support compare equal:
    /// coincident vertices merged, straight two-valent vertices with equal weights suppressed,
    /// a lone vertex on a full line moved to the point of the line nearest the origin,
    /// isolated vertices dropped when cells exist, and everything sorted.
    pub fn canonical(&self) -> PolyComplex {
        let mut verts: Vec<Vec<Rational>> = Vec::new();
        let mut remap = Vec::new();
        for v in &self.vertices {
            let idx = match verts.iter().position(|w| w == v) {
                Some(i) => i,
                None => {
                    verts.push(v.clone());
                    verts.len() - 1
                }
            };
            remap.push(idx);
        }
        let mut segs: Vec<(usize, usize, u64)> =
            self.segments.iter().map(|s| (remap[s.a], remap[s.b], s.weight)).collect();
        let mut rays: Vec<(usize, Vec<i64>, u64)> =
            self.rays.iter().map(|r| (remap[r.from], r.dir.clone(), r.weight)).collect();

        loop {
            let mut changed = false;
            for v in 0..verts.len() {
                let seg_inc: Vec<usize> =
                    (0..segs.len()).filter(|&i| segs[i].0 == v || segs[i].1 == v).collect();
                let ray_inc: Vec<usize> = (0..rays.len()).filter(|&i| rays[i].0 == v).collect();
                if seg_inc.len() + ray_inc.len() != 2 {
                    continue;
                }
                let dir_from = |i: usize| -> (Vec<i64>, usize) {
                    let (a, b, _) = segs[i];
                    let other = if a == v { b } else { a };
                    let diff: Vec<Rational> = verts[other].iter().zip(&verts[v]).map(|(x, y)| x - y).collect();
                    (primitive(&diff).expect("nondegenerate").0, other)
                };
                match (seg_inc.as_slice(), ray_inc.as_slice()) {
                    ([i, j], []) => {
                        let ((di, oi), (dj, oj)) = (dir_from(*i), dir_from(*j));
                        let opposite = di.iter().zip(&dj).all(|(a, b)| *a == -*b);
                        if opposite && segs[*i].2 == segs[*j].2 && oi != oj {
                            let w = segs[*i].2;
                            let (hi, lo) = if i > j { (*i, *j) } else { (*j, *i) };
                            segs.remove(hi);
                            segs.remove(lo);
                            segs.push((oi, oj, w));
                            changed = true;
                        }
                    }
                    ([i], [r]) => {
                        let (di, oi) = dir_from(*i);
                        let opposite = di.iter().zip(&rays[*r].1).all(|(a, b)| *a == -*b);
                        if opposite && segs[*i].2 == rays[*r].2 {
                            rays[*r].0 = oi;
                            segs.remove(*i);
                            changed = true;
                        }
                    }
                    ([], [r, s]) => {
                        let opposite = rays[*r].1.iter().zip(&rays[*s].1).all(|(a, b)| *a == -*b);
                        if opposite && rays[*r].2 == rays[*s].2 {
                            let d: Vec<Rational> = rays[*r].1.iter().map(|&x| Rational::from_integer(x.into())).collect();
                            let p = &verts[v];
                            let dd: Rational = d.iter().map(|x| x * x).sum();
                            let pd: Rational = p.iter().zip(&d).map(|(a, b)| a * b).sum();
                            let t = pd / dd;
                            let foot: Vec<Rational> = p.iter().zip(&d).map(|(a, b)| a - &t * b).collect();
                            if foot != *p {
                                match verts.iter().position(|w| *w == foot) {
                                    Some(j) => {
                                        rays[*r].0 = j;
                                        rays[*s].0 = j;
                                    }
                                    None => verts[v] = foot,
                                }
                                changed = true;
                            }
                        }
                    }
                    _ => {}
                }
                if changed {
                    break;
                }
            }
            if !changed {
                break;
            }
        }

        // drop unused vertices unless the complex is a single point set
        let has_cells = !segs.is_empty() || !rays.is_empty();
        let mut used = BTreeSet::new();
        for s in &segs {
            used.insert(s.0);
            used.insert(s.1);
        }
        for r in &rays {
            used.insert(r.0);
        }
        let keep: Vec<usize> = (0..verts.len()).filter(|i| !has_cells || used.contains(i)).collect();
        let mut order: Vec<usize> = keep.clone();
        order.sort_by(|&a, &b| verts[a].cmp(&verts[b]));
        let mut index = BTreeMap::new();
        for (new, &old) in order.iter().enumerate() {
            index.insert(old, new);
        }
        let vertices: Vec<Vec<Rational>> = order.iter().map(|&i| verts[i].clone()).collect();
        let mut segments: Vec<Segment> = segs
            .iter()
            .map(|&(a, b, w)| {
                let (a, b) = (index[&a], index[&b]);
                Segment { a: a.min(b), b: a.max(b), weight: w }
            })
            .collect();
        segments.sort_by(|x, y| (x.a, x.b, x.weight).cmp(&(y.a, y.b, y.weight)));
        let mut rays: Vec<Ray> =
            rays.into_iter().map(|(f, d, w)| Ray { from: index[&f], dir: d, weight: w }).collect();
        rays.sort_by(|x, y| (x.from, &x.dir, x.weight).cmp(&(y.from, &y.dir, y.weight)));
        PolyComplex { dim: self.dim, vertices, segments, rays }
    }

    /// Same weighted support, compared through `canonical`.
    pub fn same_as(&self, other: &PolyComplex) -> bool {
        self.canonical() == other.canonical()
    }

    /// Translates every vertex by `t`.
    pub fn translate(&self, t: &[Rational]) -> PolyComplex {
        let mut out = self.clone();
        for v in &mut out.vertices {
            for (x, d) in v.iter_mut().zip(t) {
                *x += d;
            }
        }
        out
    }

    /// Bounding box of the vertices as (min, max) corners.
    pub fn bounding_box(&self) -> Option<(Vec<Rational>, Vec<Rational>)> {
        let first = self.vertices.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for v in &self.vertices {
            for k in 0..self.dim {
                if v[k] < lo[k] {
                    lo[k] = v[k].clone();
                }
                if v[k] > hi[k] {
                    hi[k] = v[k].clone();
                }
            }
        }
        Some((lo, hi))
    }

    pub fn is_point(&self) -> bool {
        self.segments.is_empty() && self.rays.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    pub(crate) fn line_at(x: i64, y: i64) -> PolyComplex {
        PolyComplex {
            dim: 2,
            vertices: vec![vec![q(x), q(y)]],
            segments: vec![],
            rays: vec![
                Ray { from: 0, dir: vec![1, 1], weight: 1 },
                Ray { from: 0, dir: vec![-1, 0], weight: 1 },
                Ray { from: 0, dir: vec![0, -1], weight: 1 },
            ],
        }
    }

    #[test]
    fn validation() {
        line_at(0, 0).validate().unwrap();
        let mut bad = line_at(0, 0);
        bad.rays[0].dir = vec![2, 2];
        assert!(bad.validate().is_err());
        let mut overlap = line_at(0, 0);
        overlap.rays.push(Ray { from: 0, dir: vec![1, 1], weight: 1 });
        assert!(overlap.validate().is_err());
    }

    #[test]
    fn canonical_suppresses_straight_vertices() {
        let k = PolyComplex {
            dim: 2,
            vertices: vec![vec![q(0), q(0)], vec![q(0), q(3)], vec![q(0), q(5)]],
            segments: vec![Segment { a: 0, b: 1, weight: 2 }],
            rays: vec![Ray { from: 1, dir: vec![0, 1], weight: 2 }, Ray { from: 0, dir: vec![0, -1], weight: 2 }],
        };
        let c = k.canonical();
        assert_eq!(c.vertices, vec![vec![q(0), q(0)]]);
        assert_eq!(c.rays.len(), 2);
        assert!(c.segments.is_empty());
    }

    #[test]
    fn canonical_line_foot_point() {
        let k = PolyComplex {
            dim: 2,
            vertices: vec![vec![q(3), q(5)]],
            segments: vec![],
            rays: vec![Ray { from: 0, dir: vec![0, 1], weight: 2 }, Ray { from: 0, dir: vec![0, -1], weight: 2 }],
        };
        assert_eq!(k.canonical().vertices, vec![vec![q(3), q(0)]]);
    }

    #[test]
    fn spokes_point_outward() {
        let k = line_at(0, 0);
        let s = k.spokes();
        assert_eq!(s[0].len(), 3);
        assert!(k.is_connected());
    }
}
