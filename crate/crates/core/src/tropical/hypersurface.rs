//! The tropical curve V(F) ⊂ ℚ² of a two-variable tropical polynomial.
//!
//! Vertices are the points where the exponents attaining the maximum span a
//! two-dimensional polygon; each such point solves the tie equations of some
//! triple of non-collinear terms. From a vertex, one cell leaves along the
//! outward normal of every edge of that polygon, weighted by the lattice length
//! of the edge. If the Newton polygon is a segment the curve is a union of
//! parallel lines, each returned as a point with two opposite rays.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_point, gcd_i64, Rational};
use crate::realization::{PolyComplex, Ray, Segment};
use crate::tropical::TropPoly;

pub const MAX_TERMS: usize = 32;

/// Closed axis-parallel box `[min.0, max.0] × [min.1, max.1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub min: (Rational, Rational),
    pub max: (Rational, Rational),
}

impl Window {
    pub fn contains(&self, p: &[Rational]) -> bool {
        self.min.0 <= p[0] && p[0] <= self.max.0 && self.min.1 <= p[1] && p[1] <= self.max.1
    }
}

type Exp = [i64; 2];

fn cross(o: Exp, a: Exp, b: Exp) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise convex hull without collinear points.
fn hull(points: &[Exp]) -> Vec<Exp> {
    let mut pts: Vec<Exp> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Exp> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Exp> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn solve2(a: [[Rational; 2]; 2], b: [Rational; 2]) -> Option<Vec<Rational>> {
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    if det.is_zero() {
        return None;
    }
    let x = (&b[0] * &a[1][1] - &a[0][1] * &b[1]) / &det;
    let y = (&a[0][0] * &b[1] - &b[0] * &a[1][0]) / &det;
    Some(vec![x, y])
}

fn r(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

pub fn hypersurface2(f: &TropPoly, window: Option<&Window>) -> Result<PolyComplex> {
    if f.vars() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: f.vars() });
    }
    if f.terms().len() < 2 {
        return Err(Error::EmptyHypersurface);
    }
    if f.terms().len() > MAX_TERMS {
        return Err(Error::TooManyTerms { found: f.terms().len(), limit: MAX_TERMS });
    }
    let terms: Vec<(Exp, Rational)> = f.terms().iter().map(|(e, c)| ([e[0], e[1]], c.clone())).collect();
    let exps: Vec<Exp> = terms.iter().map(|t| t.0).collect();
    let newton = hull(&exps);
    let out = if newton.len() >= 3 {
        planar_case(f, &terms, window)?
    } else {
        linear_case(&terms)
    };
    Ok(out.canonical())
}

fn planar_case(f: &TropPoly, terms: &[(Exp, Rational)], window: Option<&Window>) -> Result<PolyComplex> {
    // vertex -> exponents attaining the max there
    let mut vertices: BTreeMap<Vec<Rational>, Vec<Exp>> = BTreeMap::new();
    let n = terms.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (ei, ci) = &terms[i];
                let (ej, cj) = &terms[j];
                let (ek, ck) = &terms[k];
                if cross(*ei, *ej, *ek) == 0 {
                    continue;
                }
                let a = [[r(ej[0] - ei[0]), r(ej[1] - ei[1])], [r(ek[0] - ei[0]), r(ek[1] - ei[1])]];
                let b = [ci - cj, ci - ck];
                let Some(p) = solve2(a, b) else { continue };
                if vertices.contains_key(&p) {
                    continue;
                }
                let (_, arg) = f.eval(&p)?;
                if arg.contains(&ei.to_vec()) && arg.contains(&ej.to_vec()) && arg.contains(&ek.to_vec()) {
                    let exps: Vec<Exp> = arg.iter().map(|e| [e[0], e[1]]).collect();
                    vertices.insert(p, exps);
                }
            }
        }
    }
    if let Some(w) = window {
        if let Some(p) = vertices.keys().find(|p| !w.contains(p)) {
            return Err(Error::WindowTooSmall(fmt_point(p)));
        }
    }

    let mut k = PolyComplex::new(2);
    let vlist: Vec<(Vec<Rational>, Vec<Exp>)> = vertices.into_iter().collect();
    for (p, _) in &vlist {
        k.vertex(p.clone());
    }
    let mut seen_segments = BTreeSet::new();
    for (vi, (p, arg)) in vlist.iter().enumerate() {
        let poly = hull(arg);
        for idx in 0..poly.len() {
            let a = poly[idx];
            let b = poly[(idx + 1) % poly.len()];
            let e = [b[0] - a[0], b[1] - a[1]];
            let g = gcd_i64(e[0], e[1]);
            let dir = [e[1] / g, -e[0] / g];
            let weight = g as u64;
            // nearest other vertex along dir whose argmax also contains a and b
            let mut best: Option<(Rational, usize)> = None;
            for (wi, (q, qarg)) in vlist.iter().enumerate() {
                if wi == vi || !qarg.contains(&a) || !qarg.contains(&b) {
                    continue;
                }
                let dx = &q[0] - &p[0];
                let dy = &q[1] - &p[1];
                if &dx * r(dir[1]) != &dy * r(dir[0]) {
                    continue;
                }
                let t = dx * r(dir[0]) + dy * r(dir[1]);
                if !t.is_positive() {
                    continue;
                }
                if best.as_ref().map_or(true, |(bt, _)| t < *bt) {
                    best = Some((t, wi));
                }
            }
            match best {
                Some((_, wi)) => {
                    let key = (vi.min(wi), vi.max(wi));
                    if seen_segments.insert(key) {
                        k.segments.push(Segment { a: key.0, b: key.1, weight });
                    }
                }
                None => k.rays.push(Ray { from: vi, dir: dir.to_vec(), weight }),
            }
        }
    }
    Ok(k)
}

fn linear_case(terms: &[(Exp, Rational)]) -> PolyComplex {
    let lo = terms.iter().map(|t| t.0).min().expect("two terms");
    let hi = terms.iter().map(|t| t.0).max().expect("two terms");
    let g = gcd_i64(hi[0] - lo[0], hi[1] - lo[1]);
    let step = [(hi[0] - lo[0]) / g, (hi[1] - lo[1]) / g];
    // position along the Newton segment and coefficient
    let mut pts: Vec<(i64, Rational)> = terms
        .iter()
        .map(|(e, c)| {
            let k = if step[0] != 0 { (e[0] - lo[0]) / step[0] } else { (e[1] - lo[1]) / step[1] };
            (k, c.clone())
        })
        .collect();
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    // upper hull of (k, c)
    let mut up: Vec<(i64, Rational)> = Vec::new();
    for p in pts {
        while up.len() >= 2 {
            let (k1, c1) = &up[up.len() - 2];
            let (k2, c2) = &up[up.len() - 1];
            let lhs = (c2 - c1) * r(p.0 - k1);
            let rhs = (&p.1 - c1) * r(k2 - k1);
            if lhs <= rhs {
                up.pop();
            } else {
                break;
            }
        }
        up.push(p);
    }
    let gg = r(step[0] * step[0] + step[1] * step[1]);
    let dir = vec![-step[1], step[0]];
    let mut out = PolyComplex::new(2);
    for w in up.windows(2) {
        let (k1, c1) = &w[0];
        let (k2, c2) = &w[1];
        // the two terms tie where (k2−k1)·⟨step, x⟩ = c1 − c2
        let y = (c1 - c2) / r(k2 - k1);
        let foot = vec![&y * r(step[0]) / &gg, &y * r(step[1]) / &gg];
        let v = out.vertex(foot);
        let weight = (k2 - k1) as u64;
        out.rays.push(Ray { from: v, dir: dir.clone(), weight });
        out.rays.push(Ray { from: v, dir: dir.iter().map(|x| -x).collect(), weight });
    }
    out
}
