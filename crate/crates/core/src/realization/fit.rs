//! Balanced complexes as realizations of curves, and tropical polynomials cutting them out.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::curve::{Curve, CurveDesc};
use crate::error::{Error, Result};
use crate::rat_fun::{div_of, PlFunction, Profile};
use crate::rational::{fmt_point, q, qq, Extended, Rational};
use crate::realization::realize::{realize, RealizationMap};
use crate::realization::{check_balanced, intersect_cells, Cell, CellRef, Meet, PolyComplex};
use crate::tropical::{hypersurface2, TropPoly, MAX_TERMS};

/// A curve with parallel rays and coordinate functions realizing a balanced complex.
#[derive(Clone, Debug)]
pub struct Ingested {
    pub curve: Arc<Curve>,
    pub fs: Vec<PlFunction>,
    pub realization: RealizationMap,
}

fn direction_class(d: &[i64]) -> String {
    format!("dir({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Vertices become `k{i}`, segments `s{i}` and rays `r{i}`; rays with equal directions share a class.
pub fn ingest_balanced(k: &PolyComplex) -> Result<Ingested> {
    k.validate()?;
    if !k.is_connected() {
        return Err(Error::ComplexDisconnected);
    }
    if !check_balanced(k).balanced {
        return Err(Error::NotBalanced);
    }
    let mut desc = CurveDesc::default();
    for i in 0..k.vertices.len() {
        desc = desc.vertex(&format!("k{i}"), false);
    }
    let mut edge_data = Vec::new();
    for (i, s) in k.segments.iter().enumerate() {
        let (dir, lattice) = k.segment_direction(i);
        let len = lattice / q(s.weight as i64);
        desc = desc.edge(&format!("s{i}"), &format!("k{}", s.a), &format!("k{}", s.b), Extended::Finite(len));
        edge_data.push((format!("s{i}"), s.a, dir, s.weight));
    }
    for (i, r) in k.rays.iter().enumerate() {
        desc = desc.ray(&format!("r{i}"), &format!("k{}", r.from), &direction_class(&r.dir));
        edge_data.push((format!("r{i}"), r.from, r.dir.clone(), r.weight));
    }
    let curve = Arc::new(Curve::build(desc)?);
    let mut fs = Vec::with_capacity(k.dim);
    for coord in 0..k.dim {
        let mut profiles = vec![None; curve.edges().len()];
        for (id, from, dir, w) in &edge_data {
            let e = curve.edge_id(id)?;
            let slope = *w as i64 * dir[coord];
            profiles[e] = Some(Profile::affine(&curve.edge(e).length, k.vertices[*from][coord].clone(), slope));
        }
        let isolated: BTreeMap<usize, Rational> = (0..k.vertices.len())
            .filter(|&v| curve.incident(v).is_empty())
            .map(|v| (v, k.vertices[v][coord].clone()))
            .collect();
        fs.push(PlFunction::from_profiles(curve.clone(), profiles.into_iter().map(Option::unwrap).collect(), &isolated)?);
    }
    for (i, f) in fs.iter().enumerate() {
        if let Some(p) = div_of(f)?.coefficients().keys().find(|p| !curve.is_at_infinity(p).unwrap_or(true)) {
            return Err(Error::Internal(format!("coordinate {i} is not harmonic at {}", curve.point_label(p))));
        }
    }
    let realization = realize(&curve, &fs)?;
    if !realization.image.same_as(k) {
        return Err(Error::Internal("realization does not reproduce the complex".into()));
    }
    Ok(Ingested { curve, fs, realization })
}

/// Largest number of cells accepted by [`fit_tropical_polynomial`].
pub const MAX_FIT_CELLS: usize = 32;

fn rot(d: &[Rational]) -> [Rational; 2] {
    [d[1].clone(), -&d[0]]
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exponent and coefficient of the region containing `x`, relative to the region of `base`,
/// found by crossing the cells met by the segment from `base` to `x`. `None` if that
/// segment is not in general position.
fn propagate(k: &PolyComplex, cells: &[(CellRef, Cell)], base: &[Rational], x: &[Rational]) -> Option<([i64; 2], Rational)> {
    let path = Cell::Segment(base.to_vec(), x.to_vec());
    let v: Vec<Rational> = x.iter().zip(base).map(|(a, b)| a - b).collect();
    let mut exp = [0i64; 2];
    let mut coeff = Rational::zero();
    for (cref, cell) in cells {
        match intersect_cells(&path, cell) {
            Meet::Empty => {}
            Meet::Overlap => return None,
            Meet::Point(p) => {
                if p.as_slice() == base || p.as_slice() == x || k.vertices.contains(&p) {
                    return None;
                }
                let d: Vec<Rational> = k.cell_direction(*cref).into_iter().map(q).collect();
                let n = rot(&d);
                let side = dot(&n, &v);
                if side.is_zero() {
                    return None;
                }
                let w = k.cell_weight(*cref) as i64 * if side.is_positive() { 1 } else { -1 };
                let jump = [&n[0] * q(w), &n[1] * q(w)];
                exp[0] += crate::rational::as_i64(&jump[0]).unwrap();
                exp[1] += crate::rational::as_i64(&jump[1]).unwrap();
                coeff -= dot(&jump, &p);
            }
        }
    }
    Some((exp, coeff))
}

/// Points just off each side of every cell; together they meet every region of the complement.
fn side_samples(k: &PolyComplex, cells: &[(CellRef, Cell)]) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for (cref, _) in cells {
        let ends = k.cell_vertices(*cref);
        let d: Vec<Rational> = k.cell_direction(*cref).into_iter().map(q).collect();
        let m: Vec<Rational> = match cref {
            CellRef::Segment(_) => k.vertices[ends[0]].iter().zip(&k.vertices[ends[1]]).map(|(a, b)| (a + b) / q(2)).collect(),
            CellRef::Ray(_) => k.vertices[ends[0]].iter().zip(&d).map(|(a, b)| a + b).collect(),
        };
        let n = rot(&d);
        let mut eps = qq(1, 2);
        loop {
            let plus: Vec<Rational> = m.iter().zip(&n).map(|(a, b)| a + b * &eps).collect();
            let minus: Vec<Rational> = m.iter().zip(&n).map(|(a, b)| a - b * &eps).collect();
            let probe = Cell::Segment(plus.clone(), minus.clone());
            let clear = cells.iter().all(|(other, c)| {
                let meet = intersect_cells(&probe, c);
                if other == cref {
                    meet == Meet::Point(m.clone())
                } else {
                    meet == Meet::Empty
                }
            });
            if clear {
                out.push(plus);
                out.push(minus);
                break;
            }
            eps /= q(2);
        }
    }
    out
}

/// Reconstructs a tropical polynomial whose hypersurface is the balanced plane complex `k`.
/// Exponents are shifted so the Newton polygon touches both axes; the region through
/// the chosen far south-west base point gets coefficient 0 before the shift.
pub fn fit_tropical_polynomial(k: &PolyComplex) -> Result<TropPoly> {
    if k.dim != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: k.dim });
    }
    k.validate()?;
    if k.is_point() {
        return Err(Error::InvalidComplex("complex is a single point".into()));
    }
    if !k.is_connected() {
        return Err(Error::ComplexDisconnected);
    }
    if k.num_cells() > MAX_FIT_CELLS {
        return Err(Error::InvalidComplex(format!("more than {MAX_FIT_CELLS} cells")));
    }
    let bal = check_balanced(k);
    if let Some(v) = bal.defects.iter().position(|d| d.iter().any(|x| *x != 0)) {
        return Err(Error::NotHypersurface(format!("around vertex {}", fmt_point(&k.vertices[v]))));
    }
    let cells = k.cells();
    let samples = side_samples(k, &cells);
    let reach = k.vertices.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(Rational::zero) + q(1);
    let m = q(4) * &reach;
    let mut terms: Option<BTreeMap<[i64; 2], Rational>> = None;
    'base: for step in 0..64 {
        let base = vec![-&m, -&m - qq(step, 7)];
        if cells.iter().any(|(_, c)| c.contains(&base)) {
            continue;
        }
        let mut found: BTreeMap<[i64; 2], Rational> = BTreeMap::new();
        found.insert([0, 0], Rational::zero());
        for s in &samples {
            let Some((e, c)) = propagate(k, &cells, &base, s) else { continue 'base };
            if let Some(prev) = found.insert(e, c.clone()) {
                if prev != c {
                    return Err(Error::NotHypersurface(format!("regions with exponent {e:?} disagree")));
                }
            }
        }
        terms = Some(found);
        break;
    }
    let terms = terms.ok_or_else(|| Error::Internal("no base point in general position".into()))?;
    if terms.len() > MAX_TERMS {
        return Err(Error::TooManyTerms { found: terms.len(), limit: MAX_TERMS });
    }
    let lo0 = terms.keys().map(|e| e[0]).min().unwrap();
    let lo1 = terms.keys().map(|e| e[1]).min().unwrap();
    let f = TropPoly::from_terms(2, terms.into_iter().map(|(e, c)| (c, vec![e[0] - lo0, e[1] - lo1])))?;
    if !hypersurface2(&f, None)?.same_as(k) {
        return Err(Error::Internal("fitted polynomial does not cut out the complex".into()));
    }
    Ok(f)
}
