//! Transversal intersections of plane complexes and the Bezout bound.

use crate::error::{Error, Result};
use crate::rational::{fmt_point, Rational};
use crate::realization::{fit_tropical_polynomial, intersect_cells, Cell, CellRef, Meet, PolyComplex};
use crate::tropical::Degree;

/// An intersection point and its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Crossing {
    pub point: Vec<Rational>,
    pub mult: u64,
}

fn vertex_condition(k: &PolyComplex, p: &[Rational]) -> Option<(u8, String)> {
    let v = k.vertices.iter().position(|x| x.as_slice() == p)?;
    let spokes = &k.spokes()[v];
    let valence = spokes.len();
    if valence == 2 && spokes[0].weight == spokes[1].weight && spokes[0].dir.iter().zip(&spokes[1].dir).all(|(a, b)| *a == -b) {
        return None;
    }
    Some(if valence != 2 {
        (2, format!("vertex of valence {valence}"))
    } else {
        (3, "two-valent vertex where the slopes change".to_string())
    })
}

fn overlap_point(k1: &PolyComplex, a: CellRef, ca: &Cell, k2: &PolyComplex, b: CellRef, cb: &Cell) -> Vec<Rational> {
    k1.cell_vertices(a)
        .into_iter()
        .map(|v| k1.vertices[v].clone())
        .find(|p| cb.contains(p))
        .or_else(|| k2.cell_vertices(b).into_iter().map(|v| k2.vertices[v].clone()).find(|p| ca.contains(p)))
        .expect("overlapping cells share an endpoint of one of them")
}

/// All intersection points of two plane complexes with multiplicities `|det(w₁p₁, w₂p₂)|`,
/// sorted by point. A straight two-valent vertex with equal weights counts as an
/// interior point of its line. Fails at the first point where the meeting is not transversal.
pub fn intersect(k1: &PolyComplex, k2: &PolyComplex) -> Result<Vec<Crossing>> {
    for k in [k1, k2] {
        if k.dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: k.dim });
        }
        k.validate()?;
    }
    let (k1, k2) = (k1.canonical(), k2.canonical());
    let (c1, c2) = (k1.cells(), k2.cells());
    let mut out: Vec<Crossing> = Vec::new();
    for (a, ca) in &c1 {
        for (b, cb) in &c2 {
            let p = match intersect_cells(ca, cb) {
                Meet::Empty => continue,
                Meet::Overlap => {
                    return Err(Error::NonTransversal {
                        point: fmt_point(&overlap_point(&k1, *a, ca, &k2, *b, cb)),
                        condition: 4,
                        detail: "the complexes overlap along a segment".into(),
                    })
                }
                Meet::Point(p) => p,
            };
            for k in [&k1, &k2] {
                if let Some((condition, detail)) = vertex_condition(k, &p) {
                    return Err(Error::NonTransversal { point: fmt_point(&p), condition, detail });
                }
            }
            let (d1, d2) = (k1.cell_direction(*a), k2.cell_direction(*b));
            let (w1, w2) = (k1.cell_weight(*a) as i64, k2.cell_weight(*b) as i64);
            let det = (d1[0] * d2[1] - d1[1] * d2[0]) * w1 * w2;
            if !out.iter().any(|c| c.point == p) {
                out.push(Crossing { point: p, mult: det.unsigned_abs() });
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bezout {
    pub sum: u64,
    pub bound: u64,
    pub ok: bool,
}

/// Total intersection multiplicity against the product of the fitted degrees.
pub fn bezout_check(k1: &PolyComplex, k2: &PolyComplex) -> Result<Bezout> {
    let sum = intersect(k1, k2)?.iter().map(|c| c.mult).sum();
    let degree = |k: &PolyComplex| -> Result<u64> {
        match fit_tropical_polynomial(k)?.degree()? {
            Degree::Finite(d) => Ok(d),
            Degree::NegInf => Err(Error::Internal("fitted polynomial is -inf".into())),
        }
    };
    let bound = degree(k1)? * degree(k2)?;
    Ok(Bezout { sum, bound, ok: sum <= bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::realization::Ray;

    fn line_at(x: i64, y: i64) -> PolyComplex {
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

    fn axis_line(vertical: bool, at: i64, weight: u64) -> PolyComplex {
        let (v, d) = if vertical { (vec![q(at), q(0)], [0, 1]) } else { (vec![q(0), q(at)], [1, 0]) };
        PolyComplex {
            dim: 2,
            vertices: vec![v],
            segments: vec![],
            rays: vec![Ray { from: 0, dir: d.to_vec(), weight }, Ray { from: 0, dir: vec![-d[0], -d[1]], weight }],
        }
    }

    #[test]
    fn translated_lines() {
        let got = intersect(&line_at(0, 0), &line_at(1, 2)).unwrap();
        assert_eq!(got, vec![Crossing { point: vec![q(1), q(1)], mult: 1 }]);
        let b = bezout_check(&line_at(0, 0), &line_at(1, 2)).unwrap();
        assert_eq!(b, Bezout { sum: 1, bound: 1, ok: true });
    }

    #[test]
    fn identical_lines_overlap() {
        let err = intersect(&line_at(0, 0), &line_at(0, 0)).unwrap_err();
        assert!(matches!(err, Error::NonTransversal { condition: 4, .. } | Error::NonTransversal { condition: 2, .. }), "{err}");
    }

    #[test]
    fn weighted_vertical_against_horizontal() {
        let got = intersect(&axis_line(true, 0, 2), &axis_line(false, 1, 1)).unwrap();
        assert_eq!(got, vec![Crossing { point: vec![q(0), q(1)], mult: 2 }]);
        let b = bezout_check(&axis_line(true, 0, 2), &line_at(3, 5)).unwrap();
        assert!(b.ok && b.bound == 2, "{b:?}");
    }

    #[test]
    fn vertex_hit_rejected() {
        let err = intersect(&line_at(0, 0), &axis_line(false, 0, 1)).unwrap_err();
        assert!(matches!(err, Error::NonTransversal { condition: 2, .. } | Error::NonTransversal { condition: 4, .. }));
    }
}
