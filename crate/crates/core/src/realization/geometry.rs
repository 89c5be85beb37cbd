//! Exact intersection of segments and rays in ℚⁿ.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Segment(Vec<Rational>, Vec<Rational>),
    /// Start point and (not necessarily primitive) direction.
    Ray(Vec<Rational>, Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    Empty,
    Point(Vec<Rational>),
    Overlap,
}

impl Cell {
    fn base(&self) -> &[Rational] {
        match self {
            Cell::Segment(p, _) | Cell::Ray(p, _) => p,
        }
    }

    fn dir(&self) -> Vec<Rational> {
        match self {
            Cell::Segment(p, q) => q.iter().zip(p).map(|(a, b)| a - b).collect(),
            Cell::Ray(_, d) => d.clone(),
        }
    }

    /// Parameter range: `[0,1]` for segments, `[0,∞)` for rays.
    fn bounded(&self) -> bool {
        matches!(self, Cell::Segment(..))
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let p = self.base();
        let d = self.dir();
        let diff: Vec<Rational> = x.iter().zip(p).map(|(a, b)| a - b).collect();
        let dd = dot(&d, &d);
        let t = dot(&diff, &d) / dd;
        if t.is_negative() || (self.bounded() && t > Rational::from_integer(1.into())) {
            return false;
        }
        diff.iter().zip(&d).all(|(a, b)| *a == &t * b)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn parallel(a: &[Rational], b: &[Rational]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

pub fn intersect_cells(a: &Cell, b: &Cell) -> Meet {
    let p = a.base();
    let da = a.dir();
    let r = b.base();
    let db = b.dir();
    let one = Rational::from_integer(1.into());
    let rp: Vec<Rational> = r.iter().zip(p).map(|(x, y)| x - y).collect();

    if parallel(&da, &db) {
        if !parallel(&rp, &da) {
            return Meet::Empty;
        }
        // collinear: express b's extent in a's parameter
        let dd = dot(&da, &da);
        let t0 = dot(&rp, &da) / &dd;
        let rate = dot(&db, &da) / &dd;
        let (lo_b, hi_b): (Option<Rational>, Option<Rational>) = if b.bounded() {
            let t1 = &t0 + &rate;
            (Some(t0.clone().min(t1.clone())), Some(t0.max(t1)))
        } else if rate.is_positive() {
            (Some(t0), None)
        } else {
            (None, Some(t0))
        };
        let lo_a = Rational::zero();
        let hi_a = if a.bounded() { Some(one) } else { None };
        let lo = match lo_b {
            Some(x) if x > lo_a => x,
            _ => lo_a,
        };
        let hi = match (hi_a, hi_b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        };
        return match hi {
            Some(h) if h < lo => Meet::Empty,
            Some(h) if h == lo => Meet::Point(p.iter().zip(&da).map(|(x, d)| x + &lo * d).collect()),
            _ => Meet::Overlap,
        };
    }

    // solve t·da − s·db = rp on a pair of coordinates with nonzero determinant
    let n = da.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = &da[i] * -&db[j] - &da[j] * -&db[i];
            if det.is_zero() {
                continue;
            }
            let t = (&rp[i] * -&db[j] - &rp[j] * -&db[i]) / &det;
            let s = (&da[i] * &rp[j] - &da[j] * &rp[i]) / &det;
            let point: Vec<Rational> = p.iter().zip(&da).map(|(x, d)| x + &t * d).collect();
            let other: Vec<Rational> = r.iter().zip(&db).map(|(x, d)| x + &s * d).collect();
            if point != other {
                return Meet::Empty;
            }
            let ok_t = !t.is_negative() && (!a.bounded() || t <= one);
            let ok_s = !s.is_negative() && (!b.bounded() || s <= one);
            return if ok_t && ok_s { Meet::Point(point) } else { Meet::Empty };
        }
    }
    unreachable!("non-parallel directions have a nonzero 2x2 minor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| q(a)).collect()
    }

    #[test]
    fn crossing() {
        let a = Cell::Ray(v(&[0, 0]), v(&[1, 1]));
        let b = Cell::Ray(v(&[1, 2]), v(&[0, -1]));
        assert_eq!(intersect_cells(&a, &b), Meet::Point(v(&[1, 1])));
        let c = Cell::Segment(v(&[2, 0]), v(&[3, 0]));
        assert_eq!(intersect_cells(&a, &c), Meet::Empty);
    }

    #[test]
    fn collinear_cases() {
        let a = Cell::Segment(v(&[0, 0]), v(&[2, 0]));
        let b = Cell::Segment(v(&[2, 0]), v(&[5, 0]));
        assert_eq!(intersect_cells(&a, &b), Meet::Point(v(&[2, 0])));
        let c = Cell::Ray(v(&[1, 0]), v(&[-1, 0]));
        assert_eq!(intersect_cells(&a, &c), Meet::Overlap);
        let d = Cell::Ray(v(&[-1, 0]), v(&[-1, 0]));
        assert_eq!(intersect_cells(&a, &d), Meet::Empty);
        let e = Cell::Segment(v(&[0, 1]), v(&[2, 1]));
        assert_eq!(intersect_cells(&a, &e), Meet::Empty);
    }

    #[test]
    fn three_dimensions() {
        let a = Cell::Segment(v(&[0, 0, 0]), v(&[2, 2, 2]));
        let b = Cell::Segment(v(&[0, 2, 1]), v(&[2, 0, 1]));
        assert_eq!(intersect_cells(&a, &b), Meet::Point(v(&[1, 1, 1])));
        let c = Cell::Segment(v(&[0, 2, 0]), v(&[2, 0, 0]));
        assert_eq!(intersect_cells(&a, &c), Meet::Empty);
        assert!(a.contains(&v(&[1, 1, 1])));
        assert!(!a.contains(&v(&[3, 3, 3])));
    }
}
