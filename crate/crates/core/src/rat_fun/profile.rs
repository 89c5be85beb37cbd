//! Piecewise-affine data along a single edge.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{as_i64, fmt_rational, Extended, Rational};

/// Breakpoints `(offset, value)` with strictly increasing offsets starting at 0.
/// On a finite edge the last offset is the edge length; on a ray the function
/// continues with `slope_at_infinity` after the last breakpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    pub breakpoints: Vec<(Rational, Rational)>,
    pub slope_at_infinity: Option<i64>,
}

fn int_slope(a: &(Rational, Rational), b: &(Rational, Rational)) -> Option<i64> {
    as_i64(&((&b.1 - &a.1) / (&b.0 - &a.0)))
}

impl Profile {
    pub fn affine(length: &Extended, value: Rational, slope: i64) -> Profile {
        let zero = Rational::zero();
        match length {
            Extended::Finite(l) => {
                let end = &value + Rational::from_integer(slope.into()) * l;
                Profile { breakpoints: vec![(zero, value), (l.clone(), end)], slope_at_infinity: None }
            }
            Extended::Infinite => Profile { breakpoints: vec![(zero, value)], slope_at_infinity: Some(slope) },
        }
    }

    pub fn validate(&self, length: &Extended) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidFunction(m));
        let Some(first) = self.breakpoints.first() else { return bad("profile without breakpoints".into()) };
        if !first.0.is_zero() {
            return bad("profile must start at offset 0".into());
        }
        for w in self.breakpoints.windows(2) {
            if w[1].0 <= w[0].0 {
                return bad("breakpoint offsets must increase strictly".into());
            }
            if int_slope(&w[0], &w[1]).is_none() {
                return bad(format!("non-integer slope after offset {}", fmt_rational(&w[0].0)));
            }
        }
        let last = &self.breakpoints.last().unwrap().0;
        match (length, self.slope_at_infinity) {
            (Extended::Finite(l), None) if last == l => Ok(()),
            (Extended::Finite(l), None) => bad(format!("profile must end at the edge length {}", fmt_rational(l))),
            (Extended::Finite(_), Some(_)) => bad("slope at infinity on a finite edge".into()),
            (Extended::Infinite, Some(_)) => Ok(()),
            (Extended::Infinite, None) => bad("ray profile needs a slope at infinity".into()),
        }
    }

    pub fn start_value(&self) -> &Rational {
        &self.breakpoints[0].1
    }

    /// Value at the last breakpoint.
    pub fn end_value(&self) -> &Rational {
        &self.breakpoints.last().unwrap().1
    }

    pub fn last_offset(&self) -> &Rational {
        &self.breakpoints.last().unwrap().0
    }

    /// Slope of piece `i` (between breakpoints `i` and `i+1`), or the tail slope.
    fn piece_slope(&self, i: usize) -> i64 {
        if i + 1 < self.breakpoints.len() {
            int_slope(&self.breakpoints[i], &self.breakpoints[i + 1]).expect("validated profile")
        } else {
            self.slope_at_infinity.expect("tail slope only on rays")
        }
    }

    /// Value at offset `t`; beyond the last breakpoint the tail slope is used.
    pub fn value_at(&self, t: &Rational) -> Rational {
        let i = self.breakpoints.partition_point(|(x, _)| x <= t).saturating_sub(1);
        let (x, v) = &self.breakpoints[i];
        if x == t {
            return v.clone();
        }
        v + Rational::from_integer(self.piece_slope(i).into()) * (t - x)
    }

    /// Slope toward increasing offsets just after `t`.
    pub fn slope_right(&self, t: &Rational) -> i64 {
        let i = self.breakpoints.partition_point(|(x, _)| x <= t).saturating_sub(1);
        self.piece_slope(i)
    }

    /// Slope toward increasing offsets just before `t` (requires `t > 0`).
    pub fn slope_left(&self, t: &Rational) -> i64 {
        let i = self.breakpoints.partition_point(|(x, _)| x < t);
        self.piece_slope(i - 1)
    }

    pub fn first_slope(&self) -> i64 {
        self.piece_slope(0)
    }

    /// Slope of the final finite piece, entering the `v` end.
    pub fn last_slope(&self) -> i64 {
        self.piece_slope(self.breakpoints.len() - 2)
    }

    /// Removes breakpoints where the slope does not change.
    pub fn canonical(self) -> Profile {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(self.breakpoints.len());
        for p in self.breakpoints {
            let m = out.len();
            if m >= 2 && int_slope(&out[m - 2], &out[m - 1]) == int_slope(&out[m - 1], &p) {
                out.pop();
            }
            out.push(p);
        }
        if let Some(s) = self.slope_at_infinity {
            while out.len() >= 2 && int_slope(&out[out.len() - 2], &out[out.len() - 1]) == Some(s) {
                out.pop();
            }
        }
        Profile { breakpoints: out, slope_at_infinity: self.slope_at_infinity }
    }

    fn grid(&self, other: &Profile) -> Vec<Rational> {
        let mut g: Vec<Rational> =
            self.breakpoints.iter().chain(&other.breakpoints).map(|(t, _)| t.clone()).collect();
        g.sort();
        g.dedup();
        g
    }

    /// Pointwise maximum with exact crossing points.
    pub fn max(&self, other: &Profile) -> Profile {
        let grid = self.grid(other);
        let mut pts: Vec<(Rational, Rational)> = Vec::new();
        for (k, t) in grid.iter().enumerate() {
            let (a, b) = (self.value_at(t), other.value_at(t));
            if k > 0 {
                let prev = &grid[k - 1];
                let (pa, pb) = (self.value_at(prev), other.value_at(prev));
                let (d0, d1) = (&pa - &pb, &a - &b);
                if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
                    let x = prev + (&d0 / (&d0 - &d1)) * (t - prev);
                    let v = self.value_at(&x);
                    pts.push((x, v));
                }
            }
            pts.push((t.clone(), if a >= b { a } else { b }));
        }
        let tail = match (self.slope_at_infinity, other.slope_at_infinity) {
            (Some(sa), Some(sb)) => {
                let g = grid.last().unwrap();
                let d = self.value_at(g) - other.value_at(g);
                let crossing = if d.is_positive() && sa < sb {
                    Some(&d / Rational::from_integer((sb - sa).into()))
                } else if d.is_negative() && sb < sa {
                    Some(-&d / Rational::from_integer((sa - sb).into()))
                } else {
                    None
                };
                if let Some(dx) = &crossing {
                    let x = g + dx;
                    let v = self.value_at(&x);
                    pts.push((x, v));
                }
                if d.is_positive() && crossing.is_none() {
                    Some(sa)
                } else if d.is_negative() && crossing.is_none() {
                    Some(sb)
                } else {
                    Some(sa.max(sb))
                }
            }
            _ => None,
        };
        Profile { breakpoints: pts, slope_at_infinity: tail }.canonical()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Profile) -> Profile {
        let pts = self.grid(other).into_iter().map(|t| {
            let v = self.value_at(&t) + other.value_at(&t);
            (t, v)
        });
        let tail = match (self.slope_at_infinity, other.slope_at_infinity) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Profile { breakpoints: pts.collect(), slope_at_infinity: tail }.canonical()
    }

    pub fn neg(&self) -> Profile {
        Profile {
            breakpoints: self.breakpoints.iter().map(|(t, v)| (t.clone(), -v)).collect(),
            slope_at_infinity: self.slope_at_infinity.map(|s| -s),
        }
    }

    pub fn shift(&self, c: &Rational) -> Profile {
        Profile {
            breakpoints: self.breakpoints.iter().map(|(t, v)| (t.clone(), v + c)).collect(),
            slope_at_infinity: self.slope_at_infinity,
        }
    }

    /// Multiplies offsets by `1/k`, so slopes scale by `k` (pullback along a degree-`k` edge).
    pub fn compress(&self, k: i64) -> Profile {
        let k = Rational::from_integer(k.into());
        Profile {
            breakpoints: self.breakpoints.iter().map(|(t, v)| (t / &k, v.clone())).collect(),
            slope_at_infinity: self.slope_at_infinity.map(|s| s * as_i64(&k).unwrap()),
        }
    }

    /// The part over `[a, b]`, re-based so that `a` becomes offset 0.
    pub fn slice(&self, a: &Rational, b: &Extended) -> Profile {
        let mut pts = vec![(Rational::zero(), self.value_at(a))];
        for (t, v) in &self.breakpoints {
            if t > a && Extended::Finite(t.clone()) < *b {
                pts.push((t - a, v.clone()));
            }
        }
        match b {
            Extended::Finite(b) => {
                if b > a {
                    pts.push((b - a, self.value_at(b)));
                }
                Profile { breakpoints: pts, slope_at_infinity: None }.canonical()
            }
            Extended::Infinite => Profile { breakpoints: pts, slope_at_infinity: self.slope_at_infinity }.canonical(),
        }
    }

    /// The same data read from the other end of a finite edge.
    pub fn reversed(&self) -> Profile {
        let l = self.last_offset().clone();
        let mut pts: Vec<(Rational, Rational)> = self.breakpoints.iter().map(|(t, v)| (&l - t, v.clone())).collect();
        pts.reverse();
        Profile { breakpoints: pts, slope_at_infinity: None }
    }

    /// Interior breakpoints, where the slope changes.
    pub fn interior_breakpoints(&self) -> impl Iterator<Item = &(Rational, Rational)> {
        let n = self.breakpoints.len();
        let skip_last = if self.slope_at_infinity.is_some() { 0 } else { 1 };
        self.breakpoints.iter().take(n - skip_last).skip(1)
    }

    /// Concatenates consecutive pieces; each later piece must start where the previous ended.
    pub fn concat(parts: Vec<Profile>) -> Profile {
        let mut pts: Vec<(Rational, Rational)> = Vec::new();
        let mut tail = None;
        let mut base = Rational::zero();
        for p in parts {
            for (k, (t, v)) in p.breakpoints.iter().enumerate() {
                if k == 0 && !pts.is_empty() {
                    continue;
                }
                pts.push((&base + t, v.clone()));
            }
            base = pts.last().unwrap().0.clone();
            tail = p.slope_at_infinity;
        }
        Profile { breakpoints: pts, slope_at_infinity: tail }.canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qq};

    fn prof(pts: &[(i64, i64)], tail: Option<i64>) -> Profile {
        Profile { breakpoints: pts.iter().map(|(t, v)| (q(*t), q(*v))).collect(), slope_at_infinity: tail }
    }

    #[test]
    fn max_with_crossing() {
        let f = prof(&[(0, 0), (3, 3)], None);
        let g = prof(&[(0, 2), (3, -1)], None);
        let h = f.max(&g);
        assert_eq!(h.breakpoints, vec![(q(0), q(2)), (q(1), q(1)), (q(3), q(3))]);
    }

    #[test]
    fn max_tail_crossing() {
        let f = prof(&[(0, 5)], Some(0));
        let g = prof(&[(0, 0)], Some(2));
        let h = f.max(&g);
        assert_eq!(h.breakpoints, vec![(q(0), q(5)), (qq(5, 2), q(5))]);
        assert_eq!(h.slope_at_infinity, Some(2));
    }

    #[test]
    fn canonical_drops_collinear() {
        let f = prof(&[(0, 0), (1, 1), (2, 2)], Some(1)).canonical();
        assert_eq!(f.breakpoints, vec![(q(0), q(0))]);
    }

    #[test]
    fn slice_and_reverse() {
        let f = prof(&[(0, 0), (2, 2), (4, 0)], None);
        let s = f.slice(&q(1), &Extended::Finite(q(3)));
        assert_eq!(s.breakpoints, vec![(q(0), q(1)), (q(1), q(2)), (q(2), q(1))]);
        assert_eq!(f.reversed().breakpoints, f.breakpoints);
        assert!(prof(&[(0, 0), (2, 1)], None).validate(&Extended::Finite(q(2))).is_err());
    }
}
