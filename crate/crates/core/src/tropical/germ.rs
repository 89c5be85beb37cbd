//! The germ semifield R_n = ((ℚ × ℤⁿ) ∪ {−∞}, ⊞, ⊡).
//!
//! A finite germ `(a, (i₁, …, iₙ))` records a value and the integer slopes in
//! `n` ordered directions. Addition keeps the germ with the larger value and,
//! on a tie, the componentwise maximum of the slope vectors. Multiplication
//! adds values and slope vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};
use crate::tropical::TropValue;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Germ {
    NegInf { n: usize },
    Finite { coeff: Rational, slopes: Vec<i64> },
}

impl Germ {
    pub fn new(coeff: Rational, slopes: Vec<i64>) -> Self {
        Germ::Finite { coeff, slopes }
    }

    pub fn neg_inf(n: usize) -> Self {
        Germ::NegInf { n }
    }

    /// The multiplicative identity `(0, 0)` of R_n.
    pub fn one(n: usize) -> Self {
        Germ::Finite { coeff: Rational::from_integer(0.into()), slopes: vec![0; n] }
    }

    pub fn dim(&self) -> usize {
        match self {
            Germ::NegInf { n } => *n,
            Germ::Finite { slopes, .. } => slopes.len(),
        }
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, Germ::NegInf { .. })
    }

    fn same_dim(&self, other: &Self) -> Result<usize> {
        let (a, b) = (self.dim(), other.dim());
        if a != b {
            return Err(Error::DimensionMismatch { expected: a, found: b });
        }
        Ok(a)
    }

    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(match (self, other) {
            (Germ::NegInf { .. }, g) | (g, Germ::NegInf { .. }) => g.clone(),
            (Germ::Finite { coeff: a, slopes: i }, Germ::Finite { coeff: b, slopes: j }) => {
                match a.cmp(b) {
                    std::cmp::Ordering::Greater => self.clone(),
                    std::cmp::Ordering::Less => other.clone(),
                    std::cmp::Ordering::Equal => Germ::Finite {
                        coeff: a.clone(),
                        slopes: i.iter().zip(j).map(|(x, y)| *x.max(y)).collect(),
                    },
                }
            }
        })
    }

    pub fn otimes(&self, other: &Self) -> Result<Self> {
        let n = self.same_dim(other)?;
        Ok(match (self, other) {
            (Germ::Finite { coeff: a, slopes: i }, Germ::Finite { coeff: b, slopes: j }) => {
                Germ::Finite { coeff: a + b, slopes: i.iter().zip(j).map(|(x, y)| x + y).collect() }
            }
            _ => Germ::NegInf { n },
        })
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            Germ::NegInf { .. } => Err(Error::ZeroInverse),
            Germ::Finite { coeff, slopes } => {
                Ok(Germ::Finite { coeff: -coeff, slopes: slopes.iter().map(|x| -x).collect() })
            }
        }
    }

    /// Tropical power `g^{⊡k}`; negative `k` requires `g ≠ −∞`.
    pub fn pow(&self, k: i64) -> Result<Self> {
        match self {
            Germ::NegInf { n } => {
                if k > 0 {
                    Ok(Germ::NegInf { n: *n })
                } else if k == 0 {
                    Ok(Germ::one(*n))
                } else {
                    Err(Error::ZeroInverse)
                }
            }
            Germ::Finite { coeff, slopes } => Ok(Germ::Finite {
                coeff: coeff * Rational::from_integer(k.into()),
                slopes: slopes.iter().map(|x| x * k).collect(),
            }),
        }
    }

    /// Drops slope component `k` (1-based), mapping R_n onto R_{n−1}.
    pub fn forget(&self, k: usize) -> Result<Self> {
        let n = self.dim();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        Ok(match self {
            Germ::NegInf { .. } => Germ::NegInf { n: n - 1 },
            Germ::Finite { coeff, slopes } => {
                let mut s = slopes.clone();
                s.remove(k - 1);
                Germ::Finite { coeff: coeff.clone(), slopes: s }
            }
        })
    }

    /// Sum of the slope components.
    pub fn omega(&self) -> Result<i64> {
        match self {
            Germ::NegInf { .. } => Err(Error::OmegaAtZero),
            Germ::Finite { slopes, .. } => Ok(slopes.iter().sum()),
        }
    }

    /// The value component, as an element of T = R₀.
    pub fn value(&self) -> TropValue {
        match self {
            Germ::NegInf { .. } => TropValue::NegInf,
            Germ::Finite { coeff, .. } => TropValue::Finite(coeff.clone()),
        }
    }
}

/// Sum, product and inverse of the first operand.
pub fn germ_ops(g: &Germ, h: &Germ) -> Result<(Germ, Germ, Result<Germ>)> {
    Ok((g.oplus(h)?, g.otimes(h)?, g.inv()))
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Germ::NegInf { .. } => f.write_str("-inf"),
            Germ::Finite { coeff, slopes } => {
                let s: Vec<String> = slopes.iter().map(|x| x.to_string()).collect();
                write!(f, "({},({}))", fmt_rational(coeff), s.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qq};
    use proptest::prelude::*;

    fn g(c: i64, s: &[i64]) -> Germ {
        Germ::new(q(c), s.to_vec())
    }

    #[test]
    fn examples() {
        assert_eq!(g(0, &[1, 0]).oplus(&g(0, &[0, 1])).unwrap(), g(0, &[1, 1]));
        assert_eq!(g(3, &[1, 2]).oplus(&g(1, &[5, 5])).unwrap(), g(3, &[1, 2]));
        assert_eq!(g(1, &[1, 0]).otimes(&g(2, &[0, 1])).unwrap(), g(3, &[1, 1]));
        assert_eq!(g(1, &[1, 0]).inv().unwrap(), g(-1, &[-1, 0]));
        assert!(Germ::neg_inf(2).inv().is_err());
        assert!(g(0, &[1]).oplus(&g(0, &[1, 2])).is_err());
    }

    #[test]
    fn forget_and_omega() {
        assert_eq!(g(5, &[1, 2, 3]).forget(2).unwrap(), g(5, &[1, 3]));
        let r0 = g(5, &[7]).forget(1).unwrap();
        assert_eq!(r0, g(5, &[]));
        assert_eq!(r0.value(), TropValue::Finite(q(5)));
        assert_eq!(Germ::neg_inf(1).forget(1).unwrap(), Germ::neg_inf(0));
        assert!(g(0, &[1]).forget(2).is_err());
        assert_eq!(g(0, &[-1, -1, -1]).omega().unwrap(), -3);
        assert_eq!(g(7, &[1, 1, -2]).omega().unwrap(), 0);
        assert_eq!(Germ::new(qq(2, 3), vec![]).omega().unwrap(), 0);
        assert_eq!(Germ::neg_inf(3).omega().unwrap_err().to_string(), "omega undefined at zero");
    }

    fn arb(n: usize) -> impl Strategy<Value = Germ> {
        prop_oneof![
            1 => Just(Germ::neg_inf(n)),
            // a narrow coefficient range makes ties, and so the max-of-slopes branch, common
            8 => (-3i64..3, prop::collection::vec(-4i64..5, n))
                .prop_map(|(c, s)| Germ::new(q(c), s)),
        ]
    }

    fn triple() -> impl Strategy<Value = (Germ, Germ, Germ)> {
        (0usize..=5).prop_flat_map(|n| (arb(n), arb(n), arb(n)))
    }

    proptest! {
        #[test]
        fn semifield_laws((a, b, c) in triple()) {
            let n = a.dim();
            prop_assert_eq!(a.oplus(&b).unwrap(), b.oplus(&a).unwrap());
            prop_assert_eq!(a.otimes(&b).unwrap(), b.otimes(&a).unwrap());
            prop_assert_eq!(a.oplus(&b).unwrap().oplus(&c).unwrap(), a.oplus(&b.oplus(&c).unwrap()).unwrap());
            prop_assert_eq!(a.otimes(&b).unwrap().otimes(&c).unwrap(), a.otimes(&b.otimes(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.otimes(&b.oplus(&c).unwrap()).unwrap(),
                a.otimes(&b).unwrap().oplus(&a.otimes(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.oplus(&a).unwrap(), a.clone());
            prop_assert_eq!(a.otimes(&Germ::one(n)).unwrap(), a.clone());
            if !a.is_neg_inf() {
                prop_assert_eq!(a.otimes(&a.inv().unwrap()).unwrap(), Germ::one(n));
            }
        }

        #[test]
        fn forget_is_homomorphism((a, b, _c) in triple(), j in 1usize..6, k in 1usize..6) {
            let n = a.dim();
            prop_assume!(n >= 2 && j <= n && k < n);
            prop_assert_eq!(a.oplus(&b).unwrap().forget(j).unwrap(), a.forget(j).unwrap().oplus(&b.forget(j).unwrap()).unwrap());
            prop_assert_eq!(a.otimes(&b).unwrap().forget(j).unwrap(), a.forget(j).unwrap().otimes(&b.forget(j).unwrap()).unwrap());
            // dropping j then k equals dropping the same two original components in the other order
            let orig_k = if k >= j { k + 1 } else { k };
            let first = a.forget(j).unwrap().forget(k).unwrap();
            let j_after = if j > orig_k { j - 1 } else { j };
            let second = a.forget(orig_k).unwrap().forget(j_after).unwrap();
            prop_assert_eq!(first, second);
        }
    }
}
