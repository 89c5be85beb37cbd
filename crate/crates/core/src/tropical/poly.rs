//! Tropical Laurent polynomials in `n` variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::tropical::{Germ, TropValue};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropPoly {
    vars: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

/// Degree of a polynomial or module: a nonnegative integer, or −∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u64),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl TropPoly {
    /// The −∞ polynomial.
    pub fn neg_inf(vars: usize) -> Self {
        assert!(vars >= 1, "a polynomial needs at least one variable");
        TropPoly { vars, terms: BTreeMap::new() }
    }

    pub fn monomial(coeff: Rational, exp: Vec<i64>) -> Self {
        let mut p = TropPoly::neg_inf(exp.len());
        p.terms.insert(exp, coeff);
        p
    }

    /// Builds a polynomial from `(coeff, exponent)` pairs; repeated exponents keep the larger coefficient.
    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Rational, Vec<i64>)>) -> Result<Self> {
        let mut p = TropPoly::neg_inf(vars);
        for (c, e) in terms {
            if e.len() != vars {
                return Err(Error::DimensionMismatch { expected: vars, found: e.len() });
            }
            p.add_term(c, e);
        }
        Ok(p)
    }

    fn add_term(&mut self, c: Rational, e: Vec<i64>) {
        match self.terms.get_mut(&e) {
            Some(old) if *old >= c => {}
            Some(old) => *old = c,
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rational> {
        &self.terms
    }

    pub fn is_neg_inf(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::DimensionMismatch { expected: self.vars, found: other.vars });
        }
        Ok(())
    }

    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(c.clone(), e.clone());
        }
        Ok(p)
    }

    pub fn otimes(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut p = TropPoly::neg_inf(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                p.add_term(c1 + c2, e1.iter().zip(e2).map(|(a, b)| a + b).collect());
            }
        }
        Ok(p)
    }

    /// Value at `x` and the exponents of all terms attaining it.
    pub fn eval(&self, x: &[Rational]) -> Result<(TropValue, BTreeSet<Vec<i64>>)> {
        if x.len() != self.vars {
            return Err(Error::DimensionMismatch { expected: self.vars, found: x.len() });
        }
        let mut best: Option<Rational> = None;
        let mut arg = BTreeSet::new();
        for (e, c) in &self.terms {
            let v = term_value(c, e, x);
            match &best {
                Some(b) if v < *b => {}
                Some(b) if v == *b => {
                    arg.insert(e.clone());
                }
                _ => {
                    best = Some(v);
                    arg.clear();
                    arg.insert(e.clone());
                }
            }
        }
        Ok((best.map_or(TropValue::NegInf, TropValue::Finite), arg))
    }

    pub fn degree(&self) -> Result<Degree> {
        let mut d = Degree::NegInf;
        for e in self.terms.keys() {
            if e.iter().any(|&x| x < 0) {
                return Err(Error::NotTropicalPolynomial(format!("{e:?}")));
            }
            d = d.max(Degree::Finite(e.iter().map(|&x| x as u64).sum()));
        }
        Ok(d)
    }

    /// Folds the terms with ⊞, sending `c ⊙ X^i` to the germ `(c, i)`.
    pub fn to_germ(&self) -> Germ {
        self.terms.iter().fold(Germ::neg_inf(self.vars), |acc, (e, c)| {
            acc.oplus(&Germ::new(c.clone(), e.clone())).expect("same dimension")
        })
    }

    /// Multiplies by the monomial `X^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        TropPoly { vars: self.vars, terms }
    }

    /// Parses the line format `coeff : e1 … en`. A line whose coefficient is `-inf`
    /// contributes no term but fixes the number of variables.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vars = None;
        let mut terms = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let malformed = |msg: String| Error::Malformed { line: no + 1, column: 1, msg };
            let (c, e) = line
                .split_once(':')
                .ok_or_else(|| malformed("expected `coeff : e1 ... en`".into()))?;
            let exps = e
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| malformed(format!("bad exponent {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if exps.is_empty() {
                return Err(malformed("no exponents".into()));
            }
            match vars {
                None => vars = Some(exps.len()),
                Some(n) if n != exps.len() => {
                    return Err(malformed(format!("expected {n} exponents, found {}", exps.len())))
                }
                _ => {}
            }
            match c.trim() {
                "-inf" => {}
                t => terms.push((parse_rational(t).map_err(|e| malformed(e.to_string()))?, exps)),
            }
        }
        let vars = vars.ok_or(Error::Malformed { line: 1, column: 1, msg: "empty polynomial file".into() })?;
        TropPoly::from_terms(vars, terms)
    }
}

fn term_value(c: &Rational, e: &[i64], x: &[Rational]) -> Rational {
    e.iter().zip(x).fold(c.clone(), |acc, (k, xi)| acc + xi * Rational::from_integer((*k).into()))
}

impl fmt::Display for TropPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps = |e: &[i64]| e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        if self.terms.is_empty() {
            return writeln!(f, "-inf : {}", exps(&vec![0; self.vars]));
        }
        for (e, c) in &self.terms {
            writeln!(f, "{} : {}", fmt_rational(c), exps(e))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qq};
    use proptest::prelude::*;

    fn line() -> TropPoly {
        TropPoly::from_terms(2, [(q(0), vec![0, 0]), (q(0), vec![1, 0]), (q(0), vec![0, 1])]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let (v, arg) = line().eval(&[q(0), q(0)]).unwrap();
        assert_eq!(v, TropValue::Finite(q(0)));
        assert_eq!(arg.len(), 3);
        let (v, arg) = line().eval(&[q(-1), q(-2)]).unwrap();
        assert_eq!(v, TropValue::Finite(q(0)));
        assert_eq!(arg.into_iter().collect::<Vec<_>>(), vec![vec![0, 0]]);
        let m = TropPoly::monomial(q(5), vec![1]);
        let (v, arg) = m.eval(&[q(2)]).unwrap();
        assert_eq!((v, arg.len()), (TropValue::Finite(q(7)), 1));
        assert!(m.eval(&[q(1), q(1)]).is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(line().degree().unwrap(), Degree::Finite(1));
        assert_eq!(TropPoly::neg_inf(2).degree().unwrap(), Degree::NegInf);
        let p = TropPoly::from_terms(2, [(q(0), vec![0, 0]), (q(0), vec![1, 1]), (q(0), vec![2, 0])]).unwrap();
        assert_eq!(p.degree().unwrap(), Degree::Finite(2));
        let laurent = TropPoly::monomial(q(0), vec![-1, 0]);
        assert!(matches!(laurent.degree(), Err(Error::NotTropicalPolynomial(_))));
    }

    #[test]
    fn germs_of_polynomials() {
        let p = TropPoly::from_terms(2, [(q(0), vec![0, 0]), (q(0), vec![1, 0])]).unwrap();
        assert_eq!(p.to_germ(), Germ::new(q(0), vec![1, 0]));
        assert_eq!(TropPoly::monomial(q(3), vec![1, 1]).to_germ(), Germ::new(q(3), vec![1, 1]));
        assert_eq!(TropPoly::neg_inf(2).to_germ(), Germ::neg_inf(2));
    }

    #[test]
    fn text_form() {
        let p = TropPoly::from_terms(2, [(qq(-3, 2), vec![2, 0]), (q(4), vec![0, -1])]).unwrap();
        let text = p.to_string();
        assert_eq!(text, "4 : 0 -1\n-3/2 : 2 0\n");
        assert_eq!(TropPoly::parse(&text).unwrap(), p);
        let z = TropPoly::neg_inf(3);
        assert_eq!(TropPoly::parse(&z.to_string()).unwrap(), z);
        assert!(matches!(TropPoly::parse("1 : 0\n2 : 1 1\n"), Err(Error::Malformed { line: 2, .. })));
        assert!(TropPoly::parse("0.5 : 1\n").is_err());
    }

    fn arb_poly(vars: usize) -> impl Strategy<Value = TropPoly> {
        prop::collection::vec((-4i64..4, prop::collection::vec(-2i64..3, vars)), 0..5).prop_map(move |ts| {
            TropPoly::from_terms(vars, ts.into_iter().map(|(c, e)| (q(c), e))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn to_germ_is_homomorphism(f in arb_poly(2), g in arb_poly(2)) {
            prop_assert_eq!(f.oplus(&g).unwrap().to_germ(), f.to_germ().oplus(&g.to_germ()).unwrap());
            prop_assert_eq!(f.otimes(&g).unwrap().to_germ(), f.to_germ().otimes(&g.to_germ()).unwrap());
        }

        #[test]
        fn text_round_trip(f in arb_poly(3)) {
            prop_assert_eq!(TropPoly::parse(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn eval_is_homomorphism(f in arb_poly(2), g in arb_poly(2), x in -5i64..5, y in -5i64..5) {
            let p = [qq(x, 2), q(y)];
            let (fv, _) = f.eval(&p).unwrap();
            let (gv, _) = g.eval(&p).unwrap();
            prop_assert_eq!(f.oplus(&g).unwrap().eval(&p).unwrap().0, fv.oplus(&gv));
            prop_assert_eq!(f.otimes(&g).unwrap().eval(&p).unwrap().0, fv.otimes(&gv));
        }
    }
}
