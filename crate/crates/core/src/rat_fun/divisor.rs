use std::collections::BTreeMap;
use std::sync::Arc;

use crate::curve::{Curve, PointRef};
use crate::error::{Error, Result};
use crate::rat_fun::PlFunction;
use crate::tropical::Degree;

/// A finite formal sum of points with integer coefficients. Zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    curve: Arc<Curve>,
    coeffs: BTreeMap<PointRef, i64>,
}

impl Divisor {
    pub fn zero(curve: Arc<Curve>) -> Divisor {
        Divisor { curve, coeffs: BTreeMap::new() }
    }

    pub fn new(curve: Arc<Curve>, entries: impl IntoIterator<Item = (PointRef, i64)>) -> Result<Divisor> {
        let mut d = Divisor::zero(curve);
        for (p, k) in entries {
            let p = d.curve.normalize(&p)?;
            d.bump(p, k);
        }
        Ok(d)
    }

    fn bump(&mut self, p: PointRef, k: i64) {
        let c = self.coeffs.entry(p.clone()).or_insert(0);
        *c += k;
        if *c == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn coefficients(&self) -> &BTreeMap<PointRef, i64> {
        &self.coeffs
    }

    pub fn get(&self, p: &PointRef) -> i64 {
        self.curve.normalize(p).ok().and_then(|p| self.coeffs.get(&p).copied()).unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|k| *k >= 0)
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        if *self.curve != *other.curve {
            return Err(Error::CurveMismatch);
        }
        let mut d = self.clone();
        for (p, k) in &other.coeffs {
            d.bump(p.clone(), *k);
        }
        Ok(d)
    }

    pub fn neg(&self) -> Divisor {
        Divisor { curve: self.curve.clone(), coeffs: self.coeffs.iter().map(|(p, k)| (p.clone(), -k)).collect() }
    }

    /// Support points labelled by [`Curve::point_label`], ordered by component,
    /// then edge or vertex id, then offset.
    pub fn labelled(&self) -> Vec<(String, i64)> {
        let c = &self.curve;
        let mut rows: Vec<((usize, String, crate::rational::Rational), String, i64)> = self
            .coeffs
            .iter()
            .map(|(p, k)| {
                let key = match p {
                    PointRef::Vertex(v) => (c.component_of(*v), c.vertex(*v).id.clone(), crate::rational::q(0)),
                    PointRef::OnEdge(e, t) => (c.component_of(c.edge(*e).u), c.edge(*e).id.clone(), t.clone()),
                    PointRef::InfinityOf(_) => unreachable!("normalized"),
                };
                (key, c.point_label(p), *k)
            })
            .collect();
        rows.sort();
        rows.into_iter().map(|(_, l, k)| (l, k)).collect()
    }
}

/// The principal divisor: at each point, the sum of outgoing slopes.
pub fn div_of(f: &PlFunction) -> Result<Divisor> {
    if f.is_neg_inf() {
        return Err(Error::ZeroFunction);
    }
    let c = f.curve().clone();
    let mut d = Divisor::zero(c.clone());
    for v in 0..c.vertices().len() {
        let p = PointRef::Vertex(v);
        let k: i64 = f.slopes_at(&p)?.iter().sum();
        d.bump(p, k);
    }
    for (e, prof) in f.profiles().unwrap().iter().enumerate() {
        for (t, _) in prof.interior_breakpoints() {
            d.bump(PointRef::OnEdge(e, t.clone()), prof.slope_right(t) - prof.slope_left(t));
        }
    }
    Ok(d)
}

pub fn is_harmonic_at(f: &PlFunction, p: &PointRef) -> Result<bool> {
    Ok(f.slopes_at(p)?.iter().sum::<i64>() == 0)
}

/// Whether `f` lies in R(D): `f = −∞` or `D + div(f) ≥ 0`.
pub fn rd_member(d: &Divisor, f: &PlFunction) -> Result<bool> {
    if **d.curve() != **f.curve() {
        return Err(Error::CurveMismatch);
    }
    if f.is_neg_inf() {
        return Ok(true);
    }
    Ok(d.add(&div_of(f)?)?.is_effective())
}

/// Degree of the module generated by `gens`: minus the sum, over all poles of the
/// generators, of the smallest coefficient any generator has there.
pub fn module_degree(gens: &[PlFunction]) -> Result<Degree> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    if gens.iter().any(|g| **g.curve() != **first.curve()) {
        return Err(Error::CurveMismatch);
    }
    let divs: Vec<Divisor> = gens.iter().filter(|g| !g.is_neg_inf()).map(div_of).collect::<Result<_>>()?;
    if divs.is_empty() {
        return Ok(Degree::NegInf);
    }
    let mut poles: BTreeMap<&PointRef, i64> = BTreeMap::new();
    for d in &divs {
        for (p, k) in d.coefficients() {
            if *k < 0 {
                poles.insert(p, 0);
            }
        }
    }
    let mut total = 0i64;
    for p in poles.keys() {
        total -= divs.iter().map(|d| d.coefficients().get(*p).copied().unwrap_or(0)).min().unwrap();
    }
    Ok(Degree::Finite(total as u64))
}
