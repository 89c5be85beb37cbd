use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;


use crate::curve::{Curve, Dir, PointRef};
use crate::error::{Error, Result};
use crate::rat_fun::Profile;
use crate::rational::{fmt_rational, Rational};

/// A value in ℚ ∪ {±∞}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::NegInf => f.write_str("-inf"),
            Value::Finite(x) => f.write_str(&fmt_rational(x)),
            Value::PosInf => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Body {
    /// Value at each finite vertex; `None` at points at infinity.
    vertex_values: Vec<Option<Rational>>,
    profiles: Vec<Profile>,
}

/// A rational function on a curve: the constant −∞, or continuous per-edge profiles
/// with integer slopes.
#[derive(Clone, Debug)]
pub struct PlFunction {
    curve: Arc<Curve>,
    body: Option<Body>,
}

impl PartialEq for PlFunction {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.curve, &other.curve) || *self.curve == *other.curve) && self.body == other.body
    }
}

impl Eq for PlFunction {}

impl PlFunction {
    pub fn neg_inf(curve: Arc<Curve>) -> PlFunction {
        PlFunction { curve, body: None }
    }

    pub fn constant(curve: Arc<Curve>, c: Rational) -> PlFunction {
        let profiles = curve.edges().iter().map(|e| Profile::affine(&e.length, c.clone(), 0)).collect();
        let vertex_values = curve.vertices().iter().map(|v| (!v.at_infinity).then(|| c.clone())).collect();
        PlFunction { curve, body: Some(Body { vertex_values, profiles }) }
    }

    /// Builds a function from one profile per edge. Vertices without edges take
    /// their value from `isolated`.
    pub fn from_profiles(curve: Arc<Curve>, profiles: Vec<Profile>, isolated: &BTreeMap<usize, Rational>) -> Result<PlFunction> {
        if profiles.len() != curve.edges().len() {
            return Err(Error::InvalidFunction(format!(
                "expected {} edge profiles, got {}",
                curve.edges().len(),
                profiles.len()
            )));
        }
        let mut vertex_values: Vec<Option<Rational>> = vec![None; curve.vertices().len()];
        let set = |v: usize, x: &Rational, vals: &mut Vec<Option<Rational>>| -> Result<()> {
            match &vals[v] {
                Some(y) if y != x => Err(Error::InvalidFunction(format!(
                    "discontinuous at vertex {}: {} vs {}",
                    curve.vertex(v).id,
                    fmt_rational(y),
                    fmt_rational(x)
                ))),
                _ => {
                    vals[v] = Some(x.clone());
                    Ok(())
                }
            }
        };
        let mut canon = Vec::with_capacity(profiles.len());
        for (i, p) in profiles.into_iter().enumerate() {
            let e = curve.edge(i);
            p.validate(&e.length)
                .map_err(|err| Error::InvalidFunction(format!("edge {}: {}", e.id, err_msg(err))))?;
            set(e.u, p.start_value(), &mut vertex_values)?;
            if !e.is_infinite() {
                set(e.v, p.end_value(), &mut vertex_values)?;
            }
            canon.push(p.canonical());
        }
        for (v, x) in isolated {
            if *v >= curve.vertices().len() || curve.vertex(*v).at_infinity {
                return Err(Error::InvalidFunction(format!("no finite vertex {v}")));
            }
            set(*v, x, &mut vertex_values)?;
        }
        for (v, vert) in curve.vertices().iter().enumerate() {
            if !vert.at_infinity && vertex_values[v].is_none() {
                return Err(Error::InvalidFunction(format!("no value at isolated vertex {}", vert.id)));
            }
        }
        Ok(PlFunction { curve, body: Some(Body { vertex_values, profiles: canon }) })
    }

    pub fn curve(&self) -> &Arc<Curve> {
        &self.curve
    }

    pub fn is_neg_inf(&self) -> bool {
        self.body.is_none()
    }

    /// Profile on edge `e`; `None` for the constant −∞.
    pub fn profile(&self, e: usize) -> Option<&Profile> {
        self.body.as_ref().map(|b| &b.profiles[e])
    }

    pub fn profiles(&self) -> Option<&[Profile]> {
        self.body.as_ref().map(|b| b.profiles.as_slice())
    }

    /// Value at a finite vertex.
    pub fn vertex_value(&self, v: usize) -> Option<&Rational> {
        self.body.as_ref().and_then(|b| b.vertex_values[v].as_ref())
    }

    /// Finite vertices without incident edges, with their values.
    pub fn isolated_values(&self) -> BTreeMap<usize, Rational> {
        let mut out = BTreeMap::new();
        if let Some(b) = &self.body {
            for (v, val) in b.vertex_values.iter().enumerate() {
                if self.curve.incident(v).is_empty() {
                    out.insert(v, val.clone().expect("finite isolated vertex"));
                }
            }
        }
        out
    }

    fn same_curve(&self, other: &PlFunction) -> Result<()> {
        if Arc::ptr_eq(&self.curve, &other.curve) || *self.curve == *other.curve {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    fn zip(&self, other: &PlFunction, op: impl Fn(&Profile, &Profile) -> Profile, vop: impl Fn(&Rational, &Rational) -> Rational) -> PlFunction {
        let (a, b) = (self.body.as_ref().unwrap(), other.body.as_ref().unwrap());
        let profiles = a.profiles.iter().zip(&b.profiles).map(|(p, q)| op(p, q)).collect();
        let vertex_values = a
            .vertex_values
            .iter()
            .zip(&b.vertex_values)
            .map(|(x, y)| match (x, y) {
                (Some(x), Some(y)) => Some(vop(x, y)),
                _ => None,
            })
            .collect();
        PlFunction { curve: self.curve.clone(), body: Some(Body { vertex_values, profiles }) }
    }

    /// Pointwise maximum.
    pub fn oplus(&self, other: &PlFunction) -> Result<PlFunction> {
        self.same_curve(other)?;
        Ok(match (&self.body, &other.body) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            _ => self.zip(other, |p, q| p.max(q), |x, y| if x >= y { x.clone() } else { y.clone() }),
        })
    }

    /// Pointwise sum.
    pub fn otimes(&self, other: &PlFunction) -> Result<PlFunction> {
        self.same_curve(other)?;
        Ok(match (&self.body, &other.body) {
            (None, _) | (_, None) => PlFunction::neg_inf(self.curve.clone()),
            _ => self.zip(other, |p, q| p.add(q), |x, y| x + y),
        })
    }

    /// Pointwise negation.
    pub fn inv(&self) -> Result<PlFunction> {
        let b = self.body.as_ref().ok_or(Error::ZeroInverse)?;
        Ok(PlFunction {
            curve: self.curve.clone(),
            body: Some(Body {
                vertex_values: b.vertex_values.iter().map(|x| x.as_ref().map(|x| -x)).collect(),
                profiles: b.profiles.iter().map(Profile::neg).collect(),
            }),
        })
    }

    /// Tropical scalar multiplication `t ⊙ f`.
    pub fn scale(&self, t: &Rational) -> PlFunction {
        match &self.body {
            None => self.clone(),
            Some(b) => PlFunction {
                curve: self.curve.clone(),
                body: Some(Body {
                    vertex_values: b.vertex_values.iter().map(|x| x.as_ref().map(|x| x + t)).collect(),
                    profiles: b.profiles.iter().map(|p| p.shift(t)).collect(),
                }),
            },
        }
    }

    /// Pointwise minimum, `(f⁻¹ ⊕ g⁻¹)⁻¹`.
    pub fn min(&self, other: &PlFunction) -> Result<PlFunction> {
        self.inv()?.oplus(&other.inv()?)?.inv()
    }

    /// Tropical power `f^{⊙k}`, i.e. `k·f`.
    pub fn pow(&self, k: i64) -> Result<PlFunction> {
        let Some(b) = &self.body else {
            return if k > 0 { Ok(self.clone()) } else { Err(Error::ZeroInverse) };
        };
        let kq = Rational::from_integer(k.into());
        Ok(PlFunction {
            curve: self.curve.clone(),
            body: Some(Body {
                vertex_values: b.vertex_values.iter().map(|x| x.as_ref().map(|x| x * &kq)).collect(),
                profiles: b
                    .profiles
                    .iter()
                    .map(|p| {
                        Profile {
                            breakpoints: p.breakpoints.iter().map(|(t, v)| (t.clone(), v * &kq)).collect(),
                            slope_at_infinity: p.slope_at_infinity.map(|s| s * k),
                        }
                        .canonical()
                    })
                    .collect(),
            }),
        })
    }

    pub fn eval(&self, p: &PointRef) -> Result<Value> {
        let p = self.curve.normalize(p)?;
        let Some(b) = &self.body else { return Ok(Value::NegInf) };
        Ok(match p {
            PointRef::Vertex(v) => match &b.vertex_values[v] {
                Some(x) => Value::Finite(x.clone()),
                None => {
                    let e = self.curve.incident(v)[0].edge;
                    let prof = &b.profiles[e];
                    match prof.slope_at_infinity.unwrap().cmp(&0) {
                        Ordering::Greater => Value::PosInf,
                        Ordering::Less => Value::NegInf,
                        Ordering::Equal => Value::Finite(prof.end_value().clone()),
                    }
                }
            },
            PointRef::OnEdge(e, t) => Value::Finite(b.profiles[e].value_at(&t)),
            PointRef::InfinityOf(_) => unreachable!(),
        })
    }

    /// Finite value at a finite point.
    pub fn eval_finite(&self, p: &PointRef) -> Result<Rational> {
        match self.eval(p)? {
            Value::Finite(x) => Ok(x),
            v => Err(Error::InvalidPoint(format!("value {v} is not finite"))),
        }
    }

    /// Outgoing slope at `p` along `dir`. At a point at infinity this is the slope
    /// toward infinity times −1.
    pub fn outgoing_slope(&self, p: &PointRef, dir: Dir) -> Result<i64> {
        let b = self.body.as_ref().ok_or(Error::ZeroFunction)?;
        let p = self.curve.normalize(p)?;
        let dirs = self.curve.directions_at(&p)?;
        if !dirs.contains(&dir) {
            return Err(Error::InvalidDirection(format!("direction not at {}", self.curve.point_label(&p))));
        }
        let prof = &b.profiles[dir.edge];
        let edge = self.curve.edge(dir.edge);
        Ok(match p {
            PointRef::Vertex(v) if self.curve.vertex(v).at_infinity => -prof.slope_at_infinity.unwrap(),
            PointRef::Vertex(_) => {
                if dir.forward {
                    prof.first_slope()
                } else if edge.is_infinite() {
                    unreachable!("backward direction on a ray starts at infinity")
                } else {
                    -prof.last_slope()
                }
            }
            PointRef::OnEdge(_, t) => {
                if dir.forward {
                    prof.slope_right(&t)
                } else {
                    -prof.slope_left(&t)
                }
            }
            PointRef::InfinityOf(_) => unreachable!(),
        })
    }

    /// Outgoing slopes at `p` in the default direction order.
    pub fn slopes_at(&self, p: &PointRef) -> Result<Vec<i64>> {
        self.curve.directions_at(p)?.into_iter().map(|d| self.outgoing_slope(p, d)).collect()
    }

    /// Ray slopes toward infinity, keyed by edge.
    pub fn slopes_at_infinity(&self) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        if let Some(b) = &self.body {
            for (e, p) in b.profiles.iter().enumerate() {
                if let Some(s) = p.slope_at_infinity {
                    out.insert(e, s);
                }
            }
        }
        out
    }

    /// Whether the function is constant; the constant −∞ counts.
    pub fn is_constant(&self) -> bool {
        match &self.body {
            None => true,
            Some(b) => {
                let first = b.vertex_values.iter().flatten().next();
                b.profiles.iter().all(|p| p.breakpoints.len() <= 2 && p.slope_at_infinity.unwrap_or(0) == 0 && p.start_value() == p.end_value())
                    && b.vertex_values.iter().flatten().all(|x| Some(x) == first)
            }
        }
    }

    /// Re-homes the function on an equal curve.
    pub fn on_curve(&self, curve: Arc<Curve>) -> Result<PlFunction> {
        if *curve != *self.curve {
            return Err(Error::CurveMismatch);
        }
        Ok(PlFunction { curve, body: self.body.clone() })
    }

    /// Every point where the function is not locally affine, plus all vertices.
    pub fn critical_points(&self) -> Vec<PointRef> {
        let mut out: Vec<PointRef> = (0..self.curve.vertices().len()).map(PointRef::Vertex).collect();
        if let Some(b) = &self.body {
            for (e, p) in b.profiles.iter().enumerate() {
                for (t, _) in p.interior_breakpoints() {
                    out.push(PointRef::OnEdge(e, t.clone()));
                }
            }
        }
        out
    }

    /// Minimum finite value over the curve, if the function is bounded below.
    pub fn min_value(&self) -> Option<Rational> {
        let b = self.body.as_ref()?;
        let mut best: Option<Rational> = None;
        for p in &b.profiles {
            if p.slope_at_infinity.is_some_and(|s| s < 0) {
                return None;
            }
            for (_, v) in &p.breakpoints {
                if best.as_ref().map_or(true, |m| v < m) {
                    best = Some(v.clone());
                }
            }
        }
        for v in b.vertex_values.iter().flatten() {
            if best.as_ref().map_or(true, |m| v < m) {
                best = Some(v.clone());
            }
        }
        best
    }
}

fn err_msg(e: Error) -> String {
    match e {
        Error::InvalidFunction(m) => m,
        other => other.to_string(),
    }
}

/// Checks that two functions differ nowhere; returns a point where they do.
pub fn first_difference(f: &PlFunction, g: &PlFunction) -> Result<Option<PointRef>> {
    f.same_curve(g)?;
    if f.is_neg_inf() != g.is_neg_inf() {
        let v = f.curve.vertices().iter().position(|v| !v.at_infinity).unwrap_or(0);
        return Ok(Some(PointRef::Vertex(v)));
    }
    for p in f.critical_points().into_iter().chain(g.critical_points()) {
        if !f.curve.is_at_infinity(&p)? && f.eval(&p)? != g.eval(&p)? {
            return Ok(Some(p));
        }
    }
    for (e, s) in f.slopes_at_infinity() {
        if g.slopes_at_infinity().get(&e) != Some(&s) {
            let last = f.profile(e).unwrap().last_offset().max(g.profile(e).unwrap().last_offset()).clone();
            return Ok(Some(PointRef::OnEdge(e, last + Rational::from_integer(1.into()))));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveDesc;
    use crate::rational::{q, qq, Extended};

    pub(crate) fn segment(len: i64) -> Arc<Curve> {
        Arc::new(
            Curve::build(CurveDesc::default().vertex("A", false).vertex("B", false).edge("e", "A", "B", Extended::Finite(q(len))))
                .unwrap(),
        )
    }

    pub(crate) fn line() -> Arc<Curve> {
        Arc::new(Curve::build(CurveDesc::default().vertex("O", false).ray("L", "O", "left").ray("R", "O", "right")).unwrap())
    }

    /// `x ↦ k·x` on the real line with the origin at `O`, `L` pointing to −∞.
    pub(crate) fn linear(c: &Arc<Curve>, k: i64) -> PlFunction {
        PlFunction::from_profiles(
            c.clone(),
            vec![Profile::affine(&Extended::Infinite, q(0), -k), Profile::affine(&Extended::Infinite, q(0), k)],
            &BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn max_of_two_lines() {
        let c = segment(3);
        let f = PlFunction::from_profiles(c.clone(), vec![Profile::affine(&Extended::Finite(q(3)), q(0), 1)], &BTreeMap::new()).unwrap();
        let g = PlFunction::from_profiles(c.clone(), vec![Profile::affine(&Extended::Finite(q(3)), q(2), -1)], &BTreeMap::new()).unwrap();
        let h = f.oplus(&g).unwrap();
        assert_eq!(h.profile(0).unwrap().breakpoints[1], (q(1), q(1)));
        assert_eq!(f.otimes(&f.inv().unwrap()).unwrap(), PlFunction::constant(c.clone(), q(0)));
        let ninf = PlFunction::neg_inf(c.clone());
        assert_eq!(f.oplus(&ninf).unwrap(), f);
        assert!(f.otimes(&ninf).unwrap().is_neg_inf());
        assert_eq!(ninf.inv(), Err(Error::ZeroInverse));
        assert_eq!(h.eval(&PointRef::OnEdge(0, qq(1, 2))).unwrap(), Value::Finite(qq(3, 2)));
    }

    #[test]
    fn values_at_infinity() {
        let c = line();
        let f = linear(&c, 1);
        let plus = PointRef::InfinityOf(1);
        assert_eq!(f.eval(&plus).unwrap(), Value::PosInf);
        assert_eq!(f.eval(&PointRef::InfinityOf(0)).unwrap(), Value::NegInf);
        assert_eq!(f.outgoing_slope(&plus, Dir { edge: 1, forward: false }).unwrap(), -1);
        let mid = PointRef::OnEdge(1, q(2));
        assert_eq!(f.slopes_at(&mid).unwrap(), vec![-1, 1]);
        assert!(f.otimes(&linear(&c, -1)).unwrap().is_constant());
    }

    #[test]
    fn rejects_bad_profiles() {
        let c = segment(2);
        let p = Profile { breakpoints: vec![(q(0), q(0)), (q(2), q(1))], slope_at_infinity: None };
        assert!(PlFunction::from_profiles(c, vec![p], &BTreeMap::new()).is_err());
    }
}
