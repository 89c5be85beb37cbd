//! Parallel-ray constraints, functions on disconnected curves, and the witness
//! that separates disconnected curves from connected ones.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::curve::{split_components, Curve};
use crate::error::{Error, Result};
use crate::rat_fun::PlFunction;
use crate::rational::{q, Rational};

/// Two rays of one class whose slopes at infinity differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassViolation {
    pub class: String,
    pub rays: (String, String),
    pub slopes: (i64, i64),
}

/// Checks that rays in a common class share their slope at infinity.
pub fn respects_parallel(f: &PlFunction) -> std::result::Result<(), ClassViolation> {
    let slopes = f.slopes_at_infinity();
    let c = f.curve();
    for (class, rays) in c.classes() {
        let first = rays[0];
        for &r in &rays[1..] {
            if slopes.get(&first) != slopes.get(&r) {
                return Err(ClassViolation {
                    class: class.to_string(),
                    rays: (c.edge(first).id.clone(), c.edge(r).id.clone()),
                    slopes: (slopes[&first], slopes[&r]),
                });
            }
        }
    }
    Ok(())
}

/// Combines one function per connected component (in the order of
/// [`split_components`]) into a function on the whole curve. Either every part is
/// −∞ or none is.
pub fn pseudo_tuple(curve: &Arc<Curve>, parts: &[PlFunction]) -> Result<PlFunction> {
    let subs = split_components(curve);
    if parts.len() != subs.len() {
        return Err(Error::InvalidFunction(format!("expected {} parts, got {}", subs.len(), parts.len())));
    }
    for (f, sc) in parts.iter().zip(&subs) {
        if **f.curve() != *sc.curve {
            return Err(Error::CurveMismatch);
        }
    }
    let zeros = parts.iter().filter(|f| f.is_neg_inf()).count();
    if zeros == parts.len() {
        return Ok(PlFunction::neg_inf(curve.clone()));
    }
    if zeros > 0 {
        return Err(Error::NotPseudoDirect);
    }
    let mut profiles = vec![None; curve.edges().len()];
    let mut isolated = BTreeMap::new();
    for (f, sc) in parts.iter().zip(&subs) {
        for (k, piece) in sc.pieces.iter().enumerate() {
            profiles[piece.edge] = Some(f.profile(k).unwrap().clone());
        }
        for (v, p) in sc.vertex_points.iter().enumerate() {
            if sc.curve.incident(v).is_empty() {
                isolated.insert(curve_vertex(p), f.vertex_value(v).unwrap().clone());
            }
        }
    }
    PlFunction::from_profiles(curve.clone(), profiles.into_iter().map(Option::unwrap).collect(), &isolated)
}

fn curve_vertex(p: &crate::curve::PointRef) -> usize {
    match p {
        crate::curve::PointRef::Vertex(v) => *v,
        _ => unreachable!("components of the whole curve keep original vertices"),
    }
}

/// Splits a function into its restrictions to the connected components.
pub fn components_of(f: &PlFunction) -> Result<Vec<PlFunction>> {
    split_components(f.curve()).iter().map(|sc| crate::rat_fun::restrict_to(f, sc)).collect()
}

/// The three conditions for `s` with constants `a1 > a2 > a3` spaced equally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessConditions {
    /// `s ≠ s ⊕ a3`
    pub differs_from_max: bool,
    /// `s ≠ (s⁻¹ ⊕ a1⁻¹)⁻¹`
    pub differs_from_min: bool,
    /// `(s ⊕ a1) ⊙ (s⁻¹ ⊕ a2⁻¹)⁻¹ = (a1 ⊙ a2⁻¹) ⊙ (s ⊕ a2) ⊙ (s⁻¹ ⊕ a3⁻¹)⁻¹`
    pub identity: bool,
    pub lhs: PlFunction,
    pub rhs: PlFunction,
}

impl WitnessConditions {
    pub fn all(&self) -> bool {
        self.differs_from_max && self.differs_from_min && self.identity
    }
}

pub fn witness_conditions(s: &PlFunction, a: &[Rational; 3]) -> Result<WitnessConditions> {
    let c = s.curve().clone();
    let k = |x: &Rational| PlFunction::constant(c.clone(), x.clone());
    let (a1, a2, a3) = (k(&a[0]), k(&a[1]), k(&a[2]));
    let differs_from_max = *s != s.oplus(&a3)?;
    let differs_from_min = *s != s.min(&a1)?;
    let lhs = s.oplus(&a1)?.otimes(&s.min(&a2)?)?;
    let rhs = s.oplus(&a2)?.otimes(&s.min(&a3)?)?.scale(&(&a[0] - &a[1]));
    Ok(WitnessConditions { differs_from_max, differs_from_min, identity: lhs == rhs, lhs, rhs })
}

#[derive(Clone, Debug)]
pub enum WitnessOutcome {
    Connected,
    Found { s: PlFunction, a: [Rational; 3], conditions: WitnessConditions },
}

/// On a curve with at least two components: `s` is 0 on the first component and 4
/// elsewhere, with constants (3, 2, 1).
pub fn disconnect_witness(c: &Arc<Curve>) -> Result<WitnessOutcome> {
    if c.num_components() < 2 {
        return Ok(WitnessOutcome::Connected);
    }
    let parts: Vec<PlFunction> = split_components(c)
        .iter()
        .enumerate()
        .map(|(i, sc)| PlFunction::constant(sc.curve.clone(), q(if i == 0 { 0 } else { 4 })))
        .collect();
    let s = pseudo_tuple(c, &parts)?;
    let a = [q(3), q(2), q(1)];
    let conditions = witness_conditions(&s, &a)?;
    Ok(WitnessOutcome::Found { s, a, conditions })
}
