//! Explicit two-element generation of R_n for n ≥ 3 (one element for n ≤ 2).
//!
//! With `v₁ = (0,(1,0,1,…,1))` and `v₂ = (0,(0,1,1,2,…,n−2))`:
//!
//! * `e₁ = v₁ ⊡ v₂⁻¹ ⊞ 0`
//! * `e₂ = v₂ ⊡ (v₁ ⊡ e₁⁻¹)^{−(n−2)} ⊞ 0`
//! * for `k ≥ 3`, with `u_k = v₁ ⊡ e₁⁻¹ ⊡ e₃⁻¹ ⊡ … ⊡ e_{k−1}⁻¹ = (0,…,0,1,…,1)`
//!   and `w_k = v₂ ⊡ e₂⁻¹ ⊡ ∏_{3≤j<k} e_j^{−(j−2)} = (0,…,0,k−2,…,n−2)`,
//!   `e_k = u_k^{k−1} ⊡ w_k⁻¹ ⊞ 0`.
//!
//! For `k = 3` the last rule is `(v₁ ⊡ e₁⁻¹)² ⊡ (v₂ ⊡ e₂⁻¹)⁻¹ ⊞ 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::q;
use crate::tropical::Germ;

pub const DEFAULT_BOUND: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub computed: String,
    pub expected: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub n: usize,
    pub pass: bool,
    pub identities_checked: Vec<IdentityCheck>,
}

fn unit(n: usize, k: usize) -> Germ {
    let mut s = vec![0; n];
    s[k] = 1;
    Germ::new(q(0), s)
}

pub fn verify_rn_generators(n: usize) -> Result<GeneratorReport> {
    verify_rn_generators_bounded(n, DEFAULT_BOUND)
}

pub fn verify_rn_generators_bounded(n: usize, bound: usize) -> Result<GeneratorReport> {
    if n == 0 || n > bound {
        return Err(Error::OutOfBound { n, bound });
    }
    let zero = Germ::one(n);
    let mut checks = Vec::new();
    let mut record = |identity: String, computed: &Germ, expected: &Germ| {
        checks.push(IdentityCheck {
            identity,
            computed: computed.to_string(),
            expected: expected.to_string(),
            holds: computed == expected,
        });
    };

    match n {
        1 => {
            let gen = Germ::new(q(0), vec![1]);
            record("generator = e1".into(), &gen, &unit(1, 0));
        }
        2 => {
            let g = Germ::new(q(0), vec![1, -1]);
            let e1 = g.oplus(&zero)?;
            record("g ⊞ 0 = e1".into(), &e1, &unit(2, 0));
            let gi = g.inv()?;
            record("g^-1 = (0,(-1,1))".into(), &gi, &Germ::new(q(0), vec![-1, 1]));
            let e2 = gi.oplus(&zero)?;
            record("g^-1 ⊞ 0 = e2".into(), &e2, &unit(2, 1));
        }
        _ => {
            let mut s1 = vec![1; n];
            s1[1] = 0;
            let v1 = Germ::new(q(0), s1);
            let mut s2: Vec<i64> = (0..n as i64).map(|i| i - 1).collect();
            s2[0] = 0;
            s2[1] = 1;
            let v2 = Germ::new(q(0), s2);

            let e1 = v1.otimes(&v2.inv()?)?.oplus(&zero)?;
            record("v1 ⊡ v2^-1 ⊞ 0 = e1".into(), &e1, &unit(n, 0));

            let u = v1.otimes(&e1.inv()?)?;
            let e2 = v2.otimes(&u.pow(-(n as i64 - 2))?)?.oplus(&zero)?;
            record("v2 ⊡ (v1 ⊡ e1^-1)^-(n-2) ⊞ 0 = e2".into(), &e2, &unit(n, 1));

            let mut uk = u;
            let mut wk = v2.otimes(&e2.inv()?)?;
            for k in 3..=n {
                let ek = uk.pow(k as i64 - 1)?.otimes(&wk.inv()?)?.oplus(&zero)?;
                record(format!("u{k}^{} ⊡ w{k}^-1 ⊞ 0 = e{k}", k - 1), &ek, &unit(n, k - 1));
                uk = uk.otimes(&ek.inv()?)?;
                wk = wk.otimes(&ek.pow(-(k as i64 - 2))?)?;
            }
        }
    }
    let pass = checks.iter().all(|c| c.holds);
    Ok(GeneratorReport { n, pass, identities_checked: checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bounds_pass() {
        for n in 1..=DEFAULT_BOUND {
            let r = verify_rn_generators(n).unwrap();
            assert!(r.pass, "n = {n}: {:?}", r.identities_checked);
            let expected = match n {
                1 => 1,
                2 => 3,
                _ => n,
            };
            assert_eq!(r.identities_checked.len(), expected);
        }
        assert!(verify_rn_generators(0).is_err());
        assert!(verify_rn_generators(9).is_err());
    }

    #[test]
    fn n2_tie_identity() {
        let r = verify_rn_generators(2).unwrap();
        assert_eq!(r.identities_checked[0].computed, "(0,(1,0))");
    }

    #[test]
    fn n3_starting_vectors() {
        let r = verify_rn_generators(3).unwrap();
        assert!(r.pass);
        assert_eq!(r.identities_checked[2].expected, "(0,(0,0,1))");
    }
}
