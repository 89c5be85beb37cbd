use crate::realization::PolyComplex;

/// Weighted sum of outgoing primitive directions at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    /// One entry per vertex, in vertex order.
    pub defects: Vec<Vec<i64>>,
}

pub fn check_balanced(k: &PolyComplex) -> BalanceReport {
    let defects: Vec<Vec<i64>> = k
        .spokes()
        .iter()
        .map(|spokes| {
            let mut sum = vec![0i64; k.dim];
            for s in spokes {
                for (acc, d) in sum.iter_mut().zip(&s.dir) {
                    *acc += s.weight as i64 * d;
                }
            }
            sum
        })
        .collect();
    let balanced = defects.iter().all(|d| d.iter().all(|x| *x == 0));
    BalanceReport { balanced, defects }
}
