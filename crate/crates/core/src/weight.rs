//! Weights of positive tropical Plücker vectors: the cross-ratio sum, the
//! fan weight, the cyclic bridge and the closed form on the ladder.

use crate::combinat::{check_dims, cyclic_interval, cyc, noncyclic_subsets, noncrossing, weakly_separated, KSubset};
use crate::error::Result;
use crate::ladder::{rho, LadderPoint};
use crate::ncfan::{nc_weight, psi, t_vector};
use crate::planar::CrossRatios;
use crate::pluecker::PlueckerVector;
use crate::rational::{min_of, serde_str, Rational};
use serde::Serialize;

/// `Σ_{J noncyclic} u^t_J(π)`.
pub fn pk_weight(pi: &PlueckerVector) -> Result<Rational> {
    Ok(CrossRatios::get(pi.k(), pi.n())?.noncyclic().map(|(_, u)| u.eval(pi)).sum())
}

/// `cyc(j) = {j+1, …, j+k}` modulo n.
pub fn cyc_set(n: usize, k: usize, j: usize) -> KSubset {
    cyclic_interval(n, cyc(j + 1, n), k)
}

/// `gap(j) = {j+1, …, j+k−1, j+k+1}` modulo n.
pub fn gap_set(n: usize, k: usize, j: usize) -> KSubset {
    cyclic_interval(n, cyc(j + 1, n), k).swap(cyc(j + k, n), cyc(j + k + 1, n))
}

/// `H(π) = Σ_{j=0}^{n−1} (π_{cyc(j)} − π_{gap(j)})`.
pub fn bridge(pi: &PlueckerVector) -> Rational {
    let (k, n) = (pi.k(), pi.n());
    (0..n).map(|j| pi.get(&cyc_set(n, k, j)) - pi.get(&gap_set(n, k, j))).sum()
}

/// Monomials of `Q_j`, `r = 0..k−1`: rows `i <= k−1−r` in column `j`, the rest in column `j+1`.
pub fn q_factor_monomials(k: usize, j: usize) -> Vec<Vec<(usize, usize)>> {
    (0..k).map(|r| (1..k).map(|i| if i <= k - 1 - r { (i, j) } else { (i, j + 1) }).collect()).collect()
}

/// Monomials of `P_i`: the single entries `(i, t)`.
pub fn p_factor_monomials(n: usize, k: usize, i: usize) -> Vec<Vec<(usize, usize)>> {
    (1..=n - k).map(|t| vec![(i, t)]).collect()
}

/// `Σ y − Σ_i min_t y_{i,t} − Σ_j Q^t_j`.
pub fn closed_form_tropical(y: &LadderPoint) -> Rational {
    let (k, n) = (y.k, y.n);
    let at = |(i, t): (usize, usize)| y.y[i - 1][t - 1];
    let total: Rational = y.y.iter().flatten().sum();
    let p: Rational = y.y.iter().map(|row| min_of(row.iter().copied()).unwrap_or_default()).sum();
    let q: Rational = (1..n - k)
        .map(|j| min_of(q_factor_monomials(k, j).into_iter().map(|m| m.into_iter().map(at).sum())).unwrap_or_default())
        .sum();
    total - p - q
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    #[serde(with = "serde_str")]
    pub pk_weight: Rational,
    #[serde(with = "serde_str")]
    pub nc_weight: Rational,
    #[serde(with = "serde_str")]
    pub bridge_value: Rational,
    pub agree: bool,
}

/// All three weights; `agree` records whether they coincide.
pub fn weight_report(pi: &PlueckerVector) -> Result<WeightReport> {
    let pk = pk_weight(pi)?;
    let nc = nc_weight(&psi(pi)?)?;
    let h = bridge(pi);
    Ok(WeightReport { pk_weight: pk, nc_weight: nc, bridge_value: h, agree: pk == nc && nc == h })
}

/// A noncrossing, not weakly separated pair and `ρ(𝔱_I + 𝔱_J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTwoCandidate {
    pub pair: (KSubset, KSubset),
    pub vector: PlueckerVector,
}

pub fn weight_two_candidates(k: usize, n: usize) -> Result<Vec<WeightTwoCandidate>> {
    check_dims(k, n)?;
    let subs = noncyclic_subsets(n, k);
    let mut out = Vec::new();
    for (a, i) in subs.iter().enumerate() {
        for j in &subs[a + 1..] {
            if noncrossing(i, j)? && !weakly_separated(i, j)? {
                let t = t_vector(i)?.add(&t_vector(j)?);
                out.push(WeightTwoCandidate { pair: (*i, *j), vector: rho(&t)? });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyc_and_gap() {
        assert_eq!(cyc_set(6, 3, 0).to_string(), "1,2,3");
        assert_eq!(gap_set(6, 3, 0).to_string(), "1,2,4");
        assert_eq!(cyc_set(6, 3, 4).to_string(), "1,5,6");
        assert_eq!(gap_set(6, 3, 4).to_string(), "2,5,6");
    }

    #[test]
    fn q1_support() {
        assert_eq!(q_factor_monomials(3, 1), vec![vec![(1, 1), (2, 1)], vec![(1, 1), (2, 2)], vec![(1, 2), (2, 2)]]);
    }
}
