//! Planar basis vectors, corank functions and tropical planar cross-ratios.

use crate::cache::cached;
use crate::combinat::{binom, check_dims, cyc, dosp, k_subsets, lex_rank, KSubset};
use crate::error::{Error, Result};
use crate::pluecker::PlueckerVector;
use crate::rational::{int, frac, Rational};
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

/// BFS distances `d(e_J, e_I)` from `J` to every k-subset (indexed by lex
/// rank), using steps `e_i − e_{i+1}` (indices mod n).
pub fn distances_from(j: &KSubset) -> Vec<u32> {
    let (n, k) = (j.n(), j.k());
    let mut dist = vec![u32::MAX; binom(n, k)];
    let mut queue = VecDeque::new();
    dist[lex_rank(j.mask(), n)] = 0;
    queue.push_back(*j);
    while let Some(cur) = queue.pop_front() {
        let d = dist[lex_rank(cur.mask(), n)];
        // A step adds i and removes i+1: element m moves to m−1.
        for m in cur.iter() {
            let prev = cyc(m + n - 1, n);
            if cur.contains(prev) {
                continue;
            }
            let next = cur.swap(m, prev);
            let r = lex_rank(next.mask(), n);
            if dist[r] == u32::MAX {
                dist[r] = d + 1;
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Minimal number of steps `e_i − e_{i+1}` carrying `e_from` to `e_to`.
pub fn directed_distance(from: &KSubset, to: &KSubset) -> Result<usize> {
    if from.n() != to.n() || from.k() != to.k() {
        return Err(Error::SizeMismatch(format!("{{{from}}} and {{{to}}} live in different (k, n)")));
    }
    Ok(distances_from(from)[lex_rank(to.mask(), from.n())] as usize)
}

/// `ℌ_J` with entries `d(e_J, e_I) / n`.
pub fn planar_basis_vector(j: &KSubset) -> Result<PlueckerVector> {
    check_dims(j.k(), j.n())?;
    let n = j.n();
    let dist = distances_from(j);
    PlueckerVector::from_values(j.k(), n, dist.iter().map(|&d| frac(d as i64, n as i64)).collect())
}

/// All planar basis vectors at `(k, n)`, cached.
pub struct PlanarBasis {
    k: usize,
    n: usize,
    vectors: Vec<PlueckerVector>,
}

impl PlanarBasis {
    pub fn get(k: usize, n: usize) -> Result<Arc<PlanarBasis>> {
        check_dims(k, n)?;
        cached("planar-basis", k, n, || {
            let vectors = k_subsets(n, k).iter().map(planar_basis_vector).collect::<Result<_>>()?;
            Ok(PlanarBasis { k, n, vectors })
        })
    }

    pub fn vector(&self, j: &KSubset) -> &PlueckerVector {
        &self.vectors[lex_rank(j.mask(), self.n)]
    }

    /// `Σ c_J ℌ_J`.
    pub fn combination<'a>(&self, coeffs: impl IntoIterator<Item = (&'a KSubset, &'a Rational)>) -> PlueckerVector {
        let mut acc = vec![Rational::from_integer(0); binom(self.n, self.k)];
        for (j, c) in coeffs {
            for (a, h) in acc.iter_mut().zip(self.vector(j).values()) {
                *a += c * h;
            }
        }
        PlueckerVector::from_values(self.k, self.n, acc).expect("shape fixed")
    }
}

/// `Σ c_J ℌ_J` for an explicit coefficient list.
pub fn planar_combination(k: usize, n: usize, coeffs: &[(KSubset, Rational)]) -> Result<PlueckerVector> {
    let basis = PlanarBasis::get(k, n)?;
    for (j, _) in coeffs {
        if j.k() != k || j.n() != n {
            return Err(Error::SizeMismatch(format!("{{{j}}} is not a {k}-subset of [{n}]")));
        }
    }
    Ok(basis.combination(coeffs.iter().map(|(j, c)| (j, c))))
}

/// `I -> k − max_B |I ∩ B|` over the bases of the positroid of `J`.
pub fn corank_vector(j: &KSubset) -> Result<PlueckerVector> {
    check_dims(j.k(), j.n())?;
    if j.is_cyclic_interval() {
        return Err(Error::CyclicSubset(j.to_string()));
    }
    let d = dosp(j)?;
    let bases: Vec<u64> = d.positroid_bases().iter().map(|b| b.mask()).collect();
    let k = j.k();
    PlueckerVector::from_fn(k, j.n(), |i| {
        let best = bases.iter().map(|b| (b & i.mask()).count_ones() as usize).max().unwrap_or(0);
        int((k - best) as i64)
    })
}

/// Exponent vector of the planar cross-ratio `u_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossRatioExponent {
    pub j: KSubset,
    pub exponents: BTreeMap<KSubset, i64>,
    terms: Vec<(usize, i64)>,
}

impl CrossRatioExponent {
    /// `u^t_J(π) = Σ_M exponent_M π_M`.
    pub fn eval(&self, pi: &PlueckerVector) -> Rational {
        debug_assert!(pi.k() == self.j.k() && pi.n() == self.j.n());
        let v = pi.values();
        self.terms.iter().map(|&(r, e)| v[r] * e).sum()
    }
}

impl Serialize for CrossRatioExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, i64> = self.exponents.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        m.serialize(s)
    }
}

/// Cubical array of `J`: `J_M` shifts each `m ∈ M ⊆ I_J` to `m + 1`,
/// with exponent `(−1)^{|M|+1}`.
pub fn cubical_array(j: &KSubset) -> Result<CrossRatioExponent> {
    let n = j.n();
    if j.k() == 0 || j.k() >= n {
        return Err(Error::InvalidSubset(format!("{{{j}}} must be a proper nonempty subset")));
    }
    let ends = j.cyclic_endpoints();
    let mut exponents = BTreeMap::new();
    for sel in 0u32..1 << ends.len() {
        let mut s = *j;
        for (t, &m) in ends.iter().enumerate() {
            if sel >> t & 1 == 1 {
                s = s.swap(m, cyc(m + 1, n));
            }
        }
        let sign = if sel.count_ones() % 2 == 1 { 1 } else { -1 };
        *exponents.entry(s).or_insert(0) += sign;
    }
    exponents.retain(|_, e| *e != 0);
    let terms = exponents.iter().map(|(m, &e)| (lex_rank(m.mask(), n), e)).collect();
    Ok(CrossRatioExponent { j: *j, exponents, terms })
}

/// `u^t_J(π)`; torus invariant whenever `J` is noncyclic.
pub fn tropical_u(j: &KSubset, pi: &PlueckerVector) -> Result<Rational> {
    if j.k() != pi.k() || j.n() != pi.n() {
        return Err(Error::SizeMismatch(format!("{{{j}}} does not index a ({}, {}) vector", pi.k(), pi.n())));
    }
    Ok(CrossRatios::get(pi.k(), pi.n())?.of(j).eval(pi))
}

/// All cubical arrays at `(k, n)` in lexicographic order, cached.
pub struct CrossRatios {
    n: usize,
    all: Vec<CrossRatioExponent>,
}

impl CrossRatios {
    pub fn get(k: usize, n: usize) -> Result<Arc<CrossRatios>> {
        check_dims(k, n)?;
        cached("cross-ratios", k, n, || {
            let all = k_subsets(n, k).iter().map(cubical_array).collect::<Result<_>>()?;
            Ok(CrossRatios { n, all })
        })
    }

    pub fn of(&self, j: &KSubset) -> &CrossRatioExponent {
        &self.all[lex_rank(j.mask(), self.n)]
    }

    pub fn all(&self) -> &[CrossRatioExponent] {
        &self.all
    }

    pub fn noncyclic(&self) -> impl Iterator<Item = (KSubset, &CrossRatioExponent)> {
        self.all.iter().filter(|u| !u.j.is_cyclic_interval()).map(|u| (u.j, u))
    }
}

/// Coefficients `c_J = u^t_J(π)` of `π ≡ Σ c_J ℌ_J`, for every noncyclic `J`.
pub fn planar_expand(pi: &PlueckerVector) -> Result<BTreeMap<KSubset, Rational>> {
    Ok(CrossRatios::get(pi.k(), pi.n())?.noncyclic().map(|(j, u)| (j, u.eval(pi))).collect())
}

/// Nonzero part of a planar expansion.
pub fn support(coeffs: &BTreeMap<KSubset, Rational>) -> Vec<(KSubset, Rational)> {
    coeffs.iter().filter(|(_, c)| **c != int(0)).map(|(j, c)| (*j, *c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(directed_distance(&s(4, &[1, 3]), &s(4, &[1, 4])).unwrap(), 3);
        assert_eq!(directed_distance(&s(4, &[1, 3]), &s(4, &[1, 2])).unwrap(), 1);
        assert_eq!(directed_distance(&s(4, &[1, 3]), &s(4, &[1, 3])).unwrap(), 0);
    }

    #[test]
    fn h13_at_2_4() {
        let h = planar_basis_vector(&s(4, &[1, 3])).unwrap();
        let expect = [1, 0, 3, 3, 2, 1];
        for ((_, v), e) in h.iter().zip(expect) {
            assert_eq!(v, frac(e, 4));
        }
    }

    #[test]
    fn cyclic_cross_ratio_is_gap_over_cyc() {
        let u = cubical_array(&s(6, &[1, 2, 3])).unwrap();
        assert_eq!(u.exponents.len(), 2);
        assert_eq!(u.exponents[&s(6, &[1, 2, 3])], -1);
        assert_eq!(u.exponents[&s(6, &[1, 2, 4])], 1);
    }
}
