//! Matroids on `[n]` given by their bases.

use crate::combinat::{cyc, KSubset};
use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{Signed, Zero};
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    k: usize,
    n: usize,
    bases: Vec<u64>,
}

impl Matroid {
    pub fn new(k: usize, n: usize, mut bases: Vec<u64>) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::InvalidArgument("a matroid needs at least one basis".into()));
        }
        if bases.iter().any(|b| b.count_ones() as usize != k || (n < 64 && b >> n != 0)) {
            return Err(Error::InvalidArgument(format!("every basis must be a {k}-subset of [{n}]")));
        }
        bases.sort_unstable();
        bases.dedup();
        Ok(Matroid { k, n, bases })
    }

    pub fn from_subsets(k: usize, n: usize, bases: &[KSubset]) -> Result<Self> {
        Matroid::new(k, n, bases.iter().map(|b| b.mask()).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    pub fn basis_subsets(&self) -> Vec<KSubset> {
        let mut v: Vec<KSubset> = self.bases.iter().map(|&b| KSubset::from_mask(self.n, b)).collect();
        v.sort();
        v
    }

    pub fn is_basis(&self, mask: u64) -> bool {
        self.bases.binary_search(&mask).is_ok()
    }

    fn union(&self) -> u64 {
        self.bases.iter().fold(0, |a, &b| a | b)
    }

    fn intersection(&self) -> u64 {
        self.bases.iter().fold(u64::MAX, |a, &b| a & b)
    }

    /// Elements in no basis.
    pub fn loops(&self) -> Vec<usize> {
        let u = self.union();
        (1..=self.n).filter(|&i| u >> (i - 1) & 1 == 0).collect()
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> Vec<usize> {
        let c = self.intersection();
        (1..=self.n).filter(|&i| c >> (i - 1) & 1 == 1).collect()
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    pub fn is_coloopless(&self) -> bool {
        self.coloops().is_empty()
    }

    pub fn rank(&self, mask: u64) -> usize {
        self.bases.iter().map(|b| (b & mask).count_ones() as usize).max().unwrap_or(0)
    }

    pub fn is_independent(&self, mask: u64) -> bool {
        self.bases.iter().any(|b| b & mask == mask)
    }

    /// For all bases `B1, B2` and `i ∈ B1 ∖ B2` some `j ∈ B2 ∖ B1` has `B1 − i + j` a basis.
    pub fn satisfies_basis_exchange(&self) -> bool {
        let set: HashSet<u64> = self.bases.iter().copied().collect();
        self.bases.iter().all(|&b1| {
            self.bases.iter().all(|&b2| {
                bits(b1 & !b2).all(|i| bits(b2 & !b1).any(|j| set.contains(&(b1 & !(1 << i) | 1 << j))))
            })
        })
    }

    /// Connected components: `i ~ j` whenever `B − i + j` is a basis for some basis `B`.
    pub fn components_partition(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let nx = p[c];
                p[c] = r;
                c = nx;
            }
            r
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for &b in &self.bases {
            for i in bits(b) {
                for j in bits(full & !b) {
                    if self.is_basis(b & !(1 << i) | 1 << j) {
                        let (a, c) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a] = c;
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_of = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if root_of[r] == usize::MAX {
                root_of[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[root_of[r]].push(i + 1);
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.components_partition().len() == 1
    }

    /// `I_i`: the lexicographically first basis in the order `i < i+1 < … < i−1`.
    pub fn grassmann_necklace(&self) -> Result<Vec<KSubset>> {
        if let Some(&l) = self.loops().first() {
            return Err(Error::Loop(l));
        }
        Ok((1..=self.n)
            .map(|i| {
                let mut cur = 0u64;
                for t in 0..self.n {
                    let e = cyc(i + t, self.n);
                    let next = cur | 1 << (e - 1);
                    if self.is_independent(next) {
                        cur = next;
                    }
                }
                KSubset::from_mask(self.n, cur)
            })
            .collect())
    }

    /// `x` lies in the base polytope: `x >= 0`, `Σ x = k`, `x(S) <= r(S)` for all `S`.
    pub fn polytope_contains(&self, x: &[Rational]) -> bool {
        if x.len() != self.n || x.iter().any(|v| v.is_negative()) {
            return false;
        }
        if x.iter().sum::<Rational>() != Rational::from_integer(self.k as i64) {
            return false;
        }
        (1u64..1 << self.n).all(|s| {
            let xs: Rational = bits(s).map(|i| x[i]).sum();
            xs <= Rational::from_integer(self.rank(s) as i64)
        })
    }

    /// Bases of `self` are all bases of `other`.
    pub fn is_submatroid_of(&self, other: &Matroid) -> bool {
        self.bases.iter().all(|&b| other.is_basis(b))
    }
}

fn bits(m: u64) -> impl Iterator<Item = usize> {
    let mut m = m;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let t = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(t)
        }
    })
}

/// Argmin bases `{I : π_I − w·e_I minimal}` of a Plücker vector at `w`.
pub fn argmin_bases(values: &[Rational], subsets: &[KSubset], w: &[Rational]) -> Vec<u64> {
    let scores: Vec<Rational> = values.iter().zip(subsets).map(|(v, s)| v - s.iter().map(|i| w[i - 1]).sum::<Rational>()).collect();
    let Some(m) = scores.iter().copied().reduce(|a, b| if b < a { b } else { a }) else { return Vec::new() };
    scores.iter().zip(subsets).filter(|(s, _)| (**s - m).is_zero()).map(|(_, b)| b.mask()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::k_subsets;

    #[test]
    fn uniform_matroid() {
        let m = Matroid::from_subsets(2, 4, &k_subsets(4, 2)).unwrap();
        assert!(m.is_connected());
        assert!(m.satisfies_basis_exchange());
        assert_eq!(m.grassmann_necklace().unwrap()[0].to_string(), "1,2");
        assert_eq!(m.grassmann_necklace().unwrap()[3].to_string(), "1,4");
    }

    #[test]
    fn direct_sum_components() {
        // {1,2} rank 1 ⊕ {3,4} rank 1.
        let b: Vec<KSubset> = [[1, 3], [1, 4], [2, 3], [2, 4]].iter().map(|e| KSubset::new(4, e).unwrap()).collect();
        let m = Matroid::from_subsets(2, 4, &b).unwrap();
        assert_eq!(m.components_partition(), vec![vec![1, 2], vec![3, 4]]);
        let loopy = Matroid::from_subsets(2, 4, &[KSubset::new(4, &[1, 2]).unwrap()]).unwrap();
        assert_eq!(loopy.loops(), vec![3, 4]);
        assert_eq!(loopy.coloops(), vec![1, 2]);
        assert!(loopy.grassmann_necklace().is_err());
    }
}
