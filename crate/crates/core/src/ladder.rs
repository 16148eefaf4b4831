//! The ladder network, non-intersecting path families and the tropical
//! positive parametrization `ρ`.

use crate::cache::cached;
use crate::combinat::{check_dims, k_subsets, lex_rank, KSubset};
use crate::error::{Error, Result};
use crate::ncfan::TPoint;
use crate::pluecker::PlueckerVector;
use crate::rational::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Edge weights `y_{ℓ,t}` of the vertical edges, `ℓ ∈ [1, k−1]`, `t ∈ [1, n−k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderPoint {
    pub k: usize,
    pub n: usize,
    #[serde(with = "crate::rational::serde_str::vecvec")]
    pub y: Vec<Vec<Rational>>,
}

impl LadderPoint {
    /// Canonical representative of `t` (every row minimum zero).
    pub fn from_tpoint(t: &TPoint) -> Self {
        LadderPoint { k: t.k(), n: t.n(), y: t.rows().to_vec() }
    }

    pub fn new(k: usize, n: usize, y: Vec<Vec<Rational>>) -> Result<Self> {
        check_dims(k, n)?;
        if y.len() != k - 1 || y.iter().any(|r| r.len() != n - k) {
            return Err(Error::SizeMismatch(format!("ladder weights need {} rows of length {}", k - 1, n - k)));
        }
        Ok(LadderPoint { k, n, y })
    }
}

/// Path of source `source` (entering on rail `source`): it descends from
/// rail `ℓ` to `ℓ+1` at position `descents[ℓ − source]` and exits on the
/// bottom rail at position `sink`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourcePath {
    pub source: usize,
    pub sink: usize,
    pub descents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    pub paths: Vec<SourcePath>,
}

impl PathFamily {
    /// Vertical edges `(ℓ, t)` traversed by the family.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.paths
            .iter()
            .flat_map(|p| p.descents.iter().enumerate().map(move |(i, &t)| (p.source + i, t)))
            .collect()
    }
}

/// Non-intersecting families from the active sources `[k] ∖ J` to the sinks
/// `{j − k : j ∈ J, j > k}`; sources in increasing order take sinks in
/// decreasing order.
pub fn enumerate_path_families(j: &KSubset) -> Result<Vec<PathFamily>> {
    let (k, n) = (j.k(), j.n());
    check_dims(k, n)?;
    let sources: Vec<usize> = (1..=k).filter(|&r| !j.contains(r)).collect();
    let mut sinks: Vec<usize> = j.iter().filter(|&e| e > k).map(|e| e - k).collect();
    sinks.reverse();
    let mut out = Vec::new();
    let mut stack: Vec<SourcePath> = Vec::new();
    // Lowest source first; each next source must stay strictly right of the previous one.
    let order: Vec<(usize, usize)> = sources.into_iter().zip(sinks).rev().collect();
    extend(&order, k, &mut stack, &mut out);
    Ok(out)
}

fn extend(order: &[(usize, usize)], k: usize, stack: &mut Vec<SourcePath>, out: &mut Vec<PathFamily>) {
    let depth = stack.len();
    if depth == order.len() {
        let mut paths = stack.clone();
        paths.reverse();
        out.push(PathFamily { paths });
        return;
    }
    let (r, s) = order[depth];
    let levels = k - r;
    // lower[i]: least admissible descent at level r + i.
    let mut lower = vec![1usize; levels];
    if let Some(below) = stack.last() {
        let rp = below.source;
        for lvl in rp.max(r + 1) - 1..k {
            // b_lvl > b'_{lvl+1}, with b'_k the sink of the lower path.
            let nxt = if lvl + 1 == k { below.sink } else { below.descents[lvl + 1 - rp] };
            lower[lvl - r] = lower[lvl - r].max(nxt + 1);
        }
        if levels == 0 && s <= below.sink {
            return;
        }
    }
    let mut desc = Vec::with_capacity(levels);
    choose(&lower, s, &mut desc, &mut |d| {
        stack.push(SourcePath { source: r, sink: s, descents: d.to_vec() });
        extend(order, k, stack, out);
        stack.pop();
    });
}

/// Nondecreasing sequences `d` with `lower[i] <= d[i] <= cap`.
fn choose(lower: &[usize], cap: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let i = cur.len();
    if i == lower.len() {
        f(cur);
        return;
    }
    let from = lower[i].max(cur.last().copied().unwrap_or(1));
    for b in from..=cap {
        cur.push(b);
        choose(lower, cap, cur, f);
        cur.pop();
    }
}

/// All path families at `(k, n)`, stored as flat edge indices; cached.
pub struct LadderNetwork {
    n: usize,
    width: usize,
    families: Vec<Vec<Vec<u16>>>,
}

impl LadderNetwork {
    pub fn get(k: usize, n: usize) -> Result<Arc<LadderNetwork>> {
        check_dims(k, n)?;
        cached("ladder", k, n, || {
            let width = n - k;
            let families = k_subsets(n, k)
                .iter()
                .map(|j| {
                    Ok(enumerate_path_families(j)?
                        .iter()
                        .map(|f| f.edges().iter().map(|&(l, t)| ((l - 1) * width + t - 1) as u16).collect())
                        .collect())
                })
                .collect::<Result<_>>()?;
            Ok(LadderNetwork { n, width, families })
        })
    }

    pub fn family_count(&self, j: &KSubset) -> usize {
        self.families[lex_rank(j.mask(), self.n)].len()
    }

    fn eval_rank(&self, r: usize, flat: &[Rational]) -> Rational {
        self.families[r]
            .iter()
            .map(|f| f.iter().map(|&e| flat[e as usize]).sum::<Rational>())
            .reduce(|a, b| if b < a { b } else { a })
            .unwrap_or_else(Rational::zero)
    }

    fn flatten(&self, y: &LadderPoint) -> Vec<Rational> {
        debug_assert!(y.y.iter().all(|r| r.len() == self.width));
        y.y.iter().flatten().copied().collect()
    }
}

/// `min` over path families of the summed weights `y` of traversed edges.
pub fn tropical_pluecker(j: &KSubset, y: &LadderPoint) -> Result<Rational> {
    if j.k() != y.k || j.n() != y.n {
        return Err(Error::SizeMismatch(format!("{{{j}}} does not index ({}, {})", y.k, y.n)));
    }
    let net = LadderNetwork::get(y.k, y.n)?;
    Ok(net.eval_rank(lex_rank(j.mask(), y.n), &net.flatten(y)))
}

/// `ρ(𝔱)`: the tropical Plücker coordinates at the canonical representative.
pub fn rho(t: &TPoint) -> Result<PlueckerVector> {
    let (k, n) = (t.k(), t.n());
    let net = LadderNetwork::get(k, n)?;
    let flat = net.flatten(&LadderPoint::from_tpoint(t));
    let values = (0..net.families.len()).map(|r| net.eval_rank(r, &flat)).collect();
    PlueckerVector::from_values(k, n, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_counts() {
        let j = KSubset::new(7, &[3, 5, 7]).unwrap();
        assert_eq!(enumerate_path_families(&j).unwrap().len(), 8);
        let id = KSubset::new(7, &[1, 2, 3]).unwrap();
        let fams = enumerate_path_families(&id).unwrap();
        assert_eq!(fams.len(), 1);
        assert!(fams[0].edges().is_empty());
    }

    #[test]
    fn families_are_vertex_disjoint() {
        let j = KSubset::new(9, &[4, 6, 8, 9]).unwrap();
        for f in enumerate_path_families(&j).unwrap() {
            let mut seen = std::collections::HashSet::new();
            for p in &f.paths {
                // Rail intervals occupied by the path.
                let mut from = 0;
                for (i, &b) in p.descents.iter().chain([p.sink].iter()).enumerate() {
                    for t in from..=b {
                        assert!(seen.insert((p.source + i, t)), "shared vertex");
                    }
                    from = b;
                }
            }
        }
    }
}
