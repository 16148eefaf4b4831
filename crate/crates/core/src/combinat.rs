//! k-subsets of a cyclically ordered [n], weak separation, the noncrossing
//! relation, maximal noncrossing collections and decorated ordered set
//! partitions.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

/// Largest ground set supported by the bitmask encoding.
pub const MAX_N: usize = 63;

/// A subset of `[n] = {1..n}` stored as a bitmask (bit `i-1` for element `i`).
/// Ordering is lexicographic on the sorted element lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct KSubset {
    n: u8,
    mask: u64,
}

impl KSubset {
    pub fn new(n: usize, elems: &[usize]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidDimensions(format!("ground set size {n} outside 1..={MAX_N}")));
        }
        let mut mask = 0u64;
        for &e in elems {
            if e == 0 || e > n {
                return Err(Error::InvalidSubset(format!("element {e} outside [1, {n}]")));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidSubset(format!("repeated element {e}")));
            }
            mask |= bit;
        }
        Ok(KSubset { n: n as u8, mask })
    }

    /// Unchecked constructor for internal use; `mask` must fit in `n` bits.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= MAX_N && (n == 64 || mask >> n == 0));
        KSubset { n: n as u8, mask }
    }

    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return KSubset::new(n, &[]);
        }
        let elems: Vec<usize> = t
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad subset {s:?}"))))
            .collect::<Result<_>>()?;
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubset(format!("elements of {s:?} are not strictly increasing")));
        }
        KSubset::new(n, &elems)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn k(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.n() && self.mask >> (i - 1) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut m = self.mask;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let t = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(t + 1)
            }
        })
    }

    pub fn elems(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_cyclic_interval(&self) -> bool {
        let k = self.k();
        k > 0 && k < self.n() && cyclic_runs(self.mask, self.n()) == 1
    }

    /// Elements `j` with `j+1` (mod n) outside the subset: the right ends of its cyclic runs.
    pub fn cyclic_endpoints(&self) -> Vec<usize> {
        let n = self.n();
        self.iter().filter(|&j| !self.contains(cyc(j + 1, n))).collect()
    }

    /// Replace `out` by `inn` (both given as elements of [n]).
    pub fn swap(&self, out: usize, inn: usize) -> KSubset {
        KSubset::from_mask(self.n(), (self.mask & !(1u64 << (out - 1))) | (1u64 << (inn - 1)))
    }

    /// `i -> i + by` modulo `n`.
    pub fn rotate(&self, by: usize) -> KSubset {
        let n = self.n();
        let m = self.iter().fold(0u64, |acc, i| acc | 1u64 << (cyc(i + by, n) - 1));
        KSubset::from_mask(n, m)
    }
}

impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter()).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Reduce an integer to its representative in `1..=n`.
pub fn cyc(i: usize, n: usize) -> usize {
    (i + n - 1) % n + 1
}

fn cyclic_runs(mask: u64, n: usize) -> usize {
    (1..=n)
        .filter(|&j| mask >> (j - 1) & 1 == 1 && mask >> (cyc(j + 1, n) - 1) & 1 == 0)
        .count()
}

/// Validate `2 <= k <= n-2`, `n <= MAX_N`.
pub fn check_dims(k: usize, n: usize) -> Result<()> {
    if n > MAX_N || k < 2 || k + 2 > n {
        return Err(Error::InvalidDimensions(format!("(k, n) = ({k}, {n}) requires 2 <= k <= n-2")));
    }
    Ok(())
}

fn binom_table() -> &'static Vec<Vec<usize>> {
    static T: OnceLock<Vec<Vec<usize>>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = vec![vec![0usize; MAX_N + 2]; MAX_N + 2];
        for n in 0..=MAX_N + 1 {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            }
        }
        t
    })
}

/// Default working range: `k <= 6`, `n <= 12`, `C(n, k) <= 1000`.
pub fn check_desk_scale(k: usize, n: usize, allow_large: bool) -> Result<()> {
    check_dims(k, n)?;
    if !allow_large && (k > 6 || n > 12 || binom(n, k) > 1000) {
        return Err(Error::InvalidDimensions(format!("({k}, {n}) is beyond k <= 6, n <= 12, C(n,k) <= 1000")));
    }
    Ok(())
}

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        binom_table()[n][k]
    }
}

/// Position of a k-subset of [n] in lexicographic order.
pub fn lex_rank(mask: u64, n: usize) -> usize {
    let k = mask.count_ones() as usize;
    let t = binom_table();
    let mut rank = 0;
    let mut prev = 0;
    let mut m = mask;
    let mut i = 1;
    while m != 0 {
        let a = m.trailing_zeros() as usize + 1;
        m &= m - 1;
        for v in prev + 1..a {
            rank += t[n - v][k - i];
        }
        prev = a;
        i += 1;
    }
    rank
}

/// All k-subsets of [n] in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<KSubset> {
    let mut out = Vec::with_capacity(binom(n, k));
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<KSubset>) {
        if cur.len() == k {
            let m = cur.iter().fold(0u64, |a, &e| a | 1u64 << (e - 1));
            out.push(KSubset::from_mask(n, m));
            return;
        }
        let need = k - cur.len();
        for e in start..=n + 1 - need {
            cur.push(e);
            rec(e + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(1, n, k, &mut cur, &mut out);
    }
    out
}

pub fn noncyclic_subsets(n: usize, k: usize) -> Vec<KSubset> {
    k_subsets(n, k).into_iter().filter(|s| !s.is_cyclic_interval()).collect()
}

/// The cyclic interval `{a, a+1, ..., a+k-1}` modulo n.
pub fn cyclic_interval(n: usize, a: usize, k: usize) -> KSubset {
    let m = (0..k).fold(0u64, |acc, t| acc | 1u64 << (cyc(a + t, n) - 1));
    KSubset::from_mask(n, m)
}

/// Number of sign changes in a cyclic sequence, zeros skipped.
pub fn cyclic_sign_changes(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    let m = nz.len();
    (0..m).filter(|&i| nz[i] != nz[(i + 1) % m]).count()
}

fn ws_masks(a: u64, b: u64, n: usize) -> bool {
    let signs: Vec<i8> = (0..n).map(|i| (a >> i & 1) as i8 - (b >> i & 1) as i8).collect();
    cyclic_sign_changes(&signs) <= 2
}

fn same_shape(i: &KSubset, j: &KSubset) -> Result<()> {
    if i.n() != j.n() || i.k() != j.k() {
        return Err(Error::SizeMismatch(format!(
            "subsets {{{i}}} and {{{j}}} live in different (k, n)"
        )));
    }
    Ok(())
}

/// `e_I - e_J` has at most two cyclic sign changes.
pub fn weakly_separated(i: &KSubset, j: &KSubset) -> Result<bool> {
    same_shape(i, j)?;
    Ok(ws_masks(i.mask(), j.mask(), i.n()))
}

/// For every window `a < b`, either the window pair is weakly separated or
/// the window interiors differ.
pub fn noncrossing(i: &KSubset, j: &KSubset) -> Result<bool> {
    same_shape(i, j)?;
    Ok(noncrossing_unchecked(&i.elems(), &j.elems(), i.n()))
}

fn noncrossing_unchecked(ie: &[usize], je: &[usize], n: usize) -> bool {
    let k = ie.len();
    let mask = |s: &[usize]| s.iter().fold(0u64, |acc, &e| acc | 1u64 << (e - 1));
    for a in 0..k {
        for b in a + 1..k {
            if ie[a + 1..b] != je[a + 1..b] {
                continue;
            }
            if !ws_masks(mask(&ie[a..=b]), mask(&je[a..=b]), n) {
                return false;
            }
        }
    }
    true
}

/// Compatibility graph on the noncyclic subsets, as bitsets.
struct CompatGraph {
    nodes: Vec<KSubset>,
    adj: Vec<Vec<u64>>,
}

impl CompatGraph {
    fn new(k: usize, n: usize) -> Self {
        let nodes = noncyclic_subsets(n, k);
        let m = nodes.len();
        let words = m.div_ceil(64);
        let elems: Vec<Vec<usize>> = nodes.iter().map(|s| s.elems()).collect();
        let mut adj = vec![vec![0u64; words]; m];
        for a in 0..m {
            for b in a + 1..m {
                if noncrossing_unchecked(&elems[a], &elems[b], n) {
                    adj[a][b / 64] |= 1 << (b % 64);
                    adj[b][a / 64] |= 1 << (a % 64);
                }
            }
        }
        CompatGraph { nodes, adj }
    }
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut m = word;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let t = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(w * 64 + t)
            }
        })
    })
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn is_empty(a: &[u64]) -> bool {
    a.iter().all(|&w| w == 0)
}

/// All pairwise noncrossing collections of noncyclic k-subsets with exactly
/// `size` elements, each sorted, listed lexicographically.
pub fn enumerate_noncrossing_collections(k: usize, n: usize, size: usize) -> Result<Vec<Vec<KSubset>>> {
    check_dims(k, n)?;
    let g = CompatGraph::new(k, n);
    let m = g.nodes.len();
    let words = m.div_ceil(64);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut all = vec![0u64; words];
    for i in 0..m {
        all[i / 64] |= 1 << (i % 64);
    }
    fn rec(g: &CompatGraph, cand: Vec<u64>, from: usize, size: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<KSubset>>) {
        if chosen.len() == size {
            out.push(chosen.iter().map(|&i| g.nodes[i]).collect());
            return;
        }
        for i in bits(&cand).filter(|&i| i >= from).collect::<Vec<_>>() {
            chosen.push(i);
            rec(g, and(&cand, &g.adj[i]), i + 1, size, chosen, out);
            chosen.pop();
        }
    }
    rec(&g, all, 0, size, &mut chosen, &mut out);
    Ok(out)
}

/// All inclusion-maximal noncrossing collections (maximal cliques of the
/// compatibility graph), each sorted, listed lexicographically.
pub fn maximal_noncrossing_collections(k: usize, n: usize) -> Result<Vec<Vec<KSubset>>> {
    check_dims(k, n)?;
    let g = CompatGraph::new(k, n);
    let m = g.nodes.len();
    let words = m.div_ceil(64);
    let mut p = vec![0u64; words];
    for i in 0..m {
        p[i / 64] |= 1 << (i % 64);
    }
    let mut out = Vec::new();
    let mut r = Vec::new();
    fn bron_kerbosch(g: &CompatGraph, r: &mut Vec<usize>, mut p: Vec<u64>, mut x: Vec<u64>, out: &mut Vec<Vec<usize>>) {
        if is_empty(&p) {
            if is_empty(&x) {
                out.push(r.clone());
            }
            return;
        }
        let pivot = bits(&p)
            .chain(bits(&x))
            .max_by_key(|&u| bits(&and(&p, &g.adj[u])).count())
            .expect("nonempty");
        let cands: Vec<usize> = bits(&p).filter(|&v| g.adj[pivot][v / 64] >> (v % 64) & 1 == 0).collect();
        for v in cands {
            r.push(v);
            bron_kerbosch(g, r, and(&p, &g.adj[v]), and(&x, &g.adj[v]), out);
            r.pop();
            p[v / 64] &= !(1 << (v % 64));
            x[v / 64] |= 1 << (v % 64);
        }
    }
    bron_kerbosch(&g, &mut r, p, vec![0u64; words], &mut out);
    let mut cols: Vec<Vec<KSubset>> = out
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c.into_iter().map(|i| g.nodes[i]).collect()
        })
        .collect();
    cols.sort();
    Ok(cols)
}

/// Greedy lexicographic maximal noncrossing collection.
pub fn greedy_maximal_collection(k: usize, n: usize) -> Result<Vec<KSubset>> {
    check_dims(k, n)?;
    let mut chosen: Vec<(KSubset, Vec<usize>)> = Vec::new();
    for s in noncyclic_subsets(n, k) {
        let e = s.elems();
        if chosen.iter().all(|(_, c)| noncrossing_unchecked(c, &e, n)) {
            chosen.push((s, e));
        }
    }
    Ok(chosen.into_iter().map(|(s, _)| s).collect())
}

/// All noncyclic subsets compatible with every member of `collection`
/// (members themselves excluded).
pub fn compatible_completions(collection: &[KSubset], k: usize, n: usize) -> Vec<KSubset> {
    let elems: Vec<Vec<usize>> = collection.iter().map(|s| s.elems()).collect();
    noncyclic_subsets(n, k)
        .into_iter()
        .filter(|s| !collection.contains(s))
        .filter(|s| {
            let e = s.elems();
            elems.iter().all(|c| noncrossing_unchecked(c, &e, n))
        })
        .collect()
}

pub fn is_noncrossing_collection(collection: &[KSubset]) -> bool {
    let elems: Vec<Vec<usize>> = collection.iter().map(|s| s.elems()).collect();
    collection.iter().all(|s| !s.is_cyclic_interval())
        && (0..elems.len()).all(|a| (a + 1..elems.len()).all(|b| noncrossing_unchecked(&elems[a], &elems[b], collection[a].n())))
}

/// Decorated ordered set partition: blocks are cyclic intervals (listed in
/// cyclic order) partitioning [n]; `r[a]` is the decoration of block `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedOsp {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
    pub r: Vec<usize>,
}

impl DecoratedOsp {
    pub fn k(&self) -> usize {
        self.r.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_mask(&self, a: usize) -> u64 {
        self.blocks[a].iter().fold(0u64, |m, &e| m | 1u64 << (e - 1))
    }

    /// Union of the last `r_a` elements of each block.
    pub fn to_subset(&self) -> KSubset {
        let m = self.blocks.iter().zip(&self.r).fold(0u64, |acc, (b, &r)| {
            b[b.len() - r..].iter().fold(acc, |acc, &e| acc | 1u64 << (e - 1))
        });
        KSubset::from_mask(self.n, m)
    }

    /// Type Delta(k, n): `1 <= r_a <= |S_a| - 1` whenever there are at least two blocks.
    pub fn is_of_hypersimplex_type(&self) -> bool {
        self.len() < 2 || self.blocks.iter().zip(&self.r).all(|(b, &r)| r >= 1 && r < b.len())
    }

    /// Bases of the positroid: `|B ∩ (S_1 ∪ … ∪ S_a)| >= r_1 + … + r_a` for `a < ℓ`.
    pub fn positroid_bases(&self) -> Vec<KSubset> {
        let mut prefix_masks = Vec::new();
        let mut prefix_ranks = Vec::new();
        let (mut m, mut r) = (0u64, 0usize);
        for a in 0..self.len().saturating_sub(1) {
            m |= self.block_mask(a);
            r += self.r[a];
            prefix_masks.push(m);
            prefix_ranks.push(r);
        }
        k_subsets(self.n, self.k())
            .into_iter()
            .filter(|b| {
                prefix_masks
                    .iter()
                    .zip(&prefix_ranks)
                    .all(|(&pm, &pr)| (b.mask() & pm).count_ones() as usize >= pr)
            })
            .collect()
    }
}

/// The decorated ordered set partition of a k-subset `J`: each maximal
/// cyclic run of `J` together with the gap preceding it forms a block;
/// blocks are labelled so that the first one contains 1.
pub fn dosp(j: &KSubset) -> Result<DecoratedOsp> {
    let n = j.n();
    let k = j.k();
    if k == 0 || k >= n {
        return Err(Error::InvalidSubset(format!("{{{j}}} must be a proper nonempty subset")));
    }
    let starts: Vec<usize> = (1..=n).filter(|&g| !j.contains(g) && j.contains(cyc(g + n - 1, n))).collect();
    if starts.len() == 1 {
        return Ok(DecoratedOsp { n, blocks: vec![(1..=n).collect()], r: vec![k] });
    }
    let ell = starts.len();
    let mut blocks: Vec<Vec<usize>> = (0..ell)
        .map(|a| {
            let from = starts[a];
            let to = if a + 1 < ell { starts[a + 1] } else { starts[0] + n };
            (from..to).map(|i| cyc(i, n)).collect()
        })
        .collect();
    let first = blocks.iter().position(|b| b.contains(&1)).expect("blocks partition [n]");
    blocks.rotate_left(first);
    let r = blocks.iter().map(|b| b.iter().filter(|&&e| j.contains(e)).count()).collect();
    Ok(DecoratedOsp { n, blocks, r })
}

/// Noncrossing set partitions of [n]: no `a<b<c<d` with `a, c` in one
/// block and `b, d` in another.
pub fn is_noncrossing_partition(blocks: &[Vec<usize>], n: usize) -> bool {
    let mut label = vec![usize::MAX; n + 1];
    for (t, b) in blocks.iter().enumerate() {
        for &e in b {
            if e == 0 || e > n || label[e] != usize::MAX {
                return false;
            }
            label[e] = t;
        }
    }
    if label[1..].contains(&usize::MAX) {
        return false;
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if label[b] == label[a] {
                continue;
            }
            for c in b + 1..=n {
                if label[c] != label[a] {
                    continue;
                }
                for d in c + 1..=n {
                    if label[d] == label[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e).unwrap()
    }

    #[test]
    fn cyclic_intervals() {
        assert!(s(6, &[5, 6, 1]).is_cyclic_interval());
        assert!(s(6, &[1, 2, 3]).is_cyclic_interval());
        assert!(!s(6, &[1, 2, 4]).is_cyclic_interval());
        assert_eq!(noncyclic_subsets(6, 3).len(), 14);
    }

    #[test]
    fn lex_rank_matches_enumeration() {
        for (n, k) in [(6, 3), (7, 2), (9, 4)] {
            for (i, sub) in k_subsets(n, k).iter().enumerate() {
                assert_eq!(lex_rank(sub.mask(), n), i);
            }
        }
    }

    #[test]
    fn separation_examples() {
        assert!(!weakly_separated(&s(6, &[1, 2, 4]), &s(6, &[3, 5, 6])).unwrap());
        assert!(noncrossing(&s(6, &[1, 2, 4]), &s(6, &[3, 5, 6])).unwrap());
        assert!(!noncrossing(&s(4, &[1, 3]), &s(4, &[2, 4])).unwrap());
        assert!(weakly_separated(&s(6, &[1, 2, 3]), &s(6, &[4, 5, 6])).unwrap());
        assert!(weakly_separated(&s(6, &[1, 2, 3]), &s(6, &[1, 2])).is_err());
    }

    #[test]
    fn dosp_examples() {
        let d = dosp(&s(9, &[2, 5, 8])).unwrap();
        assert_eq!(d.blocks, vec![vec![9, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]);
        assert_eq!(d.r, vec![1, 1, 1]);
        let d = dosp(&s(6, &[2, 5, 6])).unwrap();
        assert_eq!(d.blocks, vec![vec![1, 2], vec![3, 4, 5, 6]]);
        assert_eq!(d.r, vec![1, 2]);
        let d = dosp(&s(6, &[1, 2, 3])).unwrap();
        assert_eq!(d.blocks, vec![vec![1, 2, 3, 4, 5, 6]]);
        assert_eq!(d.r, vec![3]);
    }

    #[test]
    fn subset_parse_display() {
        let a = KSubset::parse(12, "1,4,11").unwrap();
        assert_eq!(a.to_string(), "1,4,11");
        assert!(KSubset::parse(6, "3,1").is_err());
        assert!(KSubset::parse(6, "1,7").is_err());
    }
}
