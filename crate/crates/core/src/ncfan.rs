//! The space `T^{k,n}` of (k−1)×(n−k) arrays modulo row constants, the
//! vectors `𝔱_J`, the map `Ψ` and the noncrossing fan.

use crate::cache::cached;
use crate::combinat::{check_dims, compatible_completions, greedy_maximal_collection, is_noncrossing_collection, maximal_noncrossing_collections, KSubset};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::planar::CrossRatios;
use crate::pluecker::PlueckerVector;
use crate::rational::{frac, int, min_of, serde_str, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A point of `T^{k,n}`: `(k−1)` rows of length `n−k`, stored with every
/// row minimum equal to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTPoint")]
pub struct TPoint {
    k: usize,
    n: usize,
    #[serde(with = "serde_str::vecvec")]
    rows: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTPoint {
    k: usize,
    n: usize,
    #[serde(with = "serde_str::vecvec")]
    rows: Vec<Vec<Rational>>,
}

impl TryFrom<RawTPoint> for TPoint {
    type Error = Error;
    fn try_from(r: RawTPoint) -> Result<Self> {
        TPoint::new(r.k, r.n, r.rows)
    }
}

impl TPoint {
    pub fn new(k: usize, n: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        check_dims(k, n)?;
        if rows.len() != k - 1 || rows.iter().any(|r| r.len() != n - k) {
            return Err(Error::SizeMismatch(format!("a point of T^({k},{n}) needs {} rows of length {}", k - 1, n - k)));
        }
        let mut p = TPoint { k, n, rows };
        p.canonicalize();
        Ok(p)
    }

    pub fn zero(k: usize, n: usize) -> Result<Self> {
        check_dims(k, n)?;
        Ok(TPoint { k, n, rows: vec![vec![Rational::zero(); n - k]; k - 1] })
    }

    fn canonicalize(&mut self) {
        for row in &mut self.rows {
            let m = min_of(row.iter().copied()).unwrap_or_default();
            for x in row.iter_mut() {
                *x -= m;
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Entry at row `i ∈ [1, k−1]`, column `s ∈ [1, n−k]` of the canonical representative.
    pub fn get(&self, i: usize, s: usize) -> Rational {
        self.rows[i - 1][s - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_integer())
    }

    /// Coordinates in `Z^{(k−1)(n−k−1)}`: each entry minus the last entry of its row.
    pub fn fan_coords(&self) -> Vec<Rational> {
        self.rows.iter().flat_map(|r| r[..r.len() - 1].iter().map(move |x| x - r[r.len() - 1])).collect()
    }

    pub fn from_fan_coords(k: usize, n: usize, c: &[Rational]) -> Result<Self> {
        check_dims(k, n)?;
        let w = n - k - 1;
        if c.len() != (k - 1) * w {
            return Err(Error::SizeMismatch(format!("expected {} fan coordinates", (k - 1) * w)));
        }
        let rows = c.chunks(w).map(|ch| ch.iter().copied().chain([Rational::zero()]).collect()).collect();
        TPoint::new(k, n, rows)
    }

    pub fn same_shape(&self, o: &TPoint) -> Result<()> {
        if self.k != o.k || self.n != o.n {
            return Err(Error::SizeMismatch(format!("points of T^({},{}) and T^({},{})", self.k, self.n, o.k, o.n)));
        }
        Ok(())
    }

    pub fn add(&self, o: &TPoint) -> TPoint {
        self.axpy(int(1), o)
    }

    pub fn sub(&self, o: &TPoint) -> TPoint {
        self.axpy(int(-1), o)
    }

    /// `self + c·o`.
    pub fn axpy(&self, c: Rational, o: &TPoint) -> TPoint {
        assert!(self.k == o.k && self.n == o.n, "shape mismatch");
        let rows = self.rows.iter().zip(&o.rows).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + c * y).collect()).collect();
        TPoint::new(self.k, self.n, rows).expect("shape fixed")
    }

    pub fn scale(&self, c: Rational) -> TPoint {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        TPoint::new(self.k, self.n, rows).expect("shape fixed")
    }
}

/// A point of `R^{k×(n−k)}`, the domain of `Φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TTildePoint {
    pub k: usize,
    pub n: usize,
    #[serde(with = "serde_str::vecvec")]
    pub rows: Vec<Vec<Rational>>,
}

fn check_subset(j: &KSubset) -> Result<()> {
    check_dims(j.k(), j.n())
}

/// `𝔱_J = Σ_{i=1}^{k−1} Σ_{s=j_i−(i−1)}^{j_{i+1}−(i+1)} e_{i,s}`.
pub fn t_vector(j: &KSubset) -> Result<TPoint> {
    check_subset(j)?;
    let (k, n) = (j.k(), j.n());
    let e = j.elems();
    let mut rows = vec![vec![Rational::zero(); n - k]; k - 1];
    for i in 1..k {
        for s in e[i - 1] + 1 - i..=e[i] - i - 1 {
            rows[i - 1][s - 1] = int(1);
        }
    }
    TPoint::new(k, n, rows)
}

/// `𝔱̃_J = Σ_{i=1}^{k} Σ_{s=1}^{j_i−i} ẽ_{i,s}`.
pub fn t_tilde_vector(j: &KSubset) -> Result<TTildePoint> {
    check_subset(j)?;
    let (k, n) = (j.k(), j.n());
    let e = j.elems();
    let rows = (1..=k).map(|i| (1..=n - k).map(|s| if s + i <= e[i - 1] { int(1) } else { int(0) }).collect()).collect();
    Ok(TTildePoint { k, n, rows })
}

/// `Φ(ẽ_{1,s}) = −e_{1,s}`, `Φ(ẽ_{i,s}) = −e_{i,s} + e_{i−1,s}`, `Φ(ẽ_{k,s}) = e_{k−1,s}`.
pub fn phi(t: &TTildePoint) -> Result<TPoint> {
    check_dims(t.k, t.n)?;
    if t.rows.len() != t.k || t.rows.iter().any(|r| r.len() != t.n - t.k) {
        return Err(Error::SizeMismatch("malformed k×(n−k) array".into()));
    }
    let rows = (0..t.k - 1).map(|r| t.rows[r + 1].iter().zip(&t.rows[r]).map(|(a, b)| a - b).collect()).collect();
    TPoint::new(t.k, t.n, rows)
}

/// `Ψ(π) = Σ_J u^t_J(π) 𝔱_J` over noncyclic `J`.
pub fn psi(pi: &PlueckerVector) -> Result<TPoint> {
    let (k, n) = (pi.k(), pi.n());
    let mut acc = TPoint::zero(k, n)?;
    let tv = TVectors::get(k, n)?;
    for (j, u) in CrossRatios::get(k, n)?.noncyclic() {
        let c = u.eval(pi);
        if !c.is_zero() {
            acc = acc.axpy(c, tv.of(&j));
        }
    }
    Ok(acc)
}

/// `Σ c_J 𝔱_J`.
pub fn t_combination(k: usize, n: usize, coeffs: &[(KSubset, Rational)]) -> Result<TPoint> {
    let tv = TVectors::get(k, n)?;
    let mut acc = TPoint::zero(k, n)?;
    for (j, c) in coeffs {
        if j.k() != k || j.n() != n {
            return Err(Error::SizeMismatch(format!("{{{j}}} is not a {k}-subset of [{n}]")));
        }
        acc = acc.axpy(*c, tv.of(j));
    }
    Ok(acc)
}

/// Cached `𝔱_J` for all k-subsets.
pub struct TVectors {
    n: usize,
    all: Vec<TPoint>,
}

impl TVectors {
    pub fn get(k: usize, n: usize) -> Result<Arc<TVectors>> {
        check_dims(k, n)?;
        cached("t-vectors", k, n, || {
            let all = crate::combinat::k_subsets(n, k).iter().map(t_vector).collect::<Result<_>>()?;
            Ok(TVectors { n, all })
        })
    }

    pub fn of(&self, j: &KSubset) -> &TPoint {
        &self.all[crate::combinat::lex_rank(j.mask(), self.n)]
    }
}

/// `D_1`: drop the first row, landing in `T^{k−1,n−1}`.
pub fn d1_project(t: &TPoint) -> Result<TPoint> {
    if t.k < 3 {
        return Err(Error::InvalidDimensions(format!("D_1 needs k >= 3, got k = {}", t.k)));
    }
    TPoint::new(t.k - 1, t.n - 1, t.rows[1..].to_vec())
}

/// A nonnegative combination `Σ μ_K 𝔱_K` over a noncrossing collection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoncrossingTableau {
    pub k: usize,
    pub n: usize,
    pub entries: Vec<TableauEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableauEntry {
    #[serde(serialize_with = "ser_subset")]
    pub subset: KSubset,
    #[serde(with = "serde_str")]
    pub multiplicity: Rational,
}

fn ser_subset<S: serde::Serializer>(s: &KSubset, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&s.to_string())
}

impl NoncrossingTableau {
    /// Validates positivity, noncyclicity and pairwise noncrossing; sorts entries.
    pub fn new(k: usize, n: usize, mut entries: Vec<(KSubset, Rational)>) -> Result<Self> {
        check_dims(k, n)?;
        entries.sort_by_key(|e| e.0);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument("repeated subset in tableau".into()));
        }
        for (s, m) in &entries {
            if s.k() != k || s.n() != n {
                return Err(Error::SizeMismatch(format!("{{{s}}} is not a {k}-subset of [{n}]")));
            }
            if !m.is_positive() {
                return Err(Error::InvalidArgument(format!("multiplicity of {{{s}}} is not positive")));
            }
        }
        let subs: Vec<KSubset> = entries.iter().map(|e| e.0).collect();
        if !is_noncrossing_collection(&subs) {
            return Err(Error::InvalidArgument("tableau support is not a noncrossing collection".into()));
        }
        Ok(NoncrossingTableau { k, n, entries: entries.into_iter().map(|(subset, multiplicity)| TableauEntry { subset, multiplicity }).collect() })
    }

    pub fn weight(&self) -> Rational {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn support(&self) -> Vec<KSubset> {
        self.entries.iter().map(|e| e.subset).collect()
    }

    pub fn to_tpoint(&self) -> Result<TPoint> {
        let c: Vec<(KSubset, Rational)> = self.entries.iter().map(|e| (e.subset, e.multiplicity)).collect();
        t_combination(self.k, self.n, &c)
    }
}

/// One maximal cone: its collection, basis determinant and inverse basis matrix.
pub struct Cone {
    pub collection: Vec<KSubset>,
    pub determinant: Rational,
    inverse: Matrix,
}

impl Cone {
    fn new(collection: Vec<KSubset>, tv: &TVectors) -> Result<Self> {
        let m = basis_matrix(&collection, tv);
        let determinant = linalg::determinant(&m);
        let inverse = linalg::inverse(&m).ok_or_else(|| Error::Internal(format!("singular cone {}", show(&collection))))?;
        Ok(Cone { collection, determinant, inverse })
    }

    /// Coefficients of `coords` in the basis `𝔱_K`.
    pub fn coefficients(&self, coords: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.inverse, coords)
    }
}

fn show(c: &[KSubset]) -> String {
    c.iter().map(|s| format!("{{{s}}}")).collect::<Vec<_>>().join(" ")
}

/// Columns are the fan coordinates of `𝔱_K`.
fn basis_matrix(collection: &[KSubset], tv: &TVectors) -> Matrix {
    let cols: Vec<Vec<Rational>> = collection.iter().map(|s| tv.of(s).fan_coords()).collect();
    let d = cols.first().map_or(0, |c| c.len());
    (0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect()
}

/// All maximal cones of the noncrossing fan at `(k, n)`.
pub struct NoncrossingFan {
    pub k: usize,
    pub n: usize,
    pub dim: usize,
    pub cones: Vec<Cone>,
}

impl NoncrossingFan {
    /// Enumerates every maximal noncrossing collection; cached per `(k, n)`.
    pub fn get(k: usize, n: usize) -> Result<Arc<NoncrossingFan>> {
        check_dims(k, n)?;
        cached("nc-fan", k, n, || {
            let dim = (k - 1) * (n - k - 1);
            let tv = TVectors::get(k, n)?;
            let cones = maximal_noncrossing_collections(k, n)?
                .into_iter()
                .map(|c| {
                    if c.len() != dim {
                        return Err(Error::Internal(format!("maximal collection of size {} != {dim}", c.len())));
                    }
                    Cone::new(c, &tv)
                })
                .collect::<Result<_>>()?;
            Ok(NoncrossingFan { k, n, dim, cones })
        })
    }

    /// Solve on every cone; accept nonnegative solutions and require all
    /// accepting cones to agree on the positive part.
    pub fn decompose(&self, t: &TPoint) -> Result<NoncrossingTableau> {
        if (t.k, t.n) != (self.k, self.n) {
            return Err(Error::SizeMismatch(format!("point of T^({},{}) in fan ({}, {})", t.k, t.n, self.k, self.n)));
        }
        let coords = t.fan_coords();
        let mut found: Option<Vec<(KSubset, Rational)>> = None;
        for cone in &self.cones {
            let mu = cone.coefficients(&coords);
            if mu.iter().any(|m| m.is_negative()) {
                continue;
            }
            let supp: Vec<(KSubset, Rational)> = cone.collection.iter().zip(mu).filter(|(_, m)| !m.is_zero()).map(|(s, m)| (*s, m)).collect();
            match &found {
                None => found = Some(supp),
                Some(prev) if *prev != supp => {
                    return Err(Error::AmbiguousDecomposition(format!(
                        "cone {} disagrees with an earlier cone",
                        show(&cone.collection)
                    )))
                }
                _ => {}
            }
        }
        let supp = found.ok_or(Error::NoCone)?;
        finish(t, supp)
    }

    /// Number of cones whose closure contains `t`.
    pub fn containing_cones(&self, t: &TPoint) -> usize {
        let coords = t.fan_coords();
        self.cones.iter().filter(|c| c.coefficients(&coords).iter().all(|m| !m.is_negative())).count()
    }
}

fn finish(t: &TPoint, supp: Vec<(KSubset, Rational)>) -> Result<NoncrossingTableau> {
    if t.is_integral() && supp.iter().any(|(_, m)| !m.is_integer()) {
        return Err(Error::Internal("integral point with non-integral fan coefficients".into()));
    }
    NoncrossingTableau::new(t.k, t.n, supp)
}

/// Walk from a generic interior point of a starting cone towards `t`,
/// flipping across the facet where the segment exits, until `t` is reached.
pub fn decompose_by_walk(t: &TPoint) -> Result<NoncrossingTableau> {
    let (k, n) = (t.k, t.n);
    let dim = (k - 1) * (n - k - 1);
    let tv = TVectors::get(k, n)?;
    let start = greedy_maximal_collection(k, n)?;
    if start.len() != dim {
        return Err(Error::Internal(format!("greedy maximal collection of size {} != {dim}", start.len())));
    }
    let p = t.fan_coords();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for _attempt in 0..8 {
        // Generic interior point of the starting cone.
        let weights: Vec<Rational> = (0..dim).map(|_| frac(rng.gen_range(1000..2000), 997)).collect();
        let basis = basis_matrix(&start, &tv);
        let q = linalg::mat_vec(&basis, &weights);
        match walk(&start, &p, &q, &tv, k, n) {
            Ok(supp) => return finish(t, supp),
            Err(Error::Internal(msg)) if msg == "degenerate" => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Internal("walk kept hitting lower-dimensional faces".into()))
}

fn walk(start: &[KSubset], p: &[Rational], q: &[Rational], tv: &TVectors, k: usize, n: usize) -> Result<Vec<(KSubset, Rational)>> {
    let mut coll = start.to_vec();
    for _step in 0..100_000 {
        let inv = linalg::inverse(&basis_matrix(&coll, tv)).ok_or_else(|| Error::Internal(format!("singular cone {}", show(&coll))))?;
        let lp = linalg::mat_vec(&inv, p);
        if lp.iter().all(|m| !m.is_negative()) {
            return Ok(coll.iter().zip(lp).filter(|(_, m)| !m.is_zero()).map(|(s, m)| (*s, m)).collect());
        }
        let lq = linalg::mat_vec(&inv, q);
        // λ(s) = lq + s (lp − lq); leave through the first coordinate to hit zero.
        let mut best: Option<(Rational, usize)> = None;
        let mut tie = false;
        for i in 0..coll.len() {
            let slope = lp[i] - lq[i];
            if !slope.is_negative() {
                continue;
            }
            let s = -lq[i] / slope;
            match best {
                None => best = Some((s, i)),
                Some((b, _)) if s < b => {
                    best = Some((s, i));
                    tie = false;
                }
                Some((b, _)) if s == b => tie = true,
                _ => {}
            }
        }
        let (_, exit) = best.ok_or_else(|| Error::Internal("walk has no exit facet".into()))?;
        if tie {
            return Err(Error::Internal("degenerate".into()));
        }
        let facet: Vec<KSubset> = coll.iter().enumerate().filter(|&(i, _)| i != exit).map(|(_, s)| *s).collect();
        let others: Vec<KSubset> = compatible_completions(&facet, k, n).into_iter().filter(|s| *s != coll[exit]).collect();
        if others.len() != 1 {
            return Err(Error::Internal(format!("facet {} has {} flips", show(&facet), others.len())));
        }
        coll[exit] = others[0];
    }
    Err(Error::Internal("walk did not terminate".into()))
}

/// Dimension threshold up to which the exhaustive cone scan is used.
pub const EXHAUSTIVE_MAX_DIM: usize = 8;

/// Unique noncrossing decomposition of `t`: exhaustive cone scan at small
/// `(k, n)`, the facet-flipping walk beyond.
pub fn nc_decompose(t: &TPoint) -> Result<NoncrossingTableau> {
    if (t.k - 1) * (t.n - t.k - 1) <= EXHAUSTIVE_MAX_DIM {
        NoncrossingFan::get(t.k, t.n)?.decompose(t)
    } else {
        decompose_by_walk(t)
    }
}

/// `Σ μ_K` of the noncrossing decomposition.
pub fn nc_weight(t: &TPoint) -> Result<Rational> {
    Ok(nc_decompose(t)?.weight())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[usize]) -> KSubset {
        KSubset::new(n, e).unwrap()
    }

    fn unit(k: usize, n: usize, i: usize, j: usize) -> TPoint {
        let mut rows = vec![vec![int(0); n - k]; k - 1];
        rows[i - 1][j - 1] = int(1);
        TPoint::new(k, n, rows).unwrap()
    }

    #[test]
    fn t_vector_examples() {
        assert_eq!(t_vector(&s(5, &[1, 3, 5])).unwrap(), unit(3, 5, 1, 1).add(&unit(3, 5, 2, 2)));
        assert_eq!(t_vector(&s(5, &[1, 2, 4])).unwrap(), unit(3, 5, 2, 1));
    }

    #[test]
    fn phi_of_tilde_is_t() {
        for j in crate::combinat::k_subsets(7, 3) {
            assert_eq!(phi(&t_tilde_vector(&j).unwrap()).unwrap(), t_vector(&j).unwrap());
        }
    }

    #[test]
    fn canonical_rows() {
        let p = TPoint::new(3, 6, vec![vec![int(2), int(3), int(2)], vec![int(-1), int(0), int(0)]]).unwrap();
        assert_eq!(p.rows()[0], vec![int(0), int(1), int(0)]);
        assert_eq!(p.rows()[1], vec![int(0), int(1), int(1)]);
        assert!(TPoint::new(3, 6, vec![vec![int(0); 3]]).is_err());
    }

    #[test]
    fn walk_matches_scan_on_rays() {
        let fan = NoncrossingFan::get(3, 6).unwrap();
        for j in crate::combinat::noncyclic_subsets(6, 3) {
            let t = t_vector(&j).unwrap();
            let a = fan.decompose(&t).unwrap();
            assert_eq!(a.support(), vec![j]);
            assert_eq!(decompose_by_walk(&t).unwrap(), a);
        }
    }
}
