//! Tropical Plücker vectors: storage, lineality, the positive three-term
//! check and face restrictions.

use crate::combinat::{binom, check_dims, k_subsets, lex_rank, KSubset};
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, serde_str::Parsed, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// A vector in `R^{C(n,k)}` indexed by k-subsets of [n] in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "RawPluecker")]
pub struct PlueckerVector {
    k: usize,
    n: usize,
    values: Vec<Rational>,
}

impl PlueckerVector {
    pub fn zero(k: usize, n: usize) -> Result<Self> {
        check_dims(k, n)?;
        Ok(PlueckerVector { k, n, values: vec![Rational::zero(); binom(n, k)] })
    }

    pub fn from_fn(k: usize, n: usize, mut f: impl FnMut(&KSubset) -> Rational) -> Result<Self> {
        check_dims(k, n)?;
        Ok(PlueckerVector { k, n, values: k_subsets(n, k).iter().map(&mut f).collect() })
    }

    /// Values in lexicographic subset order.
    pub fn from_values(k: usize, n: usize, values: Vec<Rational>) -> Result<Self> {
        check_dims(k, n)?;
        if values.len() != binom(n, k) {
            return Err(Error::SizeMismatch(format!("expected {} entries, got {}", binom(n, k), values.len())));
        }
        Ok(PlueckerVector { k, n, values })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, s: &KSubset) -> Rational {
        debug_assert!(s.k() == self.k && s.n() == self.n);
        self.values[lex_rank(s.mask(), self.n)]
    }

    pub fn get_mask(&self, mask: u64) -> Rational {
        self.values[lex_rank(mask, self.n)]
    }

    pub fn set(&mut self, s: &KSubset, v: Rational) {
        debug_assert!(s.k() == self.k && s.n() == self.n);
        let r = lex_rank(s.mask(), self.n);
        self.values[r] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (KSubset, Rational)> + '_ {
        k_subsets(self.n, self.k).into_iter().zip(self.values.iter().copied())
    }

    pub fn same_shape(&self, other: &PlueckerVector) -> Result<()> {
        if self.k != other.k || self.n != other.n {
            return Err(Error::SizeMismatch(format!(
                "Plücker vectors at ({}, {}) and ({}, {})",
                self.k, self.n, other.k, other.n
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: Rational) -> Self {
        PlueckerVector { k: self.k, n: self.n, values: self.values.iter().map(|v| v * c).collect() }
    }

    fn zip_with(&self, o: &Self, f: impl Fn(Rational, Rational) -> Rational) -> Self {
        assert!(self.k == o.k && self.n == o.n, "shape mismatch");
        PlueckerVector { k: self.k, n: self.n, values: self.values.iter().zip(&o.values).map(|(a, b)| f(*a, *b)).collect() }
    }
}

impl Add for &PlueckerVector {
    type Output = PlueckerVector;
    fn add(self, o: &PlueckerVector) -> PlueckerVector {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Sub for &PlueckerVector {
    type Output = PlueckerVector;
    fn sub(self, o: &PlueckerVector) -> PlueckerVector {
        self.zip_with(o, |a, b| a - b)
    }
}

impl Neg for &PlueckerVector {
    type Output = PlueckerVector;
    fn neg(self) -> PlueckerVector {
        self.scale(int(-1))
    }
}

impl Mul<&PlueckerVector> for Rational {
    type Output = PlueckerVector;
    fn mul(self, v: &PlueckerVector) -> PlueckerVector {
        v.scale(self)
    }
}

impl Serialize for PlueckerVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<(String, String)> = self.iter().map(|(j, v)| (j.to_string(), format_rational(&v))).collect();
        let mut st = s.serialize_struct("PlueckerVector", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("entries", &OrderedMap(&entries))?;
        st.end()
    }
}

/// Serializes as a JSON object preserving insertion order.
struct OrderedMap<'a>(&'a [(String, String)]);

impl Serialize for OrderedMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPluecker {
    k: usize,
    n: usize,
    entries: BTreeMap<String, Parsed>,
}

impl TryFrom<RawPluecker> for PlueckerVector {
    type Error = Error;
    fn try_from(raw: RawPluecker) -> Result<Self> {
        let mut v = PlueckerVector::zero(raw.k, raw.n)?;
        let mut seen = vec![false; v.values.len()];
        for (key, val) in raw.entries {
            let s = KSubset::parse(raw.n, &key).map_err(|e| Error::Parse(format!("entries/{key}: {e}")))?;
            if s.k() != raw.k {
                return Err(Error::Parse(format!("entries/{key}: expected a {}-subset", raw.k)));
            }
            let r = lex_rank(s.mask(), raw.n);
            seen[r] = true;
            v.values[r] = val.0;
        }
        if let Some(missing) = seen.iter().position(|&b| !b) {
            return Err(Error::Parse(format!("entries: missing subset {}", k_subsets(raw.n, raw.k)[missing])));
        }
        Ok(v)
    }
}

/// The lineality vector `I -> Σ_{i∈I} x_i`.
pub fn lineality_vector(k: usize, n: usize, x: &[Rational]) -> Result<PlueckerVector> {
    if x.len() != n {
        return Err(Error::SizeMismatch(format!("lineality shift has length {}, expected {n}", x.len())));
    }
    PlueckerVector::from_fn(k, n, |s| s.iter().map(|i| x[i - 1]).sum())
}

/// `π^x_I = π_I − Σ_{i∈I} x_i`.
pub fn lineality_shift(pi: &PlueckerVector, x: &[Rational]) -> Result<PlueckerVector> {
    Ok(pi - &lineality_vector(pi.k, pi.n, x)?)
}

/// Outcome of the positive three-term check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PositivityCertificate {
    Positive,
    Violation {
        s: Vec<usize>,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        #[serde(with = "crate::rational::serde_str")]
        lhs: Rational,
        #[serde(with = "crate::rational::serde_str")]
        rhs: Rational,
    },
}

impl PositivityCertificate {
    pub fn is_positive(&self) -> bool {
        matches!(self, PositivityCertificate::Positive)
    }
}

/// For all `S` of size k−2 and `a<b<c<d` outside `S`:
/// `π_{Sac} + π_{Sbd} = min(π_{Sab} + π_{Scd}, π_{Sad} + π_{Sbc})`.
/// Reports the lexicographically first violated `(S, a, b, c, d)`.
pub fn is_positive_tropical(pi: &PlueckerVector) -> PositivityCertificate {
    let (k, n) = (pi.k, pi.n);
    for s in k_subsets(n, k - 2) {
        let rest: Vec<usize> = (1..=n).filter(|&i| !s.contains(i)).collect();
        let sm = s.mask();
        let val = |x: usize, y: usize| pi.get_mask(sm | 1u64 << (x - 1) | 1u64 << (y - 1));
        let m = rest.len();
        for ia in 0..m {
            for ib in ia + 1..m {
                for ic in ib + 1..m {
                    for id in ic + 1..m {
                        let (a, b, c, d) = (rest[ia], rest[ib], rest[ic], rest[id]);
                        let lhs = val(a, c) + val(b, d);
                        let x = val(a, b) + val(c, d);
                        let y = val(a, d) + val(b, c);
                        let rhs = if x < y { x } else { y };
                        if lhs != rhs {
                            return PositivityCertificate::Violation { s: s.elems(), a, b, c, d, lhs, rhs };
                        }
                    }
                }
            }
        }
    }
    PositivityCertificate::Positive
}

/// Order-preserving bijection `[n−1] → [n] ∖ {ℓ}`.
fn skip(i: usize, l: usize) -> usize {
    if i < l {
        i
    } else {
        i + 1
    }
}

fn lift_mask(s: &KSubset, l: usize) -> u64 {
    s.iter().fold(0u64, |m, i| m | 1u64 << (skip(i, l) - 1))
}

/// `∂_ℓ π`: keep subsets containing ℓ, drop ℓ, reindex. Lands in `(k−1, n−1)`.
pub fn face_restrict_one(pi: &PlueckerVector, l: usize) -> Result<PlueckerVector> {
    let (k, n) = (pi.k, pi.n);
    if l == 0 || l > n {
        return Err(Error::InvalidArgument(format!("facet index {l} outside [1, {n}]")));
    }
    if k < 3 {
        return Err(Error::InvalidDimensions(format!("∂_{l} from ({k}, {n}) leaves k − 1 < 2")));
    }
    PlueckerVector::from_fn(k - 1, n - 1, |s| pi.get_mask(lift_mask(s, l) | 1u64 << (l - 1)))
}

/// `∂_{ℓ0} π`: keep subsets avoiding ℓ, reindex. Lands in `(k, n−1)`.
pub fn face_restrict_zero(pi: &PlueckerVector, l: usize) -> Result<PlueckerVector> {
    let (k, n) = (pi.k, pi.n);
    if l == 0 || l > n {
        return Err(Error::InvalidArgument(format!("facet index {l} outside [1, {n}]")));
    }
    if n - 1 < k + 2 {
        return Err(Error::InvalidDimensions(format!("∂_{{{l}0}} from ({k}, {n}) leaves n − 1 < k + 2")));
    }
    PlueckerVector::from_fn(k, n - 1, |s| pi.get_mask(lift_mask(s, l)))
}

/// Iterated `∂_{ℓ0}` deleting every element outside `keep`, so that the
/// result lives on `[|keep|]` via the order-preserving identification.
pub fn restrict_to_support(pi: &PlueckerVector, keep: &[usize]) -> Result<PlueckerVector> {
    let mut cur = pi.clone();
    for l in (1..=pi.n).rev().filter(|l| !keep.contains(l)) {
        cur = face_restrict_zero(&cur, l)?;
    }
    Ok(cur)
}

/// Agreement of all tropical cross-ratios `u^t_J`, `J` noncyclic.
pub fn equivalent_mod_lineality(a: &PlueckerVector, b: &PlueckerVector) -> Result<bool> {
    a.same_shape(b)?;
    let diff = a - b;
    Ok(crate::planar::CrossRatios::get(a.k, a.n)?.noncyclic().all(|(_, u)| u.eval(&diff).is_zero()))
}
