//! Central roof functions and the central and balanced representatives.

use crate::cache::cached;
use crate::combinat::{check_dims, dosp, k_subsets, lex_rank, DecoratedOsp, KSubset};
use crate::error::{Error, Result};
use crate::planar::{planar_expand, CrossRatios};
use crate::pluecker::{lineality_shift, PlueckerVector};
use crate::rational::{frac, int, Rational};
use crate::weight::{cyc_set, gap_set};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// `η^J(x) = −(1/k) min_a W_a·x` with
/// `W_a = Σ_{p=1}^{d} (Σ_{q=1}^{p} r_{a+q}) e_{S_{a+p}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralRoof {
    pub j: KSubset,
    pub dosp: DecoratedOsp,
    /// `W_1, …, W_d` as integer vectors of length n.
    pub w: Vec<Vec<i64>>,
}

impl CentralRoof {
    pub fn k(&self) -> usize {
        self.j.k()
    }

    pub fn n(&self) -> usize {
        self.j.n()
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        let m = self
            .w
            .iter()
            .map(|wa| wa.iter().zip(x).map(|(a, b)| b * *a).sum::<Rational>())
            .reduce(|a, b| if b < a { b } else { a })
            .expect("at least one block");
        -m / int(self.k() as i64)
    }

    /// `η^J_I = η^J(e_I)`.
    pub fn pluecker_vector(&self) -> Result<PlueckerVector> {
        let k = self.k() as i64;
        PlueckerVector::from_fn(self.j.k(), self.j.n(), |s| {
            let m = self.w.iter().map(|wa| s.iter().map(|i| wa[i - 1]).sum::<i64>()).min().expect("at least one block");
            frac(-m, k)
        })
    }
}

pub fn central_roof(j: &KSubset) -> Result<CentralRoof> {
    check_dims(j.k(), j.n())?;
    if j.is_cyclic_interval() {
        return Err(Error::CyclicSubset(j.to_string()));
    }
    let d = dosp(j)?;
    let ell = d.len();
    let w = (0..ell)
        .map(|a| {
            let mut v = vec![0i64; j.n()];
            let mut acc = 0i64;
            for p in 1..=ell {
                acc += d.r[(a + p) % ell] as i64;
                for &e in &d.blocks[(a + p) % ell] {
                    v[e - 1] += acc;
                }
            }
            v
        })
        .collect();
    Ok(CentralRoof { j: *j, dosp: d, w })
}

/// `η^J(x)`.
pub fn central_roof_value(j: &KSubset, x: &[Rational]) -> Result<Rational> {
    if x.len() != j.n() {
        return Err(Error::SizeMismatch(format!("point has {} coordinates, expected {}", x.len(), j.n())));
    }
    Ok(central_roof(j)?.value(x))
}

pub fn central_pluecker_vector(j: &KSubset) -> Result<PlueckerVector> {
    central_roof(j)?.pluecker_vector()
}

/// Central roofs and their Plücker vectors for every noncyclic `J`, cached.
pub(crate) struct Roofs {
    n: usize,
    roofs: Vec<Option<(CentralRoof, PlueckerVector)>>,
}

impl Roofs {
    pub(crate) fn get(k: usize, n: usize) -> Result<Arc<Roofs>> {
        check_dims(k, n)?;
        cached("roofs", k, n, || {
            let roofs = k_subsets(n, k)
                .iter()
                .map(|j| {
                    if j.is_cyclic_interval() {
                        return Ok(None);
                    }
                    let r = central_roof(j)?;
                    let v = r.pluecker_vector()?;
                    Ok(Some((r, v)))
                })
                .collect::<Result<_>>()?;
            Ok(Roofs { n, roofs })
        })
    }

    pub(crate) fn roof(&self, j: &KSubset) -> &CentralRoof {
        &self.roofs[lex_rank(j.mask(), self.n)].as_ref().expect("noncyclic").0
    }

    pub(crate) fn vector(&self, j: &KSubset) -> &PlueckerVector {
        &self.roofs[lex_rank(j.mask(), self.n)].as_ref().expect("noncyclic").1
    }
}

/// `Σ c_J η^J` for explicit coefficients on noncyclic subsets.
pub fn central_from_coefficients(k: usize, n: usize, coeffs: &BTreeMap<KSubset, Rational>) -> Result<PlueckerVector> {
    let roofs = Roofs::get(k, n)?;
    let mut acc = vec![Rational::zero(); crate::combinat::binom(n, k)];
    for (j, c) in coeffs {
        if j.k() != k || j.n() != n {
            return Err(Error::SizeMismatch(format!("{{{j}}} is not a {k}-subset of [{n}]")));
        }
        if j.is_cyclic_interval() {
            return Err(Error::CyclicSubset(j.to_string()));
        }
        if c.is_zero() {
            continue;
        }
        for (a, v) in acc.iter_mut().zip(roofs.vector(j).values()) {
            *a += c * v;
        }
    }
    PlueckerVector::from_values(k, n, acc)
}

/// `π̂ = Σ_J u^t_J(π) η^J`.
pub fn central_representative(pi: &PlueckerVector) -> Result<PlueckerVector> {
    central_from_coefficients(pi.k(), pi.n(), &planar_expand(pi)?)
}

/// A representative together with the shift carrying the central one to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedRepresentative {
    pub vector: PlueckerVector,
    /// `vector = central^y`, i.e. `vector_I = central_I − Σ_{i∈I} y_i`.
    pub shift: Vec<Rational>,
    pub weight: Rational,
}

/// The representative whose cyclic-gap differences `π_{cyc(j)} − π_{gap(j)}`
/// all equal `wt/n`, normalized by `y_1 = 0`.
pub fn balanced_representative(pi: &PlueckerVector) -> Result<BalancedRepresentative> {
    let (k, n) = (pi.k(), pi.n());
    let central = central_representative(pi)?;
    let weight: Rational = CrossRatios::get(k, n)?.noncyclic().map(|(_, u)| u.eval(pi)).sum();
    let target = weight / int(n as i64);
    let delta: Vec<Rational> = (0..n).map(|j| central.get(&cyc_set(n, k, j)) - central.get(&gap_set(n, k, j))).collect();
    // y_{m+1} = y_m − (δ_{m−k} − wt/n), indices mod n.
    let mut y = vec![Rational::zero(); n];
    for m in 1..n {
        let j = (m + n - k % n) % n;
        y[m] = y[m - 1] - (delta[j] - target);
    }
    let closing = (n + n - k % n) % n;
    if y[n - 1] - (delta[closing] - target) != y[0] {
        return Err(Error::Internal("cyclic-gap differences do not sum to the weight".into()));
    }
    let vector = lineality_shift(&central, &y)?;
    Ok(BalancedRepresentative { vector, shift: y, weight })
}
