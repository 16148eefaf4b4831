//! Vertices, edges and faces of the bounded complex of a tropical linear space.

use super::matroid::{argmin_bases, Matroid};
use super::roof::{balanced_representative, central_from_coefficients, central_representative, Roofs};
use crate::combinat::{k_subsets, KSubset};
use crate::error::{Error, Result};
use crate::linalg;
use crate::planar::planar_expand;
use crate::pluecker::PlueckerVector;
use crate::rational::{frac, int, lcm_of_denominators, max_of, min_of, serde_str, Rational};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

/// `w ∈ L(π)`: for every (k+1)-subset `τ`, `min_{i∈τ} (π_{τ∖i} + w_i)` is attained twice.
pub fn in_linear_space(pi: &PlueckerVector, w: &[Rational]) -> Result<bool> {
    let (k, n) = (pi.k(), pi.n());
    check_point(n, w)?;
    Ok(k_subsets(n, k + 1).iter().all(|tau| {
        let vals: Vec<Rational> = tau.iter().map(|i| pi.get_mask(tau.mask() & !(1u64 << (i - 1))) + w[i - 1]).collect();
        let m = min_of(vals.iter().copied()).expect("nonempty");
        vals.iter().filter(|v| **v == m).count() >= 2
    }))
}

fn check_point(n: usize, w: &[Rational]) -> Result<()> {
    if w.len() != n {
        return Err(Error::SizeMismatch(format!("point has {} coordinates, expected {n}", w.len())));
    }
    Ok(())
}

/// Matroid of the bases minimizing `π_I − w·e_I`.
pub fn argmin_matroid(pi: &PlueckerVector, w: &[Rational]) -> Result<Matroid> {
    check_point(pi.n(), w)?;
    let subs = k_subsets(pi.n(), pi.k());
    Matroid::new(pi.k(), pi.n(), argmin_bases(pi.values(), &subs, w))
}

/// In `L(π)` and in a bounded cell: the argmin matroid has no loops and no coloops.
pub fn in_bounded_part(pi: &PlueckerVector, w: &[Rational]) -> Result<bool> {
    let m = argmin_matroid(pi, w)?;
    Ok(m.is_loopless() && m.is_coloopless())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FaceQuery {
    /// A point of the bounded complex in the relative interior of a face of this dimension.
    Bounded { dimension: usize },
    /// In the tropical linear space, but in an unbounded cell.
    Unbounded,
    NotInLinearSpace,
}

/// Number of connected components of the argmin matroid, minus one.
pub fn face_dimension_at(pi: &PlueckerVector, w: &[Rational]) -> Result<FaceQuery> {
    let m = argmin_matroid(pi, w)?;
    Ok(if !m.is_loopless() {
        FaceQuery::NotInLinearSpace
    } else if !m.is_coloopless() {
        FaceQuery::Unbounded
    } else {
        FaceQuery::Bounded { dimension: m.components_partition().len() - 1 }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedComplexReport {
    pub k: usize,
    pub n: usize,
    #[serde(with = "serde_str::vecvec")]
    pub vertices: Vec<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(with = "serde_str")]
    pub pk_weight: Rational,
    /// `max_{u,v} (max_i (u−v)_i − min_i (u−v)_i)` over vertex pairs.
    #[serde(with = "serde_str")]
    pub max_coordinate_spread: Rational,
    pub within_dilate: bool,
    /// `max_v (max_i v_i − min_i v_i)` over vertices of this representative.
    #[serde(with = "serde_str")]
    pub max_vertex_extent: Rational,
    pub extent_within_weight: bool,
}

#[derive(Clone, Debug)]
pub struct VertexOptions {
    pub budget: Option<Duration>,
    pub edges: bool,
}

impl Default for VertexOptions {
    fn default() -> Self {
        VertexOptions { budget: Some(Duration::from_secs(600)), edges: false }
    }
}

fn range(v: &[Rational]) -> Rational {
    max_of(v.iter().copied()).unwrap_or_default() - min_of(v.iter().copied()).unwrap_or_default()
}

/// Vertices of the bounded complex of `pi_hat ≡ Σ c_J ℌ_J`.
pub fn bounded_complex_vertices(pi_hat: &PlueckerVector, coeffs: &BTreeMap<KSubset, Rational>) -> Result<BoundedComplexReport> {
    bounded_complex_with(pi_hat, coeffs, &VertexOptions::default())
}

/// Vertex enumeration: every maximal cell of the regular subdivision has a
/// gradient `−Σ c_J W_{a_J} / k` for some choice of a linear piece `a_J` of each
/// roof. Candidates are kept when their argmin matroid is connected.
pub fn bounded_complex_with(pi_hat: &PlueckerVector, coeffs: &BTreeMap<KSubset, Rational>, opts: &VertexOptions) -> Result<BoundedComplexReport> {
    let (k, n) = (pi_hat.k(), pi_hat.n());
    let started = Instant::now();
    let support: Vec<(KSubset, Rational)> = coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (*j, *c)).collect();
    let weight: Rational = support.iter().map(|(_, c)| *c).sum();
    let central = central_from_coefficients(k, n, coeffs)?;
    if support.is_empty() {
        return Ok(BoundedComplexReport {
            k,
            n,
            vertices: Vec::new(),
            edges: None,
            pk_weight: weight,
            max_coordinate_spread: int(0),
            within_dilate: true,
            max_vertex_extent: int(0),
            extent_within_weight: true,
        });
    }
    let y = lineality_offset(&central, pi_hat)?;

    // Integer scaling: every candidate and every score is an integer multiple of 1/scale.
    let lcm = lcm_of_denominators(support.iter().map(|(_, c)| c).chain(y.iter()));
    let scale = lcm.checked_mul(k as i64).ok_or_else(|| Error::Internal("scale overflow".into()))?;
    let roofs = Roofs::get(k, n)?;
    let pieces: Vec<Vec<Vec<i64>>> = support
        .iter()
        .map(|(j, c)| {
            let f = (c * int(lcm)).to_integer();
            roofs.roof(j).w.iter().map(|wa| wa.iter().map(|x| -f * x).collect()).collect()
        })
        .collect();
    let y_scaled: Vec<i64> = y.iter().map(|v| (v * int(scale)).to_integer()).collect();
    let subs = k_subsets(n, k);
    let scores: Vec<i64> = pi_hat
        .values()
        .iter()
        .map(|v| {
            let s = v * int(scale);
            if s.is_integer() {
                Ok(s.to_integer())
            } else {
                Err(Error::Internal("representative not integral after scaling".into()))
            }
        })
        .collect::<Result<_>>()?;
    let radices: Vec<usize> = pieces.iter().map(|p| p.len()).collect();
    let total: u64 = radices.iter().try_fold(1u64, |a, &r| a.checked_mul(r as u64)).ok_or_else(|| Error::Internal("too many assignments".into()))?;

    // Distinct candidates modulo the all-ones vector, each with the first assignment producing it.
    let chunk = 1u64 << 14;
    let chunks = total.div_ceil(chunk);
    let found: Vec<HashMap<Vec<i64>, (u64, Vec<i64>)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            if let Some(b) = opts.budget {
                if started.elapsed() > b {
                    return Err(Error::BudgetExceeded(b));
                }
            }
            let mut local: HashMap<Vec<i64>, (u64, Vec<i64>)> = HashMap::new();
            let from = c * chunk;
            let to = (from + chunk).min(total);
            let mut digits = to_digits(from, &radices);
            for idx in from..to {
                let mut w: Vec<i64> = y_scaled.iter().map(|v| -v).collect();
                for (p, &d) in pieces.iter().zip(&digits) {
                    for (a, b) in w.iter_mut().zip(&p[d]) {
                        *a += b;
                    }
                }
                let key: Vec<i64> = w.iter().map(|v| v - w[0]).collect();
                local.entry(key).or_insert((idx, w));
                increment(&mut digits, &radices);
            }
            Ok(local)
        })
        .collect::<Result<_>>()?;
    let mut merged: HashMap<Vec<i64>, (u64, Vec<i64>)> = HashMap::new();
    for m in found {
        for (key, (idx, w)) in m {
            match merged.get(&key) {
                Some((i, _)) if *i <= idx => {}
                _ => {
                    merged.insert(key, (idx, w));
                }
            }
        }
    }
    if let Some(b) = opts.budget {
        if started.elapsed() > b {
            return Err(Error::BudgetExceeded(b));
        }
    }
    let masks: Vec<u64> = subs.iter().map(|s| s.mask()).collect();
    let cands: Vec<Vec<i64>> = merged.into_values().map(|(_, w)| w).collect();
    let mut kept: Vec<Vec<i64>> = cands
        .into_par_iter()
        .filter(|w| {
            let vals: Vec<i64> = scores.iter().zip(&subs).map(|(p, s)| p - s.iter().map(|i| w[i - 1]).sum::<i64>()).collect();
            let m = *vals.iter().min().expect("nonempty");
            let bases: Vec<u64> = vals.iter().zip(&masks).filter(|(v, _)| **v == m).map(|(_, b)| *b).collect();
            Matroid::new(k, n, bases).map(|mt| mt.is_connected() && mt.is_loopless() && mt.is_coloopless()).unwrap_or(false)
        })
        .collect();
    kept.sort();
    let vertices: Vec<Vec<Rational>> = kept.iter().map(|w| w.iter().map(|v| frac(*v, scale)).collect()).collect();
    let edges = if opts.edges { Some(bounded_complex_edges(pi_hat, &vertices)?) } else { None };
    let mut spread = int(0);
    for a in &vertices {
        for b in &vertices {
            let d: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            spread = spread.max(range(&d));
        }
    }
    let extent = vertices.iter().map(|v| range(v)).max().unwrap_or_default();
    Ok(BoundedComplexReport {
        k,
        n,
        vertices,
        edges,
        pk_weight: weight,
        max_coordinate_spread: spread,
        within_dilate: spread <= weight,
        max_vertex_extent: extent,
        extent_within_weight: extent <= weight,
    })
}

fn to_digits(mut idx: u64, radices: &[usize]) -> Vec<usize> {
    radices
        .iter()
        .map(|&r| {
            let d = (idx % r as u64) as usize;
            idx /= r as u64;
            d
        })
        .collect()
}

fn increment(digits: &mut [usize], radices: &[usize]) {
    for (d, &r) in digits.iter_mut().zip(radices) {
        *d += 1;
        if *d < r {
            return;
        }
        *d = 0;
    }
}

/// `y` with `target_I = base_I − Σ_{i∈I} y_i`; errors unless the two differ by lineality.
pub fn lineality_offset(base: &PlueckerVector, target: &PlueckerVector) -> Result<Vec<Rational>> {
    base.same_shape(target)?;
    let n = base.n();
    let diff = base - target;
    let rows: Vec<Vec<Rational>> = k_subsets(n, base.k()).iter().map(|s| (1..=n).map(|i| if s.contains(i) { int(1) } else { int(0) }).collect()).collect();
    linalg::solve_any(&rows, diff.values())
        .ok_or_else(|| Error::InvalidArgument("representative does not match the planar coefficients modulo lineality".into()))
}

/// Pairs `(u, v)` whose midpoint lies in a one-dimensional face whose matroid
/// refines both vertex matroids.
pub fn bounded_complex_edges(pi_hat: &PlueckerVector, vertices: &[Vec<Rational>]) -> Result<Vec<[usize; 2]>> {
    let mats: Vec<Matroid> = vertices.iter().map(|v| argmin_matroid(pi_hat, v)).collect::<Result<_>>()?;
    let half = frac(1, 2);
    let pairs: Vec<(usize, usize)> = (0..vertices.len()).flat_map(|a| (a + 1..vertices.len()).map(move |b| (a, b))).collect();
    let mut edges: Vec<[usize; 2]> = pairs
        .into_par_iter()
        .filter_map(|(a, b)| {
            let mid: Vec<Rational> = vertices[a].iter().zip(&vertices[b]).map(|(x, y)| (x + y) * half).collect();
            let m = argmin_matroid(pi_hat, &mid).ok()?;
            let is_edge = m.is_loopless() && m.is_coloopless() && m.components_partition().len() == 2 && m.is_submatroid_of(&mats[a]) && m.is_submatroid_of(&mats[b]);
            is_edge.then_some([a, b])
        })
        .collect();
    edges.sort();
    Ok(edges)
}

/// Vertices `w` whose matroid polytope contains the interior point `x`.
pub fn subdifferential_at(pi_hat: &PlueckerVector, x: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    let (k, n) = (pi_hat.k(), pi_hat.n());
    check_point(n, x)?;
    if x.iter().any(|v| !v.is_positive() || *v >= int(1)) || x.iter().sum::<Rational>() != int(k as i64) {
        return Err(Error::InvalidArgument("x must satisfy 0 < x_i < 1 and Σ x_i = k".into()));
    }
    let report = bounded_complex_vertices(pi_hat, &planar_expand(pi_hat)?)?;
    let mut out = Vec::new();
    for v in report.vertices {
        if argmin_matroid(pi_hat, &v)?.polytope_contains(x) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Bounded complex of the central representative of `π`.
pub fn bounded_complex(pi: &PlueckerVector, opts: &VertexOptions) -> Result<BoundedComplexReport> {
    let coeffs = planar_expand(pi)?;
    bounded_complex_with(&central_representative(pi)?, &coeffs, opts)
}

/// Bounded complex of the balanced representative of `π`.
pub fn diameter_check(pi: &PlueckerVector) -> Result<BoundedComplexReport> {
    diameter_check_with(pi, &VertexOptions::default())
}

pub fn diameter_check_with(pi: &PlueckerVector, opts: &VertexOptions) -> Result<BoundedComplexReport> {
    let coeffs = planar_expand(pi)?;
    let bal = balanced_representative(pi)?;
    bounded_complex_with(&bal.vector, &coeffs, opts)
}
