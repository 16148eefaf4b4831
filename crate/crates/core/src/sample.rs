//! Seeded random inputs for the invariant suite, tests and benchmarks.

use crate::combinat::{compatible_completions, KSubset};
use crate::error::Result;
use crate::ladder::rho;
use crate::ncfan::{NoncrossingTableau, TPoint};
use crate::pluecker::PlueckerVector;
use crate::rational::{frac, int, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[-bound, bound]`.
pub fn random_integer_tpoint(k: usize, n: usize, bound: i64, rng: &mut SampleRng) -> Result<TPoint> {
    let rows = (0..k.saturating_sub(1)).map(|_| (0..n.saturating_sub(k)).map(|_| int(rng.gen_range(-bound..=bound))).collect()).collect();
    TPoint::new(k, n, rows)
}

/// Entries `p/q` with `|p| <= 12`, `1 <= q <= 4`.
pub fn random_rational_tpoint(k: usize, n: usize, rng: &mut SampleRng) -> Result<TPoint> {
    let rows = (0..k.saturating_sub(1))
        .map(|_| (0..n.saturating_sub(k)).map(|_| frac(rng.gen_range(-12..=12), rng.gen_range(1..=4))).collect())
        .collect();
    TPoint::new(k, n, rows)
}

/// Arbitrary integer vector with entries in `[-bound, bound]`.
pub fn random_pluecker_vector(k: usize, n: usize, bound: i64, rng: &mut SampleRng) -> Result<PlueckerVector> {
    PlueckerVector::from_fn(k, n, |_| int(rng.gen_range(-bound..=bound)))
}

/// A nonnegative integer tableau of weight in `[1, max_weight]` supported on a
/// random noncrossing collection.
pub fn random_tableau(k: usize, n: usize, max_weight: u32, rng: &mut SampleRng) -> Result<NoncrossingTableau> {
    let weight = rng.gen_range(1..=max_weight.max(1));
    let mut picked: Vec<KSubset> = Vec::new();
    let mut counts: Vec<(KSubset, Rational)> = Vec::new();
    for _ in 0..weight {
        // Either repeat a chosen subset or extend the collection.
        let mut options = compatible_completions(&picked, k, n);
        options.extend(picked.iter().copied());
        let Some(&s) = options.choose(rng) else { break };
        match counts.iter_mut().find(|(t, _)| *t == s) {
            Some((_, c)) => *c += int(1),
            None => {
                picked.push(s);
                counts.push((s, int(1)));
            }
        }
    }
    NoncrossingTableau::new(k, n, counts)
}

/// `ρ` of a random tableau: a positive tropical Plücker vector of weight `<= max_weight`.
pub fn random_positive_vector(k: usize, n: usize, max_weight: u32, rng: &mut SampleRng) -> Result<(PlueckerVector, NoncrossingTableau)> {
    let tab = random_tableau(k, n, max_weight, rng)?;
    Ok((rho(&tab.to_tpoint()?)?, tab))
}
