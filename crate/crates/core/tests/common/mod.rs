#![allow(dead_code)]

use tropgr::planar::planar_combination;
use tropgr::rational::int;
use tropgr::{KSubset, PlueckerVector, Rational};

pub fn s(n: usize, e: &[usize]) -> KSubset {
    KSubset::new(n, e).unwrap()
}

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

pub fn rv(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(p, q)| r(p, q)).collect()
}

/// The twelve-term planar combination at (3,12) whose noncrossing tableau is
/// {1,9,10} + {2,5,7} + {3,4,12} + {6,8,11}.
pub const WEIGHT_FOUR_3_12: [(i64, [usize; 3]); 12] = [
    (-1, [1, 4, 11]),
    (1, [1, 4, 12]),
    (-1, [1, 8, 10]),
    (1, [1, 8, 11]),
    (1, [1, 9, 10]),
    (-1, [2, 4, 7]),
    (1, [2, 4, 11]),
    (1, [2, 5, 7]),
    (1, [3, 4, 7]),
    (-1, [5, 7, 10]),
    (1, [5, 8, 10]),
    (1, [6, 7, 10]),
];

pub const WEIGHT_FOUR_3_12_TABLEAU: [[usize; 3]; 4] = [[1, 9, 10], [2, 5, 7], [3, 4, 12], [6, 8, 11]];

pub fn weight_four_3_12() -> PlueckerVector {
    let coeffs: Vec<(KSubset, Rational)> = WEIGHT_FOUR_3_12.iter().map(|(c, e)| (s(12, e), int(*c))).collect();
    planar_combination(3, 12, &coeffs).unwrap()
}

/// `v + c·1` for the `c` making the first coordinate zero.
pub fn normalize(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| x - v[0]).collect()
}
