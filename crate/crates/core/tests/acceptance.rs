mod common;

use common::*;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};
use tropgr::combinat::{enumerate_noncrossing_collections, maximal_noncrossing_collections, noncyclic_subsets};
use tropgr::ladder::{enumerate_path_families, rho};
use tropgr::ncfan::{nc_decompose, t_vector, NoncrossingFan};
use tropgr::planar::{corank_vector, planar_basis_vector, planar_expand, PlanarBasis};
use tropgr::pluecker::{equivalent_mod_lineality, is_positive_tropical, restrict_to_support};
use tropgr::rational::int;
use tropgr::sample;
use tropgr::troplin::{bounded_complex_vertices, central_representative, diameter_check, diameter_check_with, VertexOptions};
use tropgr::verify::{duality_check, planar_duality_check, run_suite};
use tropgr::weight::{bridge, pk_weight, weight_report};
use tropgr::{Error, KSubset, Rational};

const DUALITY_CASES: [(usize, usize); 5] = [(2, 5), (2, 6), (3, 6), (3, 7), (4, 7)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.passed = false;
        o.detail = format!("{} (took {took:?}, limit {limit:?})", o.detail);
    } else {
        o.detail = format!("{} [{took:.2?}]", o.detail);
    }
    o
}

/// Cyclic sign changes of `e_I − e_J`, ignoring zeros.
fn ws_oracle(i: &KSubset, j: &KSubset) -> bool {
    let signs: Vec<i8> = (1..=i.n()).map(|x| i.contains(x) as i8 - j.contains(x) as i8).filter(|&v| v != 0).collect();
    let changes = (0..signs.len()).filter(|&a| signs[a] != signs[(a + 1) % signs.len()]).count();
    changes <= 2
}

fn c1() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (k, n) in DUALITY_CASES {
        let o = timed(Duration::from_secs(10), || {
            let rep = duality_check(k, n).unwrap();
            outcome(rep.identity, format!("({k},{n}) {}x{} identity={}", rep.size, rep.size, rep.identity))
        });
        ok &= o.passed;
        details.push(o.detail);
    }
    outcome(ok, details.join("; "))
}

fn c2() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (k, n) in DUALITY_CASES {
        let o = timed(Duration::from_secs(10), || {
            let rep = planar_duality_check(k, n).unwrap();
            outcome(rep.identity, format!("({k},{n}) identity={}", rep.identity))
        });
        ok &= o.passed;
        details.push(o.detail);
    }
    outcome(ok, details.join("; "))
}

fn c3() -> Outcome {
    timed(Duration::from_secs(5), || {
        let f: Vec<usize> = (1..=3).map(|d| enumerate_noncrossing_collections(2, 6, d).unwrap().len()).collect();
        let maximal = maximal_noncrossing_collections(3, 6).unwrap();
        let ws = maximal.iter().filter(|c| c.iter().enumerate().all(|(a, x)| c[a + 1..].iter().all(|y| ws_oracle(x, y)))).count();
        let ok = f == [9, 21, 14] && maximal.len() == 42 && ws == 34;
        outcome(ok, format!("NC(2,6) faces {f:?}; NC(3,6) maximal {} = {ws} weakly separated + {} not", maximal.len(), maximal.len() - ws))
    })
}

fn c4() -> Outcome {
    timed(Duration::from_secs(60), || {
        let fan = NoncrossingFan::get(3, 6).unwrap();
        let unimodular = fan.cones.iter().all(|c| c.determinant == int(1) || c.determinant == int(-1));
        let mut rng = sample::rng(4);
        let mut bad = 0;
        for _ in 0..1000 {
            let t = sample::random_integer_tpoint(3, 6, 6, &mut rng).unwrap();
            // `decompose` scans every cone and rejects disagreeing decompositions.
            let good = match fan.decompose(&t) {
                Ok(tab) => tab.entries.iter().all(|e| e.multiplicity.is_integer() && e.multiplicity > int(0)) && tab.to_tpoint().unwrap() == t,
                Err(_) => false,
            };
            bad += usize::from(!good);
        }
        outcome(unimodular && bad == 0, format!("{} cones unimodular={unimodular}; 1000 points, {bad} failures", fan.cones.len()))
    })
}

fn c5() -> Outcome {
    timed(Duration::from_secs(120), || {
        let mut bad = 0;
        let mut total = 0;
        for (n, count) in [(6, 500), (7, 100)] {
            let mut rng = sample::rng(5 + n as u64);
            for _ in 0..count {
                let t = sample::random_integer_tpoint(3, n, 5, &mut rng).unwrap();
                let r = rho(&t).unwrap();
                let (pk, nc, h) = (pk_weight(&r).unwrap(), nc_decompose(&t).unwrap().weight(), bridge(&r));
                bad += usize::from(!(pk == nc && nc == h));
                total += 1;
            }
        }
        outcome(bad == 0, format!("{total} points, {bad} disagreements"))
    })
}

fn c6() -> Outcome {
    timed(Duration::from_secs(10), || {
        let mut bad = Vec::new();
        let mut total = 0;
        for (k, n) in [(3, 6), (3, 7), (4, 7)] {
            for j in noncyclic_subsets(n, k) {
                total += 1;
                if bridge(&rho(&t_vector(&j).unwrap()).unwrap()) != int(1) {
                    bad.push(format!("({k},{n}) {{{j}}}"));
                }
            }
        }
        outcome(bad.is_empty(), format!("{total} subsets, failures {bad:?}"))
    })
}

fn c7() -> Outcome {
    timed(Duration::from_secs(30), || {
        let mut bad = Vec::new();
        let mut total = 0;
        for (k, n) in [(3, 6), (3, 7)] {
            for j in noncyclic_subsets(n, k) {
                total += 1;
                if !equivalent_mod_lineality(&corank_vector(&j).unwrap(), &planar_basis_vector(&j).unwrap()).unwrap() {
                    bad.push(format!("({k},{n}) {{{j}}}"));
                }
            }
        }
        outcome(bad.is_empty(), format!("{total} subsets, failures {bad:?}"))
    })
}

fn c8() -> Outcome {
    timed(Duration::from_secs(60), || {
        let subs = noncyclic_subsets(6, 3);
        let basis = PlanarBasis::get(3, 6).unwrap();
        let mut pairs = 0;
        let mut bad = Vec::new();
        for (a, i) in subs.iter().enumerate() {
            for j in &subs[a + 1..] {
                pairs += 1;
                let pos = is_positive_tropical(&(basis.vector(i) + basis.vector(j))).is_positive();
                if pos != ws_oracle(i, j) {
                    bad.push(format!("{{{i}}},{{{j}}}"));
                }
            }
        }
        outcome(bad.is_empty(), format!("{pairs} pairs, mismatches {bad:?}"))
    })
}

fn vertex_set(j: &KSubset) -> BTreeSet<Vec<Rational>> {
    let h = planar_basis_vector(j).unwrap();
    let central = central_representative(&h).unwrap();
    let rep = bounded_complex_vertices(&central, &planar_expand(&h).unwrap()).unwrap();
    rep.vertices.iter().map(|v| normalize(v)).collect()
}

fn c9() -> Outcome {
    let two_block: BTreeSet<Vec<Rational>> =
        [rv(&[(-1, 1), (-1, 1), (-1, 1), (-1, 3), (-1, 3), (-1, 3)]), rv(&[(-2, 3), (-2, 3), (-2, 3), (-1, 1), (-1, 1), (-1, 1)])]
            .iter()
            .map(|v| normalize(v))
            .collect();
    let three_split: BTreeSet<Vec<Rational>> = [
        rv(&[(-1, 3), (-1, 3), (-2, 3), (-2, 3), (-1, 1), (-1, 1)]),
        rv(&[(-1, 1), (-1, 1), (-1, 3), (-1, 3), (-2, 3), (-2, 3)]),
        rv(&[(-2, 3), (-2, 3), (-1, 1), (-1, 1), (-1, 3), (-1, 3)]),
    ]
    .iter()
    .map(|v| normalize(v))
    .collect();
    let a = vertex_set(&s(6, &[2, 3, 6])) == two_block;
    let b = vertex_set(&s(6, &[2, 4, 6])) == three_split;
    outcome(a && b, format!("2-block match={a}; 3-split match={b}"))
}

fn c10() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for j in [s(6, &[2, 3, 6]), s(6, &[2, 4, 6])] {
        let rep = diameter_check(&planar_basis_vector(&j).unwrap()).unwrap();
        let good = rep.pk_weight == int(1) && rep.within_dilate && rep.extent_within_weight;
        ok &= good;
        details.push(format!("{{{j}}} spread {} extent {} wt {}", rep.max_coordinate_spread, rep.max_vertex_extent, rep.pk_weight));
    }
    let mut rng = sample::rng(10);
    let mut bad = 0;
    for _ in 0..50 {
        let (pi, tab) = sample::random_positive_vector(3, 6, 4, &mut rng).unwrap();
        let rep = diameter_check(&pi).unwrap();
        bad += usize::from(!(rep.pk_weight == tab.weight() && rep.within_dilate && rep.extent_within_weight));
    }
    ok &= bad == 0;
    details.push(format!("50 random vectors of weight <= 4: {bad} violations"));

    let pi = weight_four_3_12();
    let w = weight_report(&pi).unwrap();
    let weight_ok = w.agree && w.pk_weight == int(4);
    ok &= weight_ok;
    details.push(format!("(3,12) wt_PK {} wt_NC {} agree {}", w.pk_weight, w.nc_weight, w.agree));
    let opts = VertexOptions { budget: Some(Duration::from_secs(600)), edges: false };
    match diameter_check_with(&pi, &opts) {
        Ok(rep) => {
            let good = rep.within_dilate && rep.extent_within_weight;
            ok &= good;
            details.push(format!(
                "{} vertices, spread {} extent {} <= 4: {good}",
                rep.vertices.len(),
                rep.max_coordinate_spread,
                rep.max_vertex_extent
            ));
        }
        Err(Error::BudgetExceeded(b)) => details.push(format!("vertex enumeration skipped: exceeded {b:?} budget")),
        Err(e) => {
            ok = false;
            details.push(format!("vertex enumeration failed: {e}"));
        }
    }
    outcome(ok, details.join("; "))
}

fn c11() -> Outcome {
    timed(Duration::from_secs(5), || {
        // Monomials x_{1,2}x_{2,1}x_{2,3}, ... as sorted edge lists.
        let expected: BTreeSet<Vec<(usize, usize)>> = [
            [(1, 2), (2, 1), (2, 3)],
            [(1, 3), (2, 1), (2, 3)],
            [(1, 3), (2, 2), (2, 3)],
            [(1, 2), (2, 1), (2, 4)],
            [(1, 3), (2, 1), (2, 4)],
            [(1, 4), (2, 1), (2, 4)],
            [(1, 3), (2, 2), (2, 4)],
            [(1, 4), (2, 2), (2, 4)],
        ]
        .iter()
        .map(|m| m.to_vec())
        .collect();
        let ours: BTreeSet<Vec<(usize, usize)>> = enumerate_path_families(&s(7, &[3, 5, 7]))
            .unwrap()
            .iter()
            .map(|f| {
                let mut e = f.edges();
                e.sort();
                e
            })
            .collect();
        let fams = enumerate_path_families(&s(10, &[4, 6, 8, 10])).unwrap();
        let degrees: BTreeSet<usize> = fams.iter().map(|f| f.edges().len()).collect();
        let ok = ours == expected && fams.len() == 64 && degrees == BTreeSet::from([6]);
        outcome(ok, format!("p357 families match={}; p4,6,8,10 families {} degrees {degrees:?}", ours == expected, fams.len()))
    })
}

fn c12() -> Outcome {
    let keep = [1, 3, 5, 6, 7, 8];
    let check = |from: &[usize], to: &[usize]| {
        let restricted = restrict_to_support(&planar_basis_vector(&s(10, from)).unwrap(), &keep).unwrap();
        equivalent_mod_lineality(&restricted, &planar_basis_vector(&s(6, to)).unwrap()).unwrap()
    };
    let a = check(&[3, 6, 9], &[2, 4, 6]);
    let b = check(&[4, 9, 10], &[2, 5, 6]);
    outcome(a && b, format!("H369 -> H246: {a}; H4910 -> H256: {b}"))
}

fn c13() -> Outcome {
    timed(Duration::from_secs(120), || {
        let rep = run_suite(3, 6, 13, 100).unwrap();
        let names = ["boundary_projection", "necklace_cyc_gap", "noncrossing_component_partitions", "basis_exchange", "rho_representative_independence"];
        let mut ok = true;
        let mut details = Vec::new();
        for name in names {
            match rep.check(name) {
                Some(c) => {
                    ok &= c.passed() && c.samples >= 100;
                    details.push(format!("{name} {}/{}", c.samples - c.failures, c.samples));
                }
                None => {
                    ok = false;
                    details.push(format!("{name} missing"));
                }
            }
        }
        outcome(ok, details.join("; "))
    })
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 13] =
        [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9), (10, c10), (11, c11), (12, c12), (13, c13)];
    let mut failed = Vec::new();
    for (id, f) in criteria {
        let o = f();
        println!("criterion {id}: {} {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        if !o.passed {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
