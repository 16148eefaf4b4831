//! Duality matrices and the seeded invariant suite behind `verify`.

use crate::combinat::{check_dims, is_noncrossing_partition, noncyclic_subsets, weakly_separated, KSubset};
use crate::error::Result;
use crate::ladder::{rho, tropical_pluecker, LadderPoint};
use crate::ncfan::{d1_project, decompose_by_walk, nc_decompose, psi, t_vector, NoncrossingFan, EXHAUSTIVE_MAX_DIM};
use crate::planar::{corank_vector, planar_basis_vector, CrossRatios, PlanarBasis};
use crate::pluecker::{equivalent_mod_lineality, face_restrict_one, is_positive_tropical, PlueckerVector};
use crate::rational::{frac, int, serde_str, Rational};
use crate::sample::{self, SampleRng};
use crate::troplin::{argmin_matroid, diameter_check_with, VertexOptions};
use crate::weight::{bridge, cyc_set, gap_set, pk_weight};
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityMismatch {
    #[serde(serialize_with = "ser_subset")]
    pub j: KSubset,
    #[serde(serialize_with = "ser_subset")]
    pub j_prime: KSubset,
    #[serde(with = "serde_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub k: usize,
    pub n: usize,
    pub size: usize,
    pub identity: bool,
    pub mismatches: Vec<DualityMismatch>,
    /// Row `J`, column `J'`, noncyclic subsets in lexicographic order.
    #[serde(with = "serde_str::vecvec")]
    pub matrix: Vec<Vec<Rational>>,
}

fn ser_subset<S: serde::Serializer>(s: &KSubset, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&s.to_string())
}

fn duality_matrix(k: usize, n: usize, column: impl Fn(&KSubset) -> Result<PlueckerVector>) -> Result<DualityReport> {
    check_dims(k, n)?;
    let subs = noncyclic_subsets(n, k);
    let cr = CrossRatios::get(k, n)?;
    let cols: Vec<PlueckerVector> = subs.iter().map(&column).collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    let matrix: Vec<Vec<Rational>> = subs
        .iter()
        .map(|j| {
            cols.iter()
                .zip(&subs)
                .map(|(c, jp)| {
                    let v = cr.of(j).eval(c);
                    let want = if j == jp { Rational::one() } else { Rational::zero() };
                    if v != want {
                        mismatches.push(DualityMismatch { j: *j, j_prime: *jp, value: v });
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(DualityReport { k, n, size: subs.len(), identity: mismatches.is_empty(), mismatches, matrix })
}

/// `[u^t_J(ρ(𝔱_{J'}))]` over noncyclic `J, J'`.
pub fn duality_check(k: usize, n: usize) -> Result<DualityReport> {
    duality_matrix(k, n, |j| rho(&t_vector(j)?))
}

/// `[u^t_J(ℌ_{J'})]` over noncyclic `J, J'`.
pub fn planar_duality_check(k: usize, n: usize) -> Result<DualityReport> {
    let basis = PlanarBasis::get(k, n)?;
    duality_matrix(k, n, |j| Ok(basis.vector(j).clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub samples: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Tally {
    name: &'static str,
    samples: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, samples: 0, failures: 0, first: None }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(detail());
            }
        }
    }

    fn done(self) -> CheckResult {
        CheckResult { name: self.name.into(), samples: self.samples, failures: self.failures, first_failure: self.first }
    }
}

/// Runs every invariant at `(k, n)` with `samples` seeded random inputs per
/// randomized check.
pub fn run_suite(k: usize, n: usize, seed: u64, samples: usize) -> Result<SuiteReport> {
    check_dims(k, n)?;
    let mut rng = sample::rng(seed);
    let mut checks = Vec::new();

    for (name, rep) in [("duality", duality_check(k, n)?), ("planar_duality", planar_duality_check(k, n)?)] {
        let mut t = Tally::new(name);
        t.samples = rep.size * rep.size;
        t.failures = rep.mismatches.len();
        t.first = rep.mismatches.first().map(|m| format!("u_{{{}}} at {{{}}} = {}", m.j, m.j_prime, m.value));
        checks.push(t.done());
    }

    let subs = noncyclic_subsets(n, k);
    let mut h_norm = Tally::new("h_normalization");
    let mut corank = Tally::new("corank_equals_planar_basis");
    for j in &subs {
        let r = rho(&t_vector(j)?)?;
        h_norm.record(bridge(&r).is_one(), || format!("H(t_{{{j}}}) = {}", bridge(&r)));
        let ok = equivalent_mod_lineality(&corank_vector(j)?, &planar_basis_vector(j)?)?;
        corank.record(ok, || format!("corank({{{j}}}) differs from H_{{{j}}}"));
    }
    checks.push(h_norm.done());
    checks.push(corank.done());

    let mut ws = Tally::new("weak_separation_positivity");
    let basis = PlanarBasis::get(k, n)?;
    for (a, i) in subs.iter().enumerate() {
        for j in &subs[a + 1..] {
            let pos = is_positive_tropical(&(basis.vector(i) + basis.vector(j))).is_positive();
            let sep = weakly_separated(i, j)?;
            ws.record(pos == sep, || format!("H_{{{i}}} + H_{{{j}}}: positive {pos}, weakly separated {sep}"));
        }
    }
    checks.push(ws.done());

    checks.extend(fan_checks(k, n, samples, &mut rng)?);
    checks.extend(rho_checks(k, n, samples, &mut rng)?);
    checks.extend(complex_checks(k, n, samples, &mut rng)?);

    let passed = checks.iter().all(CheckResult::passed);
    Ok(SuiteReport { k, n, seed, passed, checks })
}

fn fan_checks(k: usize, n: usize, samples: usize, rng: &mut SampleRng) -> Result<Vec<CheckResult>> {
    let dim = (k - 1) * (n - k - 1);
    let mut dec = Tally::new("fan_decomposition");
    let mut unimod = Tally::new("fan_unimodularity");
    let fan = if dim <= EXHAUSTIVE_MAX_DIM { Some(NoncrossingFan::get(k, n)?) } else { None };
    if let Some(f) = &fan {
        for c in &f.cones {
            let d = c.determinant;
            unimod.record(d == int(1) || d == int(-1), || format!("cone determinant {d}"));
        }
    }
    for s in 0..samples {
        let t = if s % 2 == 0 { sample::random_integer_tpoint(k, n, 5, rng)? } else { sample::random_rational_tpoint(k, n, rng)? };
        let ok = match nc_decompose(&t) {
            Ok(tab) => {
                let integral = !t.is_integral() || tab.entries.iter().all(|e| e.multiplicity.is_integer());
                let back = tab.to_tpoint()? == t;
                // The walk and the exhaustive scan must agree when both are available.
                let same = fan.is_none() || decompose_by_walk(&t).map(|w| w == tab).unwrap_or(false);
                integral && back && same
            }
            Err(_) => false,
        };
        dec.record(ok, || format!("decomposition of {:?}", t.rows()));
    }
    let mut out = vec![dec.done()];
    if fan.is_some() {
        out.push(unimod.done());
    }
    Ok(out)
}

fn rho_checks(k: usize, n: usize, samples: usize, rng: &mut SampleRng) -> Result<Vec<CheckResult>> {
    let mut weight = Tally::new("weight_equality");
    let mut positive = Tally::new("rho_positive");
    let mut inverse = Tally::new("psi_inverts_rho");
    let mut indep = Tally::new("rho_representative_independence");
    let mut proj = Tally::new("boundary_projection");
    for _ in 0..samples {
        let t = sample::random_integer_tpoint(k, n, 4, rng)?;
        let r = rho(&t)?;
        let (pk, nc, h) = (pk_weight(&r)?, nc_decompose(&t)?.weight(), bridge(&r));
        weight.record(pk == nc && nc == h, || format!("pk {pk}, nc {nc}, H {h}"));
        positive.record(is_positive_tropical(&r).is_positive(), || format!("rho of {:?} not positive", t.rows()));
        inverse.record(psi(&r)? == t, || format!("psi(rho(t)) != t for {:?}", t.rows()));

        // Shift each row by a constant; the result may differ only by lineality.
        let shifted: Vec<Vec<Rational>> = t
            .rows()
            .iter()
            .map(|row| {
                let c = frac(rng.gen_range(-9..=9), rng.gen_range(1..=3));
                row.iter().map(|v| v + c).collect()
            })
            .collect();
        let y = LadderPoint::new(k, n, shifted)?;
        let alt = PlueckerVector::from_fn(k, n, |j| tropical_pluecker(j, &y).expect("shape checked"))?;
        indep.record(equivalent_mod_lineality(&alt, &r)?, || format!("row shift changes rho at {:?}", t.rows()));

        if k >= 3 {
            let pi = sample::random_pluecker_vector(k, n, 6, rng)?;
            let lhs = psi(&face_restrict_one(&pi, 1)?)?;
            let rhs = d1_project(&psi(&pi)?)?;
            proj.record(lhs == rhs, || format!("boundary projection fails for {:?}", pi.values()));
        }
    }
    let mut out = vec![weight.done(), positive.done(), inverse.done(), indep.done()];
    if k >= 3 {
        out.push(proj.done());
    }
    Ok(out)
}

fn complex_checks(k: usize, n: usize, samples: usize, rng: &mut SampleRng) -> Result<Vec<CheckResult>> {
    let mut necklace = Tally::new("necklace_cyc_gap");
    let mut parts = Tally::new("noncrossing_component_partitions");
    let mut exchange = Tally::new("basis_exchange");
    let mut diameter = Tally::new("diameter_bound");
    let opts = VertexOptions { budget: None, edges: false };
    for _ in 0..samples {
        let (pi, tab) = sample::random_positive_vector(k, n, 4, rng)?;
        let rep = diameter_check_with(&pi, &opts)?;
        let wt = tab.weight();
        diameter.record(rep.pk_weight == wt && rep.within_dilate && rep.extent_within_weight, || {
            format!("weight {wt}: spread {}, extent {}", rep.max_coordinate_spread, rep.max_vertex_extent)
        });
        // Probe vertices, edge midpoints and a random interior combination.
        let mut probes: Vec<Vec<Rational>> = rep.vertices.clone();
        for a in 0..rep.vertices.len() {
            for b in a + 1..rep.vertices.len() {
                probes.push(rep.vertices[a].iter().zip(&rep.vertices[b]).map(|(x, y)| (x + y) / int(2)).collect());
            }
        }
        if !rep.vertices.is_empty() {
            let w: Vec<i64> = rep.vertices.iter().map(|_| rng.gen_range(1..=5)).collect();
            let total: i64 = w.iter().sum();
            probes.push((0..n).map(|i| rep.vertices.iter().zip(&w).map(|(v, c)| v[i] * int(*c)).sum::<Rational>() / int(total)).collect());
        }
        // The bounded complex lives in the representative the vertices were computed for.
        let bal = crate::troplin::balanced_representative(&pi)?.vector;
        for x in &probes {
            let m = argmin_matroid(&bal, x)?;
            exchange.record(m.satisfies_basis_exchange(), || "argmin bases violate exchange".into());
            if !(m.is_loopless() && m.is_coloopless()) {
                continue;
            }
            let comps = m.components_partition();
            parts.record(comps.len() <= k && is_noncrossing_partition(&comps, n), || format!("components {comps:?}"));
            let nu = |s: &KSubset| bal.get(s) - s.iter().map(|i| x[i - 1]).sum::<Rational>();
            let ok = (0..n).all(|j| nu(&cyc_set(n, k, j)) >= nu(&gap_set(n, k, j)));
            necklace.record(ok, || format!("cyc < gap at {x:?}"));
        }
    }
    Ok(vec![necklace.done(), parts.done(), exchange.done(), diameter.done()])
}
