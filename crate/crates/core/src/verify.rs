//! Seeded random self-checks: the truncation pipeline, table symmetries and
//! the hull/edge oracles.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::hodge::{
    ic_stalk_weight_table, link_weight_table, replay_main_pipeline, stalk_cohomology_dims, vp_ic_stalk,
    LaurentPolynomialZ,
};
use crate::monodromy::{invariant_dimension_n0, milnor_weight_table, Eigenvalue, JordanBlockData};
use crate::newton::{newton_boundary, newton_polyhedron, pi_f};
use crate::oracle::{brute_hull_vertices, brute_pi_f};
use crate::poly::ExponentVector;

pub const PERTURBATIONS_PER_DATASET: usize = 20;

const EIGENVALUES: [(i64, u64); 8] = [(0, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 6), (5, 6)];

/// Jordan data obeying the size bounds, with a handful of eigenvalues.
pub fn random_jordan<R: Rng>(rng: &mut R, n: usize) -> JordanBlockData {
    let mut j = JordanBlockData::new(n).expect("n >= 1");
    let picks = rng.random_range(0..=4);
    for _ in 0..picks {
        let (k, m) = EIGENVALUES[rng.random_range(0..EIGENVALUES.len())];
        let lambda = Eigenvalue::new(k, m).expect("m > 0");
        let bound = if lambda.is_one() { n - 1 } else { n };
        if bound == 0 {
            continue;
        }
        let size = rng.random_range(1..=bound);
        j.add(lambda, size, rng.random_range(1..=3)).expect("size >= 1");
    }
    j
}

/// A Laurent polynomial symmetric about `center`.
pub fn random_symmetric<R: Rng>(rng: &mut R, center: i64) -> LaurentPolynomialZ {
    let mut p = LaurentPolynomialZ::zero();
    let span = rng.random_range(0..=center + 3);
    for d in center - span..=center {
        let c = rng.random_range(-3..=3);
        p.add_term(d, c);
        if d != center {
            p.add_term(2 * center - d, c);
        }
    }
    p
}

/// Up to `max_points` distinct exponent vectors in `[0, max_coord]^n`,
/// excluding the origin.
pub fn random_support<R: Rng>(rng: &mut R, n: usize, max_points: usize, max_coord: i64) -> Vec<ExponentVector> {
    let available = (max_coord + 1).pow(n as u32) - 1;
    let count = rng.random_range(1..=max_points.min(available as usize));
    let mut points = BTreeSet::new();
    while points.len() < count {
        let v: Vec<i64> = (0..n).map(|_| rng.random_range(0..=max_coord)).collect();
        if v.iter().any(|&a| a > 0) {
            points.insert(ExponentVector::new(v).expect("nonnegative"));
        }
    }
    points.into_iter().collect()
}

/// A convenient support whose boundary is the simplex `v·α = C`: the axis
/// points `(C/v_i) e_i`, some lattice points of the hyperplane and some
/// points above it.
pub fn random_flat_support<R: Rng>(rng: &mut R, n: usize) -> Vec<ExponentVector> {
    let axis: Vec<i64> = (0..n).map(|_| rng.random_range(2..=6)).collect();
    let c: i64 = axis.iter().fold(1, |acc, &a| num_integer::lcm(acc, a));
    let v: Vec<i64> = axis.iter().map(|a| c / a).collect();
    let mut points: BTreeSet<ExponentVector> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = axis[i];
            ExponentVector::new(e).expect("nonnegative")
        })
        .collect();
    let extra = rng.random_range(0..=6);
    let max = *axis.iter().max().unwrap();
    for _ in 0..extra * 20 {
        if points.len() >= n + extra {
            break;
        }
        let e: Vec<i64> = (0..n).map(|_| rng.random_range(0..=max)).collect();
        let value: i64 = e.iter().zip(&v).map(|(a, b)| a * b).sum();
        if value >= c {
            points.insert(ExponentVector::new(e).expect("nonnegative"));
        }
    }
    let mut out: Vec<ExponentVector> = points.into_iter().collect();
    out.shuffle(rng);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub seed: u64,
    pub iteration: usize,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jordan: Option<JordanBlockData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<LaurentPolynomialZ>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<ExponentVector>>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub iterations: usize,
    pub pipeline_ok: usize,
    pub tables_ok: usize,
    pub geometry_ok: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("{}/{} pipeline identities hold", self.pipeline_ok, self.iterations),
            format!("{}/{} table symmetry checks hold", self.tables_ok, self.iterations),
            format!("{}/{} geometry oracle checks agree", self.geometry_ok, self.iterations),
        ]
    }
}

struct Run {
    seed: u64,
    iteration: usize,
    failures: Vec<Counterexample>,
}

impl Run {
    fn fail(&mut self, check: &str, expected: String, actual: String) -> Counterexample {
        Counterexample {
            seed: self.seed,
            iteration: self.iteration,
            check: check.into(),
            jordan: None,
            perturbation: None,
            support: None,
            expected,
            actual,
        }
    }
}

fn check_pipeline(run: &mut Run, rng: &mut ChaCha8Rng, j: &JordanBlockData) -> bool {
    let n = j.n();
    let target = vp_ic_stalk(n, j).expect("valid data");
    for _ in 0..PERTURBATIONS_PER_DATASET {
        let s = random_symmetric(rng, n as i64 - 1);
        let got = replay_main_pipeline(n, j, Some(&s)).expect("symmetric by construction");
        if got != target {
            let mut c = run.fail("pipeline", target.to_string(), got.to_string());
            c.jordan = Some(j.clone());
            c.perturbation = Some(s);
            run.failures.push(c);
            return false;
        }
    }
    true
}

fn check_tables(run: &mut Run, j: &JordanBlockData) -> bool {
    let n = j.n();
    let ni = n as i64;
    let mut problems = Vec::new();
    let ic = ic_stalk_weight_table(n, j).expect("valid data");
    let n0 = invariant_dimension_n0(j);
    let direct: u64 = (1..n).map(|s| j.unipotent(s)).sum();
    let stalk = stalk_cohomology_dims(n, n0).expect("n >= 3");
    if ic.total(ni - 2) != direct || stalk[&(ni - 2)] != direct {
        problems.push(format!("N0: table {} vs blocks {direct} vs stalk {}", ic.total(ni - 2), stalk[&(ni - 2)]));
    }
    if ic.iter().any(|e| e.dim > 0 && e.r > e.k) {
        problems.push("IC stalk has weight above degree".into());
    }
    let link = link_weight_table(n, j).expect("valid data");
    if link.iter().any(|e| link.get(2 * ni - 3 - e.k, 2 * (ni - 1) - e.r) != e.dim) {
        problems.push("link duality".into());
    }
    let mut eigenvalues = j.eigenvalues();
    eigenvalues.push(Eigenvalue::ONE);
    for lambda in eigenvalues {
        let table = milnor_weight_table(j, lambda).expect("valid data");
        let center = if lambda.is_one() { ni } else { ni - 1 };
        if table.iter().any(|(&r, &d)| table.get(&(2 * center - r)).copied().unwrap_or(0) != d) {
            problems.push(format!("Milnor table for {lambda} is not symmetric about {center}"));
        }
    }
    if problems.is_empty() {
        return true;
    }
    let mut c = run.fail("tables", "all symmetries".into(), problems.join("; "));
    c.jordan = Some(j.clone());
    run.failures.push(c);
    false
}

fn check_geometry(run: &mut Run, rng: &mut ChaCha8Rng) -> bool {
    let n = rng.random_range(1..=3);
    let supp = random_support(rng, n, 10, 6);
    let polyhedron = newton_polyhedron(&supp, n).expect("nonempty support");
    let fast: BTreeSet<ExponentVector> = polyhedron.vertices().iter().cloned().collect();
    let slow = brute_hull_vertices(&supp, n);
    let boundary = newton_boundary(&polyhedron);
    let bound = supp.iter().flat_map(|p| p.entries().iter().copied()).max().unwrap_or(1).max(1);
    let (a, b) = (pi_f(&boundary), brute_pi_f(&boundary, bound));
    if fast == slow && a == b {
        return true;
    }
    let show = |s: &BTreeSet<ExponentVector>| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let mut c = run.fail(
        "geometry",
        format!("vertices {} pi_f {b}", show(&slow)),
        format!("vertices {} pi_f {a}", show(&fast)),
    );
    c.support = Some(supp);
    run.failures.push(c);
    false
}

/// Runs `iterations` rounds; each draws one Jordan dataset (n in 3..=6) with
/// its perturbations and one random support.
pub fn run_verify(seed: u64, iterations: usize) -> VerifySummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = Run {
        seed,
        iteration: 0,
        failures: Vec::new(),
    };
    let (mut pipeline_ok, mut tables_ok, mut geometry_ok) = (0, 0, 0);
    for iteration in 0..iterations {
        run.iteration = iteration;
        let n = rng.random_range(3..=6);
        let j = random_jordan(&mut rng, n);
        pipeline_ok += check_pipeline(&mut run, &mut rng, &j) as usize;
        tables_ok += check_tables(&mut run, &j) as usize;
        geometry_ok += check_geometry(&mut run, &mut rng) as usize;
    }
    VerifySummary {
        seed,
        iterations,
        pipeline_ok,
        tables_ok,
        geometry_ok,
        counterexamples: run.failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::validate_jordan_data;
    use crate::newton::is_flat;

    #[test]
    fn generators_respect_preconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.random_range(3..=6);
            assert!(validate_jordan_data(&random_jordan(&mut rng, n)).is_ok());
            assert!(random_symmetric(&mut rng, n as i64 - 1).is_symmetric(n as i64 - 1));
            let flat = random_flat_support(&mut rng, 3);
            let b = newton_boundary(&newton_polyhedron(&flat, 3).unwrap());
            assert!(b.is_convenient() && is_flat(&b).is_some());
        }
    }

    #[test]
    fn default_run_passes_and_is_reproducible() {
        let a = run_verify(0, 50);
        assert!(a.passed(), "{:?}", a.counterexamples);
        assert_eq!(a.lines()[0], "50/50 pipeline identities hold");
        assert_eq!(a, run_verify(0, 50));
        let empty = run_verify(3, 0);
        assert!(empty.passed());
        assert_eq!(empty.lines()[0], "0/0 pipeline identities hold");
    }
}
