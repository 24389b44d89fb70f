//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singhodge::hodge::{
    ic_stalk_weight_table, link_weight_table, purity_verdict, replay_main_pipeline, stalk_cohomology_dims,
    vp_ic_stalk,
};
use singhodge::monodromy::{invariant_dimension_n0, milnor_weight_table, Eigenvalue, JordanBlockData};
use singhodge::newton::{interior_vertices, is_flat, newton_boundary, newton_polyhedron, pi_f};
use singhodge::oracle::{brute_hull_vertices, brute_pi_f};
use singhodge::poly::ExponentVector;
use singhodge::report::{analyze_text, AnalyzeOptions, Count};
use singhodge::verify::{random_flat_support, random_jordan, random_support, random_symmetric};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn analyze(text: &str) -> singhodge::report::AnalysisReport {
    analyze_text(text, AnalyzeOptions::default()).expect("parses")
}

fn ev(s: &str) -> Eigenvalue {
    s.parse().unwrap()
}

/// Valid Jordan datasets covering every n in 3..=6.
fn datasets(seed: u64, count: usize) -> Vec<JordanBlockData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_jordan(&mut rng, 3 + i % 4)).collect()
}

fn criterion_1() -> Outcome {
    let fig1 = analyze("y^4+x^3");
    let fig2 = analyze("y^4+x*y+x^3");
    ensure(fig1.flat, || "y^4+x^3 reported not flat".into())?;
    ensure(!fig2.flat, || "y^4+x*y+x^3 reported flat".into())?;
    Ok("y^4+x^3 is flat, y^4+x*y+x^3 is not".into())
}

fn criterion_2() -> Outcome {
    let j = JordanBlockData::from_blocks(3, [(ev("1/2"), 3, 1)]).unwrap();
    let got = milnor_weight_table(&j, ev("1/2")).unwrap();
    let want = BTreeMap::from([(0, 1), (1, 0), (2, 1), (3, 0), (4, 1)]);
    ensure(got == want, || format!("order-2 table {got:?}"))?;
    let j = JordanBlockData::from_blocks(3, [(Eigenvalue::ONE, 2, 1)]).unwrap();
    let got = milnor_weight_table(&j, Eigenvalue::ONE).unwrap();
    let want = BTreeMap::from([(2, 1), (3, 0), (4, 1)]);
    ensure(got == want, || format!("eigenvalue-1 table {got:?}"))?;
    Ok("both Milnor rows reproduced".into())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let data = datasets(33, 240);
    let mut checks = 0;
    for j in &data {
        let n = j.n();
        let target = vp_ic_stalk(n, j).map_err(|e| e.to_string())?;
        for _ in 0..25 {
            let s = random_symmetric(&mut rng, n as i64 - 1);
            let got = replay_main_pipeline(n, j, Some(&s)).map_err(|e| e.to_string())?;
            ensure(got == target, || format!("n={n} J={} S={s}: {got} != {target}", j.to_json()))?;
            checks += 1;
        }
    }
    let ns: BTreeSet<usize> = data.iter().map(JordanBlockData::n).collect();
    ensure(ns == BTreeSet::from([3, 4, 5, 6]), || format!("dimensions covered {ns:?}"))?;
    Ok(format!("{} datasets, {checks} perturbations", data.len()))
}

fn criterion_4() -> Outcome {
    let data = datasets(44, 240);
    for j in &data {
        let n = j.n();
        let ni = n as i64;
        let table = ic_stalk_weight_table(n, j).map_err(|e| e.to_string())?;
        let from_table: u64 = table.row(ni - 2).values().sum();
        let from_blocks: u64 = (1..n).map(|s| j.unipotent(s)).sum();
        let stalk = stalk_cohomology_dims(n, invariant_dimension_n0(j)).map_err(|e| e.to_string())?[&(ni - 2)];
        ensure(from_table == from_blocks && from_blocks == stalk, || {
            format!("n={n} J={}: {from_table} / {from_blocks} / {stalk}", j.to_json())
        })?;
    }
    Ok(format!("{} datasets", data.len()))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trials = 150;
    for _ in 0..trials {
        let supp = random_flat_support(&mut rng, 3);
        let boundary = newton_boundary(&newton_polyhedron(&supp, 3).unwrap());
        let show = || supp.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        ensure(boundary.is_convenient(), || format!("not convenient: {}", show()))?;
        let flat = is_flat(&boundary).is_some();
        ensure(flat, || format!("not flat: {}", show()))?;
        let verdict = purity_verdict(3, None, Some(flat)).map_err(|e| e.to_string())?;
        ensure(verdict.pure, || format!("impure: {}", show()))?;
        ensure(pi_f(&boundary) == 0, || format!("pi_f > 0: {}", show()))?;
        ensure(interior_vertices(&boundary).is_empty(), || format!("interior vertex: {}", show()))?;
    }
    let t = analyze("x^2+y^3+z^7+x*y*z");
    ensure(t.pi_f == 1, || format!("T-type pi_f = {}", t.pi_f))?;
    let j2 = t.partial_jordan.as_ref().map(|p| p.unipotent[&2]);
    ensure(j2 == Some(Count::Known(1)), || format!("T-type J^1_2 = {j2:?}"))?;
    let pure = t.purity.as_ref().map(|p| p.pure);
    ensure(pure == Some(false), || format!("T-type purity {pure:?}"))?;
    Ok(format!("{trials} flat supports in 3 variables; T-type impure"))
}

fn criterion_6() -> Outcome {
    let r = analyze("x^2+y^2+z^2");
    let qh = r.quasi_homogeneous.as_ref().ok_or("not quasi-homogeneous")?;
    ensure(qh.weights == [1, 1, 1] && qh.degree == 2, || format!("weights {:?} degree {}", qh.weights, qh.degree))?;
    ensure(r.flat, || "not flat".into())?;
    ensure(r.purity.as_ref().is_some_and(|p| p.pure), || "not pure".into())?;
    Ok("((1,1,1), 2), flat, pure".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trials = 600;
    for _ in 0..trials {
        let n = rng.random_range(1..=3);
        let supp = random_support(&mut rng, n, 10, 6);
        let show = || supp.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        let polyhedron = newton_polyhedron(&supp, n).unwrap();
        let fast: BTreeSet<ExponentVector> = polyhedron.vertices().iter().cloned().collect();
        ensure(fast == brute_hull_vertices(&supp, n), || format!("vertices differ on {}", show()))?;
        let boundary = newton_boundary(&polyhedron);
        let bound = supp.iter().flat_map(|p| p.entries().to_vec()).max().unwrap().max(1);
        let (a, b) = (pi_f(&boundary), brute_pi_f(&boundary, bound));
        ensure(a == b, || format!("pi_f {a} vs {b} on {}", show()))?;
    }
    Ok(format!("{trials} supports"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut tables = 0;
    for i in 0..400 {
        let n = 2 + i % 5;
        let j = random_jordan(&mut rng, n);
        let ni = n as i64;
        let mut eigenvalues = j.eigenvalues();
        eigenvalues.push(Eigenvalue::ONE);
        for lambda in eigenvalues {
            let t = milnor_weight_table(&j, lambda).unwrap();
            let c = if lambda.is_one() { ni } else { ni - 1 };
            ensure(t.iter().all(|(&r, &d)| t.get(&(2 * c - r)) == Some(&d)), || {
                format!("Milnor {lambda} not symmetric about {c}: {}", j.to_json())
            })?;
            tables += 1;
        }
        let ic = ic_stalk_weight_table(n, &j).unwrap();
        ensure(ic.iter().all(|e| e.r <= e.k || e.dim == 0), || format!("IC weight above degree: {}", j.to_json()))?;
        tables += 1;
        if n >= 3 {
            let link = link_weight_table(n, &j).unwrap();
            for k in -1..=2 * ni - 2 {
                for r in -1..=2 * ni - 1 {
                    ensure(link.get(k, r) == link.get(2 * ni - 3 - k, 2 * (ni - 1) - r), || {
                        format!("link duality at ({k},{r}): {}", j.to_json())
                    })?;
                }
            }
            tables += 1;
        }
    }
    Ok(format!("{tables} tables"))
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_singhodge");
    let mut cases = 0;
    for n in 2..=6usize {
        for (eigenvalue, size) in [("0/1", n), ("1/2", n + 1), ("2/5", n + 1)] {
            let path = dir.path().join(format!("j{n}_{size}_{}.json", eigenvalue.replace('/', "_")));
            let body = format!(r#"{{"n": {n}, "blocks": [{{"eigenvalue": "{eigenvalue}", "size": {size}, "count": 1}}]}}"#);
            std::fs::write(&path, body).map_err(|e| e.to_string())?;
            let out = Command::new(bin)
                .args(["jordan", "--file"])
                .arg(&path)
                .args(["--n", &n.to_string()])
                .output()
                .map_err(|e| e.to_string())?;
            let stderr = String::from_utf8_lossy(&out.stderr);
            ensure(out.status.code() == Some(3), || format!("n={n} ({eigenvalue}, {size}) exit {:?}", out.status.code()))?;
            ensure(stderr.contains("exceeds the bound"), || format!("missing violation list: {stderr}"))?;
            cases += 1;
        }
        // the largest allowed sizes go through
        let path = dir.path().join(format!("ok{n}.json"));
        let body = format!(
            r#"{{"n": {n}, "blocks": [{{"eigenvalue": "0/1", "size": {}, "count": 1}}, {{"eigenvalue": "1/2", "size": {n}, "count": 1}}]}}"#,
            n - 1
        );
        std::fs::write(&path, body).map_err(|e| e.to_string())?;
        let out = Command::new(bin).args(["jordan", "--file"]).arg(&path).output().map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || format!("n={n} boundary sizes rejected"))?;
    }
    Ok(format!("{cases} oversized datasets rejected with exit 3"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("figure fidelity", criterion_1),
        ("Milnor table reproduction", criterion_2),
        ("main identity replay", criterion_3),
        ("N0 consistency", criterion_4),
        ("purity equivalences", criterion_5),
        ("quasi-homogeneous case", criterion_6),
        ("oracle equivalence", criterion_7),
        ("symmetry and duality", criterion_8),
        ("monodromy size gate", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria pass");
}
