//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pbcsynth::astar::{bfs_distances, optimal_synthesize};
use pbcsynth::cli;
use pbcsynth::gf2::{self, BitMatrix};
use pbcsynth::involution::{decompose_two_involutions, is_involution, normal_form};
use pbcsynth::oracle::dense::{self, dense_of_gate, dense_of_tableau, pauli_matrix};
use pbcsynth::oracle::{all_branches, run_fanout};
use pbcsynth::pauli::{commutes, PauliObservable};
use pbcsynth::schedule::{check_layers, compile, emit_fanout_variant, MeasurementSchedule};
use pbcsynth::synthesis::{realize, synthesize, verify_synthesis, Gate, SynthesisResult};
use pbcsynth::tableau::{random_clifford, CliffordTableau};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn unsigned_paulis(n: usize) -> Vec<PauliObservable> {
    (1u64..1 << (2 * n))
        .map(|c| {
            let v = gf2::BitVector::from_u64(2 * n, c);
            PauliObservable::from_symplectic_vector(&v, false)
        })
        .collect()
}

fn end_to_end() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut slowest = Duration::ZERO;
    let mut cases: Vec<(usize, u64)> = Vec::new();
    for n in 1..=10 {
        cases.extend((0..200).map(|i| (n, 1000 * n as u64 + i)));
    }
    cases.extend((0..50).map(|i| (32, 32_000 + i)));
    for (n, seed) in cases {
        let start = Instant::now();
        let c = random_clifford(n, seed).unwrap();
        let res = synthesize(&c).and_then(|r| {
            let s = compile(&r, &c)?;
            Ok((r, s))
        });
        let elapsed = start.elapsed();
        if n == 32 {
            slowest = slowest.max(elapsed);
        }
        checked += 1;
        match res {
            Ok((r, s)) => {
                let report = check_layers(&s);
                if !verify_synthesis(&r, &c) || !report.passed() || s.measurements.len() > 2 * n {
                    failures.push(format!("n={n} seed={seed}: {report}"));
                }
            }
            Err(e) => failures.push(format!("n={n} seed={seed}: {e}")),
        }
    }
    let fast = slowest < Duration::from_secs(1);
    outcome(
        failures.is_empty() && fast,
        format!(
            "{checked} instances, {} failures, slowest n=32 instance {:.1} ms{}",
            failures.len(),
            slowest.as_secs_f64() * 1e3,
            failures
                .first()
                .map(|f| format!("; first: {f}"))
                .unwrap_or_default()
        ),
    )
}

fn res_values() -> Outcome {
    let ms: BitMatrix = "2 2\n11\n01\n".parse().unwrap();
    let mcz: BitMatrix = "4 4\n1001\n0110\n0010\n0001\n".parse().unwrap();
    let s_tab = CliffordTableau::identity(1)
        .unwrap()
        .apply_gen_s(&"+Z".parse().unwrap())
        .unwrap();
    let cz_tab = CliffordTableau::identity(2)
        .unwrap()
        .apply_gen_cz(&"+ZI".parse().unwrap(), &"+IZ".parse().unwrap())
        .unwrap();
    let values = [
        gf2::res(&BitMatrix::identity(4)).unwrap(),
        gf2::res(&ms).unwrap(),
        gf2::res(&mcz).unwrap(),
    ];
    let matrices_match = s_tab.to_symplectic() == ms && cz_tab.to_symplectic() == mcz;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0;
    for i in 0..10_000 {
        let n = 1 + i % 8;
        let a = gf2::random_symplectic(n, &mut rng);
        let b = gf2::random_symplectic(n, &mut rng);
        let ab = a.multiply(&b).unwrap();
        if gf2::res(&ab).unwrap() > gf2::res(&a).unwrap() + gf2::res(&b).unwrap() {
            violations += 1;
        }
    }
    outcome(
        values == [0, 1, 2] && matrices_match && violations == 0,
        format!(
            "res(I), res(M_S), res(M_CZ) = {values:?}; gate tableaux give the same matrices: {matrices_match}; \
             10000 subadditivity pairs, {violations} violations"
        ),
    )
}

fn involutions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bad = Vec::new();
    for i in 0..1000 {
        let n = 1 + i % 16;
        let m = gf2::random_symplectic(n, &mut rng);
        match decompose_two_involutions(&m) {
            Ok((a, b)) => {
                let ok = a.multiply(&a).unwrap().is_identity()
                    && b.multiply(&b).unwrap().is_identity()
                    && a.multiply(&b).unwrap() == m
                    && gf2::is_symplectic(&a).unwrap()
                    && gf2::is_symplectic(&b).unwrap();
                if !ok {
                    bad.push(format!("case {i} (n={n}): postcondition"));
                }
            }
            Err(e) => bad.push(format!("case {i} (n={n}): {e}")),
        }
    }
    let mut counts = [0usize; 2];
    for n in 1..=2 {
        for r in gf2::enumerate_symplectic(n).unwrap() {
            if !is_involution(&r) {
                continue;
            }
            counts[n - 1] += 1;
            match normal_form(&r) {
                Ok(nf) => {
                    let back =
                        nf.f.multiply(&nf.block_form())
                            .unwrap()
                            .multiply(&gf2::symplectic_inverse(&nf.f))
                            .unwrap();
                    if back != r || !gf2::is_symplectic(&nf.f).unwrap() {
                        bad.push(format!("normal form of\n{}", r.to_text()));
                    }
                }
                Err(e) => bad.push(format!("normal form: {e}")),
            }
        }
    }
    // Involutions of S3 and S6, including the identity.
    let expected = [4, 76];
    outcome(
        bad.is_empty() && counts == expected,
        format!(
            "1000 decompositions up to n=16; involutions in Sp(2), Sp(4): {counts:?} (expected {expected:?}); {} failures{}",
            bad.len(),
            bad.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

fn astar_optimality() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut below_bound = 0;
    let mut total = 0;
    let mut sizes = Vec::new();
    for n in 1..=2 {
        let dist: HashMap<BitMatrix, usize> = bfs_distances(n).unwrap();
        sizes.push(dist.len());
        for m in gf2::enumerate_symplectic(n).unwrap() {
            total += 1;
            let c = CliffordTableau::from_symplectic(&m).unwrap();
            let r = optimal_synthesize(&c, 4 * n).unwrap();
            if realize(n, &r.gates, &r.correction).unwrap() != c {
                mismatches.push(format!("replay failed for\n{}", m.to_text()));
            }
            if r.cost != dist[&m] {
                mismatches.push(format!(
                    "A* {} vs exhaustive {} for\n{}",
                    r.cost,
                    dist[&m],
                    m.to_text()
                ));
            }
            if r.cost < gf2::res(&m).unwrap() {
                below_bound += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches.is_empty() && below_bound == 0 && sizes == [6, 720] && total == 726 && elapsed < Duration::from_secs(600),
        format!(
            "{total} elements (group orders {sizes:?}), {} mismatches, {below_bound} below res, {:.1} s",
            mismatches.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn dense_of_result(r: &SynthesisResult) -> dense::DenseUnitary {
    let d = 1 << r.n;
    let mut u = dense::DenseUnitary::identity(d);
    for g in r.gates() {
        u = dense_of_gate(g).unwrap().mul(&u);
    }
    pauli_matrix(&r.correction).mul(&u)
}

fn dense_agreement() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..50u64 {
        let n = 1 + (i % 3) as usize;
        let c = random_clifford(n, 5000 + i).unwrap();
        let r = synthesize(&c).unwrap();
        let dev = dense_of_result(&r).phase_deviation(&dense_of_tableau(&c).unwrap());
        worst = worst.max(dev);
    }
    let mut rule_failures = 0;
    let mut rules = 0;
    for n in 1..=2 {
        let paulis = unsigned_paulis(n);
        let mut probes: Vec<PauliObservable> = (0..n)
            .flat_map(|j| [PauliObservable::z_gen(n, j), PauliObservable::x_gen(n, j)])
            .collect();
        probes.extend(paulis.iter().cloned());
        let mut gates = Vec::new();
        for p in &paulis {
            for sign in [false, true] {
                let mut p = p.clone();
                p.sign = sign;
                gates.push(Gate::GenS(p));
            }
        }
        for (i, p) in paulis.iter().enumerate() {
            for q in &paulis[i + 1..] {
                if commutes(p, q).unwrap() {
                    for (sp, sq) in [(false, false), (false, true), (true, false), (true, true)] {
                        let (mut p, mut q) = (p.clone(), q.clone());
                        p.sign = sp;
                        q.sign = sq;
                        gates.push(Gate::GenCZ(p, q));
                    }
                }
            }
        }
        for g in gates {
            rules += 1;
            let t = g.apply_to(&CliffordTableau::identity(n).unwrap()).unwrap();
            if !dense::agrees_on_conjugation(&dense_of_gate(&g).unwrap(), &t, &probes) {
                rule_failures += 1;
            }
        }
    }
    outcome(
        worst < dense::TOLERANCE && rule_failures == 0,
        format!(
            "50 syntheses, worst phase-aligned deviation {worst:.2e}; {rules} gate rules, {rule_failures} mismatches"
        ),
    )
}

fn single_gate(n: usize, g: Gate) -> (SynthesisResult, CliffordTableau) {
    let t = g.apply_to(&CliffordTableau::identity(n).unwrap()).unwrap();
    let r = SynthesisResult {
        n,
        s1: vec![g],
        s2: vec![],
        correction: PauliObservable::identity(n),
    };
    (r, t)
}

/// Returns (joint-outcome patterns, total branches) or a failure message.
fn check_gadget(r: &SynthesisResult, t: &CliffordTableau) -> Result<(usize, usize), String> {
    let s = compile(r, t).map_err(|e| e.to_string())?;
    let text = s.to_string();
    let s: MeasurementSchedule = text.parse().map_err(|e: pbcsynth::Error| e.to_string())?;
    let branches = all_branches(&s).map_err(|e| e.to_string())?;
    let k = s.measurements.len();
    let mut joint = BTreeSet::new();
    for (o, u) in &branches {
        if u != t {
            return Err(format!("branch {o} of {} gives\n{}", r.s1[0], u.to_text()));
        }
        joint.insert(o.slice(0, k).to_string());
    }
    let f = emit_fanout_variant(r, t).map_err(|e| e.to_string())?;
    let m = f.n_outcomes();
    for b in 0u32..1 << m {
        let branch: Vec<bool> = (0..m).map(|i| b >> i & 1 == 1).collect();
        if run_fanout(&f, &branch).map_err(|e| e.to_string())? != *t {
            return Err(format!("fanout branch {b} of {}", r.s1[0]));
        }
    }
    Ok((joint.len(), branches.len()))
}

fn gadgets() -> Outcome {
    let mut failures = Vec::new();
    let mut s_cases = 0;
    let mut cz_cases = 0;
    let mut shapes = BTreeSet::new();
    for n in 1..=3 {
        let paulis = unsigned_paulis(n);
        for p in &paulis {
            for sign in [false, true] {
                let mut p = p.clone();
                p.sign = sign;
                let (r, t) = single_gate(n, Gate::GenS(p));
                s_cases += 1;
                match check_gadget(&r, &t) {
                    Ok(shape) => {
                        shapes.insert(("S", shape));
                    }
                    Err(e) => failures.push(e),
                }
            }
        }
        for (i, p) in paulis.iter().enumerate() {
            for q in &paulis[i + 1..] {
                if !commutes(p, q).unwrap() {
                    continue;
                }
                let (r, t) = single_gate(n, Gate::GenCZ(p.clone(), q.negated()));
                cz_cases += 1;
                match check_gadget(&r, &t) {
                    Ok(shape) => {
                        shapes.insert(("CZ", shape));
                    }
                    Err(e) => failures.push(e),
                }
            }
        }
    }
    let expected: BTreeSet<_> = [("CZ", (4, 16)), ("S", (2, 4))].into_iter().collect();
    outcome(
        failures.is_empty() && shapes == expected,
        format!(
            "{s_cases} GenS and {cz_cases} GenCZ gadgets on n<=3; (joint-outcome patterns, branches incl. read-outs): {shapes:?}; {} failures{}",
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = |s: &str| dir.path().join(s).to_str().unwrap().to_string();
    let call = |args: &[&str]| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(
            std::iter::once("pbcsynth").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8_lossy(&err).into_owned())
    };
    let mut problems = Vec::new();
    for run in 0..2 {
        let tag = |s: &str| path(&format!("{s}{run}"));
        let steps: [Vec<String>; 3] = [
            vec!["random", "--n", "6", "--seed", "11", "--out", &tag("c")]
                .into_iter()
                .map(String::from)
                .collect(),
            vec![
                "synth",
                "--in",
                &tag("c"),
                "--out",
                &tag("seq"),
                "--schedule",
                &tag("sch"),
            ]
            .into_iter()
            .map(String::from)
            .collect(),
            vec![
                "bench",
                "--n",
                "8",
                "--count",
                "64",
                "--seed",
                "5",
                "--report",
                &tag("bench"),
            ]
            .into_iter()
            .map(String::from)
            .collect(),
        ];
        for args in &steps {
            let args: Vec<&str> = args.iter().map(String::as_str).collect();
            let (code, err) = call(&args);
            if code != 0 {
                problems.push(format!("{} exited {code}: {err}", args[0]));
            }
        }
    }
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| cli::bench_report(8, 64, 5, false).unwrap());
    let mut identical = Vec::new();
    for f in ["c", "seq", "sch", "bench"] {
        let a = fs::read(path(&format!("{f}0")));
        let b = fs::read(path(&format!("{f}1")));
        identical.push(matches!((&a, &b), (Ok(a), Ok(b)) if a == b && !a.is_empty()));
    }
    let threads_agree = fs::read_to_string(path("bench0")).is_ok_and(|t| t == single);
    outcome(
        problems.is_empty() && identical.iter().all(|&x| x) && threads_agree,
        format!(
            "tableau, sequence, schedule, bench identical across runs: {identical:?}; bench identical on one thread: {threads_agree}{}",
            problems.first().map(|p| format!("; {p}")).unwrap_or_default()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("end-to-end synthesis", end_to_end),
        ("res values and subadditivity", res_values),
        ("involution machinery", involutions),
        ("A* optimality", astar_optimality),
        ("dense oracle agreement", dense_agreement),
        ("gadget branches", gadgets),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        if !o.ok {
            failed += 1;
        }
        println!(
            "[{}] criterion {} {name}: {} ({:.1} s)",
            if o.ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
