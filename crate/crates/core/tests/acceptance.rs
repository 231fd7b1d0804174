//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. All comparisons are exact (tolerance zero).

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramanujan::algebra::{int, rat};
use ramanujan::expectation::{cancellation_stats, fixed_plus_random_block_expected, node_polynomial};
use ramanujan::family::children;
use ramanujan::oracle::{brute_expected_charpoly, brute_fixed_plus_permutation, DEFAULT_CAP};
use ramanujan::walk::{build_and_certify, max_root_leq_sqrt, WalkOptions};
use ramanujan::{certify, find_leaf, BlockSpec, Matrix, NodeState, Params, Rational, UniPoly};

type P = UniPoly<Rational>;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { passed: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { passed: false, detail: detail.into() }
}

fn all_nodes(params: &Params) -> Vec<NodeState> {
    let mut out = Vec::new();
    let mut stack = vec![NodeState::root()];
    while let Some(node) = stack.pop() {
        if !node.is_leaf(params) {
            let mut kids = children(&node, params).expect("children of an inner node");
            kids.reverse();
            stack.extend(kids);
        }
        out.push(node);
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut count = 0;
    for (n, d) in [(4, 3), (6, 3)] {
        let params = Params::new(n, d).unwrap();
        let trivial = P::trivial_factor(d as u64);
        for node in all_nodes(&params) {
            let fast = match node_polynomial(&node, &params) {
                Ok(p) => &p * &trivial,
                Err(e) => return fail(format!("n={n} d={d} node {node}: {e}")),
            };
            let brute = brute_expected_charpoly(&node, &params, DEFAULT_CAP).unwrap();
            if fast != brute {
                return fail(format!("n={n} d={d} node {node}: fast {fast} vs oracle {brute}"));
            }
            count += 1;
        }
    }
    pass(format!("{count} nodes of the (4,3) and (6,3) trees match the oracle exactly"))
}

fn random_subset(rng: &mut ChaCha8Rng, m: usize, l: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, m, l).into_vec()
}

fn quadrature_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut checks = 0;
    for trial in 0..50 {
        let m = rng.gen_range(2..=5);
        let a = Matrix::from_fn(m, m, |_, _| int(rng.gen_range(0..=3)));
        for l in 2..=m {
            let block = BlockSpec::new(random_subset(&mut rng, m, l), random_subset(&mut rng, m, l)).unwrap();
            let fast = match fixed_plus_random_block_expected(&a, &block) {
                Ok(p) => p,
                Err(e) => return fail(format!("matrix {trial} ({m}x{m}), l={l}: {e}")),
            };
            let brute = brute_fixed_plus_permutation(&a, &block, DEFAULT_CAP).unwrap();
            if fast != brute {
                return fail(format!("matrix {trial} {a:?} block {block:?}: {fast} vs {brute}"));
            }
            checks += 1;
        }
    }
    pass(format!("50 random matrices, {checks} (matrix, block) pairs equal to the permutation average"))
}

fn worked_values() -> Outcome {
    let params = Params::new(4, 3).unwrap();
    let root = node_polynomial(&NodeState::root(), &params).unwrap();
    if root != P::from_i64s(&[-3, 0, 1]) {
        return fail(format!("root polynomial {root}"));
    }
    let leaf = find_leaf(&params).unwrap();
    if leaf.complete != vec![vec![0, 1], vec![0, 1], vec![1, 0]] || leaf.partial.is_some() {
        return fail(format!("leaf {leaf}"));
    }
    let graph = ramanujan::family::leaf_graph(&leaf, &params).unwrap();
    let cert = certify(&graph).unwrap();
    if cert.nontrivial_poly != Some(P::from_i64s(&[-1, 0, 1])) || cert.bound_q != 8 || !cert.passed {
        return fail(format!("certificate {:?} q={} passed={}", cert.nontrivial_poly, cert.bound_q, cert.passed));
    }
    pass("root x^2 - 3; leaf [id, id, swap]; nontrivial x^2 - 1, q = 8")
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_ramanujan")
}

fn run_build(n: usize, d: usize, jobs: usize, dir: &Path) -> Result<Duration, String> {
    let start = Instant::now();
    let status = Command::new(bin())
        .args(["build", "--n", &n.to_string(), "--d", &d.to_string(), "--jobs", &jobs.to_string(), "--trace", "--out"])
        .arg(dir)
        .status()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if status.code() != Some(0) {
        return Err(format!("build n={n} d={d} exited with {status}"));
    }
    Ok(elapsed)
}

fn transcript_violations(dir: &Path) -> (u64, u64) {
    let text = std::fs::read_to_string(dir.join("transcript.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let c = &v["cancellation"];
    (c["checked"].as_u64().unwrap(), c["violations"].as_u64().unwrap())
}

fn end_to_end(tmp: &Path, subprocess_stats: &mut (u64, u64)) -> Outcome {
    let mut cases: Vec<(usize, usize)> = [4, 6, 8, 10].iter().flat_map(|&n| [(n, 3), (n, 4)]).collect();
    cases.push((12, 3));
    let mut summary = Vec::new();
    for (n, d) in cases {
        let limit = Duration::from_secs(if (n, d) == (12, 3) { 15 * 60 } else { 5 * 60 });
        let dir = tmp.join(format!("build-{n}-{d}"));
        let elapsed = match run_build(n, d, 1, &dir) {
            Ok(t) => t,
            Err(e) => return fail(e),
        };
        if elapsed > limit {
            return fail(format!("n={n} d={d} took {elapsed:?}, limit {limit:?}"));
        }
        let out = Command::new(bin()).arg("certify").arg(dir.join("graph.json")).output().unwrap();
        if out.status.code() != Some(0) {
            return fail(format!("certify n={n} d={d} exited with {}", out.status));
        }
        let cert: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        if cert["passed"] != true || cert["q"] != 4 * (d as u64 - 1) {
            return fail(format!("certificate for n={n} d={d}: {cert}"));
        }
        let (checked, violations) = transcript_violations(&dir);
        subprocess_stats.0 += checked;
        subprocess_stats.1 += violations;
        summary.push(format!("({n},{d}) {:.1}s", elapsed.as_secs_f64()));
    }
    pass(format!("built and certified {}", summary.join(", ")))
}

fn averaging() -> Outcome {
    let params = Params::new(8, 3).unwrap();
    let opts = WalkOptions { verify_averaging: true, jobs: 1, ..WalkOptions::default() };
    match build_and_certify(&params, opts) {
        Ok((walk, cert)) if cert.passed => {
            for s in walk.stages() {
                let avg = UniPoly::average(&s.children.iter().map(|c| c.poly.clone()).collect::<Vec<_>>());
                if avg != s.poly {
                    return fail(format!("node {}: {} vs average {avg}", s.node, s.poly));
                }
            }
            pass(format!("{} expanded nodes equal the average of their children", walk.stages().len()))
        }
        Ok(_) => fail("walk finished but the leaf did not certify"),
        Err(e) => fail(e.to_string()),
    }
}

/// Exact truth of `u + sqrt(s) <= sqrt(q)` by case analysis on squares.
fn conj_pair_below(u: &Rational, s: &Rational, q: &Rational) -> bool {
    let zero = int(0);
    let t = q + u * u - s;
    let four_u2_q = int(4) * u * u * q;
    if *u >= zero {
        // sqrt(s) <= sqrt(q) - u  <=>  q >= u^2, and 2u sqrt(q) <= q + u^2 - s
        u * u <= *q && t >= zero && four_u2_q <= &t * &t
    } else {
        // sqrt(s) <= sqrt(q) + |u|  <=>  s - q - u^2 <= 2|u| sqrt(q)
        t >= zero || four_u2_q >= &t * &t
    }
}

fn rational_below(r: &Rational, q: &Rational) -> bool {
    *r <= int(0) || r * r <= *q
}

fn conj_pair(u: &Rational, s: &Rational) -> P {
    // (x - u)^2 - s, roots u +- sqrt(s)
    UniPoly::new(vec![u * u - s, int(-2) * u, int(1)])
}

fn root_test_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut equality_cases = 0;
    let mut true_count = 0;
    for case in 0..200 {
        let mut poly = P::one();
        let mut expect = true;
        // A quarter of the cases put a root exactly at sqrt(q).
        let q: u64 = if case % 4 == 1 {
            let k = rng.gen_range(1..=4u64);
            let (u, s, q) = match case % 3 {
                0 => (0, 4 * (k + 1), 4 * (k + 1)),
                // k + sqrt(k^2) = sqrt(4 k^2)
                1 => (k, k * k, 4 * k * k),
                _ => (0, 2 * k * k, 2 * k * k),
            };
            poly = conj_pair(&int(u as i64), &int(s as i64));
            equality_cases += 1;
            q
        } else if case % 2 == 0 {
            4 * rng.gen_range(1..=10)
        } else {
            rng.gen_range(1..=50)
        };
        let qr = int(q as i64);
        for _ in 0..rng.gen_range(1..=4) {
            if rng.gen_bool(0.5) {
                let r = rat(rng.gen_range(-30..=30), rng.gen_range(1..=4));
                expect &= rational_below(&r, &qr);
                poly = &poly * &UniPoly::linear_root(&r);
            } else {
                let u = rat(rng.gen_range(-8..=8), rng.gen_range(1..=3));
                let s = int(rng.gen_range(0..=40));
                expect &= conj_pair_below(&u, &s, &qr);
                poly = &poly * &conj_pair(&u, &s);
            }
        }
        let got = max_root_leq_sqrt(&poly, q);
        if got != expect {
            return fail(format!("case {case}: {poly} with q={q}: got {got}, expected {expect}"));
        }
        true_count += usize::from(expect);
    }
    pass(format!("200 polynomials decided correctly ({true_count} true, {equality_cases} with a root exactly at sqrt(q))"))
}

fn determinism(tmp: &Path) -> Outcome {
    let a = tmp.join("det-jobs1");
    let b = tmp.join("det-jobs8");
    for (dir, jobs) in [(&a, 1), (&b, 8)] {
        if let Err(e) = run_build(10, 3, jobs, dir) {
            return fail(e);
        }
    }
    for name in ["graph.json", "certificate.json"] {
        let x = std::fs::read(a.join(name)).unwrap();
        let y = std::fs::read(b.join(name)).unwrap();
        if x != y {
            return fail(format!("{name} differs between --jobs 1 and --jobs 8"));
        }
    }
    pass("graph.json and certificate.json byte-identical for --jobs 1 and --jobs 8 at (10,3)")
}

fn main() {
    let tmp = tempfile::tempdir().unwrap();
    let mut subprocess_stats = (0, 0);
    let mut results: Vec<(u32, &str, Outcome, Duration)> = Vec::new();
    let mut timed = |id: u32, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        results.push((id, name, outcome, start.elapsed()));
    };
    timed(1, "oracle equivalence", &mut oracle_equivalence);
    timed(2, "quadrature validation", &mut quadrature_validation);
    timed(3, "worked values", &mut worked_values);
    timed(4, "end-to-end construction", &mut || end_to_end(tmp.path(), &mut subprocess_stats));
    timed(5, "parent-child averaging", &mut averaging);
    timed(6, "root-test suite", &mut root_test_suite);
    timed(7, "rationality cancellation", &mut || {
        let (checked, violations) = cancellation_stats();
        let (checked, violations) = (checked + subprocess_stats.0, violations + subprocess_stats.1);
        if checked == 0 {
            fail("no tensor coefficients were checked")
        } else if violations == 0 {
            pass(format!("{checked} coefficients checked, 0 irrational or negative"))
        } else {
            fail(format!("{violations} violations among {checked} coefficients"))
        }
    });
    timed(8, "determinism", &mut || determinism(tmp.path()));

    let mut failed = 0;
    for (id, name, outcome, elapsed) in &results {
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {id}. {name}: {} ({:.1}s)", outcome.detail, elapsed.as_secs_f64());
        failed += usize::from(!outcome.passed);
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", results.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", results.len());
}
