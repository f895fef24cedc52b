//! Acceptance checks. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use aglrc::analysis::{self, EnumerationOptions};
use aglrc::bounds::{self, BoundFamily};
use aglrc::galois::trace_kernel;
use aglrc::lrc::local_recovery;
use aglrc::{gs_tower, hermitian, tamo_barg, Elem, FiniteField, LinearCode, SGrid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, budget_secs: u64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < budget_secs as f64, format!("took {elapsed:.2?}, budget {budget_secs}s"))
}

fn e<E: std::fmt::Debug>(err: E) -> String {
    format!("{err:?}")
}

fn tb_9_4_2() -> Result<LinearCode, String> {
    let f = Arc::new(FiniteField::prime(13).map_err(e)?);
    let reps = [1, 2, 4].map(|v| f.from_int(v));
    let gp = tamo_barg::good_poly_multiplicative(f, 2, &reps).map_err(e)?;
    tamo_barg::tb_code(&gp, 4).map_err(e)
}

/// Codeword of the q0 = 3, t = 2 code for the message (1, a, ..., a^5):
/// `(x, y, value)` as log indices, `-1` for zero.
const REFERENCE_CODEWORD: [(i64, i64, i64); 27] = [
    (-1, -1, 0), (2, -1, 3), (6, -1, 2),
    (1, 0, -1), (3, 0, 3), (4, 0, 7),
    (0, 1, 0), (5, 1, 6), (7, 1, 1),
    (1, 2, -1), (3, 2, 7), (4, 2, 3),
    (0, 3, 6), (5, 3, 4), (7, 3, 7),
    (1, 4, -1), (3, 4, 1), (4, 4, 5),
    (0, 5, 4), (5, 5, 2), (7, 5, 5),
    (1, 6, -1), (3, 6, 1), (4, 6, 5),
    (0, 7, -1), (5, 7, -1), (7, 7, -1),
];

fn criterion1() -> Check {
    let start = Instant::now();
    let code = tb_9_4_2()?;
    let report = analysis::min_distance_exhaustive(&code, EnumerationOptions::default()).map_err(e)?;
    let bound = bounds::singleton_lrc(9, 4, 2).map_err(e)? as usize;
    within(start.elapsed(), 1)?;
    ensure((code.len(), code.dimension(), code.localities()) == (9, 4, vec![2]), "wrong (n, k, r)")?;
    ensure(report.min_distance == 5 && bound == 5, format!("d = {}, bound = {bound}", report.min_distance))?;
    Ok(format!("(9,4,2) over GF(13): d = 5 = Singleton bound [{:.2?}]", start.elapsed()))
}

fn criterion2() -> Check {
    let start = Instant::now();
    let code = hermitian::code_proj_y(3, 2).map_err(e)?;
    let f = code.field().clone();
    ensure(f.modulus() == [2, 2, 1], "GF(9) not built from t^2 - t - 1")?;
    ensure(f.mul(f.primitive(), f.primitive()) == f.add(f.primitive(), Elem::ONE), "a^2 != a + 1")?;
    let msg: Vec<Elem> = (0..6).map(|k| f.alpha_pow(k)).collect();
    let word = code.encode(&msg).map_err(e)?;
    let mut matched = 0;
    for &(x, y, v) in &REFERENCE_CODEWORD {
        let label = [f.from_wire(x).map_err(e)?, f.from_wire(y).map_err(e)?];
        let pos = code.find_label(&label).ok_or(format!("point ({x},{y}) missing"))?;
        ensure(word[pos].to_wire() == v, format!("({x},{y}): got {}, want {v}", word[pos].to_wire()))?;
        matched += 1;
    }
    within(start.elapsed(), 1)?;
    Ok(format!("{matched}/27 symbols match the reference table [{:.2?}]", start.elapsed()))
}

fn criterion3() -> Check {
    let code = hermitian::code_proj_y(3, 2).map_err(e)?;
    let f = code.field().clone();
    let a = f.primitive();
    let msg: Vec<Elem> = (0..6).map(|k| f.alpha_pow(k)).collect();
    let word = code.encode(&msg).map_err(e)?;
    let pos = code.find_label(&[a, Elem::ONE]).ok_or("(a, 1) missing")?;
    let mut erased: Vec<Option<Elem>> = word.iter().copied().map(Some).collect();
    erased[pos] = None;
    let rec = local_recovery(&code, &erased, pos, 0).map_err(e)?;
    let mut set: Vec<Vec<Elem>> = rec.recovering_set.iter().map(|&i| code.labels()[i].clone()).collect();
    set.sort();
    let mut want = vec![vec![f.alpha_pow(4), Elem::ONE], vec![f.alpha_pow(3), Elem::ONE]];
    want.sort();
    ensure(set == want, format!("recovering set {set:?}"))?;
    // a x - a^2
    let expected = [f.neg(f.alpha_pow(2)), a];
    ensure(rec.interpolant.coeffs() == expected, format!("interpolant {}", rec.interpolant))?;
    ensure(rec.value == Elem::ZERO && word[pos] == Elem::ZERO, format!("value {}", rec.value))?;
    Ok(format!("f(x) = {} = a x - a^2, f(a) = 0", rec.interpolant))
}

fn criterion4() -> Check {
    const FROZEN: usize = 17;
    let start = Instant::now();
    let code = hermitian::code_proj_y(3, 2).map_err(e)?;
    let opts = EnumerationOptions { workers: 4, ..Default::default() };
    let report = analysis::min_distance_exhaustive(&code, opts).map_err(e)?;
    within(start.elapsed(), 120)?;
    ensure(report.min_distance >= 17, format!("d = {} < 17", report.min_distance))?;
    ensure(report.min_distance == FROZEN, format!("d = {} differs from frozen {FROZEN}", report.min_distance))?;
    Ok(format!(
        "(27,6) code: d = {} >= 23 - 3t = 17, {} messages enumerated [{:.2?}]",
        report.min_distance, report.codewords_enumerated, start.elapsed()
    ))
}

fn criterion5() -> Check {
    const FROZEN: usize = 14;
    let start = Instant::now();
    let code = hermitian::code_lrc2(3).map_err(e)?;
    ensure(
        (code.len(), code.dimension(), code.localities()) == (24, 6, vec![2, 3]),
        format!("parameters ({}, {}, {:?})", code.len(), code.dimension(), code.localities()),
    )?;
    for which in 0..2 {
        let sets = analysis::recovering_sets(&code, which).map_err(e)?;
        let certs = analysis::verify_locality(&code, &sets).map_err(|f| format!("partition {} fails at {}", which + 1, f.coordinate))?;
        ensure(certs.len() == 24 && certs.iter().all(|c| analysis::certificate_is_dual(&code, c)), "bad certificate")?;
    }
    let opts = EnumerationOptions { workers: 4, ..Default::default() };
    let report = analysis::min_distance_exhaustive(&code, opts).map_err(e)?;
    within(start.elapsed(), 60)?;
    ensure(report.min_distance >= 12, format!("d = {} < 12", report.min_distance))?;
    ensure(report.min_distance == FROZEN, format!("d = {} differs from frozen {FROZEN}", report.min_distance))?;
    Ok(format!(
        "(24,6,{{2,3}}): 24/24 certified in both partitions, d = {} >= 12 [{:.2?}]",
        report.min_distance,
        start.elapsed()
    ))
}

fn criterion6() -> Check {
    let code = hermitian::code_proj_y(3, 2).map_err(e)?;
    let (n, k, r) = (code.len() as i64, code.dimension() as i64, code.localities()[0] as i64);
    ensure(k % r == 0, "r does not divide k")?;
    let lhs = code.designed_distance() + k * (r + 1) / r;
    let bound = n + 2;
    let gap = hermitian::singleton_gap(&code).map_err(e)?;
    ensure(lhs == 26 && bound == 29 && gap == 3 && gap == 3 * (3 - 2), format!("lhs {lhs}, bound {bound}, gap {gap}"))?;
    Ok(format!("d + k(r+1)/r = {lhs} vs {bound}, gap {gap} = q0(q0-2)"))
}

fn criterion7() -> Check {
    let start = Instant::now();
    for q0 in [2u32, 3, 4, 5] {
        let g = hermitian::enumerate_points(q0).map_err(e)?;
        let f = g.field();
        let q = f.order() as usize;
        ensure(g.points().len() == (q0 as usize).pow(3), format!("q0 = {q0}: {} points", g.points().len()))?;
        for p in g.points() {
            let lhs = f.add(f.pow(p.x, q0 as u64), p.x);
            ensure(lhs == f.pow(p.y, q0 as u64 + 1), format!("q0 = {q0}: point off the curve"))?;
        }
        ensure(g.columns().len() == q && g.columns().iter().all(|c| c.points.len() == q0 as usize), "column sizes")?;
        let kernel = trace_kernel(f).map_err(e)?;
        ensure(kernel.len() == q0 as usize, "kernel size")?;
        ensure(g.rows().len() == q - q0 as usize, "row count")?;
        for row in g.rows() {
            ensure(!kernel.contains(&row.base), "row over the kernel")?;
            ensure(row.points.len() == q0 as usize + 1, format!("q0 = {q0}: row of size {}", row.points.len()))?;
        }
    }
    for (q0, l) in [(2u32, 2u32), (2, 3), (3, 2), (3, 3), (4, 2)] {
        let pts = gs_tower::enumerate_tower_points(q0, l).map_err(e)?;
        let want = (q0 as usize).pow(l - 1) * (q0 as usize * q0 as usize - 1);
        ensure(pts.len() == want, format!("tower ({q0},{l}): {} points, want {want}", pts.len()))?;
        let f = gs_tower::tower_field(q0).map_err(e)?;
        ensure(pts.iter().all(|p| p.satisfies(&f, q0)), format!("tower ({q0},{l}): point fails the equations"))?;
    }
    within(start.elapsed(), 10)?;
    Ok(format!("Hermitian q0 = 2..5 and 5 tower levels match [{:.2?}]", start.elapsed()))
}

fn criterion8() -> Check {
    let start = Instant::now();
    let c = bounds::crossover_interval(23, BoundFamily::Ab2, 1e-3, &SGrid::default()).map_err(e)?;
    within(start.elapsed(), 5)?;
    let (lo, hi) = c.interval.ok_or("empty interval")?;
    ensure((lo - 0.413).abs() <= 0.005 && (hi - 0.711).abs() <= 0.005, format!("[{lo:.4}, {hi:.4}]"))?;
    Ok(format!("ab2 beats GV (r = {}) on [{lo:.4}, {hi:.4}] [{:.2?}]", c.r, start.elapsed()))
}

fn criterion9() -> Check {
    let mut worst = 0f64;
    for (q, r) in [(529.0, 23u32), (9.0, 2), (13.0, 2)] {
        let p = bounds::gv_lrc(q, r, 0.0, &SGrid::default()).map_err(e)?;
        let err = (p.rate - r as f64 / (r as f64 + 1.0)).abs();
        worst = worst.max(err);
        ensure(err < 1e-9, format!("q = {q}, r = {r}: R(0) = {}", p.rate))?;
    }
    Ok(format!("R(0) = r/(r+1) for 3 cases, max error {worst:.1e}"))
}

fn instances() -> Result<Vec<(String, LinearCode)>, String> {
    let gf13 = Arc::new(FiniteField::prime(13).map_err(e)?);
    let gf9 = hermitian::hermitian_field(3).map_err(e)?;
    let mut out = vec![("tamo-barg (9,4,2)/GF(13)".to_string(), tb_9_4_2()?)];
    let all = [1, 2, 4, 8].map(|v| gf13.from_int(v));
    let gp = tamo_barg::good_poly_multiplicative(gf13.clone(), 2, &all).map_err(e)?;
    out.push(("tamo-barg (12,6,2)/GF(13)".into(), tamo_barg::tb_code(&gp, 6).map_err(e)?));
    let gp = tamo_barg::good_poly_multiplicative(gf13.clone(), 3, &[Elem::ONE, gf13.from_int(2), gf13.from_int(4)]).map_err(e)?;
    out.push(("tamo-barg (12,6,3)/GF(13)".into(), tamo_barg::tb_code(&gp, 6).map_err(e)?));
    let kernel = trace_kernel(&gf9).map_err(e)?;
    let reps = [Elem::ZERO, Elem::ONE, gf9.primitive()];
    let gp = tamo_barg::good_poly_additive(gf9.clone(), &kernel, &reps).map_err(e)?;
    out.push(("tamo-barg additive (9,4,2)/GF(9)".into(), tamo_barg::tb_code(&gp, 4).map_err(e)?));
    for (q0, t) in [(3, 2), (3, 6), (4, 3)] {
        out.push((format!("hermitian-y q0={q0} t={t}"), hermitian::code_proj_y(q0, t).map_err(e)?));
    }
    for (q0, t) in [(3, 1), (3, 2), (4, 2)] {
        out.push((format!("hermitian-x q0={q0} t={t}"), hermitian::code_proj_x(q0, t).map_err(e)?));
    }
    for q0 in [3, 4] {
        out.push((format!("hermitian-lrc2 q0={q0}"), hermitian::code_lrc2(q0).map_err(e)?));
    }
    for (q0, t) in [(2, 1), (3, 2)] {
        out.push((format!("gs2-l2 q0={q0} t={t}"), gs_tower::gs2_code_l2(q0, t).map_err(e)?));
    }
    Ok(out)
}

fn criterion10() -> Check {
    let start = Instant::now();
    let codes = instances()?;
    let mut checks = 0;
    for (seed, (name, code)) in codes.iter().enumerate() {
        let rt = analysis::erasure_roundtrip(code, 100, seed as u64).map_err(e)?;
        ensure(rt.passed() && rt.trials == 100, format!("{name}: {} round-trip failures", rt.failures.len()))?;
        checks += rt.checks;
        for which in 0..code.structure().partitions().len() {
            let sets = analysis::recovering_sets(code, which).map_err(e)?;
            let certs = analysis::verify_locality(code, &sets)
                .map_err(|f| format!("{name}: no certificate for coordinate {}", f.coordinate))?;
            ensure(certs.len() == code.len(), format!("{name}: missing certificates"))?;
            ensure(certs.iter().all(|c| analysis::certificate_is_dual(code, c)), format!("{name}: bad certificate"))?;
        }
        ensure(analysis::rank(code.field(), code.generator()) == code.dimension(), format!("{name}: rank(G) != k"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed as u64);
        for _ in 0..20 {
            let word = code.encode(&analysis::random_message(code, &mut rng)).map_err(e)?;
            for which in 0..code.structure().partitions().len() {
                let bad = analysis::fiber_residual(code, &word, which).map_err(e)?;
                ensure(bad == 0, format!("{name}: non-zero residual on {bad} fibers"))?;
            }
        }
    }
    Ok(format!("{} instances, {checks} repairs, certificates, rank and residuals ok [{:.2?}]", codes.len(), start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("Tamo-Barg (9,4,2) distance", criterion1),
        ("Hermitian q0 = 3 reference codeword", criterion2),
        ("local recovery walkthrough", criterion3),
        ("Hermitian (27,6) exhaustive distance", criterion4),
        ("LRC(2) q0 = 3", criterion5),
        ("Singleton gap", criterion6),
        ("point counts", criterion7),
        ("bounds crossover q0 = 23", criterion8),
        ("GV at delta = 0", criterion9),
        ("property suite", criterion10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
