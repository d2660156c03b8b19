//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so each criterion reports even when an
//! earlier one fails. Exit status is nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use an_census_core::census::BoxConstant;
use an_census_core::cubic::cyclic_cubic_oracle;
use an_census_core::fiber::{classify_fiber, fiber_disc_poly, verify_cv_factorization, FiberBase};
use an_census_core::galois::{certify_an, resolvent_cubic, GaloisVerdict, NotAnReason};
use an_census_core::pila::{fiber_exponent_scan, theorem_exponents};
use an_census_core::poly::discriminant;
use an_census_core::reducible::{bases_in_box, box_stabilization_counts, reducible_growth_exponent, scan_reducible_fibers};
use an_census_core::IntPoly;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli(dir: &Path, args: &[&str]) -> Result<Value, String> {
    let out = dir.join("record.json");
    let o = Command::new(env!("CARGO_BIN_EXE_an-census"))
        .env_remove("AN_CENSUS_STORE")
        .arg("--store")
        .arg(dir.join("runs.jsonl"))
        .args(args)
        .args(["--out", out.to_str().unwrap(), "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)));
    }
    let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
    serde_json::from_str(text.trim()).map_err(|e| e.to_string())
}

fn fields_at(run: &Value, x: u64) -> Option<u64> {
    run["checkpoints"]
        .as_array()?
        .iter()
        .find(|c| c["x"] == x)
        .and_then(|c| c["fields"].as_u64())
}

fn oracle_equivalence() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let small = cli(dir.path(), &["census", "--n", "3", "--xmax", "100", "--box-constant", "4"])?;
    let at100 = fields_at(&small["payload"]["runs"][0], 100);
    check(at100 == Some(2), format!("X = 100 gives {at100:?}"))?;
    let rec = cli(
        dir.path(),
        &["census", "--n", "3", "--xmin", "1000", "--xmax", "100000", "--grid-ratio", "10", "--box-sweep", "2,3,4,6,8"],
    )?;
    let payload = &rec["payload"];
    let c0 = payload["stabilized_c"].as_str().ok_or("no stabilized c")?.to_string();
    let run = payload["runs"]
        .as_array()
        .and_then(|rs| rs.iter().find(|r| r["c"] == c0.as_str()))
        .ok_or("stabilized run missing")?;
    let mut parts = Vec::new();
    for x in [1_000u64, 10_000, 100_000] {
        let got = fields_at(run, x);
        let want = cyclic_cubic_oracle(x);
        check(got == Some(want), format!("X = {x}: census {got:?}, oracle {want}"))?;
        parts.push(format!("{x}:{want}"));
    }
    Ok(format!("X=100 -> 2; stabilized c0 = {c0}; fields = oracle at {}", parts.join(" ")))
}

fn malle_exponent() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let rec = cli(dir.path(), &["census", "--n", "3", "--xmin", "1000", "--xmax", "1000000", "--box-constant", "4"])?;
    let run = &rec["payload"]["runs"][0];
    let slope = run["fields_slope"].as_f64().ok_or("no slope")?;
    let counts: Vec<String> = run["checkpoints"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| format!("{}:{}", c["x"], c["fields"]))
        .collect();
    check((0.35..=0.65).contains(&slope), format!("slope {slope:.4}"))?;
    Ok(format!("slope {slope:.4} in [0.35, 0.65] over {}", counts.join(" ")))
}

fn discriminant_kernel() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let (mut worst, mut zero, mut sylvester) = (0.0f64, 0, 0);
    for i in 0..1000 {
        let deg = rng.gen_range(2..=6);
        let f = common::random_poly(&mut rng, deg, 20, false);
        let exact = discriminant(&f).map_err(|e| e.to_string())?;
        if i < 100 {
            check(exact == common::sylvester_discriminant(&f), format!("Sylvester mismatch on {f}"))?;
            sylvester += 1;
        }
        if exact.is_zero() {
            check(common::sylvester_discriminant(&f).is_zero(), format!("zero mismatch on {f}"))?;
            zero += 1;
            continue;
        }
        let e = exact.to_f64().unwrap();
        let rel = ((common::numeric_discriminant(&f) - e) / e).abs();
        worst = worst.max(rel);
        check(rel <= 1e-6, format!("{f}: relative error {rel:e}"))?;
    }
    Ok(format!("1000 polynomials, worst relative error {worst:.2e} ({zero} with zero disc); {sylvester} exact Sylvester matches"))
}

fn cv_factorization() -> Outcome {
    let worked = fiber_disc_poly(&FiberBase::from_i64s(3, &[-3]).unwrap());
    let expected = &(&IntPoly::from_i64s(&[-2, 1]) * &IntPoly::from_i64s(&[2, 1])).scale(&(-27).into());
    check(worked == *expected, format!("n=3, a2=-3 gives {worked}"))?;
    check(worked == IntPoly::from_i64s(&[108, 0, -27]), "108 - 27y^2")?;
    let mut rng = StdRng::seed_from_u64(4);
    for n in 3..=6 {
        for _ in 0..500 {
            let coeffs: Vec<i64> = (0..n - 2).map(|_| rng.gen_range(-10..=10)).collect();
            let base = FiberBase::from_i64s(n, &coeffs).unwrap();
            let ok = verify_cv_factorization(&base, 1e-6).map_err(|e| format!("{coeffs:?}: {e}"))?;
            check(ok, format!("n = {n}, base {coeffs:?}"))?;
        }
    }
    Ok("108-27y^2 = -27(y-2)(y+2); 500 random bases for each n in 3..=6 at 1e-6".into())
}

fn even_irreducibility() -> Outcome {
    for (n, h) in [(4usize, 5u64), (6, 3)] {
        let hits = scan_reducible_fibers(n, h).map_err(|e| e.to_string())?.count();
        check(hits == 0, format!("n = {n}, H = {h}: {hits} reducible fibers"))?;
        let mut total = 0;
        for base in bases_in_box(n, h).map_err(|e| e.to_string())? {
            let d = fiber_disc_poly(&base).degree();
            check(d == Some(n - 1), format!("{base:?} has degree {d:?}"))?;
            total += 1;
        }
        check(total == (2 * h + 1).pow(n as u32 - 2), "box size")?;
    }
    Ok("n=4 H=5 and n=6 H=3: 0 reducible fibers, every p of odd degree n-1".into())
}

fn odd_scarcity() -> Outcome {
    let g = reducible_growth_exponent(5, &[5, 10, 20]).map_err(|e| e.to_string())?;
    check(g.slope <= 2.3, format!("n = 5 slope {:.4}", g.slope))?;
    for h in [1u64, 5, 10, 20] {
        let r = scan_reducible_fibers(3, h).map_err(|e| e.to_string())?;
        check(r.count() == 1, format!("n = 3, H = {h}: {} hits", r.count()))?;
        check(r.hits[0].0 == FiberBase::from_i64s(3, &[0]).unwrap(), "n = 3 hit is a2 = 0")?;
    }
    Ok(format!("n=5 counts {:?}, slope {:.4} <= 2.3; n=3 exactly one base (a2=0)", g.counts, g.slope))
}

fn finiteness() -> Outcome {
    let grid = [1u64, 2, 3, 5, 10, 20, 40];
    for target in [[0i64, 0, -27], [108, 0, -27]] {
        let t = IntPoly::from_i64s(&target);
        let counts = box_stabilization_counts(3, &t, &grid).map_err(|e| e.to_string())?;
        check(counts[3..].iter().all(|&k| k == 1), format!("{t}: {counts:?}"))?;
    }
    let mut rng = StdRng::seed_from_u64(7);
    let mut notes = Vec::new();
    for _ in 0..2 {
        let coeffs: Vec<i64> = loop {
            let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        };
        let m = coeffs.iter().map(|x| x.unsigned_abs()).max().unwrap();
        let target = fiber_disc_poly(&FiberBase::from_i64s(5, &coeffs).unwrap());
        let grid: Vec<u64> = (m..=4 * m).collect();
        let counts = box_stabilization_counts(5, &target, &grid).map_err(|e| e.to_string())?;
        let at = |h: u64| counts[(h - m) as usize];
        check(at(m) >= 1, format!("{coeffs:?} not found at H = {m}"))?;
        check(
            (2 * m..=4 * m).all(|h| at(h) == at(2 * m)),
            format!("{coeffs:?}: counts {counts:?} still move after H = {}", 2 * m),
        )?;
        notes.push(format!("{coeffs:?} -> {} by H={}", at(2 * m), 2 * m));
    }
    Ok(format!("n=3 targets stabilize at 1; n=5 {}", notes.join(", ")))
}

fn pila_consistency() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let grid: Vec<u64> = (0..9).map(|k| (100.0 * 10f64.powf(k as f64 / 2.0)).round() as u64).collect();
    let c = BoxConstant::integer(1).unwrap();
    let mut worst = Vec::new();
    for n in [3usize, 4] {
        let limit = ratio(theorem_exponents(n).unwrap().pila_fiber) + 0.15;
        let mut done = 0;
        let mut max_slope = f64::MIN;
        while done < 20 {
            let coeffs: Vec<i64> = (0..n - 2).map(|_| rng.gen_range(-10..=10)).collect();
            let base = FiberBase::from_i64s(n, &coeffs).unwrap();
            if !classify_fiber(&base).geometrically_irreducible {
                continue;
            }
            let s = fiber_exponent_scan(&base, &grid, c).map_err(|e| e.to_string())?;
            check(s.within_pila_bound, format!("{coeffs:?} exceeds the Pila bound"))?;
            check(s.slope <= limit, format!("n = {n}, {coeffs:?}: slope {:.4} > {limit:.4}", s.slope))?;
            max_slope = max_slope.max(s.slope);
            done += 1;
        }
        worst.push(format!("n={n}: max slope {max_slope:.4} <= {limit:.4}"));
    }
    Ok(format!("20 fibers each, all within the Pila bound; {}", worst.join("; ")))
}

fn ratio(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn galois_goldens() -> Outcome {
    let an = GaloisVerdict::CertifiedAn;
    let cases: [(&[i64], GaloisVerdict); 6] = [
        (&[-7, -21, 0, 1], an),
        (&[-1, -3, 0, 1], an),
        (&[12, 8, 0, 0, 1], an),
        (&[16, 20, 0, 0, 0, 1], an),
        (&[1, 1, 0, 0, 1], GaloisVerdict::CertifiedNotAn(NotAnReason::NonSquareDisc)),
        (&[4, 0, 0, 0, 1], GaloisVerdict::CertifiedNotAn(NotAnReason::Reducible)),
    ];
    for (c, want) in cases {
        let f = IntPoly::from_i64s(c);
        let got = certify_an(&f, 100).map_err(|e| e.to_string())?;
        check(got == want, format!("{f}: {got:?}, expected {want:?}"))?;
    }
    let r = resolvent_cubic(&IntPoly::from_i64s(&[12, 8, 0, 0, 1])).unwrap();
    check(r == IntPoly::from_i64s(&[-64, -48, 0, 1]), format!("resolvent {r}"))?;
    Ok("6 goldens; resolvent of t^4+8t+12 is t^3-48t-64".into())
}

fn exponent_identities() -> Outcome {
    for n in 3..=100usize {
        let e = theorem_exponents(n).map_err(|e| e.to_string())?;
        let m = n as i64;
        check(e.schmidt - e.theorem == Ratio::new(m, 4 * (m - 1)), format!("n = {n}"))?;
        check(e.theorem < e.schmidt, format!("n = {n} ordering"))?;
    }
    Ok("schmidt - theorem = n/(4(n-1)) exactly for n = 3..=100".into())
}

fn partition_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for (n, xmax, c) in [("3", "100000", "4"), ("4", "400", "2")] {
        let mut csvs = Vec::new();
        for k in ["1", "4"] {
            let out = dir.path().join(format!("n{n}-p{k}.csv"));
            let o = Command::new(env!("CARGO_BIN_EXE_an-census"))
                .env_remove("AN_CENSUS_STORE")
                .arg("--store")
                .arg(dir.path().join("runs.jsonl"))
                .args(["census", "--n", n, "--xmax", xmax, "--box-constant", c, "--partitions", k])
                .args(["--out", out.to_str().unwrap(), "--format", "csv"])
                .output()
                .map_err(|e| e.to_string())?;
            check(o.status.success(), String::from_utf8_lossy(&o.stderr).to_string())?;
            csvs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        check(csvs[0] == csvs[1], format!("n = {n}: CSV differs between 1 and 4 partitions"))?;
        sizes.push(format!("n={n} ({} bytes)", csvs[0].len()));
    }
    Ok(format!("byte-identical CSV for 1 vs 4 partitions: {}", sizes.join(", ")))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence n=3", oracle_equivalence),
        ("Malle exponent n=3", malle_exponent),
        ("discriminant kernel", discriminant_kernel),
        ("critical-value factorization", cv_factorization),
        ("even-n irreducibility", even_irreducibility),
        ("odd-n reducible scarcity", odd_scarcity),
        ("finiteness of fibers over a target", finiteness),
        ("Pila consistency", pila_consistency),
        ("Galois certification goldens", galois_goldens),
        ("exponent identities", exponent_identities),
        ("partition determinism", partition_determinism),
    ];
    // keep panic messages out of the report; failures are reported below
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
