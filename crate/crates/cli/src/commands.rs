//! One function per subcommand: compute, print a table, return the payload.

use std::io::Write;
use std::thread;

use an_census_core::census::{checkpoint_grid, stabilized_index, CensusConfig, CensusScanner, CensusSummary};
use an_census_core::cubic::{cyclic_cubic_conductors, cyclic_cubic_oracle};
use an_census_core::fiber::{classify_fiber, critical_values, verify_cv_factorization_with, FiberBase};
use an_census_core::fit::fit_exponent;
use an_census_core::pila::{count_fiber_points, fiber_exponent_scan, pila_bound_value, theorem_exponents, PilaBoundInput};
use an_census_core::reducible::{box_stabilization_counts, scan_reducible_fibers};
use an_census_core::roots::RootConfig;
use an_census_core::IntPoly;
use num_rational::Ratio;

use crate::cli::{CensusArgs, CriticalArgs, FiberArgs, FitArgs, OracleArgs, PilaArgs, ReducibleArgs};
use crate::error::CliError;
use crate::format::sig6;
use crate::record::*;

pub type Outcome = (Payload, Diagnostics);

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn fiber_base(base: &[i64], n: Option<usize>) -> Result<FiberBase, CliError> {
    let n = n.unwrap_or(base.len() + 2);
    Ok(FiberBase::from_i64s(n, base)?)
}

/// Scans `k` partitions on scoped threads and merges them in partition order.
pub fn census_parallel(config: &CensusConfig, k: usize) -> Result<CensusSummary, CliError> {
    if k == 0 {
        return Err(CliError::Usage("--partitions must be at least 1".into()));
    }
    let scanner = CensusScanner::new(config.clone())?;
    let ranges = scanner.partitions(k);
    let parts = thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let scanner = &scanner;
                s.spawn(move || scanner.scan(r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let merged = parts
        .into_iter()
        .reduce(|a, b| a.merge(b))
        .ok_or_else(|| CliError::Domain("empty partition list".into()))?;
    Ok(scanner.finalize(&merged))
}

fn census_run(summary: &CensusSummary) -> CensusRun {
    let checkpoints: Vec<CheckpointRow> = summary
        .checkpoints
        .iter()
        .map(|c| CheckpointRow {
            x: c.x,
            points_on_r: c.points_on_r,
            an_polys: c.an_polys,
            classes: c.classes,
            fields: c.fields,
            unknown_verdicts: c.unknown_verdicts,
        })
        .collect();
    let pts: Vec<(f64, f64)> = checkpoints.iter().map(|c| (c.x as f64, c.fields as f64)).collect();
    CensusRun {
        c: summary.c.to_string(),
        fields_slope: fit_exponent(&pts).ok(),
        checkpoints,
        disc_zero: summary.disc_zero,
        unresolved_field_disc: summary.unresolved_field_disc,
        fields_are_proxy: summary.fields_are_proxy,
        arithmetic_equivalence_risk: summary.arithmetic_equivalence_risk,
    }
}

pub fn census(args: &CensusArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let grid = checkpoint_grid(args.grid.xmin, args.grid.xmax, args.grid.grid_ratio)?;
    let exps = theorem_exponents(args.n)?;
    let mut constants = args.box_sweep.clone();
    if constants.is_empty() {
        constants.push(args.box_constant);
    }
    constants.sort();
    constants.dedup();
    let mut summaries = Vec::with_capacity(constants.len());
    for &c in &constants {
        let mut config = CensusConfig::new(args.n, grid.clone(), c);
        config.prime_budget = args.primes;
        config.fingerprint_primes = args.fingerprint_primes;
        let summary = census_parallel(&config, args.partitions)?;
        writeln!(out, "{summary}").ok();
        summaries.push(summary);
    }
    let stabilized_c = if constants.len() > 1 {
        let i = stabilized_index(&summaries).expect("non-empty sweep");
        writeln!(out, "field counts stable from c = {}", constants[i]).ok();
        Some(constants[i].to_string())
    } else {
        None
    };
    let runs: Vec<CensusRun> = summaries.iter().map(census_run).collect();
    for run in &runs {
        if let Some(s) = run.fields_slope {
            writeln!(out, "c = {}: fitted fields exponent {}", run.c, sig6(s)).ok();
        }
    }
    let last = summaries.last().expect("non-empty sweep");
    let diagnostics = Diagnostics {
        disc_zero: last.disc_zero,
        unknown_verdicts: last.checkpoints.last().map_or(0, |c| c.unknown_verdicts),
        numeric_failures: 0,
    };
    let payload = CensusPayload {
        n: args.n,
        runs,
        stabilized_c,
        theorem_exp: ratio_f64(exps.theorem),
        schmidt_exp: ratio_f64(exps.schmidt),
    };
    Ok((Payload::Census(payload), diagnostics))
}

pub fn fiber(args: &FiberArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let base = fiber_base(&args.base, args.n)?;
    let curve = classify_fiber(&base);
    writeln!(out, "p(y) = {}", curve.p.to_string().replace('t', "y")).ok();
    writeln!(out, "geometrically irreducible: {}", curve.geometrically_irreducible).ok();
    if let Some((c, g)) = &curve.square_witness {
        writeln!(out, "p = {c} * ({})^2", g.to_string().replace('t', "y")).ok();
    }
    let mut counts = Vec::new();
    if let Some(xmax) = args.xmax {
        let grid = checkpoint_grid(args.xmin, xmax, args.grid_ratio)?;
        writeln!(out, "{:>12} {:>10}", "X", "points").ok();
        for x in grid {
            let k = count_fiber_points(&base, x, args.box_constant, args.include_singular)?;
            writeln!(out, "{x:>12} {k:>10}").ok();
            counts.push((x, k));
        }
    }
    let payload = FiberPayload {
        n: base.n(),
        base: strings(base.coeffs()),
        p: strings(curve.p.coeffs()),
        geometrically_irreducible: curve.geometrically_irreducible,
        square_witness: curve.square_witness.map(|(c, g)| (c.to_string(), strings(g.coeffs()))),
        c: args.box_constant.to_string(),
        counts,
    };
    Ok((Payload::Fiber(payload), Diagnostics::default()))
}

pub fn reducible(args: &ReducibleArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut grid = args.h_grid.clone();
    if let Some(h) = args.h {
        grid.push(h);
    }
    if grid.is_empty() {
        return Err(CliError::Usage("reducible needs --h or --h-grid".into()));
    }
    grid.sort_unstable();
    grid.dedup();
    let hmax = *grid.last().expect("non-empty");
    let report = scan_reducible_fibers(args.n, hmax)?;
    let counts: Vec<(u64, u64)> = grid.iter().map(|&h| (h, report.count_within(h) as u64)).collect();
    let slope = if args.n % 2 == 1 && grid.len() >= 3 {
        // same fit as reducible_growth_exponent, without a second scan
        let pts: Vec<(f64, f64)> = counts.iter().map(|&(h, k)| (2.0 * h as f64 + 1.0, k as f64 + 1.0)).collect();
        Some(fit_exponent(&pts)?)
    } else {
        None
    };
    writeln!(out, "{:>8} {:>10}", "H", "reducible").ok();
    for (h, k) in &counts {
        writeln!(out, "{h:>8} {k:>10}").ok();
    }
    if let Some(s) = slope {
        writeln!(out, "growth exponent {}", sig6(s)).ok();
    }
    let (target, target_counts) = if args.target.is_empty() {
        (None, Vec::new())
    } else {
        let t = IntPoly::from_i64s(&args.target);
        let found = box_stabilization_counts(args.n, &t, &grid)?;
        writeln!(out, "bases with fiber polynomial {}:", t.to_string().replace('t', "y")).ok();
        for (h, k) in grid.iter().zip(&found) {
            writeln!(out, "{h:>8} {k:>10}").ok();
        }
        (Some(strings(t.coeffs())), grid.iter().copied().zip(found).collect())
    };
    let payload = ReduciblePayload {
        n: args.n,
        counts,
        slope,
        hits: report.hits.iter().map(|(b, _, _)| strings(b.coeffs())).collect(),
        target,
        target_counts,
    };
    Ok((Payload::Reducible(payload), Diagnostics::default()))
}

pub fn pila(args: &PilaArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let e = theorem_exponents(args.n)?;
    writeln!(out, "n = {}", args.n).ok();
    writeln!(out, "theorem exponent  {} = {}", e.theorem, sig6(ratio_f64(e.theorem))).ok();
    writeln!(out, "Schmidt exponent  {} = {}", e.schmidt, sig6(ratio_f64(e.schmidt))).ok();
    writeln!(out, "Malle exponent    {}", e.malle).ok();
    writeln!(out, "fiber exponent    {} = {}", e.pila_fiber, sig6(ratio_f64(e.pila_fiber))).ok();
    writeln!(out, "log power         {}", e.log_power).ok();
    let bound = match args.xmax {
        Some(x) => {
            let b = args.box_constant.to_f64() * (x as f64).powf(args.n as f64 / 4.0);
            let d = args.n as u32 - 1;
            let v = pila_bound_value(PilaBoundInput { d, b })?;
            writeln!(out, "Pila bound at d = {d}, B = {}: 10^{}", sig6(b), sig6(v.log10_value)).ok();
            Some(PilaBoundRow {
                d,
                b,
                log10_value: v.log10_value,
            })
        }
        None => None,
    };
    let scan = if args.base.is_empty() {
        None
    } else {
        let xmax = args
            .xmax
            .ok_or_else(|| CliError::Usage("a fiber scan needs --xmax".into()))?;
        let base = fiber_base(&args.base, Some(args.n))?;
        let grid = checkpoint_grid(args.xmin, xmax, args.grid_ratio)?;
        let s = fiber_exponent_scan(&base, &grid, args.box_constant)?;
        writeln!(out, "{:>12} {:>10}", "X", "points").ok();
        for (x, k) in &s.counts {
            writeln!(out, "{x:>12} {k:>10}").ok();
        }
        writeln!(out, "fiber slope {} (within Pila bound: {})", sig6(s.slope), s.within_pila_bound).ok();
        Some(FiberScanRow {
            base: strings(base.coeffs()),
            c: args.box_constant.to_string(),
            counts: s.counts,
            slope: s.slope,
            within_pila_bound: s.within_pila_bound,
        })
    };
    let payload = PilaPayload {
        n: args.n,
        theorem_exp: e.theorem.to_string(),
        schmidt_exp: e.schmidt.to_string(),
        malle_exp: e.malle.to_string(),
        pila_fiber_exp: e.pila_fiber.to_string(),
        log_power: e.log_power,
        bound,
        scan,
    };
    Ok((Payload::Pila(payload), Diagnostics::default()))
}

pub fn oracle_cubic(args: &OracleArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    if args.xmax < 1 {
        return Err(CliError::Domain("--xmax must be at least 1".into()));
    }
    let count = cyclic_cubic_oracle(args.xmax);
    writeln!(out, "{count}").ok();
    let payload = OraclePayload {
        xmax: args.xmax,
        count,
        conductors: cyclic_cubic_conductors(args.xmax),
    };
    Ok((Payload::OracleCubic(payload), Diagnostics::default()))
}

pub fn critical(args: &CriticalArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let base = fiber_base(&args.base, args.n)?;
    if args.tolerance.is_nan() || args.tolerance <= 0.0 {
        return Err(CliError::Domain("--tolerance must be positive".into()));
    }
    let config = RootConfig {
        seed: args.seed,
        max_iterations: args.max_iterations,
        ..RootConfig::default()
    };
    let cvs = critical_values(&base, &config)?;
    writeln!(out, "q0 = {}", cvs.q0).ok();
    for v in &cvs.values {
        let sign = if v.im.is_sign_negative() { '-' } else { '+' };
        writeln!(out, "  {} {sign} {}i", sig6(v.re), sig6(v.im.abs())).ok();
    }
    let ok = verify_cv_factorization_with(&base, args.tolerance, &config)?;
    writeln!(out, "factorization verified: {ok}").ok();
    let payload = CriticalPayload {
        n: base.n(),
        base: strings(base.coeffs()),
        critical_values: cvs.values.iter().map(|v| (v.re, v.im)).collect(),
        tolerance: args.tolerance,
        factorization_verified: ok,
    };
    Ok((Payload::Critical(payload), Diagnostics::default()))
}

pub fn fit(args: &FitArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let slope = fit_exponent(&args.points)?;
    writeln!(out, "slope {}", sig6(slope)).ok();
    let payload = FitPayload {
        points: args.points.clone(),
        slope,
    };
    Ok((Payload::Fit(payload), Diagnostics::default()))
}
