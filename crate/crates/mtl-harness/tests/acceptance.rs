//! End-to-end acceptance checks, one printed line per criterion.
//!
//! Runs as a plain binary (no libtest harness) so every `PASS`/`FAIL`
//! line reaches the terminal directly; the process exits nonzero if any
//! criterion fails. Each criterion with a runtime budget fails when the
//! budget is exceeded, even if its checks succeed.

use std::process::ExitCode;
use std::time::Instant;

use mtl::rat::{rat, rat_int};
use mtl::syntax::parse_formula;
use mtl::transform::{adapt_r, adapt_z};
use mtl_harness::{run_suite, GenConfig, SuiteName, SuiteReport};

/// Runs one criterion, prints its line, and returns whether it passed.
fn criterion<F>(n: usize, limit_secs: Option<u64>, f: F) -> bool
where
    F: FnOnce() -> Result<String, String>,
{
    let start = Instant::now();
    let outcome = f();
    let secs = start.elapsed().as_secs_f64();
    let (ok, detail) = match outcome {
        Ok(d) => match limit_secs {
            Some(l) if secs > l as f64 => (false, format!("{d}; exceeded the {l} s budget")),
            _ => (true, d),
        },
        Err(d) => (false, d),
    };
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {n}: {verdict} — {detail} ({secs:.1} s)");
    ok
}

/// Distills a suite report into a one-line summary, failing on any
/// violation, on an underpowered run, or when fewer than `min_kept`
/// instances survived the filter.
fn summarize(report: &SuiteReport, min_kept: usize) -> Result<String, String> {
    if !report.passed() {
        let first = report
            .violations
            .first()
            .cloned()
            .unwrap_or_else(|| "underpowered run".to_string());
        return Err(format!(
            "suite {}: {} violations ({} kept, {} checks); first: {first}",
            report.name,
            report.violations.len(),
            report.kept,
            report.checks,
        ));
    }
    if report.kept < min_kept {
        return Err(format!(
            "suite {}: only {} instances survived the filter, {min_kept} required",
            report.name, report.kept,
        ));
    }
    Ok(format!(
        "suite {}: {} kept, {} checks, zero violations",
        report.name, report.kept, report.checks,
    ))
}

fn golden(label: &str, got: &mtl::formula::Formula, want: &str) -> Result<(), String> {
    let expected = parse_formula(want).map_err(|e| format!("bad expectation `{want}`: {e}"))?;
    if got == &expected {
        Ok(())
    } else {
        Err(format!("{label}: expected `{want}`, got `{got}`"))
    }
}

fn main() -> ExitCode {
    let cfg = GenConfig::default();
    let mut ok = true;

    ok &= criterion(1, Some(10), || {
        let r = run_suite(SuiteName::Example44, &cfg);
        summarize(&r, 1).map(|s| {
            format!("unverifiable instance reports fail at bounds 3 and 5, over-model refuted with a stable step witness, under-model valid; {s}")
        })
    });

    ok &= criterion(2, Some(30), || {
        let r = run_suite(SuiteName::Example45, &cfg);
        summarize(&r, 1)
            .map(|s| format!("latched variant verifies at periods 1 and 1/2 with bound 5; {s}"))
    });

    ok &= criterion(3, None, || {
        let r = run_suite(SuiteName::Table3, &cfg);
        summarize(&r, 300).map(|s| {
            format!("weakened forms match their simplified equivalents at periods 1, 1/2, 1/3; {s}")
        })
    });

    ok &= criterion(4, None, || {
        let beta = parse_formula("GP(0,inf)(!p) & G(0,inf)(p)").unwrap();
        golden(
            "two-unit always at period 3/10",
            &adapt_r(&parse_formula("G[0,2](p)").unwrap(), &rat(3, 10)).unwrap(),
            "G[0,6](p)",
        )?;
        golden(
            "step characterization at period 1",
            &adapt_r(&beta, &rat_int(1)).unwrap(),
            "GP[1,inf)(!p) & G[1,inf)(p)",
        )?;
        golden(
            "step characterization at period 1/3",
            &adapt_r(&beta, &rat(1, 3)).unwrap(),
            "GP[1,inf)(!p) & G[1,inf)(p)",
        )?;
        golden(
            "bounded always toward dense time at period 1",
            &adapt_z(&parse_formula("q -> G[2,5](p)").unwrap(), &rat_int(1)).unwrap(),
            "q -> G[3,4](p)",
        )?;
        Ok("all window-rewrite goldens match syntactically".to_string())
    });

    ok &= criterion(5, Some(120), || {
        let r = run_suite(SuiteName::Cus, &cfg);
        summarize(&r, 200).map(|s| {
            format!("globally satisfied dense formulas stay satisfied on samples after the dense-to-discrete rewrite; {s}")
        })
    });

    ok &= criterion(6, Some(120), || {
        let r = run_suite(SuiteName::Cuis, &cfg);
        summarize(&r, 200).map(|s| {
            format!("globally satisfied discrete formulas hold on slow completions after the discrete-to-dense rewrite; {s}")
        })
    });

    ok &= criterion(7, None, || {
        let under = run_suite(SuiteName::Under, &cfg);
        let su = summarize(&under, 200)?;
        let over = run_suite(SuiteName::Over, &cfg);
        let so = summarize(&over, 200)?;
        Ok(format!(
            "strengthening preserves counterexamples and weakening preserves models; {su}; {so}"
        ))
    });

    ok &= criterion(8, Some(300), || {
        let r = run_suite(SuiteName::Oracle, &cfg);
        summarize(&r, 1000)?;
        if r.checks < 10_000 {
            return Err(format!(
                "only {} query agreements checked, 10000 required",
                r.checks
            ));
        }
        Ok(format!(
            "dense evaluator agrees with the independent region-grid oracle on {} queries",
            r.checks
        ))
    });

    ok &= criterion(9, None, || {
        let runs = run_suite(SuiteName::Lemma28, &cfg);
        let sr = summarize(&runs, 500)?;
        let shift = run_suite(SuiteName::Shiftability, &cfg);
        let ss = summarize(&shift, 200)?;
        Ok(format!(
            "satisfaction runs are long enough to sample and window-free formulas shift, with the known spiked instance rejected; {sr}; {ss}"
        ))
    });

    ok &= criterion(10, None, || {
        let r = run_suite(SuiteName::Complement, &cfg);
        summarize(&r, 1000).map(|s| {
            format!("negation exactly complements satisfaction sets on both time domains; {s}")
        })
    });

    if ok {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: at least one criterion FAILED");
        ExitCode::FAILURE
    }
}
