//! Subcommand implementations: analyze, sweep, verify, classify.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use wtangle_core::densmat::partial_trace;
use wtangle_core::oracle::{
    default_theta_grid, verify_marginals, verify_monogamy, verify_negativity_identity,
    verify_wstate_curve, VerificationOutcome,
};
use wtangle_core::symstate::{enumerate_slocc_configs, wclass_state};
use wtangle_core::tangle::{
    concurrence_2q, concurrence_tangle_vec, negativity_1_rest, negativity_2q,
    negativity_tangle_focus, TangleReport,
};

use crate::Quantity;

/// Command failures, split by exit code: usage errors exit with 2, runtime
/// failures with 1.
#[derive(Debug)]
pub enum CmdError {
    Usage(String),
    Runtime(String),
}

impl CmdError {
    fn usage(e: impl std::fmt::Display) -> Self {
        Self::Usage(e.to_string())
    }

    fn runtime(e: impl std::fmt::Display) -> Self {
        Self::Runtime(e.to_string())
    }
}

fn write_output(output: Option<&Path>, contents: &str) -> Result<(), CmdError> {
    match output {
        Some(path) => fs::write(path, contents)
            .map_err(|e| CmdError::runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .map_err(CmdError::runtime)
        }
    }
}

/// Fixed-format float with 12 significant digits; locale-independent, so the
/// emitted CSV and JSON are byte-identical across runs.
pub fn fmt_sig12(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn run_analyze(n: usize, theta: f64, output: Option<PathBuf>) -> Result<(), CmdError> {
    let report = TangleReport::for_wclass(n, theta).map_err(CmdError::usage)?;
    let json = serde_json::to_string_pretty(&report).map_err(CmdError::runtime)?;
    write_output(output.as_deref(), &format!("{json}\n"))
}

pub struct SweepSpec {
    pub n_list: Vec<usize>,
    pub theta_start: f64,
    pub theta_end: f64,
    pub theta_steps: usize,
    pub quantities: Vec<Quantity>,
}

impl SweepSpec {
    fn validate(&self) -> Result<(), CmdError> {
        if self.n_list.is_empty() {
            return Err(CmdError::Usage("empty qubit-count list".into()));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 3) {
            return Err(CmdError::Usage(format!(
                "qubit count {n} too small: sweeps need n >= 3"
            )));
        }
        if self.theta_steps < 2 {
            return Err(CmdError::Usage("theta-steps must be at least 2".into()));
        }
        if self.theta_start >= self.theta_end {
            return Err(CmdError::Usage(format!(
                "theta-start {} must be below theta-end {}",
                self.theta_start, self.theta_end
            )));
        }
        if self.theta_start < 0.0 || self.theta_end > TAU {
            return Err(CmdError::Usage(
                "theta range must stay inside [0, 2pi]".into(),
            ));
        }
        if self.quantities.is_empty() {
            return Err(CmdError::Usage("no quantities requested".into()));
        }
        for (i, q) in self.quantities.iter().enumerate() {
            if self.quantities[..i].contains(q) {
                return Err(CmdError::Usage(format!(
                    "duplicate quantity {}",
                    q.column()
                )));
            }
        }
        Ok(())
    }
}

fn sweep_row(n: usize, theta: f64, quantities: &[Quantity]) -> wtangle_core::Result<Vec<f64>> {
    let psi = wclass_state(n, theta)?.to_full_vector()?;
    let rho2 = partial_trace(&psi, &[1, 2])?;
    let rho1 = partial_trace(&psi, &[1])?;
    quantities
        .iter()
        .map(|q| match q {
            Quantity::PairwiseConcurrence => concurrence_2q(&rho2),
            Quantity::PairwiseNegativity => negativity_2q(&rho2),
            Quantity::OneVsRestNegativity => negativity_1_rest(&rho1),
            Quantity::ConcurrenceTangle => concurrence_tangle_vec(&psi, 1),
            Quantity::NegativityTangle => negativity_tangle_focus(&psi, 1),
        })
        .collect()
}

/// Renders the sweep as a CSV string: header `n,theta,<quantity...>`, rows in
/// (n outer, theta inner) order, 12 significant digits, LF line endings.
pub fn sweep_csv(spec: &SweepSpec) -> Result<String, CmdError> {
    spec.validate()?;
    let step = (spec.theta_end - spec.theta_start) / (spec.theta_steps - 1) as f64;
    // The last grid point is pinned to theta_end; accumulated rounding in
    // start + j * step can otherwise drift past the admissible interval.
    let angles: Vec<f64> = (0..spec.theta_steps)
        .map(|j| {
            if j + 1 == spec.theta_steps {
                spec.theta_end
            } else {
                spec.theta_start + j as f64 * step
            }
        })
        .collect();
    let points: Vec<(usize, f64)> = spec
        .n_list
        .iter()
        .flat_map(|&n| angles.iter().map(move |&theta| (n, theta)))
        .collect();
    // Rows are independent; computed in parallel, assembled in input order.
    let rows: Vec<Vec<f64>> = points
        .par_iter()
        .map(|&(n, theta)| sweep_row(n, theta, &spec.quantities))
        .collect::<wtangle_core::Result<_>>()
        .map_err(CmdError::runtime)?;

    let mut out = String::new();
    out.push_str("n,theta");
    for q in &spec.quantities {
        out.push(',');
        out.push_str(q.column());
    }
    out.push('\n');
    for ((n, theta), values) in points.iter().zip(rows) {
        out.push_str(&n.to_string());
        out.push(',');
        out.push_str(&fmt_sig12(*theta));
        for v in values {
            out.push(',');
            out.push_str(&fmt_sig12(v));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn run_sweep(spec: &SweepSpec, output: Option<PathBuf>) -> Result<(), CmdError> {
    let csv = sweep_csv(spec)?;
    write_output(output.as_deref(), &csv)
}

/// Full verification report: every oracle case over qubit counts up to
/// `max_n`, each clamped to the range its brute-force method supports.
#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub all_pass: bool,
    pub outcomes: Vec<VerificationOutcome>,
}

enum CaseSpec {
    Marginals { n: usize, theta: f64 },
    Monogamy { n: usize },
    NegativityIdentity { n: usize },
    WstateCurve { hi: usize },
}

pub fn build_verify_report(max_n: usize) -> Result<VerifyReport, CmdError> {
    if !(3..=14).contains(&max_n) {
        return Err(CmdError::Usage(format!(
            "max-n {max_n} out of range: the suite covers 3..=14"
        )));
    }
    let grid = default_theta_grid();
    let spot_angles = [FRAC_PI_3, FRAC_PI_2, PI, 1.5 * PI];

    let mut cases = Vec::new();
    for n in 3..=max_n {
        for theta in spot_angles {
            cases.push(CaseSpec::Marginals { n, theta });
        }
    }
    for n in 3..=max_n.min(12) {
        cases.push(CaseSpec::Monogamy { n });
    }
    for n in 3..=max_n.min(8) {
        cases.push(CaseSpec::NegativityIdentity { n });
    }
    cases.push(CaseSpec::WstateCurve { hi: max_n });

    let outcomes: Vec<VerificationOutcome> = cases
        .par_iter()
        .map(|case| match *case {
            CaseSpec::Marginals { n, theta } => verify_marginals(n, theta),
            CaseSpec::Monogamy { n } => verify_monogamy(n, &grid),
            CaseSpec::NegativityIdentity { n } => verify_negativity_identity(n, &grid),
            CaseSpec::WstateCurve { hi } => verify_wstate_curve(3, hi),
        })
        .collect::<wtangle_core::Result<_>>()
        .map_err(CmdError::runtime)?;

    let all_pass = outcomes.iter().all(|o| o.all_pass());
    Ok(VerifyReport {
        max_n,
        all_pass,
        outcomes,
    })
}

/// Runs the suite, writes the JSON report, and returns whether it passed.
pub fn run_verify(max_n: usize, output: Option<PathBuf>) -> Result<bool, CmdError> {
    let report = build_verify_report(max_n)?;
    let json = serde_json::to_string_pretty(&report).map_err(CmdError::runtime)?;
    write_output(output.as_deref(), &format!("{json}\n"))?;
    if !report.all_pass {
        let mut failing: Vec<&str> = report
            .outcomes
            .iter()
            .flat_map(|o| o.failing_anchors())
            .collect();
        failing.sort_unstable();
        failing.dedup();
        eprintln!(
            "verification failed; failing checks: {}",
            failing.join(", ")
        );
    }
    Ok(report.all_pass)
}

pub fn run_classify(n: usize, r: usize) -> Result<(), CmdError> {
    let configs = enumerate_slocc_configs(n, r).map_err(CmdError::usage)?;
    let mut out = String::new();
    for config in &configs {
        out.push_str(&config.to_string());
        out.push('\n');
    }
    out.push_str(&format!("count = {}\n", configs.len()));
    write_output(None, &out)
}
