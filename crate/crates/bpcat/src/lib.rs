//! `bpcat`: build, verify and export the categories, lattices and Ext groups
//! attached to Brieskorn–Pham polynomials `x₁^{p₁} + … + xₙ^{pₙ}`.
//!
//! Everything goes through [`run`], which takes the argument list and two
//! sinks and returns the process exit code: 0 on success, 1 when a
//! verification fails, 2 on a usage error.

pub mod schema;
pub mod suite;
mod text;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use bpcat_core::dgcat::tensor_bp;
use bpcat_core::grading::{cy_check, orlov_group, ExponentSeq, LDegree, LGroup};
use bpcat_core::lattice::compare;
use bpcat_core::singcat::{
    bp_resolution, ext_formula, ext_k_k, index_coords, lemma_k_check, validate_resolution,
};
use bpcat_core::suspension::{fukaya_bp, suspend, verify_suspension};
use clap::{Parser, Subcommand};
use serde::Serialize;

use schema::{
    CategoryJson, CategoryReport, ExtReport, FukayaReport, GaugeJson, LatticeReport, LemmaKJson,
    OrlovReport, ResolutionDump, SuspendReport, SuspensionCheckJson,
};
use suite::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `"2,3,4"` into an exponent sequence.
pub fn parse_exponents(s: &str) -> Result<ExponentSeq, String> {
    let v = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>()
                .map_err(|_| format!("exponent {t:?} is not an integer"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ExponentSeq::new(&v).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "bpcat",
    version,
    about = "Exact computations for Brieskorn–Pham singularities"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for independent checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Report elapsed times; output is then no longer reproducible.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The tensor model 𝔄_{p₁−1} ⊗ … ⊗ 𝔄_{pₙ−1}.
    Category {
        #[arg(long, value_parser = parse_exponents)]
        p: ExponentSeq,
    },
    /// Suspend the tensor model for p by u^k.
    Suspend {
        #[arg(long, value_parser = parse_exponents)]
        p: ExponentSeq,
        #[arg(long)]
        k: usize,
        /// Compare with the tensor model times 𝔄_{k−1}.
        #[arg(long)]
        verify: bool,
    },
    /// The category built by iterated suspension.
    Fukaya {
        #[arg(long, value_parser = parse_exponents)]
        p: ExponentSeq,
        /// Verify every step and the final result.
        #[arg(long)]
        verify: bool,
    },
    /// Compare the symmetric and Euler-form lattices.
    Lattice {
        #[arg(long, value_parser = parse_exponents)]
        p: ExponentSeq,
    },
    #[command(subcommand)]
    Singcat(SingcatCommand),
    /// Calabi–Yau condition and the group G_p.
    Orlov {
        #[arg(long, value_parser = parse_exponents)]
        p: ExponentSeq,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_exponents)]
        p: ExponentSeq,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
enum SingcatCommand {
    /// Ext(k(source), k(target)) from the free resolution.
    Ext {
        #[arg(long, value_parser = parse_exponents)]
        p: ExponentSeq,
        /// Coefficients of x₁ … xₙ, optionally followed by the c coefficient.
        #[arg(long, allow_hyphen_values = true)]
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// Dump and check the free resolution of k.
    Resolution {
        #[arg(long, value_parser = parse_exponents)]
        p: ExponentSeq,
        #[arg(long)]
        length: usize,
        /// Largest z-degree checked (default 2ℓ).
        #[arg(long, allow_hyphen_values = true)]
        window: Option<i64>,
    },
    /// Check the short exact sequences for k[xᵢ]/(xᵢ^j).
    LemmaK {
        #[arg(long, value_parser = parse_exponents)]
        p: ExponentSeq,
        /// One-based variable index.
        #[arg(long)]
        axis: usize,
        #[arg(long)]
        j: u32,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<i64>,
    },
}

/// Result of one subcommand.
struct Output {
    json: String,
    text: String,
    ok: bool,
}

impl Output {
    fn new<T: Serialize>(value: &T, text: String, ok: bool) -> Self {
        Output {
            json: serde_json::to_string_pretty(value).expect("report serializes"),
            text,
            ok,
        }
    }
}

enum Failure {
    Usage(String),
}

fn parse_degree(g: &LGroup, s: &str) -> Result<LDegree, Failure> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("degree {s:?} is not a list of integers")))?;
    let n = g.rank_n();
    let r = if v.len() == n {
        g.from_x(&v)
    } else {
        g.normalize(&v)
    };
    r.map_err(|e| Failure::Usage(format!("degree {s:?}: {e}")))
}

fn default_window(p: &ExponentSeq, w: Option<i64>) -> i64 {
    w.unwrap_or_else(|| 2 * LGroup::new(p.clone()).ell())
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Category { p } => {
            let r = CategoryReport {
                p: p.as_slice().to_vec(),
                category: CategoryJson::from_category(&tensor_bp(p)),
            };
            let t = text::category_report(&r);
            Ok(Output::new(&r, t, true))
        }
        Command::Suspend { p, k, verify } => {
            let a = tensor_bp(p);
            let mut r = SuspendReport {
                p: p.as_slice().to_vec(),
                k: *k,
                category: None,
                verification: None,
                error: None,
            };
            if *verify {
                let v = verify_suspension(&a, *k);
                r.category = v.category.as_ref().map(CategoryJson::from_category);
                r.error = v.error.clone();
                r.verification = Some(SuspensionCheckJson::new(&v));
            } else {
                match suspend(&a, *k) {
                    Ok(c) => r.category = Some(CategoryJson::from_category(&c)),
                    Err(e) => r.error = Some(e.to_string()),
                }
            }
            let ok = r.error.is_none() && r.verification.as_ref().is_none_or(|v| v.passed);
            let t = text::suspend_report(&r);
            Ok(Output::new(&r, t, ok))
        }
        Command::Fukaya { p, verify } => {
            let mut r = FukayaReport {
                p: p.as_slice().to_vec(),
                verified: *verify,
                category: None,
                steps: Vec::new(),
                final_gauge: None,
                error: None,
                passed: false,
            };
            match fukaya_bp(p, *verify) {
                Ok(res) => {
                    r.steps = res.steps.iter().map(SuspensionCheckJson::new).collect();
                    r.final_gauge = res
                        .final_gauge
                        .as_ref()
                        .map(|g| GaugeJson::new(g, &res.category));
                    r.category = Some(CategoryJson::from_category(&res.category));
                    r.passed = res.passed();
                }
                Err(e) => r.error = Some(e.to_string()),
            }
            let t = text::fukaya_report(&r);
            let ok = r.passed;
            Ok(Output::new(&r, t, ok))
        }
        Command::Lattice { p } => {
            let r = LatticeReport::new(&compare(p));
            let t = text::lattice_report(&r);
            Ok(Output::new(&r, t, true))
        }
        Command::Orlov { p } => {
            let cy = cy_check(p);
            let g = orlov_group(p).map_err(|e| Failure::Usage(e.to_string()))?;
            let r = OrlovReport {
                p: p.as_slice().to_vec(),
                cy: cy.holds,
                sum: cy.sum.to_string(),
                ell: cy.ell,
                weights: cy.weights.clone(),
                group: g.invariant_factors.clone(),
                order: g.order(),
            };
            let t = text::orlov_report(&r, &g.to_string());
            Ok(Output::new(&r, t, true))
        }
        Command::Verify { p, suite } => {
            let r = run_suite(p, *suite, cli.timings);
            let t = text::verification_report(&r);
            let ok = r.passed;
            Ok(Output::new(&r, t, ok))
        }
        Command::Singcat(SingcatCommand::Ext { p, source, target }) => {
            let g = LGroup::new(p.clone());
            let m = parse_degree(&g, source)?;
            let n = parse_degree(&g, target)?;
            let formula = match (index_coords(p, &m), index_coords(p, &n)) {
                (Some(_), Some(_)) => ext_formula(p, &m, &n).ok(),
                _ => None,
            };
            let r = ExtReport {
                p: p.as_slice().to_vec(),
                source: m.raw(),
                target: n.raw(),
                dims: ext_k_k(p, &m, &n),
                formula,
            };
            let t = text::ext_report(&r, &m.to_string(), &n.to_string());
            Ok(Output::new(&r, t, true))
        }
        Command::Singcat(SingcatCommand::Resolution { p, length, window }) => {
            let window = default_window(p, *window);
            let c = bp_resolution(p, *length).map_err(|e| Failure::Usage(e.to_string()))?;
            let report = validate_resolution(&c, window);
            let r = ResolutionDump::new(p, &c, window, &report);
            let t = text::resolution_report(&r);
            let ok = r.passed;
            Ok(Output::new(&r, t, ok))
        }
        Command::Singcat(SingcatCommand::LemmaK { p, axis, j, window }) => {
            let window = default_window(p, *window);
            let rep =
                lemma_k_check(p, *axis, *j, window).map_err(|e| Failure::Usage(e.to_string()))?;
            let r = LemmaKJson {
                p: p.as_slice().to_vec(),
                axis: *axis,
                j: *j,
                window,
                linear: rep.exactness.linear,
                homogeneous: rep.exactness.homogeneous,
                failures: rep.exactness.failures.iter().map(LDegree::raw).collect(),
                degrees_checked: rep.exactness.degrees_checked,
                quotient_iso: rep.quotient_iso,
                passed: rep.passed(),
            };
            let t = text::lemma_report(&r);
            let ok = r.passed;
            Ok(Output::new(&r, t, ok))
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let start = Instant::now();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure::Usage(format!("cannot start thread pool: {e}"))),
        },
        None => execute(&cli),
    };
    match result {
        Ok(o) => {
            let body = if cli.json { &o.json } else { &o.text };
            let _ = writeln!(out, "{}", body.trim_end());
            if cli.timings {
                let _ = writeln!(err, "elapsed: {} ms", start.elapsed().as_millis());
            }
            if o.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
