//! Command-line front end. Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::crt::crt_decompose;
use crate::discriminant::{build_discriminant, trace_table};
use crate::error::Error;
use crate::galois_ring::{
    find_basic_primitive, validate_basic_primitive, ElementClass, RingContext, RingSpec,
    DEFAULT_DIM_CAP,
};
use crate::hidden_linear::{make_oracle, recover_r, RecoveryRecord};
use crate::qft::{qft_direct, qft_factored, ComplexMatrix, DEFAULT_GATE_CAP};
use crate::verify::{default_specs, run_all, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "galois-qft",
    version,
    about = "Galois ring arithmetic and QFT verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Upper bound on p^{sm} for enumeration and matrix commands.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_CAP)]
    pub cap: u64,

    /// Seed for sampled checks and random draws.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct RingArg {
    /// Ring spec: a JSON object, a path to a JSON file, or inline `p,s,m[,h_0,...,h_{m-1}]`.
    #[arg(long)]
    pub ring: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize a ring: sizes, element classes, Teichmuller set, trace table.
    Info(RingArg),
    /// Find the smallest basic primitive polynomial of degree m over Z_{p^s}.
    FindPoly {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        s: u32,
        #[arg(short)]
        m: usize,
    },
    /// Run the basic-primitive sub-checks on a spec.
    ValidatePoly(RingArg),
    /// Print Tr(xi^i) for i = 0 .. 2m-2.
    TraceTable(RingArg),
    /// Print the discriminant matrix and its inverse.
    Discriminant(RingArg),
    /// Emit the QFT matrix, built directly, in factored form, or both.
    Qft {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, group = "mode")]
        direct: bool,
        #[arg(long, group = "mode")]
        factored: bool,
        #[arg(long, group = "mode")]
        both: bool,
    },
    /// Run the verification suite (default ring set when no --ring is given).
    Verify {
        #[arg(long)]
        ring: Vec<String>,
        /// Upper bound on the dense two-register dimension p^{2sm}.
        #[arg(long, default_value_t = DEFAULT_GATE_CAP)]
        gate_cap: usize,
        /// Include per-check wall-clock times in the output.
        #[arg(long)]
        timings: bool,
    },
    /// Recover a hidden r from one query to the A_r oracle.
    HiddenLinear {
        #[command(flatten)]
        ring: RingArg,
        /// Hidden element as comma-separated coefficients.
        #[arg(long, value_delimiter = ',', group = "source")]
        r: Option<Vec<u64>>,
        /// Draw r uniformly using --seed.
        #[arg(long, group = "source")]
        random: bool,
    },
    /// Split Z_n into prime-power components.
    CrtDecompose { modulus: u64 },
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
struct CliError {
    code: i32,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

/// Parses `--ring`: inline JSON, a JSON file, or `p,s,m[,h...]`.
pub fn parse_ring_arg(arg: &str) -> Result<RingSpec, String> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).map_err(|e| format!("bad ring JSON: {e}"));
    }
    if Path::new(trimmed).is_file() {
        let text = fs::read_to_string(trimmed).map_err(|e| e.to_string())?;
        return serde_json::from_str(&text).map_err(|e| format!("bad ring JSON in {trimmed}: {e}"));
    }
    let nums = trimmed
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| format!("ring '{arg}' is neither JSON, a file, nor p,s,m[,h...]"))?;
    if nums.len() < 3 {
        return Err(format!("inline ring needs at least p,s,m; got '{arg}'"));
    }
    let s = u32::try_from(nums[1]).map_err(|_| "s too large".to_string())?;
    Ok(RingSpec::new(
        nums[0],
        s,
        nums[2] as usize,
        nums[3..].to_vec(),
    ))
}

fn load_ring(arg: &str, cap: u64) -> Result<RingContext, CliError> {
    let spec = parse_ring_arg(arg).map_err(invalid)?;
    Ok(RingContext::with_cap(spec, cap)?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn csv_rows(rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn complex_cell(z: num_complex::Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", z.re, sign, z.im.abs())
}

fn matrix_csv(m: &ComplexMatrix) -> String {
    let rows: Vec<Vec<String>> = (0..m.dim())
        .map(|i| m.row(i).iter().map(|&z| complex_cell(z)).collect())
        .collect();
    csv_rows(&rows)
}

fn join(v: &[u64], sep: &str) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

fn cmd_info(ring: &RingContext, format: Format) -> Result<String, CliError> {
    let mut units = 0u64;
    let mut zero_divisors = 0u64;
    for a in ring.elements()? {
        match ring.classify(&a) {
            ElementClass::Unit => units += 1,
            ElementClass::ZeroDivisor => zero_divisors += 1,
            ElementClass::Zero => {}
        }
    }
    let teichmuller: Vec<Vec<u64>> = ring
        .teichmuller_set()?
        .iter()
        .map(|t| t.coeffs().to_vec())
        .collect();
    let table = trace_table(ring)?;
    let cardinality = ring.dim()? as u64;
    Ok(match format {
        Format::Json => to_json(&json!({
            "ring": ring.spec(),
            "label": ring.spec().label(),
            "cardinality": cardinality,
            "characteristic": ring.modulus(),
            "units": units,
            "zero_divisors": zero_divisors,
            "teichmuller": teichmuller,
            "trace_table": table.values,
        })),
        Format::Csv => {
            let t: Vec<String> = teichmuller.iter().map(|c| join(c, ";")).collect();
            csv_rows(&[
                vec!["key".into(), "value".into()],
                vec!["label".into(), ring.spec().label()],
                vec!["h".into(), join(&ring.spec().h, ";")],
                vec!["cardinality".into(), cardinality.to_string()],
                vec!["characteristic".into(), ring.modulus().to_string()],
                vec!["units".into(), units.to_string()],
                vec!["zero_divisors".into(), zero_divisors.to_string()],
                vec!["teichmuller".into(), t.join(" ")],
                vec!["trace_table".into(), join(&table.values, ";")],
            ])
        }
    })
}

fn cmd_verify(
    rings: &[String],
    cfg: &VerifyConfig,
    timings: bool,
    format: Format,
) -> Result<(String, i32), CliError> {
    let specs = if rings.is_empty() {
        default_specs()
    } else {
        rings
            .iter()
            .map(|r| parse_ring_arg(r))
            .collect::<Result<Vec<_>, _>>()
            .map_err(invalid)?
    };
    let report = run_all(&specs, cfg);
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let text = match format {
        Format::Json => to_json(&json!({
            "passed": report.passed(),
            "entries": report.to_json(timings),
        })),
        Format::Csv => {
            let mut header: Vec<String> = [
                "name",
                "ring",
                "status",
                "max_deviation",
                "tolerance",
                "seed",
                "detail",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            if timings {
                header.push("elapsed_ms".into());
            }
            let mut rows = vec![header];
            for e in &report.entries {
                let mut row = vec![
                    e.name.clone(),
                    e.ring.clone(),
                    serde_json::to_value(e.status)
                        .unwrap()
                        .as_str()
                        .unwrap()
                        .to_string(),
                    format!("{:e}", e.max_deviation),
                    format!("{:e}", e.tolerance),
                    e.seed.map(|s| s.to_string()).unwrap_or_default(),
                    e.detail.clone(),
                ];
                if timings {
                    row.push(format!("{:.3}", e.elapsed_ms));
                }
                rows.push(row);
            }
            csv_rows(&rows)
        }
    };
    Ok((text, code))
}

fn dispatch(cli: &Cli) -> Result<(String, i32), CliError> {
    let format = cli.format;
    let ok = |s: String| Ok((s, EXIT_OK));
    match &cli.command {
        Command::Info(r) => ok(cmd_info(&load_ring(&r.ring, cli.cap)?, format)?),
        Command::FindPoly { p, s, m } => {
            let h = find_basic_primitive(*p, *s, *m, cli.cap)?;
            ok(match format {
                Format::Json => to_json(&json!({"p": p, "s": s, "m": m, "h": h})),
                Format::Csv => csv_rows(&[
                    vec!["p".into(), "s".into(), "m".into(), "h".into()],
                    vec![p.to_string(), s.to_string(), m.to_string(), join(&h, ";")],
                ]),
            })
        }
        Command::ValidatePoly(r) => {
            let spec = parse_ring_arg(&r.ring).map_err(invalid)?;
            let report = validate_basic_primitive(&spec)?;
            let code = if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            let text =
                match format {
                    Format::Json => to_json(&json!({
                        "ring": spec,
                        "passed": report.passed(),
                        "checks": report.checks,
                    })),
                    Format::Csv => {
                        let mut rows = vec![vec!["check".into(), "passed".into(), "detail".into()]];
                        rows.extend(report.checks.iter().map(|c| {
                            vec![c.name.to_string(), c.passed.to_string(), c.detail.clone()]
                        }));
                        csv_rows(&rows)
                    }
                };
            Ok((text, code))
        }
        Command::TraceTable(r) => {
            let table = trace_table(&load_ring(&r.ring, cli.cap)?)?;
            ok(match format {
                Format::Json => to_json(&table),
                Format::Csv => {
                    let mut rows = vec![vec!["i".into(), "trace".into()]];
                    rows.extend(
                        table
                            .values
                            .iter()
                            .enumerate()
                            .map(|(i, v)| vec![i.to_string(), v.to_string()]),
                    );
                    csv_rows(&rows)
                }
            })
        }
        Command::Discriminant(r) => {
            let d = build_discriminant(&load_ring(&r.ring, cli.cap)?)?;
            ok(match format {
                Format::Json => to_json(&d),
                Format::Csv => {
                    let mut rows = Vec::new();
                    for (label, m) in [("entries", &d.entries), ("inverse", &d.inverse)] {
                        for row in m {
                            let mut cells = vec![label.to_string()];
                            cells.extend(row.iter().map(u64::to_string));
                            rows.push(cells);
                        }
                    }
                    csv_rows(&rows)
                }
            })
        }
        Command::Qft {
            ring,
            factored,
            both,
            ..
        } => {
            let ring = load_ring(&ring.ring, cli.cap)?;
            let direct = (!factored || *both)
                .then(|| qft_direct(&ring))
                .transpose()?;
            let fact = (*factored || *both)
                .then(|| qft_factored(&ring))
                .transpose()?;
            let diff = match (&direct, &fact) {
                (Some(a), Some(b)) => Some(a.max_abs_diff(b)?),
                _ => None,
            };
            ok(match format {
                Format::Json => {
                    let mut obj = serde_json::Map::new();
                    obj.insert("ring".into(), serde_json::to_value(ring.spec()).unwrap());
                    if let Some(m) = &direct {
                        obj.insert("direct".into(), serde_json::to_value(m).unwrap());
                    }
                    if let Some(m) = &fact {
                        obj.insert("factored".into(), serde_json::to_value(m).unwrap());
                    }
                    if let Some(d) = diff {
                        obj.insert("max_abs_diff".into(), json!(d));
                    }
                    to_json(&obj)
                }
                Format::Csv => {
                    let mut text = String::new();
                    if let Some(m) = &direct {
                        text += &matrix_csv(m);
                    }
                    if let Some(m) = &fact {
                        if direct.is_some() {
                            text.push('\n');
                        }
                        text += &matrix_csv(m);
                    }
                    if let Some(d) = diff {
                        text += &format!("\nmax_abs_diff,{d:e}\n");
                    }
                    text
                }
            })
        }
        Command::Verify {
            ring,
            gate_cap,
            timings,
        } => {
            let cfg = VerifyConfig {
                seed: cli.seed,
                cap: cli.cap,
                gate_cap: *gate_cap,
            };
            cmd_verify(ring, &cfg, *timings, format)
        }
        Command::HiddenLinear { ring, r, random } => {
            let ring = load_ring(&ring.ring, cli.cap)?;
            let hidden = match (r, random) {
                (Some(coeffs), false) => ring.element(coeffs)?,
                (None, true) => {
                    let n = ring.dim()?;
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    ring.element_at(rng.gen_range(0..n))
                }
                _ => return Err(invalid("give exactly one of --r or --random")),
            };
            let mut oracle = make_oracle(&ring, &hidden)?;
            let rec = recover_r(&ring, &mut oracle)?;
            let record = RecoveryRecord {
                ring: ring.spec().clone(),
                r_hidden: hidden.coeffs().to_vec(),
                r_recovered: rec.r.coeffs().to_vec(),
                queries: oracle.queries(),
                amplitude: rec.amplitude,
            };
            let code = if rec.r == hidden {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            let text = match format {
                Format::Json => to_json(&record),
                Format::Csv => csv_rows(&[
                    vec![
                        "ring".into(),
                        "r_hidden".into(),
                        "r_recovered".into(),
                        "queries".into(),
                        "amplitude".into(),
                    ],
                    vec![
                        ring.spec().label(),
                        join(&record.r_hidden, ";"),
                        join(&record.r_recovered, ";"),
                        record.queries.to_string(),
                        record.amplitude.to_string(),
                    ],
                ]),
            };
            Ok((text, code))
        }
        Command::CrtDecompose { modulus } => {
            let d = crt_decompose(*modulus)?;
            ok(match format {
                Format::Json => to_json(&d),
                Format::Csv => {
                    let mut rows = vec![vec!["prime".into(), "exponent".into(), "modulus".into()]];
                    rows.extend(d.factors.iter().map(|f| {
                        vec![
                            f.prime.to_string(),
                            f.exponent.to_string(),
                            f.modulus.to_string(),
                        ]
                    }));
                    csv_rows(&rows)
                }
            })
        }
    }
}

/// Parses `args` (including the program name), runs the command, writes its output to
/// `--out` or `stdout`, diagnostics to `stderr`, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = write!(stderr, "{e}");
            if !e.use_stderr() {
                let _ = write!(stdout, "{e}");
            }
            return code;
        }
    };
    let (text, code) = match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            return e.code;
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &text).map_err(CliError::from),
        None => stdout.write_all(text.as_bytes()).map_err(CliError::from),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {}", e.message);
        return EXIT_INVALID;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_inline_ring() {
        assert_eq!(
            parse_ring_arg("2,2,2,1,1").unwrap(),
            RingSpec::new(2, 2, 2, vec![1, 1])
        );
        assert_eq!(parse_ring_arg("2,2,2").unwrap(), RingSpec::search(2, 2, 2));
        assert_eq!(
            parse_ring_arg(r#"{"p": 3, "s": 1, "m": 2, "h": [2, 2]}"#).unwrap(),
            RingSpec::new(3, 1, 2, vec![2, 2])
        );
        assert!(parse_ring_arg("2,2").is_err());
        assert!(parse_ring_arg("x,y,z").is_err());
    }

    #[test]
    fn complex_cells() {
        use num_complex::Complex64;
        assert_eq!(complex_cell(Complex64::new(0.5, 0.0)), "0.5+0j");
        assert_eq!(complex_cell(Complex64::new(-0.5, -0.25)), "-0.5-0.25j");
    }
}
