//! `gcheb`: tabulated access to the closed-form spectral and scattering
//! data of point-interaction Jacobi operators, plus the verification
//! driver for the oracle-agreement suites.
//!
//! Output is CSV (header row, round-trip decimal formatting) or JSON
//! (complex numbers as `{"re": …, "im": …}`), written to `--output` or
//! standard output.  Exit codes: 0 success, 2 validation error, 3
//! numerical failure (pole, singular energy, exhausted budget), 4
//! verification-suite failure.  Identical invocations produce
//! byte-identical output.

use std::fs::File;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::exit;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use gcheb_core::chebyshev::{self, CouplingParams};
use gcheb_core::jost::{self, DetPolynomial, JacobiCoeffs};
use gcheb_core::{pointres, scattering, spectral, verify};
use gcheb_core::{EnergyPoint, Error, Sheet, SpectralMeasureRecord};

#[derive(Parser)]
#[command(name = "gcheb", version, about = "Spectral and scattering data of point-interaction Jacobi operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Spectral parameter given either as a bare real `--z` or as the pair
/// `--z-re`/`--z-im`.
#[derive(Args)]
struct ZArg {
    /// Real spectral parameter (shorthand for --z-re with --z-im 0).
    #[arg(long, conflicts_with = "z_re", conflicts_with = "z_im", allow_negative_numbers = true)]
    z: Option<f64>,

    /// Real part of the spectral parameter.
    #[arg(long, allow_negative_numbers = true)]
    z_re: Option<f64>,

    /// Imaginary part of the spectral parameter.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    z_im: f64,
}

impl ZArg {
    fn value(&self) -> Result<C64, Fail> {
        match (self.z, self.z_re) {
            (Some(x), _) => Ok(C64::new(x, 0.0)),
            (None, Some(re)) => Ok(C64::new(re, self.z_im)),
            (None, None) => Err(Fail::validation("one of --z or --z-re is required")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the orthonormal polynomials Ch_0..Ch_nmax at a point.
    Poly {
        /// Corner coupling a > 0.
        #[arg(long)]
        a: f64,
        /// Diagonal corner entry (rank-two coupling).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        b: f64,
        #[command(flatten)]
        z: ZArg,
        /// Highest polynomial degree.
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// Resolvent matrix element (R_a(z) e_n, e_m).
    Resolvent {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        z: ZArg,
        /// Evaluate on the second sheet.
        #[arg(long)]
        second_sheet: bool,
    },
    /// Spectral measure: density on a lambda grid plus the atoms block.
    Measure {
        #[arg(long)]
        a: f64,
        /// Grid spec "start:stop:count", or a bare count for an open
        /// uniform grid inside (-1, 1).
        #[arg(long, default_value = "1001", allow_hyphen_values = true)]
        grid: String,
    },
    /// Scattering matrix and stationary multipliers on a lambda grid.
    Scatter {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value = "-0.999:0.999:999", allow_hyphen_values = true)]
        grid: String,
    },
    /// Spectral shift function on a lambda grid (closed form).
    Ssf {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value = "-1.5:1.5:601", allow_hyphen_values = true)]
        grid: String,
    },
    /// Moments of the spectral measure.
    Moments {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
    },
    /// Resolvent-trace generating-function coefficients (powers of zeta^2).
    Trace {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// Perturbation-determinant polynomial of a finite-support operator.
    Jost {
        /// Off-diagonal entries a_0,..,a_{N-1} (comma-separated).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a_coeffs: Vec<f64>,
        /// Diagonal entries b_0,..,b_{N-1} (comma-separated).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b_coeffs: Vec<f64>,
    },
    /// Recover Jacobi coefficients from determinant-polynomial coefficients.
    Recover {
        /// Polynomial coefficients l_0,..,l_deg (comma-separated, l_0 = 1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<f64>,
    },
    /// Second-sheet determinant zeros.
    Resonances {
        #[arg(long)]
        a: f64,
    },
    /// Run oracle-agreement suites and print a per-suite pass table.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        /// Truncation size for the dense oracles.
        #[arg(long, default_value_t = 4096)]
        truncation: usize,
    },
}

/// Failure with the exit code it maps to.
struct Fail {
    code: i32,
    message: String,
}

impl Fail {
    fn validation(msg: impl Into<String>) -> Self {
        Fail { code: 2, message: msg.into() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Domain(_) | Error::Inadmissible(_) | Error::NearEdge(_) => 2,
            _ => 3,
        };
        Fail { code, message: e.to_string() }
    }
}

// Round-trip decimal formatting; negative zero is normalized so equal
// values never print differently.
fn fmt(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x}")
}

fn jnum(x: f64) -> Value {
    let x = if x == 0.0 { 0.0 } else { x };
    json!(x)
}

fn jcomplex(c: C64) -> Value {
    json!({"re": jnum(c.re), "im": jnum(c.im)})
}

/// Lambda grid: "start:stop:count" inclusive, or a bare count for the
/// open uniform grid lambda_k = -1 + 2(k + 1/2)/count.
fn parse_grid(spec: &str) -> Result<Vec<f64>, Fail> {
    if let Ok(count) = spec.parse::<usize>() {
        if count == 0 {
            return Err(Fail::validation("grid count must be positive"));
        }
        return Ok((0..count)
            .map(|k| -1.0 + 2.0 * (k as f64 + 0.5) / count as f64)
            .collect());
    }
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Fail::validation(format!(
            "grid must be \"start:stop:count\" or a bare count, got {spec:?}"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| Fail::validation(format!("bad grid start {:?}", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| Fail::validation(format!("bad grid stop {:?}", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| Fail::validation(format!("bad grid count {:?}", parts[2])))?;
    if count == 0 {
        return Err(Fail::validation("grid count must be positive"));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|k| start + step * k as f64).collect())
}

/// A flat table plus its JSON record form; every command emits one (the
/// measure command emits two sections).
struct Section {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    records: Vec<Value>,
    /// CSV section label, printed as "# label" before the header; empty
    /// for the first section.
    label: &'static str,
}

fn render(format: Format, sections: &[(&'static str, Section)]) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            for (_, s) in sections {
                if !s.label.is_empty() {
                    out.push_str(&format!("# {}\n", s.label));
                }
                out.push_str(&s.header.join(","));
                out.push('\n');
                for row in &s.rows {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
            }
            out
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (key, s) in sections {
                obj.insert((*key).into(), Value::Array(s.records.clone()));
            }
            let mut out = serde_json::to_string_pretty(&Value::Object(obj)).unwrap();
            out.push('\n');
            out
        }
    }
}

fn energy_point(z: C64, second_sheet: bool) -> EnergyPoint {
    let sheet = if second_sheet { Sheet::Second } else { Sheet::Physical };
    EnergyPoint::new(z, sheet)
}

fn run(cli: &Cli) -> Result<(String, i32), Fail> {
    let sections: Vec<(&'static str, Section)> = match &cli.command {
        Command::Poly { a, b, z, nmax } => {
            let params = CouplingParams::new(*a, *b)?;
            let seq = chebyshev::eval_recurrence(params, z.value()?, *nmax);
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for (n, v) in seq.values.iter().enumerate() {
                rows.push(vec![n.to_string(), fmt(v.re), fmt(v.im)]);
                records.push(json!({"n": n, "value": jcomplex(*v)}));
            }
            vec![("values", Section { header: vec!["n", "re", "im"], rows, records, label: "" })]
        }
        Command::Resolvent { a, n, m, z, second_sheet } => {
            let p = energy_point(z.value()?, *second_sheet);
            let r = pointres::resolvent_entry(*a, *n, *m, &p)?;
            let rows = vec![vec![n.to_string(), m.to_string(), fmt(r.re), fmt(r.im)]];
            let records = vec![json!({"n": n, "m": m, "value": jcomplex(r)})];
            vec![("values", Section { header: vec!["n", "m", "re", "im"], rows, records, label: "" })]
        }
        Command::Measure { a, grid } => {
            let record = SpectralMeasureRecord::new(*a)?;
            let lambdas = parse_grid(grid)?;
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for &lam in &lambdas {
                let d = record.density(lam)?;
                rows.push(vec![fmt(lam), fmt(d)]);
                records.push(json!({"lambda": jnum(lam), "density": jnum(d)}));
            }
            let density = Section { header: vec!["lambda", "density"], rows, records, label: "" };
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for &(loc, w) in record.atoms() {
                rows.push(vec![fmt(loc), fmt(w)]);
                records.push(json!({"location": jnum(loc), "weight": jnum(w)}));
            }
            let atoms = Section { header: vec!["location", "weight"], rows, records, label: "atoms" };
            vec![("density", density), ("atoms", atoms)]
        }
        Command::Scatter { a, grid } => {
            let lambdas = parse_grid(grid)?;
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for &lam in &lambdas {
                let r = scattering::record(*a, lam)?;
                rows.push(vec![fmt(lam), fmt(r.s_value.re), fmt(r.s_value.im), fmt(r.xi)]);
                records.push(json!({
                    "lambda": jnum(lam),
                    "s": jcomplex(r.s_value),
                    "xi": jnum(r.xi),
                    "sigma_plus": jcomplex(r.sigma_plus),
                    "sigma_minus": jcomplex(r.sigma_minus),
                }));
            }
            vec![("values", Section { header: vec!["lambda", "s_re", "s_im", "xi"], rows, records, label: "" })]
        }
        Command::Ssf { a, grid } => {
            let lambdas = parse_grid(grid)?;
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for &lam in &lambdas {
                let xi = scattering::ssf_closed(*a, lam)?;
                rows.push(vec![fmt(lam), fmt(xi)]);
                records.push(json!({"lambda": jnum(lam), "xi": jnum(xi)}));
            }
            vec![("values", Section { header: vec!["lambda", "xi"], rows, records, label: "" })]
        }
        Command::Moments { a, nmax } => {
            if !(*a > 0.0) || !a.is_finite() {
                return Err(Fail::validation(format!("moments require a > 0, got {a}")));
            }
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for n in 0..=*nmax {
                let v = spectral::moment(*a, n);
                rows.push(vec![n.to_string(), fmt(v)]);
                records.push(json!({"n": n, "value": jnum(v)}));
            }
            vec![("values", Section { header: vec!["n", "value"], rows, records, label: "" })]
        }
        Command::Trace { a, nmax } => {
            if !(*a > 0.0) || !a.is_finite() {
                return Err(Fail::validation(format!("trace requires a > 0, got {a}")));
            }
            let coeffs = spectral::trace_coeffs(*a, *nmax);
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for (k, &v) in coeffs.iter().enumerate() {
                rows.push(vec![(2 * k).to_string(), fmt(v)]);
                records.push(json!({"power": 2 * k, "value": jnum(v)}));
            }
            vec![("values", Section { header: vec!["power", "value"], rows, records, label: "" })]
        }
        Command::Jost { a_coeffs, b_coeffs } => {
            let coeffs = JacobiCoeffs::new(a_coeffs.clone(), b_coeffs.clone())?;
            let poly = jost::det_polynomial(&coeffs)?;
            let real = poly.real_coeffs()?;
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for (k, &c) in real.iter().enumerate() {
                rows.push(vec![k.to_string(), fmt(c)]);
                records.push(json!({"k": k, "value": jnum(c)}));
            }
            vec![("coefficients", Section { header: vec!["k", "value"], rows, records, label: "" })]
        }
        Command::Recover { coeffs } => {
            if coeffs.is_empty() {
                return Err(Fail::validation("--coeffs must be nonempty"));
            }
            let poly = DetPolynomial::from_real(coeffs);
            let recovered = if poly.degree() <= 2 {
                jost::recover_rank1(&poly)?
            } else if poly.degree() <= 4 {
                jost::recover_rank2(&poly)?
            } else {
                return Err(Fail::validation(format!(
                    "recovery handles degree <= 4, got {}",
                    poly.degree()
                )));
            };
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for n in 0..recovered.support() {
                rows.push(vec![n.to_string(), fmt(recovered.a(n)), fmt(recovered.b(n))]);
                records.push(json!({"n": n, "a": jnum(recovered.a(n)), "b": jnum(recovered.b(n))}));
            }
            vec![("coefficients", Section { header: vec!["n", "a", "b"], rows, records, label: "" })]
        }
        Command::Resonances { a } => {
            let set = spectral::resonances(*a)?;
            let mut rows = Vec::new();
            let mut records = Vec::new();
            for z in &set.points {
                rows.push(vec![fmt(z.re), fmt(z.im)]);
                records.push(jcomplex(*z));
            }
            vec![("resonances", Section { header: vec!["re", "im"], rows, records, label: "" })]
        }
        Command::Verify { suite, truncation } => {
            let names: Vec<&str> = if suite == "all" {
                verify::SUITE_NAMES.to_vec()
            } else {
                if !verify::SUITE_NAMES.contains(&suite.as_str()) {
                    return Err(Fail::validation(format!(
                        "unknown suite {suite:?}; expected one of {:?} or \"all\"",
                        verify::SUITE_NAMES
                    )));
                }
                vec![suite.as_str()]
            };
            let mut out = String::new();
            let mut all_passed = true;
            for name in names {
                let report = verify::run_suite(name, *truncation)?;
                all_passed &= report.passed();
                out.push_str(&report.render());
            }
            return Ok((out, if all_passed { 0 } else { 4 }));
        }
    };
    Ok((render(cli.format, &sections), 0))
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            let wrote = match &cli.output {
                Some(path) => File::create(path)
                    .and_then(|mut f| f.write_all(text.as_bytes()))
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(msg) = wrote {
                eprintln!("error: {msg}");
                exit(2);
            }
            exit(code);
        }
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            exit(fail.code);
        }
    }
}
