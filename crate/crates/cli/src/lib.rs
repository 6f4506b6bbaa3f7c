//! Command-line front end for `lagtetra`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input parse
//! error, 3 geometry or numerical error, 4 output write error.

use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use lagtetra::fibration::{
    eta_b_o, in_fiber_o, phi, project_q_h2, random_tetra_on_axis, scene, updown_classify, FiberPoint, UpDown,
};
use lagtetra::random::Sampler;
use lagtetra::symplectic::{classify_orbit, in_kr, plucker_distance};
use lagtetra::tetra::{dual_tetra, g_inverse, g_map, project_q, DecoratedTetra, IdealTetra};
use lagtetra::verify::{run_suite, RunConfig, SuiteReport, SUITES};
use lagtetra::{Complex, CubicForm, Error, ExtReal, H3Bar, Lagrangian, OrbitClass, ProjPoint, Tolerance};
use serde_json::{json, Value};

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GEOMETRY: i32 = 3;
pub const EXIT_OUTPUT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lagtetra", version, about = "Lagrangian planes of C⁴, regular ideal tetrahedra and the fibration over H²")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Absolute tolerance of the numerical kernels.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Root clustering tolerance.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub cluster_tol: f64,
    #[arg(long, global = true, default_value_t = 20240611)]
    pub seed: u64,
    /// Sample count (upper bound per check for `verify`).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit, barycenter and K_R membership of a Lagrangian `{"basis": [p1, p2]}`.
    Classify {
        /// JSON file, `-` for stdin.
        #[arg(default_value = "-")]
        input: String,
    },
    /// Lagrangian → tetrahedron → Lagrangian.
    Roundtrip {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Barycenter in H³ ∪ CP¹ and its projection to H².
    Project {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Random tetrahedra of the fiber over the origin of H².
    FiberSample,
    /// Φ(T, s) for a tetrahedron with barycenter on the axis at O.
    Phi {
        #[arg(default_value = "-")]
        input: String,
        /// Parameter: a number, `+inf` or `-inf`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_ext_real)]
        s: ExtReal,
    },
    /// Frames of Φ(T, s) over an evenly spaced range of s.
    Scene {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = -5.0)]
        from: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
        to: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Run verification suites (all by default).
    Verify {
        #[arg(long = "suite", value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suites: Vec<String>,
    },
}

pub fn parse_ext_real(s: &str) -> Result<ExtReal, String> {
    match s.trim() {
        "+inf" | "inf" | "+∞" | "∞" => Ok(ExtReal::PosInf),
        "-inf" | "−inf" | "-∞" | "−∞" => Ok(ExtReal::NegInf),
        t => match t.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(ExtReal::Finite(x)),
            _ => Err(format!("expected a number, +inf or -inf, got {t:?}")),
        },
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self { code: EXIT_GEOMETRY, message: e.to_string() }
    }
}

fn output_error(e: impl fmt::Display) -> CliError {
    CliError { code: EXIT_OUTPUT, message: format!("cannot write output: {e}") }
}

/// Compact rendering of a complex number: `1`, `-0.5`, `0.3+2i`.
fn num(x: f64) -> String {
    let s = format!("{x:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn complex(z: Complex) -> String {
    let (re, im) = (num(z.re), num(z.im));
    match (re == "0", im == "0") {
        (_, true) => re,
        (true, false) => format!("{im}i"),
        _ => format!("{re}{}{}i", if z.im < 0.0 { "-" } else { "+" }, num(z.im.abs())),
    }
}

fn homogeneous(p: &ProjPoint) -> String {
    format!("[{}:{}]", complex(p.a()), complex(p.b()))
}

fn barycenter_text(b: &H3Bar) -> String {
    match b {
        H3Bar::Interior(x) => format!("({}, {})", complex(x.z), num(x.t)),
        H3Bar::Boundary { boundary } => homogeneous(boundary),
    }
}

fn read_input(path: &str, stdin: &mut impl Read) -> Result<Value, CliError> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| CliError::input(format!("cannot read stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {path}: {e}")))?;
    }
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("invalid JSON: {e}")))
}

fn lagrangian(v: Value, tol: &Tolerance) -> Result<Lagrangian, CliError> {
    let basis = v
        .get("basis")
        .cloned()
        .ok_or_else(|| CliError::input("expected an object with a \"basis\" of two cubic forms"))?;
    let [p1, p2]: [CubicForm; 2] = serde_json::from_value(basis)
        .map_err(|e| CliError::input(format!("basis must be two arrays of four [re, im] pairs: {e}")))?;
    Ok(Lagrangian::new(p1, p2, tol)?)
}

/// A tetrahedron given as four vertices, or as an object with a `tetra`
/// field holding them; the dual and barycenter are recomputed.
fn decorated(v: Value, tol: &Tolerance) -> Result<DecoratedTetra, CliError> {
    let vertices = match v {
        Value::Object(mut m) => m
            .remove("tetra")
            .ok_or_else(|| CliError::input("expected four vertices or an object with \"tetra\""))?,
        other => other,
    };
    let t: IdealTetra = serde_json::from_value(vertices)
        .map_err(|e| CliError::input(format!("tetra must be four distinct points {{\"a\", \"b\"}}: {e}")))?;
    Ok(dual_tetra(&t, tol)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize to JSON")
}

fn emit(value: &Value, out: &Option<PathBuf>, stdout: &mut impl Write) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(output_error)?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(output_error),
        None => stdout.write_all(text.as_bytes()).map_err(output_error),
    }
}

fn say(stdout: &mut impl Write, line: impl fmt::Display) -> Result<(), CliError> {
    writeln!(stdout, "{line}").map_err(output_error)
}

fn classify(w: &Lagrangian, tol: &Tolerance) -> Result<(String, Value), CliError> {
    let class = classify_orbit(w, tol)?;
    let kr = in_kr(w, tol)?;
    let tp = g_inverse(w, tol)?;
    let bar = tp.barycenter();
    let line = match class {
        OrbitClass::Open => format!("Open; barycenter {}; in K_R: {kr}", barycenter_text(&bar)),
        _ => format!("{}; degenerate barycenter {}; in K_R: {kr}", class.tag(), barycenter_text(&bar)),
    };
    let report = json!({
        "orbit": to_value(&class),
        "tetra": to_value(&tp),
        "barycenter": to_value(&bar),
        "in_kr": kr,
        "in_omega": !kr,
    });
    Ok((line, report))
}

fn fiber_value(p: &FiberPoint, tol: &Tolerance) -> Value {
    let mut v = to_value(p);
    if let FiberPoint::Tetra(t) = p {
        if let Value::Object(m) = &mut v {
            let kind = match updown_classify(t, tol) {
                Ok(UpDown::Up) => json!("up"),
                Ok(UpDown::Down(d)) => json!({"down": {"v": to_value(&d.v), "theta": d.theta}}),
                Ok(UpDown::DownThree) => json!("down_three"),
                Err(e) => json!({"unclassified": e.to_string()}),
            };
            m.insert("stratum".into(), kind);
        }
    }
    v
}

fn verify(suites: &[String], cfg: &RunConfig, stdout: &mut impl Write) -> Result<(bool, Value), CliError> {
    let names: Vec<&str> = if suites.is_empty() { SUITES.to_vec() } else { suites.iter().map(String::as_str).collect() };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for name in names {
        let r = run_suite(name, cfg).map_err(|e| CliError::input(e.to_string()))?;
        say(stdout, format!("[{}] {}", r.suite, if r.passed() { "ok" } else { "FAILED" }))?;
        for c in &r.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            say(
                stdout,
                format!(
                    "  {status} {} ({} samples, {} failures, worst {:.3e}, threshold {:.1e})",
                    c.name, c.samples, c.failures, c.worst, c.threshold
                ),
            )?;
            if let Some(note) = &c.note {
                say(stdout, format!("       first failure: {note}"))?;
            }
        }
        if let Some(cert) = &r.certificate {
            say(stdout, format!("  intersection form {:?}, model {}", cert.form, cert.classification.model))?;
            say(stdout, serde_json::to_string_pretty(cert).map_err(output_error)?)?;
        }
        reports.push(r);
    }
    let passed = reports.iter().all(SuiteReport::passed);
    let failed: usize = reports.iter().flat_map(|r| &r.checks).filter(|c| !c.passed()).count();
    say(stdout, if passed { "all checks passed".to_string() } else { format!("{failed} checks failed") })?;
    Ok((passed, to_value(&reports)))
}

/// Runs one command; returns the process exit code on success paths.
pub fn run(cli: Cli, stdin: &mut impl Read, stdout: &mut impl Write) -> Result<i32, CliError> {
    let g = &cli.global;
    let cfg = RunConfig {
        tol: g.tol,
        cluster_tol: g.cluster_tol,
        seed: g.seed,
        samples: g.samples.unwrap_or(RunConfig::default().samples),
    };
    cfg.validate().map_err(CliError::input)?;
    let tol = cfg.tolerance();
    match cli.command {
        Command::Classify { input } => {
            let w = lagrangian(read_input(&input, stdin)?, &tol)?;
            let (line, report) = classify(&w, &tol)?;
            say(stdout, line)?;
            if g.out.is_some() {
                emit(&report, &g.out, stdout)?;
            }
        }
        Command::Roundtrip { input } => {
            let w = lagrangian(read_input(&input, stdin)?, &tol)?;
            let tp = g_inverse(&w, &tol)?;
            let back = g_map(&tp, &tol)?;
            let report = json!({
                "tetra": to_value(&tp),
                "image": to_value(&back),
                "error": plucker_distance(w.plucker(), back.plucker()),
            });
            emit(&report, &g.out, stdout)?;
        }
        Command::Project { input } => {
            let w = lagrangian(read_input(&input, stdin)?, &tol)?;
            let q = project_q(&w, &tol)?;
            let h2 = match project_q_h2(&w, &tol) {
                Ok(p) => to_value(&p),
                Err(Error::NotInOmega) | Err(Error::UndefinedProjection) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let report = json!({
                "orbit": to_value(&classify_orbit(&w, &tol)?.tag()),
                "barycenter": to_value(&q),
                "projection": h2,
                "in_omega": !in_kr(&w, &tol)?,
            });
            emit(&report, &g.out, stdout)?;
        }
        Command::FiberSample => {
            let mut s = Sampler::for_stream(cfg.seed, "fiber-sample");
            let n = g.samples.unwrap_or(8);
            let mut frames = Vec::with_capacity(n);
            for _ in 0..n {
                let t = random_tetra_on_axis(&mut s, 0.0, &tol)?;
                let w = g_map(&lagtetra::tetra::TetraPoint::Tetra(t), &tol)?;
                let p = in_fiber_o(&w, &tol)
                    .ok_or_else(|| Error::NumericalDegeneracy("sample left the fiber over O".into()))?;
                let mut v = fiber_value(&p, &tol);
                if let Value::Object(m) = &mut v {
                    m.insert("lagrangian".into(), to_value(&w));
                }
                frames.push(v);
            }
            emit(&json!({ "threshold": eta_b_o(), "samples": frames }), &g.out, stdout)?;
        }
        Command::Phi { input, s } => {
            let t = decorated(read_input(&input, stdin)?, &tol)?;
            let p = phi(&t, s, &tol)?;
            emit(&json!({ "s": to_value(&s), "point": fiber_value(&p, &tol) }), &g.out, stdout)?;
        }
        Command::Scene { input, from, to, steps } => {
            let t = decorated(read_input(&input, stdin)?, &tol)?;
            let frames = scene(&t, from, to, steps, &tol)?;
            emit(&to_value(&frames), &g.out, stdout)?;
        }
        Command::Verify { suites } => {
            let (passed, report) = verify(&suites, &cfg, stdout)?;
            if g.out.is_some() {
                emit(&report, &g.out, stdout)?;
            }
            return Ok(if passed { 0 } else { EXIT_VERIFY });
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("lagtetra").chain(args.iter().copied())).unwrap()
    }

    fn run_with(args: &[&str], input: &str) -> (Result<i32, CliError>, String) {
        let mut out = Vec::new();
        let r = run(cli(args), &mut input.as_bytes(), &mut out);
        (r, String::from_utf8(out).unwrap())
    }

    const OPEN: &str = r#"{"basis": [[[0,0],[1,0],[0,0],[0,0]], [[1,0],[0,0],[0,0],[1,0]]]}"#;
    const CLOSED: &str = r#"{"basis": [[[1,0],[0,0],[0,0],[0,0]], [[0,0],[1,0],[0,0],[0,0]]]}"#;

    #[test]
    fn classify_lines() {
        let (r, out) = run_with(&["classify"], OPEN);
        assert_eq!(r.unwrap(), 0);
        assert_eq!(out.trim(), "Open; barycenter (0, 0.890898718); in K_R: false");
        let (r, out) = run_with(&["classify"], CLOSED);
        assert_eq!(r.unwrap(), 0);
        assert_eq!(out.trim(), "Closed; degenerate barycenter [0:1]; in K_R: true");
    }

    #[test]
    fn ext_real_arguments() {
        assert_eq!(parse_ext_real("+inf"), Ok(ExtReal::PosInf));
        assert_eq!(parse_ext_real("-inf"), Ok(ExtReal::NegInf));
        assert_eq!(parse_ext_real("-2.5"), Ok(ExtReal::Finite(-2.5)));
        assert!(parse_ext_real("nan").is_err());
    }

    #[test]
    fn bad_inputs_map_to_exit_codes() {
        let (r, _) = run_with(&["classify"], "{");
        assert_eq!(r.unwrap_err().code, EXIT_INPUT);
        let (r, _) = run_with(&["classify"], r#"{"basis": [[[1,0],[0,0],[0,0],[0,0]], [[1,0],[0,0],[0,0],[0,0]]]}"#);
        assert_eq!(r.unwrap_err().code, EXIT_GEOMETRY);
        let (r, _) = run_with(&["--tol", "1e-2", "classify"], OPEN);
        assert_eq!(r.unwrap_err().code, EXIT_INPUT);
    }

    #[test]
    fn compact_numbers() {
        assert_eq!(complex(Complex::new(0.0, 0.0)), "0");
        assert_eq!(complex(Complex::new(-0.5, 2.0)), "-0.5+2i");
        assert_eq!(complex(Complex::new(0.0, -1.0)), "-1i");
        assert_eq!(num(-1e-12), "0");
    }
}
