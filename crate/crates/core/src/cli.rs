//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the bytes to
//! print together with the process exit code: `0` success, `1` a verification
//! check failed, `2` bad configuration (parameters, domain, unsupported
//! request), `3` the Fock cutoff cannot meet the tail tolerance.

use crate::error::Error;
use crate::families::{Family, FamilySpec, XSequence};
use crate::fock::{FockCutoff, FockOperator};
use crate::photostats::{
    detected_moments, detection_distribution, probabilities_csv, sample_counts, PhotonStatistics,
    RngKind, SampleConfig,
};
use crate::quadrature::{
    gram_identity, radial_moments, verify_normalization, QuadratureSpec, VerificationReport,
};
use crate::quantize::{
    construct_from_vacuum, displacement_report, GeneratorKind, Quantizer, SeparableSymbol,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "cohstate",
    version,
    about = "Generalized coherent states on a truncated Fock space"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Family name (glauber, holomorphic_hermite, displaced_number, nonlinear,
    /// qdeformed, spin, spin_jacobi, su11, barut_girardello, sgm, dfb_plane, dfb_spin)
    #[arg(long, global = true)]
    family: Option<String>,
    /// Family as JSON (`{"family": …, "params": {…}}`), inline or a file path
    #[arg(long, global = true)]
    family_json: Option<String>,
    /// Hermite parameter s, or the reference state s for displaced/Jacobi/SU(1,1) families
    #[arg(long, global = true)]
    s: Option<f64>,
    /// Deformation parameter of the q-deformed family
    #[arg(long, global = true)]
    q: Option<f64>,
    /// Bargmann index κ
    #[arg(long, global = true)]
    kappa: Option<f64>,
    /// Spin dimension label n_j (2j)
    #[arg(long, global = true)]
    nj: Option<u32>,
    /// JSON file holding an x sequence for the nonlinear family
    #[arg(long, global = true)]
    xseq: Option<PathBuf>,
    /// Amplitude as `a+bi`
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Radial grid `r_min,r_max,steps,phase`
    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha_grid: Option<String>,
    /// Fock cutoff n_max
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Largest admissible tail-mass bound
    #[arg(long, global = true, default_value_t = 1e-12)]
    tail_tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Sampler seed
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Normalization,
    Moments,
    Gram,
    Quantizer,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Generators {
    Su2,
    Su11,
    Integral,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fock coefficients φ_n(α)
    Coeffs,
    /// Photon-number statistics, optionally after a detector of efficiency η
    Stats {
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
    },
    /// Monte-Carlo detection counts
    Sample {
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        #[arg(long, default_value_t = 100_000)]
        shots: u64,
        #[arg(long, value_enum, default_value_t = RngChoice::Chacha8)]
        rng: RngChoice,
    },
    /// Verification suites
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Quantized operators or displacement-operator states
    Quantize {
        /// Symbol `g:u^k m:<int>`
        #[arg(long, allow_hyphen_values = true)]
        symbol: Option<String>,
        #[arg(long, value_enum)]
        generators: Option<Generators>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RngChoice {
    Chacha8,
    Chacha20,
}

/// Output bytes and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: Vec<u8>,
    pub stderr: String,
    pub code: i32,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Truncation { .. } => 3,
            Error::NonConvergence { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn bad(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the command line given by `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text.into_bytes(),
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: Vec::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match execute(&cli) {
        Ok((body, code)) => {
            if let Some(path) = &cli.common.out {
                if let Err(e) = std::fs::write(path, &body) {
                    return Outcome {
                        stdout: Vec::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                        code: 2,
                    };
                }
                let stderr = if code == 1 {
                    "verification failed\n".to_string()
                } else {
                    String::new()
                };
                Outcome {
                    stdout: Vec::new(),
                    stderr,
                    code,
                }
            } else {
                let stderr = if code == 1 {
                    "verification failed\n".to_string()
                } else {
                    String::new()
                };
                Outcome {
                    stdout: body.into_bytes(),
                    stderr,
                    code,
                }
            }
        }
        Err(f) => Outcome {
            stdout: Vec::new(),
            stderr: format!("error: {}\n", f.message),
            code: f.code,
        },
    }
}

fn as_index(v: f64) -> CliResult<u32> {
    if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
        Ok(v as u32)
    } else {
        Err(bad(format!(
            "--s must be a nonnegative integer for this family, got {v}"
        )))
    }
}

fn family_spec(c: &Common) -> CliResult<FamilySpec> {
    if let Some(j) = &c.family_json {
        let text = if j.trim_start().starts_with('{') {
            j.clone()
        } else {
            std::fs::read_to_string(j).map_err(|e| bad(format!("cannot read {j}: {e}")))?
        };
        return serde_json::from_str(&text).map_err(|e| bad(format!("invalid family JSON: {e}")));
    }
    let name = c
        .family
        .as_deref()
        .ok_or_else(|| bad("missing --family or --family-json"))?;
    let need =
        |v: Option<f64>, flag: &str| v.ok_or_else(|| bad(format!("family {name} needs --{flag}")));
    let nj = || c.nj.ok_or_else(|| bad(format!("family {name} needs --nj")));
    let s_index = || c.s.map(as_index).transpose().map(|v| v.unwrap_or(0));
    let spec = match name.replace('-', "_").as_str() {
        "glauber" => FamilySpec::GlauberSudarshan {},
        "holomorphic_hermite" => FamilySpec::HolomorphicHermite { s: need(c.s, "s")? },
        "displaced_number" => FamilySpec::DisplacedNumber { s: s_index()? },
        "nonlinear" => {
            let path = c
                .xseq
                .as_ref()
                .ok_or_else(|| bad("family nonlinear needs --xseq"))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
            let x_seq: XSequence = serde_json::from_str(&text)
                .map_err(|e| bad(format!("invalid x sequence JSON: {e}")))?;
            FamilySpec::NonlinearDeformed {
                x_seq,
                radius: None,
            }
        }
        "qdeformed" => FamilySpec::QDeformed { q: need(c.q, "q")? },
        "spin" => FamilySpec::Spin { n_j: nj()? },
        "spin_jacobi" => FamilySpec::SpinJacobi {
            n_j: nj()?,
            s: s_index()?,
        },
        "su11" => FamilySpec::Su11Perelomov {
            kappa: need(c.kappa, "kappa")?,
            s: s_index()?,
        },
        "barut_girardello" => FamilySpec::BarutGirardello {
            kappa: need(c.kappa, "kappa")?,
        },
        "sgm" => FamilySpec::SusskindGlogowerModified {},
        "dfb_plane" => FamilySpec::DfbPlane {
            deformation: Default::default(),
        },
        "dfb_spin" => FamilySpec::DfbSpin {
            n_j: nj()?,
            deformation: Default::default(),
        },
        other => return Err(bad(format!("unknown family {other}"))),
    };
    Ok(spec)
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let im_of = |x: &str| -> Option<f64> {
        match x {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => x.parse().ok(),
        }
    };
    match split {
        Some(k) => Some(Complex64::new(body[..k].parse().ok()?, im_of(&body[k..])?)),
        None => Some(Complex64::new(0.0, im_of(body)?)),
    }
}

fn amplitudes(c: &Common) -> CliResult<Option<Vec<Complex64>>> {
    match (&c.alpha, &c.alpha_grid) {
        (Some(_), Some(_)) => Err(bad("give either --alpha or --alpha-grid, not both")),
        (Some(a), None) => {
            let z = parse_complex(a)
                .ok_or_else(|| bad(format!("cannot parse amplitude {a:?}; use a+bi")))?;
            Ok(Some(vec![z]))
        }
        (None, Some(g)) => {
            let parts: Vec<&str> = g.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(bad("--alpha-grid expects r_min,r_max,steps,phase"));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| bad(format!("invalid number {s:?} in --alpha-grid")))
            };
            let (r0, r1, phase) = (num(parts[0])?, num(parts[1])?, num(parts[3])?);
            let steps: usize = parts[2]
                .parse()
                .map_err(|_| bad("grid steps must be a positive integer"))?;
            if steps == 0 {
                return Err(bad("grid steps must be at least 1"));
            }
            if !(r0 >= 0.0 && r1 >= r0) {
                return Err(bad("grid requires 0 <= r_min <= r_max"));
            }
            let h = if steps > 1 {
                (r1 - r0) / (steps - 1) as f64
            } else {
                0.0
            };
            Ok(Some(
                (0..steps)
                    .map(|k| Complex64::from_polar(r0 + k as f64 * h, phase))
                    .collect(),
            ))
        }
        (None, None) => Ok(None),
    }
}

fn require_amplitudes(c: &Common) -> CliResult<Vec<Complex64>> {
    amplitudes(c)?.ok_or_else(|| bad("this command needs --alpha or --alpha-grid"))
}

fn cutoff_for(family: &Family, c: &Common, alpha: Complex64) -> CliResult<FockCutoff> {
    match c.nmax {
        Some(n) => Ok(FockCutoff::new(n, c.tail_tol)?),
        None => Ok(family.required_cutoff(alpha, c.tail_tol)?),
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> CliResult<(String, i32)> {
    let c = &cli.common;
    let spec = family_spec(c)?;
    let family = Family::new(spec.clone())?;
    match &cli.command {
        Command::Coeffs => cmd_coeffs(c, &spec, &family),
        Command::Stats { eta } => cmd_stats(c, &spec, &family, *eta),
        Command::Sample { eta, shots, rng } => cmd_sample(c, &spec, &family, *eta, *shots, *rng),
        Command::Verify { suite } => cmd_verify(c, &spec, &family, *suite),
        Command::Quantize { symbol, generators } => {
            cmd_quantize(c, &spec, &family, symbol.as_deref(), *generators)
        }
    }
}

fn cmd_coeffs(c: &Common, spec: &FamilySpec, family: &Family) -> CliResult<(String, i32)> {
    let alphas = require_amplitudes(c)?;
    let grid = alphas.len() > 1 || c.alpha_grid.is_some();
    let mut csv = String::from(if grid {
        "alpha_re,alpha_im,n,re_phi,im_phi,p_n\n"
    } else {
        "n,re_phi,im_phi,p_n\n"
    });
    let mut states = Vec::new();
    for a in &alphas {
        let cut = cutoff_for(family, c, *a)?;
        let v = family.coefficients(*a, &cut)?;
        for (n, z) in v.coeffs.iter().enumerate() {
            if grid {
                write!(csv, "{},{},", num(a.re), num(a.im)).unwrap();
            }
            writeln!(csv, "{n},{},{},{}", num(z.re), num(z.im), num(z.norm_sqr())).unwrap();
        }
        states.push(json!({
            "alpha": [a.re, a.im],
            "n_max": v.len() - 1,
            "tail_mass": v.tail_mass,
            "re": v.coeffs.iter().map(|z| z.re).collect::<Vec<_>>(),
            "im": v.coeffs.iter().map(|z| z.im).collect::<Vec<_>>(),
            "p": v.probabilities(),
        }));
    }
    Ok(match c.output {
        OutputFormat::Csv => (csv, 0),
        OutputFormat::Json => (to_text(&json!({ "family": spec, "states": states })), 0),
    })
}

fn cmd_stats(c: &Common, spec: &FamilySpec, family: &Family, eta: f64) -> CliResult<(String, i32)> {
    let alphas = require_amplitudes(c)?;
    let mut csv = String::new();
    let mut out = Vec::new();
    for a in &alphas {
        let cut = cutoff_for(family, c, *a)?;
        let v = family.coefficients(*a, &cut)?;
        let photon = PhotonStatistics::from_probabilities(v.probabilities(), v.tail_mass);
        let det = PhotonStatistics::from_probabilities(
            detection_distribution(&photon.probabilities, eta)?,
            v.tail_mass,
        );
        let (mean, var) = detected_moments(&photon, eta)?;
        if alphas.len() > 1 {
            writeln!(csv, "# alpha = {}{:+}i", a.re, a.im).unwrap();
        }
        csv.push_str(&probabilities_csv(&det.probabilities));
        out.push(json!({
            "alpha": [a.re, a.im],
            "eta": eta,
            "photon": photon,
            "detected": det,
            "detected_mean": mean,
            "detected_variance": var,
        }));
    }
    Ok(match c.output {
        OutputFormat::Csv => (csv, 0),
        OutputFormat::Json => (to_text(&json!({ "family": spec, "results": out })), 0),
    })
}

fn cmd_sample(
    c: &Common,
    spec: &FamilySpec,
    family: &Family,
    eta: f64,
    shots: u64,
    rng: RngChoice,
) -> CliResult<(String, i32)> {
    let alphas = require_amplitudes(c)?;
    if alphas.len() != 1 {
        return Err(bad("sample takes a single --alpha"));
    }
    let a = alphas[0];
    let cut = cutoff_for(family, c, a)?;
    let v = family.coefficients(a, &cut)?;
    let rng = match rng {
        RngChoice::Chacha8 => RngKind::ChaCha8,
        RngChoice::Chacha20 => RngKind::ChaCha20,
    };
    let res = sample_counts(
        &v.probabilities(),
        &SampleConfig {
            shots,
            eta,
            seed: c.seed,
            rng,
        },
    )?;
    Ok(match c.output {
        OutputFormat::Csv => {
            let mut csv = String::from("m,count\n");
            for (m, k) in res.histogram.iter().enumerate() {
                writeln!(csv, "{m},{k}").unwrap();
            }
            (csv, 0)
        }
        OutputFormat::Json => (
            to_text(&json!({ "family": spec, "alpha": [a.re, a.im], "rng": rng, "sample": res })),
            0,
        ),
    })
}

/// Twenty in-domain amplitudes spread over modulus and phase.
fn default_amplitudes(family: &Family) -> Vec<Complex64> {
    let r_top = if family.radius().is_finite() {
        0.9 * family.radius()
    } else {
        3.0
    };
    (0..20)
        .map(|k| Complex64::from_polar(r_top * k as f64 / 19.0, 0.7 * k as f64))
        .collect()
}

fn reports_json(
    spec: &FamilySpec,
    suite: &str,
    reports: &[VerificationReport],
    extra: Value,
) -> (String, i32) {
    let passed = reports.iter().all(|r| r.passed);
    let mut v = json!({ "family": spec, "suite": suite, "passed": passed, "reports": reports });
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    (to_text(&v), if passed { 0 } else { 1 })
}

fn cmd_verify(
    c: &Common,
    spec: &FamilySpec,
    family: &Family,
    suite: Suite,
) -> CliResult<(String, i32)> {
    let qspec = QuadratureSpec::from_env();
    match suite {
        Suite::Normalization => {
            let alphas = amplitudes(c)?.unwrap_or_else(|| default_amplitudes(family));
            let mut residual = 0.0f64;
            let mut threshold = 0.0f64;
            let mut evals = 0;
            for a in &alphas {
                let cut = cutoff_for(family, c, *a)?;
                let r = verify_normalization(family, &[*a], &cut)?;
                residual = residual.max(r.residual);
                threshold = threshold.max(1e-9 + cut.tail_tol);
                evals += r.evaluations;
            }
            let r = VerificationReport::new(
                format!("normalization:{}", family.name()),
                residual,
                threshold,
                evals,
            );
            Ok(reports_json(spec, "normalization", &[r], json!({})))
        }
        Suite::Moments => {
            let n = c.nmax.unwrap_or(15);
            if !family.is_an_class() {
                return Err(Error::NotAnClass(family.name().into()).into());
            }
            let m = radial_moments(family, n, &qspec)?;
            let per_n: Vec<f64> = m.values.iter().map(|v| (v - 1.0).abs()).collect();
            let reports: Vec<VerificationReport> = per_n
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    VerificationReport::new(
                        format!("moment_problem:{}:n={k}", family.name()),
                        *r,
                        1e-6,
                        m.evaluations,
                    )
                })
                .collect();
            Ok(reports_json(
                spec,
                "moments",
                &reports,
                json!({ "per_n_residuals": per_n }),
            ))
        }
        Suite::Gram => {
            let n = c.nmax.unwrap_or(15);
            let r = gram_identity(family, n, &qspec)?;
            let r = VerificationReport::new(r.target, r.residual, 1e-6, r.evaluations);
            Ok(reports_json(spec, "gram", &[r], json!({})))
        }
        Suite::Quantizer => {
            let n = c.nmax.unwrap_or(20);
            let cut = FockCutoff::new(n, c.tail_tol)?;
            let q = Quantizer::from_family(family.clone(), cut, qspec)?;
            let spectrum = q.commutator_spectrum()?;
            let mut reports = vec![spectrum.report.clone()];
            if family.is_deformed_poisson() {
                let x = q.x_sequence()?;
                let dev = (1..x.len().min(n + 1))
                    .map(|k| {
                        (x[k] - family.x_value(k).unwrap_or(f64::NAN)).abs() / x[k].abs().max(1.0)
                    })
                    .fold(0.0, f64::max);
                reports.push(VerificationReport::new(
                    format!("ladder_x_sequence:{}", family.name()),
                    dev,
                    1e-8,
                    0,
                ));
                let alphas = amplitudes(c)?.unwrap_or_else(|| vec![Complex64::new(0.5, 0.0)]);
                for a in alphas {
                    let big = family.required_cutoff(a, c.tail_tol)?;
                    let big = FockCutoff::new(big.n_max.max(n), c.tail_tol)?;
                    let v = construct_from_vacuum(spec, a, &big)?;
                    let w = family.coefficients(a, &big)?;
                    reports.push(VerificationReport::new(
                        format!(
                            "construct_from_vacuum:{}:alpha={}{:+}i",
                            family.name(),
                            a.re,
                            a.im
                        ),
                        v.max_abs_diff(&w),
                        1e-10,
                        0,
                    ));
                    let qa = if big.n_max == n {
                        q.clone()
                    } else {
                        Quantizer::from_family(family.clone(), big, QuadratureSpec::from_env())?
                    };
                    reports.push(VerificationReport::new(
                        format!(
                            "eigenstate_residual:{}:alpha={}{:+}i",
                            family.name(),
                            a.re,
                            a.im
                        ),
                        qa.eigenstate_residual(a)?,
                        1e-7,
                        0,
                    ));
                }
            }
            Ok(reports_json(
                spec,
                "quantizer",
                &reports,
                json!({ "commutator_spectrum": spectrum.differences }),
            ))
        }
    }
}

/// Parses `g:u^k m:<int>` (also `g:1`, `g:u`); `m` defaults to 0.
pub fn parse_symbol(s: &str) -> Option<(u32, i64)> {
    let mut k = None;
    let mut m = 0i64;
    for tok in s.split_whitespace() {
        if let Some(g) = tok.strip_prefix("g:") {
            k = Some(match g {
                "1" => 0,
                "u" => 1,
                _ => g.strip_prefix("u^")?.parse().ok()?,
            });
        } else if let Some(v) = tok.strip_prefix("m:") {
            m = v.parse().ok()?;
        } else {
            return None;
        }
    }
    k.map(|k| (k, m))
}

fn operator_csv(op: &FockOperator) -> String {
    let mut s = String::from("row,col,re,im\n");
    for i in 0..op.dim() {
        for j in 0..op.dim() {
            let z = op.get(i, j);
            if z.re != 0.0 || z.im != 0.0 {
                writeln!(s, "{i},{j},{},{}", num(z.re), num(z.im)).unwrap();
            }
        }
    }
    s
}

fn cmd_quantize(
    c: &Common,
    spec: &FamilySpec,
    family: &Family,
    symbol: Option<&str>,
    generators: Option<Generators>,
) -> CliResult<(String, i32)> {
    let qspec = QuadratureSpec::from_env();
    match (symbol, generators) {
        (Some(sym), None) => {
            let (k, m) = parse_symbol(sym)
                .ok_or_else(|| bad(format!("cannot parse symbol {sym:?}; use g:u^k m:<int>")))?;
            let cut = FockCutoff::new(c.nmax.unwrap_or(20), c.tail_tol)?;
            let q = Quantizer::from_family(family.clone(), cut, qspec)?;
            let op = q.quantize_symbol(&SeparableSymbol::power(k, m))?;
            Ok(match c.output {
                OutputFormat::Csv => (operator_csv(&op), 0),
                OutputFormat::Json => (
                    to_text(&json!({
                        "family": spec,
                        "symbol": { "g": format!("u^{k}"), "m": m },
                        "hermitian": op.is_hermitian(),
                        "operator": op.to_json(),
                    })),
                    0,
                ),
            })
        }
        (None, Some(g)) => {
            let alphas = require_amplitudes(c)?;
            let kind = match g {
                Generators::Su2 => GeneratorKind::Su2,
                Generators::Su11 => GeneratorKind::Su11,
                Generators::Integral => GeneratorKind::Integral,
            };
            let mut reports = Vec::new();
            for a in alphas {
                let cut = FockCutoff::new(
                    c.nmax
                        .unwrap_or(if kind == GeneratorKind::Su11 { 250 } else { 40 }),
                    c.tail_tol,
                )?;
                reports.push(displacement_report(spec, kind, a, &cut, &qspec)?);
            }
            let passed = reports.iter().all(|r| r.passed);
            Ok((
                to_text(&json!({ "passed": passed, "reports": reports })),
                if passed { 0 } else { 1 },
            ))
        }
        (Some(_), Some(_)) => Err(bad("give either --symbol or --generators, not both")),
        (None, None) => Err(bad("quantize needs --symbol or --generators")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("1+0i"), Some(Complex64::new(1.0, 0.0)));
        assert_eq!(parse_complex("-0.5-2i"), Some(Complex64::new(-0.5, -2.0)));
        assert_eq!(parse_complex("0.6"), Some(Complex64::new(0.6, 0.0)));
        assert_eq!(parse_complex("-i"), Some(Complex64::new(0.0, -1.0)));
        assert_eq!(
            parse_complex("1e-3+2.5e+1i"),
            Some(Complex64::new(1e-3, 25.0))
        );
        assert_eq!(parse_complex("abc"), None);
    }

    #[test]
    fn symbol_parsing() {
        assert_eq!(parse_symbol("g:u^1 m:0"), Some((1, 0)));
        assert_eq!(parse_symbol("g:u^3 m:-2"), Some((3, -2)));
        assert_eq!(parse_symbol("g:1"), Some((0, 0)));
        assert_eq!(parse_symbol("m:1"), None);
    }
}
