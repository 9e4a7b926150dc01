//! Photon-counting statistics, the Bernoulli-thinning detector model and
//! Monte-Carlo sampling of detection counts.
//!
//! Sampling is reproducible: shots are split into fixed batches of
//! [`BATCH_SHOTS`]; batch `b` draws from a ChaCha generator seeded with
//! `seed_from_u64(seed)` on stream `b`, and batch histograms are merged in
//! batch order, so results do not depend on the number of worker threads.

use crate::error::{Error, Result};
use crate::families::Family;
use crate::fock::FockCutoff;
use crate::quadrature::VerificationReport;
use crate::specfun::{ln_binomial, ln_factorial};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::{ChaCha20Rng, ChaCha8Rng};
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Tolerance used to classify `Q` as zero.
pub const CLASS_TOL: f64 = 1e-9;
/// Shots per RNG batch.
pub const BATCH_SHOTS: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatisticsClass {
    SubPoissonian,
    Poissonian,
    SuperPoissonian,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhotonStatistics {
    pub probabilities: Vec<f64>,
    pub tail_mass: f64,
    pub nbar: f64,
    pub variance: f64,
    /// `Q = (Δn)²/n̄ - 1`; undefined for the vacuum.
    pub mandel_q: Option<f64>,
    pub class: Option<StatisticsClass>,
}

impl PhotonStatistics {
    pub fn from_probabilities(p: Vec<f64>, tail_mass: f64) -> Self {
        let nbar: f64 = p.iter().enumerate().map(|(n, x)| n as f64 * x).sum();
        let variance: f64 = p
            .iter()
            .enumerate()
            .map(|(n, x)| (n as f64 - nbar).powi(2) * x)
            .sum();
        let mandel_q = (nbar > 0.0).then(|| variance / nbar - 1.0);
        let class = mandel_q.map(|q| {
            if q.abs() <= CLASS_TOL {
                StatisticsClass::Poissonian
            } else if q < 0.0 {
                StatisticsClass::SubPoissonian
            } else {
                StatisticsClass::SuperPoissonian
            }
        });
        Self {
            probabilities: p,
            tail_mass,
            nbar,
            variance,
            mandel_q,
            class,
        }
    }

    /// CSV with columns `n,p_n,cumulative` at 17 significant digits.
    pub fn to_csv(&self) -> String {
        probabilities_csv(&self.probabilities)
    }
}

pub fn probabilities_csv(p: &[f64]) -> String {
    let mut out = String::from("n,p_n,cumulative\n");
    let mut cum = 0.0;
    for (n, x) in p.iter().enumerate() {
        cum += x;
        writeln!(out, "{n},{x:.16e},{cum:.16e}").expect("write to string");
    }
    out
}

/// Photon-number statistics of the state `|α⟩` of a family.
pub fn statistics(
    family: &Family,
    alpha: Complex64,
    cutoff: &FockCutoff,
) -> Result<PhotonStatistics> {
    let v = family.coefficients(alpha, cutoff)?;
    Ok(PhotonStatistics::from_probabilities(
        v.probabilities(),
        v.tail_mass,
    ))
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::Parameter(format!(
            "detector efficiency must lie in [0, 1], got {eta}"
        )));
    }
    Ok(())
}

/// Detected-count distribution `P_det(m) = Σ_n p_n C(n,m) η^m (1-η)^{n-m}`.
pub fn detection_distribution(p: &[f64], eta: f64) -> Result<Vec<f64>> {
    check_eta(eta)?;
    if eta == 1.0 {
        return Ok(p.to_vec());
    }
    let mut out = vec![0.0; p.len()];
    if eta == 0.0 {
        out[0] = p.iter().sum();
        return Ok(out);
    }
    let (le, l1e) = (eta.ln(), (-eta).ln_1p());
    let odds = eta / (1.0 - eta);
    for (n, pn) in p.iter().enumerate() {
        if *pn <= 0.0 {
            continue;
        }
        // binomial terms recurred outwards from the mode
        let nf = n as f64;
        let mode = (((nf + 1.0) * eta).floor() as usize).min(n);
        let mf = mode as f64;
        let t0 = (pn.ln() + ln_binomial(nf, mf) + mf * le + (nf - mf) * l1e).exp();
        let floor = t0 * 1e-22;
        out[mode] += t0;
        let mut t = t0;
        for m in mode..n {
            t *= (nf - m as f64) / (m as f64 + 1.0) * odds;
            if t < floor {
                break;
            }
            out[m + 1] += t;
        }
        t = t0;
        for m in (1..=mode).rev() {
            t *= m as f64 / (nf - m as f64 + 1.0) / odds;
            if t < floor {
                break;
            }
            out[m - 1] += t;
        }
    }
    Ok(out)
}

/// Mean and variance of the detected count, `(η n̄, η²(Δn)² + η(1-η) n̄)`.
pub fn detected_moments(stats: &PhotonStatistics, eta: f64) -> Result<(f64, f64)> {
    check_eta(eta)?;
    Ok((
        eta * stats.nbar,
        eta * eta * stats.variance + eta * (1.0 - eta) * stats.nbar,
    ))
}

/// Poisson distribution of mean `mean` on `0..=n_max`.
pub fn poisson(mean: f64, n_max: usize) -> Vec<f64> {
    (0..=n_max)
        .map(|n| {
            if mean == 0.0 {
                if n == 0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                (n as f64 * mean.ln() - mean - ln_factorial(n as u64)).exp()
            }
        })
        .collect()
}

/// Bose–Einstein (thermal) distribution `n̄ⁿ/(1+n̄)^{n+1}` on `0..=n_max`.
pub fn bose_einstein(nbar: f64, n_max: usize) -> Vec<f64> {
    let r = nbar / (1.0 + nbar);
    (0..=n_max)
        .map(|n| r.powi(n as i32) / (1.0 + nbar))
        .collect()
}

/// Total-variation distance `½ Σ |p_n - q_n|`, padding the shorter vector with zeros.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    let n = p.len().max(q.len());
    0.5 * (0..n)
        .map(|i| (p.get(i).unwrap_or(&0.0) - q.get(i).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RngKind {
    #[default]
    ChaCha8,
    ChaCha20,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub shots: u64,
    pub eta: f64,
    pub seed: u64,
    #[serde(default)]
    pub rng: RngKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleResult {
    pub shots: u64,
    pub eta: f64,
    pub seed: u64,
    /// `histogram[m]` is the number of shots with `m` detections.
    pub histogram: Vec<u64>,
    pub mean: f64,
    pub variance: f64,
    pub se_mean: f64,
    pub se_variance: f64,
}

fn sample_batch<R: Rng>(
    rng: &mut R,
    cdf: &[f64],
    eta: f64,
    shots: u64,
    hist: &mut [u64],
) -> Result<()> {
    for _ in 0..shots {
        let r: f64 = rng.random::<f64>() * cdf[cdf.len() - 1];
        let n = cdf.partition_point(|c| *c <= r).min(cdf.len() - 1);
        let m = if eta == 1.0 {
            n as u64
        } else if n == 0 || eta == 0.0 {
            0
        } else {
            Binomial::new(n as u64, eta)
                .map_err(|e| Error::Parameter(e.to_string()))?
                .sample(rng)
        };
        hist[m as usize] += 1;
    }
    Ok(())
}

/// Monte-Carlo detection counts from the photon-number distribution `p`.
pub fn sample_counts(p: &[f64], config: &SampleConfig) -> Result<SampleResult> {
    check_eta(config.eta)?;
    if config.shots == 0 {
        return Err(Error::Parameter("shots must be positive".into()));
    }
    if p.is_empty() || p.iter().any(|x| !(*x >= 0.0)) {
        return Err(Error::Parameter(
            "probabilities must be non-negative and non-empty".into(),
        ));
    }
    let mut cdf = Vec::with_capacity(p.len());
    let mut acc = 0.0;
    for x in p {
        acc += x;
        cdf.push(acc);
    }
    let n_batches = config.shots.div_ceil(BATCH_SHOTS);
    let hists: Vec<Vec<u64>> = (0..n_batches)
        .into_par_iter()
        .map(|b| {
            let shots = BATCH_SHOTS.min(config.shots - b * BATCH_SHOTS);
            let mut hist = vec![0u64; p.len()];
            match config.rng {
                RngKind::ChaCha8 => {
                    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                    rng.set_stream(b);
                    sample_batch(&mut rng, &cdf, config.eta, shots, &mut hist)?;
                }
                RngKind::ChaCha20 => {
                    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
                    rng.set_stream(b);
                    sample_batch(&mut rng, &cdf, config.eta, shots, &mut hist)?;
                }
            }
            Ok(hist)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut histogram = vec![0u64; p.len()];
    for h in hists {
        for (a, b) in histogram.iter_mut().zip(h) {
            *a += b;
        }
    }
    while histogram.len() > 1 && histogram[histogram.len() - 1] == 0 {
        histogram.pop();
    }
    let shots = config.shots as f64;
    let mean = histogram
        .iter()
        .enumerate()
        .map(|(m, c)| m as f64 * *c as f64)
        .sum::<f64>()
        / shots;
    let central = |k: i32| {
        histogram
            .iter()
            .enumerate()
            .map(|(m, c)| (m as f64 - mean).powi(k) * *c as f64)
            .sum::<f64>()
            / shots
    };
    let variance = central(2);
    let m4 = central(4);
    Ok(SampleResult {
        shots: config.shots,
        eta: config.eta,
        seed: config.seed,
        histogram,
        mean,
        variance,
        se_mean: (variance / shots).sqrt(),
        se_variance: ((m4 - variance * variance).max(0.0) / shots).sqrt(),
    })
}

/// Compares the sampled variance with `η²(Δn)² + η(1-η) n̄` in units of its
/// standard error; passes within 4 standard errors.
pub fn verify_detector_variance(
    stats: &PhotonStatistics,
    config: &SampleConfig,
) -> Result<VerificationReport> {
    let s = sample_counts(&stats.probabilities, config)?;
    let (_, var) = detected_moments(stats, config.eta)?;
    let z = if s.se_variance > 0.0 {
        (s.variance - var).abs() / s.se_variance
    } else {
        (s.variance - var).abs()
    };
    Ok(VerificationReport::new(
        format!("detector_variance:eta={}", config.eta),
        z,
        4.0,
        config.shots as usize,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use approx::assert_relative_eq;

    #[test]
    fn glauber_is_poissonian() {
        let f = Family::new(FamilySpec::GlauberSudarshan {}).unwrap();
        let s = statistics(
            &f,
            Complex64::new(1.5, 0.5),
            &FockCutoff::new(80, 1e-14).unwrap(),
        )
        .unwrap();
        assert!(s.mandel_q.unwrap().abs() < 1e-9);
        assert_eq!(s.class, Some(StatisticsClass::Poissonian));
    }

    #[test]
    fn vacuum_has_no_q() {
        let f = Family::new(FamilySpec::GlauberSudarshan {}).unwrap();
        let s = statistics(&f, Complex64::new(0.0, 0.0), &FockCutoff::default()).unwrap();
        assert_eq!(s.mandel_q, None);
        assert_eq!(s.class, None);
    }

    #[test]
    fn thinning_of_poisson_is_poisson() {
        let p = poisson(3.0, 60);
        let d = detection_distribution(&p, 0.4).unwrap();
        let want = poisson(1.2, 60);
        assert!(total_variation(&d, &want) < 1e-12);
    }

    #[test]
    fn csv_layout() {
        let csv = probabilities_csv(&[0.25, 0.5, 0.25]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,p_n,cumulative");
        assert_eq!(lines.len(), 4);
        assert!(lines[3].starts_with("2,2.5000000000000000e-1,1.0000000000000000e0"));
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = poisson(2.0, 30);
        let cfg = SampleConfig {
            shots: 200_000,
            eta: 0.5,
            seed: 7,
            rng: RngKind::ChaCha8,
        };
        let a = sample_counts(&p, &cfg).unwrap();
        let b = sample_counts(&p, &cfg).unwrap();
        assert_eq!(a, b);
        assert_relative_eq!(a.mean, 1.0, epsilon = 5.0 * a.se_mean);
        let c = sample_counts(&p, &SampleConfig { seed: 8, ..cfg }).unwrap();
        assert_ne!(a.histogram, c.histogram);
    }
}
