//! Serializable family descriptions.

use crate::error::{Error, Result};
use crate::specfun::{ln_factorial, ln_gamma, ln_q_number};
use serde::{Deserialize, Serialize};

/// Tagged description of a coherent-state family, serialized as
/// `{ "family": <name>, "params": { … } }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params")]
pub enum FamilySpec {
    #[serde(rename = "glauber")]
    GlauberSudarshan {},
    #[serde(rename = "holomorphic_hermite")]
    HolomorphicHermite { s: f64 },
    #[serde(rename = "displaced_number")]
    DisplacedNumber { s: u32 },
    #[serde(rename = "nonlinear")]
    NonlinearDeformed {
        x_seq: XSequence,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
    },
    #[serde(rename = "qdeformed")]
    QDeformed { q: f64 },
    #[serde(rename = "spin")]
    Spin { n_j: u32 },
    #[serde(rename = "spin_jacobi")]
    SpinJacobi { n_j: u32, s: u32 },
    #[serde(rename = "su11")]
    Su11Perelomov {
        kappa: f64,
        #[serde(default)]
        s: u32,
    },
    #[serde(rename = "barut_girardello")]
    BarutGirardello { kappa: f64 },
    #[serde(rename = "sgm")]
    SusskindGlogowerModified {},
    #[serde(rename = "dfb_plane")]
    DfbPlane {
        #[serde(default)]
        deformation: DfbDeformation,
    },
    #[serde(rename = "dfb_spin")]
    DfbSpin {
        n_j: u32,
        #[serde(default)]
        deformation: DfbDeformation,
    },
}

impl FamilySpec {
    /// Short name used in the JSON tag and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::GlauberSudarshan {} => "glauber",
            FamilySpec::HolomorphicHermite { .. } => "holomorphic_hermite",
            FamilySpec::DisplacedNumber { .. } => "displaced_number",
            FamilySpec::NonlinearDeformed { .. } => "nonlinear",
            FamilySpec::QDeformed { .. } => "qdeformed",
            FamilySpec::Spin { .. } => "spin",
            FamilySpec::SpinJacobi { .. } => "spin_jacobi",
            FamilySpec::Su11Perelomov { .. } => "su11",
            FamilySpec::BarutGirardello { .. } => "barut_girardello",
            FamilySpec::SusskindGlogowerModified {} => "sgm",
            FamilySpec::DfbPlane { .. } => "dfb_plane",
            FamilySpec::DfbSpin { .. } => "dfb_spin",
        }
    }

    /// Checks the parameter-range constraints of each variant.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Parameter(m));
        match self {
            FamilySpec::HolomorphicHermite { s } if !(*s > 0.0 && *s < 1.0) => {
                bad(format!("holomorphic Hermite requires 0 < s < 1, got {s}"))
            }
            FamilySpec::NonlinearDeformed { x_seq, radius } => {
                x_seq.validate()?;
                match radius {
                    Some(r) if !(*r > 0.0) => bad(format!("radius must be positive, got {r}")),
                    _ => Ok(()),
                }
            }
            FamilySpec::QDeformed { q } if !(*q > 0.0 && q.is_finite()) => {
                bad(format!("q must be a positive real, got {q}"))
            }
            FamilySpec::Spin { n_j } if *n_j == 0 => bad("n_j must be a positive integer".into()),
            FamilySpec::SpinJacobi { n_j, s } if *n_j == 0 || s > n_j => bad(format!(
                "spin Jacobi requires n_j >= 1 and 0 <= s <= n_j, got n_j = {n_j}, s = {s}"
            )),
            FamilySpec::Su11Perelomov { kappa, .. } if !(*kappa >= 0.5 && kappa.is_finite()) => {
                bad(format!("SU(1,1) requires kappa >= 1/2, got {kappa}"))
            }
            FamilySpec::BarutGirardello { kappa } if !(*kappa > 0.5 && kappa.is_finite()) => bad(
                format!("Barut-Girardello requires kappa > 1/2, got {kappa}"),
            ),
            FamilySpec::DfbPlane { deformation } => deformation.validate(),
            FamilySpec::DfbSpin { n_j, deformation } => {
                if *n_j == 0 {
                    return bad("n_j must be a positive integer".into());
                }
                deformation.validate()
            }
            _ => Ok(()),
        }
    }
}

/// Provider of the sequence `x_1, x_2, …` (with `x_0 = 0`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum XSequence {
    ClosedForm(ClosedFormX),
    /// Finite table `x_1, …, x_L`; the family is truncated at `n = L`.
    Table {
        values: Vec<f64>,
    },
}

/// Closed-form sequences.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum ClosedFormX {
    /// `x_n = n`.
    Harmonic,
    /// `x_n = [n]_q`.
    QSymmetric { q: f64 },
    /// `x_n = n (2κ + n - 1)`.
    #[serde(alias = "barut_girardello")]
    Su11 { kappa: f64 },
    /// `x_n = n^p`.
    Power { exponent: f64 },
}

impl XSequence {
    pub fn validate(&self) -> Result<()> {
        match self {
            XSequence::ClosedForm(ClosedFormX::Harmonic) => Ok(()),
            XSequence::ClosedForm(ClosedFormX::QSymmetric { q }) if *q > 0.0 && q.is_finite() => {
                Ok(())
            }
            XSequence::ClosedForm(ClosedFormX::Su11 { kappa })
                if *kappa > 0.0 && kappa.is_finite() =>
            {
                Ok(())
            }
            XSequence::ClosedForm(ClosedFormX::Power { exponent })
                if *exponent > 0.0 && exponent.is_finite() =>
            {
                Ok(())
            }
            XSequence::ClosedForm(c) => Err(Error::Parameter(format!(
                "invalid closed-form x sequence {c:?}"
            ))),
            XSequence::Table { values } => {
                if values.is_empty() {
                    return Err(Error::Parameter("x table must not be empty".into()));
                }
                let mut prev = 0.0;
                for (i, v) in values.iter().enumerate() {
                    if !(v.is_finite() && *v > prev) {
                        return Err(Error::Parameter(format!(
                            "x table must be strictly increasing and positive (entry {} = {v})",
                            i + 1
                        )));
                    }
                    prev = *v;
                }
                Ok(())
            }
        }
    }

    /// Number of retained states for table providers.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            XSequence::Table { values } => Some(values.len() + 1),
            _ => None,
        }
    }

    /// `x_n` for `n ≥ 1`.
    pub fn value(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            XSequence::ClosedForm(ClosedFormX::Harmonic) => nf,
            XSequence::ClosedForm(ClosedFormX::QSymmetric { q }) => {
                crate::specfun::q_number(n as u64, *q)
            }
            XSequence::ClosedForm(ClosedFormX::Su11 { kappa }) => nf * (2.0 * kappa + nf - 1.0),
            XSequence::ClosedForm(ClosedFormX::Power { exponent }) => nf.powf(*exponent),
            XSequence::Table { values } => values
                .get(n.wrapping_sub(1))
                .copied()
                .unwrap_or(f64::INFINITY),
        }
    }

    /// `ln x_n!`; `+∞` beyond the end of a table.
    pub fn ln_factorial(&self, n: usize) -> f64 {
        match self {
            XSequence::ClosedForm(ClosedFormX::Harmonic) => ln_factorial(n as u64),
            XSequence::ClosedForm(ClosedFormX::Su11 { kappa }) => {
                ln_factorial(n as u64) + ln_gamma(2.0 * kappa + n as f64) - ln_gamma(2.0 * kappa)
            }
            XSequence::ClosedForm(ClosedFormX::Power { exponent }) => {
                exponent * ln_factorial(n as u64)
            }
            XSequence::ClosedForm(ClosedFormX::QSymmetric { q }) => {
                (1..=n as u64).map(|k| ln_q_number(k, *q)).sum()
            }
            XSequence::Table { values } => {
                if n > values.len() {
                    f64::INFINITY
                } else {
                    values[..n].iter().map(|v| v.ln()).sum()
                }
            }
        }
    }
}

/// Convention for the first generating-function coefficient `a_1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum A1Convention {
    /// `a_1(ξ) = ξ`, reproducing the standard binomial baseline.
    #[default]
    Xi,
    /// The literal constant `a_1 = 1`.
    Unit,
}

/// Deformation data of the DFB families: the generating function is
/// `F(ξ; t) = exp(Σ_m a_m(ξ) t^m)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DfbDeformation {
    /// Ascending coefficient lists of `a_2(ξ), a_3(ξ), …`; `a_1` is fixed by `a1`.
    #[serde(default)]
    pub a_polys: Vec<Vec<f64>>,
    #[serde(default)]
    pub a1: A1Convention,
    /// Explicit `x` sequence; derived from the generating function when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_seq: Option<XSequence>,
}

impl DfbDeformation {
    pub fn validate(&self) -> Result<()> {
        for (i, p) in self.a_polys.iter().enumerate() {
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::Parameter(format!(
                    "a_{} has non-finite coefficients",
                    i + 2
                )));
            }
        }
        if let Some(x) = &self.x_seq {
            x.validate()?;
        }
        Ok(())
    }

    /// Ascending coefficients of `a_m(ξ)` for `m ≥ 1`.
    pub fn a_poly(&self, m: usize) -> Vec<f64> {
        match m {
            0 => vec![],
            1 => match self.a1 {
                A1Convention::Xi => vec![0.0, 1.0],
                A1Convention::Unit => vec![1.0],
            },
            _ => self.a_polys.get(m - 2).cloned().unwrap_or_default(),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.a1 == A1Convention::Xi && self.a_polys.iter().all(|p| p.iter().all(|c| *c == 0.0))
    }
}
