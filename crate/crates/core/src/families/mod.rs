//! Coefficient engines for the coherent-state families.
//!
//! A [`FamilySpec`] is plain serializable data; [`Family`] validates it and
//! precomputes whatever tables its engine needs. Every family except the
//! holomorphic Hermite one has coefficients of the form
//! `φ_n(α) = r_n(|α|²) e^{i k_n arg α}` with real radial amplitudes `r_n`
//! (the value of `φ_n` at the real point `α = √u`) and integer phase indices
//! `k_n`; most engine operations work on that radial form.

mod dfb;
mod spec;

pub use dfb::DfbPolynomials;
pub use spec::{A1Convention, ClosedFormX, DfbDeformation, FamilySpec, XSequence};

use crate::error::{Error, Result};
use crate::fock::{FockCutoff, FockVector};
use crate::quadrature::SemiInfiniteMap;
use crate::specfun::{
    bessel_i_scaled, bessel_j_sequence, bessel_k_scaled, jacobi, laguerre, ln_binomial,
    ln_factorial, ln_gamma, ln_q_exp_small, log_sum_exp, q_pochhammer_inf,
};
use dfb::{ln_beta_sum, ln_poly_eval, DfbTables};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Size of the precomputed DFB polynomial tables.
const DFB_TABLE: usize = 640;
/// Size of the precomputed `ln x_n!` tables.
const XFACT_TABLE: usize = 1024;

/// Radial integration domain of a family, with the map suggested for it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadialDomain {
    /// `[0, upper)`, with an integrable endpoint behaviour at `upper`.
    Finite { upper: f64 },
    /// `[0, ∞)` through `map`; `scale` sets the map's length scale and
    /// `spread` the logarithmic width used by [`SemiInfiniteMap::LogMap`].
    SemiInfinite {
        map: SemiInfiniteMap,
        scale: f64,
        spread: f64,
    },
    /// Algebraically decaying Bessel-square integrands handled by the oscillatory engine.
    Oscillatory,
}

#[derive(Clone, Debug)]
enum DeformedWeight {
    Harmonic,
    Q(f64),
    Bg(f64),
    Unsupported(String),
}

#[derive(Clone, Debug)]
enum Engine {
    Glauber,
    Hermite {
        s: f64,
    },
    Displaced {
        s: usize,
    },
    Deformed {
        x: XSequence,
        len: Option<usize>,
        ln_xf: Vec<f64>,
        weight: DeformedWeight,
        bg_kappa: Option<f64>,
    },
    Spin {
        n_j: usize,
    },
    SpinJacobi {
        n_j: usize,
        s: usize,
    },
    Su11 {
        kappa: f64,
        s: usize,
    },
    Sgm,
    DfbPlane {
        tables: DfbTables,
    },
    DfbSpin {
        n_j: usize,
        tables: DfbTables,
        ln_b: Vec<f64>,
    },
}

/// A validated family with its precomputed tables.
#[derive(Clone, Debug)]
pub struct Family {
    spec: FamilySpec,
    engine: Engine,
    radius: f64,
}

fn n_ln(n: usize, lu: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        n as f64 * lu
    }
}

fn deformed_engine(x: XSequence, weight: DeformedWeight, bg_kappa: Option<f64>) -> Engine {
    let len = x.finite_len();
    let top = len.map(|l| l - 1).unwrap_or(XFACT_TABLE);
    let ln_xf: Vec<f64> = match &x {
        XSequence::ClosedForm(ClosedFormX::QSymmetric { q }) => {
            let mut v = vec![0.0];
            for n in 1..=top {
                v.push(v[n - 1] + crate::specfun::ln_q_number(n as u64, *q));
            }
            v
        }
        XSequence::ClosedForm(_) => (0..=top).map(|n| x.ln_factorial(n)).collect(),
        XSequence::Table { .. } => {
            let mut v = vec![0.0];
            for n in 1..=top {
                v.push(v[n - 1] + x.value(n).ln());
            }
            v
        }
    };
    Engine::Deformed {
        x,
        len,
        ln_xf,
        weight,
        bg_kappa,
    }
}

fn closed_form_weight(x: &XSequence) -> DeformedWeight {
    match x {
        XSequence::ClosedForm(ClosedFormX::Harmonic) => DeformedWeight::Harmonic,
        XSequence::ClosedForm(ClosedFormX::QSymmetric { q }) => q_weight(*q),
        XSequence::ClosedForm(ClosedFormX::Su11 { kappa }) if *kappa > 0.5 => {
            DeformedWeight::Bg(*kappa)
        }
        XSequence::ClosedForm(c) => DeformedWeight::Unsupported(format!(
            "no identity weight is known for the sequence {c:?}"
        )),
        XSequence::Table { .. } => DeformedWeight::Unsupported(
            "no identity weight is known for tabulated sequences".into(),
        ),
    }
}

fn q_weight(q: f64) -> DeformedWeight {
    if q == 1.0 {
        DeformedWeight::Harmonic
    } else if q < 1.0 {
        DeformedWeight::Q(q)
    } else {
        DeformedWeight::Unsupported("identity weight unsupported for q>1".into())
    }
}

impl Family {
    pub fn new(spec: FamilySpec) -> Result<Self> {
        spec.validate()?;
        let engine = match &spec {
            FamilySpec::GlauberSudarshan {} => Engine::Glauber,
            FamilySpec::HolomorphicHermite { s } => Engine::Hermite { s: *s },
            FamilySpec::DisplacedNumber { s } => Engine::Displaced { s: *s as usize },
            FamilySpec::NonlinearDeformed { x_seq, .. } => {
                deformed_engine(x_seq.clone(), closed_form_weight(x_seq), None)
            }
            FamilySpec::QDeformed { q } => {
                let x = if *q == 1.0 {
                    XSequence::ClosedForm(ClosedFormX::Harmonic)
                } else {
                    XSequence::ClosedForm(ClosedFormX::QSymmetric { q: *q })
                };
                deformed_engine(x, q_weight(*q), None)
            }
            FamilySpec::BarutGirardello { kappa } => deformed_engine(
                XSequence::ClosedForm(ClosedFormX::Su11 { kappa: *kappa }),
                DeformedWeight::Bg(*kappa),
                Some(*kappa),
            ),
            FamilySpec::Spin { n_j } => Engine::Spin { n_j: *n_j as usize },
            FamilySpec::SpinJacobi { n_j, s } => Engine::SpinJacobi {
                n_j: *n_j as usize,
                s: *s as usize,
            },
            FamilySpec::Su11Perelomov { kappa, s } => Engine::Su11 {
                kappa: *kappa,
                s: *s as usize,
            },
            FamilySpec::SusskindGlogowerModified {} => Engine::Sgm,
            FamilySpec::DfbPlane { deformation } => Engine::DfbPlane {
                tables: DfbTables::new(deformation, DFB_TABLE)?,
            },
            FamilySpec::DfbSpin { n_j, deformation } => {
                let n_j = *n_j as usize;
                let tables = DfbTables::new(deformation, n_j)?;
                let ln_b = (0..=n_j)
                    .map(|n| ln_beta_sum(&tables.d[n], &tables.d[n_j - n]))
                    .collect::<Result<Vec<_>>>()?;
                Engine::DfbSpin { n_j, tables, ln_b }
            }
        };
        let radius = match &spec {
            FamilySpec::Su11Perelomov { .. } => 1.0,
            FamilySpec::NonlinearDeformed {
                radius: Some(r), ..
            } => *r,
            _ => f64::INFINITY,
        };
        Ok(Self {
            spec,
            engine,
            radius,
        })
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn name(&self) -> &'static str {
        self.spec.name()
    }

    /// Domain radius `R` of the amplitude.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Dimension of the state space for finite families.
    pub fn dimension(&self) -> Option<usize> {
        match &self.engine {
            Engine::Spin { n_j } | Engine::SpinJacobi { n_j, .. } | Engine::DfbSpin { n_j, .. } => {
                Some(n_j + 1)
            }
            Engine::Deformed { len, .. } => *len,
            _ => None,
        }
    }

    /// Whether `φ_n(α) = αⁿ h_n(|α|²)` (up to a global phase for spin Jacobi states).
    pub fn is_an_class(&self) -> bool {
        match &self.engine {
            Engine::Hermite { .. } | Engine::DfbSpin { .. } => false,
            Engine::Displaced { s } => *s == 0,
            Engine::Su11 { s, .. } => *s == 0,
            _ => true,
        }
    }

    /// Whether the coefficients have the radial form `r_n(u) e^{i k_n θ}`.
    pub fn is_radial(&self) -> bool {
        !matches!(self.engine, Engine::Hermite { .. })
    }

    /// Phase index `k_n` of the radial form.
    pub fn phase_index(&self, n: usize) -> i64 {
        match &self.engine {
            Engine::Displaced { s } | Engine::SpinJacobi { s, .. } | Engine::Su11 { s, .. } => {
                n as i64 - *s as i64
            }
            _ => n as i64,
        }
    }

    /// Whether the family is one of the deformed-Poisson families
    /// (`φ_n ∝ αⁿ/√(x_n!)`): Glauber, nonlinear, q-deformed, Barut–Girardello.
    pub fn is_deformed_poisson(&self) -> bool {
        matches!(self.engine, Engine::Glauber | Engine::Deformed { .. })
    }

    /// `ln x_n!` for deformed-Poisson families.
    pub fn ln_x_factorial(&self, n: usize) -> Option<f64> {
        match &self.engine {
            Engine::Glauber => Some(ln_factorial(n as u64)),
            Engine::Deformed { x, ln_xf, len, .. } => {
                if len.is_some_and(|l| n >= l) {
                    None
                } else {
                    Some(ln_xf.get(n).copied().unwrap_or_else(|| x.ln_factorial(n)))
                }
            }
            _ => None,
        }
    }

    /// `ln N(u)` of the generalized exponential `N(u) = Σ uⁿ/x_n!` for
    /// deformed-Poisson families.
    pub fn ln_deformed_normalization(&self, u: f64) -> Result<f64> {
        if !self.is_deformed_poisson() {
            return Err(Error::Unsupported(format!(
                "{} is not a deformed-Poisson family",
                self.name()
            )));
        }
        self.check_u(u)?;
        Ok(self.deformed_series(u).0)
    }

    /// `x_n` for deformed-Poisson families.
    pub fn x_value(&self, n: usize) -> Option<f64> {
        match &self.engine {
            Engine::Glauber => Some(n as f64),
            Engine::Deformed { x, len, .. } => {
                if n == 0 {
                    Some(0.0)
                } else if len.is_some_and(|l| n >= l) {
                    None
                } else {
                    Some(x.value(n))
                }
            }
            _ => None,
        }
    }

    fn check_domain(&self, alpha: Complex64) -> Result<()> {
        let m = alpha.norm();
        if !(m < self.radius) || !m.is_finite() {
            return Err(Error::Domain {
                modulus: m,
                radius: self.radius,
            });
        }
        Ok(())
    }

    fn check_u(&self, u: f64) -> Result<()> {
        if !(u >= 0.0) || !(u < self.radius * self.radius) || !u.is_finite() {
            return Err(Error::Domain {
                modulus: u.max(0.0).sqrt(),
                radius: self.radius,
            });
        }
        Ok(())
    }

    /// `(ln N(u), mean)` of the deformed exponential `N(u) = Σ uⁿ/x_n!`.
    fn deformed_series(&self, u: f64) -> (f64, f64) {
        let (len, ln_xf, x) = match &self.engine {
            Engine::Deformed { len, ln_xf, x, .. } => (*len, ln_xf, x),
            Engine::Glauber => return (u, u),
            _ => unreachable!("deformed series requested for a non-deformed family"),
        };
        if u == 0.0 {
            return (0.0, 0.0);
        }
        let lu = u.ln();
        let mut m = 0.0f64;
        let mut s = 1.0f64;
        let mut sn = 0.0f64;
        let mut prev = 0.0f64;
        let mut lf_tail = ln_xf.last().copied().unwrap_or(0.0);
        let mut n = 1usize;
        loop {
            if len.is_some_and(|l| n >= l) {
                break;
            }
            let lf = if n < ln_xf.len() {
                ln_xf[n]
            } else {
                lf_tail += x.value(n).ln();
                lf_tail
            };
            let t = n as f64 * lu - lf;
            if t > m {
                let r = (m - t).exp();
                s = s * r + 1.0;
                sn = sn * r + n as f64;
                m = t;
            } else {
                let e = (t - m).exp();
                s += e;
                sn += n as f64 * e;
            }
            if t < prev && t < m - 42.0 {
                break;
            }
            prev = t;
            n += 1;
        }
        (m + s.ln(), sn / s)
    }

    /// `ln N(u)` of the SGm normalization `N(u) = u⁻¹ Σ_m m J_m(2√u)²`, with the
    /// Bessel sequence used for it.
    fn sgm_norm(u: f64, n_max: usize) -> (f64, Vec<f64>) {
        let x = 2.0 * u.sqrt();
        let top = (n_max + 2).max((x + 40.0 + 4.0 * x.cbrt()) as usize);
        let j = bessel_j_sequence(top, x);
        let s: f64 = (1..=top).map(|m| m as f64 * j[m] * j[m]).sum();
        ((s / u).ln(), j)
    }

    /// `ln N(u) = ln Σ_n d_n(u)/F_n` for the plane DFB family.
    fn dfb_plane_norm(tables: &DfbTables, u: f64) -> Result<f64> {
        let mut terms = Vec::<f64>::new();
        let mut best = f64::NEG_INFINITY;
        let mut vanished = 0;
        for n in 0..tables.d.len() {
            let t = ln_poly_eval(&tables.d[n], u)
                .map(|v| v - tables.ln_fnorm[n])
                .unwrap_or(f64::NEG_INFINITY);
            best = best.max(t);
            let decreasing = t > f64::NEG_INFINITY
                && terms
                    .iter()
                    .rev()
                    .find(|p| p.is_finite())
                    .is_some_and(|p| t < *p);
            terms.push(t);
            vanished = if t == f64::NEG_INFINITY {
                vanished + 1
            } else {
                0
            };
            if (decreasing && t < best - 42.0 && n > 2) || vanished >= 16 {
                return Ok(log_sum_exp(&terms));
            }
        }
        Err(Error::Unsupported(format!(
            "DFB normalization series at u = {u} needs more than {} polynomials",
            tables.d.len()
        )))
    }

    fn dfb_spin_terms(n_j: usize, tables: &DfbTables, ln_b: &[f64], u: f64) -> Vec<f64> {
        // n counts the excitation weighted by u/(1+u), matching the spin states
        let x1 = u / (1.0 + u);
        let x2 = 1.0 / (1.0 + u);
        (0..=n_j)
            .map(|n| {
                match (
                    ln_poly_eval(&tables.d[n], x1),
                    ln_poly_eval(&tables.d[n_j - n], x2),
                ) {
                    (Some(a), Some(b)) => a + b - ln_b[n],
                    _ => f64::NEG_INFINITY,
                }
            })
            .collect()
    }

    fn spin_radial(n_j: usize, u: f64, lu: f64, n_hi: usize) -> Result<Vec<f64>> {
        let nj = n_j as f64;
        Ok((0..=n_hi)
            .map(|n| (0.5 * (ln_binomial(nj, n as f64) + n_ln(n, lu) - nj * u.ln_1p())).exp())
            .collect())
    }

    /// Radial amplitudes `r_0(u), …, r_{n_hi}(u)` with `n_hi = min(n_max, dim - 1)`.
    pub fn radial_amplitudes(&self, u: f64, n_max: usize) -> Result<Vec<f64>> {
        self.check_u(u)?;
        let n_hi = self.dimension().map(|d| n_max.min(d - 1)).unwrap_or(n_max);
        let lu = u.ln();
        let out: Vec<f64> = match &self.engine {
            Engine::Hermite { .. } => {
                return Err(Error::Unsupported(
                    "holomorphic Hermite coefficients are not radial".into(),
                ))
            }
            Engine::Glauber => (0..=n_hi)
                .map(|n| (0.5 * (-u + n_ln(n, lu) - ln_factorial(n as u64))).exp())
                .collect(),
            Engine::Displaced { s } => {
                let s = *s;
                (0..=n_hi)
                    .map(|n| {
                        if n >= s {
                            let k = n - s;
                            let l = laguerre(s, k as f64, u);
                            let lp = 0.5
                                * (ln_factorial(s as u64) - ln_factorial(n as u64) - u
                                    + n_ln(k, lu));
                            lp.exp() * l
                        } else {
                            let k = s - n;
                            let l = laguerre(n, k as f64, u);
                            let lp = 0.5
                                * (ln_factorial(n as u64) - ln_factorial(s as u64) - u
                                    + n_ln(k, lu));
                            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                            sign * lp.exp() * l
                        }
                    })
                    .collect()
            }
            Engine::Deformed { .. } => {
                let (ln_n, _) = self.deformed_series(u);
                (0..=n_hi)
                    .map(|n| (0.5 * (n_ln(n, lu) - self.ln_x_factorial(n).unwrap() - ln_n)).exp())
                    .collect()
            }
            Engine::Spin { n_j } => return Family::spin_radial(*n_j, u, lu, n_hi),
            Engine::SpinJacobi { n_j, s: 0 } => return Family::spin_radial(*n_j, u, lu, n_hi),
            Engine::SpinJacobi { n_j, s } => (0..=n_hi)
                .map(|n| spin_jacobi_radial(*n_j, *s, n, u))
                .collect(),
            Engine::Su11 { kappa, s } => {
                (0..=n_hi).map(|n| su11_radial(*kappa, *s, n, u)).collect()
            }
            Engine::Sgm => {
                if u == 0.0 {
                    let mut v = vec![0.0; n_hi + 1];
                    v[0] = 1.0;
                    v
                } else {
                    let (ln_n, j) = Self::sgm_norm(u, n_hi);
                    let inv_n = (-ln_n).exp();
                    (0..=n_hi)
                        .map(|n| ((n as f64 + 1.0) * inv_n).sqrt() * j[n + 1] / u.sqrt())
                        .collect()
                }
            }
            Engine::DfbPlane { tables } => {
                let ln_n = Self::dfb_plane_norm(tables, u)?;
                if n_hi >= tables.d.len() {
                    return Err(Error::Unsupported(format!(
                        "DFB tables hold {} polynomials; n_max = {n_hi} requested",
                        tables.d.len()
                    )));
                }
                (0..=n_hi)
                    .map(|n| match ln_poly_eval(&tables.d[n], u) {
                        Some(v) => (0.5 * (v - tables.ln_fnorm[n] - ln_n)).exp(),
                        None => 0.0,
                    })
                    .collect()
            }
            Engine::DfbSpin { n_j, tables, ln_b } => {
                let terms = Self::dfb_spin_terms(*n_j, tables, ln_b, u);
                let ln_n = log_sum_exp(&terms);
                terms[..=n_hi]
                    .iter()
                    .map(|t| (0.5 * (t - ln_n)).exp())
                    .collect()
            }
        };
        Ok(out)
    }

    /// Truncated Fock expansion `φ_0(α), …` with a certified tail bound.
    pub fn coefficients(&self, alpha: Complex64, cutoff: &FockCutoff) -> Result<FockVector> {
        self.check_domain(alpha)?;
        let coeffs: Vec<Complex64> = match &self.engine {
            Engine::Hermite { s } => hermite_coefficients(*s, alpha, cutoff.n_max),
            _ => {
                let u = alpha.norm_sqr();
                let n_max = self.dimension().map(|d| d - 1).unwrap_or(cutoff.n_max);
                let r = self.radial_amplitudes(u, n_max)?;
                let theta = if u == 0.0 { 0.0 } else { alpha.arg() };
                r.iter()
                    .enumerate()
                    .map(|(n, rn)| {
                        Complex64::from_polar(1.0, self.phase_index(n) as f64 * theta) * rn
                    })
                    .collect()
            }
        };
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::Parameter(format!(
                "non-finite coefficient at alpha = {alpha}"
            )));
        }
        let tail_mass = if self.dimension().is_some() {
            0.0
        } else {
            let p: Vec<f64> = coeffs.iter().map(|c| c.norm_sqr()).collect();
            let tail = ratio_tail(&p);
            if !(tail <= cutoff.tail_tol) {
                return Err(Error::Truncation {
                    n_max: cutoff.n_max,
                    tail,
                    tol: cutoff.tail_tol,
                });
            }
            tail
        };
        Ok(FockVector { coeffs, tail_mass })
    }

    /// Holomorphic Hermite coefficients without domain or tail checks, for quadrature nodes.
    pub(crate) fn coefficients_unchecked(
        &self,
        alpha: Complex64,
        cutoff: &FockCutoff,
    ) -> Vec<Complex64> {
        match &self.engine {
            Engine::Hermite { s } => hermite_coefficients(*s, alpha, cutoff.n_max),
            _ => unreachable!("only used for the holomorphic Hermite family"),
        }
    }

    /// Smallest power-of-two cutoff (from 16) meeting `tail_tol` at `alpha`.
    pub fn required_cutoff(&self, alpha: Complex64, tail_tol: f64) -> Result<FockCutoff> {
        if let Some(d) = self.dimension() {
            return FockCutoff::new(d - 1, tail_tol);
        }
        let mut n = 16usize;
        loop {
            let c = FockCutoff::new(n, tail_tol)?;
            match self.coefficients(alpha, &c) {
                Ok(_) => return Ok(c),
                Err(Error::Truncation { .. }) if n < 1 << 16 => n *= 2,
                Err(e) => return Err(e),
            }
        }
    }

    /// AN profile `h_n(u)` with `φ_n(α) = αⁿ h_n(|α|²)`.
    ///
    /// For spin Jacobi states the profile is the conventional one and the
    /// coefficient engine carries the extra global phase `(-1)^s e^{-is arg α}`.
    pub fn an_profile(&self, n: usize, u: f64) -> Result<f64> {
        if !self.is_an_class() {
            return Err(Error::NotAnClass(self.name().into()));
        }
        self.check_u(u)?;
        if self.dimension().is_some_and(|d| n >= d) {
            return Ok(0.0);
        }
        match &self.engine {
            Engine::Glauber | Engine::Displaced { .. } => {
                Ok((-0.5 * (u + ln_factorial(n as u64))).exp())
            }
            Engine::Deformed { .. } => {
                let (ln_n, _) = self.deformed_series(u);
                Ok((-0.5 * (self.ln_x_factorial(n).unwrap() + ln_n)).exp())
            }
            Engine::Spin { n_j } => {
                let nj = *n_j as f64;
                Ok((0.5 * (ln_binomial(nj, n as f64) - nj * u.ln_1p())).exp())
            }
            Engine::SpinJacobi { n_j, s } => spin_jacobi_profile(*n_j, *s, n, u),
            Engine::Su11 { kappa, .. } => {
                let k = *kappa;
                Ok((0.5
                    * (ln_gamma(2.0 * k + n as f64) - ln_gamma(2.0 * k) - ln_factorial(n as u64))
                    + k * (-u).ln_1p())
                .exp())
            }
            Engine::Sgm => {
                if u <= 1.0 {
                    let ln_n = if u == 0.0 {
                        0.0
                    } else {
                        Self::sgm_norm(u, n).0
                    };
                    let mut term = (-ln_factorial(n as u64 + 1)).exp();
                    let mut sum = term;
                    for k in 1..200 {
                        term *= -u / (k as f64 * (n + 1 + k) as f64);
                        sum += term;
                        if term.abs() < 1e-18 * sum.abs() {
                            break;
                        }
                    }
                    Ok(((n as f64 + 1.0) * (-ln_n).exp()).sqrt() * sum)
                } else {
                    Ok(self.radial_amplitudes(u, n)?[n] / u.powf(n as f64 / 2.0))
                }
            }
            Engine::DfbPlane { tables } => {
                if u == 0.0 {
                    let p = &tables.d[n];
                    if p.iter().take(n).any(|c| *c != 0.0) {
                        return Err(Error::Parameter(format!(
                            "DFB profile h_{n} is singular at u = 0"
                        )));
                    }
                    let top = p.get(n).copied().unwrap_or(0.0);
                    let ln_n = Self::dfb_plane_norm(tables, 0.0)?;
                    Ok((0.5 * (top.ln() - tables.ln_fnorm[n] - ln_n)).exp())
                } else {
                    Ok(self.radial_amplitudes(u, n)?[n] / u.powf(n as f64 / 2.0))
                }
            }
            Engine::Hermite { .. } | Engine::DfbSpin { .. } => unreachable!(),
        }
    }

    /// `ln w(u)` of the radial identity weight (`𝔴(α) = w(|α|²)/π`).
    pub fn ln_identity_weight(&self, u: f64) -> Result<f64> {
        self.check_u(u)?;
        match &self.engine {
            Engine::Glauber | Engine::Displaced { .. } => Ok(0.0),
            Engine::Hermite { s } => Ok(((1.0 / s - s) / 2.0).ln()),
            Engine::Deformed { weight, .. } => match weight {
                DeformedWeight::Harmonic => Ok(0.0),
                DeformedWeight::Q(q) => Ok(ln_q_exp_small(u, *q)? + ln_wq(u, *q)),
                DeformedWeight::Bg(kappa) => {
                    let k = *kappa;
                    if u == 0.0 {
                        return Ok(-(2.0 * k - 1.0).ln());
                    }
                    let (ln_n, _) = self.deformed_series(u);
                    let x = 2.0 * u.sqrt();
                    let lk = bessel_k_scaled(2.0 * k - 1.0, x)?.ln() - x;
                    Ok(ln_n + 2f64.ln() - ln_gamma(2.0 * k) + (k - 0.5) * u.ln() + lk)
                }
                DeformedWeight::Unsupported(m) => Err(Error::Unsupported(m.clone())),
            },
            Engine::Spin { n_j } | Engine::SpinJacobi { n_j, .. } => {
                Ok((*n_j as f64 + 1.0).ln() - 2.0 * u.ln_1p())
            }
            Engine::Su11 { kappa, .. } => {
                if *kappa <= 0.5 {
                    return Err(Error::Unsupported(
                        "SU(1,1) identity weight requires kappa > 1/2".into(),
                    ));
                }
                Ok((2.0 * kappa - 1.0).ln() - 2.0 * (-u).ln_1p())
            }
            Engine::Sgm => Ok(if u == 0.0 {
                0.0
            } else {
                Self::sgm_norm(u, 0).0
            }),
            Engine::DfbPlane { tables } => Ok(-u + Self::dfb_plane_norm(tables, u)?),
            Engine::DfbSpin { n_j, tables, ln_b } => {
                Ok(log_sum_exp(&Self::dfb_spin_terms(*n_j, tables, ln_b, u)) - 2.0 * u.ln_1p())
            }
        }
    }

    /// Radial identity weight `w(u)`.
    pub fn identity_weight(&self, u: f64) -> Result<f64> {
        Ok(self.ln_identity_weight(u)?.exp())
    }

    /// Closed-form mean photon number where available.
    pub fn nbar_closed(&self, u: f64) -> Result<f64> {
        self.check_u(u)?;
        match &self.engine {
            Engine::Glauber => Ok(u),
            Engine::Displaced { s } => Ok(u + *s as f64),
            Engine::Spin { n_j } => Ok(*n_j as f64 * u / (1.0 + u)),
            Engine::SpinJacobi { n_j, s: 0 } => Ok(*n_j as f64 * u / (1.0 + u)),
            Engine::Su11 { kappa, s: 0 } => Ok(2.0 * kappa * u / (1.0 - u)),
            Engine::Deformed {
                bg_kappa: Some(k), ..
            } => {
                if u == 0.0 {
                    return Ok(0.0);
                }
                let x = 2.0 * u.sqrt();
                Ok(u.sqrt() * bessel_i_scaled(2.0 * k, x)? / bessel_i_scaled(2.0 * k - 1.0, x)?)
            }
            Engine::Deformed { .. } => Ok(self.deformed_series(u).1),
            _ => Err(Error::Unsupported(format!(
                "no closed-form mean photon number for {}",
                self.name()
            ))),
        }
    }

    /// Optical phase-space point `ξ_α = √n̄(α) e^{i arg α}`; the mean is the
    /// closed form when available and the numeric mean otherwise.
    pub fn phase_space_point(&self, alpha: Complex64, cutoff: &FockCutoff) -> Result<Complex64> {
        self.check_domain(alpha)?;
        if alpha.norm() == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let nbar = match self.nbar_closed(alpha.norm_sqr()) {
            Ok(v) => v,
            Err(Error::Unsupported(_)) => {
                let v = self.coefficients(alpha, cutoff)?;
                v.probabilities()
                    .iter()
                    .enumerate()
                    .map(|(n, p)| n as f64 * p)
                    .sum()
            }
            Err(e) => return Err(e),
        };
        Ok(Complex64::from_polar(nbar.sqrt(), alpha.arg()))
    }

    /// Recommended radial integration domain for moments up to `n_top`.
    pub fn radial_domain(&self, n_top: usize) -> RadialDomain {
        let nt = n_top as f64;
        let exp_map = |scale: f64| RadialDomain::SemiInfinite {
            map: SemiInfiniteMap::ExpMap,
            scale,
            spread: 1.0,
        };
        match &self.engine {
            Engine::Glauber | Engine::DfbPlane { .. } => exp_map(1.0 + nt / 2.0),
            Engine::Displaced { s } => exp_map(1.0 + (nt + *s as f64) / 2.0),
            Engine::Deformed {
                weight: DeformedWeight::Q(q),
                ..
            } => {
                let h = q.ln().abs();
                RadialDomain::SemiInfinite {
                    map: SemiInfiniteMap::LogMap,
                    scale: (h * nt / 2.0).min(300.0).exp(),
                    spread: (h * (nt + 2.0) / 2.0).max(2.0),
                }
            }
            Engine::Deformed {
                weight: DeformedWeight::Bg(k),
                ..
            } => exp_map((nt + 2.0 * k + 4.0).powi(2) / 4.0),
            Engine::Deformed { .. } => exp_map(1.0 + nt / 2.0),
            Engine::Spin { .. } | Engine::SpinJacobi { .. } | Engine::DfbSpin { .. } => {
                RadialDomain::SemiInfinite {
                    map: SemiInfiniteMap::RationalMap,
                    scale: 1.0,
                    spread: 1.0,
                }
            }
            Engine::Su11 { .. } => RadialDomain::Finite { upper: 1.0 },
            Engine::Sgm => RadialDomain::Oscillatory,
            Engine::Hermite { .. } => exp_map(1.0),
        }
    }

    /// Holomorphic Hermite parameter `s`, if this is that family.
    pub fn hermite_parameter(&self) -> Option<f64> {
        match self.engine {
            Engine::Hermite { s } => Some(s),
            _ => None,
        }
    }
}

/// `ln w_q(u) = ln[c Σ_j g_q(u c / q^{2j}) 𝔈_q(-q^{2j}/c)]`, `c = q⁻¹ - q`, `0 < q < 1`.
///
/// `𝔈_q(-q^{2j}/c)` is evaluated as the product `(q^{2j+2}; q²)_∞`; the sum over
/// `j` stops once terms decrease below `1e-17` of the running sum.
pub(crate) fn ln_wq(u: f64, q: f64) -> f64 {
    let c = 1.0 / q - q;
    let p = q * q;
    let h = q.ln().abs();
    let ln_g0 = -0.5 * (2.0 * PI * h).ln();
    let lsq = 0.5 * q.ln();
    let mut terms = Vec::new();
    let mut best = f64::NEG_INFINITY;
    let lu = u.ln();
    for j in 0..100_000usize {
        let lv = lu + c.ln() - j as f64 * p.ln();
        let lg = ln_g0 - (lv - lsq).powi(2) / (2.0 * h);
        let e = q_pochhammer_inf(p.powi(j as i32 + 1), p);
        let t = lg + e.ln();
        let decreasing = terms.last().is_some_and(|prev: &f64| t < *prev);
        best = best.max(t);
        terms.push(t);
        if decreasing && t < best + (1e-17f64).ln() {
            break;
        }
    }
    c.ln() + log_sum_exp(&terms)
}

/// Envelope-ratio bound on `Σ_{n>N} p_n`: the geometric decay rate is the
/// ratio of block maxima over the last two blocks of eight entries.
pub(crate) fn ratio_tail(p: &[f64]) -> f64 {
    let n = p.len();
    let last = p[n - 1];
    if last == 0.0 {
        return 0.0;
    }
    let k = (n / 2).clamp(1, 8);
    if n < 2 {
        return f64::INFINITY;
    }
    let hi = p[n - k..].iter().cloned().fold(0.0, f64::max);
    let lo = p[n - 2 * k..n - k].iter().cloned().fold(0.0, f64::max);
    if lo == 0.0 {
        return f64::INFINITY;
    }
    let r = (hi / lo).powf(1.0 / k as f64);
    if !(r < 1.0) {
        return f64::INFINITY;
    }
    hi * r / (1.0 - r)
}

/// `r_n(u) = (-1)^s u^{n/2} h_{n;s}(u)`.
fn spin_jacobi_radial(n_j: usize, s: usize, n: usize, u: f64) -> f64 {
    let pref = 0.5
        * (ln_factorial(n as u64) + ln_factorial((n_j - n) as u64)
            - ln_factorial(s as u64)
            - ln_factorial((n_j - s) as u64))
        - 0.5 * n_j as f64 * u.ln_1p();
    let su = u.sqrt();
    let lo = (n + s).saturating_sub(n_j);
    let hi = n.min(s);
    let mut sum = 0.0;
    for r in lo..=hi {
        let power = (n + s) as i32 - 2 * r as i32;
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let lb = crate::specfun::ln_binomial(s as f64, r as f64)
            + crate::specfun::ln_binomial((n_j - s) as f64, (n - r) as f64);
        sum += sign * lb.exp() * su.powi(power);
    }
    let global = if s % 2 == 0 { 1.0 } else { -1.0 };
    global * pref.exp() * sum
}

fn spin_jacobi_profile(n_j: usize, s: usize, n: usize, u: f64) -> Result<f64> {
    if u > 0.0 {
        let global = if s % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(global * spin_jacobi_radial(n_j, s, n, u) / u.powf(n as f64 / 2.0));
    }
    let lo = (n + s).saturating_sub(n_j);
    let hi = n.min(s);
    let mut sum = 0.0;
    for r in lo..=hi {
        let twice_exponent = s as i64 - 2 * r as i64;
        let c = crate::specfun::binomial(s as u64, r as u64)
            * crate::specfun::binomial((n_j - s) as u64, (n - r) as u64)
            * if r % 2 == 0 { 1.0 } else { -1.0 };
        if twice_exponent < 0 && c != 0.0 {
            return Err(Error::Parameter(format!(
                "spin Jacobi profile h_{{{n};{s}}} is singular at u = 0"
            )));
        }
        if twice_exponent == 0 {
            sum += c;
        }
    }
    let pref = 0.5
        * (ln_factorial(n as u64) + ln_factorial((n_j - n) as u64)
            - ln_factorial(s as u64)
            - ln_factorial((n_j - s) as u64));
    Ok(pref.exp() * sum)
}

/// Radial SU(1,1) matrix element `U^κ_{ns}` at real `α = √u`.
fn su11_radial(kappa: f64, s: usize, n: usize, u: f64) -> f64 {
    let (lo, hi) = if n < s { (n, s) } else { (s, n) };
    let k = hi - lo;
    let lu = u.ln();
    let pref = 0.5
        * (ln_factorial(lo as u64) + ln_gamma(2.0 * kappa + hi as f64)
            - ln_factorial(hi as u64)
            - ln_gamma(2.0 * kappa + lo as f64))
        + kappa * (-u).ln_1p()
        + 0.5 * n_ln(k, lu);
    let sign = if n < s && k % 2 == 1 { -1.0 } else { 1.0 };
    sign * pref.exp() * jacobi(lo, k as f64, 2.0 * kappa - 1.0, 1.0 - 2.0 * u)
}

/// Holomorphic Hermite coefficients through the scaled recurrence
/// `g_n = H_n(α)/√(βⁿ n!)`, `β = 2(1+s)/(1-s)`.
fn hermite_coefficients(s: f64, alpha: Complex64, n_max: usize) -> Vec<Complex64> {
    let beta = 2.0 * (1.0 + s) / (1.0 - s);
    let (x, y) = (alpha.re, alpha.im);
    let ln_pref2 =
        -x * x + y * y - (PI * s.sqrt() / (1.0 - s)).ln() - ((1.0 / s - s) / (2.0 * PI)).ln()
            + s * x * x
            - y * y / s;
    let pref = Complex64::from_polar((0.5 * ln_pref2).exp(), -x * y);
    let mut out = Vec::with_capacity(n_max + 1);
    let mut g0 = Complex64::new(1.0, 0.0);
    out.push(pref * g0);
    if n_max == 0 {
        return out;
    }
    let mut g1 = 2.0 * alpha / beta.sqrt();
    out.push(pref * g1);
    for n in 1..n_max {
        let nf = n as f64;
        let g2 = 2.0 * alpha * g1 / (beta * (nf + 1.0)).sqrt()
            - 2.0 * (nf / (nf + 1.0)).sqrt() * g0 / beta;
        g0 = g1;
        g1 = g2;
        out.push(pref * g1);
    }
    out
}

/// Stereographic amplitude `α = tan(θ/2) e^{iφ}`.
pub fn stereographic(theta: f64, phi: f64) -> Result<Complex64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Parameter(format!(
            "theta must lie in [0, pi], got {theta}"
        )));
    }
    if (PI - theta).abs() < 1e-15 {
        return Err(Error::Parameter(
            "stereographic pole at theta = pi (alpha is infinite)".into(),
        ));
    }
    Ok(Complex64::from_polar((theta / 2.0).tan(), phi))
}

/// One-shot form of [`Family::coefficients`].
pub fn coefficients(
    spec: &FamilySpec,
    alpha: Complex64,
    cutoff: &FockCutoff,
) -> Result<FockVector> {
    Family::new(spec.clone())?.coefficients(alpha, cutoff)
}

/// One-shot form of [`Family::an_profile`].
pub fn an_profile(spec: &FamilySpec, n: usize, u: f64) -> Result<f64> {
    Family::new(spec.clone())?.an_profile(n, u)
}

/// One-shot form of [`Family::identity_weight`].
pub fn identity_weight(spec: &FamilySpec, u: f64) -> Result<f64> {
    Family::new(spec.clone())?.identity_weight(u)
}

/// One-shot form of [`Family::nbar_closed`].
pub fn nbar_closed(spec: &FamilySpec, u: f64) -> Result<f64> {
    Family::new(spec.clone())?.nbar_closed(u)
}

/// One-shot form of [`Family::phase_space_point`].
pub fn phase_space_point(
    spec: &FamilySpec,
    alpha: Complex64,
    cutoff: &FockCutoff,
) -> Result<Complex64> {
    Family::new(spec.clone())?.phase_space_point(alpha, cutoff)
}

/// DFB polynomial `q_n` with `f_n` and `x_n!`.
pub fn dfb_polynomials(deformation: &DfbDeformation, n: usize) -> Result<DfbPolynomials> {
    deformation.polynomials(n)
}

/// Deformed binomial distribution `𝔭^{(n)}(ξ)`.
pub fn dfb_distribution(deformation: &DfbDeformation, n: usize, xi: f64) -> Result<Vec<f64>> {
    deformation.distribution(n, xi)
}

#[cfg(test)]
mod tests;
