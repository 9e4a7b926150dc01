//! Coherent-state quantization for AN families and displacement-operator
//! coherent states.
//!
//! Symbols are separable, `f(α) = g(u) e^{imθ}`; after the angular integral
//! every matrix element is a one-dimensional radial integral
//! `⟨n|A_f|n+m⟩ = ∫ w(u) g(u) r_n(u) r_{n+m}(u) du`.

use crate::error::{Error, Result};
use crate::families::{Family, FamilySpec, RadialDomain};
use crate::fock::{matrix_exponential, FockCutoff, FockOperator, FockVector};
use crate::quadrature::{radial_integral, QuadratureSpec, VerificationReport};
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Radial real function on `[0, R²)`.
pub type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Symbol `g(u) e^{imθ}`.
#[derive(Clone)]
pub struct SeparableSymbol {
    pub m: i64,
    pub g: RadialFn,
    /// Extra powers of `u` the integrand carries, used to pick the radial map.
    pub degree_hint: usize,
}

impl SeparableSymbol {
    pub fn new(m: i64, g: RadialFn) -> Self {
        Self {
            m,
            g,
            degree_hint: 1,
        }
    }

    /// `u^k e^{imθ}`.
    pub fn power(k: u32, m: i64) -> Self {
        Self {
            m,
            g: Arc::new(move |u: f64| u.powi(k as i32)),
            degree_hint: k as usize,
        }
    }
}

impl fmt::Debug for SeparableSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeparableSymbol")
            .field("m", &self.m)
            .field("degree_hint", &self.degree_hint)
            .finish()
    }
}

/// Quantization map of an AN family, with the modifying weight `𝔫(u)` used
/// for the ladder operators (`w̃ = 𝔫 w`).
#[derive(Clone)]
pub struct Quantizer {
    family: Family,
    weight_mod: Option<RadialFn>,
    cutoff: FockCutoff,
    qspec: QuadratureSpec,
}

impl fmt::Debug for Quantizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quantizer")
            .field("family", &self.family.spec())
            .field("weight_mod", &self.weight_mod.is_some())
            .field("cutoff", &self.cutoff)
            .finish()
    }
}

/// Diagonal of `[a, a†]` with the factored form as a cross-check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorSpectrum {
    /// `X_{n+1} - X_n` for `n = 0..n_max-1`.
    pub differences: Vec<f64>,
    /// `[∫ w̃√u r_n(r_{n+1} - r_{n-1})] · [∫ w̃√u r_n(r_{n+1} + r_{n-1})]`.
    pub factored: Vec<f64>,
    pub report: VerificationReport,
}

impl Quantizer {
    pub fn new(spec: FamilySpec, cutoff: FockCutoff, qspec: QuadratureSpec) -> Result<Self> {
        Self::from_family(Family::new(spec)?, cutoff, qspec)
    }

    pub fn from_family(
        family: Family,
        mut cutoff: FockCutoff,
        qspec: QuadratureSpec,
    ) -> Result<Self> {
        if !family.is_an_class() {
            return Err(Error::NotAnClass(family.name().into()));
        }
        if let RadialDomain::Oscillatory = family.radial_domain(0) {
            return Err(Error::Unsupported(format!(
                "quantization kernels of {} are not absolutely convergent",
                family.name()
            )));
        }
        family.ln_identity_weight(0.5f64.min(family.radius().powi(2) / 2.0))?;
        if let Some(d) = family.dimension() {
            cutoff.n_max = cutoff.n_max.min(d - 1);
        }
        Ok(Self {
            family,
            weight_mod: None,
            cutoff,
            qspec,
        })
    }

    /// Sets the ladder weight `𝔫(u)` (must be positive on the domain).
    pub fn with_weight_mod(mut self, n: RadialFn) -> Self {
        self.weight_mod = Some(n);
        self
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn cutoff(&self) -> &FockCutoff {
        &self.cutoff
    }

    /// `∫ f(u, ρ) du` where `ρ_n = √w(u) r_n(u)`, `n ≤ n_max + 1`.
    fn radial_vector<F>(&self, dim: usize, degree: usize, f: F) -> Result<(Vec<f64>, usize)>
    where
        F: Fn(f64, &[f64], &mut [f64]),
    {
        let n_top = self.cutoff.n_max + 1;
        let domain = self.family.radial_domain(n_top + 2 * degree);
        let mut failure = None;
        let mut rho = Vec::with_capacity(n_top + 1);
        let res = radial_integral(
            &domain,
            |u, out| match (
                self.family.ln_identity_weight(u),
                self.family.radial_amplitudes(u, n_top),
            ) {
                (Ok(lw), Ok(r)) => {
                    let s = (0.5 * lw).exp();
                    rho.clear();
                    rho.extend(r.iter().map(|x| x * s));
                    rho.resize(n_top + 1, 0.0);
                    f(u, &rho, out);
                }
                (Err(e), _) | (_, Err(e)) => {
                    failure.get_or_insert(e);
                    out.iter_mut().for_each(|o| *o = 0.0);
                }
            },
            dim,
            &self.qspec,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        let r = res?;
        if r.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Divergence(
                "radial quantization integral is not finite".into(),
            ));
        }
        Ok((r.values, r.evaluations))
    }

    /// `A_f` for `f = g(u) e^{imθ}`: nonzero only on the band `n' = n + m`.
    pub fn quantize_symbol(&self, sym: &SeparableSymbol) -> Result<FockOperator> {
        let d = self.cutoff.dim();
        let mut m = Array2::<Complex64>::zeros((d, d));
        let shift = sym.m.unsigned_abs() as usize;
        if shift >= d {
            return Ok(FockOperator::from_matrix(m));
        }
        let len = d - shift;
        let g = sym.g.clone();
        let (vals, _) = self.radial_vector(len, sym.degree_hint, |u, rho, out| {
            let gu = g(u);
            for (i, o) in out.iter_mut().enumerate() {
                *o = gu * rho[i] * rho[i + shift];
            }
        })?;
        for (i, v) in vals.into_iter().enumerate() {
            let (r, c) = if sym.m >= 0 {
                (i, i + shift)
            } else {
                (i + shift, i)
            };
            m[[r, c]] = Complex64::new(v, 0.0);
        }
        Ok(FockOperator::from_matrix(m))
    }

    fn nmod(&self, u: f64) -> f64 {
        self.weight_mod.as_ref().map(|f| f(u)).unwrap_or(1.0)
    }

    /// Entries `a_{n-1,n} = ∫ w̃ √u r_{n-1} r_n du`, `n = 1..=n_max + 1`.
    fn lowering_entries(&self) -> Result<Vec<f64>> {
        let d = self.cutoff.dim();
        let (vals, _) = self.radial_vector(d, 1, |u, rho, out| {
            let k = self.nmod(u) * u.sqrt();
            for (i, o) in out.iter_mut().enumerate() {
                *o = k * rho[i] * rho[i + 1];
            }
        })?;
        Ok(vals)
    }

    /// Lowering operator `a^h`; the raising operator is its adjoint.
    pub fn lowering_operator(&self) -> Result<FockOperator> {
        let d = self.cutoff.dim();
        let a = self.lowering_entries()?;
        let mut m = Array2::<Complex64>::zeros((d, d));
        for n in 1..d {
            m[[n - 1, n]] = Complex64::new(a[n - 1], 0.0);
        }
        Ok(FockOperator::from_matrix(m))
    }

    /// `X_n = |a_{n-1,n}|²` for `n = 0..=n_max + 1` (`X_0 = 0`).
    pub fn x_sequence(&self) -> Result<Vec<f64>> {
        let mut x = vec![0.0];
        x.extend(self.lowering_entries()?.iter().map(|a| a * a));
        Ok(x)
    }

    /// `X_{n+1} - X_n` and its factored form, compared within `1e-8` (relative).
    pub fn commutator_spectrum(&self) -> Result<CommutatorSpectrum> {
        let x = self.x_sequence()?;
        let n_max = self.cutoff.n_max;
        let differences: Vec<f64> = (0..n_max).map(|n| x[n + 1] - x[n]).collect();
        let (vals, evals) = self.radial_vector(2 * n_max, 1, |u, rho, out| {
            let k = self.nmod(u) * u.sqrt();
            for n in 0..n_max {
                let prev = if n == 0 { 0.0 } else { rho[n - 1] };
                out[2 * n] = k * rho[n] * (rho[n + 1] - prev);
                out[2 * n + 1] = k * rho[n] * (rho[n + 1] + prev);
            }
        })?;
        let factored: Vec<f64> = (0..n_max).map(|n| vals[2 * n] * vals[2 * n + 1]).collect();
        let residual = differences
            .iter()
            .zip(&factored)
            .map(|(a, b)| (a - b).abs() / a.abs().max(1.0))
            .fold(0.0, f64::max);
        let report = VerificationReport::new(
            format!("comrule_factored:{}", self.family.name()),
            residual,
            1e-8,
            evals,
        );
        Ok(CommutatorSpectrum {
            differences,
            factored,
            report,
        })
    }

    /// `⟨α|op|α⟩` from the coefficient vector truncated to the operator's size.
    pub fn lower_symbol(&self, op: &FockOperator, alpha: Complex64) -> Result<Complex64> {
        lower_symbol(&self.family, op, alpha, &self.cutoff)
    }

    /// Weighting factor `τ(u) = Σ_n a_{n,n+1} uⁿ h_n h_{n+1}` of the lower
    /// symbol `⟨α|a^h|α⟩ = α τ(u)`.
    pub fn tau(&self, u: f64) -> Result<f64> {
        let a = self.lowering_entries()?;
        let n_max = self.cutoff.n_max;
        let terms: Vec<f64> = if u == 0.0 {
            vec![a[0] * self.family.an_profile(0, 0.0)? * self.family.an_profile(1, 0.0)?]
        } else {
            let r = self.family.radial_amplitudes(u, n_max + 1)?;
            let su = u.sqrt();
            (0..r.len().saturating_sub(1))
                .map(|n| a[n] * r[n] * r[n + 1] / su)
                .collect()
        };
        let sum: f64 = terms.iter().sum();
        if let Some(last) = terms.last() {
            if terms.len() > 1 && last.abs() > 1e-3 * sum.abs() {
                log::warn!("tau({u}): last retained term {last:e} exceeds 1e-3 of the sum {sum:e}; raise n_max");
            }
        }
        Ok(sum)
    }

    /// `‖a^h|α⟩ - α|α⟩‖₂`, dropping the corner row for infinite families.
    pub fn eigenstate_residual(&self, alpha: Complex64) -> Result<f64> {
        let a = self.lowering_operator()?;
        let v = self.family.coefficients(alpha, &self.cutoff)?;
        let av = a.apply(&v.coeffs);
        let rows = if self.family.dimension().is_some() {
            av.len()
        } else {
            av.len() - 1
        };
        Ok((0..rows)
            .map(|n| (av[n] - alpha * v.coeffs[n]).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// `N(α a^h†)|0⟩/√N(|α|²)` with the integral-built raising operator and
    /// `x_n = X_n`.
    pub fn construct_from_vacuum(&self, alpha: Complex64) -> Result<FockVector> {
        let x = self.x_sequence()?;
        let a = self.lowering_operator()?;
        vacuum_series(&self.family, &a.adjoint(), &x, alpha, &self.cutoff)
    }
}

/// `⟨α|op|α⟩`.
pub fn lower_symbol(
    family: &Family,
    op: &FockOperator,
    alpha: Complex64,
    cutoff: &FockCutoff,
) -> Result<Complex64> {
    let v = family.coefficients(alpha, cutoff)?;
    let d = op.dim().min(v.len());
    let mut c = v.coeffs[..d].to_vec();
    c.resize(op.dim(), Complex64::new(0.0, 0.0));
    Ok(op.expectation(&c))
}

fn vacuum_series(
    family: &Family,
    raising: &FockOperator,
    x: &[f64],
    alpha: Complex64,
    cutoff: &FockCutoff,
) -> Result<FockVector> {
    if !family.is_deformed_poisson() {
        return Err(Error::Unsupported(format!(
            "{} is not a deformed-Poisson family",
            family.name()
        )));
    }
    if !(alpha.norm() < family.radius()) {
        return Err(Error::Domain {
            modulus: alpha.norm(),
            radius: family.radius(),
        });
    }
    let d = raising.dim();
    let mut term = vec![Complex64::new(0.0, 0.0); d];
    term[0] = Complex64::new(1.0, 0.0);
    let mut acc = term.clone();
    for k in 1..d {
        let next = raising.apply(&term);
        let f = alpha / x[k];
        term = next.into_iter().map(|z| z * f).collect();
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += t;
        }
    }
    let scale = (-0.5 * family.ln_deformed_normalization(alpha.norm_sqr())?).exp();
    let coeffs: Vec<Complex64> = acc.into_iter().map(|z| z * scale).collect();
    let expected = family.coefficients(alpha, cutoff)?;
    Ok(FockVector {
        coeffs,
        tail_mass: expected.tail_mass,
    })
}

/// Deformed-Poisson construction `N(α a†)|0⟩/√N(|α|²)` with the exact deformed
/// raising operator `a†|n⟩ = √x_{n+1} |n+1⟩`.
pub fn construct_from_vacuum(
    spec: &FamilySpec,
    alpha: Complex64,
    cutoff: &FockCutoff,
) -> Result<FockVector> {
    let family = Family::new(spec.clone())?;
    if !family.is_deformed_poisson() {
        return Err(Error::Unsupported(format!(
            "{} is not a deformed-Poisson family",
            family.name()
        )));
    }
    let d = family
        .dimension()
        .map(|l| l.min(cutoff.dim()))
        .unwrap_or(cutoff.dim());
    let x: Vec<f64> = (0..d)
        .map(|n| family.x_value(n).unwrap_or(f64::INFINITY))
        .collect();
    let mut m = Array2::<Complex64>::zeros((d, d));
    for n in 1..d {
        m[[n, n - 1]] = Complex64::new(x[n].sqrt(), 0.0);
    }
    vacuum_series(&family, &FockOperator::from_matrix(m), &x, alpha, cutoff)
}

/// `exp(ᾰ plus - conj(ᾰ) minus) e_s`.
pub fn displacement_cs(
    plus: &FockOperator,
    minus: &FockOperator,
    alpha: Complex64,
    s: usize,
) -> Result<FockVector> {
    let d = plus.dim();
    if minus.dim() != d {
        return Err(Error::Parameter("generator dimensions differ".into()));
    }
    if s >= d {
        return Err(Error::Parameter(format!(
            "reference state {s} outside the {d}-dimensional space"
        )));
    }
    let scale = plus.one_norm().max(1.0);
    let dev = plus
        .adjoint()
        .sub(minus)
        .matrix()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if dev > 1e-12 * scale {
        return Err(Error::Parameter(format!(
            "minus generator is not the adjoint of plus (deviation {dev:e})"
        )));
    }
    let gen = plus.scale(alpha).sub(&minus.scale(alpha.conj()));
    let u = matrix_exponential(&gen)?;
    let coeffs: Vec<Complex64> = (0..d).map(|n| u.get(n, s)).collect();
    Ok(FockVector {
        coeffs,
        tail_mass: 0.0,
    })
}

/// SU(2) generators on `n_j + 1` levels: `J₊` with `(J₊)_{n-1,n} = √(n(n_j-n+1))`
/// (it lowers the photon number in this labelling) and `J₋ = J₊†`.
pub fn su2_generators(n_j: usize) -> (FockOperator, FockOperator) {
    let d = n_j + 1;
    let mut p = Array2::<Complex64>::zeros((d, d));
    for n in 1..d {
        p[[n - 1, n]] = Complex64::new(((n * (n_j - n + 1)) as f64).sqrt(), 0.0);
    }
    let p = FockOperator::from_matrix(p);
    let m = p.adjoint();
    (p, m)
}

/// SU(1,1) generators truncated at `n_max`: `(K₊)_{n+1,n} = √((n+1)(2κ+n))`, `K₋ = K₊†`.
pub fn su11_generators(kappa: f64, n_max: usize) -> (FockOperator, FockOperator) {
    let d = n_max + 1;
    let mut p = Array2::<Complex64>::zeros((d, d));
    for n in 0..n_max {
        p[[n + 1, n]] = Complex64::new(((n as f64 + 1.0) * (2.0 * kappa + n as f64)).sqrt(), 0.0);
    }
    let p = FockOperator::from_matrix(p);
    let m = p.adjoint();
    (p, m)
}

/// `ς_α = -arctan|α| e^{-i arg α}`.
pub fn su2_parameter(alpha: Complex64) -> Complex64 {
    Complex64::from_polar(-alpha.norm().atan(), -alpha.arg())
}

/// `ϱ_α = artanh|α| e^{i arg α}` for `|α| < 1`.
pub fn su11_parameter(alpha: Complex64) -> Result<Complex64> {
    if !(alpha.norm() < 1.0) {
        return Err(Error::Domain {
            modulus: alpha.norm(),
            radius: 1.0,
        });
    }
    Ok(Complex64::from_polar(alpha.norm().atanh(), alpha.arg()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Su2,
    Su11,
    Integral,
}

/// Comparison of a displacement-operator state with the family engine.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisplacementReport {
    pub generators: GeneratorKind,
    pub family: FamilySpec,
    pub alpha: [f64; 2],
    pub reference_state: usize,
    /// `max_n |φ_n^disp - φ_n|`.
    pub max_deviation: f64,
    /// `max_n |φ_n^disp/αⁿ - h_n(u)|` over `n ≤ 20` for AN families at `α ≠ 0`.
    pub max_profile_deviation: Option<f64>,
    pub dimension: usize,
    pub passed: bool,
}

/// Builds the displacement state for `generators` and compares it with
/// `family.coefficients`. The group cases fix `ᾰ` by the parameter
/// conversions; the integral case uses `ᾰ = α` with the quantizer's ladder.
pub fn displacement_report(
    spec: &FamilySpec,
    generators: GeneratorKind,
    alpha: Complex64,
    cutoff: &FockCutoff,
    qspec: &QuadratureSpec,
) -> Result<DisplacementReport> {
    let family = Family::new(spec.clone())?;
    let (state, s) = match (generators, spec) {
        (GeneratorKind::Su2, FamilySpec::SpinJacobi { n_j, s }) => {
            let (p, m) = su2_generators(*n_j as usize);
            (
                displacement_cs(&p, &m, su2_parameter(alpha), *s as usize)?,
                *s as usize,
            )
        }
        (GeneratorKind::Su2, FamilySpec::Spin { n_j }) => {
            let (p, m) = su2_generators(*n_j as usize);
            (displacement_cs(&p, &m, su2_parameter(alpha), 0)?, 0)
        }
        (GeneratorKind::Su11, FamilySpec::Su11Perelomov { kappa, s }) => {
            let (p, m) = su11_generators(*kappa, cutoff.n_max);
            (
                displacement_cs(&p, &m, su11_parameter(alpha)?, *s as usize)?,
                *s as usize,
            )
        }
        (GeneratorKind::Integral, _) => {
            let q = Quantizer::from_family(family.clone(), *cutoff, qspec.clone())?;
            let a = q.lowering_operator()?;
            (displacement_cs(&a.adjoint(), &a, alpha, 0)?, 0)
        }
        (g, _) => {
            return Err(Error::Unsupported(format!(
                "{g:?} generators do not act on the {} family",
                family.name()
            )))
        }
    };
    let reference = family.coefficients(alpha, cutoff)?;
    let d = state.len().min(reference.len());
    let max_deviation = (0..d)
        .map(|n| (state.coeffs[n] - reference.coeffs[n]).norm())
        .fold(0.0, f64::max);
    let max_profile_deviation = if family.is_an_class() && alpha.norm() > 0.0 {
        let u = alpha.norm_sqr();
        let mut dev = 0.0f64;
        for n in 0..d.min(21) {
            // the spin Jacobi engine carries a global phase on top of αⁿ h_n
            let phase = match spec {
                FamilySpec::SpinJacobi { s, .. } => Complex64::from_polar(
                    if *s % 2 == 0 { 1.0 } else { -1.0 },
                    -(*s as f64) * alpha.arg(),
                ),
                _ => Complex64::new(1.0, 0.0),
            };
            let h = family.an_profile(n, u)?;
            dev = dev.max((state.coeffs[n] / (alpha.powu(n as u32) * phase) - h).norm());
        }
        Some(dev)
    } else {
        None
    };
    Ok(DisplacementReport {
        generators,
        family: spec.clone(),
        alpha: [alpha.re, alpha.im],
        reference_state: s,
        max_deviation,
        max_profile_deviation,
        dimension: state.len(),
        passed: max_deviation <= 1e-8,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn glauber(n_max: usize) -> Quantizer {
        Quantizer::new(
            FamilySpec::GlauberSudarshan {},
            FockCutoff::new(n_max, 1e-12).unwrap(),
            QuadratureSpec::default(),
        )
        .unwrap()
    }

    #[test]
    fn glauber_symbols() {
        let q = glauber(20);
        let id = q.quantize_symbol(&SeparableSymbol::power(0, 0)).unwrap();
        let au = q.quantize_symbol(&SeparableSymbol::power(1, 0)).unwrap();
        assert!(au.is_hermitian());
        for i in 0..=20 {
            for j in 0..=20 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id.get(i, j).re - want).abs() < 1e-8);
            }
            assert_relative_eq!(au.get(i, i).re, i as f64 + 1.0, max_relative = 1e-9);
        }
        let low = q
            .quantize_symbol(&SeparableSymbol::new(1, Arc::new(|u: f64| u.sqrt())))
            .unwrap();
        for n in 1..=20 {
            assert_relative_eq!(low.get(n - 1, n).re, (n as f64).sqrt(), max_relative = 1e-9);
        }
    }

    #[test]
    fn glauber_ladder() {
        let q = glauber(30);
        let a = q.lowering_operator().unwrap();
        for n in 1..=30 {
            assert!((a.get(n - 1, n).re - (n as f64).sqrt()).abs() < 1e-8);
        }
        let v = a.apply(&FockVector::basis(0, 31).coeffs);
        assert!(v.iter().all(|z| z.norm() == 0.0));
        let c = q.commutator_spectrum().unwrap();
        assert!(c.differences.iter().all(|d| (d - 1.0).abs() < 1e-8));
        assert!(c.report.passed, "{}", c.report.residual);
        assert_eq!(q.x_sequence().unwrap()[0], 0.0);
    }

    #[test]
    fn lower_symbols() {
        let q = glauber(60);
        let alpha = Complex64::new(0.7, -0.9);
        let a = q.lowering_operator().unwrap();
        assert!((q.lower_symbol(&a, alpha).unwrap() - alpha).norm() < 1e-8);
        let id = FockOperator::identity(61);
        assert!((q.lower_symbol(&id, alpha).unwrap() - 1.0).norm() < 1e-12);
        let au = q.quantize_symbol(&SeparableSymbol::power(1, 0)).unwrap();
        assert!((q.lower_symbol(&au, alpha).unwrap().re - (alpha.norm_sqr() + 1.0)).abs() < 1e-8);
        assert_relative_eq!(q.tau(alpha.norm_sqr()).unwrap(), 1.0, epsilon = 1e-8);
        assert_relative_eq!(q.tau(0.0).unwrap(), 1.0, epsilon = 1e-8);
    }

    #[test]
    fn spin_is_not_an_eigenstate() {
        let q = Quantizer::new(
            FamilySpec::Spin { n_j: 4 },
            FockCutoff::default(),
            QuadratureSpec::default(),
        )
        .unwrap();
        let r = q.eigenstate_residual(Complex64::new(1.0, 0.0)).unwrap();
        assert!(r > 0.01, "{r}");
    }

    #[test]
    fn sgm_quantizer_refused() {
        let e = Quantizer::new(
            FamilySpec::SusskindGlogowerModified {},
            FockCutoff::default(),
            QuadratureSpec::default(),
        );
        assert!(matches!(e, Err(Error::Unsupported(_))));
    }

    #[test]
    fn vacuum_construction() {
        let cut = FockCutoff::new(80, 1e-12).unwrap();
        let spec = FamilySpec::GlauberSudarshan {};
        let v = construct_from_vacuum(&spec, Complex64::new(0.0, 0.0), &cut).unwrap();
        assert_eq!(v.coeffs[0].re, 1.0);
        let a = Complex64::new(1.0, 0.0);
        let v = construct_from_vacuum(&spec, a, &cut).unwrap();
        let w = Family::new(spec).unwrap().coefficients(a, &cut).unwrap();
        assert!(v.max_abs_diff(&w) < 1e-12);
    }

    #[test]
    fn group_displacements() {
        let cut = FockCutoff::new(10, 1e-12).unwrap();
        let qs = QuadratureSpec::default();
        let r = displacement_report(
            &FamilySpec::SpinJacobi { n_j: 6, s: 2 },
            GeneratorKind::Su2,
            Complex64::new(0.6, 0.8),
            &cut,
            &qs,
        )
        .unwrap();
        assert!(r.passed, "{}", r.max_deviation);
        let (p, m) = su2_generators(3);
        let v = displacement_cs(&p, &m, Complex64::new(0.0, 0.0), 2).unwrap();
        assert_eq!(v.coeffs[2].re, 1.0);
    }
}
