//! Adaptive quadrature and the resolution-of-identity checks.
//!
//! Everything is built on a vector-valued adaptive Gauss–Kronrod 21-point
//! rule. Radial integrals over `[0, ∞)` go through one of three maps onto
//! `[0, 1)`; algebraically decaying Bessel-square integrands use a dedicated
//! oscillatory routine (panel integration, subtraction of the asymptotic mean
//! and Wynn-epsilon acceleration of the remainder).

use crate::error::{Error, Result};
use crate::families::{Family, RadialDomain};
use crate::fock::{FockCutoff, FockOperator};
use crate::specfun::bessel_j_sequence;
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

/// Environment variable overriding [`QuadratureSpec::rel_tol`].
pub const TOL_ENV: &str = "COHSTATE_QUAD_TOL";

/// Map from `[0, 1)` onto `[0, ∞)` with length scale `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemiInfiniteMap {
    /// `u = -L ln(1 - v)`.
    ExpMap,
    /// `u = L v / (1 - v)`.
    RationalMap,
    /// `u = L exp(σ tan(π(v - 1/2)))`.
    LogMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Overrides the family's preferred map when set.
    #[serde(default)]
    pub semi_infinite_map: Option<SemiInfiniteMap>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 4000,
            semi_infinite_map: None,
        }
    }
}

impl QuadratureSpec {
    /// Defaults, with `rel_tol` taken from `COHSTATE_QUAD_TOL` when it parses
    /// as a positive number.
    pub fn from_env() -> Self {
        let mut spec = Self::default();
        if let Some(t) = std::env::var(TOL_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<f64>().ok())
        {
            if t > 0.0 {
                spec.rel_tol = t;
            }
        }
        spec
    }
}

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub target: String,
    pub residual: f64,
    pub passed: bool,
    pub evaluations: usize,
}

impl VerificationReport {
    pub fn new(
        target: impl Into<String>,
        residual: f64,
        threshold: f64,
        evaluations: usize,
    ) -> Self {
        Self {
            target: target.into(),
            residual,
            passed: residual <= threshold,
            evaluations,
        }
    }
}

/// Vector integral with its error estimate (max over components).
#[derive(Clone, Debug)]
pub struct QuadResult {
    pub values: Vec<f64>,
    pub error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
/// Gauss weights at the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

fn gk21<F: FnMut(f64, &mut [f64])>(
    f: &mut F,
    a: f64,
    b: f64,
    dim: usize,
    buf: &mut [f64],
) -> (Vec<f64>, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = vec![0.0; dim];
    let mut g = vec![0.0; dim];
    f(c, buf);
    for i in 0..dim {
        k[i] = WGK[10] * buf[i];
    }
    for j in 0..10 {
        let dx = h * XGK[j];
        for x in [c - dx, c + dx] {
            f(x, buf);
            for i in 0..dim {
                k[i] += WGK[j] * buf[i];
                if j % 2 == 1 {
                    g[i] += WG[j / 2] * buf[i];
                }
            }
        }
    }
    let mut err = 0.0f64;
    for i in 0..dim {
        k[i] *= h;
        g[i] *= h;
        err = err.max((k[i] - g[i]).abs());
    }
    (k, err)
}

struct Piece {
    a: f64,
    b: f64,
    vals: Vec<f64>,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Adaptive vector Gauss–Kronrod over `breaks` (an increasing partition).
///
/// Convergence is declared when the summed error estimate is below
/// `max(abs_tol, rel_tol · max_i |I_i|)`. `f(x, out)` fills `out[..dim]`;
/// non-finite outputs are treated as zero.
pub fn integrate_vec<F: FnMut(f64, &mut [f64])>(
    mut f: F,
    breaks: &[f64],
    dim: usize,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    let mut buf = vec![0.0; dim];
    let mut g = |x: f64, out: &mut [f64]| {
        f(x, out);
        for v in out.iter_mut() {
            if !v.is_finite() {
                *v = 0.0;
            }
        }
    };
    let mut heap = BinaryHeap::new();
    let mut total = vec![0.0; dim];
    let mut err = 0.0;
    let mut evals = 0;
    for w in breaks.windows(2) {
        let (vals, e) = gk21(&mut g, w[0], w[1], dim, &mut buf);
        evals += 21;
        for i in 0..dim {
            total[i] += vals[i];
        }
        err += e;
        heap.push(Piece {
            a: w[0],
            b: w[1],
            vals,
            err: e,
        });
    }
    let mut splits = 0;
    loop {
        let scale = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let target = spec.abs_tol.max(spec.rel_tol * scale);
        if err <= target {
            break;
        }
        if splits >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                subdivisions: splits,
                error: err,
            });
        }
        let p = heap.pop().expect("non-empty partition");
        let m = 0.5 * (p.a + p.b);
        if !(m > p.a && m < p.b) {
            // interval exhausted at machine precision; accept its estimate
            err -= p.err;
            heap.push(Piece { err: 0.0, ..p });
            continue;
        }
        let (l, el) = gk21(&mut g, p.a, m, dim, &mut buf);
        let (r, er) = gk21(&mut g, m, p.b, dim, &mut buf);
        evals += 42;
        for i in 0..dim {
            total[i] += l[i] + r[i] - p.vals[i];
        }
        err += el + er - p.err;
        heap.push(Piece {
            a: p.a,
            b: m,
            vals: l,
            err: el,
        });
        heap.push(Piece {
            a: m,
            b: p.b,
            vals: r,
            err: er,
        });
        splits += 1;
    }
    // re-sum to shed accumulated update rounding
    let mut values = vec![0.0; dim];
    let mut final_err = 0.0;
    for p in heap.iter() {
        for i in 0..dim {
            values[i] += p.vals[i];
        }
        final_err += p.err;
    }
    Ok(QuadResult {
        values,
        error: final_err,
        evaluations: evals,
    })
}

/// Scalar convenience wrapper around [`integrate_vec`] on `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let r = integrate_vec(|x, out| out[0] = f(x), &[a, b], 1, spec)?;
    Ok((r.values[0], r.error))
}

/// `(u, du/dv)` of the map at `v ∈ (0, 1)`.
fn map_point(domain: &RadialDomain, override_map: Option<SemiInfiniteMap>, v: f64) -> (f64, f64) {
    match *domain {
        RadialDomain::Finite { upper } => {
            let w = 1.0 - v;
            (upper * (1.0 - w.powi(4)), 4.0 * upper * w.powi(3))
        }
        RadialDomain::SemiInfinite { map, scale, spread } => match override_map.unwrap_or(map) {
            SemiInfiniteMap::ExpMap => (-scale * (-v).ln_1p(), scale / (1.0 - v)),
            SemiInfiniteMap::RationalMap => (scale * v / (1.0 - v), scale / (1.0 - v).powi(2)),
            SemiInfiniteMap::LogMap => {
                let a = PI * (v - 0.5);
                let u = scale * (spread * a.tan()).exp();
                (u, u * spread * PI / a.cos().powi(2))
            }
        },
        RadialDomain::Oscillatory => unreachable!("oscillatory domains are not mapped"),
    }
}

/// `∫ f(u) du` over a (finite or semi-infinite) radial domain, vector valued.
pub fn radial_integral<F: FnMut(f64, &mut [f64])>(
    domain: &RadialDomain,
    mut f: F,
    dim: usize,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    if let RadialDomain::Oscillatory = domain {
        return Err(Error::Unsupported(
            "oscillatory integrands need bessel_square_integral".into(),
        ));
    }
    let breaks: Vec<f64> = (0..=16).map(|i| i as f64 / 16.0).collect();
    let override_map = spec.semi_infinite_map;
    integrate_vec(
        |v, out| {
            let (u, jac) = map_point(domain, override_map, v);
            let at_edge = matches!(domain, RadialDomain::Finite { upper } if u >= *upper);
            if at_edge || !u.is_finite() || !jac.is_finite() {
                out.iter_mut().for_each(|o| *o = 0.0);
                return;
            }
            f(u, out);
            out.iter_mut().for_each(|o| *o *= jac);
        },
        &breaks,
        dim,
        spec,
    )
}

/// Wynn epsilon extrapolation of a sequence of partial sums.
pub fn wynn_epsilon(s: &[f64]) -> f64 {
    let n = s.len();
    if n < 3 {
        return *s.last().unwrap_or(&0.0);
    }
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = s.to_vec();
    let mut best = s[n - 1];
    let mut k = 0;
    while cur.len() > 1 {
        let next: Vec<f64> = (0..cur.len() - 1)
            .map(|i| {
                let d = cur[i + 1] - cur[i];
                if d == 0.0 {
                    f64::INFINITY
                } else {
                    prev[i + 1] + 1.0 / d
                }
            })
            .collect();
        prev = cur;
        cur = next;
        k += 1;
        if k % 2 == 0 {
            if let Some(v) = cur.last() {
                if v.is_finite() {
                    best = *v;
                } else {
                    break;
                }
            }
        }
    }
    best
}

/// Components `∫_0^∞ c_k J_{ν_k}(2t)² / t dt` for orders `ν_k ≥ 1`.
///
/// `[0, T]` with `T = max(40, ν_max²/2)` is integrated adaptively on panels of
/// length `π/4`. Beyond `T` the non-oscillatory asymptotic mean
/// `c/(2πt²) Σ_k a_k(ν) t^{-2k}` is integrated in closed form and the purely
/// oscillatory remainder is summed panel by panel with Wynn acceleration.
pub fn bessel_square_integral(
    orders: &[usize],
    amplitudes: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    if orders.len() != amplitudes.len() {
        return Err(Error::Parameter(
            "orders and amplitudes differ in length".into(),
        ));
    }
    if orders.contains(&0) {
        return Err(Error::Parameter(
            "Bessel-square integrals need orders >= 1".into(),
        ));
    }
    let dim = orders.len();
    let nu_max = *orders.iter().max().unwrap_or(&1);
    let t_split = (40f64).max((nu_max * nu_max) as f64 / 2.0);
    let panel = PI / 4.0;
    let n_panels = (t_split / panel).ceil() as usize;
    let t_split = n_panels as f64 * panel;
    let eval = |t: f64, out: &mut [f64]| {
        let j = bessel_j_sequence(nu_max, 2.0 * t);
        for k in 0..dim {
            let v = j[orders[k]];
            out[k] = amplitudes[k] * v * v / t;
        }
    };
    let breaks: Vec<f64> = (0..=n_panels).map(|i| i as f64 * panel).collect();
    let head = integrate_vec(eval, &breaks, dim, spec)?;
    let mut evaluations = head.evaluations;

    // asymptotic mean coefficients a_k(ν) / 16^k
    let coeffs: Vec<Vec<f64>> = orders
        .iter()
        .map(|&nu| {
            let mu = 4.0 * (nu * nu) as f64;
            let mut a = vec![1.0];
            let mut c = 1.0;
            for k in 1..12 {
                let kf = k as f64;
                c *= (2.0 * kf - 1.0) / (2.0 * kf) * (mu - (2.0 * kf - 1.0).powi(2)) / 16.0;
                if c == 0.0 {
                    break;
                }
                a.push(c);
            }
            a
        })
        .collect();
    let mean = |k: usize, t: f64| -> f64 {
        let t2 = t * t;
        let mut s = 0.0;
        let mut p = 1.0;
        let mut last = f64::INFINITY;
        for a in &coeffs[k] {
            let term = a * p;
            if term.abs() > last {
                break;
            }
            s += term;
            last = term.abs();
            p /= t2;
        }
        amplitudes[k] * s / (2.0 * PI * t2)
    };
    let mean_tail = |k: usize| -> f64 {
        let mut s = 0.0;
        let mut last = f64::INFINITY;
        for (i, a) in coeffs[k].iter().enumerate() {
            let term = a * t_split.powi(-(2 * i as i32 + 1)) / (2 * i + 1) as f64;
            if term.abs() > last {
                break;
            }
            s += term;
            last = term.abs();
        }
        amplitudes[k] * s / (2.0 * PI)
    };

    const TAIL_PANELS: usize = 48;
    let mut partial = vec![Vec::with_capacity(TAIL_PANELS); dim];
    let mut run = vec![0.0; dim];
    let mut buf = vec![0.0; dim];
    let mut osc = |t: f64, out: &mut [f64]| {
        eval(t, out);
        for k in 0..dim {
            out[k] -= mean(k, t);
        }
    };
    let mut tail_err = 0.0f64;
    for p in 0..TAIL_PANELS {
        let a = t_split + p as f64 * panel;
        let (v, e) = gk21(&mut osc, a, a + panel, dim, &mut buf);
        evaluations += 21;
        tail_err = tail_err.max(e);
        for k in 0..dim {
            run[k] += v[k];
            partial[k].push(run[k]);
        }
    }
    let mut values = head.values;
    for k in 0..dim {
        let s = &partial[k];
        let acc = wynn_epsilon(&s[s.len() - 24..]);
        values[k] += mean_tail(k) + acc;
    }
    Ok(QuadResult {
        values,
        error: head.error + tail_err,
        evaluations,
    })
}

/// Gauss–Hermite nodes and weights for `∫ e^{-x²} f(x) dx`.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let pim4 = PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Diagonal moment integrals `∫ w(u) r_n(u)² du`, `n = 0..=n_top`, for radial
/// families (these equal `∫ w uⁿ h_n² du` for AN families).
pub fn radial_moments(family: &Family, n_top: usize, spec: &QuadratureSpec) -> Result<QuadResult> {
    if !family.is_radial() {
        return Err(Error::Unsupported(format!(
            "{} is not a radial family",
            family.name()
        )));
    }
    let n_top = family
        .dimension()
        .map(|d| n_top.min(d - 1))
        .unwrap_or(n_top);
    family.ln_identity_weight(0.5f64.min(family.radius().powi(2) / 2.0))?;
    match family.radial_domain(n_top) {
        RadialDomain::Oscillatory => {
            let orders: Vec<usize> = (1..=n_top + 1).collect();
            let amps: Vec<f64> = orders.iter().map(|&m| 2.0 * m as f64).collect();
            bessel_square_integral(&orders, &amps, spec)
        }
        domain => {
            let mut failure = None;
            let res = radial_integral(
                &domain,
                |u, out| match (
                    family.ln_identity_weight(u),
                    family.radial_amplitudes(u, n_top),
                ) {
                    (Ok(lw), Ok(r)) => {
                        for (o, rn) in out.iter_mut().zip(r.iter()) {
                            *o = if *rn == 0.0 {
                                0.0
                            } else {
                                (lw + 2.0 * rn.abs().ln()).exp()
                            };
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        if failure.is_none() {
                            failure = Some(e);
                        }
                        out.iter_mut().for_each(|o| *o = 0.0);
                    }
                },
                n_top + 1,
                spec,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            res
        }
    }
}

/// Checks `∫ w(u) uⁿ h_n(u)² du = 1` for `n = 0..=n_top`.
pub fn verify_moment_problem(
    family: &Family,
    n_top: usize,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    if !family.is_an_class() {
        return Err(Error::NotAnClass(family.name().into()));
    }
    let r = radial_moments(family, n_top, spec)?;
    let residual = r.values.iter().fold(0.0f64, |m, v| m.max((v - 1.0).abs()));
    Ok(VerificationReport::new(
        format!("moment_problem:{}:n<={n_top}", family.name()),
        residual,
        1e-8,
        r.evaluations,
    ))
}

/// Gram matrix `G = ∫ 𝔴 |φ_α⟩⟨φ_α| d²α` restricted to `n, m ≤ n_max`.
pub fn gram_matrix(
    family: &Family,
    n_max: usize,
    spec: &QuadratureSpec,
) -> Result<(FockOperator, usize)> {
    if let Some(s) = family.hermite_parameter() {
        return Ok(hermite_gram(s, n_max, 2 * n_max + 2));
    }
    let r = radial_moments(family, n_max, spec)?;
    let dim = r.values.len();
    let mut m = Array2::zeros((dim, dim));
    for (i, v) in r.values.iter().enumerate() {
        m[[i, i]] = Complex64::new(*v, 0.0);
    }
    Ok((FockOperator::from_matrix(m), r.evaluations))
}

/// Holomorphic Hermite Gram matrix by an `nodes × nodes` Gauss–Hermite product rule,
/// exact once `nodes > n_max`.
pub fn hermite_gram(s: f64, n_max: usize, nodes: usize) -> (FockOperator, usize) {
    let (x, w) = gauss_hermite(nodes);
    let ax = (1.0 - s).sqrt();
    let ay = (1.0 / s - 1.0).sqrt();
    let wgt = (1.0 / s - s) / (2.0 * PI);
    let dim = n_max + 1;
    let mut g = Array2::<Complex64>::zeros((dim, dim));
    let family =
        Family::new(crate::families::FamilySpec::HolomorphicHermite { s }).expect("valid s");
    let cutoff = FockCutoff {
        n_max,
        tail_tol: 1.0,
    };
    for (xi, wx) in x.iter().zip(w.iter()) {
        for (yi, wy) in x.iter().zip(w.iter()) {
            let (px, py) = (xi / ax, yi / ay);
            let alpha = Complex64::new(px, py);
            let c = family.coefficients_unchecked(alpha, &cutoff);
            // divide out the Gaussian factors that the rule integrates
            let strip = ((1.0 - s) * px * px + (1.0 / s - 1.0) * py * py).exp();
            let k = wgt * wx * wy / (ax * ay) * strip;
            for a in 0..dim {
                let ca = c[a].conj() * k;
                for b in 0..dim {
                    g[[a, b]] += ca * c[b];
                }
            }
        }
    }
    (FockOperator::from_matrix(g), nodes * nodes)
}

/// Checks the resolution of identity `‖G - I‖_max` on the first `n_max + 1` levels.
pub fn gram_identity(
    family: &Family,
    n_max: usize,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    let (g, evals) = gram_matrix(family, n_max, spec)?;
    let dim = g.dim();
    let mut residual = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let id = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((g.get(i, j) - id).norm());
        }
    }
    Ok(VerificationReport::new(
        format!("gram_identity:{}:n<={}", family.name(), dim - 1),
        residual,
        1e-8,
        evals,
    ))
}

/// Checks `Σ|φ_n(α)|² = 1` at each amplitude, including the certified tail.
pub fn verify_normalization(
    family: &Family,
    alphas: &[Complex64],
    cutoff: &FockCutoff,
) -> Result<VerificationReport> {
    let mut residual = 0.0f64;
    for a in alphas {
        let v = family.coefficients(*a, cutoff)?;
        residual = residual.max((v.norm_sqr() - 1.0).abs().max(v.tail_mass));
    }
    Ok(VerificationReport::new(
        format!("normalization:{}", family.name()),
        residual,
        1e-10f64.max(cutoff.tail_tol),
        alphas.len(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gk_polynomial_and_exponential() {
        let spec = QuadratureSpec::default();
        let (v, _) = integrate(|x| x.powi(7), 0.0, 1.0, &spec).unwrap();
        assert_relative_eq!(v, 0.125, epsilon = 1e-15);
        let (v, _) = integrate(|x| (-x).exp(), 0.0, 30.0, &spec).unwrap();
        assert_relative_eq!(v, 1.0 - (-30f64).exp(), epsilon = 1e-13);
    }

    #[test]
    fn maps_integrate_gamma_function() {
        let spec = QuadratureSpec::default();
        for map in [
            SemiInfiniteMap::ExpMap,
            SemiInfiniteMap::RationalMap,
            SemiInfiniteMap::LogMap,
        ] {
            let d = RadialDomain::SemiInfinite {
                map,
                scale: 3.0,
                spread: 2.0,
            };
            let r = radial_integral(&d, |u, o| o[0] = u.powi(3) * (-u).exp(), 1, &spec).unwrap();
            assert_relative_eq!(r.values[0], 6.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        let mut s = 0.0;
        let partial: Vec<f64> = (0..20)
            .map(|k| {
                s += if k % 2 == 0 { 1.0 } else { -1.0 } / (k as f64 + 1.0);
                s
            })
            .collect();
        assert_relative_eq!(wynn_epsilon(&partial), 2f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn bessel_square_identity() {
        let spec = QuadratureSpec::default();
        let orders = [1usize, 2, 3, 7, 15];
        let r = bessel_square_integral(&orders, &[1.0; 5], &spec).unwrap();
        for (n, v) in orders.iter().zip(r.values.iter()) {
            assert_relative_eq!(*v, 1.0 / (2.0 * *n as f64), max_relative = 1e-9);
        }
    }

    #[test]
    fn hermite_rule_moments() {
        let (x, w) = gauss_hermite(20);
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        let m8: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert_relative_eq!(m0, PI.sqrt(), epsilon = 1e-13);
        assert_relative_eq!(m2, PI.sqrt() / 2.0, epsilon = 1e-13);
        assert_relative_eq!(m8, 105.0 * PI.sqrt() / 16.0, epsilon = 1e-11);
    }

    #[test]
    fn env_override() {
        std::env::set_var(TOL_ENV, "1e-6");
        assert_eq!(QuadratureSpec::from_env().rel_tol, 1e-6);
        std::env::remove_var(TOL_ENV);
        assert_eq!(QuadratureSpec::from_env().rel_tol, 1e-10);
    }
}
