//! Polynomials, deformed factorials and distributions of the DFB families.
//!
//! Internally the polynomials are stored as `d_n = n! c_n`, where `c_n(ξ)` is
//! the `t^n` coefficient of `exp(Σ_m a_m(ξ) t^m)`. The physical polynomials are
//! `q_n = x_n! c_n = (x_n!/n!) d_n`; every state amplitude depends on ratios in
//! which the factor `x_n!/n!` cancels.

use super::spec::DfbDeformation;
use crate::error::{Error, Result};
use crate::specfun::{binomial, ln_factorial, ln_gamma};

/// `q_n(ξ)` with its deformed factorial moments.
#[derive(Clone, Debug, PartialEq)]
pub struct DfbPolynomials {
    pub n: usize,
    /// Ascending coefficients of `q_n(ξ)`.
    pub q: Vec<f64>,
    /// `f_n = ∫_0^∞ q_n(ξ) e^{-ξ} dξ`.
    pub f: f64,
    /// `x_n!`.
    pub x_factorial: f64,
}

pub(crate) fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// `ln p(u)` for `u ≥ 0`, scaling by the leading power when `u > 1` so that
/// large degrees do not overflow. `None` when `p(u) ≤ 0`.
pub(crate) fn ln_poly_eval(p: &[f64], u: f64) -> Option<f64> {
    let deg = p.iter().rposition(|c| *c != 0.0)?;
    if u <= 1.0 {
        let v = poly_eval(&p[..=deg], u);
        return (v > 0.0).then(|| v.ln());
    }
    let w = 1.0 / u;
    let v = p[..=deg].iter().fold(0.0, |acc, c| acc * w + c);
    (v > 0.0).then(|| deg as f64 * u.ln() + v.ln())
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0.0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `p(1 - ξ)`.
fn reflect(p: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    for (k, c) in p.iter().enumerate() {
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out[j] += c * binomial(k as u64, j as u64) * sign;
        }
    }
    out
}

impl DfbDeformation {
    /// Scaled polynomials `ê_n` and log scales `c_n` with
    /// `d_n = n! e^{c_n} ê_n`, from `d_n = Σ_m m (n-1)!/(n-m)! a_m d_{n-m}`,
    /// i.e. `e_n = (1/n) Σ_m m a_m e_{n-m}` for `e_n = d_n/n!`.
    pub(crate) fn d_polys(&self, n_max: usize) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
        let n_a = 1 + self.a_polys.len();
        let a: Vec<Vec<f64>> = (1..=n_a).map(|m| self.a_poly(m)).collect();
        let mut d: Vec<Vec<f64>> = vec![vec![1.0]];
        let mut ls = vec![0.0f64];
        for n in 1..=n_max {
            let base = (1..=n.min(n_a))
                .map(|m| ls[n - m])
                .fold(f64::NEG_INFINITY, f64::max);
            let mut acc: Vec<f64> = vec![];
            for m in 1..=n.min(n_a) {
                let am = &a[m - 1];
                if am.iter().all(|c| *c == 0.0) || ls[n - m] == f64::NEG_INFINITY {
                    continue;
                }
                let factor = m as f64 / n as f64 * (ls[n - m] - base).exp();
                let term = poly_mul(am, &d[n - m]);
                if acc.len() < term.len() {
                    acc.resize(term.len(), 0.0);
                }
                for (k, t) in term.iter().enumerate() {
                    acc[k] += factor * t;
                }
            }
            if acc.iter().any(|c| !c.is_finite()) {
                return Err(Error::Unsupported(format!(
                    "DFB polynomial d_{n} overflows double precision"
                )));
            }
            while acc.len() > 1 && acc[acc.len() - 1] == 0.0 {
                acc.pop();
            }
            let top = acc.iter().map(|c| c.abs()).fold(0.0, f64::max);
            if top == 0.0 {
                d.push(vec![0.0]);
                ls.push(f64::NEG_INFINITY);
            } else {
                d.push(acc.iter().map(|c| c / top).collect());
                ls.push(base + top.ln());
            }
        }
        Ok((d, ls))
    }

    /// Rejects polynomials taking a negative value on the `[0, 1]` grid of 101 points.
    pub(crate) fn check_negativity(d: &[Vec<f64>]) -> Result<()> {
        for (n, p) in d.iter().enumerate() {
            let scale: f64 = p
                .iter()
                .map(|c| c.abs())
                .sum::<f64>()
                .max(f64::MIN_POSITIVE);
            for i in 0..=100 {
                let xi = i as f64 / 100.0;
                let v = poly_eval(p, xi);
                if v < -1e-13 * scale {
                    return Err(Error::Negativity { n, xi, value: v });
                }
            }
        }
        Ok(())
    }

    /// `ln x_0!, …, ln x_{n_max}!`, from the explicit sequence or derived from
    /// `1/x_n! = [t^n] exp(Σ_m (a_m(ξ) + a_m(1-ξ)) t^m)`.
    pub fn ln_x_factorials(&self, n_max: usize) -> Result<Vec<f64>> {
        if let Some(x) = &self.x_seq {
            let v: Vec<f64> = (0..=n_max).map(|n| x.ln_factorial(n)).collect();
            if v.iter().any(|t| !t.is_finite()) {
                return Err(Error::Parameter(format!(
                    "x sequence too short for n = {n_max}"
                )));
            }
            return Ok(v);
        }
        let n_a = 1 + self.a_polys.len();
        let mut s = vec![0.0; n_a + 1];
        for m in 1..=n_a {
            let p = self.a_poly(m);
            let r = reflect(&p);
            let len = p.len().max(r.len());
            let mut sum = vec![0.0; len];
            for (k, c) in p.iter().enumerate() {
                sum[k] += c;
            }
            for (k, c) in r.iter().enumerate() {
                sum[k] += c;
            }
            let scale = sum.iter().map(|c| c.abs()).fold(1.0, f64::max);
            if sum.iter().skip(1).any(|c| c.abs() > 1e-12 * scale) {
                return Err(Error::Parameter(format!(
                    "a_{m}(xi) + a_{m}(1-xi) is not constant; supply an explicit x_seq"
                )));
            }
            s[m] = sum.first().copied().unwrap_or(0.0);
        }
        // ln e_n with e_n = (1/n) Σ_m m s_m e_{n-m}
        let mut ln_e = vec![0.0f64];
        for n in 1..=n_max {
            let base = ln_e[n - 1];
            let acc: f64 = (1..=n.min(n_a))
                .map(|m| m as f64 * s[m] * (ln_e[n - m] - base).exp())
                .sum::<f64>()
                / n as f64;
            if !(acc > 0.0) {
                return Err(Error::Parameter(format!("derived x_{n}! is not positive")));
            }
            ln_e.push(base + acc.ln());
        }
        let out = ln_e.iter().map(|v| -v).collect();
        Ok(out)
    }

    /// `q_n`, `f_n` and `x_n!`.
    pub fn polynomials(&self, n: usize) -> Result<DfbPolynomials> {
        let (d, ls) = self.d_polys(n)?;
        Self::check_negativity(&d)?;
        let lx = self.ln_x_factorials(n)?;
        let ratio = (lx[n] + ls[n]).exp();
        let q: Vec<f64> = d[n].iter().map(|c| c * ratio).collect();
        let f = q
            .iter()
            .enumerate()
            .map(|(k, c)| c * ln_factorial(k as u64).exp())
            .sum();
        Ok(DfbPolynomials {
            n,
            q,
            f,
            x_factorial: lx[n].exp(),
        })
    }

    /// `b_{m,n} = ∫_0^1 q_m(ξ) q_n(1-ξ) dξ`, exact by Beta integrals.
    pub fn beta(&self, m: usize, n: usize) -> Result<f64> {
        let top = m.max(n);
        let (d, ls) = self.d_polys(top)?;
        let lx = self.ln_x_factorials(top)?;
        let lb = ln_beta_sum(&d[m], &d[n])?;
        Ok((lb + lx[m] + ls[m] + lx[n] + ls[n]).exp())
    }

    /// `𝔭_k^{(n)}(ξ) = x_n!/(x_{n-k}! x_k!) q_k(ξ) q_{n-k}(1-ξ)`, `k = 0…n`.
    pub fn distribution(&self, n: usize, xi: f64) -> Result<Vec<f64>> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::Parameter(format!("xi must lie in [0, 1], got {xi}")));
        }
        let (d, ls) = self.d_polys(n)?;
        Self::check_negativity(&d)?;
        let lx = self.ln_x_factorials(n)?;
        let p: Vec<f64> = (0..=n)
            .map(|k| {
                let a = poly_eval(&d[k], xi).max(0.0);
                let b = poly_eval(&d[n - k], 1.0 - xi).max(0.0);
                (lx[n] + ls[k] + ls[n - k]).exp() * a * b
            })
            .collect();
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Parameter(format!(
                "deformed binomial distribution is not normalized (sum = {total}); check x_seq against a_polys"
            )));
        }
        Ok(p)
    }
}

/// `ln ∫_0^1 p(ξ) r(1-ξ) dξ` for polynomials with a positive integral.
pub(crate) fn ln_beta_sum(p: &[f64], r: &[f64]) -> Result<f64> {
    let mut terms = vec![];
    let mut signs = vec![];
    for (a, ca) in p.iter().enumerate() {
        for (k, ck) in r.iter().enumerate() {
            let c = ca * ck;
            if c == 0.0 {
                continue;
            }
            let lb = ln_gamma(a as f64 + 1.0) + ln_gamma(k as f64 + 1.0)
                - ln_gamma((a + k) as f64 + 2.0);
            terms.push(c.abs().ln() + lb);
            signs.push(c.signum());
        }
    }
    signed_log_sum(&terms, &signs)
}

/// `ln Σ_k p_k k!`.
pub(crate) fn ln_factorial_moment(p: &[f64]) -> Result<f64> {
    let mut terms = vec![];
    let mut signs = vec![];
    for (k, c) in p.iter().enumerate() {
        if *c != 0.0 {
            terms.push(c.abs().ln() + ln_factorial(k as u64));
            signs.push(c.signum());
        }
    }
    signed_log_sum(&terms, &signs)
}

fn signed_log_sum(terms: &[f64], signs: &[f64]) -> Result<f64> {
    let m = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = terms
        .iter()
        .zip(signs)
        .map(|(t, s)| s * (t - m).exp())
        .sum();
    if !(s > 0.0) {
        return Err(Error::Parameter(
            "deformed factorial or beta integral is not positive".into(),
        ));
    }
    Ok(m + s.ln())
}

/// Precomputed polynomials shared by the DFB state engines.
#[derive(Clone, Debug)]
pub(crate) struct DfbTables {
    pub d: Vec<Vec<f64>>,
    /// `ln Σ_k ê_{n,k} k!`; only ratios against `ê_n` are meaningful.
    pub ln_fnorm: Vec<f64>,
}

impl DfbTables {
    pub fn new(def: &DfbDeformation, n_max: usize) -> Result<Self> {
        let (d, _) = def.d_polys(n_max)?;
        DfbDeformation::check_negativity(&d)?;
        let ln_fnorm = d
            .iter()
            .map(|p| ln_factorial_moment(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { d, ln_fnorm })
    }
}
