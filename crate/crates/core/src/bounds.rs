//! Sample-size bound for offsets of i.i.d. uniform samples on a compact
//! manifold with boundary, and the local volume lower bounds it rests on.
//!
//! With θ = arcsin(x / 4δ), the packing function is
//!
//! ```text
//!            vol(M)
//! β(x) = ─────────────────────────────────────────────────────────────
//!        cos^k θ / 2^{k+1} · I_{1 − x² cos²θ / 16δ²}((k+1)/2, ½) · V_k(x)
//! ```
//!
//! and the sample size guaranteeing an ε/2-dense sample with probability
//! `1 - γ` is `β(ε) (ln β(ε/2) + ln(1/γ))`.

use crate::error::{domain, Error, Result};
use crate::special::{ln_ball_volume, reg_inc_beta};

/// `(k, vol(M), δ)`: intrinsic dimension, k-volume and condition number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    k: u32,
    vol_m: f64,
    delta: f64,
}

impl BoundParams {
    pub fn new(k: u32, vol_m: f64, delta: f64) -> Result<Self> {
        if k == 0 {
            return domain("intrinsic dimension k must be >= 1");
        }
        if !(vol_m > 0.0) || !vol_m.is_finite() {
            return domain(format!("vol(M) must be finite and > 0, got {vol_m}"));
        }
        if !(delta > 0.0) || !delta.is_finite() {
            return domain(format!("delta must be finite and > 0, got {delta}"));
        }
        Ok(BoundParams { k, vol_m, delta })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn vol_m(&self) -> f64 {
        self.vol_m
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Offset radius ε and failure probability γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuery {
    eps: f64,
    gamma: f64,
}

impl BoundQuery {
    pub fn new(eps: f64, gamma: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return domain(format!("eps must be finite and > 0, got {eps}"));
        }
        if !(gamma > 0.0 && gamma < 1.0) {
            return domain(format!("gamma must lie in (0, 1), got {gamma}"));
        }
        Ok(BoundQuery { eps, gamma })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// θ = arcsin(x / 4δ), for `0 < x <= 4δ`.
pub fn theta(x: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return domain(format!("delta must be > 0, got {delta}"));
    }
    if !(x > 0.0) || x > 4.0 * delta {
        return domain(format!(
            "theta requires 0 < x <= 4*delta, got x={x}, delta={delta}"
        ));
    }
    Ok((x / (4.0 * delta)).min(1.0).asin())
}

/// ln of `cos^k θ / 2^{k+1} · I_{1 − x²cos²θ/16δ²}((k+1)/2, ½) · V_k(x)`
/// with θ = arcsin(x / 4δ). Caller guarantees `0 < x < 2δ`.
fn ln_packing_volume(x: f64, p: &BoundParams) -> Result<f64> {
    let k = f64::from(p.k);
    let th = theta(x, p.delta)?;
    let cos = th.cos();
    let arg = 1.0 - x * x * cos * cos / (16.0 * p.delta * p.delta);
    let i = reg_inc_beta(arg, (k + 1.0) / 2.0, 0.5)?;
    Ok(k * cos.ln() - (k + 1.0) * std::f64::consts::LN_2 + i.ln() + ln_ball_volume(p.k, x)?)
}

/// The packing function β(x), for `0 < x < 2δ`.
pub fn beta_fn(x: f64, p: &BoundParams) -> Result<f64> {
    if !(x > 0.0) || x >= 2.0 * p.delta {
        return domain(format!(
            "beta requires 0 < x < 2*delta, got x={x}, delta={}",
            p.delta
        ));
    }
    let ln_beta = p.vol_m.ln() - ln_packing_volume(x, p)?;
    let beta = ln_beta.exp();
    if !beta.is_finite() {
        return Err(Error::Overflow(format!("beta({x}) = exp({ln_beta})")));
    }
    Ok(beta)
}

/// The raw bound `β(ε) (ln β(ε/2) + ln(1/γ))` before rounding.
pub fn sample_size_value(q: &BoundQuery, p: &BoundParams) -> Result<f64> {
    if q.eps >= p.delta / 2.0 {
        return domain(format!(
            "eps < delta/2 violated: eps={}, delta/2={}",
            q.eps,
            p.delta / 2.0
        ));
    }
    let b_eps = beta_fn(q.eps, p)?;
    let b_half = beta_fn(q.eps / 2.0, p)?;
    let value = b_eps * (b_half.ln() + (1.0 / q.gamma).ln());
    if !value.is_finite() {
        return Err(Error::Overflow(format!("sample size for eps={}", q.eps)));
    }
    Ok(value)
}

/// Smallest integer sample size `n*` with `n* > β(ε)(ln β(ε/2) + ln(1/γ))`.
///
/// Requires `0 < ε < δ/2` and `0 < γ < 1`.
pub fn sample_size(q: &BoundQuery, p: &BoundParams) -> Result<u64> {
    let value = sample_size_value(q, p)?;
    if value >= u64::MAX as f64 {
        return Err(Error::Overflow(format!("sample size {value} exceeds u64")));
    }
    let n = if value.fract() == 0.0 {
        value + 1.0
    } else {
        value.ceil()
    };
    Ok(n.max(1.0) as u64)
}

/// `(γ, n*)` for γ = 0.05, 0.06, …, 0.95.
pub fn sweep_gamma(eps: f64, p: &BoundParams) -> Result<Vec<(f64, u64)>> {
    (5..=95)
        .map(|i| {
            let gamma = f64::from(i) / 100.0;
            Ok((gamma, sample_size(&BoundQuery::new(eps, gamma)?, p)?))
        })
        .collect()
}

/// `(ε, n*)` for ε = 0.15, 0.16, …, 0.50, keeping only ε < δ/2.
pub fn sweep_eps(gamma: f64, p: &BoundParams) -> Result<Vec<(f64, u64)>> {
    (15..=50)
        .map(|i| f64::from(i) / 100.0)
        .filter(|&eps| eps < p.delta / 2.0)
        .map(|eps| Ok((eps, sample_size(&BoundQuery::new(eps, gamma)?, p)?)))
        .collect()
}

fn check_local_eps(eps: f64, p: &BoundParams) -> Result<()> {
    if !(eps > 0.0) || eps >= p.delta {
        return domain(format!(
            "volume bound requires 0 < eps < delta, got eps={eps}, delta={}",
            p.delta
        ));
    }
    Ok(())
}

/// Lower bound on vol(M ∩ B_ε(p)) for a boundary point p:
/// `cos^k θ / 2 · I_{1 − ε²cos²θ/4δ²}((k+1)/2, ½) · V_k(ε)`, θ = arcsin(ε/2δ).
pub fn vol_lower_bound_boundary(eps: f64, p: &BoundParams) -> Result<f64> {
    check_local_eps(eps, p)?;
    let k = f64::from(p.k);
    let th = (eps / (2.0 * p.delta)).asin();
    let cos = th.cos();
    let arg = 1.0 - eps * eps * cos * cos / (4.0 * p.delta * p.delta);
    let i = reg_inc_beta(arg, (k + 1.0) / 2.0, 0.5)?;
    Ok((k * cos.ln() - std::f64::consts::LN_2 + i.ln() + ln_ball_volume(p.k, eps)?).exp())
}

/// Lower bound `cos^k θ · V_k(ε)`, θ = arcsin(ε/2δ), on vol(M ∩ B_ε(p)) for
/// a point p whose ε-ball misses ∂M. The caller is responsible for that
/// condition.
pub fn vol_lower_bound_interior(eps: f64, p: &BoundParams) -> Result<f64> {
    check_local_eps(eps, p)?;
    let th = (eps / (2.0 * p.delta)).asin();
    Ok((f64::from(p.k) * th.cos().ln() + ln_ball_volume(p.k, eps)?).exp())
}

/// Lower bound on vol(M ∩ B_ε(p)) valid at every point p of M. Equal to
/// `vol(M) / β(ε)`.
pub fn vol_lower_bound(eps: f64, p: &BoundParams) -> Result<f64> {
    check_local_eps(eps, p)?;
    Ok(ln_packing_volume(eps, p)?.exp())
}
