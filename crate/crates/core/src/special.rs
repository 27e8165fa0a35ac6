//! Scalar special functions: log-gamma, the regularized incomplete beta
//! function, and ball / hyperspherical-cap volumes built on them.
//!
//! Volumes are evaluated in log space and exponentiated once, so ratios of
//! volumes with very different magnitudes stay accurate.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Lanczos coefficients for g = 607/128, n = 15 (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Natural logarithm of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("ln_gamma requires a finite x > 0, got {x}"));
    }
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - ln_gamma_unchecked(1.0 - x);
    }
    // exact zeros
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + sum.ln()
}

/// ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a + b).
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    Ok(ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?)
}

/// Regularized incomplete beta function I_x(a, b).
///
/// Evaluated with the continued fraction (modified Lentz) on whichever of
/// `x` and `1 - x` converges faster; the switch point is
/// `x > (a + 1) / (a + b + 2)`.
pub fn reg_inc_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("reg_inc_beta requires 0 <= x <= 1, got {x}"));
    }
    if !(a > 0.0 && a.is_finite()) || !(b > 0.0 && b.is_finite()) {
        return domain(format!(
            "reg_inc_beta requires finite a, b > 0, got a={a}, b={b}"
        ));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let ln_front = a * x.ln() + b * (1.0 - x).ln() - ln_beta(a, b)?;
    let value = if x <= (a + 1.0) / (a + b + 2.0) {
        ln_front.exp() * beta_continued_fraction(x, a, b) / a
    } else {
        1.0 - ln_front.exp() * beta_continued_fraction(1.0 - x, b, a) / b
    };
    Ok(value.clamp(0.0, 1.0))
}

fn beta_continued_fraction(x: f64, a: f64, b: f64) -> f64 {
    const MAX_ITER: usize = 10_000;
    const EPS: f64 = 1e-16;
    const TINY: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        // even step
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        // odd step
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// ln of the volume of the k-dimensional ball of radius `r`.
pub fn ln_ball_volume(k: u32, r: f64) -> Result<f64> {
    if k == 0 {
        return domain("ball_volume requires k >= 1");
    }
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("ball_volume requires a finite r > 0, got {r}"));
    }
    let half_k = f64::from(k) / 2.0;
    Ok(half_k * PI.ln() + f64::from(k) * r.ln() - ln_gamma_unchecked(half_k + 1.0))
}

/// Volume π^{k/2} r^k / Γ(k/2 + 1) of the k-dimensional ball of radius `r`.
pub fn ball_volume(k: u32, r: f64) -> Result<f64> {
    Ok(ln_ball_volume(k, r)?.exp())
}

/// A hyperspherical cap: the smaller piece of a k-ball of radius `r` cut
/// off by a hyperplane whose intersection with the ball has radius
/// `r sin(phi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapSpec {
    k: u32,
    r: f64,
    phi: f64,
}

impl CapSpec {
    pub fn new(k: u32, r: f64, phi: f64) -> Result<Self> {
        if k == 0 {
            return domain("cap requires k >= 1");
        }
        if !(r > 0.0) || !r.is_finite() {
            return domain(format!("cap requires a finite r > 0, got {r}"));
        }
        // allow a few ulps above π/2 so that callers can pass asin(1.0)
        if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-15).contains(&phi) {
            return domain(format!("cap half-angle must lie in [0, pi/2], got {phi}"));
        }
        Ok(CapSpec {
            k,
            r,
            phi: phi.min(std::f64::consts::FRAC_PI_2),
        })
    }

    /// Cap whose base has radius `a` (`0 <= a <= r`).
    pub fn from_base_radius(k: u32, r: f64, a: f64) -> Result<Self> {
        if !(0.0..=r).contains(&a) {
            return domain(format!("cap base radius must lie in [0, r], got {a}"));
        }
        Self::new(k, r, (a / r).asin())
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn base_radius(&self) -> f64 {
        self.r * self.phi.sin()
    }
}

/// Volume ½ V_k(r) I_{sin²φ}((k+1)/2, ½) of a hyperspherical cap.
pub fn cap_volume(spec: &CapSpec) -> Result<f64> {
    let s2 = spec.phi.sin().powi(2).min(1.0);
    let i = reg_inc_beta(s2, (f64::from(spec.k) + 1.0) / 2.0, 0.5)?;
    if i == 0.0 {
        return Ok(0.0);
    }
    Ok((0.5f64.ln() + ln_ball_volume(spec.k, spec.r)? + i.ln()).exp())
}
