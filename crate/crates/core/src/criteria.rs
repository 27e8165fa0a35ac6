//! Applicability of three reconstruction criteria on a concrete sample:
//! the ε/2-density criterion of this crate, the μ-reach inequality of
//! Chazal et al., and the Čech bound of Attali et al.

use std::fmt;

use crate::cloud::PointCloud;
use crate::density::sup_distance_to_cloud;
use crate::error::{domain, Result};
use crate::manifold::ManifoldSpec;

/// One constant piece `(lo, hi] -> value` of a μ-reach profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

/// Piecewise-constant μ ↦ r_μ, covering `(0, hi_last]`, nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct MuReachProfile {
    pieces: Vec<Piece>,
}

impl MuReachProfile {
    /// Build from `(hi, value)` breakpoints: the first piece is
    /// `(0, hi_0]`, the next `(hi_0, hi_1]`, and so on. `hi` may be `inf`.
    pub fn from_breakpoints(points: &[(f64, f64)]) -> Result<Self> {
        if points.is_empty() {
            return domain("profile needs at least one piece");
        }
        let mut pieces = Vec::with_capacity(points.len());
        let mut lo = 0.0;
        let mut prev = f64::INFINITY;
        for &(hi, value) in points {
            if !(hi > lo) {
                return domain(format!(
                    "profile breakpoints must increase, got {hi} after {lo}"
                ));
            }
            if !(value >= 0.0) || !value.is_finite() {
                return domain(format!(
                    "profile value must be finite and >= 0, got {value}"
                ));
            }
            if value > prev {
                return domain("mu-reach profile must be nonincreasing in mu");
            }
            if lo.is_infinite() {
                return domain("no piece may follow an unbounded one");
            }
            pieces.push(Piece { lo, hi, value });
            lo = hi;
            prev = value;
        }
        Ok(MuReachProfile { pieces })
    }

    /// r_μ = 1 on (0, 1] and 0 beyond.
    pub fn semicircle() -> Self {
        MuReachProfile::from_breakpoints(&[(1.0, 1.0), (f64::INFINITY, 0.0)])
            .expect("valid built-in profile")
    }

    /// `hi:value,hi:value,...`, with `inf` allowed as the last `hi`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut points = Vec::new();
        for part in s.split(',') {
            let Some((hi, value)) = part.split_once(':') else {
                return domain(format!("profile piece {part:?} is not hi:value"));
            };
            let hi: f64 = match hi.trim().parse() {
                Ok(v) => v,
                Err(_) => return domain(format!("bad profile breakpoint {hi:?}")),
            };
            let value: f64 = match value.trim().parse() {
                Ok(v) => v,
                Err(_) => return domain(format!("bad profile value {value:?}")),
            };
            points.push((hi, value));
        }
        MuReachProfile::from_breakpoints(&points)
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// r_μ, or `None` outside the covered range.
    pub fn eval(&self, mu: f64) -> Option<f64> {
        self.pieces
            .iter()
            .find(|p| mu > p.lo && mu <= p.hi)
            .map(|p| p.value)
    }
}

/// Whether some α satisfies 4d/μ² ≤ α < r_μ − 3d, and the best margin
/// sup_μ (r_μ − 3d − 4d/μ²). Within a piece the margin increases in μ, so
/// the supremum sits at the right endpoint.
pub fn chazal_feasible(d_h: f64, profile: &MuReachProfile) -> (bool, f64) {
    let best = profile
        .pieces
        .iter()
        .map(|p| {
            if p.hi.is_infinite() {
                p.value - 3.0 * d_h
            } else {
                p.value - 3.0 * d_h - 4.0 * d_h / (p.hi * p.hi)
            }
        })
        .fold(f64::NEG_INFINITY, f64::max);
    (best > 0.0, best)
}

pub(crate) fn lambda_cech_radicand(mu: f64) -> f64 {
    // μ⁶ − 4μ⁵ + 2μ⁴ + 4μ³ − 8μ² + 18μ + 9
    ((((((mu - 4.0) * mu + 2.0) * mu + 4.0) * mu - 8.0) * mu + 18.0) * mu) + 9.0
}

/// λ^cech(μ) on (0, 1].
pub fn lambda_cech(mu: f64) -> Result<f64> {
    if !(mu > 0.0 && mu <= 1.0) {
        return domain(format!("lambda_cech needs 0 < mu <= 1, got {mu}"));
    }
    let num = -3.0 * mu + 3.0 * mu * mu - 3.0 + lambda_cech_radicand(mu).sqrt();
    let den = (((mu - 4.0) * mu - 7.0) * mu + 22.0) * mu + 1.0;
    Ok(num / den)
}

/// Whether d_H < λ^cech(μ)·r_μ for some μ ∈ (0, 1], and the supremum of the
/// right-hand side.
pub fn attali_cech_feasible(d_h: f64, profile: &MuReachProfile) -> (bool, f64) {
    let sup = profile
        .pieces
        .iter()
        .filter(|p| p.lo < 1.0)
        .map(|p| lambda_cech(p.hi.min(1.0)).expect("mu in (0, 1]") * p.value)
        .fold(0.0, f64::max);
    (d_h < sup, sup)
}

/// Margin `min(δ/2 − ε, ε/2 − d_H)`; the criterion applies iff it is > 0.
pub fn ours_margin(spec: &ManifoldSpec, d_h: f64, eps: f64) -> f64 {
    (spec.delta / 2.0 - eps).min(eps / 2.0 - d_h)
}

pub fn ours_feasible(spec: &ManifoldSpec, d_h: f64, eps: f64) -> bool {
    eps < spec.delta / 2.0 && d_h < eps / 2.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaReport {
    pub manifold: String,
    pub eps: f64,
    pub delta: f64,
    pub mesh_h: f64,
    /// Mesh estimate of the Hausdorff distance.
    pub d_h: f64,
    /// `d_h + mesh_h`, a guaranteed upper bound.
    pub d_h_upper: f64,
    pub ours: bool,
    pub ours_margin: f64,
    pub chazal: bool,
    pub chazal_margin: f64,
    pub attali_cech: bool,
    pub attali_cech_sup: f64,
    /// Never computed: `Some(false)` whenever the Čech bound is infeasible,
    /// since λ^rips < λ^cech; `None` otherwise.
    pub attali_rips: Option<bool>,
}

pub const CSV_HEADER: &str = "manifold,eps,delta,mesh_h,d_h,d_h_upper,ours,ours_margin,\
chazal,chazal_margin,attali_cech,attali_cech_sup,attali_rips";

impl CriteriaReport {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.manifold,
            self.eps,
            self.delta,
            self.mesh_h,
            self.d_h,
            self.d_h_upper,
            self.ours,
            self.ours_margin,
            self.chazal,
            self.chazal_margin,
            self.attali_cech,
            self.attali_cech_sup,
            rips_label(self.attali_rips)
        )
    }
}

fn rips_label(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "undetermined",
    }
}

impl fmt::Display for CriteriaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "manifold={}", self.manifold)?;
        writeln!(f, "eps={}", self.eps)?;
        writeln!(f, "delta={}", self.delta)?;
        writeln!(f, "mesh_h={}", self.mesh_h)?;
        writeln!(f, "d_h={}", self.d_h)?;
        writeln!(f, "d_h_upper={}", self.d_h_upper)?;
        writeln!(f, "ours={} margin={}", self.ours, self.ours_margin)?;
        writeln!(
            f,
            "chazal={} best_margin={}",
            self.chazal, self.chazal_margin
        )?;
        writeln!(
            f,
            "attali_cech={} sup_threshold={}",
            self.attali_cech, self.attali_cech_sup
        )?;
        writeln!(
            f,
            "attali_rips={} (dominated: infeasible whenever attali_cech is)",
            rips_label(self.attali_rips)
        )
    }
}

/// Run all three criteria on `cloud`, measuring d_H against a reference
/// mesh of covering radius `mesh_h`.
pub fn compare_all(
    spec: &ManifoldSpec,
    cloud: &PointCloud,
    eps: f64,
    profile: &MuReachProfile,
    mesh_h: f64,
) -> Result<CriteriaReport> {
    if !(eps > 0.0) {
        return domain(format!("eps must be > 0, got {eps}"));
    }
    let mesh = spec.reference_mesh(mesh_h)?;
    let (d_h, _) = sup_distance_to_cloud(&mesh, cloud)?;
    let d_h_upper = d_h + mesh_h;
    let (chazal, chazal_margin) = chazal_feasible(d_h, profile);
    let (attali_cech, attali_cech_sup) = attali_cech_feasible(d_h, profile);
    let ours_margin = ours_margin(spec, d_h_upper, eps);
    Ok(CriteriaReport {
        manifold: spec.name().to_string(),
        eps,
        delta: spec.delta,
        mesh_h,
        d_h,
        d_h_upper,
        ours: ours_margin > 0.0,
        ours_margin,
        chazal,
        chazal_margin,
        attali_cech,
        attali_cech_sup,
        attali_rips: if attali_cech { None } else { Some(false) },
    })
}
