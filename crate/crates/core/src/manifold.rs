//! Built-in compact manifolds with boundary: the upper unit semicircle in
//! R², the unit cylinder surface of height 1 in R³, and a torus (center
//! radius 2, tube radius 1) with the part `x > 2` removed.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::BoundParams;
use crate::cloud::{dist, PointCloud};
use crate::error::{domain, Error, Result};

/// Center-circle radius of the torus.
pub const TORUS_R: f64 = 2.0;
/// Tube radius of the torus.
pub const TORUS_A: f64 = 1.0;
/// Points with `x` above this plane are removed from the torus.
pub const TORUS_CHOP_X: f64 = 2.0;

/// Volume constant used for the torus sample-size bound. This is the value
/// behind the published torus sample sizes (n* = 9809 at γ = 0.1).
pub const TORUS_BOUND_VOLUME: f64 = (8.0 - 0.522) * PI * PI;

/// Exact area of the chopped torus.
pub const TORUS_AREA: f64 = 67.509_626_992_045_66;

/// Default cap on the number of reference-mesh points.
pub const DEFAULT_MESH_CAP: usize = 20_000_000;

const MEDIAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ManifoldKind {
    Semicircle,
    Cylinder,
    ChoppedTorus,
}

impl ManifoldKind {
    pub fn name(self) -> &'static str {
        match self {
            ManifoldKind::Semicircle => "semicircle",
            ManifoldKind::Cylinder => "cylinder",
            ManifoldKind::ChoppedTorus => "torus",
        }
    }

    pub fn all() -> [ManifoldKind; 3] {
        [
            ManifoldKind::Semicircle,
            ManifoldKind::Cylinder,
            ManifoldKind::ChoppedTorus,
        ]
    }
}

impl fmt::Display for ManifoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ManifoldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "semicircle" => Ok(ManifoldKind::Semicircle),
            "cylinder" => Ok(ManifoldKind::Cylinder),
            "torus" | "chopped-torus" => Ok(ManifoldKind::ChoppedTorus),
            other => domain(format!("unknown manifold {other:?}")),
        }
    }
}

/// A concrete manifold with boundary together with the constants that feed
/// the sampling bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManifoldSpec {
    pub kind: ManifoldKind,
    pub intrinsic_dim: u32,
    pub ambient_dim: usize,
    /// k-volume used by the sampling bound.
    pub vol: f64,
    pub delta: f64,
    pub reach_m: f64,
    pub reach_bm: f64,
}

impl ManifoldSpec {
    pub fn new(kind: ManifoldKind) -> Self {
        match kind {
            ManifoldKind::Semicircle => ManifoldSpec {
                kind,
                intrinsic_dim: 1,
                ambient_dim: 2,
                vol: PI,
                delta: 1.0,
                reach_m: 1.0,
                // the boundary is two points at distance 2
                reach_bm: 1.0,
            },
            ManifoldKind::Cylinder => ManifoldSpec {
                kind,
                intrinsic_dim: 2,
                ambient_dim: 3,
                vol: TAU,
                delta: 1.0,
                reach_m: 1.0,
                reach_bm: 1.0,
            },
            ManifoldKind::ChoppedTorus => ManifoldSpec {
                kind,
                intrinsic_dim: 2,
                ambient_dim: 3,
                vol: TORUS_BOUND_VOLUME,
                delta: 1.0,
                reach_m: TORUS_A.min(TORUS_R - TORUS_A),
                // minimum radius of curvature of the cut curve, at (2, ±√5, 0)
                reach_bm: 5f64.sqrt() / 3.0,
            },
        }
    }

    pub fn semicircle() -> Self {
        Self::new(ManifoldKind::Semicircle)
    }

    pub fn cylinder() -> Self {
        Self::new(ManifoldKind::Cylinder)
    }

    pub fn chopped_torus() -> Self {
        Self::new(ManifoldKind::ChoppedTorus)
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// `delta <= min(reach(M), reach(∂M))` for the stored constants.
    pub fn satisfies_reach_condition(&self) -> bool {
        self.delta <= self.reach_m.min(self.reach_bm)
    }

    pub fn bound_params(&self) -> BoundParams {
        BoundParams::new(self.intrinsic_dim, self.vol, self.delta)
            .expect("built-in constants are valid")
    }

    /// Exact k-volume of the manifold.
    pub fn area(&self) -> f64 {
        match self.kind {
            ManifoldKind::Semicircle => PI,
            ManifoldKind::Cylinder => TAU,
            ManifoldKind::ChoppedTorus => TORUS_AREA,
        }
    }

    fn empty_cloud(&self, seed: Option<u64>) -> PointCloud {
        PointCloud::new(self.ambient_dim, self.name(), seed)
    }

    /// `n` i.i.d. points, uniform with respect to k-volume.
    pub fn sample_uniform(&self, n: usize, seed: u64) -> Result<PointCloud> {
        if n == 0 {
            return domain("sample size must be >= 1");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cloud = self.empty_cloud(Some(seed));
        while cloud.len() < n {
            match self.kind {
                ManifoldKind::Semicircle => {
                    let t = rng.gen::<f64>() * PI;
                    cloud.push(&[t.cos(), t.sin()])?;
                }
                ManifoldKind::Cylinder => {
                    let t = rng.gen::<f64>() * TAU;
                    let z = rng.gen::<f64>();
                    cloud.push(&[t.cos(), t.sin(), z])?;
                }
                ManifoldKind::ChoppedTorus => {
                    let u = rng.gen::<f64>() * TAU;
                    let v = rng.gen::<f64>() * TAU;
                    let w = TORUS_R + TORUS_A * v.cos();
                    // area element is proportional to w
                    if rng.gen::<f64>() * (TORUS_R + TORUS_A) >= w {
                        continue;
                    }
                    let p = torus_point(u, v);
                    if p[0] >= TORUS_CHOP_X {
                        continue;
                    }
                    cloud.push(&p)?;
                }
            }
        }
        Ok(cloud)
    }

    /// `n` seeded points on ∂M (not uniform in general).
    pub fn sample_boundary(&self, n: usize, seed: u64) -> Result<PointCloud> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cloud = self.empty_cloud(Some(seed));
        for _ in 0..n {
            match self.kind {
                ManifoldKind::Semicircle => {
                    let x = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                    cloud.push(&[x, 0.0])?;
                }
                ManifoldKind::Cylinder => {
                    let t = rng.gen::<f64>() * TAU;
                    let z = if rng.gen::<bool>() { 1.0 } else { 0.0 };
                    cloud.push(&[t.cos(), t.sin(), z])?;
                }
                ManifoldKind::ChoppedTorus => {
                    cloud.push(&cut_curve_point(rng.gen::<f64>() * TAU))?;
                }
            }
        }
        Ok(cloud)
    }

    /// Whether `p` satisfies the implicit equations of M to within `tol`.
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        if p.len() != self.ambient_dim {
            return false;
        }
        match self.kind {
            ManifoldKind::Semicircle => (p[0].hypot(p[1]) - 1.0).abs() <= tol && p[1] >= -tol,
            ManifoldKind::Cylinder => {
                (p[0].hypot(p[1]) - 1.0).abs() <= tol && p[2] >= -tol && p[2] <= 1.0 + tol
            }
            ManifoldKind::ChoppedTorus => {
                let rho = p[0].hypot(p[1]);
                ((rho - TORUS_R).hypot(p[2]) - TORUS_A).abs() <= tol && p[0] <= TORUS_CHOP_X + tol
            }
        }
    }

    /// Euclidean distance from `p` to ∂M.
    pub fn distance_to_boundary(&self, p: &[f64]) -> Result<f64> {
        self.check_dim(p)?;
        Ok(match self.kind {
            ManifoldKind::Semicircle => dist(p, &[1.0, 0.0]).min(dist(p, &[-1.0, 0.0])),
            ManifoldKind::Cylinder => {
                let dr = p[0].hypot(p[1]) - 1.0;
                dr.hypot(p[2]).min(dr.hypot(p[2] - 1.0))
            }
            ManifoldKind::ChoppedTorus => nearest_on_cut_curve(p).1,
        })
    }

    fn check_dim(&self, q: &[f64]) -> Result<()> {
        if q.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: q.len(),
            });
        }
        Ok(())
    }

    /// Nearest point of M to `q`. Fails with [`Error::Ambiguous`] when `q` is
    /// within 1e-9 of the medial axis.
    pub fn project(&self, q: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(q)?;
        match self.kind {
            ManifoldKind::Semicircle => {
                if q[1] >= 0.0 {
                    let r = q[0].hypot(q[1]);
                    if r < MEDIAL_TOL {
                        return Err(Error::Ambiguous(format!("{q:?} is at the center")));
                    }
                    Ok(vec![q[0] / r, q[1] / r])
                } else {
                    if q[0].abs() < MEDIAL_TOL {
                        return Err(Error::Ambiguous(format!(
                            "{q:?} is equidistant from both endpoints"
                        )));
                    }
                    Ok(vec![q[0].signum(), 0.0])
                }
            }
            ManifoldKind::Cylinder => {
                let r = q[0].hypot(q[1]);
                if r < MEDIAL_TOL {
                    return Err(Error::Ambiguous(format!("{q:?} is on the axis")));
                }
                Ok(vec![q[0] / r, q[1] / r, q[2].clamp(0.0, 1.0)])
            }
            ManifoldKind::ChoppedTorus => {
                let rho = q[0].hypot(q[1]);
                if rho < MEDIAL_TOL {
                    return Err(Error::Ambiguous(format!("{q:?} is on the symmetry axis")));
                }
                let c = [TORUS_R * q[0] / rho, TORUS_R * q[1] / rho, 0.0];
                let d = [q[0] - c[0], q[1] - c[1], q[2]];
                let dn = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                if dn < MEDIAL_TOL {
                    return Err(Error::Ambiguous(format!("{q:?} is on the center circle")));
                }
                let foot = [
                    c[0] + TORUS_A * d[0] / dn,
                    c[1] + TORUS_A * d[1] / dn,
                    c[2] + TORUS_A * d[2] / dn,
                ];
                if foot[0] <= TORUS_CHOP_X {
                    Ok(foot.to_vec())
                } else {
                    let (psi, _) = nearest_on_cut_curve(q);
                    Ok(cut_curve_point(psi).to_vec())
                }
            }
        }
    }

    /// Deterministic point set on M such that every point of M lies within
    /// `h` of some mesh point. ∂M is sampled explicitly.
    pub fn reference_mesh(&self, h: f64) -> Result<PointCloud> {
        self.reference_mesh_capped(h, DEFAULT_MESH_CAP)
    }

    pub fn reference_mesh_capped(&self, h: f64, cap: usize) -> Result<PointCloud> {
        if !(h > 0.0) || h >= self.delta {
            return domain(format!(
                "mesh resolution must satisfy 0 < h < delta, got h={h}"
            ));
        }
        let too_big = |needed: f64| Error::Resource {
            what: "reference mesh points",
            needed: needed.min(u64::MAX as f64) as u64,
            cap: cap as u64,
        };
        let mut cloud = self.empty_cloud(None);
        match self.kind {
            ManifoldKind::Semicircle => {
                // arc spacing <= h
                let m = (PI / h - 1e-9).ceil().max(1.0);
                if m + 1.0 > cap as f64 {
                    return Err(too_big(m + 1.0));
                }
                let m = m as usize;
                for j in 0..=m {
                    let t = PI * j as f64 / m as f64;
                    if j == m {
                        cloud.push(&[-1.0, 0.0])?;
                    } else {
                        cloud.push(&[t.cos(), t.sin()])?;
                    }
                }
            }
            ManifoldKind::Cylinder => {
                // arc-length steps <= h/√2 in both coordinates
                let step = h / 2f64.sqrt();
                let na = (TAU / step).ceil();
                let nz = (1.0 / step).ceil();
                if na * (nz + 1.0) > cap as f64 {
                    return Err(too_big(na * (nz + 1.0)));
                }
                let (na, nz) = (na as usize, nz as usize);
                for i in 0..na {
                    let t = TAU * i as f64 / na as f64;
                    let (s, c) = t.sin_cos();
                    for j in 0..=nz {
                        cloud.push(&[c, s, j as f64 / nz as f64])?;
                    }
                }
            }
            ManifoldKind::ChoppedTorus => {
                // Rows in v with arc spacing <= h/2; each row gets a u-spacing
                // of at most h/2 in arc length. Any point reaches a node along
                // a path of length <= h/2; if that node was cut away, the path
                // crosses the cut curve, which is sampled at spacing <= h/4.
                let step = h / 2.0;
                let nv = (TAU * TORUS_A / step).ceil();
                let estimate = 4.0 * PI * PI * TORUS_R * TORUS_A / (step * step);
                if estimate > cap as f64 {
                    return Err(too_big(estimate));
                }
                let nv = nv as usize;
                for j in 0..nv {
                    let v = TAU * j as f64 / nv as f64;
                    let w = TORUS_R + TORUS_A * v.cos();
                    let nu = (TAU * w / step).ceil() as usize;
                    for i in 0..nu {
                        let p = torus_point(TAU * i as f64 / nu as f64, v);
                        if p[0] <= TORUS_CHOP_X {
                            cloud.push(&p)?;
                        }
                    }
                }
                for p in cut_curve_samples(h / 4.0) {
                    cloud.push(&p)?;
                }
                if cloud.len() > cap {
                    return Err(too_big(cloud.len() as f64));
                }
            }
        }
        Ok(cloud)
    }
}

/// The 8 points dividing the semicircle into 7 equal arcs, from (1, 0) to
/// (−1, 0).
pub fn semicircle_example_points() -> PointCloud {
    let mut cloud = PointCloud::new(2, ManifoldKind::Semicircle.name(), None);
    for j in 0..8 {
        let p = match j {
            0 => [1.0, 0.0],
            7 => [-1.0, 0.0],
            _ => {
                let t = PI * f64::from(j) / 7.0;
                [t.cos(), t.sin()]
            }
        };
        cloud.push(&p).expect("2-d point");
    }
    cloud
}

pub(crate) fn torus_point(u: f64, v: f64) -> [f64; 3] {
    let w = TORUS_R + TORUS_A * v.cos();
    [w * u.cos(), w * u.sin(), TORUS_A * v.sin()]
}

/// Point of the cut curve (torus ∩ {x = 2}) at polar angle `psi` around
/// (2, 0, 0) in the cut plane.
///
/// With t = ρ², the curve satisfies t² + (16 sin²ψ − 2) t − 15 = 0.
pub(crate) fn cut_curve_point(psi: f64) -> [f64; 3] {
    let (s, c) = psi.sin_cos();
    let b = 16.0 * s * s - 2.0;
    let t = (-b + (b * b + 60.0).sqrt()) / 2.0;
    let rho = t.sqrt();
    [TORUS_CHOP_X, rho * c, rho * s]
}

/// Samples of the cut curve with consecutive chord length <= `spacing`.
fn cut_curve_samples(spacing: f64) -> Vec<[f64; 3]> {
    // the curve has length < 12; speed |dp/dψ| <= √5 · 1.5 on the whole curve
    let n = ((TAU * 5f64.sqrt() * 1.5) / spacing).ceil() as usize;
    (0..n)
        .map(|i| cut_curve_point(TAU * i as f64 / n as f64))
        .collect()
}

/// Nearest point on the cut curve: `(psi, distance)`.
fn nearest_on_cut_curve(q: &[f64]) -> (f64, f64) {
    const SCAN: usize = 1024;
    let d = |psi: f64| dist(q, &cut_curve_point(psi));
    let (mut best_psi, mut best) = (0.0, f64::INFINITY);
    for i in 0..SCAN {
        let psi = TAU * i as f64 / SCAN as f64;
        let v = d(psi);
        if v < best {
            best = v;
            best_psi = psi;
        }
    }
    // golden-section refinement inside the bracketing scan cell
    let step = TAU / SCAN as f64;
    let (mut lo, mut hi) = (best_psi - step, best_psi + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (d(x1), d(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = d(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = d(x2);
        }
    }
    let psi = 0.5 * (lo + hi);
    let v = d(psi);
    if v < best {
        (psi, v)
    } else {
        (best_psi, best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        dist(a, b) <= tol
    }

    #[test]
    fn reach_condition() {
        assert!(ManifoldSpec::semicircle().satisfies_reach_condition());
        assert!(ManifoldSpec::cylinder().satisfies_reach_condition());
        // the cut curve bends more tightly than δ = 1 allows
        assert!(!ManifoldSpec::chopped_torus().satisfies_reach_condition());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in ManifoldKind::all() {
            assert_eq!(kind.name().parse::<ManifoldKind>().unwrap(), kind);
        }
        assert!("sphere".parse::<ManifoldKind>().is_err());
    }

    #[test]
    fn example_points() {
        let a = semicircle_example_points();
        assert_eq!(a.len(), 8);
        assert_eq!(a.point(0), &[1.0, 0.0]);
        assert_eq!(a.point(7), &[-1.0, 0.0]);
        for p in a.iter() {
            assert!(ManifoldSpec::semicircle().contains(p, 1e-12));
        }
    }

    #[test]
    fn cut_curve_lies_on_torus_and_plane() {
        let spec = ManifoldSpec::chopped_torus();
        for i in 0..100 {
            let p = cut_curve_point(TAU * f64::from(i) / 100.0);
            assert!(spec.contains(&p, 1e-12), "{p:?}");
            assert_eq!(p[0], TORUS_CHOP_X);
        }
        let p = cut_curve_point(0.0);
        assert!((p[1] - 5f64.sqrt()).abs() < 1e-14);
        let p = cut_curve_point(PI / 2.0);
        assert!((p[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cut_curve_samples_are_dense() {
        let s = cut_curve_samples(0.01);
        let n = s.len();
        for i in 0..n {
            assert!(dist(&s[i], &s[(i + 1) % n]) <= 0.01);
        }
    }

    #[test]
    fn projection_examples() {
        let cyl = ManifoldSpec::cylinder();
        assert!(close(
            &cyl.project(&[2.0, 0.0, 0.5]).unwrap(),
            &[1.0, 0.0, 0.5],
            1e-15
        ));
        assert!(close(
            &cyl.project(&[1.2, 0.0, 1.3]).unwrap(),
            &[1.0, 0.0, 1.0],
            1e-15
        ));
        let semi = ManifoldSpec::semicircle();
        assert!(close(
            &semi.project(&[0.0, 0.5]).unwrap(),
            &[0.0, 1.0],
            1e-15
        ));
        assert!(close(
            &semi.project(&[0.3, -0.2]).unwrap(),
            &[1.0, 0.0],
            1e-15
        ));
    }

    #[test]
    fn projection_ambiguity() {
        assert!(matches!(
            ManifoldSpec::cylinder().project(&[0.0, 0.0, 0.5]),
            Err(Error::Ambiguous(_))
        ));
        assert!(matches!(
            ManifoldSpec::semicircle().project(&[0.0, -0.3]),
            Err(Error::Ambiguous(_))
        ));
        assert!(matches!(
            ManifoldSpec::chopped_torus().project(&[2.0, 0.0, 0.0]),
            Err(Error::Ambiguous(_))
        ));
        assert!(ManifoldSpec::cylinder().project(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn torus_projection_near_cut_lands_on_cut() {
        let spec = ManifoldSpec::chopped_torus();
        // near (3, 0, 0), which was removed
        let f = spec.project(&[2.9, 0.1, 0.05]).unwrap();
        assert!((f[0] - TORUS_CHOP_X).abs() < 1e-12);
        assert!(spec.contains(&f, 1e-9));
        // brute force over the cut curve
        let q = [2.9, 0.1, 0.05];
        let brute = (0..200_000)
            .map(|i| dist(&q, &cut_curve_point(TAU * f64::from(i) / 200_000.0)))
            .fold(f64::INFINITY, f64::min);
        assert!(dist(&q, &f) <= brute + 1e-9);
        // far from the cut it is the radial foot point
        let f = spec.project(&[-3.5, 0.0, 0.0]).unwrap();
        assert!(close(&f, &[-3.0, 0.0, 0.0], 1e-14));
    }

    #[test]
    fn samples_lie_on_manifold() {
        for kind in ManifoldKind::all() {
            let spec = ManifoldSpec::new(kind);
            let cloud = spec.sample_uniform(2000, 3).unwrap();
            assert_eq!(cloud.len(), 2000);
            assert_eq!(cloud.seed(), Some(3));
            assert!(cloud.iter().all(|p| spec.contains(p, 1e-9)));
            let bd = spec.sample_boundary(50, 3).unwrap();
            for p in bd.iter() {
                assert!(spec.contains(p, 1e-9));
                assert!(spec.distance_to_boundary(p).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = ManifoldSpec::chopped_torus();
        assert_eq!(
            spec.sample_uniform(100, 42).unwrap(),
            spec.sample_uniform(100, 42).unwrap()
        );
        assert_ne!(
            spec.sample_uniform(100, 42).unwrap(),
            spec.sample_uniform(100, 43).unwrap()
        );
        assert!(spec.sample_uniform(0, 1).is_err());
    }

    #[test]
    fn torus_sample_respects_chop() {
        let cloud = ManifoldSpec::chopped_torus()
            .sample_uniform(100_000, 9)
            .unwrap();
        assert!(cloud.iter().all(|p| p[0] < TORUS_CHOP_X));
        let near = |h: f64| cloud.iter().filter(|p| p[0] >= TORUS_CHOP_X - h).count();
        assert!(near(0.01) < near(0.1));
        assert!(near(0.1) < near(0.5));
    }

    #[test]
    fn semicircle_mesh_size() {
        let mesh = ManifoldSpec::semicircle()
            .reference_mesh(PI / 1000.0)
            .unwrap();
        assert_eq!(mesh.len(), 1001);
        assert_eq!(mesh.point(0), &[1.0, 0.0]);
        assert_eq!(mesh.point(1000), &[-1.0, 0.0]);
    }

    #[test]
    fn mesh_validation_and_cap() {
        let spec = ManifoldSpec::cylinder();
        assert!(spec.reference_mesh(0.0).is_err());
        assert!(spec.reference_mesh(1.5).is_err());
        assert!(matches!(
            spec.reference_mesh_capped(0.01, 1000),
            Err(Error::Resource { .. })
        ));
        let mesh = spec.reference_mesh(0.05).unwrap();
        assert!(mesh.iter().all(|p| spec.contains(p, 1e-12)));
        // both rims are present
        assert!(mesh.iter().any(|p| p[2] == 0.0));
        assert!(mesh.iter().any(|p| p[2] == 1.0));
    }

    #[test]
    fn distance_to_boundary_values() {
        let cyl = ManifoldSpec::cylinder();
        assert!((cyl.distance_to_boundary(&[1.0, 0.0, 0.3]).unwrap() - 0.3).abs() < 1e-15);
        let semi = ManifoldSpec::semicircle();
        assert!((semi.distance_to_boundary(&[0.0, 1.0]).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let tor = ManifoldSpec::chopped_torus();
        assert!((tor.distance_to_boundary(&[-3.0, 0.0, 0.0]).unwrap() - 26f64.sqrt()).abs() < 1e-9);
    }
}
