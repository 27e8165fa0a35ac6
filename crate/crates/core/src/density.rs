//! ε-density certificates for point clouds on the built-in manifolds.
//!
//! A reference mesh with covering radius `h` turns the continuum statement
//! "every point of M has a sample within ε" into a finite check with a
//! resolution margin: if every mesh point is within `s` of the cloud then
//! every point of M is within `s + h`. The verdict is three-valued so that a
//! `Dense` or `NotDense` answer is always sound.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::cloud::{dist, PointCloud};
use crate::error::{domain, Error, Result};
use crate::grid::GridIndex;
use crate::manifold::ManifoldSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Dense,
    NotDense,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Dense => "Dense",
            Verdict::NotDense => "NotDense",
            Verdict::Unknown => "Unknown",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Dense" => Ok(Verdict::Dense),
            "NotDense" => Ok(Verdict::NotDense),
            "Unknown" => Ok(Verdict::Unknown),
            other => domain(format!("unknown verdict {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityCertificate {
    pub eps: f64,
    pub verdict: Verdict,
    /// Largest mesh-to-cloud distance.
    pub sup_dist: f64,
    /// Covering radius of the mesh.
    pub mesh_h: f64,
    /// Mesh point achieving `sup_dist`.
    pub witness: Vec<f64>,
}

impl DensityCertificate {
    fn from_measurement(eps: f64, sup_dist: f64, mesh_h: f64, witness: Vec<f64>) -> Self {
        let verdict = if sup_dist + mesh_h <= eps {
            Verdict::Dense
        } else if sup_dist > eps {
            Verdict::NotDense
        } else {
            Verdict::Unknown
        };
        DensityCertificate {
            eps,
            verdict,
            sup_dist,
            mesh_h,
            witness,
        }
    }

    /// `verdict=<...> eps=<...> sup_dist=<...> mesh_h=<...> witness=<x,y,z>`
    pub fn to_record(&self) -> String {
        let witness: Vec<String> = self.witness.iter().map(|c| c.to_string()).collect();
        format!(
            "verdict={} eps={} sup_dist={} mesh_h={} witness={}",
            self.verdict,
            self.eps,
            self.sup_dist,
            self.mesh_h,
            witness.join(",")
        )
    }

    pub fn parse_record(line: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { line: 1, msg };
        let mut fields = HashMap::new();
        for token in line.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| bad(format!("malformed field {token:?}")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| bad(format!("missing field {k}")))
        };
        let num = |k: &str| -> Result<f64> {
            get(k)?
                .parse()
                .map_err(|_| bad(format!("field {k} is not a number")))
        };
        let witness = get("witness")?
            .split(',')
            .map(|c| {
                c.parse::<f64>()
                    .map_err(|_| bad(format!("bad witness {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DensityCertificate {
            eps: num("eps")?,
            verdict: get("verdict")?.parse()?,
            sup_dist: num("sup_dist")?,
            mesh_h: num("mesh_h")?,
            witness,
        })
    }
}

fn check_same_dim(a: &PointCloud, b: &PointCloud) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(())
}

fn default_cell(cloud: &PointCloud) -> f64 {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in cloud.iter() {
        for (a, c) in p.iter().enumerate() {
            lo[a] = lo[a].min(*c);
            hi[a] = hi[a].max(*c);
        }
    }
    let extent = (0..cloud.dim())
        .map(|a| hi[a] - lo[a])
        .fold(0.0f64, f64::max);
    let per_side = (cloud.len() as f64).powf(1.0 / cloud.dim() as f64).ceil();
    (extent / per_side).max(1e-6)
}

/// max over mesh points of the distance to the nearest cloud point, with
/// the mesh point achieving it (first in mesh order on ties).
pub fn sup_distance_to_cloud(mesh: &PointCloud, cloud: &PointCloud) -> Result<(f64, Vec<f64>)> {
    let index = GridIndex::new(cloud, default_cell(cloud));
    sup_distance_indexed(mesh, cloud, &index)
}

fn sup_distance_indexed(
    mesh: &PointCloud,
    cloud: &PointCloud,
    index: &GridIndex,
) -> Result<(f64, Vec<f64>)> {
    if mesh.is_empty() || cloud.is_empty() {
        return domain("sup distance needs a nonempty mesh and cloud");
    }
    check_same_dim(mesh, cloud)?;
    if cloud.dim() > 3 {
        return domain("sup distance supports ambient dimension <= 3");
    }
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, m) in mesh.iter().enumerate() {
        let (_, d) = index.nearest(m).expect("nonempty index");
        if d > best.0 {
            best = (d, i);
        }
    }
    Ok((best.0, mesh.point(best.1).to_vec()))
}

/// Certify that `cloud` is `eps`-dense in `spec`, using a reference mesh of
/// covering radius `h` (`0 < h < eps/4`).
pub fn certify_density(
    spec: &ManifoldSpec,
    cloud: &PointCloud,
    eps: f64,
    h: f64,
) -> Result<DensityCertificate> {
    check_certify_args(eps, h)?;
    let mesh = spec.reference_mesh(h)?;
    certify_density_with_mesh(&mesh, h, cloud, eps)
}

fn check_certify_args(eps: f64, h: f64) -> Result<()> {
    if !(eps > 0.0) {
        return domain(format!("eps must be > 0, got {eps}"));
    }
    if !(h > 0.0) || h >= eps / 4.0 {
        return domain(format!(
            "mesh resolution must satisfy 0 < h < eps/4, got h={h}, eps={eps}"
        ));
    }
    Ok(())
}

/// As [`certify_density`], reusing a prebuilt mesh whose covering radius is
/// `mesh_h`.
pub fn certify_density_with_mesh(
    mesh: &PointCloud,
    mesh_h: f64,
    cloud: &PointCloud,
    eps: f64,
) -> Result<DensityCertificate> {
    check_certify_args(eps, mesh_h)?;
    if cloud.is_empty() {
        return domain("cannot certify an empty cloud");
    }
    let index = GridIndex::new(cloud, eps);
    let (sup, witness) = sup_distance_indexed(mesh, cloud, &index)?;
    Ok(DensityCertificate::from_measurement(
        eps, sup, mesh_h, witness,
    ))
}

/// Named boolean preconditions for the deformation-retract criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct PreconditionReport {
    pub checks: Vec<(&'static str, bool)>,
}

impl PreconditionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| *n)
            .collect()
    }
}

impl fmt::Display for PreconditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.checks {
            writeln!(f, "[{}] {}", if *ok { "pass" } else { "FAIL" }, name)?;
        }
        Ok(())
    }
}

pub const CHECK_EPS_POSITIVE: &str = "eps > 0";
pub const CHECK_EPS_HALF_DELTA: &str = "eps < delta/2";
pub const CHECK_REACH: &str = "delta <= min(reach(M), reach(dM))";

pub fn check_preconditions(spec: &ManifoldSpec, eps: f64) -> PreconditionReport {
    PreconditionReport {
        checks: vec![
            (CHECK_EPS_POSITIVE, eps > 0.0),
            (CHECK_EPS_HALF_DELTA, eps < spec.delta / 2.0),
            (CHECK_REACH, spec.satisfies_reach_condition()),
        ],
    }
}

/// Size of the greedy `r`-separated subset (pairwise distances `> r`) built
/// by scanning the cloud in order. A lower bound on the packing number.
pub fn greedy_packing_number(cloud: &PointCloud, r: f64) -> Result<usize> {
    if cloud.is_empty() {
        return domain("packing number of an empty cloud");
    }
    if !(r > 0.0) {
        return domain(format!("packing radius must be > 0, got {r}"));
    }
    let key = |p: &[f64]| -> Vec<i64> { p.iter().map(|c| (c / r).floor() as i64).collect() };
    let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    let mut count = 0;
    let dim = cloud.dim();
    for (i, p) in cloud.iter().enumerate() {
        let base = key(p);
        let mut separated = true;
        // all 3^dim neighboring buckets
        'outer: for code in 0..3usize.pow(dim as u32) {
            let mut cell = base.clone();
            let mut c = code;
            for v in cell.iter_mut() {
                *v += (c % 3) as i64 - 1;
                c /= 3;
            }
            if let Some(members) = buckets.get(&cell) {
                for &j in members {
                    if dist(p, cloud.point(j)) <= r {
                        separated = false;
                        break 'outer;
                    }
                }
            }
        }
        if separated {
            buckets.entry(base).or_default().push(i);
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::semicircle_example_points;
    use std::f64::consts::PI;

    #[test]
    fn sup_distance_trivial_cases() {
        let a = semicircle_example_points();
        let (d, _) = sup_distance_to_cloud(&a, &a).unwrap();
        assert_eq!(d, 0.0);

        let mesh = PointCloud::from_points(2, "t", None, [[0.0, 0.0], [10.0, 0.0]]).unwrap();
        let cloud = PointCloud::from_points(2, "t", None, [[0.0, 0.0]]).unwrap();
        let (d, w) = sup_distance_to_cloud(&mesh, &cloud).unwrap();
        assert_eq!(d, 10.0);
        assert_eq!(w, vec![10.0, 0.0]);
    }

    #[test]
    fn sup_distance_errors() {
        let a = semicircle_example_points();
        let b = PointCloud::from_points(3, "t", None, [[0.0, 0.0, 0.0]]).unwrap();
        assert!(matches!(
            sup_distance_to_cloud(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        let empty = PointCloud::new(2, "t", None);
        assert!(sup_distance_to_cloud(&empty, &a).is_err());
    }

    #[test]
    fn semicircle_hausdorff_distance() {
        let spec = ManifoldSpec::semicircle();
        let h = PI / 1e5;
        let mesh = spec.reference_mesh(h).unwrap();
        let (d, _) = sup_distance_to_cloud(&mesh, &semicircle_example_points()).unwrap();
        let want = 2.0 * (PI / 28.0).sin();
        assert!((d - want).abs() <= 2.0 * h);
    }

    #[test]
    fn semicircle_certificates() {
        let spec = ManifoldSpec::semicircle();
        let a = semicircle_example_points();
        let dense = certify_density(&spec, &a, 0.24, 1e-4).unwrap();
        assert_eq!(dense.verdict, Verdict::Dense);
        assert!(dense.sup_dist + dense.mesh_h <= 0.24);
        let not = certify_density(&spec, &a, 0.22, 1e-4).unwrap();
        assert_eq!(not.verdict, Verdict::NotDense);
        assert!(not.sup_dist > 0.22);

        let only_first = a.select(&[0]);
        let cert = certify_density(&spec, &only_first, 0.24, 1e-4).unwrap();
        assert_eq!(cert.verdict, Verdict::NotDense);
        assert!(dist(&cert.witness, &[-1.0, 0.0]) < 1e-3);
        assert!((cert.sup_dist - 2.0).abs() < 1e-6);
    }

    #[test]
    fn unknown_band() {
        let mesh = PointCloud::from_points(1, "t", None, [[0.0], [1.0]]).unwrap();
        let cloud = PointCloud::from_points(1, "t", None, [[0.0]]).unwrap();
        let cert = certify_density_with_mesh(&mesh, 0.1, &cloud, 1.05).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknown);
    }

    #[test]
    fn certify_argument_checks() {
        let spec = ManifoldSpec::semicircle();
        let a = semicircle_example_points();
        assert!(certify_density(&spec, &a, 0.24, 0.07).is_err());
        assert!(certify_density(&spec, &a, 0.0, 0.01).is_err());
    }

    #[test]
    fn record_round_trip() {
        let cert = DensityCertificate::from_measurement(0.245, 0.2, 0.005, vec![1.0, 0.0, 0.25]);
        let line = cert.to_record();
        assert_eq!(
            line,
            "verdict=Dense eps=0.245 sup_dist=0.2 mesh_h=0.005 witness=1,0,0.25"
        );
        assert_eq!(DensityCertificate::parse_record(&line).unwrap(), cert);
        assert!(DensityCertificate::parse_record("verdict=Dense").is_err());
    }

    #[test]
    fn preconditions() {
        let cyl = ManifoldSpec::cylinder();
        assert!(check_preconditions(&cyl, 0.49).all_pass());
        let r = check_preconditions(&cyl, 0.5);
        assert_eq!(r.get(CHECK_EPS_HALF_DELTA), Some(false));
        assert_eq!(r.failures(), vec![CHECK_EPS_HALF_DELTA]);
        assert!(check_preconditions(&ManifoldSpec::semicircle(), 0.48).all_pass());
        let tor = check_preconditions(&ManifoldSpec::chopped_torus(), 0.49);
        assert_eq!(tor.get(CHECK_EPS_HALF_DELTA), Some(true));
        assert_eq!(tor.get(CHECK_REACH), Some(false));
    }

    #[test]
    fn packing_numbers() {
        let a = semicircle_example_points();
        assert_eq!(greedy_packing_number(&a, 0.1).unwrap(), 8);
        assert_eq!(greedy_packing_number(&a, 2.5).unwrap(), 1);
        // neighbors at distance 2 sin(π/14) ≈ 0.445 are not separated at r = 0.5
        assert!(greedy_packing_number(&a, 0.5).unwrap() < 8);
        assert!(greedy_packing_number(&PointCloud::new(2, "t", None), 0.1).is_err());
    }
}
