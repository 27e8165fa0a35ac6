use std::cmp::Ordering;

use crate::cloud::{dist, PointCloud};
use crate::error::{domain, Error, Result};
use crate::grid::GridIndex;

pub const DEFAULT_MAX_POINTS: usize = 12_000;
pub const DEFAULT_SIMPLEX_CAP: u64 = 50_000_000;

/// A simplex of dimension at most 3 with ascending vertex indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simplex {
    verts: [u32; 4],
    dim: u8,
    value: f64,
}

impl Simplex {
    /// `verts` must be nonempty, at most four, and distinct; order is free.
    pub fn new(verts: &[u32], value: f64) -> Result<Self> {
        if verts.is_empty() || verts.len() > 4 {
            return domain(format!(
                "simplex needs 1 to 4 vertices, got {}",
                verts.len()
            ));
        }
        let mut v = [u32::MAX; 4];
        v[..verts.len()].copy_from_slice(verts);
        v[..verts.len()].sort_unstable();
        if v[..verts.len()].windows(2).any(|w| w[0] == w[1]) {
            return domain("simplex vertices must be distinct");
        }
        if !(value >= 0.0) {
            return domain(format!("filtration value must be >= 0, got {value}"));
        }
        Ok(Simplex {
            verts: v,
            dim: (verts.len() - 1) as u8,
            value,
        })
    }

    pub(crate) fn from_sorted(verts: &[u32], value: f64) -> Self {
        let mut v = [u32::MAX; 4];
        v[..verts.len()].copy_from_slice(verts);
        Simplex {
            verts: v,
            dim: (verts.len() - 1) as u8,
            value,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..=self.dim as usize]
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub(crate) fn key(&self) -> [u32; 4] {
        self.verts
    }
}

pub(crate) fn filtration_cmp(a: &Simplex, b: &Simplex) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.dim.cmp(&b.dim))
        .then_with(|| a.verts.cmp(&b.verts))
}

/// Simplices sorted by (value, dimension, lexicographic vertices).
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    simplices: Vec<Simplex>,
    /// Largest diameter included, or infinity if unbounded.
    horizon: f64,
}

impl Filtration {
    pub fn from_simplices(mut simplices: Vec<Simplex>, horizon: f64) -> Self {
        simplices.sort_unstable_by(filtration_cmp);
        Filtration { simplices, horizon }
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn max_dim(&self) -> usize {
        self.simplices.iter().map(Simplex::dim).max().unwrap_or(0)
    }

    /// Number of simplices per dimension, indexed by dimension.
    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim() + 1];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Σ_d (−1)^d #{d-simplices with value ≤ r}.
    pub fn euler_characteristic_at(&self, r: f64) -> i64 {
        self.simplices
            .iter()
            .filter(|s| s.value <= r)
            .map(|s| if s.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RipsConfig {
    /// Largest edge length (diameter scale).
    pub r_max: f64,
    pub max_dim: usize,
    pub max_points: usize,
    pub simplex_cap: u64,
}

impl RipsConfig {
    pub fn new(r_max: f64, max_dim: usize) -> Self {
        RipsConfig {
            r_max,
            max_dim,
            max_points: DEFAULT_MAX_POINTS,
            simplex_cap: DEFAULT_SIMPLEX_CAP,
        }
    }
}

pub fn build_rips(cloud: &PointCloud, r_max: f64, max_dim: usize) -> Result<Filtration> {
    build_rips_with(cloud, &RipsConfig::new(r_max, max_dim))
}

/// Sorted neighbor lists keeping only higher-indexed neighbors.
fn upper_neighbors(cloud: &PointCloud, r: f64) -> Vec<Vec<u32>> {
    let n = cloud.len();
    let mut out = vec![Vec::new(); n];
    if cloud.dim() <= 3 {
        let grid = GridIndex::new(cloud, r);
        let mut buf = Vec::new();
        for (i, nbrs) in out.iter_mut().enumerate() {
            grid.within(cloud.point(i), r, &mut buf);
            nbrs.extend(buf.iter().filter(|&&j| j > i).map(|&j| j as u32));
            nbrs.sort_unstable();
        }
    } else {
        for (i, nbrs) in out.iter_mut().enumerate() {
            nbrs.extend(
                (i + 1..n)
                    .filter(|&j| dist(cloud.point(i), cloud.point(j)) <= r)
                    .map(|j| j as u32),
            );
        }
    }
    out
}

struct CliqueBuilder<'a> {
    cloud: &'a PointCloud,
    nbrs: &'a [Vec<u32>],
    max_dim: usize,
    cap: u64,
    out: Vec<Simplex>,
}

impl CliqueBuilder<'_> {
    fn push(&mut self, verts: &[u32], value: f64) -> Result<()> {
        if self.out.len() as u64 >= self.cap {
            return Err(Error::Resource {
                what: "simplices",
                needed: self.out.len() as u64 + 1,
                cap: self.cap,
            });
        }
        self.out.push(Simplex::from_sorted(verts, value));
        Ok(())
    }

    /// Extend the clique `verts` (with diameter `value`) by every candidate.
    fn extend(&mut self, verts: &mut Vec<u32>, value: f64, cands: &[u32]) -> Result<()> {
        for (ci, &w) in cands.iter().enumerate() {
            let pw = self.cloud.point(w as usize);
            let v = verts
                .iter()
                .map(|&u| dist(self.cloud.point(u as usize), pw))
                .fold(value, f64::max);
            verts.push(w);
            self.push(verts, v)?;
            if verts.len() <= self.max_dim {
                let next = intersect(&cands[ci + 1..], &self.nbrs[w as usize]);
                if !next.is_empty() {
                    self.extend(verts, v, &next)?;
                }
            }
            verts.pop();
        }
        Ok(())
    }
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// All simplices of dimension `<= max_dim` with diameter `<= r_max`.
pub fn build_rips_with(cloud: &PointCloud, cfg: &RipsConfig) -> Result<Filtration> {
    let n = cloud.len();
    if n == 0 {
        return domain("cannot build a Rips complex on an empty cloud");
    }
    if n > cfg.max_points {
        return Err(Error::Resource {
            what: "points",
            needed: n as u64,
            cap: cfg.max_points as u64,
        });
    }
    if !(cfg.r_max > 0.0) {
        return domain(format!("r_max must be > 0, got {}", cfg.r_max));
    }
    if cfg.max_dim > 3 {
        return domain(format!("max_dim must be <= 3, got {}", cfg.max_dim));
    }
    let nbrs = upper_neighbors(cloud, cfg.r_max);
    let mut b = CliqueBuilder {
        cloud,
        nbrs: &nbrs,
        max_dim: cfg.max_dim,
        cap: cfg.simplex_cap,
        out: Vec::new(),
    };
    let mut verts = Vec::with_capacity(4);
    for i in 0..n as u32 {
        verts.push(i);
        b.push(&verts, 0.0)?;
        if cfg.max_dim > 0 {
            b.extend(&mut verts, 0.0, &nbrs[i as usize])?;
        }
        verts.pop();
    }
    Ok(Filtration::from_simplices(b.out, cfg.r_max))
}
