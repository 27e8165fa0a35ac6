//! H0 and H1 of a Rips filtration without materializing triangles.
//!
//! H0 comes from union-find over edges in filtration order. H1 comes from
//! reducing edge coboundaries in reverse filtration order; edges that kill
//! an H0 class are skipped (their columns reduce to zero), and triangles are
//! enumerated on demand from vertex neighborhoods. The pairs coincide with
//! those of the homology reduction on the same total order.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::cloud::PointCloud;
use crate::error::{domain, Error, Result};
use crate::grid::{pad3, GridIndex};

use super::barcode::{Barcode, Interval};
use super::rips::RipsConfig;

/// Triangle in filtration order: diameter bits, then packed vertices.
type TriKey = u128;

const VERT_BITS: u32 = 21;

fn tri_key(value: f64, mut v: [u32; 3]) -> TriKey {
    v.sort_unstable();
    let packed =
        (u64::from(v[0]) << (2 * VERT_BITS)) | (u64::from(v[1]) << VERT_BITS) | u64::from(v[2]);
    (u128::from(value.to_bits()) << 64) | u128::from(packed)
}

fn tri_value(k: TriKey) -> f64 {
    f64::from_bits((k >> 64) as u64)
}

#[derive(Clone, Copy)]
struct Edge {
    value: f64,
    u: u32,
    v: u32,
}

struct Complex {
    points: Vec<[f64; 3]>,
    /// Neighbors within `r_max`, both directions.
    adj: Vec<Vec<u32>>,
    edges: Vec<Edge>,
    r_max: f64,
}

fn d3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let (x, y, z) = (a[0] - b[0], a[1] - b[1], a[2] - b[2]);
    (x * x + y * y + z * z).sqrt()
}

impl Complex {
    fn new(cloud: &PointCloud, cfg: &RipsConfig) -> Result<Self> {
        let points: Vec<[f64; 3]> = cloud.iter().map(pad3).collect();
        let grid = GridIndex::new(cloud, cfg.r_max);
        let mut adj = vec![Vec::new(); points.len()];
        let mut edges = Vec::new();
        let mut buf = Vec::new();
        for (i, p) in points.iter().enumerate() {
            grid.within(cloud.point(i), cfg.r_max, &mut buf);
            buf.sort_unstable();
            for &j in &buf {
                if j == i {
                    continue;
                }
                adj[i].push(j as u32);
                if j > i {
                    edges.push(Edge {
                        value: d3(p, &points[j]),
                        u: i as u32,
                        v: j as u32,
                    });
                }
            }
            if edges.len() as u64 > cfg.simplex_cap {
                return Err(Error::Resource {
                    what: "simplices",
                    needed: edges.len() as u64,
                    cap: cfg.simplex_cap,
                });
            }
        }
        edges.sort_unstable_by(|a, b| {
            a.value
                .total_cmp(&b.value)
                .then(a.u.cmp(&b.u))
                .then(a.v.cmp(&b.v))
        });
        Ok(Complex {
            points,
            adj,
            edges,
            r_max: cfg.r_max,
        })
    }

    /// Coboundary of edge `e`, unordered.
    fn coboundary(&self, e: usize, out: &mut Vec<TriKey>) {
        out.clear();
        let Edge { value, u, v } = self.edges[e];
        let (a, b) = if self.adj[u as usize].len() <= self.adj[v as usize].len() {
            (u, v)
        } else {
            (v, u)
        };
        let (pa, pb) = (&self.points[a as usize], &self.points[b as usize]);
        for &w in &self.adj[a as usize] {
            if w == b {
                continue;
            }
            let pw = &self.points[w as usize];
            let db = d3(pb, pw);
            if db > self.r_max {
                continue;
            }
            let d = value.max(d3(pa, pw)).max(db);
            out.push(tri_key(d, [u, v, w]));
        }
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }
}

/// Working column as a lazy min-heap: equal keys cancel in pairs when they
/// surface.
struct WorkingColumn {
    heap: BinaryHeap<Reverse<TriKey>>,
}

impl WorkingColumn {
    fn pivot(&mut self) -> Option<TriKey> {
        loop {
            let Reverse(top) = self.heap.pop()?;
            if self.heap.peek() == Some(&Reverse(top)) {
                self.heap.pop();
            } else {
                self.heap.push(Reverse(top));
                return Some(top);
            }
        }
    }

    /// Remaining keys in ascending order, cancelled pairs removed.
    fn drain_sorted(&mut self) -> Vec<TriKey> {
        let mut out = Vec::new();
        while let Some(k) = self.pivot() {
            self.heap.pop();
            out.push(k);
        }
        out
    }
}

enum Owner {
    /// Column equal to the plain coboundary of this edge.
    Plain(u32),
    /// Index into the stored reduced columns.
    Stored(u32),
}

/// Barcode of the Rips filtration in dimensions 0 and 1 (`cfg.max_dim`
/// at most 2). Zero-length intervals are kept.
pub fn rips_persistence_low(cloud: &PointCloud, cfg: &RipsConfig) -> Result<Barcode> {
    let n = cloud.len();
    if n == 0 {
        return domain("cannot build a Rips complex on an empty cloud");
    }
    if cloud.dim() > 3 {
        return domain("implicit Rips persistence supports ambient dimension <= 3");
    }
    if n > cfg.max_points || n >= 1 << VERT_BITS {
        return Err(Error::Resource {
            what: "points",
            needed: n as u64,
            cap: cfg.max_points.min((1 << VERT_BITS) - 1) as u64,
        });
    }
    if !(cfg.r_max > 0.0) {
        return domain(format!("r_max must be > 0, got {}", cfg.r_max));
    }
    if cfg.max_dim > 2 {
        return domain(format!(
            "implicit Rips persistence needs max_dim <= 2, got {}",
            cfg.max_dim
        ));
    }
    let cx = if cfg.max_dim == 0 {
        Complex {
            points: Vec::new(),
            adj: Vec::new(),
            edges: Vec::new(),
            r_max: cfg.r_max,
        }
    } else {
        Complex::new(cloud, cfg)?
    };

    let mut intervals = Vec::new();
    let mut uf = UnionFind {
        parent: (0..n as u32).collect(),
    };
    let mut kills_h0 = vec![false; cx.edges.len()];
    for (i, e) in cx.edges.iter().enumerate() {
        let (a, b) = (uf.find(e.u), uf.find(e.v));
        if a != b {
            uf.parent[a.max(b) as usize] = a.min(b);
            kills_h0[i] = true;
            intervals.push(Interval::new(0, 0.0, e.value));
        }
    }
    let components = (0..n as u32).filter(|&x| uf.find(x) == x).count();
    intervals.extend((0..components).map(|_| Interval::new(0, 0.0, f64::INFINITY)));

    if cfg.max_dim == 1 {
        for (i, e) in cx.edges.iter().enumerate() {
            if !kills_h0[i] {
                intervals.push(Interval::new(1, e.value, f64::INFINITY));
            }
        }
    } else if cfg.max_dim == 2 {
        let mut pivots: HashMap<TriKey, Owner> = HashMap::new();
        let mut stored: Vec<Vec<TriKey>> = Vec::new();
        let mut buf = Vec::new();
        let mut col = WorkingColumn {
            heap: BinaryHeap::new(),
        };
        for e in (0..cx.edges.len()).rev() {
            if kills_h0[e] {
                continue;
            }
            cx.coboundary(e, &mut buf);
            col.heap.clear();
            col.heap.extend(buf.iter().map(|&k| Reverse(k)));
            let mut reduced = false;
            loop {
                let Some(pivot) = col.pivot() else {
                    intervals.push(Interval::new(1, cx.edges[e].value, f64::INFINITY));
                    break;
                };
                match pivots.get(&pivot) {
                    None => {
                        let owner = if reduced {
                            stored.push(col.drain_sorted());
                            Owner::Stored(stored.len() as u32 - 1)
                        } else {
                            Owner::Plain(e as u32)
                        };
                        pivots.insert(pivot, owner);
                        intervals.push(Interval::new(1, cx.edges[e].value, tri_value(pivot)));
                        break;
                    }
                    Some(Owner::Plain(f)) => {
                        cx.coboundary(*f as usize, &mut buf);
                        col.heap.extend(buf.iter().map(|&k| Reverse(k)));
                    }
                    Some(Owner::Stored(s)) => {
                        col.heap
                            .extend(stored[*s as usize].iter().map(|&k| Reverse(k)));
                    }
                }
                reduced = true;
            }
        }
    }
    Ok(Barcode::new(intervals, cfg.max_dim, cfg.r_max))
}
