//! Uniform bucket grid over a point cloud in R² or R³.

use crate::cloud::PointCloud;

/// Upper bound on the number of cells; the cell size is enlarged to stay
/// below it.
const MAX_CELLS: f64 = 8.0e6;

#[derive(Debug, Clone)]
pub struct GridIndex {
    points: Vec<[f64; 3]>,
    origin: [f64; 3],
    cell: f64,
    dims: [usize; 3],
    /// CSR layout: indices of cell `c` are `order[start[c]..start[c + 1]]`.
    start: Vec<u32>,
    order: Vec<u32>,
}

pub(crate) fn pad3(p: &[f64]) -> [f64; 3] {
    let mut out = [0.0; 3];
    out[..p.len()].copy_from_slice(p);
    out
}

#[inline]
fn d2(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let (x, y, z) = (a[0] - b[0], a[1] - b[1], a[2] - b[2]);
    x * x + y * y + z * z
}

impl GridIndex {
    /// Index `cloud` (ambient dimension <= 3) with the requested cell size.
    pub fn new(cloud: &PointCloud, cell: f64) -> Self {
        assert!(
            cloud.dim() <= 3,
            "grid index supports ambient dimension <= 3"
        );
        assert!(cell > 0.0 && cell.is_finite(), "cell size must be positive");
        let points: Vec<[f64; 3]> = cloud.iter().map(pad3).collect();
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in &points {
            for a in 0..3 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        if points.is_empty() {
            lo = [0.0; 3];
            hi = [0.0; 3];
        }
        let mut cell = cell;
        let cells_for = |c: f64| -> f64 {
            (0..3)
                .map(|a| ((hi[a] - lo[a]) / c).floor() + 1.0)
                .product()
        };
        let limit = MAX_CELLS.min(8.0 * points.len() as f64 + 1024.0);
        while cells_for(cell) > limit {
            cell *= 1.5;
        }
        let dims = [0, 1, 2].map(|a| ((hi[a] - lo[a]) / cell).floor() as usize + 1);
        let ncells = dims[0] * dims[1] * dims[2];
        let mut grid = GridIndex {
            points,
            origin: lo,
            cell,
            dims,
            start: vec![0; ncells + 1],
            order: Vec::new(),
        };
        let keys: Vec<usize> = grid
            .points
            .iter()
            .map(|p| grid.flat(grid.cell_of(p)))
            .collect();
        for &k in &keys {
            grid.start[k + 1] += 1;
        }
        for c in 0..ncells {
            grid.start[c + 1] += grid.start[c];
        }
        let mut fill = grid.start.clone();
        grid.order = vec![0; keys.len()];
        for (i, &k) in keys.iter().enumerate() {
            grid.order[fill[k] as usize] = i as u32;
            fill[k] += 1;
        }
        grid
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    /// Cell coordinates of `p`, possibly outside the grid.
    fn cell_of(&self, p: &[f64; 3]) -> [i64; 3] {
        [0, 1, 2].map(|a| ((p[a] - self.origin[a]) / self.cell).floor() as i64)
    }

    fn flat(&self, c: [i64; 3]) -> usize {
        (c[0] as usize * self.dims[1] + c[1] as usize) * self.dims[2] + c[2] as usize
    }

    fn cell_points(&self, c: [i64; 3]) -> &[u32] {
        let f = self.flat(c);
        &self.order[self.start[f] as usize..self.start[f + 1] as usize]
    }

    /// Visit all indexed points whose cells intersect the Chebyshev shell of
    /// radius `ring` around cell `c`.
    fn for_ring(&self, c: [i64; 3], ring: i64, mut f: impl FnMut(u32)) {
        let lo = [0, 1, 2].map(|a| (c[a] - ring).max(0));
        let hi = [0, 1, 2].map(|a| (c[a] + ring).min(self.dims[a] as i64 - 1));
        for x in lo[0]..=hi[0] {
            let bx = (x - c[0]).abs() == ring;
            for y in lo[1]..=hi[1] {
                let by = bx || (y - c[1]).abs() == ring;
                if by {
                    for z in lo[2]..=hi[2] {
                        for &i in self.cell_points([x, y, z]) {
                            f(i);
                        }
                    }
                } else {
                    for z in [c[2] - ring, c[2] + ring] {
                        if z >= lo[2] && z <= hi[2] && (ring > 0 || z == c[2]) {
                            for &i in self.cell_points([x, y, z]) {
                                f(i);
                            }
                        }
                        if ring == 0 {
                            break;
                        }
                    }
                }
            }
        }
    }

    /// Exact nearest indexed point to `q`: `(index, distance)`.
    pub fn nearest(&self, q: &[f64]) -> Option<(usize, f64)> {
        if self.points.is_empty() {
            return None;
        }
        let q = pad3(q);
        let c = self.cell_of(&q);
        // distance from q to the grid box, in cells, bounds the first useful ring
        let max_ring = (0..3)
            .map(|a| c[a].abs().max((c[a] - self.dims[a] as i64 + 1).abs()))
            .max()
            .unwrap_or(0);
        let mut best = (usize::MAX, f64::INFINITY);
        let mut ring = 0;
        loop {
            self.for_ring(c, ring, |i| {
                let d = d2(&q, &self.points[i as usize]);
                if d < best.1 || (d == best.1 && (i as usize) < best.0) {
                    best = (i as usize, d);
                }
            });
            // every point in ring r+1 or beyond is at distance >= r * cell
            let reach = ring as f64 * self.cell;
            if (best.0 != usize::MAX && best.1 <= reach * reach) || ring >= max_ring {
                break;
            }
            ring += 1;
        }
        Some((best.0, best.1.sqrt()))
    }

    /// Indices of all points within distance `r` of `q` (inclusive).
    pub fn within(&self, q: &[f64], r: f64, out: &mut Vec<usize>) {
        out.clear();
        let q = pad3(q);
        let c = self.cell_of(&q);
        let rings = (r / self.cell).ceil() as i64;
        let r2 = r * r;
        let lo = [0, 1, 2].map(|a| (c[a] - rings).max(0));
        let hi = [0, 1, 2].map(|a| (c[a] + rings).min(self.dims[a] as i64 - 1));
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                for z in lo[2]..=hi[2] {
                    for &i in self.cell_points([x, y, z]) {
                        if d2(&q, &self.points[i as usize]) <= r2 {
                            out.push(i as usize);
                        }
                    }
                }
            }
        }
    }
}
