use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub dim: usize,
    pub birth: f64,
    /// `f64::INFINITY` for essential classes.
    pub death: f64,
}

impl Interval {
    pub fn new(dim: usize, birth: f64, death: f64) -> Self {
        debug_assert!(birth <= death);
        Interval { dim, birth, death }
    }

    pub fn len(&self) -> f64 {
        self.death - self.birth
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }
}

pub const BARCODE_CSV_HEADER: &str = "dim,birth,death";

#[derive(Debug, Clone, PartialEq)]
pub struct Barcode {
    intervals: Vec<Interval>,
    max_dim: usize,
    horizon: f64,
}

impl Barcode {
    /// `max_dim` is the top simplex dimension of the filtration and
    /// `horizon` its largest filtration value.
    pub fn new(intervals: Vec<Interval>, max_dim: usize, horizon: f64) -> Self {
        Barcode {
            intervals,
            max_dim,
            horizon,
        }
    }

    /// Every interval, zero-length ones included.
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// Number of `dim` intervals with birth ≤ r < death.
    pub fn betti_at(&self, r: f64, dim: usize) -> usize {
        self.intervals
            .iter()
            .filter(|i| i.dim == dim && i.birth <= r && r < i.death)
            .count()
    }

    /// The `k` longest finite positive-length intervals of `dim`, longest
    /// first, ties by earlier birth.
    pub fn top_k_intervals(&self, dim: usize, k: usize) -> Vec<Interval> {
        let mut v: Vec<Interval> = self
            .intervals
            .iter()
            .filter(|i| i.dim == dim && !i.is_essential() && i.len() > 0.0)
            .copied()
            .collect();
        v.sort_by(|a, b| {
            b.len()
                .total_cmp(&a.len())
                .then(a.birth.total_cmp(&b.birth))
        });
        v.truncate(k);
        v
    }

    /// Intervals worth showing: positive length and below the top
    /// dimension, whose classes are never killed inside the filtration.
    pub fn presented(&self) -> Vec<Interval> {
        let mut v: Vec<Interval> = self
            .intervals
            .iter()
            .filter(|i| i.len() > 0.0 && (i.dim < self.max_dim || self.max_dim == 0))
            .copied()
            .collect();
        v.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
        });
        v
    }

    /// Positive lengths of `dim` intervals with deaths clipped at the
    /// horizon, longest first.
    pub fn clipped_lengths(&self, dim: usize) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .intervals
            .iter()
            .filter(|i| i.dim == dim)
            .map(|i| i.death.min(self.horizon) - i.birth)
            .filter(|&l| l > 0.0)
            .collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// Smallest m with L_m ≥ factor·L_{m+1} over the clipped lengths
    /// (L beyond the last bar is 0), or 0 if there are no bars.
    pub fn dominant_count(&self, dim: usize, factor: f64) -> usize {
        let lens = self.clipped_lengths(dim);
        for m in 0..lens.len() {
            let next = lens.get(m + 1).copied().unwrap_or(0.0);
            if lens[m] >= factor * next {
                return m + 1;
            }
        }
        0
    }

    /// `dim,birth,death` rows of the presented intervals, `inf` for
    /// essential classes. `scale` multiplies birth and death.
    pub fn to_csv(&self, scale: f64) -> String {
        let mut out = String::new();
        out.push_str(BARCODE_CSV_HEADER);
        out.push('\n');
        for i in self.presented() {
            let _ = writeln!(out, "{},{},{}", i.dim, i.birth * scale, i.death * scale);
        }
        out
    }
}
