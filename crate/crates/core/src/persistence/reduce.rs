use crate::error::{Error, Result};

use super::barcode::{Barcode, Interval};
use super::rips::{Filtration, Simplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reduction {
    /// Dimensions processed top-down, skipping columns already known to be
    /// positive.
    #[default]
    Twist,
    /// Textbook left-to-right column reduction.
    Plain,
}

pub fn compute_persistence(f: &Filtration) -> Result<Barcode> {
    compute_persistence_with(f, Reduction::Twist)
}

const NONE: u32 = u32::MAX;

/// Global filtration index of every simplex, looked up by vertex set.
struct FaceIndex {
    by_dim: Vec<Vec<([u32; 4], u32)>>,
}

impl FaceIndex {
    fn new(simplices: &[Simplex]) -> Self {
        let max_dim = simplices.iter().map(Simplex::dim).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); max_dim + 1];
        for (i, s) in simplices.iter().enumerate() {
            by_dim[s.dim()].push((s.key(), i as u32));
        }
        for v in &mut by_dim {
            v.sort_unstable_by_key(|e| e.0);
        }
        FaceIndex { by_dim }
    }

    /// Boundary of simplex `j` as ascending global indices.
    fn boundary(&self, simplices: &[Simplex], j: usize, out: &mut Vec<u32>) -> Result<()> {
        out.clear();
        let s = &simplices[j];
        let d = s.dim();
        if d == 0 {
            return Ok(());
        }
        let verts = s.vertices();
        let table = &self.by_dim[d - 1];
        for skip in 0..=d {
            let mut key = [u32::MAX; 4];
            let mut m = 0;
            for (t, &v) in verts.iter().enumerate() {
                if t != skip {
                    key[m] = v;
                    m += 1;
                }
            }
            let idx = match table.binary_search_by_key(&key, |e| e.0) {
                Ok(p) => table[p].1,
                Err(_) => {
                    return Err(Error::Inconsistent(format!(
                        "face {:?} of simplex {:?} is missing",
                        &key[..d],
                        verts
                    )))
                }
            };
            if idx as usize >= j {
                return Err(Error::Inconsistent(format!(
                    "face {:?} enters after simplex {:?}",
                    &key[..d],
                    verts
                )));
            }
            out.push(idx);
        }
        out.sort_unstable();
        Ok(())
    }
}

/// Symmetric difference of two ascending index lists, written to `col`.
fn add_column(col: &mut Vec<u32>, other: &[u32], scratch: &mut Vec<u32>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < col.len() && j < other.len() {
        let (a, b) = (col[i], other[j]);
        if a < b {
            scratch.push(a);
            i += 1;
        } else if b < a {
            scratch.push(b);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    scratch.extend_from_slice(&col[i..]);
    scratch.extend_from_slice(&other[j..]);
    std::mem::swap(col, scratch);
}

struct Reducer {
    /// `pivot_of[row]` indexes `store` for the column whose lowest entry is `row`.
    pivot_of: Vec<u32>,
    store: Vec<(u32, Vec<u32>)>,
    col: Vec<u32>,
    scratch: Vec<u32>,
}

impl Reducer {
    fn reduce(&mut self, j: usize) {
        while let Some(&low) = self.col.last() {
            let k = self.pivot_of[low as usize];
            if k == NONE {
                self.pivot_of[low as usize] = self.store.len() as u32;
                self.store.push((j as u32, std::mem::take(&mut self.col)));
                return;
            }
            add_column(&mut self.col, &self.store[k as usize].1, &mut self.scratch);
        }
    }
}

/// Persistence intervals of `f`, including zero-length ones and essential
/// classes of every dimension present.
pub fn compute_persistence_with(f: &Filtration, method: Reduction) -> Result<Barcode> {
    let s = f.simplices();
    let n = s.len();
    if n >= NONE as usize {
        return Err(Error::Resource {
            what: "simplices",
            needed: n as u64,
            cap: NONE as u64 - 1,
        });
    }
    let faces = FaceIndex::new(s);
    let mut r = Reducer {
        pivot_of: vec![NONE; n],
        store: Vec::new(),
        col: Vec::new(),
        scratch: Vec::new(),
    };
    match method {
        Reduction::Plain => {
            for j in 0..n {
                faces.boundary(s, j, &mut r.col)?;
                r.reduce(j);
            }
        }
        Reduction::Twist => {
            let max_dim = f.max_dim();
            let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); max_dim + 1];
            for (j, x) in s.iter().enumerate() {
                by_dim[x.dim()].push(j as u32);
            }
            for d in (1..=max_dim).rev() {
                for &j in &by_dim[d] {
                    if r.pivot_of[j as usize] != NONE {
                        // already a pivot row: column reduces to zero
                        continue;
                    }
                    faces.boundary(s, j as usize, &mut r.col)?;
                    r.reduce(j as usize);
                }
            }
        }
    }
    let mut negative = vec![false; n];
    for (j, _) in &r.store {
        negative[*j as usize] = true;
    }
    let mut intervals = Vec::new();
    for (i, x) in s.iter().enumerate() {
        let k = r.pivot_of[i];
        if k != NONE {
            let death = s[r.store[k as usize].0 as usize].value();
            intervals.push(Interval::new(x.dim(), x.value(), death));
        } else if !negative[i] {
            intervals.push(Interval::new(x.dim(), x.value(), f64::INFINITY));
        }
    }
    Ok(Barcode::new(intervals, f.max_dim(), f.horizon()))
}
