//! Independent oracles shared by the integration and acceptance tests.
//! Nothing here calls into the library's numerics.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tanh-sinh quadrature of `f` over [0, len]. `f` receives the distances
/// (t, len - t) to both endpoints, each computed without cancellation, so
/// integrable endpoint singularities are handled.
pub fn tanh_sinh(f: impl Fn(f64, f64) -> f64, len: f64) -> f64 {
    const S_MAX: f64 = 4.5;
    let term = |s: f64| {
        let u = FRAC_PI_2 * s.sinh();
        let left = len / (1.0 + (-2.0 * u).exp());
        let right = len / (1.0 + (2.0 * u).exp());
        let w = len * FRAC_PI_2 * s.cosh() / (2.0 * u.cosh().powi(2));
        if w == 0.0 || left == 0.0 || right == 0.0 {
            0.0
        } else {
            w * f(left, right)
        }
    };
    let mut h = 0.5;
    let mut sum = term(0.0);
    let mut k = 1;
    while f64::from(k) * h <= S_MAX {
        sum += term(f64::from(k) * h) + term(-f64::from(k) * h);
        k += 1;
    }
    let mut prev = sum * h;
    for _ in 0..8 {
        // add the midpoints of the current grid
        h /= 2.0;
        let mut k = 1;
        while f64::from(k) * h <= S_MAX {
            sum += term(f64::from(k) * h) + term(-f64::from(k) * h);
            k += 2;
        }
        let est = sum * h;
        if (est - prev).abs() <= 1e-15 * est.abs() {
            return est;
        }
        prev = est;
    }
    prev
}

/// I_x(a, b) by quadrature of the beta integrand, normalized by the
/// complete integral computed the same way.
pub fn inc_beta_oracle(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let full = tanh_sinh(|t, r| t.powf(a - 1.0) * r.powf(b - 1.0), 1.0);
    if x <= 0.5 {
        tanh_sinh(|t, _| t.powf(a - 1.0) * (1.0 - t).powf(b - 1.0), x) / full
    } else {
        1.0 - tanh_sinh(|t, _| t.powf(b - 1.0) * (1.0 - t).powf(a - 1.0), 1.0 - x) / full
    }
}

/// Area of the circular segment of half-angle `phi` in a disk of radius `r`.
pub fn circular_segment(r: f64, phi: f64) -> f64 {
    r * r * (phi - phi.sin() * phi.cos())
}

/// Monte Carlo estimate (mean, standard error) of the volume of the cap
/// {|x| <= r, x_3 >= r cos(phi)} in R^3, for each `phi`, from `n` points
/// uniform in the bounding cube.
pub fn cap3_monte_carlo(r: f64, phis: &[f64], n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cuts: Vec<f64> = phis.iter().map(|p| r * p.cos()).collect();
    let mut hits = vec![0u64; phis.len()];
    for _ in 0..n {
        let x: f64 = rng.gen_range(-r..r);
        let y: f64 = rng.gen_range(-r..r);
        let z: f64 = rng.gen_range(-r..r);
        if x * x + y * y + z * z <= r * r {
            for (h, &c) in hits.iter_mut().zip(&cuts) {
                if z >= c {
                    *h += 1;
                }
            }
        }
    }
    let cube = (2.0 * r).powi(3);
    hits.iter()
        .map(|&h| binomial_estimate(h, n as u64, cube))
        .collect()
}

/// `scale * h / n` with its binomial standard error.
pub fn binomial_estimate(hits: u64, n: u64, scale: f64) -> (f64, f64) {
    let f = hits as f64 / n as f64;
    (scale * f, scale * (f * (1.0 - f) / n as f64).sqrt())
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Rank over F2 of a set of bit vectors.
fn rank(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; 64];
    let mut r = 0;
    for mut v in vectors {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                r += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    r
}

/// Basis of the kernel of the F2 map sending generator i to `images[i]`,
/// restricted to generators whose index is in `active`.
fn kernel(images: &[u64], active: &[usize]) -> Vec<u64> {
    let mut pivots: Vec<(u64, u64)> = Vec::new();
    let mut cycles = Vec::new();
    for &i in active {
        let mut v = images[i];
        let mut combo = 1u64 << i;
        loop {
            if v == 0 {
                cycles.push(combo);
                break;
            }
            let top = 63 - v.leading_zeros();
            match pivots.iter().find(|(p, _)| 63 - p.leading_zeros() == top) {
                Some(&(p, c)) => {
                    v ^= p;
                    combo ^= c;
                }
                None => {
                    pivots.push((v, combo));
                    break;
                }
            }
        }
    }
    cycles
}

/// Rips barcode in dimensions 0 and 1 of at most 8 points, from ranks of
/// the maps H_p(K_i) -> H_p(K_j) between all sublevel complexes. Bars are
/// (dim, birth, death) with death = inf for essential classes, sorted.
pub fn brute_rips_barcode(points: &[Vec<f64>]) -> Vec<(usize, f64, f64)> {
    let n = points.len();
    assert!((1..=8).contains(&n), "oracle handles 1..=8 points");
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push(((i, j), euclid(&points[i], &points[j])));
        }
    }
    let edge_id = |i: usize, j: usize| edges.iter().position(|e| e.0 == (i, j)).unwrap();
    let mut tris = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (edge_id(i, j), edge_id(i, k), edge_id(j, k));
                let v = edges[a].1.max(edges[b].1).max(edges[c].1);
                tris.push(((1u64 << a) | (1u64 << b) | (1u64 << c), v));
            }
        }
    }
    let mut levels: Vec<f64> = std::iter::once(0.0)
        .chain(edges.iter().map(|e| e.1))
        .collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let m = levels.len();

    let edge_bd: Vec<u64> = edges
        .iter()
        .map(|((i, j), _)| (1u64 << i) | (1u64 << j))
        .collect();
    let edges_upto = |lv: usize| -> Vec<usize> {
        (0..edges.len())
            .filter(|&e| edges[e].1 <= levels[lv])
            .collect()
    };
    // cycles and boundaries of each sublevel complex, per dimension
    let z: [Vec<Vec<u64>>; 2] = [
        (0..m)
            .map(|_| (0..n).map(|v| 1u64 << v).collect())
            .collect(),
        (0..m).map(|lv| kernel(&edge_bd, &edges_upto(lv))).collect(),
    ];
    let bd: [Vec<Vec<u64>>; 2] = [
        (0..m)
            .map(|lv| edges_upto(lv).iter().map(|&e| edge_bd[e]).collect())
            .collect(),
        (0..m)
            .map(|lv| {
                tris.iter()
                    .filter(|t| t.1 <= levels[lv])
                    .map(|t| t.0)
                    .collect()
            })
            .collect(),
    ];
    let mut bars = Vec::new();
    for p in 0..2 {
        // persistent Betti number, with index 0 the empty complex
        let beta = |i: usize, j: usize| -> i64 {
            if i == 0 {
                return 0;
            }
            let (zi, bj) = (&z[p][i - 1], &bd[p][j - 1]);
            (rank(zi.iter().chain(bj).copied()) - rank(bj.iter().copied())) as i64
        };
        for i in 1..=m {
            for j in i + 1..=m {
                let mu = beta(i, j - 1) - beta(i, j) - beta(i - 1, j - 1) + beta(i - 1, j);
                assert!(mu >= 0);
                for _ in 0..mu {
                    bars.push((p, levels[i - 1], levels[j - 1]));
                }
            }
            let ess = beta(i, m) - beta(i - 1, m);
            for _ in 0..ess {
                bars.push((p, levels[i - 1], f64::INFINITY));
            }
        }
    }
    bars.sort_by(cmp_bar);
    bars
}

pub fn cmp_bar(a: &(usize, f64, f64), b: &(usize, f64, f64)) -> std::cmp::Ordering {
    a.0.cmp(&b.0)
        .then(a.1.total_cmp(&b.1))
        .then(a.2.total_cmp(&b.2))
}

/// Seeded planar cloud of 1..=8 points. Odd seeds draw from a small
/// integer grid so that many pairwise distances tie.
pub fn planar_cloud(seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=8);
    (0..n)
        .map(|_| {
            if seed % 2 == 1 {
                vec![
                    f64::from(rng.gen_range(0..4)),
                    f64::from(rng.gen_range(0..4)),
                ]
            } else {
                vec![rng.gen::<f64>(), rng.gen::<f64>()]
            }
        })
        .collect()
}

/// Multiset equality of barcodes up to `tol` on the endpoints.
pub fn same_bars(a: &[(usize, f64, f64)], b: &[(usize, f64, f64)], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.0 == y.0 && (x.1 - y.1).abs() <= tol && (x.2 == y.2 || (x.2 - y.2).abs() <= tol)
        })
}
