use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// An ordered set of points in R^N, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    seed: Option<u64>,
    source: String,
}

impl PointCloud {
    pub fn new(dim: usize, source: impl Into<String>, seed: Option<u64>) -> Self {
        assert!(dim > 0, "ambient dimension must be positive");
        PointCloud {
            dim,
            coords: Vec::new(),
            seed,
            source: source.into(),
        }
    }

    pub fn from_points<P: AsRef<[f64]>>(
        dim: usize,
        source: impl Into<String>,
        seed: Option<u64>,
        points: impl IntoIterator<Item = P>,
    ) -> Result<Self> {
        let mut cloud = PointCloud::new(dim, source, seed);
        for p in points {
            cloud.push(p.as_ref())?;
        }
        Ok(cloud)
    }

    pub fn push(&mut self, p: &[f64]) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        self.coords.extend_from_slice(p);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// Subset of the cloud in the given order.
    pub fn select(&self, indices: &[usize]) -> PointCloud {
        let mut out = PointCloud::new(self.dim, self.source.clone(), self.seed);
        for &i in indices {
            out.coords.extend_from_slice(self.point(i));
        }
        out
    }

    /// Copy with every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> PointCloud {
        PointCloud {
            coords: self.coords.iter().map(|c| c * factor).collect(),
            ..self.clone()
        }
    }

    /// Serialize as `# dim=<N> source=<kind> seed=<seed>` followed by one
    /// comma-separated point per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.coords.len() * 20 + 64);
        let seed = self
            .seed
            .map_or_else(|| "none".to_string(), |s| s.to_string());
        let _ = writeln!(
            out,
            "# dim={} source={} seed={}",
            self.dim, self.source, seed
        );
        for p in self.iter() {
            for (j, c) in p.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{c}");
            }
            out.push('\n');
        }
        out
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = match lines.next() {
            Some(line) => line?,
            None => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "empty input".into(),
                })
            }
        };
        let (dim, source, seed) = parse_header(&header)?;
        let mut cloud = PointCloud::new(dim, source, seed);
        for (idx, line) in lines.enumerate() {
            let line = line?;
            let lineno = idx + 2;
            if line.trim().is_empty() {
                continue;
            }
            let mut n = 0;
            for field in line.split(',') {
                let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad coordinate {field:?}"),
                })?;
                cloud.coords.push(v);
                n += 1;
            }
            if n != dim {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected {dim} coordinates, found {n}"),
                });
            }
        }
        Ok(cloud)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::read_from(text.as_bytes())
    }
}

fn parse_header(header: &str) -> Result<(usize, String, Option<u64>)> {
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let rest = header
        .strip_prefix('#')
        .ok_or_else(|| bad("header must start with '#'".into()))?;
    let (mut dim, mut source, mut seed) = (None, None, None);
    for token in rest.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| bad(format!("malformed header field {token:?}")))?;
        match key {
            "dim" => {
                let d: usize = value
                    .parse()
                    .map_err(|_| bad(format!("bad dim {value:?}")))?;
                if d == 0 {
                    return Err(bad("dim must be positive".into()));
                }
                dim = Some(d);
            }
            "source" => source = Some(value.to_string()),
            "seed" => {
                seed = Some(if value == "none" {
                    None
                } else {
                    Some(
                        value
                            .parse()
                            .map_err(|_| bad(format!("bad seed {value:?}")))?,
                    )
                })
            }
            _ => return Err(bad(format!("unknown header field {key:?}"))),
        }
    }
    Ok((
        dim.ok_or_else(|| bad("missing dim".into()))?,
        source.ok_or_else(|| bad("missing source".into()))?,
        seed.ok_or_else(|| bad("missing seed".into()))?,
    ))
}

#[inline]
pub(crate) fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist2(a, b).sqrt()
}
