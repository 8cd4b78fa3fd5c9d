use num_complex::Complex64;

use crate::{Error, Result};

/// Relative tolerance under which a matrix is accepted as symmetric:
/// `|a[j][k] - a[k][j]| <= SYMMETRY_TOL * max(1, max|entry|)`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Dense real symmetric matrix, the Hamiltonian container.
///
/// Construction validates the shape and the symmetry tolerance and then
/// symmetrizes the stored entries, so downstream code can rely on exact
/// (bitwise) symmetry.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSymmetricMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl RealSymmetricMatrix {
    /// Build from row-major entries.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(Error::BadShape {
                n,
                expected: n * n,
                found: entries.len(),
            });
        }
        for (idx, &x) in entries.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite {
                    row: idx / n,
                    col: idx % n,
                });
            }
        }
        let scale = entries.iter().fold(1.0f64, |m, &x| m.max(x.abs()));
        let mut entries = entries;
        for j in 0..n {
            for k in (j + 1)..n {
                let a = entries[j * n + k];
                let b = entries[k * n + j];
                let diff = (a - b).abs();
                if diff > SYMMETRY_TOL * scale {
                    return Err(Error::NotSymmetric {
                        row: j,
                        col: k,
                        diff,
                    });
                }
                let avg = 0.5 * (a + b);
                entries[j * n + k] = avg;
                entries[k * n + j] = avg;
            }
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::BadShape {
                    n,
                    expected: n * n,
                    found: row.len() * n,
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries)
    }

    /// n x n zero matrix. Panics if `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "dimension must be at least 1");
        Self {
            n,
            entries: vec![0.0; n * n],
        }
    }

    /// n x n identity. Panics if `n == 0`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for j in 0..n {
            m.entries[j * n + j] = 1.0;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    pub(crate) fn set_symmetric(&mut self, row: usize, col: usize, value: f64) {
        self.entries[row * self.n + col] = value;
        self.entries[col * self.n + row] = value;
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|x| factor * x).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
    }

    /// Parse the matrix text format: first line `n`, then `n` rows of `n`
    /// whitespace-separated decimal values. Rejects asymmetric input.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (line_no, first) = lines
            .by_ref()
            .map(|(i, l)| (i + 1, l.trim()))
            .find(|(_, l)| !l.is_empty())
            .ok_or(Error::Parse {
                line: 1,
                message: "empty input".into(),
            })?;
        let n: usize = first.parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("expected matrix dimension, got {first:?}"),
        })?;
        if n == 0 {
            return Err(Error::Parse {
                line: line_no,
                message: "dimension must be at least 1".into(),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        let mut rows_read = 0usize;
        for (i, line) in lines {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if rows_read == n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {n} rows, found extra data"),
                });
            }
            let row: Vec<f64> = trimmed
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid number {tok:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {n} values per row, got {}", row.len()),
                });
            }
            entries.extend_from_slice(&row);
            rows_read += 1;
        }
        if rows_read != n {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("expected {n} rows, got {rows_read}"),
            });
        }
        Self::new(n, entries)
    }

    /// Inverse of [`parse_text`](Self::parse_text); values round-trip
    /// exactly.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for j in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|k| format!("{}", self.get(j, k))).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Dense complex matrix, holding `e^{itH}` and friends.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub(crate) fn from_entries(n: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "dimension must be at least 1");
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            entries[j * n + j] = Complex64::new(1.0, 0.0);
        }
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.n + col]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for a in 0..n {
            for c in 0..n {
                let lhs = self.entries[a * n + c];
                if lhs == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for b in 0..n {
                    entries[a * n + b] += lhs * other.entries[c * n + b];
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for a in 0..n {
            for b in 0..n {
                entries[b * n + a] = self.entries[a * n + b].conj();
            }
        }
        Self { n, entries }
    }

    /// `max_{j,k} |self[j][k] - other[j][k]|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm())))
    }

    /// `max |U U* - I|`, zero for a unitary matrix.
    pub fn unitarity_defect(&self) -> f64 {
        let product = self.mul(&self.adjoint()).expect("same dimension");
        product
            .max_abs_diff(&Self::identity(self.n))
            .expect("same dimension")
    }
}
