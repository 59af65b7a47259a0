//! Small dense nonnegative integer matrices and their float counterparts.
//!
//! Everything here is sized by the number of colours (typically 2..4), so
//! plain row-major `Vec` storage is all that is needed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::ChiVector;

/// Row-major nonnegative integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<u64>,
}

impl IntMatrix {
    pub fn new(dim: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), dim * dim, "matrix data length must be dim^2");
        IntMatrix { dim, data }
    }

    pub fn from_rows(rows: &[&[u64]]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim);
            data.extend_from_slice(row);
        }
        IntMatrix { dim, data }
    }

    pub fn from_chi_rows(rows: &[ChiVector]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim);
            data.extend_from_slice(row.as_slice());
        }
        IntMatrix { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = IntMatrix { dim, data: vec![0; dim * dim] };
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.data.chunks(self.dim)
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|&x| x > 0)
    }

    /// Exact product; panics on u64 overflow (entries in this crate stay far
    /// below that).
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = vec![0u64; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let term = a.checked_mul(other.data[k * d + j]).expect("matrix overflow");
                    out[i * d + j] = out[i * d + j].checked_add(term).expect("matrix overflow");
                }
            }
        }
        IntMatrix { dim: d, data: out }
    }

    /// Saturating product: magnitudes clamp but positivity patterns survive,
    /// which is all the primitivity test needs.
    pub fn mul_sat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = vec![0u64; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] =
                        out[i * d + j].saturating_add(a.saturating_mul(other.data[k * d + j]));
                }
            }
        }
        IntMatrix { dim: d, data: out }
    }

    pub fn pow(&self, k: u32) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.dim);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Row-vector action `x * M` in exact integer arithmetic.
    pub fn row_vec_mul(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.dim);
        let d = self.dim;
        let mut out = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..d {
                out[j] = out[j]
                    .checked_add(xi.checked_mul(self.data[i * d + j]).expect("overflow"))
                    .expect("overflow");
            }
        }
        out
    }

    pub fn to_f64(&self) -> MatF64 {
        MatF64 { dim: self.dim, data: self.data.iter().map(|&x| x as f64).collect() }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Row-major nonnegative float matrix (probability-weighted means, products).
#[derive(Clone, PartialEq, Debug)]
pub struct MatF64 {
    pub dim: usize,
    pub data: Vec<f64>,
}

impl MatF64 {
    pub fn zeros(dim: usize) -> Self {
        MatF64 { dim, data: vec![0.0; dim * dim] }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn is_positive(&self) -> bool {
        self.data.iter().all(|&x| x > 0.0)
    }

    pub fn add_scaled(&mut self, other: &IntMatrix, scale: f64) {
        assert_eq!(self.dim, other.dim());
        for (o, r) in self.data.iter_mut().zip(other.rows().flatten()) {
            *o += scale * (*r as f64);
        }
    }

    pub fn mul(&self, other: &MatF64) -> MatF64 {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = vec![0.0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        MatF64 { dim: d, data: out }
    }

    /// Column-vector action `M * w`.
    pub fn col_vec_mul(&self, w: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut out = vec![0.0; d];
        for i in 0..d {
            let mut acc = 0.0;
            for j in 0..d {
                acc += self.data[i * d + j] * w[j];
            }
            out[i] = acc;
        }
        out
    }
}
