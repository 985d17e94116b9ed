use std::fmt;
use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::matrix::field::FieldTable;

/// Square matrix over a [`FieldTable`]. Vectors are rows; matrices act on
/// the right (`v -> vA`).
#[derive(Clone)]
pub struct Matrix {
    n: usize,
    entries: Vec<u32>,
    field: Arc<FieldTable>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries && self.field == other.field
    }
}

impl Eq for Matrix {}

impl Matrix {
    pub fn from_rows(field: &Arc<FieldTable>, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(GroupError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for x in row {
                if x >= field.order() {
                    return Err(GroupError::Unsupported(format!(
                        "entry {x} is not an element of GF({})",
                        field.order()
                    )));
                }
                entries.push(x);
            }
        }
        Ok(Matrix {
            n,
            entries,
            field: field.clone(),
        })
    }

    pub fn identity(field: &Arc<FieldTable>, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Matrix {
            n,
            entries,
            field: field.clone(),
        }
    }

    /// `E + a E_{ij}` (0-indexed, `i != j`).
    pub fn transvection(field: &Arc<FieldTable>, n: usize, i: usize, j: usize, a: u32) -> Self {
        let mut m = Self::identity(field, n);
        m.entries[i * n + j] = a;
        m
    }

    pub fn diagonal(field: &Arc<FieldTable>, diag: &[u32]) -> Self {
        let n = diag.len();
        let mut m = Self::identity(field, n);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let k = &self.field;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for t in 0..n {
                    acc = k.add(acc, k.mul(self.get(i, t), other.get(t, j)));
                }
                entries[i * n + j] = acc;
            }
        }
        Matrix {
            n,
            entries,
            field: self.field.clone(),
        }
    }

    pub fn det(&self) -> u32 {
        let k = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                }
                det = k.neg(det);
            }
            let pv = a[col * n + col];
            det = k.mul(det, pv);
            let pinv = k.inv(pv).unwrap();
            for r in col + 1..n {
                let factor = k.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let sub = k.mul(factor, a[col * n + c]);
                    a[r * n + c] = k.sub(a[r * n + c], sub);
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        let k = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Matrix::identity(&self.field, n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .ok_or(GroupError::SingularMatrix)?;
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                    inv.swap(pivot * n + c, col * n + c);
                }
            }
            let pinv = k.inv(a[col * n + col]).unwrap();
            for c in 0..n {
                a[col * n + c] = k.mul(a[col * n + c], pinv);
                inv[col * n + c] = k.mul(inv[col * n + c], pinv);
            }
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let factor = a[r * n + col];
                for c in 0..n {
                    a[r * n + c] = k.sub(a[r * n + c], k.mul(factor, a[col * n + c]));
                    inv[r * n + c] = k.sub(inv[r * n + c], k.mul(factor, inv[col * n + c]));
                }
            }
        }
        Ok(Matrix {
            n,
            entries: inv,
            field: self.field.clone(),
        })
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        let k = &self.field;
        (0..self.n)
            .map(|j| (0..self.n).fold(0, |acc, i| k.add(acc, k.mul(v[i], self.get(i, j)))))
            .collect()
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == 0))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = self.entries.chunks(self.n).collect();
        write!(f, "Matrix{rows:?} over GF({})", self.field.order())
    }
}
