use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{bigint_from_value, bigint_to_value};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Format("ragged matrix rows".into()));
        }
        let data = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        Ok(IntMatrix { rows: r, cols: c, data })
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(rows: usize, columns: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::SizeMismatch { left: col.len(), right: rows });
            }
            for (i, v) in col.into_iter().enumerate() {
                m.data[i * cols + j] = v;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    fn as_i64(&self) -> Option<Vec<i64>> {
        self.data.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch { left: self.cols, right: other.rows });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        // Machine-word fast path when every partial sum provably fits in i128.
        if let (Some(a), Some(b)) = (self.as_i64(), other.as_i64()) {
            let ma = a.iter().map(|v| v.unsigned_abs() as u128).max().unwrap_or(0);
            let mb = b.iter().map(|v| v.unsigned_abs() as u128).max().unwrap_or(0);
            let fits = ma
                .checked_mul(mb)
                .and_then(|p| p.checked_mul(k.max(1) as u128))
                .is_some_and(|bound| bound < (1u128 << 126));
            if fits {
                let data: Vec<BigInt> = (0..n)
                    .into_par_iter()
                    .flat_map_iter(|i| {
                        let mut acc = vec![0i128; m];
                        for l in 0..k {
                            let x = a[i * k + l] as i128;
                            if x == 0 {
                                continue;
                            }
                            for (j, slot) in acc.iter_mut().enumerate() {
                                *slot += x * b[l * m + j] as i128;
                            }
                        }
                        acc.into_iter().map(BigInt::from)
                    })
                    .collect();
                return Ok(IntMatrix { rows: n, cols: m, data });
            }
        }
        let data: Vec<BigInt> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut acc = vec![BigInt::zero(); m];
                for l in 0..k {
                    let x = self.get(i, l);
                    if x.is_zero() {
                        continue;
                    }
                    for (j, slot) in acc.iter_mut().enumerate() {
                        *slot += x * other.get(l, j);
                    }
                }
                acc
            })
            .collect();
        Ok(IntMatrix { rows: n, cols: m, data })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::SizeMismatch { left: self.cols, right: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::SizeMismatch { left: self.rows, right: self.cols });
        }
        let mut result = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "data": self.data.iter().map(bigint_to_value).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let dim = |key: &str| {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|d| d as usize)
                .ok_or_else(|| Error::Format(format!("matrix: missing '{key}'")))
        };
        let (rows, cols) = (dim("rows")?, dim("cols")?);
        let data = v
            .get("data")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("matrix: missing 'data'".into()))?
            .iter()
            .map(bigint_from_value)
            .collect::<Result<Vec<_>>>()?;
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch { left: data.len(), right: rows * cols });
        }
        Ok(IntMatrix { rows, cols, data })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> =
                cells[i * self.cols..(i + 1) * self.cols].iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
