//! Dense matrices over `F_p`: reduced row-echelon form, rank, kernels.
//!
//! Entries are stored row-major as raw residues; every public accessor hands
//! back [`FieldElement`]s or checked residues.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFq {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`MatrixFq::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixFq,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl MatrixFq {
    pub fn new(spec: FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &v in &data {
            spec.check(v as u64)?;
        }
        Ok(MatrixFq { spec, rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[u32]>>(spec: FieldSpec, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(spec, rows.len(), cols, data)
    }

    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixFq { spec, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Uniformly random entries.
    pub fn random<R: Rng + ?Sized>(spec: FieldSpec, rows: usize, cols: usize, rng: &mut R) -> Self {
        let p = spec.p();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        MatrixFq { spec, rows, cols, data }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.spec.element(self.data[r * self.cols + c] as u64)
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        // chunks_exact panics on a zero chunk size
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Vertical concatenation: rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch { left: self.spec.p(), right: other.spec.p() });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&other.data);
        Ok(MatrixFq { spec: self.spec, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Keeps only the first `n` rows.
    pub fn truncate_rows(mut self, n: usize) -> MatrixFq {
        let n = n.min(self.rows);
        self.data.truncate(n * self.cols);
        self.rows = n;
        self
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let p = self.spec.order();
        Ok(self
            .row_iter()
            .map(|row| {
                let s = row.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect())
    }

    /// Row vector times matrix: `Σ coeffs[i] · row_i`.
    pub fn combine_rows(&self, coeffs: &[u32]) -> Vec<u32> {
        debug_assert_eq!(coeffs.len(), self.rows);
        let mut out = vec![0u32; self.cols];
        for (r, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                axpy(self.spec, &mut out, self.row(r), c);
            }
        }
        out
    }

    /// Reduced row-echelon form. Zero rows are kept at the bottom.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivot_cols = m.eliminate(true);
        let rank = pivot_cols.len();
        Rref { matrix: m, rank, pivot_cols }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// In-place Gaussian elimination; returns the pivot columns. With `reduce`
    /// the result is fully reduced (pivots 1, zeros above and below).
    fn eliminate(&mut self, reduce: bool) -> Vec<usize> {
        let spec = self.spec;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if src != r {
                for k in c..cols {
                    self.data.swap(src * cols + k, r * cols + k);
                }
            }
            let lead = self.data[r * cols + c];
            if lead != 1 {
                let inv = spec.inv_raw(lead);
                for v in &mut self.data[r * cols + c..(r + 1) * cols] {
                    *v = spec.mul_raw(*v, inv);
                }
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (pivot_row, below) = tail.split_at_mut(cols);
            let pivot = &pivot_row[c..];
            for row in below.chunks_exact_mut(cols) {
                let f = row[c];
                if f != 0 {
                    axpy(spec, &mut row[c..], pivot, spec.neg_raw(f));
                }
            }
            if reduce {
                for row in head.chunks_exact_mut(cols) {
                    let f = row[c];
                    if f != 0 {
                        axpy(spec, &mut row[c..], pivot, spec.neg_raw(f));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right null space `{x : self · x = 0}`, one row per free
    /// column, each with a 1 in its free coordinate.
    pub fn kernel_basis(&self) -> MatrixFq {
        let Rref { matrix, pivot_cols, .. } = self.rref();
        let spec = self.spec;
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut data = Vec::new();
        let mut count = 0;
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = spec.neg_raw(matrix.data[i * n + free]);
            }
            data.extend(v);
            count += 1;
        }
        MatrixFq { spec, rows: count, cols: n, data }
    }
}

/// `target += f · src` entrywise.
#[inline]
pub(crate) fn axpy(spec: FieldSpec, target: &mut [u32], src: &[u32], f: u32) {
    let p = spec.p();
    if p == 2 {
        // f is 1 here
        for (t, &s) in target.iter_mut().zip(src) {
            *t ^= s;
        }
        return;
    }
    let p = p as u64;
    let f = f as u64;
    for (t, &s) in target.iter_mut().zip(src) {
        *t = ((*t as u64 + f * s as u64) % p) as u32;
    }
}

impl fmt::Display for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
