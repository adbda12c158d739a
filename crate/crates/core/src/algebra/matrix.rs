use super::field::{Field, FieldId};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Dense matrix over F_q, row-major. The field is passed to every operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// JSON interchange form: `{"q":..,"p":..,"n":..,"rows":[[..],..]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub q: u32,
    pub p: u32,
    pub n: u32,
    pub rows: Vec<Vec<u32>>,
}

impl MatrixFq {
    pub fn zeros(rows: usize, cols: usize) -> MatrixFq {
        MatrixFq { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(k: usize) -> MatrixFq {
        let mut m = MatrixFq::zeros(k, k);
        for i in 0..k {
            m.data[i * k + i] = 1;
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(k: usize, x: u32) -> MatrixFq {
        let mut m = MatrixFq::zeros(k, k);
        for i in 0..k {
            m.data[i * k + i] = x;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], field: &Field) -> Result<MatrixFq> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for &x in row {
                data.push(field.check(x)?);
            }
        }
        Ok(MatrixFq { rows: r, cols: c, data })
    }

    /// Builds from raw row-major entries without field validation.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> MatrixFq {
        assert_eq!(data.len(), rows * cols);
        MatrixFq { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_json(&self, field: &Field) -> MatrixJson {
        let FieldId { q, p, n } = field.id();
        MatrixJson { q, p, n, rows: self.to_rows() }
    }

    pub fn from_json(j: &MatrixJson) -> Result<(Field, MatrixFq)> {
        let field = Field::new(j.p, j.n)?;
        if field.q() != j.q {
            return Err(Error::FieldMismatch { expected: field.q(), got: j.q });
        }
        let m = MatrixFq::from_rows(&j.rows, &field)?;
        Ok((field, m))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &MatrixFq, f: &Field) -> Result<MatrixFq> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MatrixFq::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut out = MatrixFq::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Right multiplication by the permutation matrix of `perm`: column i moves to
    /// position `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<MatrixFq> {
        if perm.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "permutation of degree {} on {} columns",
                perm.len(),
                self.cols
            )));
        }
        let mut out = MatrixFq::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, &pj) in perm.iter().enumerate() {
                out.set(i, pj, self.get(i, j));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and pivot columns. Pivots are the first nonzero
    /// entry found scanning down each column.
    pub fn rref(&self, f: &Field) -> (MatrixFq, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && factor != 0 {
                    for j in 0..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank of the matrix (equal to its column rank).
    pub fn column_rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self, f: &Field) -> MatrixFq {
        let (m, piv) = self.rref(f);
        MatrixFq { rows: piv.len(), cols: m.cols, data: m.data[..piv.len() * m.cols].to_vec() }
    }

    pub fn same_row_space(&self, other: &MatrixFq, f: &Field) -> bool {
        self.cols == other.cols && self.row_space_basis(f) == other.row_space_basis(f)
    }

    pub fn inverse(&self, f: &Field) -> Result<MatrixFq> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let k = self.rows;
        let mut aug = MatrixFq::zeros(k, 2 * k);
        for i in 0..k {
            for j in 0..k {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, k + i, 1);
        }
        let (red, piv) = aug.rref(f);
        if piv.len() < k || piv[k - 1] >= k {
            return Err(Error::Singular);
        }
        let mut out = MatrixFq::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, red.get(i, k + j));
            }
        }
        Ok(out)
    }

    pub fn det(&self, f: &Field) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let k = self.rows;
        let mut det = 1u32;
        for c in 0..k {
            let Some(pr) = (c..k).find(|&i| m.get(i, c) != 0) else { return Ok(0) };
            if pr != c {
                for j in 0..k {
                    m.data.swap(pr * k + j, c * k + j);
                }
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).unwrap();
            for i in c + 1..k {
                let factor = f.mul(m.get(i, c), inv);
                if factor != 0 {
                    for j in c..k {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn trace(&self, f: &Field) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.is_square() && self.column_rank(f) == self.rows
    }

    /// Uniform random matrix with entries in `0..q`.
    pub fn random<R: rand::Rng + ?Sized>(rows: usize, cols: usize, f: &Field, rng: &mut R) -> MatrixFq {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..f.q())).collect();
        MatrixFq { rows, cols, data }
    }
}
