//! Dense matrices over a cyclotomic field.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cyclo::{Cyc, CycDoc};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    cond: u32,
    e: Vec<Cyc>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over Q(z{})", self.rows, self.cols, self.cond)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, cond: u32) -> Mat {
        Mat { rows, cols, cond, e: vec![Cyc::zero(cond); rows * cols] }
    }

    pub fn identity(n: usize, cond: u32) -> Mat {
        let mut m = Mat::zeros(n, n, cond);
        for i in 0..n {
            m.set(i, i, Cyc::one(cond));
        }
        m
    }

    pub fn scalar(n: usize, c: &Cyc) -> Mat {
        let mut m = Mat::zeros(n, n, c.conductor());
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, cond: u32, f: impl Fn(usize, usize) -> Cyc) -> Mat {
        let mut e = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert_eq!(v.conductor(), cond);
                e.push(v);
            }
        }
        Mat { rows, cols, cond, e }
    }

    /// Integer matrix given row by row.
    pub fn from_ints(rows: &[&[i64]], cond: u32) -> Mat {
        let r = rows.len();
        let c = rows[0].len();
        Mat::from_fn(r, c, cond, |i, j| Cyc::from_int(cond, rows[i][j]))
    }

    pub fn diag(d: &[Cyc]) -> Mat {
        let cond = d[0].conductor();
        let mut m = Mat::zeros(d.len(), d.len(), cond);
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cond, b.cond);
        let mut m = Mat::zeros(a.rows + b.rows, a.cols + b.cols, a.cond);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.cond
    }

    pub fn get(&self, r: usize, c: usize) -> &Cyc {
        &self.e[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cyc) {
        self.e[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Cyc] {
        &self.e
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Cyc::is_zero)
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert!(self.rows == o.rows && self.cols == o.cols);
        Mat { rows: self.rows, cols: self.cols, cond: self.cond, e: self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert!(self.rows == o.rows && self.cols == o.cols);
        Mat { rows: self.rows, cols: self.cols, cond: self.cond, e: self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, cond: self.cond, e: self.e.iter().map(Cyc::neg).collect() }
    }

    pub fn scale(&self, c: &Cyc) -> Mat {
        Mat { rows: self.rows, cols: self.cols, cond: self.cond, e: self.e.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        assert_eq!(self.cond, o.cond, "mixed conductors in product");
        let mut out = Mat::zeros(self.rows, o.cols, self.cond);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.e[idx] = out.e[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Mat {
        let mut r = Mat::identity(self.rows, self.cond);
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        assert_eq!(self.cond, o.cond);
        let mut out = Mat::zeros(self.rows * o.rows, self.cols * o.cols, self.cond);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.cond, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, cond: self.cond, e: self.e.iter().map(Cyc::conj).collect() }
    }

    pub fn conj_transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.cond, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Cyc {
        let mut t = Cyc::zero(self.cond);
        for i in 0..self.rows.min(self.cols) {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Some(c) when the matrix is c times the identity.
    pub fn scalar_value(&self) -> Option<Cyc> {
        if self.rows != self.cols {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if i == j {
                    if *v != c {
                        return None;
                    }
                } else if !v.is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::Numerical("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n, self.cond);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| Error::Numerical("singular matrix".into()))?;
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            let p = a.get(col, col).inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col {
                    let f = a.get(r, col).clone();
                    if !f.is_zero() {
                        a.axpy_row(r, col, &f.neg());
                        inv.axpy_row(r, col, &f.neg());
                    }
                }
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.e.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, f: &Cyc) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            self.e[i] = self.e[i].mul(f);
        }
    }

    /// row[dst] += f * row[src]
    pub(crate) fn axpy_row(&mut self, dst: usize, src: usize, f: &Cyc) {
        for c in 0..self.cols {
            let s = &self.e[src * self.cols + c];
            if s.is_zero() {
                continue;
            }
            let add = s.mul(f);
            let i = dst * self.cols + c;
            self.e[i] = self.e[i].add(&add);
        }
    }

    pub fn lift(&self, cond: u32) -> Mat {
        if cond == self.cond {
            return self.clone();
        }
        Mat { rows: self.rows, cols: self.cols, cond, e: self.e.iter().map(|x| x.lift(cond)).collect() }
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_c64())
    }
}

/// Matrix dump: rows of cyclotomic coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<CycDoc>>,
}

impl From<&Mat> for MatDoc {
    fn from(m: &Mat) -> MatDoc {
        MatDoc {
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows).map(|r| (0..m.cols).map(|c| CycDoc::from(m.get(r, c))).collect()).collect(),
        }
    }
}

impl MatDoc {
    pub fn to_mat(&self) -> Result<Mat> {
        let first = self
            .entries
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::Parse("empty matrix".into()))?;
        let cond = first.n;
        let mut m = Mat::zeros(self.rows, self.cols, cond);
        for (r, row) in self.entries.iter().enumerate() {
            for (c, d) in row.iter().enumerate() {
                m.set(r, c, d.to_cyc()?);
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_inverse_kron() {
        let a = Mat::from_ints(&[&[0, -1], &[1, 0]], 8);
        let b = Mat::from_ints(&[&[1, 2], &[3, 4]], 8);
        assert_eq!(a.mul(&a), Mat::identity(2, 8).neg());
        let bi = b.inverse().unwrap();
        assert_eq!(b.mul(&bi), Mat::identity(2, 8));
        let k = a.kron(&Mat::identity(2, 8));
        assert_eq!(k.rows(), 4);
        assert_eq!(k.mul(&k), Mat::identity(4, 8).neg());
        assert!(Mat::from_ints(&[&[1, 1], &[1, 1]], 4).inverse().is_err());
    }

    #[test]
    fn adjoints_and_scalars() {
        let i = Cyc::i(8);
        let m = Mat::from_fn(2, 2, 8, |r, c| if r == 0 && c == 1 { i.clone() } else { Cyc::zero(8) });
        assert_eq!(m.conj_transpose().get(1, 0), &i.neg());
        assert_eq!(Mat::scalar(3, &i).scalar_value(), Some(i));
        assert_eq!(m.scalar_value(), None);
    }

    #[test]
    fn doc_roundtrip() {
        let m = Mat::from_ints(&[&[1, 0], &[0, -1]], 8);
        let d = MatDoc::from(&m);
        assert_eq!(d.to_mat().unwrap(), m);
    }
}
