//! Exact linear algebra over Q(ζ_N): row reduction, null spaces with real
//! unknowns, coordinates in a real-spanned subspace, and Sylvester
//! signatures of hermitian matrices.

use super::cyclo::Cyc;
use super::matrix::Mat;
use crate::error::{Error, Result};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(p, row);
        let inv = m.get(row, col).inv().expect("nonzero pivot");
        m.scale_row(row, &inv);
        for r in 0..m.rows() {
            if r != row {
                let f = m.get(r, col).clone();
                if !f.is_zero() {
                    m.axpy_row(r, row, &f.neg());
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of {x : m x = 0} over the field.
pub fn nullspace(m: &Mat) -> Vec<Vec<Cyc>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let n = a.cols();
    let cond = a.conductor();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Cyc::zero(cond); n];
            v[f] = Cyc::one(cond);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = a.get(r, f).neg();
            }
            v
        })
        .collect()
}

/// Basis of the real solutions of m x = 0 with x real. The conjugate
/// equations are appended so the reduced system has real entries.
pub fn real_nullspace(m: &Mat) -> Result<Vec<Vec<Cyc>>> {
    let rows = m.rows();
    let mut full = Mat::zeros(2 * rows, m.cols(), m.conductor());
    for r in 0..rows {
        for c in 0..m.cols() {
            full.set(r, c, m.get(r, c).clone());
            full.set(rows + r, c, m.get(r, c).conj());
        }
    }
    let basis = nullspace(&full);
    for v in &basis {
        if v.iter().any(|x| !x.is_real()) {
            return Err(Error::Numerical("null space basis is not real".into()));
        }
    }
    Ok(basis)
}

/// Coordinates with respect to real-linearly independent matrices.
#[derive(Clone, Debug)]
pub struct RealCoords {
    basis: Vec<Mat>,
    /// (entry index, conjugated) for each selected equation.
    picks: Vec<(usize, bool)>,
    inv: Mat,
}

impl RealCoords {
    pub fn new(basis: &[Mat]) -> Result<RealCoords> {
        let d = basis.len();
        let cond = basis[0].conductor();
        let len = basis[0].entries().len();
        let mut picks = Vec::new();
        let mut rows: Vec<Vec<Cyc>> = Vec::new();
        'outer: for conj in [false, true] {
            for p in 0..len {
                let row: Vec<Cyc> = basis
                    .iter()
                    .map(|b| if conj { b.entries()[p].conj() } else { b.entries()[p].clone() })
                    .collect();
                if row.iter().all(Cyc::is_zero) {
                    continue;
                }
                let mut trial = rows.clone();
                trial.push(row.clone());
                let m = Mat::from_fn(trial.len(), d, cond, |i, j| trial[i][j].clone());
                if rank(&m) == trial.len() {
                    rows.push(row);
                    picks.push((p, conj));
                    if rows.len() == d {
                        break 'outer;
                    }
                }
            }
        }
        if rows.len() < d {
            return Err(Error::Numerical("component basis is not independent".into()));
        }
        let sys = Mat::from_fn(d, d, cond, |i, j| rows[i][j].clone());
        Ok(RealCoords { basis: basis.to_vec(), picks, inv: sys.inverse()? })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// Real coordinates of y, or None if y is not in the real span.
    pub fn coords(&self, y: &Mat) -> Option<Vec<Cyc>> {
        let cond = y.conductor();
        let rhs: Vec<Cyc> = self
            .picks
            .iter()
            .map(|&(p, conj)| if conj { y.entries()[p].conj() } else { y.entries()[p].clone() })
            .collect();
        let d = self.dim();
        let mut c = vec![Cyc::zero(cond); d];
        for (i, ci) in c.iter_mut().enumerate() {
            for (j, r) in rhs.iter().enumerate() {
                let a = self.inv.get(i, j);
                if !a.is_zero() && !r.is_zero() {
                    *ci = ci.add(&a.mul(r));
                }
            }
        }
        if c.iter().any(|x| !x.is_real()) {
            return None;
        }
        if self.combine(&c) != *y {
            return None;
        }
        Some(c)
    }

    pub fn combine(&self, c: &[Cyc]) -> Mat {
        let b0 = &self.basis[0];
        let mut m = Mat::zeros(b0.rows(), b0.cols(), b0.conductor());
        for (x, b) in c.iter().zip(&self.basis) {
            if !x.is_zero() {
                m = m.add(&b.scale(x));
            }
        }
        m
    }
}

/// (positive, negative, zero) counts of a hermitian matrix by congruence
/// diagonalization.
pub fn hermitian_inertia(h: &Mat) -> Result<(usize, usize, usize)> {
    let n = h.rows();
    if h.conj_transpose() != *h {
        return Err(Error::Numerical("matrix is not hermitian".into()));
    }
    let mut a = h.clone();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                swap_sym(&mut a, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                // row/col k += c row/col j with c = a_kj, diagonal becomes 2|a_kj|^2
                let c = a.get(k, j).clone();
                add_sym(&mut a, k, j, &c);
            } else {
                zero += 1;
                continue;
            }
        }
        let p = a.get(k, k).clone();
        match p.real_sign()? {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!(),
        }
        let pinv = p.inv()?;
        for r in k + 1..n {
            let f = a.get(r, k).mul(&pinv);
            if f.is_zero() {
                continue;
            }
            // row r -= f row k, then col r -= conj(f) col k
            a.axpy_row(r, k, &f.neg());
            let fc = f.conj().neg();
            for i in 0..n {
                let v = a.get(i, k).mul(&fc);
                if !v.is_zero() {
                    let nv = a.get(i, r).add(&v);
                    a.set(i, r, nv);
                }
            }
        }
    }
    Ok((pos, neg, zero))
}

fn swap_sym(a: &mut Mat, i: usize, j: usize) {
    a.swap_rows(i, j);
    for r in 0..a.rows() {
        let x = a.get(r, i).clone();
        let y = a.get(r, j).clone();
        a.set(r, i, y);
        a.set(r, j, x);
    }
}

fn add_sym(a: &mut Mat, k: usize, j: usize, c: &Cyc) {
    a.axpy_row(k, j, c);
    let cc = c.conj();
    for r in 0..a.rows() {
        let v = a.get(r, j).mul(&cc);
        if !v.is_zero() {
            let nv = a.get(r, k).add(&v);
            a.set(r, k, nv);
        }
    }
}

/// |m₊ − m₋| of a nonsingular hermitian matrix.
pub fn hermitian_signature(h: &Mat) -> Result<usize> {
    let (p, n, z) = hermitian_inertia(h)?;
    if z != 0 {
        return Err(Error::Numerical("hermitian form is singular".into()));
    }
    Ok(p.abs_diff(n))
}


/// Null space of a sparse system; rows are (column, coefficient) lists.
/// Returns at most `max` basis vectors.
pub fn sparse_nullspace(ncols: usize, cond: u32, rows: &[Vec<(usize, Cyc)>], max: usize) -> Vec<Vec<Cyc>> {
    use std::collections::BTreeMap;
    // pivot column -> fully reduced row with unit pivot
    let mut piv: BTreeMap<usize, BTreeMap<usize, Cyc>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, Cyc> = BTreeMap::new();
        for (c, v) in row {
            if v.is_zero() {
                continue;
            }
            let e = r.entry(*c).or_insert_with(|| Cyc::zero(cond));
            *e = e.add(v);
        }
        r.retain(|_, v| !v.is_zero());
        let hits: Vec<(usize, Cyc)> =
            r.iter().filter(|(c, _)| piv.contains_key(c)).map(|(c, v)| (*c, v.clone())).collect();
        for (c, v) in hits {
            for (cc, pv) in &piv[&c] {
                let e = r.entry(*cc).or_insert_with(|| Cyc::zero(cond));
                *e = e.sub(&pv.mul(&v));
            }
        }
        r.retain(|_, v| !v.is_zero());
        let Some((&p, pv)) = r.iter().next() else {
            continue;
        };
        let inv = pv.inv().expect("nonzero pivot");
        for v in r.values_mut() {
            *v = v.mul(&inv);
        }
        for other in piv.values_mut() {
            if let Some(f) = other.get(&p).cloned() {
                for (c, v) in &r {
                    let e = other.entry(*c).or_insert_with(|| Cyc::zero(cond));
                    *e = e.sub(&v.mul(&f));
                }
                other.retain(|_, v| !v.is_zero());
            }
        }
        piv.insert(p, r);
    }
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !piv.contains_key(c)) {
        if out.len() == max {
            break;
        }
        let mut v = vec![Cyc::zero(cond); ncols];
        v[f] = Cyc::one(cond);
        for (&p, r) in &piv {
            if let Some(x) = r.get(&f) {
                v[p] = x.neg();
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_dims() {
        let m = Mat::from_ints(&[&[1, 2, 3], &[2, 4, 6]], 4);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let x = Mat::from_fn(3, 1, 4, |i, _| v[i].clone());
            assert!(m.mul(&x).is_zero());
        }
    }

    #[test]
    fn real_nullspace_of_complex_system() {
        // x + i y = 0 with x, y real forces x = y = 0
        let i = Cyc::i(4);
        let m = Mat::from_fn(1, 2, 4, |_, c| if c == 0 { Cyc::one(4) } else { i.clone() });
        assert!(real_nullspace(&m).unwrap().is_empty());
        assert_eq!(nullspace(&m).len(), 1);
    }

    #[test]
    fn coordinates_in_complex_line() {
        let i = Cyc::i(8);
        let x = Mat::from_ints(&[&[0, 1], &[1, 0]], 8);
        let rc = RealCoords::new(&[x.clone(), x.scale(&i)]).unwrap();
        let y = x.scale(&Cyc::from_int(8, 3).add(&i.scale_int(-2)));
        let c = rc.coords(&y).unwrap();
        assert_eq!(c, vec![Cyc::from_int(8, 3), Cyc::from_int(8, -2)]);
        assert!(rc.coords(&Mat::identity(2, 8)).is_none());
    }

    #[test]
    fn sparse_matches_dense() {
        let m = Mat::from_ints(&[&[1, 2, 3, 0], &[2, 4, 6, 1], &[0, 0, 1, 1]], 4);
        let rows: Vec<Vec<(usize, Cyc)>> =
            (0..3).map(|r| (0..4).map(|c| (c, m.get(r, c).clone())).collect()).collect();
        let ns = sparse_nullspace(4, 4, &rows, 10);
        assert_eq!(ns.len(), nullspace(&m).len());
        for v in ns {
            let x = Mat::from_fn(4, 1, 4, |i, _| v[i].clone());
            assert!(m.mul(&x).is_zero());
        }
    }

    #[test]
    fn inertia() {
        let h = Mat::from_ints(&[&[0, 1], &[1, 0]], 4);
        assert_eq!(hermitian_inertia(&h).unwrap(), (1, 1, 0));
        assert_eq!(hermitian_signature(&Mat::identity(3, 4)).unwrap(), 3);
        let i = Cyc::i(4);
        let k = Mat::from_fn(2, 2, 4, |r, c| match (r, c) {
            (0, 1) => i.clone(),
            (1, 0) => i.neg(),
            _ => Cyc::zero(4),
        });
        assert_eq!(hermitian_signature(&k).unwrap(), 0);
        assert!(hermitian_signature(&Mat::zeros(2, 2, 4)).is_err());
    }
}
