//! Graded involutions, realized as φ(X) = H⁻¹σ(X)H with σ the conjugate
//! transpose or the transpose, together with their exact action on every
//! homogeneous component.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::abgroup::Subgroup;
use crate::error::{Error, Result};
use crate::exactalg::cyclo::Cyc;
use crate::exactalg::linalg::{hermitian_inertia, rank, real_nullspace, sparse_nullspace};
use crate::exactalg::matrix::Mat;
use crate::exactalg::{
    building_block, tensor_product, tensor_product_complex, BlockName, CenterKind, GradedAlgebra, Structure,
};
use crate::forms::{NiceMap, QuadraticForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Transposition {
    Star,
    Transpose,
}

impl Transposition {
    fn apply(self, x: &Mat) -> Mat {
        match self {
            Transposition::Star => x.conj_transpose(),
            Transposition::Transpose => x.transpose(),
        }
    }
}

/// A named involution on a single block, given by its matrix H in
/// conjugate-transpose form, transpose form, or both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub block: BlockName,
    pub name: String,
    pub star: Option<Mat>,
    pub transpose: Option<Mat>,
}

/// Action of an involution on the identity component in the quaternionic
/// case: conjugation fixes only the scalars, the orthogonal class fixes a
/// three-dimensional subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EClass {
    Conjugation,
    Orthogonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvType {
    Orthogonal,
    Symplectic,
}

/// Kind, type (first kind only) and signature of an involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Profile {
    pub kind: Kind,
    #[serde(rename = "type")]
    pub inv_type: Option<InvType>,
    pub signature: u64,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::First => "first kind",
            Kind::Second => "second kind",
        };
        let t = match self.inv_type {
            Some(InvType::Orthogonal) => ", orthogonal",
            Some(InvType::Symplectic) => ", symplectic",
            None => "",
        };
        write!(f, "{k}{t}, signature {}", self.signature)
    }
}

pub fn leaf(block: BlockName, name: &str) -> Result<Leaf> {
    let c = block.conductor();
    let m = |rows: &[&[i64]]| Mat::from_ints(rows, c);
    let id = |n| Mat::identity(n, c);
    let jm = || m(&[&[0, 1], &[-1, 0]]);
    let both = |h: Mat| (Some(h.clone()), Some(h));
    // quaternionic blocks: X* = J Xᵀ J⁻¹, so the transpose form is J·H
    let quat = |h: Mat| (Some(h.clone()), Some(jm().mul(&h)));
    let qi = || Mat::diag(&[Cyc::i(c), Cyc::i(c).neg()]);
    let qk = || qi().mul(&jm());
    let (star, transpose) = match (block, name) {
        (BlockName::Real, "id") => both(id(1)),
        (BlockName::M2R, "1-a-1") | (BlockName::M2RCoarse, "2-a-3") => both(id(2)),
        (BlockName::M2R, "1-a-2") | (BlockName::M2RCoarse, "2-a-1") => both(m(&[&[1, 0], &[0, -1]])),
        (BlockName::M2R, "1-a-3") | (BlockName::M2RCoarse, "2-a-5") => both(jm()),
        (BlockName::Split, "id") => both(id(2)),
        (BlockName::Split, "swap") => both(m(&[&[0, 1], &[1, 0]])),
        (BlockName::Quaternion, "1-b-1") | (BlockName::QuatCoarse, "2-b-3") | (BlockName::QuatTrivial, "3-b-1") => {
            quat(id(2))
        }
        (BlockName::Quaternion, "1-b-3") | (BlockName::QuatCoarse, "2-b-2") | (BlockName::QuatTrivial, "3-b-4") => {
            quat(qk())
        }
        (BlockName::QuatCoarse, "2-b-5") => quat(qi()),
        (BlockName::Complex, "1-c-1") | (BlockName::ComplexTrivial, "conj") => (Some(id(1)), None),
        (BlockName::Complex, "1-c-3") | (BlockName::ComplexTrivial, "id") => (None, Some(id(1))),
        (BlockName::M2C, "1-d-1") | (BlockName::M2CCoarse, "2-e-1") => (None, Some(id(2))),
        (BlockName::M2C, "1-d-3") | (BlockName::M2CCoarse, "2-e-3") => (None, Some(m(&[&[1, 0], &[0, -1]]))),
        (BlockName::M2C, "1-d-4") | (BlockName::M2CCoarse, "2-e-4") => (None, Some(jm())),
        (BlockName::Pauli(l), "A") => (Some(crate::exactalg::blocks::pauli_forms(l).0), None),
        (BlockName::Pauli(l), "B") => (Some(crate::exactalg::blocks::pauli_forms(l).1), None),
        (BlockName::Pauli(2), "2-f-1-1") => (None, Some(id(2))),
        (BlockName::Pauli(2), "2-f-1-2") => (None, Some(jm())),
        _ => return Err(Error::InvalidLabel(format!("no involution {name} on block {block}"))),
    };
    Ok(Leaf { block, name: name.to_string(), star, transpose })
}

#[derive(Clone, Debug)]
pub struct Involution {
    alg: Arc<GradedAlgebra>,
    sigma: Transposition,
    h: Mat,
    h_inv: Mat,
    /// Per component, row k holds the coordinates of φ(B_k).
    action: Vec<Mat>,
    leaves: Option<Vec<Leaf>>,
    origin: String,
}

impl Involution {
    fn realize(
        alg: Arc<GradedAlgebra>,
        sigma: Transposition,
        h: Mat,
        leaves: Option<Vec<Leaf>>,
        origin: String,
    ) -> Result<Involution> {
        let cond = alg.conductor();
        let h = h.lift(cond);
        let h_inv = h.inverse().map_err(|_| Error::NotAnInvolution("singular form matrix".into()))?;
        let g = alg.group();
        let d = alg.dim_component();
        let mut action = Vec::with_capacity(g.size());
        for t in 0..g.size() {
            let mut a = Mat::zeros(d, d, cond);
            for (k, b) in alg.component(t).iter().enumerate() {
                let y = h_inv.mul(&sigma.apply(b)).mul(&h);
                let c = alg
                    .coords(t, &y)
                    .ok_or_else(|| Error::NotAnInvolution(format!("degree {} is not preserved", g.elem(t))))?;
                for (j, x) in c.into_iter().enumerate() {
                    a.set(k, j, x);
                }
            }
            if a.mul(&a) != Mat::identity(d, cond) {
                return Err(Error::NotAnInvolution(format!("φ² ≠ id on degree {}", g.elem(t))));
            }
            action.push(a);
        }
        Ok(Involution { alg, sigma, h, h_inv, action, leaves, origin })
    }

    /// Finds H with H φ(Y) = σ(Y) H for the prescribed pairs (Y, φ(Y)) on a
    /// generating set, trying σ = conjugate transpose first.
    fn from_prescribed(alg: Arc<GradedAlgebra>, pairs: &[(Mat, Mat)], origin: String) -> Result<Involution> {
        let sigmas: &[Transposition] = if alg.center_kind()? == CenterKind::Complex {
            &[Transposition::Star, Transposition::Transpose]
        } else {
            &[Transposition::Star]
        };
        let mut last = Error::NotAnInvolution("no antiautomorphism realizes the prescribed action".into());
        for &sigma in sigmas {
            for h in solve_forms(&alg, sigma, pairs) {
                match Involution::realize(alg.clone(), sigma, h, None, origin.clone()) {
                    Ok(inv) => {
                        if inv.matches(pairs) {
                            return Ok(inv);
                        }
                    }
                    Err(e) => last = e,
                }
            }
        }
        Err(last)
    }

    fn matches(&self, pairs: &[(Mat, Mat)]) -> bool {
        pairs.iter().all(|(y, fy)| self.apply_matrix(y) == *fy)
    }

    /// Tensor product of named block involutions on an algebra built from
    /// the same blocks in the same order.
    pub fn from_leaves(alg: Arc<GradedAlgebra>, leaves: Vec<Leaf>, origin: &str) -> Result<Involution> {
        let blocks: Vec<BlockName> = alg.factors().iter().map(|f| f.block).collect();
        let lb: Vec<BlockName> = leaves.iter().map(|l| l.block).collect();
        if blocks != lb {
            return Err(Error::IncompatibleTensor(format!("leaves {lb:?} do not match factors {blocks:?}")));
        }
        let sigma = if leaves.iter().all(|l| l.star.is_some()) {
            Transposition::Star
        } else if leaves.iter().all(|l| l.transpose.is_some()) {
            Transposition::Transpose
        } else {
            return Err(Error::IncompatibleTensor("leaves mix first and second kind forms".into()));
        };
        let cond = alg.conductor();
        let mut h = Mat::identity(1, cond);
        for l in &leaves {
            let m = match sigma {
                Transposition::Star => l.star.as_ref(),
                Transposition::Transpose => l.transpose.as_ref(),
            }
            .expect("checked above");
            h = h.kron(&m.lift(cond));
        }
        Involution::realize(alg, sigma, h, Some(leaves), origin.to_string())
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> Arc<GradedAlgebra> {
        self.alg.clone()
    }

    pub fn sigma(&self) -> Transposition {
        self.sigma
    }

    pub fn form_matrix(&self) -> &Mat {
        &self.h
    }

    pub fn leaves(&self) -> Option<&[Leaf]> {
        self.leaves.as_deref()
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    /// Coefficient matrix of φ on D_t.
    pub fn action(&self, t: usize) -> &Mat {
        &self.action[t]
    }

    pub fn apply_matrix(&self, x: &Mat) -> Mat {
        self.h_inv.mul(&self.sigma.apply(x)).mul(&self.h)
    }

    /// φ applied to a combination of the basis of D_t.
    pub fn apply_coords(&self, t: usize, c: &[Cyc]) -> Vec<Cyc> {
        let a = &self.action[t];
        let d = c.len();
        (0..d)
            .map(|j| {
                let mut s = Cyc::zero(self.alg.conductor());
                for (k, ck) in c.iter().enumerate() {
                    if !ck.is_zero() {
                        s = s.add(&ck.mul(a.get(k, j)));
                    }
                }
                s
            })
            .collect()
    }

    /// Scalar λ with φ(x) = λx, when x is an eigenvector.
    pub fn eigenvalue_of(&self, t: usize, x: &Mat) -> Option<i8> {
        let y = self.apply_matrix(x);
        if y == *x {
            Some(1)
        } else if y == x.neg() {
            Some(-1)
        } else {
            let _ = t;
            None
        }
    }

    /// Exact re-check of the involution axioms on generator × basis pairs,
    /// which implies them on all pairs.
    pub fn check_axioms(&self) -> Result<()> {
        let alg = &self.alg;
        let g = alg.group();
        let gens = alg.algebra_generators();
        for t in 0..g.size() {
            let d = alg.dim_component();
            if self.action[t].mul(&self.action[t]) != Mat::identity(d, alg.conductor()) {
                return Err(Error::NotAnInvolution(format!("φ² ≠ id on degree {}", g.elem(t))));
            }
            for (k, b) in alg.component(t).iter().enumerate() {
                let row: Vec<Cyc> = (0..d).map(|j| self.action[t].get(k, j).clone()).collect();
                let fb = alg.combine(t, &row);
                for x in &gens {
                    let lhs = self.apply_matrix(&x.mul(b));
                    let rhs = fb.mul(&self.apply_matrix(x));
                    if lhs != rhs {
                        return Err(Error::NotAnInvolution(format!(
                            "φ(XY) ≠ φ(Y)φ(X) at degree {}",
                            g.elem(t)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> Result<Kind> {
        for (t, z) in self.alg.center_basis()? {
            if self.apply_matrix(&z) != z {
                let _ = t;
                return Ok(Kind::Second);
            }
        }
        Ok(Kind::First)
    }

    /// (dim of symmetric part, dim of skew part) over ℝ.
    pub fn sym_skew_dims(&self) -> (usize, usize) {
        let d = self.alg.dim_component();
        let cond = self.alg.conductor();
        let id = Mat::identity(d, cond);
        let mut sym = 0;
        let mut skew = 0;
        for a in &self.action {
            sym += d - rank(&a.sub(&id));
            skew += d - rank(&a.add(&id));
        }
        (sym, skew)
    }

    pub fn inv_type(&self) -> Result<Option<InvType>> {
        if self.kind()? == Kind::Second {
            return Ok(None);
        }
        let (s, k) = self.sym_skew_dims();
        Ok(Some(if s > k { InvType::Orthogonal } else { InvType::Symplectic }))
    }

    /// |signature| of the hermitian form attached to H, exactly: a product
    /// over the leaves when the involution is a tensor of named pieces,
    /// otherwise Sylvester on H itself. None for transpose-form involutions.
    pub fn structural_signature(&self) -> Result<Option<u64>> {
        if self.sigma != Transposition::Star || self.alg.center_kind()? == CenterKind::Split {
            return Ok(None);
        }
        if let Some(leaves) = &self.leaves {
            let mut s = 1u64;
            for l in leaves {
                let h = l.star.as_ref().expect("star form present");
                s *= hermitian_signature_of(h)?;
            }
            return Ok(Some(s));
        }
        Ok(Some(hermitian_signature_of(&self.h)?))
    }

    /// The same quantity from a floating point solve of H φ(X) = X* H and an
    /// eigenvalue count.
    pub fn numeric_signature(&self) -> Result<Option<u64>> {
        if self.sigma != Transposition::Star || self.alg.center_kind()? == CenterKind::Split {
            return Ok(None);
        }
        let alg = &self.alg;
        let n = alg.matrix_size();
        let n2 = n * n;
        let mut eqs: Vec<(DMatrix<Complex64>, DMatrix<Complex64>)> = Vec::new();
        let g = alg.group();
        let mut degs = vec![0usize];
        degs.extend(g.generators().iter().map(|x| g.index(x)));
        for t in degs {
            let d = alg.dim_component();
            for (k, b) in alg.component(t).iter().enumerate() {
                let row: Vec<Cyc> = (0..d).map(|j| self.action[t].get(k, j).clone()).collect();
                let fb = alg.combine(t, &row);
                eqs.push((fb.to_complex(), b.conj_transpose().to_complex()));
            }
        }
        // normal equations M*M for the stacked system H·F − Y*·H = 0
        let mut normal = DMatrix::<Complex64>::zeros(n2, n2);
        for (f, ys) in &eqs {
            let mut m = DMatrix::<Complex64>::zeros(n2, n2);
            for i in 0..n {
                for j in 0..n {
                    let r = i * n + j;
                    for k in 0..n {
                        m[(r, i * n + k)] += f[(k, j)];
                        m[(r, k * n + j)] -= ys[(i, k)];
                    }
                }
            }
            normal += m.adjoint() * &m;
        }
        let eig = nalgebra::SymmetricEigen::new(normal);
        let (imin, _) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .ok_or_else(|| Error::Numerical("empty system".into()))?;
        let v = eig.eigenvectors.column(imin);
        let hm = DMatrix::from_fn(n, n, |i, j| v[i * n + j]);
        let mut herm = (&hm + hm.adjoint()) * Complex64::new(0.5, 0.0);
        if herm.norm() < 1e-6 * hm.norm() {
            herm = (&hm - hm.adjoint()) * Complex64::new(0.0, 0.5);
        }
        let ev = nalgebra::SymmetricEigen::new(herm).eigenvalues;
        let scale = ev.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let (mut pos, mut neg) = (0i64, 0i64);
        for x in ev.iter() {
            if x.abs() < 1e-7 * scale {
                return Err(Error::Numerical("hermitian form has an eigenvalue near zero".into()));
            }
            if *x > 0.0 {
                pos += 1;
            } else {
                neg += 1;
            }
        }
        Ok(Some((pos - neg).unsigned_abs()))
    }

    pub fn profile(&self) -> Result<Profile> {
        let kind = self.kind()?;
        let inv_type = self.inv_type()?;
        let exact = self.structural_signature()?;
        let numeric = self.numeric_signature()?;
        if exact != numeric {
            return Err(Error::SignatureMismatch {
                structural: exact.map_or(-1, |x| x as i64),
                numeric: numeric.map_or(-1, |x| x as i64),
            });
        }
        let s = exact.unwrap_or(0);
        let signature = match (self.alg.structure()?, kind, inv_type) {
            (Structure::MatReal(_), _, Some(InvType::Orthogonal)) => s,
            (Structure::MatQuat(_), _, Some(InvType::Symplectic)) => s / 2,
            (Structure::MatComplex(_), Kind::Second, _) => s,
            _ => 0,
        };
        Ok(Profile { kind, inv_type, signature })
    }

    /// Int(X_u) ∘ φ for the representative X_u of degree u.
    pub fn twist(&self, u: usize) -> Result<Involution> {
        let alg = &self.alg;
        let x = alg.rep(u);
        let xi = x.inverse()?;
        let h = self.h.mul(&xi);
        let leaves = match &self.leaves {
            Some(ls) => {
                let degs = alg.factor_degrees(u);
                let mut out = Vec::with_capacity(ls.len());
                for (l, &dg) in ls.iter().zip(&degs) {
                    let xl = l.block.basis()[dg][0].clone();
                    let xli = xl.inverse()?;
                    out.push(Leaf {
                        block: l.block,
                        name: format!("{}*", l.name),
                        star: l.star.as_ref().map(|m| m.mul(&xli)),
                        transpose: l.transpose.as_ref().map(|m| m.mul(&xli)),
                    });
                }
                Some(out)
            }
            None => None,
        };
        let origin = format!("twist of {} by {}", self.origin, alg.group().elem(u));
        Involution::realize(self.alg.clone(), self.sigma, h, leaves, origin)
            .map_err(|e| Error::NotAnInvolutionAfterTwist(e.to_string()))
    }
}

fn hermitian_signature_of(h: &Mat) -> Result<u64> {
    let hs = h.add(&h.conj_transpose());
    let herm = if hs.is_zero() { h.scale(&Cyc::i(h.conductor())) } else { hs };
    let (p, q, z) = hermitian_inertia(&herm)?;
    if z != 0 {
        return Err(Error::Numerical("hermitian part of the form is singular".into()));
    }
    Ok(p.abs_diff(q) as u64)
}

/// Candidate H matrices solving H φ(Y) = σ(Y) H.
fn solve_forms(alg: &GradedAlgebra, sigma: Transposition, pairs: &[(Mat, Mat)]) -> Vec<Mat> {
    let n = alg.matrix_size();
    let cond = alg.conductor();
    let mut rows: Vec<Vec<(usize, Cyc)>> = Vec::new();
    for (y, fy) in pairs {
        let sy = sigma.apply(y);
        for i in 0..n {
            for j in 0..n {
                let mut row = Vec::new();
                for k in 0..n {
                    let a = fy.get(k, j);
                    if !a.is_zero() {
                        row.push((i * n + k, a.clone()));
                    }
                    let b = sy.get(i, k);
                    if !b.is_zero() {
                        row.push((k * n + j, b.neg()));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let ns = sparse_nullspace(n * n, cond, &rows, 6);
    let to_mat = |v: &[Cyc]| Mat::from_fn(n, n, cond, |i, j| v[i * n + j].clone());
    let mut out: Vec<Mat> = ns.iter().map(|v| to_mat(v)).collect();
    let i = Cyc::i(cond);
    for a in 0..ns.len() {
        for b in a + 1..ns.len() {
            out.push(out[a].add(&out[b]));
            out.push(out[a].add(&out[b].scale(&i)));
        }
    }
    out.retain(|m| m.inverse().is_ok());
    out
}

/// D_e-commuting element of D_t, when the identity component is not
/// central and components are free of rank one over it.
pub fn centralizer_rep(alg: &GradedAlgebra, t: usize) -> Result<Option<Mat>> {
    let de = alg.component(0);
    let comp = alg.component(t);
    let n2 = alg.matrix_size() * alg.matrix_size();
    let mut sys = Mat::zeros(de.len() * n2, comp.len(), alg.conductor());
    for (k, b) in comp.iter().enumerate() {
        for (gi, x) in de.iter().enumerate() {
            let c = b.mul(x).sub(&x.mul(b));
            for (p, v) in c.entries().iter().enumerate() {
                if !v.is_zero() {
                    sys.set(gi * n2 + p, k, v.clone());
                }
            }
        }
    }
    let ns = real_nullspace(&sys)?;
    Ok(ns.first().map(|v| alg.combine(t, v)))
}

/// The complex structure J of a two-dimensional non-central identity
/// component and the subgroup K of degrees whose components commute with it.
pub fn complex_structure(alg: &GradedAlgebra) -> Result<(Mat, Subgroup)> {
    if alg.dim_component() != 2 || alg.identity_component_central() {
        return Err(Error::WrongComponentDimension("identity component must be a non-central ℂ".into()));
    }
    let j = alg.component(0)[1].clone();
    let g = alg.group();
    let els: Vec<usize> = (0..g.size()).filter(|&t| alg.rep(t).mul(&j) == j.mul(alg.rep(t))).collect();
    Ok((j, Subgroup::from_set(g, els)?))
}

fn check_polarization(alg: &GradedAlgebra, reps: &dyn Fn(usize) -> Mat, eta: &QuadraticForm) -> Result<()> {
    let dom = eta.domain();
    for &u in dom.indices() {
        for &v in dom.indices() {
            let (x, y) = (reps(u), reps(v));
            let xy = x.mul(&y);
            let yx = y.mul(&x);
            let s = if xy == yx {
                1
            } else if xy == yx.neg() {
                -1
            } else {
                return Err(Error::PolarizationMismatch(format!(
                    "commutator of degrees {} and {} is not ±1",
                    alg.group().elem(u),
                    alg.group().elem(v)
                )));
            };
            if eta.pol_idx(u, v) != s {
                return Err(Error::PolarizationMismatch(format!(
                    "β_η ≠ β at ({}, {})",
                    alg.group().elem(u),
                    alg.group().elem(v)
                )));
            }
        }
    }
    Ok(())
}

/// Involution acting on each prescribed component as the scalar η(t).
///
/// One-dimensional components take η on T; two-dimensional components over
/// a central ℂ take η on T (first kind); two-dimensional components with a
/// non-central identity component take η on K with φ(J) = J.
pub fn involution_from_form(alg: Arc<GradedAlgebra>, eta: &QuadraticForm) -> Result<Involution> {
    let g = alg.group().clone();
    if eta.group() != &g {
        return Err(Error::PolarizationMismatch("form lives on another group".into()));
    }
    let cond = alg.conductor();
    let mut pairs = Vec::new();
    match alg.dim_component() {
        1 => {
            if !eta.domain().is_whole() {
                return Err(Error::PolarizationMismatch("η must be defined on all of T".into()));
            }
            check_polarization(&alg, &|t| alg.rep(t).clone(), eta)?;
        }
        2 if alg.identity_component_central() => {
            if !eta.domain().is_whole() {
                return Err(Error::PolarizationMismatch("η must be defined on all of T".into()));
            }
            check_polarization(&alg, &|t| alg.rep(t).clone(), eta)?;
            let i = Mat::scalar(alg.matrix_size(), &Cyc::i(cond));
            pairs.push((i.clone(), i));
        }
        2 => {
            let (j, k) = complex_structure(&alg)?;
            if eta.domain().indices() != k.indices() {
                return Err(Error::PolarizationMismatch("η must be defined on K".into()));
            }
            check_polarization(&alg, &|t| alg.rep(t).clone(), eta)?;
            pairs.push((j.clone(), j));
        }
        d => return Err(Error::WrongComponentDimension(format!("components of dimension {d} need an identity-component class"))),
    }
    for x in eta.domain().generators() {
        let t = g.index(x);
        let y = alg.rep(t).clone();
        let fy = if eta.value_idx(t) == 1 { y.clone() } else { y.neg() };
        pairs.push((y, fy));
    }
    Involution::from_prescribed(alg, &pairs, "form".into())
}

/// Involution with φ(J) = −J acting as ω(t) on D_t for t outside K.
pub fn involution_from_nice_map(alg: Arc<GradedAlgebra>, omega: &NiceMap) -> Result<Involution> {
    let (j, k) = complex_structure(&alg)?;
    let g = alg.group().clone();
    if omega.group() != &g || !omega.ambient().is_whole() || omega.k().indices() != k.indices() {
        return Err(Error::NotANiceMap("ω must live on T ∖ K for the algebra's K".into()));
    }
    let outside = k.complement();
    let g0 = outside[0];
    let mut degs = vec![g0];
    for x in g.generators() {
        let t = g.index(&x);
        degs.push(if k.contains_idx(t) { g.mul_idx(t, g0) } else { t });
    }
    let mut pairs = vec![(j.clone(), j.neg())];
    for t in degs {
        let y = alg.rep(t).clone();
        let fy = if omega.value_idx(t) == 1 { y.clone() } else { y.neg() };
        pairs.push((y, fy));
    }
    Involution::from_prescribed(alg, &pairs, "nice map".into()).map_err(|e| match e {
        Error::NotAnInvolution(_) => {
            Error::NotAnInvolution("no involution realizes ω: the semilinear scalar is not ±1".into())
        }
        e => e,
    })
}

/// Involution on an algebra with quaternionic identity component: η on the
/// centralizer components and the given class on D_e.
pub fn involution_quaternionic(alg: Arc<GradedAlgebra>, eta: &QuadraticForm, e_class: EClass) -> Result<Involution> {
    if alg.dim_component() != 4 {
        return Err(Error::WrongComponentDimension("quaternionic identity component expected".into()));
    }
    let g = alg.group().clone();
    if eta.group() != &g || !eta.domain().is_whole() {
        return Err(Error::PolarizationMismatch("η must be defined on all of T".into()));
    }
    let mut reps = Vec::with_capacity(g.size());
    for t in 0..g.size() {
        reps.push(centralizer_rep(&alg, t)?.ok_or_else(|| Error::InvalidDatum("empty centralizer component".into()))?);
    }
    check_polarization(&alg, &|t| reps[t].clone(), eta)?;
    let de = alg.component(0);
    let mut pairs = Vec::new();
    for (k, b) in de.iter().enumerate().skip(1) {
        let fixed = e_class == EClass::Orthogonal && k < 3;
        pairs.push((b.clone(), if fixed { b.clone() } else { b.neg() }));
    }
    for x in g.generators() {
        let t = g.index(&x);
        let y = reps[t].clone();
        let fy = if eta.value_idx(t) == 1 { y.clone() } else { y.neg() };
        pairs.push((y, fy));
    }
    Involution::from_prescribed(alg, &pairs, "quaternionic form".into())
}

/// φ_A and φ_B on the Pauli grading of M_l(ℂ); for l = 1 both are complex
/// conjugation on ℂ.
pub fn pauli_involutions(l: u32) -> Result<(Involution, Involution)> {
    if l == 0 {
        return Err(Error::InvalidGroup("l must be positive".into()));
    }
    if l == 1 {
        let alg = Arc::new(building_block(BlockName::ComplexTrivial)?);
        let c = Involution::from_leaves(alg, vec![leaf(BlockName::ComplexTrivial, "conj")?], "conj")?;
        return Ok((c.clone(), c));
    }
    let b = BlockName::Pauli(l);
    let alg = Arc::new(building_block(b)?);
    let a = Involution::from_leaves(alg.clone(), vec![leaf(b, "A")?], &format!("phi_A({l})"))?;
    let bb = Involution::from_leaves(alg, vec![leaf(b, "B")?], &format!("phi_B({l})"))?;
    Ok((a, bb))
}

/// Factorwise tensor product, over ℝ or over ℂ.
pub fn tensor_involution(p1: &Involution, p2: &Involution, complex: bool) -> Result<Involution> {
    let alg = if complex {
        if p1.kind()? != p2.kind()? {
            return Err(Error::IncompatibleTensor("complex tensor needs involutions of the same kind".into()));
        }
        tensor_product_complex(&p1.alg, &p2.alg)?
    } else {
        tensor_product(&p1.alg, &p2.alg)?
    };
    let alg = Arc::new(alg);
    let origin = format!("{} ⊗ {}", p1.origin, p2.origin);
    match (&p1.leaves, &p2.leaves) {
        (Some(a), Some(b)) => {
            let mut ls = a.clone();
            ls.extend(b.iter().cloned());
            Involution::from_leaves(alg, ls, &origin)
        }
        _ if p1.sigma == p2.sigma => {
            let cond = alg.conductor();
            let h = p1.h.lift(cond).kron(&p2.h.lift(cond));
            Involution::realize(alg, p1.sigma, h, None, origin)
        }
        _ => Err(Error::IncompatibleTensor("factors use different transposition forms".into())),
    }
}

/// Tensor product of named block involutions, built from the block names.
pub fn tensor_of_leaves(leaves: Vec<Leaf>, complex: bool) -> Result<Involution> {
    let parts: Vec<GradedAlgebra> = leaves.iter().map(|l| building_block(l.block)).collect::<Result<_>>()?;
    let alg = crate::exactalg::tensor_all(&parts, complex)?;
    let name = leaves.iter().map(|l| format!("{}[{}]", l.name, l.block)).collect::<Vec<_>>().join(" ⊗ ");
    Involution::from_leaves(Arc::new(alg), leaves, &name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(b: BlockName, name: &str) -> Involution {
        tensor_of_leaves(vec![leaf(b, name).unwrap()], false).unwrap()
    }

    #[test]
    fn example_profiles() {
        let p = single(BlockName::M2R, "1-a-1").profile().unwrap();
        assert_eq!(p, Profile { kind: Kind::First, inv_type: Some(InvType::Orthogonal), signature: 2 });
        let p = single(BlockName::M2R, "1-a-3").profile().unwrap();
        assert_eq!(p.inv_type, Some(InvType::Symplectic));
        let p = single(BlockName::Quaternion, "1-b-1").profile().unwrap();
        assert_eq!(p, Profile { kind: Kind::First, inv_type: Some(InvType::Symplectic), signature: 1 });
        let p = single(BlockName::Complex, "1-c-1").profile().unwrap();
        assert_eq!(p.kind, Kind::Second);
        assert_eq!(single(BlockName::Complex, "1-c-3").profile().unwrap().kind, Kind::First);
    }

    #[test]
    fn every_leaf_is_graded() {
        let cases: &[(BlockName, &[&str])] = &[
            (BlockName::M2R, &["1-a-1", "1-a-2", "1-a-3"]),
            (BlockName::M2RCoarse, &["2-a-1", "2-a-3", "2-a-5"]),
            (BlockName::Quaternion, &["1-b-1", "1-b-3"]),
            (BlockName::QuatCoarse, &["2-b-2", "2-b-3", "2-b-5"]),
            (BlockName::QuatTrivial, &["3-b-1", "3-b-4"]),
            (BlockName::Complex, &["1-c-1", "1-c-3"]),
            (BlockName::M2C, &["1-d-1", "1-d-3", "1-d-4"]),
            (BlockName::M2CCoarse, &["2-e-1", "2-e-3", "2-e-4"]),
            (BlockName::Pauli(2), &["A", "B", "2-f-1-1", "2-f-1-2"]),
            (BlockName::Split, &["id", "swap"]),
        ];
        for (b, names) in cases {
            for n in *names {
                let inv = single(*b, n);
                inv.check_axioms().unwrap();
                inv.profile().unwrap();
            }
        }
    }

    #[test]
    fn pauli_signatures() {
        for l in 2..=5u32 {
            let (a, b) = pauli_involutions(l).unwrap();
            let (sa, sb) = if l % 2 == 0 { (2, 0) } else { (1, 1) };
            assert_eq!(a.profile().unwrap().signature, sa, "l={l}");
            assert_eq!(b.profile().unwrap().signature, sb, "l={l}");
        }
        let (_, b) = pauli_involutions(2).unwrap();
        let xa = b.algebra().rep(2).clone();
        assert_eq!(b.apply_matrix(&xa), xa.neg());
    }

    #[test]
    fn form_gives_transpose() {
        let alg = Arc::new(building_block(BlockName::M2R).unwrap());
        let mu = alg.recovered_mu().unwrap();
        let inv = involution_from_form(alg.clone(), &mu).unwrap();
        let x = Mat::from_ints(&[&[1, 2], &[3, 4]], 4);
        let _ = x;
        for t in 0..4 {
            assert_eq!(inv.apply_matrix(alg.rep(t)), alg.rep(t).transpose());
        }
        // η = (+,+,−,+) on (e, b, a, ab) is A = diag(1,−1)
        let g = alg.group().clone();
        let eta = QuadraticForm::new(&g.whole(), vec![1, 1, -1, 1]).unwrap();
        let inv = involution_from_form(alg.clone(), &eta).unwrap();
        assert_eq!(inv.profile().unwrap().signature, 0);
        let bad = QuadraticForm::new(&g.whole(), vec![1, 1, 1, 1]).unwrap();
        assert!(matches!(involution_from_form(alg, &bad), Err(Error::PolarizationMismatch(_))));
    }

    #[test]
    fn tensor_signatures() {
        let t = single(BlockName::M2R, "1-a-1");
        let tt = tensor_involution(&t, &t, false).unwrap();
        assert_eq!(tt.profile().unwrap().signature, 4);
        let h = single(BlockName::Quaternion, "1-b-1");
        let th = tensor_involution(&t, &h, false).unwrap();
        let p = th.profile().unwrap();
        assert_eq!((p.inv_type, p.signature), (Some(InvType::Symplectic), 2));
        let (a2, _) = pauli_involutions(2).unwrap();
        let (a3, _) = pauli_involutions(3).unwrap();
        assert_eq!(tensor_involution(&a2, &a3, true).unwrap().profile().unwrap().signature, 2);
    }

    #[test]
    fn twist_identity_and_pauli() {
        let (a, _) = pauli_involutions(2).unwrap();
        let same = a.twist(0).unwrap();
        assert_eq!(same.action, a.action);
        let tw = a.twist(2).unwrap();
        assert_eq!(tw.profile().unwrap().signature, 0);
    }
}
