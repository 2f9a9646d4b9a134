//! Distinguished involutions and the distinguished basis of the square
//! part D^[2] = ⊕_{s ∈ T^[2]} D_s.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::classify::{centralizer_data, classify_involution, square_signs, ClassLabel};
use crate::error::{Error, Result};
use crate::exactalg::cyclo::Cyc;
use crate::exactalg::linalg::real_nullspace;
use crate::exactalg::matrix::{Mat, MatDoc};
use crate::exactalg::{BlockName, CenterKind, GradedAlgebra};
use crate::involution::{
    involution_from_form, involution_from_nice_map, involution_quaternionic, leaf, EClass, Involution, Kind,
};

/// Items whose involutions have positive norms Xφ(X) on every component.
const REAL_FAMILIES: [&str; 9] = ["1-a", "1-b", "1-c", "2-a", "2-b", "2-c", "3-a", "3-b", "3-c"];
const REAL_ITEMS: [&str; 9] = ["1-a-1", "1-b-1", "1-c-1", "2-a-3", "2-b-3", "2-c-4", "3-a-1", "3-b-1", "3-c-1"];

enum Setting {
    Real,
    Complex,
}

fn setting(inv: &Involution) -> Result<(Setting, ClassLabel)> {
    let alg = inv.algebra();
    if alg.center_kind()? == CenterKind::Split {
        return Err(Error::NotApplicableFamily("center ℝ×ℝ".into()));
    }
    let label = classify_involution(inv)?;
    if label.family == "2-f" {
        if inv.kind()? == Kind::First {
            return Err(Error::NotApplicableFamily("no special choice among first kind involutions on M_n(ℂ)".into()));
        }
        return Ok((Setting::Complex, label));
    }
    if REAL_FAMILIES.contains(&label.family.as_str()) {
        Ok((Setting::Real, label))
    } else {
        Err(Error::NotApplicableFamily(format!("family ({}) has no distinguished item", label.family)))
    }
}

/// Whether a symmetric matrix of real cyclotomic numbers is positive
/// definite, by exact elimination.
fn positive_definite(mut a: Vec<Vec<Cyc>>) -> Result<bool> {
    let n = a.len();
    for k in 0..n {
        if !a[k][k].is_real() || a[k][k].real_sign()? <= 0 {
            return Ok(false);
        }
        let inv = a[k][k].inv()?;
        for i in k + 1..n {
            let f = a[i][k].mul(&inv);
            for j in k..n {
                let v = a[i][j].sub(&f.mul(&a[k][j]));
                a[i][j] = v;
            }
        }
    }
    Ok(true)
}

/// Xφ(X) is a positive real scalar for every nonzero homogeneous X.
fn positive_norms(inv: &Involution) -> Result<bool> {
    let alg = inv.algebra();
    for t in 0..alg.group().size() {
        let b = alg.component(t);
        let fb: Vec<Mat> = b.iter().map(|x| inv.apply_matrix(x)).collect();
        let half = Cyc::from_rational(alg.conductor(), num_rational::Rational64::new(1, 2));
        let mut gram = vec![vec![Cyc::zero(alg.conductor()); b.len()]; b.len()];
        for k in 0..b.len() {
            for l in 0..b.len() {
                let sym = b[k].mul(&fb[l]).add(&b[l].mul(&fb[k])).scale(&half);
                match sym.scalar_value() {
                    Some(c) if c.is_real() => gram[k][l] = c,
                    _ => return Ok(false),
                }
            }
        }
        if !positive_definite(gram)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// φ-fixed elements of even-order components have positive o(t)-th powers.
fn positive_powers(inv: &Involution) -> Result<bool> {
    let alg = inv.algebra();
    let g = alg.group();
    for t in 0..g.size() {
        let o = g.order_idx(t);
        if !o.is_multiple_of(2) {
            continue;
        }
        let x = fixed_element(inv, t)?;
        let p = x.pow(o).scalar_value().ok_or_else(|| Error::InvalidDatum("X^o(t) is not scalar".into()))?;
        if !p.is_real() || p.real_sign()? <= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A nonzero φ-fixed element of D_t.
fn fixed_element(inv: &Involution, t: usize) -> Result<Mat> {
    let a = inv.action(t);
    let shifted = a.sub(&Mat::identity(a.rows(), a.conductor())).transpose();
    let ns = real_nullspace(&shifted)?;
    let c = ns.first().ok_or_else(|| Error::InvalidDatum("no φ-fixed element".into()))?;
    Ok(inv.algebra().combine(t, c))
}

/// Whether φ is distinguished; the exact property is checked against the
/// classification, and a disagreement is reported as an error.
pub fn is_distinguished(inv: &Involution) -> Result<bool> {
    let (s, label) = setting(inv)?;
    let (prop, by_label) = match s {
        Setting::Real => (positive_norms(inv)?, REAL_ITEMS.contains(&label.name().as_str())),
        Setting::Complex => (positive_powers(inv)?, label.item.as_deref() == Some("2-0")),
    };
    if prop != by_label {
        return Err(Error::NotDistinguished(format!(
            "positivity says {prop} but the class is ({})",
            label.name()
        )));
    }
    Ok(prop)
}

/// A distinguished involution of an algebra; `unique` is false when only
/// its class is unique (T not an elementary 2-group).
#[derive(Clone, Debug)]
pub struct Found {
    pub involution: Involution,
    pub unique: bool,
}

pub fn find_distinguished(alg: Arc<GradedAlgebra>) -> Result<Found> {
    let g = alg.group().clone();
    let unique = g.is_elementary_2();
    let inv = match alg.dim_component() {
        _ if alg.center_kind()? == CenterKind::Split => {
            return Err(Error::NotApplicableFamily("center ℝ×ℝ".into()));
        }
        1 => {
            let mu = alg.recovered_mu().ok_or_else(|| Error::InvalidDatum("squares are not real scalars".into()))?;
            if !mu.domain().is_whole() {
                return Err(Error::NotApplicableFamily("T has a ℤ₄ factor".into()));
            }
            involution_from_form(alg.clone(), &mu)?
        }
        2 if alg.identity_component_central() => {
            let leaves = alg
                .factors()
                .iter()
                .map(|f| match f.block {
                    BlockName::Pauli(_) => leaf(f.block, "A"),
                    BlockName::ComplexTrivial => leaf(f.block, "conj"),
                    b => Err(Error::NotApplicableFamily(format!("factor {b} is not a Pauli block"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Involution::from_leaves(alg.clone(), leaves, "phi_A")?
        }
        2 => {
            let nu = square_signs(&alg)?.ok_or_else(|| Error::NotApplicableFamily("T has a ℤ₄ factor".into()))?;
            involution_from_nice_map(alg.clone(), &nu)?
        }
        4 => {
            let (_, _, mu) = centralizer_data(&alg)?;
            if !mu.domain().is_whole() {
                return Err(Error::NotApplicableFamily("T has a ℤ₄ factor".into()));
            }
            involution_quaternionic(alg.clone(), &mu, EClass::Conjugation)?
        }
        d => return Err(Error::WrongComponentDimension(format!("components of dimension {d}"))),
    };
    if !is_distinguished(&inv)? {
        return Err(Error::NotDistinguished("constructed involution fails the positivity test".into()));
    }
    Ok(Found { involution: inv, unique })
}

/// Y = ζ^k X_t with φ(Y) = Y and Y^{o(t)} = 1, smallest k first.
fn unit_fixed(inv: &Involution, t: usize) -> Result<Vec<Mat>> {
    let alg = inv.algebra();
    let cond = alg.conductor();
    let o = alg.group().order_idx(t);
    let x = alg.rep(t);
    let one = Mat::identity(alg.matrix_size(), cond);
    let mut out = Vec::new();
    for k in 0..cond as i64 {
        let y = x.scale(&Cyc::zeta(cond, k));
        if inv.apply_matrix(&y) == y && y.pow(o) == one {
            out.push(y);
        }
    }
    if out.is_empty() {
        return Err(Error::NotDistinguished(format!(
            "no fixed element of degree {} has X^o = 1 over the working field",
            alg.group().elem(t)
        )));
    }
    Ok(out)
}

/// The basis {X_s : s ∈ T^[2]} with the sign ε read from squares.
#[derive(Clone, Debug)]
pub struct DistinguishedBasis {
    pub involution: Involution,
    /// (s, X_s) sorted by s.
    pub table: Vec<(usize, Mat)>,
    /// ε of each even-order s before the sign fix, from X_t² = εX_s.
    pub epsilon: Vec<(usize, i8)>,
}

impl DistinguishedBasis {
    pub fn get(&self, s: usize) -> Option<&Mat> {
        self.table.iter().find(|(k, _)| *k == s).map(|(_, m)| m)
    }
}

pub fn distinguished_basis(inv: &Involution) -> Result<DistinguishedBasis> {
    let alg = inv.algebra();
    if !alg.identity_component_central() || alg.dim_component() != 2 || inv.kind()? != Kind::Second {
        return Err(Error::NotApplicableFamily("the basis is defined for second kind involutions over ℂ".into()));
    }
    if !is_distinguished(inv)? {
        return Err(Error::NotDistinguished("φ is not distinguished".into()));
    }
    let g = alg.group();
    let sq = g.power_subgroup(2);
    let mut table = Vec::new();
    let mut epsilon = Vec::new();
    for &s in sq.indices() {
        let mut xs = unit_fixed(inv, s)?.swap_remove(0);
        if g.order_idx(s).is_multiple_of(2) {
            let t = (0..g.size()).find(|&t| g.mul_idx(t, t) == s).expect("s is a square");
            let xt = unit_fixed(inv, t)?.swap_remove(0);
            let sqr = xt.mul(&xt);
            let eps = if sqr == xs {
                1
            } else if sqr == xs.neg() {
                -1
            } else {
                return Err(Error::NotDistinguished("X_t² is not ±X_s".into()));
            };
            if eps == -1 {
                xs = xs.neg();
            }
            epsilon.push((s, eps));
        }
        table.push((s, xs));
    }
    Ok(DistinguishedBasis { involution: inv.clone(), table, epsilon })
}

/// Outcome of the exact product-law checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LawReport {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scalar c with X_u X_v = c X_v X_u.
fn commutation(x: &Mat, y: &Mat) -> Result<Cyc> {
    let xy = x.mul(y);
    let yx = y.mul(x);
    xy.mul(&yx.inverse()?).scalar_value().ok_or_else(|| Error::InvalidDatum("commutator is not scalar".into()))
}

/// X_{u²}X_{v²} = β(u,v)² X_{u²v²}, the sign fix, and X X_s X = X_{st²}
/// for fixed X of degree t with X^{o(t)} = 1.
pub fn verify_product_laws(b: &DistinguishedBasis) -> Result<LawReport> {
    let inv = &b.involution;
    let alg = inv.algebra();
    let g = alg.group();
    let mut rep = LawReport::default();
    let x = |s: usize| b.get(s).expect("square degree");
    for u in 0..g.size() {
        for v in 0..g.size() {
            let beta = commutation(alg.rep(u), alg.rep(v))?;
            let (u2, v2) = (g.mul_idx(u, u), g.mul_idx(v, v));
            let lhs = x(u2).mul(x(v2));
            let rhs = x(g.mul_idx(u2, v2)).scale(&beta.mul(&beta));
            rep.checks += 1;
            if lhs != rhs {
                rep.violations.push(format!("law 1 fails at u={}, v={}", g.elem(u), g.elem(v)));
            }
        }
    }
    for t in 0..g.size() {
        let xt = unit_fixed(inv, t)?.swap_remove(0);
        let t2 = g.mul_idx(t, t);
        rep.checks += 1;
        if xt.mul(&xt) != *x(t2) {
            rep.violations.push(format!("X_t² ≠ X_{{t²}} at t={}", g.elem(t)));
        }
        for (s, xs) in &b.table {
            rep.checks += 1;
            if xt.mul(xs).mul(&xt) != *x(g.mul_idx(*s, t2)) {
                rep.violations.push(format!("law 2 fails at t={}, s={}", g.elem(t), g.elem(*s)));
            }
        }
    }
    Ok(rep)
}

fn float_signed_signature(m: &DMatrix<Complex64>) -> Result<i64> {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    if (&h - m).norm() > 1e-9 * (1.0 + m.norm()) {
        return Err(Error::Numerical("form is not hermitian".into()));
    }
    let ev = nalgebra::SymmetricEigen::new(h).eigenvalues;
    let mut s = 0;
    for x in ev.iter() {
        if x.abs() < 1e-7 {
            return Err(Error::Numerical("hermitian form is singular".into()));
        }
        s += if *x > 0.0 { 1 } else { -1 };
    }
    Ok(s)
}

/// For each even-order s, ε from squares and ε from comparing the
/// signature of h_{X_s}(v, w) = h(v, X_s w) with that of h, in floats.
pub fn epsilon_by_signature(b: &DistinguishedBasis) -> Result<Vec<(usize, i8, i8)>> {
    let h = b.involution.form_matrix().to_complex();
    let sig_h = float_signed_signature(&h)?;
    if sig_h == 0 {
        return Err(Error::NotDistinguished("h has signature 0".into()));
    }
    let mut out = Vec::new();
    for &(s, eps) in &b.epsilon {
        // the stored X_s is already sign-fixed; undo it to test the raw choice
        let raw = if eps == 1 { b.get(s).unwrap().clone() } else { b.get(s).unwrap().neg() };
        let sig = float_signed_signature(&(&h * raw.to_complex()))?;
        let eps_b = if sig == sig_h {
            1
        } else if sig == -sig_h {
            -1
        } else {
            0
        };
        out.push((s, eps, eps_b));
    }
    Ok(out)
}

/// JSON dump of a basis.
#[derive(Clone, Debug, Serialize)]
pub struct BasisDoc {
    pub degrees: Vec<Vec<u32>>,
    pub matrices: Vec<MatDoc>,
    pub epsilon: Vec<(Vec<u32>, i8)>,
}

impl DistinguishedBasis {
    pub fn to_doc(&self) -> BasisDoc {
        let g = self.involution.algebra().group();
        BasisDoc {
            degrees: self.table.iter().map(|(s, _)| g.elem(*s).0.clone()).collect(),
            matrices: self.table.iter().map(|(_, m)| MatDoc::from(m)).collect(),
            epsilon: self.epsilon.iter().map(|(s, e)| (g.elem(*s).0.clone(), *e)).collect(),
        }
    }
}
