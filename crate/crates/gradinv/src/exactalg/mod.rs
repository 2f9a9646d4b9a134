//! Explicit graded matrix algebras over cyclotomic numbers.
//!
//! Every algebra lives inside complex matrices; real structure is carried
//! by the homogeneous bases, whose real span is the algebra.

pub mod blocks;
pub mod construct;
pub mod cyclo;
pub mod linalg;
pub mod matrix;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::abgroup::{Group, GroupElement};
use crate::error::{Error, Result};
use crate::forms::{Bicharacter, QuadraticForm};
pub use blocks::{BlockName, CenterKind};
pub use construct::construct_from_data;
use cyclo::Cyc;
use linalg::{hermitian_inertia, real_nullspace, RealCoords};
use matrix::{Mat, MatDoc};
use num_rational::Rational64;

/// A tensor factor together with where its generators sit in the internal
/// product group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub block: BlockName,
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    group: Group,
    d: usize,
    cond: u32,
    size: usize,
    basis: Vec<Vec<Mat>>,
    coords: Vec<RealCoords>,
    factors: Vec<Factor>,
    complex_tensor: bool,
    internal: Group,
    to_internal: Vec<usize>,
    center_cache: OnceLock<Vec<(usize, Mat)>>,
    structure_cache: OnceLock<Structure>,
}

/// Outcome of the exact grading checks.
#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub ok: bool,
    pub violations: Vec<String>,
    pub center: Option<CenterKind>,
    /// β on generator pairs as rotation numbers, when components are
    /// one-dimensional over the identity component.
    pub beta: Option<Vec<Vec<String>>>,
    /// Signs of squares on T_[2] keyed by degree.
    pub mu: Option<Vec<(String, i8)>>,
}

/// Isomorphism type of the underlying algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Structure {
    MatReal(usize),
    MatQuat(usize),
    MatComplex(usize),
    MatRealPair(usize),
    MatQuatPair(usize),
    MatRealQuat(usize),
}

impl std::fmt::Display for Structure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Structure::MatReal(n) => write!(f, "M_{n}(R)"),
            Structure::MatQuat(n) => write!(f, "M_{}(H)", n / 2),
            Structure::MatComplex(n) => write!(f, "M_{n}(C)"),
            Structure::MatRealPair(n) => write!(f, "M_{n}(R) x M_{n}(R)"),
            Structure::MatQuatPair(n) => write!(f, "M_{}(H) x M_{}(H)", n / 2, n / 2),
            Structure::MatRealQuat(n) => write!(f, "M_{n}(R) x M_{}(H)", n / 2),
        }
    }
}

impl Structure {
    /// The parameter n of the family (ℍ-matrices count real size n).
    pub fn n(self) -> usize {
        match self {
            Structure::MatReal(n)
            | Structure::MatQuat(n)
            | Structure::MatComplex(n)
            | Structure::MatRealPair(n)
            | Structure::MatQuatPair(n)
            | Structure::MatRealQuat(n) => n,
        }
    }
}

/// JSON dump of an algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub orders: Vec<u32>,
    pub dim_component: usize,
    pub matrix_size: usize,
    pub components: Vec<ComponentDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub degree: Vec<u32>,
    pub basis: Vec<MatDoc>,
}

pub fn building_block(name: BlockName) -> Result<GradedAlgebra> {
    let group = Group::new(&name.orders())?;
    let basis = name.basis();
    let n = group.size();
    GradedAlgebra::assemble(
        group.clone(),
        name.dim_component(),
        basis,
        vec![Factor { block: name, offset: 0 }],
        false,
        group,
        (0..n).collect(),
    )
}

/// Real tensor product with the product grading.
pub fn tensor_product(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    if a.complex_tensor || b.complex_tensor {
        return Err(Error::InvalidGroup("complex tensor products only combine with complex tensors".into()));
    }
    let cond = num_integer::lcm(a.cond, b.cond);
    let group = a.group.product(&b.group);
    let internal = a.internal.product(&b.internal);
    let nb = b.group.size();
    let nbi = b.internal.size();
    let mut basis = Vec::with_capacity(group.size());
    let mut to_internal = Vec::with_capacity(group.size());
    for s in 0..a.group.size() {
        for t in 0..nb {
            let mut comp = Vec::with_capacity(a.d * b.d);
            for x in &a.basis[s] {
                let x = x.lift(cond);
                for y in &b.basis[t] {
                    comp.push(x.kron(&y.lift(cond)));
                }
            }
            basis.push(comp);
            to_internal.push(a.to_internal[s] * nbi + b.to_internal[t]);
        }
    }
    let mut factors = a.factors.clone();
    let shift = a.internal.rank();
    factors.extend(b.factors.iter().map(|f| Factor { block: f.block, offset: f.offset + shift }));
    GradedAlgebra::assemble(group, a.d * b.d, basis, factors, false, internal, to_internal)
}

/// Tensor product over ℂ of two algebras whose identity components are ℂI.
pub fn tensor_product_complex(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    for x in [a, b] {
        if !x.identity_is_complex_center() {
            return Err(Error::InvalidGroup("complex tensor needs identity component ℂI".into()));
        }
    }
    let cond = num_integer::lcm(a.cond, b.cond);
    let i = Cyc::i(cond);
    let group = a.group.product(&b.group);
    let internal = a.internal.product(&b.internal);
    let nbi = b.internal.size();
    let mut basis = Vec::with_capacity(group.size());
    let mut to_internal = Vec::with_capacity(group.size());
    for s in 0..a.group.size() {
        for t in 0..b.group.size() {
            let m = a.basis[s][0].lift(cond).kron(&b.basis[t][0].lift(cond));
            let mi = m.scale(&i);
            basis.push(vec![m, mi]);
            to_internal.push(a.to_internal[s] * nbi + b.to_internal[t]);
        }
    }
    let mut factors = a.factors.clone();
    let shift = a.internal.rank();
    factors.extend(b.factors.iter().map(|f| Factor { block: f.block, offset: f.offset + shift }));
    GradedAlgebra::assemble(group, 2, basis, factors, true, internal, to_internal)
}

/// Tensor of a list of algebras, real or complex.
pub fn tensor_all(parts: &[GradedAlgebra], complex: bool) -> Result<GradedAlgebra> {
    let mut it = parts.iter();
    let mut acc = it.next().ok_or_else(|| Error::InvalidGroup("empty tensor product".into()))?.clone();
    for p in it {
        acc = if complex { tensor_product_complex(&acc, p)? } else { tensor_product(&acc, p)? };
    }
    Ok(acc)
}

impl GradedAlgebra {
    fn assemble(
        group: Group,
        d: usize,
        basis: Vec<Vec<Mat>>,
        factors: Vec<Factor>,
        complex_tensor: bool,
        internal: Group,
        to_internal: Vec<usize>,
    ) -> Result<GradedAlgebra> {
        let cond = basis[0][0].conductor();
        let size = basis[0][0].rows();
        let mut coords = Vec::with_capacity(basis.len());
        for (t, comp) in basis.iter().enumerate() {
            if comp.len() != d {
                return Err(Error::GradingViolation(format!("component {} has {} elements", group.elem(t), comp.len())));
            }
            coords.push(RealCoords::new(comp)?);
        }
        Ok(GradedAlgebra {
            group,
            d,
            cond,
            size,
            basis,
            coords,
            factors,
            complex_tensor,
            internal,
            to_internal,
            center_cache: OnceLock::new(),
            structure_cache: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim_component(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.d * self.group.size()
    }

    pub fn matrix_size(&self) -> usize {
        self.size
    }

    pub fn conductor(&self) -> u32 {
        self.cond
    }

    pub fn component(&self, t: usize) -> &[Mat] {
        &self.basis[t]
    }

    pub fn component_of(&self, t: &GroupElement) -> Result<&[Mat]> {
        self.group.check(t)?;
        Ok(&self.basis[self.group.index(t)])
    }

    /// Real coordinates of x in D_t.
    pub fn coords(&self, t: usize, x: &Mat) -> Option<Vec<Cyc>> {
        self.coords[t].coords(x)
    }

    pub fn combine(&self, t: usize, c: &[Cyc]) -> Mat {
        self.coords[t].combine(c)
    }

    pub fn unity(&self) -> Mat {
        Mat::identity(self.size, self.cond)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_complex_tensor(&self) -> bool {
        self.complex_tensor
    }

    pub fn internal_group(&self) -> &Group {
        &self.internal
    }

    pub fn internal_index(&self, t: usize) -> usize {
        self.to_internal[t]
    }

    /// Degree of t in each factor's own group.
    pub fn factor_degrees(&self, t: usize) -> Vec<usize> {
        let e = self.internal.elem(self.to_internal[t]);
        self.factors
            .iter()
            .map(|f| {
                let ord = f.block.orders();
                let g = Group::new(&ord).expect("block group");
                let ex: Vec<i64> = e.0[f.offset..f.offset + ord.len()].iter().map(|&x| x as i64).collect();
                g.index(&g.element(&ex).expect("in range"))
            })
            .collect()
    }

    /// Same algebra with degrees renamed; `to_current[t]` is the current
    /// degree that becomes t.
    pub fn relabel(&self, target: &Group, to_current: &[usize]) -> Result<GradedAlgebra> {
        if to_current.len() != target.size() {
            return Err(Error::InvalidGroup("relabeling must be a bijection".into()));
        }
        let mut seen = vec![false; self.group.size()];
        for &c in to_current {
            if seen[c] {
                return Err(Error::AmbientEmbeddingNotInjective);
            }
            seen[c] = true;
        }
        let basis = to_current.iter().map(|&c| self.basis[c].clone()).collect();
        let to_internal = to_current.iter().map(|&c| self.to_internal[c]).collect();
        GradedAlgebra::assemble(
            target.clone(),
            self.d,
            basis,
            self.factors.clone(),
            self.complex_tensor,
            self.internal.clone(),
            to_internal,
        )
    }

    /// Pushes the grading into an ambient group along a homomorphism given
    /// on generators; the image must be the whole ambient group.
    pub fn push_forward(&self, ambient: &Group, images: &[GroupElement]) -> Result<GradedAlgebra> {
        if images.len() != self.group.rank() {
            return Err(Error::InvalidGroup("one image per generator is required".into()));
        }
        for (im, &o) in images.iter().zip(self.group.orders()) {
            ambient.check(im)?;
            if o % ambient.order(im)? != 0 {
                return Err(Error::InvalidGroup(format!("image {im} has incompatible order")));
            }
        }
        let idx: Vec<usize> = images.iter().map(|x| ambient.index(x)).collect();
        let mut map = vec![usize::MAX; ambient.size()];
        for t in 0..self.group.size() {
            let e = self.group.elem(t);
            let mut img = 0;
            for (k, &x) in e.0.iter().enumerate() {
                img = ambient.mul_idx(img, ambient.pow_idx(idx[k], x as i64));
            }
            if map[img] != usize::MAX {
                return Err(Error::AmbientEmbeddingNotInjective);
            }
            map[img] = t;
        }
        if map.contains(&usize::MAX) {
            return Err(Error::InvalidGroup("support must fill the ambient group".into()));
        }
        self.relabel(ambient, &map)
    }

    fn identity_is_complex_center(&self) -> bool {
        if self.d != 2 {
            return false;
        }
        let i = Cyc::i(self.cond);
        self.coords(0, &self.unity()).is_some() && self.coords(0, &self.unity().scale(&i)).is_some()
    }

    /// Generators for commutation tests: the identity component plus one
    /// component per group generator.
    pub fn algebra_generators(&self) -> Vec<Mat> {
        let mut gens: Vec<Mat> = self.basis[0].clone();
        for g in self.group.generators() {
            gens.extend(self.basis[self.group.index(&g)].iter().cloned());
        }
        gens
    }

    /// Homogeneous basis of the center: (degree, element) pairs.
    pub fn center_basis(&self) -> Result<Vec<(usize, Mat)>> {
        if let Some(c) = self.center_cache.get() {
            return Ok(c.clone());
        }
        let c = self.compute_center()?;
        Ok(self.center_cache.get_or_init(|| c).clone())
    }

    fn compute_center(&self) -> Result<Vec<(usize, Mat)>> {
        let gens = self.algebra_generators();
        let mut out = Vec::new();
        for t in 0..self.group.size() {
            let comms: Vec<Vec<Mat>> =
                self.basis[t].iter().map(|b| gens.iter().map(|g| b.mul(g).sub(&g.mul(b))).collect()).collect();
            let n2 = self.size * self.size;
            let rows = gens.len() * n2;
            let mut sys = Mat::zeros(rows, self.d, self.cond);
            for (k, cs) in comms.iter().enumerate() {
                for (gi, c) in cs.iter().enumerate() {
                    for (p, v) in c.entries().iter().enumerate() {
                        if !v.is_zero() {
                            sys.set(gi * n2 + p, k, v.clone());
                        }
                    }
                }
            }
            for v in real_nullspace(&sys)? {
                out.push((t, self.combine(t, &v)));
            }
        }
        Ok(out)
    }

    pub fn center_kind(&self) -> Result<CenterKind> {
        let z = self.center_basis()?;
        match z.len() {
            1 => Ok(CenterKind::Real),
            2 => {
                let x = z
                    .iter()
                    .map(|(_, x)| x)
                    .find(|x| x.scalar_value().is_none_or(|c| !c.is_real()))
                    .cloned()
                    .ok_or_else(|| Error::UnknownStructure("center has no non-scalar element".into()))?;
                // x² = a + b x with a, b real
                let sq = x.mul(&x);
                let one = self.unity();
                let (a, b) = solve_two(&one, &x, &sq)
                    .ok_or_else(|| Error::UnknownStructure("center element has no quadratic relation".into()))?;
                let disc = b.mul(&b).add(&a.scale_int(4));
                match disc.real_sign()? {
                    1 => Ok(CenterKind::Split),
                    -1 => Ok(CenterKind::Complex),
                    _ => Err(Error::UnknownStructure("nilpotent center".into())),
                }
            }
            k => Err(Error::UnknownStructure(format!("center of dimension {k}"))),
        }
    }

    /// Signature of (x,y) ↦ Re tr(xy) on the whole algebra.
    pub fn trace_form_signature(&self) -> Result<i64> {
        let n = self.group.size();
        let g = &self.group;
        // degrees carrying elements of nonzero trace
        let traced: Vec<usize> =
            (0..n).filter(|&u| self.basis[u].iter().any(|b| !b.trace().is_zero())).collect();
        let mut done = vec![false; n];
        let mut sig = 0i64;
        for s in 0..n {
            if done[s] {
                continue;
            }
            // connected class of s under s ~ u s⁻¹-style pairing
            let mut class = vec![s];
            done[s] = true;
            let mut k = 0;
            while k < class.len() {
                let a = class[k];
                for &u in &traced {
                    let b = g.mul_idx(u, g.inv_idx(a));
                    if !done[b] {
                        done[b] = true;
                        class.push(b);
                    }
                }
                k += 1;
            }
            let elems: Vec<&Mat> = class.iter().flat_map(|&c| self.basis[c].iter()).collect();
            let m = elems.len();
            let mut gram = Mat::zeros(m, m, self.cond);
            for i in 0..m {
                for j in i..m {
                    let tr = elems[i].mul(elems[j]).trace();
                    let re = tr.add(&tr.conj()).scale_rational(Rational64::new(1, 2));
                    gram.set(i, j, re.clone());
                    gram.set(j, i, re);
                }
            }
            let (p, q, z) = hermitian_inertia(&gram)?;
            if z != 0 {
                return Err(Error::UnknownStructure("degenerate trace form".into()));
            }
            sig += p as i64 - q as i64;
        }
        Ok(sig)
    }

    /// Cached [`GradedAlgebra::identify_algebra`].
    pub fn structure(&self) -> Result<Structure> {
        if let Some(s) = self.structure_cache.get() {
            return Ok(*s);
        }
        let s = self.identify_algebra()?;
        Ok(*self.structure_cache.get_or_init(|| s))
    }

    pub fn identify_algebra(&self) -> Result<Structure> {
        let dim = self.dim();
        let isqrt = |x: usize| -> Result<usize> {
            let r = (x as f64).sqrt().round() as usize;
            if r * r == x {
                Ok(r)
            } else {
                Err(Error::UnknownStructure(format!("dimension {x} is not a square")))
            }
        };
        match self.center_kind()? {
            CenterKind::Complex => Ok(Structure::MatComplex(isqrt(dim / 2)?)),
            CenterKind::Real => {
                let n = isqrt(dim)?;
                let s = self.trace_form_signature()?;
                if s == n as i64 {
                    Ok(Structure::MatReal(n))
                } else if s == -(n as i64) {
                    Ok(Structure::MatQuat(n))
                } else {
                    Err(Error::UnknownStructure(format!("trace signature {s} for dimension {dim}")))
                }
            }
            CenterKind::Split => {
                let n = isqrt(dim / 2)?;
                let s = self.trace_form_signature()?;
                let n_i = n as i64;
                if s == 2 * n_i {
                    Ok(Structure::MatRealPair(n))
                } else if s == -2 * n_i {
                    Ok(Structure::MatQuatPair(n))
                } else if s == 0 {
                    Ok(Structure::MatRealQuat(n))
                } else {
                    Err(Error::UnknownStructure(format!("trace signature {s} for dimension {dim}")))
                }
            }
        }
    }

    /// The representative X_t of each degree used for commutation and
    /// square data: the first basis element.
    pub fn rep(&self, t: usize) -> &Mat {
        &self.basis[t][0]
    }

    /// Whether D_e is central, so that components are lines over D_e.
    pub fn identity_component_central(&self) -> bool {
        let gens = self.algebra_generators();
        self.basis[0].iter().all(|b| gens.iter().all(|g| b.mul(g) == g.mul(b)))
    }

    /// Commutation scalar of X_u, X_v as a root-of-unity rotation number.
    fn commutation_rot(&self, u: usize, v: usize) -> Option<Rational64> {
        let (x, y) = (self.rep(u), self.rep(v));
        let xy = x.mul(y);
        let yx = y.mul(x);
        let p = yx.entries().iter().position(|c| !c.is_zero())?;
        let ratio = xy.entries()[p].mul(&yx.entries()[p].inv().ok()?);
        if yx.scale(&ratio) != xy {
            return None;
        }
        let k = ratio.root_of_unity_exponent()?;
        Some(Rational64::new(k as i64, self.cond as i64))
    }

    /// β read from commutation of representatives; needs D_e central.
    pub fn recovered_beta(&self) -> Option<Bicharacter> {
        if !self.identity_component_central() {
            return None;
        }
        let gens: Vec<usize> = self.group.generators().iter().map(|g| self.group.index(g)).collect();
        let q: Option<Vec<Vec<Rational64>>> =
            gens.iter().map(|&u| gens.iter().map(|&v| self.commutation_rot(u, v)).collect()).collect();
        Bicharacter::new(&self.group, q?).ok()
    }

    /// μ on T_[2] from the signs of squares; needs one-dimensional components.
    pub fn recovered_mu(&self) -> Option<QuadraticForm> {
        if self.d != 1 {
            return None;
        }
        let t2 = self.group.torsion_subgroup(2);
        let mut vals = vec![0i8; self.group.size()];
        for &t in t2.indices() {
            let sq = self.rep(t).mul(self.rep(t)).scalar_value()?;
            vals[t] = sq.real_sign().ok()?;
        }
        QuadraticForm::new(&t2, vals).ok()
    }

    /// Exact check of the grading axioms.
    pub fn verify_grading(&self) -> GradingReport {
        let g = &self.group;
        let n = g.size();
        let mut violations = Vec::new();
        if self.basis[0].is_empty() || self.coords(0, &self.unity()).is_none() {
            violations.push("unity is not in the identity component".to_string());
        }
        for s in 0..n {
            for (i, x) in self.basis[s].iter().enumerate() {
                if x.inverse().is_err() {
                    violations.push(format!("basis element {i} of degree {} is singular", g.elem(s)));
                }
                for t in 0..n {
                    let st = g.mul_idx(s, t);
                    for (j, y) in self.basis[t].iter().enumerate() {
                        if self.coords(st, &x.mul(y)).is_none() {
                            violations.push(format!(
                                "product of element {i} of degree {} and element {j} of degree {} leaves degree {}",
                                g.elem(s),
                                g.elem(t),
                                g.elem(st)
                            ));
                        }
                    }
                }
            }
        }
        let center = self.center_kind().ok();
        if center.is_none() {
            violations.push("center is not ℝ, ℂ or ℝ×ℝ".to_string());
        }
        let beta = self.recovered_beta().map(|b| {
            b.table().iter().map(|r| r.iter().map(crate::forms::fmt_rational).collect()).collect()
        });
        let mu = self
            .recovered_mu()
            .map(|m| m.domain().indices().iter().map(|&t| (g.elem(t).to_string(), m.value_idx(t))).collect());
        if self.d == 1 && mu.is_none() {
            violations.push("squares of degree-2 elements are not real scalars".to_string());
        }
        GradingReport { ok: violations.is_empty(), violations, center, beta, mu }
    }

    pub fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            orders: self.group.orders().to_vec(),
            dim_component: self.d,
            matrix_size: self.size,
            components: (0..self.group.size())
                .map(|t| ComponentDoc {
                    degree: self.group.elem(t).0,
                    basis: self.basis[t].iter().map(MatDoc::from).collect(),
                })
                .collect(),
        }
    }

    /// Copy with one basis matrix replaced, for negative controls.
    pub fn with_component(&self, t: usize, comp: Vec<Mat>) -> Result<GradedAlgebra> {
        let mut basis = self.basis.clone();
        basis[t] = comp;
        GradedAlgebra::assemble(
            self.group.clone(),
            self.d,
            basis,
            self.factors.clone(),
            self.complex_tensor,
            self.internal.clone(),
            self.to_internal.clone(),
        )
    }
}

/// Real (a, b) with y = a·p + b·q, if any.
fn solve_two(p: &Mat, q: &Mat, y: &Mat) -> Option<(Cyc, Cyc)> {
    let rc = RealCoords::new(&[p.clone(), q.clone()]).ok()?;
    let c = rc.coords(y)?;
    Some((c[0].clone(), c[1].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_verify() {
        for b in BlockName::BASIC.iter().copied().chain((2..6).map(BlockName::Pauli)) {
            let a = building_block(b).unwrap();
            let r = a.verify_grading();
            assert!(r.ok, "{b}: {:?}", r.violations);
            assert_eq!(r.center, Some(b.center()), "{b}");
        }
        for b in [
            BlockName::Real,
            BlockName::QuatTrivial,
            BlockName::ComplexTrivial,
            BlockName::M2RCoarse,
            BlockName::QuatCoarse,
            BlockName::M2CCoarse,
        ] {
            let r = building_block(b).unwrap().verify_grading();
            assert!(r.ok, "{b}: {:?}", r.violations);
        }
    }

    #[test]
    fn identification() {
        let id = |b| building_block(b).unwrap().identify_algebra().unwrap();
        assert_eq!(id(BlockName::M2R), Structure::MatReal(2));
        assert_eq!(id(BlockName::Quaternion), Structure::MatQuat(2));
        assert_eq!(id(BlockName::Split), Structure::MatRealPair(1));
        assert_eq!(id(BlockName::M2RQuat), Structure::MatRealQuat(2));
        assert_eq!(id(BlockName::M2Split), Structure::MatRealPair(2));
        assert_eq!(id(BlockName::M2C), Structure::MatComplex(2));
        let t = tensor_product(&building_block(BlockName::M2R).unwrap(), &building_block(BlockName::Complex).unwrap())
            .unwrap();
        assert_eq!(t.identify_algebra().unwrap(), Structure::MatComplex(2));
        let h2 = tensor_product(
            &building_block(BlockName::Quaternion).unwrap(),
            &building_block(BlockName::Quaternion).unwrap(),
        )
        .unwrap();
        assert_eq!(h2.identify_algebra().unwrap(), Structure::MatReal(4));
    }

    #[test]
    fn recovered_data() {
        let a = building_block(BlockName::M2R).unwrap();
        let mu = a.recovered_mu().unwrap();
        // e, b, a, ab
        assert_eq!(mu.values(), &[1, 1, 1, -1]);
        let beta = a.recovered_beta().unwrap();
        assert_eq!(beta.sign_idx(1, 2), -1);
        let p = building_block(BlockName::Pauli(3)).unwrap();
        let beta = p.recovered_beta().unwrap();
        assert_eq!(beta.table()[0][1], Rational64::new(1, 3));
    }

    #[test]
    fn corrupted_block_fails() {
        let a = building_block(BlockName::M2C).unwrap();
        let bad = a.component(1)[0].scale(&Cyc::zeta(8, 1));
        let a = a.with_component(1, vec![bad]).unwrap();
        let r = a.verify_grading();
        assert!(!r.ok);
        assert!(r.violations.iter().any(|v| v.contains("leaves degree")));
    }

    #[test]
    fn tensor_dimensions() {
        let m = building_block(BlockName::M2R).unwrap();
        let t = tensor_product(&m, &m).unwrap();
        assert_eq!(t.dim(), 16);
        assert_eq!(t.identify_algebra().unwrap(), Structure::MatReal(4));
        let r = building_block(BlockName::Real).unwrap();
        assert_eq!(tensor_product(&m, &r).unwrap().dim(), 4);
        let p = building_block(BlockName::Pauli(2)).unwrap();
        let pp = tensor_product_complex(&p, &p).unwrap();
        assert_eq!(pp.dim(), 32);
        assert!(pp.verify_grading().ok);
        assert_eq!(pp.identify_algebra().unwrap(), Structure::MatComplex(4));
    }

    #[test]
    fn push_forward_rejects_merging() {
        let m = building_block(BlockName::M2R).unwrap();
        let z4 = Group::new(&[4]).unwrap();
        let im = vec![z4.element(&[2]).unwrap(), z4.element(&[2]).unwrap()];
        assert!(matches!(m.push_forward(&z4, &im), Err(Error::AmbientEmbeddingNotInjective)));
    }
}
