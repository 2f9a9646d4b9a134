//! Alternating bicharacters, quadratic forms and nice maps on finite
//! abelian groups, with their invariants.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abgroup::{Group, GroupElement, Subgroup};
use crate::error::{Error, Result};

/// Upper bound on domain sizes for enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 1 << 12;

pub(crate) fn frac_mod1(r: Rational64) -> Rational64 {
    let f = r - r.floor();
    if f < Rational64::zero() {
        f + Rational64::one()
    } else {
        f
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: i64 = d.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational64::new(n, d))
}

pub(crate) fn fmt_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// β(g_i, g_j) = exp(2πi q_ij) on the generators of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    group: Group,
    q: Vec<Vec<Rational64>>,
    real: bool,
}

impl Bicharacter {
    pub fn new(group: &Group, q: Vec<Vec<Rational64>>) -> Result<Bicharacter> {
        let r = group.rank();
        if q.len() != r || q.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidBicharacter(format!("table must be {r}x{r}")));
        }
        let q: Vec<Vec<Rational64>> =
            q.into_iter().map(|row| row.into_iter().map(frac_mod1).collect()).collect();
        for i in 0..r {
            if !q[i][i].is_zero() {
                return Err(Error::InvalidBicharacter(format!("q[{i}][{i}] must vanish")));
            }
            for j in 0..r {
                if !frac_mod1(q[i][j] + q[j][i]).is_zero() {
                    return Err(Error::InvalidBicharacter(format!("q not antisymmetric at ({i},{j})")));
                }
                let o = Rational64::from_integer(group.orders()[i] as i64);
                if !(o * q[i][j]).is_integer() {
                    return Err(Error::InvalidBicharacter(format!(
                        "q[{i}][{j}] incompatible with generator order {}",
                        group.orders()[i]
                    )));
                }
            }
        }
        let half = Rational64::new(1, 2);
        let real = q.iter().flatten().all(|x| x.is_zero() || *x == half);
        Ok(Bicharacter { group: group.clone(), q, real })
    }

    pub fn trivial(group: &Group) -> Bicharacter {
        let r = group.rank();
        Bicharacter::new(group, vec![vec![Rational64::zero(); r]; r]).unwrap()
    }

    /// Real-valued bicharacter from the set of generator pairs with β = −1.
    pub fn from_minus_pairs(group: &Group, pairs: &[(usize, usize)]) -> Result<Bicharacter> {
        let r = group.rank();
        let mut q = vec![vec![Rational64::zero(); r]; r];
        for &(i, j) in pairs {
            q[i][j] = Rational64::new(1, 2);
            q[j][i] = Rational64::new(1, 2);
        }
        Bicharacter::new(group, q)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn table(&self) -> &[Vec<Rational64>] {
        &self.q
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Rotation number of β(u,v) in [0,1).
    pub fn rot_idx(&self, u: usize, v: usize) -> Rational64 {
        let eu = self.group.elem(u);
        let ev = self.group.elem(v);
        let mut s = Rational64::zero();
        for (i, &a) in eu.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in ev.0.iter().enumerate() {
                if b != 0 && !self.q[i][j].is_zero() {
                    s += self.q[i][j] * Rational64::from_integer((a * b) as i64);
                }
            }
        }
        frac_mod1(s)
    }

    /// β(u,v) as ±1; requires a real-valued bicharacter.
    pub fn sign_idx(&self, u: usize, v: usize) -> i8 {
        debug_assert!(self.real);
        let r = self.rot_idx(u, v);
        if r.is_zero() {
            1
        } else {
            -1
        }
    }

    pub fn sign(&self, u: &GroupElement, v: &GroupElement) -> i8 {
        self.sign_idx(self.group.index(u), self.group.index(v))
    }

    pub fn rot(&self, u: &GroupElement, v: &GroupElement) -> Rational64 {
        self.rot_idx(self.group.index(u), self.group.index(v))
    }

    pub fn radical(&self) -> Subgroup {
        let n = self.group.size();
        let els = (0..n).filter(|&u| (0..self.group.rank()).all(|j| {
            let g = self.group.index(&self.group.generator(j));
            self.rot_idx(u, g).is_zero()
        }));
        Subgroup::from_elements(&self.group, els.collect())
    }

    /// Radical of β restricted to a subgroup.
    pub fn radical_in(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = h.generators().iter().map(|g| self.group.index(g)).collect();
        let els = h
            .indices()
            .iter()
            .copied()
            .filter(|&u| gens.iter().all(|&g| self.rot_idx(u, g).is_zero()))
            .collect();
        Subgroup::from_elements(&self.group, els)
    }

    /// u^⊥ = { v : β(u,v) = 1 }.
    pub fn perp(&self, u: &GroupElement) -> Subgroup {
        let ui = self.group.index(u);
        let els = (0..self.group.size()).filter(|&v| self.rot_idx(ui, v).is_zero()).collect();
        Subgroup::from_elements(&self.group, els)
    }

    /// Same bicharacter on another group presentation via a map of generators.
    pub fn restrict_eq(&self, other: &Bicharacter, h: &Subgroup) -> bool {
        h.indices()
            .iter()
            .all(|&u| h.indices().iter().all(|&v| self.rot_idx(u, v) == other.rot_idx(u, v)))
    }

    pub fn classify_type(&self) -> Result<TypeInfo> {
        let rad = self.radical();
        let g = &self.group;
        match rad.size() {
            1 => Ok(TypeInfo { kind: BetaType::I, f_beta: None, f_t: f_t_of(g), rad_prime: None }),
            2 => {
                let f = rad.indices()[1];
                let f_t = f_t_of(g);
                let rad_prime = match &f_t {
                    Some(ft) if g.index(ft) == f => {
                        let t2 = g.torsion_subgroup(2);
                        let r2 = self.radical_in(&t2);
                        let rp: Vec<GroupElement> = r2
                            .indices()
                            .iter()
                            .filter(|&&x| !rad.contains_idx(x))
                            .map(|&x| g.elem(x))
                            .collect();
                        if rp.len() == 2 {
                            Some([rp[0].clone(), rp[1].clone()])
                        } else {
                            None
                        }
                    }
                    _ => None,
                };
                Ok(TypeInfo { kind: BetaType::II, f_beta: Some(g.elem(f)), f_t, rad_prime })
            }
            k => Err(Error::NotTypeIorII(k)),
        }
    }

    /// Symplectic basis, see [`SymplecticBasis`]. Candidates are scanned in
    /// lexicographic order and the first admissible one is taken.
    pub fn symplectic_basis(&self) -> Result<SymplecticBasis> {
        let info = self.classify_type()?;
        let g = &self.group;
        let rad = self.radical();
        let z4 = g.power_subgroup(2).size() == 2 && g.power_subgroup(4).size() == 1;
        let z4_case = info.kind == BetaType::II && z4 && info.f_beta == info.f_t;
        let mut w = g.whole();
        let mut pairs = Vec::new();
        while w.size() > rad.size() {
            let last = z4_case && w.size() == 8;
            let w2 = w.intersect(&g.torsion_subgroup(2));
            let w2rad = self.radical_in(&w2);
            let pick_a = w.indices().iter().copied().find(|&a| {
                if g.order_idx(a) != 2 || rad.contains_idx(a) {
                    return false;
                }
                if z4_case && !last && w2rad.contains_idx(a) {
                    return false;
                }
                true
            });
            let a = pick_a.ok_or_else(|| Error::InvalidBicharacter("no symplectic partner found".into()))?;
            let pick_b = w.indices().iter().copied().find(|&b| {
                if self.sign_idx(a, b) != -1 {
                    return false;
                }
                if z4_case {
                    if last {
                        g.order_idx(b) == 4
                    } else {
                        g.order_idx(b) == 2
                    }
                } else {
                    true
                }
            });
            let b = pick_b.ok_or_else(|| Error::InvalidBicharacter("no symplectic partner found".into()))?;
            pairs.push((g.elem(a), g.elem(b)));
            let els = w
                .indices()
                .iter()
                .copied()
                .filter(|&v| self.sign_idx(a, v) == 1 && self.sign_idx(b, v) == 1)
                .collect();
            w = Subgroup::from_elements(g, els);
        }
        let f_beta = if info.kind == BetaType::II && !z4_case { info.f_beta.clone() } else { None };
        Ok(SymplecticBasis { pairs, f_beta })
    }
}

fn f_t_of(g: &Group) -> Option<GroupElement> {
    let p = g.power_subgroup(2);
    if p.size() == 2 {
        Some(g.elem(p.indices()[1]))
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BetaType {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeInfo {
    pub kind: BetaType,
    pub f_beta: Option<GroupElement>,
    /// Generator of T^[2] when that subgroup has order 2.
    pub f_t: Option<GroupElement>,
    pub rad_prime: Option<[GroupElement; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticBasis {
    pub pairs: Vec<(GroupElement, GroupElement)>,
    /// Adjoined radical generator for type II on an elementary group.
    pub f_beta: Option<GroupElement>,
}

impl SymplecticBasis {
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut v: Vec<GroupElement> =
            self.pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        if let Some(f) = &self.f_beta {
            v.push(f.clone());
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arf {
    Plus,
    Minus,
    Undefined,
}

impl Arf {
    pub fn from_counts(plus: usize, minus: usize) -> Arf {
        use std::cmp::Ordering::*;
        match plus.cmp(&minus) {
            Greater => Arf::Plus,
            Less => Arf::Minus,
            Equal => Arf::Undefined,
        }
    }

    pub fn as_i8(self) -> Option<i8> {
        match self {
            Arf::Plus => Some(1),
            Arf::Minus => Some(-1),
            Arf::Undefined => None,
        }
    }

    pub fn times(self, s: i8) -> Arf {
        match (self, s) {
            (Arf::Undefined, _) => Arf::Undefined,
            (a, 1) => a,
            (Arf::Plus, _) => Arf::Minus,
            (Arf::Minus, _) => Arf::Plus,
        }
    }
}

impl Serialize for Arf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_i8().serialize(s)
    }
}

/// A ±1-valued quadratic form on a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    domain: Subgroup,
    values: Vec<i8>,
}

impl QuadraticForm {
    /// Validates μ(e)=1 and that the polarization is an alternating bicharacter.
    pub fn new(domain: &Subgroup, values: Vec<i8>) -> Result<QuadraticForm> {
        let g = domain.group();
        if values.len() != g.size() {
            return Err(Error::NotAQuadraticForm("value table has wrong length".into()));
        }
        for &t in domain.indices() {
            if values[t] != 1 && values[t] != -1 {
                return Err(Error::NotAQuadraticForm(format!("value at {} is not ±1", g.elem(t))));
            }
        }
        let mu = QuadraticForm { domain: domain.clone(), values };
        mu.validate()?;
        Ok(mu)
    }

    pub fn from_fn(domain: &Subgroup, f: impl Fn(&GroupElement) -> i8) -> Result<QuadraticForm> {
        let g = domain.group();
        let mut values = vec![0i8; g.size()];
        for &t in domain.indices() {
            values[t] = f(&g.elem(t));
        }
        QuadraticForm::new(domain, values)
    }

    fn validate(&self) -> Result<()> {
        let g = self.domain.group();
        if self.values[0] != 1 {
            return Err(Error::NotAQuadraticForm("μ(e) ≠ 1".into()));
        }
        let gens: Vec<usize> = self.domain.generators().iter().map(|x| g.index(x)).collect();
        for &u in self.domain.indices() {
            if self.pol_idx(u, u) != 1 {
                return Err(Error::NotAQuadraticForm(format!("polarization not alternating at {}", g.elem(u))));
            }
            for &v in self.domain.indices() {
                let b = self.pol_idx(u, v);
                if b != self.pol_idx(v, u) {
                    return Err(Error::NotAQuadraticForm("polarization not symmetric".into()));
                }
                for &w in &gens {
                    if self.pol_idx(u, g.mul_idx(v, w)) != b * self.pol_idx(u, w) {
                        return Err(Error::NotAQuadraticForm(format!(
                            "polarization not bilinear at ({}, {}, {})",
                            g.elem(u),
                            g.elem(v),
                            g.elem(w)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn group(&self) -> &Group {
        self.domain.group()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value_idx(&self, t: usize) -> i8 {
        debug_assert!(self.domain.contains_idx(t));
        self.values[t]
    }

    pub fn value(&self, t: &GroupElement) -> i8 {
        self.values[self.group().index(t)]
    }

    /// β_μ(u,v) = μ(uv)μ(u)μ(v).
    pub fn pol_idx(&self, u: usize, v: usize) -> i8 {
        let g = self.group();
        self.values[g.mul_idx(u, v)] * self.values[u] * self.values[v]
    }

    /// Polarization as a bicharacter; only when the domain is the whole group.
    pub fn polarization(&self) -> Result<Bicharacter> {
        let g = self.group();
        if !self.domain.is_whole() {
            return Err(Error::NotAQuadraticForm("polarization table needs a full domain".into()));
        }
        let r = g.rank();
        let mut q = vec![vec![Rational64::zero(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let gi = g.index(&g.generator(i));
                let gj = g.index(&g.generator(j));
                if self.pol_idx(gi, gj) == -1 {
                    q[i][j] = Rational64::new(1, 2);
                }
            }
        }
        Bicharacter::new(g, q).map_err(|e| Error::NotAQuadraticForm(e.to_string()))
    }

    /// True when the polarization equals β on the domain.
    pub fn has_polarization(&self, beta: &Bicharacter) -> bool {
        let d = self.domain.indices();
        let gens: Vec<usize> = self.domain.generators().iter().map(|x| self.group().index(x)).collect();
        d.iter().all(|&u| gens.iter().all(|&v| beta.rot_idx(u, v).is_zero() == (self.pol_idx(u, v) == 1)))
    }

    pub fn same_polarization(&self, other: &QuadraticForm) -> bool {
        let d = self.domain.indices();
        d.iter().all(|&u| d.iter().all(|&v| self.pol_idx(u, v) == other.pol_idx(u, v)))
    }

    pub fn arf(&self) -> Arf {
        let plus = self.domain.indices().iter().filter(|&&t| self.values[t] == 1).count();
        Arf::from_counts(plus, self.domain.size() - plus)
    }

    /// Arf invariant through a symplectic basis of the domain modulo the
    /// radical of the polarization.
    pub fn arf_by_basis(&self) -> Arf {
        let g = self.group();
        let rad: Vec<usize> = self
            .domain
            .indices()
            .iter()
            .copied()
            .filter(|&r| self.domain.indices().iter().all(|&v| self.pol_idx(r, v) == 1))
            .collect();
        if rad.iter().any(|&r| self.values[r] == -1) {
            return Arf::Undefined;
        }
        let mut w: Vec<usize> = self.domain.indices().to_vec();
        let mut parity = 0u32;
        while w.len() > rad.len() {
            let a = match w.iter().copied().find(|&a| w.iter().any(|&v| self.pol_idx(a, v) == -1)) {
                Some(a) => a,
                None => break,
            };
            let b = w.iter().copied().find(|&b| self.pol_idx(a, b) == -1).unwrap();
            if self.values[a] == -1 && self.values[b] == -1 {
                parity += 1;
            }
            w.retain(|&v| self.pol_idx(a, v) == 1 && self.pol_idx(b, v) == 1);
        }
        let _ = g;
        if parity.is_multiple_of(2) {
            Arf::Plus
        } else {
            Arf::Minus
        }
    }

    /// μ_u(v) = β(u,v) μ(v), with β the polarization of μ.
    pub fn twisted(&self, u: usize) -> QuadraticForm {
        let mut values = self.values.clone();
        for &v in self.domain.indices() {
            values[v] = self.pol_idx(u, v) * self.values[v];
        }
        QuadraticForm { domain: self.domain.clone(), values }
    }

    /// Twist by a character given as a sign table over the domain.
    pub fn times_character(&self, chi: impl Fn(usize) -> i8) -> Result<QuadraticForm> {
        let mut values = self.values.clone();
        for &v in self.domain.indices() {
            values[v] *= chi(v);
        }
        QuadraticForm::new(&self.domain, values)
    }

    pub fn agreement_subgroup(&self, other: &QuadraticForm) -> Result<Subgroup> {
        if self.domain != other.domain || !self.same_polarization(other) {
            return Err(Error::DifferentPolarizations);
        }
        if self.values == other.values {
            return Err(Error::FormsEqual);
        }
        let els = self
            .domain
            .indices()
            .iter()
            .copied()
            .filter(|&t| self.values[t] == other.values[t])
            .collect();
        Subgroup::from_set(self.group(), els)
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, h: &Subgroup) -> Result<QuadraticForm> {
        let mut values = vec![0i8; self.values.len()];
        for &t in h.indices() {
            if !self.domain.contains_idx(t) {
                return Err(Error::NotAQuadraticForm("restriction outside domain".into()));
            }
            values[t] = self.values[t];
        }
        QuadraticForm::new(h, values)
    }

    /// Values keyed by exponent vectors, for JSON.
    pub fn to_map(&self) -> BTreeMap<String, i8> {
        let g = self.group();
        self.domain.indices().iter().map(|&t| (g.elem(t).to_string(), self.values[t])).collect()
    }
}

/// Extends generator values to a quadratic form with polarization β by
/// breadth-first search along μ(xg) = μ(x)μ(g)β(x,g).
pub fn extend_form(
    domain: &Subgroup,
    generator_values: &[(GroupElement, i8)],
    beta: &Bicharacter,
) -> Result<QuadraticForm> {
    let g = domain.group();
    let gens: Vec<(usize, i8)> = generator_values
        .iter()
        .map(|(x, s)| {
            g.check(x)?;
            if !domain.contains(x) {
                return Err(Error::InconsistentExtension(format!("{x} not in domain")));
            }
            Ok((g.index(x), *s))
        })
        .collect::<Result<_>>()?;
    let mut values = vec![0i8; g.size()];
    values[0] = 1;
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for &(gi, s) in &gens {
            let y = g.mul_idx(x, gi);
            let b = if beta.rot_idx(x, gi).is_zero() {
                1
            } else if beta.rot_idx(x, gi) == Rational64::new(1, 2) {
                -1
            } else {
                return Err(Error::InconsistentExtension("bicharacter is not real-valued here".into()));
            };
            let v = values[x] * s * b;
            if values[y] == 0 {
                values[y] = v;
                queue.push(y);
            } else if values[y] != v {
                return Err(Error::InconsistentExtension(format!(
                    "two values reached at {}",
                    g.elem(y)
                )));
            }
        }
    }
    if queue.len() != domain.size() {
        return Err(Error::InconsistentExtension("generators do not span the domain".into()));
    }
    let mu = QuadraticForm::new(domain, values).map_err(|e| Error::InconsistentExtension(e.to_string()))?;
    if !mu.has_polarization(beta) {
        return Err(Error::InconsistentExtension("polarization differs from β".into()));
    }
    Ok(mu)
}

/// All quadratic forms on `domain` with polarization β.
pub fn enumerate_forms(beta: &Bicharacter, domain: &Subgroup) -> Result<Vec<QuadraticForm>> {
    enumerate_forms_bounded(beta, domain, DEFAULT_ENUM_BOUND)
}

pub fn enumerate_forms_bounded(
    beta: &Bicharacter,
    domain: &Subgroup,
    bound: usize,
) -> Result<Vec<QuadraticForm>> {
    if domain.size() > bound {
        return Err(Error::DomainTooLarge(domain.size()));
    }
    let g = domain.group();
    let basis = domain.basis();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << basis.len()) {
        let vals: Vec<(GroupElement, i8)> = basis
            .iter()
            .enumerate()
            .map(|(i, &b)| (g.elem(b), if mask >> i & 1 == 1 { -1 } else { 1 }))
            .collect();
        if let Ok(mu) = extend_form(domain, &vals, beta) {
            out.push(mu);
        }
    }
    Ok(out)
}

/// A ±1-valued map on the coset complement of an index-2 subgroup K of
/// an ambient subgroup, whose difference quotients are quadratic forms on K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceMap {
    ambient: Subgroup,
    k: Subgroup,
    values: Vec<i8>,
}

impl NiceMap {
    pub fn new(ambient: &Subgroup, k: &Subgroup, values: Vec<i8>) -> Result<NiceMap> {
        let g = ambient.group();
        if k.size() * 2 != ambient.size() || k.indices().iter().any(|&x| !ambient.contains_idx(x)) {
            return Err(Error::NotANiceMap("K must have index 2 in the ambient group".into()));
        }
        if values.len() != g.size() {
            return Err(Error::NotANiceMap("value table has wrong length".into()));
        }
        for &t in ambient.indices() {
            if !k.contains_idx(t) && values[t] != 1 && values[t] != -1 {
                return Err(Error::NotANiceMap(format!("value at {} is not ±1", g.elem(t))));
            }
        }
        let nu = NiceMap { ambient: ambient.clone(), k: k.clone(), values };
        let first = nu.coset()[0];
        let mu0 = nu.mu_g(first)?;
        for g2 in nu.coset() {
            let mu = nu.mu_g(g2)?;
            if !mu.same_polarization(&mu0) {
                return Err(Error::NotANiceMap("μ_g polarizations differ".into()));
            }
        }
        Ok(nu)
    }

    pub fn from_fn(ambient: &Subgroup, k: &Subgroup, f: impl Fn(&GroupElement) -> i8) -> Result<NiceMap> {
        let g = ambient.group();
        let mut values = vec![0i8; g.size()];
        for &t in ambient.indices() {
            if !k.contains_idx(t) {
                values[t] = f(&g.elem(t));
            }
        }
        NiceMap::new(ambient, k, values)
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn k(&self) -> &Subgroup {
        &self.k
    }

    pub fn group(&self) -> &Group {
        self.ambient.group()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value_idx(&self, t: usize) -> i8 {
        self.values[t]
    }

    /// Elements of ambient ∖ K, sorted.
    pub fn coset(&self) -> Vec<usize> {
        self.ambient.indices().iter().copied().filter(|&t| !self.k.contains_idx(t)).collect()
    }

    /// μ_g(k) = ν(gk) ν(g).
    pub fn mu_g(&self, g: usize) -> Result<QuadraticForm> {
        let grp = self.group();
        if self.k.contains_idx(g) || !self.ambient.contains_idx(g) {
            return Err(Error::NotANiceMap("g must lie outside K".into()));
        }
        let mut vals = vec![0i8; grp.size()];
        for &k in self.k.indices() {
            vals[k] = self.values[grp.mul_idx(g, k)] * self.values[g];
        }
        QuadraticForm::new(&self.k, vals).map_err(|e| Error::NotANiceMap(e.to_string()))
    }

    pub fn neg(&self) -> NiceMap {
        let values = self.values.iter().map(|v| -v).collect();
        NiceMap { ambient: self.ambient.clone(), k: self.k.clone(), values }
    }

    pub fn arf(&self) -> Arf {
        let c = self.coset();
        let plus = c.iter().filter(|&&t| self.values[t] == 1).count();
        Arf::from_counts(plus, c.len() - plus)
    }

    /// ν(x) := μ_g(x) for x in the radical of β_ν, checked to be independent of g.
    pub fn value_on_radical(&self, x: usize) -> Result<i8> {
        let mut val = None;
        for g in self.coset() {
            let v = self.mu_g(g)?.value_idx(x);
            match val {
                None => val = Some(v),
                Some(w) if w != v => {
                    return Err(Error::NotANiceMap(format!("μ_g({}) depends on g", self.group().elem(x))))
                }
                _ => {}
            }
        }
        Ok(val.unwrap())
    }

    /// ν(rad′) evaluated with g of order 2 and checked over all such g.
    pub fn value_on_rad_prime(&self, x: usize) -> Result<i8> {
        let grp = self.group();
        let mut val = None;
        for g in self.coset().into_iter().filter(|&g| grp.order_idx(g) == 2) {
            let v = self.mu_g(g)?.value_idx(x);
            match val {
                None => val = Some(v),
                Some(w) if w != v => {
                    return Err(Error::NotANiceMap("ν(rad′) depends on g".into()));
                }
                _ => {}
            }
        }
        val.ok_or_else(|| Error::NotANiceMap("no order-2 element outside K".into()))
    }

    pub fn to_map(&self) -> BTreeMap<String, i8> {
        let g = self.group();
        self.coset().into_iter().map(|t| (g.elem(t).to_string(), self.values[t])).collect()
    }
}

/// All nice maps on ambient ∖ K whose μ_g have polarization β.
pub fn enumerate_nice_maps(ambient: &Subgroup, k: &Subgroup, beta: &Bicharacter) -> Result<Vec<NiceMap>> {
    let g = ambient.group();
    let forms = enumerate_forms(beta, k)?;
    let g0 = ambient
        .indices()
        .iter()
        .copied()
        .find(|&t| !k.contains_idx(t))
        .ok_or_else(|| Error::NotANiceMap("K equals the ambient group".into()))?;
    let mut out = Vec::new();
    for s in [1i8, -1] {
        for mu in &forms {
            let mut values = vec![0i8; g.size()];
            for &kk in k.indices() {
                values[g.mul_idx(g0, kk)] = s * mu.value_idx(kk);
            }
            out.push(NiceMap::new(ambient, k, values)?);
        }
    }
    Ok(out)
}

/// JSON shape {"q": [["0","1/2"],["1/2","0"]]}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BicharacterDoc {
    pub q: Vec<Vec<String>>,
}

impl BicharacterDoc {
    pub fn from_bicharacter(b: &Bicharacter) -> BicharacterDoc {
        BicharacterDoc { q: b.table().iter().map(|r| r.iter().map(fmt_rational).collect()).collect() }
    }

    pub fn to_bicharacter(&self, group: &Group) -> Result<Bicharacter> {
        let q = self
            .q
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Bicharacter::new(group, q)
    }
}

/// JSON shape {"values": {"[0,0]": 1, "[1,0]": -1}}.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FormDoc {
    pub values: BTreeMap<String, i8>,
}

pub(crate) fn parse_element(group: &Group, key: &str) -> Result<GroupElement> {
    let v: Vec<i64> =
        serde_json::from_str(key).map_err(|_| Error::Parse(format!("bad element key {key:?}")))?;
    group.element(&v)
}

impl FormDoc {
    pub fn table(&self, group: &Group) -> Result<Vec<(usize, i8)>> {
        self.values
            .iter()
            .map(|(k, &v)| Ok((group.index(&parse_element(group, k)?), v)))
            .collect()
    }

    /// Form on the subgroup spanned by the listed keys.
    pub fn to_form(&self, group: &Group) -> Result<QuadraticForm> {
        let t = self.table(group)?;
        let dom = Subgroup::from_set(group, t.iter().map(|x| x.0).collect())?;
        let mut values = vec![0i8; group.size()];
        for (i, v) in t {
            values[i] = v;
        }
        QuadraticForm::new(&dom, values)
    }

    pub fn from_map(m: BTreeMap<String, i8>) -> FormDoc {
        FormDoc { values: m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> (Group, Bicharacter) {
        let g = Group::new(&[2, 2]).unwrap();
        let b = Bicharacter::from_minus_pairs(&g, &[(0, 1)]).unwrap();
        (g, b)
    }

    #[test]
    fn polarization_of_split_form() {
        let (g, _) = klein();
        let mu = QuadraticForm::new(&g.whole(), vec![1, 1, 1, -1]).unwrap();
        let b = mu.polarization().unwrap();
        assert_eq!(b.sign(&g.generator(0), &g.generator(1)), -1);
        let one = QuadraticForm::new(&g.whole(), vec![1, 1, 1, 1]).unwrap();
        assert_eq!(one.polarization().unwrap(), Bicharacter::trivial(&g));
    }

    #[test]
    fn rejects_non_forms() {
        let g = Group::new(&[2, 2]).unwrap();
        assert!(QuadraticForm::new(&g.whole(), vec![-1, 1, 1, 1]).is_err());
        let z4 = Group::new(&[4]).unwrap();
        // μ(e)=1, μ(g)=-1, μ(g²)=-1, μ(g³)=-1 has β(g,g) = μ(g²) = -1.
        assert!(QuadraticForm::new(&z4.whole(), vec![1, -1, -1, -1]).is_err());
    }

    #[test]
    fn types() {
        let (_, b) = klein();
        assert_eq!(b.classify_type().unwrap().kind, BetaType::I);
        let z2 = Group::new(&[2]).unwrap();
        let t = Bicharacter::trivial(&z2).classify_type().unwrap();
        assert_eq!(t.kind, BetaType::II);
        assert_eq!(t.f_beta, Some(GroupElement(vec![1])));
        let g = Group::new(&[2, 4]).unwrap();
        let b = Bicharacter::from_minus_pairs(&g, &[(0, 1)]).unwrap();
        let t = b.classify_type().unwrap();
        assert_eq!(t.kind, BetaType::II);
        assert_eq!(t.f_beta, Some(GroupElement(vec![0, 2])));
        assert_eq!(t.rad_prime, Some([GroupElement(vec![1, 0]), GroupElement(vec![1, 2])]));
        let z2c = Group::new(&[2, 2]).unwrap();
        assert_eq!(Bicharacter::trivial(&z2c).classify_type(), Err(Error::NotTypeIorII(4)));
    }

    #[test]
    fn arf_counts() {
        let (g, _) = klein();
        let mu = QuadraticForm::new(&g.whole(), vec![1, 1, 1, -1]).unwrap();
        assert_eq!(mu.arf(), Arf::Plus);
        let h = QuadraticForm::new(&g.whole(), vec![1, -1, -1, -1]).unwrap();
        assert_eq!(h.arf(), Arf::Minus);
        let z2 = Group::new(&[2]).unwrap();
        let c = QuadraticForm::new(&z2.whole(), vec![1, -1]).unwrap();
        assert_eq!(c.arf(), Arf::Undefined);
        assert_eq!(c.arf_by_basis(), Arf::Undefined);
    }

    #[test]
    fn symplectic_bases() {
        let (g, b) = klein();
        let sb = b.symplectic_basis().unwrap();
        assert_eq!(sb.pairs.len(), 1);
        let (x, y) = &sb.pairs[0];
        assert_eq!(b.sign(x, y), -1);
        assert_ne!(*x, g.identity());
        let g = Group::new(&[2, 4]).unwrap();
        let b = Bicharacter::from_minus_pairs(&g, &[(0, 1)]).unwrap();
        let sb = b.symplectic_basis().unwrap();
        let (a, bb) = &sb.pairs[0];
        assert_eq!(g.order(bb).unwrap(), 4);
        assert_eq!(g.pow(bb, 2).unwrap(), GroupElement(vec![0, 2]));
        assert_eq!(b.sign(a, bb), -1);
    }

    #[test]
    fn extensions() {
        let (g, b) = klein();
        let mu = extend_form(&g.whole(), &[(g.generator(0), 1), (g.generator(1), 1)], &b).unwrap();
        assert_eq!(mu.values(), &[1, 1, 1, -1]);
        let z2 = Group::new(&[2]).unwrap();
        let c = extend_form(&z2.whole(), &[(z2.generator(0), -1)], &Bicharacter::trivial(&z2)).unwrap();
        assert_eq!(c.values(), &[1, -1]);
        let g = Group::new(&[2, 4]).unwrap();
        let b = Bicharacter::from_minus_pairs(&g, &[(0, 1)]).unwrap();
        for s0 in [1, -1] {
            for s1 in [1, -1] {
                let e = extend_form(&g.whole(), &[(g.generator(0), s0), (g.generator(1), s1)], &b).unwrap();
                assert_eq!(e.value(&GroupElement(vec![0, 2])), 1);
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        let (_, b) = klein();
        let all = enumerate_forms(&b, &b.group().whole()).unwrap();
        assert_eq!(all.len(), 4);
        assert_eq!(all.iter().filter(|m| m.arf() == Arf::Minus).count(), 1);
        let g4 = Group::new(&[2, 2, 2, 2]).unwrap();
        let b4 = Bicharacter::from_minus_pairs(&g4, &[(0, 1), (2, 3)]).unwrap();
        let all = enumerate_forms(&b4, &g4.whole()).unwrap();
        assert_eq!(all.len(), 16);
        assert_eq!(all.iter().filter(|m| m.arf() == Arf::Plus).count(), 10);
        let z2 = Group::new(&[2]).unwrap();
        assert_eq!(enumerate_forms(&Bicharacter::trivial(&z2), &z2.whole()).unwrap().len(), 2);
    }

    #[test]
    fn agreement() {
        let (g, _) = klein();
        let mu = QuadraticForm::new(&g.whole(), vec![1, 1, 1, -1]).unwrap();
        let eta = QuadraticForm::new(&g.whole(), vec![1, -1, -1, -1]).unwrap();
        let s = mu.agreement_subgroup(&eta).unwrap();
        assert_eq!(s.elements(), vec![GroupElement(vec![0, 0]), GroupElement(vec![1, 1])]);
        assert_eq!(mu.agreement_subgroup(&mu.clone()), Err(Error::FormsEqual));
    }

    #[test]
    fn perp_maps() {
        let (g, b) = klein();
        let p = b.perp(&g.generator(0));
        assert_eq!(p.elements(), vec![GroupElement(vec![0, 0]), GroupElement(vec![1, 0])]);
        assert!(b.perp(&g.identity()).is_whole());
    }

    #[test]
    fn nice_map_basics() {
        let g = Group::new(&[2, 2]).unwrap();
        let k = g.subgroup_generated(&[g.generator(1)]).unwrap();
        let nu = NiceMap::from_fn(&g.whole(), &k, |_| 1).unwrap();
        let mu = nu.mu_g(g.index(&g.generator(0))).unwrap();
        assert_eq!(mu.value(&g.generator(1)), 1);
        assert_eq!(mu.value(&g.identity()), 1);
    }

    #[test]
    fn bicharacter_validation() {
        let g = Group::new(&[2, 4]).unwrap();
        let quarter = Rational64::new(1, 4);
        assert!(Bicharacter::new(&g, vec![vec![0.into(), quarter], vec![-quarter, 0.into()]]).is_err());
        let z4 = Group::new(&[4, 4]).unwrap();
        let b = Bicharacter::new(&z4, vec![vec![0.into(), quarter], vec![-quarter, 0.into()]]).unwrap();
        assert!(!b.is_real());
        assert_eq!(b.rot(&z4.generator(0), &z4.generator(1)), quarter);
    }
}
