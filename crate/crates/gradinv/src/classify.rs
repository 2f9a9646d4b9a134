//! Decision procedures from invariants to labels, and canonical
//! representatives for every label.

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::abgroup::{Group, Subgroup};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{rank, real_nullspace};
use crate::exactalg::matrix::Mat;
use crate::exactalg::{BlockName, CenterKind, GradedAlgebra, Structure};
use crate::forms::{Arf, BetaType, Bicharacter, BicharacterDoc, FormDoc, NiceMap, QuadraticForm};
use crate::involution::{
    centralizer_rep, complex_structure, involution_from_form, involution_from_nice_map, involution_quaternionic,
    leaf, tensor_of_leaves, EClass, InvType, Involution, Kind, Leaf, Profile,
};

/// A family, optionally an item within it, and the size parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassLabel {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub item: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    /// Invariant factors l₁ | l₂ | … for the Pauli family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<u32>>,
}

impl ClassLabel {
    fn new(family: &str, item: Option<String>, n: u64) -> ClassLabel {
        ClassLabel { family: family.into(), item, m: log2_exact(n), n, p: None, profile: None }
    }

    /// Full item name such as "1-b-1" or "2-f-2-0".
    pub fn name(&self) -> String {
        match &self.item {
            Some(i) => format!("{}-{}", self.family, i),
            None => self.family.clone(),
        }
    }

    /// Parses "1-a", "1-b-1" or "2-f-2-0" together with n; the Pauli
    /// family takes its l-profile instead of n.
    pub fn parse(name: &str, n: Option<u64>, profile: Option<Vec<u32>>) -> Result<ClassLabel> {
        let bad = || Error::InvalidLabel(format!("cannot parse label {name:?}"));
        let parts: Vec<&str> = name.split('-').collect();
        if parts.len() < 2 || !matches!(parts[0], "1" | "2" | "3") || parts[1].len() != 1 {
            return Err(bad());
        }
        let family = format!("{}-{}", parts[0], parts[1]);
        let item = if parts.len() > 2 { Some(parts[2..].join("-")) } else { None };
        if family == "2-f" {
            let item = item.ok_or_else(bad)?;
            let (profile, n) = match (profile, n) {
                (Some(p), _) => {
                    let n = p.iter().map(|&l| l as u64).product();
                    (p, n)
                }
                (None, Some(n)) if item.starts_with("1-") => {
                    let m = log2_exact(n).ok_or_else(|| Error::InvalidLabel("n must be a power of 2".into()))?;
                    (vec![2; m as usize], n)
                }
                _ => return Err(Error::InvalidLabel("the Pauli family needs an l-profile".into())),
            };
            let p = match item.as_str() {
                "1-1" | "1-2" => None,
                s if s.starts_with("2-") => Some(s[2..].parse::<u32>().map_err(|_| bad())?),
                _ => return Err(bad()),
            };
            let mut l = ClassLabel::new("2-f", Some(item), n);
            l.p = p;
            l.profile = Some(profile);
            return Ok(l);
        }
        let n = n.ok_or_else(|| Error::InvalidLabel("n is required".into()))?;
        if log2_exact(n).is_none() {
            return Err(Error::InvalidLabel("n must be a power of 2".into()));
        }
        Ok(ClassLabel::new(&family, item, n))
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.name())?;
        match &self.profile {
            Some(p) => write!(f, " l={p:?}"),
            None => write!(f, " n={}", self.n),
        }
    }
}

fn log2_exact(n: u64) -> Option<u32> {
    (n.is_power_of_two()).then(|| n.trailing_zeros())
}

fn isqrt_exact(x: u64) -> Result<u64> {
    let r = (x as f64).sqrt().round() as u64;
    if r * r == x {
        Ok(r)
    } else {
        Err(Error::InvalidDatum(format!("|T| = {x} is not of the expected size")))
    }
}

fn arf_sign(a: Arf) -> Result<i8> {
    a.as_i8().ok_or_else(|| Error::InvalidDatum("Arf invariant is undefined here".into()))
}

/// Commutation signs on a subgroup, with its radical.
struct Signs {
    table: Vec<Vec<i8>>,
    dom: Vec<usize>,
}

impl Signs {
    fn radical_of(&self, sub: &[usize]) -> Vec<usize> {
        sub.iter().copied().filter(|&u| sub.iter().all(|&v| self.table[u][v] == 1)).collect()
    }

    fn radical(&self) -> Vec<usize> {
        self.radical_of(&self.dom)
    }
}

/// Shape of T: elementary, or ℤ₂^k × ℤ₄.
fn has_one_z4(g: &Group) -> bool {
    g.power_subgroup(2).size() == 2 && g.power_subgroup(4).size() == 1
}

// ---------------------------------------------------------------------------
// Gradings

/// Family (1-a)…(1-i) of the triple (T, β, μ), μ given on T_[2].
pub fn classify_grading_data(beta: &Bicharacter, mu: &QuadraticForm) -> Result<ClassLabel> {
    let g = beta.group();
    let t2 = g.torsion_subgroup(2);
    if mu.group() != g || mu.domain().indices() != t2.indices() {
        return Err(Error::InvalidTriple("μ must be defined on T_[2]".into()));
    }
    if !mu.has_polarization(beta) {
        return Err(Error::InvalidTriple("β is not the polarization of μ".into()));
    }
    let info = beta.classify_type().map_err(|e| Error::InvalidTriple(e.to_string()))?;
    let r = g.size().trailing_zeros();
    if !g.size().is_power_of_two() {
        return Err(Error::InvalidTriple("T must be a 2-group".into()));
    }
    let family = if g.is_elementary_2() {
        match info.kind {
            BetaType::I => match mu.arf() {
                Arf::Plus => "1-a",
                _ => "1-b",
            },
            BetaType::II => {
                let f = g.index(info.f_beta.as_ref().expect("type II radical"));
                if mu.value_idx(f) == -1 {
                    "1-c"
                } else if arf_sign(mu.arf())? == 1 {
                    "1-e"
                } else {
                    "1-f"
                }
            }
        }
    } else if has_one_z4(g) {
        if info.kind != BetaType::II || info.f_beta != info.f_t {
            return Err(Error::InvalidTriple("with a ℤ₄ factor the radical of β must be T^[2]".into()));
        }
        let ft = g.index(info.f_t.as_ref().expect("f_T"));
        if mu.value_idx(ft) == -1 {
            "1-d"
        } else {
            let rp = info.rad_prime.as_ref().ok_or_else(|| Error::InvalidTriple("rad′ is missing".into()))?;
            if mu.value(&rp[0]) == -1 {
                "1-i"
            } else if arf_sign(mu.arf())? == 1 {
                "1-g"
            } else {
                "1-h"
            }
        }
    } else {
        return Err(Error::InvalidTriple("T must be ℤ₂^k or ℤ₂^k × ℤ₄".into()));
    };
    let m = match family {
        "1-a" | "1-b" => {
            if !r.is_multiple_of(2) {
                return Err(Error::InvalidTriple("type I needs |T| an even power of 2".into()));
            }
            r / 2
        }
        _ => (r - 1) / 2,
    };
    let floor = match family {
        "1-b" | "1-f" | "1-d" | "1-g" | "1-i" => 1,
        "1-h" => 2,
        _ => 0,
    };
    if m < floor {
        return Err(Error::InvalidTriple(format!("({family}) needs m ≥ {floor}")));
    }
    Ok(ClassLabel::new(family, None, 1u64 << m))
}

/// Grading family of an algebra of any component dimension.
pub fn classify_grading(alg: &GradedAlgebra) -> Result<ClassLabel> {
    match alg.dim_component() {
        1 => {
            let beta = alg.recovered_beta().ok_or_else(|| Error::InvalidDatum("commutation is not scalar".into()))?;
            let mu = alg.recovered_mu().ok_or_else(|| Error::InvalidDatum("squares are not real scalars".into()))?;
            classify_grading_data(&beta, &mu)
        }
        2 if alg.identity_component_central() => {
            let profile = l_profile(alg.group())?;
            let n = profile.iter().map(|&l| l as u64).product();
            let mut l = ClassLabel::new("2-f", None, n);
            l.profile = Some(profile);
            Ok(l)
        }
        2 => {
            let nc = NonCentral::of(alg)?;
            let d = Dim2Datum { k: nc.k.clone(), nu: nc.nu.clone(), branch: None };
            let (family, n, _) = dim2_family(&d, &nc.signs)?;
            Ok(ClassLabel::new(family, None, n))
        }
        4 => {
            let c = QuatData::of(alg)?;
            let lc = classify_grading_data(&c.beta, &c.mu)?;
            let family = quat_family(&lc.family)?;
            Ok(ClassLabel::new(family, None, 2 * lc.n))
        }
        d => Err(Error::WrongComponentDimension(format!("components of dimension {d}"))),
    }
}

// ---------------------------------------------------------------------------
// One-dimensional components

/// Item of (T, β, μ, η) with β_η = β.
pub fn classify_involution_dim1(beta: &Bicharacter, mu: &QuadraticForm, eta: &QuadraticForm) -> Result<ClassLabel> {
    let g = beta.group();
    if eta.group() != g || !eta.domain().is_whole() || !eta.has_polarization(beta) {
        return Err(Error::PolarizationMismatch("η must be a form on T with polarization β".into()));
    }
    let mut label = classify_grading_data(beta, mu)?;
    let info = beta.classify_type()?;
    let agrees = mu.domain().indices().iter().all(|&t| mu.value_idx(t) == eta.value_idx(t));
    let item = match label.family.as_str() {
        "1-a" => {
            if agrees {
                1
            } else if arf_sign(eta.arf())? == 1 {
                2
            } else {
                3
            }
        }
        "1-b" => {
            if agrees {
                1
            } else if arf_sign(eta.arf())? == -1 {
                2
            } else {
                3
            }
        }
        "1-c" => {
            let f = g.index(info.f_beta.as_ref().expect("type II"));
            if agrees {
                1
            } else if eta.value_idx(f) == -1 {
                2
            } else if arf_sign(eta.arf())? == 1 {
                3
            } else {
                4
            }
        }
        "1-d" => {
            let rp = info.rad_prime.as_ref().ok_or_else(|| Error::InvalidDatum("rad′ is missing".into()))?;
            let ft = g.index(info.f_t.as_ref().expect("f_T"));
            if eta.value_idx(ft) != 1 {
                return Err(Error::InvalidDatum("η(f_T) must be +1".into()));
            }
            match (eta.value(&rp[0]), arf_sign(eta.arf())?) {
                (1, 1) => 1,
                (1, _) => 2,
                (_, 1) => 3,
                _ => 4,
            }
        }
        f => {
            return Err(Error::SecondKindImpossible(format!(
                "({f}) has center ℝ×ℝ; use the semisimple classifier"
            )))
        }
    };
    label.item = Some(item.to_string());
    check_floor(&label)?;
    Ok(label)
}

fn check_floor(label: &ClassLabel) -> Result<()> {
    let spec = item_spec(&label.family, label.item.as_deref().unwrap_or(""))?;
    if label.n < spec.min_n {
        return Err(Error::InvalidDatum(format!("({}) needs n ≥ {}", label.name(), spec.min_n)));
    }
    Ok(())
}

fn scalar_sign(a: &Mat) -> Option<i8> {
    let id = Mat::identity(a.rows(), a.conductor());
    if *a == id {
        Some(1)
    } else if *a == id.neg() {
        Some(-1)
    } else {
        None
    }
}

/// η read off from an involution acting by scalars on the listed degrees.
fn eta_from_action(inv: &Involution, dom: &Subgroup) -> Result<QuadraticForm> {
    let g = inv.algebra().group();
    let mut vals = vec![0i8; g.size()];
    for &t in dom.indices() {
        vals[t] = scalar_sign(inv.action(t))
            .ok_or_else(|| Error::InvalidDatum(format!("φ is not ±1 on degree {}", g.elem(t))))?;
    }
    QuadraticForm::new(dom, vals)
}

// ---------------------------------------------------------------------------
// Two-dimensional components, identity component a non-central ℂ

/// Data of the non-central case: K, ν when T is elementary, and either η on
/// K (φ fixes J) or ω on T ∖ K (φ negates J). Without a branch only the
/// family is determined.
#[derive(Clone, Debug)]
pub struct Dim2Datum {
    pub k: Subgroup,
    pub nu: Option<NiceMap>,
    pub branch: Option<Dim2Branch>,
}

#[derive(Clone, Debug)]
pub enum Dim2Branch {
    Eta(QuadraticForm),
    Omega(NiceMap),
}

struct NonCentral {
    k: Subgroup,
    nu: Option<NiceMap>,
    signs: Signs,
}

impl NonCentral {
    fn of(alg: &GradedAlgebra) -> Result<NonCentral> {
        let (_, k) = complex_structure(alg)?;
        let g = alg.group();
        let signs = sign_table(g, k.indices(), &|t| alg.rep(t).clone())?;
        let nu = if g.is_elementary_2() {
            let mut vals = vec![0i8; g.size()];
            for t in k.complement() {
                let x = alg.rep(t);
                let s = x.mul(x).scalar_value().ok_or_else(|| Error::InvalidDatum("X_g² is not scalar".into()))?;
                vals[t] = s.real_sign()?;
            }
            Some(NiceMap::new(&g.whole(), &k, vals)?)
        } else {
            None
        };
        Ok(NonCentral { k, nu, signs })
    }
}

fn sign_table(g: &Group, dom: &[usize], reps: &dyn Fn(usize) -> Mat) -> Result<Signs> {
    let mut table = vec![vec![0i8; g.size()]; g.size()];
    let r: Vec<(usize, Mat)> = dom.iter().map(|&t| (t, reps(t))).collect();
    for (u, x) in &r {
        for (v, y) in &r {
            let xy = x.mul(y);
            let yx = y.mul(x);
            table[*u][*v] = if xy == yx {
                1
            } else if xy == yx.neg() {
                -1
            } else {
                return Err(Error::InvalidDatum("commutation on K is not ±1".into()));
            };
        }
    }
    Ok(Signs { table, dom: dom.to_vec() })
}

fn signs_from_branch(d: &Dim2Datum) -> Result<Signs> {
    let g = d.k.group();
    let form = match &d.branch {
        Some(Dim2Branch::Eta(eta)) => eta.clone(),
        Some(Dim2Branch::Omega(om)) => om.mu_g(om.coset()[0])?,
        None => match &d.nu {
            Some(nu) => nu.mu_g(nu.coset()[0])?,
            None => return Err(Error::InvalidDatum("need ν, η or ω to recover β on K".into())),
        },
    };
    let dom = d.k.indices().to_vec();
    let mut table = vec![vec![0i8; g.size()]; g.size()];
    for &u in &dom {
        for &v in &dom {
            table[u][v] = form.pol_idx(u, v);
        }
    }
    Ok(Signs { table, dom })
}

/// Family, n and the special element (f_β or rad′) of the datum.
fn dim2_family(d: &Dim2Datum, signs: &Signs) -> Result<(&'static str, u64, Option<usize>)> {
    let g = d.k.group();
    if d.k.size() * 2 != g.size() {
        return Err(Error::InvalidDatum("K must have index 2".into()));
    }
    let rad = signs.radical();
    let size = g.size() as u64;
    if g.is_elementary_2() {
        let nu = d.nu.as_ref().ok_or_else(|| Error::InvalidDatum("ν is required when T is elementary".into()))?;
        match rad.len() {
            1 => {
                let fam = if arf_sign(nu.arf())? == 1 { "2-a" } else { "2-b" };
                Ok((fam, isqrt_exact(2 * size)?, None))
            }
            2 => {
                if nu.value_on_radical(rad[1])? != -1 {
                    return Err(Error::SecondKindImpossible(
                        "ν(f_β) = +1 gives center ℝ×ℝ; use the semisimple classifier".into(),
                    ));
                }
                Ok(("2-c", isqrt_exact(size)?, Some(rad[1])))
            }
            r => Err(Error::NotTypeIorII(r)),
        }
    } else if has_one_z4(g) {
        let t2 = g.torsion_subgroup(2);
        let n = isqrt_exact(size)?;
        if d.k.indices() == t2.indices() {
            Ok(("2-e", n, None))
        } else {
            let k2: Vec<usize> = d.k.indices().iter().copied().filter(|&x| t2.contains_idx(x)).collect();
            let rp = signs
                .radical_of(&k2)
                .into_iter()
                .find(|x| !rad.contains(x))
                .ok_or_else(|| Error::InvalidDatum("rad′ is empty".into()))?;
            Ok(("2-d", n, Some(rp)))
        }
    } else {
        Err(Error::InvalidDatum("T must be ℤ₂^k or ℤ₂^k × ℤ₄".into()))
    }
}

fn same_map(a: &NiceMap, b: &NiceMap) -> bool {
    a.coset().iter().all(|&t| a.value_idx(t) == b.value_idx(t))
}

/// Item of a datum with a non-central two-dimensional identity component.
pub fn classify_involution_dim2_noncomplex(d: &Dim2Datum) -> Result<ClassLabel> {
    let signs = signs_from_branch(d)?;
    let (family, n, special) = dim2_family(d, &signs)?;
    let branch = d.branch.as_ref().ok_or_else(|| Error::InvalidDatum("η or ω is required".into()))?;
    let nu = d.nu.as_ref();
    let item = match branch {
        Dim2Branch::Eta(eta) => {
            if eta.domain().indices() != d.k.indices() {
                return Err(Error::InvalidDatum("η must live on K".into()));
            }
            match family {
                "2-a" | "2-e" => {
                    if arf_sign(eta.arf())? == 1 {
                        1
                    } else {
                        2
                    }
                }
                "2-b" => {
                    if arf_sign(eta.arf())? == -1 {
                        1
                    } else {
                        2
                    }
                }
                "2-c" => {
                    if eta.value_idx(special.expect("f_β")) == -1 {
                        1
                    } else if arf_sign(eta.arf())? == 1 {
                        2
                    } else {
                        3
                    }
                }
                _ => match (eta.value_idx(special.expect("rad′")), arf_sign(eta.arf())?) {
                    (1, 1) => 1,
                    (1, _) => 2,
                    (_, 1) => 3,
                    _ => 4,
                },
            }
        }
        Dim2Branch::Omega(om) => {
            if om.k().indices() != d.k.indices() {
                return Err(Error::InvalidDatum("ω must live on T ∖ K".into()));
            }
            let nu_eq = nu.map(|v| same_map(om, v)).unwrap_or(false);
            let nu_neg = nu.map(|v| same_map(om, &v.neg())).unwrap_or(false);
            match family {
                "2-a" | "2-b" => {
                    let good = if family == "2-a" { 1 } else { -1 };
                    if nu_eq {
                        3
                    } else if nu_neg {
                        5
                    } else if arf_sign(om.arf())? == good {
                        4
                    } else {
                        6
                    }
                }
                "2-c" => {
                    if nu_eq {
                        4
                    } else if nu_neg {
                        5
                    } else if om.value_on_radical(special.expect("f_β"))? == -1 {
                        6
                    } else if arf_sign(om.arf())? == 1 {
                        7
                    } else {
                        8
                    }
                }
                "2-e" => {
                    if arf_sign(om.arf())? == 1 {
                        3
                    } else {
                        4
                    }
                }
                _ => match (om.value_on_rad_prime(special.expect("rad′"))?, arf_sign(om.arf())?) {
                    (1, 1) => 5,
                    (1, _) => 6,
                    (_, 1) => 7,
                    _ => 8,
                },
            }
        }
    };
    let label = ClassLabel::new(family, Some(item.to_string()), n);
    check_floor(&label)?;
    Ok(label)
}

fn dim2_datum_of(inv: &Involution) -> Result<Dim2Datum> {
    let alg = inv.algebra();
    let (j, k) = complex_structure(alg)?;
    let nc = NonCentral::of(alg)?;
    let g = alg.group();
    let branch = match inv.eigenvalue_of(0, &j) {
        Some(1) => Dim2Branch::Eta(eta_from_action(inv, &k)?),
        Some(_) => {
            let mut vals = vec![0i8; g.size()];
            for t in k.complement() {
                vals[t] = scalar_sign(inv.action(t))
                    .ok_or_else(|| Error::InvalidDatum(format!("φ is not ±1 on degree {}", g.elem(t))))?;
            }
            Dim2Branch::Omega(NiceMap::new(&g.whole(), &k, vals)?)
        }
        None => return Err(Error::InvalidDatum("φ(J) ≠ ±J".into())),
    };
    Ok(Dim2Datum { k, nu: nc.nu, branch: Some(branch) })
}

// ---------------------------------------------------------------------------
// Two-dimensional components over a central ℂ

/// Invariant factors l₁ | l₂ | … with T ≅ ⊕ ℤ_{l_i}².
pub fn l_profile(g: &Group) -> Result<Vec<u32>> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &o in g.orders() {
        let mut x = o;
        let mut p = 2;
        while x > 1 {
            if x % p == 0 {
                let mut e = 0;
                while x % p == 0 {
                    x /= p;
                    e += 1;
                }
                by_prime.entry(p).or_default().push(e);
            }
            p += 1;
        }
    }
    let mut halves: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (p, mut es) in by_prime {
        es.sort_unstable_by(|a, b| b.cmp(a));
        if es.len() % 2 != 0 || es.chunks(2).any(|c| c[0] != c[1]) {
            return Err(Error::InvalidDatum("T is not of the form ⊕ ℤ_l²".into()));
        }
        halves.insert(p, es.chunks(2).map(|c| c[0]).collect());
    }
    let r = halves.values().map(|v| v.len()).max().unwrap_or(0);
    let mut out: Vec<u32> = (0..r)
        .map(|j| halves.iter().map(|(&p, es)| es.get(j).map_or(1, |&e| p.pow(e))).product())
        .collect();
    out.reverse();
    Ok(out)
}

/// S = { t ∈ T_[2] : the φ-fixed X in D_t has X² > 0 }.
pub fn compute_s(inv: &Involution) -> Result<Subgroup> {
    let alg = inv.algebra();
    let g = alg.group();
    let t2 = g.torsion_subgroup(2);
    let mut s = Vec::new();
    for &t in t2.indices() {
        let a = inv.action(t);
        let shifted = a.sub(&Mat::identity(a.rows(), a.conductor())).transpose();
        let ns = real_nullspace(&shifted)?;
        let c = ns.first().ok_or_else(|| Error::InvalidDatum("no φ-fixed element".into()))?;
        let x = alg.combine(t, c);
        let sq = x.mul(&x).scalar_value().ok_or_else(|| Error::InvalidDatum("X² is not scalar".into()))?;
        let r = sq.rational_value().ok_or_else(|| Error::InvalidDatum("X² is not real".into()))?;
        if r > Rational64::from_integer(0) {
            s.push(t);
        }
    }
    Subgroup::from_set(g, s)
}

/// p = 0 when S = T_[2]; otherwise the p ≥ 1 at which S stops containing
/// all 2^p-th powers of elements of order 2^{p+1}.
pub fn compute_p(g: &Group, s: &Subgroup) -> Result<u32> {
    let t2 = g.torsion_subgroup(2);
    if s.indices() == t2.indices() {
        return Ok(0);
    }
    for p in 1..32u32 {
        let q = 1i64 << p;
        let forced = (0..g.size())
            .filter(|&t| g.order_idx(t) as i64 == 2 * q)
            .all(|t| s.contains_idx(g.pow_idx(t, q)));
        let witness =
            (0..g.size()).filter(|&t| g.order_idx(t) as i64 == q).any(|t| !s.contains_idx(g.pow_idx(t, q / 2)));
        if forced && witness {
            return Ok(p);
        }
        if q > g.exponent() as i64 {
            break;
        }
    }
    Err(Error::InvalidDatum("S does not determine a level p".into()))
}

/// Data of the ℂ-central case.
#[derive(Clone, Debug)]
pub enum ComplexDatum {
    First(QuadraticForm),
    Second(Subgroup),
}

pub fn classify_involution_dim2_complex(g: &Group, d: &ComplexDatum) -> Result<ClassLabel> {
    let profile = l_profile(g)?;
    let n: u64 = profile.iter().map(|&l| l as u64).product();
    let mut label = ClassLabel::new("2-f", None, n);
    match d {
        ComplexDatum::First(eta) => {
            if !g.is_elementary_2() {
                return Err(Error::InvalidDatum("first kind needs all l_i = 2".into()));
            }
            if !eta.domain().is_whole() {
                return Err(Error::InvalidDatum("η must be defined on T".into()));
            }
            let item = if arf_sign(eta.arf())? == 1 { "1-1" } else { "1-2" };
            if item == "1-2" && n < 2 {
                return Err(Error::InvalidDatum("(2-f-1-2) needs n ≥ 2".into()));
            }
            label.item = Some(item.into());
        }
        ComplexDatum::Second(s) => {
            let p = compute_p(g, s)?;
            label.item = Some(format!("2-{p}"));
            label.p = Some(p);
        }
    }
    label.profile = Some(profile);
    Ok(label)
}

fn complex_datum_of(inv: &Involution) -> Result<ComplexDatum> {
    match inv.kind()? {
        Kind::First => {
            let g = inv.algebra().group();
            Ok(ComplexDatum::First(eta_from_action(inv, &g.whole())?))
        }
        Kind::Second => Ok(ComplexDatum::Second(compute_s(inv)?)),
    }
}

// ---------------------------------------------------------------------------
// Quaternionic identity component

struct QuatData {
    reps: Vec<Mat>,
    beta: Bicharacter,
    mu: QuadraticForm,
}

impl QuatData {
    fn of(alg: &GradedAlgebra) -> Result<QuatData> {
        let g = alg.group();
        let mut reps = Vec::with_capacity(g.size());
        for t in 0..g.size() {
            reps.push(centralizer_rep(alg, t)?.ok_or_else(|| Error::InvalidDatum("empty centralizer".into()))?);
        }
        // β in the centre of the centralizer, identified with ℂ through the
        // first commutator that squares to −1
        let gens: Vec<usize> = g.generators().iter().map(|x| g.index(x)).collect();
        let n = alg.matrix_size();
        let cond = alg.conductor();
        let one = Mat::identity(n, cond);
        let mut unit_i: Option<Mat> = None;
        let mut q = vec![vec![Rational64::from_integer(0); gens.len()]; gens.len()];
        for (a, &u) in gens.iter().enumerate() {
            for (b, &v) in gens.iter().enumerate() {
                let (x, y) = (&reps[u], &reps[v]);
                let r = x.mul(y).mul(&y.mul(x).inverse()?);
                q[a][b] = if r == one {
                    Rational64::from_integer(0)
                } else if r == one.neg() {
                    Rational64::new(1, 2)
                } else if r.mul(&r) == one.neg() {
                    let i = unit_i.get_or_insert_with(|| r.clone());
                    if r == *i {
                        Rational64::new(1, 4)
                    } else if r == i.neg() {
                        Rational64::new(3, 4)
                    } else {
                        return Err(Error::InvalidDatum("commutators span more than ℂ".into()));
                    }
                } else {
                    return Err(Error::InvalidDatum("commutator is not a fourth root of unity".into()));
                };
            }
        }
        let beta = Bicharacter::new(g, q)?;
        let t2 = g.torsion_subgroup(2);
        let mut vals = vec![0i8; g.size()];
        for &t in t2.indices() {
            let sq = reps[t].mul(&reps[t]).scalar_value().ok_or_else(|| Error::InvalidDatum("Y² not scalar".into()))?;
            vals[t] = sq.real_sign()?;
        }
        let mu = QuadraticForm::new(&t2, vals)?;
        Ok(QuatData { reps, beta, mu })
    }
}

/// Centralizer representatives, β and μ of a quaternionic algebra.
pub(crate) fn centralizer_data(alg: &GradedAlgebra) -> Result<(Vec<Mat>, Bicharacter, QuadraticForm)> {
    let q = QuatData::of(alg)?;
    Ok((q.reps, q.beta, q.mu))
}

/// ν of a non-central algebra whose T is elementary.
pub(crate) fn square_signs(alg: &GradedAlgebra) -> Result<Option<NiceMap>> {
    Ok(NonCentral::of(alg)?.nu)
}

fn quat_family(dim1: &str) -> Result<&'static str> {
    Ok(match dim1 {
        "1-b" => "3-a",
        "1-a" => "3-b",
        "1-c" => "3-c",
        "1-d" => "3-d",
        f => return Err(Error::InvalidDatum(format!("centralizer of family ({f}) does not occur"))),
    })
}

/// Item from the centralizer data (β, μ, η) and the class on D_e.
pub fn classify_involution_dim4(
    beta: &Bicharacter,
    mu: &QuadraticForm,
    eta: &QuadraticForm,
    e_class: EClass,
) -> Result<ClassLabel> {
    let c = classify_involution_dim1(beta, mu, eta)?;
    let family = quat_family(&c.family)?;
    let mut item: u32 = c.item.as_deref().unwrap_or("0").parse().expect("numeric item");
    if e_class == EClass::Orthogonal {
        item += if matches!(family, "3-a" | "3-b") { 3 } else { 4 };
    }
    let label = ClassLabel::new(family, Some(item.to_string()), 2 * c.n);
    check_floor(&label)?;
    Ok(label)
}

fn e_class_of(inv: &Involution) -> Result<EClass> {
    let a = inv.action(0);
    let fixed = a.rows() - rank(&a.sub(&Mat::identity(a.rows(), a.conductor())));
    match fixed {
        1 => Ok(EClass::Conjugation),
        3 => Ok(EClass::Orthogonal),
        k => Err(Error::InvalidDatum(format!("φ fixes a {k}-dimensional part of D_e"))),
    }
}

// ---------------------------------------------------------------------------
// Dispatch

/// Label of a realized involution on a central simple graded-division algebra.
pub fn classify_involution(inv: &Involution) -> Result<ClassLabel> {
    let alg = inv.algebra();
    if alg.center_kind()? == CenterKind::Split {
        return Err(Error::SecondKindImpossible("center ℝ×ℝ: use the semisimple classifier".into()));
    }
    match alg.dim_component() {
        1 => {
            let beta = alg.recovered_beta().ok_or_else(|| Error::InvalidDatum("commutation is not scalar".into()))?;
            let mu = alg.recovered_mu().ok_or_else(|| Error::InvalidDatum("squares are not real scalars".into()))?;
            let eta = eta_from_action(inv, &alg.group().whole())?;
            classify_involution_dim1(&beta, &mu, &eta)
        }
        2 if alg.identity_component_central() => classify_involution_dim2_complex(alg.group(), &complex_datum_of(inv)?),
        2 => classify_involution_dim2_noncomplex(&dim2_datum_of(inv)?),
        4 => {
            let q = QuatData::of(alg)?;
            let g = alg.group();
            let mut vals = vec![0i8; g.size()];
            for t in 0..g.size() {
                vals[t] = inv
                    .eigenvalue_of(t, &q.reps[t])
                    .ok_or_else(|| Error::InvalidDatum("φ does not preserve the centralizer line".into()))?;
            }
            let eta = QuadraticForm::new(&g.whole(), vals)?;
            classify_involution_dim4(&q.beta, &q.mu, &eta, e_class_of(inv)?)
        }
        d => Err(Error::WrongComponentDimension(format!("components of dimension {d}"))),
    }
}

// ---------------------------------------------------------------------------
// Semisimple case: center ℝ×ℝ, φ swapping the factors

#[derive(Clone, Debug)]
pub enum SemisimpleDatum {
    /// (T, μ, η) with μ(f_β) = +1 and η(f_β) = −1.
    Dim1 { mu: QuadraticForm, eta: QuadraticForm },
    /// (T, K, ν) with ν(f_β) = +1, and η(f_β) = −1 or ω(f_β) = −1.
    Dim2 { nu: NiceMap, branch: Dim2Branch },
    /// Centralizer data (T, μ, η) as in the one-dimensional case.
    Dim4 { mu: QuadraticForm, eta: QuadraticForm },
}

/// Isomorphism class of the underlying algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemisimpleClass {
    pub structure: Structure,
    pub algebra: String,
    pub n: u64,
    pub dim_component: usize,
}

fn semisimple_rank(g: &Group) -> Result<u32> {
    if !g.is_elementary_2() {
        return Err(Error::SecondKindImpossible("a ℤ₄ factor in T rules out a swapping involution".into()));
    }
    Ok(g.size().trailing_zeros())
}

fn split_dim1(mu: &QuadraticForm, eta: &QuadraticForm) -> Result<(i8, u32)> {
    let g = mu.group();
    let r = semisimple_rank(g)?;
    if !mu.domain().is_whole() || !eta.domain().is_whole() || !eta.same_polarization(mu) {
        return Err(Error::InvalidDatum("μ and η must be forms on T with the same polarization".into()));
    }
    let beta = mu.polarization()?;
    let info = beta.classify_type()?;
    let f = match (info.kind, info.f_beta) {
        (BetaType::II, Some(f)) => g.index(&f),
        _ => return Err(Error::InvalidDatum("β must have type II".into())),
    };
    if mu.value_idx(f) != 1 || eta.value_idx(f) != -1 {
        return Err(Error::InvalidDatum("need μ(f_β) = +1 and η(f_β) = −1".into()));
    }
    Ok((arf_sign(mu.arf())?, (r - 1) / 2))
}

pub fn classify_semisimple(d: &SemisimpleDatum) -> Result<SemisimpleClass> {
    let (arf, m, dim, quat_e) = match d {
        SemisimpleDatum::Dim1 { mu, eta } => {
            let (a, m) = split_dim1(mu, eta)?;
            (a, m, 1, false)
        }
        SemisimpleDatum::Dim4 { mu, eta } => {
            let (a, m) = split_dim1(mu, eta)?;
            (a, m + 1, 4, true)
        }
        SemisimpleDatum::Dim2 { nu, branch } => {
            let g = nu.group();
            let r = semisimple_rank(g)?;
            let k = nu.k();
            let beta_form = nu.mu_g(nu.coset()[0])?;
            let rad: Vec<usize> = k
                .indices()
                .iter()
                .copied()
                .filter(|&u| k.indices().iter().all(|&v| beta_form.pol_idx(u, v) == 1))
                .collect();
            if rad.len() != 2 {
                return Err(Error::InvalidDatum("β on K must have type II".into()));
            }
            let f = rad[1];
            if nu.value_on_radical(f)? != 1 {
                return Err(Error::InvalidDatum("need ν(f_β) = +1".into()));
            }
            let swapped = match branch {
                Dim2Branch::Eta(eta) => eta.value_idx(f) == -1,
                Dim2Branch::Omega(om) => om.value_on_radical(f)? == -1,
            };
            if !swapped {
                return Err(Error::InvalidDatum("need η(f_β) = −1 or ω(f_β) = −1".into()));
            }
            (arf_sign(nu.arf())?, r / 2, 2, false)
        }
    };
    let n = 1u64 << m;
    let real = (arf == 1) != quat_e;
    let structure = if real { Structure::MatRealPair(n as usize) } else { Structure::MatQuatPair(n as usize) };
    Ok(SemisimpleClass { structure, algebra: structure.to_string(), n, dim_component: dim })
}

/// Semisimple class of a realized involution with one-dimensional
/// components and center ℝ×ℝ.
pub fn classify_semisimple_involution(inv: &Involution) -> Result<SemisimpleClass> {
    let alg = inv.algebra();
    if alg.center_kind()? != CenterKind::Split {
        return Err(Error::InvalidDatum("center is not ℝ×ℝ".into()));
    }
    if inv.kind()? != Kind::Second {
        return Err(Error::InvalidDatum("φ must swap the two factors".into()));
    }
    if alg.dim_component() != 1 {
        return Err(Error::WrongComponentDimension("only one-dimensional components are realized".into()));
    }
    let mu = alg.recovered_mu().ok_or_else(|| Error::InvalidDatum("squares are not real scalars".into()))?;
    let g = alg.group();
    let eta = eta_from_action(inv, &g.whole())?;
    classify_semisimple(&SemisimpleDatum::Dim1 { mu, eta })
}

// ---------------------------------------------------------------------------
// Items and canonical representatives

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sig {
    N,
    Half,
    Zero,
}

#[derive(Clone, Copy, Debug)]
struct ItemSpec {
    family: &'static str,
    item: &'static str,
    head: Option<&'static str>,
    tail: &'static [&'static str],
    kind: Kind,
    ty: Option<InvType>,
    sig: Sig,
    min_n: u64,
}

const O: Option<InvType> = Some(InvType::Orthogonal);
const S: Option<InvType> = Some(InvType::Symplectic);
const F: Kind = Kind::First;
const SK: Kind = Kind::Second;

macro_rules! it {
    ($f:expr, $i:expr, $h:expr, [$($t:expr),*], $k:expr, $ty:expr, $s:ident, $n:expr) => {
        ItemSpec { family: $f, item: $i, head: $h, tail: &[$($t),*], kind: $k, ty: $ty, sig: Sig::$s, min_n: $n }
    };
}

const ITEMS: &[ItemSpec] = &[
    it!("1-a", "1", None, [], F, O, N, 1),
    it!("1-a", "2", None, ["1-a-2"], F, O, Zero, 2),
    it!("1-a", "3", None, ["1-a-3"], F, S, Zero, 2),
    it!("1-b", "1", None, ["1-b-1"], F, S, Half, 2),
    it!("1-b", "2", None, ["1-a-2", "1-b-1"], F, S, Zero, 4),
    it!("1-b", "3", None, ["1-b-3"], F, O, Zero, 2),
    it!("1-c", "1", None, ["1-c-1"], SK, None, N, 1),
    it!("1-c", "2", None, ["1-a-2", "1-c-1"], SK, None, Zero, 2),
    it!("1-c", "3", None, ["1-c-3"], F, O, Zero, 1),
    it!("1-c", "4", None, ["1-a-3", "1-c-3"], F, S, Zero, 2),
    it!("1-d", "1", None, ["1-d-1"], F, O, Zero, 2),
    it!("1-d", "2", None, ["1-a-3", "1-d-1"], F, S, Zero, 4),
    it!("1-d", "3", None, ["1-d-3"], F, O, Zero, 2),
    it!("1-d", "4", None, ["1-d-4"], F, S, Zero, 2),
    it!("2-a", "1", Some("2-a-1"), [], F, O, Zero, 2),
    it!("2-a", "2", Some("2-a-1"), ["1-a-3"], F, S, Zero, 4),
    it!("2-a", "3", Some("2-a-3"), [], F, O, N, 2),
    it!("2-a", "4", Some("2-a-3"), ["1-a-2"], F, O, Zero, 4),
    it!("2-a", "5", Some("2-a-5"), [], F, S, Zero, 2),
    it!("2-a", "6", Some("2-a-5"), ["1-a-2"], F, S, Zero, 4),
    it!("2-b", "1", Some("2-b-2"), ["1-a-3"], F, S, Zero, 4),
    it!("2-b", "2", Some("2-b-2"), [], F, O, Zero, 2),
    it!("2-b", "3", Some("2-b-3"), [], F, S, Half, 2),
    it!("2-b", "4", Some("2-b-3"), ["1-a-2"], F, S, Zero, 4),
    it!("2-b", "5", Some("2-b-5"), [], F, O, Zero, 2),
    it!("2-b", "6", Some("2-b-5"), ["1-a-2"], F, O, Zero, 4),
    it!("2-c", "1", Some("2-a-1"), ["1-c-1"], SK, None, Zero, 2),
    it!("2-c", "2", Some("2-a-1"), ["1-c-3"], F, O, Zero, 2),
    it!("2-c", "3", Some("2-a-1"), ["1-a-3", "1-c-3"], F, S, Zero, 4),
    it!("2-c", "4", Some("2-a-3"), ["1-c-1"], SK, None, N, 2),
    it!("2-c", "5", Some("2-a-5"), ["1-c-1"], SK, None, Zero, 2),
    it!("2-c", "6", Some("2-a-3"), ["1-a-2", "1-c-1"], SK, None, Zero, 4),
    it!("2-c", "7", Some("2-a-3"), ["1-c-3"], F, O, Zero, 2),
    it!("2-c", "8", Some("2-a-5"), ["1-c-3"], F, S, Zero, 2),
    it!("2-d", "1", Some("2-a-1"), ["1-d-1"], F, O, Zero, 4),
    it!("2-d", "2", Some("2-a-1"), ["1-a-3", "1-d-1"], F, S, Zero, 8),
    it!("2-d", "3", Some("2-a-1"), ["1-d-3"], F, O, Zero, 4),
    it!("2-d", "4", Some("2-a-1"), ["1-d-4"], F, S, Zero, 4),
    it!("2-d", "5", Some("2-a-3"), ["1-d-1"], F, O, Zero, 4),
    it!("2-d", "6", Some("2-a-3"), ["1-a-3", "1-d-1"], F, S, Zero, 8),
    it!("2-d", "7", Some("2-a-3"), ["1-d-3"], F, O, Zero, 4),
    it!("2-d", "8", Some("2-a-3"), ["1-d-4"], F, S, Zero, 4),
    it!("2-e", "1", Some("2-e-1"), [], F, O, Zero, 2),
    it!("2-e", "2", Some("2-e-1"), ["1-a-3"], F, S, Zero, 4),
    it!("2-e", "3", Some("2-e-3"), [], F, O, Zero, 2),
    it!("2-e", "4", Some("2-e-4"), [], F, S, Zero, 2),
    it!("3-a", "1", Some("3-b-1"), ["1-b-1"], F, O, N, 4),
    it!("3-a", "2", Some("3-b-1"), ["1-a-2", "1-b-1"], F, O, Zero, 8),
    it!("3-a", "3", Some("3-b-1"), ["1-b-3"], F, S, Zero, 4),
    it!("3-a", "4", Some("3-b-4"), ["1-b-1"], F, S, Zero, 4),
    it!("3-a", "5", Some("3-b-4"), ["1-a-2", "1-b-1"], F, S, Zero, 8),
    it!("3-a", "6", Some("3-b-4"), ["1-b-3"], F, O, Zero, 4),
    it!("3-b", "1", Some("3-b-1"), [], F, S, Half, 2),
    it!("3-b", "2", Some("3-b-1"), ["1-a-2"], F, S, Zero, 4),
    it!("3-b", "3", Some("3-b-1"), ["1-a-3"], F, O, Zero, 4),
    it!("3-b", "4", Some("3-b-4"), [], F, O, Zero, 2),
    it!("3-b", "5", Some("3-b-4"), ["1-a-2"], F, O, Zero, 4),
    it!("3-b", "6", Some("3-b-4"), ["1-a-3"], F, S, Zero, 4),
    it!("3-c", "1", Some("3-b-1"), ["1-c-1"], SK, None, N, 2),
    it!("3-c", "2", Some("3-b-1"), ["1-a-2", "1-c-1"], SK, None, Zero, 4),
    it!("3-c", "3", Some("3-b-1"), ["1-c-3"], F, S, Zero, 2),
    it!("3-c", "4", Some("3-b-1"), ["1-a-3", "1-c-3"], F, O, Zero, 4),
    it!("3-c", "5", Some("3-b-4"), ["1-c-1"], SK, None, Zero, 2),
    it!("3-c", "6", Some("3-b-4"), ["1-a-2", "1-c-1"], SK, None, Zero, 4),
    it!("3-c", "7", Some("3-b-4"), ["1-c-3"], F, O, Zero, 2),
    it!("3-c", "8", Some("3-b-4"), ["1-a-3", "1-c-3"], F, S, Zero, 4),
    it!("3-d", "1", Some("3-b-1"), ["1-d-1"], F, S, Zero, 4),
    it!("3-d", "2", Some("3-b-1"), ["1-a-3", "1-d-1"], F, O, Zero, 8),
    it!("3-d", "3", Some("3-b-1"), ["1-d-3"], F, S, Zero, 4),
    it!("3-d", "4", Some("3-b-1"), ["1-d-4"], F, O, Zero, 4),
    it!("3-d", "5", Some("3-b-4"), ["1-d-1"], F, O, Zero, 4),
    it!("3-d", "6", Some("3-b-4"), ["1-a-3", "1-d-1"], F, S, Zero, 8),
    it!("3-d", "7", Some("3-b-4"), ["1-d-3"], F, O, Zero, 4),
    it!("3-d", "8", Some("3-b-4"), ["1-d-4"], F, S, Zero, 4),
];

fn item_spec(family: &str, item: &str) -> Result<&'static ItemSpec> {
    ITEMS
        .iter()
        .find(|s| s.family == family && s.item == item)
        .ok_or_else(|| Error::InvalidLabel(format!("no item ({family}-{item})")))
}

fn block_of(name: &str) -> Result<BlockName> {
    Ok(match &name[..3] {
        "1-a" => BlockName::M2R,
        "1-b" => BlockName::Quaternion,
        "1-c" => BlockName::Complex,
        "1-d" => BlockName::M2C,
        "2-a" => BlockName::M2RCoarse,
        "2-b" => BlockName::QuatCoarse,
        "2-e" => BlockName::M2CCoarse,
        "3-b" => BlockName::QuatTrivial,
        _ => return Err(Error::InvalidLabel(format!("no block for {name}"))),
    })
}

fn log2_size(b: BlockName) -> u32 {
    match b {
        BlockName::Complex | BlockName::Real | BlockName::ComplexTrivial | BlockName::Split => 0,
        _ => 1,
    }
}

/// Kind, type and signature listed for a label.
pub fn expected_profile(label: &ClassLabel) -> Result<Profile> {
    if label.family == "2-f" {
        let item = label.item.as_deref().unwrap_or("");
        let profile = label.profile.clone().unwrap_or_default();
        return Ok(match item {
            "1-1" => Profile { kind: Kind::First, inv_type: O, signature: 0 },
            "1-2" => Profile { kind: Kind::First, inv_type: S, signature: 0 },
            "2-0" => {
                let even = profile.iter().filter(|&&l| l % 2 == 0).count();
                Profile { kind: Kind::Second, inv_type: None, signature: 1 << even }
            }
            _ => Profile { kind: Kind::Second, inv_type: None, signature: 0 },
        });
    }
    let spec = item_spec(&label.family, label.item.as_deref().unwrap_or(""))?;
    let signature = match spec.sig {
        Sig::N => label.n,
        Sig::Half => label.n / 2,
        Sig::Zero => 0,
    };
    Ok(Profile { kind: spec.kind, inv_type: spec.ty, signature })
}

/// Leaves of the canonical representative of a label.
pub fn representative_leaves(label: &ClassLabel) -> Result<(Vec<Leaf>, bool)> {
    if label.family == "2-f" {
        return pauli_leaves(label).map(|l| (l, true));
    }
    let spec = item_spec(&label.family, label.item.as_deref().unwrap_or(""))?;
    let m = log2_exact(label.n).ok_or_else(|| Error::InvalidLabel("n must be a power of 2".into()))?;
    if label.n < spec.min_n {
        return Err(Error::InvalidLabel(format!("({}) needs n ≥ {}", label.name(), spec.min_n)));
    }
    let mut named: Vec<(BlockName, &str)> = Vec::new();
    if let Some(h) = spec.head {
        named.push((block_of(h)?, h));
    }
    let mut tail = Vec::new();
    for t in spec.tail {
        tail.push((block_of(t)?, *t));
    }
    let used: u32 = named.iter().chain(tail.iter()).map(|(b, _)| log2_size(*b)).sum();
    let k = m.checked_sub(used).ok_or_else(|| Error::InvalidLabel(format!("({}) is too large for n", label.name())))?;
    for _ in 0..k {
        named.push((BlockName::M2R, "1-a-1"));
    }
    named.extend(tail);
    if named.is_empty() {
        named.push((BlockName::Real, "id"));
    }
    Ok((named.into_iter().map(|(b, n)| leaf(b, n)).collect::<Result<_>>()?, false))
}

fn pauli_leaves(label: &ClassLabel) -> Result<Vec<Leaf>> {
    let item = label.item.as_deref().ok_or_else(|| Error::InvalidLabel("item missing".into()))?;
    let profile = label.profile.clone().ok_or_else(|| Error::InvalidLabel("l-profile missing".into()))?;
    if profile.iter().any(|&l| l < 2) {
        return Err(Error::InvalidLabel("l-profile entries must be ≥ 2".into()));
    }
    // (2-0) is a factorwise tensor, so any list of factors works there
    if item != "2-0" && profile.windows(2).any(|w| w[1] % w[0] != 0) {
        return Err(Error::InvalidLabel("l-profile must be a divisor chain".into()));
    }
    let pauli = |l: u32, name: &str| leaf(BlockName::Pauli(l), name);
    let out: Vec<Leaf> = match item {
        "1-1" | "1-2" => {
            if profile.iter().any(|&l| l != 2) {
                return Err(Error::InvalidLabel("first kind needs all l_i = 2".into()));
            }
            if profile.is_empty() {
                if item == "1-2" {
                    return Err(Error::InvalidLabel("(2-f-1-2) needs n ≥ 2".into()));
                }
                return Ok(vec![leaf(BlockName::ComplexTrivial, "id")?]);
            }
            let mut v: Vec<Leaf> = (1..profile.len()).map(|_| pauli(2, "2-f-1-1")).collect::<Result<_>>()?;
            v.push(pauli(2, if item == "1-1" { "2-f-1-1" } else { "2-f-1-2" })?);
            v
        }
        "2-0" => {
            if profile.is_empty() {
                return Ok(vec![leaf(BlockName::ComplexTrivial, "conj")?]);
            }
            profile.iter().map(|&l| pauli(l, "A")).collect::<Result<_>>()?
        }
        _ => {
            let p: u32 = item
                .strip_prefix("2-")
                .and_then(|s| s.parse().ok())
                .filter(|&p| p >= 1)
                .ok_or_else(|| Error::InvalidLabel(format!("bad item {item}")))?;
            let s = profile.iter().filter(|&&l| l % (1 << (p + 1)) != 0).count();
            if s == 0 || profile[s - 1].trailing_zeros() != p {
                return Err(Error::InvalidLabel(format!("no (2-f-2-{p}) for l-profile {profile:?}")));
            }
            profile
                .iter()
                .enumerate()
                .map(|(i, &l)| pauli(l, if i < s { "B" } else { "A" }))
                .collect::<Result<_>>()?
        }
    };
    Ok(out)
}

/// The listed tensor product of block involutions for a label.
pub fn canonical_representative(label: &ClassLabel) -> Result<Involution> {
    let (leaves, complex) = representative_leaves(label)?;
    tensor_of_leaves(leaves, complex)
}

/// Every involution label with n ≤ max_n (power-of-two n), and Pauli
/// labels whose l-profile has product at most max_pauli.
pub fn all_labels(max_n: u64, max_pauli: u64) -> Vec<ClassLabel> {
    let mut out = Vec::new();
    let mut n = 1;
    while n <= max_n {
        for s in ITEMS {
            let l = ClassLabel::new(s.family, Some(s.item.into()), n);
            if representative_leaves(&l).is_ok() {
                out.push(l);
            }
        }
        n *= 2;
    }
    for profile in divisor_chains(max_pauli) {
        let n: u64 = profile.iter().map(|&l| l as u64).product();
        let mut items = vec!["2-0".to_string()];
        if profile.iter().all(|&l| l == 2) {
            items.push("1-1".into());
            items.push("1-2".into());
        }
        for p in 1..8 {
            items.push(format!("2-{p}"));
        }
        for item in items {
            let mut l = ClassLabel::new("2-f", Some(item.clone()), n);
            l.p = item.strip_prefix("2-").and_then(|s| s.parse().ok());
            l.profile = Some(profile.clone());
            if pauli_leaves(&l).is_ok() {
                out.push(l);
            }
        }
    }
    out
}

/// Divisor chains 2 ≤ l₁ | l₂ | … with product at most `max`, including
/// the empty chain.
pub fn divisor_chains(max: u64) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, prod: u64, max: u64, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        let start = prefix.last().copied().unwrap_or(1);
        let mut l = if prefix.is_empty() { 2 } else { start };
        while prod * l as u64 <= max {
            if l % start == 0 && l >= 2 {
                prefix.push(l);
                go(prefix, prod * l as u64, max, out);
                prefix.pop();
            }
            l += 1;
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max, &mut out);
    out
}

// ---------------------------------------------------------------------------
// JSON data

/// Input documents for the classifier, tagged by "case".
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum DatumDoc {
    /// (T, β, μ); β defaults to the polarization of μ.
    Grading { orders: Vec<u32>, #[serde(default)] beta: Option<BicharacterDoc>, mu: FormDoc },
    Dim1 { orders: Vec<u32>, #[serde(default)] beta: Option<BicharacterDoc>, mu: FormDoc, eta: FormDoc },
    /// K as a list of elements; ν, η and ω keyed by element.
    Dim2 {
        orders: Vec<u32>,
        k: Vec<Vec<i64>>,
        #[serde(default)]
        nu: Option<FormDoc>,
        #[serde(default)]
        eta: Option<FormDoc>,
        #[serde(default)]
        omega: Option<FormDoc>,
    },
    /// First kind gives η on T; second kind gives S as a list of elements.
    Complex {
        orders: Vec<u32>,
        #[serde(default)]
        eta: Option<FormDoc>,
        #[serde(default)]
        s: Option<Vec<Vec<i64>>>,
    },
    Dim4 {
        orders: Vec<u32>,
        #[serde(default)]
        beta: Option<BicharacterDoc>,
        mu: FormDoc,
        eta: FormDoc,
        e_class: EClass,
    },
    Semisimple {
        orders: Vec<u32>,
        dim: usize,
        #[serde(default)]
        k: Option<Vec<Vec<i64>>>,
        #[serde(default)]
        mu: Option<FormDoc>,
        #[serde(default)]
        nu: Option<FormDoc>,
        #[serde(default)]
        eta: Option<FormDoc>,
        #[serde(default)]
        omega: Option<FormDoc>,
    },
}

/// Result of classifying a document.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Classified {
    Label(ClassLabel),
    Semisimple(SemisimpleClass),
}

fn subgroup_of(g: &Group, els: &[Vec<i64>]) -> Result<Subgroup> {
    let idx = els.iter().map(|e| Ok(g.index(&g.element(e)?))).collect::<Result<Vec<_>>>()?;
    Subgroup::from_set(g, idx)
}

fn nice_map_of(g: &Group, k: &Subgroup, doc: &FormDoc) -> Result<NiceMap> {
    let mut vals = vec![0i8; g.size()];
    for (t, v) in doc.table(g)? {
        vals[t] = v;
    }
    NiceMap::new(&g.whole(), k, vals)
}

fn beta_of(g: &Group, beta: &Option<BicharacterDoc>, mu: &QuadraticForm) -> Result<Bicharacter> {
    match beta {
        Some(b) => b.to_bicharacter(g),
        None if mu.domain().is_whole() => mu.polarization(),
        None => Err(Error::InvalidDatum("β is required when T is not elementary".into())),
    }
}

/// μ given on T restricted to T_[2].
fn on_t2(g: &Group, f: QuadraticForm) -> Result<QuadraticForm> {
    let t2 = g.torsion_subgroup(2);
    if f.domain().indices() == t2.indices() {
        Ok(f)
    } else {
        f.restrict(&t2)
    }
}

pub fn classify_doc(doc: &DatumDoc) -> Result<Classified> {
    match doc {
        DatumDoc::Grading { orders, beta, mu } => {
            let g = Group::new(orders)?;
            let mu = mu.to_form(&g)?;
            let b = beta_of(&g, beta, &mu)?;
            Ok(Classified::Label(classify_grading_data(&b, &on_t2(&g, mu)?)?))
        }
        DatumDoc::Dim1 { orders, beta, mu, eta } => {
            let g = Group::new(orders)?;
            let mu = mu.to_form(&g)?;
            let eta = eta.to_form(&g)?;
            let b = match beta {
                Some(b) => b.to_bicharacter(&g)?,
                None => eta.polarization()?,
            };
            Ok(Classified::Label(classify_involution_dim1(&b, &on_t2(&g, mu)?, &eta)?))
        }
        DatumDoc::Dim2 { orders, k, nu, eta, omega } => {
            let g = Group::new(orders)?;
            let k = subgroup_of(&g, k)?;
            let nu = nu.as_ref().map(|d| nice_map_of(&g, &k, d)).transpose()?;
            let branch = match (eta, omega) {
                (Some(e), None) => Some(Dim2Branch::Eta(e.to_form(&g)?)),
                (None, Some(o)) => Some(Dim2Branch::Omega(nice_map_of(&g, &k, o)?)),
                _ => return Err(Error::InvalidDatum("give exactly one of η and ω".into())),
            };
            Ok(Classified::Label(classify_involution_dim2_noncomplex(&Dim2Datum { k, nu, branch })?))
        }
        DatumDoc::Complex { orders, eta, s } => {
            let g = Group::new(orders)?;
            let d = match (eta, s) {
                (Some(e), None) => ComplexDatum::First(e.to_form(&g)?),
                (None, Some(s)) => ComplexDatum::Second(subgroup_of(&g, s)?),
                _ => return Err(Error::InvalidDatum("give exactly one of η and S".into())),
            };
            Ok(Classified::Label(classify_involution_dim2_complex(&g, &d)?))
        }
        DatumDoc::Dim4 { orders, beta, mu, eta, e_class } => {
            let g = Group::new(orders)?;
            let mu = mu.to_form(&g)?;
            let eta = eta.to_form(&g)?;
            let b = match beta {
                Some(b) => b.to_bicharacter(&g)?,
                None => eta.polarization()?,
            };
            Ok(Classified::Label(classify_involution_dim4(&b, &on_t2(&g, mu)?, &eta, *e_class)?))
        }
        DatumDoc::Semisimple { orders, dim, k, mu, nu, eta, omega } => {
            let g = Group::new(orders)?;
            if !g.is_elementary_2() {
                return Err(Error::SecondKindImpossible("a ℤ₄ factor in T rules out a swapping involution".into()));
            }
            let need = |x: &Option<FormDoc>, what: &str| {
                x.as_ref().ok_or_else(|| Error::InvalidDatum(format!("{what} is required"))).and_then(|d| d.to_form(&g))
            };
            let d = match dim {
                1 => SemisimpleDatum::Dim1 { mu: need(mu, "μ")?, eta: need(eta, "η")? },
                4 => SemisimpleDatum::Dim4 { mu: need(mu, "μ")?, eta: need(eta, "η")? },
                2 => {
                    let k = subgroup_of(&g, k.as_deref().ok_or_else(|| Error::InvalidDatum("K is required".into()))?)?;
                    let nu = nice_map_of(&g, &k, nu.as_ref().ok_or_else(|| Error::InvalidDatum("ν is required".into()))?)?;
                    let branch = match (eta, omega) {
                        (Some(e), None) => Dim2Branch::Eta(e.to_form(&g)?),
                        (None, Some(o)) => Dim2Branch::Omega(nice_map_of(&g, &k, o)?),
                        _ => return Err(Error::InvalidDatum("give exactly one of η and ω".into())),
                    };
                    SemisimpleDatum::Dim2 { nu, branch }
                }
                d => return Err(Error::WrongComponentDimension(format!("dimension {d}"))),
            };
            Ok(Classified::Semisimple(classify_semisimple(&d)?))
        }
    }
}

/// Rebuilds the involution prescribed by a datum on a given algebra.
pub fn involution_from_datum(alg: Arc<GradedAlgebra>, d: &Dim2Branch) -> Result<Involution> {
    match d {
        Dim2Branch::Eta(eta) => involution_from_form(alg, eta),
        Dim2Branch::Omega(om) => involution_from_nice_map(alg, om),
    }
}

/// Involution with one-dimensional centralizer data on a quaternionic algebra.
pub fn involution_from_quat_datum(alg: Arc<GradedAlgebra>, eta: &QuadraticForm, e: EClass) -> Result<Involution> {
    involution_quaternionic(alg, eta, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(g: &Group, f: impl Fn(&[u32]) -> i8) -> QuadraticForm {
        QuadraticForm::from_fn(&g.whole(), |e| f(&e.0)).unwrap()
    }

    #[test]
    fn grading_examples() {
        let g = Group::new(&[2, 2]).unwrap();
        let mu = form(&g, |e| if e == [1, 1] { -1 } else { 1 });
        let l = classify_grading_data(&mu.polarization().unwrap(), &mu).unwrap();
        assert_eq!((l.family.as_str(), l.n), ("1-a", 2));
        let g3 = Group::new(&[2, 2, 2]).unwrap();
        let mu = form(&g3, |e| if e[1] == 1 && e[2] == 1 { -1 } else { 1 });
        let l = classify_grading_data(&mu.polarization().unwrap(), &mu).unwrap();
        assert_eq!(l.family, "1-e");
        let mu = form(&g3, |e| if e[1] == 1 || e[2] == 1 { -1 } else { 1 });
        let l = classify_grading_data(&mu.polarization().unwrap(), &mu).unwrap();
        assert_eq!(l.family, "1-f");
    }

    #[test]
    fn dim1_examples() {
        let g = Group::new(&[2, 2]).unwrap();
        let mu = form(&g, |e| if e == [1, 1] { -1 } else { 1 });
        let beta = mu.polarization().unwrap();
        assert_eq!(classify_involution_dim1(&beta, &mu, &mu).unwrap().name(), "1-a-1");
        let g1 = Group::new(&[2]).unwrap();
        let mu = form(&g1, |e| if e == [1] { -1 } else { 1 });
        let eta = form(&g1, |_| 1);
        let beta = mu.polarization().unwrap();
        assert_eq!(classify_involution_dim1(&beta, &mu, &eta).unwrap().name(), "1-c-3");
        let json = serde_json::to_string(&classify_involution_dim1(&beta, &mu, &eta).unwrap()).unwrap();
        assert_eq!(json, r#"{"family":"1-c","item":"3","m":0,"n":1}"#);
    }

    #[test]
    fn l_profiles() {
        assert_eq!(l_profile(&Group::new(&[2, 2]).unwrap()).unwrap(), vec![2]);
        assert_eq!(l_profile(&Group::new(&[2, 3, 2, 3]).unwrap()).unwrap(), vec![6]);
        assert_eq!(l_profile(&Group::new(&[2, 2, 4, 4]).unwrap()).unwrap(), vec![2, 4]);
        assert_eq!(l_profile(&Group::trivial()).unwrap(), Vec::<u32>::new());
        assert!(l_profile(&Group::new(&[2, 4]).unwrap()).is_err());
    }

    #[test]
    fn pauli_s_and_p() {
        let (a, b) = crate::involution::pauli_involutions(2).unwrap();
        let g = a.algebra().group().clone();
        assert_eq!(compute_s(&a).unwrap().size(), 4);
        assert_eq!(compute_p(&g, &compute_s(&a).unwrap()).unwrap(), 0);
        assert_eq!(compute_s(&b).unwrap().size(), 2);
        assert_eq!(compute_p(&g, &compute_s(&b).unwrap()).unwrap(), 1);
    }

    #[test]
    fn divisor_chains_small() {
        let c = divisor_chains(6);
        assert!(c.contains(&vec![]));
        assert!(c.contains(&vec![2, 2]));
        assert!(c.contains(&vec![6]));
        assert!(!c.contains(&vec![2, 3]));
    }

    #[test]
    fn round_trip_small() {
        for l in all_labels(4, 4) {
            let inv = canonical_representative(&l).unwrap_or_else(|e| panic!("{l}: {e}"));
            let got = classify_involution(&inv).unwrap_or_else(|e| panic!("{l}: {e}"));
            assert_eq!(got, l, "round trip of {l}");
            assert_eq!(inv.profile().unwrap(), expected_profile(&l).unwrap(), "profile of {l}");
        }
    }
}
