//! Brute-force verifiers. They read data through accessors only and redo
//! every computation by enumeration or floating point, so that they share
//! no code path with the main algorithms.

use std::collections::BTreeMap;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abgroup::Group;
use crate::classify::{all_labels, canonical_representative, classify_involution_dim1, ClassLabel};
use crate::error::{Error, Result};
use crate::exactalg::matrix::Mat;
use crate::exactalg::{building_block, tensor_all, BlockName, GradedAlgebra};
use crate::forms::{Arf, Bicharacter, QuadraticForm};
use crate::involution::{Involution, Transposition};

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub suite: String,
    pub seed: u64,
    pub checks: usize,
    pub mismatches: Vec<Mismatch>,
    pub wall_ms: f64,
}

impl OracleReport {
    fn new(suite: &str, seed: u64) -> OracleReport {
        OracleReport { suite: suite.into(), seed, checks: 0, mismatches: Vec::new(), wall_ms: 0.0 }
    }

    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn fail(&mut self, input: impl Into<String>, detail: impl Into<String>) {
        self.mismatches.push(Mismatch { input: input.into(), detail: detail.into() });
    }

    fn absorb(&mut self, other: OracleReport) {
        self.checks += other.checks;
        self.mismatches.extend(other.mismatches);
    }
}

// ---------------------------------------------------------------------------
// Arf by counting

/// Majority value of a ±1 table: +1, −1, or None on a tie.
pub fn arf_of_values(values: &[i8]) -> Option<i8> {
    let plus = values.iter().filter(|&&v| v == 1).count();
    let minus = values.len() - plus;
    match plus.cmp(&minus) {
        std::cmp::Ordering::Greater => Some(1),
        std::cmp::Ordering::Less => Some(-1),
        std::cmp::Ordering::Equal => None,
    }
}

/// Arf of a form by counting over its whole domain.
pub fn arf_bruteforce(mu: &QuadraticForm) -> Option<i8> {
    let vals: Vec<i8> = mu.domain().indices().iter().map(|&t| mu.value_idx(t)).collect();
    arf_of_values(&vals)
}

fn arf_to_i8(a: Arf) -> Option<i8> {
    match a {
        Arf::Plus => Some(1),
        Arf::Minus => Some(-1),
        Arf::Undefined => None,
    }
}

// ---------------------------------------------------------------------------
// Enumerating forms

/// Every η: T → ±1 with η(xy) = η(x)η(y)β(x,y), by propagation from the
/// generators followed by a full check.
pub fn forms_with_polarization(beta: &Bicharacter) -> Vec<Vec<i8>> {
    let g = beta.group();
    let n = g.size();
    let gens: Vec<usize> = g.generators().iter().map(|x| g.index(x)).collect();
    let sign = |u: usize, v: usize| -> Option<i8> {
        let r = beta.rot_idx(u, v);
        if *r.numer() == 0 {
            Some(1)
        } else if r == num_rational::Rational64::new(1, 2) {
            Some(-1)
        } else {
            None
        }
    };
    let mut out = Vec::new();
    'choice: for mask in 0u64..(1u64 << gens.len()) {
        let mut v = vec![0i8; n];
        v[0] = 1;
        for (i, &x) in gens.iter().enumerate() {
            let s = if mask >> i & 1 == 1 { -1 } else { 1 };
            if v[x] != 0 && v[x] != s {
                continue 'choice;
            }
            v[x] = s;
        }
        let mut queue = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for &gi in &gens {
                let y = g.mul_idx(x, gi);
                let s = match sign(x, gi) {
                    Some(s) => v[x] * v[gi] * s,
                    None => continue 'choice,
                };
                if v[y] == 0 {
                    v[y] = s;
                } else if v[y] != s {
                    continue 'choice;
                }
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                match sign(x, y) {
                    Some(s) if v[g.mul_idx(x, y)] == v[x] * v[y] * s => {}
                    _ => continue 'choice,
                }
            }
        }
        out.push(v);
    }
    out
}

// ---------------------------------------------------------------------------
// Partition census

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub family: String,
    pub buckets: BTreeMap<String, usize>,
    pub total: usize,
    /// η matched by no listed condition, or by several.
    pub overlaps: usize,
    pub leftovers: usize,
    /// η where the classifier and the listed conditions disagree.
    pub disagreements: usize,
}

/// Family of (T, β, μ) for the one-dimensional central simple case,
/// recomputed from the sign table.
fn family_by_count(g: &Group, beta: &Bicharacter, mu: &QuadraticForm) -> Option<(&'static str, Option<usize>)> {
    let n = g.size();
    let rad: Vec<usize> = (0..n).filter(|&x| (0..n).all(|y| beta.sign_idx(x, y) == 1)).collect();
    let elementary = (0..n).all(|x| g.mul_idx(x, x) == 0);
    let t2: Vec<usize> = (0..n).filter(|&x| g.mul_idx(x, x) == 0).collect();
    let mu_t2: Vec<i8> = t2.iter().map(|&t| mu.value_idx(t)).collect();
    match (elementary, rad.len()) {
        (true, 1) => match arf_of_values(&mu_t2)? {
            1 => Some(("1-a", None)),
            _ => Some(("1-b", None)),
        },
        (true, 2) if mu.value_idx(rad[1]) == -1 => Some(("1-c", Some(rad[1]))),
        (false, 2) if mu.value_idx(rad[1]) == -1 => {
            let rad2: Vec<usize> =
                t2.iter().copied().filter(|&x| t2.iter().all(|&y| beta.sign_idx(x, y) == 1)).collect();
            let rp = rad2.into_iter().find(|x| !rad.contains(x))?;
            Some(("1-d", Some(rp)))
        }
        _ => None,
    }
}

/// Listed conditions of each item, evaluated directly on the table.
fn item_conditions(family: &str, special: Option<usize>, mu: &QuadraticForm, eta: &[i8]) -> Vec<(String, bool)> {
    let dom = mu.domain().indices();
    let eq_mu = dom.iter().all(|&t| mu.value_idx(t) == eta[t]);
    let arf = arf_of_values(eta);
    let items: Vec<bool> = match family {
        "1-a" => vec![eq_mu, !eq_mu && arf == Some(1), arf == Some(-1)],
        "1-b" => vec![eq_mu, !eq_mu && arf == Some(-1), arf == Some(1)],
        "1-c" => {
            let f = special.expect("f_β");
            vec![
                eq_mu,
                !eq_mu && eta[f] == -1,
                eta[f] == 1 && arf == Some(1),
                eta[f] == 1 && arf == Some(-1),
            ]
        }
        _ => {
            let rp = special.expect("rad′");
            vec![
                eta[rp] == 1 && arf == Some(1),
                eta[rp] == 1 && arf == Some(-1),
                eta[rp] == -1 && arf == Some(1),
                eta[rp] == -1 && arf == Some(-1),
            ]
        }
    };
    items.into_iter().enumerate().map(|(i, b)| (format!("{family}-{}", i + 1), b)).collect()
}

/// Buckets every η with β_η = β by label, checking that the listed
/// conditions cover each η exactly once and agree with the classifier.
pub fn partition_census(beta: &Bicharacter, mu: &QuadraticForm) -> Result<Census> {
    let g = beta.group();
    if g.size() > 256 {
        return Err(Error::DomainTooLarge(g.size()));
    }
    let (family, special) = family_by_count(g, beta, mu)
        .ok_or_else(|| Error::InvalidDatum("not a central simple one-dimensional datum".into()))?;
    let mut c = Census {
        family: family.into(),
        buckets: BTreeMap::new(),
        total: 0,
        overlaps: 0,
        leftovers: 0,
        disagreements: 0,
    };
    for eta in forms_with_polarization(beta) {
        c.total += 1;
        let hits: Vec<String> =
            item_conditions(family, special, mu, &eta).into_iter().filter(|(_, b)| *b).map(|(n, _)| n).collect();
        match hits.len() {
            0 => c.leftovers += 1,
            1 => {}
            _ => c.overlaps += 1,
        }
        let form = QuadraticForm::new(&g.whole(), eta.clone())?;
        let got = classify_involution_dim1(beta, mu, &form).map(|l| l.name());
        match (&got, hits.first()) {
            (Ok(name), Some(h)) if hits.len() == 1 && name == h => {}
            _ => c.disagreements += 1,
        }
        let key = got.unwrap_or_else(|e| format!("error: {e}"));
        *c.buckets.entry(key).or_default() += 1;
    }
    Ok(c)
}

/// One-dimensional central simple algebras built from blocks with |T| ≤ max.
pub fn census_algebras(max: usize) -> Result<Vec<(String, GradedAlgebra)>> {
    let pools: &[&[BlockName]] = &[
        &[BlockName::M2R],
        &[BlockName::Quaternion],
        &[BlockName::Complex],
        &[BlockName::M2C],
        &[BlockName::M2R, BlockName::M2R],
        &[BlockName::M2R, BlockName::Quaternion],
        &[BlockName::M2R, BlockName::Complex],
        &[BlockName::Quaternion, BlockName::Complex],
        &[BlockName::Quaternion, BlockName::Quaternion],
        &[BlockName::M2R, BlockName::M2C],
        &[BlockName::M2R, BlockName::M2R, BlockName::Complex],
    ];
    let mut out = Vec::new();
    for p in pools {
        let size: usize = p.iter().map(|b| b.orders().iter().product::<u32>() as usize).product();
        if size > max {
            continue;
        }
        let parts: Vec<GradedAlgebra> = p.iter().map(|&b| building_block(b)).collect::<Result<_>>()?;
        let name = p.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("⊗");
        out.push((name, tensor_all(&parts, false)?));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Involution axioms

fn apply_sigma(s: Transposition, x: &Mat) -> Mat {
    match s {
        Transposition::Star => x.conj_transpose(),
        Transposition::Transpose => x.transpose(),
    }
}

/// Images φ(B) of every basis element, recomputed from the form matrix.
pub fn image_table(inv: &Involution) -> Result<Vec<Vec<Mat>>> {
    let alg = inv.algebra();
    let h = inv.form_matrix();
    let hi = h.inverse()?;
    Ok((0..alg.group().size())
        .map(|t| alg.component(t).iter().map(|b| hi.mul(&apply_sigma(inv.sigma(), b)).mul(h)).collect())
        .collect())
}

/// Checks φ(D_t) = D_t, φ² = id and φ(XY) = φ(Y)φ(X) on all pairs of basis
/// elements, with φ extended linearly from the image table.
pub fn axioms_from_table(alg: &GradedAlgebra, images: &[Vec<Mat>], name: &str) -> OracleReport {
    let mut r = OracleReport::new("axioms", 0);
    let g = alg.group();
    let phi = |t: usize, x: &Mat| -> Option<Mat> {
        let c = alg.coords(t, x)?;
        let mut acc = Mat::zeros(alg.matrix_size(), alg.matrix_size(), alg.conductor());
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                acc = acc.add(&images[t][k].scale(ck));
            }
        }
        Some(acc)
    };
    for t in 0..g.size() {
        for (k, b) in alg.component(t).iter().enumerate() {
            r.checks += 1;
            match phi(t, &images[t][k]) {
                None => r.fail(name, format!("φ(B_{k}) leaves degree {}", g.elem(t))),
                Some(y) if y != *b => r.fail(name, format!("φ² ≠ id on B_{k} of degree {}", g.elem(t))),
                _ => {}
            }
        }
    }
    for u in 0..g.size() {
        for (i, x) in alg.component(u).iter().enumerate() {
            for v in 0..g.size() {
                for (j, y) in alg.component(v).iter().enumerate() {
                    r.checks += 1;
                    let uv = g.mul_idx(u, v);
                    let lhs = phi(uv, &x.mul(y));
                    let rhs = images[v][j].mul(&images[u][i]);
                    if lhs.as_ref() != Some(&rhs) {
                        r.fail(
                            name,
                            format!("φ(XY) ≠ φ(Y)φ(X) at degrees {}, {} (basis {i}, {j})", g.elem(u), g.elem(v)),
                        );
                        return r;
                    }
                }
            }
        }
    }
    r
}

pub fn involution_axioms(inv: &Involution, name: &str) -> Result<OracleReport> {
    Ok(axioms_from_table(inv.algebra(), &image_table(inv)?, name))
}

/// The same check with the image of the unit negated; it must fail.
pub fn corrupted_axioms(inv: &Involution, name: &str) -> Result<OracleReport> {
    let mut images = image_table(inv)?;
    images[0][0] = images[0][0].neg();
    Ok(axioms_from_table(inv.algebra(), &images, name))
}

// ---------------------------------------------------------------------------
// Float signature

/// |p − q| of a hermitian H with φ(X) = H⁻¹X*H, solved in floating point
/// from the image table. None for transpose-type involutions.
pub fn signature_float(inv: &Involution) -> Result<Option<u64>> {
    if inv.sigma() != Transposition::Star {
        return Ok(None);
    }
    let alg = inv.algebra();
    let images = image_table(inv)?;
    let n = alg.matrix_size();
    let n2 = n * n;
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for t in 0..alg.group().size() {
        for (k, b) in alg.component(t).iter().enumerate() {
            // H·φ(B) − B*·H = 0, one row per entry
            let f = images[t][k].to_complex();
            let bs = b.conj_transpose().to_complex();
            for i in 0..n {
                for j in 0..n {
                    let mut row = vec![Complex64::new(0.0, 0.0); n2];
                    for l in 0..n {
                        row[i * n + l] += f[(l, j)];
                        row[l * n + j] -= bs[(i, l)];
                    }
                    rows.push(row);
                }
            }
        }
    }
    let m = DMatrix::from_fn(rows.len(), n2, |r, c| rows[r][c]);
    let svd = (m.adjoint() * &m).symmetric_eigen();
    let (imin, _) = svd
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite"))
        .ok_or_else(|| Error::Numerical("empty system".into()))?;
    let v = svd.eigenvectors.column(imin);
    let h = DMatrix::from_fn(n, n, |i, j| v[i * n + j]);
    let mut herm = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    if herm.norm() < 1e-6 {
        herm = (&h - h.adjoint()) * Complex64::new(0.0, 0.5);
    }
    let ev = herm.symmetric_eigen().eigenvalues;
    let scale = ev.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let (mut p, mut q) = (0i64, 0i64);
    for x in ev.iter() {
        if x.abs() < 1e-7 * scale {
            return Err(Error::Numerical("hermitian form is singular".into()));
        }
        if *x > 0.0 {
            p += 1;
        } else {
            q += 1;
        }
    }
    Ok(Some((p - q).unsigned_abs()))
}

// ---------------------------------------------------------------------------
// Suites

fn random_form(rng: &mut ChaCha8Rng, r: usize) -> Result<QuadraticForm> {
    let g = Group::new(&vec![2; r])?;
    let mut a = vec![vec![0u32; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        for x in row.iter_mut().skip(i) {
            *x = rng.gen_range(0..2);
        }
    }
    QuadraticForm::from_fn(&g.whole(), |e| {
        let x = &e.0;
        let mut q = 0;
        for i in 0..r {
            for j in i..r {
                q += a[i][j] * x[i] * x[j];
            }
        }
        if q % 2 == 0 {
            1
        } else {
            -1
        }
    })
}

/// Arf by counting against the library's Arf and its basis formula.
pub fn suite_arf(seed: u64, trials: usize) -> Result<OracleReport> {
    let mut rep = OracleReport::new("arf", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let r = rng.gen_range(1..=6);
        let mu = random_form(&mut rng, r)?;
        let brute = arf_bruteforce(&mu);
        rep.checks += 1;
        if arf_to_i8(mu.arf()) != brute {
            rep.fail(format!("trial {trial}: {:?}", mu.values()), "Arf differs from counting");
        }
        let rad = mu.polarization()?.radical().size();
        if rad <= 2 {
            rep.checks += 1;
            if arf_to_i8(mu.arf_by_basis()) != brute {
                rep.fail(format!("trial {trial}: {:?}", mu.values()), "basis formula differs from counting");
            }
        }
    }
    Ok(rep)
}

pub fn suite_census() -> Result<OracleReport> {
    let mut rep = OracleReport::new("census", 0);
    for (name, alg) in census_algebras(16)? {
        let beta = alg.recovered_beta().ok_or_else(|| Error::InvalidDatum("β".into()))?;
        let mu = alg.recovered_mu().ok_or_else(|| Error::InvalidDatum("μ".into()))?;
        let c = partition_census(&beta, &mu)?;
        rep.checks += c.total;
        if c.overlaps + c.leftovers + c.disagreements > 0 || c.buckets.keys().any(|k| k.starts_with("error")) {
            rep.fail(name, format!("{c:?}"));
        }
    }
    Ok(rep)
}

fn representatives(max_n: u64, max_pauli: u64) -> Vec<(ClassLabel, Result<Involution>)> {
    all_labels(max_n, max_pauli).into_iter().map(|l| (l.clone(), canonical_representative(&l))).collect()
}

pub fn suite_axioms(max_n: u64) -> Result<OracleReport> {
    let mut rep = OracleReport::new("axioms", 0);
    for (l, inv) in representatives(max_n, 6) {
        let inv = inv?;
        rep.absorb(involution_axioms(&inv, &l.to_string())?);
        let bad = corrupted_axioms(&inv, &l.to_string())?;
        rep.checks += 1;
        if bad.pass() {
            rep.fail(l.to_string(), "negative control passed");
        }
    }
    Ok(rep)
}

pub fn suite_signature(max_n: u64) -> Result<OracleReport> {
    let mut rep = OracleReport::new("signature", 0);
    for (l, inv) in representatives(max_n, 6) {
        let inv = inv?;
        rep.checks += 1;
        let float = signature_float(&inv);
        let exact = inv.structural_signature();
        match (float, exact) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => rep.fail(l.to_string(), format!("float {a:?} vs structural {b:?}")),
        }
    }
    Ok(rep)
}

/// Runs a named suite ("arf", "census", "axioms", "signature" or "all").
pub fn run_suite(name: &str, seed: u64) -> Result<OracleReport> {
    let start = Instant::now();
    let mut rep = match name {
        "arf" => suite_arf(seed, 10_000)?,
        "census" => suite_census()?,
        "axioms" => suite_axioms(8)?,
        "signature" => suite_signature(8)?,
        "all" => {
            let mut r = OracleReport::new("all", seed);
            r.absorb(suite_arf(seed, 10_000)?);
            r.absorb(suite_census()?);
            r.absorb(suite_axioms(8)?);
            r.absorb(suite_signature(8)?);
            r
        }
        s => return Err(Error::Parse(format!("unknown suite {s:?}"))),
    };
    rep.seed = seed;
    rep.wall_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::pauli_involutions;

    #[test]
    fn arf_counts() {
        assert_eq!(arf_of_values(&[1, 1, 1, -1]), Some(1));
        assert_eq!(arf_of_values(&[1, -1, -1, -1]), Some(-1));
        assert_eq!(arf_of_values(&[1, 1, -1, -1]), None);
    }

    #[test]
    fn census_examples() {
        let m2 = building_block(BlockName::M2R).unwrap();
        let c = partition_census(&m2.recovered_beta().unwrap(), &m2.recovered_mu().unwrap()).unwrap();
        let want: BTreeMap<String, usize> = [("1-a-1", 1), ("1-a-2", 2), ("1-a-3", 1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        assert_eq!(c.buckets, want);
        let cx = building_block(BlockName::Complex).unwrap();
        let c = partition_census(&cx.recovered_beta().unwrap(), &cx.recovered_mu().unwrap()).unwrap();
        assert_eq!(c.buckets.len(), 2);
        assert_eq!(c.buckets["1-c-1"], 1);
        assert_eq!(c.buckets["1-c-3"], 1);
    }

    #[test]
    fn axioms_and_negative_control() {
        let (_, b) = pauli_involutions(3).unwrap();
        assert!(involution_axioms(&b, "phi_B(3)").unwrap().pass());
        assert!(!corrupted_axioms(&b, "phi_B(3)").unwrap().pass());
    }

    #[test]
    fn float_signatures() {
        let l = ClassLabel::parse("1-a-1", Some(4), None).unwrap();
        assert_eq!(signature_float(&canonical_representative(&l).unwrap()).unwrap(), Some(4));
        let (a, _) = pauli_involutions(3).unwrap();
        assert_eq!(signature_float(&a).unwrap(), Some(1));
        let (_, b) = pauli_involutions(2).unwrap();
        assert_eq!(signature_float(&b).unwrap(), Some(0));
    }
}
