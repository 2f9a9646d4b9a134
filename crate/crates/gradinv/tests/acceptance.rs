//! Acceptance criteria 1–9, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use num_rational::Rational64;

use gradinv::abgroup::Group;
use gradinv::classify::{
    all_labels, canonical_representative, classify_doc, classify_grading, classify_involution,
    classify_semisimple_involution, expected_profile, ClassLabel, DatumDoc,
};
use gradinv::distinguished::{
    distinguished_basis, epsilon_by_signature, find_distinguished, is_distinguished, verify_product_laws,
};
use gradinv::exactalg::construct::construct_from_data;
use gradinv::exactalg::{building_block, BlockName, Structure};
use gradinv::forms::{enumerate_forms, enumerate_nice_maps, Bicharacter, FormDoc, QuadraticForm};
use gradinv::involution::{involution_from_form, pauli_involutions, Involution};
use gradinv::oracle::{arf_bruteforce, arf_of_values, census_algebras, partition_census, signature_float};
use gradinv::Error;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($c:expr, $($fmt:tt)*) => {
        if !$c {
            return Err(format!($($fmt)*));
        }
    };
}

fn e2s<T>(r: gradinv::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn limit(start: Instant, secs: f64) -> Result<(), String> {
    let t = start.elapsed().as_secs_f64();
    ensure!(t < secs, "took {t:.2}s, limit {secs}s");
    Ok(())
}

fn group(orders: &[u32]) -> Group {
    Group::new(orders).expect("group")
}

/// β on ℤ₂^r pairing generators (0,1), (2,3), …; type II when r is odd.
fn standard_beta(r: usize) -> Bicharacter {
    let g = group(&vec![2; r]);
    let mut q = vec![vec![Rational64::from_integer(0); r]; r];
    for i in (0..r.saturating_sub(1)).step_by(2) {
        q[i][i + 1] = Rational64::new(1, 2);
        q[i + 1][i] = Rational64::new(1, 2);
    }
    Bicharacter::new(&g, q).expect("β")
}

/// Type II β on ℤ₂^{2m−1}×ℤ₄ with radical ⟨b²⟩.
fn z4_beta(m: usize) -> Bicharacter {
    let mut orders = vec![2; 2 * m - 1];
    orders.push(4);
    let r = orders.len();
    let g = group(&orders);
    let mut q = vec![vec![Rational64::from_integer(0); r]; r];
    for i in (0..r).step_by(2) {
        q[i][i + 1] = Rational64::new(1, 2);
        q[i + 1][i] = Rational64::new(1, 2);
    }
    Bicharacter::new(&g, q).expect("β")
}

// ---------------------------------------------------------------------------

fn c1() -> Outcome {
    let start = Instant::now();
    let expect = [
        (BlockName::M2R, "1-a"),
        (BlockName::Quaternion, "1-b"),
        (BlockName::Complex, "1-c"),
        (BlockName::M2C, "1-d"),
        (BlockName::Split, "1-e"),
        (BlockName::M2Split, "1-g"),
        (BlockName::M2RQuat, "1-i"),
    ];
    for (b, fam) in expect {
        let a = e2s(building_block(b))?;
        let rep = a.verify_grading();
        ensure!(rep.ok, "{b}: {:?}", rep.violations);
        let l = e2s(classify_grading(&a))?;
        ensure!(l.family == fam, "{b} classified as ({})", l.family);
        let beta = a.recovered_beta().ok_or("β")?;
        let mu = a.recovered_mu().ok_or("μ")?;
        let g = a.group();
        let rad: Vec<usize> = (0..g.size()).filter(|&x| (0..g.size()).all(|y| beta.sign_idx(x, y) == 1)).collect();
        match fam {
            "1-a" => ensure!(arf_bruteforce(&mu) == Some(1), "M2R Arf"),
            "1-b" => ensure!(arf_bruteforce(&mu) == Some(-1), "H Arf"),
            "1-c" => ensure!(rad.len() == 2 && mu.value_idx(rad[1]) == -1, "C μ(f_β)"),
            "1-i" => {
                let t2: Vec<usize> = mu.domain().indices().to_vec();
                let rp: Vec<usize> = t2
                    .iter()
                    .copied()
                    .filter(|&x| !rad.contains(&x) && t2.iter().all(|&y| beta.sign_idx(x, y) == 1))
                    .collect();
                ensure!(rp.len() == 2 && rp.iter().all(|&x| mu.value_idx(x) == -1), "M2RxH μ(rad′)");
            }
            _ => {}
        }
    }
    for l in 2..=5 {
        let a = e2s(building_block(BlockName::Pauli(l)))?;
        let rep = a.verify_grading();
        ensure!(rep.ok, "pauli{l}: {:?}", rep.violations);
    }
    limit(start, 1.0)?;
    Ok("7 blocks and Pauli(2..5) exact".into())
}

fn both_signatures(inv: &Involution, what: &str) -> Result<u64, String> {
    let s = e2s(inv.structural_signature())?.ok_or(format!("{what}: no structural signature"))?;
    if let Some(f) = e2s(signature_float(inv))? {
        ensure!(f == s, "{what}: float {f} vs structural {s}");
    }
    let n = e2s(inv.numeric_signature())?;
    ensure!(n.is_none_or(|n| n == s), "{what}: library float path {n:?} vs {s}");
    // the raw paths count over ℂ; the profile halves this on ℍ-algebras
    Ok(e2s(inv.profile())?.signature)
}

fn c2() -> Outcome {
    let start = Instant::now();
    for n in [2, 4, 8] {
        let inv = e2s(canonical_representative(&e2s(ClassLabel::parse("1-a-1", Some(n), None))?))?;
        let s = both_signatures(&inv, "transpose")?;
        ensure!(s == n, "transpose on M_{n}(R) gave {s}");
    }
    let h = e2s(canonical_representative(&e2s(ClassLabel::parse("1-b-1", Some(2), None))?))?;
    ensure!(both_signatures(&h, "H")? == 1, "H-conjugation");
    for l in 2..=5u32 {
        let (a, b) = e2s(pauli_involutions(l))?;
        let got = (both_signatures(&a, "φ_A")?, both_signatures(&b, "φ_B")?);
        let want = if l % 2 == 0 { (2, 0) } else { (1, 1) };
        ensure!(got == want, "Pauli({l}) gave {got:?}");
    }
    limit(start, 5.0)?;
    Ok("transpose n=2,4,8; H; Pauli(2..5)".into())
}

fn c3() -> Outcome {
    let start = Instant::now();
    let labels = all_labels(8, 8);
    ensure!(labels.len() >= 40, "only {} labels", labels.len());
    for l in &labels {
        let inv = e2s(canonical_representative(l)).map_err(|e| format!("{l}: {e}"))?;
        let got = e2s(classify_involution(&inv)).map_err(|e| format!("{l}: {e}"))?;
        ensure!(&got == l, "{l} came back as {got}");
        let (p, ep) = (e2s(inv.profile())?, e2s(expected_profile(l))?);
        ensure!(p == ep, "{l}: profile {p} vs listed {ep}");
    }
    limit(start, 30.0)?;
    Ok(format!("{} labels", labels.len()))
}

fn c4() -> Outcome {
    let mut runs = Vec::new();
    let mut total = 0;
    for _ in 0..2 {
        let mut v = Vec::new();
        for (name, alg) in e2s(census_algebras(16))? {
            let beta = alg.recovered_beta().ok_or("β")?;
            let mu = alg.recovered_mu().ok_or("μ")?;
            let c = e2s(partition_census(&beta, &mu))?;
            ensure!(c.overlaps == 0 && c.leftovers == 0 && c.disagreements == 0, "{name}: {c:?}");
            ensure!(!c.buckets.keys().any(|k| k.starts_with("error")), "{name}: {:?}", c.buckets);
            total += c.total;
            v.push((name, c.buckets));
        }
        runs.push(v);
    }
    ensure!(runs[0] == runs[1], "census differs between runs");
    Ok(format!("{} algebras, {} forms", runs[0].len(), total / 2))
}

/// Index-≤2 subgroups as kernels of ±1 characters, computed from scratch.
fn kernels(g: &Group) -> BTreeSet<Vec<usize>> {
    let r = g.orders().len();
    (0u32..(1 << r))
        .map(|mask| {
            (0..g.size())
                .filter(|&x| {
                    let e = &g.elem(x).0;
                    (0..r).filter(|&i| mask >> i & 1 == 1).map(|i| e[i]).sum::<u32>() % 2 == 0
                })
                .collect()
        })
        .collect()
}

fn perp_bijection(beta: &Bicharacter, f: Option<usize>) -> Result<(), String> {
    let g = beta.group();
    let target: BTreeSet<Vec<usize>> = kernels(g).into_iter().filter(|k| f.is_none_or(|f| k.contains(&f))).collect();
    let classes: Vec<usize> = (0..g.size()).filter(|&u| f.is_none_or(|f| u <= g.mul_idx(u, f))).collect();
    let images: Vec<Vec<usize>> = classes.iter().map(|&u| beta.perp(&g.elem(u)).indices().to_vec()).collect();
    let set: BTreeSet<Vec<usize>> = images.iter().cloned().collect();
    ensure!(set.len() == images.len(), "u ↦ u^⊥ is not injective on {:?}", g.orders());
    ensure!(set == target, "u ↦ u^⊥ misses index-≤2 subgroups on {:?}", g.orders());
    Ok(())
}

fn c5() -> Outcome {
    let start = Instant::now();
    let mut betas: Vec<Bicharacter> = (1..=8).map(standard_beta).collect();
    betas.extend((1..=3).map(z4_beta));
    let (mut forms_checked, mut pairs) = (0, 0);
    for beta in &betas {
        let g = beta.group();
        let forms = e2s(enumerate_forms(beta, &g.whole()))?;
        for mu in &forms {
            ensure!(
                mu.arf_by_basis().as_i8() == arf_bruteforce(mu),
                "Arf on {:?}: basis {:?} vs count {:?}",
                g.orders(),
                mu.arf_by_basis(),
                arf_bruteforce(mu)
            );
            forms_checked += 1;
        }
        // every pair when small; against one fixed form otherwise, which
        // still meets every character μη
        let firsts = if g.size() <= 64 { forms.len() } else { 1 };
        for mu in &forms[..firsts] {
            for eta in &forms {
                if mu == eta {
                    ensure!(mu.agreement_subgroup(eta) == Err(Error::FormsEqual), "μ = η not rejected");
                    continue;
                }
                let s = e2s(mu.agreement_subgroup(eta))?;
                ensure!(2 * s.size() == g.size(), "agreement subgroup of order {} in {}", s.size(), g.size());
                pairs += 1;
            }
        }
    }
    perp_bijection(&standard_beta(4), None)?;
    let b3 = standard_beta(3);
    let f = b3.group().index(&b3.group().element(&[0, 0, 1]).map_err(|e| e.to_string())?);
    perp_bijection(&b3, Some(f))?;
    limit(start, 120.0)?;
    Ok(format!("{forms_checked} forms, {pairs} pairs, perp on Z2^4 and Z2^2x<f>"))
}

fn c6() -> Outcome {
    let mut count = 0;
    let mut ks: Vec<Bicharacter> = (1..=5).map(standard_beta).collect();
    ks.extend((1..=2).map(z4_beta));
    for kb in ks {
        let mut orders = kb.group().orders().to_vec();
        let r = orders.len();
        orders.push(2);
        let t = group(&orders);
        if t.size() > 64 {
            continue;
        }
        let q: Vec<Vec<Rational64>> = (0..=r)
            .map(|i| (0..=r).map(|j| if i < r && j < r { kb.table()[i][j] } else { Rational64::from_integer(0) }).collect())
            .collect();
        let beta = e2s(Bicharacter::new(&t, q))?;
        let k_idx: Vec<usize> = (0..t.size()).filter(|&x| t.elem(x).0[r] == 0).collect();
        let k = e2s(gradinv::abgroup::Subgroup::from_set(&t, k_idx.clone()))?;
        let rad: Vec<usize> = k_idx.iter().copied().filter(|&x| k_idx.iter().all(|&y| beta.sign_idx(x, y) == 1)).collect();
        let t2: Vec<usize> = k_idx.iter().copied().filter(|&x| t.mul_idx(x, x) == 0).collect();
        let rad_prime: Vec<usize> = t2
            .iter()
            .copied()
            .filter(|&x| !rad.contains(&x) && t2.iter().all(|&y| beta.sign_idx(x, y) == 1))
            .collect();
        for nu in e2s(enumerate_nice_maps(&t.whole(), &k, &beta))? {
            let coset: Vec<usize> = (0..t.size()).filter(|x| !k_idx.contains(x)).collect();
            let mu_g = |g: usize, x: usize| nu.value_idx(t.mul_idx(g, x)) * nu.value_idx(g);
            for &g in &coset {
                for &h in &coset {
                    let d = t.mul_idx(t.inv_idx(g), h);
                    for &x in &k_idx {
                        ensure!(mu_g(h, x) == mu_g(g, x) * beta.sign_idx(d, x), "identity fails on {orders:?}");
                        count += 1;
                    }
                }
            }
            if rad.len() == 2 {
                let vals: BTreeSet<i8> = coset.iter().map(|&g| mu_g(g, rad[1])).collect();
                ensure!(vals.len() == 1, "ν(f_β) depends on g on {orders:?}");
            }
            for &x in &rad_prime {
                let vals: BTreeSet<i8> =
                    coset.iter().filter(|&&g| t.order_idx(g) == 2).map(|&g| mu_g(g, x)).collect();
                ensure!(vals.len() == 1, "ν(rad′) depends on g on {orders:?}");
            }
        }
    }
    Ok(format!("{count} pointwise checks"))
}

/// Least p with u·T_[2^p] a square in T/T_[2^p].
fn predicted_p(g: &Group, u: usize) -> u32 {
    for p in 0.. {
        let m = 1i64 << p;
        let square = (0..g.size()).any(|v| {
            let d = g.mul_idx(g.mul_idx(v, v), g.inv_idx(u));
            g.pow_idx(d, m) == 0
        });
        if square {
            return p;
        }
    }
    unreachable!()
}

fn c7() -> Outcome {
    for l in 2..=5u32 {
        let (a, _) = e2s(pauli_involutions(l))?;
        let lab = e2s(classify_involution(&a))?;
        let t2 = a.algebra().group().torsion_subgroup(2).size() as u64;
        let want = (t2 as f64).sqrt().round() as u64;
        ensure!(lab.name() == "2-f-2-0", "φ_A on Pauli({l}) is ({})", lab.name());
        ensure!(e2s(a.profile())?.signature == want, "φ_A on Pauli({l}) signature");
    }
    let mut checked = 0;
    for profile in [vec![2], vec![4], vec![2, 4]] {
        let label = e2s(ClassLabel::parse("2-f-2-0", None, Some(profile.clone())))?;
        let phi = e2s(canonical_representative(&label))?;
        let g = phi.algebra().group().clone();
        let mut support: Vec<u32> = g.orders().to_vec();
        support.sort();
        let mut want: Vec<u32> = profile.iter().flat_map(|&l| [l, l]).collect();
        want.sort();
        ensure!(support == want, "support {:?} for {profile:?}", g.orders());
        for u in 0..g.size() {
            let got = e2s(classify_involution(&e2s(phi.twist(u))?))?;
            let p = predicted_p(&g, u);
            let want = if p == 0 { "2-f-2-0".to_string() } else { format!("2-f-2-{p}") };
            ensure!(got.name() == want, "twist by {} on {profile:?}: ({}) vs ({want})", g.elem(u), got.name());
            checked += 1;
        }
    }
    Ok(format!("Pauli(2..5) and {checked} twists"))
}

fn c8() -> Outcome {
    let start = Instant::now();
    let items = ["1-a-1", "1-b-1", "1-c-1", "2-a-3", "2-b-3", "2-c-4", "3-a-1", "3-b-1", "3-c-1"];
    let mut algs = 0;
    let mut seen = BTreeSet::new();
    let mut labels: Vec<ClassLabel> =
        all_labels(8, 8).into_iter().filter(|l| items.contains(&l.name().as_str())).collect();
    labels.push(e2s(ClassLabel::parse("2-f-2-0", None, Some(vec![2])))?);
    labels.push(e2s(ClassLabel::parse("2-f-2-0", None, Some(vec![2, 2])))?);
    for l in labels {
        let alg = e2s(canonical_representative(&l))?.algebra_arc();
        let g = alg.group().clone();
        if !g.is_elementary_2() || g.size() > 16 || !seen.insert(l.to_string()) {
            continue;
        }
        let found = e2s(find_distinguished(Arc::clone(&alg)))?;
        ensure!(found.unique, "{l}: not flagged unique");
        // twists by central elements repeat a map, so count distinct actions
        let mut hits = BTreeSet::new();
        for u in 0..g.size() {
            let tw = e2s(found.involution.twist(u))?;
            if e2s(is_distinguished(&tw)).map_err(|e| format!("{l}, twist {u}: {e}"))? {
                hits.insert((0..g.size()).map(|t| format!("{:?}", tw.action(t))).collect::<Vec<_>>());
            }
        }
        ensure!(hits.len() == 1, "{l}: {} distinguished twists", hits.len());
        algs += 1;
    }
    let (a, _) = e2s(pauli_involutions(4))?;
    let b = e2s(distinguished_basis(&a))?;
    let laws = e2s(verify_product_laws(&b))?;
    ensure!(laws.ok(), "Pauli(4) laws: {:?}", laws.violations);
    let g = a.algebra().group();
    let a2 = g.index(&e2s(g.element(&[2, 0]))?);
    let b2 = g.index(&e2s(g.element(&[0, 2]))?);
    let x = |s| b.get(s).ok_or("missing basis element");
    ensure!(x(a2)?.mul(x(b2)?) == x(g.mul_idx(a2, b2))?.neg(), "X_a²X_b² ≠ −X_a²b²");
    for (s, ea, eb) in e2s(epsilon_by_signature(&b))? {
        ensure!(ea == eb, "ε at {} disagrees", g.elem(s));
    }
    limit(start, 60.0)?;
    Ok(format!("{algs} supports unique over twists; Pauli(4) laws ({} checks)", laws.checks))
}

fn c9() -> Outcome {
    let mut built = 0;
    for m in 0..=2usize {
        let r = 2 * m + 1;
        let g = group(&vec![2; r]);
        for arf in [1i8, -1] {
            if arf == -1 && m == 0 {
                continue;
            }
            let mu = e2s(QuadraticForm::from_fn(&g.whole(), |e| {
                let x = &e.0;
                let mut q: u32 = (0..m).map(|i| x[2 * i] * x[2 * i + 1]).sum();
                if arf == -1 {
                    q += x[0] + x[1];
                }
                if q.is_multiple_of(2) { 1 } else { -1 }
            }))?;
            ensure!(arf_bruteforce(&mu) == Some(arf), "test form has the wrong Arf");
            let eta = e2s(QuadraticForm::from_fn(&g.whole(), |e| mu.value(e) * if e.0[r - 1] == 1 { -1 } else { 1 }))?;
            let alg = e2s(construct_from_data(&g, &e2s(mu.polarization())?, &mu))?;
            let n = 1usize << m;
            let want = if arf == 1 { Structure::MatRealPair(n) } else { Structure::MatQuatPair(n) };
            let s = e2s(alg.structure())?;
            ensure!(s == want, "Arf {arf}, n={n}: built {s}, expected {want}");
            let inv = e2s(involution_from_form(Arc::new(alg), &eta))?;
            let c = e2s(classify_semisimple_involution(&inv))?;
            ensure!(c.structure == want, "Arf {arf}, n={n}: classified {}", c.structure);
            built += 1;
        }
    }
    let mut fd = FormDoc::default();
    for k in ["[0,0]", "[1,0]", "[0,1]", "[1,1]", "[0,2]", "[1,2]", "[0,3]", "[1,3]"] {
        fd.values.insert(k.into(), 1);
    }
    let doc = DatumDoc::Semisimple {
        orders: vec![2, 4],
        dim: 1,
        k: None,
        mu: Some(fd.clone()),
        nu: None,
        eta: Some(fd),
        omega: None,
    };
    ensure!(matches!(classify_doc(&doc), Err(Error::SecondKindImpossible(_))), "ℤ₄ input not rejected");
    let _ = arf_of_values(&[]);
    Ok(format!("{built} algebras identified; Z4 rejected"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("building-block fidelity", c1),
        ("signature table", c2),
        ("round trip", c3),
        ("partition census", c4),
        ("form-theory oracles", c5),
        ("nice-map coherence", c6),
        ("second-kind complex", c7),
        ("distinguished suite", c8),
        ("semisimple", c9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {} {name}: {detail} [{t:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{t:.2}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
