//! Property tests for the algebraic invariants.

use std::sync::Arc;

use num_rational::Rational64;
use proptest::prelude::*;

use gradinv::abgroup::Group;
use gradinv::classify::{all_labels, canonical_representative, classify_involution};
use gradinv::exactalg::{building_block, tensor_all, BlockName};
use gradinv::forms::{enumerate_forms, enumerate_nice_maps, Arf, Bicharacter, QuadraticForm};
use gradinv::involution::involution_from_form;
use gradinv::oracle::{arf_bruteforce, involution_axioms};

fn arb_group() -> impl Strategy<Value = Group> {
    prop::collection::vec(prop::sample::select(vec![2u32, 3, 4, 6]), 0..4).prop_map(|o| Group::new(&o).unwrap())
}

/// Random GF(2) quadratic form on ℤ₂^r, from an upper-triangular matrix.
fn arb_form() -> impl Strategy<Value = QuadraticForm> {
    (1usize..=6).prop_flat_map(|r| {
        prop::collection::vec(any::<bool>(), r * (r + 1) / 2).prop_map(move |bits| {
            let g = Group::new(&vec![2; r]).unwrap();
            QuadraticForm::from_fn(&g.whole(), |e| {
                let x = &e.0;
                let mut q = 0;
                let mut k = 0;
                for i in 0..r {
                    for j in i..r {
                        if bits[k] {
                            q += x[i] * x[j];
                        }
                        k += 1;
                    }
                }
                if q % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .unwrap()
        })
    })
}

fn arb_form_pair() -> impl Strategy<Value = (QuadraticForm, QuadraticForm)> {
    (arb_form(), any::<u32>()).prop_map(|(mu, c)| {
        // multiply by the character with generator values from c
        let g = mu.group().clone();
        let eta = mu
            .times_character(|t| {
                let e = g.elem(t).0;
                let s: u32 = e.iter().enumerate().map(|(i, &x)| x * (c >> i & 1)).sum();
                if s.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            })
            .unwrap();
        (mu, eta)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws(g in arb_group(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let n = g.size();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul_idx(a, b), g.mul_idx(b, a));
        prop_assert_eq!(g.mul_idx(g.mul_idx(a, b), c), g.mul_idx(a, g.mul_idx(b, c)));
        prop_assert_eq!(g.mul_idx(a, g.inv_idx(a)), 0);
        prop_assert_eq!(g.index(&g.elem(a)), a);
        prop_assert_eq!(g.pow_idx(a, g.order_idx(a) as i64), 0);
    }

    #[test]
    fn arf_count_matches_basis(mu in arb_form()) {
        let rad = mu.polarization().unwrap().radical().size();
        prop_assume!(rad <= 2);
        prop_assert_eq!(mu.arf_by_basis().as_i8(), arf_bruteforce(&mu));
        prop_assert_eq!(mu.arf().as_i8(), arf_bruteforce(&mu));
    }

    #[test]
    fn agreement_subgroup_has_index_two((mu, eta) in arb_form_pair()) {
        prop_assume!(mu != eta);
        let s = mu.agreement_subgroup(&eta).unwrap();
        prop_assert_eq!(2 * s.size(), mu.group().size());
    }

    #[test]
    fn twisting_a_form(mu in arb_form(), u in any::<usize>(), v in any::<usize>()) {
        let g = mu.group().clone();
        let (u, v) = (u % g.size(), v % g.size());
        let beta = mu.polarization().unwrap();
        let mu_u = mu.twisted(u);
        prop_assert!(mu_u.same_polarization(&mu));
        for t in 0..g.size() {
            prop_assert_eq!(mu_u.value_idx(t), beta.sign_idx(u, t) * mu.value_idx(t));
        }
        // Arf(μ_u) = Arf(μ)·μ(u)
        let want = match (mu.arf(), mu.value_idx(u)) {
            (Arf::Undefined, _) => Arf::Undefined,
            (a, 1) => a,
            (Arf::Plus, _) => Arf::Minus,
            (Arf::Minus, _) => Arf::Plus,
        };
        prop_assert_eq!(mu_u.arf(), want);
        let (direct, stepwise) = (mu.twisted(g.mul_idx(u, v)), mu_u.twisted(v));
        prop_assert_eq!(direct.values(), stepwise.values());
    }

    #[test]
    fn forms_extend_with_their_polarization(mu in arb_form()) {
        let beta = mu.polarization().unwrap();
        let g = mu.group();
        let all = enumerate_forms(&beta, &g.whole()).unwrap();
        prop_assert_eq!(all.len(), g.size());
        prop_assert!(all.iter().all(|f| f.has_polarization(&beta)));
        prop_assert!(all.iter().any(|f| f.values() == mu.values()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn nice_map_identity(r in 1usize..=4, pick in any::<usize>()) {
        let t = Group::new(&vec![2; r + 1]).unwrap();
        let mut q = vec![vec![Rational64::from_integer(0); r + 1]; r + 1];
        for i in (0..r.saturating_sub(1)).step_by(2) {
            q[i][i + 1] = Rational64::new(1, 2);
            q[i + 1][i] = Rational64::new(1, 2);
        }
        let beta = Bicharacter::new(&t, q).unwrap();
        let k_idx: Vec<usize> = (0..t.size()).filter(|&x| t.elem(x).0[r] == 0).collect();
        let k = gradinv::abgroup::Subgroup::from_set(&t, k_idx.clone()).unwrap();
        let maps = enumerate_nice_maps(&t.whole(), &k, &beta).unwrap();
        let nu = &maps[pick % maps.len()];
        let coset = nu.coset();
        for &g in &coset {
            let mg = nu.mu_g(g).unwrap();
            for &h in &coset {
                let mh = nu.mu_g(h).unwrap();
                let d = t.mul_idx(t.inv_idx(g), h);
                for &x in &k_idx {
                    prop_assert_eq!(mh.value_idx(x), mg.value_idx(x) * beta.sign_idx(d, x));
                }
            }
        }
    }

    #[test]
    fn forms_give_involutions(
        mut blocks in prop::collection::vec(prop::sample::select(vec![BlockName::M2R, BlockName::Quaternion]), 1..3),
        with_c in any::<bool>(),
        pick in any::<usize>(),
    ) {
        // ℂ⊗ℂ is not a division grading, so at most one ℂ
        if with_c {
            blocks.push(BlockName::Complex);
        }
        let parts: Vec<_> = blocks.iter().map(|&b| building_block(b).unwrap()).collect();
        let alg = Arc::new(tensor_all(&parts, false).unwrap());
        let beta = alg.recovered_beta().unwrap();
        let g = alg.group().clone();
        let forms = enumerate_forms(&beta, &g.whole()).unwrap();
        let eta = &forms[pick % forms.len()];
        let inv = involution_from_form(Arc::clone(&alg), eta).unwrap();
        for t in 0..g.size() {
            prop_assert_eq!(inv.eigenvalue_of(t, alg.rep(t)), Some(eta.value_idx(t)));
        }
        prop_assert!(involution_axioms(&inv, "random").unwrap().pass());
    }

    #[test]
    fn representatives_round_trip(pick in any::<usize>()) {
        let labels = all_labels(4, 4);
        let l = &labels[pick % labels.len()];
        let inv = canonical_representative(l).unwrap();
        prop_assert_eq!(&classify_involution(&inv).unwrap(), l);
    }
}
