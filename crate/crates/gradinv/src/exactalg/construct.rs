//! Realizing a triple (T, β, μ) as a tensor product of blocks.

use super::{building_block, tensor_all, BlockName, GradedAlgebra};
use crate::abgroup::Group;
use crate::classify::classify_grading_data;
use crate::error::{Error, Result};
use crate::forms::{Bicharacter, QuadraticForm};

/// Blocks realizing family `family` with n = 2^m.
pub fn family_blocks(family: &str, m: u32) -> Result<Vec<BlockName>> {
    let need = |k: u32| {
        m.checked_sub(k).ok_or_else(|| Error::InvalidTriple(format!("({family}) needs m ≥ {k}")))
    };
    let (k, extra): (u32, &[BlockName]) = match family {
        "1-a" => (m, &[]),
        "1-b" => (need(1)?, &[BlockName::Quaternion]),
        "1-c" => (m, &[BlockName::Complex]),
        "1-d" => (need(1)?, &[BlockName::M2C]),
        "1-e" => (m, &[BlockName::Split]),
        "1-f" => (need(1)?, &[BlockName::Quaternion, BlockName::Split]),
        "1-g" => (need(1)?, &[BlockName::M2Split]),
        "1-h" => (need(2)?, &[BlockName::Quaternion, BlockName::M2Split]),
        "1-i" => (need(1)?, &[BlockName::M2RQuat]),
        f => return Err(Error::InvalidTriple(format!("unknown family {f}"))),
    };
    let mut out = vec![BlockName::M2R; k as usize];
    out.extend_from_slice(extra);
    if out.is_empty() {
        out.push(BlockName::Real);
    }
    Ok(out)
}

/// A graded-division algebra with one-dimensional components whose
/// commutation and square data on T are β and μ (μ given on T_[2]).
pub fn construct_from_data(t: &Group, beta: &Bicharacter, mu: &QuadraticForm) -> Result<GradedAlgebra> {
    let label = classify_grading_data(beta, mu)?;
    let m = label.m.expect("power-of-two n");
    let parts: Vec<GradedAlgebra> =
        family_blocks(&label.family, m)?.into_iter().map(building_block).collect::<Result<_>>()?;
    let model = tensor_all(&parts, false)?;
    let mb = model.recovered_beta().ok_or_else(|| Error::InvalidTriple("model β unavailable".into()))?;
    let mm = model.recovered_mu().ok_or_else(|| Error::InvalidTriple("model μ unavailable".into()))?;
    let map = find_isomorphism(t, beta, mu, &mb, &mm)
        .ok_or_else(|| Error::InvalidTriple("no isometry onto the model; data inconsistent".into()))?;
    model.relabel(t, &map)
}

/// Group isomorphism ψ: src → dst carrying (β, μ) to (β′, μ′), found by
/// backtracking over generator images; `out[t] = ψ(t)`.
pub fn find_isomorphism(
    src: &Group,
    beta: &Bicharacter,
    mu: &QuadraticForm,
    beta_d: &Bicharacter,
    mu_d: &QuadraticForm,
) -> Option<Vec<usize>> {
    let dst = beta_d.group();
    if src.size() != dst.size() {
        return None;
    }
    let gens: Vec<usize> = src.generators().iter().map(|g| src.index(g)).collect();
    let orders: Vec<u32> = src.orders().to_vec();
    let mut images = Vec::new();
    let span = vec![(0usize, 0usize)];
    let mut out = None;
    search(src, dst, beta, mu, beta_d, mu_d, &gens, &orders, &mut images, span, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    src: &Group,
    dst: &Group,
    beta: &Bicharacter,
    mu: &QuadraticForm,
    beta_d: &Bicharacter,
    mu_d: &QuadraticForm,
    gens: &[usize],
    orders: &[u32],
    images: &mut Vec<usize>,
    span: Vec<(usize, usize)>,
    out: &mut Option<Vec<usize>>,
) {
    let j = images.len();
    if j == gens.len() {
        let mut map = vec![0; src.size()];
        for (s, d) in span {
            map[s] = d;
        }
        *out = Some(map);
        return;
    }
    let (g, o) = (gens[j], orders[j]);
    for h in 0..dst.size() {
        if o % dst.order_idx(h) != 0 {
            continue;
        }
        if (0..j).any(|i| beta.rot_idx(gens[i], g) != beta_d.rot_idx(images[i], h)) || beta.rot_idx(g, g) != beta_d.rot_idx(h, h) {
            continue;
        }
        let mut seen = vec![false; dst.size()];
        for &(_, d) in &span {
            seen[d] = true;
        }
        let mut next = span.clone();
        let mut ok = true;
        'outer: for e in 1..o {
            let (ge, he) = (src.pow_idx(g, e as i64), dst.pow_idx(h, e as i64));
            for &(s, d) in &span {
                let (s2, d2) = (src.mul_idx(s, ge), dst.mul_idx(d, he));
                if seen[d2] {
                    ok = false;
                    break 'outer;
                }
                seen[d2] = true;
                if mu.domain().contains_idx(s2) != mu_d.domain().contains_idx(d2)
                    || (mu.domain().contains_idx(s2) && mu.value_idx(s2) != mu_d.value_idx(d2))
                {
                    ok = false;
                    break 'outer;
                }
                next.push((s2, d2));
            }
        }
        if !ok {
            continue;
        }
        images.push(h);
        search(src, dst, beta, mu, beta_d, mu_d, gens, orders, images, next, out);
        images.pop();
        if out.is_some() {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(t: &Group, beta: &Bicharacter, mu: &QuadraticForm) {
        let a = construct_from_data(t, beta, mu).unwrap();
        assert!(a.verify_grading().ok);
        assert_eq!(a.group(), t);
        assert_eq!(&a.recovered_beta().unwrap(), beta);
        assert_eq!(a.recovered_mu().unwrap().values(), mu.values());
    }

    #[test]
    fn realizes_elementary_triples() {
        let t = Group::new(&[2, 2, 2, 2]).unwrap();
        for mask in [0b0011u32, 0b0110, 0b1111] {
            let mu = QuadraticForm::from_fn(&t.whole(), |e| {
                let x: Vec<u32> = e.0.clone();
                let q = x[0] * x[2] + x[1] * x[3] + (0..4).filter(|&i| mask >> i & 1 == 1).map(|i| x[i]).sum::<u32>();
                if q.is_multiple_of(2) { 1 } else { -1 }
            })
            .unwrap();
            check(&t, &mu.polarization().unwrap(), &mu);
        }
    }

    #[test]
    fn realizes_z4_triples() {
        for b in [BlockName::M2C, BlockName::M2Split, BlockName::M2RQuat] {
            let a = building_block(b).unwrap();
            let beta = a.recovered_beta().unwrap();
            let mu = a.recovered_mu().unwrap();
            check(a.group(), &beta, &mu);
        }
    }
}
