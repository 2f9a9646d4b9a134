//! Matrix data of the building blocks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::cyclo::Cyc;
use super::matrix::Mat;
use crate::error::{Error, Result};

/// Named graded blocks. The first eight are the basic division gradings
/// with one-dimensional components (plus the Pauli gradings); the rest are
/// auxiliary pieces used by the realizations with larger components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockName {
    /// ℂ = ℝ1 ⊕ ℝi by ℤ₂.
    Complex,
    /// ℝ×ℝ = ℝ(1,1) ⊕ ℝ(1,−1) by ℤ₂.
    Split,
    /// M₂(ℝ) by ℤ₂².
    M2R,
    /// ℍ = ℝ1 ⊕ ℝi ⊕ ℝj ⊕ ℝk by ℤ₂².
    Quaternion,
    /// M₂(ℂ) by ℤ₂×ℤ₄.
    M2C,
    /// M₂(ℝ×ℝ) by ℤ₂×ℤ₄.
    M2Split,
    /// M₂(ℝ)×ℍ by ℤ₂×ℤ₄.
    M2RQuat,
    /// Generalized Pauli grading of M_l(ℂ) by ℤ_l², components ℂX.
    Pauli(u32),
    /// ℝ, trivially graded.
    Real,
    /// ℍ, trivially graded.
    QuatTrivial,
    /// ℂ, trivially graded.
    ComplexTrivial,
    /// M₂(ℝ) by ℤ₂ with D_e = ℝI ⊕ ℝJ.
    M2RCoarse,
    /// ℍ by ℤ₂ with D_e = ℝ1 ⊕ ℝi.
    QuatCoarse,
    /// M₂(ℂ) by ℤ₄ with D_e = ℝI ⊕ ℝX_{ab²}.
    M2CCoarse,
}

/// How the center of a block sits in its matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CenterKind {
    Real,
    Complex,
    Split,
}

impl fmt::Display for BlockName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BlockName::Complex => "C".to_string(),
            BlockName::Split => "RxR".to_string(),
            BlockName::M2R => "M2R".to_string(),
            BlockName::Quaternion => "H".to_string(),
            BlockName::M2C => "M2C".to_string(),
            BlockName::M2Split => "M2RxR".to_string(),
            BlockName::M2RQuat => "M2RxH".to_string(),
            BlockName::Pauli(l) => format!("pauli{l}"),
            BlockName::Real => "R".to_string(),
            BlockName::QuatTrivial => "H0".to_string(),
            BlockName::ComplexTrivial => "C0".to_string(),
            BlockName::M2RCoarse => "M2R/Z2".to_string(),
            BlockName::QuatCoarse => "H/Z2".to_string(),
            BlockName::M2CCoarse => "M2C/Z4".to_string(),
        };
        f.write_str(&s)
    }
}

impl FromStr for BlockName {
    type Err = Error;

    fn from_str(s: &str) -> Result<BlockName> {
        let b = match s {
            "C" => BlockName::Complex,
            "RxR" => BlockName::Split,
            "M2R" => BlockName::M2R,
            "H" => BlockName::Quaternion,
            "M2C" => BlockName::M2C,
            "M2RxR" => BlockName::M2Split,
            "M2RxH" => BlockName::M2RQuat,
            "R" => BlockName::Real,
            "H0" => BlockName::QuatTrivial,
            "C0" => BlockName::ComplexTrivial,
            "M2R/Z2" => BlockName::M2RCoarse,
            "H/Z2" => BlockName::QuatCoarse,
            "M2C/Z4" => BlockName::M2CCoarse,
            _ => {
                let l = s
                    .strip_prefix("pauli")
                    .and_then(|x| x.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown block {s}")))?;
                if l < 2 {
                    return Err(Error::Parse("Pauli blocks need l ≥ 2".into()));
                }
                BlockName::Pauli(l)
            }
        };
        Ok(b)
    }
}

impl BlockName {
    /// The seven basic blocks with one-dimensional components.
    pub const BASIC: [BlockName; 7] = [
        BlockName::Complex,
        BlockName::Split,
        BlockName::M2R,
        BlockName::Quaternion,
        BlockName::M2C,
        BlockName::M2Split,
        BlockName::M2RQuat,
    ];

    pub fn orders(self) -> Vec<u32> {
        match self {
            BlockName::Complex | BlockName::Split | BlockName::M2RCoarse | BlockName::QuatCoarse => vec![2],
            BlockName::M2R | BlockName::Quaternion => vec![2, 2],
            BlockName::M2C | BlockName::M2Split | BlockName::M2RQuat => vec![2, 4],
            BlockName::Pauli(l) => vec![l, l],
            BlockName::Real | BlockName::QuatTrivial | BlockName::ComplexTrivial => vec![],
            BlockName::M2CCoarse => vec![4],
        }
    }

    pub fn dim_component(self) -> usize {
        match self {
            BlockName::Pauli(_) | BlockName::ComplexTrivial => 2,
            BlockName::M2RCoarse | BlockName::QuatCoarse | BlockName::M2CCoarse => 2,
            BlockName::QuatTrivial => 4,
            _ => 1,
        }
    }

    pub fn center(self) -> CenterKind {
        match self {
            BlockName::Complex | BlockName::M2C | BlockName::Pauli(_) | BlockName::ComplexTrivial => {
                CenterKind::Complex
            }
            BlockName::M2CCoarse => CenterKind::Complex,
            BlockName::Split | BlockName::M2Split | BlockName::M2RQuat => CenterKind::Split,
            _ => CenterKind::Real,
        }
    }

    /// Conductor needed by the block's entries.
    pub fn conductor(self) -> u32 {
        match self {
            BlockName::M2C | BlockName::M2CCoarse => 8,
            BlockName::Pauli(l) => num_integer::lcm(2 * l, 4),
            _ => 4,
        }
    }

    /// Homogeneous bases indexed by the block group's element index
    /// (mixed radix, last generator fastest).
    pub fn basis(self) -> Vec<Vec<Mat>> {
        let c = self.conductor();
        let m = |rows: &[&[i64]]| Mat::from_ints(rows, c);
        let i = || Cyc::i(c);
        // quaternion units in M₂(ℂ)
        let q1 = || Mat::identity(2, c);
        let qi = || Mat::diag(&[i(), i().neg()]);
        let qj = || m(&[&[0, 1], &[-1, 0]]);
        let qk = || qi().mul(&qj());
        let pair = |a: Mat, b: Mat| Mat::block_diag(&a, &b);
        // group (a,b) ∈ ℤ₂×ℤ₄ has index 4a+b; figures list e,a,b,ab,b²,ab²,b³,ab³
        let z2z4 = |listed: Vec<Mat>| -> Vec<Vec<Mat>> {
            let mut out = vec![Vec::new(); 8];
            for (k, x) in listed.into_iter().enumerate() {
                let (a, b) = (k % 2, k / 2);
                out[4 * a + b] = vec![x];
            }
            out
        };
        match self {
            BlockName::Complex => vec![vec![Mat::identity(1, c)], vec![Mat::scalar(1, &i())]],
            BlockName::Split => vec![vec![Mat::identity(2, c)], vec![m(&[&[1, 0], &[0, -1]])]],
            // (a,b) ∈ ℤ₂² has index 2a+b; listed e,a,b,ab
            BlockName::M2R => vec![
                vec![m(&[&[1, 0], &[0, 1]])],
                vec![m(&[&[-1, 0], &[0, 1]])],
                vec![m(&[&[0, 1], &[1, 0]])],
                vec![m(&[&[0, -1], &[1, 0]])],
            ],
            BlockName::Quaternion => vec![vec![q1()], vec![qj()], vec![qi()], vec![qk()]],
            BlockName::M2C => {
                let w = Cyc::zeta(c, 1);
                let w3 = Cyc::zeta(c, 3);
                let d = |x: &Cyc| Mat::diag(&[x.clone(), x.neg()]);
                let off = |x: &Cyc| {
                    Mat::from_fn(2, 2, c, |r, s| match (r, s) {
                        (0, 1) => x.neg(),
                        (1, 0) => x.clone(),
                        _ => Cyc::zero(c),
                    })
                };
                z2z4(vec![
                    q1(),
                    m(&[&[0, 1], &[1, 0]]),
                    d(&w),
                    off(&w),
                    Mat::scalar(2, &i()),
                    m(&[&[0, 1], &[1, 0]]).scale(&i()),
                    d(&w3),
                    off(&w3),
                ])
            }
            BlockName::M2Split => z2z4(vec![
                pair(q1(), q1()),
                pair(m(&[&[1, 0], &[0, -1]]), m(&[&[1, 0], &[0, -1]])),
                pair(m(&[&[0, 1], &[1, 0]]), m(&[&[0, -1], &[1, 0]])),
                pair(m(&[&[0, 1], &[-1, 0]]), m(&[&[0, -1], &[-1, 0]])),
                pair(q1(), q1().neg()),
                pair(m(&[&[1, 0], &[0, -1]]), m(&[&[-1, 0], &[0, 1]])),
                pair(m(&[&[0, 1], &[1, 0]]), m(&[&[0, 1], &[-1, 0]])),
                pair(m(&[&[0, 1], &[-1, 0]]), m(&[&[0, 1], &[1, 0]])),
            ]),
            BlockName::M2RQuat => {
                let r0 = || q1();
                let ra = || m(&[&[0, -1], &[1, 0]]);
                let rb = || m(&[&[1, 0], &[0, -1]]);
                let rab = || m(&[&[0, 1], &[1, 0]]);
                z2z4(vec![
                    pair(r0(), q1()),
                    pair(ra(), qi()),
                    pair(rb(), qj()),
                    pair(rab(), qk()),
                    pair(r0(), q1().neg()),
                    pair(ra(), qi().neg()),
                    pair(rb(), qj().neg()),
                    pair(rab(), qk().neg()),
                ])
            }
            BlockName::Pauli(l) => pauli_basis(l),
            BlockName::Real => vec![vec![Mat::identity(1, c)]],
            BlockName::QuatTrivial => vec![vec![q1(), qi(), qj(), qk()]],
            BlockName::ComplexTrivial => vec![vec![Mat::identity(1, c), Mat::scalar(1, &i())]],
            BlockName::M2RCoarse => {
                let b = BlockName::M2R.basis();
                vec![vec![b[0][0].clone(), b[3][0].clone()], vec![b[2][0].clone(), b[1][0].clone()]]
            }
            BlockName::QuatCoarse => vec![vec![q1(), qi()], vec![qj(), qk()]],
            BlockName::M2CCoarse => {
                let b = BlockName::M2C.basis();
                let x = |a: usize, k: usize| b[4 * a + k % 4][0].clone();
                (0..4).map(|k| vec![x(0, k), x(1, k + 2)]).collect()
            }
        }
    }
}

/// Pauli pair X_a = diag(ε^{l−1}, …, ε, 1), X_b = cyclic shift, ε = e^{2πi/l}.
pub fn pauli_generators(l: u32) -> (Mat, Mat) {
    let c = BlockName::Pauli(l).conductor();
    let n = l as usize;
    let step = (c / l) as i64;
    let xa = Mat::diag(&(0..n).map(|r| Cyc::zeta(c, step * (n - 1 - r) as i64)).collect::<Vec<_>>());
    let xb = Mat::from_fn(n, n, c, |r, s| if s == (r + 1) % n { Cyc::one(c) } else { Cyc::zero(c) });
    (xa, xb)
}

/// Hermitian matrices defining the two second kind involutions on Pauli(l).
pub fn pauli_forms(l: u32) -> (Mat, Mat) {
    let c = BlockName::Pauli(l).conductor();
    let n = l as usize;
    let a = Mat::from_fn(n, n, c, |r, s| {
        let hit = if r == n - 1 || s == n - 1 { r == s } else { r + s == n - 2 };
        if hit {
            Cyc::one(c)
        } else {
            Cyc::zero(c)
        }
    });
    let b = Mat::from_fn(n, n, c, |r, s| if r + s == n - 1 { Cyc::one(c) } else { Cyc::zero(c) });
    (a, b)
}

fn pauli_basis(l: u32) -> Vec<Vec<Mat>> {
    let c = BlockName::Pauli(l).conductor();
    let (xa, xb) = pauli_generators(l);
    let i = Cyc::i(c);
    let mut out = Vec::new();
    for j in 0..l {
        for k in 0..l {
            let x = xa.pow(j).mul(&xb.pow(k));
            out.push(vec![x.clone(), x.scale(&i)]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for b in BlockName::BASIC.iter().copied().chain([
            BlockName::Pauli(3),
            BlockName::Real,
            BlockName::QuatTrivial,
            BlockName::ComplexTrivial,
            BlockName::M2RCoarse,
            BlockName::QuatCoarse,
            BlockName::M2CCoarse,
        ]) {
            assert_eq!(b.to_string().parse::<BlockName>().unwrap(), b);
        }
        assert!("pauli1".parse::<BlockName>().is_err());
    }

    #[test]
    fn printed_matrices() {
        let b = BlockName::M2R.basis();
        assert_eq!(b[3][0], Mat::from_ints(&[&[0, -1], &[1, 0]], 4));
        let h = BlockName::Quaternion.basis();
        // i j = k
        assert_eq!(h[2][0].mul(&h[1][0]), h[3][0]);
        let (xa, xb) = pauli_generators(3);
        let eps = Cyc::zeta(12, 4);
        assert_eq!(xa.mul(&xb), xb.mul(&xa).scale(&eps));
        assert_eq!(xa.pow(3), Mat::identity(3, 12));
        assert_eq!(xb.pow(3), Mat::identity(3, 12));
    }

    #[test]
    fn pauli_forms_hermitian() {
        for l in 2..6 {
            let (a, b) = pauli_forms(l);
            assert_eq!(a.conj_transpose(), a);
            assert_eq!(b.conj_transpose(), b);
        }
    }
}
