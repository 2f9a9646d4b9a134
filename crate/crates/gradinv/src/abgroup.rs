//! Finite abelian groups given as products of cyclic factors.
//!
//! Elements are exponent vectors. Internally most code works with the
//! mixed-radix index of an element; index order coincides with
//! lexicographic order of exponent vectors.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Group {
    inner: Arc<GroupInner>,
}

struct GroupInner {
    orders: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
    /// Cayley table, built on first use for small groups.
    table: OnceLock<Option<Vec<u16>>>,
}

const TABLE_MAX: usize = 256;

impl PartialEq for GroupInner {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
    }
}

impl Eq for GroupInner {}

impl std::hash::Hash for GroupInner {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.orders.hash(h);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u32>);

impl GroupElement {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group{:?}", self.inner.orders)
    }
}

impl Group {
    /// Product of cyclic groups of the given orders. An empty list gives
    /// the trivial group.
    pub fn new(orders: &[u32]) -> Result<Group> {
        if let Some(o) = orders.iter().find(|&&o| o < 2) {
            return Err(Error::InvalidGroup(format!("cyclic factor of order {o}")));
        }
        let mut size: usize = 1;
        for &o in orders {
            size = size
                .checked_mul(o as usize)
                .filter(|s| *s <= 1 << 24)
                .ok_or_else(|| Error::InvalidGroup("group too large".into()))?;
        }
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        Ok(Group { inner: Arc::new(GroupInner { orders: orders.to_vec(), strides, size, table: OnceLock::new() }) })
    }

    pub fn trivial() -> Group {
        Group::new(&[]).unwrap()
    }

    pub fn orders(&self) -> &[u32] {
        &self.inner.orders
    }

    pub fn rank(&self) -> usize {
        self.inner.orders.len()
    }

    pub fn size(&self) -> usize {
        self.inner.size
    }

    pub fn is_elementary_2(&self) -> bool {
        self.orders().iter().all(|&o| o == 2)
    }

    /// Direct product, factors of `self` first.
    pub fn product(&self, other: &Group) -> Group {
        let mut o = self.orders().to_vec();
        o.extend_from_slice(other.orders());
        Group::new(&o).expect("product of valid groups")
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        GroupElement(e)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        if exps.len() != self.rank() {
            return Err(Error::MismatchedGroup(format!("{exps:?} for {self:?}")));
        }
        Ok(GroupElement(
            exps.iter()
                .zip(self.orders())
                .map(|(&e, &o)| e.rem_euclid(o as i64) as u32)
                .collect(),
        ))
    }

    pub fn check(&self, a: &GroupElement) -> Result<()> {
        if a.0.len() != self.rank() || a.0.iter().zip(self.orders()).any(|(&e, &o)| e >= o) {
            return Err(Error::MismatchedGroup(format!("{a} for {self:?}")));
        }
        Ok(())
    }

    pub fn index(&self, a: &GroupElement) -> usize {
        a.0.iter().zip(&self.inner.strides).map(|(&e, &s)| e as usize * s).sum()
    }

    pub fn elem(&self, idx: usize) -> GroupElement {
        GroupElement(
            self.orders()
                .iter()
                .zip(&self.inner.strides)
                .map(|(&o, &s)| ((idx / s) % o as usize) as u32)
                .collect(),
        )
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(move |i| self.elem(i))
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        let n = self.inner.size;
        let table = self.inner.table.get_or_init(|| {
            (n <= TABLE_MAX).then(|| {
                (0..n * n).map(|k| self.mul_by_digits(k / n, k % n) as u16).collect()
            })
        });
        match table {
            Some(t) => t[a * n + b] as usize,
            None => self.mul_by_digits(a, b),
        }
    }

    fn mul_by_digits(&self, a: usize, b: usize) -> usize {
        let mut r = 0;
        for (&o, &s) in self.orders().iter().zip(&self.inner.strides) {
            let o = o as usize;
            r += (((a / s) % o + (b / s) % o) % o) * s;
        }
        r
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        let mut r = 0;
        for (&o, &s) in self.orders().iter().zip(&self.inner.strides) {
            let o = o as usize;
            r += ((o - (a / s) % o) % o) * s;
        }
        r
    }

    pub fn pow_idx(&self, a: usize, n: i64) -> usize {
        let mut r = 0;
        for (&o, &s) in self.orders().iter().zip(&self.inner.strides) {
            let e = ((a / s) % o as usize) as i64;
            r += ((e * n).rem_euclid(o as i64) as usize) * s;
        }
        r
    }

    pub fn order_idx(&self, a: usize) -> u32 {
        let mut l = 1u32;
        for (&o, &s) in self.orders().iter().zip(&self.inner.strides) {
            let e = ((a / s) % o as usize) as u32;
            let k = o / num_integer::gcd(e, o);
            l = num_integer::lcm(l, k);
        }
        l
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement(
            a.0.iter().zip(&b.0).zip(self.orders()).map(|((&x, &y), &o)| (x + y) % o).collect(),
        ))
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement(a.0.iter().zip(self.orders()).map(|(&x, &o)| (o - x) % o).collect()))
    }

    pub fn pow(&self, a: &GroupElement, n: i64) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.elem(self.pow_idx(self.index(a), n)))
    }

    pub fn order(&self, a: &GroupElement) -> Result<u32> {
        self.check(a)?;
        Ok(self.order_idx(self.index(a)))
    }

    /// Exponent of the group (lcm of factor orders).
    pub fn exponent(&self) -> u32 {
        self.orders().iter().fold(1, |l, &o| num_integer::lcm(l, o))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            generators: self.generators(),
            elements: (0..self.size()).collect(),
            member: vec![true; self.size()],
        }
    }

    /// T_[n] = { t : t^n = e }.
    pub fn torsion_subgroup(&self, n: i64) -> Subgroup {
        let els: Vec<usize> = (0..self.size()).filter(|&i| self.pow_idx(i, n) == 0).collect();
        Subgroup::from_elements(self, els)
    }

    /// T^[n] = { t^n : t in T }.
    pub fn power_subgroup(&self, n: i64) -> Subgroup {
        let mut els: Vec<usize> = (0..self.size()).map(|i| self.pow_idx(i, n)).collect();
        els.sort_unstable();
        els.dedup();
        Subgroup::from_elements(self, els)
    }

    /// All subgroups of index 2, as kernels of the nontrivial characters to {±1}.
    pub fn index2_subgroups(&self) -> Vec<Subgroup> {
        let even: Vec<usize> = (0..self.rank()).filter(|&i| self.orders()[i].is_multiple_of(2)).collect();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << even.len()) {
            let els: Vec<usize> = (0..self.size())
                .filter(|&t| {
                    let e = self.elem(t);
                    let parity: u32 = even
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .map(|(_, &i)| e.0[i])
                        .sum();
                    parity.is_multiple_of(2)
                })
                .collect();
            out.push(Subgroup::from_elements(self, els));
        }
        out
    }

    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        for g in gens {
            self.check(g)?;
        }
        let idx: Vec<usize> = gens.iter().map(|g| self.index(g)).collect();
        let mut member = vec![false; self.size()];
        member[0] = true;
        let mut els = vec![0usize];
        let mut k = 0;
        while k < els.len() {
            let x = els[k];
            for &g in &idx {
                let y = self.mul_idx(x, g);
                if !member[y] {
                    member[y] = true;
                    els.push(y);
                }
            }
            k += 1;
        }
        els.sort_unstable();
        Ok(Subgroup { group: self.clone(), generators: gens.to_vec(), elements: els, member })
    }
}

/// A subgroup stored with its full element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    group: Group,
    generators: Vec<GroupElement>,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    /// Builds from an element list known to be closed.
    pub(crate) fn from_elements(group: &Group, mut elements: Vec<usize>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let mut member = vec![false; group.size()];
        for &e in &elements {
            member[e] = true;
        }
        let mut sg = Subgroup { group: group.clone(), generators: Vec::new(), elements, member };
        sg.generators = sg.basis().into_iter().map(|i| group.elem(i)).collect();
        sg
    }

    /// Checked constructor from an arbitrary element set.
    pub fn from_set(group: &Group, elements: Vec<usize>) -> Result<Subgroup> {
        let sg = Subgroup::from_elements(group, elements);
        if !sg.member[0] {
            return Err(Error::InvalidGroup("subset misses the identity".into()));
        }
        for &a in &sg.elements {
            for &b in &sg.elements {
                if !sg.member[group.mul_idx(a, b)] {
                    return Err(Error::InvalidGroup("subset not closed".into()));
                }
            }
        }
        Ok(sg)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.elements.iter().map(|&i| self.group.elem(i)).collect()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn index_in_parent(&self) -> usize {
        self.group.size() / self.size()
    }

    pub fn contains_idx(&self, i: usize) -> bool {
        self.member[i]
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.group.check(a).is_ok() && self.member[self.group.index(a)]
    }

    /// Position of an element inside the sorted element list.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.elements.binary_search(&i).ok()
    }

    pub fn is_whole(&self) -> bool {
        self.size() == self.group.size()
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let els = self.elements.iter().copied().filter(|&i| other.member[i]).collect();
        Subgroup::from_elements(&self.group, els)
    }

    /// Complement T ∖ H as sorted indices.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.group.size()).filter(|&i| !self.member[i]).collect()
    }

    /// Coset representatives, the least index in each coset.
    pub fn coset_representatives(&self) -> Vec<usize> {
        let g = &self.group;
        let mut seen = vec![false; g.size()];
        let mut reps = Vec::new();
        for t in 0..g.size() {
            if !seen[t] {
                reps.push(t);
                for &h in &self.elements {
                    seen[g.mul_idx(t, h)] = true;
                }
            }
        }
        reps
    }

    /// Independent generators giving a direct-product decomposition,
    /// chosen greedily by decreasing order.
    pub fn basis(&self) -> Vec<usize> {
        let g = &self.group;
        let mut cand: Vec<usize> = self.elements.iter().copied().filter(|&i| i != 0).collect();
        cand.sort_by_key(|&i| (std::cmp::Reverse(g.order_idx(i)), i));
        let mut chosen = Vec::new();
        let mut span = vec![false; g.size()];
        span[0] = true;
        let mut span_size = 1;
        while span_size < self.size() {
            let pick = cand.iter().copied().find(|&c| {
                let o = g.order_idx(c);
                (1..o).all(|k| !span[g.pow_idx(c, k as i64)])
            });
            let c = match pick {
                Some(c) => c,
                None => break,
            };
            let cur: Vec<usize> = (0..g.size()).filter(|&i| span[i]).collect();
            for k in 1..g.order_idx(c) {
                let p = g.pow_idx(c, k as i64);
                for &s in &cur {
                    span[g.mul_idx(s, p)] = true;
                }
            }
            span_size = span.iter().filter(|&&b| b).count();
            chosen.push(c);
        }
        debug_assert_eq!(span_size, self.size(), "greedy basis failed");
        chosen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_orders() {
        let g = Group::new(&[2, 4]).unwrap();
        assert_eq!(g.size(), 8);
        assert_eq!(g.order(&GroupElement(vec![0, 1])).unwrap(), 4);
        let x = GroupElement(vec![1, 2]);
        assert_eq!(g.mul(&x, &x).unwrap(), g.identity());
        let h = Group::new(&[4, 4]).unwrap();
        assert_eq!(h.order(&GroupElement(vec![2, 2])).unwrap(), 2);
        assert_eq!(Group::new(&[3]).unwrap().size(), 3);
        assert!(Group::new(&[1]).is_err());
    }

    #[test]
    fn torsion_and_powers() {
        let g = Group::new(&[2, 4]).unwrap();
        assert_eq!(g.torsion_subgroup(2).size(), 4);
        assert_eq!(g.power_subgroup(2).size(), 2);
        let e = Group::new(&[2, 2, 2, 2]).unwrap();
        assert!(e.torsion_subgroup(2).is_whole());
        assert_eq!(e.power_subgroup(2).size(), 1);
        let f = Group::new(&[4, 4]).unwrap();
        let p = f.power_subgroup(2);
        assert_eq!(p.size(), 4);
        assert!(p.indices().iter().all(|&i| f.order_idx(i) <= 2));
    }

    #[test]
    fn index_two() {
        assert_eq!(Group::new(&[2, 2]).unwrap().index2_subgroups().len(), 3);
        assert_eq!(Group::new(&[2, 2, 2, 2]).unwrap().index2_subgroups().len(), 15);
        let z4 = Group::new(&[4]).unwrap();
        let subs = z4.index2_subgroups();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].elements(), vec![GroupElement(vec![0]), GroupElement(vec![2])]);
        assert!(Group::new(&[3]).unwrap().index2_subgroups().is_empty());
    }

    #[test]
    fn basis_is_direct() {
        let g = Group::new(&[2, 4, 4]).unwrap();
        let b = g.whole().basis();
        let prod: u32 = b.iter().map(|&i| g.order_idx(i)).product();
        assert_eq!(prod as usize, g.size());
        let k = &g.index2_subgroups()[2];
        let kb = k.basis();
        let kp: u32 = kb.iter().map(|&i| g.order_idx(i)).product();
        assert_eq!(kp as usize, k.size());
    }

    #[test]
    fn mismatched_parent() {
        let g = Group::new(&[2, 2]).unwrap();
        assert!(g.mul(&GroupElement(vec![1]), &GroupElement(vec![1, 0])).is_err());
        assert!(g.order(&GroupElement(vec![2, 0])).is_err());
    }
}
