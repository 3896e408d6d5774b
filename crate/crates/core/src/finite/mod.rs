//! Dense enumeration of the finite groups Sp4(F_q) for q in {2, 3, 4} and
//! the permutation group S6, with conjugacy classes, normal closures,
//! conjugation-invariant word-norm search and covering numbers.
//!
//! Matrices over F_q are packed 16 entries x 2 bits into one u32, giving
//! hash-free dense indexing through a sorted table.

pub mod bitset;
pub mod classes;
pub mod norms;
pub mod perm;

pub use bitset::BitSet;
pub use classes::{covering_number, normal_closure, normal_closure_of_set, CoveringReport};
pub use norms::{word_norm_profile, NormBall};
pub use perm::{s6_orbit_lower_bound, Perm6, S6};

use crate::error::{Error, Result};
use crate::rings::{RingElem, RingId};
use crate::sp4::{Root, SpMatrix};
use std::collections::HashMap;

/// A finite group with explicit element arithmetic.
pub trait FinGroup {
    type Elem: Copy + Eq + Ord + std::hash::Hash + std::fmt::Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;
}

/// One conjugacy class: a representative index and the class size.
#[derive(Debug, Clone, Copy)]
pub struct ClassInfo {
    pub rep: u32,
    pub size: u32,
}

/// A fully enumerated finite group with dense indexing and conjugacy
/// classes. Immutable after construction.
pub struct GroupTable<G: FinGroup> {
    pub group: G,
    elems: Vec<G::Elem>,
    class_id: Vec<u32>,
    classes: Vec<ClassInfo>,
    class_members: Vec<Vec<u32>>,
}

impl<G: FinGroup> GroupTable<G> {
    pub fn build(group: G) -> GroupTable<G> {
        // breadth-first closure from the generators
        let gens = group.generators();
        let id = group.identity();
        let mut seen: std::collections::HashSet<G::Elem> = std::collections::HashSet::new();
        seen.insert(id);
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &gens {
                    let y = group.mul(*x, *g);
                    if seen.insert(y) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut elems: Vec<G::Elem> = seen.into_iter().collect();
        elems.sort_unstable();

        // conjugacy classes: orbits of x -> g x g^{-1} over the generators
        let n = elems.len();
        let index_of = |e: &G::Elem| elems.binary_search(e).expect("closed table") as u32;
        let mut class_id = vec![u32::MAX; n];
        let mut classes = Vec::new();
        let mut class_members: Vec<Vec<u32>> = Vec::new();
        let gen_invs: Vec<(G::Elem, G::Elem)> =
            gens.iter().map(|g| (*g, group.inv(*g))).collect();
        for start in 0..n {
            if class_id[start] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            let mut members = vec![start as u32];
            class_id[start] = cid;
            let mut stack = vec![elems[start]];
            while let Some(x) = stack.pop() {
                for (g, g_inv) in &gen_invs {
                    let y = group.mul(group.mul(*g, x), *g_inv);
                    let yi = index_of(&y) as usize;
                    if class_id[yi] == u32::MAX {
                        class_id[yi] = cid;
                        members.push(yi as u32);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ClassInfo { rep: start as u32, size: members.len() as u32 });
            class_members.push(members);
        }
        GroupTable { group, elems, class_id, classes, class_members }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[G::Elem] {
        &self.elems
    }

    pub fn elem(&self, i: u32) -> G::Elem {
        self.elems[i as usize]
    }

    pub fn index_of(&self, e: &G::Elem) -> u32 {
        self.elems.binary_search(e).expect("element not in table") as u32
    }

    pub fn identity_index(&self) -> u32 {
        self.index_of(&self.group.identity())
    }

    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.index_of(&self.group.mul(self.elem(a), self.elem(b)))
    }

    pub fn inv_idx(&self, a: u32) -> u32 {
        self.index_of(&self.group.inv(self.elem(a)))
    }

    pub fn class_of(&self, i: u32) -> u32 {
        self.class_id[i as usize]
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class_members(&self, cid: u32) -> &[u32] {
        &self.class_members[cid as usize]
    }

    /// Sampled closure check: products of random pairs stay in the table.
    pub fn verify_closure_sampled(&self, samples: usize, seed: u64) -> bool {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = self.elems[rng.random_range(0..self.elems.len())];
            let b = self.elems[rng.random_range(0..self.elems.len())];
            if self.elems.binary_search(&self.group.mul(a, b)).is_err() {
                return false;
            }
        }
        true
    }
}

/// Sp4 over F_q (q in {2, 3, 4}) with matrices packed into u32 words.
pub struct PackedSp4 {
    q: u8,
    add: [[u8; 4]; 4],
    mul: [[u8; 4]; 4],
    neg: [u8; 4],
}

/// Packed matrix: entry (i, j) occupies bits 2*(4i+j)..+2.
pub type Packed = u32;

impl PackedSp4 {
    pub fn new(q: u8) -> Result<PackedSp4> {
        let mut add = [[0u8; 4]; 4];
        let mut mul = [[0u8; 4]; 4];
        let mut neg = [0u8; 4];
        let ring = match q {
            2 => RingId::PrimeField(2),
            3 => RingId::PrimeField(3),
            4 => RingId::Gf4,
            _ => return Err(Error::UnsupportedField(q as u32)),
        };
        for a in 0..q {
            let ea = RingElem::from_field_code(ring, a);
            neg[a as usize] = ea.neg().field_code().unwrap();
            for b in 0..q {
                let eb = RingElem::from_field_code(ring, b);
                add[a as usize][b as usize] = ea.add(&eb).unwrap().field_code().unwrap();
                mul[a as usize][b as usize] = ea.mul(&eb).unwrap().field_code().unwrap();
            }
        }
        Ok(PackedSp4 { q, add, mul, neg })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn ring(&self) -> RingId {
        match self.q {
            2 => RingId::PrimeField(2),
            3 => RingId::PrimeField(3),
            _ => RingId::Gf4,
        }
    }

    #[inline]
    pub fn entry(m: Packed, i: usize, j: usize) -> u8 {
        ((m >> (2 * (4 * i + j))) & 3) as u8
    }

    #[inline]
    pub fn with_entry(m: Packed, i: usize, j: usize, v: u8) -> Packed {
        let shift = 2 * (4 * i + j);
        (m & !(3u32 << shift)) | ((v as u32) << shift)
    }

    pub fn pack(&self, m: &SpMatrix) -> Packed {
        let mut out = 0u32;
        for i in 0..4 {
            for j in 0..4 {
                out = Self::with_entry(out, i, j, m.at(i, j).field_code().unwrap());
            }
        }
        out
    }

    pub fn unpack(&self, m: Packed) -> SpMatrix {
        let ring = self.ring();
        let entries = (0..16)
            .map(|k| RingElem::from_field_code(ring, ((m >> (2 * k)) & 3) as u8))
            .collect();
        SpMatrix::from_entries(ring, entries).unwrap()
    }

    fn packed_identity() -> Packed {
        let mut m = 0u32;
        for i in 0..4 {
            m = Self::with_entry(m, i, i, 1);
        }
        m
    }

    fn transpose(m: Packed) -> Packed {
        let mut out = 0u32;
        for i in 0..4 {
            for j in 0..4 {
                out = Self::with_entry(out, j, i, Self::entry(m, i, j));
            }
        }
        out
    }
}

impl FinGroup for PackedSp4 {
    type Elem = Packed;

    fn identity(&self) -> Packed {
        Self::packed_identity()
    }

    #[inline]
    fn mul(&self, a: Packed, b: Packed) -> Packed {
        let mut out = 0u32;
        for i in 0..4 {
            let a0 = Self::entry(a, i, 0) as usize;
            let a1 = Self::entry(a, i, 1) as usize;
            let a2 = Self::entry(a, i, 2) as usize;
            let a3 = Self::entry(a, i, 3) as usize;
            for j in 0..4 {
                let mut acc = self.mul[a0][Self::entry(b, 0, j) as usize];
                acc = self.add[acc as usize][self.mul[a1][Self::entry(b, 1, j) as usize] as usize];
                acc = self.add[acc as usize][self.mul[a2][Self::entry(b, 2, j) as usize] as usize];
                acc = self.add[acc as usize][self.mul[a3][Self::entry(b, 3, j) as usize] as usize];
                out |= (acc as u32) << (2 * (4 * i + j));
            }
        }
        out
    }

    fn inv(&self, a: Packed) -> Packed {
        // A^{-1} = -J A^T J for symplectic A
        let mut j = 0u32;
        j = Self::with_entry(j, 0, 2, 1);
        j = Self::with_entry(j, 1, 3, 1);
        j = Self::with_entry(j, 2, 0, self.neg[1]);
        j = Self::with_entry(j, 3, 1, self.neg[1]);
        let mut neg_j = 0u32;
        neg_j = Self::with_entry(neg_j, 0, 2, self.neg[1]);
        neg_j = Self::with_entry(neg_j, 1, 3, self.neg[1]);
        neg_j = Self::with_entry(neg_j, 2, 0, 1);
        neg_j = Self::with_entry(neg_j, 3, 1, 1);
        self.mul(self.mul(neg_j, Self::transpose(a)), j)
    }

    fn generators(&self) -> Vec<Packed> {
        // simple-root elements and their negatives generate Sp4(F_q)
        let mut gens = Vec::new();
        for phi in [Root::Alpha, Root::Beta, Root::NegAlpha, Root::NegBeta] {
            for t in 1..self.q {
                gens.push(self.pack_root_element(phi, t));
            }
        }
        gens
    }
}

impl PackedSp4 {
    pub fn pack_root_element(&self, phi: Root, t: u8) -> Packed {
        let ring = self.ring();
        self.pack(&crate::sp4::root_element(
            ring,
            phi,
            &RingElem::from_field_code(ring, t),
        ))
    }
}

/// Enumerates Sp4(F_q) for q in {2, 3, 4} and checks the order against
/// `q^4 (q^2 - 1)(q^4 - 1)`.
pub fn enumerate_sp4(q: u8) -> Result<GroupTable<PackedSp4>> {
    let group = PackedSp4::new(q)?;
    let table = GroupTable::build(group);
    let qq = q as usize;
    let expected = qq.pow(4) * (qq * qq - 1) * (qq.pow(4) - 1);
    if table.order() != expected {
        return Err(Error::ResidualNotIdentity(format!(
            "Sp4(F{q}) enumeration found {} elements, expected {expected}",
            table.order()
        )));
    }
    Ok(table)
}

/// Caches tables so repeated commands and tests share the enumeration.
pub struct TableCache {
    tables: HashMap<u8, GroupTable<PackedSp4>>,
}

impl TableCache {
    pub fn new() -> TableCache {
        TableCache { tables: HashMap::new() }
    }

    pub fn get(&mut self, q: u8) -> Result<&GroupTable<PackedSp4>> {
        if !self.tables.contains_key(&q) {
            let t = enumerate_sp4(q)?;
            self.tables.insert(q, t);
        }
        Ok(&self.tables[&q])
    }
}

impl Default for TableCache {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_roundtrip_and_mul() {
        let g = PackedSp4::new(3).unwrap();
        let ring = g.ring();
        let m = crate::sample::random_root_product(
            ring,
            &mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5),
            6,
            10,
        );
        let p = g.pack(&m);
        assert_eq!(g.unpack(p), m);
        let n = crate::sample::random_root_product(
            ring,
            &mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(6),
            6,
            10,
        );
        let pn = g.pack(&n);
        assert_eq!(g.unpack(g.mul(p, pn)), m.mul(&n).unwrap());
        assert_eq!(
            g.unpack(g.inv(p)),
            m.symplectic_inverse().unwrap()
        );
    }

    #[test]
    fn sp4_f2_order() {
        let t = enumerate_sp4(2).unwrap();
        assert_eq!(t.order(), 720);
        assert!(t.verify_closure_sampled(200, 1));
        let sizes: usize = t.classes().iter().map(|c| c.size as usize).sum();
        assert_eq!(sizes, 720);
    }

    #[test]
    fn sp4_f3_order() {
        let t = enumerate_sp4(3).unwrap();
        assert_eq!(t.order(), 51840);
        assert!(t.verify_closure_sampled(200, 2));
    }

    #[test]
    fn unsupported_field() {
        assert!(matches!(enumerate_sp4(5), Err(Error::UnsupportedField(5))));
    }
}
