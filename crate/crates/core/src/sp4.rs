//! The 4x4 symplectic realization of Sp4(R): root elements, Weyl and torus
//! elements, commutator identities and the mod-2R reduction homomorphism.
//!
//! The realization fixes the positive root elements as
//! `eps_alpha(t) = I + t(e12 - e43)`, `eps_beta(t) = I + t e24`,
//! `eps_{alpha+beta}(t) = I + t(e14 + e23)`, `eps_{2alpha+beta}(t) = I + t e13`,
//! with negatives given by transposition. All the +- signs this leaves open
//! are resolved once by direct computation and frozen as constants below.

use crate::error::{Error, Result};
use crate::rings::{reduce_mod2, RingElem, RingId};
use once_cell::sync::Lazy;

/// The eight roots of C2; alpha short, beta long.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    Alpha,
    Beta,
    AlphaBeta,
    TwoAlphaBeta,
    NegAlpha,
    NegBeta,
    NegAlphaBeta,
    NegTwoAlphaBeta,
}

pub const ALL_ROOTS: [Root; 8] = [
    Root::Alpha,
    Root::Beta,
    Root::AlphaBeta,
    Root::TwoAlphaBeta,
    Root::NegAlpha,
    Root::NegBeta,
    Root::NegAlphaBeta,
    Root::NegTwoAlphaBeta,
];

pub const POSITIVE_ROOTS: [Root; 4] =
    [Root::Alpha, Root::Beta, Root::AlphaBeta, Root::TwoAlphaBeta];

impl Root {
    pub fn is_positive(&self) -> bool {
        matches!(
            self,
            Root::Alpha | Root::Beta | Root::AlphaBeta | Root::TwoAlphaBeta
        )
    }

    pub fn is_long(&self) -> bool {
        matches!(
            self,
            Root::Beta | Root::TwoAlphaBeta | Root::NegBeta | Root::NegTwoAlphaBeta
        )
    }

    pub fn negate(&self) -> Root {
        match self {
            Root::Alpha => Root::NegAlpha,
            Root::Beta => Root::NegBeta,
            Root::AlphaBeta => Root::NegAlphaBeta,
            Root::TwoAlphaBeta => Root::NegTwoAlphaBeta,
            Root::NegAlpha => Root::Alpha,
            Root::NegBeta => Root::Beta,
            Root::NegAlphaBeta => Root::AlphaBeta,
            Root::NegTwoAlphaBeta => Root::TwoAlphaBeta,
        }
    }

    /// Coordinates in the euclidean plane with alpha = (1, 0) and
    /// beta = (-1, 1); used by the Weyl-group action.
    pub fn vector(&self) -> (i8, i8) {
        match self {
            Root::Alpha => (1, 0),
            Root::Beta => (-1, 1),
            Root::AlphaBeta => (0, 1),
            Root::TwoAlphaBeta => (1, 1),
            Root::NegAlpha => (-1, 0),
            Root::NegBeta => (1, -1),
            Root::NegAlphaBeta => (0, -1),
            Root::NegTwoAlphaBeta => (-1, -1),
        }
    }

    pub fn from_vector(v: (i8, i8)) -> Option<Root> {
        ALL_ROOTS.into_iter().find(|r| r.vector() == v)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Root::Alpha => "alpha",
            Root::Beta => "beta",
            Root::AlphaBeta => "alpha+beta",
            Root::TwoAlphaBeta => "2alpha+beta",
            Root::NegAlpha => "-alpha",
            Root::NegBeta => "-beta",
            Root::NegAlphaBeta => "-(alpha+beta)",
            Root::NegTwoAlphaBeta => "-(2alpha+beta)",
        }
    }

    pub fn from_name(s: &str) -> Result<Root> {
        ALL_ROOTS
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::BadInput(format!("unknown root {s:?}")))
    }
}

impl std::fmt::Display for Root {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A 4x4 matrix over one of the catalog rings, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpMatrix {
    ring: RingId,
    entries: Vec<RingElem>, // 16 entries, row-major
}

impl SpMatrix {
    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn identity(ring: RingId) -> SpMatrix {
        let mut entries = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                entries.push(if i == j { ring.one() } else { ring.zero() });
            }
        }
        SpMatrix { ring, entries }
    }

    pub fn from_entries(ring: RingId, entries: Vec<RingElem>) -> Result<SpMatrix> {
        if entries.len() != 16 {
            return Err(Error::BadInput("matrix needs 16 entries".into()));
        }
        for e in &entries {
            if e.ring() != ring {
                return Err(Error::MixedRings(ring.to_string(), e.ring().to_string()));
            }
        }
        Ok(SpMatrix { ring, entries })
    }

    pub fn from_i64_rows(ring: RingId, rows: [[i64; 4]; 4]) -> SpMatrix {
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| RingElem::from_i64(ring, v)))
            .collect();
        SpMatrix { ring, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[4 * i + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.entries[4 * i + j] = v;
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == SpMatrix::identity(self.ring)
    }

    pub fn mul(&self, other: &SpMatrix) -> Result<SpMatrix> {
        if self.ring != other.ring {
            return Err(Error::MixedRings(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        let mut entries = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = self.ring.zero();
                for k in 0..4 {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(SpMatrix { ring: self.ring, entries })
    }

    pub fn transpose(&self) -> SpMatrix {
        let mut entries = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                entries.push(self.at(j, i).clone());
            }
        }
        SpMatrix { ring: self.ring, entries }
    }

    pub fn neg(&self) -> SpMatrix {
        SpMatrix {
            ring: self.ring,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    /// The Gram matrix J = [[0, I2], [-I2, 0]].
    pub fn j_form(ring: RingId) -> SpMatrix {
        SpMatrix::from_i64_rows(
            ring,
            [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
        )
    }

    /// Exact membership predicate `M^T J M = J`.
    pub fn is_symplectic(&self) -> bool {
        let j = SpMatrix::j_form(self.ring);
        match self.transpose().mul(&j).and_then(|x| x.mul(self)) {
            Ok(m) => m == j,
            Err(_) => false,
        }
    }

    /// Inverse of a symplectic matrix: `A^{-1} = J^{-1} A^T J`; exact and
    /// division-free. Errors when the input is not symplectic.
    pub fn symplectic_inverse(&self) -> Result<SpMatrix> {
        if !self.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        let j = SpMatrix::j_form(self.ring);
        // J^{-1} = -J
        let inv = j.neg().mul(&self.transpose())?.mul(&j)?;
        debug_assert!(inv.mul(self).unwrap().is_identity());
        Ok(inv)
    }

    /// Entrywise reduction mod 2R; a group homomorphism onto Sp4(R/2R).
    pub fn reduce(&self) -> Result<SpMatrix> {
        let target = self.ring.residue_ring()?;
        let entries = self
            .entries
            .iter()
            .map(reduce_mod2)
            .collect::<Result<Vec<_>>>()?;
        Ok(SpMatrix { ring: target, entries })
    }

    /// If `M = eps_phi(t)` for a unique root `phi` (an off-identity root
    /// element), returns `(phi, t)`. The identity returns None.
    pub fn match_root_element(&self) -> Option<(Root, RingElem)> {
        for phi in ALL_ROOTS {
            let t = self.root_param(phi);
            if !t.is_zero() && *self == root_element(self.ring, phi, &t) {
                return Some((phi, t));
            }
        }
        None
    }

    /// The matrix entry carrying the parameter of `eps_phi`.
    fn root_param(&self, phi: Root) -> RingElem {
        let (i, j) = match phi {
            Root::Alpha => (0, 1),
            Root::Beta => (1, 3),
            Root::AlphaBeta => (0, 3),
            Root::TwoAlphaBeta => (0, 2),
            Root::NegAlpha => (1, 0),
            Root::NegBeta => (3, 1),
            Root::NegAlphaBeta => (3, 0),
            Root::NegTwoAlphaBeta => (2, 0),
        };
        self.at(i, j).clone()
    }
}

/// The root element `eps_phi(t)`.
pub fn root_element(ring: RingId, phi: Root, t: &RingElem) -> SpMatrix {
    assert_eq!(ring, t.ring(), "parameter ring mismatch");
    let mut m = SpMatrix::identity(ring);
    match phi {
        Root::Alpha => {
            m.set(0, 1, t.clone());
            m.set(3, 2, t.neg());
        }
        Root::Beta => {
            m.set(1, 3, t.clone());
        }
        Root::AlphaBeta => {
            m.set(0, 3, t.clone());
            m.set(1, 2, t.clone());
        }
        Root::TwoAlphaBeta => {
            m.set(0, 2, t.clone());
        }
        neg => {
            let pos = neg.negate();
            return root_element(ring, pos, t).transpose();
        }
    }
    m
}

/// `w_phi(t) = eps_phi(t) eps_{-phi}(-t^{-1}) eps_phi(t)`; requires t a unit.
pub fn weyl_elem(ring: RingId, phi: Root, t: &RingElem) -> Result<SpMatrix> {
    let t_inv = t.inv().map_err(|_| Error::NotAUnit(format!("{t}")))?;
    let a = root_element(ring, phi, t);
    let b = root_element(ring, phi.negate(), &t_inv.neg());
    a.mul(&b)?.mul(&a)
}

/// `h_phi(t) = w_phi(t) w_phi(1)^{-1}`; requires t a unit.
pub fn torus_elem(ring: RingId, phi: Root, t: &RingElem) -> Result<SpMatrix> {
    let w_t = weyl_elem(ring, phi, t)?;
    let w_1 = weyl_elem(ring, phi, &ring.one())?;
    w_t.mul(&w_1.symplectic_inverse()?)
}

/// Group commutator `(M, N) = M N M^{-1} N^{-1}` of symplectic matrices.
pub fn commutator(m: &SpMatrix, n: &SpMatrix) -> Result<SpMatrix> {
    if m.ring() != n.ring() {
        return Err(Error::MixedRings(m.ring().to_string(), n.ring().to_string()));
    }
    m.mul(n)?
        .mul(&m.symplectic_inverse()?)?
        .mul(&n.symplectic_inverse()?)
}

/// Resolved sign constants of this realization, with the commutator
/// convention `(X, Y) = X Y X^{-1} Y^{-1}`:
///
/// `(eps_{a+b}(v), eps_a(u)) = eps_{2a+b}(C1 * 2uv)`
pub const COMMUTATOR_C1: i64 = -1;
/// `(eps_b(v), eps_a(u)) = eps_{a+b}(C2 * uv) * eps_{2a+b}(C3 * u^2 v)`
pub const COMMUTATOR_C2: i64 = -1;
pub const COMMUTATOR_C3: i64 = -1;

/// Weyl-group generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeylGen {
    WAlpha,
    WBeta,
}

impl WeylGen {
    pub fn root(&self) -> Root {
        match self {
            WeylGen::WAlpha => Root::Alpha,
            WeylGen::WBeta => Root::Beta,
        }
    }

    pub fn letter(&self) -> char {
        match self {
            WeylGen::WAlpha => 'a',
            WeylGen::WBeta => 'b',
        }
    }
}

/// One entry of the sign table: `w_g eps_phi(x) w_g^{-1} = eps_psi(sign * x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignEntry {
    pub generator: WeylGen,
    pub source: Root,
    pub image: Root,
    pub sign: i8,
}

/// The full (generator, root) sign table, resolved once over Z by direct
/// matrix conjugation.
pub static SIGN_TABLE: Lazy<Vec<SignEntry>> = Lazy::new(|| {
    let z = RingId::Integers;
    let mut table = Vec::with_capacity(16);
    for generator in [WeylGen::WAlpha, WeylGen::WBeta] {
        let w = weyl_elem(z, generator.root(), &z.one()).unwrap();
        let w_inv = w.symplectic_inverse().unwrap();
        for source in ALL_ROOTS {
            let conj = w
                .mul(&root_element(z, source, &z.one()))
                .unwrap()
                .mul(&w_inv)
                .unwrap();
            let (image, t) = conj
                .match_root_element()
                .expect("conjugate of a root element is a root element");
            let sign = if t.is_one() {
                1
            } else if t.neg().is_one() {
                -1
            } else {
                panic!("unexpected conjugation parameter {t}");
            };
            table.push(SignEntry { generator, source, image, sign });
        }
    }
    table
});

/// Looks up the action of one Weyl generator on a root.
pub fn generator_action(g: WeylGen, phi: Root) -> (Root, i8) {
    let e = SIGN_TABLE
        .iter()
        .find(|e| e.generator == g && e.source == phi)
        .expect("sign table is total");
    (e.image, e.sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn rings_under_test() -> Vec<RingId> {
        vec![
            RingId::Integers,
            RingId::LocalizedIntegers(5),
            RingId::QuadraticOrder(5),
            RingId::QuadraticOrder(-3),
            RingId::PrimeField(2),
            RingId::PrimeField(3),
            RingId::Gf4,
        ]
    }

    use crate::sample::random_elem;

    #[test]
    fn generators_are_symplectic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for ring in rings_under_test() {
            for phi in ALL_ROOTS {
                for _ in 0..20 {
                    let t = random_elem(ring, &mut rng);
                    assert!(root_element(ring, phi, &t).is_symplectic());
                }
            }
        }
        assert!(SpMatrix::identity(RingId::Integers).is_symplectic());
        // I + e12 without the compensating -e43 term is not symplectic
        let mut bad = SpMatrix::identity(RingId::Integers);
        bad.set(0, 1, RingId::Integers.one());
        assert!(!bad.is_symplectic());
    }

    #[test]
    fn additivity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for ring in rings_under_test() {
            for phi in ALL_ROOTS {
                for _ in 0..50 {
                    let t = random_elem(ring, &mut rng);
                    let s = random_elem(ring, &mut rng);
                    let sum = root_element(ring, phi, &t.add(&s).unwrap());
                    let prod = root_element(ring, phi, &t)
                        .mul(&root_element(ring, phi, &s))
                        .unwrap();
                    assert_eq!(sum, prod);
                }
            }
        }
    }

    #[test]
    fn beta_param_zero_is_identity() {
        let z = RingId::Integers;
        assert!(root_element(z, Root::Beta, &z.zero()).is_identity());
    }

    #[test]
    fn negative_roots_are_transposes() {
        let z = RingId::Integers;
        let t = RingElem::from_i64(z, 3);
        assert_eq!(
            root_element(z, Root::NegBeta, &t),
            root_element(z, Root::Beta, &t).transpose()
        );
    }

    #[test]
    fn commutator_constants_match_direct_computation() {
        let z = RingId::Integers;
        let one = z.one();
        // (eps_{a+b}(1), eps_a(1)) = eps_{2a+b}(C1 * 2)
        let lhs = commutator(
            &root_element(z, Root::AlphaBeta, &one),
            &root_element(z, Root::Alpha, &one),
        )
        .unwrap();
        assert_eq!(
            lhs,
            root_element(z, Root::TwoAlphaBeta, &RingElem::from_i64(z, COMMUTATOR_C1 * 2))
        );
        // (eps_b(1), eps_a(1)) = eps_{a+b}(C2) eps_{2a+b}(C3)
        let lhs = commutator(
            &root_element(z, Root::Beta, &one),
            &root_element(z, Root::Alpha, &one),
        )
        .unwrap();
        let rhs = root_element(z, Root::AlphaBeta, &RingElem::from_i64(z, COMMUTATOR_C2))
            .mul(&root_element(z, Root::TwoAlphaBeta, &RingElem::from_i64(z, COMMUTATOR_C3)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_relations_randomized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for ring in rings_under_test() {
            let c1 = RingElem::from_i64(ring, COMMUTATOR_C1);
            let c2 = RingElem::from_i64(ring, COMMUTATOR_C2);
            let c3 = RingElem::from_i64(ring, COMMUTATOR_C3);
            let two = RingElem::from_i64(ring, 2);
            for _ in 0..50 {
                let a = random_elem(ring, &mut rng);
                let b = random_elem(ring, &mut rng);
                // (eps_{a+b}(b), eps_a(a)) = eps_{2a+b}(c1 * 2ab)
                let lhs = commutator(
                    &root_element(ring, Root::AlphaBeta, &b),
                    &root_element(ring, Root::Alpha, &a),
                )
                .unwrap();
                let v = c1.mul(&two).unwrap().mul(&a).unwrap().mul(&b).unwrap();
                assert_eq!(lhs, root_element(ring, Root::TwoAlphaBeta, &v));
                // (eps_b(b), eps_a(a)) = eps_{a+b}(c2 ab) eps_{2a+b}(c3 a^2 b)
                let lhs = commutator(
                    &root_element(ring, Root::Beta, &b),
                    &root_element(ring, Root::Alpha, &a),
                )
                .unwrap();
                let v1 = c2.mul(&a).unwrap().mul(&b).unwrap();
                let v2 = c3.mul(&a).unwrap().mul(&a).unwrap().mul(&b).unwrap();
                let rhs = root_element(ring, Root::AlphaBeta, &v1)
                    .mul(&root_element(ring, Root::TwoAlphaBeta, &v2))
                    .unwrap();
                assert_eq!(lhs, rhs);
                // sums of roots outside C2 commute
                let lhs = commutator(
                    &root_element(ring, Root::TwoAlphaBeta, &b),
                    &root_element(ring, Root::Beta, &a),
                )
                .unwrap();
                assert!(lhs.is_identity());
            }
        }
    }

    #[test]
    fn torus_diagonal_form() {
        let z = RingId::Integers;
        let t = RingElem::from_i64(z, -1);
        let s = RingElem::from_i64(z, 1);
        let h = torus_elem(z, Root::Alpha, &t)
            .unwrap()
            .mul(&torus_elem(z, Root::Beta, &s).unwrap())
            .unwrap();
        // h_a(t) h_b(s) = diag(t, s t^{-1}, t^{-1}, s^{-1} t)
        assert_eq!(h, SpMatrix::from_i64_rows(z, [
            [-1, 0, 0, 0],
            [0, -1, 0, 0],
            [0, 0, -1, 0],
            [0, 0, 0, -1],
        ]));
        // over Z[1/5]: t = 5 is a unit
        let r = RingId::LocalizedIntegers(5);
        let five = RingElem::localized(r, 1, 1);
        let h = torus_elem(r, Root::Alpha, &five).unwrap();
        assert_eq!(*h.at(0, 0), five);
        assert_eq!(*h.at(1, 1), five.inv().unwrap());
        assert_eq!(*h.at(2, 2), five.inv().unwrap());
        assert_eq!(*h.at(3, 3), five);
    }

    #[test]
    fn torus_identity_and_weyl_power() {
        let z = RingId::Integers;
        assert!(torus_elem(z, Root::Alpha, &z.one()).unwrap().is_identity());
        let w = weyl_elem(z, Root::Alpha, &z.one()).unwrap();
        let w2 = w.mul(&w).unwrap();
        // w_a(1)^2 = h_a(-1) = -I, so w_a(1)^4 = I
        assert_eq!(w2, SpMatrix::identity(z).neg());
        assert_eq!(
            w2,
            torus_elem(z, Root::Alpha, &RingElem::from_i64(z, -1)).unwrap()
        );
        assert!(w2.mul(&w2).unwrap().is_identity());
        // w_a^{-1} = -w_a: -I is central and symplectic
        assert_eq!(w.symplectic_inverse().unwrap(), w.neg());
    }

    #[test]
    fn torus_rejects_non_units() {
        let z = RingId::Integers;
        let two = RingElem::from_i64(z, 2);
        assert!(matches!(
            weyl_elem(z, Root::Alpha, &two),
            Err(Error::NotAUnit(_))
        ));
    }

    #[test]
    fn sign_table_defining_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        let z = RingId::Integers;
        for e in SIGN_TABLE.iter() {
            let w = weyl_elem(z, e.generator.root(), &z.one()).unwrap();
            let w_inv = w.symplectic_inverse().unwrap();
            for _ in 0..2 {
                let a = RingElem::from_i64(z, rng.random_range(-100..=100));
                let lhs = w
                    .mul(&root_element(z, e.source, &a))
                    .unwrap()
                    .mul(&w_inv)
                    .unwrap();
                let rhs = root_element(
                    z,
                    e.image,
                    &a.mul(&RingElem::from_i64(z, e.sign as i64)).unwrap(),
                );
                assert_eq!(lhs, rhs);
            }
        }
        // spot checks of the underlying reflection geometry
        assert_eq!(generator_action(WeylGen::WAlpha, Root::Alpha).0, Root::NegAlpha);
        assert_eq!(generator_action(WeylGen::WAlpha, Root::Beta).0, Root::TwoAlphaBeta);
        assert_eq!(generator_action(WeylGen::WAlpha, Root::AlphaBeta).0, Root::AlphaBeta);
        assert_eq!(generator_action(WeylGen::WBeta, Root::Alpha).0, Root::AlphaBeta);
        assert_eq!(generator_action(WeylGen::WBeta, Root::Beta).0, Root::NegBeta);
    }

    #[test]
    fn reduction_is_homomorphism() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for ring in [
            RingId::Integers,
            RingId::LocalizedIntegers(7),
            RingId::QuadraticOrder(5),
            RingId::CubicOrder(3),
        ] {
            for _ in 0..50 {
                let phi1 = ALL_ROOTS[rng.random_range(0..8)];
                let phi2 = ALL_ROOTS[rng.random_range(0..8)];
                let m = root_element(ring, phi1, &random_elem(ring, &mut rng));
                let n = root_element(ring, phi2, &random_elem(ring, &mut rng));
                let lhs = m.mul(&n).unwrap().reduce().unwrap();
                let rhs = m.reduce().unwrap().mul(&n.reduce().unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let z = RingId::Integers;
        let two = RingElem::from_i64(z, 2);
        assert!(root_element(z, Root::Beta, &two).reduce().unwrap().is_identity());
        let three = RingElem::from_i64(z, 3);
        let f2 = RingId::PrimeField(2);
        assert_eq!(
            root_element(z, Root::Alpha, &three).reduce().unwrap(),
            root_element(f2, Root::Alpha, &f2.one())
        );
        // h_a(omega) over O(5) reduces to h_a(t) over GF(4)
        let o5 = RingId::QuadraticOrder(5);
        let omega = RingElem::quad(o5, 0, 1);
        let h = torus_elem(o5, Root::Alpha, &omega).unwrap();
        let t = RingElem::from_field_code(RingId::Gf4, 0b10);
        assert_eq!(
            h.reduce().unwrap(),
            torus_elem(RingId::Gf4, Root::Alpha, &t).unwrap()
        );
    }
}
