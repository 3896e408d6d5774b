//! Borel coordinates and constructive Bruhat-cell arithmetic.
//!
//! A Borel element is stored in the frozen coordinate order
//! `eps_{2a+b}(t1) eps_{a+b}(t2) eps_b(t3) eps_a(t4) h_a(s_a) h_b(s_b)`.
//! A `BruhatForm` is a triple `b1 * lift(w) * b2` with `w` a reduced Weyl
//! word; appending a fundamental reflection on the right either extends the
//! word (first case) or walks the technical lemma's two sub-cases, emitting
//! at most one conjugate of a level-2R root element. Over a field the
//! emission never fires and the same walk computes the Bruhat decomposition.

use crate::error::{Error, Result};
use crate::rings::{coset_reps_with, reduce_mod2, CosetReps, RingElem, RingId};
use crate::sp4::{root_element, Root, SpMatrix, WeylGen};
use crate::weyl::{weyl_enumerate, WeylWord};

/// Canonical coordinates of an upper Borel element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorelCoords {
    ring: RingId,
    pub t_2ab: RingElem,
    pub t_ab: RingElem,
    pub t_b: RingElem,
    pub t_a: RingElem,
    pub s_a: RingElem,
    pub s_b: RingElem,
}

/// `h_a(s_a) h_b(s_b) = diag(s_a, s_b s_a^{-1}, s_a^{-1}, s_b^{-1} s_a)`.
pub fn torus_matrix(ring: RingId, s_a: &RingElem, s_b: &RingElem) -> Result<SpMatrix> {
    let sa_inv = s_a.inv()?;
    let sb_inv = s_b.inv()?;
    let mut m = SpMatrix::identity(ring);
    m.set(0, 0, s_a.clone());
    m.set(1, 1, s_b.mul(&sa_inv)?);
    m.set(2, 2, sa_inv);
    m.set(3, 3, sb_inv.mul(s_a)?);
    Ok(m)
}

impl BorelCoords {
    pub fn ring(&self) -> RingId {
        self.ring
    }

    /// Builds coordinates directly; torus coordinates must be units.
    pub fn new(
        ring: RingId,
        t_2ab: RingElem,
        t_ab: RingElem,
        t_b: RingElem,
        t_a: RingElem,
        s_a: RingElem,
        s_b: RingElem,
    ) -> Result<BorelCoords> {
        if !s_a.is_unit() || !s_b.is_unit() {
            return Err(Error::NotAUnit("torus coordinate".into()));
        }
        Ok(BorelCoords { ring, t_2ab, t_ab, t_b, t_a, s_a, s_b })
    }

    pub fn identity(ring: RingId) -> BorelCoords {
        BorelCoords {
            ring,
            t_2ab: ring.zero(),
            t_ab: ring.zero(),
            t_b: ring.zero(),
            t_a: ring.zero(),
            s_a: ring.one(),
            s_b: ring.one(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == BorelCoords::identity(self.ring)
    }

    /// The unipotent factor `eps_{2a+b}(t1) eps_{a+b}(t2) eps_b(t3) eps_a(t4)`.
    pub fn unipotent_matrix(&self) -> SpMatrix {
        let r = self.ring;
        root_element(r, Root::TwoAlphaBeta, &self.t_2ab)
            .mul(&root_element(r, Root::AlphaBeta, &self.t_ab))
            .unwrap()
            .mul(&root_element(r, Root::Beta, &self.t_b))
            .unwrap()
            .mul(&root_element(r, Root::Alpha, &self.t_a))
            .unwrap()
    }

    pub fn evaluate(&self) -> SpMatrix {
        let h = torus_matrix(self.ring, &self.s_a, &self.s_b).expect("unit torus coordinates");
        self.unipotent_matrix().mul(&h).unwrap()
    }

    /// Exact coordinate recovery; errors with `NotInBorel` when the matrix
    /// is not an upper Borel element.
    pub fn from_matrix(m: &SpMatrix) -> Result<BorelCoords> {
        let ring = m.ring();
        let fail = || Error::NotInBorel;
        let s_a = m.at(0, 0).clone();
        let sa_inv = s_a.inv().map_err(|_| fail())?;
        let s_b = m.at(1, 1).mul(&s_a)?;
        let sb_inv = s_b.inv().map_err(|_| fail())?;
        let t_a = m.at(0, 1).mul(&s_a)?.mul(&sb_inv)?;
        let t_ab = m.at(0, 3).mul(&s_b)?.mul(&sa_inv)?;
        let t_b = m.at(1, 3).mul(&s_b)?.mul(&sa_inv)?;
        let t_2ab = m.at(0, 2).mul(&s_a)?.add(&t_ab.mul(&t_a)?)?;
        let coords = BorelCoords { ring, t_2ab, t_ab, t_b, t_a, s_a, s_b };
        if &coords.evaluate() == m {
            Ok(coords)
        } else {
            Err(fail())
        }
    }

    pub fn mul(&self, other: &BorelCoords) -> Result<BorelCoords> {
        BorelCoords::from_matrix(&self.evaluate().mul(&other.evaluate())?)
    }

    /// Right-multiplies by a matrix known to stay in the Borel subgroup.
    pub fn mul_matrix(&self, m: &SpMatrix) -> Result<BorelCoords> {
        BorelCoords::from_matrix(&self.evaluate().mul(m)?)
    }

    /// Splits off the `eps_s(a)` factor on the left:
    /// `evaluate() = eps_s(a) * tail` with `tail` Borel and `tail`'s
    /// unipotent part free of the s-coordinate.
    pub fn split_leading(&self, s: WeylGen) -> Result<(RingElem, SpMatrix)> {
        let u = self.unipotent_matrix();
        let a = match s {
            WeylGen::WAlpha => u.at(0, 1).clone(),
            WeylGen::WBeta => u.at(1, 3).clone(),
        };
        let h = torus_matrix(self.ring, &self.s_a, &self.s_b)?;
        let tail = root_element(self.ring, s.root(), &a.neg())
            .mul(&u)?
            .mul(&h)?;
        Ok((a, tail))
    }
}

/// `b1 * lift(word) * b2` with `word` kept reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruhatForm {
    pub b1: BorelCoords,
    pub word: WeylWord,
    pub b2: BorelCoords,
}

/// One emitted factor: `conjugator * eps_root(value) * conjugator^{-1}`
/// with `value` in 2R.
#[derive(Debug, Clone)]
pub struct Emission {
    pub conjugator: SpMatrix,
    pub root: Root,
    pub value: RingElem,
}

/// Ring data threaded through cell arithmetic.
///
/// Over a 2R-pseudo-good ring this is the unit transversal of 2R; over a
/// field the residue classes degenerate to the elements themselves and the
/// walk never emits.
pub struct CellContext {
    ring: RingId,
    mode: TransversalMode,
}

enum TransversalMode {
    Congruence(CosetReps),
    Field,
}

impl CellContext {
    pub fn new(ring: RingId) -> Result<CellContext> {
        Self::with_search(ring, crate::rings::pseudogood::DEFAULT_SEARCH_BOUND, None)
    }

    pub fn with_search(
        ring: RingId,
        search_bound: u64,
        fundamental_unit: Option<&RingElem>,
    ) -> Result<CellContext> {
        if ring.is_field() {
            return Ok(CellContext { ring, mode: TransversalMode::Field });
        }
        let reps = coset_reps_with(ring, search_bound, fundamental_unit)?;
        Ok(CellContext { ring, mode: TransversalMode::Congruence(reps) })
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    /// The unit transversal, when operating in congruence mode.
    pub fn reps(&self) -> Option<&CosetReps> {
        match &self.mode {
            TransversalMode::Congruence(reps) => Some(reps),
            TransversalMode::Field => None,
        }
    }

    /// Whether x lies in 2R (congruence mode) resp. is zero (field mode).
    pub fn class_is_trivial(&self, x: &RingElem) -> Result<bool> {
        match &self.mode {
            TransversalMode::Congruence(_) => Ok(reduce_mod2(x)?.is_zero()),
            TransversalMode::Field => Ok(x.is_zero()),
        }
    }

    /// The transversal representative of x's class.
    pub fn rep_of(&self, x: &RingElem) -> Result<RingElem> {
        match &self.mode {
            TransversalMode::Congruence(reps) => Ok(reps.rep_of(x)?.clone()),
            TransversalMode::Field => Ok(x.clone()),
        }
    }

    /// A unit y with `y^{-1} = x mod 2R` (resp. exactly, over a field),
    /// for `x` with nontrivial class.
    pub fn unit_with_inverse_residue(&self, x: &RingElem) -> Result<RingElem> {
        match &self.mode {
            TransversalMode::Congruence(reps) => {
                let r = reduce_mod2(x)?;
                if r.is_zero() {
                    return Err(Error::BadInput("x lies in 2R".into()));
                }
                let y = reps.rep_of_class(&r.inv()?).clone();
                debug_assert!(y.is_unit());
                Ok(y)
            }
            TransversalMode::Field => x.inv(),
        }
    }
}

impl BruhatForm {
    pub fn identity(ring: RingId) -> BruhatForm {
        BruhatForm {
            b1: BorelCoords::identity(ring),
            word: WeylWord::identity(),
            b2: BorelCoords::identity(ring),
        }
    }

    pub fn ring(&self) -> RingId {
        self.b1.ring()
    }

    /// The word must be a reduced expression; it is stored verbatim since
    /// its letters are exactly the lift used in evaluation.
    pub fn from_parts(b1: BorelCoords, word: WeylWord, b2: BorelCoords) -> BruhatForm {
        debug_assert_eq!(word.letters().len(), word.len_reduced());
        BruhatForm { b1, word, b2 }
    }

    pub fn evaluate(&self) -> SpMatrix {
        let ring = self.ring();
        self.b1
            .evaluate()
            .mul(&self.word.lift(ring))
            .unwrap()
            .mul(&self.b2.evaluate())
            .unwrap()
    }

    /// Right-multiplies by a Borel element.
    pub fn append_borel_matrix(&mut self, m: &SpMatrix) -> Result<()> {
        self.b2 = self.b2.mul_matrix(m)?;
        Ok(())
    }

    /// Right-multiplies by the lift `w_s(1)`, maintaining the form.
    ///
    /// Returns the at most one emitted factor. The product identity is
    /// `old * w_s(1) = emission * new` (the emission commutes to the left
    /// of the whole form).
    pub fn append_letter(&mut self, s: WeylGen, ctx: &CellContext) -> Result<Option<Emission>> {
        let ring = self.ring();
        let lift_s = WeylWord::gen(s).lift(ring);
        let lift_s_inv = lift_s.symplectic_inverse()?;
        let l_now = self.word.len_reduced();
        let extended = self.word.concat(&WeylWord::gen(s));

        if extended.len_reduced() > l_now {
            // growing case: no emission
            let (a, tail) = self.b2.split_leading(s)?;
            let rest = lift_s_inv.mul(&tail)?.mul(&lift_s)?;
            let (img, sign) = self.word.act(s.root());
            debug_assert!(img.is_positive());
            let coeff = a.mul(&RingElem::from_i64(ring, sign as i64))?;
            self.b1 = self.b1.mul_matrix(&root_element(ring, img, &coeff))?;
            // keep the stored letters: re-canonicalizing would change the lift
            self.word.push(s);
            self.b2 = BorelCoords::from_matrix(&rest)
                .map_err(|_| Error::ResidualNotIdentity("conjugated tail left B".into()))?;
            return Ok(None);
        }

        // shrinking case: re-express the word so it ends with s
        if self.word.letters().last() != Some(&s) {
            let v = self
                .word
                .reduced_word_ending_with(s)
                .expect("exchange condition provides a reduced word ending in s");
            let h_c = v
                .lift(ring)
                .symplectic_inverse()?
                .mul(&self.word.lift(ring))?;
            self.b2 = BorelCoords::from_matrix(&h_c.mul(&self.b2.evaluate())?)?;
            self.word = v;
        }
        let v_prime = WeylWord::from_letters(
            self.word.letters()[..self.word.letters().len() - 1].to_vec(),
        );

        let (a, tail) = self.b2.split_leading(s)?;
        let rest = lift_s_inv.mul(&tail)?.mul(&lift_s)?;
        let h_s_neg = torus_for_gen(ring, s, &RingElem::from_i64(ring, -1))?;
        // value * w_s(1) = b1 * lift(v') * eps_{-s}(-a) * h_s(-1) * rest
        let b_rest = h_s_neg.mul(&rest)?;
        let neg_s = s.root().negate();

        if ctx.class_is_trivial(&a)? {
            // the whole eps_{-s}(-a) factor is a level-2R element
            let emission = if a.is_zero() {
                None
            } else {
                let conj = self.b1.evaluate().mul(&v_prime.lift(ring))?;
                Some(Emission { conjugator: conj, root: neg_s, value: a.neg() })
            };
            self.word = v_prime;
            self.b2 = BorelCoords::from_matrix(&b_rest)?;
            return Ok(emission);
        }

        // shift a to -y^{-1} for a transversal unit y, then rewrite
        // eps_{-s}(-y^{-1}) = eps_s(-y) h_s(y) w_s(1) eps_s(-y)
        let y = ctx.unit_with_inverse_residue(&a)?;
        let y_inv = y.inv()?;
        let delta = y_inv.sub(&a)?; // eps_{-s}(-a) = eps_{-s}(delta) eps_{-s}(-y^{-1})
        debug_assert!(ctx.class_is_trivial(&delta)?);
        let emission = if delta.is_zero() {
            None
        } else {
            let conj = self.b1.evaluate().mul(&v_prime.lift(ring))?;
            Some(Emission { conjugator: conj, root: neg_s, value: delta })
        };

        let (img, sign) = v_prime.act(s.root());
        debug_assert!(img.is_positive());
        let coeff = y.neg().mul(&RingElem::from_i64(ring, sign as i64))?;
        self.b1 = self.b1.mul_matrix(&root_element(ring, img, &coeff))?;

        let h_s_y = torus_for_gen(ring, s, &y)?;
        let new_b2 = lift_s_inv
            .mul(&h_s_y)?
            .mul(&lift_s)?
            .mul(&root_element(ring, s.root(), &y.neg()))?
            .mul(&b_rest)?;
        self.b2 = BorelCoords::from_matrix(&new_b2)?;
        self.word = WeylWord::from_letters(
            v_prime
                .letters()
                .iter()
                .copied()
                .chain(std::iter::once(s))
                .collect(),
        );
        Ok(emission)
    }

    /// Right-multiplies by a root element, maintaining the form.
    pub fn append_root_element(
        &mut self,
        phi: Root,
        t: &RingElem,
        ctx: &CellContext,
    ) -> Result<Vec<Emission>> {
        let ring = self.ring();
        let mut emissions = Vec::new();
        if t.is_zero() {
            return Ok(emissions);
        }
        if phi.is_positive() {
            self.append_borel_matrix(&root_element(ring, phi, t))?;
            return Ok(emissions);
        }
        // eps_phi(t) = lift(u) eps_sigma(eta t) lift(u)^{-1} for a short
        // conjugating word u with u(sigma) = phi.
        let (u, sigma) = negative_root_route(phi);
        let (img, eta) = u.act(sigma);
        debug_assert_eq!(img, phi);
        for g in u.letters() {
            if let Some(e) = self.append_letter(*g, ctx)? {
                emissions.push(e);
            }
        }
        let coeff = t.mul(&RingElem::from_i64(ring, eta as i64))?;
        self.append_borel_matrix(&root_element(ring, sigma, &coeff))?;
        for g in u.letters().iter().rev() {
            // lift(g)^{-1} = h_g(-1) * lift(g)
            let h = torus_for_gen(ring, *g, &RingElem::from_i64(ring, -1))?;
            self.append_borel_matrix(&h)?;
            if let Some(e) = self.append_letter(*g, ctx)? {
                emissions.push(e);
            }
        }
        Ok(emissions)
    }
}

/// `h_s(t)` for a fundamental reflection, built directly as a diagonal.
pub fn torus_for_gen(ring: RingId, s: WeylGen, t: &RingElem) -> Result<SpMatrix> {
    match s {
        WeylGen::WAlpha => torus_matrix(ring, t, &ring.one()),
        WeylGen::WBeta => torus_matrix(ring, &ring.one(), t),
    }
}

/// A short word u and positive source root sigma with `u(sigma) = phi`,
/// for each negative root phi.
fn negative_root_route(phi: Root) -> (WeylWord, Root) {
    match phi {
        Root::NegAlpha => (WeylWord::parse("a").unwrap(), Root::Alpha),
        Root::NegBeta => (WeylWord::parse("b").unwrap(), Root::Beta),
        Root::NegAlphaBeta => (WeylWord::parse("ba").unwrap(), Root::Alpha),
        Root::NegTwoAlphaBeta => (WeylWord::parse("ab").unwrap(), Root::Beta),
        _ => unreachable!("route only defined for negative roots"),
    }
}

/// Constructive Bruhat decomposition of a symplectic matrix over a field.
///
/// The matrix is first written as a product of root elements, then folded
/// into a `BruhatForm`; over a field the fold never emits. The result
/// evaluates back to the input exactly.
pub fn bruhat_decompose(m: &SpMatrix) -> Result<BruhatForm> {
    let ring = m.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    if !m.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    let word = crate::congruence::unipotent_factor(m)?;
    let ctx = CellContext::new(ring)?;
    let mut form = BruhatForm::identity(ring);
    for (phi, t) in word.letters() {
        let emissions = form.append_root_element(*phi, t, &ctx)?;
        debug_assert!(emissions.is_empty(), "fields never emit");
    }
    if form.evaluate() != *m {
        return Err(Error::ResidualNotIdentity(
            "decomposition does not round-trip".into(),
        ));
    }
    Ok(form)
}

/// Exhaustive double-coset partition of Sp4(F2): for each of the 8 Weyl
/// words, the set of matrices in `B w B`. The independent oracle for the
/// constructive decomposition.
pub fn brute_force_cells_f2() -> Vec<(WeylWord, Vec<SpMatrix>)> {
    let f2 = RingId::PrimeField(2);
    let mut borel = Vec::new();
    for bits in 0u8..16 {
        let coords = BorelCoords {
            ring: f2,
            t_2ab: RingElem::from_i64(f2, (bits & 1) as i64),
            t_ab: RingElem::from_i64(f2, ((bits >> 1) & 1) as i64),
            t_b: RingElem::from_i64(f2, ((bits >> 2) & 1) as i64),
            t_a: RingElem::from_i64(f2, ((bits >> 3) & 1) as i64),
            s_a: f2.one(),
            s_b: f2.one(),
        };
        borel.push(coords.evaluate());
    }
    let mut out = Vec::new();
    for w in weyl_enumerate() {
        let lift = w.lift(f2);
        let mut cell: Vec<SpMatrix> = Vec::new();
        for b1 in &borel {
            let left = b1.mul(&lift).unwrap();
            for b2 in &borel {
                let m = left.mul(b2).unwrap();
                if !cell.contains(&m) {
                    cell.push(m);
                }
            }
        }
        out.push((w, cell));
    }
    out
}

/// All elements of a Borel transversal set `B_R`: coordinates from the
/// pseudo-good transversal X and torus entries from `X /\ R*`.
///
/// Panics when the context is in field mode; `B_R` is a congruence-side
/// notion.
pub fn enumerate_b_r(ctx: &CellContext) -> Vec<BorelCoords> {
    let x = ctx.reps().expect("B_R requires a pseudo-good transversal").elements();
    let units: Vec<&RingElem> = x.iter().filter(|e| !e.is_zero()).collect();
    let mut out = Vec::new();
    for t1 in x {
        for t2 in x {
            for t3 in x {
                for t4 in x {
                    for s_a in &units {
                        for s_b in &units {
                            out.push(BorelCoords {
                                ring: ctx.ring(),
                                t_2ab: t1.clone(),
                                t_ab: t2.clone(),
                                t_b: t3.clone(),
                                t_a: t4.clone(),
                                s_a: (*s_a).clone(),
                                s_b: (*s_b).clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp4::{torus_elem, ALL_ROOTS};
    use rand::{Rng, SeedableRng};

    #[test]
    fn torus_matrix_matches_definition() {
        let r = RingId::LocalizedIntegers(5);
        let t = RingElem::localized(r, 1, 1);
        let s = RingElem::localized(r, -1, 2);
        let direct = torus_matrix(r, &t, &s).unwrap();
        let by_def = torus_elem(r, Root::Alpha, &t)
            .unwrap()
            .mul(&torus_elem(r, Root::Beta, &s).unwrap())
            .unwrap();
        assert_eq!(direct, by_def);
    }

    #[test]
    fn borel_round_trip_identity() {
        let z = RingId::Integers;
        let id = BorelCoords::identity(z);
        assert!(id.evaluate().is_identity());
        assert_eq!(BorelCoords::from_matrix(&SpMatrix::identity(z)).unwrap(), id);
    }

    #[test]
    fn borel_reordering_example() {
        // eps_a(a) eps_b(b) has canonical coordinates
        // (t_2ab, t_ab, t_b, t_a) = (a^2 b, ab, b, a)
        let z = RingId::Integers;
        let a = RingElem::from_i64(z, 3);
        let b = RingElem::from_i64(z, 5);
        let m = root_element(z, Root::Alpha, &a)
            .mul(&root_element(z, Root::Beta, &b))
            .unwrap();
        let c = BorelCoords::from_matrix(&m).unwrap();
        assert_eq!(c.t_2ab, RingElem::from_i64(z, 45));
        assert_eq!(c.t_ab, RingElem::from_i64(z, 15));
        assert_eq!(c.t_b, b);
        assert_eq!(c.t_a, a);
        assert!(c.s_a.is_one() && c.s_b.is_one());
    }

    #[test]
    fn borel_torus_only() {
        let z = RingId::Integers;
        let m = torus_matrix(z, &RingElem::from_i64(z, -1), &RingElem::from_i64(z, 1)).unwrap();
        let c = BorelCoords::from_matrix(&m).unwrap();
        assert!(c.t_2ab.is_zero() && c.t_ab.is_zero() && c.t_b.is_zero() && c.t_a.is_zero());
        assert_eq!(c.s_a, RingElem::from_i64(z, -1));
        assert_eq!(c.s_b, RingElem::from_i64(z, 1));
    }

    #[test]
    fn non_borel_rejected() {
        let z = RingId::Integers;
        let w = WeylWord::parse("a").unwrap().lift(z);
        assert!(matches!(BorelCoords::from_matrix(&w), Err(Error::NotInBorel)));
    }

    #[test]
    fn random_borel_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for ring in [RingId::Integers, RingId::QuadraticOrder(5), RingId::Gf4] {
            for _ in 0..100 {
                let units: Vec<i64> = vec![-1, 1];
                let coords = BorelCoords {
                    ring,
                    t_2ab: crate::sample::random_elem(ring, &mut rng),
                    t_ab: crate::sample::random_elem(ring, &mut rng),
                    t_b: crate::sample::random_elem(ring, &mut rng),
                    t_a: crate::sample::random_elem(ring, &mut rng),
                    s_a: random_unit(ring, &units, &mut rng),
                    s_b: random_unit(ring, &units, &mut rng),
                };
                let back = BorelCoords::from_matrix(&coords.evaluate()).unwrap();
                assert_eq!(back, coords);
            }
        }
    }

    fn random_unit(ring: RingId, fallback: &[i64], rng: &mut impl Rng) -> RingElem {
        match ring {
            RingId::QuadraticOrder(5) => {
                let k = rng.random_range(0..4u8);
                match k {
                    0 => RingElem::from_i64(ring, 1),
                    1 => RingElem::from_i64(ring, -1),
                    2 => RingElem::quad(ring, 0, 1),
                    _ => RingElem::quad(ring, 1, 1),
                }
            }
            _ if ring.is_field() => {
                let q = ring.field_size().unwrap();
                RingElem::from_field_code(ring, rng.random_range(1..q))
            }
            _ => RingElem::from_i64(ring, fallback[rng.random_range(0..fallback.len())]),
        }
    }

    #[test]
    fn append_letter_preserves_value_over_f2() {
        let f2 = RingId::PrimeField(2);
        let ctx = CellContext::new(f2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let mut form = BruhatForm::identity(f2);
            let mut expected = SpMatrix::identity(f2);
            for _ in 0..8 {
                let s = if rng.random_bool(0.5) { WeylGen::WAlpha } else { WeylGen::WBeta };
                // sprinkle random Borel factors between letters
                let bits: u8 = rng.random_range(0..16);
                let b = BorelCoords {
                    ring: f2,
                    t_2ab: RingElem::from_i64(f2, (bits & 1) as i64),
                    t_ab: RingElem::from_i64(f2, ((bits >> 1) & 1) as i64),
                    t_b: RingElem::from_i64(f2, ((bits >> 2) & 1) as i64),
                    t_a: RingElem::from_i64(f2, ((bits >> 3) & 1) as i64),
                    s_a: f2.one(),
                    s_b: f2.one(),
                }
                .evaluate();
                form.append_borel_matrix(&b).unwrap();
                expected = expected.mul(&b).unwrap();
                let e = form.append_letter(s, &ctx).unwrap();
                assert!(e.is_none());
                expected = expected.mul(&WeylWord::gen(s).lift(f2)).unwrap();
                assert_eq!(form.evaluate(), expected);
            }
        }
    }

    #[test]
    fn decompose_round_trips_random_field_elements() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(24);
        for ring in [
            RingId::PrimeField(2),
            RingId::PrimeField(3),
            RingId::Gf4,
            RingId::Gf8,
        ] {
            for _ in 0..50 {
                let m = crate::sample::random_root_product(ring, &mut rng, 8, 50);
                let form = bruhat_decompose(&m).unwrap();
                assert_eq!(form.evaluate(), m, "ring {ring}");
            }
        }
    }

    #[test]
    fn decompose_known_cells() {
        let f2 = RingId::PrimeField(2);
        let id = bruhat_decompose(&SpMatrix::identity(f2)).unwrap();
        assert!(id.word.is_identity_element());
        assert!(id.b1.is_identity() && id.b2.is_identity());

        let wa = WeylWord::parse("a").unwrap().lift(f2);
        let form = bruhat_decompose(&wa).unwrap();
        assert_eq!(form.word.reduced().as_string(), "a");
    }

    #[test]
    fn decompose_rejects_non_fields_and_non_symplectic() {
        let z = RingId::Integers;
        assert!(matches!(
            bruhat_decompose(&SpMatrix::identity(z)),
            Err(Error::NotAField(_))
        ));
        let f2 = RingId::PrimeField(2);
        let mut bad = SpMatrix::identity(f2);
        bad.set(0, 1, f2.one());
        assert!(matches!(bruhat_decompose(&bad), Err(Error::NotSymplectic)));
    }

    #[test]
    fn append_root_element_all_roots_gf4() {
        let g = RingId::Gf4;
        let ctx = CellContext::new(g).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let mut form = BruhatForm::identity(g);
            let mut expected = SpMatrix::identity(g);
            for _ in 0..6 {
                let phi = ALL_ROOTS[rng.random_range(0..8)];
                let t = RingElem::from_field_code(g, rng.random_range(0..4));
                let em = form.append_root_element(phi, &t, &ctx).unwrap();
                assert!(em.is_empty());
                expected = expected.mul(&root_element(g, phi, &t)).unwrap();
                assert_eq!(form.evaluate(), expected);
            }
        }
    }
}
