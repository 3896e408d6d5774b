//! Factorization of the level-2R principal congruence subgroup into
//! conjugates of `eps_phi(2x)`, with verifiable certificates bounded by
//! `8J + 6` for the measured unipotent block count J.
//!
//! Pipeline: write the input as a product of root elements (symplectic
//! Gaussian elimination over a Euclidean member of the catalog), group the
//! word into J blocks `u+ u-`, rewrite each block as two cells of the big
//! Bruhat cell, fold the cells emitting at most 4 factors per merge, and
//! normalize the residual Borel part into the pseudo-good transversal with
//! at most 10 more emissions. The residual must then be the identity.

use crate::bruhat::{BorelCoords, BruhatForm, CellContext, Emission};
use crate::error::{Error, Result};
use crate::rings::euclid::supports_euclid;
use crate::rings::{euclid_divide, reduce_mod2, RingElem, RingId};
use crate::sp4::{root_element, torus_elem, Root, SpMatrix, WeylGen};
use crate::weyl::{longest_element, WeylWord};

/// A conjugate of a level-2R root element: evaluates to
/// `conjugator * eps_root(value) * conjugator^{-1}` with `value` in 2R.
#[derive(Debug, Clone)]
pub struct QFactor {
    pub conjugator: SpMatrix,
    pub root: Root,
    pub value: RingElem,
}

impl From<Emission> for QFactor {
    fn from(e: Emission) -> QFactor {
        QFactor { conjugator: e.conjugator, root: e.root, value: e.value }
    }
}

impl QFactor {
    pub fn new(conjugator: SpMatrix, root: Root, value: RingElem) -> Result<QFactor> {
        if !reduce_mod2(&value)?.is_zero() {
            return Err(Error::BadInput(format!("factor value {value} is not in 2R")));
        }
        if !conjugator.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(QFactor { conjugator, root, value })
    }

    pub fn evaluate(&self) -> Result<SpMatrix> {
        let inner = root_element(self.conjugator.ring(), self.root, &self.value);
        self.conjugator
            .mul(&inner)?
            .mul(&self.conjugator.symplectic_inverse()?)
    }

    /// Every factor lies in the congruence subgroup.
    pub fn reduces_to_identity(&self) -> Result<bool> {
        Ok(self.evaluate()?.reduce()?.is_identity())
    }
}

/// A word of root elements with its `(U+ U-)` block count.
#[derive(Debug, Clone)]
pub struct UnipotentWord {
    letters: Vec<(Root, RingElem)>,
    block_count: usize,
}

impl UnipotentWord {
    pub fn letters(&self) -> &[(Root, RingElem)] {
        &self.letters
    }

    /// Number of `u+ u-` alternation blocks (J).
    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn product(&self, ring: RingId) -> SpMatrix {
        let mut m = SpMatrix::identity(ring);
        for (phi, t) in &self.letters {
            m = m.mul(&root_element(ring, *phi, t)).unwrap();
        }
        m
    }

    /// Splits the word into J blocks `(positive run, negative run)`.
    pub fn blocks(&self) -> Vec<(Vec<(Root, RingElem)>, Vec<(Root, RingElem)>)> {
        let mut out: Vec<(Vec<(Root, RingElem)>, Vec<(Root, RingElem)>)> = Vec::new();
        let mut pos: Vec<(Root, RingElem)> = Vec::new();
        let mut neg: Vec<(Root, RingElem)> = Vec::new();
        for (phi, t) in &self.letters {
            if phi.is_positive() {
                if !neg.is_empty() {
                    out.push((std::mem::take(&mut pos), std::mem::take(&mut neg)));
                }
                pos.push((*phi, t.clone()));
            } else {
                neg.push((*phi, t.clone()));
            }
        }
        if !pos.is_empty() || !neg.is_empty() {
            out.push((pos, neg));
        }
        out
    }
}

fn count_blocks(letters: &[(Root, RingElem)]) -> usize {
    let mut count = 0usize;
    let mut state_neg = false;
    let mut open = false;
    for (phi, _) in letters {
        if phi.is_positive() {
            if state_neg {
                count += 1;
                state_neg = false;
            }
            open = true;
        } else {
            state_neg = true;
            open = true;
        }
    }
    if open {
        count += 1;
    }
    count
}

/// Elimination driver: applies `eps_phi(t) * W` and records the operation.
struct Eliminator {
    ring: RingId,
    work: SpMatrix,
    ops: Vec<(Root, RingElem)>,
}

impl Eliminator {
    fn apply(&mut self, phi: Root, t: RingElem) {
        if t.is_zero() {
            return;
        }
        self.work = root_element(self.ring, phi, &t).mul(&self.work).unwrap();
        self.ops.push((phi, t));
    }

    fn at(&self, i: usize, j: usize) -> RingElem {
        self.work.at(i, j).clone()
    }

    /// Euclidean reduction of the entry at `pc` to zero against the pivot
    /// at `pa`, using `root_a`: pa += t*pc and `root_c`: pc += t*pa.
    fn euclid_pair(
        &mut self,
        pa: (usize, usize),
        pc: (usize, usize),
        root_a: Root,
        root_c: Root,
    ) -> Result<()> {
        loop {
            let a = self.at(pa.0, pa.1);
            let c = self.at(pc.0, pc.1);
            if c.is_zero() {
                return Ok(());
            }
            if a.is_zero() {
                // move c into the pivot slot: a += c, then c -= a
                self.apply(root_a, self.ring.one());
                self.apply(root_c, RingElem::from_i64(self.ring, -1));
                return Ok(());
            }
            let (q, _) = euclid_divide(&a, &c)?;
            self.apply(root_a, q.neg());
            let a = self.at(pa.0, pa.1);
            let c = self.at(pc.0, pc.1);
            if c.is_zero() || a.is_zero() {
                continue;
            }
            let (q2, _) = euclid_divide(&c, &a)?;
            self.apply(root_c, q2.neg());
        }
    }

    /// Turns a pivot pair `(u, 0)` with `u` a unit into `(1, 0)`.
    fn normalize_unit_pivot(
        &mut self,
        pa: (usize, usize),
        root_a: Root,
        root_c: Root,
    ) -> Result<()> {
        let u = self.at(pa.0, pa.1);
        if u.is_one() {
            return Ok(());
        }
        if !u.is_unit() {
            return Err(Error::ResidualNotIdentity(format!(
                "pivot {u} is not a unit; input was not symplectic over {}",
                self.ring
            )));
        }
        let one = self.ring.one();
        self.apply(root_c, u.inv()?); // (u, 1)
        self.apply(root_a, one.sub(&u)?); // (1, 1)
        self.apply(root_a.negate(), RingElem::from_i64(self.ring, -1)); // (1, 0)
        Ok(())
    }
}

/// Writes a symplectic matrix over a Euclidean catalog ring as a product
/// of root elements. The block count J is measured, not assumed.
pub fn unipotent_factor(m: &SpMatrix) -> Result<UnipotentWord> {
    let ring = m.ring();
    if !supports_euclid(ring) {
        return Err(Error::NotEuclideanHere(ring.to_string()));
    }
    if !m.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    let mut el = Eliminator { ring, work: m.clone(), ops: Vec::new() };

    // column 1: clear rows 3, 4, 2 against the (1,1) pivot.
    // rows (1,3) form an SL2 pair via 2a+b; rows (2,4) via b; rows (1,2) via a.
    el.euclid_pair((0, 0), (2, 0), Root::TwoAlphaBeta, Root::NegTwoAlphaBeta)?;
    el.euclid_pair((1, 0), (3, 0), Root::Beta, Root::NegBeta)?;
    el.euclid_pair((0, 0), (1, 0), Root::Alpha, Root::NegAlpha)?;
    el.normalize_unit_pivot((0, 0), Root::TwoAlphaBeta, Root::NegTwoAlphaBeta)?;

    debug_assert!(el.at(1, 0).is_zero() && el.at(2, 0).is_zero() && el.at(3, 0).is_zero());
    debug_assert!(el.at(0, 0).is_one());

    // the embedded SL2 on coordinates (2, 4)
    el.euclid_pair((1, 1), (3, 1), Root::Beta, Root::NegBeta)?;
    el.normalize_unit_pivot((1, 1), Root::Beta, Root::NegBeta)?;
    let w13 = el.at(1, 3);
    el.apply(Root::Beta, w13.neg());

    // closing: the remaining entries are tied by symplecticity; a+b must
    // come first, since its row0 += t*row3 side effect feeds column 3
    let w03 = el.at(0, 3);
    el.apply(Root::AlphaBeta, w03.neg());
    let w02 = el.at(0, 2);
    el.apply(Root::TwoAlphaBeta, w02.neg());
    let w01 = el.at(0, 1);
    el.apply(Root::Alpha, w01.neg());

    if !el.work.is_identity() {
        return Err(Error::ResidualNotIdentity(
            "elimination did not reach the identity".into(),
        ));
    }

    let letters: Vec<(Root, RingElem)> =
        el.ops.into_iter().map(|(phi, t)| (phi, t.neg())).collect();
    let letters = compact_word(ring, letters);
    let block_count = count_blocks(&letters);
    let word = UnipotentWord { letters, block_count };
    debug_assert_eq!(word.product(ring), *m);
    Ok(word)
}

/// True when eps_phi and eps_psi commute identically: phi + psi is
/// neither zero nor a root.
fn roots_commute(phi: Root, psi: Root) -> bool {
    let (a, b) = phi.vector();
    let (c, d) = psi.vector();
    let sum = (a + c, b + d);
    sum != (0, 0) && Root::from_vector(sum).is_none()
}

/// Word cleanup: merge adjacent same-root letters, drop zero letters, and
/// bubble positive letters leftward past negatives they commute with.
/// This lowers the block count J without changing the product.
fn compact_word(ring: RingId, mut letters: Vec<(Root, RingElem)>) -> Vec<(Root, RingElem)> {
    let _ = ring;
    loop {
        let mut changed = false;
        // merge and drop
        let mut merged: Vec<(Root, RingElem)> = Vec::with_capacity(letters.len());
        for (phi, t) in letters.into_iter() {
            if t.is_zero() {
                changed = true;
                continue;
            }
            if let Some((last_phi, last_t)) = merged.last_mut() {
                if *last_phi == phi {
                    *last_t = last_t.add(&t).unwrap();
                    changed = true;
                    if last_t.is_zero() {
                        merged.pop();
                    }
                    continue;
                }
            }
            merged.push((phi, t));
        }
        letters = merged;
        // move positives left past commuting negatives
        for i in 0..letters.len().saturating_sub(1) {
            let (p1, p2) = (letters[i].0, letters[i + 1].0);
            if !p1.is_positive() && p2.is_positive() && roots_commute(p1, p2) {
                letters.swap(i, i + 1);
                changed = true;
            }
        }
        if !changed {
            return letters;
        }
    }
}

/// Folds a Weyl-word multiplication into a Bruhat form, emitting at most
/// `l_F(w2)` factors: `x * lift(w2) = (product of emissions) * result`.
pub fn cell_multiply(
    x: &BruhatForm,
    w2: &WeylWord,
    ctx: &CellContext,
) -> Result<(BruhatForm, Vec<QFactor>)> {
    let mut form = x.clone();
    let mut emitted = Vec::new();
    for g in w2.letters() {
        if let Some(e) = form.append_letter(*g, ctx)? {
            emitted.push(QFactor::from(e));
        }
    }
    debug_assert!(emitted.len() <= w2.letters().len());
    Ok((form, emitted))
}

/// Normalizes a Borel element into the transversal:
/// `b = (product of emissions) * normalized`, with at most 10 emissions
/// (4 for the unipotent coordinates, 3 per torus coordinate).
pub fn borel_normalize(
    b: &BorelCoords,
    ctx: &CellContext,
) -> Result<(Vec<QFactor>, BorelCoords)> {
    let ring = b.ring();
    let mut emissions: Vec<QFactor> = Vec::new();
    let mut prefix = SpMatrix::identity(ring);
    let coords = [
        (Root::TwoAlphaBeta, b.t_2ab.clone()),
        (Root::AlphaBeta, b.t_ab.clone()),
        (Root::Beta, b.t_b.clone()),
        (Root::Alpha, b.t_a.clone()),
    ];
    let mut new_ts = Vec::with_capacity(4);
    for (phi, t) in coords {
        let x = ctx.rep_of(&t)?;
        let delta = t.sub(&x)?;
        if !delta.is_zero() {
            emissions.push(QFactor::new(prefix.clone(), phi, delta)?);
        }
        prefix = prefix.mul(&root_element(ring, phi, &x))?;
        new_ts.push(x);
    }
    let mut new_ss = Vec::with_capacity(2);
    for (gen, s) in [(WeylGen::WAlpha, b.s_a.clone()), (WeylGen::WBeta, b.s_b.clone())] {
        let phi = gen.root();
        let x = ctx.rep_of(&s)?;
        debug_assert!(x.is_unit(), "torus coordinates have nonzero residue");
        if x == s {
            prefix = prefix.mul(&torus_elem(ring, phi, &s)?)?;
            new_ss.push(s);
            continue;
        }
        // h_phi(s) = eps_phi(s) eps_{-phi}(-s^{-1}) eps_phi(s) w_phi(1)^{-1};
        // shift each of the three root factors into the transversal.
        let delta1 = s.sub(&x)?;
        let delta2 = x.inv()?.sub(&s.inv()?)?; // eps_{-phi}(-s^{-1}) = eps_{-phi}(delta2) eps_{-phi}(-x^{-1})
        let p0 = prefix.clone();
        if !delta1.is_zero() {
            emissions.push(QFactor::new(p0.clone(), phi, delta1.clone())?);
        }
        let p1 = p0.mul(&root_element(ring, phi, &x))?;
        if !delta2.is_zero() {
            emissions.push(QFactor::new(p1.clone(), phi.negate(), delta2)?);
        }
        let p2 = p1.mul(&root_element(ring, phi.negate(), &x.inv()?.neg()))?;
        if !delta1.is_zero() {
            emissions.push(QFactor::new(p2, phi, delta1)?);
        }
        // the residue of the expansion collapses back to h_phi(x)
        prefix = p0.mul(&torus_elem(ring, phi, &x)?)?;
        new_ss.push(x);
    }
    let normalized = BorelCoords::new(
        ring,
        new_ts[0].clone(),
        new_ts[1].clone(),
        new_ts[2].clone(),
        new_ts[3].clone(),
        new_ss[0].clone(),
        new_ss[1].clone(),
    )?;
    debug_assert!(emissions.len() <= 10);
    Ok((emissions, normalized))
}

/// A verified factorization of a congruence-subgroup element into
/// conjugates of level-2R root elements.
#[derive(Debug, Clone)]
pub struct QCertificate {
    pub ring: RingId,
    pub target: SpMatrix,
    pub factors: Vec<QFactor>,
    /// Measured block count of the unipotent factorization.
    pub j_blocks: usize,
    /// The certified bound `8J + 6`.
    pub bound: usize,
    /// Emission accounting: (cell fold, Borel normalization).
    pub emission_split: (usize, usize),
}

impl QCertificate {
    /// Exact soundness check: the ordered product of the factors equals
    /// the target.
    pub fn verify(&self) -> Result<bool> {
        let mut prod = SpMatrix::identity(self.ring);
        for f in &self.factors {
            prod = prod.mul(&f.evaluate()?)?;
        }
        Ok(prod == self.target)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// The certified pipeline bound for a measured block count.
pub fn pipeline_bound(j: usize) -> usize {
    if j == 0 {
        0
    } else {
        8 * j + 6
    }
}

/// Factors an element of `N = ker(Sp4(R) -> Sp4(R/2R))` into at most
/// `8J + 6` conjugates of `eps_phi(2x)`.
pub fn congruence_factor(m: &SpMatrix, ctx: &CellContext) -> Result<QCertificate> {
    let ring = m.ring();
    if ring != ctx.ring() {
        return Err(Error::MixedRings(ring.to_string(), ctx.ring().to_string()));
    }
    if ring.two_is_unit() {
        return Err(Error::TwoIsUnit(ring.to_string()));
    }
    if !m.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    if !m.reduce()?.is_identity() {
        return Err(Error::NotInCongruenceSubgroup);
    }

    // fast paths: the identity and bare level-2R root elements
    if m.is_identity() {
        return Ok(QCertificate {
            ring,
            target: m.clone(),
            factors: vec![],
            j_blocks: 0,
            bound: 0,
            emission_split: (0, 0),
        });
    }
    if let Some((phi, t)) = m.match_root_element() {
        let cert = QCertificate {
            ring,
            target: m.clone(),
            factors: vec![QFactor::new(SpMatrix::identity(ring), phi, t)?],
            j_blocks: 1,
            bound: pipeline_bound(1),
            emission_split: (1, 0),
        };
        debug_assert!(cert.verify()?);
        return Ok(cert);
    }

    // (1) unipotent factorization and block grouping
    let word = unipotent_factor(m)?;
    let j = word.block_count();

    // (2) each block u+ u- = (u+ w0)(w0^{-1} u- w0) w0^{-1} becomes two
    // cells carried by the longest element's lift
    let w0 = longest_element();
    let lift_w0 = w0.lift(ring);
    let lift_w0_inv = lift_w0.symplectic_inverse()?;
    // lift(w0) * tau = lift(w0)^{-1}, so tau = lift(w0)^{-2}
    let tau = lift_w0_inv.mul(&lift_w0_inv)?;
    let tau_coords = BorelCoords::from_matrix(&tau)
        .map_err(|_| Error::ResidualNotIdentity("w0 lift square is not diagonal".into()))?;

    let mut cells: Vec<BruhatForm> = Vec::new();
    for (pos, neg) in word.blocks() {
        let u_plus = product_of(ring, &pos);
        let u_minus = product_of(ring, &neg);
        cells.push(BruhatForm::from_parts(
            BorelCoords::from_matrix(&u_plus)
                .map_err(|_| Error::ResidualNotIdentity("u+ not Borel".into()))?,
            w0.clone(),
            BorelCoords::identity(ring),
        ));
        let conj = lift_w0_inv.mul(&u_minus)?.mul(&lift_w0)?;
        cells.push(BruhatForm::from_parts(
            BorelCoords::from_matrix(&conj)
                .map_err(|_| Error::ResidualNotIdentity("w0^{-1} u- w0 not Borel".into()))?,
            w0.clone(),
            tau_coords.clone(),
        ));
    }

    // (3) fold the 2J cells, emitting at most 4 per merge
    let mut emissions: Vec<QFactor> = Vec::new();
    let mut acc = cells[0].clone();
    for cell in &cells[1..] {
        acc.append_borel_matrix(&cell.b1.evaluate())?;
        let (folded, emitted) = cell_multiply(&acc, &cell.word, ctx)?;
        acc = folded;
        emissions.extend(emitted);
        acc.append_borel_matrix(&cell.b2.evaluate())?;
    }
    let fold_count = emissions.len();

    // (4) the residual Weyl word must vanish for congruence elements
    if !acc.word.is_identity_element() {
        return Err(Error::ResidualNotIdentity(format!(
            "nonidentity Weyl part {} for a congruence element",
            acc.word
        )));
    }
    let residual_borel = acc.b1.mul(&acc.b2)?;

    // (5) transversal normalization, at most 10 emissions
    let (norm_emissions, normalized) = borel_normalize(&residual_borel, ctx)?;
    let norm_count = norm_emissions.len();
    emissions.extend(norm_emissions);

    // (6) B_R /\ N = {I}: the normalized residual must be the identity
    if !normalized.evaluate().is_identity() {
        return Err(Error::ResidualNotIdentity(format!(
            "normalized Borel residual is not the identity over {ring}"
        )));
    }

    let cert = QCertificate {
        ring,
        target: m.clone(),
        factors: emissions,
        j_blocks: j,
        bound: pipeline_bound(j),
        emission_split: (fold_count, norm_count),
    };
    if cert.len() > cert.bound {
        return Err(Error::ResidualNotIdentity(format!(
            "certificate length {} exceeds 8J+6 = {}",
            cert.len(),
            cert.bound
        )));
    }
    if !cert.verify()? {
        return Err(Error::ResidualNotIdentity(
            "certificate product does not match the target".into(),
        ));
    }
    Ok(cert)
}

fn product_of(ring: RingId, letters: &[(Root, RingElem)]) -> SpMatrix {
    let mut m = SpMatrix::identity(ring);
    for (phi, t) in letters {
        m = m.mul(&root_element(ring, *phi, t)).unwrap();
    }
    m
}

/// Report of the `B_R w /\ N = {I}` check.
#[derive(Debug, Clone)]
pub struct BrCapReport {
    pub ring: RingId,
    pub cases_checked: usize,
    pub counterexamples: usize,
}

/// Checks that `b * lift(w)` reducing to the identity mod 2R forces
/// `b * lift(w) = I`, over sampled (or exhaustive) transversal Borel
/// elements and all 8 Weyl words.
pub fn br_cap_n_is_trivial(
    ctx: &CellContext,
    samples: Option<usize>,
    seed: u64,
) -> Result<BrCapReport> {
    use rand::{Rng, SeedableRng};
    let ring = ctx.ring();
    let all = crate::bruhat::enumerate_b_r(ctx);
    let chosen: Vec<BorelCoords> = match samples {
        None => all,
        Some(n) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| all[rng.random_range(0..all.len())].clone())
                .collect()
        }
    };
    let mut cases = 0usize;
    let mut bad = 0usize;
    for b in &chosen {
        let bm = b.evaluate();
        for w in crate::weyl::weyl_enumerate() {
            let a = bm.mul(&w.lift(ring))?;
            cases += 1;
            if a.reduce()?.is_identity() && !a.is_identity() {
                bad += 1;
            }
        }
    }
    Ok(BrCapReport { ring, cases_checked: cases, counterexamples: bad })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_sp4_z(rng: &mut impl Rng, steps: usize, bound: i64) -> SpMatrix {
        let z = RingId::Integers;
        let mut m = SpMatrix::identity(z);
        for _ in 0..steps {
            let phi = crate::sp4::ALL_ROOTS[rng.random_range(0..8)];
            let t = RingElem::from_i64(z, rng.random_range(-bound..=bound));
            m = m.mul(&root_element(z, phi, &t)).unwrap();
        }
        m
    }

    #[test]
    fn factor_identity_and_simple_words() {
        let z = RingId::Integers;
        let id = SpMatrix::identity(z);
        let w = unipotent_factor(&id).unwrap();
        assert!(w.letters().is_empty());
        assert_eq!(w.block_count(), 0);

        // eps_a(3) eps_{-b}(2) is already a U+ U- word
        let m = root_element(z, Root::Alpha, &RingElem::from_i64(z, 3))
            .mul(&root_element(z, Root::NegBeta, &RingElem::from_i64(z, 2)))
            .unwrap();
        let w = unipotent_factor(&m).unwrap();
        assert_eq!(w.product(z), m);
        assert_eq!(w.block_count(), 1);
    }

    #[test]
    fn factor_random_products() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let m = random_sp4_z(&mut rng, 10, 4);
            let w = unipotent_factor(&m).unwrap();
            assert_eq!(w.product(RingId::Integers), m);
        }
    }

    #[test]
    fn factor_over_fields_and_quadratic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(32);
        for ring in [
            RingId::PrimeField(2),
            RingId::PrimeField(3),
            RingId::Gf4,
            RingId::Gf8,
            RingId::QuadraticOrder(5),
            RingId::LocalizedIntegers(5),
        ] {
            for _ in 0..25 {
                let mut m = SpMatrix::identity(ring);
                for _ in 0..8 {
                    let phi = crate::sp4::ALL_ROOTS[rng.random_range(0..8)];
                    let t = crate::sample::random_elem(ring, &mut rng);
                    m = m.mul(&root_element(ring, phi, &t)).unwrap();
                }
                let w = unipotent_factor(&m).unwrap();
                assert_eq!(w.product(ring), m, "ring {ring}");
            }
        }
    }

    #[test]
    fn cell_multiply_emission_bound() {
        let z = RingId::Integers;
        let ctx = CellContext::new(z).unwrap();
        let w0 = longest_element();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        for _ in 0..20 {
            let b1 = BorelCoords::from_matrix(&random_upper(z, &mut rng)).unwrap();
            let b2 = BorelCoords::from_matrix(&random_upper(z, &mut rng)).unwrap();
            let x = BruhatForm::from_parts(b1, w0.clone(), b2);
            let (result, emitted) = cell_multiply(&x, &w0, &ctx).unwrap();
            assert!(emitted.len() <= 4);
            // product identity: x * lift(w0) = (emissions) * result
            let mut rhs = SpMatrix::identity(z);
            for e in &emitted {
                rhs = rhs.mul(&e.evaluate().unwrap()).unwrap();
            }
            rhs = rhs.mul(&result.evaluate()).unwrap();
            assert_eq!(x.evaluate().mul(&w0.lift(z)).unwrap(), rhs);
            // the Weyl part is a subword of the concatenated expression
            assert!(crate::weyl::is_subword(&result.word, &w0.concat(&w0)));
        }
    }

    fn random_upper(ring: RingId, rng: &mut impl Rng) -> SpMatrix {
        let mut m = SpMatrix::identity(ring);
        for phi in crate::sp4::POSITIVE_ROOTS {
            let t = RingElem::from_i64(ring, rng.random_range(-3..=3));
            m = m.mul(&root_element(ring, phi, &t)).unwrap();
        }
        m
    }

    #[test]
    fn borel_normalize_examples() {
        let z = RingId::Integers;
        let ctx = CellContext::new(z).unwrap();
        // already normalized: zero emissions
        let b = BorelCoords::from_matrix(&random_upper(z, &mut rand_chacha::ChaCha8Rng::seed_from_u64(1)))
            .unwrap();
        let _ = b;
        let id = BorelCoords::identity(z);
        let (es, n) = borel_normalize(&id, &ctx).unwrap();
        assert!(es.is_empty());
        assert!(n.is_identity());

        // t_b = 5: one emission, becomes 1
        let mut b = BorelCoords::identity(z);
        b.t_b = RingElem::from_i64(z, 5);
        let (es, n) = borel_normalize(&b, &ctx).unwrap();
        assert_eq!(es.len(), 1);
        assert!(n.t_b.is_one());
        check_normalize_product(&b, &es, &n);

        // s_a = -1: three emissions, becomes 1
        let mut b = BorelCoords::identity(z);
        b.s_a = RingElem::from_i64(z, -1);
        let (es, n) = borel_normalize(&b, &ctx).unwrap();
        assert!(es.len() <= 3);
        assert!(n.s_a.is_one());
        check_normalize_product(&b, &es, &n);

        // s_a = -3 over Z[1/3] (a unit there): normalizes to 1
        let r = RingId::LocalizedIntegers(3);
        let rctx = CellContext::new(r).unwrap();
        let mut b = BorelCoords::identity(r);
        b.s_a = RingElem::localized(r, -1, 1);
        assert!(b.s_a.is_unit());
        let (es, n) = borel_normalize(&b, &rctx).unwrap();
        assert!(es.len() <= 3);
        assert!(n.s_a.is_one());
        check_normalize_product(&b, &es, &n);
    }

    fn check_normalize_product(b: &BorelCoords, es: &[QFactor], n: &BorelCoords) {
        let mut prod = SpMatrix::identity(b.ring());
        for e in es {
            prod = prod.mul(&e.evaluate().unwrap()).unwrap();
        }
        prod = prod.mul(&n.evaluate()).unwrap();
        assert_eq!(prod, b.evaluate());
    }

    #[test]
    fn certificate_for_single_q_generator() {
        let z = RingId::Integers;
        let ctx = CellContext::new(z).unwrap();
        let id_cert = congruence_factor(&SpMatrix::identity(z), &ctx).unwrap();
        assert!(id_cert.is_empty());

        let m = root_element(z, Root::Beta, &RingElem::from_i64(z, 2));
        let cert = congruence_factor(&m, &ctx).unwrap();
        assert_eq!(cert.len(), 1);
        assert_eq!(cert.factors[0].root, Root::Beta);
        assert_eq!(cert.factors[0].value, RingElem::from_i64(z, 2));
        assert!(cert.factors[0].conjugator.is_identity());
        assert!(cert.verify().unwrap());
    }

    #[test]
    fn certificate_for_random_products_of_q_factors() {
        let z = RingId::Integers;
        let ctx = CellContext::new(z).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(34);
        for trial in 0..25 {
            let m = random_congruence_element(z, &mut rng, 3);
            let cert = congruence_factor(&m, &ctx).unwrap();
            assert!(cert.verify().unwrap(), "trial {trial}");
            assert!(cert.len() <= cert.bound, "trial {trial}");
            for f in &cert.factors {
                assert!(reduce_mod2(&f.value).unwrap().is_zero());
                assert!(f.reduces_to_identity().unwrap());
            }
        }
    }

    fn random_congruence_element(ring: RingId, rng: &mut impl Rng, count: usize) -> SpMatrix {
        let mut m = SpMatrix::identity(ring);
        for _ in 0..count {
            let conj = loop {
                let c = {
                    let mut c = SpMatrix::identity(ring);
                    for _ in 0..3 {
                        let phi = crate::sp4::ALL_ROOTS[rng.random_range(0..8)];
                        let t = RingElem::from_i64(ring, rng.random_range(-2..=2));
                        c = c.mul(&root_element(ring, phi, &t)).unwrap();
                    }
                    c
                };
                break c;
            };
            let phi = crate::sp4::ALL_ROOTS[rng.random_range(0..8)];
            let v = RingElem::from_i64(ring, 2 * rng.random_range(-3..=3i64));
            let f = QFactor::new(conj, phi, v).unwrap();
            m = m.mul(&f.evaluate().unwrap()).unwrap();
        }
        m
    }

    #[test]
    fn br_cap_trivial_over_z() {
        let ctx = CellContext::new(RingId::Integers).unwrap();
        let report = br_cap_n_is_trivial(&ctx, None, 0).unwrap();
        assert_eq!(report.cases_checked, 16 * 8);
        assert_eq!(report.counterexamples, 0);
    }

    #[test]
    fn rejects_non_congruence_input() {
        let z = RingId::Integers;
        let ctx = CellContext::new(z).unwrap();
        let m = root_element(z, Root::Beta, &RingElem::from_i64(z, 1));
        assert!(matches!(
            congruence_factor(&m, &ctx),
            Err(Error::NotInCongruenceSubgroup)
        ));
    }

    #[test]
    fn rejects_two_unit_rings() {
        let f3 = RingId::PrimeField(3);
        let ctx = CellContext::new(f3).unwrap();
        assert!(matches!(
            congruence_factor(&SpMatrix::identity(f3), &ctx),
            Err(Error::TwoIsUnit(_))
        ));
    }
}
