//! 2R-pseudo-goodness: transversals of 2R consisting of 0 and units.
//!
//! A ring is 2R-pseudo-good when the units surject onto the nonzero
//! classes of R/2R. For quadratic orders the unit search enumerates odd
//! solutions of b^2 D = a^2 +- 4; a negative verdict requires a supplied
//! fundamental unit whose residue image is trivial.

use super::{reduce_mod2, RingElem, RingId};
use crate::error::{Error, Result};
use num_traits::Signed;

/// Verdict of the pseudo-goodness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudoGoodness {
    /// One unit witness per nonzero residue class, indexed in the residue
    /// ring's canonical enumeration order.
    Yes { witnesses: Vec<RingElem> },
    No { reason: String },
    Inconclusive { searched_up_to: u64 },
}

/// Witness equation `b^2 D = a^2 + 4` (sign +1) or `= a^2 - 4` (sign -1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct PellWitness {
    pub a: u64,
    pub b: u64,
    pub sign: i8,
}

impl PellWitness {
    pub fn equation(&self, d: i64) -> String {
        let op = if self.sign > 0 { '+' } else { '-' };
        format!("{}^2*{} = {}^2 {} 4", self.b, d, self.a, op)
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Searches odd (a, b) with `b^2 D = a^2 +- 4`, b ascending then a.
pub fn search_pell_witness(d: i64, search_bound: u64) -> Option<PellWitness> {
    let mut b = 1u64;
    while b <= search_bound {
        let b2d = (b as i128) * (b as i128) * (d as i128);
        // smaller a first: a^2 = b^2 D - 4 before a^2 = b^2 D + 4
        for sign in [1i8, -1] {
            let a2 = b2d - 4 * (sign as i128);
            if a2 >= 0 {
                let a = isqrt_u128(a2 as u128);
                if a * a == a2 as u128 && a % 2 == 1 {
                    return Some(PellWitness { a: a as u64, b, sign });
                }
            }
        }
        b += 2;
    }
    None
}

/// `(a + b sqrt(D)) / 2` in omega-coordinates, for odd a, b.
pub fn pell_unit(ring: RingId, w: &PellWitness) -> RingElem {
    let a = w.a as i64;
    let b = w.b as i64;
    debug_assert!(a % 2 == 1 && b % 2 == 1);
    RingElem::quad(ring, (a - b) / 2, b)
}

/// Flips the sign of a quadratic element so the leading coordinate is
/// nonnegative; both representatives lie in the same class mod 2R.
fn canonical_sign(x: RingElem) -> RingElem {
    if let super::Repr::Quad { a, b } = x.repr() {
        if a.is_negative() || (a.sign() == num_bigint::Sign::NoSign && b.is_negative()) {
            return x.neg();
        }
    }
    x
}

/// Decides 2R-pseudo-goodness with a bounded unit search.
///
/// `fundamental_unit` feeds the negative branch: when its image in
/// (R/2R)* is trivial the unit group cannot cover the nonzero classes.
pub fn is_pseudo_good(
    ring: RingId,
    search_bound: u64,
    fundamental_unit: Option<&RingElem>,
) -> Result<PseudoGoodness> {
    ring.validate()?;
    let residue = ring.residue_ring()?;
    match ring {
        RingId::Integers | RingId::LocalizedIntegers(_) => Ok(PseudoGoodness::Yes {
            witnesses: vec![ring.one()],
        }),
        RingId::PrimeField(2) | RingId::Gf4 | RingId::Gf8 => {
            // R/2R = R: every nonzero element is its own unit witness.
            let all = ring.field_elements()?;
            Ok(PseudoGoodness::Yes { witnesses: all[1..].to_vec() })
        }
        RingId::CubicOrder(p) => {
            // x_p^2 (x_p + p) = 1: x_p is a unit whose GF(8) image t is a
            // generator of the order-7 group (R/2R)*.
            let _ = p;
            let x = RingElem::cubic(ring, 0, 1, 0);
            let mut by_class: Vec<Option<RingElem>> = vec![None; 8];
            let mut pow = ring.one();
            for _ in 0..7 {
                let class = reduce_mod2(&pow)?.field_code().unwrap();
                if by_class[class as usize].is_none() {
                    by_class[class as usize] = Some(pow.clone());
                }
                pow = pow.mul(&x)?;
            }
            let witnesses: Vec<RingElem> = by_class.into_iter().skip(1).map(|w| {
                w.expect("powers of x_p cover (R/2R)*")
            }).collect();
            Ok(PseudoGoodness::Yes { witnesses })
        }
        RingId::QuadraticOrder(d) => {
            debug_assert_eq!(residue, RingId::Gf4);
            let unit = match search_pell_witness(d, search_bound) {
                Some(w) => Some(pell_unit(ring, &w)),
                None => fundamental_unit.cloned(),
            };
            let Some(u) = unit else {
                return Ok(PseudoGoodness::Inconclusive { searched_up_to: search_bound });
            };
            if !u.is_unit() {
                return Err(Error::NotAUnit(format!("{u}")));
            }
            let img = reduce_mod2(&u)?;
            if img.is_one() {
                // -1 reduces to 1, so the image of <-1, u> is trivial.
                return Ok(PseudoGoodness::No {
                    reason: format!(
                        "the supplied fundamental unit {u} maps to 1 in (R/2R)*; \
                         the unit image is trivial and misses two classes"
                    ),
                });
            }
            // img generates the order-3 group GF(4)*.
            let u2 = canonical_sign(u.mul(&u)?);
            let u = canonical_sign(u);
            let mut by_class: Vec<Option<RingElem>> = vec![None; 4];
            by_class[1] = Some(ring.one());
            for w in [u, u2] {
                let class = reduce_mod2(&w)?.field_code().unwrap();
                if by_class[class as usize].is_none() {
                    by_class[class as usize] = Some(w);
                }
            }
            let witnesses: Vec<RingElem> = by_class
                .into_iter()
                .skip(1)
                .map(|w| w.expect("unit powers cover GF(4)*"))
                .collect();
            Ok(PseudoGoodness::Yes { witnesses })
        }
        RingId::PrimeField(_) => Err(Error::TwoIsUnit(ring.to_string())),
    }
}

/// A transversal of 2R in R consisting of 0 and one unit per nonzero
/// residue class, indexed by the canonical residue enumeration.
#[derive(Debug, Clone)]
pub struct CosetReps {
    ring: RingId,
    residue: RingId,
    /// reps[k] lies in the class of the residue element with code k; reps[0] = 0.
    reps: Vec<RingElem>,
}

impl CosetReps {
    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn residue_ring(&self) -> RingId {
        self.residue
    }

    pub fn elements(&self) -> &[RingElem] {
        &self.reps
    }

    /// The representative of x's residue class.
    pub fn rep_of(&self, x: &RingElem) -> Result<&RingElem> {
        let code = reduce_mod2(x)?.field_code().unwrap();
        Ok(&self.reps[code as usize])
    }

    /// The representative of the class of a residue element.
    pub fn rep_of_class(&self, class: &RingElem) -> &RingElem {
        &self.reps[class.field_code().unwrap() as usize]
    }
}

/// Default unit-search bound used when certifying transversals.
pub const DEFAULT_SEARCH_BOUND: u64 = 10_000;

/// The transversal X of 2R in R guaranteed by pseudo-goodness:
/// `0 in X`, `1 in X`, every other member a unit.
pub fn coset_reps(ring: RingId) -> Result<CosetReps> {
    coset_reps_with(ring, DEFAULT_SEARCH_BOUND, None)
}

pub fn coset_reps_with(
    ring: RingId,
    search_bound: u64,
    fundamental_unit: Option<&RingElem>,
) -> Result<CosetReps> {
    let residue = ring.residue_ring()?;
    match is_pseudo_good(ring, search_bound, fundamental_unit)? {
        PseudoGoodness::Yes { witnesses } => {
            let mut reps = vec![ring.zero()];
            reps.extend(witnesses);
            debug_assert_eq!(reps.len(), residue.field_size().unwrap() as usize);
            debug_assert!(reps[1].is_one());
            Ok(CosetReps { ring, residue, reps })
        }
        PseudoGoodness::No { reason } => Err(Error::NotPseudoGood(ring.to_string(), reason)),
        PseudoGoodness::Inconclusive { searched_up_to } => Err(Error::NotPseudoGood(
            ring.to_string(),
            format!("unit search inconclusive up to {searched_up_to}"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::norm_trace;
    use num_bigint::BigInt;

    #[test]
    fn integers_transversal() {
        let x = coset_reps(RingId::Integers).unwrap();
        assert_eq!(
            x.elements(),
            &[RingId::Integers.zero(), RingId::Integers.one()]
        );
    }

    #[test]
    fn o5_transversal() {
        let o5 = RingId::QuadraticOrder(5);
        let x = coset_reps(o5).unwrap();
        assert_eq!(
            x.elements(),
            &[
                o5.zero(),
                o5.one(),
                RingElem::quad(o5, 0, 1), // omega
                RingElem::quad(o5, 1, 1), // 1 + omega = omega^2
            ]
        );
    }

    #[test]
    fn eisenstein_transversal_matches_explicit_set() {
        let r = RingId::QuadraticOrder(-3);
        let x = coset_reps(r).unwrap();
        assert_eq!(
            x.elements(),
            &[
                r.zero(),
                r.one(),
                RingElem::quad(r, 0, 1),  // (1+sqrt(-3))/2
                RingElem::quad(r, 1, -1), // (1-sqrt(-3))/2
            ]
        );
    }

    #[test]
    fn d61_witness() {
        let w = search_pell_witness(61, 100).unwrap();
        assert_eq!((w.a, w.b, w.sign), (39, 5, 1)); // 5^2*61 = 39^2 + 4
        let u = pell_unit(RingId::QuadraticOrder(61), &w);
        assert!(u.is_unit());
        let (_, t) = norm_trace(&u).unwrap();
        assert_eq!(t, BigInt::from(39));
    }

    #[test]
    fn d37_negative_with_fundamental_unit() {
        let o37 = RingId::QuadraticOrder(37);
        assert!(matches!(
            is_pseudo_good(o37, 1000, None).unwrap(),
            PseudoGoodness::Inconclusive { .. }
        ));
        let fu = RingElem::quad(o37, 5, 2); // 6 + sqrt(37)
        assert!(fu.is_unit());
        assert!(matches!(
            is_pseudo_good(o37, 1000, Some(&fu)).unwrap(),
            PseudoGoodness::No { .. }
        ));
    }

    #[test]
    fn witnesses_are_units_covering_every_class() {
        for ring in [
            RingId::Integers,
            RingId::LocalizedIntegers(7),
            RingId::QuadraticOrder(5),
            RingId::QuadraticOrder(-3),
            RingId::QuadraticOrder(13),
            RingId::CubicOrder(3),
            RingId::CubicOrder(11),
        ] {
            let x = coset_reps(ring).unwrap();
            let residue = ring.residue_ring().unwrap();
            let mut seen = vec![false; residue.field_size().unwrap() as usize];
            for (k, rep) in x.elements().iter().enumerate() {
                let code = reduce_mod2(rep).unwrap().field_code().unwrap() as usize;
                assert_eq!(code, k, "rep {rep} in wrong slot for {ring}");
                assert!(!seen[code]);
                seen[code] = true;
                if k == 0 {
                    assert!(rep.is_zero());
                } else {
                    assert!(rep.is_unit(), "rep {rep} not a unit in {ring}");
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }
}
