//! Deterministic random sampling of ring elements and group elements,
//! shared by the relation-verification command and the test suites.

use crate::rings::{RingElem, RingId};
use crate::sp4::{root_element, SpMatrix, ALL_ROOTS};
use rand::Rng;

/// A random element with small canonical coordinates.
pub fn random_elem(ring: RingId, rng: &mut impl Rng) -> RingElem {
    random_elem_bounded(ring, rng, 50)
}

pub fn random_elem_bounded(ring: RingId, rng: &mut impl Rng, bound: i64) -> RingElem {
    match ring {
        RingId::Integers => RingElem::from_i64(ring, rng.random_range(-bound..=bound)),
        RingId::LocalizedIntegers(_) => {
            RingElem::localized(ring, rng.random_range(-bound..=bound), rng.random_range(-1..=1))
        }
        RingId::QuadraticOrder(_) => RingElem::quad(
            ring,
            rng.random_range(-bound..=bound),
            rng.random_range(-bound..=bound),
        ),
        RingId::CubicOrder(_) => RingElem::cubic(
            ring,
            rng.random_range(-bound..=bound),
            rng.random_range(-bound..=bound),
            rng.random_range(-bound..=bound),
        ),
        _ => {
            let q = ring.field_size().unwrap();
            RingElem::from_field_code(ring, rng.random_range(0..q))
        }
    }
}

/// A random unit: +-1 over orders, a random power of p over Z[1/p],
/// small unit powers over the pseudo-good quadratic orders, any nonzero
/// element over a field.
pub fn random_unit(ring: RingId, rng: &mut impl Rng) -> RingElem {
    match ring {
        RingId::Integers | RingId::CubicOrder(_) => {
            RingElem::from_i64(ring, if rng.random_bool(0.5) { 1 } else { -1 })
        }
        RingId::LocalizedIntegers(_) => {
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            RingElem::localized(ring, sign, rng.random_range(-1..=1))
        }
        RingId::QuadraticOrder(_) => {
            if let Ok(reps) = crate::rings::coset_reps(ring) {
                let units: Vec<&RingElem> =
                    reps.elements().iter().filter(|e| !e.is_zero()).collect();
                let u = units[rng.random_range(0..units.len())].clone();
                if rng.random_bool(0.5) {
                    u.neg()
                } else {
                    u
                }
            } else {
                RingElem::from_i64(ring, if rng.random_bool(0.5) { 1 } else { -1 })
            }
        }
        _ => {
            let q = ring.field_size().unwrap();
            RingElem::from_field_code(ring, rng.random_range(1..q))
        }
    }
}

/// A random product of `steps` root elements with parameters bounded by
/// `bound` in canonical coordinates.
pub fn random_root_product(
    ring: RingId,
    rng: &mut impl Rng,
    steps: usize,
    bound: i64,
) -> SpMatrix {
    let mut m = SpMatrix::identity(ring);
    for _ in 0..steps {
        let phi = ALL_ROOTS[rng.random_range(0..8)];
        let t = random_elem_bounded(ring, rng, bound);
        m = m.mul(&root_element(ring, phi, &t)).unwrap();
    }
    m
}
