use super::{balanced_divmod, norm_trace, Repr, RingElem, RingId};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Quadratic orders with a norm-Euclidean division in the catalog.
pub const NORM_EUCLIDEAN_D: [i64; 5] = [-3, 5, 13, 21, 29];

pub(crate) fn supports_euclid(ring: RingId) -> bool {
    match ring {
        RingId::Integers | RingId::LocalizedIntegers(_) => true,
        RingId::QuadraticOrder(d) => NORM_EUCLIDEAN_D.contains(&d),
        RingId::CubicOrder(_) => false,
        _ => ring.is_field(),
    }
}

/// The Euclidean size function: |.| over Z, the p-free part over Z[1/p],
/// |field norm| over quadratic orders, and 0/1 over fields.
pub fn euclid_size(x: &RingElem) -> Result<BigInt> {
    match (x.ring(), x.repr()) {
        (RingId::Integers, Repr::Int(n)) => Ok(n.abs()),
        (RingId::LocalizedIntegers(_), Repr::Loc { num, .. }) => Ok(num.abs()),
        (RingId::QuadraticOrder(d), _) if NORM_EUCLIDEAN_D.contains(&d) => {
            let (n, _) = norm_trace(x)?;
            Ok(n.abs())
        }
        (r, _) if r.is_field() => Ok(if x.is_zero() { BigInt::zero() } else { BigInt::from(1) }),
        (r, _) => Err(Error::NotEuclideanHere(r.to_string())),
    }
}

/// Division with small remainder: `a = q*b + r` with `size(r) < size(b)`.
pub fn euclid_divide(a: &RingElem, b: &RingElem) -> Result<(RingElem, RingElem)> {
    if a.ring() != b.ring() {
        return Err(Error::MixedRings(a.ring().to_string(), b.ring().to_string()));
    }
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ring = a.ring();
    match ring {
        RingId::Integers => {
            let (x, y) = match (a.repr(), b.repr()) {
                (Repr::Int(x), Repr::Int(y)) => (x, y),
                _ => unreachable!(),
            };
            let (q, r) = balanced_divmod(x, y);
            Ok((RingElem::from_bigint(ring, q), RingElem::from_bigint(ring, r)))
        }
        RingId::LocalizedIntegers(p) => {
            let ((na, ea), (nb, eb)) = match (a.repr(), b.repr()) {
                (Repr::Loc { num: na, exp: ea }, Repr::Loc { num: nb, exp: eb }) => {
                    ((na, *ea), (nb, *eb))
                }
                _ => unreachable!(),
            };
            // Divide the p-free parts; units p^k carry the rest.
            let (q0, r0) = balanced_divmod(na, nb);
            let q = RingElem::from_coords(ring, &[q0, BigInt::from(ea - eb)])?;
            let r = RingElem::from_coords(ring, &[r0, BigInt::from(ea)])?;
            debug_assert_eq!(&q.mul(b)?.add(&r)?, a);
            let _ = p;
            Ok((q, r))
        }
        RingId::QuadraticOrder(d) if NORM_EUCLIDEAN_D.contains(&d) => {
            // a/b = a * conj(b) / N(b); round both omega-coordinates and
            // search nearby lattice points for a remainder of smaller norm.
            let (bn, _) = norm_trace(b)?;
            let conj_b = match b.repr() {
                Repr::Quad { a: x, b: y } => RingElem::quad_big(ring, x + y, -y),
                _ => unreachable!(),
            };
            let num = a.mul(&conj_b)?;
            let (nx, ny) = match num.repr() {
                Repr::Quad { a: x, b: y } => (x.clone(), y.clone()),
                _ => unreachable!(),
            };
            let rx = round_div(&nx, &bn);
            let ry = round_div(&ny, &bn);
            let size_b = bn.abs();
            for (i, j) in OFFSETS {
                let q = RingElem::quad_big(
                    ring,
                    &rx + BigInt::from(*i),
                    &ry + BigInt::from(*j),
                );
                let r = a.sub(&q.mul(b)?)?;
                let (rn, _) = norm_trace(&r)?;
                if rn.abs() < size_b {
                    return Ok((q, r));
                }
            }
            Err(Error::NotEuclideanHere(format!(
                "no small remainder found near {a} / {b} in {ring}"
            )))
        }
        _ if ring.is_field() => Ok((a.mul(&b.inv()?)?, ring.zero())),
        _ => Err(Error::NotEuclideanHere(ring.to_string())),
    }
}

// Deterministic search order around the rounded quotient.
const OFFSETS: &[(i8, i8)] = &[
    (0, 0),
    (0, 1),
    (0, -1),
    (1, 0),
    (-1, 0),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
    (0, 2),
    (0, -2),
    (2, 0),
    (-2, 0),
    (1, 2),
    (1, -2),
    (-1, 2),
    (-1, -2),
    (2, 1),
    (2, -1),
    (-2, 1),
    (-2, -1),
    (2, 2),
    (2, -2),
    (-2, 2),
    (-2, -2),
];

/// Nearest integer to x/den for den != 0.
fn round_div(x: &BigInt, den: &BigInt) -> BigInt {
    let (x, den) = if den.is_negative() {
        (-x, -den)
    } else {
        (x.clone(), den.clone())
    };
    let (q, _) = balanced_divmod(&x, &den);
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn integer_division() {
        let z = RingId::Integers;
        let (q, r) = euclid_divide(&RingElem::from_i64(z, 7), &RingElem::from_i64(z, 2)).unwrap();
        assert_eq!(q, RingElem::from_i64(z, 3));
        assert_eq!(r, RingElem::from_i64(z, 1));
    }

    #[test]
    fn unit_division_is_exact() {
        let o5 = RingId::QuadraticOrder(5);
        let w = RingElem::quad(o5, 0, 1);
        let one = o5.one();
        let (q, r) = euclid_divide(&one, &w).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, w.inv().unwrap());
    }

    #[test]
    fn omega_by_two_has_small_remainder() {
        let o5 = RingId::QuadraticOrder(5);
        let w = RingElem::quad(o5, 0, 1);
        let two = RingElem::from_i64(o5, 2);
        let (q, r) = euclid_divide(&w, &two).unwrap();
        assert_eq!(q.mul(&two).unwrap().add(&r).unwrap(), w);
        assert!(euclid_size(&r).unwrap() < euclid_size(&two).unwrap());
    }

    #[test]
    fn random_division_invariant() {
        // a = q b + r with size(r) < size(b), 1000 pairs per Euclidean ring.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xE0C11D);
        let rings = [
            RingId::Integers,
            RingId::LocalizedIntegers(5),
            RingId::QuadraticOrder(-3),
            RingId::QuadraticOrder(5),
            RingId::QuadraticOrder(13),
            RingId::QuadraticOrder(21),
            RingId::QuadraticOrder(29),
        ];
        for ring in rings {
            for _ in 0..1000 {
                let a = random_elem(ring, &mut rng);
                let b = random_elem(ring, &mut rng);
                if b.is_zero() {
                    continue;
                }
                let (q, r) = euclid_divide(&a, &b).unwrap();
                assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a, "ring {ring}");
                assert!(
                    euclid_size(&r).unwrap() < euclid_size(&b).unwrap(),
                    "ring {ring}: size(r) not smaller for {a} / {b}"
                );
            }
        }
    }

    fn random_elem(ring: RingId, rng: &mut impl Rng) -> RingElem {
        match ring {
            RingId::Integers => RingElem::from_i64(ring, rng.random_range(-500..=500)),
            RingId::LocalizedIntegers(_) => RingElem::localized(
                ring,
                rng.random_range(-500..=500),
                rng.random_range(-2..=2),
            ),
            RingId::QuadraticOrder(_) => RingElem::quad(
                ring,
                rng.random_range(-100..=100),
                rng.random_range(-100..=100),
            ),
            _ => unreachable!(),
        }
    }
}
