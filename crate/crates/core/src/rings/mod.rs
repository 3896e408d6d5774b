//! Exact arithmetic for the supported coefficient rings.
//!
//! The catalog is closed: the integers, localizations `Z[1/p]` at an odd
//! prime, quadratic orders `Z[(1+sqrt(D))/2]` for squarefree `D = 1 mod 4`,
//! the cubic orders `Z[x_p]` with `x_p^3 + p*x_p^2 - 1 = 0`, and the small
//! residue fields F2, F3, GF(4) and GF(8). Every element is stored in
//! canonical coordinates and all operations are exact.

mod elem;
pub mod euclid;
pub mod ideal;
pub mod pseudogood;

pub use elem::{Repr, RingElem};
pub use euclid::{euclid_divide, euclid_size};
pub use pseudogood::{coset_reps, coset_reps_with, is_pseudo_good, CosetReps, PseudoGoodness};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Identifier of a ring from the supported catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingId {
    /// The rational integers Z.
    Integers,
    /// Z[1/p] for an odd prime p.
    LocalizedIntegers(u32),
    /// The maximal order of Q[sqrt(D)] in the basis (1, (1+sqrt(D))/2);
    /// D squarefree with D = 1 mod 4.
    QuadraticOrder(i64),
    /// Z[x_p] with x_p^3 + p x_p^2 - 1 = 0, p an odd prime.
    CubicOrder(u32),
    /// F_q for q in {2, 3}.
    PrimeField(u8),
    /// F_2[t]/(t^2 + t + 1).
    Gf4,
    /// F_2[t]/(t^3 + t^2 + 1).
    Gf8,
}

fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn is_squarefree_i64(n: i64) -> bool {
    let mut m = n.unsigned_abs();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return false;
            }
        }
        d += 1;
    }
    true
}

impl RingId {
    /// Validates the parameters of the identifier.
    pub fn validate(&self) -> Result<()> {
        match *self {
            RingId::Integers => Ok(()),
            RingId::LocalizedIntegers(p) => {
                if p == 2 || !is_prime_u32(p) {
                    Err(Error::BadInput(format!("Z[1/{p}] requires an odd prime")))
                } else {
                    Ok(())
                }
            }
            RingId::QuadraticOrder(d) => {
                if d == 1 || !is_squarefree_i64(d) || d.rem_euclid(4) != 1 {
                    Err(Error::BadInput(format!(
                        "O({d}) requires squarefree D = 1 mod 4, D != 1"
                    )))
                } else {
                    Ok(())
                }
            }
            RingId::CubicOrder(p) => {
                if p == 2 || !is_prime_u32(p) {
                    Err(Error::BadInput(format!("Cubic({p}) requires an odd prime")))
                } else {
                    Ok(())
                }
            }
            RingId::PrimeField(q) => {
                if q == 2 || q == 3 {
                    Ok(())
                } else {
                    Err(Error::BadInput(format!("prime field F{q} not in catalog")))
                }
            }
            RingId::Gf4 | RingId::Gf8 => Ok(()),
        }
    }

    /// True when the ring is one of the four finite fields.
    pub fn is_field(&self) -> bool {
        matches!(self, RingId::PrimeField(_) | RingId::Gf4 | RingId::Gf8)
    }

    /// True when 2 is a unit (only F3 in the catalog).
    pub fn two_is_unit(&self) -> bool {
        matches!(self, RingId::PrimeField(3))
    }

    /// Number of elements for finite rings.
    pub fn field_size(&self) -> Option<u8> {
        match self {
            RingId::PrimeField(q) => Some(*q),
            RingId::Gf4 => Some(4),
            RingId::Gf8 => Some(8),
            _ => None,
        }
    }

    /// The residue ring R/2R as a catalog member, when 2 is not a unit.
    ///
    /// Integers and Z[1/p] reduce onto F2; quadratic orders with 2 inert
    /// (`D = 5 mod 8`) onto GF(4); cubic orders onto GF(8); the
    /// characteristic-2 fields are their own residue rings.
    pub fn residue_ring(&self) -> Result<RingId> {
        match *self {
            RingId::Integers | RingId::LocalizedIntegers(_) => Ok(RingId::PrimeField(2)),
            RingId::QuadraticOrder(d) => {
                if d.rem_euclid(8) == 5 {
                    Ok(RingId::Gf4)
                } else {
                    Err(Error::UnsupportedResidue(
                        self.to_string(),
                        "2 is not inert (D != 5 mod 8)".into(),
                    ))
                }
            }
            RingId::CubicOrder(_) => Ok(RingId::Gf8),
            RingId::PrimeField(2) => Ok(RingId::PrimeField(2)),
            RingId::PrimeField(q) => Err(Error::TwoIsUnit(format!("F{q}"))),
            RingId::Gf4 => Ok(RingId::Gf4),
            RingId::Gf8 => Ok(RingId::Gf8),
        }
    }

    pub fn zero(&self) -> RingElem {
        RingElem::from_i64(*self, 0)
    }

    pub fn one(&self) -> RingElem {
        RingElem::from_i64(*self, 1)
    }

    /// All elements of a finite ring, in canonical enumeration order.
    pub fn field_elements(&self) -> Result<Vec<RingElem>> {
        let q = self
            .field_size()
            .ok_or_else(|| Error::NotAField(self.to_string()))?;
        Ok((0..q).map(|v| RingElem::from_field_code(*self, v)).collect())
    }
}

impl std::fmt::Display for RingId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingId::Integers => write!(f, "Z"),
            RingId::LocalizedIntegers(p) => write!(f, "Z[1/{p}]"),
            RingId::QuadraticOrder(d) => write!(f, "O({d})"),
            RingId::CubicOrder(p) => write!(f, "Cubic({p})"),
            RingId::PrimeField(q) => write!(f, "F{q}"),
            RingId::Gf4 => write!(f, "F4"),
            RingId::Gf8 => write!(f, "F8"),
        }
    }
}

impl std::str::FromStr for RingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<RingId> {
        let s = s.trim();
        let id = match s {
            "Z" => RingId::Integers,
            "F2" => RingId::PrimeField(2),
            "F3" => RingId::PrimeField(3),
            "F4" => RingId::Gf4,
            "F8" => RingId::Gf8,
            _ => {
                if let Some(rest) = s.strip_prefix("Z[1/").and_then(|r| r.strip_suffix(']')) {
                    let p: u32 = rest
                        .parse()
                        .map_err(|_| Error::BadInput(format!("bad ring literal {s:?}")))?;
                    RingId::LocalizedIntegers(p)
                } else if let Some(rest) = s.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
                    let d: i64 = rest
                        .parse()
                        .map_err(|_| Error::BadInput(format!("bad ring literal {s:?}")))?;
                    RingId::QuadraticOrder(d)
                } else if let Some(rest) = s.strip_prefix("Cubic(").and_then(|r| r.strip_suffix(')'))
                {
                    let p: u32 = rest
                        .parse()
                        .map_err(|_| Error::BadInput(format!("bad ring literal {s:?}")))?;
                    RingId::CubicOrder(p)
                } else {
                    return Err(Error::BadInput(format!("unknown ring literal {s:?}")));
                }
            }
        };
        id.validate()?;
        Ok(id)
    }
}

/// Field norm and trace over Q for elements of a quadratic or cubic order.
pub fn norm_trace(x: &RingElem) -> Result<(BigInt, BigInt)> {
    match (&x.ring(), x.repr()) {
        (RingId::QuadraticOrder(d), Repr::Quad { a, b }) => {
            // N(a + b*omega) = a^2 + a*b - b^2 (D-1)/4, tr = 2a + b.
            let m = BigInt::from((d - 1) / 4);
            let norm = a * a + a * b - b * b * m;
            let trace = BigInt::from(2) * a + b;
            Ok((norm, trace))
        }
        (RingId::CubicOrder(_), Repr::Cubic { .. }) => {
            let m = x.cubic_mul_matrix()?;
            let trace = &m[0][0] + &m[1][1] + &m[2][2];
            let norm = det3(&m);
            Ok((norm, trace))
        }
        _ => Err(Error::UnsupportedRing(x.ring().to_string())),
    }
}

pub(crate) fn det3(m: &[[BigInt; 3]; 3]) -> BigInt {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Division with remainder rounded to the nearest multiple, so that
/// `|r| <= |b|/2 < |b|`.
pub(crate) fn balanced_divmod(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(!b.is_zero());
    let (mut q, mut r) = a.div_rem(b);
    // div_rem truncates toward zero; pull r into the balanced range.
    if BigInt::from(2) * r.abs() > b.abs() {
        if r.sign() == b.sign() {
            q += BigInt::one();
            r -= b;
        } else {
            q -= BigInt::one();
            r += b;
        }
    }
    debug_assert!(a - &q * b == r);
    (q, r)
}

/// Reduction mod 2R into the catalog residue ring.
pub fn reduce_mod2(x: &RingElem) -> Result<RingElem> {
    let target = x.ring().residue_ring()?;
    let code = match x.repr() {
        Repr::Int(n) => n.mod_floor(&BigInt::from(2)).to_u8_digit(),
        Repr::Loc { num, .. } => {
            // p odd, so every power of p is 1 mod 2R.
            num.mod_floor(&BigInt::from(2)).to_u8_digit()
        }
        Repr::Quad { a, b } => {
            let a2 = a.mod_floor(&BigInt::from(2)).to_u8_digit();
            let b2 = b.mod_floor(&BigInt::from(2)).to_u8_digit();
            a2 | (b2 << 1)
        }
        Repr::Cubic { a, b, c } => {
            let a2 = a.mod_floor(&BigInt::from(2)).to_u8_digit();
            let b2 = b.mod_floor(&BigInt::from(2)).to_u8_digit();
            let c2 = c.mod_floor(&BigInt::from(2)).to_u8_digit();
            a2 | (b2 << 1) | (c2 << 2)
        }
        Repr::Fq(v) => *v,
    };
    Ok(RingElem::from_field_code(target, code))
}

trait ToU8Digit {
    fn to_u8_digit(&self) -> u8;
}

impl ToU8Digit for BigInt {
    fn to_u8_digit(&self) -> u8 {
        if self.is_zero() {
            0
        } else {
            1
        }
    }
}
