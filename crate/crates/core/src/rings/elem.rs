use super::{det3, RingId};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Canonical coordinates of a ring element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Repr {
    /// Integers.
    Int(BigInt),
    /// `num * p^exp` with `num` coprime to p, or `num = 0, exp = 0`.
    Loc { num: BigInt, exp: i64 },
    /// `a + b*omega` with `omega = (1 + sqrt(D))/2`.
    Quad { a: BigInt, b: BigInt },
    /// `a + b*x_p + c*x_p^2`.
    Cubic { a: BigInt, b: BigInt, c: BigInt },
    /// Finite-field element code: the value for F2/F3, polynomial bits
    /// (c0 | c1<<1 | c2<<2) for GF(4) and GF(8).
    Fq(u8),
}

/// An exact element of one of the catalog rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    ring: RingId,
    repr: Repr,
}

// GF(4) = F2[t]/(t^2+t+1), GF(8) = F2[t]/(t^3+t^2+1).
const GF4_REDUCER: u8 = 0b111;
const GF8_REDUCER: u8 = 0b1101;

fn gf_mul(mut a: u8, b: u8, deg: u32, reducer: u8) -> u8 {
    let mut acc: u16 = 0;
    let mut bb = b as u16;
    while a != 0 {
        if a & 1 != 0 {
            acc ^= bb;
        }
        a >>= 1;
        bb <<= 1;
    }
    // reduce degree >= deg terms
    for k in (deg..=(2 * deg - 2)).rev() {
        if acc & (1 << k) != 0 {
            acc ^= (reducer as u16) << (k - deg);
        }
    }
    acc as u8
}

impl RingElem {
    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn from_i64(ring: RingId, n: i64) -> RingElem {
        Self::from_bigint(ring, BigInt::from(n))
    }

    pub fn from_bigint(ring: RingId, n: BigInt) -> RingElem {
        let repr = match ring {
            RingId::Integers => Repr::Int(n),
            RingId::LocalizedIntegers(p) => normalize_loc(n, 0, p),
            RingId::QuadraticOrder(_) => Repr::Quad { a: n, b: BigInt::zero() },
            RingId::CubicOrder(_) => Repr::Cubic {
                a: n,
                b: BigInt::zero(),
                c: BigInt::zero(),
            },
            RingId::PrimeField(q) => {
                Repr::Fq(u8::try_from(&n.mod_floor(&BigInt::from(q))).unwrap())
            }
            RingId::Gf4 | RingId::Gf8 => {
                Repr::Fq(if n.mod_floor(&BigInt::from(2)).is_zero() { 0 } else { 1 })
            }
        };
        RingElem { ring, repr }
    }

    /// Builds a finite-field element from its canonical code.
    pub fn from_field_code(ring: RingId, code: u8) -> RingElem {
        let q = ring.field_size().expect("finite ring");
        assert!(code < q, "field code {code} out of range for {ring}");
        RingElem { ring, repr: Repr::Fq(code) }
    }

    /// Canonical code of a finite-field element.
    pub fn field_code(&self) -> Option<u8> {
        match &self.repr {
            Repr::Fq(v) => Some(*v),
            _ => None,
        }
    }

    /// `a + b*omega` in a quadratic order.
    pub fn quad(ring: RingId, a: i64, b: i64) -> RingElem {
        Self::quad_big(ring, BigInt::from(a), BigInt::from(b))
    }

    pub fn quad_big(ring: RingId, a: BigInt, b: BigInt) -> RingElem {
        assert!(matches!(ring, RingId::QuadraticOrder(_)));
        RingElem { ring, repr: Repr::Quad { a, b } }
    }

    /// `a + b*x_p + c*x_p^2` in a cubic order.
    pub fn cubic(ring: RingId, a: i64, b: i64, c: i64) -> RingElem {
        Self::cubic_big(ring, BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    pub fn cubic_big(ring: RingId, a: BigInt, b: BigInt, c: BigInt) -> RingElem {
        assert!(matches!(ring, RingId::CubicOrder(_)));
        RingElem { ring, repr: Repr::Cubic { a, b, c } }
    }

    /// `num * p^exp` in Z[1/p].
    pub fn localized(ring: RingId, num: i64, exp: i64) -> RingElem {
        let p = match ring {
            RingId::LocalizedIntegers(p) => p,
            _ => panic!("localized() requires Z[1/p]"),
        };
        RingElem { ring, repr: normalize_loc(BigInt::from(num), exp, p) }
    }

    /// Builds an element from raw coordinates (the serialization format).
    pub fn from_coords(ring: RingId, coords: &[BigInt]) -> Result<RingElem> {
        let bad = || Error::BadInput(format!("wrong coordinate count for {ring}"));
        let repr = match ring {
            RingId::Integers => Repr::Int(coords.first().ok_or_else(bad)?.clone()),
            RingId::LocalizedIntegers(p) => {
                if coords.len() != 2 {
                    return Err(bad());
                }
                let exp = i64::try_from(&coords[1])
                    .map_err(|_| Error::BadInput("localized exponent out of range".into()))?;
                normalize_loc(coords[0].clone(), exp, p)
            }
            RingId::QuadraticOrder(_) => {
                if coords.len() != 2 {
                    return Err(bad());
                }
                Repr::Quad { a: coords[0].clone(), b: coords[1].clone() }
            }
            RingId::CubicOrder(_) => {
                if coords.len() != 3 {
                    return Err(bad());
                }
                Repr::Cubic {
                    a: coords[0].clone(),
                    b: coords[1].clone(),
                    c: coords[2].clone(),
                }
            }
            RingId::PrimeField(_) | RingId::Gf4 | RingId::Gf8 => {
                let q = ring.field_size().unwrap();
                let v = coords.first().ok_or_else(bad)?;
                let code = v.mod_floor(&BigInt::from(q));
                Repr::Fq(u8::try_from(&code).unwrap())
            }
        };
        Ok(RingElem { ring, repr })
    }

    /// Canonical coordinates (the serialization format).
    pub fn coords(&self) -> Vec<BigInt> {
        match &self.repr {
            Repr::Int(n) => vec![n.clone()],
            Repr::Loc { num, exp } => vec![num.clone(), BigInt::from(*exp)],
            Repr::Quad { a, b } => vec![a.clone(), b.clone()],
            Repr::Cubic { a, b, c } => vec![a.clone(), b.clone(), c.clone()],
            Repr::Fq(v) => vec![BigInt::from(*v)],
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Int(n) => n.is_zero(),
            Repr::Loc { num, .. } => num.is_zero(),
            Repr::Quad { a, b } => a.is_zero() && b.is_zero(),
            Repr::Cubic { a, b, c } => a.is_zero() && b.is_zero() && c.is_zero(),
            Repr::Fq(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    fn check_same_ring(&self, other: &RingElem) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.check_same_ring(other)?;
        let ring = self.ring;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Int(x), Repr::Int(y)) => Repr::Int(x + y),
            (Repr::Loc { num: m, exp: e }, Repr::Loc { num: n, exp: f }) => {
                let p = match ring {
                    RingId::LocalizedIntegers(p) => p,
                    _ => unreachable!(),
                };
                if m.is_zero() {
                    Repr::Loc { num: n.clone(), exp: *f }
                } else if n.is_zero() {
                    Repr::Loc { num: m.clone(), exp: *e }
                } else {
                    let e0 = (*e).min(*f);
                    let big_p = BigInt::from(p);
                    let s = m * big_p.pow((*e - e0) as u32) + n * big_p.pow((*f - e0) as u32);
                    normalize_loc(s, e0, p)
                }
            }
            (Repr::Quad { a, b }, Repr::Quad { a: c, b: d }) => {
                Repr::Quad { a: a + c, b: b + d }
            }
            (Repr::Cubic { a, b, c }, Repr::Cubic { a: x, b: y, c: z }) => Repr::Cubic {
                a: a + x,
                b: b + y,
                c: c + z,
            },
            (Repr::Fq(x), Repr::Fq(y)) => match ring {
                RingId::PrimeField(q) => Repr::Fq((x + y) % q),
                _ => Repr::Fq(x ^ y),
            },
            _ => unreachable!("repr mismatch within one ring"),
        };
        Ok(RingElem { ring, repr })
    }

    pub fn neg(&self) -> RingElem {
        let ring = self.ring;
        let repr = match &self.repr {
            Repr::Int(n) => Repr::Int(-n),
            Repr::Loc { num, exp } => Repr::Loc { num: -num, exp: *exp },
            Repr::Quad { a, b } => Repr::Quad { a: -a, b: -b },
            Repr::Cubic { a, b, c } => Repr::Cubic { a: -a, b: -b, c: -c },
            Repr::Fq(v) => match ring {
                RingId::PrimeField(q) => Repr::Fq((q - v) % q),
                _ => Repr::Fq(*v), // characteristic 2
            },
        };
        RingElem { ring, repr }
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check_same_ring(other)?;
        let ring = self.ring;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Int(x), Repr::Int(y)) => Repr::Int(x * y),
            (Repr::Loc { num: m, exp: e }, Repr::Loc { num: n, exp: f }) => {
                let prod = m * n;
                if prod.is_zero() {
                    Repr::Loc { num: BigInt::zero(), exp: 0 }
                } else {
                    Repr::Loc { num: prod, exp: e + f }
                }
            }
            (Repr::Quad { a, b }, Repr::Quad { a: c, b: d }) => {
                // omega^2 = omega + (D-1)/4
                let m = match ring {
                    RingId::QuadraticOrder(dd) => BigInt::from((dd - 1) / 4),
                    _ => unreachable!(),
                };
                let bd = b * d;
                Repr::Quad {
                    a: a * c + &bd * &m,
                    b: a * d + b * c + bd,
                }
            }
            (Repr::Cubic { a: a0, b: a1, c: a2 }, Repr::Cubic { a: b0, b: b1, c: b2 }) => {
                // x^3 = 1 - p x^2, x^4 = -p + x + p^2 x^2
                let p = match ring {
                    RingId::CubicOrder(p) => BigInt::from(p),
                    _ => unreachable!(),
                };
                let c0 = a0 * b0;
                let c1 = a0 * b1 + a1 * b0;
                let c2 = a0 * b2 + a1 * b1 + a2 * b0;
                let c3 = a1 * b2 + a2 * b1;
                let c4 = a2 * b2;
                Repr::Cubic {
                    a: c0 + &c3 - &p * &c4,
                    b: c1 + &c4,
                    c: c2 - &p * c3 + &p * &p * c4,
                }
            }
            (Repr::Fq(x), Repr::Fq(y)) => match ring {
                RingId::PrimeField(q) => Repr::Fq((x * y) % q),
                RingId::Gf4 => Repr::Fq(gf_mul(*x, *y, 2, GF4_REDUCER)),
                RingId::Gf8 => Repr::Fq(gf_mul(*x, *y, 3, GF8_REDUCER)),
                _ => unreachable!(),
            },
            _ => unreachable!("repr mismatch within one ring"),
        };
        Ok(RingElem { ring, repr })
    }

    /// True when the element is invertible in its ring.
    pub fn is_unit(&self) -> bool {
        match (&self.ring, &self.repr) {
            (RingId::Integers, Repr::Int(n)) => n.abs().is_one(),
            (RingId::LocalizedIntegers(_), Repr::Loc { num, .. }) => num.abs().is_one(),
            (RingId::QuadraticOrder(_), Repr::Quad { .. }) => {
                let (n, _) = super::norm_trace(self).unwrap();
                n.abs().is_one()
            }
            (RingId::CubicOrder(_), Repr::Cubic { .. }) => {
                let m = self.cubic_mul_matrix().unwrap();
                det3(&m).abs().is_one()
            }
            (_, Repr::Fq(v)) => *v != 0,
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; errors with `NotAUnit` when none exists.
    pub fn inv(&self) -> Result<RingElem> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(format!("{self}")));
        }
        let ring = self.ring;
        let repr = match (&ring, &self.repr) {
            (RingId::Integers, Repr::Int(n)) => Repr::Int(n.clone()),
            (RingId::LocalizedIntegers(_), Repr::Loc { num, exp }) => {
                Repr::Loc { num: num.clone(), exp: -exp }
            }
            (RingId::QuadraticOrder(_), Repr::Quad { a, b }) => {
                // inv = conj / N with N = +-1; conj(a + b*omega) = (a+b) - b*omega.
                let (n, _) = super::norm_trace(self).unwrap();
                Repr::Quad { a: (a + b) * &n, b: -b * &n }
            }
            (RingId::CubicOrder(_), Repr::Cubic { .. }) => {
                // Solve M * v = e1 with M the multiplication matrix; det = +-1
                // so the adjugate is the exact inverse up to sign.
                let m = self.cubic_mul_matrix()?;
                let d = det3(&m);
                let adj = adjugate3(&m);
                Repr::Cubic {
                    a: &adj[0][0] * &d,
                    b: &adj[1][0] * &d,
                    c: &adj[2][0] * &d,
                }
            }
            (_, Repr::Fq(_)) => {
                let q = ring.field_size().unwrap();
                let mut inv = 0u8;
                for w in 1..q {
                    let prod = RingElem::from_field_code(ring, w).mul(self).unwrap();
                    if prod.is_one() {
                        inv = w;
                        break;
                    }
                }
                Repr::Fq(inv)
            }
            _ => unreachable!(),
        };
        let out = RingElem { ring, repr };
        debug_assert!(out.mul(self).unwrap().is_one());
        Ok(out)
    }

    /// Matrix of multiplication by `self` on the basis (1, x, x^2) of a
    /// cubic order. Column j holds the coordinates of `self * basis_j`.
    pub(crate) fn cubic_mul_matrix(&self) -> Result<[[BigInt; 3]; 3]> {
        let ring = self.ring;
        if !matches!(ring, RingId::CubicOrder(_)) {
            return Err(Error::UnsupportedRing(ring.to_string()));
        }
        let x = RingElem::cubic(ring, 0, 1, 0);
        let mut cols: Vec<[BigInt; 3]> = Vec::with_capacity(3);
        let mut basis = self.ring.one();
        for _ in 0..3 {
            let prod = self.mul(&basis)?;
            if let Repr::Cubic { a, b, c } = &prod.repr {
                cols.push([a.clone(), b.clone(), c.clone()]);
            }
            basis = basis.mul(&x)?;
        }
        Ok([
            [cols[0][0].clone(), cols[1][0].clone(), cols[2][0].clone()],
            [cols[0][1].clone(), cols[1][1].clone(), cols[2][1].clone()],
            [cols[0][2].clone(), cols[1][2].clone(), cols[2][2].clone()],
        ])
    }
}

fn adjugate3(m: &[[BigInt; 3]; 3]) -> [[BigInt; 3]; 3] {
    let c = |i: usize, j: usize| -> BigInt {
        let (r0, r1) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (c0, c1) = match j {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let minor = &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0];
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    // adj = cofactor matrix transposed
    [
        [c(0, 0), c(1, 0), c(2, 0)],
        [c(0, 1), c(1, 1), c(2, 1)],
        [c(0, 2), c(1, 2), c(2, 2)],
    ]
}

fn normalize_loc(mut num: BigInt, mut exp: i64, p: u32) -> Repr {
    if num.is_zero() {
        return Repr::Loc { num, exp: 0 };
    }
    let big_p = BigInt::from(p);
    loop {
        let (q, r) = num.div_rem(&big_p);
        if r.is_zero() {
            num = q;
            exp += 1;
        } else {
            break;
        }
    }
    Repr::Loc { num, exp }
}

impl std::fmt::Display for RingElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (&self.ring, &self.repr) {
            (_, Repr::Int(n)) => write!(f, "{n}"),
            (RingId::LocalizedIntegers(p), Repr::Loc { num, exp }) => {
                if *exp == 0 {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}*{p}^{exp}")
                }
            }
            (_, Repr::Quad { a, b }) => write!(f, "{a}+{b}w"),
            (_, Repr::Cubic { a, b, c }) => write!(f, "{a}+{b}x+{c}x^2"),
            (RingId::PrimeField(_), Repr::Fq(v)) => write!(f, "{v}"),
            (_, Repr::Fq(v)) => write!(f, "poly:{v:#05b}"),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_squared_in_o5() {
        let o5 = RingId::QuadraticOrder(5);
        let w = RingElem::quad(o5, 0, 1);
        let w2 = w.mul(&w).unwrap();
        assert_eq!(w2, RingElem::quad(o5, 1, 1)); // omega^2 = 1 + omega
    }

    #[test]
    fn eisenstein_unit() {
        let r = RingId::QuadraticOrder(-3);
        let w = RingElem::quad(r, 0, 1);
        assert!(w.is_unit());
        let w2 = w.mul(&w).unwrap();
        assert_eq!(w2, RingElem::quad(r, -1, 1)); // omega^2 = omega - 1
        let inv = w.inv().unwrap();
        assert!(inv.mul(&w).unwrap().is_one());
    }

    #[test]
    fn cubic_unit_identity() {
        // x_p^2 (x_p + p) = 1 for every supported p.
        for p in [3u32, 5, 7, 11] {
            let ring = RingId::CubicOrder(p);
            let x = RingElem::cubic(ring, 0, 1, 0);
            let lhs = x
                .mul(&x)
                .unwrap()
                .mul(&x.add(&RingElem::from_i64(ring, p as i64)).unwrap())
                .unwrap();
            assert!(lhs.is_one(), "p={p}");
            // inv(x_p) = x_p^2 + p x_p
            assert_eq!(x.inv().unwrap(), RingElem::cubic(ring, 0, p as i64, 1));
        }
    }

    #[test]
    fn localized_normalization() {
        let r = RingId::LocalizedIntegers(5);
        let x = RingElem::localized(r, 75, 0); // 75 = 3 * 5^2
        assert_eq!(x.repr(), &Repr::Loc { num: BigInt::from(3), exp: 2 });
        let y = RingElem::localized(r, 1, -2); // 1/25
        let s = x.add(&y).unwrap();
        // 3*5^2 + 5^{-2} = (3*5^4 + 1)/5^2 = 1876/25
        assert_eq!(s.repr(), &Repr::Loc { num: BigInt::from(1876), exp: -2 });
        assert!(RingElem::localized(r, -5, 0).is_unit());
        assert!(!RingElem::localized(r, 3, 0).is_unit());
    }

    #[test]
    fn gf8_relation() {
        // t^3 = t^2 + 1 in GF(8) with reducer t^3+t^2+1.
        let t = RingElem::from_field_code(RingId::Gf8, 0b010);
        let t3 = t.mul(&t).unwrap().mul(&t).unwrap();
        assert_eq!(t3.field_code().unwrap(), 0b101);
        // field axioms spot check: every nonzero element invertible
        for v in 1..8u8 {
            let e = RingElem::from_field_code(RingId::Gf8, v);
            assert!(e.inv().unwrap().mul(&e).unwrap().is_one());
        }
    }

    #[test]
    fn gf4_relation() {
        let t = RingElem::from_field_code(RingId::Gf4, 0b10);
        let t2 = t.mul(&t).unwrap();
        assert_eq!(t2.field_code().unwrap(), 0b11); // t^2 = t + 1
    }

    #[test]
    fn norm_trace_examples() {
        let o5 = RingId::QuadraticOrder(5);
        let w = RingElem::quad(o5, 0, 1);
        let (n, t) = super::super::norm_trace(&w).unwrap();
        assert_eq!((n, t), (BigInt::from(-1), BigInt::from(1)));

        let zero = o5.zero();
        let (n, t) = super::super::norm_trace(&zero).unwrap();
        assert_eq!((n, t), (BigInt::zero(), BigInt::zero()));

        // 6 + sqrt(37) = 5 + 2*omega in O(37)
        let o37 = RingId::QuadraticOrder(37);
        let u = RingElem::quad(o37, 5, 2);
        let (n, t) = super::super::norm_trace(&u).unwrap();
        assert_eq!((n, t), (BigInt::from(-1), BigInt::from(12)));
    }
}
