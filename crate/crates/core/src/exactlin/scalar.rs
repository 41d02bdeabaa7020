use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The base field of a computation session.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Option<Field> {
        if is_prime(p) && p < (1 << 32) {
            Some(Field::Prime(p))
        } else {
            None
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod {
                value: reduce_i128(v as i128, p),
                prime: p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v % BigInt::from(p);
                let r = if r.is_negative() {
                    r + BigInt::from(p)
                } else {
                    r
                };
                Scalar::Mod {
                    value: r.to_u64().unwrap_or(0),
                    prime: p,
                }
            }
        }
    }

    /// `num / den`; `None` when the denominator vanishes in this field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        if den.is_zero() {
            return None;
        }
        match self {
            Field::Rational => Some(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                d.inv().map(|di| &self.from_bigint(num) * &di)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_i128(v: i128, p: u64) -> u64 {
    let p = p as i128;
    (((v % p) + p) % p) as u64
}

/// An element of the session field: a normalized rational or a residue mod `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, prime: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, prime } => Scalar::Mod {
                value: pow_mod(*value, prime - 2, *prime),
                prime: *prime,
            },
        })
    }

    /// Integer power; negative exponents need an invertible base.
    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field().one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// True when the value is (the image of) a negative rational, used for sign-aware printing.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalars from different fields were combined"
        );
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, prime }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *prime as u128) as u64,
                prime: *prime,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, prime }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *prime as u128 - *b as u128) % *prime as u128) as u64,
                prime: *prime,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, prime }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: mul_mod(*a, *b, *prime),
                prime: *prime,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, prime } => Scalar::Mod {
                value: (prime - value) % prime,
                prime: *prime,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_normalized() {
        let q = Field::Rational;
        let a = q.from_ratio(&BigInt::from(2), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-1/2");
        let b = &a + &q.from_i64(1);
        assert_eq!(b.to_string(), "1/2");
        assert!((&b - &b).is_zero());
    }

    #[test]
    fn residues_in_range() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::Mod { value: 6, prime: 7 });
        let inv3 = f.from_i64(3).inv().unwrap();
        assert!((&inv3 * &f.from_i64(3)).is_one());
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(7)), None);
        assert_eq!(f.from_i64(2).pow(-1).unwrap(), f.from_i64(4));
    }

    #[test]
    fn prime_detection() {
        assert!(Field::prime(11).is_some());
        assert!(Field::prime(9).is_none());
        assert!(Field::prime(1).is_none());
    }
}
