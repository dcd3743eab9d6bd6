use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain_err, Error, Result};

/// Scalars are arbitrary-precision rationals. Over `F_p` only the canonical
/// representatives `0..p` are ever stored.
pub type Scalar = BigRational;

/// The ground field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            domain_err(format!("{p} is not a prime"))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(n)))
    }

    /// `num / den` in this field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let den = self.int(den);
        if den.is_zero() {
            return domain_err("zero denominator");
        }
        Ok(self.mul(&self.int(num), &self.inv(&den)?))
    }

    fn modulus(p: u64, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0)
    }

    fn pow_mod(mut b: u128, mut e: u64, p: u128) -> u128 {
        let mut acc = 1u128;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    /// Maps an arbitrary rational into the field's canonical form.
    pub fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            Field::Rationals => x,
            Field::Prime(p) => {
                let n = Self::modulus(*p, x.numer()) as u128;
                let d = Self::modulus(*p, x.denom()) as u128;
                let dinv = Self::pow_mod(d, p - 2, *p as u128);
                Scalar::from_integer(BigInt::from(n * dinv % *p as u128))
            }
        }
    }

    fn small(&self, x: &Scalar) -> u128 {
        x.numer().to_u64().unwrap_or(0) as u128
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(p) => {
                let s = (self.small(a) + self.small(b)) % *p as u128;
                Scalar::from_integer(BigInt::from(s))
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(p) => {
                let v = self.small(a);
                let r = if v == 0 { 0 } else { *p as u128 - v };
                Scalar::from_integer(BigInt::from(r))
            }
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(p) => {
                let s = self.small(a) * self.small(b) % *p as u128;
                Scalar::from_integer(BigInt::from(s))
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::Singular("division by zero".into()));
        }
        Ok(match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => Scalar::from_integer(BigInt::from(Self::pow_mod(
                self.small(a),
                p - 2,
                *p as u128,
            ))),
        })
    }

    /// Whether `x` is already in canonical form for this field.
    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            Field::Rationals => true,
            Field::Prime(p) => {
                x.is_integer() && !x.is_negative() && x.numer() < &BigInt::from(*p)
            }
        }
    }

    /// Parses `"a"`, `"-a"` or `"a/b"` and reduces into the field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Domain(format!("malformed scalar {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rationals => Ok(Scalar::new(n, d)),
            Field::Prime(p) => {
                if Self::modulus(*p, &d) == 0 {
                    return Err(bad());
                }
                Ok(self.reduce(Scalar::new_raw(n, d)))
            }
        }
    }

    pub fn format_scalar(&self, x: &Scalar) -> String {
        if x.is_integer() {
            x.numer().to_string()
        } else {
            format!("{}/{}", x.numer(), x.denom())
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        match s.strip_prefix("Fp:").or_else(|| s.strip_prefix("F")) {
            Some(p) => Field::prime(
                p.parse()
                    .map_err(|_| Error::Domain(format!("bad field {s:?}")))?,
            ),
            None => domain_err(format!("unknown field {s:?}; expected Q or Fp:<p>")),
        }
    }
}
