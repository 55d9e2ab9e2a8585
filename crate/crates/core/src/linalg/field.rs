use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{arg_err, Error, Result};

/// The default modular prime.
pub const DEFAULT_PRIME: u64 = 1_000_003;

/// Identifies the scalar field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    /// Accepts `q` or `p:<prime>`.
    fn from_str(s: &str) -> Result<FieldTag> {
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldTag::Rationals);
        }
        if let Some(p) = s.strip_prefix("p:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Argument(format!("bad prime `{p}`")))?;
            PrimeField::new(p)?;
            return Ok(FieldTag::Prime(p));
        }
        arg_err(format!("unknown field `{s}`, expected `q` or `p:<prime>`"))
    }
}

/// Exact scalar arithmetic used by the sparse routines.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    /// A rational representative: the value itself over Q, the symmetric
    /// residue over F_p.
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every field")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// The prime field F_p for a prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if p >= 1 << 32 {
            return arg_err(format!("prime {p} must be below 2^32"));
        }
        if !is_prime(p) {
            return arg_err(format!("{p} is not prime"));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let den = self.reduce_int(q.denom());
        if den == 0 {
            return arg_err(format!("denominator of {q} vanishes modulo {}", self.p));
        }
        Ok(self.mul(&self.reduce_int(q.numer()), &self.inv(&den)))
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        let v = if *a > self.p / 2 {
            BigInt::from(*a) - BigInt::from(self.p)
        } else {
            BigInt::from(*a)
        };
        BigRational::from_integer(v)
    }
}

/// Runs a generic computation under the field named by a tag.
#[macro_export]
macro_rules! with_field {
    ($tag:expr, |$f:ident| $body:expr) => {
        match $tag {
            $crate::linalg::FieldTag::Rationals => {
                let $f = $crate::linalg::Rationals;
                $body
            }
            $crate::linalg::FieldTag::Prime(p) => {
                let $f = $crate::linalg::PrimeField::new(p)?;
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&f.inv(&3), &3), 1);
        assert_eq!(f.sub(&2, &5), 4);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half).unwrap(), 4);
        assert_eq!(
            f.to_rational(&6),
            BigRational::from_integer(BigInt::from(-1))
        );
        assert!(f
            .from_rational(&BigRational::new(1.into(), 7.into()))
            .is_err());
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn tags_parse() {
        assert_eq!("q".parse::<FieldTag>().unwrap(), FieldTag::Rationals);
        assert_eq!("p:5".parse::<FieldTag>().unwrap(), FieldTag::Prime(5));
        assert!("p:6".parse::<FieldTag>().is_err());
        assert!("r".parse::<FieldTag>().is_err());
        assert_eq!(FieldTag::Prime(DEFAULT_PRIME).to_string(), "F_1000003");
    }
}
