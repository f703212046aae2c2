//! Exact coefficient arithmetic over prime fields `F_p` and the rationals.
//!
//! Prime-field elements are machine integers in `[0, p)` with `p < 2^31`;
//! products go through `u64` so they never overflow. Rationals are arbitrary
//! precision and always stored reduced with positive denominator (that is
//! what `num_rational::BigRational` guarantees).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// The base field of a polynomial ring: `F_p` for a prime `p < 2^31`, or `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoeffField {
    Prime(u32),
    Rationals,
}

/// One field element. The variant must agree with the owning [`CoeffField`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coeff {
    Fp(u32),
    Rat(BigRational),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl CoeffField {
    /// A prime field, checked at construction.
    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::InvalidInput(format!("prime {p} must be < 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(CoeffField::Prime(p))
    }

    pub fn rationals() -> Self {
        CoeffField::Rationals
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            CoeffField::Prime(p) => *p,
            CoeffField::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoeffField::Prime(_) => Coeff::Fp(0),
            CoeffField::Rationals => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoeffField::Prime(_) => Coeff::Fp(1),
            CoeffField::Rationals => Coeff::Rat(BigRational::one()),
        }
    }

    /// The image of a signed integer in this field.
    pub fn from_int(&self, n: i64) -> Coeff {
        match self {
            CoeffField::Prime(p) => {
                let p = *p as i64;
                Coeff::Fp(n.rem_euclid(p) as u32)
            }
            CoeffField::Rationals => Coeff::Rat(BigRational::from(BigInt::from(n))),
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Fp(x) => *x == 0,
            Coeff::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Fp(x) => *x == 1,
            Coeff::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoeffField::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (CoeffField::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => unreachable!("coefficient/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (CoeffField::Prime(p), Coeff::Fp(x)) => {
                Coeff::Fp(if *x == 0 { 0 } else { p - x })
            }
            (CoeffField::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            _ => unreachable!("coefficient/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoeffField::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (CoeffField::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => unreachable!("coefficient/field mismatch"),
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (CoeffField::Prime(p), Coeff::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                // Fermat: x^(p-2) mod p.
                let mut result = 1u64;
                let mut base = *x as u64;
                let mut e = *p as u64 - 2;
                let m = *p as u64;
                while e > 0 {
                    if e & 1 == 1 {
                        result = result * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Coeff::Fp(result as u32)
            }
            (CoeffField::Rationals, Coeff::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coeff::Rat(x.recip())
            }
            _ => unreachable!("coefficient/field mismatch"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// Scalar `n·a` for small integer `n`. Used by formal derivatives.
    pub fn mul_int(&self, a: &Coeff, n: i64) -> Coeff {
        self.mul(a, &self.from_int(n))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Fp(x) => write!(f, "{x}"),
            Coeff::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Coeff {
    /// True for rationals strictly below zero; `F_p` residues count as non-negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Fp(_) => false,
            Coeff::Rat(r) => r.is_negative(),
        }
    }

    /// Absolute value (identity on `F_p` residues).
    pub fn abs(&self) -> Coeff {
        match self {
            Coeff::Fp(x) => Coeff::Fp(*x),
            Coeff::Rat(r) => Coeff::Rat(r.abs()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_checked() {
        assert!(CoeffField::prime(2).is_ok());
        assert!(CoeffField::prime(7).is_ok());
        assert!(CoeffField::prime(2147483647).is_ok()); // 2^31 - 1 is prime
        assert!(CoeffField::prime(4).is_err());
        assert!(CoeffField::prime(1).is_err());
        assert!(CoeffField::prime(0).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = CoeffField::prime(5).unwrap();
        let a = f.from_int(3);
        let b = f.from_int(4);
        assert_eq!(f.add(&a, &b), Coeff::Fp(2));
        assert_eq!(f.mul(&a, &b), Coeff::Fp(2));
        assert_eq!(f.neg(&a), Coeff::Fp(2));
        assert_eq!(f.mul(&a, &f.inv(&a)), Coeff::Fp(1));
        assert_eq!(f.from_int(-1), Coeff::Fp(4));
    }

    #[test]
    fn fp_large_prime_no_overflow() {
        let f = CoeffField::prime(2147483647).unwrap();
        let a = f.from_int(2147483646);
        let sq = f.mul(&a, &a); // (-1)^2 = 1
        assert_eq!(sq, Coeff::Fp(1));
    }

    #[test]
    fn rational_arithmetic_reduced() {
        let f = CoeffField::rationals();
        let half = f.div(&f.from_int(1), &f.from_int(2));
        let third = f.div(&f.from_int(1), &f.from_int(3));
        let sum = f.add(&half, &third);
        assert_eq!(sum.to_string(), "5/6");
        let neg = f.sub(&f.from_int(0), &half);
        assert_eq!(neg.to_string(), "-1/2");
    }
}
