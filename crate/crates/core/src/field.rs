//! Exact field arithmetic: prime fields F_p and the rationals.
//!
//! The field is a context object; elements are plain values (machine
//! residues for [`PrimeField`], reduced fractions for [`Rationals`]) and
//! every operation goes through the field that owns them. Results are
//! always canonical — residues lie in `[0, p)` and fractions are fully
//! reduced with positive denominator — so element equality is structural
//! equality.

use std::fmt;
use std::hash::Hash;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;

use crate::error::AlgebraError;

/// Exact arithmetic context for one field.
pub trait Field: Clone + Eq + Hash + fmt::Debug + 'static {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, value: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, AlgebraError>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, AlgebraError>;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;

    /// Field characteristic; 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// All elements in a fixed order when the field is finite, else `None`.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Cost of realising `t^a` by repeating a witness word for `t`:
    /// `min(a, p - a)` over `F_p` (the shorter of `t^a` and `(t^-1)^(p-a)`),
    /// and 1 over the rationals, where powers come from a whole
    /// transvection group present in the generating set.
    fn repeat_cost(&self, a: &Self::Elem) -> u64;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgebraError>;
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field F_p with elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        // Products go through u128, so any prime below 2^63 is safe; real
        // use stays far smaller.
        debug_assert!(p < (1 << 63));
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u64 {
        let p = self.p as i128;
        (((v % p) + p) % p) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, value: i64) -> u64 {
        self.reduce_i128(value as i128)
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
            self.p - (b - a)
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Result<u64, AlgebraError> {
        if *a == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        // Extended Euclid on (a, p).
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_i128(s0))
    }

    fn div(&self, a: &u64, b: &u64) -> Result<u64, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.p
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }

    fn repeat_cost(&self, a: &u64) -> u64 {
        (*a).min(self.p - a)
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u64, AlgebraError> {
        let v: i128 = s
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("bad residue: {s:?}")))?;
        Ok(self.reduce_i128(v))
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// The field of rational numbers, backed by arbitrary-precision fractions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl fmt::Debug for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q")
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, value: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(value))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, AlgebraError> {
        if a.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn div(&self, a: &BigRational, b: &BigRational) -> Result<BigRational, AlgebraError> {
        if b.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(a / b)
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn repeat_cost(&self, a: &BigRational) -> u64 {
        if a.is_zero() {
            0
        } else {
            1
        }
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational, AlgebraError> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(format!("bad rational: {s:?}"));
        match s.split_once('/') {
            Some((num, den)) => {
                let n: BigInt = num.trim().parse().map_err(|_| bad())?;
                let d: BigInt = den.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(AlgebraError::DivisionByZero);
                }
                Ok(BigRational::new(n, d))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(BigRational::from_integer(n))
            }
        }
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let numer = rng.gen_range(-4i64..=4);
        let denom = rng.gen_range(1i64..=3);
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
}

/// Exact result of `a / b` where both are field elements; convenience for
/// call sites that have already checked `b != 0`.
pub fn ratio<F: Field>(field: &F, a: &F::Elem, b: &F::Elem) -> F::Elem {
    field.div(a, b).expect("ratio: division by zero")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7919).is_ok());
    }

    #[test]
    fn f5_division() {
        let f = PrimeField::new(5).unwrap();
        // 2 / 3 = 4 since 3 * 4 = 12 = 2 (mod 5)
        assert_eq!(f.div(&2, &3).unwrap(), 4);
        assert_eq!(f.div(&2, &2).unwrap(), 1);
        assert_eq!(f.div(&1, &0), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn rational_sum() {
        let q = Rationals;
        let half = q.parse_elem("1/2").unwrap();
        let third = q.parse_elem("1/3").unwrap();
        let sum = q.add(&half, &third);
        assert_eq!(q.format_elem(&sum), "5/6");
    }

    #[test]
    fn repeat_costs() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.repeat_cost(&0), 0);
        assert_eq!(f.repeat_cost(&1), 1);
        assert_eq!(f.repeat_cost(&3), 3);
        assert_eq!(f.repeat_cost(&4), 3);
        assert_eq!(f.repeat_cost(&6), 1);
        let q = Rationals;
        assert_eq!(q.repeat_cost(&q.from_i64(17)), 1);
        assert_eq!(q.repeat_cost(&q.zero()), 0);
    }
}
