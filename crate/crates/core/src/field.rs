//! Coefficient fields.
//!
//! Every algebraic routine in the crate is generic over [`Field`]. Two
//! families of implementations are provided: prime fields [`Fp`] with the
//! modulus fixed at compile time, and the rationals (`BigRational`).
//! Runtime selection of a field (for example from a `--prime` flag) goes
//! through [`dispatch`].

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Runtime description of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    ExactRational,
    PrimeField(u32),
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::ExactRational => write!(f, "QQ"),
            CoefficientField::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

/// Primes for which an [`Fp`] instantiation is compiled in.
pub const SUPPORTED_PRIMES: [u32; 7] = [41, 101, 32003, 65521, 65537, 1000003, 2147483647];

/// Default prime for modular computations.
pub const DEFAULT_PRIME: u32 = 32003;

pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn descriptor() -> CoefficientField;

    /// 0 for the rationals.
    fn characteristic() -> u64;

    fn from_i64(v: i64) -> Self;

    /// `None` when the denominator vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    fn try_inv(&self) -> Option<Self>;

    /// A random element used for genericity draws. Rationals are drawn as
    /// integers from a bounded symmetric range.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Sign and magnitude used by the polynomial printer. Prime field
    /// elements are shown through their symmetric representative.
    fn signed_parts(&self) -> (bool, String);

    /// Integer value of the element, when it has one of moderate size.
    fn to_i64(&self) -> Option<i64>;

    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }

    fn is_unit_one(&self) -> bool {
        self.is_one()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Element of the prime field with `P` elements. `P` must be an odd prime
/// below 2^31.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub const MODULUS: u32 = P;

    pub const fn new(v: u32) -> Self {
        Fp(v % P)
    }

    pub const fn value(self) -> u32 {
        self.0
    }

    fn from_i128(v: i128) -> Self {
        Fp(v.rem_euclid(P as i128) as u32)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u32().expect("reduced residue fits"))
    }

    /// Symmetric representative in (-P/2, P/2].
    pub fn symmetric(self) -> i64 {
        let v = self.0 as i64;
        if v > (P as i64) / 2 {
            v - P as i64
        } else {
            v
        }
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(self.0 + P - rhs.0)
        }
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u32> AddAssign for Fp<P> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u32> SubAssign for Fp<P> {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u32> MulAssign for Fp<P> {
    #[inline]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn descriptor() -> CoefficientField {
        CoefficientField::PrimeField(P)
    }

    fn characteristic() -> u64 {
        P as u64
    }

    fn from_i64(v: i64) -> Self {
        Self::from_i128(v as i128)
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let d = Self::from_bigint(den);
        if d.is_zero() {
            return None;
        }
        Some(Self::from_bigint(num) * d.inv())
    }

    fn try_inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // extended Euclid on (a, P)
        let (mut r0, mut r1) = (P as i64, self.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus {P} is not prime");
        Some(Fp(t0.rem_euclid(P as i64) as u32))
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn signed_parts(&self) -> (bool, String) {
        let s = self.symmetric();
        (s < 0, s.unsigned_abs().to_string())
    }

    fn to_i64(&self) -> Option<i64> {
        Some(self.symmetric())
    }
}

/// Bound of the integer range used for random rational draws.
pub const RATIONAL_DRAW_BOUND: i64 = 1000;

impl Field for BigRational {
    fn descriptor() -> CoefficientField {
        CoefficientField::ExactRational
    }

    fn characteristic() -> u64 {
        0
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num.clone(), den.clone()))
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_i64(rng.gen_range(-RATIONAL_DRAW_BOUND..=RATIONAL_DRAW_BOUND))
    }

    fn signed_parts(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }

    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }
}

/// A computation that can be run over any coefficient field.
pub trait FieldTask {
    type Output;
    fn run<C: Field>(self) -> Self::Output;
}

/// Runs `task` over the field described by `field`.
pub fn dispatch<T: FieldTask>(field: CoefficientField, task: T) -> Result<T::Output> {
    match field {
        CoefficientField::ExactRational => Ok(task.run::<BigRational>()),
        CoefficientField::PrimeField(p) => match p {
            41 => Ok(task.run::<Fp<41>>()),
            101 => Ok(task.run::<Fp<101>>()),
            32003 => Ok(task.run::<Fp<32003>>()),
            65521 => Ok(task.run::<Fp<65521>>()),
            65537 => Ok(task.run::<Fp<65537>>()),
            1000003 => Ok(task.run::<Fp<1000003>>()),
            2147483647 => Ok(task.run::<Fp<2147483647>>()),
            _ => Err(Error::UnsupportedPrime(p)),
        },
    }
}
