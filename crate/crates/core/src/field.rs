//! Exact scalar fields.
//!
//! Everything in the Hom/Ext machinery is generic over [`Field`]. Two
//! families are provided: prime fields [`Fp`] with the modulus fixed at
//! compile time, and arbitrary-precision rationals ([`Rational`]).

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

/// An exact commutative field.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Image of an integer under the canonical ring map.
    fn from_i64(v: i64) -> Self;

    /// 0 for the rationals.
    fn characteristic() -> u64;

    /// Number of elements, `None` when infinite.
    fn order() -> Option<u64>;

    /// All elements in a fixed canonical order (0 first, then 1, ...), finite
    /// fields only.
    fn elements() -> Option<Vec<Self>>;

    /// Uniform element for finite fields; an integer in `[-bound, bound]`
    /// otherwise.
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Self;

    /// Parse the decimal rendering produced by `Display`.
    fn parse_exact(s: &str) -> Option<Self>;

    /// Short human-readable field name, e.g. `F2` or `Q`.
    fn name() -> String;
}

/// The prime field `Z/PZ`. `P` must be prime; this is checked when the first
/// value is constructed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

const fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u32> Fp<P> {
    const CHECK: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(v: u32) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(v % P)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u64 + rhs.0 as u64;
        Fp((s % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        let s = self.0 as u64 + P as u64 - rhs.0 as u64;
        Fp((s % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
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

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in Fp")
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
        Self::new(1)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }

    fn from_i64(v: i64) -> Self {
        Self::new(v.rem_euclid(P as i64) as u32)
    }

    fn characteristic() -> u64 {
        P as u64
    }

    fn order() -> Option<u64> {
        Some(P as u64)
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Self::new).collect())
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, _bound: u64) -> Self {
        Self::new(rng.gen_range(0..P))
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let v: i64 = s.trim().parse().ok()?;
        Some(Self::from_i64(v))
    }

    fn name() -> String {
        format!("F{P}")
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn characteristic() -> u64 {
        0
    }

    fn order() -> Option<u64> {
        None
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Self {
        let b = bound.max(1) as i64;
        Self::from_i64(rng.gen_range(-b..=b))
    }

    fn parse_exact(s: &str) -> Option<Self> {
        BigRational::from_str(s.trim()).ok()
    }

    fn name() -> String {
        "Q".to_string()
    }
}

/// Lossy conversion of a rational to `f64`, used only for reporting.
pub fn rational_to_f64(q: &Rational) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // huge numerator/denominator: scale both down first
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift as usize).to_f64().unwrap_or(0.0);
        let d = (q.denom() >> shift as usize).to_f64().unwrap_or(1.0);
        if q.is_negative() && n > 0.0 {
            -n / d
        } else {
            n / d
        }
    }
}
