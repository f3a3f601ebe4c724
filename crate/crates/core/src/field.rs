//! Coefficient fields for cohomology: arbitrary-precision rationals and F2.

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Which coefficient field a ring is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Rational,
    ModTwo,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Rational => write!(f, "Q"),
            Coefficients::ModTwo => write!(f, "F2"),
        }
    }
}

/// Exact field arithmetic, as needed by the graded-ring machinery.
///
/// Only the two fields below implement this; the trait exists so the ring,
/// Künneth and catalog code can be written once.  `negate` is the identity
/// over F2, which is exactly what makes the sign bookkeeping uniform.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    const COEFFICIENTS: Coefficients;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_integer(n: i64) -> Self;

    /// Apply a Koszul sign: negate iff `negative`.
    fn signed(self, negative: bool) -> Self {
        if negative {
            self.negate()
        } else {
            self
        }
    }

    /// Used only to pretty-print sums; fields without an order keep `false`.
    fn is_negative(&self) -> bool {
        false
    }
}

/// Exact rational scalar.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Best-effort float view of a rational, for report rendering only.
pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// True iff `x` is an integer, returning it when it fits in `i64`.
pub fn rat_as_i64(x: &Rat) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

impl Field for Rat {
    const COEFFICIENTS: Coefficients = Coefficients::Rational;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn negate(&self) -> Self {
        -self
    }

    fn from_integer(n: i64) -> Self {
        rat(n)
    }

    fn is_negative(&self) -> bool {
        <BigRational as Signed>::is_negative(self)
    }
}

/// The field with two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct F2(pub bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.0 { "1" } else { "0" })
    }
}

impl Field for F2 {
    const COEFFICIENTS: Coefficients = Coefficients::ModTwo;

    fn zero() -> Self {
        F2(false)
    }

    fn one() -> Self {
        F2(true)
    }

    fn is_zero(&self) -> bool {
        !self.0
    }

    fn add(&self, other: &Self) -> Self {
        F2(self.0 ^ other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        F2(self.0 ^ other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        F2(self.0 & other.0)
    }

    fn negate(&self) -> Self {
        *self
    }

    fn from_integer(n: i64) -> Self {
        F2(n.rem_euclid(2) == 1)
    }
}

/// Render a field element for display, with `1` elided in front of labels.
pub fn coeff_prefix<F: Field>(c: &F) -> Option<String> {
    if *c == F::one() {
        None
    } else {
        Some(c.to_string())
    }
}
