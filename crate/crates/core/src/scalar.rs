//! Scalar abstraction shared by every numeric routine.
//!
//! Exact work runs over [`Rational`]; the dense eigen-solver oracles and the
//! randomized moment checks run over `f64`. Routines that have an exact-only
//! fast path consult [`Scalar::EXACT`] and [`Scalar::to_rational`].

use std::fmt;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, Zero};

/// Exact rational scalar used throughout the toolkit.
pub type Rational = Ratio<i128>;

pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// True when arithmetic is exact (equality tests are meaningful).
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_u128(v: u128) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Exact value, when the scalar type can represent one.
    fn to_rational(&self) -> Option<Rational>;
    fn to_f64(&self) -> f64;

    fn magnitude(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Zero test used by elimination: exact for rationals, tolerance-based for floats.
    fn is_negligible(&self) -> bool;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }

    fn from_u128(v: u128) -> Self {
        Ratio::from_integer(i128::try_from(v).expect("integer exceeds i128 range"))
    }

    fn from_rational(r: &Rational) -> Self {
        *r
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(*self)
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn from_u128(v: u128) -> Self {
                v as $t
            }

            fn from_rational(r: &Rational) -> Self {
                (*r.numer() as f64 / *r.denom() as f64) as $t
            }

            fn to_rational(&self) -> Option<Rational> {
                None
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn is_negligible(&self) -> bool {
                self.abs() < 1e-9
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// Builds `num/den` as an exact rational.
pub fn ratio(num: i128, den: i128) -> Rational {
    Ratio::new(num, den)
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt(*r.numer())?;
    let d = integer_sqrt(*r.denom())?;
    Some(Ratio::new(n, d))
}

fn integer_sqrt(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    let mut x = (v as f64).sqrt() as i128;
    while x > 0 && x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    (x * x == v).then_some(x)
}

/// Nearest integer to `c`, rounding up at half-integers.
pub fn round_half_up(c: &Rational) -> i128 {
    (c + Ratio::new(1, 2)).floor().to_integer()
}

/// `[numerator, denominator]`, the wire form used by every JSON report.
pub fn rational_pair(r: &Rational) -> [i128; 2] {
    [*r.numer(), *r.denom()]
}

/// `p/q` text form (integers print without a denominator).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators, used to clear fractions.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<i128> {
    let mut d: i128 = 1;
    for v in values {
        let g = d.gcd(v.denom());
        d = (d / g).checked_mul(*v.denom())?;
    }
    Some(d)
}
