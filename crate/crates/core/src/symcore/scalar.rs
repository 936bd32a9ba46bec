//! Exact rational scalars.
//!
//! Values that fit in a reduced `i64/i64` fraction stay on the stack; anything
//! larger is promoted to a heap `BigRational`. Both forms are kept canonical so
//! that equality and ordering are structural.

use alloc::boxed::Box;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone)]
pub enum Scalar {
    /// Reduced fraction, denominator positive.
    Small(i64, i64),
    /// Reduced fraction that does not fit `Small`.
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Scalar {
    pub const ZERO: Scalar = Scalar::Small(0, 1);
    pub const ONE: Scalar = Scalar::Small(1, 1);

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::ONE
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Small(n, 1)
    }

    /// `num/den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        if num == 0 {
            return Self::ZERO;
        }
        let neg = (num < 0) != (den < 0);
        let (un, ud) = (num.unsigned_abs(), den.unsigned_abs());
        let g = gcd_u128(un, ud);
        let (un, ud) = (un / g, ud / g);
        if un <= i64::MAX as u128 && ud <= i64::MAX as u128 {
            let n = un as i64;
            Scalar::Small(if neg { -n } else { n }, ud as i64)
        } else {
            let n = BigInt::from(un);
            let n = if neg { -n } else { n };
            Scalar::Big(Box::new(BigRational::new_raw(n, BigInt::from(ud))))
        }
    }

    fn from_big(r: BigRational) -> Self {
        // `r` is assumed reduced with positive denominator.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Scalar::Small(n, d)
        } else {
            Scalar::Big(Box::new(r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Scalar::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Small(_, d) => *d == 1,
            Scalar::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Small(n, _) => *n < 0,
            Scalar::Big(b) => b.is_negative(),
        }
    }

    /// The value as an `i64` if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Scalar::Small(n, _) => BigInt::from(*n),
            Scalar::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Scalar::Small(_, d) => BigInt::from(*d),
            Scalar::Big(b) => b.denom().clone(),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match self {
            Scalar::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Scalar::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::ONE;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Generalized binomial coefficient `top (top-1) ... (top-k+1) / k!`.
    pub fn binomial(top: i64, k: u32) -> Self {
        let mut acc = Self::ONE;
        for i in 0..k as i64 {
            acc = &(&acc * &Self::from_int(top - i)) / &Self::from_int(i + 1);
        }
        acc
    }

    /// Falling factorial `top (top-1) ... (top-k+1)`.
    pub fn falling(top: i64, k: u32) -> Self {
        let mut acc = Self::ONE;
        for i in 0..k as i64 {
            acc = &acc * &Self::from_int(top - i);
        }
        acc
    }

    pub fn factorial(k: u32) -> Self {
        Self::falling(k as i64, k)
    }

    pub fn to_plain_string(&self) -> String {
        alloc::format!("{}", self)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => a == c && b == d,
            (Scalar::Big(a), Scalar::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Small(a, b), Scalar::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl core::hash::Hash for Scalar {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Scalar::Big(b) => b.hash(state),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_int(n as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        let r = BigRational::new(r.numer().clone(), r.denom().clone());
        Scalar::from_big(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Small(a, b), Scalar::Small(c, d)) = (self, rhs) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Scalar::Small(s, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let Some(n) = x.checked_add(y) {
                    return Scalar::from_i128(n, b * d);
                }
            }
        }
        Scalar::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Small(a, b), Scalar::Small(c, d)) = (self, rhs) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Scalar::Small(p, 1);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(n), Some(m)) = (a.checked_mul(c), b.checked_mul(d)) {
                return Scalar::from_i128(n, m);
            }
        }
        Scalar::from_big(self.to_big() * rhs.to_big())
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Small(n, d) => match n.checked_neg() {
                Some(m) => Scalar::Small(m, *d),
                None => Scalar::from_big(-self.to_big()),
            },
            Scalar::Big(b) => Scalar::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
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
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(n, 1) => write!(f, "{}", n),
            Scalar::Small(n, d) => write!(f, "{}/{}", n, d),
            Scalar::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Greatest common divisor of two integers, used by callers that need to
/// clear denominators.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(Scalar::new(4, -6), Scalar::Small(-2, 3));
        assert_eq!(Scalar::new(0, -6), Scalar::ZERO);
        assert_eq!(format!("{}", Scalar::new(3, 6)), "1/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Scalar::from_int(i64::MAX);
        let b = &a + &a;
        assert!(matches!(b, Scalar::Big(_)));
        let c = &b - &a;
        assert_eq!(c, a);
        let m = Scalar::from_int(i64::MIN);
        assert_eq!(-(-&m), m);
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(Scalar::binomial(5, 2), Scalar::from_int(10));
        assert_eq!(Scalar::binomial(-1, 3), Scalar::from_int(-1));
        assert_eq!(Scalar::binomial(-2, 2), Scalar::from_int(3));
        assert_eq!(Scalar::binomial(2, 5), Scalar::ZERO);
        assert_eq!(Scalar::falling(4, 2), Scalar::from_int(12));
        assert_eq!(Scalar::factorial(5), Scalar::from_int(120));
    }

    proptest! {
        #[test]
        fn matches_bigrational(a in -1_000_000i64..1_000_000, b in 1i64..1000,
                               c in -1_000_000i64..1_000_000, d in 1i64..1000) {
            let x = Scalar::new(a, b);
            let y = Scalar::new(c, d);
            prop_assert_eq!((&x + &y).to_big(), big(a, b) + big(c, d));
            prop_assert_eq!((&x - &y).to_big(), big(a, b) - big(c, d));
            prop_assert_eq!((&x * &y).to_big(), big(a, b) * big(c, d));
            if c != 0 {
                prop_assert_eq!((&x / &y).to_big(), big(a, b) / big(c, d));
            }
            prop_assert_eq!(x.cmp(&y), big(a, b).cmp(&big(c, d)));
        }

        #[test]
        fn large_products_roundtrip(a in any::<i64>(), b in any::<i64>()) {
            let x = Scalar::from_int(a);
            let y = Scalar::from_int(b);
            let p = &x * &y;
            prop_assert_eq!(p.to_big(), big(a, 1) * big(b, 1));
            if b != 0 {
                prop_assert_eq!(&p / &y, x);
            }
        }
    }
}
