//! Exact coefficient fields.
//!
//! Everything downstream (matrices, algebra bases, module categories) is
//! generic over [`Field`]. Two implementations are provided: arbitrary
//! precision rationals (`num_rational::BigRational`) and prime fields
//! [`Fp`].
//!
//! Some fields need runtime data to make sense of an element (the modulus
//! of an `Fp` value). That data is the associated `Params` type, carried by
//! every element and threaded through matrices and algebras so that zero
//! and one values can be produced without an element in hand. For the
//! rationals the parameter is `()`. Carrying the modulus per element costs
//! a word but removes an entire class of bugs where a literal `0` or `1`
//! built without context silently lands in the wrong field.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field with explicit runtime parameters.
///
/// All operations are total except `inv`, which returns `None` exactly on
/// zero. Implementations must be exact: no rounding, no overflow.
pub trait Field: Clone + PartialEq + Debug + Display + 'static {
    /// Runtime data shared by all elements of one field instance.
    type Params: Copy + Eq + Debug + Send + Sync;

    fn params(&self) -> Self::Params;
    fn zero(p: Self::Params) -> Self;
    fn one(p: Self::Params) -> Self;
    fn from_int(n: i64, p: Self::Params) -> Self;
    /// Parse a decimal integer literal (arbitrary length, optional sign).
    fn from_int_str(s: &str, p: Self::Params) -> Option<Self>;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` exactly when `self` is zero.
    fn inv(&self) -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    /// Field characteristic: 0 for the rationals, p for a prime field.
    fn characteristic(p: Self::Params) -> u64;

    /// Render as a relation coefficient in the input syntax, e.g. `-3/2`.
    fn coeff_string(&self) -> String;
}

impl Field for BigRational {
    type Params = ();

    fn params(&self) -> Self::Params {}

    fn zero(_: ()) -> Self {
        <BigRational as Zero>::zero()
    }

    fn one(_: ()) -> Self {
        <BigRational as One>::one()
    }

    fn from_int(n: i64, _: ()) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_int_str(s: &str, _: ()) -> Option<Self> {
        s.parse::<BigInt>().ok().map(BigRational::from_integer)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn characteristic(_: ()) -> u64 {
        0
    }

    fn coeff_string(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else if self.numer().is_negative() {
            format!("-{}/{}", self.numer().magnitude(), self.denom())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Element of the prime field with `modulus` elements.
///
/// The modulus rides along in every element; mixing moduli is a logic error
/// and panics in debug builds.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        Fp { value: v as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for every n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for Fp {
    type Params = u64;

    fn params(&self) -> u64 {
        self.modulus
    }

    fn zero(p: u64) -> Self {
        Fp::new(0, p)
    }

    fn one(p: u64) -> Self {
        Fp::new(1, p)
    }

    fn from_int(n: i64, p: u64) -> Self {
        Fp::new(n, p)
    }

    fn from_int_str(s: &str, p: u64) -> Option<Self> {
        let n: BigInt = s.parse().ok()?;
        let m = BigInt::from(p);
        let r = ((n % &m) + &m) % &m;
        let digits = r.to_u64_digits().1;
        let v = digits.first().copied().unwrap_or(0);
        Some(Fp::new(v as i64, p))
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u128 + rhs.value as u128;
        Fp { value: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }

    fn neg(&self) -> Self {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        Fp { value: v, modulus: self.modulus }
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Fermat: value^(p-2) mod p.
        Some(Fp { value: pow_mod(self.value, self.modulus - 2, self.modulus), modulus: self.modulus })
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn characteristic(p: u64) -> u64 {
        p
    }

    fn coeff_string(&self) -> String {
        self.value.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_field_ops() {
        let p = ();
        let half = BigRational::from_int_str("1", p).unwrap().mul(&BigRational::from_int(2, p).inv().unwrap());
        assert_eq!(half.coeff_string(), "1/2");
        assert_eq!(half.add(&half), <BigRational as Field>::one(p));
        assert_eq!(half.sub(&half), <BigRational as Field>::zero(p));
        assert!(<BigRational as Field>::zero(p).inv().is_none());
        let neg = BigRational::from_int(-3, p).mul(&BigRational::from_int(2, p).inv().unwrap());
        assert_eq!(neg.coeff_string(), "-3/2");
    }

    #[test]
    fn fp_field_ops() {
        let p = 7u64;
        for a in 1..7i64 {
            let x = Fp::new(a, p);
            let inv = x.inv().expect("nonzero element must invert");
            assert!(x.mul(&inv).is_one(), "{a} * {a}^-1 != 1 mod 7");
        }
        assert!(Fp::new(0, p).inv().is_none());
        assert_eq!(Fp::new(-3, p), Fp::new(4, p));
        assert_eq!(Fp::from_int_str("123456789123456789", p).unwrap(), Fp::new(123456789123456789 % 7, p));
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(7));
        assert!(is_prime_u64(1_000_000_007));
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
        assert!(!is_prime_u64(18446744073709551556));
    }
}
