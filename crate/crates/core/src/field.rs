//! Coefficient fields.
//!
//! Linear algebra in this crate is written against the [`Field`] trait, which
//! describes a field *structure* (a value carrying whatever runtime data the
//! arithmetic needs, e.g. the modulus of GF(p)) together with its element
//! type. Three families are provided:
//!
//! * [`PrimeField`]: GF(p) for a runtime prime `p < 2^31`, elements are `u32`.
//! * [`Rationals`]: ℚ with [`BigRational`] elements. Rank computations clear
//!   denominators and run fraction-free over the integers.
//! * [`NumField`]: any `num_traits` numeric type that behaves like a field
//!   (`Ratio<i64>`, `BigRational`, ...), eliminated by plain Gaussian
//!   elimination. Mostly useful as a second route in tests.
//!
//! [`FieldSpec`] is the serializable, user-facing name of a field.

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Zero};
use serde::{Deserialize, Serialize};

use crate::sparse::{self, Reduction, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^31)")]
    PrimeTooLarge(u64),
    #[error("unrecognized field `{0}` (expected q, 2, 3, 5, p:N or GF(N))")]
    Unrecognized(String),
}

/// A field structure: arithmetic on `Self::Elem` values.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, value: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Column reduction of `m`, skipping the columns flagged in `skip`.
    ///
    /// Skipped columns must be known to lie in the span of earlier columns;
    /// the rank is then unaffected.
    fn reduce(&self, m: &SparseMatrix<Self::Elem>, skip: Option<&[bool]>) -> Reduction {
        sparse::reduce_over_field(self, m, skip)
    }

    fn rank(&self, m: &SparseMatrix<Self::Elem>) -> usize {
        self.reduce(m, None).rank
    }
}

/// GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, value: i64) -> u32 {
        value.rem_euclid(self.p as i64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let p = self.p as u64;
        let mut base = *a as u64 % p;
        let mut exp = p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(acc as u32)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
}

/// ℚ with exact big rationals; ranks are computed fraction-free over ℤ.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(1))
    }
    fn from_i64(&self, value: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(value))
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn characteristic(&self) -> u64 {
        0
    }

    fn reduce(&self, m: &SparseMatrix<BigRational>, skip: Option<&[bool]>) -> Reduction {
        sparse::reduce_rational_fraction_free(m, skip)
    }
}

/// A field backed directly by a `num_traits` scalar type, reduced by
/// ordinary Gaussian elimination with division.
pub struct NumField<T>(PhantomData<fn() -> T>);

impl<T> NumField<T> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<T> Default for NumField<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for NumField<T> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

impl<T> fmt::Debug for NumField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumField<{}>", std::any::type_name::<T>())
    }
}

impl<T> Field for NumField<T>
where
    T: Num + Clone + FromPrimitive + fmt::Debug + Send + Sync,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn from_i64(&self, value: i64) -> T {
        T::from_i64(value).expect("integer not representable in scalar type")
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn neg(&self, a: &T) -> T {
        T::zero() - a.clone()
    }
    fn inv(&self, a: &T) -> Option<T> {
        (!a.is_zero()).then(|| T::one() / a.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// User-facing name of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec::Prime(2);
    pub const GF3: FieldSpec = FieldSpec::Prime(3);
    pub const GF5: FieldSpec = FieldSpec::Prime(5);
    pub const Q: FieldSpec = FieldSpec::Rationals;

    /// GF(2), GF(3), GF(5), ℚ.
    pub fn default_menu() -> Vec<FieldSpec> {
        vec![Self::GF2, Self::GF3, Self::GF5, Self::Q]
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        PrimeField::new(p).map(|f| FieldSpec::Prime(f.modulus()))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p as u64,
            FieldSpec::Rationals => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rationals => f.write_str("Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if matches!(lower.as_str(), "q" | "qq" | "rationals" | "rational") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = if let Some(rest) = lower.strip_prefix("p:") {
            rest
        } else if let Some(rest) = lower.strip_prefix("gf(").and_then(|r| r.strip_suffix(')')) {
            rest
        } else {
            lower.as_str()
        };
        let p: u64 = digits
            .parse()
            .map_err(|_| FieldError::Unrecognized(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = FieldError;
    fn try_from(s: String) -> Result<Self, FieldError> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

/// Runs `$body` with `$f` bound to the concrete field named by `$spec`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::field::FieldSpec::Prime(p) => {
                let $f = $crate::field::PrimeField::new(p as u64)
                    .expect("FieldSpec::Prime holds a checked prime");
                $body
            }
            $crate::field::FieldSpec::Rationals => {
                let $f = $crate::field::Rationals;
                $body
            }
        }
    };
}
pub(crate) use with_field;
