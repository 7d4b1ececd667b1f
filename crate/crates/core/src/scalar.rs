//! Exact scalar fields: prime fields `F_p` and the rationals.
//!
//! The projective model is generic over the [`Field`] trait. A field value
//! carries its arithmetic context (the prime `p` for a runtime prime field),
//! so elements themselves stay plain data and the field does the work.
//! Types that already implement `num_traits::Num` plug in through
//! [`NumField`]; this is how the rationals and the compile-time [`Fp`]
//! prime fields are provided.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(FieldId, FieldId),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {text:?} as an element of {field}")]
    Parse { text: String, field: FieldId },
}

/// Identifies a scalar domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldId {
    Prime(u64),
    Rationals,
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldId::Prime(p) => write!(f, "F_{p}"),
            FieldId::Rationals => f.write_str("Q"),
        }
    }
}

impl FromStr for FieldId {
    type Err = ScalarError;

    /// Accepts a prime (`"5"`) or `"Q"` / `"rationals"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldId::Rationals);
        }
        let p: u64 = t.parse().map_err(|_| ScalarError::Parse {
            text: s.to_string(),
            field: FieldId::Rationals,
        })?;
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldId::Prime(p))
    }
}

/// Trial division; the primes used here are small.
pub const fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic context for an exact field.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn id(&self) -> FieldId;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ScalarError>;

    /// All elements in canonical order, or `None` for an infinite field.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn parse(&self, text: &str) -> Result<Self::Elem, ScalarError>;

    /// Dynamic form of an element, tagged with this field's id.
    fn to_dynamic(&self, a: &Self::Elem) -> FieldElement;

    fn from_dynamic(&self, e: &FieldElement) -> Result<Self::Elem, ScalarError>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ScalarError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// `1 - a`
    fn one_minus(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.one(), a)
    }
}

/// `F_p` with the prime chosen at run time. Elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Primes up to 2^32 keep every product inside `u64`.
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn id(&self) -> FieldId {
        FieldId::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.residue(n)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Result<u64, ScalarError> {
        if (*a).is_multiple_of(self.p) {
            return Err(ScalarError::DivisionByZero);
        }
        let g = (*a as i64).extended_gcd(&(self.p as i64));
        debug_assert_eq!(g.gcd, 1);
        Ok(self.residue(g.x))
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }

    fn parse(&self, text: &str) -> Result<u64, ScalarError> {
        text.trim()
            .parse::<i64>()
            .map(|n| self.residue(n))
            .map_err(|_| ScalarError::Parse {
                text: text.to_string(),
                field: self.id(),
            })
    }

    fn to_dynamic(&self, a: &u64) -> FieldElement {
        FieldElement::Prime {
            value: *a,
            p: self.p,
        }
    }

    fn from_dynamic(&self, e: &FieldElement) -> Result<u64, ScalarError> {
        match e {
            FieldElement::Prime { value, p } if *p == self.p => Ok(*value % self.p),
            other => Err(ScalarError::Mismatch(self.id(), other.field_id())),
        }
    }
}

/// A `num_traits::Num` type that is an exact field.
pub trait ExactScalar:
    Num + Neg<Output = Self> + Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync
{
    fn field_id() -> FieldId;

    /// All elements in canonical order, `None` when infinite.
    fn enumerate() -> Option<Vec<Self>>;

    fn from_i64(n: i64) -> Self;

    fn to_dynamic(&self) -> FieldElement;

    fn from_dynamic(e: &FieldElement) -> Option<Self>;

    fn parse(text: &str) -> Option<Self>;
}

/// Adapter turning an [`ExactScalar`] type into a [`Field`] context.
pub struct NumField<T>(PhantomData<fn() -> T>);

impl<T> NumField<T> {
    pub const fn new() -> Self {
        NumField(PhantomData)
    }
}

impl<T> Default for NumField<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for NumField<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for NumField<T> {}

impl<T: ExactScalar> fmt::Debug for NumField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumField({})", T::field_id())
    }
}

impl<T: ExactScalar> Field for NumField<T> {
    type Elem = T;

    fn id(&self) -> FieldId {
        T::field_id()
    }

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn from_i64(&self, n: i64) -> T {
        T::from_i64(n)
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn neg(&self, a: &T) -> T {
        -a.clone()
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }

    fn inv(&self, a: &T) -> Result<T, ScalarError> {
        if a.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(T::one() / a.clone())
    }

    fn elements(&self) -> Option<Vec<T>> {
        T::enumerate()
    }

    fn parse(&self, text: &str) -> Result<T, ScalarError> {
        T::parse(text.trim()).ok_or_else(|| ScalarError::Parse {
            text: text.to_string(),
            field: T::field_id(),
        })
    }

    fn to_dynamic(&self, a: &T) -> FieldElement {
        a.to_dynamic()
    }

    fn from_dynamic(&self, e: &FieldElement) -> Result<T, ScalarError> {
        T::from_dynamic(e).ok_or(ScalarError::Mismatch(T::field_id(), e.field_id()))
    }
}

impl ExactScalar for BigRational {
    fn field_id() -> FieldId {
        FieldId::Rationals
    }

    fn enumerate() -> Option<Vec<Self>> {
        None
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_dynamic(&self) -> FieldElement {
        FieldElement::Rational(self.clone())
    }

    fn from_dynamic(e: &FieldElement) -> Option<Self> {
        match e {
            FieldElement::Rational(q) => Some(q.clone()),
            _ => None,
        }
    }

    fn parse(text: &str) -> Option<Self> {
        // Ratio::from_str normalizes and rejects a zero denominator.
        BigRational::from_str(text).ok()
    }
}

/// `F_P` with the prime fixed at compile time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const PRIME: () = assert!(
        is_prime(P) && P <= u32::MAX as u64,
        "modulus must be a prime below 2^32"
    );

    pub fn new(n: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::PRIME;
        Fp(n.rem_euclid(P as i64) as u64)
    }

    pub fn residue(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in F_{P}");
        // Fermat: rhs^(P-2) is the inverse.
        let mut base = rhs.0;
        let mut exp = P - 2;
        let mut acc = 1 % P;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            exp >>= 1;
        }
        Fp(self.0 * acc % P)
    }
}

impl<const P: u64> Rem for Fp<P> {
    type Output = Self;
    /// Every nonzero element divides every other, so the remainder is zero.
    fn rem(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "remainder by zero in F_{P}");
        Fp(0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Num for Fp<P> {
    type FromStrRadixErr = std::num::ParseIntError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        i64::from_str_radix(s, radix).map(Fp::new)
    }
}

impl<const P: u64> ExactScalar for Fp<P> {
    fn field_id() -> FieldId {
        FieldId::Prime(P)
    }

    fn enumerate() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn to_dynamic(&self) -> FieldElement {
        FieldElement::Prime {
            value: self.0,
            p: P,
        }
    }

    fn from_dynamic(e: &FieldElement) -> Option<Self> {
        match e {
            FieldElement::Prime { value, p } if *p == P => Some(Fp(*value % P)),
            _ => None,
        }
    }

    fn parse(text: &str) -> Option<Self> {
        text.parse::<i64>().ok().map(Fp::new)
    }
}

/// A field element tagged with its field, for callers that pick the field
/// at run time. Arithmetic between different fields is an error.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Prime { value: u64, p: u64 },
    Rational(BigRational),
}

impl FieldElement {
    pub fn prime(value: i64, p: u64) -> Result<Self, ScalarError> {
        let field = PrimeField::new(p)?;
        Ok(field.to_dynamic(&field.from_i64(value)))
    }

    pub fn rational(numer: i64, denom: i64) -> Result<Self, ScalarError> {
        if denom == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(FieldElement::Rational(BigRational::new(
            numer.into(),
            denom.into(),
        )))
    }

    pub fn parse(field: FieldId, text: &str) -> Result<Self, ScalarError> {
        match field {
            FieldId::Prime(p) => {
                let f = PrimeField::new(p)?;
                Ok(f.to_dynamic(&f.parse(text)?))
            }
            FieldId::Rationals => {
                let f = Rationals::new();
                Ok(f.to_dynamic(&f.parse(text)?))
            }
        }
    }

    pub fn field_id(&self) -> FieldId {
        match self {
            FieldElement::Prime { p, .. } => FieldId::Prime(*p),
            FieldElement::Rational(_) => FieldId::Rationals,
        }
    }

    /// Re-establishes canonical form. Values built through the constructors
    /// are already canonical, so this is idempotent on them.
    pub fn normalize(&self) -> Self {
        match self {
            FieldElement::Prime { value, p } => FieldElement::Prime {
                value: value % p,
                p: *p,
            },
            FieldElement::Rational(q) => {
                let mut numer = q.numer().clone();
                let mut denom = q.denom().clone();
                if denom.is_negative() {
                    numer = -numer;
                    denom = -denom;
                }
                let g = numer.gcd(&denom);
                FieldElement::Rational(BigRational::new_raw(numer / &g, denom / &g))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Prime { value, .. } => *value == 0,
            FieldElement::Rational(q) => q.is_zero(),
        }
    }

    fn binary(
        &self,
        other: &Self,
        prime: impl Fn(&PrimeField, &u64, &u64) -> u64,
        rational: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Self, ScalarError> {
        match (self, other) {
            (FieldElement::Prime { value: a, p }, FieldElement::Prime { value: b, p: q })
                if p == q =>
            {
                let f = PrimeField { p: *p };
                Ok(FieldElement::Prime {
                    value: prime(&f, a, b),
                    p: *p,
                })
            }
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                Ok(FieldElement::Rational(rational(a, b)))
            }
            _ => Err(ScalarError::Mismatch(self.field_id(), other.field_id())),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.binary(other, |f, a, b| f.add(a, b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.binary(other, |f, a, b| f.mul(a, b), |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Prime { value, p } => FieldElement::Prime {
                value: (p - value % p) % p,
                p: *p,
            },
            FieldElement::Rational(q) => FieldElement::Rational(-q),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            FieldElement::Prime { value, p } => {
                let f = PrimeField { p: *p };
                Ok(FieldElement::Prime {
                    value: f.inv(value)?,
                    p: *p,
                })
            }
            FieldElement::Rational(q) => Ok(FieldElement::Rational(q.recip())),
        }
    }

    /// Residue for prime-field elements, numerator for integral rationals.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldElement::Prime { value, .. } => i64::try_from(*value).ok(),
            FieldElement::Rational(q) if q.is_integer() => q.numer().to_i64(),
            FieldElement::Rational(_) => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
            FieldElement::Rational(q) => write!(f, "{q}"),
        }
    }
}

/// The rationals, backed by arbitrary-precision integers.
pub type Rationals = NumField<BigRational>;

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: i64, p: u64) -> FieldElement {
        FieldElement::prime(v, p).unwrap()
    }

    #[test]
    fn prime_examples() {
        assert_eq!(fe(2, 5).add(&fe(3, 5)).unwrap(), fe(0, 5));
        assert_eq!(fe(0, 5).add(&fe(4, 5)).unwrap(), fe(4, 5));
        assert_eq!(fe(3, 5).inv().unwrap(), fe(2, 5));
        assert_eq!(fe(1, 5).neg(), fe(4, 5));
        assert_eq!(fe(4, 5).mul(&fe(4, 5)).unwrap(), fe(1, 5));
    }

    #[test]
    fn rational_examples() {
        let half = FieldElement::rational(1, 2).unwrap();
        let third = FieldElement::rational(1, 3).unwrap();
        assert_eq!(
            half.add(&third).unwrap(),
            FieldElement::rational(5, 6).unwrap()
        );
        assert_eq!(half.add(&third).unwrap().to_string(), "5/6");
        assert_eq!(FieldElement::rational(4, 2).unwrap().to_string(), "2");
        assert_eq!(FieldElement::rational(3, -6).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn errors_are_reported() {
        assert_eq!(fe(0, 5).inv(), Err(ScalarError::DivisionByZero));
        assert!(FieldElement::rational(0, 1).unwrap().inv().is_err());
        assert_eq!(
            fe(1, 5).add(&fe(1, 7)),
            Err(ScalarError::Mismatch(FieldId::Prime(5), FieldId::Prime(7)))
        );
        assert!(fe(1, 5)
            .mul(&FieldElement::rational(1, 2).unwrap())
            .is_err());
        assert_eq!(PrimeField::new(4).unwrap_err(), ScalarError::NotPrime(4));
        assert!(PrimeField::new(1).is_err());
        assert_eq!("Q".parse::<FieldId>().unwrap(), FieldId::Rationals);
        assert_eq!("7".parse::<FieldId>().unwrap(), FieldId::Prime(7));
        assert_eq!("9".parse::<FieldId>(), Err(ScalarError::NotPrime(9)));
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(
            FieldElement::parse(FieldId::Prime(5), "-1").unwrap(),
            fe(4, 5)
        );
        let q = FieldElement::parse(FieldId::Rationals, "-2/4").unwrap();
        assert_eq!(q.to_string(), "-1/2");
        assert_eq!(
            FieldElement::parse(FieldId::Rationals, "7")
                .unwrap()
                .to_string(),
            "7"
        );
        assert!(FieldElement::parse(FieldId::Rationals, "1/0").is_err());
        assert!(FieldElement::parse(FieldId::Prime(5), "x").is_err());
    }

    fn check_field_axioms<F: Field>(f: &F) {
        let els = f.elements().unwrap();
        let zero = f.zero();
        let one = f.one();
        for a in &els {
            assert_eq!(f.add(a, &zero), *a);
            assert_eq!(f.mul(a, &one), *a);
            assert_eq!(f.add(a, &f.neg(a)), zero);
            if *a != zero {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), one);
            }
            for b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in &els {
                    assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
                    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn exhaustive_axioms_small_primes() {
        for p in [2, 3, 5, 7, 11, 13] {
            check_field_axioms(&PrimeField::new(p).unwrap());
        }
        check_field_axioms(&NumField::<Fp<2>>::new());
        check_field_axioms(&NumField::<Fp<7>>::new());
        check_field_axioms(&NumField::<Fp<13>>::new());
    }

    #[test]
    fn runtime_and_const_primes_agree() {
        let rt = PrimeField::new(11).unwrap();
        let ct = NumField::<Fp<11>>::new();
        for a in 0..11i64 {
            for b in 0..11i64 {
                let (x, y) = (rt.from_i64(a), rt.from_i64(b));
                let (u, v) = (ct.from_i64(a), ct.from_i64(b));
                assert_eq!(rt.add(&x, &y), ct.add(&u, &v).residue());
                assert_eq!(rt.mul(&x, &y), ct.mul(&u, &v).residue());
                if b != 0 {
                    assert_eq!(rt.div(&x, &y).unwrap(), ct.div(&u, &v).unwrap().residue());
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = BigRational> {
            (-50i64..50, 1i64..50).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
        }

        proptest! {
            #[test]
            fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
                let q = Rationals::new();
                prop_assert_eq!(q.add(&q.add(&a, &b), &c), q.add(&a, &q.add(&b, &c)));
                prop_assert_eq!(q.mul(&a, &q.add(&b, &c)), q.add(&q.mul(&a, &b), &q.mul(&a, &c)));
                prop_assert_eq!(q.mul(&a, &b), q.mul(&b, &a));
                if !a.is_zero() {
                    prop_assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
                }
            }

            #[test]
            fn normalize_is_idempotent(n in -1000i64..1000, d in prop_oneof![-1000i64..-1, 1i64..1000], v in 0u64..1000) {
                let raw = FieldElement::Rational(BigRational::new_raw(n.into(), d.into()));
                let once = raw.normalize();
                prop_assert_eq!(once.normalize(), once.clone());
                prop_assert_eq!(once, FieldElement::rational(n, d).unwrap());
                let fp = FieldElement::Prime { value: v, p: 13 };
                prop_assert_eq!(fp.normalize().normalize(), fp.normalize());
            }

            #[test]
            fn prime_inverse(a in 1u64..1_000_003) {
                let f = PrimeField::new(1_000_003).unwrap();
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }
}
