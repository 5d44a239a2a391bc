//! Exact field arithmetic over ℚ and odd prime fields.
//!
//! A [`Scalar`] always knows which field it lives in. Mixing fields in the
//! operator overloads is a programming error and panics; the `checked_*`
//! methods and [`arith`] report it as [`ScalarError::FieldMismatch`] instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("zero has no square class")]
    ZeroInput,
    #[error("{0} is not an odd prime below 2^31")]
    InvalidPrime(u64),
    #[error("cannot parse {0:?} as a scalar")]
    Parse(String),
    #[error("integer {0} has a prime factor too large for trial division")]
    FactorizationTooLarge(BigUint),
}

/// Largest supported characteristic; keeps residue products inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// An odd prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if p < 3 || p > MAX_PRIME || !is_prime_u64(p) {
            return Err(ScalarError::InvalidPrime(p));
        }
        Ok(OddPrime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(OddPrime),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{}", p.get()),
        }
    }
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        OddPrime::new(p).map(FieldSpec::PrimeField)
    }

    /// Characteristic; 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p.get(),
        }
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(p.get()),
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar(Repr::Q(BigRational::from_integer(BigInt::from(n)))),
            FieldSpec::PrimeField(p) => {
                let p = p.get();
                Scalar(Repr::Fp { v: n.rem_euclid(p as i64) as u64, p })
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar(Repr::Q(BigRational::from_integer(n.clone()))),
            FieldSpec::PrimeField(p) => {
                let p = p.get();
                let v = n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits");
                Scalar(Repr::Fp { v, p })
            }
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, ScalarError> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        self.from_bigint(num).checked_div(&d)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, ScalarError> {
        self.from_ratio(q.numer(), q.denom())
    }

    /// Parses `"7"`, `"-3"` or `"-3/4"`.
    pub fn parse(&self, s: &str) -> Result<Scalar, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        self.from_ratio(&num, &den)
    }

    /// Every element of a prime field in residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.order().map(|p| (0..p as i64).map(|v| self.from_i64(v)).collect())
    }

    /// Smallest quadratic non-residue of a prime field.
    pub fn non_residue(&self) -> Option<Scalar> {
        let p = self.order()?;
        (2..p).map(|v| self.from_i64(v as i64)).find(|s| !s.is_square().unwrap_or(true))
    }

    /// A uniform residue over 𝔽_p; over ℚ a fraction `u/v` with
    /// `|u| ≤ bound` and `1 ≤ v ≤ 3`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        match self.order() {
            Some(p) => self.from_i64(rng.random_range(0..p) as i64),
            None => {
                let u = rng.random_range(-bound..=bound);
                let v = rng.random_range(1..=3i64);
                self.from_ratio(&u.into(), &v.into()).expect("nonzero denominator")
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        loop {
            let s = self.random(rng, bound.max(1));
            if !s.is_zero() {
                return s;
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

/// An element of ℚ or of 𝔽_p, canonically reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Q(_) => FieldSpec::Rationals,
            Repr::Fp { p, .. } => FieldSpec::PrimeField(OddPrime(*p)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_zero(),
            Repr::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_one(),
            Repr::Fp { v, .. } => *v == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Q(q) => Some(q),
            Repr::Fp { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Q(_) => None,
            Repr::Fp { v, .. } => Some(*v),
        }
    }

    /// The value as an `i64` when it is a small integer (or any residue).
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Q(q) if q.is_integer() => q.numer().to_i64(),
            Repr::Q(_) => None,
            Repr::Fp { v, .. } => Some(*v as i64),
        }
    }

    /// Sign of a rational; `None` over 𝔽_p.
    pub fn signum(&self) -> Option<Ordering> {
        self.as_rational().map(|q| q.cmp(&BigRational::zero()))
    }

    fn mismatch(&self, other: &Scalar) -> ScalarError {
        ScalarError::FieldMismatch(self.field(), other.field())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (&self.0, &other.0) {
            (Repr::Q(a), Repr::Q(b)) => Ok(Scalar(Repr::Q(a + b))),
            (Repr::Fp { v: a, p }, Repr::Fp { v: b, p: q }) if p == q => {
                Ok(Scalar(Repr::Fp { v: (a + b) % p, p: *p }))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (&self.0, &other.0) {
            (Repr::Q(a), Repr::Q(b)) => Ok(Scalar(Repr::Q(a - b))),
            (Repr::Fp { v: a, p }, Repr::Fp { v: b, p: q }) if p == q => {
                Ok(Scalar(Repr::Fp { v: (a + p - b) % p, p: *p }))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (&self.0, &other.0) {
            (Repr::Q(a), Repr::Q(b)) => Ok(Scalar(Repr::Q(a * b))),
            (Repr::Fp { v: a, p }, Repr::Fp { v: b, p: q }) if p == q => {
                Ok(Scalar(Repr::Fp { v: (a * b) % p, p: *p }))
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if self.field() != other.field() {
            return Err(self.mismatch(other));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Q(q) => Scalar(Repr::Q(q.recip())),
            Repr::Fp { v, p } => Scalar(Repr::Fp { v: pow_mod(*v, p - 2, *p), p: *p }),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Whether `self = s²` for some `s` in the field.
    pub fn is_square(&self) -> Result<bool, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroInput);
        }
        Ok(match &self.0 {
            Repr::Q(q) => {
                q.is_positive() && is_perfect_square(q.numer()) && is_perfect_square(q.denom())
            }
            Repr::Fp { v, p } => pow_mod(*v, (p - 1) / 2, *p) == 1,
        })
    }

    /// Canonical representative of `self` modulo squares.
    pub fn square_class(&self) -> Result<SquareClass, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroInput);
        }
        match &self.0 {
            Repr::Q(q) => {
                // n/d and n·d differ by the square d²
                let nd = q.numer() * q.denom();
                let core = squarefree_part(nd.magnitude())?;
                let signed = BigInt::from_biguint(nd.sign(), core);
                Ok(SquareClass(self.field().from_bigint(&signed)))
            }
            Repr::Fp { .. } => {
                let f = self.field();
                if self.is_square()? {
                    Ok(SquareClass(f.one()))
                } else {
                    Ok(SquareClass(f.non_residue().expect("prime field")))
                }
            }
        }
    }
}

/// A square class `k*/k*²`, stored by its canonical representative: a signed
/// square-free integer over ℚ, `1` or the least non-residue over 𝔽_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareClass(Scalar);

impl SquareClass {
    pub fn representative(&self) -> &Scalar {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        (&self.0 * &other.0).square_class().expect("product of nonzero classes")
    }

    pub fn neg(&self) -> SquareClass {
        (-&self.0).square_class().expect("nonzero")
    }

    /// The square-free integer over ℚ.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.0.as_rational().map(|q| q.numer().clone())
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(_) => write!(f, "{self}"),
            Repr::Fp { v, p } => write!(f, "{v} mod {p}"),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut self.0, &rhs.0) {
            (Repr::Fp { v, p }, Repr::Fp { v: w, p: q }) if p == q => *v = (*v + w) % *p,
            (Repr::Q(a), Repr::Q(b)) => *a += b,
            _ => panic!("{}", self.mismatch(rhs)),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut self.0, &rhs.0) {
            (Repr::Fp { v, p }, Repr::Fp { v: w, p: q }) if p == q => *v = (*v + *p - w) % *p,
            (Repr::Q(a), Repr::Q(b)) => *a -= b,
            _ => panic!("{}", self.mismatch(rhs)),
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (&mut self.0, &rhs.0) {
            (Repr::Fp { v, p }, Repr::Fp { v: w, p: q }) if p == q => *v = (*v * w) % *p,
            (Repr::Q(a), Repr::Q(b)) => *a *= b,
            _ => panic!("{}", self.mismatch(rhs)),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Q(q) => Scalar(Repr::Q(-q)),
            Repr::Fp { v, p } => Scalar(Repr::Fp { v: (p - v) % p, p: *p }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Prime factorisation by trial division. Gives up (with an error) once the
/// trial divisor passes 2^32 with a composite-or-prime cofactor left over
/// that does not fit in a `u64`.
pub fn factorize(n: &BigUint) -> Result<Vec<(u64, u32)>, ScalarError> {
    let mut out = Vec::new();
    if n.is_zero() {
        return Ok(out);
    }
    let mut m = n.clone();
    let mut d: u64 = 2;
    while !m.is_one() {
        let dd = BigUint::from(d);
        if &dd * &dd > m {
            // m is prime
            let q = m.to_u64().ok_or_else(|| ScalarError::FactorizationTooLarge(n.clone()))?;
            out.push((q, 1));
            break;
        }
        if d > u32::MAX as u64 {
            return Err(ScalarError::FactorizationTooLarge(n.clone()));
        }
        let mut e = 0;
        while (&m % &dd).is_zero() {
            m /= &dd;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    Ok(out)
}

fn squarefree_part(n: &BigUint) -> Result<BigUint, ScalarError> {
    Ok(factorize(n)?
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p))
}
