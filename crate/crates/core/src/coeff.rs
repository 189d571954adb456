//! Exact coefficient arithmetic over the rationals and over prime fields.
//!
//! The kernel is generic over [`Field`]; the two implementations are
//! [`Rationals`] (arbitrary precision, always in lowest terms) and
//! [`PrimeField`] (single-word residues). [`FieldElement`] is a
//! self-describing value type for callers that only know the field at runtime.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime used whenever the caller does not ask for another one.
pub const DEFAULT_PRIME: u32 = 32003;

/// Which coefficient field a ring lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    /// Checked constructor for a prime field; the modulus must be a prime below 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::Field(format!("modulus {p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::Field(format!("modulus {p} is not prime")));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn modulus(&self) -> Option<u32> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "QQ" => Ok(FieldSpec::Rationals),
            _ => {
                let p: u64 = s
                    .parse()
                    .map_err(|_| Error::Field(format!("expected QQ or a prime, found `{s}`")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

/// Trial division; fine for moduli below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A coefficient field. Elements are plain values; all arithmetic goes
/// through the field so that the modulus never has to be stored per element.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Uniform nonzero element; `None` when the field has no uniform distribution.
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Self::Elem>;

    /// Sign and magnitude used by the printer: `(negative, digits)`.
    fn signed_repr(&self, a: &Self::Elem) -> (bool, String);

    fn to_value(&self, a: &Self::Elem) -> ElemValue;
    fn from_value(&self, v: &ElemValue) -> Result<Self::Elem>;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
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
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn random_nonzero<R: Rng + ?Sized>(&self, _rng: &mut R) -> Option<BigRational> {
        None
    }
    fn signed_repr(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), a.abs().to_string())
    }
    fn to_value(&self, a: &BigRational) -> ElemValue {
        ElemValue::Rational(a.clone())
    }
    fn from_value(&self, v: &ElemValue) -> Result<BigRational> {
        match v {
            ElemValue::Rational(r) => Ok(r.clone()),
            ElemValue::Residue(_) => Err(Error::FieldMismatch),
        }
    }
}

/// The prime field `Z/pZ` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        match FieldSpec::prime(p as u64)? {
            FieldSpec::Prime(p) => Ok(PrimeField { p }),
            FieldSpec::Rationals => unreachable!(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce_i64(n)
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u32().expect("residue fits in u32")
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
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
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i64(t0))
    }
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<u32> {
        Some(rng.random_range(1..self.p))
    }
    fn signed_repr(&self, a: &u32) -> (bool, String) {
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }
    fn to_value(&self, a: &u32) -> ElemValue {
        ElemValue::Residue(*a)
    }
    fn from_value(&self, v: &ElemValue) -> Result<u32> {
        match v {
            ElemValue::Residue(r) if *r < self.p => Ok(*r),
            _ => Err(Error::FieldMismatch),
        }
    }
}

/// Storage of a [`FieldElement`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElemValue {
    Rational(BigRational),
    Residue(u32),
}

/// A field element that carries its field with it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    value: ElemValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn from_i64(spec: FieldSpec, n: i64) -> Self {
        let value = match spec {
            FieldSpec::Rationals => ElemValue::Rational(Rationals.from_i64(n)),
            FieldSpec::Prime(p) => ElemValue::Residue(n.rem_euclid(p as i64) as u32),
        };
        FieldElement { spec, value }
    }

    /// `num/den` over the rationals, reduced to lowest terms.
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement {
            spec: FieldSpec::Rationals,
            value: ElemValue::Rational(BigRational::new(num.into(), den.into())),
        })
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn value(&self) -> &ElemValue {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            ElemValue::Rational(r) => r.is_zero(),
            ElemValue::Residue(r) => *r == 0,
        }
    }

    pub fn from_elem<F: Field>(field: &F, e: &F::Elem) -> Self {
        FieldElement { spec: field.spec(), value: field.to_value(e) }
    }

    pub fn to_elem<F: Field>(&self, field: &F) -> Result<F::Elem> {
        if self.spec != field.spec() {
            return Err(Error::FieldMismatch);
        }
        field.from_value(&self.value)
    }
}

impl Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ElemValue::Rational(r) => write!(f, "{r}"),
            ElemValue::Residue(r) => write!(f, "{r}"),
        }
    }
}

/// Exact arithmetic on two elements of the same field.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if a.spec != b.spec {
        return Err(Error::FieldMismatch);
    }
    fn apply<F: Field>(
        field: &F,
        a: &ElemValue,
        b: &ElemValue,
        op: ArithOp,
    ) -> Result<ElemValue> {
        let (x, y) = (field.from_value(a)?, field.from_value(b)?);
        let r = match op {
            ArithOp::Add => field.add(&x, &y),
            ArithOp::Sub => field.sub(&x, &y),
            ArithOp::Mul => field.mul(&x, &y),
            ArithOp::Div => field.div(&x, &y).ok_or(Error::DivisionByZero)?,
        };
        Ok(field.to_value(&r))
    }
    let value = match a.spec {
        FieldSpec::Rationals => apply(&Rationals, &a.value, &b.value, op)?,
        FieldSpec::Prime(p) => apply(&PrimeField { p }, &a.value, &b.value, op)?,
    };
    Ok(FieldElement { spec: a.spec, value })
}

/// Deterministic RNG used for every "general" coefficient in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform nonzero residue, reproducible for a fixed seed.
pub fn field_random(spec: FieldSpec, seed: u64) -> Result<FieldElement> {
    match spec {
        FieldSpec::Rationals => Err(Error::Field(
            "random elements are only available over prime fields".into(),
        )),
        FieldSpec::Prime(p) => {
            let field = PrimeField { p };
            let mut rng = seeded_rng(seed);
            let r = field.random_nonzero(&mut rng).expect("prime fields sample");
            Ok(FieldElement { spec, value: ElemValue::Residue(r) })
        }
    }
}
