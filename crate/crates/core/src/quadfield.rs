//! Exact arithmetic in real quadratic fields `Q[sqrt(d)]` and 2x2 matrices
//! over them.
//!
//! A [`QuadNum`] with zero irrational part is a rational number and mixes
//! freely with elements of any field; its stored radicand is only a hint.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("radicand {d} is not squarefree: {d} = {square}^2 * {core}, use sqrt({core}) with coefficient {square}")]
    NotSquarefree { d: u64, square: u64, core: u64 },
    #[error("radicand must be at least 2, got {0}")]
    RadicandTooSmall(u64),
    #[error("incompatible fields Q[sqrt({0})] and Q[sqrt({1})]")]
    IncompatibleFields(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// Splits `d` as `square^2 * core` with `core` squarefree.
pub fn squarefree_decomposition(d: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut core = d;
    let mut p = 2u64;
    while p * p <= core {
        while core.is_multiple_of(p * p) {
            core /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, core)
}

fn validate_radicand(d: u64) -> Result<(), QuadError> {
    if d < 2 {
        return Err(QuadError::RadicandTooSmall(d));
    }
    let (square, core) = squarefree_decomposition(d);
    if square != 1 {
        return Err(QuadError::NotSquarefree { d, square, core });
    }
    Ok(())
}

/// `a + b*sqrt(d)` with rational `a`, `b`.
#[derive(Clone)]
pub struct QuadNum {
    a: BigRational,
    b: BigRational,
    // 1 marks a rational created without reference to a field.
    d: u64,
}

impl QuadNum {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self, QuadError> {
        validate_radicand(d)?;
        Ok(QuadNum { a, b, d })
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadNum {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `sqrt(d)`.
    pub fn sqrt(d: u64) -> Result<Self, QuadError> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    /// Shorthand for `(an/ad) + (bn/bd)*sqrt(d)`.
    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64, d: u64) -> Result<Self, QuadError> {
        if ad == 0 || bd == 0 {
            return Err(QuadError::DivisionByZero);
        }
        Self::new(ratio(an, ad), ratio(bn, bd), d)
    }

    /// `(1 + sqrt(d)) / 2`.
    pub fn half_one_plus_sqrt(d: u64) -> Result<Self, QuadError> {
        Self::from_parts(1, 2, 1, 2, d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// Radicand of the field this number was created in (1 for a bare rational).
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_rational() && self.a.is_integer() {
            Some(self.a.to_integer())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Zero in the same field.
    pub fn zero_like(&self) -> Self {
        QuadNum {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: self.d,
        }
    }

    /// The integer `n` in the same field.
    pub fn integer_like(&self, n: i64) -> Self {
        QuadNum {
            a: BigRational::from_integer(n.into()),
            b: BigRational::zero(),
            d: self.d,
        }
    }

    fn common_field(&self, other: &Self) -> Result<u64, QuadError> {
        if self.d == other.d || other.d == 1 {
            return Ok(self.d);
        }
        if self.d == 1 {
            return Ok(other.d);
        }
        match (self.is_rational(), other.is_rational()) {
            (_, true) => Ok(self.d),
            (true, false) => Ok(other.d),
            (false, false) => Err(QuadError::IncompatibleFields(self.d, other.d)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.common_field(other)?;
        Ok(QuadNum {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.common_field(other)?;
        Ok(QuadNum {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.common_field(other)?;
        let dq = BigRational::from_integer(d.into());
        Ok(QuadNum {
            a: &self.a * &other.a + &self.b * &other.b * dq,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        })
    }

    /// Division, rationalising by the conjugate of the divisor.
    pub fn try_div(&self, other: &Self) -> Result<Self, QuadError> {
        let inv = other.try_inverse()?;
        self.try_mul(&inv)
    }

    pub fn try_inverse(&self) -> Result<Self, QuadError> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(QuadError::DivisionByZero);
        }
        Ok(QuadNum {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            d: self.d,
        })
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadNum {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// `a^2 - b^2 d`, the product with the conjugate.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    /// `2a`, the sum with the conjugate.
    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // opposite signs: compare |a| with |b| sqrt(d) through squares
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigRational::from_integer(self.d.into());
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, QuadError> {
        Ok(self.try_sub(other)?.signum())
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    pub fn minimal_polynomial(&self) -> MinimalPoly {
        if self.is_rational() {
            MinimalPoly::Linear {
                root: self.a.clone(),
            }
        } else {
            MinimalPoly::Quadratic {
                trace: self.trace(),
                norm: self.norm(),
            }
        }
    }

    /// Degree of the minimal polynomial over Q: 1 or 2.
    pub fn minimal_poly_degree(&self) -> u32 {
        self.minimal_polynomial().degree()
    }
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl PartialEq for QuadNum {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadNum {}

impl Hash for QuadNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.d.hash(state);
        }
    }
}

/// Order on numbers of a common field; `None` across incompatible fields.
impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a QuadNum> for &'a QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &'a QuadNum) -> QuadNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);
forward_op!(Div, div, try_div);

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -self.clone()
    }
}

impl From<BigRational> for QuadNum {
    fn from(r: BigRational) -> Self {
        QuadNum::from_rational(r)
    }
}

impl From<i64> for QuadNum {
    fn from(n: i64) -> Self {
        QuadNum::from_integer(n)
    }
}

/// `p/q + r/s*sqrt(d)`; rationals print without the radical term.
impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -&self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadNum({self})")
    }
}

impl FromStr for QuadNum {
    type Err = QuadError;

    /// Accepts sums of signed terms, each a rational `p/q`, a radical
    /// `sqrt(d)`, or a product `p/q*sqrt(d)`, all radicals sharing `d`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| QuadError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, c) in compact.chars().enumerate() {
            if (c == '+' || c == '-') && i > 0 && !current.is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
                negative = c == '-';
            } else if (c == '+' || c == '-') && current.is_empty() {
                if c == '-' {
                    negative = !negative;
                }
            } else {
                current.push(c);
            }
        }
        if current.is_empty() {
            return Err(err("dangling sign"));
        }
        terms.push((negative, current));

        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut field: Option<u64> = None;
        for (negative, term) in terms {
            let (coeff, radicand) = match term.find("sqrt(") {
                Some(pos) => {
                    let inner = term[pos + 5..]
                        .strip_suffix(')')
                        .ok_or_else(|| err("missing ')'"))?;
                    let d: u64 = inner.parse().map_err(|_| err("bad radicand"))?;
                    let prefix = &term[..pos];
                    let coeff = if prefix.is_empty() {
                        BigRational::one()
                    } else {
                        let c = prefix.strip_suffix('*').ok_or_else(|| err("expected '*'"))?;
                        c.parse::<BigRational>().map_err(|_| err("bad coefficient"))?
                    };
                    (coeff, Some(d))
                }
                None => (
                    term.parse::<BigRational>()
                        .map_err(|_| err("bad rational"))?,
                    None,
                ),
            };
            let coeff = if negative { -coeff } else { coeff };
            match radicand {
                None => a += coeff,
                Some(d) => {
                    if let Some(prev) = field {
                        if prev != d {
                            return Err(QuadError::IncompatibleFields(prev, d));
                        }
                    }
                    validate_radicand(d)?;
                    field = Some(d);
                    b += coeff;
                }
            }
        }
        Ok(QuadNum {
            a,
            b,
            d: field.unwrap_or(1),
        })
    }
}

/// Minimal polynomial over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalPoly {
    /// `X - root`
    Linear { root: BigRational },
    /// `X^2 - trace*X + norm`
    Quadratic {
        trace: BigRational,
        norm: BigRational,
    },
}

impl MinimalPoly {
    pub fn degree(&self) -> u32 {
        match self {
            MinimalPoly::Linear { .. } => 1,
            MinimalPoly::Quadratic { .. } => 2,
        }
    }

    /// Coefficients from the constant term up; always monic.
    pub fn coefficients(&self) -> Vec<BigRational> {
        match self {
            MinimalPoly::Linear { root } => vec![-root, BigRational::one()],
            MinimalPoly::Quadratic { trace, norm } => {
                vec![norm.clone(), -trace, BigRational::one()]
            }
        }
    }
}

impl fmt::Display for MinimalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signed = |c: &BigRational| {
            if c.is_negative() {
                format!(" - {}", -c)
            } else {
                format!(" + {c}")
            }
        };
        match self {
            MinimalPoly::Linear { root } => write!(f, "X{}", signed(&-root)),
            MinimalPoly::Quadratic { trace, norm } => {
                write!(f, "X^2")?;
                let lin = -trace;
                if !lin.is_zero() {
                    if lin.is_one() {
                        write!(f, " + X")?;
                    } else if (-&lin).is_one() {
                        write!(f, " - X")?;
                    } else {
                        write!(f, "{}*X", signed(&lin))?;
                    }
                }
                if !norm.is_zero() {
                    write!(f, "{}", signed(norm))?;
                }
                Ok(())
            }
        }
    }
}

/// 2x2 matrix over a real quadratic field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadMatrix {
    pub m11: QuadNum,
    pub m12: QuadNum,
    pub m21: QuadNum,
    pub m22: QuadNum,
}

impl QuadMatrix {
    pub fn new(m11: QuadNum, m12: QuadNum, m21: QuadNum, m22: QuadNum) -> Result<Self, QuadError> {
        let m = QuadMatrix { m11, m12, m21, m22 };
        m.field()?;
        Ok(m)
    }

    pub fn identity() -> Self {
        QuadMatrix {
            m11: 1.into(),
            m12: 0.into(),
            m21: 0.into(),
            m22: 1.into(),
        }
    }

    /// `[[1, t], [0, 1]]`
    pub fn upper_unipotent(t: QuadNum) -> Self {
        QuadMatrix {
            m11: t.integer_like(1),
            m12: t.clone(),
            m21: t.zero_like(),
            m22: t.integer_like(1),
        }
    }

    /// `[[1, 0], [t, 1]]`
    pub fn lower_unipotent(t: QuadNum) -> Self {
        QuadMatrix {
            m11: t.integer_like(1),
            m12: t.zero_like(),
            m21: t.clone(),
            m22: t.integer_like(1),
        }
    }

    fn entries(&self) -> [&QuadNum; 4] {
        [&self.m11, &self.m12, &self.m21, &self.m22]
    }

    /// Common radicand of the entries.
    pub fn field(&self) -> Result<u64, QuadError> {
        let mut d = 1;
        for e in self.entries().into_iter().filter(|e| !e.is_rational()) {
            if d == 1 {
                d = e.d;
            } else if d != e.d {
                return Err(QuadError::IncompatibleFields(d, e.d));
            }
        }
        Ok(d)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, QuadError> {
        let dot = |x: &QuadNum, y: &QuadNum, z: &QuadNum, w: &QuadNum| -> Result<QuadNum, QuadError> {
            x.try_mul(y)?.try_add(&z.try_mul(w)?)
        };
        Ok(QuadMatrix {
            m11: dot(&self.m11, &other.m11, &self.m12, &other.m21)?,
            m12: dot(&self.m11, &other.m12, &self.m12, &other.m22)?,
            m21: dot(&self.m21, &other.m11, &self.m22, &other.m21)?,
            m22: dot(&self.m21, &other.m12, &self.m22, &other.m22)?,
        })
    }

    pub fn trace(&self) -> Result<QuadNum, QuadError> {
        self.m11.try_add(&self.m22)
    }

    pub fn det(&self) -> Result<QuadNum, QuadError> {
        self.m11
            .try_mul(&self.m22)?
            .try_sub(&self.m12.try_mul(&self.m21)?)
    }

    /// Image of a column vector.
    pub fn apply(&self, x: &QuadNum, y: &QuadNum) -> Result<(QuadNum, QuadNum), QuadError> {
        Ok((
            self.m11.try_mul(x)?.try_add(&self.m12.try_mul(y)?)?,
            self.m21.try_mul(x)?.try_add(&self.m22.try_mul(y)?)?,
        ))
    }
}

impl fmt::Display for QuadMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

impl fmt::Debug for QuadMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadMatrix{self}")
    }
}

/// Exact scalars the straight-line flow can run on.
pub trait ExactScalar: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn integer_like(&self, n: i64) -> Self;
    fn add_exact(&self, other: &Self) -> Self;
    fn sub_exact(&self, other: &Self) -> Self;
    fn mul_exact(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn sign(&self) -> Ordering;
    fn approx(&self) -> f64;

    fn cmp_exact(&self, other: &Self) -> Ordering {
        self.sub_exact(other).sign()
    }
    fn is_zero_exact(&self) -> bool {
        self.sign() == Ordering::Equal
    }
}

impl ExactScalar for BigRational {
    fn integer_like(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn add_exact(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_exact(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_exact(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn sign(&self) -> Ordering {
        self.cmp(&BigRational::zero())
    }
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Panics on operands from incompatible fields; callers keep one field.
impl ExactScalar for QuadNum {
    fn integer_like(&self, n: i64) -> Self {
        QuadNum::integer_like(self, n)
    }
    fn add_exact(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_exact(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_exact(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn sign(&self) -> Ordering {
        self.signum()
    }
    fn approx(&self) -> f64 {
        self.to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(text: &str) -> QuadNum {
        text.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r2 = QuadNum::sqrt(2).unwrap();
        assert_eq!(&r2 * &r2, QuadNum::from_integer(2));
        let one_plus = q("1 + sqrt(2)");
        assert_eq!(QuadNum::from_integer(1).try_div(&one_plus).unwrap(), q("-1 + sqrt(2)"));
        let phi = QuadNum::half_one_plus_sqrt(5).unwrap();
        assert_eq!(&phi + &phi.conjugate(), QuadNum::from_integer(1));
    }

    #[test]
    fn errors() {
        assert_eq!(
            QuadNum::sqrt(8).unwrap_err(),
            QuadError::NotSquarefree { d: 8, square: 2, core: 2 }
        );
        assert_eq!(QuadNum::sqrt(1).unwrap_err(), QuadError::RadicandTooSmall(1));
        let r2 = QuadNum::sqrt(2).unwrap();
        let r3 = QuadNum::sqrt(3).unwrap();
        assert_eq!(r2.try_add(&r3).unwrap_err(), QuadError::IncompatibleFields(2, 3));
        assert_eq!(
            r2.try_div(&QuadNum::from_integer(0)).unwrap_err(),
            QuadError::DivisionByZero
        );
        // rationals coerce into any field
        let x = QuadNum::from_parts(3, 1, 0, 1, 5).unwrap();
        assert_eq!(x.try_mul(&r2).unwrap(), q("3*sqrt(2)"));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(QuadNum::from_integer(3).conjugate(), QuadNum::from_integer(3));
        assert_eq!(q("1/2 + 1/2*sqrt(5)").conjugate(), q("1/2 - 1/2*sqrt(5)"));
        assert_eq!(q("-2*sqrt(3)").conjugate(), q("2*sqrt(3)"));
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(QuadNum::from_integer(5).minimal_poly_degree(), 1);
        let r2 = QuadNum::sqrt(2).unwrap().minimal_polynomial();
        assert_eq!(r2.degree(), 2);
        assert_eq!(r2.to_string(), "X^2 - 2");
        // (X - phi)(X - phi') = X^2 - X - 1
        let phi = QuadNum::half_one_plus_sqrt(5).unwrap().minimal_polynomial();
        assert_eq!(phi.coefficients(), vec![ratio(-1, 1), ratio(-1, 1), ratio(1, 1)]);
        assert_eq!(phi.to_string(), "X^2 - X - 1");
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(QuadMatrix::identity().trace().unwrap(), QuadNum::from_integer(2));
        let a = QuadNum::half_one_plus_sqrt(5).unwrap();
        let four_a = &QuadNum::from_integer(4) * &a;
        let upper = QuadMatrix::upper_unipotent(four_a.clone());
        let lower = QuadMatrix::lower_unipotent(four_a.clone());
        let prod = upper.try_mul(&lower).unwrap();
        let sixteen_a2 = &(&four_a * &four_a) + &QuadNum::from_integer(1);
        assert_eq!(prod.m11, sixteen_a2);
        assert_eq!(prod.m12, four_a);
        assert_eq!(prod.m21, four_a);
        assert_eq!(prod.m22, QuadNum::from_integer(1));
        assert_eq!(upper.det().unwrap(), QuadNum::from_integer(1));
        let mixed = QuadMatrix::new(
            QuadNum::sqrt(2).unwrap(),
            QuadNum::sqrt(3).unwrap(),
            0.into(),
            1.into(),
        );
        assert!(mixed.is_err());
    }

    #[test]
    fn ordering() {
        let r2 = QuadNum::sqrt(2).unwrap();
        assert!(r2 > QuadNum::from_parts(141, 100, 0, 1, 2).unwrap());
        assert!(r2 < QuadNum::from_parts(142, 100, 0, 1, 2).unwrap());
        assert_eq!(q("3 - 2*sqrt(2)").signum(), Ordering::Greater);
        assert_eq!(q("-3 + 2*sqrt(2)").signum(), Ordering::Less);
        assert_eq!(q("0").signum(), Ordering::Equal);
    }

    #[test]
    fn text_round_trip() {
        for text in ["1/2 + 1/2*sqrt(5)", "-1 + 1*sqrt(2)", "3/7", "-2*sqrt(3)", "1/3 - 5/2*sqrt(13)"] {
            let x = q(text);
            assert_eq!(q(&x.to_string()), x, "{text}");
        }
        assert_eq!(q("sqrt(2) + 1"), q("1 + 1*sqrt(2)"));
        assert!("sqrt(2) + sqrt(3)".parse::<QuadNum>().is_err());
        assert!("1 +".parse::<QuadNum>().is_err());
        assert!("sqrt(4)".parse::<QuadNum>().is_err());
    }

    fn arb_quad(d: u64) -> impl Strategy<Value = QuadNum> {
        (-20i64..20, 1i64..8, -20i64..20, 1i64..8)
            .prop_map(move |(an, ad, bn, bd)| QuadNum::from_parts(an, ad, bn, bd, d).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (QuadNum, QuadNum, QuadNum)> {
        prop::sample::select(vec![2u64, 3, 5, 7, 13])
            .prop_flat_map(|d| (arb_quad(d), arb_quad(d), arb_quad(d)))
    }

    fn arb_matrix(d: u64) -> impl Strategy<Value = QuadMatrix> {
        (arb_quad(d), arb_quad(d), arb_quad(d), arb_quad(d))
            .prop_map(|(a, b, c, e)| QuadMatrix::new(a, b, c, e).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms((x, y, z) in arb_triple()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.try_inverse().unwrap(), QuadNum::from_integer(1));
                prop_assert_eq!(&(&y / &x) * &x, y.clone());
            }
            let norm = &x * &x.conjugate();
            prop_assert_eq!(norm, QuadNum::from_rational(x.norm()));
        }

        #[test]
        fn conjugation_is_a_ring_homomorphism((x, y, _z) in arb_triple()) {
            prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
            prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        }

        #[test]
        fn trace_is_cyclic((a, b) in prop::sample::select(vec![2u64, 5, 7]).prop_flat_map(|d| (arb_matrix(d), arb_matrix(d)))) {
            prop_assert_eq!(a.try_mul(&b).unwrap().trace().unwrap(), b.try_mul(&a).unwrap().trace().unwrap());
        }

        #[test]
        fn sign_agrees_with_float((x, _y, _z) in arb_triple()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), f.partial_cmp(&0.0).unwrap());
            }
        }

        #[test]
        fn display_round_trips((x, _y, _z) in arb_triple()) {
            prop_assert_eq!(x.to_string().parse::<QuadNum>().unwrap(), x);
        }
    }
}
