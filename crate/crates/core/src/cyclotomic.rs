//! Exact arithmetic in cyclotomic fields.
//!
//! An element of `Q(ζ_n)` is stored as its coordinate vector in the power
//! basis `1, ζ, …, ζ^{φ(n)-1}` of `Q[x]/Φ_n(x)`. Every operation reduces its
//! result modulo `Φ_n`, so for a fixed order the representation is canonical.
//! Operands of different orders are combined in `Q(ζ_lcm)`; results that turn
//! out to be rational are stored with order 1.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default number of decimal digits for [`CyclotomicNumber::embed_complex`].
pub const DEFAULT_PRECISION: u32 = 15;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn euler_phi(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn mobius(n: usize) -> i8 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Returns the coefficients of `Φ_n`, lowest degree first.
///
/// Uses the Möbius-inverted form `Φ_n = Π_{d|n} (x^d - 1)^{μ(n/d)}` of the
/// divisor recurrence `x^n - 1 = Π_{d|n} Φ_d`: multiply in the numerator
/// factors, then divide out the denominator ones exactly.
pub fn cyclotomic_polynomial(n: usize) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut poly = vec![1i64];
    let mut denominators = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => {
                let mut next = vec![0i64; poly.len() + d];
                for (i, &c) in poly.iter().enumerate() {
                    next[i + d] += c;
                    next[i] -= c;
                }
                poly = next;
            }
            -1 => denominators.push(d),
            _ => {}
        }
    }
    for d in denominators {
        // p = q * (x^d - 1)  =>  q[j - d] = p[j] + q[j], top down.
        let top = poly.len() - 1;
        let mut quotient = vec![0i64; top + 1 - d];
        for j in (d..=top).rev() {
            let above = quotient.get(j).copied().unwrap_or(0);
            quotient[j - d] = poly[j] + above;
        }
        debug_assert!((0..d).all(|j| poly[j] == -quotient.get(j).copied().unwrap_or(0)));
        poly = quotient;
    }
    Ok(poly)
}

/// `Φ_n`, computed once per order.
fn cached_cyclotomic(n: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    let p = Arc::new(cyclotomic_polynomial(n).expect("order is positive"));
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

/// Exact element of the cyclotomic field `Q(ζ_order)`.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    order: usize,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    /// Builds an element from power-basis coordinates; `coeffs` must have
    /// length `φ(order)`.
    pub fn new(order: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let expected = euler_phi(order);
        if coeffs.len() != expected {
            return Err(Error::CoefficientLength {
                order,
                expected,
                got: coeffs.len(),
            });
        }
        let mut buf = vec![Rational::zero(); order];
        for (i, c) in coeffs.into_iter().enumerate() {
            buf[i] = c;
        }
        Ok(Self::from_buffer(order, buf))
    }

    pub fn from_rational(value: Rational) -> Self {
        CyclotomicNumber {
            order: 1,
            coeffs: vec![value],
        }
    }

    pub fn from_integer(value: i64) -> Self {
        Self::from_rational(Rational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `ζ_n^e`, with `e` taken modulo `n`.
    pub fn root_of_unity(n: usize, e: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut buf = vec![Rational::zero(); n];
        buf[e.rem_euclid(n as i64) as usize] = Rational::one();
        Ok(Self::from_buffer(n, buf))
    }

    /// Reduces a vector of coefficients of `1, ζ, …, ζ^{n-1}` modulo `Φ_n`.
    fn from_buffer(n: usize, mut buf: Vec<Rational>) -> Self {
        debug_assert_eq!(buf.len(), n);
        let modulus = cached_cyclotomic(n);
        let degree = modulus.len() - 1;
        for i in (degree..n).rev() {
            if buf[i].is_zero() {
                continue;
            }
            let lead = std::mem::replace(&mut buf[i], Rational::zero());
            for (j, &m) in modulus[..degree].iter().enumerate() {
                if m != 0 {
                    buf[i - degree + j] -= &lead * BigInt::from(m);
                }
            }
        }
        buf.truncate(degree);
        let mut value = CyclotomicNumber {
            order: n,
            coeffs: buf,
        };
        value.normalize();
        value
    }

    fn normalize(&mut self) {
        if self.order > 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            let c = self.coeffs.swap_remove(0);
            self.order = 1;
            self.coeffs = vec![c];
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Same element, expressed in `Q(ζ_target)`. `self.order()` must divide
    /// `target`; rational values are returned with order 1 regardless.
    pub fn lift(&self, target: usize) -> Self {
        assert!(
            target > 0 && target % self.order == 0,
            "cannot lift order {} to {}",
            self.order,
            target
        );
        let step = target / self.order;
        let mut buf = vec![Rational::zero(); target];
        for (i, c) in self.coeffs.iter().enumerate() {
            buf[(i * step) % target] += c;
        }
        Self::from_buffer(target, buf)
    }

    fn combine(&self, other: &Self, sign: i8) -> Self {
        let n = self.order.lcm(&other.order);
        let (s1, s2) = (n / self.order, n / other.order);
        let mut buf = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            buf[i * s1] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            if sign > 0 {
                buf[i * s2] += c;
            } else {
                buf[i * s2] -= c;
            }
        }
        Self::from_buffer(n, buf)
    }

    fn product(&self, other: &Self) -> Self {
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let n = self.order.lcm(&other.order);
        let (s1, s2) = (n / self.order, n / other.order);
        let mut buf = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    buf[(i * s1 + j * s2) % n] += a * b;
                }
            }
        }
        Self::from_buffer(n, buf)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm in `Q[x]`
    /// against `Φ_n`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let n = self.order;
        let modulus: Vec<Rational> = cached_cyclotomic(n)
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        let (mut r0, mut r1) = (modulus, poly::trimmed(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly::div_rem(&r0, &r1);
            let s2 = poly::sub(&s0, &poly::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_n is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let mut buf = vec![Rational::zero(); n];
        for (i, s) in s0.into_iter().enumerate() {
            buf[i] = s * &c;
        }
        Ok(Self::from_buffer(n, buf))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Applies the field automorphism `ζ ↦ ζ^k`; `k = -1` is complex
    /// conjugation.
    pub fn galois_conjugate(&self, k: i64) -> Result<Self> {
        let n = self.order;
        let kk = k.rem_euclid(n as i64) as usize;
        if kk.gcd(&n) != 1 {
            return Err(Error::NotAUnit { k, order: n });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let mut buf = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            buf[(i * kk) % n] += c;
        }
        Ok(Self::from_buffer(n, buf))
    }

    pub fn conj(&self) -> Self {
        self.galois_conjugate(-1).expect("-1 is a unit modulo every n")
    }

    /// True when some power `x^{2n}` equals 1, i.e. `x = ±ζ_n^j`.
    pub fn is_root_of_unity(&self) -> bool {
        let e = if self.order % 2 == 0 {
            self.order
        } else {
            2 * self.order
        };
        !self.is_zero() && self.pow(e as i64).map(|p| p.is_one()).unwrap_or(false)
    }

    /// Numeric value under `ζ_n ↦ e^{2πi/n}`.
    ///
    /// Evaluation runs in double precision, so `precision` (decimal digits
    /// after the point) is clamped to `1..=15`; the real and imaginary parts
    /// are rounded to that many digits.
    pub fn embed_complex(&self, precision: u32) -> Complex64 {
        let digits = precision.clamp(1, DEFAULT_PRECISION) as i32;
        let raw = self.embed_raw();
        let scale = 10f64.powi(digits);
        let round = |x: f64| {
            let y = (x * scale).round() / scale;
            if y.is_finite() {
                y + 0.0
            } else {
                x
            }
        };
        Complex64::new(round(raw.re), round(raw.im))
    }

    fn embed_raw(&self) -> Complex64 {
        let n = self.order as f64;
        let mut sum = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = std::f64::consts::TAU * (i as f64) / n;
            let coeff = c.to_f64().unwrap_or(f64::NAN);
            sum += Complex64::new(angle.cos(), angle.sin()) * coeff;
        }
        sum
    }
}

/// Binary field operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &CyclotomicNumber, b: &CyclotomicNumber, op: ArithOp) -> Result<CyclotomicNumber> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// `ω = e^{2πi/3}`.
pub fn omega() -> CyclotomicNumber {
    CyclotomicNumber::root_of_unity(3, 1).unwrap()
}

/// `ζ_7 = e^{2πi/7}`.
pub fn zeta7() -> CyclotomicNumber {
    CyclotomicNumber::root_of_unity(7, 1).unwrap()
}

/// `b = ζ + ζ² + ζ⁴` in `Q(ζ_7)`, the Gauss period over the squares mod 7.
pub fn b() -> CyclotomicNumber {
    [1, 2, 4]
        .into_iter()
        .map(|e| CyclotomicNumber::root_of_unity(7, e).unwrap())
        .sum()
}

/// `b̄ = ζ³ + ζ⁵ + ζ⁶ = -1 - b`.
pub fn b_bar() -> CyclotomicNumber {
    [3, 5, 6]
        .into_iter()
        .map(|e| CyclotomicNumber::root_of_unity(7, e).unwrap())
        .sum()
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            (self - other).is_zero()
        }
    }
}

impl Eq for CyclotomicNumber {}

impl From<i64> for CyclotomicNumber {
    fn from(value: i64) -> Self {
        Self::from_integer(value)
    }
}

impl From<Rational> for CyclotomicNumber {
    fn from(value: Rational) -> Self {
        Self::from_rational(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                $body(self, rhs)
            }
        }
        impl $trait for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                $body(&self, &rhs)
            }
        }
        impl $trait<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CyclotomicNumber, b| a.combine(b, 1));
forward_binop!(Sub, sub, |a: &CyclotomicNumber, b| a.combine(b, -1));
forward_binop!(Mul, mul, |a: &CyclotomicNumber, b| a.product(b));

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl Sum for CyclotomicNumber {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a CyclotomicNumber> for CyclotomicNumber {
    fn sum<I: Iterator<Item = &'a CyclotomicNumber>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

/// Renders as `c0 + c1*z(n)^1 + …`, omitting zero terms.
impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z({})^{i}", self.order)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Parses the [`Display`](fmt::Display) grammar back into a value.
impl FromStr for CyclotomicNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let mut acc = CyclotomicNumber::zero();
        for term in s.split(" + ") {
            let term = term.trim();
            let (coeff, power) = match term.split_once("*z(") {
                Some((c, rest)) => {
                    let (n, e) = rest.split_once(")^").ok_or_else(bad)?;
                    let n: usize = n.parse().map_err(|_| bad())?;
                    let e: i64 = e.parse().map_err(|_| bad())?;
                    (c, CyclotomicNumber::root_of_unity(n, e)?)
                }
                None => (term, CyclotomicNumber::one()),
            };
            let coeff: Rational = coeff.parse().map_err(|_| bad())?;
            acc = acc + power.scale(&coeff);
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_big(x: &BigInt) -> Self {
        x.to_i64()
            .map(IntRepr::Small)
            .unwrap_or_else(|| IntRepr::Big(x.to_string()))
    }

    fn to_big(&self) -> std::result::Result<BigInt, String> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => s.parse().map_err(|_| format!("bad integer `{s}`")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    order: usize,
    coeffs: Vec<[IntRepr; 2]>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Repr {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [IntRepr::from_big(c.numer()), IntRepr::from_big(c.denom())])
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = Repr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|[n, d]| {
                let (n, d) = (n.to_big()?, d.to_big()?);
                if !d.is_positive() {
                    return Err("denominator must be positive".to_string());
                }
                Ok(Rational::new(n, d))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        CyclotomicNumber::new(repr.order, coeffs).map_err(D::Error::custom)
    }
}

/// Dense polynomials over `Q`, lowest degree first, with no trailing zeros.
mod poly {
    use super::Rational;
    use num_traits::Zero;

    pub fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] -= c;
        }
        trimmed(out)
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trimmed(out)
    }

    pub fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rem = a.to_vec();
        let db = b.len() - 1;
        if rem.len() <= db {
            return (Vec::new(), trimmed(rem));
        }
        let lead = b[db].recip();
        let mut quot = vec![Rational::zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead;
            for (j, c) in b.iter().enumerate() {
                rem[i - db + j] -= &q * c;
            }
            quot[i - db] = q;
        }
        rem.truncate(db);
        (trimmed(quot), trimmed(rem))
    }
}
