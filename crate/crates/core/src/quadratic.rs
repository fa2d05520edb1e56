//! Exact rationals and numbers `a + b√d` of a real quadratic field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{OrderError, Result};

/// Exact rational. Arithmetic overflow panics (overflow checks are enabled
/// in every profile), so a result is never silently wrong.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || OrderError::Parse(format!("invalid rational {:?}", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(rat(n, d))
        }
        None => Ok(int(s.parse().map_err(|_| bad())?)),
    }
}

/// Largest `k` with `k² ≤ n`.
fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// `Some(r)` with `r ≥ 0` and `r² = q` when `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (*q.numer(), *q.denom());
    let (rn, rd) = (isqrt(n), isqrt(d));
    (rn * rn == n && rd * rd == d).then(|| rat(rn, rd))
}

/// Square-free part of a positive integer.
pub fn squarefree_part(mut n: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        while n % (p * p) == 0 {
            n /= p * p;
        }
        if n % p == 0 {
            out *= p;
            n /= p;
        }
        p += 1;
    }
    out * n
}

/// `a + b√d` with `d` square-free and greater than one. A value with `b = 0`
/// is an ordinary rational and combines with any field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRat {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadRat {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        assert!(d > 1 && squarefree_part(d) == d, "d must be square-free and > 1");
        QuadRat { a, b, d }.normalized()
    }

    pub fn rational(a: Rational) -> Self {
        QuadRat {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i128) -> Self {
        QuadRat::rational(int(n))
    }

    /// `√d` itself.
    pub fn sqrt(d: u64) -> Self {
        QuadRat::new(Rational::zero(), Rational::one(), d)
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 0;
        }
        self
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The radicand, or `None` for a rational value.
    pub fn field(&self) -> Option<u64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common_field(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (l, r) if l == r => Ok(l),
            (l, r) => Err(OrderError::FieldMismatch { left: l, right: r }),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(QuadRat {
            a: self.a + other.a,
            b: self.b + other.b,
            d,
        }
        .normalized())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let dd = int(d as i128);
        Ok(QuadRat {
            a: self.a * other.a + dd * self.b * other.b,
            b: self.a * other.b + self.b * other.a,
            d,
        }
        .normalized())
    }

    pub fn conjugate(&self) -> Self {
        QuadRat {
            a: self.a,
            b: -self.b,
            d: self.d,
        }
    }

    /// `a² − d b²`.
    pub fn norm(&self) -> Rational {
        self.a * self.a - int(self.d as i128) * self.b * self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(OrderError::SingularMatrix);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(QuadRat {
            a: c.a / n,
            b: c.b / n,
            d: self.d,
        }
        .normalized())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadRat {
            a: self.a * r,
            b: self.b * r,
            d: self.d,
        }
        .normalized()
    }

    /// Exact sign: `a² ` against `d b²` when `a` and `b` disagree in sign.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                // Opposite signs: the larger of |a| and |b|√d wins.
                match (self.a * self.a).cmp(&(int(self.d as i128) * self.b * self.b)) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// The `"a,b"` text form.
    pub fn to_pair_string(&self) -> String {
        format!("{},{}", format_rational(&self.a), format_rational(&self.b))
    }

    /// Parses `"a,b"` (meaning `a + b√d`) or a plain rational `"a"`.
    pub fn parse_pair(s: &str, d: u64) -> Result<Self> {
        match s.split_once(',') {
            Some((a, b)) => Ok(QuadRat::new(parse_rational(a)?, parse_rational(b)?, d)),
            None => Ok(QuadRat::rational(parse_rational(s)?)),
        }
    }

    /// Approximate value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rational| *r.numer() as f64 / *r.denom() as f64;
        f(&self.a) + f(&self.b) * (self.d as f64).sqrt()
    }
}

impl PartialOrd for QuadRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_add(&-other.clone()).ok().map(|diff| diff.signum())
    }
}

impl Add for QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: QuadRat) -> QuadRat {
        self.try_add(&rhs).expect("quadratic field mismatch")
    }
}

impl Sub for QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: QuadRat) -> QuadRat {
        self.try_add(&-rhs).expect("quadratic field mismatch")
    }
}

impl Mul for QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: QuadRat) -> QuadRat {
        self.try_mul(&rhs).expect("quadratic field mismatch")
    }
}

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl fmt::Display for QuadRat {
    /// `1+√2`, `-√2`, `3/2-1/2√2`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let root = format!("√{}", self.d);
        let coeff = |b: &Rational| -> String {
            let m = b.abs();
            if m.is_one() {
                root.clone()
            } else {
                format!("{}{}", format_rational(&m), root)
            }
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            return write!(f, "{}{}", sign, coeff(&self.b));
        }
        let op = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}", format_rational(&self.a), op, coeff(&self.b))
    }
}

/// Greatest common divisor of a list of integers (zero for an empty list).
pub fn gcd_all(values: impl IntoIterator<Item = i128>) -> i128 {
    values.into_iter().fold(0, |acc, v| acc.gcd(&v))
}
