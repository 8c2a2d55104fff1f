//! Exact arithmetic in the ring Z[1/√2, ω] with ω = e^{iπ/4}.
//!
//! Every element is stored as `(a + bω + cω² + dω³) / √2^k` with integer
//! coefficients and the smallest possible `k`. Since ω⁴ = −1, the four powers
//! of ω form an integral basis of Z[ω], and √2 = ω − ω³.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("value has a nonzero imaginary part")]
    NotReal,
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact element of Z[1/√2, ω] in canonical form.
///
/// Canonical means `k == 0` or the numerator is not divisible by √2 in Z[ω].
/// Zero is always `(0, 0, 0, 0; 0)`, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingScalar {
    coeffs: [BigInt; 4],
    k: u32,
}

/// Multiplies a Z[ω] numerator by √2 = ω − ω³.
fn times_sqrt2([a, b, c, d]: [BigInt; 4]) -> [BigInt; 4] {
    [&b - &d, &a + &c, b + d, c - a]
}

/// Divides a Z[ω] numerator by √2 if it is divisible.
///
/// `a + bω + cω² + dω³` is a multiple of √2 iff `a ≡ c` and `b ≡ d` (mod 2).
fn div_sqrt2(n: &[BigInt; 4]) -> Option<[BigInt; 4]> {
    let [a, b, c, d] = n;
    if (a - c).is_odd() || (b - d).is_odd() {
        return None;
    }
    let two = BigInt::from(2);
    Some([
        (b - d) / &two,
        (a + c) / &two,
        (b + d) / &two,
        (c - a) / &two,
    ])
}

impl RingScalar {
    /// Builds `(a + bω + cω² + dω³) / √2^k`, reducing to canonical form.
    pub fn new(coeffs: [BigInt; 4], k: u32) -> Self {
        let mut s = RingScalar { coeffs, k };
        s.canonicalize();
        s
    }

    pub fn from_ints(coeffs: [i64; 4], k: u32) -> Self {
        Self::new(coeffs.map(BigInt::from), k)
    }

    pub fn zero() -> Self {
        RingScalar {
            coeffs: Default::default(),
            k: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        RingScalar {
            coeffs: [n.into(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            k: 0,
        }
    }

    pub fn omega() -> Self {
        Self::from_ints([0, 1, 0, 0], 0)
    }

    /// The imaginary unit ω².
    pub fn i() -> Self {
        Self::from_ints([0, 0, 1, 0], 0)
    }

    pub fn sqrt2() -> Self {
        Self::from_ints([0, 1, 0, -1], 0)
    }

    pub fn inv_sqrt2() -> Self {
        Self::from_ints([1, 0, 0, 0], 1)
    }

    /// (1/√2)^k.
    pub fn inv_sqrt2_pow(k: u32) -> Self {
        Self::from_ints([1, 0, 0, 0], k)
    }

    /// ω^e, with `e` taken modulo 8.
    pub fn omega_pow(e: i64) -> Self {
        Self::one().mul_omega_pow(e)
    }

    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    /// Exponent of the √2 denominator.
    pub fn sqrt2_exponent(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.k == 0 && self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn canonicalize(&mut self) {
        if self.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 {
            match div_sqrt2(&self.coeffs) {
                Some(q) => {
                    self.coeffs = q;
                    self.k -= 1;
                }
                None => break,
            }
        }
    }

    /// Numerator rescaled to denominator √2^k (k ≥ self.k).
    fn numerator_at(&self, k: u32) -> [BigInt; 4] {
        let mut n = self.coeffs.clone();
        for _ in self.k..k {
            n = times_sqrt2(n);
        }
        n
    }

    /// Multiplication by ω^e is a signed rotation of the coefficients.
    pub fn mul_omega_pow(&self, e: i64) -> Self {
        let e = e.rem_euclid(8) as usize;
        let mut out: [BigInt; 4] = Default::default();
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = i + e;
            let (idx, neg) = (j % 4, (j / 4) % 2 == 1);
            out[idx] = if neg { -c } else { c.clone() };
        }
        RingScalar {
            coeffs: out,
            k: self.k,
        }
    }

    /// Division by √2 (exact, always defined).
    pub fn div_sqrt2(&self) -> Self {
        Self::new(self.coeffs.clone(), self.k + 1)
    }

    /// Complex conjugate: ω ↦ ω⁻¹ = −ω³.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.coeffs;
        RingScalar {
            coeffs: [a.clone(), -d, -c, -b],
            k: self.k,
        }
    }

    /// |x|² as an exact real.
    pub fn norm_sqr(&self) -> RealValue {
        (self * &self.conj())
            .to_real()
            .expect("x·conj(x) is always real")
    }

    /// Views a self-conjugate element as `p + q√2` with dyadic `p`, `q`.
    pub fn to_real(&self) -> Result<RealValue, RingError> {
        let [a, b, c, d] = &self.coeffs;
        // Self-conjugate iff c = 0 and d = −b; the value is then (a + b√2)/√2^k.
        if !c.is_zero() || *d != -b {
            return Err(RingError::NotReal);
        }
        let m = self.k / 2;
        Ok(if self.k.is_multiple_of(2) {
            RealValue {
                p: Dyadic::new(a.clone(), m),
                q: Dyadic::new(b.clone(), m),
            }
        } else {
            // (a + b√2)/(√2·2^m) = b/2^m + (a/2^{m+1})√2
            RealValue {
                p: Dyadic::new(b.clone(), m),
                q: Dyadic::new(a.clone(), m + 1),
            }
        })
    }

    /// Floating-point approximation `(re, im)` for display only.
    pub fn approx(&self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        let [a, b, c, d] = &self.coeffs;
        let scale = h.powi(self.k as i32);
        let re = f(a) + h * f(b) - h * f(d);
        let im = f(c) + h * f(b) + h * f(d);
        (re * scale, im * scale)
    }
}

impl Default for RingScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.coeffs;
        write!(f, "({a} + {b}*w + {c}*w^2 + {d}*w^3)/sqrt2^{}", self.k)
    }
}

impl fmt::Debug for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &RingScalar {
    type Output = RingScalar;
    fn add(self, rhs: &RingScalar) -> RingScalar {
        let k = self.k.max(rhs.k);
        let x = self.numerator_at(k);
        let y = rhs.numerator_at(k);
        let [x0, x1, x2, x3] = x;
        let [y0, y1, y2, y3] = y;
        RingScalar::new([x0 + y0, x1 + y1, x2 + y2, x3 + y3], k)
    }
}

impl Sub for &RingScalar {
    type Output = RingScalar;
    fn sub(self, rhs: &RingScalar) -> RingScalar {
        self + &(-rhs)
    }
}

impl Neg for &RingScalar {
    type Output = RingScalar;
    fn neg(self) -> RingScalar {
        RingScalar {
            coeffs: self.coeffs.clone().map(|c| -c),
            k: self.k,
        }
    }
}

impl Mul for &RingScalar {
    type Output = RingScalar;
    fn mul(self, rhs: &RingScalar) -> RingScalar {
        let mut out: [BigInt; 4] = Default::default();
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let prod = x * y;
                let e = i + j;
                // ω^4 = −1
                if e < 4 {
                    out[e] += prod;
                } else {
                    out[e - 4] -= prod;
                }
            }
        }
        RingScalar::new(out, self.k + rhs.k)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RingScalar {
            type Output = RingScalar;
            fn $m(self, rhs: RingScalar) -> RingScalar { (&self).$m(&rhs) }
        }
        impl $tr<&RingScalar> for RingScalar {
            type Output = RingScalar;
            fn $m(self, rhs: &RingScalar) -> RingScalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for RingScalar {
    type Output = RingScalar;
    fn neg(self) -> RingScalar {
        -&self
    }
}

impl std::iter::Sum for RingScalar {
    fn sum<I: Iterator<Item = RingScalar>>(iter: I) -> Self {
        iter.fold(RingScalar::zero(), |acc, x| acc + x)
    }
}

/// A dyadic rational `num / 2^exp` in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        if d.num.is_zero() {
            d.exp = 0;
        }
        while d.exp > 0 && d.num.is_even() {
            d.num /= 2;
            d.exp -= 1;
        }
        d
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.num.is_positive() {
            1
        } else if self.num.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64().unwrap_or(f64::NAN) / 2f64.powi(self.exp as i32)
    }

    fn scaled_to(&self, exp: u32) -> BigInt {
        &self.num << (exp - self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.scaled_to(e) + rhs.scaled_to(e), e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.scaled_to(e) - rhs.scaled_to(e), e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled_to(e).cmp(&other.scaled_to(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A real element `p + q√2` of Z[1/√2, ω] with dyadic `p`, `q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RealValue {
    pub p: Dyadic,
    pub q: Dyadic,
}

impl RealValue {
    pub fn new(p: Dyadic, q: Dyadic) -> Self {
        RealValue { p, q }
    }

    pub fn zero() -> Self {
        RealValue::new(Dyadic::from_int(0), Dyadic::from_int(0))
    }

    pub fn from_rational(p: Dyadic) -> Self {
        RealValue::new(p, Dyadic::from_int(0))
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Exact sign of `p + q√2`.
    pub fn signum(&self) -> i32 {
        let (sp, sq) = (self.p.signum(), self.q.signum());
        if sp == 0 || sq == 0 || sp == sq {
            return if sp != 0 { sp } else { sq };
        }
        // Opposite signs: compare p² with 2q².
        let p2 = &self.p * &self.p;
        let q2 = &(&self.q * &self.q) * &Dyadic::from_int(2);
        match p2.cmp(&q2) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64() + self.q.to_f64() * std::f64::consts::SQRT_2
    }

    pub fn to_scalar(&self) -> RingScalar {
        let e = self.p.exp.max(self.q.exp);
        // (P + Q√2) / 2^e = (P + Q√2)/√2^{2e}
        let p = self.p.scaled_to(e);
        let q = self.q.scaled_to(e);
        RingScalar::new([p, q.clone(), BigInt::zero(), -q], 2 * e)
    }
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt2", self.p, self.q)
    }
}

/// Whether `x / y` is rational.
///
/// With `x = p₁ + q₁√2` and `y = p₂ + q₂√2`, the ratio equals
/// `(p₁ + q₁√2)(p₂ − q₂√2) / (p₂² − 2q₂²)`, whose √2 part vanishes iff
/// `q₁p₂ − p₁q₂ = 0`.
pub fn ratio_is_rational(x: &RealValue, y: &RealValue) -> Result<bool, RingError> {
    if y.is_zero() {
        return Err(RingError::DivisionByZero);
    }
    Ok((&x.q * &y.p) == (&x.p * &y.q))
}
