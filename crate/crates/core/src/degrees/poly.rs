//! Exact univariate polynomials over the integers, plus a thin rational
//! wrapper for degrees that carry a constant denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division: leading coefficient {lead} does not divide {coeff}")]
    Inexact { lead: String, coeff: String },
    #[error("nonzero remainder {0}")]
    NonzeroRemainder(String),
    #[error("coefficient does not fit in 128 bits")]
    CoefficientOverflow,
}

/// Polynomial with integer coefficients, lowest degree first.
///
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Poly::monomial(1, 1)
    }

    pub fn constant(c: i64) -> Self {
        Poly::from_coeffs(&[c])
    }

    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        Poly::from_big(coeffs)
    }

    /// Builds from coefficients listed lowest degree first.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_big(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `x^k - 1`, the workhorse of order formulas.
    pub fn x_pow_minus_one(k: usize) -> Self {
        Poly::monomial(1, k) - Poly::one()
    }

    pub fn x_pow_plus_one(k: usize) -> Self {
        Poly::monomial(1, k) + Poly::one()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x -> c*x`.
    pub fn scale_arg(&self, c: i64) -> Poly {
        let c = BigInt::from(c);
        let mut f = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &f);
            f *= &c;
        }
        Poly::from_big(out)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Evaluation narrowed to `i128`; `None` on overflow.
    pub fn eval_i128(&self, x: i64) -> Option<i128> {
        self.eval_i64(x).to_i128()
    }

    /// Euclidean division. Every step must divide exactly by the leading
    /// coefficient of `d`, so monic divisors always succeed.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = d.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = rem[top].clone();
            if c.is_zero() {
                rem.pop();
                continue;
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return Err(PolyError::Inexact {
                    lead: lead.to_string(),
                    coeff: c.to_string(),
                });
            }
            let shift = top - dd;
            for (k, dc) in d.coeffs.iter().enumerate() {
                rem[shift + k] -= &q * dc;
            }
            quot[shift] = q;
            rem.pop();
        }
        Ok((Poly::from_big(quot), Poly::from_big(rem)))
    }

    /// Exact quotient; fails on a nonzero remainder.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NonzeroRemainder(r.to_string()))
        }
    }

    pub fn reduce_mod(&self, m: &Poly) -> Result<Poly, PolyError> {
        Ok(self.div_rem(m)?.1)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        matches!(other.div_rem(self), Ok((_, r)) if r.is_zero())
    }

    /// Largest `k` with `x^k` dividing the polynomial (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Splits `x^k * g(x)` with `g(0) != 0`.
    pub fn split_x_power(&self) -> (usize, Poly) {
        let k = self.valuation();
        (k, Poly::from_big(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }

    /// gcd of the coefficients, always non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn to_i128_coeffs(&self) -> Result<Vec<i128>, PolyError> {
        self.coeffs
            .iter()
            .map(|c| c.to_i128().ok_or(PolyError::CoefficientOverflow))
            .collect()
    }

    /// Renders with the given indeterminate name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render("x"))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = self.to_i128_coeffs().map_err(serde::ser::Error::custom)?;
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<i128> = Vec::deserialize(d)?;
        Ok(Poly::from_big(v.into_iter().map(BigInt::from).collect()))
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], sign: i8) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_default();
            let y = b.get(k).cloned().unwrap_or_default();
            if sign >= 0 {
                x + y
            } else {
                x - y
            }
        })
        .collect()
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::from_big(add_coeffs(&self.coeffs, &rhs.coeffs, 1))
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::from_big(add_coeffs(&self.coeffs, &rhs.coeffs, -1))
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_big(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_big(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Product of a list of factors.
pub fn product<'a>(factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
    factors.into_iter().fold(Poly::one(), |acc, f| &acc * f)
}

/// `numerator / denominator` with a positive integer denominator, kept in
/// lowest terms. Used for the degrees that carry a factor 1/2 or 1/4.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatPoly {
    num: Poly,
    den: BigInt,
}

impl RatPoly {
    pub fn new(num: Poly, den: i64) -> Self {
        assert!(den > 0, "denominator must be positive");
        RatPoly::normalized(num, BigInt::from(den))
    }

    fn normalized(num: Poly, den: BigInt) -> Self {
        let g = num.content().gcd(&den);
        if g.is_zero() || g.is_one() {
            let den = if num.is_zero() { BigInt::one() } else { den };
            return RatPoly { num, den };
        }
        let num = Poly::from_big(num.coeffs.iter().map(|c| c / &g).collect());
        RatPoly { num, den: den / g }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// The underlying integer polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let den = self.den.lcm(&other.den);
        let a = scale(&self.num, &(&den / &self.den));
        let b = scale(&other.num, &(&den / &other.den));
        RatPoly::normalized(a + b, den)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.negated())
    }

    pub fn negated(&self) -> RatPoly {
        RatPoly {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatPoly {
        RatPoly::normalized(&self.num * p, self.den.clone())
    }

    /// Exact value at `x`, failing if the value is not an integer.
    pub fn eval_integer(&self, x: i64) -> Option<BigInt> {
        let (q, r) = self.num.eval_i64(x).div_rem(&self.den);
        r.is_zero().then_some(q)
    }

    /// Proves the polynomial takes integer values on every integer
    /// `x ≡ residue (mod modulus)`.
    ///
    /// `num(x) mod den` is periodic in `x` with period `den`, so checking
    /// one full period of the combined progression settles all of them.
    pub fn integer_valued_on(&self, residue: u64, modulus: u64) -> bool {
        let den = self.den.to_u64().expect("small denominator");
        let period = num_integer::lcm(den, modulus.max(1));
        (0..period)
            .filter(|x| x % modulus.max(1) == residue % modulus.max(1))
            .all(|x| (self.num.eval_i64(x as i64) % &self.den).is_zero())
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.render(var)
        } else {
            format!("({})/{}", self.num.render(var), self.den)
        }
    }
}

impl From<Poly> for RatPoly {
    fn from(p: Poly) -> Self {
        RatPoly {
            num: p,
            den: BigInt::one(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RatPolyRepr {
    numerator: Poly,
    denominator: u64,
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let denominator = self
            .den
            .to_u64()
            .ok_or_else(|| serde::ser::Error::custom("denominator too large"))?;
        RatPolyRepr {
            numerator: self.num.clone(),
            denominator,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatPolyRepr::deserialize(d)?;
        if r.denominator == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RatPoly::normalized(r.numerator, BigInt::from(r.denominator)))
    }
}

fn scale(p: &Poly, c: &BigInt) -> Poly {
    Poly::from_big(p.coeffs.iter().map(|a| a * c).collect())
}

/// Shorthand used by the embedded tables: the indeterminate `p` (or `t`).
pub fn var() -> Poly {
    Poly::x()
}

/// `c * x^k` shorthand for table literals.
pub fn mono(c: i64, k: usize) -> Poly {
    Poly::monomial(c, k)
}

/// Polynomial from (coefficient, exponent) pairs.
pub fn terms(t: &[(i64, usize)]) -> Poly {
    t.iter()
        .fold(Poly::zero(), |acc, &(c, k)| acc + Poly::monomial(c, k))
}
