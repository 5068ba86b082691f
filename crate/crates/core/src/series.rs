//! Truncated formal power series in `q` with exact integer coefficients.
//!
//! A [`QSeries`] carries a truncation order `N`: coefficients of `q^e` for
//! `e < N` are exact, everything at or above `N` is unknown. Binary
//! operations return the smaller of the two orders, so a long chain of
//! products can never claim more precision than its weakest factor.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sign of a [`SignedMonomial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `self^n`.
    pub fn pow(self, n: u32) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            self
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A parameter value `±q^t` (with `t` possibly negative), or zero.
///
/// Every free parameter the identities are checked at is specialized to one
/// of these before it is substituted into a factor `1 - x q^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignedMonomial {
    Zero,
    Monomial { sign: Sign, exp: i64 },
}

impl SignedMonomial {
    /// `q^exp`
    pub fn q_pow(exp: i64) -> Self {
        SignedMonomial::Monomial {
            sign: Sign::Plus,
            exp,
        }
    }

    /// `-q^exp`
    pub fn neg_q_pow(exp: i64) -> Self {
        SignedMonomial::Monomial {
            sign: Sign::Minus,
            exp,
        }
    }

    pub fn new(sign: Sign, exp: i64) -> Self {
        SignedMonomial::Monomial { sign, exp }
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SignedMonomial::Zero)
    }

    pub fn negated(self) -> Self {
        match self {
            SignedMonomial::Zero => SignedMonomial::Zero,
            SignedMonomial::Monomial { sign, exp } => SignedMonomial::Monomial {
                sign: sign.flip(),
                exp,
            },
        }
    }

    /// Multiply by `q^by`.
    pub fn shifted(self, by: i64) -> Self {
        match self {
            SignedMonomial::Zero => SignedMonomial::Zero,
            SignedMonomial::Monomial { sign, exp } => SignedMonomial::Monomial {
                sign,
                exp: exp + by,
            },
        }
    }

    pub fn times(self, other: SignedMonomial) -> Self {
        match (self, other) {
            (
                SignedMonomial::Monomial { sign: s1, exp: e1 },
                SignedMonomial::Monomial { sign: s2, exp: e2 },
            ) => SignedMonomial::Monomial {
                sign: s1.times(s2),
                exp: e1 + e2,
            },
            _ => SignedMonomial::Zero,
        }
    }

    /// `self^n`, with `0^0 = 1`.
    pub fn pow(self, n: u32) -> Self {
        match self {
            _ if n == 0 => SignedMonomial::one(),
            SignedMonomial::Zero => SignedMonomial::Zero,
            SignedMonomial::Monomial { sign, exp } => SignedMonomial::Monomial {
                sign: sign.pow(n),
                exp: exp * n as i64,
            },
        }
    }

    /// The monomial as a series, failing if it is a negative power of `q`.
    pub fn to_series(self, order: u32) -> Result<QSeries> {
        match self {
            SignedMonomial::Zero => Ok(QSeries::zero(order)),
            SignedMonomial::Monomial { sign, exp } => {
                if exp < 0 {
                    return Err(Error::NegativeExponent { exponent: exp });
                }
                Ok(QSeries::monomial(sign.as_i64(), exp as u64, order))
            }
        }
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedMonomial::Zero => write!(f, "0"),
            SignedMonomial::Monomial { sign, exp } => {
                let s = if *sign == Sign::Plus { "" } else { "-" };
                write!(f, "{s}q^{exp}")
            }
        }
    }
}

/// Accepts `0`, `1`, `-1`, `q`, `-q`, `q^3`, `-q^-1` and the like.
impl std::str::FromStr for SignedMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidIdentityParameters(format!("not a signed monomial: `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(SignedMonomial::Zero);
        }
        let (sign, rest) = match t.strip_prefix('-') {
            Some(rest) => (Sign::Minus, rest),
            None => (Sign::Plus, t.strip_prefix('+').unwrap_or(&t)),
        };
        let exp = match rest {
            "1" => 0,
            "q" => 1,
            _ => rest
                .strip_prefix("q^")
                .and_then(|e| e.trim_matches(|c| c == '{' || c == '}').parse().ok())
                .ok_or_else(bad)?,
        };
        Ok(SignedMonomial::new(sign, exp))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<u32, BigInt>,
    order: u32,
}

impl QSeries {
    pub fn zero(order: u32) -> Self {
        QSeries {
            coeffs: BTreeMap::new(),
            order,
        }
    }

    pub fn one(order: u32) -> Self {
        Self::monomial(1, 0, order)
    }

    /// `coeff * q^exp`, which is the zero series when `exp >= order`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: u64, order: u32) -> Self {
        let mut s = Self::zero(order);
        let coeff = coeff.into();
        if exp < order as u64 && !coeff.is_zero() {
            s.coeffs.insert(exp as u32, coeff);
        }
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed and terms at or above `order` are dropped.
    pub fn from_terms<I, C>(terms: I, order: u32) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut coeffs: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e < order {
                *coeffs.entry(e).or_default() += c.into();
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        QSeries { coeffs, order }
    }

    /// Dense coefficients `c_0, c_1, …`; the truncation order is the length.
    pub fn from_dense<C: Into<BigInt>>(dense: Vec<C>) -> Self {
        let order = dense.len() as u32;
        Self::from_terms(
            dense.into_iter().enumerate().map(|(e, c)| (e as u32, c)),
            order,
        )
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficient of `q^e`.
    ///
    /// # Panics
    ///
    /// If `e` is at or above the truncation order.
    pub fn coeff(&self, e: u32) -> BigInt {
        assert!(
            e < self.order,
            "coefficient of q^{e} requested from a series truncated at q^{}",
            self.order
        );
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_dense(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.order as usize];
        for (e, c) in &self.coeffs {
            out[*e as usize] = c.clone();
        }
        out
    }

    /// Lowers the truncation order to `min(self.order, order)`.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        QSeries {
            coeffs: self
                .coeffs
                .range(..order)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            order,
        }
    }

    /// Multiplies by `q^e`. Precision is unchanged: a series exact below
    /// `q^N` times `q^e` is exact below `q^(N+e)`, but we keep `N`.
    pub fn shift(&self, e: u32) -> Self {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(x, _)| (**x as u64 + e as u64) < self.order as u64)
                .map(|(x, c)| (x + e, c.clone()))
                .collect(),
            order: self.order,
        }
    }

    /// Multiplies by `q^e` and claims the precision that buys: the result
    /// is exact below `min(self.order + e, cap)`.
    pub fn shift_extend(&self, e: u32, cap: u32) -> Self {
        let order = (self.order as u64 + e as u64).min(cap as u64) as u32;
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(x, _)| (**x as u64 + e as u64) < order as u64)
                .map(|(x, c)| (x + e, c.clone()))
                .collect(),
            order,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        QSeries {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
            order: self.order,
        }
    }

    /// Multiplies by `1 + c q^e` in linear time.
    pub fn mul_binomial(&self, c: i64, e: u32) -> Self {
        if e >= self.order || c == 0 {
            return self.clone();
        }
        let c = BigInt::from(c);
        if e == 0 {
            return self.scale(&(BigInt::one() + c));
        }
        let mut dense = self.to_dense();
        for i in (e as usize..dense.len()).rev() {
            let add = &dense[i - e as usize] * &c;
            dense[i] += add;
        }
        Self::from_dense(dense)
    }

    /// Divides by `1 + c q^e` in linear time.
    pub fn div_binomial(&self, c: i64, e: u32) -> Result<Self> {
        if e == 0 {
            let d = BigInt::from(1 + c);
            if d.abs().is_one() {
                return Ok(self.scale(&d));
            }
            return Err(Error::NonUnitConstantTerm(d));
        }
        if e >= self.order || c == 0 {
            return Ok(self.clone());
        }
        let c = BigInt::from(c);
        let mut dense = self.to_dense();
        for i in e as usize..dense.len() {
            let sub = &dense[i - e as usize] * &c;
            dense[i] -= sub;
        }
        Ok(Self::from_dense(dense))
    }

    /// Multiplicative inverse by the usual convolution recurrence.
    pub fn invert(&self) -> Result<Self> {
        let c0 = if self.order == 0 {
            BigInt::one()
        } else {
            self.coeff(0)
        };
        if !c0.abs().is_one() {
            return Err(Error::NonUnitConstantTerm(c0));
        }
        let n = self.order as usize;
        let mut out: Vec<BigInt> = vec![BigInt::zero(); n];
        if n == 0 {
            return Ok(Self::zero(0));
        }
        out[0] = c0.clone();
        let tail: Vec<(usize, &BigInt)> = self
            .coeffs
            .range(1..)
            .map(|(e, c)| (*e as usize, c))
            .collect();
        for i in 1..n {
            let mut acc = BigInt::zero();
            for &(j, a) in &tail {
                if j > i {
                    break;
                }
                acc += a * &out[i - j];
            }
            // c0 is ±1, so dividing by it is multiplying by it
            out[i] = -(acc * &c0);
        }
        Ok(Self::from_dense(out))
    }

    /// `true` iff the coefficients of `q^0 … q^(upto-1)` agree.
    pub fn eq_upto(&self, other: &QSeries, upto: u32) -> Result<bool> {
        Ok(self.first_divergence(other, upto)?.is_none())
    }

    /// Smallest exponent below `upto` where the two series differ.
    pub fn first_divergence(&self, other: &QSeries, upto: u32) -> Result<Option<u32>> {
        let available = self.order.min(other.order);
        if available < upto {
            return Err(Error::InsufficientOrder {
                requested: upto,
                available,
            });
        }
        let a = self.coeffs.range(..upto);
        let b = other.coeffs.range(..upto);
        let mut a = a.peekable();
        let mut b = b.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ok(None),
                (Some((e, _)), None) | (None, Some((e, _))) => return Ok(Some(**e)),
                (Some((ea, ca)), Some((eb, cb))) => {
                    if ea != eb {
                        return Ok(Some((**ea).min(**eb)));
                    }
                    if ca != cb {
                        return Ok(Some(**ea));
                    }
                    a.next();
                    b.next();
                }
            }
        }
    }

    /// Substitutes `q -> q^d`; a series exact below `q^N` becomes exact
    /// below `q^(dN)`, capped at `order`.
    pub fn dilate(&self, d: u32, order: u32) -> Self {
        assert!(d >= 1, "dilation factor must be positive");
        let order = order.min(self.order.saturating_mul(d));
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(e, _)| (**e as u64) * (d as u64) < order as u64)
                .map(|(e, c)| (e * d, c.clone())),
            order,
        )
    }
}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        let mut coeffs = self.truncate(order).coeffs;
        for (e, c) in rhs.coeffs.range(..order) {
            let slot = coeffs.entry(*e).or_default();
            *slot += c;
            if slot.is_zero() {
                coeffs.remove(e);
            }
        }
        QSeries { coeffs, order }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        let mut acc = vec![BigInt::zero(); order as usize];
        for (i, a) in self.coeffs.range(..order) {
            for (j, b) in rhs.coeffs.range(..order - i) {
                acc[(i + j) as usize] += a * b;
            }
        }
        QSeries::from_dense(acc)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
            order: self.order,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

/// Terms in ascending exponent as `c*q^e`, e.g. `1*q^0 - 1*q^1 - 1*q^2`.
impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, _) => write!(f, "{c}*q^{e}")?,
                (_, false) => write!(f, " + {c}*q^{e}")?,
                (_, true) => write!(f, " - {}*q^{e}", -c)?,
            }
        }
        Ok(())
    }
}

/// The factor `1 - x q^e` is only admissible when `x q^e` is a
/// non-negative power of `q`. Returns the `(coefficient, exponent)` of the
/// `1 + c q^p` form, or `None` for `x = 0`.
pub(crate) fn factor_term(x: SignedMonomial, e: i64) -> Result<Option<(i64, i64)>> {
    match x {
        SignedMonomial::Zero => Ok(None),
        SignedMonomial::Monomial { sign, exp } => {
            let p = exp + e;
            if p < 0 {
                return Err(Error::NegativeExponent { exponent: p });
            }
            Ok(Some((-sign.as_i64(), p)))
        }
    }
}

/// `(x; q^step)_n = prod_{j<n} (1 - x q^{j*step})`, truncated at `order`.
pub fn poch_finite(x: SignedMonomial, step: u32, n: u32, order: u32) -> Result<QSeries> {
    let mut out = QSeries::one(order);
    for j in 0..n {
        if let Some((c, p)) = factor_term(x, j as i64 * step as i64)? {
            if p < order as i64 {
                out = out.mul_binomial(c, p as u32);
            }
        }
    }
    Ok(out)
}

/// `(x; q^step)_inf`, exact below `q^order`. Needs `x = ±q^t` with `t >= 1`.
pub fn poch_infinite(x: SignedMonomial, step: u32, order: u32) -> Result<QSeries> {
    let SignedMonomial::Monomial { exp, .. } = x else {
        return Ok(QSeries::one(order));
    };
    if exp < 1 || step == 0 {
        return Err(Error::NonConvergentProduct {
            exponent: exp,
            step,
        });
    }
    let mut out = QSeries::one(order);
    let mut j = 0i64;
    while exp + j * (step as i64) < order as i64 {
        let (c, p) = factor_term(x, j * step as i64)?.expect("nonzero monomial");
        out = out.mul_binomial(c, p as u32);
        j += 1;
    }
    Ok(out)
}

/// `1 / (x; q^step)_n`, by successive division rather than inversion.
pub fn poch_finite_inv(x: SignedMonomial, step: u32, n: u32, order: u32) -> Result<QSeries> {
    let mut out = QSeries::one(order);
    for j in 0..n {
        if let Some((c, p)) = factor_term(x, j as i64 * step as i64)? {
            if p < order as i64 {
                out = out.div_binomial(c, p as u32)?;
            }
        }
    }
    Ok(out)
}

/// `1 / (x; q^step)_inf`.
pub fn poch_infinite_inv(x: SignedMonomial, step: u32, order: u32) -> Result<QSeries> {
    let SignedMonomial::Monomial { exp, .. } = x else {
        return Ok(QSeries::one(order));
    };
    if exp < 1 || step == 0 {
        return Err(Error::NonConvergentProduct {
            exponent: exp,
            step,
        });
    }
    let mut out = QSeries::one(order);
    let mut j = 0i64;
    while exp + j * (step as i64) < order as i64 {
        let (c, p) = factor_term(x, j * step as i64)?.expect("nonzero monomial");
        out = out.div_binomial(c, p as u32)?;
        j += 1;
    }
    Ok(out)
}

/// `1 / (q^{r_1}, …, q^{r_j}; q^modulus)_inf`: the generating function of
/// partitions into parts congruent to one of the residues.
pub fn residue_product_inv(residues: &[u32], modulus: u32, order: u32) -> Result<QSeries> {
    let mut out = QSeries::one(order);
    for &r in residues {
        out = &out * &poch_infinite_inv(SignedMonomial::q_pow(r as i64), modulus, order)?;
    }
    Ok(out)
}
