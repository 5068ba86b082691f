//! The registry of sum/product identities, each able to build both sides
//! as truncated series.
//!
//! Identities with free parameters `a`, `b` are checked at signed-monomial
//! values; the restricted families in `r, s, k` are the partition-theoretic
//! forms that the unrestricted ones are derived from.

use std::fmt;

use crate::bivariate::{qbinomial_lhs, qbinomial_rhs, BivariateSeries};
use crate::error::{Error, Result};
use crate::series::{
    poch_finite, poch_finite_inv, poch_infinite, poch_infinite_inv, residue_product_inv, QSeries,
    Sign, SignedMonomial,
};

/// Default `z`-order for the bivariate q-Binomial check.
pub const DEFAULT_Z_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// `sum_n (a;q)_n z^n / (q;q)_n = (az;q)_inf / (z;q)_inf`, as series in `z`.
    Qbinomial {
        a: SignedMonomial,
        z_order: usize,
    },
    /// `sum_n (-q^s;q^k)_n q^{(r+k)n} / (q^k;q^k)_n
    ///  = (-q^{s+r+k};q^k)_inf / (q^{r+k};q^k)_inf`.
    Rskeq {
        r: u32,
        s: u32,
        k: u32,
    },
    /// `sum_n (-a;q)_n b^n q^{n(n+1)/2} / (q;q)_n
    ///  = (-bq;q)_inf sum_n (ab)^n q^{n^2} / (q,-bq;q)_n`.
    Hh {
        a: SignedMonomial,
        b: SignedMonomial,
    },
    /// `sum_n (-q^s;q^k)_n q^{rn + kn(n+1)/2} / (q^k;q^k)_n
    ///  = (-q^{r+k};q^k)_inf sum_n q^{(s+r)n + kn^2} / (q^k,-q^{r+k};q^k)_n`.
    Hhk {
        r: u32,
        s: u32,
        k: u32,
    },
    /// `sum_n a^n q^{n^2+n} / (q;q)_n
    ///  = (-aq^2;q^2)_inf sum_n a^n q^{n^2+2n} / (q^2,-aq^2;q^2)_n`.
    E151a {
        a: SignedMonomial,
    },
    /// Same left side, `= (-aq^3;q^2)_inf sum_n a^n q^{n^2+n} / (q^2,-aq^3;q^2)_n`.
    E151b {
        a: SignedMonomial,
    },
    /// `sum_n q^{rn + k(n^2+n)} / (q^k;q^k)_n
    ///  = (-q^{r+2k};q^{2k})_inf sum_n q^{rn + k(n^2+2n)} / (q^{2k},-q^{r+2k};q^{2k})_n`.
    E151ak {
        r: u32,
        k: u32,
    },
    /// `(-bq;q)_inf sum_n a^n q^{n(n+1)/2} / (q,-bq;q)_n` is symmetric in `a, b`.
    Symeq {
        a: SignedMonomial,
        b: SignedMonomial,
    },
    /// `(-q^{r+k};q^k)_inf sum_n q^{sn + kn(n+1)/2} / (q^k,-q^{r+k};q^k)_n`
    /// is symmetric in `r, s`.
    Symeqk {
        r: u32,
        s: u32,
        k: u32,
    },
    S14,
    S16,
    S94,
    S18,
    S20,
    S99,
    S31,
    S32,
    S33,
}

/// Parameters as they arrive from a command line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IdentityParams {
    pub r: Option<u32>,
    pub s: Option<u32>,
    pub k: Option<u32>,
    pub a: Option<SignedMonomial>,
    pub b: Option<SignedMonomial>,
    pub z_order: Option<usize>,
}

/// Both sides of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sides {
    Univariate(QSeries, QSeries),
    Bivariate(BivariateSeries, BivariateSeries),
}

const TAGS: &[&str] = &[
    "QBINOMIAL",
    "RSKEQ",
    "HH",
    "HHK",
    "E151A",
    "E151B",
    "E151AK",
    "SYMEQ",
    "SYMEQK",
    "S14",
    "S16",
    "S94",
    "S18",
    "S20",
    "S99",
    "S31",
    "S32",
    "S33",
];

impl IdentityId {
    pub fn tags() -> &'static [&'static str] {
        TAGS
    }

    pub fn tag(&self) -> &'static str {
        use IdentityId::*;
        match self {
            Qbinomial { .. } => "QBINOMIAL",
            Rskeq { .. } => "RSKEQ",
            Hh { .. } => "HH",
            Hhk { .. } => "HHK",
            E151a { .. } => "E151A",
            E151b { .. } => "E151B",
            E151ak { .. } => "E151AK",
            Symeq { .. } => "SYMEQ",
            Symeqk { .. } => "SYMEQK",
            S14 => "S14",
            S16 => "S16",
            S94 => "S94",
            S18 => "S18",
            S20 => "S20",
            S99 => "S99",
            S31 => "S31",
            S32 => "S32",
            S33 => "S33",
        }
    }

    /// Builds an identity from its tag, filling unspecified parameters
    /// with a representative default, and validates the domain.
    pub fn from_tag(tag: &str, p: IdentityParams) -> Result<IdentityId> {
        use IdentityId::*;
        let q = SignedMonomial::q_pow;
        let (r, s, k) = (p.r.unwrap_or(1), p.s.unwrap_or(2), p.k);
        let id = match tag.to_ascii_uppercase().as_str() {
            "QBINOMIAL" => Qbinomial {
                a: p.a.unwrap_or(q(2)),
                z_order: p.z_order.unwrap_or(DEFAULT_Z_ORDER),
            },
            "RSKEQ" => Rskeq {
                r,
                s,
                k: k.unwrap_or(4),
            },
            "HH" => Hh {
                a: p.a.unwrap_or(q(1)),
                b: p.b.unwrap_or(q(1)),
            },
            "HHK" => Hhk {
                r,
                s,
                k: k.unwrap_or(4),
            },
            "E151A" => E151a {
                a: p.a.unwrap_or(q(1)),
            },
            "E151B" => E151b {
                a: p.a.unwrap_or(q(1)),
            },
            "E151AK" => E151ak {
                r,
                k: k.unwrap_or(2),
            },
            "SYMEQ" => Symeq {
                a: p.a.unwrap_or(q(1)),
                b: p.b.unwrap_or(q(2)),
            },
            "SYMEQK" => Symeqk {
                r,
                s,
                k: k.unwrap_or(3),
            },
            "S14" => S14,
            "S16" => S16,
            "S94" => S94,
            "S18" => S18,
            "S20" => S20,
            "S99" => S99,
            "S31" => S31,
            "S32" => S32,
            "S33" => S33,
            _ => return Err(Error::UnknownTag(tag.to_string())),
        };
        id.validate()?;
        Ok(id)
    }

    /// The parameter sweep used for `--grid`: every in-domain `(r, s, k)`
    /// up to a bound on `k`, or signed monomials `±q^t` for free parameters.
    pub fn grid(tag: &str) -> Result<Vec<IdentityId>> {
        use IdentityId::*;
        let mono = |max_t: i64| {
            (0..=max_t)
                .flat_map(|t| [SignedMonomial::q_pow(t), SignedMonomial::neg_q_pow(t)])
                .collect::<Vec<_>>()
        };
        let rsk = |k_max: u32, f: fn(u32, u32, u32) -> IdentityId| {
            let mut out = Vec::new();
            for k in 1..=k_max {
                for r in 1..k {
                    for s in r + 1..k {
                        let id = f(r, s, k);
                        if id.validate().is_ok() {
                            out.push(id);
                        }
                    }
                }
            }
            out
        };
        let ids = match tag.to_ascii_uppercase().as_str() {
            "QBINOMIAL" => std::iter::once(SignedMonomial::Zero)
                .chain(mono(6))
                .map(|a| Qbinomial {
                    a,
                    z_order: DEFAULT_Z_ORDER,
                })
                .collect(),
            "RSKEQ" => rsk(8, |r, s, k| Rskeq { r, s, k }),
            "HHK" => rsk(7, |r, s, k| Hhk { r, s, k }),
            "SYMEQK" => rsk(7, |r, s, k| Symeqk { r, s, k }),
            "E151AK" => (2..=7)
                .flat_map(|k| (1..k).map(move |r| E151ak { r, k }))
                .collect(),
            "HH" | "SYMEQ" => {
                let sym = tag.eq_ignore_ascii_case("SYMEQ");
                let mut out = Vec::new();
                for a in mono(4) {
                    for b in mono(4) {
                        out.push(if sym { Symeq { a, b } } else { Hh { a, b } });
                    }
                }
                out
            }
            "E151A" => mono(4).into_iter().map(|a| E151a { a }).collect(),
            "E151B" => mono(4).into_iter().map(|a| E151b { a }).collect(),
            other => vec![IdentityId::from_tag(other, IdentityParams::default())?],
        };
        Ok(ids)
    }

    pub fn validate(&self) -> Result<()> {
        use IdentityId::*;
        let bad = |msg: String| Err(Error::InvalidIdentityParameters(msg));
        // exponent of a parameter, treating 0 as harmless
        let exp_ok = |x: SignedMonomial, min: i64| match x {
            SignedMonomial::Zero => true,
            SignedMonomial::Monomial { exp, .. } => exp >= min,
        };
        match *self {
            Qbinomial { a, z_order } => {
                if !exp_ok(a, 0) || z_order == 0 {
                    return bad(format!("QBINOMIAL needs a = 0 or ±q^t with t >= 0 and a positive z-order, got a={a}"));
                }
            }
            Rskeq { r, s, k } | Hhk { r, s, k } => {
                if !(0 < r && r < s && r + s < k) {
                    return bad(format!(
                        "{} needs 0 < r < s < r+s < k, got r={r}, s={s}, k={k}",
                        self.tag()
                    ));
                }
            }
            Symeqk { r, s, k } => {
                if !(0 < r && r < s && s < k) {
                    return bad(format!(
                        "SYMEQK needs 0 < r < s < k, got r={r}, s={s}, k={k}"
                    ));
                }
            }
            E151ak { r, k } => {
                if !(0 < r && r < k) {
                    return bad(format!("E151AK needs 0 < r < k, got r={r}, k={k}"));
                }
            }
            Hh { a, b } | Symeq { a, b } => {
                if !exp_ok(a, 0) || !exp_ok(b, 0) {
                    return bad(format!(
                        "{} needs a, b = 0 or ±q^t with t >= 0, got a={a}, b={b}",
                        self.tag()
                    ));
                }
            }
            E151a { a } | E151b { a } if !exp_ok(a, 0) => {
                return bad(format!(
                    "{} needs a = 0 or ±q^t with t >= 0, got a={a}",
                    self.tag()
                ));
            }
            _ => {}
        }
        Ok(())
    }

    /// Both sides, exact below `q^order`. Infinite sums run until the
    /// lowest power of `q` a summand can contribute reaches `order`.
    pub fn build_sides(&self, order: u32) -> Result<Sides> {
        use IdentityId::*;
        self.validate()?;
        let n_ord = order;
        let q = |e: i64| SignedMonomial::q_pow(e);
        let nq = |e: i64| SignedMonomial::neg_q_pow(e);
        let uni = |l: QSeries, r: QSeries| Ok(Sides::Univariate(l, r));
        match *self {
            Qbinomial { a, z_order } => Ok(Sides::Bivariate(
                qbinomial_lhs(a, z_order, n_ord)?,
                qbinomial_rhs(a, z_order, n_ord)?,
            )),
            Rskeq { r, s, k } => {
                let (r, s, k) = (r as i64, s as i64, k as i64);
                let lhs = sum_terms(
                    n_ord,
                    |n| (r + k) * n,
                    |n, o| {
                        let n32 = n as u32;
                        Ok(&poch_finite(nq(s), k as u32, n32, o)?
                            * &poch_finite_inv(q(k), k as u32, n32, o)?)
                    },
                )?;
                let rhs = &poch_infinite(nq(s + r + k), k as u32, n_ord)?
                    * &poch_infinite_inv(q(r + k), k as u32, n_ord)?;
                uni(lhs, rhs)
            }
            Hh { a, b } => {
                let tb = exp_of(b);
                let ab = a.times(b);
                let lhs = sum_terms(
                    n_ord,
                    |n| n * (n + 1) / 2 + tb * n,
                    |n, o| {
                        if b.is_zero() && n > 0 {
                            return Ok(QSeries::zero(o));
                        }
                        let n32 = n as u32;
                        Ok(&(&poch_finite(a.negated(), 1, n32, o)?
                            * &poch_finite_inv(q(1), 1, n32, o)?)
                            * &sign_series(b, n32, o))
                    },
                )?;
                let neg_bq = b.negated().shifted(1);
                let sum = sum_terms(
                    n_ord,
                    |n| n * n + exp_of(ab) * n,
                    |n, o| {
                        if ab.is_zero() && n > 0 {
                            return Ok(QSeries::zero(o));
                        }
                        let n32 = n as u32;
                        Ok(&(&poch_finite_inv(q(1), 1, n32, o)?
                            * &poch_finite_inv(neg_bq, 1, n32, o)?)
                            * &sign_series(ab, n32, o))
                    },
                )?;
                uni(lhs, &poch_infinite(neg_bq, 1, n_ord)? * &sum)
            }
            Hhk { r, s, k } => {
                let (r, s, k) = (r as i64, s as i64, k as i64);
                let lhs = sum_terms(
                    n_ord,
                    |n| r * n + k * n * (n + 1) / 2,
                    |n, o| {
                        let n32 = n as u32;
                        Ok(&poch_finite(nq(s), k as u32, n32, o)?
                            * &poch_finite_inv(q(k), k as u32, n32, o)?)
                    },
                )?;
                let rhs = restricted_sum(r + k, k, k, n_ord, |n| (s + r) * n + k * n * n)?;
                uni(lhs, rhs)
            }
            E151a { a } | E151b { a } => {
                let ta = exp_of(a);
                let lhs = sum_terms(
                    n_ord,
                    |n| n * n + n + ta * n,
                    |n, o| {
                        if a.is_zero() && n > 0 {
                            return Ok(QSeries::zero(o));
                        }
                        Ok(&poch_finite_inv(q(1), 1, n as u32, o)? * &sign_series(a, n as u32, o))
                    },
                )?;
                let (shift, extra) = match self {
                    E151a { .. } => (2, 2),
                    _ => (3, 1),
                };
                let neg_a = a.negated().shifted(shift);
                let sum = sum_terms(
                    n_ord,
                    |n| n * n + extra * n + ta * n,
                    |n, o| {
                        if a.is_zero() && n > 0 {
                            return Ok(QSeries::zero(o));
                        }
                        let n32 = n as u32;
                        Ok(&(&poch_finite_inv(q(2), 2, n32, o)?
                            * &poch_finite_inv(neg_a, 2, n32, o)?)
                            * &sign_series(a, n32, o))
                    },
                )?;
                uni(lhs, &poch_infinite(neg_a, 2, n_ord)? * &sum)
            }
            E151ak { r, k } => {
                let (r, k) = (r as i64, k as i64);
                let lhs = sum_terms(
                    n_ord,
                    |n| r * n + k * (n * n + n),
                    |n, o| poch_finite_inv(q(k), k as u32, n as u32, o),
                )?;
                let rhs = restricted_sum(r + 2 * k, 2 * k, 2 * k, n_ord, |n| {
                    r * n + k * (n * n + 2 * n)
                })?;
                uni(lhs, rhs)
            }
            Symeq { a, b } => uni(symeq_side(a, b, n_ord)?, symeq_side(b, a, n_ord)?),
            Symeqk { r, s, k } => {
                let (r, s, k) = (r as i64, s as i64, k as i64);
                let lhs = restricted_sum(r + k, k, k, n_ord, |n| s * n + k * n * (n + 1) / 2)?;
                let rhs = restricted_sum(s + k, k, k, n_ord, |n| r * n + k * n * (n + 1) / 2)?;
                uni(lhs, rhs)
            }
            S14 | S16 | S94 => uni(
                self.left_side(n_ord)?,
                residue_product_inv(&[2, 3], 5, n_ord)?,
            ),
            S18 | S20 | S99 => uni(
                self.left_side(n_ord)?,
                residue_product_inv(&[1, 4], 5, n_ord)?,
            ),
            S33 => uni(
                self.left_side(n_ord)?,
                residue_product_inv(&[1, 2, 5, 6], 7, n_ord)?,
            ),
            S31 => uni(
                self.left_side(n_ord)?,
                residue_product_inv(&[2, 3, 4, 5], 7, n_ord)?,
            ),
            S32 => uni(
                self.left_side(n_ord)?,
                residue_product_inv(&[1, 3, 4, 6], 7, n_ord)?,
            ),
        }
    }

    /// The sum side of a Rogers-Ramanujan or Rogers-Selberg identity; for
    /// other identities, the left side as built by [`IdentityId::build_sides`].
    pub fn left_side(&self, order: u32) -> Result<QSeries> {
        use IdentityId::*;
        let q = |e: i64| SignedMonomial::q_pow(e);
        let nq = |e: i64| SignedMonomial::neg_q_pow(e);
        let o = order;
        Ok(match *self {
            S14 => sum_terms(
                o,
                |n| n * n + n,
                |n, o| poch_finite_inv(q(1), 1, n as u32, o),
            )?,
            S18 => sum_terms(o, |n| n * n, |n, o| poch_finite_inv(q(1), 1, n as u32, o))?,
            S16 => {
                let sum = sum_terms(
                    o,
                    |n| n * n + 2 * n,
                    |n, o| poch_finite_inv(q(4), 4, n as u32, o),
                )?;
                &poch_infinite(nq(2), 2, o)? * &sum
            }
            S20 => restricted_sum(2, 2, 2, o, |n| n * n)?,
            S94 | S99 => {
                let extra = u32::from(*self == S94);
                let sum = sum_terms(
                    o,
                    |n| n * n + n,
                    |n, o| {
                        let n32 = n as u32;
                        Ok(&poch_finite_inv(q(2), 2, n32, o)?
                            * &poch_finite_inv(nq(1), 2, n32 + extra, o)?)
                    },
                )?;
                &poch_infinite(nq(1), 2, o)? * &sum
            }
            S33 | S31 | S32 => {
                let (start, quad): (i64, fn(i64) -> i64) = match self {
                    S33 => (1, |n| 2 * n * n),
                    S31 => (2, |n| 2 * n * n + 2 * n),
                    _ => (1, |n| 2 * n * n + 2 * n),
                };
                let sum = sum_terms(o, quad, |n, o| {
                    let n32 = n as u32;
                    Ok(&poch_finite_inv(q(2), 2, n32, o)?
                        * &poch_finite_inv(nq(start), 1, 2 * n32, o)?)
                })?;
                &poch_infinite(nq(start), 1, o)? * &sum
            }
            _ => match self.build_sides(order)? {
                Sides::Univariate(l, _) => l,
                Sides::Bivariate(..) => {
                    return Err(Error::InvalidIdentityParameters(
                        "QBINOMIAL has no univariate left side".into(),
                    ))
                }
            },
        })
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use IdentityId::*;
        write!(f, "{}", self.tag())?;
        match *self {
            Qbinomial { a, z_order } => write!(f, "(a={a}, z_order={z_order})"),
            Rskeq { r, s, k } | Hhk { r, s, k } | Symeqk { r, s, k } => {
                write!(f, "(r={r}, s={s}, k={k})")
            }
            E151ak { r, k } => write!(f, "(r={r}, k={k})"),
            Hh { a, b } | Symeq { a, b } => write!(f, "(a={a}, b={b})"),
            E151a { a } | E151b { a } => write!(f, "(a={a})"),
            _ => Ok(()),
        }
    }
}

fn exp_of(x: SignedMonomial) -> i64 {
    match x {
        SignedMonomial::Zero => 0,
        SignedMonomial::Monomial { exp, .. } => exp,
    }
}

/// The sign of `x^n` as a constant series; the power of `q` in `x^n` is
/// accounted for in the summand's leading exponent.
fn sign_series(x: SignedMonomial, n: u32, order: u32) -> QSeries {
    match x.pow(n) {
        SignedMonomial::Zero => QSeries::zero(order),
        SignedMonomial::Monomial { sign, .. } => {
            let c = if sign == Sign::Plus { 1 } else { -1 };
            QSeries::monomial(c, 0, order)
        }
    }
}

/// `sum_n q^{lead(n)} * term(n)`, stopping once `lead(n) >= order`.
/// `lead` must be non-decreasing and every `term(n)` must be a power series
/// (no negative powers), which holds for all summands built here.
fn sum_terms(
    order: u32,
    lead: impl Fn(i64) -> i64,
    term: impl Fn(i64, u32) -> Result<QSeries>,
) -> Result<QSeries> {
    let mut total = QSeries::zero(order);
    let mut n = 0i64;
    loop {
        let e = lead(n);
        if e >= order as i64 {
            return Ok(total);
        }
        let rest = order - e as u32;
        let t = term(n, rest)?.truncate(rest);
        total = &total + &t.shift_extend(e as u32, order);
        n += 1;
        // a lead that stalls would never terminate
        assert!(n < 1 << 20, "summation cutoff not reached");
    }
}

/// `(-q^a;q^b)_inf sum_n q^{lead(n)} / ((q^c;q^c)_n (-q^a;q^b)_n)`.
fn restricted_sum(
    a: i64,
    b: i64,
    c: i64,
    order: u32,
    lead: impl Fn(i64) -> i64,
) -> Result<QSeries> {
    let neg = SignedMonomial::neg_q_pow(a);
    let sum = sum_terms(order, lead, |n, o| {
        let n32 = n as u32;
        Ok(
            &poch_finite_inv(SignedMonomial::q_pow(c), c as u32, n32, o)?
                * &poch_finite_inv(neg, b as u32, n32, o)?,
        )
    })?;
    Ok(&poch_infinite(neg, b as u32, order)? * &sum)
}

/// `(-bq;q)_inf sum_n a^n q^{n(n+1)/2} / (q,-bq;q)_n`.
fn symeq_side(a: SignedMonomial, b: SignedMonomial, order: u32) -> Result<QSeries> {
    let neg_bq = b.negated().shifted(1);
    let ta = exp_of(a);
    let sum = sum_terms(
        order,
        |n| n * (n + 1) / 2 + ta * n,
        |n, o| {
            if a.is_zero() && n > 0 {
                return Ok(QSeries::zero(o));
            }
            let n32 = n as u32;
            Ok(&(&poch_finite_inv(SignedMonomial::q_pow(1), 1, n32, o)?
                * &poch_finite_inv(neg_bq, 1, n32, o)?)
                * &sign_series(a, n32, o))
        },
    )?;
    Ok(&poch_infinite(neg_bq, 1, order)? * &sum)
}
