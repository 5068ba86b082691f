//! Three nested multiple sums over `0 <= a_1 <= … <= a_n`, all equal to
//!
//! ```text
//! 1 / ((q^m;q^m)_n (-bq;q)_{mn})
//! ```
//!
//! Each summand is `q^{m(a_1+…+a_n)}` over a product of blocks of factors
//! `1 + b q^e`, one block per index. The variants differ in where the
//! blocks start and in which shared factors are written only once:
//!
//! * `L1`: block `j` (0-based) has exponents `j(m+1) + k + a_{j+1}`,
//!   `k = 1..=m+1`. Blocks never overlap.
//! * `L2`: exponents `jm + k + a_{j+1}`, `k = 1..=m+1`. When
//!   `a_i = a_{i-1}` the first factor of block `i` repeats the last factor
//!   of block `i-1` and is written once.
//! * `L3`: exponents `jm + k + a_{j+1}`, `k = 0..=m`, with the same
//!   once-only rule, and the factor `1 + b` left out entirely when
//!   `a_1 = 0`.
//!
//! Besides the plain sum, [`NestedSum::stage`] evaluates the sum after the
//! innermost indices have been summed in closed form by telescoping. After
//! `p` such steps the innermost remaining index `a_i` carries
//! `q^{(p+1)m a_i} / (q^m;q^m)_p` over a single run of `(p+1)m + 1`
//! consecutive factors, and the once-only rules apply to the first factor
//! of that run.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{factor_term, poch_finite_inv, QSeries, SignedMonomial};

pub const DEFAULT_TUPLE_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumVariant {
    L1,
    L2,
    L3,
}

impl SumVariant {
    /// Offset of block `i` (1-based) before the `k` and `a_i` terms.
    fn offset(self, i: u32, m: u32) -> u32 {
        match self {
            SumVariant::L1 => (i - 1) * (m + 1),
            SumVariant::L2 | SumVariant::L3 => (i - 1) * m,
        }
    }

    fn first_k(self) -> u32 {
        match self {
            SumVariant::L3 => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for SumVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SumVariant::L1 => "L1",
            SumVariant::L2 => "L2",
            SumVariant::L3 => "L3",
        };
        f.write_str(s)
    }
}

impl FromStr for SumVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().trim_start_matches('L') {
            "1" => Ok(SumVariant::L1),
            "2" => Ok(SumVariant::L2),
            "3" => Ok(SumVariant::L3),
            _ => Err(Error::UnknownTag(s.to_string())),
        }
    }
}

/// Which factor-omission rules are in force. Turning one off gives a sum
/// that is no longer equal to the closed form; used as a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumRules {
    /// Write the factor shared by adjacent blocks once when
    /// `a_i = a_{i-1}` (`L2`, `L3`).
    pub dedup_adjacent: bool,
    /// Leave out `1 + b` when `a_1 = 0` (`L3`).
    pub drop_leading_constant: bool,
}

impl Default for SumRules {
    fn default() -> Self {
        SumRules {
            dedup_adjacent: true,
            drop_leading_constant: true,
        }
    }
}

/// One nested sum, optionally with `q` replaced by `q^base` (the parameter
/// `b` itself is not substituted).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NestedSum {
    pub variant: SumVariant,
    pub n: u32,
    pub m: u32,
    pub b: SignedMonomial,
    pub base: u32,
    pub rules: SumRules,
    pub tuple_budget: u64,
}

impl NestedSum {
    pub fn new(variant: SumVariant, n: u32, m: u32, b: SignedMonomial) -> Self {
        NestedSum {
            variant,
            n,
            m,
            b,
            base: 1,
            rules: SumRules::default(),
            tuple_budget: DEFAULT_TUPLE_BUDGET,
        }
    }

    pub fn with_base(mut self, base: u32) -> Self {
        self.base = base;
        self
    }

    pub fn with_rules(mut self, rules: SumRules) -> Self {
        self.rules = rules;
        self
    }

    pub fn with_tuple_budget(mut self, budget: u64) -> Self {
        self.tuple_budget = budget;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.base == 0 {
            return Err(Error::InvalidIdentityParameters(format!(
                "nested sums need m >= 1 and base >= 1, got m={}, base={}",
                self.m, self.base
            )));
        }
        Ok(())
    }

    /// The sum as written, over all `n` indices.
    pub fn eval(&self, order: u32) -> Result<QSeries> {
        self.stage(0, order)
    }

    /// The sum with all but the outermost index summed by telescoping.
    pub fn telescoped(&self, order: u32) -> Result<QSeries> {
        self.stage(self.n.saturating_sub(1), order)
    }

    /// The sum after `p` telescoping steps: `n - p` indices remain.
    pub fn stage(&self, p: u32, order: u32) -> Result<QSeries> {
        self.validate()?;
        if self.n == 0 {
            return Ok(QSeries::one(order));
        }
        assert!(p < self.n, "at most n-1 telescoping steps");
        let levels = self.n - p;
        let d = self.base;
        let qm = SignedMonomial::q_pow((d * self.m) as i64);
        let start = poch_finite_inv(qm, d * self.m, p, order)?;
        let mut walk = Walk {
            sum: self,
            levels,
            p,
            order,
            tuples: 0,
            total: QSeries::zero(order),
        };
        walk.descend(1, 0, 0, &start)?;
        Ok(walk.total)
    }

    /// The common closed form, `1 / ((q^m;q^m)_n (-bq;q)_{mn})` in the
    /// base `q^base`.
    pub fn rhs(&self, order: u32) -> Result<QSeries> {
        self.validate()?;
        let d = self.base;
        let qm = SignedMonomial::q_pow((d * self.m) as i64);
        let a = poch_finite_inv(qm, d * self.m, self.n, order)?;
        let neg_bq = self.b.negated().shifted(d as i64);
        let c = poch_finite_inv(neg_bq, d, self.m * self.n, order)?;
        Ok(&a * &c)
    }
}

/// Depth-first enumeration of the remaining indices with the partial
/// product shared between siblings.
struct Walk<'a> {
    sum: &'a NestedSum,
    levels: u32,
    p: u32,
    order: u32,
    tuples: u64,
    total: QSeries,
}

impl Walk<'_> {
    /// Weight of `a_i` in the numerator exponent (before the base step).
    fn weight(&self, i: u32) -> u64 {
        let m = self.sum.m as u64;
        if i == self.levels {
            (self.p as u64 + 1) * m
        } else {
            m
        }
    }

    fn descend(&mut self, i: u32, prev: u32, num_exp: u64, acc: &QSeries) -> Result<()> {
        if i > self.levels {
            self.tuples += 1;
            if self.tuples > self.sum.tuple_budget {
                return Err(Error::TupleBudgetExceeded {
                    budget: self.sum.tuple_budget,
                });
            }
            self.total = &self.total + acc;
            return Ok(());
        }
        let s = self.sum;
        let d = s.base as u64;
        let rest: u64 = (i + 1..=self.levels).map(|j| self.weight(j)).sum();
        let width = if i == self.levels {
            (self.p + 1) * s.m + 1
        } else {
            s.m + 1
        };
        let mut a = prev;
        loop {
            // every later index is at least a, and every factor inverse
            // starts at 1, so nothing below this exponent can appear
            let here = num_exp + self.weight(i) * a as u64;
            if d * (here + rest * a as u64) >= self.order as u64 {
                break;
            }
            let drop_first = match s.variant {
                SumVariant::L1 => false,
                SumVariant::L2 => s.rules.dedup_adjacent && i > 1 && a == prev,
                SumVariant::L3 => {
                    (s.rules.dedup_adjacent && i > 1 && a == prev)
                        || (s.rules.drop_leading_constant && i == 1 && a == 0)
                }
            };
            let mut next = acc.shift((d * self.weight(i) * a as u64) as u32);
            let base_exp = s.variant.offset(i, s.m) + s.variant.first_k() + a;
            for j in (drop_first as u32)..width {
                let e = d as i64 * (base_exp + j) as i64;
                if let Some((c, pe)) = factor_term(s.b.negated(), e)? {
                    if pe < self.order as i64 {
                        next = next.div_binomial(c, pe as u32)?;
                    }
                }
            }
            self.descend(i + 1, a, here, &next)?;
            a += 1;
        }
        Ok(())
    }
}

/// The plain nested sum in base `q`.
pub fn nested_sum(
    variant: SumVariant,
    n: u32,
    m: u32,
    b: SignedMonomial,
    order: u32,
) -> Result<QSeries> {
    NestedSum::new(variant, n, m, b).eval(order)
}

/// The nested sum with the inner indices summed by telescoping.
pub fn telescope_eval(
    variant: SumVariant,
    n: u32,
    m: u32,
    b: SignedMonomial,
    order: u32,
) -> Result<QSeries> {
    NestedSum::new(variant, n, m, b).telescoped(order)
}

/// `1 / ((q^m;q^m)_n (-bq;q)_{mn})`.
pub fn summation_rhs(n: u32, m: u32, b: SignedMonomial, order: u32) -> Result<QSeries> {
    NestedSum::new(SumVariant::L1, n, m, b).rhs(order)
}
