//! Series in a second variable `z` whose coefficients are [`QSeries`],
//! truncated independently in `z` (order `M`) and in `q` (order `N`).
//!
//! This is just enough structure to state the two-parameter q-Binomial
//! theorem as a formal identity: both sides are built here, compared
//! coefficient by coefficient, and specialized with `z = ±q^t` by folding
//! the `z`-degrees into `q`-exponents.

use crate::error::{Error, Result};
use crate::series::{factor_term, poch_finite, poch_finite_inv, QSeries, SignedMonomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    z_coeffs: Vec<QSeries>,
    q_order: u32,
}

impl BivariateSeries {
    pub fn zero(z_order: usize, q_order: u32) -> Self {
        BivariateSeries {
            z_coeffs: vec![QSeries::zero(q_order); z_order],
            q_order,
        }
    }

    pub fn one(z_order: usize, q_order: u32) -> Self {
        let mut out = Self::zero(z_order, q_order);
        if let Some(c) = out.z_coeffs.first_mut() {
            *c = QSeries::one(q_order);
        }
        out
    }

    /// Every coefficient must be known at least to `q_order`; they are
    /// truncated to exactly that order.
    pub fn from_coeffs(z_coeffs: Vec<QSeries>, q_order: u32) -> Result<Self> {
        if let Some(short) = z_coeffs.iter().find(|c| c.order() < q_order) {
            return Err(Error::InsufficientOrder {
                requested: q_order,
                available: short.order(),
            });
        }
        Ok(BivariateSeries {
            z_coeffs: z_coeffs.into_iter().map(|c| c.truncate(q_order)).collect(),
            q_order,
        })
    }

    pub fn z_order(&self) -> usize {
        self.z_coeffs.len()
    }

    pub fn q_order(&self) -> u32 {
        self.q_order
    }

    /// Coefficient of `z^d`.
    pub fn coeff(&self, d: usize) -> &QSeries {
        &self.z_coeffs[d]
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.z_coeffs
    }

    pub fn mul(&self, other: &BivariateSeries) -> BivariateSeries {
        let m = self.z_order().min(other.z_order());
        let n = self.q_order.min(other.q_order);
        let mut out = Self::zero(m, n);
        for (i, a) in self.z_coeffs.iter().take(m).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.z_coeffs.iter().take(m - i).enumerate() {
                out.z_coeffs[i + j] = &out.z_coeffs[i + j] + &(a * b);
            }
        }
        out
    }

    /// `(σ q^p) * s` for a coefficient series `s`.
    fn times_monomial(s: &QSeries, c: i64, p: u32) -> QSeries {
        let shifted = s.shift(p);
        if c < 0 {
            -shifted
        } else {
            shifted
        }
    }

    /// Multiplies by the linear factor `1 - x z q^shift`.
    pub fn mul_linear(&self, x: SignedMonomial, shift: i64) -> Result<BivariateSeries> {
        let Some((c, p)) = factor_term(x, shift)? else {
            return Ok(self.clone());
        };
        if p >= self.q_order as i64 {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        for d in (1..self.z_order()).rev() {
            let t = Self::times_monomial(&self.z_coeffs[d - 1], c, p as u32);
            out.z_coeffs[d] = &out.z_coeffs[d] + &t;
        }
        Ok(out)
    }

    /// Divides by `1 - x z q^shift` by back-substitution in `z`-degree:
    /// `B_d = A_d + x q^shift B_{d-1}`.
    pub fn div_linear(&self, x: SignedMonomial, shift: i64) -> Result<BivariateSeries> {
        let Some((c, p)) = factor_term(x, shift)? else {
            return Ok(self.clone());
        };
        if p >= self.q_order as i64 {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        for d in 1..self.z_order() {
            let t = Self::times_monomial(&out.z_coeffs[d - 1], -c, p as u32);
            out.z_coeffs[d] = &out.z_coeffs[d] + &t;
        }
        Ok(out)
    }

    /// Specializes `z = ±q^t` (`t >= 1`). Degrees `d >= M` are unknown, so
    /// the result is exact only below `q^min(N, t*M)`.
    pub fn fold_z(&self, z: SignedMonomial) -> Result<QSeries> {
        let (sign, t) = match z {
            SignedMonomial::Zero => {
                return Ok(self
                    .z_coeffs
                    .first()
                    .cloned()
                    .unwrap_or_else(|| QSeries::zero(0)))
            }
            SignedMonomial::Monomial { sign, exp } => (sign, exp),
        };
        if t < 1 {
            return Err(Error::NegativeExponent { exponent: t });
        }
        let order = (self.q_order as u64).min(t as u64 * self.z_order() as u64) as u32;
        let mut out = QSeries::zero(order);
        for (d, c) in self.z_coeffs.iter().enumerate() {
            let e = t as u64 * d as u64;
            if e >= order as u64 {
                break;
            }
            let term = c.truncate(order).shift(e as u32);
            out = if sign.pow(d as u32) == crate::series::Sign::Plus {
                &out + &term
            } else {
                &out - &term
            };
        }
        Ok(out)
    }

    /// First `(z-degree, q-exponent)` where the two series differ, over the
    /// common truncation.
    pub fn first_divergence(&self, other: &BivariateSeries) -> Option<(usize, u32)> {
        let n = self.q_order.min(other.q_order);
        self.z_coeffs
            .iter()
            .zip(&other.z_coeffs)
            .enumerate()
            .find_map(|(d, (a, b))| {
                a.first_divergence(b, n)
                    .expect("coefficients carry at least the common order")
                    .map(|e| (d, e))
            })
    }
}

/// Left side of the q-Binomial theorem, `sum_n (a;q)_n z^n / (q;q)_n`.
pub fn qbinomial_lhs(a: SignedMonomial, z_order: usize, q_order: u32) -> Result<BivariateSeries> {
    qbinomial_lhs_in_base(a, 1, z_order, q_order)
}

/// Right side of the q-Binomial theorem, `(az;q)_inf / (z;q)_inf`.
pub fn qbinomial_rhs(a: SignedMonomial, z_order: usize, q_order: u32) -> Result<BivariateSeries> {
    qbinomial_rhs_in_base(a, 1, z_order, q_order)
}

/// `sum_n (a;q^k)_n z^n / (q^k;q^k)_n`.
pub fn qbinomial_lhs_in_base(
    a: SignedMonomial,
    base: u32,
    z_order: usize,
    q_order: u32,
) -> Result<BivariateSeries> {
    let q_k = SignedMonomial::q_pow(base as i64);
    let coeffs = (0..z_order)
        .map(|n| {
            let num = poch_finite(a, base, n as u32, q_order)?;
            let den_inv = poch_finite_inv(q_k, base, n as u32, q_order)?;
            Ok(&num * &den_inv)
        })
        .collect::<Result<Vec<_>>>()?;
    BivariateSeries::from_coeffs(coeffs, q_order)
}

/// `(az;q^k)_inf / (z;q^k)_inf`, applied one linear factor at a time.
pub fn qbinomial_rhs_in_base(
    a: SignedMonomial,
    base: u32,
    z_order: usize,
    q_order: u32,
) -> Result<BivariateSeries> {
    assert!(base >= 1, "base step must be positive");
    let mut out = BivariateSeries::one(z_order, q_order);
    let mut j = 0i64;
    while j * (base as i64) < q_order as i64 {
        out = out.mul_linear(a, j * base as i64)?;
        out = out.div_linear(SignedMonomial::one(), j * base as i64)?;
        j += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_is_identity() {
        let a = qbinomial_lhs(SignedMonomial::neg_q_pow(2), 6, 20).unwrap();
        assert_eq!(a.mul(&BivariateSeries::one(6, 20)), a);
    }

    #[test]
    fn geometric_in_z() {
        let m = 8;
        let n = 10;
        let geo = BivariateSeries::from_coeffs(vec![QSeries::one(n); m], n).unwrap();
        let one_minus_z = BivariateSeries::one(m, n)
            .mul_linear(SignedMonomial::one(), 0)
            .unwrap();
        assert_eq!(one_minus_z.mul(&geo), BivariateSeries::one(m, n));
        assert_eq!(
            BivariateSeries::one(m, n)
                .div_linear(SignedMonomial::one(), 0)
                .unwrap(),
            geo
        );
    }

    #[test]
    fn square_of_linear() {
        let n = 10;
        // 1 + q z  ==  1 - (-q) z
        let lin = BivariateSeries::one(5, n)
            .mul_linear(SignedMonomial::neg_q_pow(1), 0)
            .unwrap();
        let sq = lin.mul(&lin);
        assert_eq!(sq.coeff(0), &QSeries::one(n));
        assert_eq!(sq.coeff(1), &QSeries::monomial(2, 1, n));
        assert_eq!(sq.coeff(2), &QSeries::monomial(1, 2, n));
        assert!(sq.coeff(3).is_zero() && sq.coeff(4).is_zero());
    }

    #[test]
    fn lhs_examples() {
        let n = 30;
        let euler = qbinomial_lhs(SignedMonomial::Zero, 6, n).unwrap();
        for d in 0..6 {
            let expected = poch_finite(SignedMonomial::q_pow(1), 1, d as u32, n)
                .unwrap()
                .invert()
                .unwrap();
            assert_eq!(euler.coeff(d), &expected);
        }
        let a_q = qbinomial_lhs(SignedMonomial::q_pow(1), 3, n).unwrap();
        assert_eq!(a_q.coeff(1), &QSeries::one(n));
        let m1 = qbinomial_lhs(SignedMonomial::neg_q_pow(3), 1, n).unwrap();
        assert_eq!(m1.z_order(), 1);
        assert_eq!(m1.coeff(0), &QSeries::one(n));
    }

    #[test]
    fn rhs_examples() {
        let n = 30;
        assert_eq!(
            qbinomial_rhs(SignedMonomial::one(), 7, n).unwrap(),
            BivariateSeries::one(7, n)
        );
        let euler = qbinomial_rhs(SignedMonomial::Zero, 4, n).unwrap();
        let one_minus_q = QSeries::from_terms([(0, 1), (1, -1)], n);
        assert_eq!(euler.coeff(1), &one_minus_q.invert().unwrap());
        for a in [
            SignedMonomial::Zero,
            SignedMonomial::neg_q_pow(2),
            SignedMonomial::q_pow(5),
        ] {
            assert_eq!(qbinomial_rhs(a, 5, n).unwrap().coeff(0), &QSeries::one(n));
        }
    }

    #[test]
    fn fold_truncates_to_covered_degrees() {
        let lhs = qbinomial_lhs(SignedMonomial::Zero, 5, 40).unwrap();
        let folded = lhs.fold_z(SignedMonomial::q_pow(3)).unwrap();
        assert_eq!(folded.order(), 15);
        assert!(lhs.fold_z(SignedMonomial::q_pow(0)).is_err());
    }

    #[test]
    fn divergence_reports_location() {
        let a = qbinomial_lhs(SignedMonomial::Zero, 4, 12).unwrap();
        let b = qbinomial_lhs(SignedMonomial::q_pow(1), 4, 12).unwrap();
        assert_eq!(a.first_divergence(&a), None);
        assert_eq!(a.first_divergence(&b), Some((1, 1)));
    }
}
