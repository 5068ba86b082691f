//! End-to-end checks that produce a [`VerificationReport`]: identities by
//! comparing both sides coefficient by coefficient, partition theorems by
//! comparing class counts weight by weight.
//!
//! A failing report always carries the smallest counterexample.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bivariate::BivariateSeries;
use crate::classes::ClassSpec;
use crate::error::{Error, Result};
use crate::identity::{IdentityId, Sides};
use crate::partition::{Enumerator, Partition};
use crate::series::QSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

/// Where two sides first disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Divergence {
    Series {
        exponent: u32,
        #[serde(skip_serializing_if = "Option::is_none")]
        z_degree: Option<usize>,
        lhs: String,
        rhs: String,
    },
    Count {
        m: u32,
        params: String,
        counts: BTreeMap<String, usize>,
        members: BTreeMap<String, Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub order: u32,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_divergence: Option<Divergence>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn new(identity: String, order: u32, first_divergence: Option<Divergence>) -> Self {
        let verdict = if first_divergence.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        VerificationReport {
            identity,
            order,
            verdict,
            first_divergence,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} (order {})",
            self.verdict, self.identity, self.order
        )?;
        match &self.first_divergence {
            None => Ok(()),
            Some(Divergence::Series {
                exponent,
                z_degree,
                lhs,
                rhs,
            }) => {
                write!(f, ": first difference at q^{exponent}")?;
                if let Some(d) = z_degree {
                    write!(f, " in the coefficient of z^{d}")?;
                }
                write!(f, ", lhs {lhs}, rhs {rhs}")
            }
            Some(Divergence::Count {
                m, params, counts, ..
            }) => {
                write!(f, ": counts differ at m={m}")?;
                if !params.is_empty() {
                    write!(f, " for {params}")?;
                }
                for (class, c) in counts {
                    write!(f, ", {class}={c}")?;
                }
                Ok(())
            }
        }
    }
}

/// Builds both sides of `id` and compares them below `q^order`.
pub fn verify_identity(id: &IdentityId, order: u32) -> Result<VerificationReport> {
    verify_sides(&id.to_string(), &id.build_sides(order)?, order)
}

/// Compares already-built sides. Exposed so that a deliberately perturbed
/// side can be fed through the same reporting path.
pub fn verify_sides(name: &str, sides: &Sides, order: u32) -> Result<VerificationReport> {
    let div = match sides {
        Sides::Univariate(l, r) => series_divergence(l, r, order)?,
        Sides::Bivariate(l, r) => bivariate_divergence(l, r, order)?,
    };
    Ok(VerificationReport::new(name.to_string(), order, div))
}

fn series_divergence(l: &QSeries, r: &QSeries, order: u32) -> Result<Option<Divergence>> {
    Ok(l.first_divergence(r, order)?.map(|e| Divergence::Series {
        exponent: e,
        z_degree: None,
        lhs: l.coeff(e).to_string(),
        rhs: r.coeff(e).to_string(),
    }))
}

fn bivariate_divergence(
    l: &BivariateSeries,
    r: &BivariateSeries,
    order: u32,
) -> Result<Option<Divergence>> {
    let available = l.q_order().min(r.q_order());
    if available < order {
        return Err(Error::InsufficientOrder {
            requested: order,
            available,
        });
    }
    Ok(l.first_divergence(r).map(|(d, e)| Divergence::Series {
        exponent: e,
        z_degree: Some(d),
        lhs: l.coeff(d).coeff(e).to_string(),
        rhs: r.coeff(d).coeff(e).to_string(),
    }))
}

/// The partition theorems: families of classes whose counts agree at
/// every weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionTheorem {
    /// `|LEMMA1_A(n)| = |LEMMA1_B(n)|`.
    Lemma1,
    /// `sum_n |T2_A(n)| = |T2_B| = sum_n |T2_B_n(n)|`.
    T2,
    /// `sum_n |T3_A(n)| = |T3_B| = sum_n |T3_B_n(n)|`.
    T3,
    /// `sum_n |T4_LEFT_n(n)| = sum_n |T4_RIGHT_n(n)|`.
    T4,
    Rr1,
    Rr2,
    Rs31,
    Rs32,
    Rs33,
}

/// One point of a theorem's parameter grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TheoremParams {
    pub n: Option<u32>,
    pub r: Option<u32>,
    pub s: Option<u32>,
    pub k: Option<u32>,
}

impl fmt::Display for TheoremParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, v) in [("n", self.n), ("r", self.r), ("s", self.s), ("k", self.k)] {
            if let Some(v) = v {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{name}={v}")?;
                first = false;
            }
        }
        Ok(())
    }
}

const THEOREM_TAGS: &[&str] = &[
    "LEMMA1", "T2", "T3", "T4", "RR1", "RR2", "RS31", "RS32", "RS33",
];

impl PartitionTheorem {
    pub fn tags() -> &'static [&'static str] {
        THEOREM_TAGS
    }

    pub fn all() -> [PartitionTheorem; 9] {
        use PartitionTheorem::*;
        [Lemma1, T2, T3, T4, Rr1, Rr2, Rs31, Rs32, Rs33]
    }

    pub fn tag(&self) -> &'static str {
        use PartitionTheorem::*;
        match self {
            Lemma1 => "LEMMA1",
            T2 => "T2",
            T3 => "T3",
            T4 => "T4",
            Rr1 => "RR1",
            Rr2 => "RR2",
            Rs31 => "RS31",
            Rs32 => "RS32",
            Rs33 => "RS33",
        }
    }

    pub fn from_tag(tag: &str) -> Result<PartitionTheorem> {
        Self::all()
            .into_iter()
            .find(|t| t.tag().eq_ignore_ascii_case(tag))
            .ok_or_else(|| Error::UnknownTag(tag.to_string()))
    }

    /// Weight bound used when none is given.
    pub fn default_m_max(&self) -> u32 {
        match self {
            PartitionTheorem::Rr1 | PartitionTheorem::Rr2 => 40,
            _ => 30,
        }
    }

    /// The configured sweep: `k` in 4..=6 with `n <= 4` for LEMMA1, `k` in
    /// 4..=6 for T2, 2..=6 for T3 and 3..=6 for T4, every valid `r, s`.
    pub fn grid(&self) -> Vec<TheoremParams> {
        use PartitionTheorem::*;
        let mut out = Vec::new();
        let k_range = match self {
            Lemma1 | T2 => 4..=6,
            T3 => 2..=6,
            T4 => 3..=6,
            _ => return vec![TheoremParams::default()],
        };
        for k in k_range {
            for r in 1..k {
                if *self == T3 {
                    out.push(TheoremParams {
                        r: Some(r),
                        k: Some(k),
                        ..Default::default()
                    });
                    continue;
                }
                for s in r + 1..k {
                    let ok = if *self == T4 { true } else { r + s < k };
                    if !ok {
                        continue;
                    }
                    if *self == Lemma1 {
                        for n in 1..=4 {
                            out.push(TheoremParams {
                                n: Some(n),
                                r: Some(r),
                                s: Some(s),
                                k: Some(k),
                            });
                        }
                    } else {
                        out.push(TheoremParams {
                            n: None,
                            r: Some(r),
                            s: Some(s),
                            k: Some(k),
                        });
                    }
                }
            }
        }
        out
    }

    /// The groups of members whose sizes must agree at weight `m`.
    fn groups(
        &self,
        p: TheoremParams,
        m: u32,
        en: &Enumerator,
    ) -> Result<Vec<(String, Vec<String>)>> {
        use PartitionTheorem::*;
        let need = |v: Option<u32>, name: &str| {
            v.ok_or_else(|| Error::InvalidClassParameters(format!("{} needs {name}", self.tag())))
        };
        let single = |spec: ClassSpec| -> Result<(String, Vec<String>)> {
            Ok((spec.tag().to_string(), spec.members(m, en)?.render()))
        };
        let rr = |specs: [ClassSpec; 4]| specs.into_iter().map(single).collect();
        let rs = |specs: [ClassSpec; 3]| specs.into_iter().map(single).collect();
        match self {
            Lemma1 => {
                let (n, r, s, k) = (
                    need(p.n, "n")?,
                    need(p.r, "r")?,
                    need(p.s, "s")?,
                    need(p.k, "k")?,
                );
                Ok(vec![
                    single(ClassSpec::Lemma1A { n, r, s, k })?,
                    single(ClassSpec::Lemma1B { n, r, s, k })?,
                ])
            }
            T2 => {
                let (r, s, k) = (need(p.r, "r")?, need(p.s, "s")?, need(p.k, "k")?);
                let a = union_over_n(m, en, |n| {
                    (r * n + k * n * (n + 1) / 2 <= m).then_some(ClassSpec::T2A { n, r, s, k })
                })?;
                let b_spec = ClassSpec::T2B { r, s, k };
                let b = members_of(b_spec, m, en)?;
                let bn = stratify(&b, |n| ClassSpec::T2Bn { n, r, s, k });
                Ok(vec![
                    ("sum_n T2_A".into(), a),
                    ("T2_B".into(), render(&b)),
                    ("sum_n T2_B_n".into(), bn),
                ])
            }
            T3 => {
                let (r, k) = (need(p.r, "r")?, need(p.k, "k")?);
                let a = union_over_n(m, en, |n| {
                    (r * n + k * n * (n + 1) <= m).then_some(ClassSpec::T3A { n, r, k })
                })?;
                let b = members_of(ClassSpec::T3B { r, k }, m, en)?;
                let bn = stratify(&b, |n| ClassSpec::T3Bn { n, r, k });
                Ok(vec![
                    ("sum_n T3_A".into(), a),
                    ("T3_B".into(), render(&b)),
                    ("sum_n T3_B_n".into(), bn),
                ])
            }
            T4 => {
                let (r, s, k) = (need(p.r, "r")?, need(p.s, "s")?, need(p.k, "k")?);
                // both sides draw on the same candidate parts
                let pool = t4_pool(r, s, k, m, en)?;
                Ok(vec![
                    (
                        "sum_n T4_LEFT_n".into(),
                        stratify(&pool, |n| ClassSpec::T4Left { n, r, s, k }),
                    ),
                    (
                        "sum_n T4_RIGHT_n".into(),
                        stratify(&pool, |n| ClassSpec::T4Right { n, r, s, k }),
                    ),
                ])
            }
            Rr1 => rr([
                ClassSpec::Rr1A,
                ClassSpec::Rr1B,
                ClassSpec::Rr1C,
                ClassSpec::Rr1D,
            ]),
            Rr2 => rr([
                ClassSpec::Rr2A,
                ClassSpec::Rr2B,
                ClassSpec::Rr2C,
                ClassSpec::Rr2D,
            ]),
            Rs31 => rs([ClassSpec::Rs31A, ClassSpec::Rs31B, ClassSpec::Rs31C]),
            Rs32 => rs([ClassSpec::Rs32A, ClassSpec::Rs32B, ClassSpec::Rs32C]),
            Rs33 => rs([ClassSpec::Rs33A, ClassSpec::Rs33B, ClassSpec::Rs33C]),
        }
    }
}

fn members_of(spec: ClassSpec, m: u32, en: &Enumerator) -> Result<Vec<Partition>> {
    Ok(spec
        .members(m, en)?
        .partitions()
        .expect("partition class")
        .to_vec())
}

fn render(ps: &[Partition]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

/// Members of `family(n)` for `n = 0, 1, …` until `family` returns `None`,
/// each labelled with its `n`.
fn union_over_n(
    m: u32,
    en: &Enumerator,
    family: impl Fn(u32) -> Option<ClassSpec>,
) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut n = 0;
    while let Some(spec) = family(n) {
        for p in members_of(spec, m, en)? {
            out.push(format!("n={n}: {p}"));
        }
        n += 1;
    }
    Ok(out)
}

/// Members of `pool` that lie in `family(n)` for some `n`, labelled with
/// that `n`. A member with `len` parts can only have `n <= len`.
fn stratify(pool: &[Partition], family: impl Fn(u32) -> ClassSpec) -> Vec<String> {
    pool.iter()
        .filter_map(|p| {
            (0..=p.len() as u32)
                .find(|&n| family(n).contains(p))
                .map(|n| format!("n={n}: {p}"))
        })
        .collect()
}

/// Distinct partitions into parts `≡ r` or `≡ s (mod k)`, other than `r`
/// and `s` themselves.
fn t4_pool(r: u32, s: u32, k: u32, m: u32, en: &Enumerator) -> Result<Vec<Partition>> {
    en.check(m)?;
    let src = crate::partition::PartSource::filtered(m, true, |x| {
        (x % k == r % k && x > r) || (x % k == s % k && x > s)
    });
    Ok(crate::partition::partitions_from(m, &src))
}

/// Checks a theorem at every point of its grid (or just `params`, if
/// given) for every weight `0..=m_max`, stopping at the first disagreement.
pub fn verify_partition_theorem(
    theorem: PartitionTheorem,
    params: Option<&[TheoremParams]>,
    m_max: u32,
    en: &Enumerator,
) -> Result<VerificationReport> {
    en.check(m_max)?;
    let grid = match params {
        Some(p) => p.to_vec(),
        None => theorem.grid(),
    };
    for p in grid {
        for m in 0..=m_max {
            let groups = theorem.groups(p, m, en)?;
            let first = groups[0].1.len();
            if groups.iter().all(|(_, g)| g.len() == first) {
                continue;
            }
            let counts = groups.iter().map(|(l, g)| (l.clone(), g.len())).collect();
            let members = groups.into_iter().collect();
            let div = Divergence::Count {
                m,
                params: p.to_string(),
                counts,
                members,
            };
            return Ok(VerificationReport::new(
                theorem.tag().to_string(),
                m_max,
                Some(div),
            ));
        }
    }
    Ok(VerificationReport::new(
        theorem.tag().to_string(),
        m_max,
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::SignedMonomial;

    #[test]
    fn perturbed_side_fails_at_minimal_exponent() {
        let id = IdentityId::S33;
        let Sides::Univariate(l, r) = id.build_sides(40).unwrap() else {
            panic!()
        };
        let bumped = &r + &QSeries::monomial(1, 17, 40);
        let report = verify_sides("S33", &Sides::Univariate(l.clone(), bumped), 40).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let Some(Divergence::Series {
            exponent, lhs, rhs, ..
        }) = &report.first_divergence
        else {
            panic!("{report:?}");
        };
        assert_eq!(*exponent, 17);
        assert_eq!(lhs.parse::<i64>().unwrap() + 1, rhs.parse::<i64>().unwrap());
        assert!(verify_sides("S33", &Sides::Univariate(l, r), 40)
            .unwrap()
            .passed());
    }

    #[test]
    fn bivariate_report_carries_z_degree() {
        let a = crate::bivariate::qbinomial_lhs(SignedMonomial::Zero, 4, 12).unwrap();
        let b = crate::bivariate::qbinomial_lhs(SignedMonomial::q_pow(1), 4, 12).unwrap();
        let report = verify_sides("x", &Sides::Bivariate(a, b), 12).unwrap();
        assert!(matches!(
            report.first_divergence,
            Some(Divergence::Series {
                exponent: 1,
                z_degree: Some(1),
                ..
            })
        ));
    }

    #[test]
    fn report_json_shape() {
        let ok = verify_identity(&IdentityId::S14, 20).unwrap();
        let v = serde_json::to_value(&ok).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"identity": "S14", "order": 20, "verdict": "PASS"})
        );
    }

    #[test]
    fn small_theorem_checks_pass() {
        let en = Enumerator::default();
        for t in [PartitionTheorem::Rr1, PartitionTheorem::Rs33] {
            assert!(verify_partition_theorem(t, None, 14, &en).unwrap().passed());
        }
        let one = [TheoremParams {
            r: Some(1),
            s: Some(2),
            k: Some(4),
            ..Default::default()
        }];
        for t in [PartitionTheorem::T2, PartitionTheorem::T4] {
            assert!(verify_partition_theorem(t, Some(&one), 20, &en)
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn theorem_tags() {
        for tag in PartitionTheorem::tags() {
            assert_eq!(PartitionTheorem::from_tag(tag).unwrap().tag(), *tag);
        }
        assert!(PartitionTheorem::from_tag("rr3").is_err());
    }
}
