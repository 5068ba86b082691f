//! The catalog of constrained partition and bipartition classes.
//!
//! Membership is always decided on a complete object ([`ClassSpec::contains`]
//! and [`ClassSpec::contains_bipartition`]); conditions such as "the j-th
//! odd part, counted in ascending order" need the whole partition. The
//! enumerator only narrows the candidate parts before filtering, and
//! [`ClassSpec::members_by_filter`] keeps the plain filter-everything
//! semantics around as the reference.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{partitions_from, Bipartition, Enumerator, PartSource, Partition};
use crate::series::{
    poch_finite, poch_finite_inv, poch_infinite, residue_product_inv, QSeries, SignedMonomial,
};

/// Every class with its parameters.
///
/// Residue classes are mod `k` unless stated otherwise. Multiplicities and
/// gaps refer to the parts of the named residue class only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassSpec {
    /// `r` exactly `n` times; distinct parts from `s, s+k, …, s+(n-1)k`;
    /// parts from `k, 2k, …, nk` with `nk` present.
    Lemma1A {
        n: u32,
        r: u32,
        s: u32,
        k: u32,
    },
    /// Exactly `n` parts: distinct parts `≡ r+s` without `r+s`, and parts
    /// `≡ r` without `r`.
    Lemma1B {
        n: u32,
        r: u32,
        s: u32,
        k: u32,
    },
    /// `r` exactly `n` times; distinct parts from the `s` ladder; each of
    /// `k, …, nk` at least once.
    T2A {
        n: u32,
        r: u32,
        s: u32,
        k: u32,
    },
    /// Distinct parts `≡ r+s` (no `r+s`, gaps `>= 2k`) and distinct parts
    /// `≡ r` (no `r`); `r+jk` and `r+(j+1)k` are absent when `r+s+jk` is
    /// present.
    T2B {
        r: u32,
        s: u32,
        k: u32,
    },
    /// [`ClassSpec::T2B`] with exactly `n` parts `≡ r+s`.
    T2Bn {
        n: u32,
        r: u32,
        s: u32,
        k: u32,
    },
    /// `r` exactly `n` times; each of `k, …, nk` at least twice.
    T3A {
        n: u32,
        r: u32,
        k: u32,
    },
    /// Distinct parts `≡ r`, without `r` and `r+k`, gaps `>= 2k`.
    T3B {
        r: u32,
        k: u32,
    },
    /// Exactly `n` distinct parts `≡ r+k (mod 2k)` (no `r+k`, gaps
    /// `>= 2k`) and distinct parts `≡ r (mod 2k)` (no `r`), where
    /// `r+(2j-2)k` and `r+2jk` are absent when `r+(2j-1)k` is present.
    T3Bn {
        n: u32,
        r: u32,
        k: u32,
    },
    /// Exactly `n` distinct parts `≡ s` (no `s`); distinct parts `≡ r` (no
    /// `r`) avoiding `r+pk`, `r+(p+1)k` whenever `s+pk` is present.
    T4Left {
        n: u32,
        r: u32,
        s: u32,
        k: u32,
    },
    /// Exactly `n` distinct parts `≡ r` (no `r`); distinct parts `≡ s` (no
    /// `s`) avoiding `s+(p-1)k`, `s+pk` whenever `r+pk` is present.
    T4Right {
        n: u32,
        r: u32,
        s: u32,
        k: u32,
    },
    Rr1A,
    Rr1B,
    Rr1C,
    Rr1D,
    Rr2A,
    Rr2B,
    Rr2C,
    Rr2D,
    Rs33A,
    Rs33B,
    Rs33C,
    Rs31A,
    Rs31B,
    Rs31C,
    Rs32A,
    Rs32B,
    Rs32C,
}

/// Optional parameters as they arrive from a command line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassParams {
    pub n: Option<u32>,
    pub r: Option<u32>,
    pub s: Option<u32>,
    pub k: Option<u32>,
}

/// Enumerated members of a class at one weight, in descending
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Members {
    Partitions(Vec<Partition>),
    Bipartitions(Vec<Bipartition>),
}

impl Members {
    pub fn len(&self) -> usize {
        match self {
            Members::Partitions(v) => v.len(),
            Members::Bipartitions(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn partitions(&self) -> Option<&[Partition]> {
        match self {
            Members::Partitions(v) => Some(v),
            Members::Bipartitions(_) => None,
        }
    }

    pub fn bipartitions(&self) -> Option<&[Bipartition]> {
        match self {
            Members::Partitions(_) => None,
            Members::Bipartitions(v) => Some(v),
        }
    }

    /// One display string per member.
    pub fn render(&self) -> Vec<String> {
        match self {
            Members::Partitions(v) => v.iter().map(ToString::to_string).collect(),
            Members::Bipartitions(v) => v.iter().map(ToString::to_string).collect(),
        }
    }
}

/// Shape of the two Rogers-Ramanujan families.
struct RrFamily {
    no_ones: bool,
    residues: [u32; 2],
    /// Even parts excluded relative to the j-th odd part: `o_j + 2j + off`.
    odd_offsets: [i64; 2],
    /// Odd parts excluded relative to the j-th even part: `e_j + 2j + off`.
    even_offsets: [i64; 2],
}

const RR1: RrFamily = RrFamily {
    no_ones: false,
    residues: [1, 4],
    odd_offsets: [-3, -1],
    even_offsets: [-3, -1],
};

const RR2: RrFamily = RrFamily {
    no_ones: true,
    residues: [2, 3],
    odd_offsets: [-3, -1],
    even_offsets: [-1, 1],
};

/// Shape of the three Rogers-Selberg families.
struct RsFamily {
    residues: [u32; 4],
    pi_min: u32,
    lambda_min: u32,
    /// Parts excluded from `lambda`: `e_j/2 + off`.
    b_offsets: [i64; 3],
    /// Parts excluded from `mu`: `e_j/2 + j + off`.
    c_offsets: [i64; 3],
}

const RS33: RsFamily = RsFamily {
    residues: [1, 2, 5, 6],
    pi_min: 2,
    lambda_min: 1,
    b_offsets: [0, 1, 2],
    c_offsets: [-1, 0, 1],
};

const RS31: RsFamily = RsFamily {
    residues: [2, 3, 4, 5],
    pi_min: 4,
    lambda_min: 2,
    b_offsets: [0, 1, 2],
    c_offsets: [-1, 0, 1],
};

const RS32: RsFamily = RsFamily {
    residues: [1, 3, 4, 6],
    pi_min: 4,
    lambda_min: 1,
    b_offsets: [-1, 0, 1],
    c_offsets: [-2, -1, 0],
};

#[derive(Clone, Copy, PartialEq, Eq)]
enum RrPart {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RsPart {
    A,
    B,
    C,
}

const ALL_TAGS: &[&str] = &[
    "LEMMA1_A",
    "LEMMA1_B",
    "T2_A",
    "T2_B",
    "T2_B_n",
    "T3_A",
    "T3_B",
    "T3_B_n",
    "T4_LEFT_n",
    "T4_RIGHT_n",
    "RR1_A",
    "RR1_B",
    "RR1_C",
    "RR1_D",
    "RR2_A",
    "RR2_B",
    "RR2_C",
    "RR2_D",
    "RS33_A",
    "RS33_B",
    "RS33_C",
    "RS31_A",
    "RS31_B",
    "RS31_C",
    "RS32_A",
    "RS32_B",
    "RS32_C",
];

impl ClassSpec {
    /// Every tag accepted by [`ClassSpec::from_tag`].
    pub fn tags() -> &'static [&'static str] {
        ALL_TAGS
    }

    pub fn tag(&self) -> &'static str {
        use ClassSpec::*;
        match self {
            Lemma1A { .. } => "LEMMA1_A",
            Lemma1B { .. } => "LEMMA1_B",
            T2A { .. } => "T2_A",
            T2B { .. } => "T2_B",
            T2Bn { .. } => "T2_B_n",
            T3A { .. } => "T3_A",
            T3B { .. } => "T3_B",
            T3Bn { .. } => "T3_B_n",
            T4Left { .. } => "T4_LEFT_n",
            T4Right { .. } => "T4_RIGHT_n",
            Rr1A => "RR1_A",
            Rr1B => "RR1_B",
            Rr1C => "RR1_C",
            Rr1D => "RR1_D",
            Rr2A => "RR2_A",
            Rr2B => "RR2_B",
            Rr2C => "RR2_C",
            Rr2D => "RR2_D",
            Rs33A => "RS33_A",
            Rs33B => "RS33_B",
            Rs33C => "RS33_C",
            Rs31A => "RS31_A",
            Rs31B => "RS31_B",
            Rs31C => "RS31_C",
            Rs32A => "RS32_A",
            Rs32B => "RS32_B",
            Rs32C => "RS32_C",
        }
    }

    /// Builds and validates a spec from a tag (case-insensitive) and the
    /// parameters that tag needs.
    pub fn from_tag(tag: &str, p: ClassParams) -> Result<ClassSpec> {
        use ClassSpec::*;
        let need = |v: Option<u32>, name: &str| {
            v.ok_or_else(|| Error::InvalidClassParameters(format!("{tag} needs --{name}")))
        };
        let upper = tag.to_ascii_uppercase();
        let spec = match upper.as_str() {
            "LEMMA1_A" | "LEMMA1_B" | "T2_A" | "T2_B_N" | "T4_LEFT_N" | "T4_RIGHT_N" => {
                let (n, r, s, k) = (
                    need(p.n, "n")?,
                    need(p.r, "r")?,
                    need(p.s, "s")?,
                    need(p.k, "k")?,
                );
                match upper.as_str() {
                    "LEMMA1_A" => Lemma1A { n, r, s, k },
                    "LEMMA1_B" => Lemma1B { n, r, s, k },
                    "T2_A" => T2A { n, r, s, k },
                    "T2_B_N" => T2Bn { n, r, s, k },
                    "T4_LEFT_N" => T4Left { n, r, s, k },
                    _ => T4Right { n, r, s, k },
                }
            }
            "T2_B" => T2B {
                r: need(p.r, "r")?,
                s: need(p.s, "s")?,
                k: need(p.k, "k")?,
            },
            "T3_A" => T3A {
                n: need(p.n, "n")?,
                r: need(p.r, "r")?,
                k: need(p.k, "k")?,
            },
            "T3_B" => T3B {
                r: need(p.r, "r")?,
                k: need(p.k, "k")?,
            },
            "T3_B_N" => T3Bn {
                n: need(p.n, "n")?,
                r: need(p.r, "r")?,
                k: need(p.k, "k")?,
            },
            "RR1_A" => Rr1A,
            "RR1_B" => Rr1B,
            "RR1_C" => Rr1C,
            "RR1_D" => Rr1D,
            "RR2_A" => Rr2A,
            "RR2_B" => Rr2B,
            "RR2_C" => Rr2C,
            "RR2_D" => Rr2D,
            "RS33_A" => Rs33A,
            "RS33_B" => Rs33B,
            "RS33_C" => Rs33C,
            "RS31_A" => Rs31A,
            "RS31_B" => Rs31B,
            "RS31_C" => Rs31C,
            "RS32_A" => Rs32A,
            "RS32_B" => Rs32B,
            "RS32_C" => Rs32C,
            _ => return Err(Error::UnknownTag(tag.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the parameter domain of the class.
    pub fn validate(&self) -> Result<()> {
        use ClassSpec::*;
        let bad = |msg: String| Err(Error::InvalidClassParameters(msg));
        let rsk = |r: u32, s: u32, k: u32| {
            if 0 < r && r < s && r + s < k {
                Ok(())
            } else {
                bad(format!("need 0 < r < s < r+s < k, got r={r}, s={s}, k={k}"))
            }
        };
        match *self {
            Lemma1A { n, r, s, k } | Lemma1B { n, r, s, k } => {
                if n == 0 {
                    return bad(format!("{} needs n >= 1", self.tag()));
                }
                rsk(r, s, k)
            }
            T2A { r, s, k, .. } | T2B { r, s, k } | T2Bn { r, s, k, .. } => rsk(r, s, k),
            T3A { r, k, .. } | T3B { r, k } | T3Bn { r, k, .. } => {
                if 0 < r && r < k {
                    Ok(())
                } else {
                    bad(format!("need 0 < r < k, got r={r}, k={k}"))
                }
            }
            T4Left { r, s, k, .. } | T4Right { r, s, k, .. } => {
                if 0 < r && r < s && s < k {
                    Ok(())
                } else {
                    bad(format!("need 0 < r < s < k, got r={r}, s={s}, k={k}"))
                }
            }
            _ => Ok(()),
        }
    }

    pub fn is_bipartition_class(&self) -> bool {
        self.rs_family().is_some_and(|(_, part)| part != RsPart::A)
    }

    fn rr_family(&self) -> Option<(&'static RrFamily, RrPart)> {
        use ClassSpec::*;
        Some(match self {
            Rr1A => (&RR1, RrPart::A),
            Rr1B => (&RR1, RrPart::B),
            Rr1C => (&RR1, RrPart::C),
            Rr1D => (&RR1, RrPart::D),
            Rr2A => (&RR2, RrPart::A),
            Rr2B => (&RR2, RrPart::B),
            Rr2C => (&RR2, RrPart::C),
            Rr2D => (&RR2, RrPart::D),
            _ => return None,
        })
    }

    fn rs_family(&self) -> Option<(&'static RsFamily, RsPart)> {
        use ClassSpec::*;
        Some(match self {
            Rs33A => (&RS33, RsPart::A),
            Rs33B => (&RS33, RsPart::B),
            Rs33C => (&RS33, RsPart::C),
            Rs31A => (&RS31, RsPart::A),
            Rs31B => (&RS31, RsPart::B),
            Rs31C => (&RS31, RsPart::C),
            Rs32A => (&RS32, RsPart::A),
            Rs32B => (&RS32, RsPart::B),
            Rs32C => (&RS32, RsPart::C),
            _ => return None,
        })
    }

    /// Membership predicate for partition classes; always `false` for
    /// bipartition classes.
    pub fn contains(&self, p: &Partition) -> bool {
        use ClassSpec::*;
        match *self {
            Lemma1A { n, r, s, k } => ladder_member(p, n, r, s, k, LadderMultiples::TopPresent),
            Lemma1B { n, r, s, k } => {
                p.len() == n as usize
                    && p.parts().iter().all(|&x| {
                        if x % k == (r + s) % k {
                            x != r + s && p.multiplicity(x) == 1
                        } else {
                            x % k == r % k && x != r
                        }
                    })
            }
            T2A { n, r, s, k } => ladder_member(p, n, r, s, k, LadderMultiples::EachAtLeast(1)),
            T2B { r, s, k } => t2b_member(p, r, s, k),
            T2Bn { n, r, s, k } => {
                t2b_member(p, r, s, k)
                    && p.parts().iter().filter(|&&x| x % k == (r + s) % k).count() == n as usize
            }
            T3A { n, r, k } => {
                p.multiplicity(r) == n as usize
                    && (1..=n).all(|j| p.multiplicity(j * k) >= 2)
                    && p.parts()
                        .iter()
                        .all(|&x| x == r || (x % k == 0 && x / k >= 1 && x / k <= n))
            }
            T3B { r, k } => t3b_member(p, r, k),
            T3Bn { n, r, k } => t3bn_member(p, n, r, k),
            T4Left { n, r, s, k } => t4_member(p, n, s, r, k, 0),
            T4Right { n, r, s, k } => t4_member(p, n, r, s, k, -1),
            _ => {
                if let Some((fam, part)) = self.rr_family() {
                    return rr_member(p, fam, part);
                }
                if let Some((fam, RsPart::A)) = self.rs_family() {
                    return p.parts().iter().all(|x| fam.residues.contains(&(x % 7)));
                }
                false
            }
        }
    }

    /// Membership predicate for bipartition classes; always `false` for
    /// partition classes.
    pub fn contains_bipartition(&self, b: &Bipartition) -> bool {
        match self.rs_family() {
            Some((fam, part @ (RsPart::B | RsPart::C))) => rs_member(b, fam, part),
            _ => false,
        }
    }

    /// Candidate parts for the generator. Must be a superset of the parts
    /// any member can use.
    fn source(&self, m: u32) -> PartSource {
        use ClassSpec::*;
        match *self {
            Lemma1A { n, r, s, k } | T2A { n, r, s, k } => {
                let mut allowed = vec![r];
                allowed.extend((0..n).map(|j| s + j * k));
                allowed.extend((1..=n).map(|j| j * k));
                PartSource::new(allowed.into_iter().filter(|&x| x <= m).collect(), false)
            }
            Lemma1B { n, r, s, k } => PartSource::filtered(m, false, |x| {
                (x % k == r % k || x % k == (r + s) % k) && x > r
            })
            .with_max_len(n as usize),
            T2B { r, s, k } | T2Bn { r, s, k, .. } => PartSource::filtered(m, true, |x| {
                (x % k == r % k || x % k == (r + s) % k) && x > r
            }),
            T3A { n, r, k } => {
                let mut allowed = vec![r];
                allowed.extend((1..=n).map(|j| j * k));
                PartSource::new(allowed.into_iter().filter(|&x| x <= m).collect(), false)
            }
            T3B { r, k } | T3Bn { r, k, .. } => {
                PartSource::filtered(m, true, |x| x % k == r % k && x > r + k)
            }
            T4Left { r, s, k, .. } | T4Right { r, s, k, .. } => {
                PartSource::filtered(m, true, |x| {
                    (x % k == r % k && x > r) || (x % k == s % k && x > s)
                })
            }
            _ => {
                if let Some((fam, part)) = self.rr_family() {
                    let min = if fam.no_ones { 2 } else { 1 };
                    return match part {
                        RrPart::B => {
                            PartSource::filtered(m, false, |x| fam.residues.contains(&(x % 5)))
                        }
                        _ => PartSource::filtered(m, true, |x| x >= min),
                    };
                }
                if let Some((fam, RsPart::A)) = self.rs_family() {
                    return PartSource::filtered(m, false, |x| fam.residues.contains(&(x % 7)));
                }
                PartSource::new(Vec::new(), true)
            }
        }
    }

    /// All members of weight `m`, descending lexicographic.
    pub fn members(&self, m: u32, en: &Enumerator) -> Result<Members> {
        self.validate()?;
        en.check(m)?;
        if let Some((fam, part)) = self.rs_family().filter(|(_, p)| *p != RsPart::A) {
            let pi_src = PartSource::filtered(m, true, |x| x % 2 == 0 && x >= fam.pi_min);
            let lam_src = PartSource::filtered(m, true, |x| x >= fam.lambda_min);
            let mut out = Vec::new();
            for w in (0..=m).rev() {
                let pis: Vec<_> = partitions_from(w, &pi_src)
                    .into_iter()
                    .filter(|pi| pi_shape_ok(pi, fam))
                    .collect();
                if pis.is_empty() {
                    continue;
                }
                let lams = partitions_from(m - w, &lam_src);
                for pi in &pis {
                    for lam in &lams {
                        let b = Bipartition::new(pi.clone(), lam.clone());
                        if rs_member(&b, fam, part) {
                            out.push(b);
                        }
                    }
                }
            }
            out.sort_by(|a, b| b.cmp(a));
            return Ok(Members::Bipartitions(out));
        }
        let mut out: Vec<_> = partitions_from(m, &self.source(m))
            .into_iter()
            .filter(|p| self.contains(p))
            .collect();
        out.sort_by(|a, b| b.cmp(a));
        Ok(Members::Partitions(out))
    }

    /// Reference semantics: filter every partition (or every pair of
    /// partitions) of `m` through the membership predicate.
    pub fn members_by_filter(&self, m: u32, en: &Enumerator) -> Result<Members> {
        self.validate()?;
        if self.is_bipartition_class() {
            let mut out = Vec::new();
            for w in (0..=m).rev() {
                let pis = en.partitions(w)?;
                let lams = en.partitions(m - w)?;
                for pi in &pis {
                    for lam in &lams {
                        let b = Bipartition::new(pi.clone(), lam.clone());
                        if self.contains_bipartition(&b) {
                            out.push(b);
                        }
                    }
                }
            }
            out.sort_by(|a, b| b.cmp(a));
            return Ok(Members::Bipartitions(out));
        }
        let out = en
            .partitions(m)?
            .into_iter()
            .filter(|p| self.contains(p))
            .collect();
        Ok(Members::Partitions(out))
    }

    pub fn count(&self, m: u32, en: &Enumerator) -> Result<usize> {
        Ok(self.members(m, en)?.len())
    }

    /// `sum_{m < order} count(m) q^m`, by enumeration.
    pub fn generating_function(&self, order: u32, en: &Enumerator) -> Result<QSeries> {
        let terms = (0..order)
            .map(|m| Ok((m, self.count(m, en)? as i64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries::from_terms(terms, order))
    }

    /// Generating function evaluated from a product or single-summand
    /// formula, independent of enumeration. `None` for classes whose
    /// generating function is the content of an identity rather than
    /// something that can be written down directly.
    pub fn closed_form_gf(&self, order: u32) -> Option<Result<QSeries>> {
        use ClassSpec::*;
        if let Err(e) = self.validate() {
            return Some(Err(e));
        }
        let q = |e: u32| SignedMonomial::q_pow(e as i64);
        let nq = |e: u32| SignedMonomial::neg_q_pow(e as i64);
        let mono = |e: u64| QSeries::monomial(1, e, order);
        let form = move || -> Option<Result<QSeries>> {
            Some(match *self {
                Lemma1A { n, r, s, k } => (|| {
                    let num = poch_finite(nq(s), k, n, order)?;
                    let den = poch_finite_inv(q(k), k, n, order)?;
                    Ok(&(&num * &den) * &mono((r + k) as u64 * n as u64))
                })(),
                T2A { n, r, s, k } => (|| {
                    let num = poch_finite(nq(s), k, n, order)?;
                    let den = poch_finite_inv(q(k), k, n, order)?;
                    let e = r as u64 * n as u64 + k as u64 * (n as u64 * (n as u64 + 1) / 2);
                    Ok(&(&num * &den) * &mono(e))
                })(),
                T2Bn { n, r, s, k } => {
                    let e = (r + s) as u64 * n as u64 + k as u64 * (n as u64).pow(2);
                    restricted_summand(r + k, k, k, n, e, order)
                }
                T3A { n, r, k } => (|| {
                    let e = r as u64 * n as u64 + k as u64 * (n as u64 * (n as u64 + 1));
                    Ok(&poch_finite_inv(q(k), k, n, order)? * &mono(e))
                })(),
                T3Bn { n, r, k } => {
                    let e = r as u64 * n as u64 + k as u64 * (n as u64 * (n as u64 + 2));
                    restricted_summand(r + 2 * k, 2 * k, 2 * k, n, e, order)
                }
                T4Left { n, r, s, k } => {
                    let e = s as u64 * n as u64 + k as u64 * (n as u64 * (n as u64 + 1) / 2);
                    restricted_summand(r + k, k, k, n, e, order)
                }
                T4Right { n, r, s, k } => {
                    let e = r as u64 * n as u64 + k as u64 * (n as u64 * (n as u64 + 1) / 2);
                    restricted_summand(s + k, k, k, n, e, order)
                }
                Rr1B => residue_product_inv(&RR1.residues, 5, order),
                Rr2B => residue_product_inv(&RR2.residues, 5, order),
                Rs33A => residue_product_inv(&RS33.residues, 7, order),
                Rs31A => residue_product_inv(&RS31.residues, 7, order),
                Rs32A => residue_product_inv(&RS32.residues, 7, order),
                _ => return None,
            })
        };
        form()
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ClassSpec::*;
        write!(f, "{}", self.tag())?;
        match *self {
            Lemma1A { n, r, s, k }
            | Lemma1B { n, r, s, k }
            | T2A { n, r, s, k }
            | T2Bn { n, r, s, k }
            | T4Left { n, r, s, k }
            | T4Right { n, r, s, k } => write!(f, "(n={n}, r={r}, s={s}, k={k})"),
            T2B { r, s, k } => write!(f, "(r={r}, s={s}, k={k})"),
            T3A { n, r, k } | T3Bn { n, r, k } => write!(f, "(n={n}, r={r}, k={k})"),
            T3B { r, k } => write!(f, "(r={r}, k={k})"),
            _ => Ok(()),
        }
    }
}

/// `(-q^{a};q^{b})_inf * q^e / ((q^{c};q^{c})_n (-q^{a};q^{b})_n)`: the
/// shape shared by every "exactly n parts in one residue class" stratum.
fn restricted_summand(a: u32, b: u32, c: u32, n: u32, e: u64, order: u32) -> Result<QSeries> {
    let neg_a = SignedMonomial::neg_q_pow(a as i64);
    let inf = poch_infinite(neg_a, b, order)?;
    let den1 = poch_finite_inv(SignedMonomial::q_pow(c as i64), c, n, order)?;
    let den2 = poch_finite_inv(neg_a, b, n, order)?;
    Ok(&(&(&inf * &den1) * &den2) * &QSeries::monomial(1, e, order))
}

/// The multiples-of-`k` condition of the ladder classes.
enum LadderMultiples {
    /// Any multiplicities, with `nk` present.
    TopPresent,
    /// Each of `k, …, nk` at least this many times.
    EachAtLeast(usize),
}

fn ladder_member(p: &Partition, n: u32, r: u32, s: u32, k: u32, mult: LadderMultiples) -> bool {
    if p.multiplicity(r) != n as usize {
        return false;
    }
    let multiples_ok = match mult {
        LadderMultiples::TopPresent => n == 0 || p.contains(n * k),
        LadderMultiples::EachAtLeast(c) => (1..=n).all(|j| p.multiplicity(j * k) >= c),
    };
    multiples_ok
        && p.parts().iter().all(|&x| {
            if x == r {
                true
            } else if x % k == 0 {
                x / k >= 1 && x / k <= n
            } else if x % k == s % k && x >= s {
                (x - s) / k < n && p.multiplicity(x) == 1
            } else {
                false
            }
        })
}

fn t2b_member(p: &Partition, r: u32, s: u32, k: u32) -> bool {
    if !p.is_distinct() || p.contains(r) || p.contains(r + s) {
        return false;
    }
    let mut rs_parts = Vec::new();
    for x in p.ascending() {
        if x % k == (r + s) % k {
            rs_parts.push(x);
        } else if x % k != r % k {
            return false;
        }
    }
    if rs_parts.windows(2).any(|w| w[1] - w[0] < 2 * k) {
        return false;
    }
    rs_parts.iter().all(|&x| {
        let j = (x - r - s) / k;
        j == 0 || !(p.contains(r + j * k) || p.contains(r + (j + 1) * k))
    })
}

fn t3b_member(p: &Partition, r: u32, k: u32) -> bool {
    p.is_distinct()
        && !p.contains(r)
        && !p.contains(r + k)
        && p.parts().iter().all(|&x| x % k == r % k)
        && p.parts().windows(2).all(|w| w[0] - w[1] >= 2 * k)
}

fn t3bn_member(p: &Partition, n: u32, r: u32, k: u32) -> bool {
    if !p.is_distinct() || p.contains(r) || p.contains(r + k) {
        return false;
    }
    let mut odd = Vec::new();
    for x in p.ascending() {
        if x % (2 * k) == (r + k) % (2 * k) {
            odd.push(x);
        } else if x % (2 * k) != r % (2 * k) {
            return false;
        }
    }
    if odd.len() != n as usize || odd.windows(2).any(|w| w[1] - w[0] < 2 * k) {
        return false;
    }
    // r + (2j-1)k present excludes r + (2j-2)k and r + 2jk, j >= 2
    odd.iter().all(|&x| {
        let two_j_minus_one = (x - r) / k;
        two_j_minus_one < 3 || !(p.contains(x - k) || p.contains(x + k))
    })
}

/// `n` distinct parts in the `lead` class (without `lead` itself); the
/// `other` class (without `other`) avoids `other + (p+shift)k` and
/// `other + (p+1+shift)k` whenever `lead + pk` is present, `p >= 1`.
fn t4_member(p: &Partition, n: u32, lead: u32, other: u32, k: u32, shift: i64) -> bool {
    if !p.is_distinct() || p.contains(lead) || p.contains(other) {
        return false;
    }
    let mut leads = 0usize;
    for &x in p.parts() {
        if x % k == lead % k {
            leads += 1;
            let pk = ((x - lead) / k) as i64;
            if pk >= 1 {
                for d in [pk + shift, pk + 1 + shift] {
                    let y = other as i64 + d * k as i64;
                    if y > 0 && p.contains(y as u32) {
                        return false;
                    }
                }
            }
        } else if x % k != other % k {
            return false;
        }
    }
    leads == n as usize
}

fn rr_member(p: &Partition, fam: &RrFamily, part: RrPart) -> bool {
    match part {
        RrPart::B => p.parts().iter().all(|x| fam.residues.contains(&(x % 5))),
        RrPart::A => {
            p.parts().windows(2).all(|w| w[0] >= w[1] + 2) && !(fam.no_ones && p.contains(1))
        }
        RrPart::C | RrPart::D => {
            if !p.is_distinct() || (fam.no_ones && p.contains(1)) {
                return false;
            }
            let (parity, offsets) = if part == RrPart::C {
                (1, fam.odd_offsets)
            } else {
                (0, fam.even_offsets)
            };
            let anchors = p.ascending().filter(|x| x % 2 == parity);
            for (j, a) in anchors.enumerate() {
                let j = j as i64 + 1;
                for off in offsets {
                    let y = a as i64 + 2 * j + off;
                    if y > 0 && p.contains(y as u32) {
                        return false;
                    }
                }
            }
            true
        }
    }
}

fn pi_shape_ok(pi: &Partition, fam: &RsFamily) -> bool {
    pi.is_distinct()
        && pi.parts().iter().all(|&e| e % 2 == 0 && e >= fam.pi_min)
        && pi.parts().windows(2).all(|w| w[0] - w[1] >= 4)
}

fn rs_member(b: &Bipartition, fam: &RsFamily, part: RsPart) -> bool {
    if !pi_shape_ok(&b.pi, fam) {
        return false;
    }
    let lam = &b.lambda;
    if !lam.is_distinct() || lam.parts().iter().any(|&x| x < fam.lambda_min) {
        return false;
    }
    let mut excluded = HashSet::new();
    for (j, e) in b.pi.ascending().enumerate() {
        let half = (e / 2) as i64;
        let j = j as i64 + 1;
        let (base, offsets) = match part {
            RsPart::B => (half, fam.b_offsets),
            _ => (half + j, fam.c_offsets),
        };
        excluded.extend(offsets.iter().map(|o| base + o));
    }
    lam.parts().iter().all(|&x| !excluded.contains(&(x as i64)))
}

/// `1 + sum_m B(m) q^m` for the union over `n` of the LEMMA1_B classes,
/// as the product `(-q^{r+s+k};q^k)_inf / (q^{r+k};q^k)_inf`.
pub fn lemma1_b_union_product(r: u32, s: u32, k: u32, order: u32) -> Result<QSeries> {
    ClassSpec::T2B { r, s, k }.validate()?;
    let num = poch_infinite(SignedMonomial::neg_q_pow((r + s + k) as i64), k, order)?;
    let den = crate::series::poch_infinite_inv(SignedMonomial::q_pow((r + k) as i64), k, order)?;
    Ok(&num * &den)
}

/// All members of `spec` at weight `m` with the default enumerator.
pub fn class_members(spec: &ClassSpec, m: u32) -> Result<Members> {
    spec.members(m, &Enumerator::default())
}

pub fn class_count(spec: &ClassSpec, m: u32) -> Result<usize> {
    spec.count(m, &Enumerator::default())
}

pub fn class_gf(spec: &ClassSpec, order: u32) -> Result<QSeries> {
    spec.generating_function(order, &Enumerator::default())
}
