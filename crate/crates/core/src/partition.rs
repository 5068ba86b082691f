//! Partitions, bipartitions and the brute-force enumerator.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const DEFAULT_CEILING: u32 = 120;

/// Name of the environment variable that overrides [`DEFAULT_CEILING`].
pub const CEILING_ENV: &str = "QPARTITION_CEILING";

/// Positive parts in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts `parts` into weakly decreasing order; zeros are discarded.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    pub fn contains(&self, part: u32) -> bool {
        self.parts.binary_search_by(|p| part.cmp(p)).is_ok()
    }

    pub fn is_distinct(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// Parts from smallest to largest.
    pub fn ascending(&self) -> impl Iterator<Item = u32> + '_ {
        self.parts.iter().rev().copied()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Partition", 1)?;
        st.serialize_field("parts", &self.parts)?;
        st.end()
    }
}

/// An ordered pair of partitions; either side may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bipartition {
    pub pi: Partition,
    pub lambda: Partition,
}

impl Bipartition {
    pub fn new(pi: Partition, lambda: Partition) -> Self {
        Bipartition { pi, lambda }
    }

    pub fn weight(&self) -> u64 {
        self.pi.weight() + self.lambda.weight()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pi, self.lambda)
    }
}

impl Serialize for Bipartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Bipartition", 2)?;
        st.serialize_field("pi", self.pi.parts())?;
        st.serialize_field("lambda", self.lambda.parts())?;
        st.end()
    }
}

/// Brute-force enumeration with a guard against runaway weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumerator {
    ceiling: u32,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            ceiling: DEFAULT_CEILING,
        }
    }
}

impl Enumerator {
    pub fn with_ceiling(ceiling: u32) -> Self {
        Enumerator { ceiling }
    }

    /// Reads [`CEILING_ENV`]; unset or unparsable values fall back to the
    /// default.
    pub fn from_env() -> Self {
        std::env::var(CEILING_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Enumerator::with_ceiling)
            .unwrap_or_default()
    }

    pub fn ceiling(&self) -> u32 {
        self.ceiling
    }

    pub fn check(&self, m: u32) -> Result<()> {
        if m > self.ceiling {
            return Err(Error::CeilingExceeded {
                m,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    /// All partitions of `m`, largest first part first.
    pub fn partitions(&self, m: u32) -> Result<Vec<Partition>> {
        self.check(m)?;
        let allowed: Vec<u32> = (1..=m).rev().collect();
        Ok(partitions_from(m, &PartSource::new(allowed, false)))
    }
}

/// All partitions of `m`, in reverse-lexicographic order.
pub fn enumerate_partitions(m: u32) -> Result<Vec<Partition>> {
    Enumerator::default().partitions(m)
}

/// The parts a generator may use: a candidate set that is a superset of
/// what the membership predicate accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartSource {
    /// Strictly decreasing.
    allowed: Vec<u32>,
    distinct: bool,
    max_len: Option<usize>,
}

impl PartSource {
    pub fn new(mut allowed: Vec<u32>, distinct: bool) -> Self {
        allowed.sort_unstable_by(|a, b| b.cmp(a));
        allowed.dedup();
        allowed.retain(|&p| p > 0);
        PartSource {
            allowed,
            distinct,
            max_len: None,
        }
    }

    /// Parts in `1..=max` satisfying `keep`.
    pub fn filtered(max: u32, distinct: bool, keep: impl Fn(u32) -> bool) -> Self {
        Self::new((1..=max).filter(|&p| keep(p)).collect(), distinct)
    }

    pub fn with_max_len(mut self, max_len: usize) -> Self {
        self.max_len = Some(max_len);
        self
    }
}

/// Partitions of `m` built only from `source`'s parts, largest first part
/// first (descending lexicographic order).
pub fn partitions_from(m: u32, source: &PartSource) -> Vec<Partition> {
    fn go(
        rest: u32,
        start: usize,
        source: &PartSource,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if source.max_len.is_some_and(|l| cur.len() >= l) {
            return;
        }
        for i in start..source.allowed.len() {
            let p = source.allowed[i];
            if p > rest {
                continue;
            }
            cur.push(p);
            let next = if source.distinct { i + 1 } else { i };
            go(rest - p, next, source, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, 0, source, &mut Vec::new(), &mut out);
    out
}
