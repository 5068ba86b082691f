//! k-block conjugation and the column construction built on it.
//!
//! Reading a Ferrers diagram in vertical strips of width `k`, strip `j`
//! becomes the part `sum_x clamp(x - (j-1)k, 0, k)`. With `k = 1` this is
//! ordinary conjugation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Parameters of the column construction: `n` columns of width `k`, with
/// one marker part `r` placed at the bottom of each column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockConjugationParams {
    pub k: u32,
    pub r: u32,
    pub n: u32,
}

impl BlockConjugationParams {
    pub fn new(k: u32, r: u32, n: u32) -> Self {
        BlockConjugationParams { k, r, n }
    }
}

/// Size of strip `j` (1-based) of width `k`.
fn strip(parts: &[u32], k: u32, j: u32) -> u32 {
    let lo = (j - 1) * k;
    parts.iter().map(|&x| x.saturating_sub(lo).min(k)).sum()
}

/// The k-block conjugate of `p`, with `ceil(max(p)/k)` strips.
///
/// # Panics
///
/// If `k == 0`.
pub fn k_block_conjugate(p: &Partition, k: u32) -> Partition {
    assert!(k >= 1, "block width must be positive");
    let strips = p.largest().map_or(0, |m| m.div_ceil(k));
    Partition::new((1..=strips).map(|j| strip(p.parts(), k, j)).collect())
}

/// Every stage of [`lemma1_forward`], for display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnTrace {
    pub input: Partition,
    /// `input` with the `n` marker parts removed.
    pub residual: Partition,
    /// Column sizes before the markers are added, left to right.
    pub columns: Vec<u32>,
    /// Indices (1-based) of empty columns that were dropped.
    pub dropped_columns: Vec<u32>,
    pub output: Partition,
}

/// Removes the `n` parts equal to `r`, reads the rest in `n` strips of
/// width `k`, and puts one `r` at the bottom of each strip.
pub fn lemma1_forward(p: &Partition, params: BlockConjugationParams) -> Result<Partition> {
    Ok(lemma1_forward_traced(p, params)?.output)
}

/// [`lemma1_forward`], keeping the intermediate stages.
///
/// An input outside the intended class can leave a column empty. Such a
/// column is dropped and recorded in `dropped_columns` instead of turning
/// into a bare part `r`.
pub fn lemma1_forward_traced(p: &Partition, params: BlockConjugationParams) -> Result<ColumnTrace> {
    let BlockConjugationParams { k, r, n } = params;
    let found = p.multiplicity(r);
    if found != n as usize {
        return Err(Error::MarkerMultiplicityMismatch {
            marker: r,
            expected: n as usize,
            found,
        });
    }
    let residual = Partition::new(p.parts().iter().copied().filter(|&x| x != r).collect());
    if let Some(big) = residual.largest().filter(|&x| x > n * k) {
        return Err(Error::ColumnOverflow {
            part: big,
            columns: n,
            width: k,
        });
    }
    let columns: Vec<u32> = (1..=n).map(|j| strip(residual.parts(), k, j)).collect();
    let dropped_columns: Vec<u32> = (1..=n).filter(|&j| columns[j as usize - 1] == 0).collect();
    let output = Partition::new(columns.iter().filter(|&&c| c > 0).map(|&c| c + r).collect());
    Ok(ColumnTrace {
        input: p.clone(),
        residual,
        columns,
        dropped_columns,
        output,
    })
}

/// Strips `r` from each of the `n` parts, k-block conjugates what is left
/// and appends `n` parts equal to `r`.
pub fn lemma1_inverse(p: &Partition, params: BlockConjugationParams) -> Result<Partition> {
    let BlockConjugationParams { k, r, n } = params;
    if p.len() != n as usize {
        return Err(Error::PartCountMismatch {
            expected: n as usize,
            found: p.len(),
        });
    }
    if let Some(&small) = p.parts().iter().find(|&&x| x <= r) {
        return Err(Error::PartTooSmall {
            part: small,
            marker: r,
        });
    }
    let stripped = Partition::new(p.parts().iter().map(|&x| x - r).collect());
    let mut parts = k_block_conjugate(&stripped, k).into_parts();
    parts.extend(std::iter::repeat_n(r, n as usize));
    Ok(Partition::new(parts))
}
