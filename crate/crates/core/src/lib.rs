//! Exact verification of q-series identities and the partition theorems
//! behind them.
//!
//! Everything is computed with truncated power series over arbitrary
//! precision integers, so a comparison either agrees on every coefficient
//! below the truncation order or reports the first exponent where it does
//! not.
//!
//! ```
//! use qpartition::series::{poch_infinite, QSeries, SignedMonomial};
//!
//! // Euler's pentagonal number theorem, to q^8
//! let euler = poch_infinite(SignedMonomial::q_pow(1), 1, 8)?;
//! let pentagonal = QSeries::from_terms([(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)], 8);
//! assert_eq!(euler, pentagonal);
//! # Ok::<(), qpartition::Error>(())
//! ```
//!
//! The main pieces:
//!
//! * [`series`]: [`QSeries`], signed monomials and q-Pochhammer symbols.
//! * [`bivariate`]: series in a second variable `z`, for the q-Binomial
//!   theorem.
//! * [`partition`] and [`classes`]: enumeration and the catalog of
//!   constrained partition classes.
//! * [`bijection`]: k-block conjugation.
//! * [`summation`]: three nested multiple sums with a common closed form.
//! * [`identity`] and [`verify`]: the identity registry and the checks that
//!   produce pass/fail reports.

pub mod bijection;
pub mod bivariate;
pub mod classes;
pub mod error;
pub mod identity;
pub mod partition;
pub mod series;
pub mod summation;
pub mod verify;

pub use bijection::{k_block_conjugate, lemma1_forward, lemma1_inverse, BlockConjugationParams};
pub use bivariate::BivariateSeries;
pub use classes::{ClassParams, ClassSpec, Members};
pub use error::{Error, Result};
pub use identity::{IdentityId, IdentityParams, Sides};
pub use partition::{enumerate_partitions, Bipartition, Enumerator, Partition};
pub use series::{QSeries, Sign, SignedMonomial};
pub use summation::{nested_sum, summation_rhs, telescope_eval, NestedSum, SumVariant};
pub use verify::{
    verify_identity, verify_partition_theorem, PartitionTheorem, Verdict, VerificationReport,
};
