//! Exact graphical Stirling numbers for forests and cycles.
//!
//! `S(G, k)` counts the partitions of the vertex set of `G` into `k`
//! non-empty independent sets. For forests and cycles these numbers reduce to
//! signed or binomially weighted sums of ordinary Stirling numbers of the
//! second kind, which this crate evaluates in exact big-integer arithmetic.
//! On top of the counts it provides:
//!
//! * the Stirling and chromatic polynomials of each family, with independent
//!   routes (operator recurrences, inclusion-exclusion, falling factorials)
//!   that must agree exactly;
//! * exact real-root certification via Sturm chains, the `≺` interlacing
//!   order and ultra log-concavity checks;
//! * exact first and second moments of the class-count distribution and
//!   floating-point diagnostics of its approach to the normal law;
//! * a brute-force oracle that enumerates partitions of small explicit graphs.

pub mod asymptotics;
pub mod combinatorics;
pub mod error;
pub mod graph_stirling;
pub mod numeric;
pub mod oracle;
pub mod polynomial;
pub mod realroots;

pub use error::{Error, Result};
pub use graph_stirling::{GraphFamily, MomentReport, PartitionCountVector};
pub use polynomial::{IntPolynomial, RationalPoint};
