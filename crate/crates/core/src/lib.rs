//! Exact computer-algebra engine for type-A1 Macdonald polynomials and
//! Shiraishi functions, with mechanical verification of the classical and
//! elliptic Cherednik-Macdonald-Mehta identities as truncated formal power
//! series in the elliptic parameter.
//!
//! All arithmetic is exact: arbitrary-precision rationals extended by the
//! symbols Q = q^(1/2), S = s^(1/2), a generic t and ad-hoc evaluation
//! points, represented as reduced rational functions in a field tower.

pub mod error;
pub mod exact;
pub mod laurent;
pub mod macdonald;
pub mod nekrasov;
pub mod shiraishi;
pub mod partitions;

pub use error::{Error, Result};
pub use exact::series::{taylor_expand, CoeffRing, PSeries};
pub use exact::tower::{Params, TBinding, Tower};
pub use exact::{even_power_project, parse_scalar, scalar_to_string, sum_grouped, Scalar};
pub use laurent::{Laurent1, LaurentPoly2};
pub use nekrasov::{nekrasov_factor, pair_contribution, PairContribution};
pub use partitions::{enumerate_pairs, p_degree, Partition};
