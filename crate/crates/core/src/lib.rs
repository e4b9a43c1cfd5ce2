//! Exact enumeration, counting and identity checking for integer partitions
//! graded by their largest hook length (the *perimeter* `π₁ + ℓ(π) − 1`).

pub mod cli;
pub mod enumerate;
pub mod identities;
pub mod partition;
pub mod profile;
pub mod series;
pub mod tables;

pub use enumerate::{
    count_by_perimeter, count_parity_split, count_refined, enumerate_by_perimeter, enumerate_by_size, excess_e,
    fibonacci, q_eo, ParitySplit, RefinementKey,
};
pub use identities::{
    franklin, run_all, run_check, Counterexample, Depths, FranklinOutcome, IdentityError, Status, TheoremReport,
    CHECK_IDS,
};
pub use partition::{make_partition, ConstraintClass, Partition, PartitionError};
pub use profile::{
    blocks_to_partition, decompose_blocks, from_profile, to_profile, BlockDecomposition, MiddleBlock, ProfileError,
    ProfileWord,
};
pub use series::{expand, gf_of_class, Monomial, MultiPoly, RationalGF, SeriesError, Var, VarSet};
pub use tables::{paired_table, PairedTable, TableError, TableRow};
