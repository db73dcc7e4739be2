//! Bruhat order on `GL(V)`-orbits of triples (line, flag, flag).
//!
//! Orbits are labelled by decorated transport matrices. The crate computes
//! their rank invariants, enumerates them, generates the covering moves,
//! builds the resulting poset, and checks everything against explicit
//! subspace configurations over the rationals.
//!
//! ```
//! use triflag::flagcore::from_permutation;
//! use triflag::decorated::rk_leq_dec;
//!
//! let min = from_permutation(&[1, 2, 3], &[1]).unwrap();
//! let max = from_permutation(&[3, 2, 1], &[1, 2, 3]).unwrap();
//! assert!(rk_leq_dec(&min, &max).unwrap());
//! ```

#![allow(clippy::needless_range_loop)]

pub mod decorated;
pub mod flagcore;
pub mod moves;
pub mod twoflags;
pub mod witness;

use thiserror::Error;

pub use decorated::{enumerate_orbits, rbar_table, rk_leq_dec, RBarTable};
pub use flagcore::{
    Composition, DecoratedMatrix, Decoration, Position, TransportMatrix, ValidationError,
};
pub use moves::{applicable_moves, apply_move, build_poset, find_chain, Move, MoveKind, Poset};
pub use twoflags::{rank_table, rk_leq, RankTable, Rectangle};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("empty input")]
    EmptyInput,
    #[error("decorated columns are not a descending subsequence")]
    NotDescending,
    #[error("not a permutation")]
    NotPermutation,
    #[error("arguments have different shapes (b, c)")]
    ShapeMismatch,
    #[error("first argument is not strictly below the second")]
    NotStrictlyLess,
    #[error("only defined for full flags")]
    NotFullFlag,
    #[error("not comparable")]
    NotComparable,
    #[error("no move makes progress towards the target")]
    NoProgress,
    #[error("move {kind} not applicable: {clause}")]
    PreconditionFailed { kind: MoveKind, clause: String },
    #[error("position {0} carries a zero entry")]
    ZeroEntryPosition(Position),
    #[error("tables are not the invariants of an orbit: {0}")]
    NotAnOrbitInvariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
