use crate::decorated::{compare, rk_leq_dec, Verdict};
use crate::flagcore::DecoratedMatrix;
use crate::{Error, Result};

use super::{applicable_moves, Move};

/// A sequence of moves from `x` up to `y`, or [`Error::NotComparable`].
///
/// At each step the canonically smallest applicable move whose result is
/// still below `y` is taken, so every intermediate element stays below the
/// target.
pub fn find_chain(x: &DecoratedMatrix, y: &DecoratedMatrix) -> Result<Vec<Move>> {
    match compare(x, y)?.verdict {
        Verdict::Equal => return Ok(Vec::new()),
        Verdict::Less => {}
        Verdict::Greater | Verdict::Incomparable => return Err(Error::NotComparable),
    }
    let mut cur = x.clone();
    let mut chain = Vec::new();
    while &cur != y {
        let (mv, next) = applicable_moves(&cur)
            .into_iter()
            .find(|(_, z)| rk_leq_dec(z, y).unwrap_or(false))
            .ok_or(Error::NoProgress)?;
        chain.push(mv);
        cur = next;
    }
    Ok(chain)
}
