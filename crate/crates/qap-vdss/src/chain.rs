use thiserror::Error;

use qap_core::Assignment;

/// One sequential move: `facility` relocates from `from` to `to`.
///
/// `gain` is the incremental cost reduction of this move given everything
/// before it in the chain; `cumulative_gain` is the running total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub facility: usize,
    pub from: usize,
    pub to: usize,
    pub gain: i64,
    pub cumulative_gain: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("a closed chain needs at least 2 moves, got {0}")]
    TooShort(usize),
    #[error("move {at} starts at {found} but the previous move vacated {expected}")]
    BrokenLinkage {
        at: usize,
        found: usize,
        expected: usize,
    },
    #[error("facility {0} is moved more than once")]
    FacilityReused(usize),
    #[error("last move targets {found}, expected the origin {expected}")]
    NotClosedAtOrigin { found: usize, expected: usize },
    #[error("cumulative gain of move {at} is inconsistent with the running sum")]
    CumulativeMismatch { at: usize },
}

/// A completed sequence of sequential moves.
///
/// Invariants held by construction: each move starts where the previous
/// one landed (the mover is the displaced facility), no facility moves
/// twice, cumulative gains are the running sums of the incremental gains,
/// and a closed chain ends at the origin location so that applying it
/// permutes the assignment cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveChain {
    moves: Vec<Move>,
    closed: bool,
}

impl MoveChain {
    /// Validates and wraps a closed chain. Positivity of the gains is not
    /// required here; it is a property of search-produced chains, not of
    /// chain structure.
    pub fn try_closed(moves: Vec<Move>) -> Result<Self, ChainError> {
        if moves.len() < 2 {
            return Err(ChainError::TooShort(moves.len()));
        }
        let origin = moves[0].from;
        let mut seen = std::collections::HashSet::new();
        let mut running = 0i64;
        for (idx, mv) in moves.iter().enumerate() {
            if idx > 0 && mv.from != moves[idx - 1].to {
                return Err(ChainError::BrokenLinkage {
                    at: idx,
                    found: mv.from,
                    expected: moves[idx - 1].to,
                });
            }
            if !seen.insert(mv.facility) {
                return Err(ChainError::FacilityReused(mv.facility));
            }
            running += mv.gain;
            if mv.cumulative_gain != running {
                return Err(ChainError::CumulativeMismatch { at: idx });
            }
        }
        let last = moves.last().unwrap();
        if last.to != origin {
            return Err(ChainError::NotClosedAtOrigin {
                found: last.to,
                expected: origin,
            });
        }
        Ok(Self {
            moves,
            closed: true,
        })
    }

    /// Search-internal constructor; the DFS maintains the invariants.
    pub(crate) fn from_search(moves: Vec<Move>) -> Self {
        debug_assert!(Self::try_closed(moves.clone()).is_ok());
        Self {
            moves,
            closed: true,
        }
    }

    /// A chain with no moves; applying updates with it is a no-op.
    pub fn empty() -> Self {
        Self {
            moves: Vec::new(),
            closed: false,
        }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Location vacated by the first move; the closing target.
    pub fn origin(&self) -> Option<usize> {
        self.moves.first().map(|mv| mv.from)
    }

    /// Total gain of the whole chain (cost reduction when applied).
    pub fn total_gain(&self) -> i64 {
        self.moves.last().map_or(0, |mv| mv.cumulative_gain)
    }
}

/// Applies a closed chain, relocating every facility to its target.
///
/// The result is a bijection and its cost is exactly `total_gain` lower
/// than the input's. Panics if the chain is not closed or does not match
/// the assignment.
pub fn apply_chain(a: &Assignment, chain: &MoveChain) -> Assignment {
    assert!(chain.is_closed(), "only closed chains can be applied");
    let mut loc_of = a.loc_of().to_vec();
    for mv in chain.moves() {
        assert_eq!(
            loc_of[mv.facility],
            mv.from,
            "chain does not match the assignment: facility {} is not at {}",
            mv.facility,
            mv.from
        );
        loc_of[mv.facility] = mv.to;
    }
    Assignment::from_loc_of(loc_of).expect("closed chains preserve bijectivity")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(facility: usize, from: usize, to: usize, gain: i64, cum: i64) -> Move {
        Move {
            facility,
            from,
            to,
            gain,
            cumulative_gain: cum,
        }
    }

    #[test]
    fn accepts_a_valid_two_cycle() {
        let chain = MoveChain::try_closed(vec![mv(0, 0, 1, 44, 44), mv(1, 1, 0, -20, 24)]).unwrap();
        assert_eq!(chain.total_gain(), 24);
        assert_eq!(chain.origin(), Some(0));
    }

    #[test]
    fn rejects_broken_linkage() {
        let err =
            MoveChain::try_closed(vec![mv(0, 0, 1, 1, 1), mv(1, 2, 0, 1, 2)]).unwrap_err();
        assert_eq!(
            err,
            ChainError::BrokenLinkage {
                at: 1,
                found: 2,
                expected: 1
            }
        );
    }

    #[test]
    fn rejects_facility_reuse() {
        let err = MoveChain::try_closed(vec![
            mv(0, 0, 1, 1, 1),
            mv(0, 1, 0, 1, 2),
        ])
        .unwrap_err();
        assert_eq!(err, ChainError::FacilityReused(0));
    }

    #[test]
    fn rejects_unclosed_chain() {
        let err =
            MoveChain::try_closed(vec![mv(0, 0, 1, 1, 1), mv(1, 1, 2, 1, 2)]).unwrap_err();
        assert_eq!(
            err,
            ChainError::NotClosedAtOrigin {
                found: 2,
                expected: 0
            }
        );
    }

    #[test]
    fn apply_relocates_every_mover() {
        let chain =
            MoveChain::try_closed(vec![mv(0, 0, 1, 44, 44), mv(1, 1, 0, -20, 24)]).unwrap();
        let out = apply_chain(&Assignment::identity(3), &chain);
        assert_eq!(out.fac_at(), &[1, 0, 2]);
    }

    #[test]
    #[should_panic(expected = "only closed chains")]
    fn applying_an_open_chain_is_a_contract_violation() {
        apply_chain(&Assignment::identity(3), &MoveChain::empty());
    }
}
