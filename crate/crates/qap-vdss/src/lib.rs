//! Variable-depth sequential search (VDSS) for the QAP.
//!
//! The search relocates facilities along ejection chains: moving a
//! facility onto an occupied location displaces the occupant, which
//! becomes the next facility to move; closing the chain into the first
//! vacated location restores a bijection (one cyclic permutation). Chains
//! are explored depth-first with Lin-Kernighan-style pruning: a prefix is
//! kept only while its cumulative gain stays strictly positive, and a
//! chain is accepted only when closing it strictly improves the cost.
//!
//! Gains are never recomputed from scratch during the search. A table of
//! first-move gains is built once per assignment, each in-chain gain is a
//! constant-time correction per prior move, and the table is patched in
//! O(n^2) after every accepted chain.

mod chain;
mod driver;
mod gain;
mod search;

pub use chain::{apply_chain, ChainError, Move, MoveChain};
pub use driver::vdss_run;
pub use gain::GainTable;
pub use qap_core::RunRecord;
pub use search::{chain_gain, search_from_node, BudgetError, SearchBudget};
