//! Problem data model for the quadratic assignment problem (QAP).
//!
//! A QAP instance places `N` facilities on `N` locations. The flow matrix
//! `F(u,v)` connects facilities, the distance matrix `D(i,j)` connects
//! locations, and an assignment is scored by
//!
//! ```text
//! cost = sum over ordered facility pairs (u,v) of F(u,v) * D(loc(u), loc(v))
//! ```
//!
//! Only symmetric instances with zero diagonals are supported. All cost
//! arithmetic is exact 64-bit signed integer; there are no tolerances
//! anywhere in this crate.

mod assignment;
mod cost;
mod generate;
mod instance;
mod io;
mod matrix;
mod record;
mod rng;

pub use assignment::{Assignment, AssignmentError};
pub use cost::{cost, relocation_cost, Cost};
pub use generate::{generate_instance, random_assignment, GenerateError, GeneratorMeta};
pub use instance::{Instance, InstanceError};
pub use io::{
    parse_instance, parse_solution, write_instance, write_solution, ParseError, SolutionError,
    SolutionFile,
};
pub use matrix::SquareMatrix;
pub use record::{RunRecord, TracePoint};
pub use rng::{derive_seed, SplitMix64, RNG_NAME};
