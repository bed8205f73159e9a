//! QAPLIB-format text I/O.
//!
//! Instance files are whitespace-separated integers: `n`, then the n-by-n
//! flow matrix, then the n-by-n distance matrix. Solution files carry
//! `n cost` on the first line followed by the permutation, 1-indexed on
//! disk (the facility assigned to each location, in location order),
//! 0-indexed in memory. That orientation reproduces the stated costs of
//! the published QAPLIB solution files.

use thiserror::Error;

use crate::instance::{Instance, InstanceError};
use crate::matrix::SquareMatrix;
use crate::{cost, Assignment, AssignmentError, Cost};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected end of input while reading {expected}")]
    UnexpectedEof { expected: String },
    #[error("invalid integer {token:?} while reading {expected}")]
    InvalidToken { token: String, expected: String },
    #[error("instance size must be at least 1, got {0}")]
    InvalidSize(i64),
    #[error("unexpected trailing token {token:?}")]
    TrailingData { token: String },
    #[error(transparent)]
    Invalid(#[from] InstanceError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("unexpected end of input while reading {expected}")]
    UnexpectedEof { expected: String },
    #[error("invalid integer {token:?} while reading {expected}")]
    InvalidToken { token: String, expected: String },
    #[error("solution size must be at least 1, got {0}")]
    InvalidSize(i64),
    #[error("permutation entry {value} outside 1..={n}")]
    EntryOutOfRange { value: i64, n: usize },
    #[error("unexpected trailing token {token:?}")]
    TrailingData { token: String },
    #[error(transparent)]
    NotBijective(#[from] AssignmentError),
    #[error("solution is for size {solution} but instance has size {instance}")]
    SizeMismatch { solution: usize, instance: usize },
    #[error("stated cost {stated} does not match computed cost {computed}")]
    CostMismatch { stated: Cost, computed: Cost },
}

struct Tokens<'a> {
    iter: std::str::SplitWhitespace<'a>,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            iter: text.split_whitespace(),
        }
    }

    fn next_i64(&mut self, expected: &str) -> Result<i64, (Option<String>, String)> {
        match self.iter.next() {
            None => Err((None, expected.to_string())),
            Some(tok) => tok
                .parse::<i64>()
                .map_err(|_| (Some(tok.to_string()), expected.to_string())),
        }
    }

    fn expect_end(&mut self) -> Result<(), String> {
        match self.iter.next() {
            None => Ok(()),
            Some(tok) => Err(tok.to_string()),
        }
    }
}

/// Parses a QAPLIB instance, verifying all instance invariants.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut tokens = Tokens::new(text);
    let to_err = |(token, expected): (Option<String>, String)| match token {
        None => ParseError::UnexpectedEof { expected },
        Some(token) => ParseError::InvalidToken { token, expected },
    };

    let n_raw = tokens.next_i64("instance size").map_err(to_err)?;
    if n_raw < 1 {
        return Err(ParseError::InvalidSize(n_raw));
    }
    let n = n_raw as usize;

    let mut read_matrix = |name: &str| -> Result<SquareMatrix, ParseError> {
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = tokens
                    .next_i64(&format!("{name} matrix entry ({i},{j})"))
                    .map_err(to_err)?;
                m.set(i, j, v);
            }
        }
        Ok(m)
    };

    let flows = read_matrix("flow")?;
    let distances = read_matrix("distance")?;
    tokens
        .expect_end()
        .map_err(|token| ParseError::TrailingData { token })?;
    Ok(Instance::new(flows, distances)?)
}

/// Writes the exact format [`parse_instance`] reads; `parse(write(x)) == x`.
pub fn write_instance(inst: &Instance) -> String {
    let n = inst.n();
    let mut out = String::new();
    out.push_str(&n.to_string());
    out.push('\n');
    let mut write_matrix = |m: &SquareMatrix| {
        for i in 0..n {
            let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    };
    write_matrix(inst.flows());
    write_matrix(inst.distances());
    out
}

/// A parsed solution file: size, stated cost, and the assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub n: usize,
    pub stated_cost: Cost,
    pub assignment: Assignment,
}

impl SolutionFile {
    /// Checks the solution against an instance: sizes must match and the
    /// stated cost must equal the recomputed cost exactly.
    pub fn validate(&self, inst: &Instance) -> Result<(), SolutionError> {
        if self.n != inst.n() {
            return Err(SolutionError::SizeMismatch {
                solution: self.n,
                instance: inst.n(),
            });
        }
        let computed = cost(inst, &self.assignment);
        if computed != self.stated_cost {
            return Err(SolutionError::CostMismatch {
                stated: self.stated_cost,
                computed,
            });
        }
        Ok(())
    }
}

/// Parses a solution file. The permutation lists the 1-indexed facility
/// assigned to each location, in location order.
pub fn parse_solution(text: &str) -> Result<SolutionFile, SolutionError> {
    let mut tokens = Tokens::new(text);
    let to_err = |(token, expected): (Option<String>, String)| match token {
        None => SolutionError::UnexpectedEof { expected },
        Some(token) => SolutionError::InvalidToken { token, expected },
    };

    let n_raw = tokens.next_i64("solution size").map_err(to_err)?;
    if n_raw < 1 {
        return Err(SolutionError::InvalidSize(n_raw));
    }
    let n = n_raw as usize;
    let stated = tokens.next_i64("solution cost").map_err(to_err)?;

    let mut fac_at = Vec::with_capacity(n);
    for loc in 0..n {
        let v = tokens
            .next_i64(&format!("facility at location {loc}"))
            .map_err(to_err)?;
        if v < 1 || v > n as i64 {
            return Err(SolutionError::EntryOutOfRange { value: v, n });
        }
        fac_at.push(v as usize - 1);
    }
    tokens
        .expect_end()
        .map_err(|token| SolutionError::TrailingData { token })?;

    let assignment = Assignment::from_fac_at(fac_at)?;
    Ok(SolutionFile {
        n,
        stated_cost: Cost(stated),
        assignment,
    })
}

/// Writes a solution in the format [`parse_solution`] reads.
pub fn write_solution(n: usize, cost: Cost, a: &Assignment) -> String {
    assert_eq!(a.n(), n, "assignment size {} does not match stated size {n}", a.n());
    let perm: Vec<String> = a.fac_at().iter().map(|f| (f + 1).to_string()).collect();
    format!("{n} {cost}\n{}\n", perm.join(" "))
}
