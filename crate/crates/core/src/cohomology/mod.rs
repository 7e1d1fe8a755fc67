//! Graded characters `H(y)` of Deligne–Lusztig varieties in rank 2: closed forms,
//! shipped tables with their periodicity, identity suites and conjecture checks.

mod closed_form;
mod conj;
mod graded;
mod resolve;
mod rules;
mod suite;
mod table;
mod types;

pub use closed_form::{smb_next, smb_solve};
pub use conj::{fclass_invariance_suite, full_h, ConjA2Report, FClassReport, FullH};
pub use graded::GradedChar;
pub use resolve::{Provenance, Resolved, Resolver};
pub use rules::{apply_rappel, rank1_h, RULES};
pub use suite::{verify_suite, InstanceReport, Status, Suite, SuiteReport};
pub use table::{data_source, parse_graded, Table, TableHit, TableRow};
pub use types::{ClosedFormRow, GroupType, Period, TypeData};

use thiserror::Error;

use crate::braid::BraidError;
use crate::rings::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown group type '{0}'")]
    UnknownType(String),
    #[error("closed form needs a product of underlined elements")]
    NotFullyUnderlined,
    #[error("only defined for split types")]
    NotSplit,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("{0}")]
    Io(String),
    #[error("line {line}: {msg}")]
    Data { line: usize, msg: String },
    #[error("H({0}) is not determined by the table")]
    HNotKnown(String),
    #[error("{0} is not a table key times a power of the period")]
    NotInTable(String),
    #[error("rule '{0}' does not apply")]
    UnknownRule(String),
}
