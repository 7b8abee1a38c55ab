//! Problem files and result text.
//!
//! A problem file has up to four sections. `--` at the start of a line
//! starts a comment.
//!
//! ```text
//! [schema]
//! R(a, b)
//! [dependencies]
//! st S(#V_x_1) -> R(#V_x_1, #E_y_1)
//! R(#V_x_1, #V_y_1), R(#V_x_1, #V_y_2) -> #V_y_1 = #V_y_2
//! [instance]
//! S(1)
//! ```
//!
//! `[query]` (a single `body -> (head terms)` line) replaces `[instance]`
//! for query objects.

mod lexer;
mod parser;
mod render;

use crate::model::{Atom, Dependency, GeneralizedInstance, Schema};

pub use parser::parse_problem;
pub use render::{render_problem, render_result, write_log};

/// Everything read from a problem file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChaseProblem {
    pub schema: Schema,
    pub dependencies: Vec<Dependency>,
    pub object: GeneralizedInstance,
    /// Head atom of the query, when the object is a query.
    pub query_head: Option<Atom>,
}
