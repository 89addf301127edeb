//! Command-line front end: expression parsing, the `star` and `verify`
//! commands, and the JSON report.

pub mod commands;
pub mod parse;
pub mod report;

pub use commands::{cmd_star, cmd_verify, CliError, StarRequest, Suite, VerifyRequest};
pub use parse::{parse_expr, parse_poly, Expr, ParseError};
pub use report::{Check, Report, Verdict};
