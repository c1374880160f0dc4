//! Operator expressions, verification suites and report output.
//!
//! The expression grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*            composition, order kept
//! unary   := '-' unary | power
//! power   := atom ('^' '-'? INT)?
//! atom    := INT | INT '/' INT | 'x' | 'D' | IDENT | '(' sum ')'
//! ```
//!
//! Identifiers are parameter symbols or one of [`BUILTIN_NAMES`].
//!
//! ```
//! use su11::opalg::ParameterSet;
//! use su11::report::{parse_operator_expression, print_operator};
//!
//! let params = ParameterSet::standard();
//! let op = parse_operator_expression("D*x^2 - x^2*D", &params).unwrap();
//! assert_eq!(print_operator(&op), "2*x");
//! ```

mod builtins;
mod expr;
mod render;
mod suite;

pub use builtins::{builtin_operator, BUILTIN_NAMES};
pub use expr::{
    lower, parse_expression, parse_operator_expression, print_operator, tokenize, OperatorExpr, ParseError, Span,
    Token, TokenKind,
};
pub use render::{render_report, CSV_HEADER};
pub use suite::{
    by_check, run_suite, CaseConfig, CaseInputs, Check, CheckResult, ConfigError, Details, Entry, Format, Grid,
    Report, SuiteConfig, Summary, Tolerances, MAX_NMAX, REFINEMENT_RATIO,
};
