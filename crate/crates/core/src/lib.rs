//! Exact G-convergence methods and the topology they induce on the real
//! line and its countable powers.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod gen;
pub mod group;
pub mod methods;
pub mod parse;
pub mod oracle;
pub mod product;
pub mod rat;
pub mod realsets;
pub mod report;
pub mod sequence;
pub mod suites;
pub mod topology;

pub use error::{Error, Result};
pub use methods::{LimitResult, MethodSpec};
pub use rat::{ExtRat, Rat};
pub use realsets::RSet;
pub use sequence::{IndexFamily, SeqSpec};
