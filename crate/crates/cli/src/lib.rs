//! Frontend for the area-method prover: the construction language parser,
//! trace rendering, and the bundled theorem corpus.

pub mod corpus;
pub mod parser;
pub mod printer;
pub mod render;

pub use parser::{parse, ParseError, SourceFile};
pub use printer::print_source;
pub use render::{render_text, TraceDocument, TRACE_SCHEMA};
