//! Text formats: facet files and dual-graph exports.

mod facet_file;
mod graph_export;

pub use facet_file::{parse_facet_file, serialize_facet_file, ParsedFacets, Tokenize};
pub use graph_export::{export_dot, export_json, import_json, GraphFormat};
