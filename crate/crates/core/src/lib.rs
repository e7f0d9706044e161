//! Stanley-Reisner complexes, facet-ridge dual graphs and Serre's condition
//! (S2): checkers, gluing constructions, and an exhaustive search for the
//! largest dual-graph diameter.

pub mod complex;
pub mod constructions;
pub mod dual_graph;
pub mod error;
pub mod glue;
pub mod homology;
pub mod ideal;
pub mod io;
pub mod search;
pub mod serre;
pub mod vertex_set;

pub use complex::SimplicialComplex;
pub use constructions::{build, corpus, verify_table, Family, Params};
pub use dual_graph::{complex_diameter, Distance, DualGraph, LabelForm};
pub use error::{Error, Result};
pub use glue::{append_facet_chain, glue, GlueSpec, Glued};
pub use homology::{reduced_betti, BettiVector, Field};
pub use ideal::MonomialIdeal;
pub use io::{
    export_dot, export_json, import_json, parse_facet_file, serialize_facet_file, GraphFormat,
    ParsedFacets, Tokenize,
};
pub use search::{
    bounds, canonical_form, enumerate_mu, isomorphism, SearchConfig, SearchResult, StopReason,
    UpperBounds,
};
pub use serre::{
    buchsbaum_report, buchsbaum_witness, check_s_level, is_buchsbaum, is_connected,
    is_locally_connected, is_s2, linear_syzygy_check, BuchsbaumFailure, BuchsbaumReport, S2Failure,
    S2Verdict, S2Witness,
};
pub use vertex_set::{letters, VertexSet, MAX_VERTICES};
