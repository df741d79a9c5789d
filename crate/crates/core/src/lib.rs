//! Word problems for Adian inverse semigroups.
//!
//! Presentations are parsed into [`Presentation`]s, analysed for the Adian
//! property and overlap type, and words are compared by building their
//! Schützenberger graphs with Stephen's procedure.

pub mod adian_analysis;
pub mod oracles;
pub mod presentation;
pub mod rword_subgraph;
pub mod stephen;
pub mod word_graph;

pub use adian_analysis::{
    classify, cross_overlap, is_adian, self_overlap_form, AnalysisError, Classification, CrossOverlap, DecidableClass,
    OverlapType, SelfOverlapForm,
};
pub use presentation::{
    parse_presentation, parse_word, Alphabet, Letter, Presentation, PresentationError, Relation, SignedLetter, Word,
};
pub use rword_subgraph::{all_deltas_finite, delta, occurrences, DeltaError, DeltaGraph, Occurrence};
pub use stephen::{
    decide_equal, is_idempotent, membership, schutzenberger, Budget, DecisionOutcome, ExpansionTrace,
    SchutzenbergerAutomaton, Side, StephenError, Verdict,
};
pub use word_graph::{BirootedGraph, Edge, GraphError, Segment, VertexId};
