//! Executable forms of the complexity classification of graph isomorphism and
//! clique-width on classes of graphs defined by two forbidden induced subgraphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] is the simple-graph value type with its serialization formats.
//! * [`catalog`] provides named graphs, parametric families and class recognizers.
//! * [`subiso`] decides induced subgraph containment.
//! * [`iso`] does canonical labelling and isomorphism testing.
//! * [`reductions`] builds the hardness gadgets.
//! * [`cliquewidth`] has exact clique-width for tiny graphs and grid lower-bound certificates.
//! * [`structure`] holds the K5 extension partition and the two structural isomorphism drivers.
//! * [`classifier`] classifies forbidden pairs.
//! * [`corpus`] generates deterministic test corpora.

pub mod catalog;
pub mod classifier;
pub mod cliquewidth;
pub mod corpus;
pub mod graph;
pub mod iso;
pub mod reductions;
pub mod structure;
pub mod subiso;

pub use graph::Graph;
