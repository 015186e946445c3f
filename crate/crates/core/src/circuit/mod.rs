//! XOR-AND circuits: construction, evaluation and function-preserving rewrites.

mod model;
mod rewrite;
mod text;
mod truth_table;

pub use model::{AndGate, Circuit, CircuitTerm, XorSet, MAX_GATES};
pub use rewrite::{minimalize_circuit, negation_normalize};
pub use truth_table::{TruthTable, MAX_ARITY};
