//! Enumeration of XOR-AND circuit topologies up to equivalence, circuit rewrites, and
//! the counting bounds that turn topology counts into multiplicative complexity
//! lower bounds.

pub mod bounds;
pub mod circuit;
pub mod error;
pub mod oracle;
mod parse;
pub mod topology;

pub use circuit::{AndGate, Circuit, CircuitTerm, TruthTable, XorSet};
pub use error::{Error, Result};
pub use topology::{GateSet, Layering, Relabeling, TopoGate, Topology, TopologySet};
