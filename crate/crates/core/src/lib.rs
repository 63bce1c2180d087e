//! Dynamic parameterised algorithms: maintainers that keep answering a
//! parameterised query while the input changes one tuple at a time.

pub mod change;
pub mod closest_string;
pub mod colouring;
pub mod error;
pub mod fvs;
pub mod graph;
pub mod harness;
pub mod knapsack;
pub mod longpath;
pub mod maintainer;
pub mod muddling;
pub mod oracles;
pub mod param;
pub mod plc;
pub mod script;
pub mod vertex_cover;

pub use change::ChangeOp;
pub use error::{Error, Result};
pub use graph::DynGraph;
pub use maintainer::Maintainer;
pub use param::ParamState;
