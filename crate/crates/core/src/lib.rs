pub mod bench;
pub mod brute;
pub mod cleanup;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod kpath;
pub mod ldd;
pub mod lp;
pub mod paths;
pub mod pipeline;
pub mod reduction;
pub mod rng;
pub mod spreading;
pub mod transversal;

pub use error::{Error, Result};
pub use graph::{connected_components, gen_graph, parse_graph, ComponentLabeling, Graph, GraphKind};
pub use pipeline::{solve, SolveConfig, SolveReport};
