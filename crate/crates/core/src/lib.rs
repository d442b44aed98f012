//! Hitting all `theta_c` minors (two vertices joined by `c` parallel edges)
//! by deleting at most `k` vertices: multigraph substrate, tree
//! decompositions, minor oracles, the q-expansion lemma, degree-bounding
//! reduction rules, protrusion replacement and a two-phase approximation,
//! plus the kernelization pipelines tying them together.
//!
//! The special cases are classical problems: `c = 1` is Vertex Cover,
//! `c = 2` is Feedback Vertex Set, `c = 3` is Diamond Hitting Set.

pub mod approx;
pub mod boundaried;
pub mod config;
pub mod error;
pub mod expansion;
pub mod graph;
pub mod instance;
pub mod io;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod protrusion;
pub mod reduction;
pub mod treedecomp;
pub mod twdp;

pub use config::Config;
pub use error::Error;
pub use graph::{Multigraph, Vertex};
pub use instance::{Instance, RuleApplication, RuleKind};

pub type Result<T> = std::result::Result<T, Error>;
