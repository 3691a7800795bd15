//! Instance documents, random generators and the 3DM reduction.

mod io;
mod random;
mod tdm;

pub use io::{InstanceDoc, ResultDoc, read_instance, read_result, write_instance, write_result};
pub use random::{RandomParams, Topology, generate_random};
pub use tdm::{ThreeDmInstance, generate_from_3dm, has_perfect_matching};
