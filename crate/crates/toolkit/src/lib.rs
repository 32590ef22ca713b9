//! Instance files, generators with known solutions, verification and
//! benchmarking around `bfglm-core`.

pub mod bench;
pub mod error;
pub mod gen;
pub mod io;
pub mod verify;

pub use bench::{bench_instance, BenchRow};
pub use error::{ToolError, ToolResult};
pub use gen::{generate_instance, generate_shape_instance, GenRequest, GroundTruth, PointSpec, PointStructure};
pub use io::{
    format_instance, format_param, parse_instance, parse_param, parse_point_request, read_instance, write_instance,
};
pub use verify::{recompute_minpoly, verify_solution, Status, VerifyReport};
