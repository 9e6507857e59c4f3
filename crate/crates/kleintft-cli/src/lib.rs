//! Command-line front end: text grammars, JSON schemas, the on-disk tensor
//! cache, and the subcommand implementations.

pub mod commands;
pub mod context;
pub mod schema;
pub mod text;

/// Version of the on-disk tensor layout. Caches written with another version
/// are rebuilt, never migrated.
pub const TENSOR_FORMAT_VERSION: u32 = 1;

/// Exit code for verification failures.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit code for malformed input.
pub const EXIT_PARSE_ERROR: i32 = 2;
/// Exit code for instances beyond the configured caps.
pub const EXIT_CAP_EXCEEDED: i32 = 3;
