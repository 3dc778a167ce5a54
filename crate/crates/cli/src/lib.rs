//! Configuration, sweeps and reports behind the `fredkin-zeno` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use config::{Config, Overrides};
pub use error::{CliError, Result};
pub use table::{read_csv, write_csv, SweepRow, CSV_HEADER};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VALIDATION: i32 = 1;
    pub const BELOW_FLOOR: i32 = 2;
}
