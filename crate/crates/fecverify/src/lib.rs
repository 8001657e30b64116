//! Errata registry, executable checks with uncorrected twins, reports,
//! file formats and a parallel BER runner over `fecverify-core`.

pub mod ber;
pub mod checks;
pub mod error;
pub mod formats;
pub mod probe;
pub mod registry;
pub mod report;
pub mod verify;

pub use error::{HarnessError, Result};
pub use registry::{list_errata, Category, ErratumRecord};
pub use verify::{verify_all, CheckResult, Status};
