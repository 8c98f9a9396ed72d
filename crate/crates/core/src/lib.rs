//! Exact weight distributions and code analysis for poset block spaces
//! over `Z_q` with a weighted-coordinates poset metric.

pub mod cli;
pub mod code;
pub mod config;
pub mod distribution;
pub mod error;
pub mod oracle;
pub mod partition;
pub mod poset;
pub mod space;
pub mod weight;

pub use code::{CodeOptions, CodeReport, LinearCode};
pub use distribution::{DistributionOptions, DistributionTable, Method, MethodChoice};
pub use error::{Error, Result};
pub use poset::{Ideal, IdealFamily, Poset};
pub use space::{BlockSpace, BlockVector, LabelMap};
pub use weight::WeightModel;
