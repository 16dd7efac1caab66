//! Serialization and orchestration behind the command-line tool.

pub mod docs;
pub mod dot;
pub mod lp;
pub mod pipeline;

pub use docs::{CertificateDoc, InstanceDoc, SCHEMA_VERSION};
pub use pipeline::{Strategy, VerifyOptions};
