//! IO, file formats, certificates, and the property suites behind the
//! `homkit` command line.
//!
//! The core crate stays free of IO; everything here is plumbing around it:
//! the text graph format, JSON certificates and run reports, deterministic
//! graph corpora for the exhaustive checks, and the five check suites.

pub mod cert;
pub mod checks;
pub mod corpus;
pub mod fmt;
