//! Support library for the `gsn` binary: configuration resolution and the
//! table emitters/parsers shared with the integration tests.

pub mod config;
pub mod output;
