//! Command-line front end for `hyperdiff-core`: expression parsing, matrix
//! files and report rendering.

pub mod app;
pub mod matrix_io;
pub mod parse;
