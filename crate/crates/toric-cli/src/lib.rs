//! Library surface of the command-line tool: the JSON file schemas,
//! shared by the binary and its integration tests.

pub mod formats;
