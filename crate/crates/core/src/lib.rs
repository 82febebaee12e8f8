//! Rainbow matchings and rainbow augmenting alternating paths.
//!
//! Families of edge sets ("colors") are searched for rainbow augmenting
//! paths; when none exists and the family is large enough, the search
//! returns a badge certificate built from origamistrips instead.

pub mod alternating;
pub mod badge;
pub mod engine;
pub mod error;
pub mod explore;
pub mod gen;
pub mod graph;
pub mod io;
pub mod latin;
pub mod par;
pub mod solver;

pub use error::{Error, Result};
