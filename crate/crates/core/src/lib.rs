//! Laboratory for graceful and relaxed graceful labelings of trees.
//!
//! The crate provides validated tree structures ([`tree::Tree`]), ordered
//! rooted layouts ([`layout`]), structural statistics ([`metrics`]),
//! labeling constructions of several flavors ([`rrg`], [`erg`], [`shell`],
//! [`amalgam`]), a verifier ([`labeling::verify`]), and exhaustive small-case
//! oracles plus seeded generators ([`oracle`]).

pub mod amalgam;
pub mod erg;
pub mod error;
pub mod labeling;
pub mod layout;
pub mod metrics;
pub mod oracle;
pub mod rrg;
pub mod shell;
pub mod tree;

pub use error::{Error, Result};
pub use labeling::{verify, Labeling, Method, VerificationReport};
pub use layout::{layout, layout_with_root, Orientation, RootedLayout};
pub use tree::Tree;
