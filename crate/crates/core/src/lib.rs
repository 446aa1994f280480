//! Flippability analysis and exact counting of crossing-free graphs on small
//! labeled point sets.
//!
//! The crate is organized bottom-up:
//!
//! * [`geometry`]: exact orientation predicates, convex hulls and [`PointSet`].
//! * [`triangulation`]: the [`Triangulation`] structure and edge flips.
//! * [`flippability`]: flippable, simultaneously flippable and
//!   pseudo-simultaneously flippable edge sets, convex decompositions and the
//!   separability accounting behind them.
//! * [`enumeration`]: exhaustive enumeration of triangulations and
//!   crossing-free graphs, supports and spanning-tree counts.
//! * [`bounds`]: Catalan numbers and the closed-form ratio bounds.
//! * [`generators`]: extremal and random point configurations.
//! * [`verify`]: property suites shared by the CLI and the tests.

pub mod bounds;
pub mod config;
pub mod enumeration;
pub mod error;
pub mod flippability;
pub mod generators;
pub mod geometry;
pub mod planar;
pub mod triangulation;
pub mod verify;

pub use config::Caps;
pub use error::{Error, Result};
pub use flippability::{ConvexDecomposition, Diagnostics, SeparabilityReport};
pub use enumeration::{CountReport, PlaneGraph};
pub use bounds::BoundReport;
pub use geometry::{EdgeKey, Orientation, Point, PointSet, VertexId};
pub use triangulation::{CanonicalKey, Triangulation};
