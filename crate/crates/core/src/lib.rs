//! Finite measurable spaces.
//!
//! σ-algebras on finite ground sets are represented by their atom partitions.
//! The crate provides the lattice operations (meet, join, order), product
//! σ-algebras with rectangle and product-form tests, a distributivity report
//! for products over meets, and a small identity language with an
//! exhaustive/random counterexample miner.

pub mod dsl;
pub mod error;
pub mod product;
pub mod report;
pub mod sigma;
pub mod space;
pub mod verify;

pub use error::SpaceError;
pub use product::{
    diagonal, distributivity_report, is_rectangle, product, product_form, project_left,
    project_right, rectangle, transpose, DistributivityReport,
};
pub use sigma::{contains, generate, is_sub, join, meet, separates_points, SigmaAlgebra};
pub use space::{
    canonical_partition, enumerate_partitions, overlap_components, refines, Bits, GroundSet,
    Partition, PartitionRanker, Subset,
};
