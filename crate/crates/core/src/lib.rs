//! Exact counting of simple cycles in directed graphs.
//!
//! The census of simple cycles by length comes out of a convolution over
//! induced subgraphs: determinants of `I - zA` restricted to one side,
//! permanents of `I + zA` on the other. Everything is exact integer
//! arithmetic. A small Hopf algebra of self-avoiding hikes (sets of
//! vertex-disjoint cycles) gives the same numbers symbolically, and a
//! brute-force enumerator serves as ground truth.
//!
//! ```
//! use cyclehopf::census::cycle_census_conv;
//! use cyclehopf::detperm::{build_minor_tables, DEFAULT_SIZE_CAP};
//! use cyclehopf::digraph::Digraph;
//!
//! let tables = build_minor_tables(&Digraph::complete(4), DEFAULT_SIZE_CAP).unwrap();
//! let census = cycle_census_conv(&tables, None).unwrap();
//! assert_eq!(census.count(2), 6u32.into());
//! assert_eq!(census.count(3), 8u32.into());
//! assert_eq!(census.count(4), 6u32.into());
//! ```

pub mod census;
pub mod cli;
pub mod detperm;
pub mod digraph;
pub mod hopf;
pub mod oracle;
pub mod polyring;

pub use census::{cycle_census_conv, hamiltonian_count, CycleCensus};
pub use detperm::{build_minor_tables, MinorTables};
pub use digraph::{parse_edge_list, Digraph, VertexSet};
pub use polyring::TruncPoly;
