//! Hypergraph containers with part-dependent co-degree conditions, and
//! randomized multipartite nearly-orthogonal vector sets over GF(p).
//!
//! Modules, bottom up:
//!
//! - [`gf`]: prime-field vectors, inner and tensor products, the set `Q` of
//!   non-self-orthogonal vectors.
//! - [`graph`]: orthogonality graphs, spectral certificates, crossing cliques.
//! - [`container`]: the container process with its fingerprint, deletion
//!   rule and reconstruction property.
//! - [`underpin`]: repeated container steps on the crossing-clique
//!   hypergraph, giving small sets that cover some part of every
//!   crossing-free tuple.
//! - [`construct`]: tensor-product construction of candidate sets and the
//!   brute-force α/β verifiers.
//! - [`formats`]: text file formats.
//! - [`cli`]: the `nearortho` command line.

pub mod bitset;
pub mod cli;
pub mod construct;
pub mod container;
pub mod exec;
pub mod formats;
pub mod gf;
pub mod graph;
pub mod rational;
pub mod underpin;

pub use exec::Exec;
