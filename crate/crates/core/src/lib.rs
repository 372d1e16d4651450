//! Exact-arithmetic toolkit for planar open book decompositions of
//! 3-manifolds.
//!
//! An open book here is a genus-0 page (a disk with holes) together with
//! a word of Dehn twists along convex curves, each curve named by the set
//! of holes it encloses. The crate computes the page norm `2g + r - 1`,
//! builds plumbings and stabilizations, reduces books to a canonical form
//! under conjugation and hole relabeling, presents the first homology of
//! the underlying manifold by an exact integer linking matrix and its
//! Smith normal form, tracks half-integer d3 bookkeeping for the contact
//! structures these books support, and enumerates all canonical books
//! within given bounds to search for minimal-norm witnesses of a target
//! homology. All arithmetic is exact; nothing here floats.
//!
//! The `openbook` binary exposes the same operations over a small
//! line-oriented file grammar; see [`format`] for the grammar and [`cli`]
//! for the subcommands.

pub mod book;
pub mod cli;
pub mod contact;
pub mod error;
pub mod format;
pub mod homology;
pub mod search;

pub use book::{Curve, OpenBook, PlanarPage, Sign, Twist, TwistWord};
pub use contact::{
    catalog_lookup, d3_connected_sum, nonadditivity_report, CatalogEntry, ContactLabel, HalfInteger,
};
pub use error::{Error, Result};
pub use format::{parse_open_book, serialize_open_book};
pub use homology::{
    h1, h1_from_matrix, h1_from_nets, net_exponents, seifert_h1, surgery_presentation,
    AbelianGroup, IntMatrix,
};
pub use search::{
    cg_upper_bound, enumerate, search_report, verify_annulus_family, SearchBucket, SearchConfig,
    SearchReport,
};
