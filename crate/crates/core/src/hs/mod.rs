//! 3-Hitting Set: the catalog of local structures, the catalog-driven
//! branching algorithm, its recurrence and the repetition wrapper.

mod catalog;
mod hypergraph;
mod small;
mod solver;

pub use catalog::{generate_catalog, generate_catalog_with, Catalog, CatalogEntry, MAX_CATALOG_DELTA};
pub use hypergraph::Hypergraph3;
pub use small::{canonical_form, canonical_labeling, induced_graph, neighbors_graph, CanonKey, SmallHypergraph};
pub use solver::{
    alpha_hs, build_recurrence_3hs, entry_rule, optimize_catalog_gammas, three_hs_run, CatalogRate, HsApproxResult,
    HsResult,
};
