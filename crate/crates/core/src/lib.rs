//! Out-forest generalisations of perfect forests in directed graphs.
//!
//! Four kinds of spanning out-forest are supported, each requiring every
//! vertex to have odd degree in the underlying forest except where noted:
//!
//! * **perfect**: every out-tree is an induced subdigraph;
//! * **almost perfect**: every non-forest arc joins two trees or points to an
//!   ancestor;
//! * **weak perfect**: no further condition;
//! * **even**: every out-tree has even order (degrees unrestricted).
//!
//! Deciding the perfect kind is NP-hard ([`hardness`] executes a reduction
//! from 3-dimensional matching). The other three are equivalent on
//! connected digraphs and decided in polynomial time through a matching
//! gadget ([`gadget`]) and the transformations in [`lemmas`]. The [`oracle`]
//! module holds exhaustive searches used to certify all of it.

pub mod cli;
pub mod connectivity;
pub mod enumerate;
pub mod exec;
pub mod forest;
pub mod gadget;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod lemmas;
pub mod matching;
pub mod oracle;

pub use connectivity::{classify, find_universal_root, spanning_out_tree, ConnectivityClass, OutTree};
pub use forest::{classify_arc, extract_perfect_forest, verify, ArcClass, ForestKind, OutForest, VerificationReport};
pub use gadget::{build_gadget, decide_weak, forest_to_matching, matching_to_arcset, remove_cycles, ArcSet, GadgetCorrespondence};
pub use graph::{Digraph, UGraph};
pub use hardness::{embed_solution, extract_solution, reduce_3dm, ReductionMap, ThreeDMInstance};
pub use lemmas::{construct_for_single_initial, even_tree_to_weak, perfect_forest_undirected, weak_to_almost};
pub use matching::{has_perfect_matching, maximum_matching, Matching};
pub use oracle::{oracle_forest, oracle_matching, OracleBudget};
