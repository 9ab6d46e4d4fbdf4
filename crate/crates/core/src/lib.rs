//! Exact q- and (q, u)-analogues of h-polynomials of nestohedra.
//!
//! The engine enumerates B-trees of a connected building set and sums
//! `t^des q^maj u^mu` over them. Everything else in the crate (closed-form
//! family formulas, graph tubings, binary trees, cone posets) is checked
//! against that enumeration.

pub mod bintree;
pub mod btree;
pub mod buildset;
pub mod combinat;
pub mod error;
pub mod families;
pub mod graph;
pub mod poly;
pub mod set;
pub mod verify;

pub use btree::{
    check_involution_palindromicity, enumerate_btrees, f_vector, h_combined, h_polynomial,
    validate_btree, BTree, BTreeStream, InvolutionCheck, Plan, ProductCheck, TreeStats, Vars,
};
pub use buildset::BuildingSet;
pub use combinat::{euler_mahonian, perm_stats, qh_from_posets, Permutation, Poset};
pub use error::{Error, Result};

pub use graph::{graphical_building_set, Graph, Tubing};
pub use poly::{Monomial, Polynomial, Style, Var};
pub use set::ElementSet;
