//! Abstract polytopes as ranked face posets.
//!
//! The crate builds face lattices from points and edges with the join `*`
//! and the Cartesian product `×`, checks the polytope axioms, recognizes
//! pyramids and prisms, and computes automorphism groups three ways:
//!
//! * symbolically, for the family grown from `I` by repeatedly taking
//!   `P × I` and `P * pt` ([`family`]),
//! * by closing explicit generating sets built from the construction
//!   history ([`autom::described_generators`]),
//! * by exhaustive backtracking search ([`autom::automorphisms`]).
//!
//! ```
//! use polytope_core::{autom, expr, Config};
//!
//! let cfg = Config::default();
//! let e = expr::parse_expr("(I*pt)xI").unwrap();
//! let prism = expr::eval_expr(&e, &cfg).unwrap();
//! assert_eq!(prism.len(), 22);
//! assert_eq!(autom::aut_order(&prism, &cfg).unwrap(), 12);
//!
//! let node = expr::expr_to_family(&e, &cfg).unwrap();
//! assert_eq!(node.aut_structure().to_string(), "Sym(3) × Z/2Z");
//! ```

pub mod autom;
pub mod cli;
mod config;
mod error;
pub mod expr;
pub mod family;
pub mod groups;
mod par;
pub mod poset;
pub mod products;
pub mod structure;
pub mod verify;

pub use config::{Config, DEFAULT_MAX_CLOSURE, DEFAULT_MAX_ELEMENTS};
pub use error::{Error, Result};
pub use expr::{ConstructionExpr, ParseError};
pub use family::{FamilyNode, Step};
pub use groups::GroupDescriptor;
pub use poset::{PolytopePoset, Section};
pub use products::ProductKind;
pub use verify::ValidityReport;
