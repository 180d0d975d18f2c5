//! Exact computations on W-orbits of mutually orthogonal positive roots in
//! simply laced root systems: orbit enumeration, admissibility, the
//! monoidal partial order, the Hecke elements `h_{B,i}` and the Artin-monoid
//! representation on the free module spanned by an admissible orbit.

pub mod coxeter;
pub mod diagram;
pub mod error;
pub mod h_elements;
pub mod hecke;
pub mod orbit;
pub mod parse;
pub mod poset;
pub mod representation;
pub mod root_system;
pub mod tables;

pub use coxeter::{CoxeterGroup, GroupElement, Side};
pub use diagram::{CoxeterType, DiagramType, Family};
pub use error::{Error, Result};
pub use h_elements::{build_h_table, HTable};
pub use hecke::{HeckeAlgebra, HeckeElement, PolyM};
pub use orbit::{enumerate_orbit, OrbitData, OrthoSet};
pub use parse::{parse_root, parse_root_list};
pub use poset::{build_poset, compare, Comparison, EdgeClass, MonoidalPoset};
pub use representation::{verify_braid, RepReport, RepVector, Representation};
pub use root_system::{Node, Root, RootId, RootSystem, SignedRoot};
pub use tables::{reproduce, TablesReport};
