//! Finite and symbolic lattice computations around balanced triples: the
//! adjustment closure and modularity rank, `M_3[L]` and `M_4[L]`, congruence
//! lattices, and tensor products of finite lattices via bi-ideals.

pub mod bitset;
pub mod catalog;
pub mod congruence;
pub mod construct;
pub mod error;
pub mod lattice;
pub mod rank;
pub mod symbolic;
pub mod tensor;

pub use bitset::BitSet;
pub use error::{LatticeError, Result};
pub use lattice::{
    find_isomorphism, is_isomorphic, isotone_maps, parse, serialize, CoverList, ElementId, FiniteLattice,
    IsotoneMap, LatticeOps, Poset,
};
pub use rank::{ClosureTrace, Quadruple, Triple};
