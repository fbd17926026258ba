//! Fixtures shared by the criterion benches.

use m3lattice::catalog::{fano, m_k, n5};
use m3lattice::construct::m3_of;
use m3lattice::FiniteLattice;

/// `M_3[M_4]`, the 89217-antichain scan target.
pub fn m3_of_m4() -> FiniteLattice {
    m3_of(&m_k(4).expect("M4")).expect("M3[M4]").into_lattice().expect("materialized")
}

pub fn fano_lattice() -> FiniteLattice {
    fano()
}

pub fn pentagon() -> FiniteLattice {
    n5()
}

/// Every triple of `l` in lexicographic order, `n^3` entries.
pub fn all_triples(l: &FiniteLattice) -> Vec<[u32; 3]> {
    let n = l.size() as u32;
    let mut out = Vec::with_capacity((n * n * n) as usize);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                out.push([x, y, z]);
            }
        }
    }
    out
}
