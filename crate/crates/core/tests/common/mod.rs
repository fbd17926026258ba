#![allow(dead_code)]

use m3lattice::catalog::{boolean, c2sq, chain, fano, l_family, m_k, n5, subspace_lattice, witness7};
use m3lattice::{ElementId, FiniteLattice, Triple};

/// Catalog lattices with at most 12 elements.
pub fn small_catalog() -> Vec<FiniteLattice> {
    let mut v: Vec<FiniteLattice> = (1..=12).map(|n| chain(n).unwrap()).collect();
    v.extend((1..=3).map(|n| boolean(n).unwrap()));
    v.extend((3..=10).map(|k| m_k(k).unwrap()));
    v.extend([n5(), n5().dual(), c2sq(), witness7(), l_family(1).unwrap()]);
    v.push(subspace_lattice(3, 2).unwrap());
    v.push(FiniteLattice::direct_product(&c2sq(), &chain(3).unwrap()));
    v.push(FiniteLattice::direct_product(&chain(2).unwrap(), &m_k(3).unwrap()));
    v
}

/// The small catalog plus a few larger members.
pub fn catalog() -> Vec<FiniteLattice> {
    let mut v = small_catalog();
    v.extend([l_family(2).unwrap(), l_family(3).unwrap(), fano(), subspace_lattice(2, 3).unwrap()]);
    v
}

/// Least balanced triple above `t`, by listing all balanced triples.
pub fn least_balanced_majorant(l: &FiniteLattice, t: Triple) -> Option<Triple> {
    let le = |a: &Triple, b: &Triple| l.leq(a.x, b.x) && l.leq(a.y, b.y) && l.leq(a.z, b.z);
    let ups: Vec<Triple> = balanced_triples(l).into_iter().filter(|b| le(&t, b)).collect();
    ups.iter().find(|b| ups.iter().all(|c| le(b, c))).copied()
}

pub fn balanced_triples(l: &FiniteLattice) -> Vec<Triple> {
    let n = l.size();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = Triple::new(ElementId(x as u32), ElementId(y as u32), ElementId(z as u32));
                let m = l.meet(t.x, t.y);
                if m == l.meet(t.x, t.z) && m == l.meet(t.y, t.z) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Every bounded lattice whose inner poset has exactly `k` elements, up to
/// relabelling: inner orders are taken over naturally labelled relations
/// (`i < j` only), so each order type appears at least once.
pub fn lattices_with_inner(k: usize) -> Vec<FiniteLattice> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut rel = vec![vec![false; k]; k];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel[i][j] = true;
            }
        }
        let transitive = (0..k).all(|i| {
            (0..k).all(|j| (0..k).all(|m| !(rel[i][j] && rel[j][m]) || rel[i][m]))
        });
        if !transitive {
            continue;
        }
        let n = k + 2;
        let leq = |a: usize, b: usize| a == b || a == 0 || b == n - 1 || (a > 0 && a < n - 1 && b > 0 && b < n - 1 && rel[a - 1][b - 1]);
        if let Ok(l) = FiniteLattice::from_order(format!("inner{k}#{mask}"), None, n, leq) {
            out.push(l);
        }
    }
    out
}
