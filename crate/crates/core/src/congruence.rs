//! Congruences of finite lattices, the congruence lattice, and the check that
//! `M_3[L]` is a congruence-preserving extension of `L`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{embed_atom, embed_diag, M3OfL};
use crate::error::{LatticeError, Result};
use crate::lattice::{ElementId, FiniteLattice};

pub const DEFAULT_CON_CAP: usize = 300;

/// A partition given by block ids, numbered in order of first appearance so
/// that equal partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Congruence {
    block: Vec<u32>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi as usize] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let roots: Vec<u32> = (0..n as u32).map(|x| self.find(x)).collect();
        Congruence::from_labels(&roots)
    }
}

impl Congruence {
    /// Canonical partition from arbitrary labels.
    pub fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut ids = HashMap::new();
        let block = labels
            .iter()
            .map(|l| {
                let next = ids.len() as u32;
                *ids.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { block }
    }

    pub fn identity(n: usize) -> Self {
        Congruence {
            block: (0..n as u32).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence { block: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.block.len()
    }

    pub fn block_of(&self, a: ElementId) -> u32 {
        self.block[a.index()]
    }

    pub fn related(&self, a: ElementId, b: ElementId) -> bool {
        self.block[a.index()] == self.block[b.index()]
    }

    pub fn num_blocks(&self) -> usize {
        self.block.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<ElementId>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.block.iter().enumerate() {
            out[b as usize].push(ElementId::from(i));
        }
        out
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut image = vec![u32::MAX; self.num_blocks()];
        self.block.iter().zip(&other.block).all(|(&a, &b)| {
            let slot = &mut image[a as usize];
            if *slot == u32::MAX {
                *slot = b;
            }
            *slot == b
        })
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<(u32, u32)> = self.block.iter().copied().zip(other.block.iter().copied()).collect();
        Congruence::from_labels(&pairs)
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for c in [self, other] {
            let mut first = vec![u32::MAX; c.num_blocks()];
            for (i, &b) in c.block.iter().enumerate() {
                if first[b as usize] == u32::MAX {
                    first[b as usize] = i as u32;
                } else {
                    uf.union(first[b as usize], i as u32);
                }
            }
        }
        uf.into_congruence()
    }

    /// Exhaustive substitution check: `a ≡ b` implies `a∧c ≡ b∧c` and `a∨c ≡ b∨c`.
    pub fn is_congruence_of(&self, l: &FiniteLattice) -> bool {
        self.size() == l.size()
            && self.blocks().iter().all(|blk| {
                blk.windows(2).all(|w| {
                    l.elements().all(|c| {
                        self.related(l.meet(w[0], c), l.meet(w[1], c)) && self.related(l.join(w[0], c), l.join(w[1], c))
                    })
                })
            })
    }

    pub fn describe(&self, l: &FiniteLattice) -> String {
        self.blocks()
            .iter()
            .map(|b| b.iter().map(|&e| l.name_of(e)).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// Least congruence identifying `a` and `b`. Each successful merge enqueues
/// its translates by `∨ c` and `∧ c`; the equivalence generated by merged
/// pairs whose translates are all related is a congruence.
pub fn principal_congruence(l: &FiniteLattice, a: ElementId, b: ElementId) -> Congruence {
    let mut uf = UnionFind::new(l.size());
    let mut work = vec![(a, b)];
    while let Some((x, y)) = work.pop() {
        if !uf.union(x.0, y.0) {
            continue;
        }
        for c in l.elements() {
            work.push((l.join(x, c), l.join(y, c)));
            work.push((l.meet(x, c), l.meet(y, c)));
        }
    }
    uf.into_congruence()
}

/// `Con L` with each element tagged by its partition.
pub struct ConLattice {
    pub congruences: Vec<Congruence>,
    pub lattice: FiniteLattice,
}

impl ConLattice {
    pub fn size(&self) -> usize {
        self.congruences.len()
    }

    pub fn index_of(&self, c: &Congruence) -> Option<ElementId> {
        self.congruences.iter().position(|x| x == c).map(ElementId::from)
    }
}

/// All congruences as joins of principal congruences of cover pairs, or of
/// all pairs when `all_pairs` is set.
pub fn all_congruences_with(l: &FiniteLattice, cap: usize, all_pairs: bool) -> Result<ConLattice> {
    if l.size() > cap {
        return Err(LatticeError::SizeLimitExceeded { size: l.size(), limit: cap });
    }
    let pairs: Vec<(ElementId, ElementId)> = if all_pairs {
        l.elements()
            .flat_map(|a| l.elements().filter(move |&b| a < b).map(move |b| (a, b)))
            .collect()
    } else {
        l.covers()
    };
    let mut gens: Vec<Congruence> = pairs
        .par_iter()
        .map(|&(a, b)| principal_congruence(l, a, b))
        .collect();
    gens.sort();
    gens.dedup();
    let id = Congruence::identity(l.size());
    let mut found = vec![id.clone()];
    let mut seen: HashSet<Congruence> = HashSet::from([id]);
    let mut i = 0;
    while i < found.len() {
        let cur = found[i].clone();
        for g in &gens {
            let next = cur.join(g);
            if seen.insert(next.clone()) {
                found.push(next);
            }
        }
        i += 1;
    }
    found.sort_by_key(|c| (l.size() - c.num_blocks(), c.clone()));
    let names = found.iter().map(|c| c.describe(l)).collect();
    let lattice = FiniteLattice::from_order(format!("Con({})", l.name()), Some(names), found.len(), |a, b| {
        found[a].refines(&found[b])
    })?;
    Ok(ConLattice {
        congruences: found,
        lattice,
    })
}

pub fn all_congruences(l: &FiniteLattice) -> Result<ConLattice> {
    all_congruences_with(l, DEFAULT_CON_CAP, false)
}

/// `M_3[Θ]`: triples related when all three coordinates are `Θ`-related.
pub fn extend_congruence(k: &M3OfL, theta: &Congruence) -> Result<Congruence> {
    let labels: Vec<[u32; 3]> = k
        .tuples()
        .iter()
        .map(|t| t.map(|v| theta.block_of(ElementId(v))))
        .collect();
    let ext = Congruence::from_labels(&labels);
    if !ext.is_congruence_of(k.lattice()) {
        return Err(LatticeError::SubstitutionFailure(format!(
            "componentwise extension of {} is not a congruence of M3",
            theta.describe(k.base())
        )));
    }
    Ok(ext)
}

/// Pulls a congruence back along an embedding `map` (indexed by source element).
pub fn restrict(phi: &Congruence, map: &[ElementId]) -> Congruence {
    let labels: Vec<u32> = map.iter().map(|&e| phi.block_of(e)).collect();
    Congruence::from_labels(&labels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Embedding {
    Atom,
    Diag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CpeReport {
    pub embedding: Embedding,
    pub con_base: usize,
    pub con_m3: usize,
    /// Each extension is a congruence of `M_3[L]`.
    pub extensions_are_congruences: bool,
    /// Distinct congruences extend to distinct congruences.
    pub injective: bool,
    /// Every congruence of `M_3[L]` is the extension of its restriction.
    pub every_congruence_extended: bool,
    /// Restricting an extension gives back the original.
    pub restriction_inverts: bool,
    /// Extension preserves and reflects refinement.
    pub order_isomorphism: bool,
    pub passed: bool,
}

/// Builds `M_3[L]` and checks the congruence correspondence along `embedding`.
pub fn verify_cpe(l: &FiniteLattice, embedding: Embedding) -> Result<CpeReport> {
    verify_cpe_with(l, &crate::construct::m3_of(l)?, embedding)
}

pub fn verify_cpe_with(l: &FiniteLattice, k: &M3OfL, embedding: Embedding) -> Result<CpeReport> {
    let con_l = all_congruences(l)?;
    let con_k = all_congruences(k.lattice())?;
    let map = match embedding {
        Embedding::Atom => embed_atom(k),
        Embedding::Diag => embed_diag(k),
    };
    let mut exts = Vec::with_capacity(con_l.size());
    let mut extensions_are_congruences = true;
    for theta in &con_l.congruences {
        match extend_congruence(k, theta) {
            Ok(e) => exts.push(e),
            Err(_) => {
                extensions_are_congruences = false;
                exts.push(Congruence::identity(k.size()));
            }
        }
    }
    let distinct: HashSet<&Congruence> = exts.iter().collect();
    let injective = distinct.len() == exts.len();
    let restriction_inverts = con_l
        .congruences
        .iter()
        .zip(&exts)
        .all(|(theta, e)| restrict(e, &map) == *theta);
    let every_congruence_extended = con_k.congruences.iter().all(|phi| {
        let theta = restrict(phi, &map);
        con_l.index_of(&theta).is_some_and(|i| exts[i.index()] == *phi)
    });
    let order_isomorphism = con_l.congruences.iter().enumerate().all(|(i, a)| {
        con_l
            .congruences
            .iter()
            .enumerate()
            .all(|(j, b)| a.refines(b) == exts[i].refines(&exts[j]))
    });
    let passed = extensions_are_congruences
        && injective
        && restriction_inverts
        && every_congruence_extended
        && order_isomorphism
        && con_l.size() == con_k.size();
    Ok(CpeReport {
        embedding,
        con_base: con_l.size(),
        con_m3: con_k.size(),
        extensions_are_congruences,
        injective,
        every_congruence_extended,
        restriction_inverts,
        order_isomorphism,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{chain, m_k};

    #[test]
    fn chain_interval_collapse() {
        let c3 = chain(3).unwrap();
        let t = principal_congruence(&c3, ElementId(0), ElementId(1));
        assert_eq!(t.blocks(), vec![vec![ElementId(0), ElementId(1)], vec![ElementId(2)]]);
        assert!(t.is_congruence_of(&c3));
    }

    #[test]
    fn trivial_principal() {
        let m3 = m_k(3).unwrap();
        assert_eq!(principal_congruence(&m3, ElementId(2), ElementId(2)), Congruence::identity(5));
    }

    #[test]
    fn refinement_and_operations() {
        let a = Congruence::from_labels(&[0, 0, 1, 2]);
        let b = Congruence::from_labels(&[0, 1, 1, 2]);
        assert_eq!(a.join(&b), Congruence::from_labels(&[0, 0, 0, 1]));
        assert_eq!(a.meet(&b), Congruence::identity(4));
        assert!(a.refines(&a.join(&b)));
        assert!(!a.refines(&b));
    }

    #[test]
    fn cap_enforced() {
        let c = chain(5).unwrap();
        assert!(matches!(
            all_congruences_with(&c, 4, false),
            Err(LatticeError::SizeLimitExceeded { .. })
        ));
    }
}
