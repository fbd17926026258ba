//! Finite lattices with dense indices and precomputed order, meet and join tables.

mod io;
mod iso;
mod ops;
mod poset;

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{LatticeError, Result};

pub use io::{parse, serialize, LatticeJson};
pub use iso::{find_isomorphism, find_isomorphism_with_limit, is_isomorphic, DEFAULT_ISO_LIMIT};
pub use poset::{isotone_maps, IsotoneMap, Poset, DEFAULT_ENUMERATION_LIMIT};

/// Dense element index into a [`FiniteLattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Common surface of finite tables and symbolic (infinite) lattices, so the
/// closure machinery can run over either.
pub trait LatticeOps {
    type Elem: Copy + Eq + fmt::Debug;

    fn meet(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn join(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn leq(&self, a: Self::Elem, b: Self::Elem) -> bool;
}

/// Input encoding of a Hasse diagram: `(lower, upper)` pairs over `size` elements.
///
/// Pairs need not be covers; the order is the reflexive-transitive closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverList {
    pub name: String,
    pub size: usize,
    pub covers: Vec<(u32, u32)>,
    pub names: Option<Vec<String>>,
}

impl CoverList {
    pub fn new(size: usize, covers: Vec<(u32, u32)>) -> Self {
        CoverList {
            name: String::new(),
            size,
            covers,
            names: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.names = Some(names.into_iter().map(Into::into).collect());
        self
    }
}

/// Lower and upper cover lists, indexed by element.
type CoverTables = (Vec<Vec<u32>>, Vec<Vec<u32>>);

/// An immutable finite lattice.
///
/// Elements are `0..size`. `down[b]` holds every `a <= b` and `up[a]` every
/// `b >= a`; meet and join are full `size * size` tables.
pub struct FiniteLattice {
    name: String,
    names: Vec<String>,
    n: usize,
    down: Vec<BitSet>,
    up: Vec<BitSet>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: u32,
    top: u32,
    covers: OnceLock<CoverTables>,
    incomparable: OnceLock<Vec<BitSet>>,
}

impl Clone for FiniteLattice {
    fn clone(&self) -> Self {
        FiniteLattice {
            name: self.name.clone(),
            names: self.names.clone(),
            n: self.n,
            down: self.down.clone(),
            up: self.up.clone(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            bottom: self.bottom,
            top: self.top,
            covers: OnceLock::new(),
            incomparable: OnceLock::new(),
        }
    }
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("name", &self.name)
            .field("size", &self.n)
            .finish()
    }
}

/// Two lattices are equal when their tables agree; names are metadata.
impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.down == other.down && self.meet == other.meet && self.join == other.join
    }
}

impl Eq for FiniteLattice {}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl FiniteLattice {
    /// Builds the lattice whose order is generated by `c.covers`.
    pub fn from_covers(c: &CoverList) -> Result<Self> {
        let n = c.size;
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut lower: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(lo, hi) in &c.covers {
            for v in [lo, hi] {
                if v as usize >= n {
                    return Err(LatticeError::InvalidElement { index: v, size: n });
                }
            }
            if lo == hi {
                return Err(LatticeError::CycleDetected(lo));
            }
            lower[hi as usize].push(lo);
            indeg[hi as usize] += 1;
        }
        // Kahn's algorithm over lower -> upper edges.
        let mut upper: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (hi, los) in lower.iter().enumerate() {
            for &lo in los {
                upper[lo as usize].push(hi as u32);
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &upper[v] {
                indeg[w as usize] -= 1;
                if indeg[w as usize] == 0 {
                    stack.push(w as usize);
                }
            }
        }
        if order.len() < n {
            let culprit = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
            return Err(LatticeError::CycleDetected(culprit as u32));
        }
        let mut down = vec![BitSet::new(n); n];
        for &v in &order {
            let mut d = BitSet::new(n);
            d.insert(v);
            for &lo in &lower[v] {
                d.union_with(&down[lo as usize]);
            }
            down[v] = d;
        }
        let names = match &c.names {
            Some(ns) if ns.len() == n => ns.clone(),
            Some(ns) => {
                return Err(LatticeError::Parse {
                    location: "elements".into(),
                    message: format!("{} names for {} elements", ns.len(), n),
                })
            }
            None => default_names(n),
        };
        Self::from_down_sets(c.name.clone(), names, down)
    }

    /// Builds a lattice from a partial order given as a predicate.
    pub fn from_order(
        name: impl Into<String>,
        names: Option<Vec<String>>,
        n: usize,
        leq: impl Fn(usize, usize) -> bool + Sync,
    ) -> Result<Self> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let down: Vec<BitSet> = (0..n)
            .into_par_iter()
            .map(|b| {
                let mut d = BitSet::new(n);
                for a in 0..n {
                    if leq(a, b) {
                        d.insert(a);
                    }
                }
                d
            })
            .collect();
        for (b, d) in down.iter().enumerate() {
            if !d.contains(b) {
                return Err(LatticeError::ArgumentOutOfRange(format!(
                    "order is not reflexive at {b}"
                )));
            }
            for a in d.iter() {
                if a != b && down[a].contains(b) {
                    return Err(LatticeError::CycleDetected(a as u32));
                }
                if !down[a].is_subset(d) {
                    return Err(LatticeError::ArgumentOutOfRange(format!(
                        "order is not transitive through {a} <= {b}"
                    )));
                }
            }
        }
        Self::from_down_sets(name.into(), names.unwrap_or_else(|| default_names(n)), down)
    }

    /// Core constructor: `down` must be the down-sets of a partial order.
    pub(crate) fn from_down_sets(name: String, names: Vec<String>, down: Vec<BitSet>) -> Result<Self> {
        let n = down.len();
        // Strictly smaller elements have strictly smaller down-sets, so sorting
        // by down-set size gives a linear extension.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (down[v].count(), v));
        let mut pos = vec![0usize; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut up = vec![BitSet::new(n); n];
        for (b, d) in down.iter().enumerate() {
            for a in d.iter() {
                up[a].insert(b);
            }
        }
        let relabel = |s: &BitSet| {
            let mut out = BitSet::new(n);
            for v in s.iter() {
                out.insert(pos[v]);
            }
            out
        };
        let dpos: Vec<BitSet> = order.iter().map(|&v| relabel(&down[v])).collect();
        let upos: Vec<BitSet> = order.iter().map(|&v| relabel(&up[v])).collect();

        let rows: Vec<Result<(Vec<u32>, Vec<u32>)>> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut mrow = vec![0u32; n];
                let mut jrow = vec![0u32; n];
                let (pa, da, ua) = (pos[a], &dpos[pos[a]], &upos[pos[a]]);
                let _ = pa;
                for b in 0..n {
                    let pb = pos[b];
                    let lower = da.intersection(&dpos[pb]);
                    let m = lower.last().ok_or(LatticeError::NotALattice(a as u32, b as u32))?;
                    if dpos[m] != lower {
                        return Err(LatticeError::NotALattice(a as u32, b as u32));
                    }
                    let upper = ua.intersection(&upos[pb]);
                    let j = upper.iter().next().ok_or(LatticeError::NotALattice(a as u32, b as u32))?;
                    if upos[j] != upper {
                        return Err(LatticeError::NotALattice(a as u32, b as u32));
                    }
                    mrow[b] = order[m] as u32;
                    jrow[b] = order[j] as u32;
                }
                Ok((mrow, jrow))
            })
            .collect();
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for r in rows {
            let (m, j) = r?;
            meet.extend(m);
            join.extend(j);
        }
        let bottom = order[0] as u32;
        let top = order[n - 1] as u32;
        if up[bottom as usize].count() != n || down[top as usize].count() != n {
            return Err(LatticeError::NotALattice(bottom, top));
        }
        Ok(FiniteLattice {
            name,
            names,
            n,
            down,
            up,
            meet,
            join,
            bottom,
            top,
            covers: OnceLock::new(),
            incomparable: OnceLock::new(),
        })
    }

    /// Builds a lattice from an order and candidate meet/join tables, checking
    /// that the tables really are greatest lower and least upper bounds.
    pub(crate) fn from_tables(
        name: String,
        names: Vec<String>,
        down: Vec<BitSet>,
        meet: Vec<u32>,
        join: Vec<u32>,
    ) -> Result<Self> {
        let n = down.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut up = vec![BitSet::new(n); n];
        for (b, d) in down.iter().enumerate() {
            for a in d.iter() {
                up[a].insert(b);
            }
        }
        let bad = (0..n).into_par_iter().find_any(|&a| {
            (0..n).any(|b| {
                let m = meet[a * n + b] as usize;
                let j = join[a * n + b] as usize;
                down[m] != down[a].intersection(&down[b]) || up[j] != up[a].intersection(&up[b])
            })
        });
        if let Some(a) = bad {
            let b = (0..n)
                .find(|&b| {
                    let m = meet[a * n + b] as usize;
                    let j = join[a * n + b] as usize;
                    down[m] != down[a].intersection(&down[b]) || up[j] != up[a].intersection(&up[b])
                })
                .unwrap_or(0);
            return Err(LatticeError::NotALattice(a as u32, b as u32));
        }
        let bottom = (0..n).find(|&v| up[v].count() == n).ok_or(LatticeError::NotALattice(0, 0))? as u32;
        let top = (0..n).find(|&v| down[v].count() == n).ok_or(LatticeError::NotALattice(0, 0))? as u32;
        Ok(FiniteLattice {
            name,
            names,
            n,
            down,
            up,
            meet,
            join,
            bottom,
            top,
            covers: OnceLock::new(),
            incomparable: OnceLock::new(),
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Replaces element labels. Labels are metadata only.
    pub fn with_element_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.n, "one name per element");
        self.names = names;
        self
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, a: ElementId) -> &str {
        &self.names[a.index()]
    }

    /// Looks an element up by its label.
    pub fn find(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|s| s == name).map(ElementId::from)
    }

    /// Like [`find`](Self::find) but panics on a missing label; for fixtures.
    pub fn el(&self, name: &str) -> ElementId {
        self.find(name)
            .unwrap_or_else(|| panic!("no element named {name:?} in {}", self.name))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.n as u32).map(ElementId)
    }

    pub fn check(&self, a: ElementId) -> Result<()> {
        if a.index() < self.n {
            Ok(())
        } else {
            Err(LatticeError::InvalidElement {
                index: a.0,
                size: self.n,
            })
        }
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.meet[a.index() * self.n + b.index()])
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.join[a.index() * self.n + b.index()])
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.down[b.index()].contains(a.index())
    }

    #[inline]
    pub fn lt(&self, a: ElementId, b: ElementId) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: ElementId, b: ElementId) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn bottom(&self) -> ElementId {
        ElementId(self.bottom)
    }

    pub fn top(&self) -> ElementId {
        ElementId(self.top)
    }

    /// Raw row-major meet table, for hot loops.
    #[inline]
    pub fn meet_table(&self) -> &[u32] {
        &self.meet
    }

    #[inline]
    pub fn join_table(&self) -> &[u32] {
        &self.join
    }

    pub fn down_set(&self, a: ElementId) -> &BitSet {
        &self.down[a.index()]
    }

    pub fn up_set(&self, a: ElementId) -> &BitSet {
        &self.up[a.index()]
    }

    fn cover_lists(&self) -> &CoverTables {
        self.covers.get_or_init(|| {
            let n = self.n;
            let mut lower = vec![Vec::new(); n];
            let mut upper = vec![Vec::new(); n];
            for (a, ups) in self.up.iter().enumerate() {
                for b in ups.iter() {
                    if b != a && ups.intersection(&self.down[b]).count() == 2 {
                        upper[a].push(b as u32);
                        lower[b].push(a as u32);
                    }
                }
            }
            (lower, upper)
        })
    }

    pub fn lower_covers(&self, a: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.cover_lists().0[a.index()].iter().map(|&v| ElementId(v))
    }

    pub fn upper_covers(&self, a: ElementId) -> impl Iterator<Item = ElementId> + '_ {
        self.cover_lists().1[a.index()].iter().map(|&v| ElementId(v))
    }

    /// All cover pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> Vec<(ElementId, ElementId)> {
        let (_, upper) = self.cover_lists();
        let mut out: Vec<_> = upper
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (ElementId(a as u32), ElementId(b))))
            .collect();
        out.sort();
        out
    }

    pub fn to_cover_list(&self) -> CoverList {
        CoverList {
            name: self.name.clone(),
            size: self.n,
            covers: self.covers().into_iter().map(|(a, b)| (a.0, b.0)).collect(),
            names: Some(self.names.clone()),
        }
    }

    /// Length of the longest chain from bottom to each element.
    pub fn heights(&self) -> Vec<u32> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| self.down[v].count());
        let mut h = vec![0u32; self.n];
        let (lower, _) = self.cover_lists();
        for v in order {
            h[v] = lower[v].iter().map(|&u| h[u as usize] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Length of the longest chain in the lattice.
    pub fn height(&self) -> u32 {
        self.heights()[self.top as usize]
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<ElementId> {
        self.elements().filter(|&a| self.lower_covers(a).count() == 1).collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<ElementId> {
        self.elements().filter(|&a| self.upper_covers(a).count() == 1).collect()
    }

    /// Exhaustive check of `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
    pub fn is_distributive(&self) -> bool {
        let n = self.n;
        let (m, j) = (&self.meet, &self.join);
        !(0..n).into_par_iter().any(|x| {
            (0..n).any(|y| {
                (0..n).any(|z| {
                    let lhs = m[x * n + j[y * n + z] as usize];
                    let rhs = j[m[x * n + y] as usize * n + m[x * n + z] as usize];
                    lhs != rhs
                })
            })
        })
    }

    /// Exhaustive check of the modular law: `x <= z` implies `x ∨ (y ∧ z) = (x ∨ y) ∧ z`.
    pub fn is_modular(&self) -> bool {
        let n = self.n;
        let (m, j) = (&self.meet, &self.join);
        !(0..n).into_par_iter().any(|x| {
            self.up[x].iter().any(|z| {
                (0..n).any(|y| {
                    let lhs = j[x * n + m[y * n + z] as usize];
                    let rhs = m[j[x * n + y] as usize * n + z];
                    lhs != rhs
                })
            })
        })
    }

    /// `inc[x]`: elements incomparable to `x`.
    pub fn incomparability(&self) -> &[BitSet] {
        self.incomparable.get_or_init(|| {
            (0..self.n)
                .map(|x| {
                    let mut s = BitSet::full(self.n);
                    for v in self.up[x].iter().chain(self.down[x].iter()) {
                        s.remove(v);
                    }
                    s
                })
                .collect()
        })
    }

    /// Three-element antichains `{x, y, z}` with `x < y < z` as indices, in
    /// lexicographic order.
    pub fn antichains3(&self) -> impl Iterator<Item = [ElementId; 3]> + '_ {
        let inc = self.incomparability();
        (0..self.n).flat_map(move |x| {
            inc[x].iter_above(x).flat_map(move |y| {
                let both = inc[x].intersection(&inc[y]);
                let zs: Vec<usize> = both.iter_above(y).collect();
                zs.into_iter()
                    .map(move |z| [ElementId(x as u32), ElementId(y as u32), ElementId(z as u32)])
            })
        })
    }

    /// Counts three-element antichains without materializing them.
    pub fn count_antichains3(&self) -> u64 {
        let inc = self.incomparability();
        (0..self.n)
            .into_par_iter()
            .map(|x| {
                inc[x]
                    .iter_above(x)
                    .map(|y| inc[x].intersection(&inc[y]).iter_above(y).count() as u64)
                    .sum::<u64>()
            })
            .sum()
    }

    /// Verifies the lattice laws exhaustively: glb/lub characterization,
    /// commutativity, idempotence, absorption, and bounds.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.n;
        for a in self.elements() {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return Err(format!("idempotence fails at {a}"));
            }
            if !self.leq(self.bottom(), a) || !self.leq(a, self.top()) {
                return Err(format!("bounds fail at {a}"));
            }
            for b in self.elements() {
                let m = self.meet(a, b);
                let j = self.join(a, b);
                if m != self.meet(b, a) || j != self.join(b, a) {
                    return Err(format!("commutativity fails at {a},{b}"));
                }
                if self.join(a, m) != a || self.meet(a, j) != a {
                    return Err(format!("absorption fails at {a},{b}"));
                }
                if !self.leq(m, a) || !self.leq(m, b) || !self.leq(a, j) || !self.leq(b, j) {
                    return Err(format!("bound property fails at {a},{b}"));
                }
                if self.leq(a, b) != (m == a) {
                    return Err(format!("order/meet mismatch at {a},{b}"));
                }
            }
        }
        if n <= 64 {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c))
                            || self.join(self.join(a, b), c) != self.join(a, self.join(b, c))
                        {
                            return Err(format!("associativity fails at {a},{b},{c}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl LatticeOps for FiniteLattice {
    type Elem = ElementId;

    #[inline]
    fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        FiniteLattice::meet(self, a, b)
    }

    #[inline]
    fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        FiniteLattice::join(self, a, b)
    }

    #[inline]
    fn leq(&self, a: ElementId, b: ElementId) -> bool {
        FiniteLattice::leq(self, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> FiniteLattice {
        // o < b < a < i, o < c < i
        FiniteLattice::from_covers(
            &CoverList::new(5, vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
                .with_names(["o", "b", "a", "c", "i"]),
        )
        .unwrap()
    }

    #[test]
    fn two_element_chain() {
        let c2 = FiniteLattice::from_covers(&CoverList::new(2, vec![(0, 1)])).unwrap();
        let (z, o) = (ElementId(0), ElementId(1));
        assert_eq!(c2.meet(z, o), z);
        assert_eq!(c2.join(z, o), o);
        assert!(c2.leq(z, o) && !c2.leq(o, z));
    }

    #[test]
    fn pentagon_from_covers() {
        let l = pentagon();
        assert_eq!(l.join(l.el("b"), l.el("c")), l.el("i"));
        assert_eq!(l.meet(l.el("a"), l.el("c")), l.el("o"));
        l.check_axioms().unwrap();
        assert!(!l.is_modular());
    }

    #[test]
    fn missing_join_is_reported() {
        let err = FiniteLattice::from_covers(&CoverList::new(4, vec![(0, 1), (0, 2), (1, 3)])).unwrap_err();
        assert_eq!(err, LatticeError::NotALattice(1, 2));
    }

    #[test]
    fn cycle_is_reported() {
        let err = FiniteLattice::from_covers(&CoverList::new(3, vec![(0, 1), (1, 2), (2, 1)])).unwrap_err();
        assert!(matches!(err, LatticeError::CycleDetected(_)));
    }

    #[test]
    fn out_of_range_cover() {
        let err = FiniteLattice::from_covers(&CoverList::new(2, vec![(0, 2)])).unwrap_err();
        assert_eq!(err, LatticeError::InvalidElement { index: 2, size: 2 });
    }

    #[test]
    fn covers_recovered_from_transitive_input() {
        let l = FiniteLattice::from_covers(&CoverList::new(3, vec![(0, 1), (1, 2), (0, 2)])).unwrap();
        let cov: Vec<_> = l.covers().into_iter().map(|(a, b)| (a.0, b.0)).collect();
        assert_eq!(cov, vec![(0, 1), (1, 2)]);
        assert_eq!(l.height(), 2);
    }

    #[test]
    fn join_irreducibles_of_pentagon() {
        let l = pentagon();
        let j: Vec<_> = l.join_irreducibles().into_iter().map(|e| l.name_of(e).to_string()).collect();
        assert_eq!(j, vec!["b", "a", "c"]);
    }
}
