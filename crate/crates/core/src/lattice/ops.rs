use std::collections::{HashSet, VecDeque};

use super::{ElementId, FiniteLattice};
use crate::bitset::BitSet;
use crate::error::{LatticeError, Result};

impl FiniteLattice {
    /// Componentwise product; element `(a, b)` has index `a * |B| + b`.
    pub fn direct_product(a: &FiniteLattice, b: &FiniteLattice) -> FiniteLattice {
        let (na, nb) = (a.size(), b.size());
        let n = na * nb;
        let mut names = Vec::with_capacity(n);
        let mut down = Vec::with_capacity(n);
        for i in 0..na {
            for j in 0..nb {
                names.push(format!("({},{})", a.names[i], b.names[j]));
                let mut d = BitSet::new(n);
                for di in a.down[i].iter() {
                    for dj in b.down[j].iter() {
                        d.insert(di * nb + dj);
                    }
                }
                down.push(d);
            }
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for x in 0..n {
            let (xi, xj) = (x / nb, x % nb);
            for y in 0..n {
                let (yi, yj) = (y / nb, y % nb);
                meet[x * n + y] = a.meet[xi * na + yi] * nb as u32 + b.meet[xj * nb + yj];
                join[x * n + y] = a.join[xi * na + yi] * nb as u32 + b.join[xj * nb + yj];
            }
        }
        let name = format!("{}x{}", a.name, b.name);
        FiniteLattice::from_tables(name, names, down, meet, join).expect("product of lattices is a lattice")
    }

    /// Order reversed; meet and join swap roles.
    pub fn dual(&self) -> FiniteLattice {
        FiniteLattice::from_tables(
            format!("{}^d", self.name),
            self.names.clone(),
            self.up.clone(),
            self.join.clone(),
            self.meet.clone(),
        )
        .expect("dual of a lattice is a lattice")
    }

    /// The elements of `s` closed under meet and join, as a lattice with the
    /// induced operations. Returns the lattice and its embedding (new index to old).
    pub fn sublattice(&self, s: &[ElementId]) -> Result<(FiniteLattice, Vec<ElementId>)> {
        let mut elems: Vec<ElementId> = s.to_vec();
        for &e in &elems {
            self.check(e)?;
        }
        elems.sort();
        elems.dedup();
        if elems.is_empty() {
            return Err(LatticeError::Empty);
        }
        let mut index = vec![u32::MAX; self.n];
        for (k, e) in elems.iter().enumerate() {
            index[e.index()] = k as u32;
        }
        let m = elems.len();
        let mut meet = vec![0u32; m * m];
        let mut join = vec![0u32; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                let mi = index[self.meet(a, b).index()];
                let ji = index[self.join(a, b).index()];
                if mi == u32::MAX || ji == u32::MAX {
                    return Err(LatticeError::NotASublattice);
                }
                meet[i * m + j] = mi;
                join[i * m + j] = ji;
            }
        }
        let down = elems
            .iter()
            .map(|&e| {
                let mut d = BitSet::new(m);
                for (k, &f) in elems.iter().enumerate() {
                    if self.leq(f, e) {
                        d.insert(k);
                    }
                }
                d
            })
            .collect();
        let names = elems.iter().map(|&e| self.names[e.index()].clone()).collect();
        let l = FiniteLattice::from_tables(format!("sub({})", self.name), names, down, meet, join)?;
        Ok((l, elems))
    }

    /// Closure of `gens` under meet and join.
    pub fn generated_sublattice(&self, gens: &[ElementId]) -> Vec<ElementId> {
        let mut seen: Vec<ElementId> = Vec::new();
        let mut set = BitSet::new(self.n);
        let mut queue: VecDeque<ElementId> = VecDeque::new();
        for &g in gens {
            if set.insert(g.index()) {
                queue.push_back(g);
            }
        }
        while let Some(a) = queue.pop_front() {
            seen.push(a);
            let snapshot = seen.clone();
            for b in snapshot {
                for c in [self.meet(a, b), self.join(a, b)] {
                    if set.insert(c.index()) {
                        queue.push_back(c);
                    }
                }
            }
        }
        seen.sort();
        seen
    }

    /// The interval `[a, b]`.
    pub fn interval(&self, a: ElementId, b: ElementId) -> Result<FiniteLattice> {
        self.check(a)?;
        self.check(b)?;
        if !self.leq(a, b) {
            return Err(LatticeError::NotComparable(a.0, b.0));
        }
        let elems: Vec<ElementId> = self.up[a.index()]
            .intersection(&self.down[b.index()])
            .iter()
            .map(ElementId::from)
            .collect();
        let (l, _) = self.sublattice(&elems)?;
        Ok(l.with_name(format!("[{},{}]", self.name_of(a), self.name_of(b))))
    }

    /// Least ideal containing `s`, computed by alternating down-closure and
    /// pairwise joins.
    fn ideal_closure(&self, mut s: BitSet) -> BitSet {
        loop {
            let mut next = s.clone();
            for x in s.iter() {
                next.union_with(&self.down[x]);
            }
            let members: Vec<usize> = next.iter().collect();
            for (i, &x) in members.iter().enumerate() {
                for &y in &members[i + 1..] {
                    next.insert(self.join[x * self.n + y] as usize);
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// All nonempty ideals ordered by inclusion, found by breadth-first
    /// closure from the least ideal. Each ideal is labelled by its largest member.
    pub fn ideal_lattice(&self) -> FiniteLattice {
        let mut start = BitSet::new(self.n);
        start.insert(self.bottom as usize);
        let start = self.ideal_closure(start);
        let mut ideals = vec![start.clone()];
        let mut seen: HashSet<BitSet> = HashSet::from([start]);
        let mut i = 0;
        while i < ideals.len() {
            let cur = ideals[i].clone();
            for x in 0..self.n {
                if !cur.contains(x) {
                    let mut s = cur.clone();
                    s.insert(x);
                    let next = self.ideal_closure(s);
                    if seen.insert(next.clone()) {
                        ideals.push(next);
                    }
                }
            }
            i += 1;
        }
        let names = ideals
            .iter()
            .map(|id| {
                let top = id
                    .iter()
                    .find(|&x| self.down[x] == *id)
                    .map(|x| self.names[x].clone())
                    .unwrap_or_else(|| "?".into());
                format!("({top}]")
            })
            .collect();
        FiniteLattice::from_order(format!("Id({})", self.name), Some(names), ideals.len(), |a, b| {
            ideals[a].is_subset(&ideals[b])
        })
        .expect("ideals of a lattice form a lattice")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CoverList;

    fn chain(n: usize) -> FiniteLattice {
        let covers = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        FiniteLattice::from_covers(&CoverList::new(n, covers)).unwrap()
    }

    #[test]
    fn product_is_componentwise() {
        let p = FiniteLattice::direct_product(&chain(3), &chain(2));
        assert_eq!(p.size(), 6);
        for x in p.elements() {
            for y in p.elements() {
                let (xi, xj) = (x.index() / 2, x.index() % 2);
                let (yi, yj) = (y.index() / 2, y.index() % 2);
                assert_eq!(p.leq(x, y), xi <= yi && xj <= yj);
            }
        }
        p.check_axioms().unwrap();
    }

    #[test]
    fn dual_is_an_involution() {
        let l = FiniteLattice::from_covers(&CoverList::new(5, vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])).unwrap();
        assert!(l.dual().dual() == l);
        assert_eq!(l.dual().top(), l.bottom());
    }

    #[test]
    fn interval_needs_comparable_bounds() {
        let l = FiniteLattice::direct_product(&chain(2), &chain(2));
        assert_eq!(
            l.interval(ElementId(1), ElementId(2)).unwrap_err(),
            LatticeError::NotComparable(1, 2)
        );
        assert_eq!(l.interval(ElementId(0), ElementId(1)).unwrap().size(), 2);
    }

    #[test]
    fn non_closed_subset_is_rejected() {
        let l = FiniteLattice::direct_product(&chain(2), &chain(2));
        assert_eq!(
            l.sublattice(&[ElementId(1), ElementId(2)]).unwrap_err(),
            LatticeError::NotASublattice
        );
    }

    #[test]
    fn ideals_of_a_chain() {
        assert_eq!(chain(3).ideal_lattice().size(), 3);
    }
}
