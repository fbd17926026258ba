use super::{ElementId, FiniteLattice};
use crate::bitset::BitSet;
use crate::error::{LatticeError, Result};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

/// A finite poset; `down[b]` holds every `a <= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    down: Vec<BitSet>,
}

impl Poset {
    pub fn antichain(k: usize) -> Self {
        Poset::from_leq((0..k).map(|i| i.to_string()).collect(), |a, b| a == b)
    }

    pub fn chain(k: usize) -> Self {
        Poset::from_leq((0..k).map(|i| i.to_string()).collect(), |a, b| a <= b)
    }

    /// `leq` must already be a partial order.
    pub fn from_leq(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        let down = (0..n)
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
        Poset { names, down }
    }

    /// The subposet of `l` induced on `elems`.
    pub fn induced(l: &FiniteLattice, elems: &[ElementId]) -> Self {
        let names = elems.iter().map(|&e| l.name_of(e).to_string()).collect();
        Poset::from_leq(names, |a, b| l.leq(elems[a], elems[b]))
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    /// Indices sorted so that every element follows everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by_key(|&v| (self.down[v].count(), v));
        order
    }
}

/// An order-preserving map from a poset into a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotoneMap {
    pub values: Vec<ElementId>,
}

impl IsotoneMap {
    pub fn leq(&self, other: &IsotoneMap, t: &FiniteLattice) -> bool {
        self.values.iter().zip(&other.values).all(|(&a, &b)| t.leq(a, b))
    }
}

/// Every isotone map `p -> t`, in lexicographic order of value tables.
pub fn isotone_maps(p: &Poset, t: &FiniteLattice, limit: usize) -> Result<Vec<IsotoneMap>> {
    let n = p.size();
    let order = p.linear_extension();
    let below: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| p.down[x].iter().filter(|&y| y != x).collect())
        .collect();
    let mut out = Vec::new();
    let mut values = vec![ElementId(0); n];
    fn go(
        k: usize,
        order: &[usize],
        below: &[Vec<usize>],
        t: &FiniteLattice,
        values: &mut Vec<ElementId>,
        out: &mut Vec<IsotoneMap>,
        limit: usize,
    ) -> Result<()> {
        if k == order.len() {
            if out.len() >= limit {
                return Err(LatticeError::EnumerationLimitExceeded { limit });
            }
            out.push(IsotoneMap { values: values.clone() });
            return Ok(());
        }
        let x = order[k];
        for v in t.elements() {
            if below[k].iter().all(|&y| t.leq(values[y], v)) {
                values[x] = v;
                go(k + 1, order, below, t, values, out, limit)?;
            }
        }
        Ok(())
    }
    go(0, &order, &below, t, &mut values, &mut out, limit)?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::CoverList;

    #[test]
    fn monotone_maps_between_two_chains() {
        let c2 = FiniteLattice::from_covers(&CoverList::new(2, vec![(0, 1)])).unwrap();
        assert_eq!(isotone_maps(&Poset::chain(2), &c2, 100).unwrap().len(), 3);
    }

    #[test]
    fn limit_trips() {
        let c2 = FiniteLattice::from_covers(&CoverList::new(2, vec![(0, 1)])).unwrap();
        assert_eq!(
            isotone_maps(&Poset::antichain(3), &c2, 7).unwrap_err(),
            LatticeError::EnumerationLimitExceeded { limit: 7 }
        );
    }
}
