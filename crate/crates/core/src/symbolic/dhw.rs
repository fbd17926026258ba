//! The lattice of pairs over `N ∪ {∞}` whose quadruple adjustment never
//! reaches a fixpoint.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::OracleLattice;
use crate::lattice::LatticeOps;
use crate::rank::{closure4, ClosureTrace, Quadruple};

/// A natural number or `∞`. `∞ ± 1 = ∞`; subtraction saturates at 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub fn succ(self) -> Self {
        match self {
            ExtNat::Fin(n) => ExtNat::Fin(n + 1),
            ExtNat::Inf => ExtNat::Inf,
        }
    }

    pub fn pred(self) -> Self {
        match self {
            ExtNat::Fin(n) => ExtNat::Fin(n.saturating_sub(1)),
            ExtNat::Inf => ExtNat::Inf,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.cmp(b),
            (ExtNat::Fin(_), ExtNat::Inf) => Ordering::Less,
            (ExtNat::Inf, ExtNat::Fin(_)) => Ordering::Greater,
            (ExtNat::Inf, ExtNat::Inf) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DhwElement(pub ExtNat, pub ExtNat);

impl DhwElement {
    pub fn fin(i: u64, j: u64) -> Self {
        DhwElement(ExtNat::Fin(i), ExtNat::Fin(j))
    }
}

impl fmt::Display for DhwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.0, self.1)
    }
}

/// `⟨i,j⟩ ∼ ⟨k,l⟩`: all finite values among `i, j, k, l` share a parity.
pub fn dhw_similar(a: DhwElement, b: DhwElement) -> bool {
    let fin: Vec<u64> = [a.0, a.1, b.0, b.1]
        .into_iter()
        .filter_map(|v| match v {
            ExtNat::Fin(n) => Some(n % 2),
            ExtNat::Inf => None,
        })
        .collect();
    fin.windows(2).all(|w| w[0] == w[1])
}

/// Valid elements: the pairs similar to `<∞,∞>`, which means both finite
/// coordinates share a parity.
pub fn dhw_valid(a: DhwElement) -> bool {
    dhw_similar(a, DhwElement(ExtNat::Inf, ExtNat::Inf))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DhwLattice;

pub fn dhw_lattice() -> DhwLattice {
    DhwLattice
}

impl LatticeOps for DhwLattice {
    type Elem = DhwElement;

    fn meet(&self, a: DhwElement, b: DhwElement) -> DhwElement {
        let (DhwElement(i, j), DhwElement(k, l)) = (a, b);
        if dhw_similar(a, b) {
            DhwElement(i.min(k), j.min(l))
        } else if i.min(j) >= k.min(l) {
            let m = i.pred().min(j.pred());
            DhwElement(m.min(k), m.min(l))
        } else {
            let m = k.pred().min(l.pred());
            DhwElement(i.min(m), j.min(m))
        }
    }

    fn join(&self, a: DhwElement, b: DhwElement) -> DhwElement {
        let (DhwElement(i, j), DhwElement(k, l)) = (a, b);
        if dhw_similar(a, b) {
            DhwElement(i.max(k), j.max(l))
        } else if i.max(j) <= k.max(l) {
            let m = i.succ().max(j.succ());
            DhwElement(m.max(k), m.max(l))
        } else {
            let m = k.succ().max(l.succ());
            DhwElement(i.max(m), j.max(m))
        }
    }

    fn leq(&self, a: DhwElement, b: DhwElement) -> bool {
        self.meet(a, b) == a
    }
}

impl OracleLattice for DhwLattice {
    fn bottom(&self) -> DhwElement {
        DhwElement::fin(0, 0)
    }

    fn top(&self) -> DhwElement {
        DhwElement(ExtNat::Inf, ExtNat::Inf)
    }

    /// Valid pairs over `{0..=k} ∪ {∞}`.
    fn truncation(&self, k: usize) -> Vec<DhwElement> {
        let vals: Vec<ExtNat> = (0..=k as u64).map(ExtNat::Fin).chain([ExtNat::Inf]).collect();
        let mut out = Vec::new();
        for &a in &vals {
            for &b in &vals {
                let e = DhwElement(a, b);
                if dhw_valid(e) {
                    out.push(e);
                }
            }
        }
        out
    }

    fn label(&self, e: DhwElement) -> String {
        e.to_string()
    }
}

/// `<x, y, z, t> = <<0,∞>, <1,∞>, <∞,1>, <∞,0>>`.
pub fn dhw_base_quadruple() -> Quadruple<DhwElement> {
    use ExtNat::{Fin, Inf};
    Quadruple([
        DhwElement(Fin(0), Inf),
        DhwElement(Fin(1), Inf),
        DhwElement(Inf, Fin(1)),
        DhwElement(Inf, Fin(0)),
    ])
}

/// Expected `m`-th iterate from the closed forms, `m >= 1`:
/// `x^(m) = <2⌈m/2⌉, ∞>`, `y^(m) = <2⌊m/2⌋ + 1, ∞>`, with `t`, `z` mirrored.
pub fn dhw_closed_form(m: usize) -> Quadruple<DhwElement> {
    use ExtNat::{Fin, Inf};
    let m = m as u64;
    let xs = 2 * m.div_ceil(2);
    let ys = 2 * (m / 2) + 1;
    Quadruple([
        DhwElement(Fin(xs), Inf),
        DhwElement(Fin(ys), Inf),
        DhwElement(Inf, Fin(ys)),
        DhwElement(Inf, Fin(xs)),
    ])
}

/// Runs the quadruple adjustment from the base quadruple for `steps + 1`
/// applications. The returned trace has `index == None` when no fixpoint
/// appeared.
pub fn dhw_adjustment(steps: usize) -> ClosureTrace<Quadruple<DhwElement>> {
    closure4(&DhwLattice, dhw_base_quadruple(), steps)
}
