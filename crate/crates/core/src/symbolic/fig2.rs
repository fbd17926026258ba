//! A lattice of infinite modularity rank: a completion of the relations
//! around the ascending chains `x_n`, `z_n` and the descending `u_n`, `v_n`.
//!
//! Order, for all naturals `k`:
//! - centre ladder `c_k < l_k, r_k < c_{k+1}`;
//! - `x_n` ascends with `x_n > l_n` and `x_n ≱ r_n`; `z_n` mirrors it with `r_n`;
//! - `w_k` descends, above the whole ladder, and `w_0 < y_0`;
//! - `u_k` descends, above every `x_n`, with `w_j ≤ u_k` iff `k ≤ j`; `v_k`
//!   mirrors it over the `z_n`.
//!
//! The extra `l_k`, `r_k`, `w_k` are needed to make `⟨x_0, y_0, z_0⟩` move
//! at every step: `x_n ∧ y_0 = l_n`, `z_n ∧ y_0 = r_n`, `x_n ∨ r_n = x_{n+1}`.
//! Consequently `x_i ∧ z_j` is `c_i` only on the diagonal; off it the meet
//! is `l_i` (`i < j`) or `r_j` (`i > j`).

use std::fmt;

use serde::Serialize;

use super::OracleLattice;
use crate::lattice::LatticeOps;
use crate::rank::{closure3, is_balanced3, ClosureTrace, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Fig2Element {
    Bottom,
    Top,
    Y,
    C(u32),
    L(u32),
    R(u32),
    W(u32),
    X(u32),
    Z(u32),
    U(u32),
    V(u32),
}

use Fig2Element::*;

impl Fig2Element {
    pub fn index(self) -> u32 {
        match self {
            Bottom | Top | Y => 0,
            C(k) | L(k) | R(k) | W(k) | X(k) | Z(k) | U(k) | V(k) => k,
        }
    }

    /// Position in the centre ladder, if on it.
    fn level(self) -> Option<u32> {
        match self {
            C(k) => Some(2 * k),
            L(k) | R(k) => Some(2 * k + 1),
            _ => None,
        }
    }
}

impl fmt::Display for Fig2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Bottom => write!(f, "0"),
            Top => write!(f, "1"),
            Y => write!(f, "y0"),
            C(k) => write!(f, "c{k}"),
            L(k) => write!(f, "l{k}"),
            R(k) => write!(f, "r{k}"),
            W(k) => write!(f, "w{k}"),
            X(k) => write!(f, "x{k}"),
            Z(k) => write!(f, "z{k}"),
            U(k) => write!(f, "u{k}"),
            V(k) => write!(f, "v{k}"),
        }
    }
}

fn ladder_leq(a: Fig2Element, b: Fig2Element) -> bool {
    a == b || a.level() < b.level()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Fig2Lattice;

pub fn fig2_lattice() -> Fig2Lattice {
    Fig2Lattice
}

impl Fig2Lattice {
    /// Every element with index at most `k`, plus `0`, `1`, `y0`.
    pub fn window(k: u32) -> Vec<Fig2Element> {
        let mut out = vec![Bottom, Top, Y];
        for i in 0..=k {
            out.extend([C(i), L(i), R(i), W(i), X(i), Z(i), U(i), V(i)]);
        }
        out
    }

    // Every meet and join of a, b has index at most max + 1, so a window of
    // max + 2 contains it.
    fn extremum(&self, a: Fig2Element, b: Fig2Element, lower: bool) -> Fig2Element {
        let k = a.index().max(b.index()) + 2;
        let bound = |c: Fig2Element| {
            if lower {
                self.leq(c, a) && self.leq(c, b)
            } else {
                self.leq(a, c) && self.leq(b, c)
            }
        };
        let better = |g: Fig2Element, c: Fig2Element| if lower { self.leq(g, c) } else { self.leq(c, g) };
        let cands: Vec<Fig2Element> = Self::window(k).into_iter().filter(|&c| bound(c)).collect();
        let mut g = if lower { Bottom } else { Top };
        for &c in &cands {
            if better(g, c) {
                g = c;
            }
        }
        debug_assert!(cands.iter().all(|&c| better(c, g)));
        g
    }
}

impl LatticeOps for Fig2Lattice {
    type Elem = Fig2Element;

    fn meet(&self, a: Fig2Element, b: Fig2Element) -> Fig2Element {
        self.extremum(a, b, true)
    }

    fn join(&self, a: Fig2Element, b: Fig2Element) -> Fig2Element {
        self.extremum(a, b, false)
    }

    fn leq(&self, a: Fig2Element, b: Fig2Element) -> bool {
        match (a, b) {
            (Bottom, _) | (_, Top) => true,
            (Top, _) | (_, Bottom) => false,
            (C(_) | L(_) | R(_), _) => match b {
                C(_) | L(_) | R(_) => ladder_leq(a, b),
                X(n) => ladder_leq(a, L(n)),
                Z(n) => ladder_leq(a, R(n)),
                _ => true,
            },
            (X(i), X(j)) | (Z(i), Z(j)) => i <= j,
            (X(_), U(_)) | (Z(_), V(_)) => true,
            (W(k), W(j) | U(j) | V(j)) => j <= k,
            (W(_), Y) => true,
            (Y, Y) => true,
            (U(i), U(j)) | (V(i), V(j)) => j <= i,
            _ => false,
        }
    }
}

impl OracleLattice for Fig2Lattice {
    fn bottom(&self) -> Fig2Element {
        Bottom
    }

    fn top(&self) -> Fig2Element {
        Top
    }

    fn truncation(&self, k: usize) -> Vec<Fig2Element> {
        Self::window(k as u32)
    }

    fn label(&self, e: Fig2Element) -> String {
        e.to_string()
    }
}

fn triple_leq(l: &Fig2Lattice, a: &Triple<Fig2Element>, b: &Triple<Fig2Element>) -> bool {
    l.leq(a.x, b.x) && l.leq(a.y, b.y) && l.leq(a.z, b.z)
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig2Divergence {
    pub steps: usize,
    pub trace: ClosureTrace<Triple<Fig2Element>>,
    /// Iterate `n` is `⟨x_n, y0, z_n⟩` for every computed `n`.
    pub matches_ladder: bool,
    pub strictly_increasing: bool,
    /// Every `⟨u_m, y0, v_m⟩`, `m <= steps`, is balanced and lies above every iterate.
    pub majorized: bool,
}

impl Fig2Divergence {
    pub fn passed(&self) -> bool {
        !self.trace.stabilized() && self.matches_ladder && self.strictly_increasing && self.majorized
    }
}

/// Runs the triple adjustment from `⟨x_0, y0, z_0⟩` with cap `steps`.
pub fn fig2_divergence(steps: usize) -> Fig2Divergence {
    let l = Fig2Lattice;
    let trace = closure3(&l, Triple::new(X(0), Y, Z(0)), steps);
    let all: Vec<&Triple<Fig2Element>> = std::iter::once(&trace.initial).chain(&trace.iterates).collect();
    let matches_ladder = all
        .iter()
        .enumerate()
        .all(|(n, t)| **t == Triple::new(X(n as u32), Y, Z(n as u32)));
    let strictly_increasing = all
        .windows(2)
        .all(|w| w[0] != w[1] && triple_leq(&l, w[0], w[1]));
    let majorized = (0..=steps as u32).all(|m| {
        let ub = Triple::new(U(m), Y, V(m));
        is_balanced3(&l, &ub) && all.iter().all(|t| triple_leq(&l, t, &ub))
    });
    Fig2Divergence {
        steps,
        trace,
        matches_ladder,
        strictly_increasing,
        majorized,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::validate_sample;

    #[test]
    fn truncations_are_lattices() {
        let l = fig2_lattice();
        for k in 0..4 {
            validate_sample(&l, &l.truncation(k)).unwrap();
        }
    }

    #[test]
    fn quoted_relations() {
        let l = fig2_lattice();
        for i in 0..6 {
            assert_eq!(l.meet(X(i), Z(i)), C(i));
            for j in 0..6 {
                assert_eq!(l.join(X(i), Z(j)), Top);
                assert!(l.leq(X(i), U(j)) && l.leq(Z(i), V(j)));
            }
            assert!(is_balanced3(&l, &Triple::new(U(i), Y, V(i))));
        }
        assert_eq!(l.meet(X(2), Z(5)), L(2));
        assert_eq!(l.meet(X(5), Z(2)), R(2));
    }

    #[test]
    fn first_step() {
        let d = fig2_divergence(3);
        assert_eq!(d.trace.iterates[0], Triple::new(X(1), Y, Z(1)));
        assert!(d.passed());
    }
}
