//! Infinite lattices given by computed operations, and the adjustment
//! sequences on them that never stabilize.

mod dhw;
mod fig2;

use std::fmt::Debug;

use crate::lattice::LatticeOps;

pub use dhw::{
    dhw_adjustment, dhw_base_quadruple, dhw_closed_form, dhw_lattice, dhw_similar, DhwElement, DhwLattice, ExtNat,
};
pub use fig2::{fig2_divergence, fig2_lattice, Fig2Divergence, Fig2Element, Fig2Lattice};

/// Default number of adjustment steps before declaring divergence.
pub const DEFAULT_DIVERGENCE_STEPS: usize = 64;

/// An infinite lattice with computed operations and finite truncations to
/// validate them on.
pub trait OracleLattice: LatticeOps {
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    /// A finite sample, growing with `k`.
    fn truncation(&self, k: usize) -> Vec<Self::Elem>;
    fn label(&self, e: Self::Elem) -> String;
}

/// Exhaustive lattice-law check on `sample`: commutativity, idempotence,
/// absorption, associativity, bounds, and `a <= b` iff `a ∧ b = a` iff `a ∨ b = b`.
pub fn validate_sample<O: OracleLattice>(o: &O, sample: &[O::Elem]) -> Result<(), String>
where
    O::Elem: Debug,
{
    let (bot, top) = (o.bottom(), o.top());
    for &a in sample {
        if o.meet(a, a) != a || o.join(a, a) != a {
            return Err(format!("idempotence fails at {}", o.label(a)));
        }
        if !o.leq(bot, a) || !o.leq(a, top) {
            return Err(format!("bounds fail at {}", o.label(a)));
        }
        for &b in sample {
            let (m, j) = (o.meet(a, b), o.join(a, b));
            if m != o.meet(b, a) || j != o.join(b, a) {
                return Err(format!("commutativity fails at {}, {}", o.label(a), o.label(b)));
            }
            if o.join(a, m) != a || o.meet(a, j) != a {
                return Err(format!("absorption fails at {}, {}", o.label(a), o.label(b)));
            }
            let le = o.leq(a, b);
            if le != (m == a) || le != (j == b) {
                return Err(format!("order and operations disagree at {}, {}", o.label(a), o.label(b)));
            }
            if !o.leq(m, a) || !o.leq(m, b) || !o.leq(a, j) || !o.leq(b, j) {
                return Err(format!("bound property fails at {}, {}", o.label(a), o.label(b)));
            }
            for &c in sample {
                if o.meet(o.meet(a, b), c) != o.meet(a, o.meet(b, c))
                    || o.join(o.join(a, b), c) != o.join(a, o.join(b, c))
                {
                    return Err(format!(
                        "associativity fails at {}, {}, {}",
                        o.label(a),
                        o.label(b),
                        o.label(c)
                    ));
                }
            }
        }
    }
    Ok(())
}
