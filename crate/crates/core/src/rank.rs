//! The adjustment map on triples and quadruples, its closure traces, the
//! identities `γ_n`, and exhaustive modularity-rank scans.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LatticeError, Result};
use crate::lattice::{ElementId, FiniteLattice, LatticeOps};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple<E = ElementId> {
    pub x: E,
    pub y: E,
    pub z: E,
}

impl<E> Triple<E> {
    pub fn new(x: E, y: E, z: E) -> Self {
        Triple { x, y, z }
    }
}

impl<E: Copy> Triple<E> {
    pub fn to_array(self) -> [E; 3] {
        [self.x, self.y, self.z]
    }
}

impl<E: fmt::Display> fmt::Display for Triple<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quadruple<E = ElementId>(pub [E; 4]);

/// The iterates `t^(1), t^(2), ...` of the step map from an initial value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureTrace<T> {
    pub initial: T,
    /// `iterates[i]` is `t^(i+1)`.
    pub iterates: Vec<T>,
    /// Least `k` with `t^(k) = t^(k+1)`, or `None` if no such `k <= cap`.
    pub index: Option<usize>,
    pub cap: usize,
}

impl<T: Clone> ClosureTrace<T> {
    /// `t^(k)`, with `t^(0)` the initial value.
    pub fn iterate(&self, k: usize) -> Option<&T> {
        if k == 0 {
            Some(&self.initial)
        } else {
            self.iterates.get(k - 1)
        }
    }

    pub fn last(&self) -> &T {
        self.iterates.last().unwrap_or(&self.initial)
    }

    pub fn stabilized(&self) -> bool {
        self.index.is_some()
    }

    /// The fixpoint, when reached.
    pub fn closure(&self) -> Option<&T> {
        self.index.map(|_| self.last())
    }
}

pub fn is_balanced3<L: LatticeOps>(l: &L, t: &Triple<L::Elem>) -> bool {
    let xy = l.meet(t.x, t.y);
    xy == l.meet(t.x, t.z) && xy == l.meet(t.y, t.z)
}

pub fn step3<L: LatticeOps>(l: &L, t: &Triple<L::Elem>) -> Triple<L::Elem> {
    Triple {
        x: l.join(t.x, l.meet(t.y, t.z)),
        y: l.join(t.y, l.meet(t.x, t.z)),
        z: l.join(t.z, l.meet(t.x, t.y)),
    }
}

fn run_closure<T: Clone + PartialEq>(initial: T, cap: usize, step: impl Fn(&T) -> T) -> ClosureTrace<T> {
    let mut iterates = Vec::new();
    let mut cur = initial.clone();
    for k in 0..=cap {
        let next = step(&cur);
        let done = next == cur;
        iterates.push(next.clone());
        if done {
            return ClosureTrace {
                initial,
                iterates,
                index: Some(k),
                cap,
            };
        }
        cur = next;
    }
    ClosureTrace {
        initial,
        iterates,
        index: None,
        cap,
    }
}

/// Iterates [`step3`] until a fixpoint, detecting any stabilization index up
/// to `cap` (at most `cap + 1` applications).
pub fn closure3<L: LatticeOps>(l: &L, t: Triple<L::Elem>, cap: usize) -> ClosureTrace<Triple<L::Elem>> {
    run_closure(t, cap, |s| step3(l, s))
}

pub fn is_balanced4<L: LatticeOps>(l: &L, q: &Quadruple<L::Elem>) -> bool {
    let r = l.meet(q.0[0], q.0[1]);
    (0..4).all(|i| (i + 1..4).all(|j| l.meet(q.0[i], q.0[j]) == r))
}

pub fn step4<L: LatticeOps>(l: &L, q: &Quadruple<L::Elem>) -> Quadruple<L::Elem> {
    let v = q.0;
    let out = std::array::from_fn(|i| {
        let o: Vec<L::Elem> = (0..4).filter(|&j| j != i).map(|j| v[j]).collect();
        let m = l.join(l.join(l.meet(o[0], o[1]), l.meet(o[0], o[2])), l.meet(o[1], o[2]));
        l.join(v[i], m)
    });
    Quadruple(out)
}

pub fn closure4<L: LatticeOps>(l: &L, q: Quadruple<L::Elem>, cap: usize) -> ClosureTrace<Quadruple<L::Elem>> {
    run_closure(q, cap, |s| step4(l, s))
}

/// `p_n, q_n, r_n` evaluated at `t`: the `n`-th iterate.
pub fn polynomials<L: LatticeOps>(l: &L, t: Triple<L::Elem>, n: usize) -> Triple<L::Elem> {
    (0..n).fold(t, |s, _| step3(l, &s))
}

/// Default stabilization cap: a strictly increasing trace in `L^3` has at
/// most `3 * height` strict steps.
pub fn default_cap(l: &FiniteLattice) -> usize {
    3 * l.height() as usize + 1
}

/// Stabilization index over raw tables, or `None` past `cap`.
#[inline]
pub(crate) fn index_raw(n: usize, m: &[u32], j: &[u32], t: [u32; 3], cap: usize) -> Option<usize> {
    let [mut x, mut y, mut z] = t;
    for k in 0..=cap {
        let (xs, ys, zs) = (x as usize, y as usize, z as usize);
        let nx = j[xs * n + m[ys * n + zs] as usize];
        let ny = j[ys * n + m[xs * n + zs] as usize];
        let nz = j[zs * n + m[xs * n + ys] as usize];
        if nx == x && ny == y && nz == z {
            return Some(k);
        }
        x = nx;
        y = ny;
        z = nz;
    }
    None
}

pub fn stabilization_index(l: &FiniteLattice, t: Triple, cap: usize) -> Option<usize> {
    index_raw(l.size(), l.meet_table(), l.join_table(), [t.x.0, t.y.0, t.z.0], cap)
}

/// Outcome of a `γ_n` check; `witness` is the lexicographically first failing triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaCheck {
    pub n: usize,
    pub holds: bool,
    pub witness: Option<Triple>,
}

/// Sorted triples `x <= y <= z` (as indices) failing the test, merged to the
/// lexicographically first one. Permutation equivariance of the step map
/// makes the sorted representative enough.
fn first_failing(l: &FiniteLattice, fails: impl Fn([u32; 3]) -> bool + Sync) -> Option<Triple> {
    let n = l.size() as u32;
    (0..n)
        .into_par_iter()
        .find_map_first(|x| {
            for y in x..n {
                for z in y..n {
                    if fails([x, y, z]) {
                        return Some(Triple::new(ElementId(x), ElementId(y), ElementId(z)));
                    }
                }
            }
            None
        })
}

/// Does every triple stabilize by index `n`? Equivalent to `p_n = p_{n+1}`
/// holding identically, since `q_n` and `r_n` are `p_n` with permuted arguments.
pub fn satisfies_gamma(l: &FiniteLattice, n: usize) -> GammaCheck {
    let (sz, m, j) = (l.size(), l.meet_table(), l.join_table());
    let witness = first_failing(l, |t| index_raw(sz, m, j, t, n).is_none());
    GammaCheck {
        n,
        holds: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    /// Lexicographically first triple attaining the maximal index.
    pub extremal: Triple,
    pub max_index: usize,
    /// Ordered-triple counts by stabilization index (all of `L^3`), or by
    /// antichain when produced by the antichain fast path.
    pub histogram: Vec<u64>,
    pub cap: usize,
}

#[derive(Default)]
struct ScanAcc {
    hist: Vec<u64>,
    best: Option<(usize, [u32; 3])>,
    overflow: Option<[u32; 3]>,
}

impl ScanAcc {
    fn record(&mut self, idx: Option<usize>, t: [u32; 3], weight: u64) {
        match idx {
            Some(k) => {
                if self.hist.len() <= k {
                    self.hist.resize(k + 1, 0);
                }
                self.hist[k] += weight;
                let better = match self.best {
                    None => true,
                    Some((bk, bt)) => k > bk || (k == bk && t < bt),
                };
                if better {
                    self.best = Some((k, t));
                }
            }
            None => {
                if self.overflow.is_none_or(|o| t < o) {
                    self.overflow = Some(t);
                }
            }
        }
    }

    fn merge(mut self, other: ScanAcc) -> ScanAcc {
        if other.hist.len() > self.hist.len() {
            self.hist.resize(other.hist.len(), 0);
        }
        for (a, b) in self.hist.iter_mut().zip(&other.hist) {
            *a += b;
        }
        if let Some((k, t)) = other.best {
            let better = match self.best {
                None => true,
                Some((bk, bt)) => k > bk || (k == bk && t < bt),
            };
            if better {
                self.best = Some((k, t));
            }
        }
        if let Some(t) = other.overflow {
            if self.overflow.is_none_or(|o| t < o) {
                self.overflow = Some(t);
            }
        }
        self
    }
}

fn to_triple(t: [u32; 3]) -> Triple {
    Triple::new(ElementId(t[0]), ElementId(t[1]), ElementId(t[2]))
}

/// Least `n >= 1` with `γ_n`, by a full scan of `L^3` (up to permutation).
pub fn modularity_rank(l: &FiniteLattice, cap: usize) -> Result<RankReport> {
    let n = l.size() as u32;
    let (sz, m, j) = (l.size(), l.meet_table(), l.join_table());
    let acc = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut acc = ScanAcc::default();
            for y in x..n {
                for z in y..n {
                    let weight = match (x == y, y == z) {
                        (true, true) => 1,
                        (false, false) => 6,
                        _ => 3,
                    };
                    acc.record(index_raw(sz, m, j, [x, y, z], cap), [x, y, z], weight);
                }
            }
            acc
        })
        .reduce(ScanAcc::default, ScanAcc::merge);
    finish(acc, cap)
}

fn finish(acc: ScanAcc, cap: usize) -> Result<RankReport> {
    if acc.overflow.is_some() {
        return Err(LatticeError::RankExceedsCap { cap });
    }
    let (k, t) = acc.best.ok_or(LatticeError::Empty)?;
    Ok(RankReport {
        rank: k.max(1),
        extremal: to_triple(t),
        max_index: k,
        histogram: acc.hist,
        cap,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntichainScan {
    pub total: u64,
    /// `histogram[k]`: antichains with stabilization index exactly `k`.
    pub histogram: Vec<u64>,
    /// Antichains that did not stabilize within `cap`.
    pub unstable: u64,
}

impl AntichainScan {
    /// Antichains at which `γ_n` fails.
    pub fn failing(&self, n: usize) -> u64 {
        self.histogram.iter().skip(n + 1).sum::<u64>() + self.unstable
    }
}

pub fn antichain_rank_scan(l: &FiniteLattice, cap: usize) -> AntichainScan {
    let inc = l.incomparability();
    let (sz, m, j) = (l.size(), l.meet_table(), l.join_table());
    let (hist, unstable) = (0..sz)
        .into_par_iter()
        .map(|x| {
            let mut hist: Vec<u64> = Vec::new();
            let mut unstable = 0u64;
            for y in inc[x].iter_above(x) {
                let both = inc[x].intersection(&inc[y]);
                for z in both.iter_above(y) {
                    match index_raw(sz, m, j, [x as u32, y as u32, z as u32], cap) {
                        Some(k) => {
                            if hist.len() <= k {
                                hist.resize(k + 1, 0);
                            }
                            hist[k] += 1;
                        }
                        None => unstable += 1,
                    }
                }
            }
            (hist, unstable)
        })
        .reduce(
            || (Vec::new(), 0),
            |(mut a, ua), (b, ub)| {
                if b.len() > a.len() {
                    a.resize(b.len(), 0);
                }
                for (p, q) in a.iter_mut().zip(&b) {
                    *p += q;
                }
                (a, ua + ub)
            },
        );
    AntichainScan {
        total: hist.iter().sum::<u64>() + unstable,
        histogram: hist,
        unstable,
    }
}

/// Rank via the antichain scan. Triples with two comparable coordinates
/// stabilize by index 2, so only ranks 1 and 2 need the full scan, which
/// here stops at the first `γ_1` failure.
pub fn modularity_rank_antichains(l: &FiniteLattice, cap: usize) -> Result<RankReport> {
    let scan = antichain_rank_scan(l, cap);
    if scan.unstable > 0 {
        return Err(LatticeError::RankExceedsCap { cap });
    }
    let top = scan.histogram.len().saturating_sub(1);
    if top >= 3 {
        let inc = l.incomparability();
        let (sz, m, j) = (l.size(), l.meet_table(), l.join_table());
        let extremal = (0..sz)
            .into_par_iter()
            .find_map_first(|x| {
                for y in inc[x].iter_above(x) {
                    for z in inc[x].intersection(&inc[y]).iter_above(y) {
                        let t = [x as u32, y as u32, z as u32];
                        if index_raw(sz, m, j, t, cap) == Some(top) {
                            return Some(to_triple(t));
                        }
                    }
                }
                None
            })
            .expect("histogram entry has a witness");
        return Ok(RankReport {
            rank: top,
            extremal,
            max_index: top,
            histogram: scan.histogram,
            cap,
        });
    }
    let g1 = satisfies_gamma(l, 1);
    let (rank, extremal) = match g1.witness {
        None => (1, Triple::new(l.bottom(), l.bottom(), l.bottom())),
        Some(w) => (2, w),
    };
    Ok(RankReport {
        rank,
        extremal,
        max_index: rank.max(top),
        histogram: scan.histogram,
        cap,
    })
}
