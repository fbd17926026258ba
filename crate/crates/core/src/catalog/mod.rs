//! Named lattices: chains, Boolean lattices, `M_k`, the pentagon, subspace
//! lattices over small fields, the `L_n` ladder and decorated grids.

mod field;
mod grid;
mod lfamily;

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::error::{LatticeError, Result};
use crate::lattice::{CoverList, FiniteLattice};

pub use field::{Gf, SUPPORTED_ORDERS};
pub use grid::{
    check_c1_c4, decorate_grid, random_c1c4, random_decoration, C1C4Report, Decoration, GridDecoration,
};
pub use lfamily::{l_family, L_FAMILY_CAP};

/// Largest vector space (`q^d` vectors) that [`subspace_lattice`] will enumerate.
pub const SUBSPACE_VECTOR_CAP: usize = 1 << 12;

pub fn chain(n: usize) -> Result<FiniteLattice> {
    if n == 0 {
        return Err(LatticeError::ArgumentOutOfRange("chain needs n >= 1".into()));
    }
    let covers = (1..n as u32).map(|i| (i - 1, i)).collect();
    FiniteLattice::from_covers(
        &CoverList::new(n, covers)
            .named(format!("C{n}"))
            .with_names((0..n).map(|i| i.to_string())),
    )
}

/// Subsets of `{1..n}`; element `s` is the bitmask, named by its members.
pub fn boolean(n: usize) -> Result<FiniteLattice> {
    if n > 12 {
        return Err(LatticeError::ArgumentOutOfRange(format!("boolean({n}) is too large")));
    }
    let size = 1usize << n;
    let names = (0..size)
        .map(|s| {
            if s == 0 {
                "0".to_string()
            } else {
                (0..n).filter(|b| s >> b & 1 == 1).map(|b| (b + 1).to_string()).collect()
            }
        })
        .collect();
    FiniteLattice::from_order(format!("B{n}"), Some(names), size, |a, b| a & b == a)
}

/// Height-2 lattice with `k` atoms named `a, b, c, ...`.
pub fn m_k(k: usize) -> Result<FiniteLattice> {
    if !(3..=26).contains(&k) {
        return Err(LatticeError::ArgumentOutOfRange(format!("m_k needs 3 <= k <= 26, got {k}")));
    }
    let top = k as u32 + 1;
    let covers = (1..=k as u32).flat_map(|a| [(0, a), (a, top)]).collect();
    let names = std::iter::once("0".to_string())
        .chain((0..k).map(|i| ((b'a' + i as u8) as char).to_string()))
        .chain(std::iter::once("1".to_string()));
    FiniteLattice::from_covers(&CoverList::new(k + 2, covers).named(format!("M{k}")).with_names(names))
}

/// The pentagon `o < b < a < i`, `o < c < i`.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_covers(
        &CoverList::new(5, vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
            .named("N5")
            .with_names(["o", "b", "a", "c", "i"]),
    )
    .expect("pentagon is a lattice")
}

/// The square `C_2 x C_2` with atoms `p`, `q`.
pub fn c2sq() -> FiniteLattice {
    FiniteLattice::from_covers(
        &CoverList::new(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)])
            .named("C2^2")
            .with_names(["0", "p", "q", "1"]),
    )
    .expect("square is a lattice")
}

/// Vectors of `GF(q)^d` encoded base `q`, most significant coordinate first.
fn all_subspaces(f: &Gf, d: usize) -> Vec<BitSet> {
    let q = f.order();
    let nv = q.pow(d as u32);
    let add = |u: usize, v: usize| -> usize {
        let (mut u, mut v, mut out, mut place) = (u, v, 0, 1);
        for _ in 0..d {
            out += f.add(u % q, v % q) * place;
            u /= q;
            v /= q;
            place *= q;
        }
        out
    };
    let scale = |c: usize, v: usize| -> usize {
        let (mut v, mut out, mut place) = (v, 0, 1);
        for _ in 0..d {
            out += f.mul(c, v % q) * place;
            v /= q;
            place *= q;
        }
        out
    };
    let mut zero = BitSet::new(nv);
    zero.insert(0);
    let mut found = vec![zero.clone()];
    let mut seen = HashSet::from([zero]);
    let mut i = 0;
    while i < found.len() {
        let cur = found[i].clone();
        for v in 0..nv {
            if cur.contains(v) {
                continue;
            }
            let mut span = cur.clone();
            for s in cur.iter() {
                for c in 1..q {
                    span.insert(add(s, scale(c, v)));
                }
            }
            if seen.insert(span.clone()) {
                found.push(span);
            }
        }
        i += 1;
    }
    found
}

fn dim_of(s: &BitSet, q: usize) -> usize {
    let mut n = s.count();
    let mut d = 0;
    while n > 1 {
        n /= q;
        d += 1;
    }
    d
}

/// All subspaces of `GF(q)^d` ordered by inclusion, sorted by dimension.
/// Names are `0`, `V`, and `d<k>.<i>` otherwise.
pub fn subspace_lattice(q: usize, d: usize) -> Result<FiniteLattice> {
    let f = Gf::new(q)?;
    if d == 0 {
        return Err(LatticeError::ArgumentOutOfRange("dimension must be >= 1".into()));
    }
    let nv = q.checked_pow(d as u32).unwrap_or(usize::MAX);
    if nv > SUBSPACE_VECTOR_CAP {
        return Err(LatticeError::SizeLimitExceeded {
            size: nv,
            limit: SUBSPACE_VECTOR_CAP,
        });
    }
    let mut subs = all_subspaces(&f, d);
    subs.sort_by(|a, b| (a.count(), a.words()).cmp(&(b.count(), b.words())));
    let mut per_dim = vec![0usize; d + 1];
    let names = subs
        .iter()
        .map(|s| {
            let k = dim_of(s, q);
            per_dim[k] += 1;
            match k {
                0 => "0".to_string(),
                k if k == d => "V".to_string(),
                k => format!("d{k}.{}", per_dim[k] - 1),
            }
        })
        .collect();
    FiniteLattice::from_order(format!("Sub(GF({q})^{d})"), Some(names), subs.len(), |a, b| {
        subs[a].is_subset(&subs[b])
    })
}

/// Fano plane points as vectors of `GF(2)^3`: `1 = 001`, `2 = 010`, ...
pub const FANO_POINTS: [usize; 7] = [0b001, 0b010, 0b100, 0b011, 0b110, 0b111, 0b101];
pub const FANO_LINES: [&str; 7] = ["124", "235", "346", "457", "561", "672", "713"];

/// Subspaces of `GF(2)^3`: bottom `0`, points `1..7`, the seven lines named by
/// their points, and the whole plane `PL`.
pub fn fano() -> FiniteLattice {
    let f = Gf::new(2).expect("GF(2)");
    let subs = all_subspaces(&f, 3);
    let mut order: Vec<(String, BitSet)> = Vec::with_capacity(16);
    let find = |pred: &dyn Fn(&BitSet) -> bool| subs.iter().find(|s| pred(s)).cloned().expect("subspace exists");
    order.push(("0".into(), find(&|s| s.count() == 1)));
    for (i, &v) in FANO_POINTS.iter().enumerate() {
        order.push(((i + 1).to_string(), find(&|s| s.count() == 2 && s.contains(v))));
    }
    for line in FANO_LINES {
        let pts: Vec<usize> = line
            .chars()
            .map(|c| FANO_POINTS[c.to_digit(10).unwrap() as usize - 1])
            .collect();
        order.push((line.to_string(), find(&|s| s.count() == 4 && pts.iter().all(|&p| s.contains(p)))));
    }
    order.push(("PL".into(), find(&|s| s.count() == 8)));
    let names = order.iter().map(|(n, _)| n.clone()).collect();
    FiniteLattice::from_order("fano", Some(names), 16, |a, b| order[a].1.is_subset(&order[b].1))
        .expect("subspaces form a lattice")
}

/// The 7-element lattice `C_3 x C_2` plus `n(<1,0>,<1,1>)`.
pub fn witness7() -> FiniteLattice {
    let d = GridDecoration::new(3, 2, vec![Decoration::N { lower: (1, 0), along_c: false }]);
    decorate_grid(&d).expect("witness decoration is valid").with_name("witness7")
}

/// Largest size accepted by [`small_lattices`].
pub const SMALL_LATTICE_CAP: usize = 8;

/// All lattices with `n` elements, one per isomorphism class. Inner orders
/// are enumerated over relations `i < j` only, which reaches every order
/// type through a linear extension.
pub fn small_lattices(n: usize) -> Result<Vec<FiniteLattice>> {
    if !(1..=SMALL_LATTICE_CAP).contains(&n) {
        return Err(LatticeError::ArgumentOutOfRange(format!(
            "small_lattices needs 1 <= n <= {SMALL_LATTICE_CAP}, got {n}"
        )));
    }
    if n == 1 {
        return Ok(vec![chain(1)?.with_name("S1.0")]);
    }
    let k = n - 2;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut found: Vec<FiniteLattice> = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rel = vec![vec![false; k]; k];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            rel[i][j] = mask >> b & 1 == 1;
        }
        let transitive =
            (0..k).all(|i| (0..k).all(|j| !rel[i][j] || (0..k).all(|m| !rel[j][m] || rel[i][m])));
        if !transitive {
            continue;
        }
        let inner = |a: usize| a > 0 && a < n - 1;
        let leq = |a: usize, b: usize| a == b || a == 0 || b == n - 1 || (inner(a) && inner(b) && rel[a - 1][b - 1]);
        let Ok(l) = FiniteLattice::from_order("", None, n, leq) else {
            continue;
        };
        if !found.iter().any(|f| crate::lattice::is_isomorphic(f, &l).unwrap_or(false)) {
            found.push(l);
        }
    }
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.with_name(format!("S{n}.{i}")))
        .collect())
}
