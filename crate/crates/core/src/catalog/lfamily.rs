use crate::error::{LatticeError, Result};
use crate::lattice::{CoverList, FiniteLattice};
use crate::rank::{default_cap, modularity_rank};

pub const L_FAMILY_CAP: usize = 40;

/// The exactly `(n+1)`-modular ladder `L_n`.
///
/// Start from the square `{o0, x_n, y0, 1}` with the triple `<x_n, y0, 1>`.
/// Each of the `n` steps takes the current lattice `K` with bottom `e` and
/// triple `<X, y0, Z>` and hangs a new square `{o, a, c, e}` below it, plus
/// new `x` and `z` elements with `a < x < X` and `c < z < Z`. One
/// adjustment step maps the new triple `<x, y0, z>` back to `<X, y0, Z>`,
/// so `p_k(x_0, y0, z_0) = x_k`, and `x_n ∨ (y0 ∧ 1) = 1`.
///
/// Names: `x0..x<n>`, `z0..z<n-1>` (`z_n` is the top `1`), `y0`, and
/// `o<g>, a<g>, c<g>` for step `g`. The bottom is `o<n>`. The result is
/// checked to have rank exactly `n + 1`.
pub fn l_family(n: usize) -> Result<FiniteLattice> {
    if !(1..=L_FAMILY_CAP).contains(&n) {
        return Err(LatticeError::ArgumentOutOfRange(format!(
            "l_family needs 1 <= n <= {L_FAMILY_CAP}, got {n}"
        )));
    }
    let mut names: Vec<String> = vec!["o0".into(), format!("x{n}"), "y0".into(), "1".into()];
    let mut covers: Vec<(u32, u32)> = vec![(0, 1), (0, 2), (1, 3), (2, 3)];
    let (mut bottom, mut tx, mut tz) = (0u32, 1u32, 3u32);
    for g in 1..=n {
        let base = names.len() as u32;
        let (o, a, c, x, z) = (base, base + 1, base + 2, base + 3, base + 4);
        names.extend([
            format!("o{g}"),
            format!("a{g}"),
            format!("c{g}"),
            format!("x{}", n - g),
            format!("z{}", n - g),
        ]);
        covers.extend([(o, a), (o, c), (a, bottom), (c, bottom), (a, x), (x, tx), (c, z), (z, tz)]);
        bottom = o;
        tx = x;
        tz = z;
    }
    let size = names.len();
    let l = FiniteLattice::from_covers(&CoverList::new(size, covers).named(format!("L{n}")).with_names(names))
        .map_err(|e| LatticeError::ReconstructionInvalid(e.to_string()))?;
    let r = modularity_rank(&l, default_cap(&l))
        .map_err(|e| LatticeError::ReconstructionInvalid(e.to_string()))?;
    if r.rank != n + 1 {
        return Err(LatticeError::ReconstructionInvalid(format!(
            "rank {} instead of {}",
            r.rank,
            n + 1
        )));
    }
    Ok(l)
}
