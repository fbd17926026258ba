use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{LatticeError, Result};
use crate::lattice::{CoverList, ElementId, FiniteLattice};

pub const GRID_SIDE_CAP: usize = 32;

/// An element added to the grid `C x D`, given by the lower corner of its interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Decoration {
    /// Splits the prime interval from `lower` to its successor along `C`
    /// (`along_c`) or along `D` into a three-element chain.
    N { lower: (usize, usize), along_c: bool },
    /// Adds a third atom to the prime square above `lower`.
    M { lower: (usize, usize) },
}

impl Decoration {
    pub fn lower(&self) -> (usize, usize) {
        match *self {
            Decoration::N { lower, .. } | Decoration::M { lower } => lower,
        }
    }

    pub fn upper(&self) -> (usize, usize) {
        match *self {
            Decoration::N { lower: (i, j), along_c: true } => (i + 1, j),
            Decoration::N { lower: (i, j), along_c: false } => (i, j + 1),
            Decoration::M { lower: (i, j) } => (i + 1, j + 1),
        }
    }
}

/// A grid `C_c x C_d` (chain sizes) with decorations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridDecoration {
    pub c_len: usize,
    pub d_len: usize,
    pub entries: Vec<Decoration>,
}

impl GridDecoration {
    pub fn new(c_len: usize, d_len: usize, entries: Vec<Decoration>) -> Self {
        GridDecoration { c_len, d_len, entries }
    }

    fn index(&self, (i, j): (usize, usize)) -> u32 {
        (i * self.d_len + j) as u32
    }

    /// Grid elements occupy the first `c_len * d_len` indices of the decorated lattice.
    pub fn grid_elements(&self) -> Vec<ElementId> {
        (0..(self.c_len * self.d_len) as u32).map(ElementId).collect()
    }
}

fn grid_name((i, j): (usize, usize)) -> String {
    format!("<{i},{j}>")
}

fn conflict(clause: &'static str, detail: impl Into<String>) -> LatticeError {
    LatticeError::DecorationConflict {
        clause,
        detail: detail.into(),
    }
}

pub fn decorate_grid(d: &GridDecoration) -> Result<FiniteLattice> {
    if d.c_len == 0 || d.d_len == 0 || d.c_len > GRID_SIDE_CAP || d.d_len > GRID_SIDE_CAP {
        return Err(LatticeError::ArgumentOutOfRange(format!(
            "grid sides must be in 1..={GRID_SIDE_CAP}"
        )));
    }
    let mut lowers = HashSet::new();
    let mut uppers = HashSet::new();
    for e in &d.entries {
        let (ui, uj) = e.upper();
        if ui >= d.c_len || uj >= d.d_len {
            return Err(conflict("C4", format!("{e:?} is not a prime interval or square of the grid")));
        }
        if !lowers.insert(e.lower()) {
            return Err(conflict("C3", format!("two elements share lower bound {}", grid_name(e.lower()))));
        }
        if !uppers.insert(e.upper()) {
            return Err(conflict("C3", format!("two elements share upper bound {}", grid_name(e.upper()))));
        }
    }
    let mut names = Vec::new();
    let mut covers = Vec::new();
    for i in 0..d.c_len {
        for j in 0..d.d_len {
            names.push(grid_name((i, j)));
            if i + 1 < d.c_len {
                covers.push((d.index((i, j)), d.index((i + 1, j))));
            }
            if j + 1 < d.d_len {
                covers.push((d.index((i, j)), d.index((i, j + 1))));
            }
        }
    }
    for e in &d.entries {
        let id = names.len() as u32;
        let tag = if matches!(e, Decoration::N { .. }) { "n" } else { "m" };
        names.push(format!("{tag}({},{})", grid_name(e.lower()), grid_name(e.upper())));
        covers.push((d.index(e.lower()), id));
        covers.push((id, d.index(e.upper())));
    }
    let l = FiniteLattice::from_covers(
        &CoverList::new(names.len(), covers)
            .named(format!("grid{}x{}+{}", d.c_len, d.d_len, d.entries.len()))
            .with_names(names),
    )
    .map_err(|e| conflict("C4", e.to_string()))?;
    let report = check_c1_c4(&l, &d.grid_elements());
    match report.violated {
        None => Ok(l),
        Some(clause) => Err(conflict(clause, report.detail)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C1C4Report {
    pub holds: bool,
    pub violated: Option<&'static str>,
    pub witnesses: Vec<ElementId>,
    pub detail: String,
}

impl C1C4Report {
    fn fail(clause: &'static str, witnesses: Vec<ElementId>, detail: impl Into<String>) -> Self {
        C1C4Report {
            holds: false,
            violated: Some(clause),
            witnesses,
            detail: detail.into(),
        }
    }
}

/// Checks (C1)-(C4) and their consequences (C5)-(C7) for `l` with grid `grid`.
pub fn check_c1_c4(l: &FiniteLattice, grid: &[ElementId]) -> C1C4Report {
    let mut in_grid = vec![false; l.size()];
    for &g in grid {
        if l.check(g).is_err() {
            return C1C4Report::fail("C1", vec![g], "grid element out of range");
        }
        in_grid[g.index()] = true;
    }
    // (C1): a {0,1}-sublattice that is a product of two chains.
    if !in_grid[l.bottom().index()] || !in_grid[l.top().index()] {
        return C1C4Report::fail("C1", vec![], "grid does not contain both bounds");
    }
    let (g, emb) = match l.sublattice(grid) {
        Ok(x) => x,
        Err(_) => return C1C4Report::fail("C1", grid.to_vec(), "grid is not a sublattice"),
    };
    if !g.is_distributive() {
        return C1C4Report::fail("C1", grid.to_vec(), "grid is not distributive");
    }
    let j = g.join_irreducibles();
    let mut comp: Vec<usize> = (0..j.len()).collect();
    for a in 0..j.len() {
        for b in 0..a {
            if g.comparable(j[a], j[b]) {
                let (ca, cb) = (comp[a], comp[b]);
                for c in comp.iter_mut() {
                    if *c == ca {
                        *c = cb;
                    }
                }
            }
        }
    }
    let mut labels: Vec<usize> = comp.clone();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() > 2 {
        return C1C4Report::fail("C1", vec![], "grid is not a product of two chains");
    }
    for a in 0..j.len() {
        for b in 0..a {
            if comp[a] == comp[b] && !g.comparable(j[a], j[b]) {
                return C1C4Report::fail("C1", vec![emb[j[a].index()], emb[j[b].index()]], "grid is not a product of two chains");
            }
        }
    }
    // Coordinates of grid elements in C x D.
    let mut coord = vec![(usize::MAX, usize::MAX); l.size()];
    for x in g.elements() {
        let mut c = (0, 0);
        for (k, &ji) in j.iter().enumerate() {
            if g.leq(ji, x) {
                if labels.first() == Some(&comp[k]) {
                    c.0 += 1;
                } else {
                    c.1 += 1;
                }
            }
        }
        coord[emb[x.index()].index()] = c;
    }

    let lo: Vec<ElementId> = l
        .elements()
        .map(|x| {
            grid.iter()
                .filter(|&&gg| l.leq(gg, x))
                .fold(l.bottom(), |acc, &gg| l.join(acc, gg))
        })
        .collect();
    let hi: Vec<ElementId> = l
        .elements()
        .map(|x| {
            grid.iter()
                .filter(|&&gg| l.leq(x, gg))
                .fold(l.top(), |acc, &gg| l.meet(acc, gg))
        })
        .collect();
    let h: Vec<ElementId> = l.elements().filter(|x| !in_grid[x.index()]).collect();

    for &x in &h {
        if l.lower_covers(x).count() != 1 || l.upper_covers(x).count() != 1 {
            return C1C4Report::fail("C2", vec![x], format!("{} is not doubly irreducible", l.name_of(x)));
        }
    }
    for (i, &x) in h.iter().enumerate() {
        for &y in &h[..i] {
            if lo[x.index()] == lo[y.index()] || hi[x.index()] == hi[y.index()] {
                return C1C4Report::fail(
                    "C3",
                    vec![y, x],
                    format!("{} and {} share a grid bound", l.name_of(y), l.name_of(x)),
                );
            }
        }
    }
    for &x in &h {
        let (a, b) = (lo[x.index()], hi[x.index()]);
        let in_l = l.up_set(a).intersection(l.down_set(b));
        let in_g = in_l.iter().filter(|&v| in_grid[v]).count();
        let size = in_l.count();
        let ok = match (in_g, size) {
            (2, 3) => true,
            (4, 5) => in_l.iter().filter(|&v| v != a.index() && v != b.index()).all(|u| {
                in_l.iter().all(|v| v == u || v == a.index() || v == b.index() || !l.comparable(ElementId::from(u), ElementId::from(v)))
            }),
            _ => false,
        };
        if !ok {
            return C1C4Report::fail(
                "C4",
                vec![x],
                format!(
                    "[{}, {}] around {} is neither a split prime interval nor an M3",
                    l.name_of(a),
                    l.name_of(b),
                    l.name_of(x)
                ),
            );
        }
    }
    for x in l.elements() {
        for y in l.elements() {
            if x >= y || l.comparable(x, y) {
                continue;
            }
            let (m, jn) = (l.meet(x, y), l.join(x, y));
            if !in_grid[m.index()] || !in_grid[jn.index()] {
                return C1C4Report::fail("C5", vec![x, y], "meet or join of incomparable elements leaves the grid");
            }
            if m != l.meet(lo[x.index()], lo[y.index()]) || jn != l.join(hi[x.index()], hi[y.index()]) {
                return C1C4Report::fail("C6", vec![x, y], "meet or join not determined by grid bounds");
            }
            let on_line = |u: ElementId, v: ElementId| {
                let (cu, cv) = (coord[u.index()], coord[v.index()]);
                cu.0 == cv.0 || cu.1 == cv.1
            };
            if !on_line(lo[x.index()], m)
                || !on_line(lo[y.index()], m)
                || !on_line(hi[x.index()], jn)
                || !on_line(hi[y.index()], jn)
            {
                return C1C4Report::fail("C7", vec![x, y], "grid bound is off both lines");
            }
        }
    }
    C1C4Report {
        holds: true,
        violated: None,
        witnesses: vec![],
        detail: String::new(),
    }
}

/// Seeded random decoration: candidate intervals and squares are shuffled
/// and taken greedily, skipping any that would break (C3).
pub fn random_decoration(seed: u64, c_len: usize, d_len: usize, density: f64) -> GridDecoration {
    let mut cands = Vec::new();
    for i in 0..c_len {
        for j in 0..d_len {
            if i + 1 < c_len {
                cands.push(Decoration::N { lower: (i, j), along_c: true });
            }
            if j + 1 < d_len {
                cands.push(Decoration::N { lower: (i, j), along_c: false });
            }
            if i + 1 < c_len && j + 1 < d_len {
                cands.push(Decoration::M { lower: (i, j) });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cands.shuffle(&mut rng);
    let target = (density.clamp(0.0, 1.0) * cands.len() as f64).round() as usize;
    let mut lowers = HashSet::new();
    let mut uppers = HashSet::new();
    let mut entries = Vec::new();
    for c in cands {
        if entries.len() >= target {
            break;
        }
        if lowers.contains(&c.lower()) || uppers.contains(&c.upper()) {
            continue;
        }
        lowers.insert(c.lower());
        uppers.insert(c.upper());
        entries.push(c);
    }
    GridDecoration::new(c_len, d_len, entries)
}

pub fn random_c1c4(seed: u64, c_len: usize, d_len: usize, density: f64) -> Result<FiniteLattice> {
    decorate_grid(&random_decoration(seed, c_len, d_len, density))
}
