use std::collections::HashMap;

use super::{ElementId, FiniteLattice};
use crate::error::{LatticeError, Result};

pub const DEFAULT_ISO_LIMIT: usize = 5000;

pub fn is_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice) -> Result<Option<Vec<ElementId>>> {
    find_isomorphism_with_limit(a, b, DEFAULT_ISO_LIMIT)
}

/// Colour refinement on the cover graph of both lattices at once, so equal
/// colours mean equal signatures across the pair.
fn refine(a: &FiniteLattice, b: &FiniteLattice) -> (Vec<u32>, Vec<u32>) {
    let init = |l: &FiniteLattice| -> Vec<(u32, usize, usize, usize, usize)> {
        let h = l.heights();
        l.elements()
            .map(|x| {
                (
                    h[x.index()],
                    l.lower_covers(x).count(),
                    l.upper_covers(x).count(),
                    l.down_set(x).count(),
                    l.up_set(x).count(),
                )
            })
            .collect()
    };
    let mut table = HashMap::new();
    let mut colour = |sig| {
        let next = table.len() as u32;
        *table.entry(sig).or_insert(next)
    };
    let ia = init(a);
    let ib = init(b);
    let mut ca: Vec<u32> = ia.iter().map(|s| colour(format!("{s:?}"))).collect();
    let mut cb: Vec<u32> = ib.iter().map(|s| colour(format!("{s:?}"))).collect();
    let classes = |c: &[u32], d: &[u32]| {
        let mut v: Vec<u32> = c.iter().chain(d).copied().collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    };
    let mut count = classes(&ca, &cb);
    loop {
        let mut table: HashMap<(u32, Vec<u32>, Vec<u32>), u32> = HashMap::new();
        let mut step = |l: &FiniteLattice, c: &[u32]| -> Vec<u32> {
            l.elements()
                .map(|x| {
                    let mut lo: Vec<u32> = l.lower_covers(x).map(|y| c[y.index()]).collect();
                    let mut hi: Vec<u32> = l.upper_covers(x).map(|y| c[y.index()]).collect();
                    lo.sort_unstable();
                    hi.sort_unstable();
                    let next = table.len() as u32;
                    *table.entry((c[x.index()], lo, hi)).or_insert(next)
                })
                .collect()
        };
        let na = step(a, &ca);
        let nb = step(b, &cb);
        let n = classes(&na, &nb);
        ca = na;
        cb = nb;
        if n == count {
            return (ca, cb);
        }
        count = n;
    }
}

/// Order isomorphism `a -> b` as a table indexed by `a`'s elements, or `None`.
pub fn find_isomorphism_with_limit(
    a: &FiniteLattice,
    b: &FiniteLattice,
    limit: usize,
) -> Result<Option<Vec<ElementId>>> {
    for l in [a, b] {
        if l.size() > limit {
            return Err(LatticeError::SizeLimitExceeded { size: l.size(), limit });
        }
    }
    let n = a.size();
    if n != b.size() || a.covers().len() != b.covers().len() {
        return Ok(None);
    }
    let (ca, cb) = refine(a, b);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return Ok(None);
    }

    // Lower covers always come earlier in this order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (a.down_set(ElementId::from(x)).count(), x));

    let mut image = vec![u32::MAX; n];
    let mut used = vec![false; n];
    let candidates = |x: usize, image: &[u32], used: &[bool]| -> Vec<usize> {
        let xe = ElementId::from(x);
        let lower: Vec<u32> = a.lower_covers(xe).map(|y| image[y.index()]).collect();
        let pool: Vec<usize> = match lower.first() {
            Some(&l) => b.upper_covers(ElementId(l)).map(|e| e.index()).collect(),
            None => (0..n).collect(),
        };
        let mut want = lower.clone();
        want.sort_unstable();
        pool.into_iter()
            .filter(|&y| !used[y] && cb[y] == ca[x])
            .filter(|&y| {
                let mut got: Vec<u32> = b.lower_covers(ElementId::from(y)).map(|e| e.0).collect();
                got.sort_unstable();
                got == want
            })
            .collect()
    };

    let mut stack: Vec<(Vec<usize>, usize)> = Vec::with_capacity(n);
    stack.push((candidates(order[0], &image, &used), 0));
    loop {
        let depth = stack.len() - 1;
        let x = order[depth];
        if image[x] != u32::MAX {
            used[image[x] as usize] = false;
            image[x] = u32::MAX;
        }
        let (cands, next) = stack.last_mut().unwrap();
        if *next >= cands.len() {
            stack.pop();
            if stack.is_empty() {
                return Ok(None);
            }
            continue;
        }
        let y = cands[*next];
        *next += 1;
        image[x] = y as u32;
        used[y] = true;
        if depth + 1 == n {
            break;
        }
        let c = candidates(order[depth + 1], &image, &used);
        stack.push((c, 0));
    }

    let map: Vec<ElementId> = image.into_iter().map(ElementId).collect();
    for x in a.elements() {
        for y in a.elements() {
            assert_eq!(map[a.meet(x, y).index()], b.meet(map[x.index()], map[y.index()]));
            assert_eq!(map[a.join(x, y).index()], b.join(map[x.index()], map[y.index()]));
        }
    }
    Ok(Some(map))
}
