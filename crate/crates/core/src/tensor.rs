//! Tensor products of finite lattices through bi-ideals, and their
//! representation by join-to-meet maps `A⁻ -> B`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::catalog::m_k;
use crate::construct::m3_of;
use crate::error::{LatticeError, Result};
use crate::lattice::{find_isomorphism, ElementId, FiniteLattice};

pub const DEFAULT_TENSOR_CAP: usize = 400;
pub const DEFAULT_HOM_LIMIT: usize = 2_000_000;

/// A subset of `A x B` stored as one row of `B` per element of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiIdeal {
    rows: Vec<BitSet>,
}

impl BiIdeal {
    fn empty(a: &FiniteLattice, b: &FiniteLattice) -> Self {
        BiIdeal {
            rows: vec![BitSet::new(b.size()); a.size()],
        }
    }

    pub fn contains(&self, x: ElementId, y: ElementId) -> bool {
        self.rows[x.index()].contains(y.index())
    }

    pub fn row(&self, x: ElementId) -> &BitSet {
        &self.rows[x.index()]
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn is_subset(&self, other: &BiIdeal) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn intersection(&self, other: &BiIdeal) -> BiIdeal {
        BiIdeal {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.intersection(b)).collect(),
        }
    }

    pub fn pairs(&self) -> Vec<(ElementId, ElementId)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, r)| r.iter().map(move |y| (ElementId::from(x), ElementId::from(y))))
            .collect()
    }
}

/// Checks hereditary, contains `∇`, and both join-closure rules.
pub fn is_bi_ideal(a: &FiniteLattice, b: &FiniteLattice, i: &BiIdeal) -> bool {
    let (o_a, o_b) = (a.bottom(), b.bottom());
    for x in a.elements() {
        if !i.contains(x, o_b) {
            return false;
        }
        for y in b.elements() {
            if x == o_a && !i.contains(x, y) {
                return false;
            }
            if !i.contains(x, y) {
                continue;
            }
            for x2 in a.down_set(x).iter() {
                if !b.down_set(y).is_subset(i.row(ElementId::from(x2))) {
                    return false;
                }
            }
            for x1 in a.elements() {
                if i.contains(x1, y) && !i.contains(a.join(x, x1), y) {
                    return false;
                }
            }
            for y1 in i.row(x).iter() {
                if !i.contains(x, b.join(y, ElementId::from(y1))) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn nabla(a: &FiniteLattice, b: &FiniteLattice) -> BiIdeal {
    bi_ideal_closure(a, b, &[])
}

/// `∇ ∪ ↓<x, y>`.
pub fn pure_tensor(a: &FiniteLattice, b: &FiniteLattice, x: ElementId, y: ElementId) -> BiIdeal {
    let mut i = BiIdeal::empty(a, b);
    for u in a.elements() {
        i.rows[u.index()].insert(b.bottom().index());
        if u == a.bottom() {
            i.rows[u.index()] = BitSet::full(b.size());
        } else if a.leq(u, x) {
            i.rows[u.index()].union_with(b.down_set(y));
        }
    }
    i
}

/// Least bi-ideal containing `s`: alternate hereditary closure with the two
/// join rules until nothing changes.
pub fn bi_ideal_closure(a: &FiniteLattice, b: &FiniteLattice, s: &[(ElementId, ElementId)]) -> BiIdeal {
    let mut i = BiIdeal::empty(a, b);
    i.rows[a.bottom().index()] = BitSet::full(b.size());
    for row in i.rows.iter_mut() {
        row.insert(b.bottom().index());
    }
    for &(x, y) in s {
        i.rows[x.index()].insert(y.index());
    }
    close_in_place(a, b, &mut i);
    i
}

fn close_in_place(a: &FiniteLattice, b: &FiniteLattice, i: &mut BiIdeal) {
    loop {
        let before = i.clone();
        // Rows become principal ideals: hereditary in B plus rule (iv).
        for row in i.rows.iter_mut() {
            let top = row.iter().fold(b.bottom(), |acc, y| b.join(acc, ElementId::from(y)));
            *row = b.down_set(top).clone();
        }
        // Hereditary in A.
        for x in a.elements() {
            let r = i.rows[x.index()].clone();
            for x2 in a.down_set(x).iter() {
                i.rows[x2].union_with(&r);
            }
        }
        // Rule (iii): rows of x0 and x1 both hold y, so the row of x0 ∨ x1 must.
        for x0 in a.elements() {
            for x1 in a.elements() {
                if x1 <= x0 {
                    continue;
                }
                let common = i.rows[x0.index()].intersection(&i.rows[x1.index()]);
                i.rows[a.join(x0, x1).index()].union_with(&common);
            }
        }
        if *i == before {
            return;
        }
    }
}

/// Maximal member pairs outside `∇`.
pub fn cap_of(a: &FiniteLattice, b: &FiniteLattice, i: &BiIdeal) -> Vec<(ElementId, ElementId)> {
    let outside: Vec<(ElementId, ElementId)> = i
        .pairs()
        .into_iter()
        .filter(|&(x, y)| x != a.bottom() && y != b.bottom())
        .collect();
    outside
        .iter()
        .copied()
        .filter(|&(x, y)| {
            !outside
                .iter()
                .any(|&(u, v)| (u, v) != (x, y) && a.leq(x, u) && b.leq(y, v))
        })
        .collect()
}

/// A map turning joins of nonzero elements into meets. `values` is indexed by
/// all of `A`; the entry at `0_A` is `1_B` by convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JoinHom {
    pub values: Vec<ElementId>,
}

impl JoinHom {
    pub fn value(&self, x: ElementId) -> ElementId {
        self.values[x.index()]
    }

    pub fn is_valid(&self, a: &FiniteLattice, b: &FiniteLattice) -> bool {
        self.values[a.bottom().index()] == b.top()
            && a.elements().filter(|&x| x != a.bottom()).all(|x0| {
                a.elements()
                    .filter(|&x| x != a.bottom())
                    .all(|x1| self.value(a.join(x0, x1)) == b.meet(self.value(x0), self.value(x1)))
            })
    }

    pub fn leq(&self, other: &JoinHom, b: &FiniteLattice) -> bool {
        self.values.iter().zip(&other.values).all(|(&u, &v)| b.leq(u, v))
    }

    /// `{<x, y> : y <= φ(x)}`.
    pub fn to_bi_ideal(&self, a: &FiniteLattice, b: &FiniteLattice) -> BiIdeal {
        BiIdeal {
            rows: a.elements().map(|x| b.down_set(self.value(x)).clone()).collect(),
        }
    }
}

/// `φ_I(x)`: the largest `y` with `<x, y>` in `I`.
pub fn phi_of(a: &FiniteLattice, b: &FiniteLattice, i: &BiIdeal) -> JoinHom {
    JoinHom {
        values: a
            .elements()
            .map(|x| {
                let row = i.row(x);
                let top = row.iter().fold(b.bottom(), |acc, y| b.join(acc, ElementId::from(y)));
                debug_assert!(*b.down_set(top) == *row, "row of a bi-ideal is principal");
                top
            })
            .collect(),
    }
}

/// All join-to-meet maps, found by assigning antitone values on `J(A)` and
/// extending by `φ(x) = ⋀ {φ(j) : j ∈ J(A), j <= x}`.
pub fn hom_enumerate(a: &FiniteLattice, b: &FiniteLattice, limit: usize) -> Result<Vec<JoinHom>> {
    let j = a.join_irreducibles();
    let below: Vec<Vec<usize>> = j
        .iter()
        .map(|&x| (0..j.len()).filter(|&k| j[k] != x && a.leq(j[k], x)).collect())
        .collect();
    // J(A) sorted so that smaller elements come first.
    let mut order: Vec<usize> = (0..j.len()).collect();
    order.sort_by_key(|&k| (a.down_set(j[k]).count(), k));

    let extend = |vals: &[ElementId]| -> Option<JoinHom> {
        let values: Vec<ElementId> = a
            .elements()
            .map(|x| {
                j.iter()
                    .zip(vals)
                    .filter(|(&ji, _)| a.leq(ji, x))
                    .fold(b.top(), |acc, (_, &v)| b.meet(acc, v))
            })
            .collect();
        let h = JoinHom { values };
        h.is_valid(a, b).then_some(h)
    };

    fn assign(
        k: usize,
        order: &[usize],
        below: &[Vec<usize>],
        b: &FiniteLattice,
        vals: &mut Vec<ElementId>,
        visit: &mut dyn FnMut(&[ElementId]) -> bool,
    ) -> bool {
        if k == order.len() {
            return visit(vals);
        }
        let ji = order[k];
        for v in b.elements() {
            if below[ji].iter().all(|&lo| b.leq(v, vals[lo])) {
                vals[ji] = v;
                if !assign(k + 1, order, below, b, vals, visit) {
                    return false;
                }
            }
        }
        true
    }

    if j.is_empty() {
        return Ok(extend(&[]).into_iter().collect());
    }
    // Split on the value of the first join-irreducible.
    let first = order[0];
    let parts: Vec<Result<Vec<JoinHom>>> = b
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|v0| {
            let mut vals = vec![b.top(); j.len()];
            vals[first] = v0;
            let mut out = Vec::new();
            let mut visited = 0usize;
            let complete = assign(1, &order, &below, b, &mut vals, &mut |vs| {
                visited += 1;
                if visited > limit {
                    return false;
                }
                if let Some(h) = extend(vs) {
                    out.push(h);
                }
                true
            });
            if complete {
                Ok(out)
            } else {
                Err(LatticeError::EnumerationLimitExceeded { limit })
            }
        })
        .collect();
    let mut homs = Vec::new();
    for p in parts {
        homs.extend(p?);
    }
    homs.sort();
    homs.dedup();
    Ok(homs)
}

fn hom_name(b: &FiniteLattice, h: &JoinHom) -> String {
    let v: Vec<&str> = h.values.iter().skip(1).map(|&e| b.name_of(e)).collect();
    format!("[{}]", v.join(","))
}

/// The lattice of join-to-meet maps under the componentwise order of `B`.
pub fn hom_lattice(a: &FiniteLattice, b: &FiniteLattice) -> Result<(FiniteLattice, Vec<JoinHom>)> {
    let homs = hom_enumerate(a, b, DEFAULT_HOM_LIMIT)?;
    let names = homs.iter().map(|h| hom_name(b, h)).collect();
    let l = FiniteLattice::from_order(format!("Hom({},{}^d)", a.name(), b.name()), Some(names), homs.len(), |x, y| {
        homs[x].leq(&homs[y], b)
    })?;
    Ok((l, homs))
}

pub struct TensorProduct {
    pub ideals: Vec<BiIdeal>,
    pub lattice: FiniteLattice,
}

fn check_cap(a: &FiniteLattice, b: &FiniteLattice, cap: usize) -> Result<()> {
    let size = a.size() * b.size();
    if size > cap {
        return Err(LatticeError::SizeLimitExceeded { size, limit: cap });
    }
    Ok(())
}

fn ideals_to_lattice(a: &FiniteLattice, b: &FiniteLattice, mut ideals: Vec<BiIdeal>) -> Result<TensorProduct> {
    ideals.sort_by_key(|i| (i.count(), i.clone()));
    let names = ideals
        .iter()
        .map(|i| {
            let cap: Vec<String> = cap_of(a, b, i)
                .into_iter()
                .map(|(x, y)| format!("{}(x){}", a.name_of(x), b.name_of(y)))
                .collect();
            if cap.is_empty() {
                "0".to_string()
            } else {
                cap.join("+")
            }
        })
        .collect();
    let lattice = FiniteLattice::from_order(
        format!("{}(x){}", a.name(), b.name()),
        Some(names),
        ideals.len(),
        |x, y| ideals[x].is_subset(&ideals[y]),
    )?;
    Ok(TensorProduct { ideals, lattice })
}

/// All bi-ideals under inclusion, obtained from the join-to-meet maps.
pub fn tensor_product(a: &FiniteLattice, b: &FiniteLattice) -> Result<TensorProduct> {
    tensor_product_with_cap(a, b, DEFAULT_TENSOR_CAP)
}

pub fn tensor_product_with_cap(a: &FiniteLattice, b: &FiniteLattice, cap: usize) -> Result<TensorProduct> {
    check_cap(a, b, cap)?;
    let homs = hom_enumerate(a, b, DEFAULT_HOM_LIMIT)?;
    let ideals = homs.iter().map(|h| h.to_bi_ideal(a, b)).collect();
    ideals_to_lattice(a, b, ideals)
}

/// All bi-ideals by enumerating down-sets of `A x B` that contain `∇` and
/// keeping those closed under both join rules. Independent of the map route.
pub fn tensor_product_direct(a: &FiniteLattice, b: &FiniteLattice, cap: usize) -> Result<TensorProduct> {
    check_cap(a, b, cap)?;
    let (na, nb) = (a.size(), b.size());
    let n = na * nb;
    let idx = |x: usize, y: usize| x * nb + y;
    // Linear extension of the product order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| a.down_set(ElementId::from(p / nb)).count() + b.down_set(ElementId::from(p % nb)).count());
    let lower: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            let (x, y) = (ElementId::from(p / nb), ElementId::from(p % nb));
            let mut v: Vec<usize> = a.lower_covers(x).map(|u| idx(u.index(), y.index())).collect();
            v.extend(b.lower_covers(y).map(|w| idx(x.index(), w.index())));
            v
        })
        .collect();
    let in_nabla = |p: usize| p / nb == a.bottom().index() || p % nb == b.bottom().index();

    let mut found = Vec::new();
    let mut cur = BitSet::new(n);
    fn rec(
        k: usize,
        order: &[usize],
        lower: &[Vec<usize>],
        in_nabla: &dyn Fn(usize) -> bool,
        cur: &mut BitSet,
        found: &mut Vec<BitSet>,
    ) {
        if k == order.len() {
            found.push(cur.clone());
            return;
        }
        let p = order[k];
        let can = lower[p].iter().all(|&q| cur.contains(q));
        if can {
            cur.insert(p);
            rec(k + 1, order, lower, in_nabla, cur, found);
            cur.remove(p);
        }
        if !in_nabla(p) {
            rec(k + 1, order, lower, in_nabla, cur, found);
        }
    }
    rec(0, &order, &lower, &in_nabla, &mut cur, &mut found);

    let ideals: Vec<BiIdeal> = found
        .into_par_iter()
        .map(|s| BiIdeal {
            rows: (0..na)
                .map(|x| {
                    let mut r = BitSet::new(nb);
                    for y in 0..nb {
                        if s.contains(idx(x, y)) {
                            r.insert(y);
                        }
                    }
                    r
                })
                .collect(),
        })
        .filter(|i| is_bi_ideal(a, b, i))
        .collect();
    ideals_to_lattice(a, b, ideals)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReprReport {
    pub tensor_size: usize,
    pub hom_size: usize,
    /// `I -> φ_I` is a bijection onto the maps.
    pub bijective: bool,
    /// `I ⊆ J` iff `φ_I <= φ_J`.
    pub order_isomorphism: bool,
    /// `<x, y> ∈ I` iff `y <= φ_I(x)`.
    pub membership_rule: bool,
    pub passed: bool,
}

/// Compares the directly enumerated bi-ideals with the enumerated maps.
pub fn verify_repr_iso(a: &FiniteLattice, b: &FiniteLattice) -> Result<ReprReport> {
    let t = tensor_product_direct(a, b, DEFAULT_TENSOR_CAP)?;
    let homs = hom_enumerate(a, b, DEFAULT_HOM_LIMIT)?;
    let images: Vec<JoinHom> = t.ideals.iter().map(|i| phi_of(a, b, i)).collect();
    let image_set: HashSet<&JoinHom> = images.iter().collect();
    let hom_set: HashSet<&JoinHom> = homs.iter().collect();
    let bijective = image_set.len() == images.len() && image_set == hom_set;
    let order_isomorphism = (0..images.len()).all(|x| {
        (0..images.len()).all(|y| t.ideals[x].is_subset(&t.ideals[y]) == images[x].leq(&images[y], b))
    });
    let membership_rule = t
        .ideals
        .iter()
        .zip(&images)
        .all(|(i, h)| h.to_bi_ideal(a, b) == *i);
    Ok(ReprReport {
        tensor_size: t.ideals.len(),
        hom_size: homs.len(),
        bijective,
        order_isomorphism,
        membership_rule,
        passed: bijective && order_isomorphism && membership_rule,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct M3TensorReport {
    pub tensor_size: usize,
    pub m3_size: usize,
    /// Every map gives a balanced triple `<ξ(a), ξ(b), ξ(c)>`.
    pub triples_balanced: bool,
    pub bijective: bool,
    pub order_isomorphism: bool,
    pub passed: bool,
}

/// `M_3 ⊗ L` against `M_3[L]` through `ξ -> <ξ(a), ξ(b), ξ(c)>`.
pub fn verify_m3_tensor_iso(l: &FiniteLattice) -> Result<M3TensorReport> {
    let m3 = m_k(3)?;
    let t = tensor_product(&m3, l)?;
    let k = m3_of(l)?;
    let atoms = [m3.el("a"), m3.el("b"), m3.el("c")];
    let mut triples_balanced = true;
    let mut image = Vec::with_capacity(t.ideals.len());
    for i in &t.ideals {
        let h = phi_of(&m3, l, i);
        let tr = atoms.map(|x| h.value(x));
        match k.element(tr) {
            Some(e) => image.push(e),
            None => {
                triples_balanced = false;
                image.push(ElementId(u32::MAX));
            }
        }
    }
    let mut sorted = image.clone();
    sorted.sort();
    sorted.dedup();
    let bijective = triples_balanced && sorted.len() == image.len() && image.len() == k.size();
    let kl = k.lattice();
    let order_isomorphism = triples_balanced
        && (0..image.len()).all(|x| {
            (0..image.len()).all(|y| t.ideals[x].is_subset(&t.ideals[y]) == kl.leq(image[x], image[y]))
        });
    Ok(M3TensorReport {
        tensor_size: t.ideals.len(),
        m3_size: k.size(),
        triples_balanced,
        bijective,
        order_isomorphism,
        passed: bijective && order_isomorphism,
    })
}

/// Whether the two lattices are isomorphic; a convenience for tensor identities.
pub fn tensor_isomorphic_to(a: &FiniteLattice, b: &FiniteLattice, target: &FiniteLattice) -> Result<bool> {
    let t = tensor_product(a, b)?;
    Ok(find_isomorphism(&t.lattice, target)?.is_some())
}
