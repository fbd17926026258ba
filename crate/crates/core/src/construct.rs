//! `M_3[L]` and `M_4[L]` as explicit lattices of balanced tuples, their
//! canonical embeddings, and the isotone-map power `M_3^P`.

use std::collections::HashMap;
use std::sync::RwLock;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::catalog::m_k;
use crate::error::{LatticeError, Result};
use crate::lattice::{find_isomorphism, isotone_maps, ElementId, FiniteLattice, LatticeOps, Poset};

/// Above this many elements joins are computed on demand instead of tabulated.
pub const EAGER_TABLE_THRESHOLD: usize = 2000;

/// Balanced `K`-tuples of a finite lattice: all pairwise meets coincide.
/// Meet is componentwise; join is the adjustment closure of the componentwise join.
pub struct BalancedPower<const K: usize> {
    base: FiniteLattice,
    tuples: Vec<[u32; K]>,
    index: HashMap<[u32; K], u32>,
    lattice: Option<FiniteLattice>,
    memo: RwLock<HashMap<(u32, u32), u32>>,
    max_closure_index: usize,
}

pub type M3OfL = BalancedPower<3>;
pub type M4OfL = BalancedPower<4>;

pub fn is_balanced<const K: usize>(l: &FiniteLattice, t: &[u32; K]) -> bool {
    let (n, m) = (l.size(), l.meet_table());
    let r = m[t[0] as usize * n + t[1] as usize];
    (0..K).all(|i| (i + 1..K).all(|j| m[t[i] as usize * n + t[j] as usize] == r))
}

/// One adjustment step: each coordinate joined with the pairwise meets of the others.
pub fn adjust<const K: usize>(l: &FiniteLattice, t: &[u32; K]) -> [u32; K] {
    let (n, m, jn) = (l.size(), l.meet_table(), l.join_table());
    std::array::from_fn(|i| {
        let mut acc = t[i];
        for a in 0..K {
            for b in a + 1..K {
                if a != i && b != i {
                    let mm = m[t[a] as usize * n + t[b] as usize];
                    acc = jn[acc as usize * n + mm as usize];
                }
            }
        }
        acc
    })
}

/// Fixpoint of [`adjust`] and the number of steps that changed something.
pub fn close<const K: usize>(l: &FiniteLattice, mut t: [u32; K]) -> ([u32; K], usize) {
    let mut k = 0;
    loop {
        let next = adjust(l, &t);
        if next == t {
            return (t, k);
        }
        t = next;
        k += 1;
    }
}

fn tuple_name<const K: usize>(l: &FiniteLattice, t: &[u32; K]) -> String {
    let parts: Vec<&str> = t.iter().map(|&v| l.name_of(ElementId(v))).collect();
    format!("<{}>", parts.join(","))
}

fn balanced_tuples<const K: usize>(l: &FiniteLattice) -> Vec<[u32; K]> {
    let n = l.size() as u32;
    let mut out = Vec::new();
    let mut t = [0u32; K];
    fn rec<const K: usize>(l: &FiniteLattice, n: u32, k: usize, t: &mut [u32; K], out: &mut Vec<[u32; K]>) {
        if k == K {
            if is_balanced(l, t) {
                out.push(*t);
            }
            return;
        }
        for v in 0..n {
            t[k] = v;
            // Prune: every pairwise meet must equal the first one.
            if k >= 1 {
                let r = l.meet(ElementId(t[0]), ElementId(t[1]));
                if (0..k).any(|i| l.meet(ElementId(t[i]), ElementId(v)) != r) {
                    continue;
                }
            }
            rec(l, n, k + 1, t, out);
        }
    }
    rec(l, n, 0, &mut t, &mut out);
    out
}

impl<const K: usize> BalancedPower<K> {
    pub fn new(base: &FiniteLattice) -> Result<Self> {
        Self::with_threshold(base, EAGER_TABLE_THRESHOLD)
    }

    pub fn with_threshold(base: &FiniteLattice, threshold: usize) -> Result<Self> {
        let tuples = balanced_tuples::<K>(base);
        let index: HashMap<[u32; K], u32> = tuples.iter().enumerate().map(|(i, t)| (*t, i as u32)).collect();
        let mut out = BalancedPower {
            base: base.clone(),
            tuples,
            index,
            lattice: None,
            memo: RwLock::new(HashMap::new()),
            max_closure_index: 0,
        };
        if out.tuples.len() <= threshold {
            out.materialize()?;
        }
        Ok(out)
    }

    fn materialize(&mut self) -> Result<()> {
        let n = self.tuples.len();
        let l = &self.base;
        let rows: Vec<(Vec<u32>, Vec<u32>, usize)> = (0..n)
            .into_par_iter()
            .map(|a| {
                let ta = &self.tuples[a];
                let mut mrow = Vec::with_capacity(n);
                let mut jrow = Vec::with_capacity(n);
                let mut deepest = 0;
                for tb in &self.tuples {
                    let m: [u32; K] = std::array::from_fn(|i| l.meet(ElementId(ta[i]), ElementId(tb[i])).0);
                    let j: [u32; K] = std::array::from_fn(|i| l.join(ElementId(ta[i]), ElementId(tb[i])).0);
                    let (c, k) = close(l, j);
                    deepest = deepest.max(k);
                    mrow.push(self.index[&m]);
                    jrow.push(self.index[&c]);
                }
                (mrow, jrow, deepest)
            })
            .collect();
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for (m, j, d) in rows {
            meet.extend(m);
            join.extend(j);
            self.max_closure_index = self.max_closure_index.max(d);
        }
        let down: Vec<BitSet> = (0..n)
            .into_par_iter()
            .map(|b| {
                let mut d = BitSet::new(n);
                for a in 0..n {
                    if self.tuple_leq(a, b) {
                        d.insert(a);
                    }
                }
                d
            })
            .collect();
        let names = self.tuples.iter().map(|t| tuple_name(l, t)).collect();
        let name = format!("M{K}[{}]", l.name());
        self.lattice = Some(FiniteLattice::from_tables(name, names, down, meet, join)?);
        Ok(())
    }

    fn tuple_leq(&self, a: usize, b: usize) -> bool {
        let (ta, tb) = (&self.tuples[a], &self.tuples[b]);
        (0..K).all(|i| self.base.leq(ElementId(ta[i]), ElementId(tb[i])))
    }

    pub fn base(&self) -> &FiniteLattice {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_materialized(&self) -> bool {
        self.lattice.is_some()
    }

    /// The tabulated lattice.
    ///
    /// # Panics
    /// If the element count exceeded the eager threshold.
    pub fn lattice(&self) -> &FiniteLattice {
        self.lattice
            .as_ref()
            .expect("lattice above the eager threshold has no tables")
    }

    pub fn into_lattice(self) -> Option<FiniteLattice> {
        self.lattice
    }

    /// Largest number of adjustment steps any tabulated join needed.
    pub fn max_closure_index(&self) -> usize {
        self.max_closure_index
    }

    pub fn tuples(&self) -> &[[u32; K]] {
        &self.tuples
    }

    pub fn tuple(&self, e: ElementId) -> [ElementId; K] {
        self.tuples[e.index()].map(ElementId)
    }

    pub fn element(&self, t: [ElementId; K]) -> Option<ElementId> {
        self.index.get(&t.map(|e| e.0)).map(|&i| ElementId(i))
    }

    /// Looks a tuple up by the names of its coordinates.
    pub fn element_by_names(&self, names: [&str; K]) -> Option<ElementId> {
        let mut t = [ElementId(0); K];
        for (slot, n) in t.iter_mut().zip(names) {
            *slot = self.base.find(n)?;
        }
        self.element(t)
    }
}

impl<const K: usize> LatticeOps for BalancedPower<K> {
    type Elem = ElementId;

    fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        if let Some(l) = &self.lattice {
            return l.meet(a, b);
        }
        let (ta, tb) = (&self.tuples[a.index()], &self.tuples[b.index()]);
        let m: [u32; K] = std::array::from_fn(|i| self.base.meet(ElementId(ta[i]), ElementId(tb[i])).0);
        ElementId(self.index[&m])
    }

    fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        if let Some(l) = &self.lattice {
            return l.join(a, b);
        }
        let key = (a.0.min(b.0), a.0.max(b.0));
        if let Some(&j) = self.memo.read().expect("memo lock").get(&key) {
            return ElementId(j);
        }
        let (ta, tb) = (&self.tuples[a.index()], &self.tuples[b.index()]);
        let j: [u32; K] = std::array::from_fn(|i| self.base.join(ElementId(ta[i]), ElementId(tb[i])).0);
        let r = self.index[&close(&self.base, j).0];
        self.memo.write().expect("memo lock").insert(key, r);
        ElementId(r)
    }

    fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.tuple_leq(a.index(), b.index())
    }
}

pub fn m3_of(l: &FiniteLattice) -> Result<M3OfL> {
    M3OfL::new(l)
}

pub fn m4_of(l: &FiniteLattice) -> Result<M4OfL> {
    M4OfL::new(l)
}

/// Checks that `elems` with `lo` and `hi` as bounds forms a sublattice
/// whose middle elements pairwise meet to `lo` and join to `hi`.
pub fn verify_diamond<L: LatticeOps<Elem = ElementId>>(k: &L, lo: ElementId, hi: ElementId, middle: &[ElementId]) -> bool {
    middle.iter().enumerate().all(|(i, &a)| {
        k.leq(lo, a)
            && k.leq(a, hi)
            && a != lo
            && a != hi
            && middle[..i].iter().all(|&b| a != b && k.meet(a, b) == lo && k.join(a, b) == hi)
    })
}

/// `<0,0,0>, <1,0,0>, <0,1,0>, <0,0,1>, <1,1,1>`, verified to be an `M_3` with
/// the bounds of `K`.
pub fn spanning_m3(k: &M3OfL) -> Result<[ElementId; 5]> {
    let (o, i) = (k.base.bottom(), k.base.top());
    let get = |t: [ElementId; 3]| k.element(t).ok_or(LatticeError::NotASublattice);
    let out = [get([o, o, o])?, get([i, o, o])?, get([o, i, o])?, get([o, o, i])?, get([i, i, i])?];
    if k.base.size() < 2 || !verify_diamond(k, out[0], out[4], &out[1..4]) {
        return Err(LatticeError::NotASublattice);
    }
    if let Some(l) = &k.lattice {
        if out[0] != l.bottom() || out[4] != l.top() {
            return Err(LatticeError::NotASublattice);
        }
    }
    Ok(out)
}

/// `x -> <x, 0, 0>`, indexed by base element.
pub fn embed_atom(k: &M3OfL) -> Vec<ElementId> {
    let o = k.base.bottom();
    k.base
        .elements()
        .map(|x| k.element([x, o, o]).expect("<x,0,0> is balanced"))
        .collect()
}

/// `x -> <x, x, x>`, indexed by base element.
pub fn embed_diag(k: &M3OfL) -> Vec<ElementId> {
    k.base
        .elements()
        .map(|x| k.element([x, x, x]).expect("diagonal is balanced"))
        .collect()
}

/// Injective and preserving meet and join on all pairs.
pub fn verify_embedding<L: LatticeOps<Elem = ElementId>>(src: &FiniteLattice, dst: &L, map: &[ElementId]) -> bool {
    let mut img: Vec<ElementId> = map.to_vec();
    img.sort();
    img.dedup();
    img.len() == map.len()
        && src.elements().all(|a| {
            src.elements().all(|b| {
                map[src.meet(a, b).index()] == dst.meet(map[a.index()], map[b.index()])
                    && map[src.join(a, b).index()] == dst.join(map[a.index()], map[b.index()])
            })
        })
}

/// Isotone maps `J(D) -> M_3` under the pointwise order.
pub fn m3_power_poset(d: &FiniteLattice) -> Result<FiniteLattice> {
    if !d.is_distributive() {
        return Err(LatticeError::NotDistributive);
    }
    let m3 = m_k(3)?;
    let p = Poset::induced(d, &d.join_irreducibles());
    let maps = isotone_maps(&p, &m3, crate::lattice::DEFAULT_ENUMERATION_LIMIT)?;
    let names = maps
        .iter()
        .map(|f| {
            let v: Vec<&str> = f.values.iter().map(|&e| m3.name_of(e)).collect();
            format!("({})", v.join(","))
        })
        .collect();
    FiniteLattice::from_order(format!("M3^J({})", d.name()), Some(names), maps.len(), |a, b| {
        maps[a].leq(&maps[b], &m3)
    })
}

/// The elements `t, u, v, w` of `M_3[M_3]` together with their bounds.
pub struct M4InM3M3 {
    pub k: M3OfL,
    pub bottom: ElementId,
    pub top: ElementId,
    pub elems: [ElementId; 4],
}

impl M4InM3M3 {
    /// Pairwise meets are the bottom, pairwise joins the top, and the six
    /// elements form a sublattice isomorphic to `M_4`.
    pub fn verify(&self) -> bool {
        if !verify_diamond(&self.k, self.bottom, self.top, &self.elems) {
            return false;
        }
        let mut all = self.elems.to_vec();
        all.extend([self.bottom, self.top]);
        let l = self.k.lattice();
        match l.sublattice(&all) {
            Ok((sub, _)) => find_isomorphism(&sub, &m_k(4).expect("M4")).ok().flatten().is_some(),
            Err(_) => false,
        }
    }
}

/// `t = <1,0,0>`, `u = <0,a,b>`, `v = <0,b,c>`, `w = <0,c,a>`.
pub fn m4_sublattice_in_m3m3() -> Result<M4InM3M3> {
    let m3 = m_k(3)?;
    let k = m3_of(&m3)?;
    let get = |n: [&str; 3]| k.element_by_names(n).ok_or(LatticeError::NotASublattice);
    let elems = [
        get(["1", "0", "0"])?,
        get(["0", "a", "b"])?,
        get(["0", "b", "c"])?,
        get(["0", "c", "a"])?,
    ];
    let bottom = get(["0", "0", "0"])?;
    let top = get(["1", "1", "1"])?;
    Ok(M4InM3M3 { k, bottom, top, elems })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{chain, n5};

    #[test]
    fn m3_of_two_element_chain() {
        let k = m3_of(&chain(2).unwrap()).unwrap();
        assert_eq!(k.size(), 5);
        assert!(find_isomorphism(k.lattice(), &m_k(3).unwrap()).unwrap().is_some());
        assert_eq!(spanning_m3(&k).unwrap().len(), 5);
    }

    #[test]
    fn m4_of_two_element_chain() {
        let k = m4_of(&chain(2).unwrap()).unwrap();
        assert!(find_isomorphism(k.lattice(), &m_k(4).unwrap()).unwrap().is_some());
    }

    #[test]
    fn lazy_joins_agree_with_tables() {
        let l = n5();
        let eager = m3_of(&l).unwrap();
        let lazy = M3OfL::with_threshold(&l, 0).unwrap();
        assert!(!lazy.is_materialized());
        for a in eager.lattice().elements() {
            for b in eager.lattice().elements() {
                assert_eq!(LatticeOps::join(&lazy, a, b), eager.lattice().join(a, b));
                assert_eq!(LatticeOps::meet(&lazy, a, b), eager.lattice().meet(a, b));
            }
        }
    }

    #[test]
    fn embeddings_of_pentagon() {
        let l = n5();
        let k = m3_of(&l).unwrap();
        assert!(verify_embedding(&l, k.lattice(), &embed_atom(&k)));
        assert!(verify_embedding(&l, k.lattice(), &embed_diag(&k)));
    }

    #[test]
    fn power_needs_distributive() {
        assert_eq!(m3_power_poset(&n5()).unwrap_err(), LatticeError::NotDistributive);
        assert_eq!(m3_power_poset(&chain(3).unwrap()).unwrap().size(), 12);
    }

    #[test]
    fn m4_inside() {
        assert!(m4_sublattice_in_m3m3().unwrap().verify());
    }
}
