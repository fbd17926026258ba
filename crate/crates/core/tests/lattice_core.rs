use m3lattice::catalog::{boolean, c2sq, chain, l_family, m_k, n5};
use m3lattice::construct::m3_of;
use m3lattice::lattice::DEFAULT_ENUMERATION_LIMIT;
use m3lattice::{
    find_isomorphism, isotone_maps, parse, serialize, CoverList, ElementId, FiniteLattice, LatticeError, Poset,
};

fn fano_json() -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/fano.json")).unwrap()
}

#[test]
fn from_covers_examples() {
    let c2 = FiniteLattice::from_covers(&CoverList::new(2, vec![(0, 1)])).unwrap();
    assert_eq!(c2.meet(ElementId(0), ElementId(1)), ElementId(0));
    assert_eq!(c2.join(ElementId(0), ElementId(1)), ElementId(1));

    let p = n5();
    assert_eq!(p.join(p.el("b"), p.el("c")), p.el("i"));
    assert_eq!(p.meet(p.el("a"), p.el("c")), p.el("o"));
    assert!(p.lt(p.el("b"), p.el("a")));

    let bad = FiniteLattice::from_covers(&CoverList::new(4, vec![(0, 1), (0, 2), (1, 3)]));
    assert_eq!(bad.unwrap_err(), LatticeError::NotALattice(1, 2));
}

#[test]
fn operations() {
    let m3 = m_k(3).unwrap();
    let (a, b) = (m3.el("a"), m3.el("b"));
    assert_eq!(m3.meet(a, b), m3.bottom());
    assert_eq!(m3.join(a, b), m3.top());
    assert!(m3.elements().all(|x| m3.meet(x, x) == x));
    let c3 = chain(3).unwrap();
    assert_eq!(c3.join(ElementId(0), ElementId(2)), ElementId(2));
}

#[test]
fn products_and_duals() {
    let sq = FiniteLattice::direct_product(&chain(2).unwrap(), &chain(2).unwrap());
    assert!(find_isomorphism(&sq, &c2sq()).unwrap().is_some());
    let g = FiniteLattice::direct_product(&chain(3).unwrap(), &chain(2).unwrap());
    assert_eq!(g.size(), 6);
    assert!(g.is_distributive());

    let c3 = chain(3).unwrap();
    assert!(find_isomorphism(&c3.dual(), &c3).unwrap().is_some());
    assert_eq!(n5().dual().dual(), n5());
    let iso = find_isomorphism(&n5().dual(), &n5()).unwrap().unwrap();
    // The dual's long chain o < b < a < i reverses onto itself.
    let d = n5().dual();
    assert_eq!(iso[d.el("a").index()], n5().el("b"));
}

#[test]
fn intervals() {
    let p = n5();
    assert!(find_isomorphism(&p.interval(p.bottom(), p.top()).unwrap(), &p).unwrap().is_some());
    let m3 = m_k(3).unwrap();
    assert_eq!(m3.interval(m3.bottom(), m3.el("a")).unwrap().size(), 2);
    assert!(matches!(m3.interval(m3.el("a"), m3.el("b")), Err(LatticeError::NotComparable(..))));

    let l3 = l_family(3).unwrap();
    let lo = l3.meet(l3.el("x1"), l3.el("z1"));
    let upper = l3.interval(lo, l3.top()).unwrap();
    assert!(find_isomorphism(&upper, &l_family(2).unwrap()).unwrap().is_some());
}

#[test]
fn irreducibles() {
    let sq = c2sq();
    let j: Vec<&str> = sq.join_irreducibles().iter().map(|&e| sq.name_of(e)).collect();
    assert_eq!(j, ["p", "q"]);
    assert_eq!(chain(5).unwrap().join_irreducibles().len(), 4);
    let b3 = boolean(3).unwrap();
    let j: Vec<&str> = b3.join_irreducibles().iter().map(|&e| b3.name_of(e)).collect();
    assert_eq!(j, ["1", "2", "3"]);
}

#[test]
fn modular_and_distributive() {
    let m3 = m_k(3).unwrap();
    assert!(!m3.is_distributive() && m3.is_modular());
    assert!(!n5().is_modular());
    assert!((1..8).all(|n| chain(n).unwrap().is_distributive()));
}

#[test]
fn antichains() {
    assert_eq!(chain(6).unwrap().antichains3().count(), 0);
    let m3 = m_k(3).unwrap();
    let all: Vec<_> = m3.antichains3().collect();
    assert_eq!(all, vec![[m3.el("a"), m3.el("b"), m3.el("c")]]);
    assert_eq!(m_k(4).unwrap().count_antichains3(), 4);
}

#[test]
fn isomorphisms() {
    let c3 = chain(3).unwrap();
    assert_eq!(find_isomorphism(&c3, &c3).unwrap().unwrap(), vec![ElementId(0), ElementId(1), ElementId(2)]);
    assert!(find_isomorphism(&m_k(3).unwrap(), &n5()).unwrap().is_none());
    let k = m3_of(&chain(2).unwrap()).unwrap();
    assert_eq!(k.size(), 5);
    assert!(find_isomorphism(k.lattice(), &m_k(3).unwrap()).unwrap().is_some());
}

#[test]
fn isotone_map_counts() {
    let m3 = m_k(3).unwrap();
    let two = Poset::antichain(2);
    assert_eq!(isotone_maps(&two, &m3, DEFAULT_ENUMERATION_LIMIT).unwrap().len(), 25);
    let c2 = chain(2).unwrap();
    assert_eq!(isotone_maps(&Poset::chain(2), &c2, DEFAULT_ENUMERATION_LIMIT).unwrap().len(), 3);
    let b3 = boolean(3).unwrap();
    let j = Poset::induced(&b3, &b3.join_irreducibles());
    assert_eq!(isotone_maps(&j, &m3, DEFAULT_ENUMERATION_LIMIT).unwrap().len(), 125);
    assert!(matches!(
        isotone_maps(&j, &m3, 100),
        Err(LatticeError::EnumerationLimitExceeded { .. })
    ));
}

#[test]
fn ideals() {
    for l in [chain(3).unwrap(), n5(), m_k(4).unwrap(), c2sq()] {
        assert!(find_isomorphism(&l.ideal_lattice(), &l).unwrap().is_some());
    }
    let left = m3_of(&n5().ideal_lattice()).unwrap().into_lattice().unwrap();
    let right = m3_of(&n5()).unwrap().lattice().ideal_lattice();
    assert!(find_isomorphism(&left, &right).unwrap().is_some());
}

#[test]
fn serialization() {
    let p = n5();
    assert_eq!(parse(&serialize(&p)).unwrap(), p);
    let cyc = r#"{"name": "cyc", "elements": ["a", "b"], "covers": [[0, 1], [1, 0]]}"#;
    assert!(matches!(parse(cyc), Err(LatticeError::CycleDetected(_))));
    let f = parse(&fano_json()).unwrap();
    assert_eq!(f.size(), 16);
    assert_eq!(f, m3lattice::catalog::fano());
    assert!(matches!(parse("{"), Err(LatticeError::Parse { .. })));
}
