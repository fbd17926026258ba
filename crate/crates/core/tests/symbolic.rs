use m3lattice::rank::{is_balanced3, Triple};
use m3lattice::symbolic::{
    dhw_adjustment, dhw_lattice, dhw_similar, fig2_divergence, fig2_lattice, validate_sample, DhwElement, ExtNat,
    Fig2Element, OracleLattice, DEFAULT_DIVERGENCE_STEPS,
};
use m3lattice::LatticeOps;

use ExtNat::{Fin, Inf};
use Fig2Element::*;

fn p(i: ExtNat, j: ExtNat) -> DhwElement {
    DhwElement(i, j)
}

#[test]
fn similarity() {
    assert!(dhw_similar(DhwElement::fin(2, 4), DhwElement::fin(0, 2)));
    assert!(!dhw_similar(p(Fin(1), Inf), DhwElement::fin(2, 2)));
    let top = p(Inf, Inf);
    for (i, j) in [(0, 0), (1, 3), (2, 5), (4, 6)] {
        let other = DhwElement::fin(i, j);
        assert_eq!(dhw_similar(top, other), i % 2 == j % 2);
    }
}

#[test]
fn dhw_operations() {
    let l = dhw_lattice();
    assert_eq!(l.meet(DhwElement::fin(2, 4), DhwElement::fin(4, 2)), DhwElement::fin(2, 2));
    assert_eq!(l.meet(p(Fin(1), Inf), DhwElement::fin(2, 2)), DhwElement::fin(1, 1));
    assert_eq!(l.bottom(), DhwElement::fin(0, 0));
    assert_eq!(l.top(), p(Inf, Inf));
    validate_sample(&l, &l.truncation(8)).unwrap();
}

#[test]
fn dhw_closed_forms() {
    let t = dhw_adjustment(DEFAULT_DIVERGENCE_STEPS);
    let x = |k: usize| t.iterate(k).unwrap().0[0];
    let y = |k: usize| t.iterate(k).unwrap().0[1];
    assert_eq!((x(3), x(4)), (p(Fin(4), Inf), p(Fin(4), Inf)));
    assert_eq!((y(2), y(3)), (p(Fin(3), Inf), p(Fin(3), Inf)));
    for n in 0..32u64 {
        let (a, b) = (2 * n as usize + 1, 2 * n as usize + 2);
        let q = |k: usize| t.iterate(k).unwrap().0;
        assert_eq!(q(a)[0], p(Fin(2 * n + 2), Inf));
        assert_eq!(q(b)[0], p(Fin(2 * n + 2), Inf));
        assert_eq!(q(a)[3], p(Inf, Fin(2 * n + 2)));
        assert_eq!(q(b)[3], p(Inf, Fin(2 * n + 2)));
        if n > 0 {
            let (c, d) = (2 * n as usize, 2 * n as usize + 1);
            assert_eq!(q(c)[1], p(Fin(2 * n + 1), Inf));
            assert_eq!(q(d)[1], p(Fin(2 * n + 1), Inf));
            assert_eq!(q(c)[2], p(Inf, Fin(2 * n + 1)));
            assert_eq!(q(d)[2], p(Inf, Fin(2 * n + 1)));
        }
    }
    assert!(!t.stabilized());
    assert!(t.iterates.windows(2).all(|w| w[0] != w[1]));
}

#[test]
fn fig2_relations() {
    let l = fig2_lattice();
    assert_eq!(l.join(X(2), Z(5)), Top);
    assert!(is_balanced3(&l, &Triple::new(U(3), Y, V(3))));
    for i in 0..10 {
        assert_eq!(l.meet(X(i), Z(i)), C(i));
        for j in 0..10 {
            assert!(l.leq(X(i), U(j)) && l.leq(Z(i), V(j)));
            assert!(!l.leq(X(i), Y) && !l.leq(Y, X(i)) && !l.leq(Z(i), Y));
        }
    }
    validate_sample(&l, &l.truncation(5)).unwrap();
}

#[test]
fn fig2_nothing_between() {
    // Anything above x_0..x_k and below u_0..u_k is some x_j or u_j with
    // j >= k, so as k grows nothing stays between the two chains.
    let l = fig2_lattice();
    for k in 0..8u32 {
        for e in l.truncation(k as usize + 3) {
            if (0..=k).all(|n| l.leq(X(n), e)) && (0..=k).all(|m| l.leq(e, U(m))) {
                assert!(matches!(e, X(j) | U(j) if j >= k), "{e}");
            }
        }
    }
}

#[test]
fn fig2_iterates() {
    let d = fig2_divergence(DEFAULT_DIVERGENCE_STEPS);
    assert_eq!(d.trace.iterates[0], Triple::new(X(1), Y, Z(1)));
    for (n, t) in d.trace.iterates.iter().enumerate() {
        let n = n as u32 + 1;
        assert_eq!(*t, Triple::new(X(n), Y, Z(n)));
    }
    assert!(d.passed());
}
