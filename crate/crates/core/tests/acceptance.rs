//! One line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use m3lattice::catalog::{boolean, c2sq, chain, fano, l_family, m_k, n5, random_c1c4, witness7};
use m3lattice::congruence::{all_congruences, verify_cpe, Embedding};
use m3lattice::construct::{m3_of, m3_power_poset, m4_sublattice_in_m3m3};
use m3lattice::rank::{
    antichain_rank_scan, closure3, default_cap, modularity_rank, stabilization_index, RankReport,
};
use m3lattice::symbolic::{dhw_adjustment, dhw_closed_form, fig2_divergence};
use m3lattice::tensor::{verify_m3_tensor_iso, verify_repr_iso};
use m3lattice::{find_isomorphism, ElementId, FiniteLattice, Triple};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rank(l: &FiniteLattice) -> Result<RankReport, String> {
    modularity_rank(l, default_cap(l)).map_err(|e| format!("{}: {e}", l.name()))
}

fn c1_wolk_counts() -> Outcome {
    let k = m3_of(&m_k(4).unwrap()).unwrap();
    let l = k.lattice();
    let scan = antichain_rank_scan(l, default_cap(l));
    ensure(scan.total == 89_217, || format!("antichains {}", scan.total))?;
    ensure(scan.failing(2) == 936, || format!("failing γ2 {}", scan.failing(2)))?;
    ensure(scan.failing(3) == 0, || format!("failing γ3 {}", scan.failing(3)))?;
    for n in 4..=6 {
        let r = rank(m3_of(&m_k(n).unwrap()).unwrap().lattice())?;
        ensure(r.rank == 3, || format!("rank M3[M{n}] = {}", r.rank))?;
    }
    Ok(format!(
        "M3[M4]: {} antichains, {} fail γ2, {} fail γ3; rank M3[Mk] = 3 for k = 4..6",
        scan.total,
        scan.failing(2),
        scan.failing(3)
    ))
}

fn row(k: &m3lattice::construct::M3OfL, t: [&str; 3]) -> ElementId {
    k.element_by_names(t).unwrap_or_else(|| panic!("{t:?} is not balanced"))
}

fn c2_iteration_tables() -> Outcome {
    let k = m3_of(&m_k(4).unwrap()).unwrap();
    let table = [
        [["b", "c", "a"], ["b", "a", "d"], ["a", "0", "c"]],
        [["b", "c", "a"], ["b", "a", "d"], ["1", "c", "c"]],
        [["b", "c", "a"], ["1", "1", "1"], ["1", "c", "c"]],
        [["1", "1", "1"], ["1", "1", "1"], ["1", "1", "1"]],
    ];
    check_table(&k, &table, Some(3))?;

    let k = m3_of(&fano()).unwrap();
    let table = [
        [["3", "6", "4"], ["3", "457", "2"], ["7", "2", "561"]],
        [["3", "6", "4"], ["3", "457", "2"], ["713", "124", "561"]],
        [["346", "346", "346"], ["3", "457", "2"], ["713", "124", "561"]],
        [["346", "346", "346"], ["713", "457", "672"], ["713", "124", "561"]],
        [["PL", "346", "346"], ["713", "457", "672"], ["713", "124", "561"]],
    ];
    check_table(&k, &table, None)?;
    Ok("M3[M4] rows 0..3 and M3[Fano] rows 0..4 match; p_3 != p_4 in M3[Fano]".into())
}

fn check_table(k: &m3lattice::construct::M3OfL, table: &[[[&str; 3]; 3]], index: Option<usize>) -> Result<(), String> {
    let l = k.lattice();
    let t0 = Triple::new(row(k, table[0][0]), row(k, table[0][1]), row(k, table[0][2]));
    let trace = closure3(l, t0, table.len());
    for (n, r) in table.iter().enumerate() {
        let want = Triple::new(row(k, r[0]), row(k, r[1]), row(k, r[2]));
        let got = *trace.iterate(n).unwrap();
        ensure(got == want, || {
            format!(
                "{} row {n}: got <{}, {}, {}>",
                l.name(),
                l.name_of(got.x),
                l.name_of(got.y),
                l.name_of(got.z)
            )
        })?;
    }
    if let Some(i) = index {
        ensure(trace.index == Some(i), || format!("{} index {:?}", l.name(), trace.index))?;
    }
    Ok(())
}

fn c3_fano_size() -> Outcome {
    let k = m3_of(&fano()).unwrap();
    ensure(k.size() == 1090, || format!("|M3[Fano]| = {}", k.size()))?;
    let mut msg = format!("|M3[Fano]| = {}", k.size());
    if std::env::var_os("M3LATTICE_EXTENDED").is_some() {
        let l = k.lattice();
        let scan = antichain_rank_scan(l, default_cap(l));
        msg += &format!(
            "; extended scan: {} antichains, {} fail γ3, {} unstable",
            scan.total,
            scan.failing(3),
            scan.unstable
        );
    }
    Ok(msg)
}

fn c4_rank_ladder() -> Outcome {
    for l in [m_k(3).unwrap(), boolean(3).unwrap()].into_iter().chain((1..=10).map(|n| chain(n).unwrap())) {
        let r = rank(&l)?;
        ensure(r.rank == 1, || format!("rank {} = {}", l.name(), r.rank))?;
    }
    ensure(rank(&n5())?.rank == 2, || "rank N5".into())?;
    ensure(rank(&witness7())?.rank == 3, || "rank witness7".into())?;
    for n in 1..=4 {
        let l = l_family(n).map_err(|e| e.to_string())?;
        ensure(rank(&l)?.rank == n + 1, || format!("rank L{n}"))?;
    }
    // Smallest exactly-3-modular lattice: none with at most 6 elements.
    for inner in 0..=4 {
        for l in common::lattices_with_inner(inner) {
            let r = rank(&l)?;
            ensure(r.rank <= 2, || format!("{} elements with rank {}", l.size(), r.rank))?;
        }
    }
    let seven = common::lattices_with_inner(5);
    let threes = seven.iter().filter(|l| rank(l).map(|r| r.rank == 3).unwrap_or(false)).count();
    ensure(threes > 0, || "no 7-element lattice of rank 3".into())?;
    Ok(format!(
        "ranks 1 (M3, B3, chains), 2 (N5), 3 (witness7), n+1 (L1..L4); no rank 3 below 7 elements, {threes} labelled 7-element lattices of rank 3"
    ))
}

fn c5_cpe() -> Outcome {
    let ls = [chain(2).unwrap(), chain(3).unwrap(), c2sq(), n5(), m_k(3).unwrap(), m_k(4).unwrap(), witness7()];
    let mut sizes = Vec::new();
    for l in &ls {
        for emb in [Embedding::Atom, Embedding::Diag] {
            let r = verify_cpe(l, emb).map_err(|e| e.to_string())?;
            ensure(r.passed, || format!("{} {emb:?}: {r:?}", l.name()))?;
        }
        let a = all_congruences(l).unwrap().size();
        let b = all_congruences(m3_of(l).unwrap().lattice()).unwrap().size();
        ensure(a == b, || format!("{}: |Con L| = {a}, |Con M3[L]| = {b}", l.name()))?;
        sizes.push(format!("{}:{a}", l.name()));
    }
    Ok(format!("both embeddings pass; |Con| {}", sizes.join(" ")))
}

fn c6_tensor() -> Outcome {
    let ls = [chain(2).unwrap(), chain(3).unwrap(), c2sq(), m_k(3).unwrap(), n5()];
    for a in &ls {
        for b in &ls {
            let r = verify_repr_iso(a, b).map_err(|e| e.to_string())?;
            ensure(r.passed, || format!("repr {} x {}: {r:?}", a.name(), b.name()))?;
        }
    }
    for l in [chain(2).unwrap(), c2sq(), chain(3).unwrap(), n5(), m_k(4).unwrap()] {
        let r = verify_m3_tensor_iso(&l).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("M3 ⊗ {}: {r:?}", l.name()))?;
    }
    for d in [chain(2).unwrap(), chain(3).unwrap(), c2sq(), boolean(3).unwrap()] {
        let p = m3_power_poset(&d).map_err(|e| e.to_string())?;
        let k = m3_of(&d).unwrap();
        let iso = find_isomorphism(&p, k.lattice()).map_err(|e| e.to_string())?;
        ensure(iso.is_some(), || format!("M3^J({}) vs M3[{}]", d.name(), d.name()))?;
    }
    for l in [chain(3).unwrap(), c2sq(), n5(), m_k(3).unwrap(), m_k(4).unwrap(), witness7(), boolean(3).unwrap()] {
        let left = m3_of(&l.ideal_lattice()).unwrap().into_lattice().unwrap();
        let right = m3_of(&l).unwrap().lattice().ideal_lattice();
        let iso = find_isomorphism(&left, &right).map_err(|e| e.to_string())?;
        ensure(iso.is_some(), || format!("M3[Id {}] vs Id M3[{}]", l.name(), l.name()))?;
    }
    Ok("repr on 25 pairs, M3 ⊗ L on 5 lattices, M3^J(D) on 4, M3[Id L] on 7".into())
}

fn c7_divergence() -> Outcome {
    let d = fig2_divergence(64);
    ensure(d.passed(), || format!("fig2: ladder {} increasing {} majorized {}", d.matches_ladder, d.strictly_increasing, d.majorized))?;
    let t = dhw_adjustment(64);
    ensure(!t.stabilized(), || "dhw stabilized".into())?;
    for m in 1..=t.iterates.len() {
        ensure(*t.iterate(m).unwrap() == dhw_closed_form(m), || format!("dhw iterate {m}"))?;
        ensure(t.iterate(m) != t.iterate(m - 1), || format!("dhw iterates {} and {m} equal", m - 1))?;
    }
    Ok(format!(
        "fig2: {} strictly increasing iterates below every <u_m, y0, v_m>; dhw: {} iterates match closed forms, no fixpoint",
        d.trace.iterates.len(),
        t.iterates.len()
    ))
}

fn c8_m4_in_m3m3() -> Outcome {
    let w = m4_sublattice_in_m3m3().map_err(|e| e.to_string())?;
    let l = w.k.lattice();
    ensure(w.bottom == l.bottom() && w.top == l.top(), || "bounds are not the bounds of M3[M3]".into())?;
    for (i, &a) in w.elems.iter().enumerate() {
        for &b in &w.elems[i + 1..] {
            ensure(l.meet(a, b) == w.bottom && l.join(a, b) == w.top, || "pairwise meet/join".into())?;
        }
    }
    let gen = l.generated_sublattice(&w.elems);
    ensure(gen.len() == 6, || format!("generated sublattice has {} elements", gen.len()))?;
    ensure(w.verify(), || "not isomorphic to M4".into())?;
    Ok(format!(
        "{} generate a 6-element M4 with meets {} and joins {}",
        w.elems.iter().map(|&e| l.name_of(e)).collect::<Vec<_>>().join(" "),
        l.name_of(w.bottom),
        l.name_of(w.top)
    ))
}

fn c9_properties() -> Outcome {
    // (a) closure agrees with the least balanced majorant.
    let mut triples = 0u64;
    for l in common::small_catalog() {
        let cap = default_cap(&l);
        for t in all_triples(&l) {
            let c = closure3(&l, t, cap);
            let want = common::least_balanced_majorant(&l, t);
            ensure(c.closure().copied() == want, || format!("{}: closure of {t}", l.name()))?;
            triples += 1;
        }
    }
    // (b) M3[L] modular iff L distributive.
    let cat = common::catalog();
    for l in &cat {
        let k = m3_of(l).unwrap();
        let modular = k.lattice().is_modular();
        ensure(modular == l.is_distributive(), || format!("{}: M3 modular {modular}", l.name()))?;
    }
    // (c) random representation lattices have rank at most 3.
    let mut built = 0;
    let mut seed = 0u64;
    while built < 1000 {
        let (c, d) = (2 + (seed % 4) as usize, 2 + (seed / 4 % 4) as usize);
        if let Ok(l) = random_c1c4(seed, c, d, 0.6) {
            let r = rank(&l)?;
            ensure(r.rank <= 3, || format!("seed {seed}: rank {}", r.rank))?;
            built += 1;
        }
        seed += 1;
        ensure(seed < 100_000, || "too few valid random decorations".into())?;
    }
    // (d) triples with two comparable entries settle by index 2.
    for l in &cat {
        let cap = default_cap(l);
        for t in all_triples(l) {
            let [x, y, z] = t.to_array();
            if l.comparable(x, y) || l.comparable(x, z) || l.comparable(y, z) {
                let i = stabilization_index(l, t, cap);
                ensure(i.is_some_and(|i| i <= 2), || format!("{}: {t} has index {i:?}", l.name()))?;
            }
        }
    }
    // (e) rank of a product is the larger rank; sublattices never exceed.
    let pairs = [
        (n5(), chain(2).unwrap()),
        (witness7(), chain(2).unwrap()),
        (l_family(1).unwrap(), c2sq()),
        (n5(), witness7()),
        (m_k(3).unwrap(), l_family(2).unwrap()),
    ];
    for (a, b) in &pairs {
        let p = FiniteLattice::direct_product(a, b);
        let (ra, rb, rp) = (rank(a)?.rank, rank(b)?.rank, rank(&p)?.rank);
        ensure(rp == ra.max(rb), || format!("{} x {}: {rp} vs {ra}, {rb}", a.name(), b.name()))?;
    }
    for l in [witness7(), l_family(2).unwrap(), l_family(3).unwrap()] {
        let rl = rank(&l)?.rank;
        for a in l.elements() {
            for b in l.elements().filter(|&b| l.leq(a, b)) {
                let i = l.interval(a, b).unwrap();
                ensure(rank(&i)?.rank <= rl, || format!("{} [{a}, {b}]", l.name()))?;
            }
        }
    }
    Ok(format!(
        "{triples} closures match the majorant oracle; {} lattices obey the modular/distributive law; {built} random lattices have rank <= 3; index <= 2 off antichains; product and interval laws hold",
        cat.len()
    ))
}

fn all_triples(l: &FiniteLattice) -> Vec<Triple> {
    let n = l.size() as u32;
    let mut v = Vec::with_capacity((n * n * n) as usize);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                v.push(Triple::new(ElementId(x), ElementId(y), ElementId(z)));
            }
        }
    }
    v
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("M3[M4] antichain counts", c1_wolk_counts),
        ("iteration tables", c2_iteration_tables),
        ("M3[Fano] size", c3_fano_size),
        ("rank ladder", c4_rank_ladder),
        ("congruence-preserving extension", c5_cpe),
        ("tensor bridge", c6_tensor),
        ("divergence witnesses", c7_divergence),
        ("M4 inside M3[M3]", c8_m4_in_m3m3),
        ("property suites", c9_properties),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {} PASS {name} ({secs:.1}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
