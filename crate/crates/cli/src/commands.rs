use std::path::Path;

use m3lattice::congruence::{all_congruences, verify_cpe, Embedding};
use m3lattice::construct::{m3_of, m4_of};
use m3lattice::rank::{
    antichain_rank_scan, default_cap, modularity_rank_antichains, satisfies_gamma, RankReport,
};
use m3lattice::symbolic::{dhw_adjustment, dhw_closed_form, fig2_divergence, DEFAULT_DIVERGENCE_STEPS};
use m3lattice::tensor::{tensor_product, verify_m3_tensor_iso, verify_repr_iso};
use m3lattice::{parse, serialize, FiniteLattice, LatticeError, Triple};
use serde_json::{json, Value};

use crate::{spec, CpeMode, Failure, Global, Oracle, Report};

type Outcome = Result<(), Failure>;

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

pub fn emit(g: &Global, value: &Value, text: impl FnOnce() -> String) {
    match g.report {
        Report::Json => println!("{}", serde_json::to_string_pretty(value).expect("json")),
        Report::Text => println!("{}", text()),
    }
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn lattice(g: &Global) -> Result<FiniteLattice, Failure> {
    spec::resolve(&g.lattice, g.seed).map_err(Failure::Input)
}

fn cap(g: &Global, l: &FiniteLattice) -> usize {
    g.cap.unwrap_or_else(|| default_cap(l))
}

fn write_to(path: Option<&Path>, l: &FiniteLattice) -> Outcome {
    if let Some(p) = path {
        std::fs::write(p, serialize(l)).map_err(|e| input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

pub fn name_triple(l: &FiniteLattice, t: &Triple) -> String {
    format!("<{}, {}, {}>", l.name_of(t.x), l.name_of(t.y), l.name_of(t.z))
}

pub fn validate(g: &Global, path: &Path) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let res = parse(&text).and_then(|l| {
        l.check_axioms().map_err(|e| LatticeError::Parse { location: "tables".into(), message: e })?;
        Ok(l)
    });
    match res {
        Err(e @ LatticeError::Parse { .. }) => Err(input(format!("{}: {e}", path.display()))),
        Err(e) => {
            emit(g, &json!({ "valid": false, "error": e.to_string() }), || format!("invalid: {e}"));
            Err(Failure::Check)
        }
        Ok(l) => {
            emit(g, &json!({ "valid": true, "name": l.name(), "size": l.size() }), || {
                format!("valid: {} with {} elements", l.name(), l.size())
            });
            Ok(())
        }
    }
}

fn rank_of(l: &FiniteLattice, cap: usize) -> Result<RankReport, LatticeError> {
    modularity_rank_antichains(l, cap)
}

pub fn info(g: &Global, write: Option<&Path>) -> Outcome {
    let l = lattice(g)?;
    write_to(write, &l)?;
    let cap = cap(g, &l);
    let rank = rank_of(&l, cap);
    let rank_json = match &rank {
        Ok(r) => json!(r.rank),
        Err(_) => Value::Null,
    };
    let v = json!({
        "name": l.name(),
        "size": l.size(),
        "bottom": l.name_of(l.bottom()),
        "top": l.name_of(l.top()),
        "height": l.height(),
        "distributive": l.is_distributive(),
        "modular": l.is_modular(),
        "rank": rank_json,
        "cap": cap,
    });
    emit(g, &v, || {
        let rank = match &rank {
            Ok(r) => r.rank.to_string(),
            Err(_) => format!("> {cap} (cap)"),
        };
        format!(
            "name: {}\nsize: {}\nbottom: {}\ntop: {}\nheight: {}\ndistributive: {}\nmodular: {}\nrank: {rank}",
            l.name(),
            l.size(),
            l.name_of(l.bottom()),
            l.name_of(l.top()),
            l.height(),
            v["distributive"],
            v["modular"],
        )
    });
    Ok(())
}

pub fn rank(g: &Global, gamma: Option<usize>, antichains: bool) -> Outcome {
    let l = lattice(g)?;
    let cap = cap(g, &l);
    if let Some(n) = gamma {
        let c = satisfies_gamma(&l, n);
        let w = c.witness.map(|t| name_triple(&l, &t));
        emit(g, &json!({ "n": n, "holds": c.holds, "witness": w }), || match &w {
            None => format!("γ_{n} holds in {}", l.name()),
            Some(w) => format!("γ_{n} fails in {} at {w}", l.name()),
        });
        return verdict(c.holds);
    }
    if antichains {
        let s = antichain_rank_scan(&l, cap);
        let failing: Vec<u64> = (1..s.histogram.len().max(2)).map(|n| s.failing(n)).collect();
        let v = json!({
            "total": s.total,
            "histogram": s.histogram,
            "unstable": s.unstable,
            "failing": failing,
            "cap": cap,
        });
        emit(g, &v, || {
            let mut out = format!("antichains: {}", s.total);
            for (i, k) in s.histogram.iter().enumerate() {
                out += &format!("\n  index {i}: {k}");
            }
            for (i, f) in failing.iter().enumerate() {
                out += &format!("\n  failing γ_{}: {f}", i + 1);
            }
            if s.unstable > 0 {
                out += &format!("\n  unstable within cap {cap}: {}", s.unstable);
            }
            out
        });
        return Ok(());
    }
    match rank_of(&l, cap) {
        Ok(r) => {
            let ext = name_triple(&l, &r.extremal);
            let v = json!({ "rank": r.rank, "max_index": r.max_index, "extremal": ext, "cap": cap });
            emit(g, &v, || format!("rank: {}\nmax index: {}\nextremal: {ext}", r.rank, r.max_index));
            Ok(())
        }
        Err(LatticeError::RankExceedsCap { cap }) => {
            emit(g, &json!({ "rank": Value::Null, "cap": cap }), || format!("rank: > {cap} (cap)"));
            Err(Failure::Check)
        }
        Err(e) => Err(input(e)),
    }
}

pub fn m3build(g: &Global, write: Option<&Path>, rank: bool) -> Outcome {
    let base = lattice(g)?;
    let k = m3_of(&base).map_err(input)?;
    let size = k.size();
    let max_index = k.max_closure_index();
    let materialized = k.into_lattice();
    if write.is_some() && materialized.is_none() {
        return Err(input("M_3[L] is too large to tabulate"));
    }
    let r = match (&materialized, rank) {
        (Some(l), true) => Some(rank_of(l, cap(g, l)).map_err(input)?.rank),
        _ => None,
    };
    if let Some(l) = &materialized {
        write_to(write, l)?;
    }
    let v = json!({ "base": base.name(), "size": size, "max_closure_index": max_index, "rank": r });
    emit(g, &v, || {
        let mut s = format!("M3[{}]: {size} elements, joins settle within {max_index} steps", base.name());
        if let Some(r) = r {
            s += &format!("\nrank: {r}");
        }
        s
    });
    Ok(())
}

pub fn m4build(g: &Global, write: Option<&Path>) -> Outcome {
    let base = lattice(g)?;
    let k = m4_of(&base).map_err(input)?;
    let (size, max_index) = (k.size(), k.max_closure_index());
    if let Some(l) = k.into_lattice() {
        write_to(write, &l)?;
    } else if write.is_some() {
        return Err(input("M_4[L] is too large to tabulate"));
    }
    let v = json!({ "base": base.name(), "size": size, "max_closure_index": max_index });
    emit(g, &v, || format!("M4[{}]: {size} elements, joins settle within {max_index} steps", base.name()));
    Ok(())
}

pub fn con(g: &Global, cpe: Option<CpeMode>) -> Outcome {
    let l = lattice(g)?;
    let con = all_congruences(&l).map_err(input)?;
    let blocks: Vec<String> = con.congruences.iter().map(|c| c.describe(&l)).collect();
    let mut reports = Vec::new();
    let modes: &[Embedding] = match cpe {
        None => &[],
        Some(CpeMode::Atom) => &[Embedding::Atom],
        Some(CpeMode::Diag) => &[Embedding::Diag],
        Some(CpeMode::Both) => &[Embedding::Atom, Embedding::Diag],
    };
    for &e in modes {
        reports.push(verify_cpe(&l, e).map_err(input)?);
    }
    let ok = reports.iter().all(|r| r.passed);
    let v = json!({
        "size": con.size(),
        "distributive": con.lattice.is_distributive(),
        "congruences": blocks,
        "cpe": reports,
    });
    emit(g, &v, || {
        let mut s = format!("Con({}): {} congruences", l.name(), con.size());
        for b in &blocks {
            s += &format!("\n  {b}");
        }
        for r in &reports {
            s += &format!(
                "\n{:?} embedding: {} (|Con L| = {}, |Con M3[L]| = {})",
                r.embedding,
                if r.passed { "congruence-preserving" } else { "FAILED" },
                r.con_base,
                r.con_m3
            );
        }
        s
    });
    verdict(ok)
}

pub fn tensor(g: &Global, with: &str, verify: bool, m3: bool) -> Outcome {
    let a = lattice(g)?;
    if m3 {
        let r = verify_m3_tensor_iso(&a).map_err(input)?;
        emit(g, &json!(r), || {
            format!(
                "M3 ⊗ {}: {} elements, M3[{}]: {} elements, isomorphic: {}",
                a.name(),
                r.tensor_size,
                a.name(),
                r.m3_size,
                r.passed
            )
        });
        return verdict(r.passed);
    }
    let b = spec::resolve(with, g.seed).map_err(Failure::Input)?;
    let t = tensor_product(&a, &b).map_err(input)?;
    let report = if verify { Some(verify_repr_iso(&a, &b).map_err(input)?) } else { None };
    let ok = report.as_ref().is_none_or(|r| r.passed);
    let v = json!({ "left": a.name(), "right": b.name(), "size": t.lattice.size(), "verify": report });
    emit(g, &v, || {
        let mut s = format!("{} ⊗ {}: {} elements", a.name(), b.name(), t.lattice.size());
        if let Some(r) = &report {
            s += &format!("\nbi-ideals and join-to-meet maps agree: {}", r.passed);
        }
        s
    });
    verdict(ok)
}

pub fn diverge(g: &Global, oracle: Oracle, steps: Option<usize>, trace: Option<Report>) -> Outcome {
    let steps = steps.or(g.cap).unwrap_or(DEFAULT_DIVERGENCE_STEPS);
    if steps == 0 {
        return Err(input("--steps must be at least 1"));
    }
    let (ok, iterates, summary): (bool, Vec<String>, String) = match oracle {
        Oracle::Dhw => {
            let t = dhw_adjustment(steps);
            let closed = (1..=t.iterates.len()).all(|m| *t.iterate(m).unwrap() == dhw_closed_form(m));
            let ok = !t.stabilized() && closed;
            let its = std::iter::once(&t.initial)
                .chain(&t.iterates)
                .map(|q| q.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            (
                ok,
                its,
                format!(
                    "dhw: {} iterates, stabilized: {}, closed forms match: {closed}",
                    t.iterates.len(),
                    t.stabilized()
                ),
            )
        }
        Oracle::Fig2 => {
            let d = fig2_divergence(steps);
            let its = std::iter::once(&d.trace.initial).chain(&d.trace.iterates).map(|t| t.to_string()).collect();
            (
                d.passed(),
                its,
                format!(
                    "fig2: {} iterates, stabilized: {}, ladder: {}, strictly increasing: {}, majorized: {}",
                    d.trace.iterates.len(),
                    d.trace.stabilized(),
                    d.matches_ladder,
                    d.strictly_increasing,
                    d.majorized
                ),
            )
        }
    };
    let v = json!({ "steps": steps, "diverges": ok, "summary": summary });
    emit(g, &v, || summary.clone());
    match trace {
        Some(Report::Json) => println!("{}", serde_json::to_string(&iterates).expect("json")),
        Some(Report::Text) => {
            for (n, it) in iterates.iter().enumerate() {
                println!("{n}: {it}");
            }
        }
        None => {}
    }
    verdict(ok)
}
