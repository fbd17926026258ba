//! Lattice specifications accepted by `--lattice`.

use m3lattice::catalog::{
    boolean, c2sq, chain, fano, l_family, m_k, n5, random_c1c4, subspace_lattice, witness7,
};
use m3lattice::construct::{m3_of, m4_of};
use m3lattice::{parse, FiniteLattice, LatticeError};

pub const SPEC_HELP: &str = "m3, m<k>, c<n>, b<n>, n5, c2sq, fano, witness7, l:<n>, subspace:<q>:<d>, \
random:<c>x<d>[:<density>], file:<path>, m3:<spec>, m4:<spec>";

/// Resolves a lattice specification. `seed` feeds `random:` specs.
pub fn resolve(spec: &str, seed: u64) -> Result<FiniteLattice, String> {
    let err = |e: LatticeError| format!("{spec}: {e}");
    let num = |s: &str| s.parse::<usize>().map_err(|_| format!("{spec}: expected a number, got {s:?}"));
    if let Some(inner) = spec.strip_prefix("m3:") {
        let base = resolve(inner, seed)?;
        let k = m3_of(&base).map_err(err)?;
        return k.into_lattice().ok_or_else(|| format!("{spec}: too large to tabulate"));
    }
    if let Some(inner) = spec.strip_prefix("m4:") {
        let base = resolve(inner, seed)?;
        let k = m4_of(&base).map_err(err)?;
        return k.into_lattice().ok_or_else(|| format!("{spec}: too large to tabulate"));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        return parse(&text).map_err(|e| format!("{path}: {e}"));
    }
    if let Some(n) = spec.strip_prefix("l:") {
        return l_family(num(n)?).map_err(err);
    }
    if let Some(rest) = spec.strip_prefix("subspace:") {
        let (q, d) = rest
            .split_once(':')
            .ok_or_else(|| format!("{spec}: expected subspace:<q>:<d>"))?;
        return subspace_lattice(num(q)?, num(d)?).map_err(err);
    }
    if let Some(rest) = spec.strip_prefix("random:") {
        let (dims, density) = match rest.split_once(':') {
            Some((d, p)) => (d, p.parse::<f64>().map_err(|_| format!("{spec}: bad density {p:?}"))?),
            None => (rest, 0.5),
        };
        let (c, d) = dims
            .split_once('x')
            .ok_or_else(|| format!("{spec}: expected random:<c>x<d>"))?;
        return random_c1c4(seed, num(c)?, num(d)?, density).map_err(err);
    }
    match spec {
        "n5" => return Ok(n5()),
        "c2sq" => return Ok(c2sq()),
        "fano" => return Ok(fano()),
        "witness7" => return Ok(witness7()),
        _ => {}
    }
    let (head, tail) = spec.split_at(1.min(spec.len()));
    match head {
        "m" => m_k(num(tail)?).map_err(err),
        "c" => chain(num(tail)?).map_err(err),
        "b" => boolean(num(tail)?).map_err(err),
        _ => Err(format!("unknown lattice {spec:?}; expected one of {SPEC_HELP}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(resolve("m3", 0).unwrap().size(), 5);
        assert_eq!(resolve("c4", 0).unwrap().size(), 4);
        assert_eq!(resolve("b3", 0).unwrap().size(), 8);
        assert_eq!(resolve("l:2", 0).unwrap().size(), 14);
        assert_eq!(resolve("subspace:3:2", 0).unwrap().size(), 6);
        assert_eq!(resolve("m3:m4", 0).unwrap().size(), m3_of(&m_k(4).unwrap()).unwrap().size());
        assert!(resolve("q7", 0).is_err());
        assert!(resolve("c", 0).is_err());
        assert!(resolve("random:3x2", 1).is_ok());
    }
}
