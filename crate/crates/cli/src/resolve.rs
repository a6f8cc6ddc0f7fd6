//! Builtin names and file paths for quandles, cocycles and knots.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use knot_cocycle::cocycle::{
    mochizuki_cocycle, parse_cocycle, q6_appendix_cocycle, Cocycle2, Coefficients, RawCocycle,
};
use knot_cocycle::diagram::{
    figure_eight_braid, parse_braid, s_knot_braid, torus_braid, unknot_braid, BraidWord,
};
use knot_cocycle::quandle::{make_dihedral, make_q6, parse_quandle, FiniteQuandle};

/// `q6`, `rP` (dihedral of order P) or a quandle file.
pub fn quandle(spec: &str) -> Result<Arc<FiniteQuandle>> {
    if spec == "q6" {
        return Ok(Arc::new(make_q6()));
    }
    if let Some(p) = spec.strip_prefix('r').and_then(|p| p.parse::<usize>().ok()) {
        return Ok(Arc::new(make_dihedral(p)?));
    }
    let text = read(spec)?;
    Ok(Arc::new(
        parse_quandle(&text).with_context(|| format!("loading quandle {spec}"))?,
    ))
}

/// The quandle a builtin cocycle lives on, if `spec` names one.
pub fn default_quandle_for(cocycle: &str) -> Option<String> {
    if cocycle == "q6z4" {
        return Some("q6".into());
    }
    cocycle.strip_prefix("mochizuki:").map(|p| format!("r{p}"))
}

/// A cocycle table from a builtin name or a file, unverified.
pub fn raw_cocycle(spec: &str) -> Result<RawCocycle> {
    if spec == "q6z4" {
        let c = q6_appendix_cocycle();
        return Ok(RawCocycle {
            degree: 2,
            order: 6,
            modulus: 4,
            table: c.table().to_vec(),
        });
    }
    if let Some(p) = spec.strip_prefix("mochizuki:") {
        let p: u64 = p.parse().map_err(|_| anyhow!("bad prime in {spec}"))?;
        let c = mochizuki_cocycle(p)?;
        return Ok(RawCocycle {
            degree: 3,
            order: p as usize,
            modulus: p,
            table: c.table().to_vec(),
        });
    }
    let text = read(spec)?;
    parse_cocycle(&text).with_context(|| format!("loading cocycle {spec}"))
}

/// A verified 2-cocycle on `quandle`. `zero:N` is the zero cocycle with
/// `ℤ/N` coefficients.
pub fn cocycle2(spec: &str, quandle: &Arc<FiniteQuandle>) -> Result<Cocycle2> {
    if let Some(n) = spec.strip_prefix("zero:") {
        let n: u64 = n.parse().map_err(|_| anyhow!("bad modulus in {spec}"))?;
        return Ok(Cocycle2::zero(quandle.clone(), Coefficients::new(n)?));
    }
    let raw = raw_cocycle(spec)?;
    Ok(raw.into_cocycle2(quandle.clone())?)
}

/// `torus:L`, `sknot:M,N`, `figure8`, `unknot`, or braid text.
pub fn knot(knot: Option<&str>, braid: Option<&str>) -> Result<BraidWord> {
    match (knot, braid) {
        (Some(_), Some(_)) => bail!("give either --knot or --braid, not both"),
        (None, None) => bail!("one of --knot or --braid is required"),
        (None, Some(b)) => Ok(parse_braid(b)?),
        (Some(k), None) => {
            if let Some(l) = k.strip_prefix("torus:") {
                let l: i64 = l
                    .parse()
                    .map_err(|_| anyhow!("bad torus parameter in {k}"))?;
                return Ok(torus_braid(l)?);
            }
            if let Some(mn) = k.strip_prefix("sknot:") {
                let (m, n) = mn
                    .split_once(',')
                    .ok_or_else(|| anyhow!("expected sknot:M,N"))?;
                let m: i64 = m.trim().parse().map_err(|_| anyhow!("bad m in {k}"))?;
                let n: i64 = n.trim().parse().map_err(|_| anyhow!("bad n in {k}"))?;
                return Ok(s_knot_braid(m, n)?);
            }
            match k {
                "figure8" => Ok(figure_eight_braid()),
                "unknot" => Ok(unknot_braid()),
                _ => bail!("unknown knot {k:?}"),
            }
        }
    }
}

fn read(path: &str) -> Result<String> {
    if !Path::new(path).is_file() {
        bail!("{path:?} is neither a builtin name nor a readable file");
    }
    fs::read_to_string(path).with_context(|| format!("reading {path}"))
}
