use std::path::Path;

use serde::Serialize;

use critical_model::{
    correlator_table, entropy_scan, example_model, gap_scan, hcrit_coefficients, linear_fit, proportionality,
    CorrelatorGrid, Direction,
};
use fock_oracle::LatticeSpec;
use fpeps_map::{map_tensor_set, peps_to_json, TensorSet};
use gaussian_core::{
    majorana_to_dirac, parent_hamiltonian, parent_hamiltonian_from_model, single_particle_spectrum, DiracTable,
    FourierModel, GaussianChannel, PARENT_RADIUS_CAP,
};

use crate::{ConfigError, Outcome};

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, ConfigError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| ConfigError(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| ConfigError(e.to_string()))
}

#[derive(Serialize)]
struct CorrelatorRow {
    n1: i64,
    n2: i64,
    kind: String,
    numeric: f64,
    residue: f64,
    asymptotic: f64,
}

pub fn correlations(dirs: &[Direction], max_n: i64, grid: usize) -> Result<Outcome, ConfigError> {
    if max_n < 1 {
        return Err(ConfigError(format!("max-n must be at least 1, got {max_n}")));
    }
    let cg = CorrelatorGrid::new(grid)?;
    let mut rows = Vec::new();
    for &dir in dirs {
        let points: Vec<(i64, i64)> = (1..=max_n).map(|n| dir.point(n)).collect();
        for r in correlator_table(&cg, &points)? {
            rows.push(CorrelatorRow {
                n1: r.n1,
                n2: r.n2,
                kind: r.kind.to_string(),
                numeric: r.numeric,
                residue: r.residue_closed_form,
                asymptotic: r.asymptotic,
            });
        }
    }
    let worst = rows.iter().map(|r| (r.numeric - r.residue).abs()).fold(0.0f64, f64::max);
    let summary = format!("{} rows, grid {grid}, max |numeric - residue| = {worst:e}", rows.len());
    Ok(Outcome::ok(to_csv(rows)?, summary))
}

#[derive(Serialize)]
struct CoefficientRow {
    source: &'static str,
    term: &'static str,
    dh: i32,
    dv: i32,
    re: f64,
    im: f64,
}

fn table_rows(source: &'static str, t: &DiracTable) -> Vec<CoefficientRow> {
    let mut rows = Vec::new();
    for (term, map) in [("pairing", &t.pairing), ("hopping", &t.hopping)] {
        for (&(dh, dv), v) in map {
            rows.push(CoefficientRow { source, term, dh, dv, re: v.re, im: v.im });
        }
    }
    rows.push(CoefficientRow { source, term: "mu", dh: 0, dv: 0, re: t.mu, im: 0.0 });
    rows.push(CoefficientRow { source, term: "constant", dh: 0, dv: 0, re: t.constant, im: 0.0 });
    rows
}

/// Dirac table of the parent Hamiltonian. For the built-in model the literal critical table
/// follows, and the proportionality fit goes to the summary.
pub fn hamiltonian(model: &str, channel: Option<&Path>, lattice: &LatticeSpec) -> Result<Outcome, ConfigError> {
    if let Some(path) = channel {
        let ch = GaussianChannel::from_json(&std::fs::read_to_string(path)?)?;
        let parent = majorana_to_dirac(&parent_hamiltonian(&ch, PARENT_RADIUS_CAP)?)?;
        return Ok(Outcome::ok(to_csv(table_rows("parent", &parent))?, format!("parent Hamiltonian of {}", path.display())));
    }
    if model != "example" {
        return Err(ConfigError(format!("unknown model {model:?}; available: example")));
    }
    let literal = hcrit_coefficients(lattice)?;
    let parent = majorana_to_dirac(&parent_hamiltonian_from_model(&example_model(), PARENT_RADIUS_CAP)?)?;
    let p = proportionality(&literal, &parent);
    let mut rows = table_rows("parent", &parent);
    rows.extend(table_rows("literal", &literal));
    let summary = format!(
        "parent vs literal on {lattice}: scale {}, residual {:e}, off-pattern {:e}",
        p.scale, p.residual, p.off_pattern
    );
    Ok(Outcome::ok(to_csv(rows)?, summary))
}

#[derive(Serialize)]
struct GapRow {
    #[serde(rename = "N")]
    n: usize,
    gap: f64,
}

#[derive(Serialize)]
struct EnergyRow {
    phi1: f64,
    phi2: f64,
    energy: f64,
}

pub fn spectrum(sizes: Option<&[usize]>, lattice: Option<&LatticeSpec>) -> Result<Outcome, ConfigError> {
    match (sizes, lattice) {
        (Some(sizes), None) => {
            let g = gap_scan(sizes)?;
            let summary = if g.len() >= 2 {
                let x: Vec<f64> = g.iter().map(|p| (p.n as f64).ln()).collect();
                let y: Vec<f64> = g.iter().map(|p| p.gap.ln()).collect();
                let f = linear_fit(&x, &y)?;
                format!("log-log gap fit: slope {}, r {}", f.slope, f.r)
            } else {
                format!("{} size", g.len())
            };
            Ok(Outcome::ok(to_csv(g.iter().map(|p| GapRow { n: p.n, gap: p.gap }))?, summary))
        }
        (None, Some(l)) => {
            let model: &FourierModel = &example_model();
            let zeros = model.zero_momenta(l);
            if !zeros.is_empty() {
                return Err(ConfigError(format!("zero-norm momenta on {l}: {zeros:?}")));
            }
            let h = parent_hamiltonian_from_model(model, PARENT_RADIUS_CAP)?;
            let pts = single_particle_spectrum(&h, l);
            let rows = pts.iter().flat_map(|p| p.energies.iter().map(move |&energy| EnergyRow { phi1: p.phi.0, phi2: p.phi.1, energy }));
            Ok(Outcome::ok(to_csv(rows)?, format!("{} momenta on {l}", pts.len())))
        }
        _ => Err(ConfigError("give exactly one of --sizes and --lattice".into())),
    }
}

#[derive(Serialize)]
struct EntropyRow {
    #[serde(rename = "L")]
    l: usize,
    bits: f64,
}

pub fn entropy(torus: usize, blocks: &[usize]) -> Result<Outcome, ConfigError> {
    let s = entropy_scan(torus, blocks)?;
    let summary = if s.len() >= 2 {
        let f = linear_fit(&s.iter().map(|p| p.l as f64).collect::<Vec<_>>(), &s.iter().map(|p| p.bits).collect::<Vec<_>>())?;
        format!("linear fit S = {} + {} L", f.intercept, f.slope)
    } else {
        format!("{} block", s.len())
    };
    Ok(Outcome::ok(to_csv(s.iter().map(|p| EntropyRow { l: p.l, bits: p.bits }))?, summary))
}

pub fn convert(input: &Path) -> Result<Outcome, ConfigError> {
    let set = TensorSet::from_json(&std::fs::read_to_string(input)?)?;
    let peps = map_tensor_set(&set)?;
    let mut out = peps_to_json(&set.lattice, &peps);
    out.push('\n');
    Ok(Outcome::ok(out, format!("mapped {} site tensors on {}", peps.len(), set.lattice)))
}
