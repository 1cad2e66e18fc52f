use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use critical_model::{closed_form_ratios, example_channel, example_model, norm_zero_locator};
use fock_oracle::{build_fpeps, LatticeSpec};
use fpeps_map::{peps_state, TensorSet};
use gaussian_core::{
    apply_channel, ground_energy, ground_state_cm_consistency, lattice_bond_cm, lattice_channel,
    parent_hamiltonian_from_model, purity_check, real_space_gamma, PARENT_RADIUS_CAP,
};

use crate::{ConfigError, Outcome, EXIT_FAIL, EXIT_OK};

pub const MAPPING_DEFAULT_COUNT: usize = 60;
pub const OVERLAP_TOL: f64 = 1e-10;
pub const VALIDITY_TOL: f64 = 1e-12;
pub const GAUSSIAN_TOL: f64 = 1e-10;
/// Random momenta for the closed-form and purity checks.
pub const MOMENTUM_SAMPLES: usize = 100;
/// Sites of the Fock-space oracle: five modes per site under its 24-mode cap.
const MAPPING_MAX_SITES: usize = 4;
/// Oracle states below this norm are redrawn.
const MIN_ORACLE_NORM: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), residual, tolerance, pass: residual <= tolerance, detail: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub seed: u64,
    pub lattices: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

impl Report {
    fn new(suite: &'static str, seed: u64, lattices: Vec<String>, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        Self { suite, seed, lattices, checks, passed, failed, all_pass: failed == 0 }
    }

    pub fn into_outcome(self) -> Outcome {
        let summary = format!("{} suite: {} passed, {} failed", self.suite, self.passed, self.failed);
        let exit = if self.all_pass { EXIT_OK } else { EXIT_FAIL };
        let mut output = serde_json::to_string_pretty(&self).expect("plain data serializes");
        output.push('\n');
        Outcome { output, summary, exit }
    }
}

fn tolerance(over: Option<f64>, default: f64) -> Result<f64, ConfigError> {
    match over {
        Some(t) if !(t.is_finite() && t >= 0.0) => Err(ConfigError(format!("tolerance must be finite and nonnegative, got {t}"))),
        Some(t) => Ok(t),
        None => Ok(default),
    }
}

/// Random parity-valid tensor sets, contracted through the PEPS mapping and built directly in
/// Fock space; each check is `| |<oracle|mapped>| - 1 |` on normalized states.
pub fn mapping(seed: u64, lattice: Option<&LatticeSpec>, count: usize, tol: Option<f64>) -> Result<Report, ConfigError> {
    let tol = tolerance(tol, OVERLAP_TOL)?;
    if count == 0 {
        return Err(ConfigError("count must be positive".into()));
    }
    let lattices: Vec<LatticeSpec> = match lattice {
        Some(l) if l.n_sites() > MAPPING_MAX_SITES => {
            return Err(ConfigError(format!("mapping suite supports at most {MAPPING_MAX_SITES} sites, got {l}")));
        }
        Some(l) => vec![*l],
        None => ["1x2", "2x1", "2x2"].iter().map(|s| crate::parse::lattice(s).expect("valid literal")).collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(count);
    for i in 0..count {
        let l = lattices[i % lattices.len()];
        let (set, oracle) = loop {
            let parities: Vec<u8> = (0..l.n_sites()).map(|_| rng.random_range(0..2u8)).collect();
            let set = TensorSet::random(l, &parities, rng.random())?;
            let oracle = build_fpeps(&l, &set.tensors)?;
            if oracle.norm() > MIN_ORACLE_NORM {
                break (set, oracle);
            }
        };
        let mapped = peps_state(&set)?;
        let ov = oracle.overlap_modulus(&mapped)?;
        let parities: String = set.parities().iter().map(|p| char::from(b'0' + p)).collect();
        checks.push(Check::new(format!("overlap {l} parities {parities} #{i}"), (ov - 1.0).abs(), tol));
    }
    Ok(Report::new("mapping", seed, lattices.iter().map(|l| l.to_string()).collect(), checks))
}

fn pi_units(phi: (f64, f64)) -> String {
    format!("({}pi, {}pi)", phi.0 / PI, phi.1 / PI)
}

/// Example channel on one torus. Zero-norm momenta fail the suite and stop the
/// lattice-dependent checks.
pub fn gaussian(seed: u64, lattice: Option<&LatticeSpec>, tol: Option<f64>) -> Result<Report, ConfigError> {
    let tol_main = tolerance(tol, GAUSSIAN_TOL)?;
    let tol_valid = tolerance(tol, VALIDITY_TOL)?;
    let l = match lattice {
        Some(l) => *l,
        None => LatticeSpec::new(3, 3)?,
    };
    let ch = example_channel();
    let model = example_model();
    let mut checks = Vec::new();

    let (anti, orth) = ch.validity_residuals();
    checks.push(Check::new("channel validity", anti.max(orth), tol_valid));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut ratio_err, mut purity_err, mut used) = (0.0f64, 0.0f64, 0);
    while used < MOMENTUM_SAMPLES {
        let phi = (rng.random_range(0.0..TAU), rng.random_range(0.0..TAU));
        let Ok((p, q)) = closed_form_ratios(phi) else { continue };
        let b = model.block(phi);
        if b.zero_norm {
            continue;
        }
        let (pd, qd) = b.ratios().expect("nonzero norm");
        ratio_err = ratio_err.max((pd - p).abs()).max((qd - q).norm());
        purity_err = purity_err.max(purity_check(&b)?);
        used += 1;
    }
    checks.push(Check::new("closed-form ratios", ratio_err, tol_main));
    checks.push(Check::new("block purity", purity_err, tol_main));

    let zeros = model.zero_momenta(&l);
    let mut zc = Check::new(format!("zero-norm momenta on {l}"), zeros.len() as f64, 0.0);
    if !zeros.is_empty() {
        let located = norm_zero_locator(&l);
        let list = |essential: bool| {
            located.iter().filter(|z| z.essential == essential).map(|z| pi_units(z.phi)).collect::<Vec<_>>().join(", ")
        };
        zc.detail = Some(format!("essential: [{}]; removable: [{}]", list(true), list(false)));
        checks.push(zc);
        return Ok(Report::new("gaussian", seed, vec![l.to_string()], checks));
    }
    checks.push(zc);

    let big = lattice_channel(&ch, &l)?;
    let direct = apply_channel(&big, &lattice_bond_cm(&l))?;
    let gamma = real_space_gamma(&model, &l)?.to_cm()?;
    checks.push(Check::new(format!("channel/Fourier equivalence on {l}"), (direct.matrix() - gamma.matrix()).amax(), tol_main));
    checks.push(Check::new(format!("ground-state consistency on {l}"), ground_state_cm_consistency(&ch, &l)?, tol_main));
    let h = parent_hamiltonian_from_model(&model, PARENT_RADIUS_CAP)?;
    let e = h.energy(&l, &gamma)?;
    checks.push(Check::new(format!("ground energy on {l}"), (e - ground_energy(&h, &l)).abs(), tol_main));
    Ok(Report::new("gaussian", seed, vec![l.to_string()], checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mapping_report_shape() {
        let r = mapping(3, None, 6, None).unwrap();
        assert_eq!(r.checks.len(), 6);
        assert!(r.all_pass, "{r:?}");
        assert_eq!(r.lattices, vec!["1x2", "2x1", "2x2"]);
        assert!(mapping(3, Some(&LatticeSpec::new(3, 2).unwrap()), 1, None).is_err());
        assert!(mapping(3, None, 0, None).is_err());
        assert!(mapping(3, None, 1, Some(-1.0)).is_err());
    }

    #[test]
    fn gaussian_passes_on_odd_torus() {
        let r = gaussian(1, None, None).unwrap();
        assert!(r.all_pass, "{r:?}");
        assert_eq!(r.checks.len(), 7);
    }

    #[test]
    fn gaussian_names_zero_momenta() {
        let r = gaussian(1, Some(&LatticeSpec::new(4, 4).unwrap()), None).unwrap();
        assert!(!r.all_pass);
        let z = r.checks.last().unwrap();
        assert!(z.detail.as_deref().unwrap().starts_with("essential: [(0.5pi, 0.5pi), (1.5pi, 1.5pi)]"));
    }
}
