use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{
    classical_correlation_ja, concurrence, conditional_entropy, dissonance_rank2, eof,
    geometric_discord, lqu, mutual_information, negativity, von_neumann_entropy,
};
use crate::matcore::{Subsystem, PSD_CLIP};
use crate::states::{is_separable, to_state_json, DensityMatrix, RANK2_TOL};

/// Values smaller than this in magnitude are reported as exactly zero.
pub const REPORT_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ReportTolerances {
    pub psd_clip: f64,
    pub rank2: f64,
    pub zero_snap: f64,
}

impl Default for ReportTolerances {
    fn default() -> Self {
        Self {
            psd_clip: PSD_CLIP,
            rank2: RANK2_TOL,
            zero_snap: REPORT_ZERO,
        }
    }
}

/// Every measure of one two-qubit state, keyed by name.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    /// SHA-256 of the state's canonical JSON.
    pub state_fingerprint: String,
    #[serde(serialize_with = "crate::numfmt::ser_map_9")]
    pub measures: BTreeMap<String, f64>,
    pub tolerances: ReportTolerances,
}

impl MeasureReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.measures.get(name).copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn fingerprint(rho: &DensityMatrix) -> String {
    hex::encode(Sha256::digest(to_state_json(rho).as_bytes()))
}

pub fn measure_report(rho: &DensityMatrix) -> MeasureReport {
    let snap = |x: f64| if x.abs() < REPORT_ZERO { 0.0 } else { x };
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: f64| {
        m.insert(k.to_string(), snap(v));
    };
    let j = classical_correlation_ja(rho);
    let mi = mutual_information(rho);
    put("lqu", lqu(rho));
    put("gd", geometric_discord(rho));
    put("negativity", negativity(rho));
    put("concurrence", concurrence(rho));
    put("eof", eof(rho));
    put("classical_correlation", j);
    put("discord", mi - j);
    put("mutual_information", mi);
    put("entropy_ab", von_neumann_entropy(rho));
    put("entropy_a", von_neumann_entropy(&rho.marginal(Subsystem::A)));
    put("entropy_b", von_neumann_entropy(&rho.marginal(Subsystem::B)));
    put("conditional_entropy", conditional_entropy(rho));
    if is_separable(rho) {
        if let Ok(d) = dissonance_rank2(rho) {
            put("dissonance", d);
        }
    }
    MeasureReport {
        state_fingerprint: fingerprint(rho),
        measures: m,
        tolerances: ReportTolerances::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_state, rho_star, BellKind};

    #[test]
    fn rho_star_report() {
        let r = measure_report(&rho_star());
        assert!((r.get("lqu").unwrap() - 0.5).abs() < 1e-8);
        assert!((r.get("gd").unwrap() - 0.125).abs() < 1e-12);
        assert_eq!(r.get("negativity"), Some(0.0));
        assert!((r.get("dissonance").unwrap() - 0.20175).abs() < 5e-4);
        let json = r.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["state_fingerprint"].as_str().unwrap().len(), 64);
        assert!(v["measures"]["lqu"].is_number());
    }

    #[test]
    fn maximally_mixed_quantumness_is_zero() {
        let r = measure_report(&DensityMatrix::maximally_mixed(4));
        for k in ["lqu", "gd", "negativity", "concurrence", "eof", "discord", "classical_correlation"] {
            assert_eq!(r.get(k), Some(0.0), "{k}");
        }
        assert!(r.get("dissonance").is_none());
    }

    #[test]
    fn fingerprint_distinguishes_states() {
        let a = fingerprint(&bell_state(BellKind::PhiPlus));
        let b = fingerprint(&bell_state(BellKind::PhiMinus));
        assert_ne!(a, b);
        assert_eq!(a, fingerprint(&bell_state(BellKind::PhiPlus)));
    }
}
