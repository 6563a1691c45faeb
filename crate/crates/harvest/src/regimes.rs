//! Labels a distance ladder by how the wormhole changes the harvested
//! entanglement.
//!
//! For each distance, `flat` is the largest concurrence on the ε_b = 0 row
//! and `far` the largest on the ε_b = ε_max row (both maximized over ξ_x).
//! With `floor` the smallest concurrence counted as nonzero:
//!
//! | label        | rule                                               |
//! |--------------|----------------------------------------------------|
//! | inconclusive | a record of that sweep failed or did not converge  |
//! | insensitive  | both ≤ floor, or `|far/flat − 1| ≤ 0.05`           |
//! | detrimental  | `flat > floor` and `far ≤ 0.1·flat`                |
//! | enabling     | `flat ≤ floor` and `far > floor`                   |
//! | mixed        | anything else                                      |

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::Engine;
use crate::sweep::SweepResult;

/// Decision thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeThresholds {
    /// Concurrence at or below this counts as zero.
    pub floor: f64,
    /// Largest `|far/flat − 1|` for an insensitive label.
    pub insensitive_tolerance: f64,
    /// Largest `far/flat` for a detrimental label.
    pub detrimental_ratio: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self { floor: 1e-6, insensitive_tolerance: 0.05, detrimental_ratio: 0.1 }
    }
}

/// Effect of the wormhole at one distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Concurrence does not depend on ε_b.
    Insensitive,
    /// The throat destroys the flat-space entanglement.
    Detrimental,
    /// Entanglement appears only with the throat.
    Enabling,
    /// None of the above.
    Mixed,
    /// Non-converged or failed records.
    Inconclusive,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::Insensitive => "insensitive",
            Regime::Detrimental => "detrimental",
            Regime::Enabling => "enabling",
            Regime::Mixed => "mixed",
            Regime::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

/// Classification of one distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeLabel {
    /// ρ_x/λ.
    pub distance: f64,
    /// Maximum concurrence on the flat row.
    pub flat: f64,
    /// Maximum concurrence on the ε_max row.
    pub far: f64,
    /// Assigned label.
    pub regime: Regime,
}

/// Applies the rules to the row maxima.
pub fn classify(flat: f64, far: f64, thresholds: &RegimeThresholds) -> Regime {
    let floor = thresholds.floor;
    if flat <= floor && far <= floor {
        return Regime::Insensitive;
    }
    if flat > floor && (far / flat - 1.0).abs() <= thresholds.insensitive_tolerance {
        return Regime::Insensitive;
    }
    if flat > floor && far <= thresholds.detrimental_ratio * flat {
        return Regime::Detrimental;
    }
    if flat <= floor && far > floor {
        return Regime::Enabling;
    }
    Regime::Mixed
}

/// Labels one sweep using the records of `engine`.
pub fn classify_sweep(result: &SweepResult, engine: Engine, thresholds: &RegimeThresholds) -> RegimeLabel {
    let eb_max = result.config.epsilon_b.max;
    let eb_min = result.config.epsilon_b.min;
    let records: Vec<_> = result.engine_records(engine).collect();
    let row_max = |eb: f64| {
        records
            .iter()
            .filter(|r| r.epsilon_b == eb)
            .map(|r| r.concurrence)
            .fold(0.0, f64::max)
    };
    let flat = row_max(eb_min);
    let far = row_max(eb_max);
    let unreliable = records.is_empty() || records.iter().any(|r| r.failed() || !r.converged);
    let regime = if unreliable || eb_min != 0.0 { Regime::Inconclusive } else { classify(flat, far, thresholds) };
    RegimeLabel { distance: result.config.distance, flat, far, regime }
}

/// Labels a ladder of sweeps.
pub fn classify_regimes(results: &[SweepResult], engine: Engine, thresholds: &RegimeThresholds) -> Vec<RegimeLabel> {
    results.iter().map(|r| classify_sweep(r, engine, thresholds)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_table() {
        let t = RegimeThresholds::default();
        assert_eq!(classify(0.02, 0.0, &t), Regime::Detrimental);
        assert_eq!(classify(0.0, 0.03, &t), Regime::Enabling);
        assert_eq!(classify(0.02, 0.0205, &t), Regime::Insensitive);
        assert_eq!(classify(0.0, 0.0, &t), Regime::Insensitive);
        assert_eq!(classify(0.02, 0.05, &t), Regime::Mixed);
        assert_eq!(classify(0.02, 0.01, &t), Regime::Mixed);
    }
}
