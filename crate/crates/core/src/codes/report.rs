use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::StabilizerCode;

/// Check-weight and qubit-degree histograms of a Tanner graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TannerReport {
    pub x_weights: BTreeMap<usize, usize>,
    pub z_weights: BTreeMap<usize, usize>,
    /// Checks with both X and Z support.
    pub mixed_weights: BTreeMap<usize, usize>,
    pub qubit_degrees: BTreeMap<usize, usize>,
    pub max_weight: usize,
    pub max_degree: usize,
}

impl TannerReport {
    pub fn of(code: &StabilizerCode) -> Self {
        let mut x_weights = BTreeMap::new();
        let mut z_weights = BTreeMap::new();
        let mut mixed_weights = BTreeMap::new();
        let mut degree = vec![0usize; code.n()];
        for c in code.checks() {
            let w = c.weight();
            let hist = if c.is_x_type() {
                &mut x_weights
            } else if c.is_z_type() {
                &mut z_weights
            } else {
                &mut mixed_weights
            };
            *hist.entry(w).or_insert(0) += 1;
            for q in c.support() {
                degree[q] += 1;
            }
        }
        let mut qubit_degrees = BTreeMap::new();
        for d in &degree {
            *qubit_degrees.entry(*d).or_insert(0) += 1;
        }
        let max_weight = code.checks().iter().map(|c| c.weight()).max().unwrap_or(0);
        let max_degree = degree.iter().copied().max().unwrap_or(0);
        TannerReport {
            x_weights,
            z_weights,
            mixed_weights,
            qubit_degrees,
            max_weight,
            max_degree,
        }
    }

    pub fn check_count(&self) -> usize {
        [&self.x_weights, &self.z_weights, &self.mixed_weights]
            .iter()
            .flat_map(|h| h.values())
            .sum()
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_degrees.values().sum()
    }
}

impl fmt::Display for TannerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |f: &mut fmt::Formatter<'_>, name: &str, h: &BTreeMap<usize, usize>| {
            if h.is_empty() {
                return Ok(());
            }
            write!(f, "{name:<14}")?;
            for (k, v) in h {
                write!(f, " {k}:{v}")?;
            }
            writeln!(f)
        };
        row(f, "X weights", &self.x_weights)?;
        row(f, "Z weights", &self.z_weights)?;
        row(f, "mixed weights", &self.mixed_weights)?;
        row(f, "qubit degrees", &self.qubit_degrees)?;
        writeln!(
            f,
            "max weight {}, max degree {}",
            self.max_weight, self.max_degree
        )
    }
}

#[cfg(test)]
mod tests {
    use crate::codes::BBCode;

    use super::*;

    #[test]
    fn undeformed_gross_is_regular() {
        let report = TannerReport::of(&BBCode::gross().to_stabilizer());
        assert_eq!(report.x_weights, BTreeMap::from([(6, 72)]));
        assert_eq!(report.z_weights, BTreeMap::from([(6, 72)]));
        assert_eq!(report.qubit_degrees, BTreeMap::from([(6, 144)]));
        assert_eq!(report.check_count(), 144);
        assert_eq!(report.qubit_count(), 144);
    }
}
