use std::fmt;

use crate::error::{Error, Result, Witness};
use crate::exactla::{LinMap, Scalar, Space};

/// Outcome of one named axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: String,
    pub witness: Option<Witness>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Ordered list of axiom verdicts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<AxiomCheck>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.checks.iter().filter_map(|c| c.witness.as_ref())
    }

    pub fn first_failure(&self) -> Option<&Witness> {
        self.failures().next()
    }

    pub fn verdict(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(AxiomCheck::passed)
    }

    pub fn push(&mut self, name: &str, witness: Option<Witness>) {
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            witness,
        });
    }

    /// Records whether `lhs == rhs`; on failure the witness is the first
    /// basis vector of `basis` (a space of the same dimension as the common
    /// domain) where the two sides differ.
    pub fn equation(&mut self, name: &str, basis: &Space, lhs: &LinMap, rhs: &LinMap) -> Result<()> {
        if lhs.ncols() != rhs.ncols() || lhs.rows() != rhs.rows() || lhs.ncols() != basis.dim() {
            return Err(Error::Domain(format!(
                "{name}: sides have shapes {}x{} and {}x{}",
                lhs.rows(),
                lhs.ncols(),
                rhs.rows(),
                rhs.ncols()
            )));
        }
        let witness = lhs.first_difference(rhs).map(|c| Witness {
            axiom: name.to_string(),
            index: basis.decompose(c),
            label: basis.label(c),
        });
        self.push(name, witness);
        Ok(())
    }

    /// Records whether two vectors of `space` agree; the witness is the
    /// first coordinate where they differ.
    pub fn vectors(&mut self, name: &str, space: &Space, lhs: &[(usize, Scalar)], rhs: &[(usize, Scalar)]) {
        let witness = if lhs == rhs {
            None
        } else {
            let mut i = 0;
            while i < lhs.len() && i < rhs.len() && lhs[i] == rhs[i] {
                i += 1;
            }
            let c = match (lhs.get(i), rhs.get(i)) {
                (Some((a, _)), Some((b, _))) => (*a).min(*b),
                (Some((a, _)), None) | (None, Some((a, _))) => *a,
                (None, None) => 0,
            };
            Some(Witness {
                axiom: name.to_string(),
                index: space.decompose(c),
                label: space.label(c),
            })
        };
        self.push(name, witness);
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            if let Some(w) = c.witness.as_mut() {
                w.axiom = c.name.clone();
            }
            self.checks.push(c);
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// `Ok` when every axiom passed, otherwise a validation error naming the
    /// first failure.
    pub fn into_result(self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(w) => Err(Error::Validation(w.clone())),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "pass  {}", c.name)?,
                Some(w) => writeln!(f, "FAIL  {}  (witness {})", c.name, w.label)?,
            }
        }
        Ok(())
    }
}
