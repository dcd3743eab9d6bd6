use std::fmt;
use std::sync::Arc;

use crate::error::{domain_err, Result};

#[derive(Clone, Debug)]
enum Labels {
    Explicit(Arc<Vec<String>>),
    /// Left-major product of the factors.
    Product(Arc<Vec<Space>>),
    Indexed,
}

/// A finite-dimensional space with a named basis.
///
/// Tensor products are kept symbolic so that large tensor powers do not
/// materialise their label lists; `label(i)` decodes the left-major index.
#[derive(Clone, Debug)]
pub struct Space {
    name: Arc<str>,
    dim: usize,
    labels: Labels,
}

impl Space {
    pub fn new(name: &str, labels: Vec<String>) -> Result<Space> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return domain_err(format!("duplicate basis label {l:?} in space {name}"));
            }
        }
        Ok(Space {
            name: name.into(),
            dim: labels.len(),
            labels: Labels::Explicit(Arc::new(labels)),
        })
    }

    /// Basis labelled `{name}0, {name}1, ...`.
    pub fn indexed(name: &str, dim: usize) -> Space {
        Space {
            name: name.into(),
            dim,
            labels: Labels::Indexed,
        }
    }

    /// The ground field as a one-dimensional space.
    pub fn unit() -> Space {
        Space {
            name: "k".into(),
            dim: 1,
            labels: Labels::Explicit(Arc::new(vec!["1".into()])),
        }
    }

    pub fn zero(name: &str) -> Space {
        Space::indexed(name, 0)
    }

    pub fn tensor(&self, other: &Space) -> Space {
        let mut factors = Vec::new();
        for s in [self, other] {
            match &s.labels {
                Labels::Product(fs) => factors.extend(fs.iter().cloned()),
                _ => factors.push(s.clone()),
            }
        }
        Space::product(factors)
    }

    pub fn product(factors: Vec<Space>) -> Space {
        match factors.len() {
            0 => return Space::unit(),
            1 => return factors.into_iter().next().unwrap(),
            _ => {}
        }
        let name = factors.iter().map(|s| s.name()).collect::<Vec<_>>().join("⊗");
        let dim = factors.iter().map(|s| s.dim).product();
        Space {
            name: name.into(),
            dim,
            labels: Labels::Product(Arc::new(factors)),
        }
    }

    pub fn power(&self, n: usize) -> Space {
        Space::product(vec![self.clone(); n])
    }

    pub fn renamed(&self, name: &str) -> Space {
        Space {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Tensor factors (a non-product space is its own single factor).
    pub fn factors(&self) -> Vec<Space> {
        match &self.labels {
            Labels::Product(fs) => fs.as_ref().clone(),
            _ => vec![self.clone()],
        }
    }

    /// Splits a flat index into per-factor indices (left-major).
    pub fn decompose(&self, mut index: usize) -> Vec<usize> {
        match &self.labels {
            Labels::Product(fs) => {
                let mut out = vec![0; fs.len()];
                for (slot, f) in out.iter_mut().zip(fs.iter()).rev() {
                    if f.dim == 0 {
                        return vec![0; fs.len()];
                    }
                    *slot = index % f.dim;
                    index /= f.dim;
                }
                out
            }
            _ => vec![index],
        }
    }

    pub fn label(&self, index: usize) -> String {
        match &self.labels {
            Labels::Explicit(ls) => ls[index].clone(),
            Labels::Indexed => format!("{}{}", self.name, index),
            Labels::Product(fs) => self
                .decompose(index)
                .iter()
                .zip(fs.iter())
                .map(|(&i, f)| f.label(i))
                .collect::<Vec<_>>()
                .join("⊗"),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim).map(|i| self.label(i)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Labels::Explicit(ls) => ls.iter().position(|l| l == label),
            _ => (0..self.dim).find(|&i| self.label(i) == label),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(dim {})", self.name, self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_labels_are_left_major() {
        let a = Space::new("A", vec!["e".into(), "g".into()]).unwrap();
        let b = Space::new("B", vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let ab = a.tensor(&b);
        assert_eq!(ab.dim(), 6);
        assert_eq!(ab.label(1 * 3 + 2), "g⊗z");
        assert_eq!(ab.decompose(4), vec![1, 1]);
        assert_eq!(ab.tensor(&a).factors().len(), 3);
        assert_eq!(ab.index_of("e⊗y"), Some(1));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Space::new("A", vec!["e".into(), "e".into()]).is_err());
    }
}
