use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::field::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Incremental row echelon form over a field. Each stored row has a leading
/// coefficient of one at its pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    pivots: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Echelon {
        Echelon {
            field,
            ncols,
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds a vector to the spanned subspace. Returns whether it was
    /// independent of the rows already present.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let f = self.field;
        let mut work: BTreeMap<usize, Scalar> =
            v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        while let Some((&lead, a)) = work.iter().next() {
            let Some(row) = self.pivots.get(&lead) else {
                let inv = f.inv(a).expect("nonzero lead");
                let row: SparseVec = work.iter().map(|(&k, x)| (k, f.mul(x, &inv))).collect();
                self.pivots.insert(lead, row);
                return true;
            };
            let a = a.clone();
            for (k, x) in row {
                let delta = f.mul(&a, x);
                let entry = work.entry(*k).or_insert_with(Scalar::zero);
                *entry = f.sub(entry, &delta);
                if entry.is_zero() {
                    work.remove(k);
                }
            }
        }
        false
    }

    /// Fully reduced row echelon form.
    pub fn into_rref(self) -> Rref {
        let f = self.field;
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable();
        let mut pivots = self.pivots;
        let mut done: HashMap<usize, SparseVec> = HashMap::with_capacity(pivots.len());
        for &c in cols.iter().rev() {
            let row = pivots.remove(&c).unwrap();
            let needs = row.iter().skip(1).any(|(k, _)| done.contains_key(k));
            let reduced = if !needs {
                row
            } else {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, x) in &row {
                    match done.get(k) {
                        Some(other) if *k != c => {
                            for (j, y) in other.iter().skip(1) {
                                let e = acc.entry(*j).or_insert_with(Scalar::zero);
                                *e = f.sub(e, &f.mul(x, y));
                            }
                        }
                        _ => {
                            let e = acc.entry(*k).or_insert_with(Scalar::zero);
                            *e = f.add(e, x);
                        }
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            };
            done.insert(c, reduced);
        }
        let is_pivot: Vec<bool> = {
            let mut m = vec![false; self.ncols];
            for &c in &cols {
                m[c] = true;
            }
            m
        };
        let free = (0..self.ncols).filter(|&j| !is_pivot[j]).collect();
        Rref {
            field: f,
            ncols: self.ncols,
            pivot_cols: cols,
            rows: done,
            free,
        }
    }
}

/// Reduced row echelon form: every row has a one at its pivot and zeros in
/// every other pivot column.
#[derive(Clone, Debug)]
pub struct Rref {
    field: Field,
    ncols: usize,
    pivot_cols: Vec<usize>,
    rows: HashMap<usize, SparseVec>,
    free: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn free_cols(&self) -> &[usize] {
        &self.free
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// The normal form of `v` modulo the row space; supported on free columns.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let f = self.field;
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, x) in v {
            match self.rows.get(k) {
                Some(row) => {
                    for (j, y) in row.iter().skip(1) {
                        let e = acc.entry(*j).or_insert_with(Scalar::zero);
                        *e = f.sub(e, &f.mul(x, y));
                    }
                }
                None => {
                    let e = acc.entry(*k).or_insert_with(Scalar::zero);
                    *e = f.add(e, x);
                }
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Basis of the solution space of `row · x = 0` for all rows, one vector
    /// per free column (with a one in that column).
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let f = self.field;
        let mut by_free: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
        for (&p, row) in &self.rows {
            for (j, y) in row.iter().skip(1) {
                by_free.entry(*j).or_default().push((p, f.neg(y)));
            }
        }
        self.free
            .iter()
            .map(|&j| {
                let mut v = by_free.remove(&j).unwrap_or_default();
                v.push((j, f.one()));
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect()
    }
}
