use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::echelon::{Echelon, SparseVec};
use super::field::{Field, Scalar};
use super::space::Space;
use crate::error::{domain_err, Error, Result};

/// An exact linear map between named spaces.
///
/// The observable contract is the dense table `entry(r, c)`: the coefficient
/// of codomain basis vector `r` in the image of domain basis vector `c`.
/// Storage is sparse by column.
///
/// Tensor products use the left-major convention throughout the crate: the
/// basis vector `(i, j)` of `U ⊗ V` has flat index `i * dim(V) + j`.
#[derive(Clone)]
pub struct LinMap {
    domain: Space,
    codomain: Space,
    field: Field,
    cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn zero(field: Field, domain: &Space, codomain: &Space) -> LinMap {
        LinMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            field,
            cols: vec![Vec::new(); domain.dim()],
        }
    }

    pub fn identity(field: Field, space: &Space) -> LinMap {
        let cols = (0..space.dim()).map(|i| vec![(i, field.one())]).collect();
        LinMap {
            domain: space.clone(),
            codomain: space.clone(),
            field,
            cols,
        }
    }

    /// Builds a map column by column; `image(c)` lists `(row, value)` pairs,
    /// possibly repeated or zero.
    pub fn from_fn<F>(field: Field, domain: &Space, codomain: &Space, mut image: F) -> LinMap
    where
        F: FnMut(usize) -> Vec<(usize, Scalar)>,
    {
        let cols = (0..domain.dim())
            .map(|c| normalize(field, image(c)))
            .collect();
        LinMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            field,
            cols,
        }
    }

    /// Sends domain basis vector `c` to codomain basis vector `target(c)`.
    pub fn from_basis_map<F>(field: Field, domain: &Space, codomain: &Space, target: F) -> LinMap
    where
        F: Fn(usize) -> usize,
    {
        LinMap::from_fn(field, domain, codomain, |c| vec![(target(c), field.one())])
    }

    pub fn from_rows(field: Field, domain: &Space, codomain: &Space, rows: &[Vec<Scalar>]) -> Result<LinMap> {
        if rows.len() != codomain.dim() || rows.iter().any(|r| r.len() != domain.dim()) {
            return domain_err(format!(
                "entry table must be {}x{}",
                codomain.dim(),
                domain.dim()
            ));
        }
        if let Some(x) = rows.iter().flatten().find(|x| !field.contains(x)) {
            return domain_err(format!("scalar {x} does not lie in {field}"));
        }
        Ok(LinMap::from_fn(field, domain, codomain, |c| {
            rows.iter().enumerate().map(|(r, row)| (r, row[c].clone())).collect()
        }))
    }

    pub fn from_columns(field: Field, domain: &Space, codomain: &Space, cols: Vec<SparseVec>) -> Result<LinMap> {
        if cols.len() != domain.dim() || cols.iter().flatten().any(|(r, _)| *r >= codomain.dim()) {
            return domain_err("column data does not match the declared shape");
        }
        Ok(LinMap::from_fn(field, domain, codomain, |c| cols[c].clone()))
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.codomain.dim()
    }

    pub fn ncols(&self) -> usize {
        self.domain.dim()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.cols[c]
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        self.cols[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.cols[c][k].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.ncols()]; self.rows()];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                out[*r][c] = x.clone();
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn with_spaces(mut self, domain: &Space, codomain: &Space) -> Result<LinMap> {
        if domain.dim() != self.domain.dim() || codomain.dim() != self.codomain.dim() {
            return domain_err_shape(&self, domain, codomain);
        }
        self.domain = domain.clone();
        self.codomain = codomain.clone();
        Ok(self)
    }

    fn check_field(&self, other: &LinMap) -> Result<()> {
        if self.field != other.field {
            return domain_err(format!("field mismatch: {} vs {}", self.field, other.field));
        }
        Ok(())
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &LinMap) -> Result<LinMap> {
        self.check_field(f)?;
        if self.ncols() != f.rows() {
            return domain_err(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, f.domain, f.codomain
            ));
        }
        let field = self.field;
        let cols = f
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, x) in col {
                    for (r, y) in &self.cols[*k] {
                        let e = acc.entry(*r).or_insert_with(Scalar::zero);
                        *e = field.add(e, &field.mul(x, y));
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        Ok(LinMap {
            domain: f.domain.clone(),
            codomain: self.codomain.clone(),
            field,
            cols,
        })
    }

    /// `f.then(g)` is `g ∘ f`.
    pub fn then(&self, g: &LinMap) -> Result<LinMap> {
        g.compose(self)
    }

    /// Kronecker product under the left-major convention.
    pub fn tensor(&self, g: &LinMap) -> Result<LinMap> {
        self.check_field(g)?;
        let field = self.field;
        let (gd, gc) = (g.ncols(), g.rows());
        let mut cols = Vec::with_capacity(self.ncols() * gd);
        for fc in &self.cols {
            for gcol in &g.cols {
                let mut col = Vec::with_capacity(fc.len() * gcol.len());
                for (fr, x) in fc {
                    for (gr, y) in gcol {
                        col.push((fr * gc + gr, field.mul(x, y)));
                    }
                }
                cols.push(col);
            }
        }
        Ok(LinMap {
            domain: self.domain.tensor(&g.domain),
            codomain: self.codomain.tensor(&g.codomain),
            field,
            cols,
        })
    }

    pub fn tensor_all(maps: &[&LinMap]) -> Result<LinMap> {
        let (first, rest) = maps
            .split_first()
            .ok_or_else(|| Error::Domain("empty tensor product".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, m| acc.tensor(m))
    }

    fn zip_with(&self, other: &LinMap, sign: bool) -> Result<LinMap> {
        self.check_field(other)?;
        if self.ncols() != other.ncols() || self.rows() != other.rows() {
            return domain_err("shape mismatch in sum");
        }
        let field = self.field;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Scalar> = a.iter().cloned().collect();
                for (r, y) in b {
                    let e = acc.entry(*r).or_insert_with(Scalar::zero);
                    *e = if sign { field.add(e, y) } else { field.sub(e, y) };
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        Ok(LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            field,
            cols,
        })
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.zip_with(other, true)
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        self.zip_with(other, false)
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        let field = self.field;
        let s = field.reduce(s.clone());
        LinMap::from_fn(field, &self.domain, &self.codomain, |c| {
            self.cols[c].iter().map(|(r, x)| (*r, field.mul(x, &s))).collect()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.ncols() == self.rows()
            && self
                .cols
                .iter()
                .enumerate()
                .all(|(c, col)| col.len() == 1 && col[0].0 == c && col[0].1.is_one())
    }

    /// First domain basis index on which the two maps differ.
    pub fn first_difference(&self, other: &LinMap) -> Option<usize> {
        if self.ncols() != other.ncols() {
            return Some(0);
        }
        (0..self.ncols()).find(|&c| self.cols[c] != other.cols[c])
    }

    pub fn apply(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let field = self.field;
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, x) in v {
            for (r, y) in &self.cols[*k] {
                let e = acc.entry(*r).or_insert_with(Scalar::zero);
                *e = field.add(e, &field.mul(x, y));
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn transpose(&self) -> LinMap {
        let mut cols = vec![Vec::new(); self.rows()];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                cols[*r].push((c, x.clone()));
            }
        }
        LinMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            field: self.field,
            cols,
        }
    }

    pub fn pow(&self, n: usize) -> Result<LinMap> {
        if self.ncols() != self.rows() {
            return domain_err("power of a non-square map");
        }
        let mut acc = LinMap::identity(self.field, &self.domain);
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        // rank of the column span
        let mut ech = Echelon::new(self.field, self.rows());
        for col in &self.cols {
            ech.insert(col);
        }
        ech.rank()
    }

    /// Basis of the kernel as dense coordinate vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.kernel_sparse()
            .into_iter()
            .map(|v| densify(&v, self.ncols()))
            .collect()
    }

    pub fn kernel_sparse(&self) -> Vec<SparseVec> {
        let t = self.transpose();
        let mut ech = Echelon::new(self.field, self.ncols());
        for row in &t.cols {
            ech.insert(row);
        }
        ech.into_rref().nullspace()
    }

    pub fn invert(&self) -> Result<LinMap> {
        let n = self.ncols();
        if n != self.rows() {
            return domain_err("inverse of a non-square map");
        }
        let field = self.field;
        let t = self.transpose();
        let mut ech = Echelon::new(field, 2 * n);
        for (r, row) in t.cols.iter().enumerate() {
            let mut aug = row.clone();
            aug.push((n + r, field.one()));
            ech.insert(&aug);
        }
        let rref = ech.into_rref();
        if rref.pivot_cols().iter().take_while(|&&c| c < n).count() != n {
            return Err(Error::Singular(format!(
                "{} -> {} is not invertible",
                self.domain, self.codomain
            )));
        }
        // row p of the reduced augmented system gives row p of the inverse
        let mut cols = vec![Vec::new(); n];
        for p in 0..n {
            for (j, y) in rref.row(p).unwrap().iter().skip(1) {
                cols[j - n].push((p, y.clone()));
            }
        }
        for col in &mut cols {
            col.sort_by_key(|(r, _)| *r);
        }
        Ok(LinMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            field,
            cols,
        })
    }

    /// The swap `U ⊗ V → V ⊗ U`.
    pub fn flip(field: Field, u: &Space, v: &Space) -> LinMap {
        let (du, dv) = (u.dim(), v.dim());
        LinMap::from_basis_map(field, &u.tensor(v), &v.tensor(u), |c| {
            let (i, j) = (c / dv.max(1), c % dv.max(1));
            j * du + i
        })
    }

    /// A vector of `space` as a map `k → space`.
    pub fn vector(field: Field, space: &Space, entries: Vec<(usize, Scalar)>) -> LinMap {
        LinMap::from_fn(field, &Space::unit(), space, |_| entries.clone())
    }
}

fn domain_err_shape(m: &LinMap, d: &Space, c: &Space) -> Result<LinMap> {
    domain_err(format!(
        "cannot relabel {}x{} map as {} -> {}",
        m.rows(),
        m.ncols(),
        d,
        c
    ))
}

pub fn normalize(field: Field, mut v: Vec<(usize, Scalar)>) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        let x = field.reduce(x);
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

pub fn densify(v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

impl PartialEq for LinMap {
    fn eq(&self, other: &LinMap) -> bool {
        self.field == other.field
            && self.ncols() == other.ncols()
            && self.rows() == other.rows()
            && self.cols == other.cols
    }
}

impl Eq for LinMap {}

impl std::hash::Hash for LinMap {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.rows().hash(state);
        self.cols.hash(state);
    }
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinMap {} -> {} over {}", self.domain, self.codomain, self.field)?;
        if self.rows() * self.ncols() <= 256 {
            for row in self.dense_rows() {
                let cells: Vec<String> = row.iter().map(|x| self.field.format_scalar(x)).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            writeln!(f, "  ({} nonzeros)", self.nnz())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn mat(rows: &[&[i64]]) -> LinMap {
        let f = q();
        let d = Space::indexed("x", rows[0].len());
        let c = Space::indexed("y", rows.len());
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| f.int(v)).collect()).collect();
        LinMap::from_rows(f, &d, &c, &rows).unwrap()
    }

    #[test]
    fn compose_scalars() {
        let f = q();
        let k = Space::unit();
        let two_thirds = LinMap::from_fn(f, &k, &k, |_| vec![(0, f.ratio(2, 3).unwrap())]);
        let three = LinMap::from_fn(f, &k, &k, |_| vec![(0, f.int(3))]);
        assert_eq!(three.compose(&two_thirds).unwrap().entry(0, 0), f.int(2));

        let p = Field::Prime(5);
        let g = LinMap::from_fn(p, &k, &k, |_| vec![(0, p.int(2))]);
        let h = LinMap::from_fn(p, &k, &k, |_| vec![(0, p.int(3))]);
        assert_eq!(g.compose(&h).unwrap().entry(0, 0), p.int(1));
        assert!(g.compose(&two_thirds).is_err());
    }

    #[test]
    fn identity_is_neutral() {
        let f = mat(&[&[1, 2], &[3, 4], &[5, 6]]);
        let id2 = LinMap::identity(q(), f.domain());
        assert_eq!(f.compose(&id2).unwrap(), f);
        assert!(id2.compose(&f).is_err());
    }

    #[test]
    fn flip_matrix() {
        let s = Space::indexed("u", 2);
        let fl = LinMap::flip(q(), &s, &s);
        let expected = mat(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(fl, expected);
        let id6 = LinMap::identity(q(), &Space::indexed("a", 2))
            .tensor(&LinMap::identity(q(), &Space::indexed("b", 3)))
            .unwrap();
        assert!(id6.is_identity() && id6.ncols() == 6);
    }

    #[test]
    fn rank_kernel_quotient_basics() {
        assert_eq!(mat(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]).rank(), 0);
        let k = mat(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        let f = q();
        assert_eq!(f.add(&k[0][0], &k[0][1]), f.zero());
    }

    #[test]
    fn invert_detects_singular() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        let inv = m.invert().unwrap();
        assert!(inv.compose(&m).unwrap().is_identity());
        assert!(matches!(mat(&[&[1, 2], &[2, 4]]).invert(), Err(Error::Singular(_))));
    }
}
