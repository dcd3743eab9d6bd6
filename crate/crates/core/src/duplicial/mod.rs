//! Truncated duplicial modules: faces, degeneracies and the cyclic operator
//! in degrees `0..=top`, with the identity checks and the construction from
//! an admissible datum.

use crate::admissible::{AdmissibleDatum, Realization};
use crate::error::{domain_err, Error, Result};
use crate::exactla::{Echelon, Field, LinMap, Space, SparseVec};
use crate::report::Report;

/// `D_0, …, D_top` with `d_i: D_n → D_{n−1}` (`0 ≤ i ≤ n`),
/// `s_i: D_n → D_{n+1}` (`0 ≤ i ≤ n < top`) and `t_n: D_n → D_n`.
#[derive(Clone, Debug)]
pub struct DuplicialModule {
    field: Field,
    spaces: Vec<Space>,
    faces: Vec<Vec<LinMap>>,
    degeneracies: Vec<Vec<LinMap>>,
    twists: Vec<LinMap>,
}

impl PartialEq for DuplicialModule {
    fn eq(&self, other: &DuplicialModule) -> bool {
        self.field == other.field
            && self.faces == other.faces
            && self.degeneracies == other.degeneracies
            && self.twists == other.twists
    }
}

impl DuplicialModule {
    /// Validates shapes only. `faces[0]` must be empty, `degeneracies` has
    /// one entry per degree below the top.
    pub fn new(
        field: Field,
        spaces: Vec<Space>,
        faces: Vec<Vec<LinMap>>,
        degeneracies: Vec<Vec<LinMap>>,
        twists: Vec<LinMap>,
    ) -> Result<DuplicialModule> {
        let top = spaces.len().checked_sub(1).ok_or_else(|| Error::Domain("no degrees".into()))?;
        if faces.len() != top + 1 || twists.len() != top + 1 || degeneracies.len() != top {
            return domain_err("operator lists do not match the number of degrees");
        }
        let dim = |n: usize| spaces[n].dim();
        let shape = |m: &LinMap, from: usize, to: usize| m.ncols() == dim(from) && m.rows() == dim(to);
        for n in 0..=top {
            if faces[n].len() != if n == 0 { 0 } else { n + 1 } {
                return domain_err(format!("degree {n} needs {} faces", if n == 0 { 0 } else { n + 1 }));
            }
            if faces[n].iter().any(|d| !shape(d, n, n - 1)) {
                return domain_err(format!("a face out of degree {n} has the wrong shape"));
            }
            if !shape(&twists[n], n, n) {
                return domain_err(format!("the cyclic operator in degree {n} has the wrong shape"));
            }
            if n < top && (degeneracies[n].len() != n + 1 || degeneracies[n].iter().any(|s| !shape(s, n, n + 1))) {
                return domain_err(format!("degeneracies out of degree {n} are malformed"));
            }
        }
        Ok(DuplicialModule {
            field,
            spaces,
            faces,
            degeneracies,
            twists,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn top(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, n: usize) -> &Space {
        &self.spaces[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Space::dim).collect()
    }

    pub fn face(&self, n: usize, i: usize) -> &LinMap {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &LinMap {
        &self.degeneracies[n][i]
    }

    pub fn twist(&self, n: usize) -> &LinMap {
        &self.twists[n]
    }

    /// The first `top + 1` degrees.
    pub fn truncate(&self, top: usize) -> Result<DuplicialModule> {
        if top > self.top() {
            return Err(Error::Range(format!("degree {top} exceeds the top degree {}", self.top())));
        }
        Ok(DuplicialModule {
            field: self.field,
            spaces: self.spaces[..=top].to_vec(),
            faces: self.faces[..=top].to_vec(),
            degeneracies: self.degeneracies[..top].to_vec(),
            twists: self.twists[..=top].to_vec(),
        })
    }

    /// Applies `f` to every structure map, for conjugating by isomorphisms
    /// or restricting to subobjects.
    pub fn map_operators<F>(&self, spaces: Vec<Space>, mut f: F) -> Result<DuplicialModule>
    where
        F: FnMut(&LinMap, usize, usize) -> Result<LinMap>,
    {
        let top = self.top();
        let faces = (0..=top)
            .map(|n| self.faces[n].iter().map(|d| f(d, n, n - 1)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let degeneracies = (0..top)
            .map(|n| self.degeneracies[n].iter().map(|s| f(s, n, n + 1)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let twists = (0..=top).map(|n| f(&self.twists[n], n, n)).collect::<Result<Vec<_>>>()?;
        DuplicialModule::new(self.field, spaces, faces, degeneracies, twists)
    }
}

/// `D_n = N T^{n+1} M` with `d_i = N T^i ε T^{n−i}`, `s_i = N T^i Δ T^{n−i}`
/// and `t_n = λ T^n ∘ N χ^{(n)} ∘ N T^n ρ`.
pub fn build_duplicial<R: Realization>(r: &R, datum: &AdmissibleDatum<R>, top: usize) -> Result<DuplicialModule> {
    let m = &datum.right.object;
    let n_fn = datum.left.as_ref();
    let mut tm = vec![m.clone()];
    for j in 0..=top + 1 {
        let next = r.t_obj(&tm[j]);
        tm.push(next);
    }
    let spaces = (0..=top).map(|n| n_fn.apply(&tm[n + 1])).collect::<Result<Vec<_>>>()?;
    let mut faces = Vec::with_capacity(top + 1);
    let mut degeneracies = Vec::with_capacity(top);
    let mut twists = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut ds = Vec::new();
        if n > 0 {
            for i in 0..=n {
                let base = r.t_map_power(&r.t_counit(&tm[n - i])?, i)?;
                ds.push(n_fn.map(&base, &tm[n + 1], &tm[n])?);
            }
        }
        faces.push(ds);
        if n < top {
            let mut ss = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let base = r.t_map_power(&r.t_comul(&tm[n - i])?, i)?;
                ss.push(n_fn.map(&base, &tm[n + 1], &tm[n + 2])?);
            }
            degeneracies.push(ss);
        }
        let mut base = r.t_map_power(&datum.right.rho, n)?;
        for j in 0..n {
            let step = r.t_map_power(&r.chi(&tm[j])?, n - 1 - j)?;
            base = step.compose(&base)?;
        }
        let ctn = r.c_obj(&tm[n]);
        let moved = n_fn.map(&base, &tm[n + 1], &ctn)?;
        twists.push(n_fn.lambda(&tm[n])?.compose(&moved)?);
    }
    DuplicialModule::new(r.field(), spaces, faces, degeneracies, twists)
}

fn push(rep: &mut Report, space: &Space, name: String, lhs: &LinMap, rhs: &LinMap) -> Result<()> {
    rep.equation(&name, space, lhs, rhs)
}

/// All simplicial and duplicial identities that make sense below the top.
pub fn check_duplicial(d: &DuplicialModule) -> Result<Report> {
    let top = d.top();
    let mut rep = Report::new();
    for n in 0..=top {
        let sp = d.space(n);
        let dd = |i: usize| d.face(n, i);
        // d_i d_j = d_{j−1} d_i for i < j
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = d.face(n - 1, i).compose(dd(j))?;
                    let rhs = d.face(n - 1, j - 1).compose(dd(i))?;
                    push(&mut rep, sp, format!("n={n} i={i} j={j}: face-face"), &lhs, &rhs)?;
                }
            }
        }
        if n + 2 <= top {
            // s_i s_j = s_{j+1} s_i for i ≤ j
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = d.degeneracy(n + 1, i).compose(d.degeneracy(n, j))?;
                    let rhs = d.degeneracy(n + 1, j + 1).compose(d.degeneracy(n, i))?;
                    push(&mut rep, sp, format!("n={n} i={i} j={j}: degeneracy-degeneracy"), &lhs, &rhs)?;
                }
            }
        }
        if n < top {
            for j in 0..=n {
                let s = d.degeneracy(n, j);
                for i in 0..=n + 1 {
                    let lhs = d.face(n + 1, i).compose(s)?;
                    let rhs = if i < j {
                        d.degeneracy(n - 1, j - 1).compose(d.face(n, i))?
                    } else if i == j || i == j + 1 {
                        LinMap::identity(d.field, sp)
                    } else {
                        d.degeneracy(n - 1, j).compose(d.face(n, i - 1))?
                    };
                    push(&mut rep, sp, format!("n={n} i={i} j={j}: face-degeneracy"), &lhs, &rhs)?;
                }
            }
        }
        let t = d.twist(n);
        if n >= 1 {
            for i in 1..=n {
                let lhs = dd(i).compose(t)?;
                let rhs = d.twist(n - 1).compose(dd(i - 1))?;
                push(&mut rep, sp, format!("n={n} i={i}: face-cyclic"), &lhs, &rhs)?;
            }
            push(&mut rep, sp, format!("n={n} i=0: face-cyclic"), &dd(0).compose(t)?, dd(n))?;
        }
        if n < top {
            for i in 1..=n {
                let lhs = d.degeneracy(n, i).compose(t)?;
                let rhs = d.twist(n + 1).compose(d.degeneracy(n, i - 1))?;
                push(&mut rep, sp, format!("n={n} i={i}: degeneracy-cyclic"), &lhs, &rhs)?;
            }
            let t1 = d.twist(n + 1);
            let lhs = d.degeneracy(n, 0).compose(t)?;
            let rhs = t1.compose(t1)?.compose(d.degeneracy(n, n))?;
            push(&mut rep, sp, format!("n={n} i=0: degeneracy-cyclic"), &lhs, &rhs)?;
        }
    }
    Ok(rep)
}

/// `t_n^{n+1} = id` in every degree.
pub fn check_cyclic(d: &DuplicialModule) -> Result<Report> {
    let mut rep = Report::new();
    for n in 0..=d.top() {
        let sp = d.space(n);
        push(&mut rep, sp, format!("n={n}: cyclicity"), &d.twist(n).pow(n + 1)?, &LinMap::identity(d.field, sp))?;
    }
    Ok(rep)
}

/// The first degree where `t^{n+1} ≠ id`, if any.
pub fn first_acyclic_degree(d: &DuplicialModule) -> Result<Option<usize>> {
    for n in 0..=d.top() {
        if !d.twist(n).pow(n + 1)?.is_identity() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// The duplicial submodule `ker(T_n − id)` for operators `T_n` that equal
/// `t_n^{n+1}` and commute with the structure, with the inclusions.
pub fn invariant_subobject(d: &DuplicialModule, ops: &[LinMap]) -> Result<(DuplicialModule, Vec<LinMap>)> {
    let top = d.top();
    if ops.len() != top + 1 {
        return domain_err("one operator per degree is required");
    }
    let mut pre = Report::new();
    for (n, op) in ops.iter().enumerate() {
        let sp = d.space(n);
        push(&mut pre, sp, format!("n={n}: operator is t^(n+1)"), op, &d.twist(n).pow(n + 1)?)?;
        push(&mut pre, sp, format!("n={n}: operator commutes with t"), &op.compose(d.twist(n))?, &d.twist(n).compose(op)?)?;
        if n >= 1 {
            for i in 0..=n {
                let f = d.face(n, i);
                push(&mut pre, sp, format!("n={n} i={i}: operator commutes with face"), &ops[n - 1].compose(f)?, &f.compose(op)?)?;
            }
        }
        if n < top {
            for i in 0..=n {
                let s = d.degeneracy(n, i);
                push(&mut pre, sp, format!("n={n} i={i}: operator commutes with degeneracy"), &ops[n + 1].compose(s)?, &s.compose(op)?)?;
            }
        }
    }
    pre.into_result()?;

    let mut incl = Vec::with_capacity(top + 1);
    let mut frees = Vec::with_capacity(top + 1);
    let mut spaces = Vec::with_capacity(top + 1);
    for (n, op) in ops.iter().enumerate() {
        let sp = d.space(n);
        let diff = op.sub(&LinMap::identity(d.field, sp))?;
        let mut ech = Echelon::new(d.field, sp.dim());
        let rows = diff.transpose();
        for c in 0..rows.ncols() {
            ech.insert(rows.column(c));
        }
        let rref = ech.into_rref();
        let basis = rref.nullspace();
        let k = Space::indexed(&format!("{}^inv", sp.name()), basis.len());
        frees.push(rref.free_cols().to_vec());
        incl.push(LinMap::from_columns(d.field, &k, sp, basis)?);
        spaces.push(k);
    }
    let restrict = |m: &LinMap, from: usize, to: usize| -> Result<LinMap> {
        let image = m.compose(&incl[from])?;
        let pos: std::collections::HashMap<usize, usize> =
            frees[to].iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let cols: Vec<SparseVec> = (0..image.ncols())
            .map(|c| {
                image
                    .column(c)
                    .iter()
                    .filter_map(|(r, x)| pos.get(r).map(|&i| (i, x.clone())))
                    .collect::<SparseVec>()
            })
            .collect();
        let out = LinMap::from_columns(d.field, &spaces[from], &spaces[to], cols)?;
        if incl[to].compose(&out)? != image {
            return Err(Error::Internal("operator does not preserve the invariant subobject".into()));
        }
        Ok(out)
    };
    let sub = d.map_operators(spaces.clone(), restrict)?;
    Ok((sub, incl))
}

/// [`invariant_subobject`] with `T_n = t_n^{n+1}`.
pub fn cyclic_invariants(d: &DuplicialModule) -> Result<(DuplicialModule, Vec<LinMap>)> {
    let ops = (0..=d.top()).map(|n| d.twist(n).pow(n + 1)).collect::<Result<Vec<_>>>()?;
    invariant_subobject(d, &ops)
}

/// The cyclic object `k` in every degree with all operators the identity.
pub fn constant_object(field: Field, top: usize) -> DuplicialModule {
    let k = Space::unit();
    let id = LinMap::identity(field, &k);
    DuplicialModule::new(
        field,
        vec![k; top + 1],
        (0..=top).map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] }).collect(),
        (0..top).map(|n| vec![id.clone(); n + 1]).collect(),
        vec![id.clone(); top + 1],
    )
    .expect("shapes")
}
