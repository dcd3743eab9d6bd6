use std::sync::Arc;

use super::realization::{EmRealization, HFunctor};
use super::twist::{cyclic_datum, twist_factorisation};
use crate::admissible::{act_datum, AdmissibleDatum, Factor, Realization, UnitFactor};
use crate::algcore::{Algebra, AlgebraMorphism};
use crate::duplicial::{build_duplicial, DuplicialModule};
use crate::error::{domain_err, Error, Result};
use crate::exactla::{LinMap, Scalar, Space};

fn pow(base: usize, e: usize) -> usize {
    base.pow(e as u32)
}

/// `D_n = A^{⊗(n+1)}` with `d_i` multiplying positions `i, i+1` for `i < n`,
/// `d_n = s(a_n)a₀ ⊗ a₁ ⊗ … ⊗ a_{n−1}`, `s_i` inserting `1` after position
/// `i`, and `t(a₀ ⊗ … ⊗ a_n) = s(a_n) ⊗ a₀ ⊗ … ⊗ a_{n−1}`.
pub fn twisted_cyclic_object(a: &Algebra, s: &AlgebraMorphism, top: usize) -> Result<DuplicialModule> {
    if s.source().dim() != a.dim() || s.target().dim() != a.dim() {
        return domain_err("the twist must be an endomorphism of the algebra");
    }
    let f = a.field();
    let d = a.dim();
    let spaces: Vec<Space> = (0..=top).map(|n| a.carrier().power(n + 1)).collect();
    let id = a.id();
    let ids = |k: usize| -> LinMap { LinMap::identity(f, &a.carrier().power(k)) };
    // a₀ ⊗ … ⊗ a_n ↦ a_n ⊗ a₀ ⊗ … ⊗ a_{n−1}
    let rotate = |n: usize| -> LinMap {
        let last = pow(d, n);
        LinMap::from_basis_map(f, &spaces[n], &spaces[n], |c| (c % d) * last + c / d)
    };
    let mut twists = Vec::with_capacity(top + 1);
    let mut faces = Vec::with_capacity(top + 1);
    let mut degeneracies = Vec::with_capacity(top);
    for n in 0..=top {
        let front = if n == 0 { s.map().clone() } else { s.map().tensor(&ids(n))? };
        twists.push(front.compose(&rotate(n))?.with_spaces(&spaces[n], &spaces[n])?);
        let mut ds = Vec::new();
        if n > 0 {
            for i in 0..n {
                let mut m = ids(i).tensor(a.mul())?;
                if n - 1 - i > 0 {
                    m = m.tensor(&ids(n - 1 - i))?;
                }
                ds.push(m.with_spaces(&spaces[n], &spaces[n - 1])?);
            }
            let first = a.mul().compose(&s.map().tensor(&id)?)?;
            let first = if n > 1 { first.tensor(&ids(n - 1))? } else { first };
            ds.push(first.compose(&rotate(n))?.with_spaces(&spaces[n], &spaces[n - 1])?);
        }
        faces.push(ds);
        if n < top {
            let mut ss = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let mut m = ids(i + 1).tensor(a.unit())?;
                if n - i > 0 {
                    m = m.tensor(&ids(n - i))?;
                }
                ss.push(m.with_spaces(&spaces[n], &spaces[n + 1])?);
            }
            degeneracies.push(ss);
        }
    }
    DuplicialModule::new(f, spaces, faces, degeneracies, twists)
}

/// `s^{⊗(n+1)}` on `A^{⊗(n+1)}`.
pub fn twist_power(s: &AlgebraMorphism, n: usize) -> Result<LinMap> {
    let maps: Vec<&LinMap> = std::iter::repeat_n(s.map(), n + 1).collect();
    LinMap::tensor_all(&maps)
}

/// The abstract pipeline: twist factorisation acting on the cyclic datum,
/// then the duplicial construction.
pub fn abstract_twisted_object(a: &Algebra, s: &AlgebraMorphism, top: usize) -> Result<AbstractObject> {
    let base = cyclic_datum(a)?;
    let r = base.realization.clone();
    let twist: Arc<dyn Factor<EmRealization>> = twist_factorisation(s)?.into_arc();
    let unit: Arc<dyn Factor<EmRealization>> = Arc::new(UnitFactor(r.clone()));
    let acted = act_datum(&r, &twist, &base.datum, &unit)?;
    let module = build_duplicial(r.as_ref(), &acted, top)?;
    Ok(AbstractObject {
        realization: r,
        h: base.h,
        datum: acted,
        module,
    })
}

pub struct AbstractObject {
    pub realization: Arc<EmRealization>,
    pub h: Arc<HFunctor>,
    pub datum: AdmissibleDatum<EmRealization>,
    pub module: DuplicialModule,
}

/// `H(B̃^{n+1}M) → A^{⊗(n+1)}` for `M` with carrier `A`:
/// `[x₀ ⊗ x₁ ⊗ … ⊗ x_{n+1}] ↦ x_{n+1}x₀ ⊗ x_n ⊗ … ⊗ x₁`, read off on the
/// stored representatives.
pub fn identification(r: &EmRealization, h: &HFunctor, m: &crate::algcore::Bimodule, n: usize) -> Result<LinMap> {
    let a = r.algebra();
    let f = a.field();
    let d = a.dim();
    if m.dim() != d {
        return domain_err("the identification needs a bimodule on the carrier of the algebra");
    }
    let obj = r.t_power(m, n + 1);
    let q = h.quotient(&obj)?;
    let target = a.carrier().power(n + 1);
    let len = n + 2;
    let cols = (0..q.space.dim())
        .map(|c| {
            let rep = q.section.column(c);
            let [(idx, _)] = rep.as_slice() else {
                return Err(Error::Internal("quotient representatives are not basis vectors".into()));
            };
            let digits = digits(*idx, d, len);
            let head = a.product(&[(digits[len - 1], f.one())], &[(digits[0], f.one())]);
            let tail: usize = (1..len - 1).rev().fold(0, |acc, k| acc * d + digits[k]);
            let stride = pow(d, n);
            Ok(head.into_iter().map(|(i, x)| (i * stride + tail, x)).collect::<Vec<(usize, Scalar)>>())
        })
        .collect::<Result<Vec<_>>>()?;
    LinMap::from_columns(f, &q.space, &target, cols)
}

fn digits(mut idx: usize, d: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// The abstract object transported along the identification in every degree.
pub fn identified_abstract_object(a: &Algebra, s: &AlgebraMorphism, top: usize) -> Result<DuplicialModule> {
    let obj = abstract_twisted_object(a, s, top)?;
    let r = obj.realization.as_ref();
    let m = &obj.datum.right.object;
    let phis = (0..=top).map(|n| identification(r, &obj.h, m, n)).collect::<Result<Vec<_>>>()?;
    let invs = phis.iter().map(LinMap::invert).collect::<Result<Vec<_>>>()?;
    let spaces = (0..=top).map(|n| a.carrier().power(n + 1)).collect();
    obj.module
        .map_operators(spaces, |op, from, to| phis[to].compose(op)?.compose(&invs[from]))
}

/// Degreewise comparison of the explicit object of `A^op` with the
/// transported abstract object of `A`. Returns the first mismatch as
/// `(degree, operator name)`.
pub fn keystone_mismatch(a: &Algebra, s: &AlgebraMorphism, top: usize) -> Result<Option<(usize, String)>> {
    let op = a.opposite();
    let s_op = AlgebraMorphism::unchecked(&op, &op, s.map())?;
    let explicit = twisted_cyclic_object(&op, &s_op, top)?;
    let abstract_ = identified_abstract_object(a, s, top)?;
    for n in 0..=top {
        if explicit.twist(n) != abstract_.twist(n) {
            return Ok(Some((n, "t".into())));
        }
        for i in 0..if n == 0 { 0 } else { n + 1 } {
            if explicit.face(n, i) != abstract_.face(n, i) {
                return Ok(Some((n, format!("d_{i}"))));
            }
        }
        if n < top {
            for i in 0..=n {
                if explicit.degeneracy(n, i) != abstract_.degeneracy(n, i) {
                    return Ok(Some((n, format!("s_{i}"))));
                }
            }
        }
    }
    Ok(None)
}
