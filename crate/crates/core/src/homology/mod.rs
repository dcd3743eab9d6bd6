//! Chain complexes built from duplicial modules and their homology
//! dimensions.

use std::fmt;

use crate::duplicial::{cyclic_invariants, first_acyclic_degree, DuplicialModule};
use crate::error::{domain_err, Error, Result};
use crate::exactla::{Field, LinMap, Space};

/// `C_0 ← C_1 ← … ← C_top` with `∂_n: C_n → C_{n−1}` for `n ≥ 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: Field,
    spaces: Vec<Space>,
    /// `differentials[n - 1]` is `∂_n`.
    differentials: Vec<LinMap>,
}

impl ChainComplex {
    /// Checks shapes and `∂∘∂ = 0`; a nonzero square is an internal error.
    pub fn new(field: Field, spaces: Vec<Space>, differentials: Vec<LinMap>) -> Result<ChainComplex> {
        if spaces.is_empty() || differentials.len() + 1 != spaces.len() {
            return domain_err("a complex needs one differential per positive degree");
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.ncols() != spaces[k + 1].dim() || d.rows() != spaces[k].dim() {
                return domain_err(format!("differential out of degree {} has the wrong shape", k + 1));
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k - 1].compose(&differentials[k])?.is_zero() {
                return Err(Error::Internal(format!("boundary squares to nonzero out of degree {}", k + 1)));
            }
        }
        Ok(ChainComplex {
            field,
            spaces,
            differentials,
        })
    }

    pub fn top(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, n: usize) -> &Space {
        &self.spaces[n]
    }

    /// `∂_n`, for `1 ≤ n ≤ top`.
    pub fn differential(&self, n: usize) -> &LinMap {
        &self.differentials[n - 1]
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Hochschild,
    Cyclic,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Hochschild => "HH",
            Theory::Cyclic => "HC",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub theory: Theory,
    pub field: Field,
    pub dims: Vec<usize>,
    /// Whether the table was computed on the `t^{n+1}`-invariant part.
    pub invariant_part: bool,
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        f.write_str(&dims.join(" "))
    }
}

/// `dim H_n = dim C_n − rank ∂_n − rank ∂_{n+1}` for `n ≤ up_to`.
pub fn homology_dims(c: &ChainComplex, up_to: usize) -> Result<Vec<usize>> {
    if up_to + 1 > c.top() {
        return Err(Error::Range(format!(
            "degree {up_to} needs the differential out of degree {}, but the complex stops at {}",
            up_to + 1,
            c.top()
        )));
    }
    let ranks: Vec<usize> = (1..=up_to + 1).map(|n| c.differential(n).rank()).collect();
    Ok((0..=up_to)
        .map(|n| {
            let into = ranks[n];
            let out = if n == 0 { 0 } else { ranks[n - 1] };
            c.space(n).dim() - out - into
        })
        .collect())
}

fn alternating_sum(d: &DuplicialModule, n: usize, count: usize) -> Result<LinMap> {
    let f = d.field();
    let mut acc = LinMap::zero(f, d.space(n), d.space(n - 1));
    for i in 0..count {
        let term = d.face(n, i);
        acc = if i % 2 == 0 { acc.add(term)? } else { acc.sub(term)? };
    }
    Ok(acc)
}

/// `b = Σ_{i=0}^{n} (−1)^i d_i`.
pub fn hochschild_boundary(d: &DuplicialModule, n: usize) -> Result<LinMap> {
    alternating_sum(d, n, n + 1)
}

/// `b′ = Σ_{i=0}^{n−1} (−1)^i d_i`.
pub fn bar_boundary(d: &DuplicialModule, n: usize) -> Result<LinMap> {
    alternating_sum(d, n, n)
}

pub fn hochschild_complex(d: &DuplicialModule) -> Result<ChainComplex> {
    let diffs = (1..=d.top()).map(|n| hochschild_boundary(d, n)).collect::<Result<Vec<_>>>()?;
    ChainComplex::new(d.field(), (0..=d.top()).map(|n| d.space(n).clone()).collect(), diffs)
}

pub fn hh_table(d: &DuplicialModule, up_to: usize) -> Result<HomologyTable> {
    Ok(HomologyTable {
        theory: Theory::Hochschild,
        field: d.field(),
        dims: homology_dims(&hochschild_complex(d)?, up_to)?,
        invariant_part: false,
    })
}

/// The signed operator `(−1)^n t_n`.
fn signed_twist(d: &DuplicialModule, n: usize) -> LinMap {
    if n % 2 == 0 {
        d.twist(n).clone()
    } else {
        d.twist(n).scale(&d.field().int(-1))
    }
}

fn norm(d: &DuplicialModule, n: usize) -> Result<LinMap> {
    let f = d.field();
    let t = signed_twist(d, n);
    let mut power = LinMap::identity(f, d.space(n));
    let mut acc = power.clone();
    for _ in 0..n {
        power = t.compose(&power)?;
        acc = acc.add(&power)?;
    }
    Ok(acc)
}

/// Total complex of Tsygan's bicomplex in degrees `0..=top`, where
/// `top ≤ d.top()`. Column `p`, row `q` holds `D_q`; even columns carry `b`,
/// odd columns `−b′`; horizontal maps are `1 − (−1)^q t` out of odd columns
/// and the norm out of even columns `p ≥ 2`.
pub fn cyclic_bicomplex(d: &DuplicialModule, top: usize) -> Result<ChainComplex> {
    if top > d.top() {
        return Err(Error::Range(format!("total degree {top} exceeds the top degree {}", d.top())));
    }
    if let Some(n) = first_acyclic_degree(&d.truncate(top)?)? {
        return Err(Error::Cyclicity(n));
    }
    let f = d.field();
    let p = f.characteristic();
    if p != 0 && p <= top as u64 {
        return domain_err(format!(
            "characteristic {p} is too small for the cyclic bicomplex up to degree {top}; the characteristic must be 0 or exceed {top}"
        ));
    }
    // Tot_n = ⊕_{p=0}^{n} D_{n−p}, block p at offset Σ_{p'<p} dim D_{n−p'}.
    let offsets = |n: usize| -> Vec<usize> {
        let mut o = vec![0];
        for col in 0..=n {
            o.push(o[col] + d.space(n - col).dim());
        }
        o
    };
    let tot: Vec<Space> = (0..=top)
        .map(|n| Space::indexed(&format!("Tot{n}"), *offsets(n).last().expect("nonempty")))
        .collect();
    let mut diffs = Vec::with_capacity(top);
    for n in 1..=top {
        let (src, tgt) = (offsets(n), offsets(n - 1));
        let mut cols: Vec<Vec<(usize, crate::exactla::Scalar)>> = vec![Vec::new(); tot[n].dim()];
        let mut place = |m: &LinMap, from_block: usize, to_block: usize| {
            for c in 0..m.ncols() {
                for (r, x) in m.column(c) {
                    cols[src[from_block] + c].push((tgt[to_block] + r, x.clone()));
                }
            }
        };
        for col in 0..=n {
            let q = n - col;
            // vertical: column col, row q → row q−1
            if q >= 1 {
                let v = if col % 2 == 0 {
                    hochschild_boundary(d, q)?
                } else {
                    bar_boundary(d, q)?.scale(&f.int(-1))
                };
                place(&v, col, col);
            }
            // horizontal: column col → col−1, same row q
            if col >= 1 {
                let h = if col % 2 == 1 {
                    LinMap::identity(f, d.space(q)).sub(&signed_twist(d, q))?
                } else {
                    norm(d, q)?
                };
                place(&h, col, col - 1);
            }
        }
        let m = LinMap::from_fn(f, &tot[n], &tot[n - 1], |c| std::mem::take(&mut cols[c]));
        diffs.push(m);
    }
    ChainComplex::new(f, tot, diffs)
}

/// Cyclic homology in degrees `0..=up_to`. A non-cyclic input is first cut
/// down to its `t^{n+1}`-invariant part.
pub fn hc_table(d: &DuplicialModule, up_to: usize) -> Result<HomologyTable> {
    if up_to + 1 > d.top() {
        return Err(Error::Range(format!(
            "HC up to degree {up_to} needs the duplicial module up to degree {}",
            up_to + 1
        )));
    }
    let d = d.truncate(up_to + 1)?;
    let (d, invariant_part) = match first_acyclic_degree(&d)? {
        None => (d, false),
        Some(_) => (cyclic_invariants(&d)?.0, true),
    };
    let c = cyclic_bicomplex(&d, up_to + 1)?;
    Ok(HomologyTable {
        theory: Theory::Cyclic,
        field: d.field(),
        dims: homology_dims(&c, up_to)?,
        invariant_part,
    })
}

#[cfg(test)]
mod tests;
