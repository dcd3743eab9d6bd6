use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::realization::{fingerprint, EmRealization};
use crate::admissible::{Factor, Realization};
use crate::algcore::{check_bimodule, Bimodule};
use crate::error::{domain_err, Result};
use crate::exactla::{quotient, LinMap, Quotient, SparseVec};
use crate::report::Report;

/// A bimodule `N` with a splitting `s: N → A⊗N` of its left action,
/// `n ↦ n₍₋₁₎ ⊗ n₍₀₎`. It induces `Σ = − ⊗_A N` and
/// `∇_M(m ⊗_A n) = m n₍₋₁₎ ⊗ n₍₀₎`.
pub struct ConnectionDatum {
    realization: Arc<EmRealization>,
    module: Bimodule,
    splitting: LinMap,
    cache: Mutex<HashMap<u64, Arc<(Bimodule, Quotient)>>>,
}

impl ConnectionDatum {
    pub fn new(r: &Arc<EmRealization>, module: &Bimodule, splitting: &LinMap) -> Result<ConnectionDatum> {
        let a = r.algebra();
        if module.left_algebra().dim() != a.dim() || module.right_algebra().dim() != a.dim() {
            return domain_err("connection module is not a bimodule over the realization's algebra");
        }
        check_bimodule(module)?.into_result()?;
        let an = a.carrier().tensor(module.carrier());
        if splitting.ncols() != module.dim() || splitting.rows() != an.dim() {
            return domain_err("the splitting must map N to A⊗N");
        }
        Ok(ConnectionDatum {
            realization: r.clone(),
            module: module.clone(),
            splitting: splitting.clone().with_spaces(module.carrier(), &an)?,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// `N = A⊗V` with the regular left action, right action `(a⊗v)·b = ab⊗v`,
    /// and the free splitting `a⊗v ↦ a⊗(1⊗v)`.
    pub fn free(r: &Arc<EmRealization>, rank: usize) -> Result<ConnectionDatum> {
        let a = r.algebra();
        let f = a.field();
        let v = crate::exactla::Space::indexed("V", rank);
        let carrier = a.carrier().tensor(&v);
        let idv = LinMap::identity(f, &v);
        let left = a.mul().tensor(&idv)?;
        // (a⊗v)⊗b ↦ (a⊗b)⊗v ↦ ab⊗v
        let swap = a.id().tensor(&LinMap::flip(f, &v, a.carrier()))?;
        let right = a.mul().tensor(&idv)?.compose(&swap)?;
        let module = Bimodule::unchecked(a, a, &carrier, &left, &right)?;
        ConnectionDatum::new(r, &module, &free_splitting(r, &module, rank)?)
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn splitting(&self) -> &LinMap {
        &self.splitting
    }

    /// `ΣX = X ⊗_A N` with its bimodule structure and quotient data.
    pub fn sigma_obj(&self, x: &Bimodule) -> Result<Arc<(Bimodule, Quotient)>> {
        let key = fingerprint(x);
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let a = self.realization.algebra();
        let f = a.field();
        let n = &self.module;
        let (dx, da, dn) = (x.dim(), a.dim(), n.dim());
        let mut rels: Vec<SparseVec> = Vec::with_capacity(dx * da * dn);
        for xi in 0..dx {
            for ai in 0..da {
                let xa = x.right().column(xi * da + ai);
                for ni in 0..dn {
                    let an = n.left().column(ai * dn + ni);
                    let mut v: Vec<_> = xa.iter().map(|(j, c)| (j * dn + ni, c.clone())).collect();
                    v.extend(an.iter().map(|(j, c)| (xi * dn + j, f.neg(c))));
                    let v = crate::exactla::normalize(f, v);
                    if !v.is_empty() {
                        rels.push(v);
                    }
                }
            }
        }
        let xn = x.carrier().tensor(n.carrier());
        let q = quotient(f, &xn, &rels);
        let left = q
            .projection
            .compose(&x.left().tensor(&n.id())?)?
            .compose(&a.id().tensor(&q.section)?)?;
        let right = q
            .projection
            .compose(&x.id().tensor(n.right())?)?
            .compose(&q.section.tensor(&a.id())?)?;
        let obj = Bimodule::unchecked(a, a, &q.space, &left, &right)?;
        let out = Arc::new((obj, q));
        self.cache.lock().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// `Σ(f) = f ⊗_A N`.
    pub fn sigma_map(&self, f: &LinMap, x: &Bimodule, y: &Bimodule) -> Result<LinMap> {
        let (sx, sy) = (self.sigma_obj(x)?, self.sigma_obj(y)?);
        sy.1.projection.compose(&f.tensor(&self.module.id())?)?.compose(&sx.1.section)
    }

    /// `∇_X: ΣX → ΣB̃X`.
    pub fn nabla(&self, x: &Bimodule) -> Result<LinMap> {
        let r = &self.realization;
        let a = r.algebra();
        let sx = self.sigma_obj(x)?;
        let stx = self.sigma_obj(&r.t_obj(x))?;
        // x⊗n ↦ x⊗n₍₋₁₎⊗n₍₀₎ ↦ x·n₍₋₁₎ ⊗ 1 ⊗ n₍₀₎
        let split = x.id().tensor(&self.splitting)?;
        let act = x.id().tensor(a.unit())?.compose(x.right())?;
        let moved = act.tensor(&self.module.id())?.compose(&split)?;
        stx.1.projection.compose(&moved)?.compose(&sx.1.section)
    }
}

/// The free rank-2 module with `s(1⊗v₁) = 1⊗(1⊗v₁) + g⊗(g⊗v₂) − g²⊗(1⊗v₂)`
/// and `s(1⊗v₂) = 1⊗(1⊗v₂)`, extended left-linearly. The perturbation is
/// the form `g·dg`; a connection for any `g`, with curvature `dg·dg`, so
/// flat when `g` is a scalar.
pub fn perturbed_free(r: &Arc<EmRealization>, g: &[(usize, crate::exactla::Scalar)]) -> Result<ConnectionDatum> {
    let free = ConnectionDatum::free(r, 2)?;
    let a = r.algebra();
    let f = a.field();
    let d = a.dim();
    let one = a.one();
    let gg = a.product(g, g);
    // index of a⊗(b⊗v) in A⊗(A⊗V)
    let at = |ai: usize, bi: usize, v: usize| ai * 2 * d + bi * 2 + v;
    let mut first = Vec::new();
    for (u, x) in &one {
        for (w, y) in &one {
            first.push((at(*u, *w, 0), f.mul(x, y)));
        }
        for (w, y) in &gg {
            first.push((at(*w, *u, 1), f.neg(&f.mul(x, y))));
        }
    }
    for (u, x) in g {
        for (w, y) in g {
            first.push((at(*u, *w, 1), f.mul(x, y)));
        }
    }
    let second = one
        .iter()
        .flat_map(|(u, x)| one.iter().map(move |(w, y)| (at(*u, *w, 1), f.mul(x, y))))
        .collect();
    let base: [Vec<(usize, crate::exactla::Scalar)>; 2] = [first, second];
    // s(a⊗v) = a·s(1⊗v), with a multiplying the outer factor
    let n = free.module().clone();
    let splitting = LinMap::from_fn(f, n.carrier(), &a.carrier().tensor(n.carrier()), |c| {
        let (ai, vi) = (c / 2, c % 2);
        let mut out = Vec::new();
        for (idx, x) in &base[vi] {
            let (outer, rest) = (idx / (2 * d), idx % (2 * d));
            for (k, y) in a.product(&[(ai, f.one())], &[(outer, f.one())]) {
                out.push((k * 2 * d + rest, f.mul(x, &y)));
            }
        }
        out
    });
    ConnectionDatum::new(r, &n, &splitting)
}

fn free_splitting(r: &EmRealization, module: &Bimodule, rank: usize) -> Result<LinMap> {
    let a = r.algebra();
    let f = a.field();
    let d = a.dim();
    let one = a.one();
    // a⊗v ↦ a ⊗ (1⊗v) in A⊗(A⊗V)
    Ok(LinMap::from_fn(f, module.carrier(), &a.carrier().tensor(module.carrier()), |c| {
        let (ai, vi) = (c / rank, c % rank);
        one.iter().map(|(u, x)| (ai * d * rank + u * rank + vi, x.clone())).collect()
    }))
}

/// The splitting identity, left linearity of the splitting, and the counit
/// triangle `Σε̃ ∘ ∇ = id` on each probe.
pub fn check_connection(c: &ConnectionDatum, probes: &[Bimodule]) -> Result<Report> {
    let r = &c.realization;
    let a = r.algebra();
    let n = &c.module;
    let mut rep = Report::new();
    rep.equation("splitting", n.carrier(), &n.left().compose(&c.splitting)?, &n.id())?;
    // s(a·n) = a·s(n), with A acting on the first factor of A⊗N
    let lin_l = c.splitting.compose(n.left())?;
    let lin_r = a.mul().tensor(&n.id())?.compose(&a.id().tensor(&c.splitting)?)?;
    rep.equation("splitting is left linear", &a.carrier().tensor(n.carrier()), &lin_l, &lin_r)?;
    for (k, x) in probes.iter().enumerate() {
        let tx = r.t_obj(x);
        let sx = c.sigma_obj(x)?;
        let lhs = c.sigma_map(&r.t_counit(x)?, &tx, x)?.compose(&c.nabla(x)?)?;
        rep.equation(&format!("counit triangle at probe {k}"), sx.0.carrier(), &lhs, &sx.0.id())?;
    }
    Ok(rep)
}

/// `∇_{B̃X} ∘ ∇_X = ΣΔ̃_X ∘ ∇_X` on each probe.
pub fn check_flat(c: &ConnectionDatum, probes: &[Bimodule]) -> Result<Report> {
    let r = &c.realization;
    let mut rep = Report::new();
    for (k, x) in probes.iter().enumerate() {
        let tx = r.t_obj(x);
        let nab = c.nabla(x)?;
        let lhs = c.nabla(&tx)?.compose(&nab)?;
        let rhs = c.sigma_map(&r.t_comul(x)?, &tx, &r.t_obj(&tx))?.compose(&nab)?;
        rep.equation(&format!("flatness square at probe {k}"), c.sigma_obj(x)?.0.carrier(), &lhs, &rhs)?;
    }
    Ok(rep)
}

/// `(Σ, σ, id)` with `σ_X(ξ⊗b) = ∇_X(ξ)·b`.
pub struct ConnectionFactor(pub Arc<ConnectionDatum>);

impl Factor<EmRealization> for ConnectionFactor {
    fn obj(&self, x: &Bimodule) -> Bimodule {
        self.0.sigma_obj(x).expect("quotient of a valid bimodule").0.clone()
    }

    fn map(&self, f: &LinMap, x: &Bimodule, y: &Bimodule) -> Result<LinMap> {
        self.0.sigma_map(f, x, y)
    }

    fn sigma(&self, x: &Bimodule) -> Result<LinMap> {
        let r = &self.0.realization;
        let stx = self.0.sigma_obj(&r.t_obj(x))?;
        stx.0.right().compose(&self.0.nabla(x)?.tensor(&r.algebra().id())?)
    }

    fn gamma(&self, x: &Bimodule) -> Result<LinMap> {
        let r = &self.0.realization;
        let scx = self.0.sigma_obj(&r.c_obj(x))?;
        let sx = self.0.sigma_obj(x)?;
        r.algebra().id().tensor(&sx.1.projection)?.compose(&scx.1.section)
    }
}
