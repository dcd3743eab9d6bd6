//! Right and left coalgebras over a distributive law, and the actions of
//! factorisations on them.
//!
//! Everything here is written against [`Realization`], which supplies the
//! objects of the base category, the two comonads on it and the law between
//! them. Two realizations exist: [`TensorRealization`] (tensoring comonads on
//! vector spaces) and the bimodule realization in `bimodreal`.

mod tensor;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Field, LinMap, Space};
use crate::report::Report;

pub use tensor::{TensorLeft, TensorRealization};

/// A base category with comonads `T`, `C` and a law `χ: TC → CT`.
pub trait Realization {
    type Obj: Clone;

    fn field(&self) -> Field;
    /// Underlying vector space of an object.
    fn space(&self, x: &Self::Obj) -> Space;
    fn t_obj(&self, x: &Self::Obj) -> Self::Obj;
    fn c_obj(&self, x: &Self::Obj) -> Self::Obj;
    /// `T(f)` for a morphism `f` given by its linear map.
    fn t_map(&self, f: &LinMap) -> Result<LinMap>;
    fn c_map(&self, f: &LinMap) -> Result<LinMap>;
    fn t_counit(&self, x: &Self::Obj) -> Result<LinMap>;
    fn t_comul(&self, x: &Self::Obj) -> Result<LinMap>;
    fn c_counit(&self, x: &Self::Obj) -> Result<LinMap>;
    fn c_comul(&self, x: &Self::Obj) -> Result<LinMap>;
    /// `χ_x: TCx → CTx`.
    fn chi(&self, x: &Self::Obj) -> Result<LinMap>;

    fn t_power(&self, x: &Self::Obj, n: usize) -> Self::Obj {
        (0..n).fold(x.clone(), |acc, _| self.t_obj(&acc))
    }

    fn t_map_power(&self, f: &LinMap, n: usize) -> Result<LinMap> {
        (0..n).try_fold(f.clone(), |acc, _| self.t_map(&acc))
    }
}

/// A factorisation `(Σ, σ, γ)` acting on the base category.
pub trait Factor<R: Realization>: Send + Sync {
    fn obj(&self, x: &R::Obj) -> R::Obj;
    /// `Σ(f)` for `f: x → y`.
    fn map(&self, f: &LinMap, x: &R::Obj, y: &R::Obj) -> Result<LinMap>;
    /// `σ_x: TΣx → ΣTx`.
    fn sigma(&self, x: &R::Obj) -> Result<LinMap>;
    /// `γ_x: ΣCx → CΣx`.
    fn gamma(&self, x: &R::Obj) -> Result<LinMap>;
}

/// The unit factorisation over a given realization: `Σ = id`, `σ = id_T`,
/// `γ = id_C`.
pub struct UnitFactor<R: Realization>(pub Arc<R>);

impl<R: Realization + Send + Sync> Factor<R> for UnitFactor<R> {
    fn obj(&self, x: &R::Obj) -> R::Obj {
        x.clone()
    }

    fn map(&self, f: &LinMap, _x: &R::Obj, _y: &R::Obj) -> Result<LinMap> {
        Ok(f.clone())
    }

    fn sigma(&self, x: &R::Obj) -> Result<LinMap> {
        let r = &self.0;
        Ok(LinMap::identity(r.field(), &r.space(&r.t_obj(x))))
    }

    fn gamma(&self, x: &R::Obj) -> Result<LinMap> {
        let r = &self.0;
        Ok(LinMap::identity(r.field(), &r.space(&r.c_obj(x))))
    }
}

/// `F ⊗ G`: `Σ = Σ_F Σ_G`, `σ = Σ_F σ_G ∘ σ_F Σ_G`, `γ = γ_F Σ_G ∘ Σ_F γ_G`.
pub struct ProductFactor<R: Realization> {
    pub first: Arc<dyn Factor<R>>,
    pub second: Arc<dyn Factor<R>>,
    pub realization: Arc<R>,
}

impl<R: Realization + Send + Sync> Factor<R> for ProductFactor<R> {
    fn obj(&self, x: &R::Obj) -> R::Obj {
        self.first.obj(&self.second.obj(x))
    }

    fn map(&self, f: &LinMap, x: &R::Obj, y: &R::Obj) -> Result<LinMap> {
        let g = &self.second;
        self.first.map(&g.map(f, x, y)?, &g.obj(x), &g.obj(y))
    }

    fn sigma(&self, x: &R::Obj) -> Result<LinMap> {
        let (first, g) = (&self.first, &self.second);
        let gx = g.obj(x);
        let moved = first.map(&g.sigma(x)?, &self.realization.t_obj(&gx), &g.obj(&self.realization.t_obj(x)))?;
        moved.compose(&first.sigma(&gx)?)
    }

    fn gamma(&self, x: &R::Obj) -> Result<LinMap> {
        let (first, g) = (&self.first, &self.second);
        let gx = g.obj(x);
        let moved = first.map(&g.gamma(x)?, &g.obj(&self.realization.c_obj(x)), &self.realization.c_obj(&gx))?;
        first.gamma(&gx)?.compose(&moved)
    }
}

pub fn product_factor<R: Realization + Send + Sync + 'static>(
    r: &Arc<R>,
    a: Arc<dyn Factor<R>>,
    b: Arc<dyn Factor<R>>,
) -> Arc<dyn Factor<R>> {
    Arc::new(ProductFactor {
        first: a,
        second: b,
        realization: r.clone(),
    })
}

/// The law and hexagon axioms of a factorisation, evaluated at each probe
/// object.
pub fn check_factor<R: Realization>(r: &R, fac: &dyn Factor<R>, probes: &[R::Obj]) -> Result<Report> {
    let mut rep = Report::new();
    for (k, x) in probes.iter().enumerate() {
        let (tx, cx, sx) = (r.t_obj(x), r.c_obj(x), fac.obj(x));
        let tsx = r.space(&r.t_obj(&sx));
        let scx = r.space(&fac.obj(&cx));
        let sig = fac.sigma(x)?;
        let lhs = fac.map(&r.t_comul(x)?, &tx, &r.t_obj(&tx))?.compose(&sig)?;
        let rhs = fac
            .sigma(&tx)?
            .compose(&r.t_map(&sig)?)?
            .compose(&r.t_comul(&sx)?)?;
        rep.equation(&format!("sigma: comultiplication square at probe {k}"), &tsx, &lhs, &rhs)?;
        let lhs = fac.map(&r.t_counit(x)?, &tx, x)?.compose(&sig)?;
        rep.equation(&format!("sigma: counit triangle at probe {k}"), &tsx, &lhs, &r.t_counit(&sx)?)?;
        let gam = fac.gamma(x)?;
        let lhs = r.c_comul(&sx)?.compose(&gam)?;
        let rhs = r
            .c_map(&gam)?
            .compose(&fac.gamma(&cx)?)?
            .compose(&fac.map(&r.c_comul(x)?, &cx, &r.c_obj(&cx))?)?;
        rep.equation(&format!("gamma: comultiplication square at probe {k}"), &scx, &lhs, &rhs)?;
        let lhs = r.c_counit(&sx)?.compose(&gam)?;
        rep.equation(&format!("gamma: counit triangle at probe {k}"), &scx, &lhs, &fac.map(&r.c_counit(x)?, &cx, x)?)?;
        // TΣCx → CΣTx both ways round the hexagon
        let lhs = fac
            .gamma(&tx)?
            .compose(&fac.map(&r.chi(x)?, &r.t_obj(&cx), &r.c_obj(&tx))?)?
            .compose(&fac.sigma(&cx)?)?;
        let rhs = r
            .c_map(&fac.sigma(x)?)?
            .compose(&r.chi(&sx)?)?
            .compose(&r.t_map(&gam)?)?;
        let tscx = r.space(&r.t_obj(&fac.obj(&cx)));
        rep.equation(&format!("Yang-Baxter hexagon at probe {k}"), &tscx, &lhs, &rhs)?;
    }
    Ok(rep)
}

/// A right coalgebra `(M, ρ: TM → CM)` with the source category fixed to
/// the terminal one.
#[derive(Clone, Debug)]
pub struct RightCoalg<O> {
    pub object: O,
    pub rho: LinMap,
}

pub fn check_right_coalg<R: Realization>(r: &R, rc: &RightCoalg<R::Obj>) -> Result<Report> {
    let m = &rc.object;
    let (tm, cm) = (r.t_obj(m), r.c_obj(m));
    let (dt, dc) = (r.space(&tm).dim(), r.space(&cm).dim());
    if rc.rho.ncols() != dt || rc.rho.rows() != dc {
        return crate::error::domain_err(format!(
            "rho must be a {dc}x{dt} map, got {}x{}",
            rc.rho.rows(),
            rc.rho.ncols()
        ));
    }
    let rho = &rc.rho;
    let mut rep = Report::new();
    let lhs = r.c_comul(m)?.compose(rho)?;
    let rhs = r
        .c_map(rho)?
        .compose(&r.chi(m)?)?
        .compose(&r.t_map(rho)?)?
        .compose(&r.t_comul(m)?)?;
    rep.equation("comultiplication pentagon", &r.space(&tm), &lhs, &rhs)?;
    rep.equation("counit triangle", &r.space(&tm), &r.c_counit(m)?.compose(rho)?, &r.t_counit(m)?)?;
    Ok(rep)
}

/// `F ▷ (M, ρ) = (ΣM, γ_M ∘ Σρ ∘ σ_M)`.
pub fn act_right<R: Realization>(r: &R, fac: &dyn Factor<R>, rc: &RightCoalg<R::Obj>) -> Result<RightCoalg<R::Obj>> {
    let m = &rc.object;
    let moved = fac.map(&rc.rho, &r.t_obj(m), &r.c_obj(m))?;
    let rho = fac.gamma(m)?.compose(&moved)?.compose(&fac.sigma(m)?)?;
    let out = RightCoalg {
        object: fac.obj(m),
        rho,
    };
    if let Some(w) = check_right_coalg(r, &out)?.first_failure() {
        return Err(Error::Internal(format!("acted right coalgebra is invalid: {w}")));
    }
    Ok(out)
}

/// A functor `N` from the base category to vector spaces with
/// `λ_x: NCx → NTx`.
pub trait LeftFunctor<R: Realization>: Send + Sync {
    fn apply(&self, x: &R::Obj) -> Result<Space>;
    /// `N(f)` for `f: x → y`.
    fn map(&self, f: &LinMap, x: &R::Obj, y: &R::Obj) -> Result<LinMap>;
    fn lambda(&self, x: &R::Obj) -> Result<LinMap>;
}

/// Checks the two left-coalgebra diagrams at each probe object.
pub fn check_left_coalg<R: Realization>(r: &R, n: &dyn LeftFunctor<R>, probes: &[R::Obj]) -> Result<Report> {
    let mut rep = Report::new();
    for (k, x) in probes.iter().enumerate() {
        let (tx, cx) = (r.t_obj(x), r.c_obj(x));
        let (ttx, ccx) = (r.t_obj(&tx), r.c_obj(&cx));
        let (ctx, tcx) = (r.c_obj(&tx), r.t_obj(&cx));
        let lam = n.lambda(x)?;
        let lhs = n.map(&r.t_comul(x)?, &tx, &ttx)?.compose(&lam)?;
        let rhs = n
            .lambda(&tx)?
            .compose(&n.map(&r.chi(x)?, &tcx, &ctx)?)?
            .compose(&n.lambda(&cx)?)?
            .compose(&n.map(&r.c_comul(x)?, &cx, &ccx)?)?;
        let ncx = n.apply(&cx)?;
        rep.equation(&format!("comultiplication pentagon at probe {k}"), &ncx, &lhs, &rhs)?;
        let lhs = n.map(&r.t_counit(x)?, &tx, x)?.compose(&lam)?;
        let rhs = n.map(&r.c_counit(x)?, &cx, x)?;
        rep.equation(&format!("counit triangle at probe {k}"), &ncx, &lhs, &rhs)?;
    }
    Ok(rep)
}

/// `N ◁ F = (NΣ, Nσ ∘ λΣ ∘ Nγ)`.
pub struct ActedLeft<R: Realization> {
    pub inner: Arc<dyn LeftFunctor<R>>,
    pub factor: Arc<dyn Factor<R>>,
    pub realization: Arc<R>,
}

impl<R: Realization + Send + Sync> LeftFunctor<R> for ActedLeft<R> {
    fn apply(&self, x: &R::Obj) -> Result<Space> {
        self.inner.apply(&self.factor.obj(x))
    }

    fn map(&self, f: &LinMap, x: &R::Obj, y: &R::Obj) -> Result<LinMap> {
        self.inner.map(&self.factor.map(f, x, y)?, &self.factor.obj(x), &self.factor.obj(y))
    }

    fn lambda(&self, x: &R::Obj) -> Result<LinMap> {
        let r = &self.realization;
        let f = &self.factor;
        let (cx, tx) = (r.c_obj(x), r.t_obj(x));
        let sx = f.obj(x);
        // NΣCx → NCΣx → NTΣx → NΣTx
        let ng = self.inner.map(&f.gamma(x)?, &f.obj(&cx), &r.c_obj(&sx))?;
        let lam = self.inner.lambda(&sx)?;
        let ns = self.inner.map(&f.sigma(x)?, &r.t_obj(&sx), &f.obj(&tx))?;
        ns.compose(&lam)?.compose(&ng)
    }
}

pub fn act_left<R: Realization + Send + Sync + 'static>(
    r: &Arc<R>,
    n: Arc<dyn LeftFunctor<R>>,
    fac: Arc<dyn Factor<R>>,
) -> Arc<dyn LeftFunctor<R>> {
    Arc::new(ActedLeft {
        inner: n,
        factor: fac,
        realization: r.clone(),
    })
}

/// A right coalgebra and a left coalgebra over the same law.
#[derive(Clone)]
pub struct AdmissibleDatum<R: Realization> {
    pub right: RightCoalg<R::Obj>,
    pub left: Arc<dyn LeftFunctor<R>>,
}

/// `F ▷ d ◁ F'`.
pub fn act_datum<R: Realization + Send + Sync + 'static>(
    r: &Arc<R>,
    fac: &Arc<dyn Factor<R>>,
    d: &AdmissibleDatum<R>,
    fac2: &Arc<dyn Factor<R>>,
) -> Result<AdmissibleDatum<R>> {
    Ok(AdmissibleDatum {
        right: act_right(r.as_ref(), fac.as_ref(), &d.right)?,
        left: act_left(r, d.left.clone(), fac2.clone()),
    })
}

/// Whether two left functors agree on every probe: same spaces and the
/// same `λ` matrices.
pub fn left_functors_agree<R: Realization>(
    a: &dyn LeftFunctor<R>,
    b: &dyn LeftFunctor<R>,
    probes: &[R::Obj],
) -> Result<bool> {
    for x in probes {
        if a.apply(x)?.dim() != b.apply(x)?.dim() || a.lambda(x)? != b.lambda(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}
