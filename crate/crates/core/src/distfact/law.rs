use crate::algcore::{Algebra, Coalgebra};
use crate::error::{domain_err, Result};
use crate::exactla::{Field, LinMap, Space};
use crate::report::Report;

/// One side of a distributive law: a bare tensoring functor, a comonad, or
/// a monad (all in left-tensoring form).
#[derive(Clone, Debug)]
pub enum Side {
    Plain(Space),
    Comonad(Coalgebra),
    Monad(Algebra),
}

impl Side {
    pub fn carrier(&self) -> &Space {
        match self {
            Side::Plain(s) => s,
            Side::Comonad(c) => c.carrier(),
            Side::Monad(a) => a.carrier(),
        }
    }

    pub fn dim(&self) -> usize {
        self.carrier().dim()
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Side::Plain(_) => "endofunctor",
            Side::Comonad(_) => "comonad",
            Side::Monad(_) => "monad",
        }
    }

    /// The same carrier with its structure forgotten.
    pub fn plain(&self) -> Side {
        Side::Plain(self.carrier().clone())
    }
}

impl PartialEq for Side {
    fn eq(&self, other: &Side) -> bool {
        match (self, other) {
            (Side::Plain(a), Side::Plain(b)) => a.dim() == b.dim(),
            (Side::Comonad(a), Side::Comonad(b)) => a == b,
            (Side::Monad(a), Side::Monad(b)) => a == b,
            _ => false,
        }
    }
}

/// A distributive law `L R ⇒ R L`, stored as its carrier map `L ⊗ R → R ⊗ L`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistLaw {
    left: Side,
    right: Side,
    map: LinMap,
}

impl DistLaw {
    pub fn new(left: Side, right: Side, map: &LinMap) -> Result<DistLaw> {
        let law = DistLaw::unchecked(left, right, map)?;
        check_distlaw(&law)?.into_result()?;
        Ok(law)
    }

    pub fn unchecked(left: Side, right: Side, map: &LinMap) -> Result<DistLaw> {
        let (l, r) = (left.carrier(), right.carrier());
        if map.ncols() != l.dim() * r.dim() || map.rows() != l.dim() * r.dim() {
            return domain_err(format!(
                "law map is {}x{}, expected {}x{}",
                map.rows(),
                map.ncols(),
                l.dim() * r.dim(),
                l.dim() * r.dim()
            ));
        }
        let map = map.clone().with_spaces(&l.tensor(r), &r.tensor(l))?;
        Ok(DistLaw { left, right, map })
    }

    /// The identity law on the identity comonad.
    pub fn trivial(field: Field) -> DistLaw {
        let k = Side::Comonad(Coalgebra::trivial(field));
        let map = LinMap::identity(field, &Space::unit().tensor(&Space::unit()));
        DistLaw::unchecked(k.clone(), k, &map).expect("shapes")
    }

    pub fn left(&self) -> &Side {
        &self.left
    }

    pub fn right(&self) -> &Side {
        &self.right
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn field(&self) -> Field {
        self.map.field()
    }

    /// The same map, re-read with different structure on the sides.
    pub fn with_sides(&self, left: Side, right: Side) -> Result<DistLaw> {
        DistLaw::unchecked(left, right, &self.map)
    }
}

pub(crate) fn idm(f: Field, s: &Space) -> LinMap {
    LinMap::identity(f, s)
}

pub fn check_distlaw(law: &DistLaw) -> Result<Report> {
    let f = law.field();
    let chi = &law.map;
    let (l, r) = (law.left.carrier(), law.right.carrier());
    let mut rep = Report::new();
    match &law.left {
        Side::Plain(_) => {}
        Side::Comonad(t) => {
            rep.equation(
                "left comultiplication square",
                &l.tensor(r),
                &idm(f, r).tensor(t.comul())?.compose(chi)?,
                &chi.tensor(&idm(f, l))?
                    .compose(&idm(f, l).tensor(chi)?)?
                    .compose(&t.comul().tensor(&idm(f, r))?)?,
            )?;
            rep.equation(
                "left counit triangle",
                &l.tensor(r),
                &idm(f, r).tensor(t.counit())?.compose(chi)?,
                &t.counit().tensor(&idm(f, r))?,
            )?;
        }
        Side::Monad(b) => {
            rep.equation(
                "left multiplication square",
                &l.tensor(l).tensor(r),
                &chi.compose(&b.mul().tensor(&idm(f, r))?)?,
                &idm(f, r)
                    .tensor(b.mul())?
                    .compose(&chi.tensor(&idm(f, l))?)?
                    .compose(&idm(f, l).tensor(chi)?)?,
            )?;
            rep.equation(
                "left unit triangle",
                r,
                &chi.compose(&b.unit().tensor(&idm(f, r))?)?,
                &idm(f, r).tensor(b.unit())?,
            )?;
        }
    }
    match &law.right {
        Side::Plain(_) => {}
        Side::Comonad(c) => {
            rep.equation(
                "right comultiplication square",
                &l.tensor(r),
                &c.comul().tensor(&idm(f, l))?.compose(chi)?,
                &idm(f, r)
                    .tensor(chi)?
                    .compose(&chi.tensor(&idm(f, r))?)?
                    .compose(&idm(f, l).tensor(c.comul())?)?,
            )?;
            rep.equation(
                "right counit triangle",
                &l.tensor(r),
                &c.counit().tensor(&idm(f, l))?.compose(chi)?,
                &idm(f, l).tensor(c.counit())?,
            )?;
        }
        Side::Monad(d) => {
            rep.equation(
                "right multiplication square",
                &l.tensor(r).tensor(r),
                &chi.compose(&idm(f, l).tensor(d.mul())?)?,
                &d.mul()
                    .tensor(&idm(f, l))?
                    .compose(&idm(f, r).tensor(chi)?)?
                    .compose(&chi.tensor(&idm(f, r))?)?,
            )?;
            rep.equation(
                "right unit triangle",
                l,
                &chi.compose(&idm(f, l).tensor(d.unit())?)?,
                &d.unit().tensor(&idm(f, l))?,
            )?;
        }
    }
    Ok(rep)
}

/// The two legs of the Yang–Baxter hexagon on `T ⊗ Σ ⊗ C`, for
/// `σ: TΣ → ΣT`, `χ: TC → CT`, `γ: ΣC → CΣ`.
pub fn yang_baxter_legs(sigma: &LinMap, chi: &LinMap, gamma: &LinMap, t: &Space, s: &Space, c: &Space) -> Result<(LinMap, LinMap)> {
    let f = chi.field();
    let (dt, ds, dc) = (t.dim(), s.dim(), c.dim());
    let sq = |m: &LinMap, n: usize| m.ncols() == n && m.rows() == n;
    if !sq(sigma, dt * ds) || !sq(chi, dt * dc) || !sq(gamma, ds * dc) {
        return domain_err("laws do not compose around the Yang-Baxter hexagon");
    }
    let lhs = gamma
        .tensor(&idm(f, t))?
        .compose(&idm(f, s).tensor(chi)?)?
        .compose(&sigma.tensor(&idm(f, c))?)?;
    let rhs = idm(f, c)
        .tensor(sigma)?
        .compose(&chi.tensor(&idm(f, s))?)?
        .compose(&idm(f, t).tensor(gamma)?)?;
    Ok((lhs, rhs))
}

pub fn yang_baxter_report(sigma: &DistLaw, chi: &DistLaw, gamma: &DistLaw) -> Result<Report> {
    let (t, s, c) = (chi.left.carrier(), sigma.right.carrier(), chi.right.carrier());
    if sigma.left.dim() != t.dim() || gamma.left.dim() != s.dim() || gamma.right.dim() != c.dim() {
        return domain_err("laws do not compose around the Yang-Baxter hexagon");
    }
    let (lhs, rhs) = yang_baxter_legs(&sigma.map, &chi.map, &gamma.map, t, s, c)?;
    let mut rep = Report::new();
    rep.equation("Yang-Baxter hexagon", &t.tensor(s).tensor(c), &lhs, &rhs)?;
    Ok(rep)
}

pub fn check_yang_baxter(sigma: &DistLaw, chi: &DistLaw, gamma: &DistLaw) -> Result<bool> {
    Ok(yang_baxter_report(sigma, chi, gamma)?.passed())
}

/// Whether `τ: TT → TT` is braided with respect to `χ: TC → CT`.
pub fn check_braided(tau: &DistLaw, chi: &DistLaw) -> Result<bool> {
    let t = chi.left.carrier();
    if tau.left.dim() != t.dim() || tau.right.dim() != t.dim() {
        return domain_err("braiding law must act on the left functor of the law it braids with");
    }
    let sigma = tau.with_sides(chi.left.clone(), tau.right.plain())?;
    let gamma = chi.with_sides(tau.right.plain(), chi.right.clone())?;
    check_yang_baxter(&sigma, chi, &gamma)
}

/// A law braided with respect to itself.
pub fn check_bd_law(tau: &DistLaw) -> Result<bool> {
    check_braided(tau, tau)
}
