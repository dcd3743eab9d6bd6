use super::algebra::{Algebra, AlgebraMorphism};
use crate::error::{domain_err, Result};
use crate::exactla::{quotient, Field, LinMap, Quotient, Space, SparseVec};
use crate::report::Report;

fn shaped(what: &str, m: &LinMap, domain: &Space, codomain: &Space) -> Result<LinMap> {
    if m.ncols() != domain.dim() || m.rows() != codomain.dim() {
        return domain_err(format!(
            "{what} must be a {}x{} map, got {}x{}",
            codomain.dim(),
            domain.dim(),
            m.rows(),
            m.ncols()
        ));
    }
    m.clone().with_spaces(domain, codomain)
}

fn left_checks(r: &mut Report, prefix: &str, a: &Algebra, m: &Space, act: &LinMap) -> Result<()> {
    let f = a.field();
    let idm = LinMap::identity(f, m);
    r.equation(
        &format!("{prefix}associativity"),
        &a.carrier().tensor(a.carrier()).tensor(m),
        &act.compose(&a.mul().tensor(&idm)?)?,
        &act.compose(&a.id().tensor(act)?)?,
    )?;
    r.equation(&format!("{prefix}unit"), m, &act.compose(&a.unit().tensor(&idm)?)?, &idm)
}

fn right_checks(r: &mut Report, prefix: &str, a: &Algebra, m: &Space, act: &LinMap) -> Result<()> {
    let f = a.field();
    let idm = LinMap::identity(f, m);
    r.equation(
        &format!("{prefix}associativity"),
        &m.tensor(a.carrier()).tensor(a.carrier()),
        &act.compose(&idm.tensor(a.mul())?)?,
        &act.compose(&act.tensor(&a.id())?)?,
    )?;
    r.equation(&format!("{prefix}unit"), m, &act.compose(&idm.tensor(a.unit())?)?, &idm)
}

/// A left module `A ⊗ M → M`.
#[derive(Clone, Debug)]
pub struct LeftModule {
    algebra: Algebra,
    carrier: Space,
    action: LinMap,
}

impl LeftModule {
    pub fn new(algebra: &Algebra, carrier: &Space, action: &LinMap) -> Result<LeftModule> {
        let m = LeftModule::unchecked(algebra, carrier, action)?;
        check_left_module(&m)?.into_result()?;
        Ok(m)
    }

    pub fn unchecked(algebra: &Algebra, carrier: &Space, action: &LinMap) -> Result<LeftModule> {
        Ok(LeftModule {
            algebra: algebra.clone(),
            carrier: carrier.clone(),
            action: shaped("left action", action, &algebra.carrier().tensor(carrier), carrier)?,
        })
    }

    pub fn regular(a: &Algebra) -> LeftModule {
        LeftModule::unchecked(a, a.carrier(), a.mul()).expect("shapes")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn action(&self) -> &LinMap {
        &self.action
    }
}

pub fn check_left_module(m: &LeftModule) -> Result<Report> {
    let mut r = Report::new();
    left_checks(&mut r, "left action ", &m.algebra, &m.carrier, &m.action)?;
    Ok(r)
}

/// A right module `M ⊗ A → M`.
#[derive(Clone, Debug)]
pub struct RightModule {
    algebra: Algebra,
    carrier: Space,
    action: LinMap,
}

impl RightModule {
    pub fn new(algebra: &Algebra, carrier: &Space, action: &LinMap) -> Result<RightModule> {
        let m = RightModule::unchecked(algebra, carrier, action)?;
        check_right_module(&m)?.into_result()?;
        Ok(m)
    }

    pub fn unchecked(algebra: &Algebra, carrier: &Space, action: &LinMap) -> Result<RightModule> {
        Ok(RightModule {
            algebra: algebra.clone(),
            carrier: carrier.clone(),
            action: shaped("right action", action, &carrier.tensor(algebra.carrier()), carrier)?,
        })
    }

    pub fn regular(a: &Algebra) -> RightModule {
        RightModule::unchecked(a, a.carrier(), a.mul()).expect("shapes")
    }

    /// The ground field with `A` acting through an algebra map `A → k`.
    pub fn from_character(a: &Algebra, character: &LinMap) -> Result<RightModule> {
        let k = Space::unit();
        let act = shaped("character", character, a.carrier(), &k)?;
        let act = act.with_spaces(&k.tensor(a.carrier()), &k)?;
        RightModule::new(a, &k, &act)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn action(&self) -> &LinMap {
        &self.action
    }
}

pub fn check_right_module(m: &RightModule) -> Result<Report> {
    let mut r = Report::new();
    right_checks(&mut r, "right action ", &m.algebra, &m.carrier, &m.action)?;
    Ok(r)
}

/// An `(A, B)`-bimodule with `A ⊗ M → M` and `M ⊗ B → M`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left_algebra: Algebra,
    right_algebra: Algebra,
    carrier: Space,
    left: LinMap,
    right: LinMap,
}

impl Bimodule {
    pub fn new(
        left_algebra: &Algebra,
        right_algebra: &Algebra,
        carrier: &Space,
        left: &LinMap,
        right: &LinMap,
    ) -> Result<Bimodule> {
        let m = Bimodule::unchecked(left_algebra, right_algebra, carrier, left, right)?;
        check_bimodule(&m)?.into_result()?;
        Ok(m)
    }

    pub fn unchecked(
        left_algebra: &Algebra,
        right_algebra: &Algebra,
        carrier: &Space,
        left: &LinMap,
        right: &LinMap,
    ) -> Result<Bimodule> {
        if left_algebra.field() != right_algebra.field() {
            return domain_err("bimodule algebras live over different fields");
        }
        Ok(Bimodule {
            left_algebra: left_algebra.clone(),
            right_algebra: right_algebra.clone(),
            carrier: carrier.clone(),
            left: shaped("left action", left, &left_algebra.carrier().tensor(carrier), carrier)?,
            right: shaped("right action", right, &carrier.tensor(right_algebra.carrier()), carrier)?,
        })
    }

    /// `A` acting on itself from both sides.
    pub fn regular(a: &Algebra) -> Bimodule {
        Bimodule::unchecked(a, a, a.carrier(), a.mul(), a.mul()).expect("shapes")
    }

    /// `A` with the right action twisted by an endomorphism: `m · a = m s(a)`.
    pub fn twisted(s: &AlgebraMorphism) -> Result<Bimodule> {
        let a = s.source();
        if s.target().dim() != a.dim() {
            return domain_err("twisting needs an endomorphism");
        }
        let right = a.mul().compose(&a.id().tensor(s.map())?)?;
        let carrier = a.carrier().renamed(&format!("{}_s", a.carrier().name()));
        Bimodule::unchecked(a, a, &carrier, a.mul(), &right)
    }

    pub fn left_algebra(&self) -> &Algebra {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &Algebra {
        &self.right_algebra
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn left(&self) -> &LinMap {
        &self.left
    }

    pub fn right(&self) -> &LinMap {
        &self.right
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn id(&self) -> LinMap {
        LinMap::identity(self.field(), &self.carrier)
    }

    /// The same actions on a relabelled carrier.
    pub fn with_carrier(&self, carrier: &Space) -> Result<Bimodule> {
        Bimodule::unchecked(&self.left_algebra, &self.right_algebra, carrier, &self.left, &self.right)
    }
}

pub fn check_bimodule(m: &Bimodule) -> Result<Report> {
    let mut r = Report::new();
    left_checks(&mut r, "left action ", &m.left_algebra, &m.carrier, &m.left)?;
    right_checks(&mut r, "right action ", &m.right_algebra, &m.carrier, &m.right)?;
    let (a, b) = (m.left_algebra.carrier(), m.right_algebra.carrier());
    r.equation(
        "actions commute",
        &a.tensor(&m.carrier).tensor(b),
        &m.left.compose(&m.left_algebra.id().tensor(&m.right)?)?,
        &m.right.compose(&m.left.tensor(&m.right_algebra.id())?)?,
    )?;
    Ok(r)
}

/// Two commuting left actions `B ⊗ M → M` and `C ⊗ M → M`; this is how a
/// bimodule over `B` and the opposite of `C` is stored.
#[derive(Clone, Debug)]
pub struct DoubleModule {
    first: Algebra,
    second: Algebra,
    carrier: Space,
    first_action: LinMap,
    second_action: LinMap,
}

impl DoubleModule {
    pub fn new(
        first: &Algebra,
        second: &Algebra,
        carrier: &Space,
        first_action: &LinMap,
        second_action: &LinMap,
    ) -> Result<DoubleModule> {
        let m = DoubleModule::unchecked(first, second, carrier, first_action, second_action)?;
        check_double_module(&m)?.into_result()?;
        Ok(m)
    }

    pub fn unchecked(
        first: &Algebra,
        second: &Algebra,
        carrier: &Space,
        first_action: &LinMap,
        second_action: &LinMap,
    ) -> Result<DoubleModule> {
        Ok(DoubleModule {
            first: first.clone(),
            second: second.clone(),
            carrier: carrier.clone(),
            first_action: shaped("first action", first_action, &first.carrier().tensor(carrier), carrier)?,
            second_action: shaped("second action", second_action, &second.carrier().tensor(carrier), carrier)?,
        })
    }

    /// `k` with both algebras acting through the given characters `B → k`, `C → k`.
    pub fn from_characters(first: &Algebra, second: &Algebra, chi_b: &LinMap, chi_c: &LinMap) -> Result<DoubleModule> {
        let k = Space::unit();
        let fb = shaped("character", chi_b, first.carrier(), &k)?.with_spaces(&first.carrier().tensor(&k), &k)?;
        let fc = shaped("character", chi_c, second.carrier(), &k)?.with_spaces(&second.carrier().tensor(&k), &k)?;
        DoubleModule::new(first, second, &k, &fb, &fc)
    }

    pub fn first(&self) -> &Algebra {
        &self.first
    }

    pub fn second(&self) -> &Algebra {
        &self.second
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn first_action(&self) -> &LinMap {
        &self.first_action
    }

    pub fn second_action(&self) -> &LinMap {
        &self.second_action
    }
}

pub fn check_double_module(m: &DoubleModule) -> Result<Report> {
    let f = m.first.field();
    let mut r = Report::new();
    left_checks(&mut r, "first action ", &m.first, &m.carrier, &m.first_action)?;
    left_checks(&mut r, "second action ", &m.second, &m.carrier, &m.second_action)?;
    let (b, c) = (m.first.carrier(), m.second.carrier());
    let idm = LinMap::identity(f, &m.carrier);
    let swap = LinMap::flip(f, b, c).tensor(&idm)?;
    r.equation(
        "actions commute",
        &b.tensor(c).tensor(&m.carrier),
        &m.first_action.compose(&m.first.id().tensor(&m.second_action)?)?,
        &m.second_action
            .compose(&m.second.id().tensor(&m.first_action)?)?
            .compose(&swap)?,
    )?;
    Ok(r)
}

/// Relations `a·m − m·a` over all basis pairs, as vectors of the carrier.
pub fn commutator_relations(m: &Bimodule) -> Result<Vec<SparseVec>> {
    if m.left_algebra.dim() != m.right_algebra.dim() {
        return domain_err("commutator quotient needs an A-bimodule");
    }
    let f = m.field();
    let (na, nm) = (m.left_algebra.dim(), m.dim());
    let mut rels = Vec::with_capacity(na * nm);
    for a in 0..na {
        for x in 0..nm {
            let l = m.left.column(a * nm + x);
            let r = m.right.column(x * na + a);
            let mut v: Vec<_> = l.clone();
            v.extend(r.iter().map(|(i, y)| (*i, f.neg(y))));
            let v = crate::exactla::normalize(f, v);
            if !v.is_empty() {
                rels.push(v);
            }
        }
    }
    Ok(rels)
}

/// `M / span{a·m − m·a}` with its projection and a section.
pub fn commutator_quotient(m: &Bimodule) -> Result<Quotient> {
    let rels = commutator_relations(m)?;
    Ok(quotient(m.field(), &m.carrier, &rels))
}
