use super::law::{check_distlaw, idm, yang_baxter_report, DistLaw, Side};
use crate::algcore::{check_coalgebra, Coalgebra};
use crate::error::{domain_err, Error, Result};
use crate::exactla::{LinMap, Space};
use crate::report::Report;

/// A factorisation `(Σ, σ, γ)` of a law `χ: TC → CT`, with
/// `σ: TΣ → ΣT` and `γ: ΣC → CΣ` satisfying Yang–Baxter.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorisation {
    chi: DistLaw,
    sigma: DistLaw,
    gamma: DistLaw,
}

impl Factorisation {
    /// Builds and validates the factorisation with middle carrier `middle`.
    pub fn new(chi: &DistLaw, middle: &Space, sigma: &LinMap, gamma: &LinMap) -> Result<Factorisation> {
        let sigma = DistLaw::unchecked(chi.left().clone(), Side::Plain(middle.clone()), sigma)?;
        let gamma = DistLaw::unchecked(Side::Plain(middle.clone()), chi.right().clone(), gamma)?;
        make_factorisation(chi, &sigma, &gamma)
    }

    /// No validation beyond shapes.
    pub fn unchecked(chi: &DistLaw, middle: &Space, sigma: &LinMap, gamma: &LinMap) -> Result<Factorisation> {
        Ok(Factorisation {
            chi: chi.clone(),
            sigma: DistLaw::unchecked(chi.left().clone(), Side::Plain(middle.clone()), sigma)?,
            gamma: DistLaw::unchecked(Side::Plain(middle.clone()), chi.right().clone(), gamma)?,
        })
    }

    /// The unit `(id, id_T, id_C)`.
    pub fn unit(chi: &DistLaw) -> Factorisation {
        let f = chi.field();
        let k = Space::unit();
        let (t, c) = (chi.left().carrier(), chi.right().carrier());
        Factorisation::unchecked(chi, &k, &idm(f, &t.tensor(&k)), &idm(f, &k.tensor(c))).expect("shapes")
    }

    pub fn chi(&self) -> &DistLaw {
        &self.chi
    }

    pub fn sigma(&self) -> &DistLaw {
        &self.sigma
    }

    pub fn gamma(&self) -> &DistLaw {
        &self.gamma
    }

    pub fn middle(&self) -> &Space {
        self.sigma.right().carrier()
    }

    pub fn dim(&self) -> usize {
        self.middle().dim()
    }
}

pub fn check_factorisation(fac: &Factorisation) -> Result<Report> {
    let mut rep = Report::new();
    rep.extend_prefixed("sigma: ", check_distlaw(&fac.sigma)?);
    rep.extend_prefixed("gamma: ", check_distlaw(&fac.gamma)?);
    rep.merge(yang_baxter_report(&fac.sigma, &fac.chi, &fac.gamma)?);
    Ok(rep)
}

/// Validates `σ`, `γ` as laws on the appropriate sides and the hexagon.
pub fn make_factorisation(chi: &DistLaw, sigma: &DistLaw, gamma: &DistLaw) -> Result<Factorisation> {
    if sigma.left() != chi.left() || gamma.right() != chi.right() {
        return domain_err("sigma and gamma must share the outer functors of chi");
    }
    if sigma.right().dim() != gamma.left().dim() {
        return domain_err("sigma and gamma disagree on the middle functor");
    }
    let fac = Factorisation {
        chi: chi.clone(),
        sigma: sigma.with_sides(chi.left().clone(), sigma.right().plain())?,
        gamma: gamma.with_sides(sigma.right().plain(), chi.right().clone())?,
    };
    check_factorisation(&fac)?.into_result()?;
    Ok(fac)
}

fn same_chi(a: &Factorisation, b: &Factorisation) -> Result<()> {
    if a.chi != b.chi {
        return domain_err("factorisations of different laws");
    }
    Ok(())
}

/// `(ΣΣ', Σσ' ∘ σΣ', γΣ' ∘ Σγ')`.
pub fn tensor_factorisations(a: &Factorisation, b: &Factorisation) -> Result<Factorisation> {
    same_chi(a, b)?;
    let f = a.chi.field();
    let (s, s2) = (a.middle(), b.middle());
    let sigma = idm(f, s)
        .tensor(b.sigma.map())?
        .compose(&a.sigma.map().tensor(&idm(f, s2))?)?;
    let gamma = a
        .gamma
        .map()
        .tensor(&idm(f, s2))?
        .compose(&idm(f, s).tensor(b.gamma.map())?)?;
    let middle = s.tensor(s2);
    let out = Factorisation::unchecked(&a.chi, &middle, &sigma, &gamma)?;
    let rep = check_factorisation(&out)?;
    if let Some(w) = rep.first_failure() {
        return Err(Error::Internal(format!("tensor product is not a factorisation: {w}")));
    }
    Ok(out)
}

/// A morphism of factorisations, given by its carrier map `Σ → Σ'`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorisationMorphism {
    source: Factorisation,
    target: Factorisation,
    alpha: LinMap,
}

impl FactorisationMorphism {
    pub fn new(source: &Factorisation, target: &Factorisation, alpha: &LinMap) -> Result<FactorisationMorphism> {
        let m = FactorisationMorphism::unchecked(source, target, alpha)?;
        check_factorisation_morphism(&m)?.into_result()?;
        Ok(m)
    }

    pub fn unchecked(source: &Factorisation, target: &Factorisation, alpha: &LinMap) -> Result<FactorisationMorphism> {
        same_chi(source, target)?;
        if alpha.ncols() != source.dim() || alpha.rows() != target.dim() {
            return domain_err("morphism carrier map has the wrong shape");
        }
        Ok(FactorisationMorphism {
            source: source.clone(),
            target: target.clone(),
            alpha: alpha.clone().with_spaces(source.middle(), target.middle())?,
        })
    }

    pub fn identity(fac: &Factorisation) -> FactorisationMorphism {
        FactorisationMorphism {
            source: fac.clone(),
            target: fac.clone(),
            alpha: idm(fac.chi.field(), fac.middle()),
        }
    }

    pub fn source(&self) -> &Factorisation {
        &self.source
    }

    pub fn target(&self) -> &Factorisation {
        &self.target
    }

    pub fn alpha(&self) -> &LinMap {
        &self.alpha
    }
}

pub fn check_factorisation_morphism(m: &FactorisationMorphism) -> Result<Report> {
    let f = m.source.chi.field();
    let (t, c) = (m.source.chi.left().carrier(), m.source.chi.right().carrier());
    let s = m.source.middle();
    let mut rep = Report::new();
    rep.equation(
        "left compatibility square",
        &t.tensor(s),
        &m.target.sigma.map().compose(&idm(f, t).tensor(&m.alpha)?)?,
        &m.alpha.tensor(&idm(f, t))?.compose(m.source.sigma.map())?,
    )?;
    rep.equation(
        "right compatibility square",
        &s.tensor(c),
        &m.target.gamma.map().compose(&m.alpha.tensor(&idm(f, c))?)?,
        &idm(f, c).tensor(&m.alpha)?.compose(m.source.gamma.map())?,
    )?;
    Ok(rep)
}

/// Horizontal composite `α ⊗ β`.
pub fn tensor_morphisms(a: &FactorisationMorphism, b: &FactorisationMorphism) -> Result<FactorisationMorphism> {
    let source = tensor_factorisations(&a.source, &b.source)?;
    let target = tensor_factorisations(&a.target, &b.target)?;
    let out = FactorisationMorphism::unchecked(&source, &target, &a.alpha.tensor(&b.alpha)?)?;
    let rep = check_factorisation_morphism(&out)?;
    if let Some(w) = rep.first_failure() {
        return Err(Error::Internal(format!("tensor of morphisms is not a morphism: {w}")));
    }
    Ok(out)
}

/// Two independent verdicts on a candidate comonoid structure.
#[derive(Clone, Debug)]
pub struct ComonoidReport {
    /// `(Δ, ε)` as morphisms of factorisations plus coassociativity and counitality.
    pub comonoid: Report,
    /// `(Σ, Δ, ε)` as a coalgebra and `σ`, `γ` as laws of comonads.
    pub laws: Report,
}

impl ComonoidReport {
    pub fn coincide(&self) -> bool {
        self.comonoid.passed() == self.laws.passed()
    }

    pub fn passed(&self) -> bool {
        self.comonoid.passed() && self.laws.passed()
    }
}

pub fn check_comonoid(
    fac: &Factorisation,
    delta: &FactorisationMorphism,
    eps: &FactorisationMorphism,
) -> Result<ComonoidReport> {
    let square = tensor_factorisations(fac, fac)?;
    let unit = Factorisation::unit(&fac.chi);
    if delta.source != *fac || delta.target != square {
        return domain_err("comultiplication must be a morphism F -> F⊗F");
    }
    if eps.source != *fac || eps.target != unit {
        return domain_err("counit must be a morphism F -> 1");
    }
    let s = fac.middle();
    let coalg = Coalgebra::unchecked(s, &delta.alpha, &eps.alpha)?;

    let mut comonoid = Report::new();
    comonoid.extend_prefixed("comultiplication: ", check_factorisation_morphism(delta)?);
    comonoid.extend_prefixed("counit: ", check_factorisation_morphism(eps)?);
    comonoid.merge(check_coalgebra(&coalg)?);

    let mut laws = Report::new();
    laws.merge(check_coalgebra(&coalg)?);
    let sigma = fac.sigma.with_sides(fac.chi.left().clone(), Side::Comonad(coalg.clone()))?;
    let gamma = fac.gamma.with_sides(Side::Comonad(coalg), fac.chi.right().clone())?;
    laws.extend_prefixed("sigma: ", check_distlaw(&sigma)?);
    laws.extend_prefixed("gamma: ", check_distlaw(&gamma)?);
    Ok(ComonoidReport { comonoid, laws })
}
