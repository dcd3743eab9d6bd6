use super::factorisation::{Factorisation, FactorisationMorphism};
use super::law::{idm, DistLaw, Side};
use crate::algcore::{
    check_right_module, Algebra, AlgebraMorphism, Coalgebra, DoubleModule, HopfAlgebra, RightModule,
};
use crate::error::{domain_err, Error, Result};
use crate::exactla::{Field, LinMap, Scalar, Space, SparseVec};
use crate::report::Report;

fn unit_vec(f: Field, i: usize) -> SparseVec {
    vec![(i, f.one())]
}

/// `Δ(u)` as `((i, j), c)` triples.
fn sweedler(c: &Coalgebra, u: usize) -> Vec<(usize, usize, Scalar)> {
    let n = c.dim();
    c.comul().column(u).iter().map(|(k, x)| (k / n, k % n, x.clone())).collect()
}

/// The rebracketing law of `− ⊗ A` over `A ⊗ −`.
///
/// After moving the right factor to the left, `− ⊗ A` is the monad of the
/// opposite algebra and rebracketing `(a ⊗ m) ⊗ b ↦ a ⊗ (m ⊗ b)` becomes the
/// flip `b ⊗ a ↦ a ⊗ b`.
pub fn rebracketing_law(a: &Algebra) -> Result<DistLaw> {
    let f = a.field();
    DistLaw::new(
        Side::Monad(a.opposite()),
        Side::Plain(a.carrier().clone()),
        &LinMap::flip(f, a.carrier(), a.carrier()),
    )
}

/// Laws built from a Hopf algebra `U` and a right `U`-module `P`.
#[derive(Clone, Debug)]
pub struct HopfLaws {
    pub theta: DistLaw,
    pub sigma: DistLaw,
    pub gamma: DistLaw,
    pub factorisation: Factorisation,
}

/// The mixed law `θ(v ⊗ u) = S(v₂)u ⊗ v₁` between `− ⊗ U` (read as the
/// monad of `U^op`) and the comonad `U ⊗ −`.
pub fn hopf_theta(u: &HopfAlgebra) -> Result<DistLaw> {
    let f = u.field();
    let n = u.dim();
    let alg = u.algebra();
    let c = u.carrier();
    let map = LinMap::from_fn(f, &c.tensor(c), &c.tensor(c), |col| {
        let (v, w) = (col / n, col % n);
        let mut out = Vec::new();
        for (i, j, x) in sweedler(u.coalgebra(), v) {
            let s = u.antipode().column(j);
            for (k, y) in alg.product(s, &unit_vec(f, w)) {
                out.push((k * n + i, f.mul(&x, &y)));
            }
        }
        out
    });
    DistLaw::new(Side::Monad(alg.opposite()), Side::Comonad(u.coalgebra().clone()), &map)
}

pub fn hopf_laws(u: &HopfAlgebra, p: &RightModule) -> Result<HopfLaws> {
    check_right_module(p)?.into_result()?;
    if p.algebra().dim() != u.dim() {
        return domain_err("module is over a different algebra");
    }
    let f = u.field();
    let n = u.dim();
    let np = p.carrier().dim();
    let theta = hopf_theta(u)?;
    let (uc, pc) = (u.carrier(), p.carrier());
    let sigma_map = LinMap::from_fn(f, &uc.tensor(pc), &pc.tensor(uc), |col| {
        let (v, q) = (col / np, col % np);
        let mut out = Vec::new();
        for (i, j, x) in sweedler(u.coalgebra(), v) {
            for (r, y) in p.action().column(q * n + i) {
                out.push((r * n + j, f.mul(&x, y)));
            }
        }
        out
    });
    let gamma_map = LinMap::flip(f, pc, uc);
    let sigma = DistLaw::new(theta.left().clone(), Side::Plain(pc.clone()), &sigma_map)?;
    let gamma = DistLaw::new(Side::Plain(pc.clone()), theta.right().clone(), &gamma_map)?;
    let factorisation = Factorisation::new(&theta, pc, &sigma_map, &gamma_map)?;
    Ok(HopfLaws {
        theta,
        sigma,
        gamma,
        factorisation,
    })
}

/// Laws on `U ⊗ −` viewed as both a monad and a comonad.
#[derive(Clone, Debug)]
pub struct Hopf2Laws {
    pub theta: DistLaw,
    pub tau: DistLaw,
    hopf: HopfAlgebra,
}

impl Hopf2Laws {
    /// `(U ⊗ −, τ, θ)`, available when the antipode lands in the centre.
    pub fn factorisation(&self) -> Result<Factorisation> {
        if let Some((u, v)) = self.hopf.antipode_central() {
            let c = self.hopf.carrier();
            return Err(Error::Centrality(format!(
                "S({}) does not commute with {}",
                c.label(u),
                c.label(v)
            )));
        }
        Factorisation::new(&self.theta, self.hopf.carrier(), self.tau.map(), self.theta.map())
    }
}

/// `θ(u ⊗ v) = vS(u₂) ⊗ u₁` and the flip `τ`.
pub fn hopf2_laws(u: &HopfAlgebra) -> Result<Hopf2Laws> {
    let f = u.field();
    let n = u.dim();
    let c = u.carrier();
    let alg = u.algebra();
    let map = LinMap::from_fn(f, &c.tensor(c), &c.tensor(c), |col| {
        let (a, b) = (col / n, col % n);
        let mut out = Vec::new();
        for (i, j, x) in sweedler(u.coalgebra(), a) {
            for (k, y) in alg.product(&unit_vec(f, b), u.antipode().column(j)) {
                out.push((k * n + i, f.mul(&x, &y)));
            }
        }
        out
    });
    let theta = DistLaw::new(Side::Monad(alg.clone()), Side::Comonad(u.coalgebra().clone()), &map)?;
    let tau = DistLaw::new(Side::Monad(alg.clone()), Side::Plain(c.clone()), &LinMap::flip(f, c, c))?;
    Ok(Hopf2Laws {
        theta,
        tau,
        hopf: u.clone(),
    })
}

/// Flip laws between two coalgebras in vector spaces with the symmetric
/// braiding, and the two factorisations they give.
#[derive(Clone, Debug)]
pub struct FlipLaws {
    pub chi: DistLaw,
    pub tau: DistLaw,
    pub phi: DistLaw,
    /// `(U ⊗ −, τ, χ)`.
    pub left: Factorisation,
    /// `(V ⊗ −, χ, φ)`.
    pub right: Factorisation,
}

pub fn flip_laws(u: &Coalgebra, v: &Coalgebra) -> Result<FlipLaws> {
    let f = u.field();
    let (uc, vc) = (u.carrier(), v.carrier());
    let chi = DistLaw::new(Side::Comonad(u.clone()), Side::Comonad(v.clone()), &LinMap::flip(f, uc, vc))?;
    let tau = DistLaw::new(Side::Comonad(u.clone()), Side::Comonad(u.clone()), &LinMap::flip(f, uc, uc))?;
    let phi = DistLaw::new(Side::Comonad(v.clone()), Side::Comonad(v.clone()), &LinMap::flip(f, vc, vc))?;
    let left = Factorisation::new(&chi, uc, tau.map(), chi.map())?;
    let right = Factorisation::new(&chi, vc, chi.map(), phi.map())?;
    Ok(FlipLaws {
        chi,
        tau,
        phi,
        left,
        right,
    })
}

/// The comultiplication and counit of the middle coalgebra as morphisms
/// `F → F ⊗ F` and `F → 1` (unvalidated, for the comonoid check).
pub fn comonoid_candidate(
    fac: &Factorisation,
    middle: &Coalgebra,
) -> Result<(FactorisationMorphism, FactorisationMorphism)> {
    let square = super::factorisation::tensor_factorisations(fac, fac)?;
    let unit = Factorisation::unit(fac.chi());
    Ok((
        FactorisationMorphism::unchecked(fac, &square, middle.comul())?,
        FactorisationMorphism::unchecked(fac, &unit, middle.counit())?,
    ))
}

/// A 2-cycle `R ∈ C ⊗ B` with the algebra it lives in and its inverse.
#[derive(Clone, Debug)]
pub struct TwoCycle {
    pub b: HopfAlgebra,
    pub c: HopfAlgebra,
    pub element: SparseVec,
    pub inverse: SparseVec,
    pub algebra: Algebra,
}

impl TwoCycle {
    pub fn new(r: &SparseVec, b: &HopfAlgebra, c: &HopfAlgebra) -> Result<TwoCycle> {
        let algebra = c.algebra().tensor(b.algebra())?;
        let inverse = algebra.inverse(r)?;
        Ok(TwoCycle {
            b: b.clone(),
            c: c.clone(),
            element: r.clone(),
            inverse,
            algebra,
        })
    }

    /// The trivial 2-cycle `1 ⊗ 1`.
    pub fn trivial(b: &HopfAlgebra, c: &HopfAlgebra) -> Result<TwoCycle> {
        let f = b.field();
        let (oc, ob) = (c.algebra().one(), b.algebra().one());
        let mut one = Vec::new();
        for (i, x) in &oc {
            for (j, y) in &ob {
                one.push((i * b.dim() + j, f.mul(x, y)));
            }
        }
        TwoCycle::new(&crate::exactla::normalize(f, one), b, c)
    }

    fn field(&self) -> Field {
        self.b.field()
    }

    /// `R` as `(c index, b index, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, Scalar)> {
        let nb = self.b.dim();
        self.element.iter().map(|(k, x)| (k / nb, k % nb, x.clone())).collect()
    }
}

pub fn check_two_cycle(r: &SparseVec, b: &HopfAlgebra, c: &HopfAlgebra) -> Result<Report> {
    let cyc = TwoCycle::new(r, b, c)?;
    two_cycle_report(&cyc)
}

fn two_cycle_report(cyc: &TwoCycle) -> Result<Report> {
    let f = cyc.field();
    let (b, c) = (&cyc.b, &cyc.c);
    let (bc, cc) = (b.carrier(), c.carrier());
    let rv = LinMap::vector(f, &cc.tensor(bc), cyc.element.clone());
    let (ib, ic) = (idm(f, bc), idm(f, cc));
    let mut rep = Report::new();

    let ccb = c.algebra().tensor(c.algebra())?.tensor(b.algebra())?;
    let r13 = ic.tensor(c.algebra().unit())?.tensor(&ib)?.compose(&rv)?;
    let r23 = c.algebra().unit().tensor(&ic)?.tensor(&ib)?.compose(&rv)?;
    let lhs = c.coalgebra().comul().tensor(&ib)?.compose(&rv)?;
    rep.vectors(
        "left coproduct axiom",
        ccb.carrier(),
        lhs.column(0),
        &ccb.product(r13.column(0), r23.column(0)),
    );

    let cbb = c.algebra().tensor(b.algebra())?.tensor(b.algebra())?;
    let r12 = ic.tensor(&ib)?.tensor(b.algebra().unit())?.compose(&rv)?;
    let r13 = ic.tensor(b.algebra().unit())?.tensor(&ib)?.compose(&rv)?;
    let lhs = ic.tensor(b.coalgebra().comul())?.compose(&rv)?;
    rep.vectors(
        "right coproduct axiom",
        cbb.carrier(),
        lhs.column(0),
        &cbb.product(r12.column(0), r13.column(0)),
    );

    let cb = cyc.algebra.carrier();
    let lhs = ic.tensor(b.antipode())?.compose(&rv)?;
    rep.vectors("right antipode axiom", cb, lhs.column(0), &cyc.inverse);
    let lhs = c.antipode().tensor(&ib)?.compose(&rv)?;
    rep.vectors("left antipode axiom", cb, lhs.column(0), &cyc.inverse);
    Ok(rep)
}

fn validated_cycle(r: &SparseVec, b: &HopfAlgebra, c: &HopfAlgebra) -> Result<TwoCycle> {
    let cyc = TwoCycle::new(r, b, c)?;
    two_cycle_report(&cyc)?.into_result()?;
    Ok(cyc)
}

/// `χ(b ⊗ c) = R(c ⊗ b)R⁻¹` between the comonads `B ⊗ −` and `C ⊗ −`.
pub fn qd_chi(r: &SparseVec, b: &HopfAlgebra, c: &HopfAlgebra) -> Result<DistLaw> {
    let cyc = validated_cycle(r, b, c)?;
    let f = b.field();
    let (nb, nc) = (b.dim(), c.dim());
    let (bc, cc) = (b.carrier(), c.carrier());
    let map = LinMap::from_fn(f, &bc.tensor(cc), &cc.tensor(bc), |col| {
        let (x, y) = (col / nc, col % nc);
        let cb = unit_vec(f, y * nb + x);
        let left = cyc.algebra.product(&cyc.element, &cb);
        cyc.algebra.product(&left, &cyc.inverse)
    });
    DistLaw::new(Side::Comonad(b.coalgebra().clone()), Side::Comonad(c.coalgebra().clone()), &map)
}

/// The factorisation `(M ⊗ −, σ, γ)` of the quantum-double law from a
/// module with commuting left actions of `B` and `C`.
pub fn qd_factorisation(r: &SparseVec, b: &HopfAlgebra, c: &HopfAlgebra, m: &DoubleModule) -> Result<Factorisation> {
    if m.first().dim() != b.dim() || m.second().dim() != c.dim() {
        return domain_err("module actions do not match the Hopf algebras");
    }
    crate::algcore::check_double_module(m)?.into_result()?;
    let chi = qd_chi(r, b, c)?;
    let cyc = validated_cycle(r, b, c)?;
    let f = b.field();
    let (nb, nc, nm) = (b.dim(), c.dim(), m.carrier().dim());
    let (bc, cc, mc) = (b.carrier(), c.carrier(), m.carrier());
    let terms = cyc.terms();
    let sigma = LinMap::from_fn(f, &bc.tensor(mc), &mc.tensor(bc), |col| {
        let (x, q) = (col / nm, col % nm);
        let mut out = Vec::new();
        for (ci, bi, w) in &terms {
            let cm = m.second_action().column(ci * nm + q);
            let bb = b.algebra().product(&unit_vec(f, *bi), &unit_vec(f, x));
            for (s, y) in cm {
                for (t, z) in &bb {
                    out.push((s * nb + t, f.mul(w, &f.mul(y, z))));
                }
            }
        }
        out
    });
    let gamma = LinMap::from_fn(f, &mc.tensor(cc), &cc.tensor(mc), |col| {
        let (q, y) = (col / nc, col % nc);
        let mut out = Vec::new();
        for (ci, bi, w) in &terms {
            let cy = c.algebra().product(&unit_vec(f, *ci), &unit_vec(f, y));
            let bm = m.first_action().column(bi * nm + q);
            for (s, u) in &cy {
                for (t, z) in bm {
                    out.push((s * nm + t, f.mul(w, &f.mul(u, z))));
                }
            }
        }
        out
    });
    Factorisation::new(&chi, mc, &sigma, &gamma)
}

/// The factorisation `(id, s, id)` of a law `θ` whose left side is a monad,
/// from a monad endomorphism `s` compatible with `θ`.
pub fn monad_morphism_factorisation(s: &AlgebraMorphism, theta: &DistLaw) -> Result<Factorisation> {
    let Side::Monad(b) = theta.left() else {
        return domain_err("the law must have a monad on its left side");
    };
    if s.source().dim() != b.dim() || s.target().dim() != b.dim() {
        return domain_err("the morphism must be an endomorphism of the monad's algebra");
    }
    let f = theta.field();
    let d = theta.right().carrier();
    let sm = s.map();
    let mut rep = Report::new();
    rep.equation(
        "multiplication square",
        &b.carrier().tensor(b.carrier()),
        &sm.compose(b.mul())?,
        &b.mul().compose(&sm.tensor(sm)?)?,
    )?;
    rep.equation("unit triangle", &Space::unit(), &sm.compose(b.unit())?, b.unit())?;
    rep.equation(
        "law compatibility square",
        &b.carrier().tensor(d),
        &theta.map().compose(&sm.tensor(&idm(f, d))?)?,
        &idm(f, d).tensor(sm)?.compose(theta.map())?,
    )?;
    if let Some(w) = rep.first_failure() {
        return Err(Error::Validation(w.clone()));
    }
    let k = Space::unit();
    Factorisation::new(theta, &k, sm, &idm(f, &k.tensor(d)))
}
