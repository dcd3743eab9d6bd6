use std::sync::Arc;

use super::realization::{EmRealization, HFunctor};
use crate::admissible::{check_left_coalg, check_right_coalg, AdmissibleDatum, Factor, LeftFunctor, Realization, RightCoalg};
use crate::algcore::{check_algebra_morphism, Algebra, AlgebraMorphism, Bimodule};
use crate::error::{domain_err, Result};
use crate::exactla::LinMap;
use crate::report::Report;

/// The factorisation `(Σ, σ, id)` of the rebracketing law for an algebra
/// endomorphism `s`: `ΣM = M_s`, `σ_M(m⊗a) = m⊗s(a)`.
#[derive(Clone, Debug)]
pub struct TwistFactor {
    morphism: AlgebraMorphism,
}

pub fn twist_factorisation(s: &AlgebraMorphism) -> Result<TwistFactor> {
    if s.source().dim() != s.target().dim() {
        return domain_err("a twist needs an endomorphism");
    }
    check_algebra_morphism(s)?.into_result()?;
    Ok(TwistFactor { morphism: s.clone() })
}

impl TwistFactor {
    pub fn morphism(&self) -> &AlgebraMorphism {
        &self.morphism
    }

    pub fn into_arc(self) -> Arc<dyn Factor<EmRealization>> {
        Arc::new(self)
    }
}

impl Factor<EmRealization> for TwistFactor {
    fn obj(&self, x: &Bimodule) -> Bimodule {
        let right = x.right().compose(&x.id().tensor(self.morphism.map()).expect("shapes")).expect("shapes");
        Bimodule::unchecked(x.left_algebra(), x.right_algebra(), x.carrier(), x.left(), &right).expect("shapes")
    }

    fn map(&self, f: &LinMap, _x: &Bimodule, _y: &Bimodule) -> Result<LinMap> {
        Ok(f.clone())
    }

    fn sigma(&self, x: &Bimodule) -> Result<LinMap> {
        x.id().tensor(self.morphism.map())
    }

    fn gamma(&self, x: &Bimodule) -> Result<LinMap> {
        let a = self.morphism.source().id();
        a.tensor(&x.id())
    }
}

/// Objects on which naturality-quantified checks are evaluated: `A`,
/// `B̃A`, `D̃A` and `B̃B̃A`.
pub fn probes(r: &EmRealization) -> Vec<Bimodule> {
    let a = Bimodule::regular(r.algebra());
    let ta = r.t_obj(&a);
    vec![a.clone(), ta.clone(), r.c_obj(&a), r.t_obj(&ta)]
}

/// The datum `(A, ρ = id_{A⊗A}; H, λ)` whose duplicial object is the
/// cyclic object of `A`, with its realization and the `H` functor.
#[derive(Clone)]
pub struct CyclicDatum {
    pub realization: Arc<EmRealization>,
    pub h: Arc<HFunctor>,
    pub datum: AdmissibleDatum<EmRealization>,
}

pub fn cyclic_datum(a: &Algebra) -> Result<CyclicDatum> {
    let r = Arc::new(EmRealization::new(a));
    let m = Bimodule::regular(a);
    let rho = LinMap::identity(a.field(), r.t_obj(&m).carrier());
    let h = Arc::new(HFunctor::new(&r));
    let left: Arc<dyn LeftFunctor<EmRealization>> = h.clone();
    Ok(CyclicDatum {
        realization: r,
        h,
        datum: AdmissibleDatum {
            right: RightCoalg { object: m, rho },
            left,
        },
    })
}

/// Right and left coalgebra checks of a datum in the bimodule realization.
pub fn check_em_datum(r: &EmRealization, d: &AdmissibleDatum<EmRealization>) -> Result<Report> {
    let mut rep = Report::new();
    rep.extend_prefixed("right coalgebra: ", check_right_coalg(r, &d.right)?);
    rep.extend_prefixed("left coalgebra: ", check_left_coalg(r, d.left.as_ref(), &probes(r))?);
    Ok(rep)
}
