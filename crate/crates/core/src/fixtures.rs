//! Named fixtures shared by the command line and the acceptance suite.

use std::sync::Arc;

use crate::admissible::{LeftFunctor, RightCoalg, TensorLeft, TensorRealization};
use crate::algcore::{
    cyclic_group, field_algebra, field_hopf, matrix_algebra, truncated_poly, Algebra, AlgebraMorphism, Coalgebra,
    DoubleModule, HopfAlgebra, RightModule,
};
use crate::distfact::{
    flip_laws, hopf2_laws, hopf_laws, monad_morphism_factorisation, qd_chi, qd_factorisation, rebracketing_law,
    DistLaw, Factorisation,
};
use crate::error::{domain_err, Result};
use crate::exactla::{Field, LinMap, Space, SparseVec};

/// Algebra fixture names, in catalogue order.
pub const ALGEBRAS: [&str; 5] = ["field", "QC2", "QC3", "Qx2", "M2"];

pub fn algebra(field: Field, name: &str) -> Result<Algebra> {
    match name {
        "field" => Ok(field_algebra(field)),
        "QC2" => Ok(cyclic_group(field, 2).algebra().clone()),
        "QC3" => Ok(cyclic_group(field, 3).algebra().clone()),
        "Qx2" => truncated_poly(field, 2),
        "M2" => matrix_algebra(field, 2),
        _ => domain_err(format!("unknown algebra fixture {name:?}")),
    }
}

pub fn algebras(field: Field) -> Result<Vec<(String, Algebra)>> {
    ALGEBRAS.iter().map(|n| Ok((n.to_string(), algebra(field, n)?))).collect()
}

pub fn hopf_algebra(field: Field, name: &str) -> Result<HopfAlgebra> {
    match name {
        "field" => Ok(field_hopf(field)),
        "QC2" => Ok(cyclic_group(field, 2)),
        "QC3" => Ok(cyclic_group(field, 3)),
        _ => domain_err(format!("no Hopf structure on fixture {name:?}")),
    }
}

pub fn hopf_algebras(field: Field) -> Result<Vec<(String, HopfAlgebra)>> {
    ["field", "QC2", "QC3"]
        .iter()
        .map(|n| Ok((n.to_string(), hopf_algebra(field, n)?)))
        .collect()
}

/// An algebra endomorphism used to twist the cyclic datum.
#[derive(Clone, Debug)]
pub struct TwistFixture {
    pub algebra: String,
    pub name: String,
    pub morphism: AlgebraMorphism,
}

/// The non-identity twists: `g ↦ −g` on QC2, `g ↦ g²` on QC3, `x ↦ 2x` on
/// Qx2 and conjugation by `diag(1, 2)` on M2.
pub fn twist(field: Field, algebra_name: &str) -> Result<TwistFixture> {
    let a = algebra(field, algebra_name)?;
    let one = field.one();
    let (name, images): (&str, Vec<SparseVec>) = match algebra_name {
        "QC2" => ("neg-g", vec![vec![(0, one)], vec![(1, field.int(-1))]]),
        "QC3" => ("square", vec![vec![(0, one.clone())], vec![(2, one.clone())], vec![(1, one)]]),
        "Qx2" => ("double-x", vec![vec![(0, one)], vec![(1, field.int(2))]]),
        // E_ij ↦ (d_i / d_j) E_ij
        "M2" => (
            "conj-diag12",
            vec![
                vec![(0, one.clone())],
                vec![(1, field.ratio(1, 2)?)],
                vec![(2, field.int(2))],
                vec![(3, one)],
            ],
        ),
        _ => return domain_err(format!("no twist fixture on {algebra_name:?}")),
    };
    Ok(TwistFixture {
        algebra: algebra_name.into(),
        name: name.into(),
        morphism: AlgebraMorphism::endo_from_images(&a, images)?,
    })
}

/// Identity and non-identity twists on every algebra that has one.
pub fn twists(field: Field) -> Result<Vec<TwistFixture>> {
    let mut out = Vec::new();
    for name in ALGEBRAS {
        let a = algebra(field, name)?;
        out.push(TwistFixture {
            algebra: name.into(),
            name: "id".into(),
            morphism: AlgebraMorphism::identity(&a),
        });
        if name != "field" {
            out.push(twist(field, name)?);
        }
    }
    Ok(out)
}

/// `½(1⊗1 + 1⊗g + g⊗1 − g⊗g)` in `QC2 ⊗ QC2`.
pub fn qc2_r_matrix(field: Field) -> Result<SparseVec> {
    let h = field.ratio(1, 2)?;
    Ok(vec![(0, h.clone()), (1, h.clone()), (2, h.clone()), (3, field.neg(&h))])
}

pub fn one_one() -> SparseVec {
    vec![(0, num_traits::One::one())]
}

/// A law together with factorisations of it.
#[derive(Clone, Debug)]
pub struct LawFamily {
    pub name: String,
    pub chi: DistLaw,
    pub factorisations: Vec<(String, Factorisation)>,
    /// Factorisations whose middle carries a coalgebra candidate.
    pub comonoids: Vec<(String, Factorisation, Coalgebra)>,
}

fn regular_double(u: &HopfAlgebra) -> Result<DoubleModule> {
    let a = u.algebra();
    DoubleModule::new(a, a, a.carrier(), a.mul(), a.mul())
}

fn trivial_double(u: &HopfAlgebra) -> Result<DoubleModule> {
    let (a, eps) = (u.algebra(), u.coalgebra().counit());
    DoubleModule::from_characters(a, a, eps, eps)
}

/// Law families: flip laws, Hopf laws, the Hopf law on `U ⊗ −` both ways,
/// the rebracketing law with a monad-morphism factorisation, and
/// quantum-double laws for both 2-cycles on QC2.
pub fn law_families(field: Field) -> Result<Vec<LawFamily>> {
    let mut out = Vec::new();
    for name in ["QC2", "QC3"] {
        let u = hopf_algebra(field, name)?;
        let flips = flip_laws(u.coalgebra(), u.coalgebra())?;
        out.push(LawFamily {
            name: format!("flip:{name}"),
            chi: flips.chi.clone(),
            factorisations: vec![
                ("unit".into(), Factorisation::unit(&flips.chi)),
                ("left".into(), flips.left.clone()),
                ("right".into(), flips.right.clone()),
            ],
            comonoids: vec![("left".into(), flips.left.clone(), u.coalgebra().clone())],
        });

        let regular = hopf_laws(&u, &RightModule::regular(u.algebra()))?;
        let trivial = hopf_laws(&u, &RightModule::from_character(u.algebra(), u.coalgebra().counit())?)?;
        out.push(LawFamily {
            name: format!("hopf:{name}"),
            chi: regular.theta.clone(),
            factorisations: vec![
                ("unit".into(), Factorisation::unit(&regular.theta)),
                ("regular".into(), regular.factorisation.clone()),
                ("trivial".into(), trivial.factorisation.clone()),
            ],
            comonoids: Vec::new(),
        });
    }

    let u = hopf_algebra(field, "QC2")?;
    let h2 = hopf2_laws(&u)?;
    out.push(LawFamily {
        name: "hopf2:QC2".into(),
        chi: h2.theta.clone(),
        factorisations: vec![
            ("unit".into(), Factorisation::unit(&h2.theta)),
            ("tau".into(), h2.factorisation()?),
        ],
        comonoids: Vec::new(),
    });

    let theta = rebracketing_law(u.algebra())?;
    let neg = twist(field, "QC2")?.morphism;
    out.push(LawFamily {
        name: "rebracket:QC2".into(),
        chi: theta.clone(),
        factorisations: vec![
            ("unit".into(), Factorisation::unit(&theta)),
            ("neg-g".into(), monad_morphism_factorisation(&neg, &theta)?),
        ],
        comonoids: Vec::new(),
    });

    for (tag, r) in [("qd1:QC2", one_one()), ("qdR:QC2", qc2_r_matrix(field)?)] {
        let chi = qd_chi(&r, &u, &u)?;
        out.push(LawFamily {
            name: tag.into(),
            chi: chi.clone(),
            factorisations: vec![
                ("unit".into(), Factorisation::unit(&chi)),
                ("regular".into(), qd_factorisation(&r, &u, &u, &regular_double(&u)?)?),
                ("trivial".into(), qd_factorisation(&r, &u, &u, &trivial_double(&u)?)?),
            ],
            comonoids: Vec::new(),
        });
    }
    Ok(out)
}

pub fn law_family(field: Field, name: &str) -> Result<LawFamily> {
    match law_families(field)?.into_iter().find(|f| f.name == name) {
        Some(f) => Ok(f),
        None => domain_err(format!("unknown law family {name:?}")),
    }
}

/// An admissible datum in the tensor realization of a comonad-comonad law.
#[derive(Clone)]
pub struct TensorDatum {
    pub name: String,
    pub realization: Arc<TensorRealization>,
    pub right: RightCoalg<Space>,
    pub left: TensorLeft,
}

impl TensorDatum {
    pub fn left_arc(&self) -> Arc<dyn LeftFunctor<TensorRealization>> {
        self.left.clone().into_arc()
    }
}

/// For a law `χ: TC → CT` between comonads with a common carrier `U`: the
/// datum `(k, ρ = id_U; k, λ = id_U)` and the cofree datum
/// `(C, ρ = Δ_C ∘ (ε_T ⊗ C); T, λ = (T ⊗ ε_C) ⊗ Δ_T)`.
pub fn tensor_data(chi: &DistLaw) -> Result<Vec<TensorDatum>> {
    let r = Arc::new(TensorRealization::new(chi)?);
    let f = chi.field();
    let (t, c) = (chi.left().carrier(), chi.right().carrier());
    if t.dim() != c.dim() {
        return domain_err("tensor data fixtures need comonads on a common carrier");
    }
    let (Some(tc), Some(cc)) = (comonad(chi.left()), comonad(chi.right())) else {
        return domain_err("tensor data fixtures need comonads on both sides");
    };
    let k = Space::unit();
    let id = LinMap::identity(f, t).with_spaces(&t.tensor(&k), &c.tensor(&k))?;
    let trivial = TensorDatum {
        name: "trivial".into(),
        realization: r.clone(),
        right: RightCoalg { object: k.clone(), rho: id.clone() },
        left: TensorLeft::new(&r, &k, &LinMap::identity(f, c).with_spaces(&k.tensor(c), &k.tensor(t))?)?,
    };
    // t ⊗ c ↦ ε(t) Δ(c)
    let rho = cc.comul().compose(&tc.counit().tensor(&cc.id())?)?;
    // n ⊗ c ↦ ε(c) Δ(n), with N = T
    let lambda = tc.comul().compose(&tc.id().tensor(cc.counit())?)?;
    let cofree = TensorDatum {
        name: "cofree".into(),
        realization: r.clone(),
        right: RightCoalg { object: c.clone(), rho: rho.with_spaces(&t.tensor(c), &c.tensor(c))? },
        left: TensorLeft::new(&r, t, &lambda.with_spaces(&t.tensor(c), &t.tensor(t))?)?,
    };
    Ok(vec![trivial, cofree])
}

fn comonad(side: &crate::distfact::Side) -> Option<&Coalgebra> {
    match side {
        crate::distfact::Side::Comonad(c) => Some(c),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::{check_left_coalg, check_right_coalg};
    use crate::algcore::{check_algebra, check_algebra_morphism, check_hopf};
    use crate::distfact::{check_distlaw, check_factorisation};

    const Q: Field = Field::Rationals;

    #[test]
    fn catalogue_validates() {
        for (n, a) in algebras(Q).unwrap() {
            assert!(check_algebra(&a).unwrap().passed(), "{n}");
        }
        for (n, h) in hopf_algebras(Q).unwrap() {
            assert!(check_hopf(&h).unwrap().passed(), "{n}");
        }
        for t in twists(Q).unwrap() {
            assert!(check_algebra_morphism(&t.morphism).unwrap().passed(), "{}", t.name);
        }
        for fam in law_families(Q).unwrap() {
            assert!(check_distlaw(&fam.chi).unwrap().passed(), "{}", fam.name);
            for (n, f) in &fam.factorisations {
                assert!(check_factorisation(f).unwrap().passed(), "{} {n}", fam.name);
            }
        }
    }

    #[test]
    fn tensor_data_validate() {
        for fam in law_families(Q).unwrap() {
            let Ok(data) = tensor_data(&fam.chi) else { continue };
            for d in data {
                let r = d.realization.as_ref();
                let rep = check_right_coalg(r, &d.right).unwrap();
                assert!(rep.passed(), "{} {} {rep}", fam.name, d.name);
                let probes = [Space::unit(), fam.chi.left().carrier().clone()];
                let rep = check_left_coalg(r, &d.left, &probes).unwrap();
                assert!(rep.passed(), "{} {} {rep}", fam.name, d.name);
            }
        }
    }
}
