//! Built-in example bundles, addressable by name wherever a bundle path is
//! accepted.

use dlf::distfact::{DistLaw, Factorisation};
use dlf::exactla::{Field, LinMap};
use dlf::fixtures::{self, ALGEBRAS};

use crate::bundle::{Bundle, Datum};
use crate::error::{CliError, CliResult, Kind};

pub fn names() -> Vec<String> {
    let mut out = Vec::new();
    for a in ALGEBRAS {
        out.push(format!("cyclic:{a}"));
    }
    for a in ALGEBRAS.iter().filter(|a| **a != "field") {
        out.push(format!("twisted:{a}"));
    }
    for fam in ["flip:QC2", "flip:QC3", "hopf:QC2", "hopf:QC3", "hopf2:QC2", "rebracket:QC2", "qd1:QC2", "qdR:QC2"] {
        out.push(format!("law:{fam}"));
    }
    out.push("broken-yb:QC2".into());
    out
}

pub fn is_example(name: &str) -> bool {
    names().iter().any(|n| n == name)
}

pub fn example(name: &str, field: Field) -> CliResult<Bundle> {
    let mut b = Bundle::new(field);
    let unknown = || CliError::new(Kind::Parse, format!("no such file or example: {name}"));
    let (kind, rest) = name.split_once(':').ok_or_else(unknown)?;
    match kind {
        "cyclic" => {
            b.algebras.insert(rest.into(), fixtures::algebra(field, rest).map_err(|_| unknown())?);
            b.data.insert(
                "cyclic".into(),
                Datum::Cyclic {
                    algebra: rest.into(),
                    twist: None,
                },
            );
        }
        "twisted" => {
            let t = fixtures::twist(field, rest).map_err(|_| unknown())?;
            b.algebras.insert(rest.into(), fixtures::algebra(field, rest)?);
            b.morphisms.insert(t.name.clone(), t.morphism);
            b.data.insert(
                "twisted".into(),
                Datum::Cyclic {
                    algebra: rest.into(),
                    twist: Some(t.name),
                },
            );
        }
        "law" => {
            if !names().iter().any(|n| n == name) {
                return Err(unknown());
            }
            let fam = fixtures::law_family(field, rest)?;
            let hopf = rest.rsplit(':').next().unwrap_or(rest);
            b.hopf_algebras.insert(hopf.into(), fixtures::hopf_algebra(field, hopf)?);
            add_family(&mut b, &fam.chi, &fam.factorisations)?;
        }
        "broken-yb" if rest == "QC2" => {
            let fam = fixtures::law_family(field, "hopf:QC2")?;
            b.hopf_algebras.insert("QC2".into(), fixtures::hopf_algebra(field, "QC2")?);
            let regular = fam
                .factorisations
                .iter()
                .find(|(n, _)| n == "regular")
                .map(|(_, f)| f.clone())
                .ok_or_else(unknown)?;
            // γ replaced by a permutation other than the flip
            let g = regular.gamma().map();
            let perm = LinMap::from_basis_map(field, g.domain(), g.codomain(), |c| [1, 0, 2, 3][c]);
            let broken = Factorisation::unchecked(&fam.chi, regular.middle(), regular.sigma().map(), &perm)?;
            add_family(&mut b, &fam.chi, &[("regular".into(), regular), ("broken".into(), broken)])?;
        }
        _ => return Err(unknown()),
    }
    Ok(b)
}

fn add_family(b: &mut Bundle, chi: &DistLaw, facs: &[(String, Factorisation)]) -> CliResult<()> {
    b.laws.insert("chi".into(), chi.clone());
    for (n, f) in facs {
        b.factorisations.insert(n.clone(), f.clone());
    }
    if let Ok(data) = fixtures::tensor_data(chi) {
        for d in data {
            b.data.insert(
                d.name.clone(),
                Datum::Tensor {
                    law: "chi".into(),
                    module: d.right.object.clone(),
                    rho: d.right.rho.clone(),
                    left: d.left.carrier().clone(),
                    lambda: d.left.lambda_map().clone(),
                },
            );
        }
    }
    Ok(())
}
