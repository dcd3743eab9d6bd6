use std::sync::Arc;

use super::*;
use crate::admissible::{act_right, check_factor, product_factor, Factor, Realization};
use crate::algcore::{cyclic_group, field_algebra, matrix_algebra, truncated_poly, Algebra, AlgebraMorphism};
use crate::duplicial::{build_duplicial, check_cyclic, check_duplicial};
use crate::exactla::{Field, LinMap};

const Q: Field = Field::Rationals;

fn qc2() -> Algebra {
    cyclic_group(Q, 2).algebra().clone()
}

fn neg_g(a: &Algebra) -> AlgebraMorphism {
    AlgebraMorphism::endo_from_images(a, vec![vec![(0, Q.one())], vec![(1, Q.int(-1))]]).unwrap()
}

fn double_x() -> (Algebra, AlgebraMorphism) {
    let a = truncated_poly(Q, 2).unwrap();
    let s = AlgebraMorphism::endo_from_images(&a, vec![vec![(0, Q.one())], vec![(1, Q.int(2))]]).unwrap();
    (a, s)
}

#[test]
fn cyclic_datum_validates() {
    for a in [field_algebra(Q), qc2(), matrix_algebra(Q, 2).unwrap()] {
        let c = cyclic_datum(&a).unwrap();
        let rep = check_em_datum(&c.realization, &c.datum).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn twist_is_a_factorisation_on_probes() {
    let a = qc2();
    let c = cyclic_datum(&a).unwrap();
    let twist = twist_factorisation(&neg_g(&a)).unwrap();
    let rep = check_factor(c.realization.as_ref(), &twist, &probes(&c.realization)).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn keystone_small() {
    let a = qc2();
    for s in [AlgebraMorphism::identity(&a), neg_g(&a)] {
        assert_eq!(keystone_mismatch(&a, &s, 3).unwrap(), None);
    }
    let (x, s) = double_x();
    assert_eq!(keystone_mismatch(&x, &s, 3).unwrap(), None);
}

#[test]
fn keystone_noncommutative() {
    let m2 = matrix_algebra(Q, 2).unwrap();
    assert_eq!(keystone_mismatch(&m2, &AlgebraMorphism::identity(&m2), 2).unwrap(), None);
}

#[test]
fn explicit_formulas() {
    let a = qc2();
    let s = neg_g(&a);
    let d = twisted_cyclic_object(&a, &s, 3).unwrap();
    assert!(check_duplicial(&d).unwrap().passed());
    // t(e⊗g) = −g⊗e: column (0,1) = 1 ↦ −(1,0) = index 2
    assert_eq!(d.twist(1).column(1), &vec![(2, Q.int(-1))]);
    for n in 0..=3 {
        assert_eq!(d.twist(n).pow(n + 1).unwrap(), twist_power(&s, n).unwrap());
    }
    let cyc = check_cyclic(&d).unwrap();
    assert_eq!(cyc.verdict("n=0: cyclicity"), Some(false));
    let plain = twisted_cyclic_object(&a, &AlgebraMorphism::identity(&a), 3).unwrap();
    assert!(check_cyclic(&plain).unwrap().passed());
}

#[test]
fn twist_is_monoidal() {
    let (a, s) = double_x();
    let c = cyclic_datum(&a).unwrap();
    let r = &c.realization;
    let s2 = s.compose(&s).unwrap();
    let one: Arc<dyn Factor<EmRealization>> = twist_factorisation(&s).unwrap().into_arc();
    let prod = product_factor(r, one.clone(), one);
    let direct = twist_factorisation(&s2).unwrap();
    let via_prod = act_right(r.as_ref(), prod.as_ref(), &c.datum.right).unwrap();
    let via_comp = act_right(r.as_ref(), &direct, &c.datum.right).unwrap();
    assert_eq!(via_prod.rho, via_comp.rho);
    assert_eq!(via_prod.object.right(), via_comp.object.right());
}

#[test]
fn free_connection_is_flat() {
    let a = qc2();
    let r = Arc::new(EmRealization::new(&a));
    let mut ps = probes(&r);
    let free = ConnectionDatum::free(&r, 2).unwrap();
    ps.push(free.module().clone());
    assert!(check_connection(&free, &ps).unwrap().passed());
    assert!(check_flat(&free, &ps).unwrap().passed());
    let fac = ConnectionFactor(Arc::new(free));
    assert!(check_factor(r.as_ref(), &fac, &ps[..2]).unwrap().passed());
}

#[test]
fn perturbed_connection_is_not_flat() {
    let a = qc2();
    let r = Arc::new(EmRealization::new(&a));
    let c = perturbed_free(&r, &[(1, Q.one())]).unwrap();
    let mut ps = probes(&r);
    ps.push(c.module().clone());
    assert!(check_connection(&c, &ps).unwrap().passed());
    let flat = check_flat(&c, &ps).unwrap();
    assert!(!flat.passed());
    assert!(flat.failures().all(|w| w.axiom.starts_with("flatness square")));
}

#[test]
fn broken_splitting_fails() {
    let a = qc2();
    let r = Arc::new(EmRealization::new(&a));
    let free = ConnectionDatum::free(&r, 1).unwrap();
    let bad = ConnectionDatum::new(&r, free.module(), &free.splitting().scale(&Q.int(2))).unwrap();
    let rep = check_connection(&bad, &probes(&r)).unwrap();
    assert_eq!(rep.first_failure().unwrap().axiom, "splitting");
}

#[test]
fn m2_duplicial_small() {
    let m2 = matrix_algebra(Q, 2).unwrap();
    let c = cyclic_datum(&m2).unwrap();
    let d = build_duplicial(c.realization.as_ref(), &c.datum, 3).unwrap();
    assert_eq!(d.dims(), vec![4, 16, 64, 256]);
    assert!(check_duplicial(&d).unwrap().passed());
    let _ = LinMap::identity(Q, d.space(0));
    let _ = c.realization.t_obj(&c.datum.right.object);
}

#[test]
fn scalar_perturbation_is_flat() {
    let a = qc2();
    let r = Arc::new(EmRealization::new(&a));
    let c = perturbed_free(&r, &[(0, Q.int(3))]).unwrap();
    let mut ps = probes(&r);
    ps.push(c.module().clone());
    assert!(check_connection(&c, &ps).unwrap().passed());
    assert!(check_flat(&c, &ps).unwrap().passed());
}
