//! Algebras, coalgebras, Hopf algebras and modules given by structure
//! constants, with exhaustive axiom checks.

mod algebra;
mod builtin;
mod modules;

pub use algebra::{
    check_algebra, check_algebra_morphism, check_coalgebra, check_hopf, Algebra, AlgebraMorphism, Coalgebra,
    HopfAlgebra,
};
pub use builtin::{cyclic_group, field_algebra, field_hopf, group_algebra, matrix_algebra, symmetric_group3, truncated_poly};
pub use modules::{
    check_bimodule, check_double_module, check_left_module, check_right_module, commutator_quotient,
    commutator_relations, Bimodule, DoubleModule, LeftModule, RightModule,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Field, LinMap};

    const Q: Field = Field::Rationals;

    #[test]
    fn group_algebra_is_hopf() {
        let h = cyclic_group(Q, 2);
        assert!(check_hopf(&h).unwrap().passed());
        let s = h.antipode();
        assert!(s.compose(s).unwrap().is_identity());
        assert!(check_hopf(&symmetric_group3(Q)).unwrap().passed());
        assert!(check_hopf(&cyclic_group(Field::Prime(3), 3)).unwrap().passed());
    }

    #[test]
    fn idempotent_mutation_is_still_an_algebra() {
        let a = cyclic_group(Q, 2).algebra().clone();
        let mul = LinMap::from_fn(Q, a.mul().domain(), a.carrier(), |c| match c {
            3 => vec![(1, Q.one())],
            _ => a.mul().column(c).clone(),
        });
        let m = Algebra::unchecked(a.carrier(), &mul, a.unit()).unwrap();
        assert!(check_algebra(&m).unwrap().passed());
    }

    #[test]
    fn collapsing_mutation_fails_unit_at_g() {
        let a = cyclic_group(Q, 2).algebra().clone();
        let mul = LinMap::from_fn(Q, a.mul().domain(), a.carrier(), |_| vec![(0, Q.one())]);
        let m = Algebra::unchecked(a.carrier(), &mul, a.unit()).unwrap();
        let r = check_algebra(&m).unwrap();
        assert_eq!(r.verdict("associativity"), Some(true));
        let w = r.first_failure().unwrap();
        assert_eq!(w.axiom, "left unit");
        assert_eq!(w.label, "g");
        assert!(Algebra::new(a.carrier(), &mul, a.unit()).is_err());
    }

    #[test]
    fn builtin_dimensions() {
        assert_eq!(truncated_poly(Q, 2).unwrap().dim(), 2);
        let m2 = matrix_algebra(Q, 2).unwrap();
        assert_eq!(m2.dim(), 4);
        assert_eq!(m2.one(), vec![(0, Q.one()), (3, Q.one())]);
        assert_eq!(field_algebra(Q).dim(), 1);
        assert!(check_hopf(&field_hopf(Q)).unwrap().passed());
    }

    #[test]
    fn bad_group_tables_rejected() {
        assert!(group_algebra(Q, "G", &["e", "g"], &[vec![0, 1], vec![1, 1]]).is_err());
        assert!(group_algebra(Q, "G", &["a", "b"], &[vec![1, 0], vec![1, 0]]).is_err());
        assert!(group_algebra(Q, "G", &["e"], &[vec![2]]).is_err());
    }

    #[test]
    fn commutator_quotients() {
        let qc2 = cyclic_group(Q, 2).algebra().clone();
        assert_eq!(commutator_quotient(&Bimodule::regular(&qc2)).unwrap().space.dim(), 2);
        let m2 = matrix_algebra(Q, 2).unwrap();
        assert_eq!(commutator_quotient(&Bimodule::regular(&m2)).unwrap().space.dim(), 1);
        let tp = truncated_poly(Q, 2).unwrap();
        assert_eq!(commutator_quotient(&Bimodule::regular(&tp)).unwrap().space.dim(), 2);
    }

    #[test]
    fn regular_and_twisted_bimodules_validate() {
        let a = cyclic_group(Q, 2).algebra().clone();
        assert!(check_bimodule(&Bimodule::regular(&a)).unwrap().passed());
        let s = AlgebraMorphism::endo_from_images(&a, vec![vec![(0, Q.one())], vec![(1, Q.int(-1))]]).unwrap();
        assert!(check_bimodule(&Bimodule::twisted(&s).unwrap()).unwrap().passed());
        let bad = LinMap::from_fn(Q, a.carrier(), a.carrier(), |c| vec![(c, Q.int(2))]);
        assert!(AlgebraMorphism::new(&a, &a, &bad).is_err());
    }

    #[test]
    fn symmetric_group_antipode_not_central() {
        assert!(symmetric_group3(Q).antipode_central().is_some());
        assert!(cyclic_group(Q, 3).antipode_central().is_none());
    }

    #[test]
    fn opposite_and_tensor() {
        let m2 = matrix_algebra(Q, 2).unwrap();
        assert!(check_algebra(&m2.opposite()).unwrap().passed());
        assert!(!m2.is_commutative());
        let t = m2.tensor(&cyclic_group(Q, 2).algebra().clone()).unwrap();
        assert_eq!(t.dim(), 8);
        assert!(check_algebra(&t).unwrap().passed());
    }
}
