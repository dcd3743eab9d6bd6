//! Distributive laws, factorisations and their monoidal structure.

mod examples;
mod factorisation;
mod law;

pub use examples::{
    check_two_cycle, comonoid_candidate, flip_laws, hopf2_laws, hopf_laws, hopf_theta, monad_morphism_factorisation,
    qd_chi, qd_factorisation, rebracketing_law, FlipLaws, Hopf2Laws, HopfLaws, TwoCycle,
};
pub use factorisation::{
    check_comonoid, check_factorisation, check_factorisation_morphism, make_factorisation, tensor_factorisations,
    tensor_morphisms, ComonoidReport, Factorisation, FactorisationMorphism,
};
pub use law::{
    check_bd_law, check_braided, check_distlaw, check_yang_baxter, yang_baxter_legs, yang_baxter_report, DistLaw,
    Side,
};
