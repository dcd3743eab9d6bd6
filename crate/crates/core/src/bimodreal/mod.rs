//! The bimodule realization: `A`-bimodules with the comonads `B̃ = −⊗A`
//! and `D̃ = A⊗−`, zeroth Hochschild homology as a left coalgebra,
//! connections, twists by algebra endomorphisms, and the explicit twisted
//! cyclic objects they are compared against.

mod connection;
mod explicit;
mod realization;
mod twist;

pub use connection::{check_connection, check_flat, perturbed_free, ConnectionDatum, ConnectionFactor};
pub use explicit::{
    abstract_twisted_object, identification, identified_abstract_object, keystone_mismatch, twist_power,
    twisted_cyclic_object, AbstractObject,
};
pub use realization::{EmRealization, HFunctor};
pub use twist::{check_em_datum, cyclic_datum, probes, twist_factorisation, CyclicDatum, TwistFactor};

#[cfg(test)]
mod tests;
