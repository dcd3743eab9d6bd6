//! Tensoring endofunctors `X ↦ P ⊗ X` of finite-dimensional vector spaces
//! and their natural transformations.
//!
//! Every functor is kept in left-tensoring form. A natural transformation
//! `P ⊗ − ⇒ Q ⊗ −` is the same thing as a linear map `P → Q` (its component
//! at `X` is `map ⊗ id_X`), so naturality never has to be checked and all
//! coherence diagrams become matrix equations between carrier maps.
//!
//! Right-tensoring data translate as follows. The functor `− ⊗ A` is
//! isomorphic to `A ⊗ −` through the symmetry. Composites reverse: `(X ⊗ A)
//! ⊗ A'` corresponds to `A' ⊗ A ⊗ X`. So a monad `− ⊗ A` becomes the
//! left-tensoring monad of the opposite algebra, and a law written with
//! right factors is conjugated by the flip before it is stored.

use crate::algcore::{check_algebra, check_coalgebra, Algebra, Coalgebra};
use crate::error::{domain_err, Result};
use crate::exactla::{Field, LinMap, Space};

/// The functor `X ↦ P ⊗ X`, remembering the generators `P` was built from.
#[derive(Clone, Debug)]
pub struct TensorFunctor {
    carrier: Space,
    word: Vec<Space>,
}

impl TensorFunctor {
    pub fn new(carrier: &Space) -> TensorFunctor {
        TensorFunctor {
            carrier: carrier.clone(),
            word: vec![carrier.clone()],
        }
    }

    /// The identity functor, carrier `k`.
    pub fn identity() -> TensorFunctor {
        TensorFunctor {
            carrier: Space::unit(),
            word: Vec::new(),
        }
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn word(&self) -> &[Space] {
        &self.word
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// `self ∘ other`, carrier `P ⊗ Q`.
    pub fn then_apply(&self, other: &TensorFunctor) -> TensorFunctor {
        compose_functors(self, other)
    }

    /// `n`-fold composite (the identity for `n = 0`).
    pub fn power(&self, n: usize) -> TensorFunctor {
        (0..n).fold(TensorFunctor::identity(), |acc, _| compose_functors(&acc, self))
    }
}

impl PartialEq for TensorFunctor {
    fn eq(&self, other: &TensorFunctor) -> bool {
        self.word.len() == other.word.len()
            && self
                .word
                .iter()
                .zip(&other.word)
                .all(|(a, b)| a.name() == b.name() && a.dim() == b.dim())
    }
}

pub fn compose_functors(f: &TensorFunctor, g: &TensorFunctor) -> TensorFunctor {
    let word: Vec<Space> = f.word.iter().chain(&g.word).cloned().collect();
    TensorFunctor {
        carrier: Space::product(word.clone()),
        word,
    }
}

/// A natural transformation between tensoring functors, given by its
/// carrier map.
#[derive(Clone, Debug)]
pub struct TensorNat {
    source: TensorFunctor,
    target: TensorFunctor,
    map: LinMap,
}

impl TensorNat {
    pub fn new(source: &TensorFunctor, target: &TensorFunctor, map: &LinMap) -> Result<TensorNat> {
        if map.ncols() != source.dim() || map.rows() != target.dim() {
            return domain_err(format!(
                "carrier map {}x{} does not match {} -> {}",
                map.rows(),
                map.ncols(),
                source.carrier,
                target.carrier
            ));
        }
        Ok(TensorNat {
            source: source.clone(),
            target: target.clone(),
            map: map.clone().with_spaces(&source.carrier, &target.carrier)?,
        })
    }

    pub fn identity(field: Field, f: &TensorFunctor) -> TensorNat {
        TensorNat {
            source: f.clone(),
            target: f.clone(),
            map: LinMap::identity(field, &f.carrier),
        }
    }

    pub fn source(&self) -> &TensorFunctor {
        &self.source
    }

    pub fn target(&self) -> &TensorFunctor {
        &self.target
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    pub fn field(&self) -> Field {
        self.map.field()
    }

    /// The component at `X`: `map ⊗ id_X`.
    pub fn component(&self, x: &Space) -> Result<LinMap> {
        self.map.tensor(&LinMap::identity(self.field(), x))
    }

    /// Vertical composite `self ∘ other`.
    pub fn compose(&self, other: &TensorNat) -> Result<TensorNat> {
        TensorNat::new(&other.source, &self.target, &self.map.compose(&other.map)?)
    }

    /// Horizontal composite `self other`, carrier map `self ⊗ other`.
    pub fn horizontal(&self, other: &TensorNat) -> Result<TensorNat> {
        TensorNat::new(
            &compose_functors(&self.source, &other.source),
            &compose_functors(&self.target, &other.target),
            &self.map.tensor(&other.map)?,
        )
    }
}

impl PartialEq for TensorNat {
    fn eq(&self, other: &TensorNat) -> bool {
        self.map == other.map
    }
}

/// `left n right`, with carrier map `id ⊗ n ⊗ id`.
pub fn whisker(n: &TensorNat, left: &TensorFunctor, right: &TensorFunctor) -> Result<TensorNat> {
    let f = n.field();
    TensorNat::identity(f, left)
        .horizontal(n)?
        .horizontal(&TensorNat::identity(f, right))
}

/// A comonad `C ⊗ −` coming from a coalgebra `C`.
#[derive(Clone, Debug)]
pub struct TensorComonad {
    functor: TensorFunctor,
    coalgebra: Coalgebra,
}

impl TensorComonad {
    pub fn from_coalgebra(c: &Coalgebra) -> Result<TensorComonad> {
        check_coalgebra(c)?.into_result()?;
        Ok(TensorComonad {
            functor: TensorFunctor::new(c.carrier()),
            coalgebra: c.clone(),
        })
    }

    pub fn identity(field: Field) -> TensorComonad {
        TensorComonad {
            functor: TensorFunctor::new(&Space::unit()),
            coalgebra: Coalgebra::trivial(field),
        }
    }

    pub fn functor(&self) -> &TensorFunctor {
        &self.functor
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn carrier(&self) -> &Space {
        self.coalgebra.carrier()
    }

    pub fn dim(&self) -> usize {
        self.coalgebra.dim()
    }

    pub fn comul(&self) -> &LinMap {
        self.coalgebra.comul()
    }

    pub fn counit(&self) -> &LinMap {
        self.coalgebra.counit()
    }

    pub fn comul_nat(&self) -> TensorNat {
        TensorNat::new(&self.functor, &self.functor.power(2), self.comul()).expect("shapes")
    }

    pub fn counit_nat(&self) -> TensorNat {
        TensorNat::new(&self.functor, &TensorFunctor::identity(), self.counit()).expect("shapes")
    }
}

/// A monad `A ⊗ −` coming from an algebra `A`.
#[derive(Clone, Debug)]
pub struct TensorMonad {
    functor: TensorFunctor,
    algebra: Algebra,
}

impl TensorMonad {
    pub fn from_algebra(a: &Algebra) -> Result<TensorMonad> {
        check_algebra(a)?.into_result()?;
        Ok(TensorMonad {
            functor: TensorFunctor::new(a.carrier()),
            algebra: a.clone(),
        })
    }

    pub fn functor(&self) -> &TensorFunctor {
        &self.functor
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn carrier(&self) -> &Space {
        self.algebra.carrier()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn mul(&self) -> &LinMap {
        self.algebra.mul()
    }

    pub fn unit(&self) -> &LinMap {
        self.algebra.unit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::{cyclic_group, field_algebra, matrix_algebra};

    const Q: Field = Field::Rationals;

    #[test]
    fn composition_is_strict() {
        let f = TensorFunctor::new(&Space::indexed("P", 2));
        let g = TensorFunctor::new(&Space::indexed("Q", 3));
        let h = TensorFunctor::new(&Space::indexed("R", 2));
        assert_eq!(compose_functors(&f, &g).dim(), 6);
        let id = TensorFunctor::identity();
        assert_eq!(compose_functors(&id, &f), f);
        assert_eq!(compose_functors(&f, &id), f);
        let l = compose_functors(&compose_functors(&f, &g), &h);
        let r = compose_functors(&f, &compose_functors(&g, &h));
        assert_eq!(l, r);
        assert_eq!(l.carrier().dim(), r.carrier().dim());
    }

    #[test]
    fn comonads_and_monads_from_structures() {
        let c = cyclic_group(Q, 2).coalgebra().clone();
        let t = TensorComonad::from_coalgebra(&c).unwrap();
        assert_eq!((t.comul().rows(), t.comul().ncols()), (4, 2));
        assert_eq!(TensorComonad::identity(Q).dim(), 1);
        assert_eq!(TensorMonad::from_algebra(&matrix_algebra(Q, 2).unwrap()).unwrap().dim(), 4);
        assert_eq!(TensorMonad::from_algebra(&field_algebra(Q)).unwrap().dim(), 1);
    }

    #[test]
    fn whiskering_shapes() {
        let two = TensorFunctor::new(&Space::indexed("T", 2));
        let src = TensorFunctor::new(&Space::indexed("S", 4));
        let chi = TensorNat::identity(Q, &src);
        let w = whisker(&chi, &two, &TensorFunctor::identity()).unwrap();
        assert_eq!(w.map().ncols(), 8);
        assert!(w.map().is_identity());
        let u = Space::indexed("U", 2);
        let uu = TensorFunctor::new(&u.tensor(&u));
        let flip = TensorNat::new(&uu, &uu, &LinMap::flip(Q, &u, &u)).unwrap();
        let one = TensorFunctor::new(&Space::unit());
        assert_eq!(whisker(&flip, &one, &one).unwrap().map().dense_rows(), flip.map().dense_rows());
    }
}
