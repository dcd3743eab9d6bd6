use std::sync::Arc;

use super::{Factor, LeftFunctor, Realization};
use crate::algcore::Coalgebra;
use crate::distfact::{DistLaw, Factorisation, Side};
use crate::error::{domain_err, Result};
use crate::exactla::{Field, LinMap, Space};

/// Tensoring comonads `T⊗−`, `C⊗−` on vector spaces with `χ⊗−`.
#[derive(Clone, Debug)]
pub struct TensorRealization {
    chi: DistLaw,
    t: Coalgebra,
    c: Coalgebra,
}

impl TensorRealization {
    /// Needs a law between two comonads.
    pub fn new(chi: &DistLaw) -> Result<TensorRealization> {
        match (chi.left(), chi.right()) {
            (Side::Comonad(t), Side::Comonad(c)) => Ok(TensorRealization {
                chi: chi.clone(),
                t: t.clone(),
                c: c.clone(),
            }),
            _ => domain_err("the tensor realization needs a law between two comonads"),
        }
    }

    pub fn chi(&self) -> &DistLaw {
        &self.chi
    }

    fn id(&self, x: &Space) -> LinMap {
        LinMap::identity(self.field(), x)
    }
}

impl Realization for TensorRealization {
    type Obj = Space;

    fn field(&self) -> Field {
        self.chi.field()
    }

    fn space(&self, x: &Space) -> Space {
        x.clone()
    }

    fn t_obj(&self, x: &Space) -> Space {
        self.t.carrier().tensor(x)
    }

    fn c_obj(&self, x: &Space) -> Space {
        self.c.carrier().tensor(x)
    }

    fn t_map(&self, f: &LinMap) -> Result<LinMap> {
        self.t.id().tensor(f)
    }

    fn c_map(&self, f: &LinMap) -> Result<LinMap> {
        self.c.id().tensor(f)
    }

    fn t_counit(&self, x: &Space) -> Result<LinMap> {
        self.t.counit().tensor(&self.id(x))
    }

    fn t_comul(&self, x: &Space) -> Result<LinMap> {
        self.t.comul().tensor(&self.id(x))
    }

    fn c_counit(&self, x: &Space) -> Result<LinMap> {
        self.c.counit().tensor(&self.id(x))
    }

    fn c_comul(&self, x: &Space) -> Result<LinMap> {
        self.c.comul().tensor(&self.id(x))
    }

    fn chi(&self, x: &Space) -> Result<LinMap> {
        self.chi.map().tensor(&self.id(x))
    }
}

impl Factor<TensorRealization> for Factorisation {
    fn obj(&self, x: &Space) -> Space {
        self.middle().tensor(x)
    }

    fn map(&self, f: &LinMap, _x: &Space, _y: &Space) -> Result<LinMap> {
        LinMap::identity(f.field(), self.middle()).tensor(f)
    }

    fn sigma(&self, x: &Space) -> Result<LinMap> {
        self.sigma().map().tensor(&LinMap::identity(self.chi().field(), x))
    }

    fn gamma(&self, x: &Space) -> Result<LinMap> {
        self.gamma().map().tensor(&LinMap::identity(self.chi().field(), x))
    }
}

/// `N⊗−` with `λ⊗−` for a carrier map `λ: N⊗C → N⊗T`.
#[derive(Clone, Debug)]
pub struct TensorLeft {
    carrier: Space,
    lambda: LinMap,
}

impl TensorLeft {
    pub fn new(r: &TensorRealization, carrier: &Space, lambda: &LinMap) -> Result<TensorLeft> {
        let src = carrier.tensor(r.c.carrier());
        let tgt = carrier.tensor(r.t.carrier());
        if lambda.ncols() != src.dim() || lambda.rows() != tgt.dim() {
            return domain_err("lambda must map N⊗C to N⊗T");
        }
        Ok(TensorLeft {
            carrier: carrier.clone(),
            lambda: lambda.clone().with_spaces(&src, &tgt)?,
        })
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn lambda_map(&self) -> &LinMap {
        &self.lambda
    }

    pub fn into_arc(self) -> Arc<dyn LeftFunctor<TensorRealization>> {
        Arc::new(self)
    }
}

impl LeftFunctor<TensorRealization> for TensorLeft {
    fn apply(&self, x: &Space) -> Result<Space> {
        Ok(self.carrier.tensor(x))
    }

    fn map(&self, f: &LinMap, _x: &Space, _y: &Space) -> Result<LinMap> {
        LinMap::identity(f.field(), &self.carrier).tensor(f)
    }

    fn lambda(&self, x: &Space) -> Result<LinMap> {
        self.lambda.tensor(&LinMap::identity(self.lambda.field(), x))
    }
}
