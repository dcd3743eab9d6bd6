use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::{Arc, Mutex};

use crate::admissible::{LeftFunctor, Realization};
use crate::algcore::{commutator_quotient, Algebra, Bimodule};
use crate::error::{domain_err, Result};
use crate::exactla::{Field, LinMap, Quotient, Space};

/// `A`-bimodules with the lifted comonads `B̃X = X⊗A`, `D̃X = A⊗X` and the
/// rebracketing law between them, which is the identity on `A⊗X⊗A`.
#[derive(Clone, Debug)]
pub struct EmRealization {
    algebra: Algebra,
    unit_left: LinMap,
    unit_right: LinMap,
}

impl EmRealization {
    pub fn new(a: &Algebra) -> EmRealization {
        let aa = a.carrier().tensor(a.carrier());
        // a ↦ 1⊗a and a ↦ a⊗1 as maps out of A.
        let unit_left = a.unit().tensor(&a.id()).and_then(|m| m.with_spaces(a.carrier(), &aa)).expect("shapes");
        let unit_right = a.id().tensor(a.unit()).and_then(|m| m.with_spaces(a.carrier(), &aa)).expect("shapes");
        EmRealization {
            algebra: a.clone(),
            unit_left,
            unit_right,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    fn id(&self, x: &Bimodule) -> LinMap {
        x.id()
    }

    pub(crate) fn check_object(&self, x: &Bimodule) -> Result<()> {
        if x.left_algebra().dim() != self.algebra.dim() || x.right_algebra().dim() != self.algebra.dim() {
            return domain_err("object is not a bimodule over the realization's algebra");
        }
        Ok(())
    }
}

impl Realization for EmRealization {
    type Obj = Bimodule;

    fn field(&self) -> Field {
        self.algebra.field()
    }

    fn space(&self, x: &Bimodule) -> Space {
        x.carrier().clone()
    }

    fn t_obj(&self, x: &Bimodule) -> Bimodule {
        let a = &self.algebra;
        let left = x.left().tensor(&a.id()).expect("shapes");
        let right = x.id().tensor(a.mul()).expect("shapes");
        Bimodule::unchecked(a, a, &x.carrier().tensor(a.carrier()), &left, &right).expect("shapes")
    }

    fn c_obj(&self, x: &Bimodule) -> Bimodule {
        let a = &self.algebra;
        let left = a.mul().tensor(&x.id()).expect("shapes");
        let right = a.id().tensor(x.right()).expect("shapes");
        Bimodule::unchecked(a, a, &a.carrier().tensor(x.carrier()), &left, &right).expect("shapes")
    }

    fn t_map(&self, f: &LinMap) -> Result<LinMap> {
        f.tensor(&self.algebra.id())
    }

    fn c_map(&self, f: &LinMap) -> Result<LinMap> {
        self.algebra.id().tensor(f)
    }

    fn t_counit(&self, x: &Bimodule) -> Result<LinMap> {
        Ok(x.right().clone())
    }

    fn t_comul(&self, x: &Bimodule) -> Result<LinMap> {
        self.id(x).tensor(&self.unit_left)
    }

    fn c_counit(&self, x: &Bimodule) -> Result<LinMap> {
        Ok(x.left().clone())
    }

    fn c_comul(&self, x: &Bimodule) -> Result<LinMap> {
        self.unit_right.tensor(&self.id(x))
    }

    fn chi(&self, x: &Bimodule) -> Result<LinMap> {
        let a = self.algebra.carrier();
        Ok(LinMap::identity(self.field(), &a.tensor(x.carrier()).tensor(a)))
    }
}

/// Hash of a bimodule's actions, used to memoise quotients.
pub(crate) fn fingerprint(x: &Bimodule) -> u64 {
    let mut h = DefaultHasher::new();
    x.dim().hash(&mut h);
    x.left().hash(&mut h);
    x.right().hash(&mut h);
    h.finish()
}

/// Zeroth Hochschild homology `H(X) = X / [A, X]`, with
/// `λ_X: H(D̃X) → H(B̃X)`, `[a⊗m] ↦ [m·a ⊗ 1]`.
pub struct HFunctor {
    realization: Arc<EmRealization>,
    cache: Mutex<HashMap<u64, Arc<Quotient>>>,
}

impl HFunctor {
    pub fn new(r: &Arc<EmRealization>) -> HFunctor {
        HFunctor {
            realization: r.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn quotient(&self, x: &Bimodule) -> Result<Arc<Quotient>> {
        self.realization.check_object(x)?;
        let key = fingerprint(x);
        if let Some(q) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(q.clone());
        }
        let q = Arc::new(commutator_quotient(x)?);
        self.cache.lock().expect("cache lock").insert(key, q.clone());
        Ok(q)
    }
}

impl LeftFunctor<EmRealization> for HFunctor {
    fn apply(&self, x: &Bimodule) -> Result<Space> {
        Ok(self.quotient(x)?.space.clone())
    }

    fn map(&self, f: &LinMap, x: &Bimodule, y: &Bimodule) -> Result<LinMap> {
        let (qx, qy) = (self.quotient(x)?, self.quotient(y)?);
        qy.projection.compose(&f.compose(&qx.section)?)
    }

    fn lambda(&self, x: &Bimodule) -> Result<LinMap> {
        let r = &self.realization;
        let a = r.algebra();
        let fld = a.field();
        let (cx, tx) = (r.c_obj(x), r.t_obj(x));
        // a⊗m ↦ m·a ↦ m·a ⊗ 1
        let swap = LinMap::flip(fld, a.carrier(), x.carrier());
        let act = x.right().compose(&swap)?;
        let one = x.id().tensor(a.unit())?;
        let carrier = one.compose(&act)?;
        self.map(&carrier, &cx, &tx)
    }
}
