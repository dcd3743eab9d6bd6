use crate::error::{domain_err, Result};
use crate::exactla::{normalize, Field, LinMap, Scalar, Space, SparseVec};
use crate::report::Report;

fn expect_shape(what: &str, m: &LinMap, domain: &Space, codomain: &Space) -> Result<LinMap> {
    if m.ncols() != domain.dim() || m.rows() != codomain.dim() {
        return domain_err(format!(
            "{what} must be a {}x{} map, got {}x{}",
            codomain.dim(),
            domain.dim(),
            m.rows(),
            m.ncols()
        ));
    }
    m.clone().with_spaces(domain, codomain)
}

/// An associative unital algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct Algebra {
    carrier: Space,
    mul: LinMap,
    unit: LinMap,
}

impl Algebra {
    /// Validated constructor.
    pub fn new(carrier: &Space, mul: &LinMap, unit: &LinMap) -> Result<Algebra> {
        let a = Algebra::unchecked(carrier, mul, unit)?;
        check_algebra(&a)?.into_result()?;
        Ok(a)
    }

    /// Checks shapes only; the axioms are left to [`check_algebra`].
    pub fn unchecked(carrier: &Space, mul: &LinMap, unit: &LinMap) -> Result<Algebra> {
        if mul.field() != unit.field() {
            return domain_err("mul and unit live over different fields");
        }
        Ok(Algebra {
            carrier: carrier.clone(),
            mul: expect_shape("mul", mul, &carrier.tensor(carrier), carrier)?,
            unit: expect_shape("unit", unit, &Space::unit(), carrier)?,
        })
    }

    /// Builds `mul` from the product of basis elements.
    pub fn from_products<F>(field: Field, carrier: &Space, product: F, one: SparseVec) -> Result<Algebra>
    where
        F: Fn(usize, usize) -> SparseVec,
    {
        let n = carrier.dim();
        let mul = LinMap::from_fn(field, &carrier.tensor(carrier), carrier, |c| product(c / n, c % n));
        let unit = LinMap::vector(field, carrier, one);
        Algebra::new(carrier, &mul, &unit)
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn mul(&self) -> &LinMap {
        &self.mul
    }

    pub fn unit(&self) -> &LinMap {
        &self.unit
    }

    pub fn field(&self) -> Field {
        self.mul.field()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn id(&self) -> LinMap {
        LinMap::identity(self.field(), &self.carrier)
    }

    pub fn one(&self) -> SparseVec {
        self.unit.column(0).clone()
    }

    /// Basis vector by label.
    pub fn basis(&self, label: &str) -> Result<SparseVec> {
        match self.carrier.index_of(label) {
            Some(i) => Ok(vec![(i, self.field().one())]),
            None => domain_err(format!("no basis element {label:?} in {}", self.carrier.name())),
        }
    }

    pub fn product(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> SparseVec {
        let f = self.field();
        let n = self.dim();
        let mut ab = Vec::with_capacity(a.len() * b.len());
        for (i, x) in a {
            for (j, y) in b {
                ab.push((i * n + j, f.mul(x, y)));
            }
        }
        self.mul.apply(&normalize(f, ab))
    }

    /// Left multiplication by `a` as a map `A → A`.
    pub fn left_mult(&self, a: &[(usize, Scalar)]) -> LinMap {
        LinMap::from_fn(self.field(), &self.carrier, &self.carrier, |c| {
            self.product(a, &[(c, self.field().one())])
        })
    }

    pub fn right_mult(&self, a: &[(usize, Scalar)]) -> LinMap {
        LinMap::from_fn(self.field(), &self.carrier, &self.carrier, |c| {
            self.product(&[(c, self.field().one())], a)
        })
    }

    pub fn is_commutative(&self) -> bool {
        let flip = LinMap::flip(self.field(), &self.carrier, &self.carrier);
        self.mul.compose(&flip).map(|m| m == self.mul).unwrap_or(false)
    }

    /// The opposite algebra (same carrier, reversed product).
    pub fn opposite(&self) -> Algebra {
        let flip = LinMap::flip(self.field(), &self.carrier, &self.carrier);
        let carrier = self.carrier.renamed(&format!("{}op", self.carrier.name()));
        Algebra::unchecked(&carrier, &self.mul.compose(&flip).expect("square"), &self.unit)
            .expect("shapes preserved")
    }

    /// `A ⊗ B` with componentwise product.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        let f = self.field();
        let carrier = self.carrier.tensor(&other.carrier);
        let mid = LinMap::tensor_all(&[
            &self.id(),
            &LinMap::flip(f, &other.carrier, &self.carrier),
            &other.id(),
        ])?;
        let mul = self.mul.tensor(&other.mul)?.compose(&mid)?;
        let unit = self.unit.tensor(&other.unit)?;
        Algebra::unchecked(&carrier, &mul, &unit)
    }

    /// Inverse of `a`, if it exists.
    pub fn inverse(&self, a: &[(usize, Scalar)]) -> Result<SparseVec> {
        let inv = self.left_mult(a).invert()?;
        Ok(inv.apply(&self.one()))
    }
}

pub fn check_algebra(a: &Algebra) -> Result<Report> {
    let id = a.id();
    let c = a.carrier();
    let mut r = Report::new();
    r.equation(
        "associativity",
        &c.power(3),
        &a.mul.compose(&a.mul.tensor(&id)?)?,
        &a.mul.compose(&id.tensor(&a.mul)?)?,
    )?;
    r.equation("left unit", c, &a.mul.compose(&a.unit.tensor(&id)?)?, &id)?;
    r.equation("right unit", c, &a.mul.compose(&id.tensor(&a.unit)?)?, &id)?;
    Ok(r)
}

/// A coassociative counital coalgebra.
#[derive(Clone, Debug)]
pub struct Coalgebra {
    carrier: Space,
    comul: LinMap,
    counit: LinMap,
}

impl Coalgebra {
    pub fn new(carrier: &Space, comul: &LinMap, counit: &LinMap) -> Result<Coalgebra> {
        let c = Coalgebra::unchecked(carrier, comul, counit)?;
        check_coalgebra(&c)?.into_result()?;
        Ok(c)
    }

    pub fn unchecked(carrier: &Space, comul: &LinMap, counit: &LinMap) -> Result<Coalgebra> {
        if comul.field() != counit.field() {
            return domain_err("comul and counit live over different fields");
        }
        Ok(Coalgebra {
            carrier: carrier.clone(),
            comul: expect_shape("comul", comul, carrier, &carrier.tensor(carrier))?,
            counit: expect_shape("counit", counit, carrier, &Space::unit())?,
        })
    }

    /// Every basis vector group-like: `Δ(x) = x⊗x`, `ε(x) = 1`.
    pub fn group_like(field: Field, carrier: &Space) -> Coalgebra {
        let n = carrier.dim();
        let comul = LinMap::from_basis_map(field, carrier, &carrier.tensor(carrier), |i| i * n + i);
        let counit = LinMap::from_basis_map(field, carrier, &Space::unit(), |_| 0);
        Coalgebra::unchecked(carrier, &comul, &counit).expect("shapes")
    }

    /// The one-dimensional coalgebra `k`.
    pub fn trivial(field: Field) -> Coalgebra {
        Coalgebra::group_like(field, &Space::unit())
    }

    pub fn carrier(&self) -> &Space {
        &self.carrier
    }

    pub fn comul(&self) -> &LinMap {
        &self.comul
    }

    pub fn counit(&self) -> &LinMap {
        &self.counit
    }

    pub fn field(&self) -> Field {
        self.comul.field()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn id(&self) -> LinMap {
        LinMap::identity(self.field(), &self.carrier)
    }
}

pub fn check_coalgebra(c: &Coalgebra) -> Result<Report> {
    let id = c.id();
    let mut r = Report::new();
    r.equation(
        "coassociativity",
        &c.carrier,
        &c.comul.tensor(&id)?.compose(&c.comul)?,
        &id.tensor(&c.comul)?.compose(&c.comul)?,
    )?;
    r.equation("left counit", &c.carrier, &c.counit.tensor(&id)?.compose(&c.comul)?, &id)?;
    r.equation("right counit", &c.carrier, &id.tensor(&c.counit)?.compose(&c.comul)?, &id)?;
    Ok(r)
}

/// A Hopf algebra: an algebra and a coalgebra on one carrier with an antipode.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    algebra: Algebra,
    coalgebra: Coalgebra,
    antipode: LinMap,
}

impl HopfAlgebra {
    pub fn new(algebra: &Algebra, coalgebra: &Coalgebra, antipode: &LinMap) -> Result<HopfAlgebra> {
        let h = HopfAlgebra::unchecked(algebra, coalgebra, antipode)?;
        check_hopf(&h)?.into_result()?;
        Ok(h)
    }

    pub fn unchecked(algebra: &Algebra, coalgebra: &Coalgebra, antipode: &LinMap) -> Result<HopfAlgebra> {
        if algebra.dim() != coalgebra.dim() {
            return domain_err("algebra and coalgebra carriers differ");
        }
        let c = algebra.carrier();
        Ok(HopfAlgebra {
            algebra: algebra.clone(),
            coalgebra: Coalgebra::unchecked(c, coalgebra.comul(), coalgebra.counit())?,
            antipode: expect_shape("antipode", antipode, c, c)?,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn antipode(&self) -> &LinMap {
        &self.antipode
    }

    pub fn carrier(&self) -> &Space {
        self.algebra.carrier()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Whether every `S(u)` commutes with every `v`.
    pub fn antipode_central(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        let one = self.field().one();
        for u in 0..n {
            let su = self.antipode.column(u).clone();
            for v in 0..n {
                let bv = [(v, one.clone())];
                if self.algebra.product(&su, &bv) != self.algebra.product(&bv, &su) {
                    return Some((u, v));
                }
            }
        }
        None
    }
}

pub fn check_hopf(h: &HopfAlgebra) -> Result<Report> {
    let f = h.field();
    let a = &h.algebra;
    let c = &h.coalgebra;
    let u = a.carrier();
    let k = Space::unit();
    let mut r = check_algebra(a)?;
    r.merge(check_coalgebra(c)?);
    let mid = LinMap::tensor_all(&[&a.id(), &LinMap::flip(f, u, u), &a.id()])?;
    let mul2 = a.mul.tensor(&a.mul)?.compose(&mid)?;
    r.equation(
        "comultiplication is multiplicative",
        &u.tensor(u),
        &c.comul.compose(&a.mul)?,
        &mul2.compose(&c.comul.tensor(&c.comul)?)?,
    )?;
    r.equation(
        "comultiplication is unital",
        &k,
        &c.comul.compose(&a.unit)?,
        &a.unit.tensor(&a.unit)?,
    )?;
    r.equation(
        "counit is multiplicative",
        &u.tensor(u),
        &c.counit.compose(&a.mul)?,
        &c.counit.tensor(&c.counit)?,
    )?;
    r.equation(
        "counit is unital",
        &k,
        &c.counit.compose(&a.unit)?,
        &LinMap::identity(f, &k),
    )?;
    let conv = a.unit.compose(&c.counit)?;
    r.equation(
        "left antipode",
        u,
        &a.mul.compose(&h.antipode.tensor(&a.id())?)?.compose(&c.comul)?,
        &conv,
    )?;
    r.equation(
        "right antipode",
        u,
        &a.mul.compose(&a.id().tensor(&h.antipode)?)?.compose(&c.comul)?,
        &conv,
    )?;
    Ok(r)
}

/// A linear map between algebras, claimed to be multiplicative and unital.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    map: LinMap,
}

impl AlgebraMorphism {
    pub fn new(source: &Algebra, target: &Algebra, map: &LinMap) -> Result<AlgebraMorphism> {
        let m = AlgebraMorphism::unchecked(source, target, map)?;
        check_algebra_morphism(&m)?.into_result()?;
        Ok(m)
    }

    pub fn unchecked(source: &Algebra, target: &Algebra, map: &LinMap) -> Result<AlgebraMorphism> {
        Ok(AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            map: expect_shape("morphism", map, source.carrier(), target.carrier())?,
        })
    }

    pub fn identity(a: &Algebra) -> AlgebraMorphism {
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            map: a.id(),
        }
    }

    /// An endomorphism given by the images of the basis vectors.
    pub fn endo_from_images(a: &Algebra, images: Vec<SparseVec>) -> Result<AlgebraMorphism> {
        let map = LinMap::from_columns(a.field(), a.carrier(), a.carrier(), images)?;
        AlgebraMorphism::new(a, a, &map)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if other.target.dim() != self.source.dim() {
            return domain_err("morphisms are not composable");
        }
        Ok(AlgebraMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&other.map)?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_identity()
    }
}

pub fn check_algebra_morphism(m: &AlgebraMorphism) -> Result<Report> {
    let mut r = Report::new();
    let src = m.source.carrier();
    r.equation(
        "multiplicative",
        &src.tensor(src),
        &m.map.compose(m.source.mul())?,
        &m.target.mul().compose(&m.map.tensor(&m.map)?)?,
    )?;
    r.equation(
        "unital",
        &Space::unit(),
        &m.map.compose(m.source.unit())?,
        m.target.unit(),
    )?;
    Ok(r)
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Algebra) -> bool {
        self.mul == other.mul && self.unit == other.unit
    }
}

impl PartialEq for Coalgebra {
    fn eq(&self, other: &Coalgebra) -> bool {
        self.comul == other.comul && self.counit == other.counit
    }
}

impl PartialEq for HopfAlgebra {
    fn eq(&self, other: &HopfAlgebra) -> bool {
        self.algebra == other.algebra && self.coalgebra == other.coalgebra && self.antipode == other.antipode
    }
}

impl PartialEq for AlgebraMorphism {
    fn eq(&self, other: &AlgebraMorphism) -> bool {
        self.source == other.source && self.target == other.target && self.map == other.map
    }
}
