//! The bundle format: a TOML document of named, cross-referenced entries.
//!
//! ```toml
//! field = "Q"
//!
//! [spaces.QC2]
//! basis = ["e", "g"]
//!
//! [linmaps."QC2.unit"]
//! source = "k"
//! target = "QC2"
//! entries = ["0 0 1"]          # "row column coefficient"
//!
//! [algebras.QC2]
//! space = "QC2"
//! mul = "QC2.mul"
//! unit = "QC2.unit"
//! ```
//!
//! Space expressions are names joined by `⊗` (or `*`); `k` is the ground
//! field unless declared. Law sides are `comonad:<coalgebra>`,
//! `monad:<algebra>` or `plain:<space expression>`.

use std::collections::BTreeMap;
use std::ops::Range;

use dlf::algcore::{
    check_algebra, check_algebra_morphism, check_bimodule, check_coalgebra, check_hopf, Algebra, AlgebraMorphism,
    Bimodule, Coalgebra, HopfAlgebra,
};
use dlf::distfact::{check_distlaw, check_factorisation, DistLaw, Factorisation, Side};
use dlf::exactla::{normalize, Field, LinMap, Space, SparseVec};
use dlf::Report;
use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::{CliError, CliResult, Context, Kind};

type Name = Spanned<String>;

fn name(s: impl Into<String>) -> Name {
    Spanned::new(0..0, s.into())
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<Name>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    spaces: BTreeMap<String, RawSpace>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    linmaps: BTreeMap<String, RawLinMap>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    coalgebras: BTreeMap<String, RawCoalgebra>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    hopf_algebras: BTreeMap<String, RawHopf>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    bimodules: BTreeMap<String, RawBimodule>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    morphisms: BTreeMap<String, RawMorphism>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    laws: BTreeMap<String, RawLaw>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    factorisations: BTreeMap<String, RawFactorisation>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    data: BTreeMap<String, RawDatum>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<Spanned<usize>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawLinMap {
    source: Name,
    target: Name,
    entries: Vec<Name>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    space: Name,
    mul: Name,
    unit: Name,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawCoalgebra {
    space: Name,
    comul: Name,
    counit: Name,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawHopf {
    algebra: Name,
    coalgebra: Name,
    antipode: Name,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawBimodule {
    left_algebra: Name,
    right_algebra: Name,
    space: Name,
    left: Name,
    right: Name,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    source: Name,
    target: Name,
    map: Name,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawLaw {
    left: Name,
    right: Name,
    map: Name,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawFactorisation {
    law: Name,
    middle: Name,
    sigma: Name,
    gamma: Name,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    kind: Name,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebra: Option<Name>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    twist: Option<Name>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    law: Option<Name>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    module: Option<Name>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rho: Option<Name>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left: Option<Name>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<Name>,
}

/// An admissible datum as stored in a bundle.
#[derive(Clone, Debug)]
pub enum Datum {
    /// The cyclic datum of an algebra in the bimodule realization, optionally
    /// acted on by the twist factorisation of a morphism.
    Cyclic { algebra: String, twist: Option<String> },
    /// A right coalgebra `(M, ρ: T⊗M → C⊗M)` and a left functor
    /// `(N ⊗ −, λ: N⊗C → N⊗T)` for a law between two comonads.
    Tensor {
        law: String,
        module: Space,
        rho: LinMap,
        left: Space,
        lambda: LinMap,
    },
}

impl PartialEq for Datum {
    fn eq(&self, other: &Datum) -> bool {
        match (self, other) {
            (Datum::Cyclic { algebra: a, twist: t }, Datum::Cyclic { algebra: b, twist: u }) => a == b && t == u,
            (
                Datum::Tensor { law, module, rho, left, lambda },
                Datum::Tensor { law: law2, module: module2, rho: rho2, left: left2, lambda: lambda2 },
            ) => {
                law == law2
                    && module.labels() == module2.labels()
                    && rho == rho2
                    && left.labels() == left2.labels()
                    && lambda == lambda2
            }
            _ => false,
        }
    }
}

/// A resolved bundle. Every map is keyed by entry name.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub field: Field,
    pub spaces: BTreeMap<String, Space>,
    pub linmaps: BTreeMap<String, LinMap>,
    pub algebras: BTreeMap<String, Algebra>,
    pub coalgebras: BTreeMap<String, Coalgebra>,
    pub hopf_algebras: BTreeMap<String, HopfAlgebra>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub morphisms: BTreeMap<String, AlgebraMorphism>,
    pub laws: BTreeMap<String, DistLaw>,
    pub factorisations: BTreeMap<String, Factorisation>,
    pub data: BTreeMap<String, Datum>,
}

/// Whether structured entries are validated while loading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    Eager,
    Deferred,
}

impl Bundle {
    pub fn new(field: Field) -> Bundle {
        Bundle {
            field,
            spaces: BTreeMap::new(),
            linmaps: BTreeMap::new(),
            algebras: BTreeMap::new(),
            coalgebras: BTreeMap::new(),
            hopf_algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            laws: BTreeMap::new(),
            factorisations: BTreeMap::new(),
            data: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str, field: Option<Field>, validation: Validation) -> CliResult<Bundle> {
        Bundle::parse_over(text, field, validation, None)
    }

    /// Parses `text` with the entries of `base` in scope for references.
    pub fn parse_over(text: &str, field: Option<Field>, validation: Validation, base: Option<&Bundle>) -> CliResult<Bundle> {
        let raw: RawBundle = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map(|s| line_col(text, s.start)).unwrap_or((1, 1));
            CliError::parse_at(line, column, e.message())
        })?;
        let declared = match &raw.field {
            Some(f) => Some(
                f.get_ref()
                    .parse::<Field>()
                    .map_err(|e| at(text, f.span(), e))?,
            ),
            None => None,
        };
        let field = match (field, declared, base) {
            (Some(f), _, _) => f,
            (None, Some(f), _) => f,
            (None, None, Some(b)) => b.field,
            (None, None, None) => Field::Rationals,
        };
        let mut r = Resolver {
            text,
            raw: &raw,
            base,
            validation,
            out: Bundle::new(field),
        };
        r.resolve_all()?;
        Ok(r.out)
    }

    /// Canonical TOML: structured entries own their maps (named
    /// `<entry>.<role>`), spaces and shared structure are emitted once.
    pub fn to_toml(&self) -> String {
        let mut w = Writer::new(self);
        w.emit();
        let mut text = toml::to_string_pretty(&w.raw).expect("bundle serialises");
        if !text.ends_with('\n') {
            text.push('\n');
        }
        text
    }

    /// The single datum, or the one named.
    pub fn datum(&self, wanted: Option<&str>) -> CliResult<(String, Datum)> {
        pick(&self.data, wanted, "datum")
    }

    pub fn factorisation(&self, wanted: Option<&str>) -> CliResult<(String, Factorisation)> {
        pick(&self.factorisations, wanted, "factorisation")
    }

    pub fn algebra(&self, wanted: Option<&str>) -> CliResult<(String, Algebra)> {
        pick(&self.algebras, wanted, "algebra")
    }

    pub fn morphism(&self, wanted: Option<&str>) -> CliResult<(String, AlgebraMorphism)> {
        pick(&self.morphisms, wanted, "morphism")
    }

    /// Runs every checker on every structured entry, in file order of kinds.
    pub fn check_all(&self) -> CliResult<Vec<(String, Report)>> {
        let mut out = Vec::new();
        for (n, a) in &self.algebras {
            out.push((format!("algebras.{n}"), check_algebra(a)?));
        }
        for (n, c) in &self.coalgebras {
            out.push((format!("coalgebras.{n}"), check_coalgebra(c)?));
        }
        for (n, h) in &self.hopf_algebras {
            out.push((format!("hopf_algebras.{n}"), check_hopf(h)?));
        }
        for (n, b) in &self.bimodules {
            out.push((format!("bimodules.{n}"), check_bimodule(b)?));
        }
        for (n, m) in &self.morphisms {
            out.push((format!("morphisms.{n}"), check_algebra_morphism(m)?));
        }
        for (n, l) in &self.laws {
            out.push((format!("laws.{n}"), check_distlaw(l)?));
        }
        for (n, f) in &self.factorisations {
            out.push((format!("factorisations.{n}"), check_factorisation(f)?));
        }
        for (n, d) in &self.data {
            out.push((format!("data.{n}"), crate::commands::check_datum(self, d)?));
        }
        Ok(out)
    }
}

fn pick<T: Clone>(map: &BTreeMap<String, T>, wanted: Option<&str>, what: &str) -> CliResult<(String, T)> {
    match wanted {
        Some(n) => match map.get(n) {
            Some(v) => Ok((n.to_string(), v.clone())),
            None => Err(CliError::new(Kind::Parse, format!("no {what} named {n:?}"))),
        },
        None => {
            let mut it = map.iter();
            match (it.next(), it.next()) {
                (Some((n, v)), None) => Ok((n.clone(), v.clone())),
                (None, _) => Err(CliError::new(Kind::Parse, format!("the bundle has no {what}"))),
                _ => Err(CliError::new(
                    Kind::Parse,
                    format!("the bundle has several entries of kind {what}; name one with #<name>"),
                )),
            }
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn at(text: &str, span: Range<usize>, msg: impl std::fmt::Display) -> CliError {
    if span.is_empty() && span.start == 0 {
        return CliError::new(Kind::Parse, format!("parse error: {msg}"));
    }
    let (line, column) = line_col(text, span.start);
    CliError::parse_at(line, column, msg)
}

struct Resolver<'a> {
    text: &'a str,
    raw: &'a RawBundle,
    base: Option<&'a Bundle>,
    validation: Validation,
    out: Bundle,
}

impl Resolver<'_> {
    fn eager(&self) -> bool {
        self.validation == Validation::Eager
    }

    fn err(&self, n: &Name, msg: impl std::fmt::Display) -> CliError {
        at(self.text, n.span(), msg)
    }

    fn resolve_all(&mut self) -> CliResult<()> {
        let raw = self.raw;
        for k in raw.spaces.keys() {
            self.space_named(k, None)?;
        }
        for k in raw.linmaps.keys() {
            self.linmap(&name(k.clone()))?;
        }
        for k in raw.algebras.keys() {
            self.algebra(&name(k.clone()))?;
        }
        for k in raw.coalgebras.keys() {
            self.coalgebra(&name(k.clone()))?;
        }
        for (k, h) in &raw.hopf_algebras {
            let a = self.algebra(&h.algebra)?;
            let c = self.coalgebra(&h.coalgebra)?;
            let s = self.linmap(&h.antipode)?;
            let hopf = if self.eager() {
                HopfAlgebra::new(&a, &c, &s).context(format!("hopf_algebras.{k}"))?
            } else {
                HopfAlgebra::unchecked(&a, &c, &s).context(format!("hopf_algebras.{k}"))?
            };
            self.out.hopf_algebras.insert(k.clone(), hopf);
        }
        for (k, b) in &raw.bimodules {
            let l = self.algebra(&b.left_algebra)?;
            let r = self.algebra(&b.right_algebra)?;
            let sp = self.space_expr(&b.space)?;
            let (la, ra) = (self.linmap(&b.left)?, self.linmap(&b.right)?);
            let bm = if self.eager() {
                Bimodule::new(&l, &r, &sp, &la, &ra)
            } else {
                Bimodule::unchecked(&l, &r, &sp, &la, &ra)
            }
            .context(format!("bimodules.{k}"))?;
            self.out.bimodules.insert(k.clone(), bm);
        }
        for (k, m) in &raw.morphisms {
            let s = self.algebra(&m.source)?;
            let t = self.algebra(&m.target)?;
            let map = self.linmap(&m.map)?;
            let mor = if self.eager() {
                AlgebraMorphism::new(&s, &t, &map)
            } else {
                AlgebraMorphism::unchecked(&s, &t, &map)
            }
            .context(format!("morphisms.{k}"))?;
            self.out.morphisms.insert(k.clone(), mor);
        }
        for k in raw.laws.keys() {
            self.law(&name(k.clone()))?;
        }
        for (k, f) in &raw.factorisations {
            let chi = self.law(&f.law)?;
            let middle = self.space_expr(&f.middle)?;
            let (s, g) = (self.linmap(&f.sigma)?, self.linmap(&f.gamma)?);
            let fac = if self.eager() {
                Factorisation::new(&chi, &middle, &s, &g)
            } else {
                Factorisation::unchecked(&chi, &middle, &s, &g)
            }
            .context(format!("factorisations.{k}"))?;
            self.out.factorisations.insert(k.clone(), fac);
        }
        for (k, d) in &raw.data {
            let datum = self.datum(k, d)?;
            self.out.data.insert(k.clone(), datum);
        }
        Ok(())
    }

    fn space_named(&mut self, n: &str, at_name: Option<&Name>) -> CliResult<Space> {
        if let Some(s) = self.out.spaces.get(n) {
            return Ok(s.clone());
        }
        let space = match self.raw.spaces.get(n) {
            Some(raw) => match (&raw.basis, &raw.dim) {
                (Some(b), None) => Space::new(n, b.clone()).context(format!("spaces.{n}"))?,
                (None, Some(d)) => Space::indexed(n, *d.get_ref()),
                _ => {
                    return Err(CliError::new(
                        Kind::Parse,
                        format!("parse error: spaces.{n} needs exactly one of basis or dim"),
                    ))
                }
            },
            None => match self.base.and_then(|b| b.spaces.get(n)) {
                Some(s) => s.clone(),
                None if n == "k" => Space::unit(),
                None => {
                    let msg = format!("unknown space {n:?}");
                    return Err(match at_name {
                        Some(a) => self.err(a, msg),
                        None => CliError::new(Kind::Parse, msg),
                    });
                }
            },
        };
        self.out.spaces.insert(n.to_string(), space.clone());
        Ok(space)
    }

    fn space_expr(&mut self, e: &Name) -> CliResult<Space> {
        let factors = e
            .get_ref()
            .split(['⊗', '*'])
            .map(str::trim)
            .map(|f| {
                if f.is_empty() {
                    Err(self.err(e, "empty factor in space expression"))
                } else {
                    self.space_named(f, Some(e))
                }
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Space::product(factors))
    }

    fn linmap(&mut self, n: &Name) -> CliResult<LinMap> {
        let key = n.get_ref();
        if let Some(m) = self.out.linmaps.get(key) {
            return Ok(m.clone());
        }
        let Some(raw) = self.raw.linmaps.get(key) else {
            return match self.base.and_then(|b| b.linmaps.get(key)) {
                Some(m) => Ok(m.clone()),
                None => Err(self.err(n, format!("unknown linmap {key:?}"))),
            };
        };
        let source = self.space_expr(&raw.source)?;
        let target = self.space_expr(&raw.target)?;
        let f = self.out.field;
        let mut cols: Vec<Vec<_>> = vec![Vec::new(); source.dim()];
        for entry in &raw.entries {
            let parts: Vec<&str> = entry.get_ref().split_whitespace().collect();
            let [r, c, x] = parts.as_slice() else {
                return Err(self.err(entry, "an entry is \"row column coefficient\""));
            };
            let (r, c): (usize, usize) = match (r.parse(), c.parse()) {
                (Ok(r), Ok(c)) => (r, c),
                _ => return Err(self.err(entry, "row and column must be non-negative integers")),
            };
            if r >= target.dim() || c >= source.dim() {
                return Err(self.err(
                    entry,
                    format!("entry ({r}, {c}) outside a {}x{} map", target.dim(), source.dim()),
                ));
            }
            let x = f.parse_scalar(x).map_err(|e| self.err(entry, e))?;
            cols[c].push((r, x));
        }
        let cols: Vec<SparseVec> = cols.into_iter().map(|v| normalize(f, v)).collect();
        let map = LinMap::from_columns(f, &source, &target, cols).context(format!("linmaps.{key}"))?;
        self.out.linmaps.insert(key.clone(), map.clone());
        Ok(map)
    }

    fn algebra(&mut self, n: &Name) -> CliResult<Algebra> {
        let key = n.get_ref();
        if let Some(a) = self.out.algebras.get(key) {
            return Ok(a.clone());
        }
        let Some(raw) = self.raw.algebras.get(key) else {
            return match self.base.and_then(|b| b.algebras.get(key)) {
                Some(a) => Ok(a.clone()),
                None => Err(self.err(n, format!("unknown algebra {key:?}"))),
            };
        };
        let sp = self.space_expr(&raw.space)?;
        let (m, u) = (self.linmap(&raw.mul)?, self.linmap(&raw.unit)?);
        let a = if self.eager() {
            Algebra::new(&sp, &m, &u)
        } else {
            Algebra::unchecked(&sp, &m, &u)
        }
        .context(format!("algebras.{key}"))?;
        self.out.algebras.insert(key.clone(), a.clone());
        Ok(a)
    }

    fn coalgebra(&mut self, n: &Name) -> CliResult<Coalgebra> {
        let key = n.get_ref();
        if let Some(c) = self.out.coalgebras.get(key) {
            return Ok(c.clone());
        }
        let Some(raw) = self.raw.coalgebras.get(key) else {
            return match self.base.and_then(|b| b.coalgebras.get(key)) {
                Some(c) => Ok(c.clone()),
                None => Err(self.err(n, format!("unknown coalgebra {key:?}"))),
            };
        };
        let sp = self.space_expr(&raw.space)?;
        let (d, e) = (self.linmap(&raw.comul)?, self.linmap(&raw.counit)?);
        let c = if self.eager() {
            Coalgebra::new(&sp, &d, &e)
        } else {
            Coalgebra::unchecked(&sp, &d, &e)
        }
        .context(format!("coalgebras.{key}"))?;
        self.out.coalgebras.insert(key.clone(), c.clone());
        Ok(c)
    }

    fn side(&mut self, s: &Name) -> CliResult<Side> {
        let Some((kind, rest)) = s.get_ref().split_once(':') else {
            return Err(self.err(s, "a law side is comonad:<name>, monad:<name> or plain:<space>"));
        };
        let inner = Spanned::new(s.span(), rest.trim().to_string());
        match kind.trim() {
            "comonad" => Ok(Side::Comonad(self.coalgebra(&inner)?)),
            "monad" => Ok(Side::Monad(self.algebra(&inner)?)),
            "plain" => Ok(Side::Plain(self.space_expr(&inner)?)),
            other => Err(self.err(s, format!("unknown law side kind {other:?}"))),
        }
    }

    fn law(&mut self, n: &Name) -> CliResult<DistLaw> {
        let key = n.get_ref();
        if let Some(l) = self.out.laws.get(key) {
            return Ok(l.clone());
        }
        let Some(raw) = self.raw.laws.get(key) else {
            return match self.base.and_then(|b| b.laws.get(key)) {
                Some(l) => Ok(l.clone()),
                None => Err(self.err(n, format!("unknown law {key:?}"))),
            };
        };
        let (l, r) = (self.side(&raw.left)?, self.side(&raw.right)?);
        let m = self.linmap(&raw.map)?;
        let law = if self.eager() {
            DistLaw::new(l, r, &m)
        } else {
            DistLaw::unchecked(l, r, &m)
        }
        .context(format!("laws.{key}"))?;
        self.out.laws.insert(key.clone(), law.clone());
        Ok(law)
    }

    fn required<'n>(&self, k: &str, field: &'n Option<Name>, what: &str) -> CliResult<&'n Name> {
        field
            .as_ref()
            .ok_or_else(|| CliError::new(Kind::Parse, format!("parse error: data.{k} needs {what}")))
    }

    fn datum(&mut self, k: &str, d: &RawDatum) -> CliResult<Datum> {
        match d.kind.get_ref().as_str() {
            "cyclic" => {
                let a = self.required(k, &d.algebra, "algebra")?;
                let alg = self.algebra(a)?;
                let twist = match &d.twist {
                    Some(t) => {
                        let key = t.get_ref();
                        let mor = match self.out.morphisms.get(key).or_else(|| self.base.and_then(|b| b.morphisms.get(key))) {
                            Some(m) => m.clone(),
                            None => return Err(self.err(t, format!("unknown morphism {key:?}"))),
                        };
                        if mor.source() != &alg || mor.target() != &alg {
                            return Err(CliError::new(
                                Kind::Validation,
                                format!("data.{k}: the twist is not an endomorphism of {}", a.get_ref()),
                            ));
                        }
                        Some(key.clone())
                    }
                    None => None,
                };
                if !self.out.algebras.contains_key(a.get_ref()) {
                    self.out.algebras.insert(a.get_ref().clone(), alg);
                }
                if let Some(t) = &twist {
                    if !self.out.morphisms.contains_key(t) {
                        let m = self.base.and_then(|b| b.morphisms.get(t)).cloned();
                        self.out.morphisms.extend(m.map(|m| (t.clone(), m)));
                    }
                }
                Ok(Datum::Cyclic {
                    algebra: a.get_ref().clone(),
                    twist,
                })
            }
            "tensor" => {
                let law = self.required(k, &d.law, "law")?;
                self.law(law)?;
                let module = self.space_expr(self.required(k, &d.module, "module")?)?;
                let rho = self.linmap(self.required(k, &d.rho, "rho")?)?;
                let left = self.space_expr(self.required(k, &d.left, "left")?)?;
                let lambda = self.linmap(self.required(k, &d.lambda, "lambda")?)?;
                Ok(Datum::Tensor {
                    law: law.get_ref().clone(),
                    module,
                    rho,
                    left,
                    lambda,
                })
            }
            other => Err(self.err(&d.kind, format!("unknown datum kind {other:?}"))),
        }
    }
}

fn same_names(a: &Space, b: &Space) -> bool {
    a.factors().iter().map(|f| f.name()).eq(b.factors().iter().map(|f| f.name()))
}

struct Writer<'b> {
    bundle: &'b Bundle,
    raw: RawBundle,
    /// Space identities already emitted: name → labels.
    space_labels: BTreeMap<String, Vec<String>>,
    /// Generated structures, so later references reuse them.
    algebras: Vec<(String, Algebra)>,
    coalgebras: Vec<(String, Coalgebra)>,
    laws: Vec<(String, DistLaw)>,
}

impl<'b> Writer<'b> {
    fn new(bundle: &'b Bundle) -> Writer<'b> {
        Writer {
            bundle,
            raw: RawBundle {
                field: Some(name(bundle.field.to_string())),
                ..RawBundle::default()
            },
            space_labels: BTreeMap::new(),
            algebras: Vec::new(),
            coalgebras: Vec::new(),
            laws: Vec::new(),
        }
    }

    fn emit(&mut self) {
        let b = self.bundle;
        for (n, a) in &b.algebras {
            self.put_algebra(n, a);
        }
        for (n, c) in &b.coalgebras {
            self.put_coalgebra(n, c);
        }
        for (n, h) in &b.hopf_algebras {
            let algebra = self.algebra_ref(n, h.algebra());
            let coalgebra = self.coalgebra_ref(n, h.coalgebra());
            let antipode = self.map(&format!("{n}.antipode"), h.antipode());
            self.raw.hopf_algebras.insert(
                n.clone(),
                RawHopf {
                    algebra,
                    coalgebra,
                    antipode,
                },
            );
        }
        for (n, m) in &b.bimodules {
            let left_algebra = self.algebra_ref(&format!("{n}.left_algebra"), m.left_algebra());
            let right_algebra = self.algebra_ref(&format!("{n}.right_algebra"), m.right_algebra());
            let space = self.space(m.carrier());
            let left = self.map(&format!("{n}.left"), m.left());
            let right = self.map(&format!("{n}.right"), m.right());
            self.raw.bimodules.insert(
                n.clone(),
                RawBimodule {
                    left_algebra,
                    right_algebra,
                    space,
                    left,
                    right,
                },
            );
        }
        for (n, m) in &b.morphisms {
            let source = self.algebra_ref(&format!("{n}.source"), m.source());
            let target = self.algebra_ref(&format!("{n}.target"), m.target());
            let map = self.map(&format!("{n}.map"), m.map());
            self.raw.morphisms.insert(n.clone(), RawMorphism { source, target, map });
        }
        for (n, l) in &b.laws {
            self.put_law(n, l);
        }
        for (n, f) in &b.factorisations {
            let law = self.law_ref(&format!("{n}.law"), f.chi());
            let middle = self.space(f.middle());
            let sigma = self.map(&format!("{n}.sigma"), f.sigma().map());
            let gamma = self.map(&format!("{n}.gamma"), f.gamma().map());
            self.raw.factorisations.insert(
                n.clone(),
                RawFactorisation {
                    law,
                    middle,
                    sigma,
                    gamma,
                },
            );
        }
        for (n, d) in &b.data {
            let raw = match d {
                Datum::Cyclic { algebra, twist } => RawDatum {
                    kind: name("cyclic"),
                    algebra: Some(name(algebra.clone())),
                    twist: twist.clone().map(name),
                    law: None,
                    module: None,
                    rho: None,
                    left: None,
                    lambda: None,
                },
                Datum::Tensor {
                    law,
                    module,
                    rho,
                    left,
                    lambda,
                } => RawDatum {
                    kind: name("tensor"),
                    algebra: None,
                    twist: None,
                    law: Some(name(law.clone())),
                    module: Some(self.space(module)),
                    rho: Some(self.map(&format!("{n}.rho"), rho)),
                    left: Some(self.space(left)),
                    lambda: Some(self.map(&format!("{n}.lambda"), lambda)),
                },
            };
            self.raw.data.insert(n.clone(), raw);
        }
        for (n, m) in &b.linmaps {
            if !self.raw.linmaps.contains_key(n) {
                self.map(n, m);
            } else if !self.same_map(n, m) {
                let alt = self.fresh(&self.raw.linmaps, n);
                self.map(&alt, m);
            }
        }
    }

    fn same_map(&mut self, n: &str, m: &LinMap) -> bool {
        let mut fresh = self.raw_map(m);
        fresh.source = self.space(m.domain());
        fresh.target = self.space(m.codomain());
        let raw = &self.raw.linmaps[n];
        raw.source.get_ref() == fresh.source.get_ref()
            && raw.target.get_ref() == fresh.target.get_ref()
            && raw.entries.iter().map(|e| e.get_ref()).eq(fresh.entries.iter().map(|e| e.get_ref()))
    }

    fn fresh<T>(&self, map: &BTreeMap<String, T>, base: &str) -> String {
        let mut n = format!("{base}'");
        while map.contains_key(&n) {
            n.push('\'');
        }
        n
    }

    fn space(&mut self, s: &Space) -> Name {
        let parts: Vec<String> = s.factors().iter().map(|f| self.base_space(f)).collect();
        name(if parts.is_empty() { "k".to_string() } else { parts.join("⊗") })
    }

    fn base_space(&mut self, s: &Space) -> String {
        let labels = s.labels();
        let mut n = s.name().to_string();
        loop {
            match self.space_labels.get(&n) {
                Some(l) if *l == labels => return n,
                Some(_) => n.push('\''),
                None => break,
            }
        }
        if n == "k" && labels == ["1"] {
            self.space_labels.insert(n.clone(), labels);
            return n;
        }
        let indexed = Space::indexed(&n, s.dim()).labels() == labels;
        let raw = if indexed {
            RawSpace {
                basis: None,
                dim: Some(Spanned::new(0..0, s.dim())),
            }
        } else {
            RawSpace {
                basis: Some(labels.clone()),
                dim: None,
            }
        };
        self.raw.spaces.insert(n.clone(), raw);
        self.space_labels.insert(n.clone(), labels);
        n
    }

    fn raw_map(&self, m: &LinMap) -> RawLinMap {
        let f = m.field();
        let mut entries = Vec::with_capacity(m.nnz());
        for c in 0..m.ncols() {
            for (r, x) in m.column(c) {
                entries.push(name(format!("{r} {c} {}", f.format_scalar(x))));
            }
        }
        RawLinMap {
            source: name(String::new()),
            target: name(String::new()),
            entries,
        }
    }

    fn map(&mut self, n: &str, m: &LinMap) -> Name {
        let mut raw = self.raw_map(m);
        raw.source = self.space(m.domain());
        raw.target = self.space(m.codomain());
        self.raw.linmaps.insert(n.to_string(), raw);
        name(n)
    }

    fn put_algebra(&mut self, n: &str, a: &Algebra) {
        let space = self.space(a.carrier());
        let mul = self.map(&format!("{n}.mul"), a.mul());
        let unit = self.map(&format!("{n}.unit"), a.unit());
        self.raw.algebras.insert(n.to_string(), RawAlgebra { space, mul, unit });
        self.algebras.push((n.to_string(), a.clone()));
    }

    fn put_coalgebra(&mut self, n: &str, c: &Coalgebra) {
        let space = self.space(c.carrier());
        let comul = self.map(&format!("{n}.comul"), c.comul());
        let counit = self.map(&format!("{n}.counit"), c.counit());
        self.raw.coalgebras.insert(n.to_string(), RawCoalgebra { space, comul, counit });
        self.coalgebras.push((n.to_string(), c.clone()));
    }

    fn put_law(&mut self, n: &str, l: &DistLaw) {
        let left = self.side(&format!("{n}.left"), l.left());
        let right = self.side(&format!("{n}.right"), l.right());
        let map = self.map(&format!("{n}.map"), l.map());
        self.raw.laws.insert(n.to_string(), RawLaw { left, right, map });
        self.laws.push((n.to_string(), l.clone()));
    }

    fn algebra_ref(&mut self, hint: &str, a: &Algebra) -> Name {
        let emitted = self.algebras.iter().map(|(n, x)| (n, x));
        if let Some((n, _)) = self.bundle.algebras.iter().chain(emitted).find(|(_, x)| *x == a && same_names(x.carrier(), a.carrier())) {
            return name(n.clone());
        }
        let n = if self.raw.algebras.contains_key(hint) { self.fresh(&self.raw.algebras, hint) } else { hint.to_string() };
        self.put_algebra(&n, a);
        name(n)
    }

    fn coalgebra_ref(&mut self, hint: &str, c: &Coalgebra) -> Name {
        let emitted = self.coalgebras.iter().map(|(n, x)| (n, x));
        if let Some((n, _)) = self.bundle.coalgebras.iter().chain(emitted).find(|(_, x)| *x == c && same_names(x.carrier(), c.carrier())) {
            return name(n.clone());
        }
        let n = if self.raw.coalgebras.contains_key(hint) { self.fresh(&self.raw.coalgebras, hint) } else { hint.to_string() };
        self.put_coalgebra(&n, c);
        name(n)
    }

    fn law_ref(&mut self, hint: &str, l: &DistLaw) -> Name {
        let emitted = self.laws.iter().map(|(n, x)| (n, x));
        if let Some((n, _)) = self.bundle.laws.iter().chain(emitted).find(|(_, x)| *x == l && same_names(x.map().domain(), l.map().domain())) {
            return name(n.clone());
        }
        let n = if self.raw.laws.contains_key(hint) { self.fresh(&self.raw.laws, hint) } else { hint.to_string() };
        self.put_law(&n, l);
        name(n)
    }

    fn side(&mut self, hint: &str, s: &Side) -> Name {
        match s {
            Side::Comonad(c) => name(format!("comonad:{}", self.coalgebra_ref(hint, c).get_ref())),
            Side::Monad(a) => name(format!("monad:{}", self.algebra_ref(hint, a).get_ref())),
            Side::Plain(sp) => name(format!("plain:{}", self.space(sp).get_ref())),
        }
    }
}
