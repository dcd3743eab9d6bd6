use std::fmt::Write as _;
use std::sync::Arc;

use dlf::admissible::{
    act_left, act_right, check_left_coalg, check_right_coalg, AdmissibleDatum, Factor, LeftFunctor, RightCoalg,
    TensorLeft, TensorRealization,
};
use dlf::bimodreal::{abstract_twisted_object, check_em_datum, cyclic_datum, twist_factorisation, EmRealization};
use dlf::duplicial::{build_duplicial, check_cyclic, check_duplicial, first_acyclic_degree, DuplicialModule};
use dlf::exactla::{Field, Space};
use dlf::homology::{hc_table, hh_table, HomologyTable, Theory};
use dlf::Report;

use crate::bundle::{Bundle, Datum, Validation};
use crate::catalog;
use crate::error::{CliError, CliResult, Context, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Bundle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check { source: String },
    Compose { first: String, second: String },
    Act { factorisation: String, datum: String, side: Side },
    Duplicial { datum: String },
    Homology { datum: String, theory: Theory, twist: Option<String> },
    Hc { algebra: String, twist: Option<String> },
    Examples { name: Option<String> },
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub field: Option<Field>,
    pub format: Option<Format>,
    pub max_degree: Option<usize>,
}

/// Text for stdout and the exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub status: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, status: 0 }
    }
}

pub fn run(cmd: &Command, opts: &Options) -> CliResult<Outcome> {
    match cmd {
        Command::Check { source } => check(source, opts),
        Command::Compose { first, second } => compose(first, second, opts),
        Command::Act {
            factorisation,
            datum,
            side,
        } => act(factorisation, datum, *side, opts),
        Command::Duplicial { datum } => duplicial(datum, opts),
        Command::Homology { datum, theory, twist } => homology(datum, *theory, twist.as_deref(), opts),
        Command::Hc { algebra, twist } => hc(algebra, twist.as_deref(), opts),
        Command::Examples { name } => examples(name.as_deref(), opts),
    }
}

/// `path-or-example[#entry]`.
fn split_ref(s: &str) -> (&str, Option<&str>) {
    match s.rsplit_once('#') {
        Some((src, entry)) if !entry.is_empty() => (src, Some(entry)),
        _ => (s, None),
    }
}

fn read(source: &str) -> CliResult<String> {
    std::fs::read_to_string(source).map_err(|e| CliError::new(Kind::Parse, format!("cannot read {source}: {e}")))
}

/// Loads a bundle file, or builds a named example.
pub fn load(source: &str, opts: &Options, validation: Validation) -> CliResult<Bundle> {
    if std::path::Path::new(source).is_file() {
        return Bundle::parse(&read(source)?, opts.field, validation).context(source);
    }
    if catalog::is_example(source) {
        return catalog::example(source, opts.field.unwrap_or(Field::Rationals));
    }
    Err(CliError::new(Kind::Parse, format!("no such file or example: {source}")))
}

fn check(source: &str, opts: &Options) -> CliResult<Outcome> {
    let b = load(source, opts, Validation::Deferred)?;
    let mut out = String::new();
    let mut failing = 0;
    let results = b.check_all()?;
    for (entry, rep) in &results {
        if rep.passed() {
            writeln!(out, "{entry}: ok ({} checks)", rep.checks.len()).unwrap();
        } else {
            failing += 1;
            for w in rep.failures() {
                writeln!(out, "{entry}: FAIL {w}").unwrap();
            }
        }
    }
    writeln!(out, "{} entries, {failing} failing", results.len()).unwrap();
    Ok(Outcome {
        stdout: out,
        status: if failing == 0 { 0 } else { Kind::Validation.exit_code() },
    })
}

/// Checks of a datum: both coalgebra conditions, and for a twisted cyclic
/// datum the checks of the acted datum as well.
pub fn check_datum(b: &Bundle, d: &Datum) -> dlf::Result<Report> {
    match d {
        Datum::Cyclic { algebra, twist } => {
            let base = cyclic_datum(&b.algebras[algebra])?;
            let mut rep = check_em_datum(&base.realization, &base.datum)?;
            if let Some(t) = twist {
                let acted = abstract_twisted_object(&b.algebras[algebra], &b.morphisms[t], 0)?;
                rep.extend_prefixed("twisted ", check_em_datum(&acted.realization, &acted.datum)?);
            }
            Ok(rep)
        }
        Datum::Tensor { .. } => {
            let (r, right, left) = tensor_datum(b, d)?;
            let mut rep = Report::new();
            rep.extend_prefixed("right coalgebra: ", check_right_coalg(r.as_ref(), &right)?);
            let probes = tensor_probes(&r);
            rep.extend_prefixed("left coalgebra: ", check_left_coalg(r.as_ref(), &left, &probes)?);
            Ok(rep)
        }
    }
}

fn tensor_probes(r: &TensorRealization) -> Vec<Space> {
    vec![Space::unit(), r.chi().left().carrier().clone(), r.chi().right().carrier().clone()]
}

fn tensor_datum(b: &Bundle, d: &Datum) -> dlf::Result<(Arc<TensorRealization>, RightCoalg<Space>, TensorLeft)> {
    let Datum::Tensor {
        law,
        module,
        rho,
        left,
        lambda,
    } = d
    else {
        return Err(dlf::Error::Domain("not a tensor datum".into()));
    };
    let r = Arc::new(TensorRealization::new(&b.laws[law])?);
    let t = r.chi().left().carrier().clone();
    let c = r.chi().right().carrier().clone();
    let rho = rho.clone().with_spaces(&t.tensor(module), &c.tensor(module))?;
    let left = TensorLeft::new(&r, left, lambda)?;
    Ok((
        r,
        RightCoalg {
            object: module.clone(),
            rho,
        },
        left,
    ))
}

fn compose(first: &str, second: &str, opts: &Options) -> CliResult<Outcome> {
    let (s1, n1) = split_ref(first);
    let (s2, n2) = split_ref(second);
    let b1 = load(s1, opts, Validation::Eager)?;
    let b2 = load(s2, opts, Validation::Eager)?;
    let (name1, f1) = b1.factorisation(n1)?;
    let (name2, f2) = b2.factorisation(n2)?;
    let product = dlf::distfact::tensor_factorisations(&f1, &f2).context("compose")?;
    let rep = dlf::distfact::check_factorisation(&product)?;
    match opts.format.unwrap_or(Format::Bundle) {
        Format::Table => Ok(Outcome::ok(format!(
            "{name1} ⊗ {name2}: middle dim {}, {}\n",
            product.dim(),
            verdict_line(&rep)
        ))),
        Format::Bundle => {
            let mut out = Bundle::new(f1.chi().field());
            let law_name = b1
                .laws
                .iter()
                .find(|(_, l)| *l == f1.chi())
                .map_or_else(|| "chi".to_string(), |(n, _)| n.clone());
            out.laws.insert(law_name, f1.chi().clone());
            out.factorisations.insert("product".into(), product);
            Ok(Outcome::ok(out.to_toml()))
        }
    }
}

fn verdict_line(rep: &Report) -> String {
    match rep.first_failure() {
        None => format!("all {} checks pass", rep.checks.len()),
        Some(w) => format!("FAIL {w}"),
    }
}

fn act(fac_ref: &str, datum_ref: &str, side: Side, opts: &Options) -> CliResult<Outcome> {
    let (sf, nf) = split_ref(fac_ref);
    let (sd, nd) = split_ref(datum_ref);
    let bf = load(sf, opts, Validation::Eager)?;
    let bd = load(sd, opts, Validation::Eager)?;
    let (_, fac) = bf.factorisation(nf)?;
    let (dname, d) = bd.datum(nd)?;
    let Datum::Tensor { law, .. } = &d else {
        return Err(CliError::new(
            Kind::Validation,
            "act works on tensor data; twist cyclic data with --twist instead",
        ));
    };
    if fac.chi() != &bd.laws[law] {
        return Err(CliError::new(Kind::Validation, "the factorisation and the datum are over different laws"));
    }
    let (r, right, left) = tensor_datum(&bd, &d)?;
    let fac_arc: Arc<dyn Factor<TensorRealization>> = Arc::new(fac.clone());
    let (mut module, mut rho) = (right.object.clone(), right.rho.clone());
    if side != Side::Left {
        let acted = act_right(r.as_ref(), fac_arc.as_ref(), &right).context("act")?;
        module = acted.object;
        rho = acted.rho;
    }
    let (mut carrier, mut lambda) = (left.carrier().clone(), left.lambda_map().clone());
    if side != Side::Right {
        let acted = act_left(&r, left.clone().into_arc(), fac_arc.clone());
        let k = Space::unit();
        carrier = acted.apply(&k)?;
        let t = r.chi().left().carrier();
        let c = r.chi().right().carrier();
        lambda = acted.lambda(&k)?.with_spaces(&carrier.tensor(c), &carrier.tensor(t))?;
        let rep = check_left_coalg(r.as_ref(), acted.as_ref(), &tensor_probes(&r))?;
        if let Some(w) = rep.first_failure() {
            return Err(CliError::new(Kind::Internal, format!("acted left coalgebra fails: {w}")));
        }
    }
    let acted = Datum::Tensor {
        law: law.clone(),
        module,
        rho,
        left: carrier,
        lambda,
    };
    match opts.format.unwrap_or(Format::Bundle) {
        Format::Table => {
            let Datum::Tensor { module, left, .. } = &acted else { unreachable!() };
            Ok(Outcome::ok(format!(
                "{dname}: module dim {}, left functor dim {}, both coalgebra conditions pass\n",
                module.dim(),
                left.dim()
            )))
        }
        Format::Bundle => {
            let mut out = Bundle::new(fac.chi().field());
            out.laws.insert(law.clone(), fac.chi().clone());
            out.data.insert("acted".into(), acted);
            Ok(Outcome::ok(out.to_toml()))
        }
    }
}

/// The duplicial object of a datum, optionally twisted.
/// Largest top-degree dimension the exact linear algebra is asked to handle.
pub const MAX_TOP_DIM: usize = 1 << 16;
/// Largest top degree, whatever the dimensions.
pub const MAX_TOP_DEGREE: usize = 32;

/// Upper bound on the dimension of the object in degree `top`.
fn top_dim(b: &Bundle, d: &Datum, top: usize) -> Option<usize> {
    let (unit, step) = match d {
        Datum::Cyclic { algebra, .. } => (1, b.algebras[algebra].carrier().dim()),
        Datum::Tensor { law, module, left, .. } => {
            let chi = &b.laws[law];
            let step = chi.left().carrier().dim().max(chi.right().carrier().dim());
            (module.dim().checked_mul(left.dim())?, step)
        }
    };
    let power = u32::try_from(top.checked_add(1)?).ok()?;
    step.max(1).checked_pow(power)?.checked_mul(unit.max(1))
}

pub fn datum_duplicial(b: &Bundle, d: &Datum, twist: Option<&dlf::algcore::AlgebraMorphism>, top: usize) -> CliResult<DuplicialModule> {
    match top_dim(b, d, top) {
        Some(n) if n <= MAX_TOP_DIM && top <= MAX_TOP_DEGREE => {}
        _ => {
            return Err(CliError::new(
                Kind::Range,
                format!("degree {top} is out of range: the limit is degree {MAX_TOP_DEGREE} or dimension {MAX_TOP_DIM}"),
            ))
        }
    }
    match d {
        Datum::Cyclic { algebra, twist: own } => {
            let a = &b.algebras[algebra];
            let s = twist.or(own.as_ref().map(|t| &b.morphisms[t]));
            match s {
                Some(s) => {
                    if s.source() != a || s.target() != a {
                        return Err(CliError::new(Kind::Validation, format!("the twist is not an endomorphism of {algebra}")));
                    }
                    twist_factorisation(s)?;
                    Ok(abstract_twisted_object(a, s, top)?.module)
                }
                None => {
                    let c = cyclic_datum(a)?;
                    Ok(build_duplicial::<EmRealization>(c.realization.as_ref(), &c.datum, top)?)
                }
            }
        }
        Datum::Tensor { .. } => {
            if twist.is_some() {
                return Err(CliError::new(Kind::Validation, "twists apply to cyclic data only"));
            }
            let (r, right, left) = tensor_datum(b, d)?;
            let left: Arc<dyn LeftFunctor<TensorRealization>> = left.into_arc();
            Ok(build_duplicial(r.as_ref(), &AdmissibleDatum { right, left }, top)?)
        }
    }
}

fn duplicial(datum_ref: &str, opts: &Options) -> CliResult<Outcome> {
    let (src, name) = split_ref(datum_ref);
    let b = load(src, opts, Validation::Eager)?;
    let (dname, d) = b.datum(name)?;
    let top = opts.max_degree.unwrap_or(3);
    let dm = datum_duplicial(&b, &d, None, top)?;
    match opts.format.unwrap_or(Format::Bundle) {
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "{dname}: dims {}", join(&dm.dims())).unwrap();
            writeln!(out, "identities: {}", verdict_line(&check_duplicial(&dm)?)).unwrap();
            let cyc = check_cyclic(&dm)?;
            match first_acyclic_degree(&dm)? {
                None => writeln!(out, "cyclic: yes ({} degrees)", cyc.checks.len()).unwrap(),
                Some(n) => writeln!(out, "cyclic: no, t^(n+1) differs from the identity from degree {n}").unwrap(),
            }
            Ok(Outcome::ok(out))
        }
        Format::Bundle => Ok(Outcome::ok(duplicial_bundle(&dm)?.to_toml())),
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Every operator as a named map between spaces `D0 … Dn`.
pub fn duplicial_bundle(dm: &DuplicialModule) -> CliResult<Bundle> {
    let spaces: Vec<Space> = (0..=dm.top()).map(|n| Space::indexed(&format!("D{n}"), dm.space(n).dim())).collect();
    let named = spaces.clone();
    let dm = dm.map_operators(spaces, |op, from, to| op.clone().with_spaces(&named[from], &named[to]))?;
    let mut b = Bundle::new(dm.field());
    for n in 0..=dm.top() {
        b.spaces.insert(format!("D{n}"), dm.space(n).clone());
        if n > 0 {
            for i in 0..=n {
                b.linmaps.insert(format!("d{n}.{i}"), dm.face(n, i).clone());
            }
        }
        if n < dm.top() {
            for i in 0..=n {
                b.linmaps.insert(format!("s{n}.{i}"), dm.degeneracy(n, i).clone());
            }
        }
        b.linmaps.insert(format!("t{n}"), dm.twist(n).clone());
    }
    Ok(b)
}

fn homology_output(table: &HomologyTable, opts: &Options) -> Outcome {
    match opts.format.unwrap_or(Format::Table) {
        Format::Table => Outcome::ok(format!("{table}\n")),
        Format::Bundle => {
            let dims = table.dims.iter().map(usize::to_string).collect::<Vec<_>>().join(", ");
            Outcome::ok(format!(
                "[homology]\ntheory = \"{}\"\nfield = \"{}\"\ninvariant_part = {}\ndims = [{dims}]\n",
                table.theory, table.field, table.invariant_part
            ))
        }
    }
}

fn table(dm: &DuplicialModule, theory: Theory, up_to: usize) -> CliResult<HomologyTable> {
    Ok(match theory {
        Theory::Hochschild => hh_table(dm, up_to)?,
        Theory::Cyclic => hc_table(dm, up_to)?,
    })
}

fn homology(datum_ref: &str, theory: Theory, twist: Option<&str>, opts: &Options) -> CliResult<Outcome> {
    let (src, name) = split_ref(datum_ref);
    let b = load(src, opts, Validation::Eager)?;
    let (_, d) = b.datum(name)?;
    let up_to = opts.max_degree.unwrap_or(4);
    let twist = match twist {
        Some(t) => {
            let (ts, tn) = split_ref(t);
            let tb = load_over(ts, &b, opts)?;
            Some(tb.morphism(tn)?.1)
        }
        None => None,
    };
    let dm = datum_duplicial(&b, &d, twist.as_ref(), up_to + 1)?;
    Ok(homology_output(&table(&dm, theory, up_to)?, opts))
}

fn load_over(source: &str, base: &Bundle, opts: &Options) -> CliResult<Bundle> {
    if std::path::Path::new(source).is_file() {
        return Bundle::parse_over(&read(source)?, opts.field, Validation::Eager, Some(base)).context(source);
    }
    load(source, opts, Validation::Eager)
}

fn hc(alg_ref: &str, twist: Option<&str>, opts: &Options) -> CliResult<Outcome> {
    let (src, name) = split_ref(alg_ref);
    let b = load(src, opts, Validation::Eager)?;
    let (aname, _) = b.algebra(name)?;
    let twist = match twist {
        Some(t) => {
            let (ts, tn) = split_ref(t);
            let tb = load_over(ts, &b, opts)?;
            Some(tb.morphism(tn)?.1)
        }
        None => None,
    };
    let d = Datum::Cyclic {
        algebra: aname,
        twist: None,
    };
    let up_to = opts.max_degree.unwrap_or(4);
    let dm = datum_duplicial(&b, &d, twist.as_ref(), up_to + 1)?;
    Ok(homology_output(&table(&dm, Theory::Cyclic, up_to)?, opts))
}

fn examples(name: Option<&str>, opts: &Options) -> CliResult<Outcome> {
    let Some(name) = name else {
        return Ok(Outcome::ok(catalog::names().join("\n") + "\n"));
    };
    let b = load(name, opts, Validation::Deferred)?;
    match opts.format.unwrap_or(Format::Bundle) {
        Format::Bundle => Ok(Outcome::ok(b.to_toml())),
        Format::Table => {
            let mut out = String::new();
            for (kind, names) in [
                ("algebras", b.algebras.keys().cloned().collect::<Vec<_>>()),
                ("hopf_algebras", b.hopf_algebras.keys().cloned().collect()),
                ("morphisms", b.morphisms.keys().cloned().collect()),
                ("laws", b.laws.keys().cloned().collect()),
                ("factorisations", b.factorisations.keys().cloned().collect()),
                ("data", b.data.keys().cloned().collect()),
            ] {
                if !names.is_empty() {
                    writeln!(out, "{kind}: {}", names.join(" ")).unwrap();
                }
            }
            Ok(Outcome::ok(out))
        }
    }
}
