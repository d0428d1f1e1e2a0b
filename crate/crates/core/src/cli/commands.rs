use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

use super::doc::{self, BuiltinSmc, SmcDoc, SmcSpec};
use super::report::{CheckEntry, ErrorKind, RunReport};
use super::{Command, Construction, Emit, LawKind, LensKind};
use crate::catkit::{check_category_laws, FinCategory, IsoReport, LawReport, RawCategory};
use crate::comonoid::{
    check_comonoid, check_recover_usual, check_smc_laws, enumerate_comonoids, Comonoid, FinSetCartesian,
    FinSetCocartesianOp, Smc, TableSmc,
};
use crate::dynamics::{lens_to_machine, run_via_lenses, MooreMachine};
use crate::error::Error;
use crate::indexed::{check_indexed_laws, check_tfae_iso, lens_category, IndexedCat, RawIndexed};
use crate::instances::{check_twisted_iso, ClassicLensMor, DepLens, PrismMor};
use crate::limit::Limit;

pub enum Output {
    Report(Box<RunReport>),
    /// A document printed verbatim.
    Document(String),
}

enum Fail {
    Parse(String),
    Semantic(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Semantic(e.to_string())
    }
}

fn parse_err(e: impl ToString) -> Fail {
    Fail::Parse(e.to_string())
}

type Step<T> = Result<T, Fail>;

pub fn run(command: &Command, limit: Limit) -> Output {
    let mut report = RunReport::new(echo(command));
    let result = match command {
        Command::Laws { kind, input } => laws(*kind, input, limit, &mut report),
        Command::Iso { construction, input } => iso(*construction, input, limit, &mut report),
        Command::Compose {
            kind,
            first,
            second,
            output,
            emit,
        } => match compose(*kind, first, second, *emit) {
            Ok((text, composite)) => match output {
                None => return Output::Document(text),
                Some(path) => fs::write(path, &text)
                    .map_err(|e| Fail::Semantic(format!("{}: {e}", path.display())))
                    .map(|()| {
                        report.datum("output", path.display().to_string());
                        report.datum("composite", composite);
                    }),
            },
            Err(f) => Err(f),
        },
        Command::Simulate {
            machine,
            inputs,
            initial,
            oracle,
        } => simulate(machine, inputs, *initial, *oracle, &mut report),
        Command::EnumerateComonoids { smc, size } => enumerate(*smc, *size, limit, &mut report),
    };
    match result {
        Ok(()) => {}
        Err(Fail::Parse(m)) => report.fail_with(ErrorKind::Parse, m),
        Err(Fail::Semantic(m)) => report.fail_with(ErrorKind::Semantic, m),
    }
    Output::Report(Box::new(report))
}

fn echo(command: &Command) -> String {
    let p = |p: &Path| p.display().to_string();
    match command {
        Command::Laws { kind, input } => format!("laws --kind {} {}", value_name(kind), p(input)),
        Command::Iso { construction, input } => {
            format!("iso --construction {} {}", value_name(construction), p(input))
        }
        Command::Compose {
            kind,
            first,
            second,
            output,
            emit,
        } => {
            let mut s = format!("compose --kind {} {} {}", value_name(kind), p(first), p(second));
            if *emit == Emit::Machine {
                s.push_str(" --emit machine");
            }
            if let Some(o) = output {
                s.push_str(&format!(" --output {}", p(o)));
            }
            s
        }
        Command::Simulate {
            machine,
            inputs,
            initial,
            oracle,
        } => {
            let mut s = format!("simulate {} --inputs {inputs:?} --initial {initial}", p(machine));
            if *oracle {
                s.push_str(" --oracle");
            }
            s
        }
        Command::EnumerateComonoids { smc, size } => {
            format!("enumerate-comonoids --smc {} --size {size}", smc.name())
        }
    }
}

fn value_name(v: &impl clap::ValueEnum) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn load<T: DeserializeOwned>(path: &Path, kind: &str) -> Step<T> {
    doc::load(path, kind).map_err(Fail::Parse)
}

fn load_category(path: &Path) -> Step<FinCategory> {
    let raw: RawCategory = load(path, "category")?;
    FinCategory::from_raw(&raw).map_err(parse_err)
}

fn load_indexed(path: &Path) -> Step<IndexedCat> {
    let raw: RawIndexed = load(path, "indexed")?;
    IndexedCat::from_raw(&raw).map_err(parse_err)
}

fn push_laws(report: &mut RunReport, name: &str, laws: &LawReport) -> bool {
    report.push(CheckEntry::from_laws(name, laws));
    laws.is_pass()
}

fn push_iso(report: &mut RunReport, iso: &IsoReport) {
    report.push(CheckEntry::passed(iso.name.clone(), iso.checks));
    report.counts.insert("objects".into(), iso.objects.clone().into());
    report.counts.insert("morphisms".into(), iso.morphisms.clone().into());
}

fn laws(kind: LawKind, input: &Path, limit: Limit, report: &mut RunReport) -> Step<()> {
    match kind {
        LawKind::Category => {
            let c = load_category(input)?;
            report.count("objects", c.n_objects());
            report.count("morphisms", c.n_morphisms());
            push_laws(report, "category-laws", &check_category_laws(&c));
        }
        LawKind::Indexed => {
            let f = load_indexed(input)?;
            report.count("base-objects", f.base().n_objects());
            report.count("base-morphisms", f.base().n_morphisms());
            if push_laws(report, "indexed-laws", &check_indexed_laws(&f)) {
                let lens = lens_category(&f)?;
                report.count("lens-objects", lens.category().n_objects());
                report.count("lens-morphisms", lens.category().n_morphisms());
                push_laws(report, "lens-category-laws", &check_category_laws(lens.category()));
            }
        }
        LawKind::Smc => {
            let d: SmcDoc = load(input, "smc")?;
            match &d.smc {
                SmcSpec::Builtin(BuiltinSmc::FinsetCartesian) => smc_laws(&FinSetCartesian, &d, None, limit, report)?,
                SmcSpec::Builtin(BuiltinSmc::FinsetCocartesianOp) => {
                    smc_laws(&FinSetCocartesianOp, &d, None, limit, report)?
                }
                SmcSpec::Table(raw) => {
                    let t = TableSmc::from_raw(raw).map_err(parse_err)?;
                    check_objects(&t, &d.objects)?;
                    let table_laws = t.check_laws()?;
                    smc_laws(&t, &d, Some(table_laws), limit, report)?
                }
            }
        }
    }
    Ok(())
}

fn check_objects(t: &TableSmc, objects: &[usize]) -> Step<()> {
    let n = t.carrier().n_objects();
    match objects.iter().find(|&&o| o >= n) {
        Some(o) => Err(Fail::Parse(format!("object {o} is not one of the {n} objects"))),
        None => Ok(()),
    }
}

fn smc_laws<S: Smc>(
    m: &S,
    d: &SmcDoc,
    table_laws: Option<LawReport>,
    limit: Limit,
    report: &mut RunReport,
) -> Step<()> {
    let laws = match table_laws {
        Some(l) => l,
        None => check_smc_laws(m, &d.objects, limit)?,
    };
    if !push_laws(report, "smc-laws", &laws) {
        return Ok(());
    }
    match &d.comonoids {
        Some(list) => {
            for (i, raw) in list.iter().enumerate() {
                let k = Comonoid::from_raw(m, raw).map_err(parse_err)?;
                push_laws(report, &format!("comonoid[{i}]"), &check_comonoid(m, &k)?);
            }
            report.count("comonoids", list.len());
        }
        None => {
            let mut counts = serde_json::Map::new();
            for &c in &d.objects {
                counts.insert(c.to_string(), enumerate_comonoids(m, c, limit)?.len().into());
            }
            report.datum("comonoids-per-object", Value::Object(counts));
        }
    }
    Ok(())
}

fn comonoids_for<S: Smc>(m: &S, d: &SmcDoc, limit: Limit) -> Step<Vec<Comonoid<S::Mor>>> {
    match &d.comonoids {
        Some(list) => list
            .iter()
            .map(|raw| Comonoid::from_raw(m, raw).map_err(parse_err))
            .collect(),
        None => {
            let mut all = Vec::new();
            for &c in &d.objects {
                all.extend(enumerate_comonoids(m, c, limit)?);
            }
            Ok(all)
        }
    }
}

fn recover<S: Smc>(m: &S, d: &SmcDoc, limit: Limit, report: &mut RunReport) -> Step<()> {
    let comonoids = comonoids_for(m, d, limit)?;
    report.count("comonoids", comonoids.len());
    push_iso(report, &check_recover_usual(m, &comonoids, &d.objects, limit)?);
    Ok(())
}

fn iso(construction: Construction, input: &Path, limit: Limit, report: &mut RunReport) -> Step<()> {
    match construction {
        Construction::Tfae => {
            let f = load_indexed(input)?;
            if push_laws(report, "indexed-laws", &check_indexed_laws(&f)) {
                push_iso(report, &check_tfae_iso(&f)?);
            }
        }
        Construction::RecoverUsual => {
            let d: SmcDoc = load(input, "smc")?;
            match &d.smc {
                SmcSpec::Builtin(BuiltinSmc::FinsetCartesian) => recover(&FinSetCartesian, &d, limit, report)?,
                SmcSpec::Builtin(BuiltinSmc::FinsetCocartesianOp) => {
                    recover(&FinSetCocartesianOp, &d, limit, report)?
                }
                SmcSpec::Table(raw) => {
                    let t = TableSmc::from_raw(raw).map_err(parse_err)?;
                    check_objects(&t, &d.objects)?;
                    if push_laws(report, "smc-laws", &t.check_laws()?) {
                        recover(&t, &d, limit, report)?;
                    }
                }
            }
        }
        Construction::TwistedArrow => {
            let c = load_category(input)?;
            if push_laws(report, "category-laws", &check_category_laws(&c)) {
                push_iso(report, &check_twisted_iso(&c)?);
            }
        }
    }
    Ok(())
}

/// Returns the composite document and the composite as JSON.
fn compose(kind: LensKind, first: &Path, second: &Path, emit: Emit) -> Step<(String, Value)> {
    match kind {
        LensKind::Classic => {
            let load_lens = |p: &Path| -> Step<ClassicLensMor> {
                let l: ClassicLensMor = load(p, "classic-lens")?;
                l.validate().map_err(parse_err)?;
                Ok(l)
            };
            let c = load_lens(first)?.compose(&load_lens(second)?)?;
            match emit {
                Emit::Lens => Ok((doc::render(&c, "classic-lens"), json(&c))),
                Emit::Machine => {
                    let m = lens_to_machine(&c)?;
                    Ok((doc::render(&m, "machine"), json(&m)))
                }
            }
        }
        LensKind::Prism => {
            no_machine(emit)?;
            let load_prism = |p: &Path| -> Step<PrismMor> {
                let l: PrismMor = load(p, "prism")?;
                PrismMor::new(l.source, l.target, l.get, l.put).map_err(parse_err)
            };
            let c = load_prism(first)?.compose(&load_prism(second)?)?;
            Ok((doc::render(&c, "prism"), json(&c)))
        }
        LensKind::Generic => {
            no_machine(emit)?;
            let load_dep = |p: &Path| -> Step<DepLens> {
                let l: DepLens = load(p, "dep-lens")?;
                l.validate().map_err(parse_err)?;
                Ok(l)
            };
            let c = load_dep(first)?.compose(&load_dep(second)?)?;
            Ok((doc::render(&c, "dep-lens"), json(&c)))
        }
    }
}

fn no_machine(emit: Emit) -> Step<()> {
    match emit {
        Emit::Lens => Ok(()),
        Emit::Machine => Err(Fail::Parse("--emit machine applies to classic lenses only".into())),
    }
}

fn json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("documents serialize")
}

fn load_machine(path: &Path) -> Step<MooreMachine> {
    let text = fs::read_to_string(path).map_err(|e| Fail::Parse(format!("{}: {e}", path.display())))?;
    let is_lens = serde_json::from_str::<Value>(&text)
        .ok()
        .and_then(|v| v.get("schema").and_then(Value::as_str).map(|s| s == doc::schema_name("classic-lens")))
        .unwrap_or(false);
    let at = |e: String| Fail::Parse(format!("{}: {e}", path.display()));
    if is_lens {
        let l: ClassicLensMor = doc::parse(&text, "classic-lens").map_err(at)?;
        l.validate().map_err(|e| at(e.to_string()))?;
        lens_to_machine(&l).map_err(|e| at(e.to_string()))
    } else {
        doc::parse(&text, "machine").map_err(at)
    }
}

fn parse_word(inputs: &str) -> Step<Vec<usize>> {
    let trimmed = inputs.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Fail::Parse(format!("--inputs: `{}` is not an input index", s.trim())))
        })
        .collect()
}

fn simulate(path: &Path, inputs: &str, initial: usize, oracle: bool, report: &mut RunReport) -> Step<()> {
    let m = load_machine(path)?;
    let word = parse_word(inputs)?;
    report.count("states", m.states());
    report.count("inputs", m.inputs());
    report.count("outputs", m.outputs());
    report.count("steps", word.len());
    report.notes.push(
        "machine interface is ⟨B|A⟩ = ⟨outputs|inputs⟩: get is the readout S → B, put is the update on S × A"
            .into(),
    );
    report.datum("interface", format!("⟨{}|{}⟩", m.outputs(), m.inputs()));
    let trace = m.run(initial, &word)?;
    if oracle {
        let via = run_via_lenses(&m, initial, &word)?;
        let mut laws = LawReport::default();
        laws.expect(via == trace, "lens-oracle", Vec::new, || {
            format!("lens composition gives outputs {:?}, final {}", via.outputs, via.final_state)
        });
        push_laws(report, "lens-oracle", &laws);
    }
    report.datum("initial", trace.initial);
    report.datum("inputs", &trace.inputs);
    report.datum("outputs", &trace.outputs);
    report.datum("final", trace.final_state);
    Ok(())
}

fn enumerate(smc: BuiltinSmc, size: usize, limit: Limit, report: &mut RunReport) -> Step<()> {
    fn go<S: Smc>(m: &S, size: usize, limit: Limit, report: &mut RunReport) -> Step<()> {
        let found = enumerate_comonoids(m, size, limit)?;
        let candidates = m
            .hom_count(size, m.unit())
            .zip(m.hom_count(size, m.tensor_ob(size, size)))
            .map(|(a, b)| a * b);
        report.push(CheckEntry::passed("enumeration", candidates.unwrap_or(0) as usize));
        report.counts.insert(
            "candidates".into(),
            candidates.map(|c| Value::from(c as u64)).unwrap_or(Value::Null),
        );
        report.count("comonoids", found.len());
        let raws: Vec<_> = found.iter().map(|k| k.to_raw(m)).collect();
        report.datum("structures", raws);
        Ok(())
    }
    match smc {
        BuiltinSmc::FinsetCartesian => go(&FinSetCartesian, size, limit, report),
        BuiltinSmc::FinsetCocartesianOp => go(&FinSetCocartesianOp, size, limit, report),
    }
}
