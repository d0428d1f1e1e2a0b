use std::fmt;

use serde::{Deserialize, Serialize};

use super::FinCategory;
use crate::error::{Error, Result};

/// One failed instance of a law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    /// The ids (morphisms or objects) at which the law fails.
    pub witness: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.law, self.witness, self.detail)
    }
}

/// Outcome of an exhaustive law check. Every violation is recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl LawReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    fn tick(&mut self) {
        self.checks += 1;
    }

    pub fn record(&mut self, law: impl Into<String>, witness: Vec<usize>, detail: impl Into<String>) {
        self.violations.push(Violation {
            law: law.into(),
            witness,
            detail: detail.into(),
        });
    }

    /// Checks `ok`, recording a violation built lazily when it fails.
    pub fn expect(
        &mut self,
        ok: bool,
        law: &str,
        witness: impl FnOnce() -> Vec<usize>,
        detail: impl FnOnce() -> String,
    ) {
        self.tick();
        if !ok {
            self.record(law, witness(), detail());
        }
    }

    /// Merges another report, prefixing its law names with `context`.
    pub fn absorb(&mut self, context: &str, other: LawReport) {
        self.checks += other.checks;
        self.violations.extend(other.violations.into_iter().map(|mut v| {
            if !context.is_empty() {
                v.law = format!("{context}: {}", v.law);
            }
            v
        }));
    }
}

/// Exhaustively checks identity typing, composite typing, both unit laws and
/// associativity.
pub fn check_category_laws(c: &FinCategory) -> LawReport {
    let mut report = LawReport::default();

    for o in 0..c.n_objects() {
        let id = c.identity(o);
        report.expect(
            c.dom(id) == o && c.cod(id) == o,
            "identity-typing",
            || vec![o],
            || format!("identity {id} has endpoints {:?}", c.endpoints()[id]),
        );
    }

    for (f, g, fg) in c.composable_pairs() {
        report.expect(
            c.dom(fg) == c.dom(f) && c.cod(fg) == c.cod(g),
            "composite-typing",
            || vec![f, g],
            || format!("composite {fg} has endpoints {:?}", c.endpoints()[fg]),
        );
    }

    for f in 0..c.n_morphisms() {
        let left = c.compose(c.identity(c.dom(f)), f);
        report.expect(
            left == Some(f),
            "left-unit",
            || vec![c.identity(c.dom(f)), f],
            || format!("id ⨟ {f} = {left:?}"),
        );
        let right = c.compose(f, c.identity(c.cod(f)));
        report.expect(
            right == Some(f),
            "right-unit",
            || vec![f, c.identity(c.cod(f))],
            || format!("{f} ⨟ id = {right:?}"),
        );
    }

    for (f, g, fg) in c.composable_pairs() {
        for &h in c.out(c.cod(g)) {
            let lhs = c.compose(fg, h);
            let rhs = c.compose(g, h).and_then(|gh| c.compose(f, gh));
            report.expect(
                lhs.is_some() && lhs == rhs,
                "associativity",
                || vec![f, g, h],
                || format!("(f⨟g)⨟h = {lhs:?}, f⨟(g⨟h) = {rhs:?}"),
            );
        }
    }

    report
}

/// Object and morphism assignments of a functor; source and target
/// categories travel separately.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctorData {
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl FunctorData {
    pub fn identity(c: &FinCategory) -> Self {
        Self {
            obj_map: (0..c.n_objects()).collect(),
            mor_map: (0..c.n_morphisms()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.obj_map.iter().enumerate().all(|(i, &o)| i == o)
            && self.mor_map.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FunctorData) -> FunctorData {
        FunctorData {
            obj_map: self.obj_map.iter().map(|&o| next.obj_map[o]).collect(),
            mor_map: self.mor_map.iter().map(|&m| next.mor_map[m]).collect(),
        }
    }

    pub fn validate_shape(&self, source: &FinCategory, target: &FinCategory) -> Result<()> {
        if self.obj_map.len() != source.n_objects() || self.mor_map.len() != source.n_morphisms() {
            return Err(Error::MalformedData(format!(
                "functor maps have lengths ({}, {}) but the source has {} objects and {} morphisms",
                self.obj_map.len(),
                self.mor_map.len(),
                source.n_objects(),
                source.n_morphisms()
            )));
        }
        if let Some(&o) = self.obj_map.iter().find(|&&o| o >= target.n_objects()) {
            return Err(Error::MalformedData(format!("functor sends an object to missing object {o}")));
        }
        if let Some(&m) = self.mor_map.iter().find(|&&m| m >= target.n_morphisms()) {
            return Err(Error::MalformedData(format!(
                "functor sends a morphism to missing morphism {m}"
            )));
        }
        Ok(())
    }
}

/// Exhaustively checks that `functor` respects endpoints, identities and
/// composition.
pub fn check_functor_laws(
    source: &FinCategory,
    target: &FinCategory,
    functor: &FunctorData,
) -> Result<LawReport> {
    functor.validate_shape(source, target)?;
    let (om, mm) = (&functor.obj_map, &functor.mor_map);
    let mut report = LawReport::default();

    for f in 0..source.n_morphisms() {
        let image = mm[f];
        report.expect(
            target.dom(image) == om[source.dom(f)] && target.cod(image) == om[source.cod(f)],
            "functor-typing",
            || vec![f],
            || format!("morphism {f} maps to {image} with mismatched endpoints"),
        );
    }
    for o in 0..source.n_objects() {
        let image = mm[source.identity(o)];
        report.expect(
            image == target.identity(om[o]),
            "preserves-identity",
            || vec![o],
            || format!("identity on {o} maps to {image}"),
        );
    }
    for (f, g, fg) in source.composable_pairs() {
        let composite = target.compose(mm[f], mm[g]);
        report.expect(
            composite == Some(mm[fg]),
            "preserves-composition",
            || vec![f, g],
            || format!("F(f⨟g) = {}, F(f)⨟F(g) = {composite:?}", mm[fg]),
        );
    }
    Ok(report)
}

/// Summary of a successful isomorphism check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub name: String,
    /// Object count of each side.
    pub objects: Vec<usize>,
    /// Morphism count of each side.
    pub morphisms: Vec<usize>,
    pub checks: usize,
}

/// Verifies that `(obj_map, mor_map)` is an isomorphism of categories
/// `a → b`: bijective, endpoint-respecting, identity- and
/// composition-preserving. Returns the number of checks executed.
pub fn check_isomorphism(
    a: &FinCategory,
    b: &FinCategory,
    functor: &FunctorData,
) -> Result<usize> {
    let fail = |msg: String| Err(Error::IsoFailure(msg));
    if a.n_objects() != b.n_objects() {
        return fail(format!("object counts differ: {} vs {}", a.n_objects(), b.n_objects()));
    }
    if a.n_morphisms() != b.n_morphisms() {
        return fail(format!(
            "morphism counts differ: {} vs {}",
            a.n_morphisms(),
            b.n_morphisms()
        ));
    }
    functor
        .validate_shape(a, b)
        .map_err(|e| Error::IsoFailure(e.to_string()))?;
    if !is_permutation(&functor.obj_map) {
        return fail("object map is not a bijection".to_string());
    }
    if !is_permutation(&functor.mor_map) {
        return fail("morphism map is not a bijection".to_string());
    }
    let report = check_functor_laws(a, b, functor)?;
    if let Some(v) = report.violations.first() {
        return fail(v.to_string());
    }
    Ok(report.checks + a.n_objects() + a.n_morphisms())
}

fn is_permutation(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter()
        .all(|&i| i < seen.len() && !std::mem::replace(&mut seen[i], true))
}

/// Checks that two functors into a common category agree after `iso`:
/// `iso ⨟ right = left` on every morphism.
pub fn check_commutes(
    left: &FunctorData,
    iso: &FunctorData,
    right: &FunctorData,
    what: &str,
) -> Result<usize> {
    for (m, &image) in iso.mor_map.iter().enumerate() {
        if right.mor_map[image] != left.mor_map[m] {
            return Err(Error::IsoFailure(format!(
                "{what}: square does not commute at morphism {m} (projects to {} vs {})",
                left.mor_map[m], right.mor_map[image]
            )));
        }
    }
    for (o, &image) in iso.obj_map.iter().enumerate() {
        if right.obj_map[image] != left.obj_map[o] {
            return Err(Error::IsoFailure(format!(
                "{what}: square does not commute at object {o}"
            )));
        }
    }
    Ok(iso.mor_map.len() + iso.obj_map.len())
}
