use serde::{Deserialize, Serialize};

use super::Smc;
use crate::catkit::{LawReport, Labeled};
use crate::error::{Error, Result};
use crate::limit::Limit;

/// A counit `ε: c → I` and comultiplication `δ: c → c ⊗ c` on `carrier`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Comonoid<M> {
    pub carrier: usize,
    pub counit: M,
    pub comult: M,
}

/// File form of a comonoid: the counit and comultiplication are given by
/// their morphism ids in the ambient category (see [`Smc::morphism_id`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComonoid {
    pub object: usize,
    pub counit: u64,
    pub comult: u64,
}

impl<M> Comonoid<M> {
    pub fn from_raw<S: Smc<Mor = M>>(m: &S, raw: &RawComonoid) -> Result<Self> {
        let c = raw.object;
        Ok(Self {
            carrier: c,
            counit: m.morphism_from_id(c, m.unit(), raw.counit.into())?,
            comult: m.morphism_from_id(c, m.tensor_ob(c, c), raw.comult.into())?,
        })
    }

    pub fn to_raw<S: Smc<Mor = M>>(&self, m: &S) -> RawComonoid {
        let id = |f| u64::try_from(m.morphism_id(f)).unwrap_or(u64::MAX);
        RawComonoid {
            object: self.carrier,
            counit: id(&self.counit),
            comult: id(&self.comult),
        }
    }
}

fn check_typing<S: Smc>(m: &S, k: &Comonoid<S::Mor>) -> Result<()> {
    let c = k.carrier;
    let typed = |f: &S::Mor, cod: usize| m.dom(f) == c && m.cod(f) == cod;
    if !typed(&k.counit, m.unit()) {
        return Err(Error::MalformedData(format!("counit on {c} is not a map {c} → I")));
    }
    if !typed(&k.comult, m.tensor_ob(c, c)) {
        return Err(Error::MalformedData(format!(
            "comultiplication on {c} is not a map {c} → {c} ⊗ {c}"
        )));
    }
    Ok(())
}

/// Evaluates the counit, cocommutativity and coassociativity axioms, plus
/// the left counit law that follows from the first two.
pub fn check_comonoid<S: Smc>(m: &S, k: &Comonoid<S::Mor>) -> Result<LawReport> {
    check_typing(m, k)?;
    let c = k.carrier;
    let (eps, delta) = (&k.counit, &k.comult);
    let id = m.identity(c);
    let mut report = LawReport::default();

    let right = m.compose(delta, &m.whisker_left(c, eps))?;
    report.expect(right == id, "counit", || vec![c], || "δ ⨟ (c ⊗ ε) ≠ id".into());
    let swapped = m.compose(delta, &m.symmetry(c, c))?;
    report.expect(
        swapped == *delta,
        "cocommutativity",
        || vec![c],
        || "δ ⨟ σ ≠ δ".into(),
    );
    let l = m.compose(delta, &m.whisker_right(delta, c))?;
    let r = m.compose(delta, &m.whisker_left(c, delta))?;
    report.expect(
        l == r,
        "coassociativity",
        || vec![c],
        || "δ ⨟ (δ ⊗ c) ≠ δ ⨟ (c ⊗ δ)".into(),
    );
    let left = m.compose(delta, &m.whisker_right(eps, c))?;
    report.expect(
        left == id,
        "left-counit (derived)",
        || vec![c],
        || "δ ⨟ (ε ⊗ c) ≠ id".into(),
    );
    Ok(report)
}

/// Every comonoid structure on `c`, found by brute force over all pairs
/// `(ε, δ)` in hom-set order (counit outermost).
pub fn enumerate_comonoids<S: Smc>(m: &S, c: usize, limit: Limit) -> Result<Vec<Comonoid<S::Mor>>> {
    let candidates = m
        .hom_count(c, m.unit())
        .and_then(|a| m.hom_count(c, m.tensor_ob(c, c)).and_then(|b| a.checked_mul(b)));
    limit.check_opt(candidates)?;
    let counits = m.hom(c, m.unit());
    let comults = m.hom(c, m.tensor_ob(c, c));
    let mut found = Vec::new();
    for counit in &counits {
        for comult in &comults {
            let k = Comonoid {
                carrier: c,
                counit: counit.clone(),
                comult: comult.clone(),
            };
            if check_comonoid(m, &k)?.is_pass() {
                found.push(k);
            }
        }
    }
    Ok(found)
}

/// The comonoid on `c ⊗ d` with `ε = ε_c ⊗ ε_d` and
/// `δ = (δ_c ⊗ δ_d) ⨟ (c ⊗ σ_{c,d} ⊗ d)`.
pub fn tensor_comonoid<S: Smc>(
    m: &S,
    k1: &Comonoid<S::Mor>,
    k2: &Comonoid<S::Mor>,
) -> Result<Comonoid<S::Mor>> {
    let (c, d) = (k1.carrier, k2.carrier);
    let middle = m.whisker_right(&m.whisker_left(c, &m.symmetry(c, d)), d);
    Ok(Comonoid {
        carrier: m.tensor_ob(c, d),
        counit: m.tensor_mor(&k1.counit, &k2.counit),
        comult: m.compose(&m.tensor_mor(&k1.comult, &k2.comult), &middle)?,
    })
}

/// A comonoid homomorphism between two entries of a comonoid list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComonMor<M> {
    pub source: usize,
    pub target: usize,
    pub mor: M,
}

/// Objects are positions in the comonoid list.
pub type ComonCategory<M> = Labeled<usize, ComonMor<M>>;

/// The category of the given comonoids and the carrier morphisms `f: c → d`
/// with `f ⨟ ε_d = ε_c` and `f ⨟ δ_d = δ_c ⨟ (f ⊗ f)`. Fails if a composite
/// of homomorphisms is not one.
pub fn comon_category<S: Smc>(
    m: &S,
    comonoids: &[Comonoid<S::Mor>],
    limit: Limit,
) -> Result<ComonCategory<S::Mor>> {
    let mut morphisms = Vec::new();
    for (i, a) in comonoids.iter().enumerate() {
        for (j, b) in comonoids.iter().enumerate() {
            for f in m.hom_limited(a.carrier, b.carrier, limit)? {
                let counit_ok = m.compose(&f, &b.counit)? == a.counit;
                let comult_ok =
                    m.compose(&f, &b.comult)? == m.compose(&a.comult, &m.tensor_mor(&f, &f))?;
                if counit_ok && comult_ok {
                    morphisms.push((
                        i,
                        j,
                        ComonMor {
                            source: i,
                            target: j,
                            mor: f,
                        },
                    ));
                }
            }
            limit.check(morphisms.len() as u128)?;
        }
    }
    Labeled::build(
        (0..comonoids.len()).collect(),
        morphisms,
        |&i| {
            Ok(ComonMor {
                source: i,
                target: i,
                mor: m.identity(comonoids[i].carrier),
            })
        },
        |f, g| {
            Ok(ComonMor {
                source: f.source,
                target: g.target,
                mor: m.compose(&f.mor, &g.mor)?,
            })
        },
    )
}
