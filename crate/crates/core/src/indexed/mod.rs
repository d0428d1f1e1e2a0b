//! Strict indexed categories `C^op → Cat` and the categories built from them.
//!
//! An [`IndexedCat`] stores a fiber category over every base object and a
//! reindexing functor `fiber(cod f) → fiber(dom f)` for every base morphism.
//! Functoriality is required on the nose, which keeps every law decidable by
//! comparing ids.

mod groth;
mod tensor;

pub use groth::{
    check_tfae_iso, groth_contra, groth_cov, lens_category, projection, LensMorphism, LensObject,
    TotalCategory,
};
pub use tensor::{check_laxator, Laxator, LensTensor, MonoidalBase};

use serde::{Deserialize, Serialize};

use crate::catkit::{
    check_category_laws, check_functor_laws, terminal_category, FinCategory, FunctorData,
    LawReport, RawCategory,
};
use crate::error::{Error, Result};

/// A strict functor `C^op → Cat`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedCat {
    base: FinCategory,
    fibers: Vec<FinCategory>,
    reindex: Vec<FunctorData>,
}

/// A strict functor `C → Cat`; `pushforward[f]` goes `fiber(dom f) → fiber(cod f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovIndexedCat {
    base: FinCategory,
    fibers: Vec<FinCategory>,
    pushforward: Vec<FunctorData>,
}

fn validate_shape(
    base: &FinCategory,
    fibers: &[FinCategory],
    maps: &[FunctorData],
    covariant: bool,
) -> Result<()> {
    if fibers.len() != base.n_objects() {
        return Err(Error::MalformedData(format!(
            "{} fibers for {} base objects",
            fibers.len(),
            base.n_objects()
        )));
    }
    if maps.len() != base.n_morphisms() {
        return Err(Error::MalformedData(format!(
            "{} reindexing functors for {} base morphisms",
            maps.len(),
            base.n_morphisms()
        )));
    }
    for (f, map) in maps.iter().enumerate() {
        let (mut src, mut tgt) = (base.cod(f), base.dom(f));
        if covariant {
            std::mem::swap(&mut src, &mut tgt);
        }
        map.validate_shape(&fibers[src], &fibers[tgt])
            .map_err(|e| Error::MalformedData(format!("reindexing along {f}: {e}")))?;
    }
    Ok(())
}

impl IndexedCat {
    pub fn new(base: FinCategory, fibers: Vec<FinCategory>, reindex: Vec<FunctorData>) -> Result<Self> {
        validate_shape(&base, &fibers, &reindex, false)?;
        Ok(Self {
            base,
            fibers,
            reindex,
        })
    }

    /// Every fiber is `fiber` and every reindexing functor is the identity.
    pub fn constant(base: FinCategory, fiber: FinCategory) -> Self {
        let reindex = vec![FunctorData::identity(&fiber); base.n_morphisms()];
        let fibers = vec![fiber; base.n_objects()];
        Self {
            base,
            fibers,
            reindex,
        }
    }

    pub fn constant_terminal(base: FinCategory) -> Self {
        Self::constant(base, terminal_category())
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn fiber(&self, object: usize) -> &FinCategory {
        &self.fibers[object]
    }

    pub fn fibers(&self) -> &[FinCategory] {
        &self.fibers
    }

    /// The functor `fiber(cod f) → fiber(dom f)`.
    pub fn reindex(&self, f: usize) -> &FunctorData {
        &self.reindex[f]
    }

    /// The same data viewed as a covariant functor on the opposite base.
    pub fn read_covariantly(&self) -> CovIndexedCat {
        CovIndexedCat {
            base: self.base.opposite(),
            fibers: self.fibers.clone(),
            pushforward: self.reindex.clone(),
        }
    }

    pub fn from_raw(raw: &RawIndexed) -> Result<Self> {
        let base = FinCategory::from_raw(&raw.base)?;
        let fibers = raw
            .fibers
            .iter()
            .enumerate()
            .map(|(i, c)| {
                FinCategory::from_raw(c).map_err(|e| Error::MalformedData(format!("fiber {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut reindex: Vec<Option<FunctorData>> = vec![None; base.n_morphisms()];
        for entry in &raw.reindex {
            let slot = reindex.get_mut(entry.mor).ok_or_else(|| {
                Error::MalformedData(format!("reindex entry for missing base morphism {}", entry.mor))
            })?;
            if slot.is_some() {
                return Err(Error::MalformedData(format!(
                    "duplicate reindex entry for base morphism {}",
                    entry.mor
                )));
            }
            *slot = Some(FunctorData {
                obj_map: entry.obj_map.clone(),
                mor_map: entry.mor_map.clone(),
            });
        }
        let reindex = reindex
            .into_iter()
            .enumerate()
            .map(|(f, r)| {
                r.ok_or_else(|| Error::MalformedData(format!("no reindex entry for base morphism {f}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, fibers, reindex)
    }

    pub fn to_raw(&self) -> RawIndexed {
        RawIndexed {
            base: self.base.to_raw(),
            fibers: self.fibers.iter().map(FinCategory::to_raw).collect(),
            reindex: self
                .reindex
                .iter()
                .enumerate()
                .map(|(mor, r)| RawReindex {
                    mor,
                    obj_map: r.obj_map.clone(),
                    mor_map: r.mor_map.clone(),
                })
                .collect(),
        }
    }
}

impl CovIndexedCat {
    pub fn new(
        base: FinCategory,
        fibers: Vec<FinCategory>,
        pushforward: Vec<FunctorData>,
    ) -> Result<Self> {
        validate_shape(&base, &fibers, &pushforward, true)?;
        Ok(Self {
            base,
            fibers,
            pushforward,
        })
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn fiber(&self, object: usize) -> &FinCategory {
        &self.fibers[object]
    }

    /// The functor `fiber(dom f) → fiber(cod f)`.
    pub fn pushforward(&self, f: usize) -> &FunctorData {
        &self.pushforward[f]
    }
}

/// JSON form of an [`IndexedCat`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawIndexed {
    pub base: RawCategory,
    pub fibers: Vec<RawCategory>,
    pub reindex: Vec<RawReindex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawReindex {
    pub mor: usize,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

/// Checks the base and fibers, every reindexing functor, and strict
/// functoriality: `reindex(id) = id` and `reindex(f ⨟ g) = reindex(g) ⨟ reindex(f)`.
pub fn check_indexed_laws(f: &IndexedCat) -> LawReport {
    check_strictness(&f.base, &f.fibers, &f.reindex, false)
}

/// Covariant variant: `pushforward(f ⨟ g) = pushforward(f) ⨟ pushforward(g)`.
pub fn check_cov_indexed_laws(g: &CovIndexedCat) -> LawReport {
    check_strictness(&g.base, &g.fibers, &g.pushforward, true)
}

fn check_strictness(
    base: &FinCategory,
    fibers: &[FinCategory],
    maps: &[FunctorData],
    covariant: bool,
) -> LawReport {
    let mut report = LawReport::default();
    report.absorb("base", check_category_laws(base));
    for (c, fiber) in fibers.iter().enumerate() {
        report.absorb(&format!("fiber {c}"), check_category_laws(fiber));
    }
    for (f, map) in maps.iter().enumerate() {
        let (mut src, mut tgt) = (base.cod(f), base.dom(f));
        if covariant {
            std::mem::swap(&mut src, &mut tgt);
        }
        let functor = check_functor_laws(&fibers[src], &fibers[tgt], map)
            .expect("shapes are validated on construction");
        report.absorb(&format!("reindex {f}"), functor);
    }
    for c in 0..base.n_objects() {
        let id = base.identity(c);
        report.expect(
            maps[id].is_identity(),
            "strict-identity",
            || vec![c],
            || format!("reindexing along the identity on {c} is not the identity functor"),
        );
    }
    for (f, g, fg) in base.composable_pairs() {
        let expected = if covariant {
            maps[f].then(&maps[g])
        } else {
            maps[g].then(&maps[f])
        };
        report.expect(
            maps[fg] == expected,
            "strict-composition",
            || vec![f, g],
            || format!("reindexing along {fg} differs from the composite of its factors"),
        );
    }
    report
}

/// Replaces every fiber by its opposite. The reindexing functors keep their
/// object and morphism assignments.
pub fn pointwise_opposite(f: &IndexedCat) -> IndexedCat {
    IndexedCat {
        base: f.base.clone(),
        fibers: f.fibers.iter().map(FinCategory::opposite).collect(),
        reindex: f.reindex.clone(),
    }
}
