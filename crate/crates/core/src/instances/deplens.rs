use serde::{Deserialize, Serialize};

use super::slice::{family_homs, tensor_families, tensor_maps, FiberFamily, SliceIndexed};
use crate::catkit::LawReport;
use crate::error::{Error, Result};
use crate::finset::{all_maps, product_map, FinFn};
use crate::indexed::{LensMorphism, LensObject};

/// A dependent lens `⟨c|X⟩ → ⟨d|Y⟩`: `get: c → d` and, for each `i < c`,
/// `put_i: Y_{get(i)} → X_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DepLens {
    pub source: FiberFamily,
    pub target: FiberFamily,
    pub get: FinFn,
    pub put: Vec<FinFn>,
}

impl DepLens {
    pub fn new(source: FiberFamily, target: FiberFamily, get: FinFn, put: Vec<FinFn>) -> Result<Self> {
        let lens = Self {
            source,
            target,
            get,
            put,
        };
        lens.validate()?;
        Ok(lens)
    }

    pub fn validate(&self) -> Result<()> {
        let (c, d) = (self.source.base_size(), self.target.base_size());
        if self.get.dom() != c || self.get.cod() != d {
            return Err(Error::MalformedData(format!("get must be a map {c} → {d}")));
        }
        if self.put.len() != c {
            return Err(Error::MalformedData(format!("expected {c} put components")));
        }
        for (i, p) in self.put.iter().enumerate() {
            let (y, x) = (self.target.fiber(self.get.apply(i)), self.source.fiber(i));
            if p.dom() != y || p.cod() != x {
                return Err(Error::MalformedData(format!("put component {i} must be a map {y} → {x}")));
            }
        }
        Ok(())
    }

    pub fn identity(x: &FiberFamily) -> Self {
        Self {
            source: x.clone(),
            target: x.clone(),
            get: FinFn::identity(x.base_size()),
            put: x.fibers().iter().map(|&n| FinFn::identity(n)).collect(),
        }
    }

    /// `⟨f ⨟ g | (g♯_{f(i)} ⨟ f♯_i)_i⟩`.
    pub fn compose(&self, next: &DepLens) -> Result<DepLens> {
        if self.target != next.source {
            return Err(Error::InterfaceMismatch(format!(
                "target {:?} does not match source {:?}",
                self.target.fibers(),
                next.source.fibers()
            )));
        }
        let put = self
            .put
            .iter()
            .enumerate()
            .map(|(i, p)| next.put[self.get.apply(i)].compose(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(DepLens {
            source: self.source.clone(),
            target: next.target.clone(),
            get: self.get.compose(&next.get)?,
            put,
        })
    }

    /// `⟨f × g | (f♯_i × g♯_j)_{(i,j)}⟩` between the product families.
    pub fn tensor(&self, other: &DepLens) -> DepLens {
        DepLens {
            source: tensor_families(&self.source, &other.source),
            target: tensor_families(&self.target, &other.target),
            get: product_map(&self.get, &other.get),
            put: tensor_maps(&self.put, &other.put),
        }
    }

    /// Every dependent lens `x → y`, ordered by `(get, put)`.
    pub fn all_between(x: &FiberFamily, y: &FiberFamily) -> Result<Vec<DepLens>> {
        let mut out = Vec::new();
        for get in all_maps(x.base_size(), y.base_size()) {
            let pulled = y.reindex(&get)?;
            for put in family_homs(&pulled, x)? {
                out.push(DepLens {
                    source: x.clone(),
                    target: y.clone(),
                    get: get.clone(),
                    put,
                });
            }
        }
        Ok(out)
    }
}

impl SliceIndexed {
    /// The label of `lens` in `lens_category(self.indexed)`, if it lies in range.
    pub fn lens_label(&self, lens: &DepLens) -> Option<LensMorphism> {
        let (c, d) = (lens.source.base_size(), lens.target.base_size());
        let fiber = self.fibers.get(c)?;
        let pulled = lens.target.reindex(&lens.get).ok()?;
        let put = fiber.morphism_id(&lens.put)?;
        if *fiber.object(fiber.category().dom(put)) != pulled {
            return None;
        }
        Some(LensMorphism {
            get: self.base.morphism_id(&lens.get)?,
            put,
            source: LensObject::new(self.base_object(c)?, self.fiber_object(&lens.source)?),
            target: LensObject::new(self.base_object(d)?, self.fiber_object(&lens.target)?),
        })
    }

    /// The dependent lens with the given label.
    pub fn dep_lens(&self, label: &LensMorphism) -> DepLens {
        let fiber = |o: LensObject| self.fibers[o.base].object(o.fiber).clone();
        DepLens {
            source: fiber(label.source),
            target: fiber(label.target),
            get: self.base.morphism(label.get).clone(),
            put: self.fibers[label.source.base].morphism(label.put).clone(),
        }
    }
}

/// Every composable pair `(α, γ)` with both ends among `objects`.
pub fn composable_pairs(objects: &[FiberFamily]) -> Result<Vec<(DepLens, DepLens)>> {
    let mut homs = Vec::with_capacity(objects.len() * objects.len());
    for x in objects {
        for y in objects {
            homs.push(DepLens::all_between(x, y)?);
        }
    }
    let n = objects.len();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for alpha in &homs[a * n + b] {
                    for gamma in &homs[b * n + c] {
                        pairs.push((alpha.clone(), gamma.clone()));
                    }
                }
            }
        }
    }
    Ok(pairs)
}

/// `(α ⊗ β) ⨟ (γ ⊗ δ) = (α ⨟ γ) ⊗ (β ⨟ δ)` for every `(α, γ)` in `left` and
/// `(β, δ)` in `right`. Witnesses are positions in the two lists.
pub fn check_dep_interchange(
    left: &[(DepLens, DepLens)],
    right: &[(DepLens, DepLens)],
) -> Result<LawReport> {
    let mut report = LawReport::default();
    let left_composites = left
        .iter()
        .map(|(a, c)| a.compose(c))
        .collect::<Result<Vec<_>>>()?;
    let right_composites = right
        .iter()
        .map(|(b, d)| b.compose(d))
        .collect::<Result<Vec<_>>>()?;
    for (p, (alpha, gamma)) in left.iter().enumerate() {
        for (q, (beta, delta)) in right.iter().enumerate() {
            let lhs = alpha.tensor(beta).compose(&gamma.tensor(delta))?;
            let rhs = left_composites[p].tensor(&right_composites[q]);
            report.expect(lhs == rhs, "interchange", || vec![p, q], || {
                format!("(α⊗β)⨟(γ⊗δ) = {lhs:?}, (α⨟γ)⊗(β⨟δ) = {rhs:?}")
            });
        }
    }
    Ok(report)
}
