use serde::{Deserialize, Serialize};

use super::classic::ClassicLensOb;
use crate::catkit::{LawReport, Labeled};
use crate::comonoid::{enumerate_comonoids, smc_lens_category, FinSetCocartesianOp};
use crate::error::{Error, Result};
use crate::finset::{codiagonal, coproduct, sum_map, FinFn};
use crate::indexed::LensObject;
use crate::limit::Limit;

/// A prism `⟨c|x⟩ → ⟨d|y⟩`: `get: d → c` and `put: x → c + y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrismMor {
    pub source: ClassicLensOb,
    pub target: ClassicLensOb,
    pub get: FinFn,
    pub put: FinFn,
}

impl PrismMor {
    pub fn new(source: ClassicLensOb, target: ClassicLensOb, get: FinFn, put: FinFn) -> Result<Self> {
        if get.dom() != target.c || get.cod() != source.c {
            return Err(Error::MalformedData(format!(
                "get must be a map {} → {}",
                target.c, source.c
            )));
        }
        if put.dom() != source.x || put.cod() != source.c + target.x {
            return Err(Error::MalformedData(format!(
                "put must be a map {} → {} + {}",
                source.x, source.c, target.x
            )));
        }
        Ok(Self {
            source,
            target,
            get,
            put,
        })
    }

    /// `get = id`, `put = inr: x → c + x`.
    pub fn identity(ob: ClassicLensOb) -> Self {
        Self {
            source: ob,
            target: ob,
            get: FinFn::identity(ob.c),
            put: coproduct(ob.c, ob.x).inr_map(),
        }
    }

    /// `get = g ⨟ f` and `put = f♯ ⨟ (c + g♯) ⨟ (c + f + z) ⨟ (∇_c + z)`.
    pub fn compose(&self, next: &PrismMor) -> Result<PrismMor> {
        if self.target != next.source {
            return Err(Error::InterfaceMismatch(format!(
                "target {} does not match source {}",
                self.target, next.source
            )));
        }
        let c = self.source.c;
        let z = next.target.x;
        let id = FinFn::identity;
        let put = self
            .put
            .compose(&sum_map(&id(c), &next.put))?
            .compose(&sum_map(&id(c), &sum_map(&self.get, &id(z))))?
            .compose(&sum_map(&codiagonal(c), &id(z)))?;
        Ok(PrismMor {
            source: self.source,
            target: next.target,
            get: next.get.compose(&self.get)?,
            put,
        })
    }

    /// Whether the prism respects element labels on both interfaces:
    /// `get` carries `d`-labels to matching `c`-labels and `put` sends each
    /// element of `x` to an element of `c + y` with the same label.
    pub fn preserves_labels(&self, source: &InterfaceLabels, target: &InterfaceLabels) -> bool {
        let get_ok = (0..self.target.c).all(|j| source.outer[self.get.apply(j)] == target.outer[j]);
        let sum: Vec<usize> = source.outer.iter().chain(&target.inner).copied().collect();
        let put_ok = (0..self.source.x).all(|k| sum[self.put.apply(k)] == source.inner[k]);
        get_ok && put_ok
    }
}

/// Labels (types) on the elements of both halves of an interface `⟨c|x⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterfaceLabels {
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
}

pub type PrismCategory = Labeled<ClassicLensOb, PrismMor>;

/// Prisms on sizes at most `max_size`, built as lenses over the opposite of
/// finite sets with coproduct as tensor and relabeled as [`PrismMor`]. The
/// comonoids used are found by enumeration. Identities and composites are
/// those of the generic construction.
pub fn prism_category(max_size: usize, limit: Limit) -> Result<PrismCategory> {
    let m = FinSetCocartesianOp;
    let mut comonoids = Vec::new();
    for c in 0..=max_size {
        let found = enumerate_comonoids(&m, c, limit)?;
        if found.len() != 1 {
            return Err(Error::MalformedData(format!(
                "expected one comonoid on {c} in the opposite category, found {}",
                found.len()
            )));
        }
        comonoids.extend(found);
    }
    let sizes: Vec<usize> = (0..=max_size).collect();
    let generic = smc_lens_category(&m, &comonoids, &sizes, limit)?;
    let ob = |o: &LensObject| ClassicLensOb::new(comonoids[o.base].carrier, sizes[o.fiber]);
    generic.relabel(ob, |l| PrismMor {
        source: ob(&l.source),
        target: ob(&l.target),
        get: l.get.clone(),
        put: l.put.clone(),
    })
}

/// Compares the direct composition formula with the composites of `cat`
/// on every composable pair.
pub fn check_prism_direct(cat: &PrismCategory) -> Result<LawReport> {
    let mut report = LawReport::default();
    for (f, g, fg) in cat.category().composable_pairs() {
        let direct = cat.morphism(f).compose(cat.morphism(g))?;
        report.expect(
            direct == *cat.morphism(fg),
            "direct-formula",
            || vec![f, g],
            || format!("direct composite {direct:?} differs from the generic one"),
        );
    }
    for o in 0..cat.category().n_objects() {
        let id = cat.morphism(cat.category().identity(o));
        report.expect(
            *id == PrismMor::identity(*cat.object(o)),
            "identity",
            || vec![o],
            || "identity prism is not inr".into(),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catkit::check_category_laws;

    #[test]
    fn small_hom_count_and_identity() {
        let cat = prism_category(1, Limit::default()).unwrap();
        let one = cat.object_id(&ClassicLensOb::new(1, 1)).unwrap();
        assert_eq!(cat.category().hom(one, one).len(), 2);
        let id = cat.morphism(cat.category().identity(one));
        assert_eq!(id.put.table(), &[1]);
    }

    #[test]
    fn generic_and_direct_agree() {
        let cat = prism_category(2, Limit::default()).unwrap();
        assert!(check_category_laws(cat.category()).is_pass());
        let report = check_prism_direct(&cat).unwrap();
        assert!(report.is_pass(), "{:?}", report.violations.first());
    }

    #[test]
    fn label_preservation() {
        let ob = ClassicLensOb::new(1, 2);
        let labels = InterfaceLabels {
            outer: vec![7],
            inner: vec![7, 8],
        };
        let id = PrismMor::identity(ob);
        assert!(id.preserves_labels(&labels, &labels));
        // send both inner elements to the outer summand: the second one changes label
        let collapse = PrismMor::new(ob, ob, FinFn::identity(1), FinFn::new(2, 3, vec![0, 0]).unwrap())
            .unwrap();
        assert!(!collapse.preserves_labels(&labels, &labels));
    }
}
