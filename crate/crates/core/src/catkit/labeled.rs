use std::collections::HashMap;
use std::hash::Hash;

use super::{FinCategory, FunctorData};
use crate::error::{Error, Result};

/// A finite category whose objects and morphisms carry structured labels.
///
/// Constructions describe their morphisms as data (pairs of maps, families of
/// functions, ...) and compose at the level of that data; the label indices
/// turn the results back into ids.
#[derive(Debug, Clone)]
pub struct Labeled<O, M> {
    category: FinCategory,
    objects: Vec<O>,
    morphisms: Vec<M>,
    object_ids: HashMap<O, usize>,
    morphism_ids: HashMap<M, usize>,
}

impl<O, M> Labeled<O, M>
where
    O: Clone + Eq + Hash,
    M: Clone + Eq + Hash,
{
    /// `morphisms` lists `(dom, cod, label)` in final id order. `identity`
    /// returns the label of the identity on an object and `compose` the label
    /// of a composite; both must name morphisms already listed.
    pub fn build(
        objects: Vec<O>,
        morphisms: Vec<(usize, usize, M)>,
        mut identity: impl FnMut(&O) -> Result<M>,
        mut compose: impl FnMut(&M, &M) -> Result<M>,
    ) -> Result<Self> {
        let object_ids = index(&objects, "object")?;
        let (endpoints, labels): (Vec<_>, Vec<_>) =
            morphisms.into_iter().map(|(d, c, m)| ((d, c), m)).unzip();
        let morphism_ids = index(&labels, "morphism")?;
        let lookup = |m: &M| {
            morphism_ids.get(m).copied().ok_or_else(|| {
                Error::MalformedData("construction produced a morphism outside its hom-sets".into())
            })
        };
        let identities = objects
            .iter()
            .map(|o| identity(o).and_then(|m| lookup(&m)))
            .collect::<Result<Vec<_>>>()?;
        let category = FinCategory::from_fn(objects.len(), endpoints, identities, |f, g| {
            lookup(&compose(&labels[f], &labels[g])?)
        })?;
        Ok(Self {
            category,
            objects,
            morphisms: labels,
            object_ids,
            morphism_ids,
        })
    }

    pub fn category(&self) -> &FinCategory {
        &self.category
    }

    pub fn into_category(self) -> FinCategory {
        self.category
    }

    pub fn objects(&self) -> &[O] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[M] {
        &self.morphisms
    }

    pub fn object(&self, id: usize) -> &O {
        &self.objects[id]
    }

    pub fn morphism(&self, id: usize) -> &M {
        &self.morphisms[id]
    }

    pub fn object_id(&self, label: &O) -> Option<usize> {
        self.object_ids.get(label).copied()
    }

    pub fn morphism_id(&self, label: &M) -> Option<usize> {
        self.morphism_ids.get(label).copied()
    }

    /// The same category with every label translated; fails if the new
    /// labels are not distinct.
    pub fn relabel<O2, M2>(
        &self,
        on_object: impl FnMut(&O) -> O2,
        on_morphism: impl FnMut(&M) -> M2,
    ) -> Result<Labeled<O2, M2>>
    where
        O2: Clone + Eq + Hash,
        M2: Clone + Eq + Hash,
    {
        let objects: Vec<O2> = self.objects.iter().map(on_object).collect();
        let morphisms: Vec<M2> = self.morphisms.iter().map(on_morphism).collect();
        Ok(Labeled {
            category: self.category.clone(),
            object_ids: index(&objects, "object")?,
            morphism_ids: index(&morphisms, "morphism")?,
            objects,
            morphisms,
        })
    }

    /// The functor to another category obtained by translating labels.
    /// Fails when a translated label is not present in `target`.
    pub fn functor_to<O2, M2>(
        &self,
        target: &Labeled<O2, M2>,
        mut on_object: impl FnMut(&O) -> O2,
        mut on_morphism: impl FnMut(&M) -> M2,
    ) -> Result<FunctorData>
    where
        O2: Clone + Eq + Hash,
        M2: Clone + Eq + Hash,
    {
        let obj_map = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| {
                target.object_id(&on_object(o)).ok_or_else(|| {
                    Error::IsoFailure(format!("object {i} has no counterpart"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mor_map = self
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| {
                target.morphism_id(&on_morphism(m)).ok_or_else(|| {
                    Error::IsoFailure(format!("morphism {i} has no counterpart"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FunctorData { obj_map, mor_map })
    }
}

impl<O: PartialEq, M: PartialEq> PartialEq for Labeled<O, M> {
    fn eq(&self, other: &Self) -> bool {
        self.category == other.category
            && self.objects == other.objects
            && self.morphisms == other.morphisms
    }
}

fn index<T: Clone + Eq + Hash>(items: &[T], what: &str) -> Result<HashMap<T, usize>> {
    let mut ids = HashMap::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        if ids.insert(item.clone(), i).is_some() {
            return Err(Error::MalformedData(format!("duplicate {what} label at {i}")));
        }
    }
    Ok(ids)
}
