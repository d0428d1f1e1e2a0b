use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite category given by explicit data.
///
/// Objects are `0..n_objects` and morphisms are `0..n_morphisms`. Composition
/// is diagrammatic: `compose(f, g)` is `f ⨟ g` and is defined exactly when
/// `cod(f) == dom(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    n_objects: usize,
    morphisms: Vec<(usize, usize)>,
    identity: Vec<usize>,
    // morphisms out of each object, ascending id
    out: Vec<Vec<usize>>,
    // position of each morphism inside `out[dom]`
    out_pos: Vec<usize>,
    // hom lists, row-major by (dom, cod)
    homs: Vec<Vec<usize>>,
    // comp[f][out_pos[g]] = f ⨟ g for g ∈ out[cod f]
    comp: Vec<Vec<usize>>,
}

/// The JSON form of a [`FinCategory`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub objects: usize,
    pub morphisms: Vec<RawMorphism>,
    pub identity: Vec<usize>,
    pub comp: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub dom: usize,
    pub cod: usize,
}

impl FinCategory {
    /// Builds a category, asking `compose` for every composable pair.
    ///
    /// The closure is called once per composable pair `(f, g)` in ascending
    /// order of `f` and then `g`.
    pub fn from_fn(
        n_objects: usize,
        morphisms: Vec<(usize, usize)>,
        identity: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Result<usize>,
    ) -> Result<Self> {
        let n_mor = morphisms.len();
        if let Some((i, _)) = morphisms
            .iter()
            .enumerate()
            .find(|(_, &(d, c))| d >= n_objects || c >= n_objects)
        {
            return Err(Error::MalformedData(format!(
                "morphism {i} has an endpoint outside the {n_objects} objects"
            )));
        }
        if identity.len() != n_objects {
            return Err(Error::MalformedData(format!(
                "identity table has {} entries for {n_objects} objects",
                identity.len()
            )));
        }
        if let Some(&bad) = identity.iter().find(|&&m| m >= n_mor) {
            return Err(Error::MalformedData(format!(
                "identity refers to morphism {bad}, but there are only {n_mor}"
            )));
        }

        let mut out = vec![Vec::new(); n_objects];
        let mut out_pos = vec![0; n_mor];
        let mut homs = vec![Vec::new(); n_objects * n_objects];
        for (m, &(d, c)) in morphisms.iter().enumerate() {
            out_pos[m] = out[d].len();
            out[d].push(m);
            homs[d * n_objects + c].push(m);
        }

        let mut comp = Vec::with_capacity(n_mor);
        for f in 0..n_mor {
            let next = &out[morphisms[f].1];
            let mut row = Vec::with_capacity(next.len());
            for &g in next {
                let fg = compose(f, g)?;
                if fg >= n_mor {
                    return Err(Error::MalformedData(format!(
                        "composite of ({f}, {g}) is {fg}, but there are only {n_mor} morphisms"
                    )));
                }
                row.push(fg);
            }
            comp.push(row);
        }

        Ok(Self {
            n_objects,
            morphisms,
            identity,
            out,
            out_pos,
            homs,
            comp,
        })
    }

    pub fn from_raw(raw: &RawCategory) -> Result<Self> {
        let morphisms: Vec<(usize, usize)> = raw.morphisms.iter().map(|m| (m.dom, m.cod)).collect();
        let n_mor = morphisms.len();
        let mut table: HashMap<(usize, usize), usize> = HashMap::with_capacity(raw.comp.len());
        for &[f, g, fg] in &raw.comp {
            if f >= n_mor || g >= n_mor {
                return Err(Error::MalformedData(format!(
                    "comp entry [{f}, {g}, {fg}] refers to a missing morphism"
                )));
            }
            if morphisms[f].1 != morphisms[g].0 {
                return Err(Error::MalformedData(format!(
                    "comp entry [{f}, {g}, {fg}] is for a non-composable pair"
                )));
            }
            if table.insert((f, g), fg).is_some() {
                return Err(Error::MalformedData(format!(
                    "comp has a duplicate entry for ({f}, {g})"
                )));
            }
        }
        Self::from_fn(raw.objects, morphisms, raw.identity.clone(), |f, g| {
            table.get(&(f, g)).copied().ok_or_else(|| {
                Error::MalformedData(format!("comp is missing the composable pair ({f}, {g})"))
            })
        })
    }

    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.n_objects,
            morphisms: self
                .morphisms
                .iter()
                .map(|&(dom, cod)| RawMorphism { dom, cod })
                .collect(),
            identity: self.identity.clone(),
            comp: self.composable_pairs().map(|(f, g, fg)| [f, g, fg]).collect(),
        }
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].0
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].1
    }

    pub fn endpoints(&self) -> &[(usize, usize)] {
        &self.morphisms
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identity[object]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identity
    }

    /// `f ⨟ g`, or `None` when the pair is not composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        if f >= self.morphisms.len() || g >= self.morphisms.len() || self.cod(f) != self.dom(g) {
            return None;
        }
        Some(self.comp[f][self.out_pos[g]])
    }

    /// Morphisms out of `object`, ascending.
    pub fn out(&self, object: usize) -> &[usize] {
        &self.out[object]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.n_objects + b]
    }

    /// Every composable pair `(f, g, f ⨟ g)`, ascending in `f` then `g`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.morphisms.len()).flat_map(move |f| {
            self.out[self.cod(f)]
                .iter()
                .zip(&self.comp[f])
                .map(move |(&g, &fg)| (f, g, fg))
        })
    }

    pub fn n_composable_pairs(&self) -> usize {
        self.comp.iter().map(Vec::len).sum()
    }

    /// Same objects and morphism ids, endpoints swapped, composition reversed.
    pub fn opposite(&self) -> FinCategory {
        let morphisms = self.morphisms.iter().map(|&(d, c)| (c, d)).collect();
        Self::from_fn(self.n_objects, morphisms, self.identity.clone(), |f, g| {
            Ok(self.comp[g][self.out_pos[f]])
        })
        .expect("opposite of a valid category is valid")
    }
}
