use serde::{Deserialize, Serialize};

use super::slice::{slice_indexed, FiberFamily, SliceIndexed};
use crate::catkit::{check_functor_laws, FunctorData, Labeled};
use crate::error::{Error, Result};
use crate::finset::{all_maps, diagonal, hom_count, product, product_map, terminal, FinFn};
use crate::indexed::{lens_category, LensMorphism, LensObject, TotalCategory};
use crate::limit::Limit;

/// A pair of finite sets `⟨c|x⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassicLensOb {
    pub c: usize,
    pub x: usize,
}

impl ClassicLensOb {
    pub fn new(c: usize, x: usize) -> Self {
        Self { c, x }
    }
}

impl std::fmt::Display for ClassicLensOb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "⟨{}|{}⟩", self.c, self.x)
    }
}

/// A lens `⟨c|x⟩ → ⟨d|y⟩`: `get: c → d` and `put: c × y → x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassicLensMor {
    pub source: ClassicLensOb,
    pub target: ClassicLensOb,
    pub get: FinFn,
    pub put: FinFn,
}

impl ClassicLensMor {
    pub fn new(source: ClassicLensOb, target: ClassicLensOb, get: FinFn, put: FinFn) -> Result<Self> {
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
        let (s, t) = (self.source, self.target);
        if self.get.dom() != s.c || self.get.cod() != t.c {
            return Err(Error::MalformedData(format!("get must be a map {} → {}", s.c, t.c)));
        }
        if self.put.dom() != s.c * t.x || self.put.cod() != s.x {
            return Err(Error::MalformedData(format!(
                "put must be a map {} × {} → {}",
                s.c, t.x, s.x
            )));
        }
        Ok(())
    }

    /// `⟨id_c | ε_c × id_x⟩`.
    pub fn identity(ob: ClassicLensOb) -> Self {
        Self {
            source: ob,
            target: ob,
            get: FinFn::identity(ob.c),
            put: product_map(&terminal(ob.c), &FinFn::identity(ob.x)),
        }
    }

    /// `⟨f ⨟ g | (δ_c × z) ⨟ (c × f × z) ⨟ (c × g♯) ⨟ f♯⟩`.
    pub fn compose(&self, next: &ClassicLensMor) -> Result<ClassicLensMor> {
        if self.target != next.source {
            return Err(Error::InterfaceMismatch(format!(
                "target {} does not match source {}",
                self.target, next.source
            )));
        }
        let c = self.source.c;
        let z = next.target.x;
        let id = FinFn::identity;
        let copy = product_map(&diagonal(c), &id(z));
        let forward = product_map(&id(c), &product_map(&self.get, &id(z)));
        let back = product_map(&id(c), &next.put);
        let put = copy.compose(&forward)?.compose(&back)?.compose(&self.put)?;
        Ok(ClassicLensMor {
            source: self.source,
            target: next.target,
            get: self.get.compose(&next.get)?,
            put,
        })
    }

    /// Componentwise product of lenses.
    pub fn tensor(&self, other: &ClassicLensMor) -> ClassicLensMor {
        let ob = |a: ClassicLensOb, b: ClassicLensOb| ClassicLensOb::new(a.c * b.c, a.x * b.x);
        // put: (c×c')×(y×y') → x×x' is (c×σ×y') ⨟ (f♯ × g♯)
        let (s, t) = (self.source, other.source);
        let (y, y2) = (self.target.x, other.target.x);
        let middle = product_map(
            &FinFn::identity(s.c),
            &product_map(&crate::finset::symmetry(t.c, y), &FinFn::identity(y2)),
        );
        let put = middle
            .compose(&product_map(&self.put, &other.put))
            .expect("shapes agree by construction");
        ClassicLensMor {
            source: ob(self.source, other.source),
            target: ob(self.target, other.target),
            get: product_map(&self.get, &other.get),
            put,
        }
    }

    /// Every lens `source → target`, ordered by `(get, put)`.
    pub fn all_between(source: ClassicLensOb, target: ClassicLensOb) -> Vec<ClassicLensMor> {
        let puts: Vec<FinFn> = all_maps(source.c * target.x, source.x).collect();
        all_maps(source.c, target.c)
            .flat_map(|get| {
                puts.iter().map(move |put| ClassicLensMor {
                    source,
                    target,
                    get: get.clone(),
                    put: put.clone(),
                })
            })
            .collect()
    }
}

pub type ClassicLensCategory = Labeled<ClassicLensOb, ClassicLensMor>;

/// Objects `⟨c|x⟩` with `c, x ≤ max_size`, ordered lexicographically;
/// morphisms ordered by `(source, target, get, put)`.
pub fn classic_lens_category(max_size: usize, limit: Limit) -> Result<ClassicLensCategory> {
    let objects: Vec<ClassicLensOb> = (0..=max_size)
        .flat_map(|c| (0..=max_size).map(move |x| ClassicLensOb::new(c, x)))
        .collect();
    let mut total: u128 = 0;
    for s in &objects {
        for t in &objects {
            let n = hom_count(s.c, t.c).and_then(|g| Some(g * hom_count(s.c * t.x, s.x)?));
            total = total.saturating_add(n.unwrap_or(u128::MAX));
        }
    }
    limit.check(total)?;
    let mut morphisms = Vec::new();
    for (i, &s) in objects.iter().enumerate() {
        for (j, &t) in objects.iter().enumerate() {
            morphisms.extend(ClassicLensMor::all_between(s, t).into_iter().map(|m| (i, j, m)));
        }
    }
    Labeled::build(
        objects,
        morphisms,
        |&o| Ok(ClassicLensMor::identity(o)),
        |f, g| f.compose(g),
    )
}

/// `⟨c|x⟩ ↦ ⟨c | (x, …, x)⟩`.
pub fn embed_classic(ob: ClassicLensOb) -> (usize, FiberFamily) {
    (ob.c, FiberFamily::constant(ob.c, ob.x))
}

/// The dependent lens with put components `k ↦ put(i, k)`.
pub fn embed_classic_mor(lens: &ClassicLensMor) -> Result<super::DepLens> {
    let p = product(lens.source.c, lens.target.x);
    let put = (0..lens.source.c)
        .map(|i| FinFn::from_fn(lens.target.x, lens.source.x, |k| lens.put.apply(p.pair(i, k))))
        .collect::<Result<Vec<_>>>()?;
    super::DepLens::new(
        embed_classic(lens.source).1,
        embed_classic(lens.target).1,
        lens.get.clone(),
        put,
    )
}

/// Result of comparing classic lenses with their image among dependent lenses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub objects: usize,
    pub morphisms: usize,
    pub composable_pairs: usize,
    pub checks: usize,
}

/// Builds classic lenses and dependent lenses at `max_size`, embeds the
/// former into the latter, and checks that the embedding is a functor
/// (composites by the classic formula equal transported composites) and
/// bijective on every hom-set. It is not injective on objects: every
/// `⟨0|x⟩` lands on the empty family.
pub fn check_classic_embedding(max_size: usize, limit: Limit) -> Result<EmbeddingReport> {
    let classic = classic_lens_category(max_size, limit)?;
    let slice = slice_indexed(max_size, limit)?;
    let lens = lens_category(&slice.indexed)?;
    let functor = embedding_functor(&classic, &slice, &lens)?;
    let report = check_functor_laws(classic.category(), lens.category(), &functor)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::IsoFailure(format!("embedding is not a functor: {v}")));
    }
    let mut checks = report.checks;
    let c = classic.category();
    for a in 0..c.n_objects() {
        for b in 0..c.n_objects() {
            let mut image: Vec<usize> = c.hom(a, b).iter().map(|&f| functor.mor_map[f]).collect();
            image.sort_unstable();
            let target = lens.category().hom(functor.obj_map[a], functor.obj_map[b]);
            if image != target {
                return Err(Error::IsoFailure(format!(
                    "hom-set {a} → {b} is not carried bijectively ({} vs {})",
                    image.len(),
                    target.len()
                )));
            }
            checks += 1;
        }
    }
    Ok(EmbeddingReport {
        objects: c.n_objects(),
        morphisms: c.n_morphisms(),
        composable_pairs: c.n_composable_pairs(),
        checks,
    })
}

/// The embedding as functor data between the two built categories.
pub fn embedding_functor(
    classic: &ClassicLensCategory,
    slice: &SliceIndexed,
    lens: &TotalCategory,
) -> Result<FunctorData> {
    let missing = || Error::IsoFailure("classic lens has no dependent counterpart".into());
    let object = |o: &ClassicLensOb| -> Result<LensObject> {
        let (c, family) = embed_classic(*o);
        Ok(LensObject::new(
            slice.base_object(c).ok_or_else(missing)?,
            slice.fiber_object(&family).ok_or_else(missing)?,
        ))
    };
    let obj_map = classic
        .objects()
        .iter()
        .map(|o| lens.object_id(&object(o)?).ok_or_else(missing))
        .collect::<Result<Vec<_>>>()?;
    let mor_map = classic
        .morphisms()
        .iter()
        .map(|m| {
            let label: LensMorphism = slice.lens_label(&embed_classic_mor(m)?).ok_or_else(missing)?;
            lens.morphism_id(&label).ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctorData { obj_map, mor_map })
}
