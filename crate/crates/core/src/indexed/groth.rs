use serde::{Deserialize, Serialize};

use super::{pointwise_opposite, CovIndexedCat, IndexedCat};
use crate::catkit::{
    check_commutes, check_isomorphism, FinCategory, FunctorData, IsoReport, Labeled,
};
use crate::error::{Error, Result};

/// An object `⟨c | x⟩`: a base object and an object of its fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensObject {
    pub base: usize,
    pub fiber: usize,
}

impl LensObject {
    pub fn new(base: usize, fiber: usize) -> Self {
        Self { base, fiber }
    }
}

/// A morphism of a total category over a base: a base morphism `get` and a
/// fiber morphism `put`.
///
/// In `Lens_F` the put part lives in `fiber(source.base)` and runs
/// `reindex(get)(target.fiber) → source.fiber`; in the Grothendieck
/// constructions it is the corresponding forward fiber morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensMorphism {
    pub get: usize,
    pub put: usize,
    pub source: LensObject,
    pub target: LensObject,
}

/// A category glued from fibers, with every id labeled by its data.
pub type TotalCategory = Labeled<LensObject, LensMorphism>;

/// The projection to the base: `⟨c|x⟩ ↦ c`, `⟨f|f♯⟩ ↦ f`.
pub fn projection(total: &TotalCategory) -> FunctorData {
    FunctorData {
        obj_map: total.objects().iter().map(|o| o.base).collect(),
        mor_map: total.morphisms().iter().map(|m| m.get).collect(),
    }
}

fn total_objects(fibers: &[FinCategory]) -> (Vec<LensObject>, Vec<usize>) {
    let mut offsets = Vec::with_capacity(fibers.len());
    let mut objects = Vec::new();
    for (c, fiber) in fibers.iter().enumerate() {
        offsets.push(objects.len());
        objects.extend((0..fiber.n_objects()).map(|x| LensObject::new(c, x)));
    }
    (objects, offsets)
}

/// `preimages[s]` lists the objects sent to `s` by `functor`, ascending.
fn preimages(functor: &FunctorData, target_objects: usize) -> Vec<Vec<usize>> {
    let mut pre = vec![Vec::new(); target_objects];
    for (x, &s) in functor.obj_map.iter().enumerate() {
        pre[s].push(x);
    }
    pre
}

fn composite(fiber: &FinCategory, f: usize, g: usize) -> Result<usize> {
    fiber
        .compose(f, g)
        .ok_or_else(|| Error::MalformedData(format!("fiber morphisms ({f}, {g}) are not composable")))
}

fn base_composite(base: &FinCategory, f: usize, g: usize) -> Result<usize> {
    base.compose(f, g)
        .ok_or_else(|| Error::MalformedData(format!("base morphisms ({f}, {g}) are not composable")))
}

/// `Lens_F`, built directly: a morphism `⟨c|x⟩ → ⟨d|y⟩` is a pair
/// `⟨f | f♯⟩` with `f: c → d` and `f♯: reindex(f)(y) → x` in `fiber(c)`.
/// Composition is `⟨f ⨟ g | reindex(f)(g♯) ⨟ f♯⟩`.
///
/// Morphisms are ordered by `(get, put, target fiber object)`.
pub fn lens_category(f: &IndexedCat) -> Result<TotalCategory> {
    let base = f.base();
    let (objects, offsets) = total_objects(f.fibers());
    let mut morphisms = Vec::new();
    for get in 0..base.n_morphisms() {
        let (c, d) = (base.dom(get), base.cod(get));
        let fiber = f.fiber(c);
        let pre = preimages(f.reindex(get), fiber.n_objects());
        for put in 0..fiber.n_morphisms() {
            let x = fiber.cod(put);
            for &y in &pre[fiber.dom(put)] {
                morphisms.push((
                    offsets[c] + x,
                    offsets[d] + y,
                    LensMorphism {
                        get,
                        put,
                        source: LensObject::new(c, x),
                        target: LensObject::new(d, y),
                    },
                ));
            }
        }
    }
    Labeled::build(
        objects,
        morphisms,
        |&o| Ok(identity_label(base, f.fiber(o.base), o)),
        |m, n| {
            let lifted = f.reindex(m.get).mor_map[n.put];
            Ok(LensMorphism {
                get: base_composite(base, m.get, n.get)?,
                put: composite(f.fiber(m.source.base), lifted, m.put)?,
                source: m.source,
                target: n.target,
            })
        },
    )
}

fn identity_label(base: &FinCategory, fiber: &FinCategory, o: LensObject) -> LensMorphism {
    LensMorphism {
        get: base.identity(o.base),
        put: fiber.identity(o.fiber),
        source: o,
        target: o,
    }
}

/// Covariant Grothendieck construction `∫G`: a morphism `(b,x) → (b',y)` is
/// `(f, f♯)` with `f♯: G(f)(x) → y` in `fiber(b')`, composing as
/// `(f ⨟ g, G(g)(f♯) ⨟ g♯)`. Ordered by `(base, fiber morphism, source fiber object)`.
pub fn groth_cov(g: &CovIndexedCat) -> Result<TotalCategory> {
    let base = g.base();
    let (objects, offsets) = total_objects(&g.fibers);
    let mut morphisms = Vec::new();
    for f in 0..base.n_morphisms() {
        let (b, b2) = (base.dom(f), base.cod(f));
        let fiber = g.fiber(b2);
        let pre = preimages(g.pushforward(f), fiber.n_objects());
        for p in 0..fiber.n_morphisms() {
            let y = fiber.cod(p);
            for &x in &pre[fiber.dom(p)] {
                morphisms.push((
                    offsets[b] + x,
                    offsets[b2] + y,
                    LensMorphism {
                        get: f,
                        put: p,
                        source: LensObject::new(b, x),
                        target: LensObject::new(b2, y),
                    },
                ));
            }
        }
    }
    Labeled::build(
        objects,
        morphisms,
        |&o| Ok(identity_label(base, g.fiber(o.base), o)),
        |m, n| {
            let pushed = g.pushforward(n.get).mor_map[m.put];
            Ok(LensMorphism {
                get: base_composite(base, m.get, n.get)?,
                put: composite(g.fiber(n.target.base), pushed, n.put)?,
                source: m.source,
                target: n.target,
            })
        },
    )
}

/// Contravariant Grothendieck construction: a morphism `(c,x) → (d,y)` is
/// `(f, f♯)` with `f♯: x → F(f)(y)` in `fiber(c)`, composing as
/// `(f ⨟ g, f♯ ⨟ F(f)(g♯))`. Ordered by `(base, fiber morphism, target fiber object)`.
pub fn groth_contra(f: &IndexedCat) -> Result<TotalCategory> {
    let base = f.base();
    let (objects, offsets) = total_objects(f.fibers());
    let mut morphisms = Vec::new();
    for get in 0..base.n_morphisms() {
        let (c, d) = (base.dom(get), base.cod(get));
        let fiber = f.fiber(c);
        let pre = preimages(f.reindex(get), fiber.n_objects());
        for p in 0..fiber.n_morphisms() {
            let x = fiber.dom(p);
            for &y in &pre[fiber.cod(p)] {
                morphisms.push((
                    offsets[c] + x,
                    offsets[d] + y,
                    LensMorphism {
                        get,
                        put: p,
                        source: LensObject::new(c, x),
                        target: LensObject::new(d, y),
                    },
                ));
            }
        }
    }
    Labeled::build(
        objects,
        morphisms,
        |&o| Ok(identity_label(base, f.fiber(o.base), o)),
        |m, n| {
            let lifted = f.reindex(m.get).mor_map[n.put];
            Ok(LensMorphism {
                get: base_composite(base, m.get, n.get)?,
                put: composite(f.fiber(m.source.base), m.put, lifted)?,
                source: m.source,
                target: n.target,
            })
        },
    )
}

/// Builds `(∫F)^op` (covariant construction over `C^op`, then opposed),
/// `∫ᶜ(Fᵖ)` and `Lens_F`, and verifies explicit isomorphisms between all
/// three that commute with the projections to the base.
pub fn check_tfae_iso(f: &IndexedCat) -> Result<IsoReport> {
    let cov = groth_cov(&f.read_covariantly())?;
    let cov_op = cov.category().opposite();
    let contra = groth_contra(&pointwise_opposite(f))?;
    let lens = lens_category(f)?;

    // A morphism of ∫F over C^op runs (d,y) → (c,x); opposing it gives the lens data directly.
    let flip = |m: &LensMorphism| LensMorphism {
        source: m.target,
        target: m.source,
        ..*m
    };
    let cov_to_lens = cov.functor_to(&lens, |o| *o, flip)?;
    let contra_to_lens = contra.functor_to(&lens, |o| *o, |m| *m)?;
    let cov_to_contra = cov.functor_to(&contra, |o| *o, flip)?;

    let mut checks = 0;
    checks += check_isomorphism(&cov_op, lens.category(), &cov_to_lens)
        .map_err(|e| context("(∫F)^op ≅ Lens_F", e))?;
    checks += check_isomorphism(contra.category(), lens.category(), &contra_to_lens)
        .map_err(|e| context("∫ᶜFᵖ ≅ Lens_F", e))?;
    checks += check_isomorphism(&cov_op, contra.category(), &cov_to_contra)
        .map_err(|e| context("(∫F)^op ≅ ∫ᶜFᵖ", e))?;

    let (pi_cov, pi_contra, pi_lens) = (projection(&cov), projection(&contra), projection(&lens));
    checks += check_commutes(&pi_cov, &cov_to_lens, &pi_lens, "(∫F)^op → Lens_F")?;
    checks += check_commutes(&pi_contra, &contra_to_lens, &pi_lens, "∫ᶜFᵖ → Lens_F")?;
    checks += check_commutes(&pi_cov, &cov_to_contra, &pi_contra, "(∫F)^op → ∫ᶜFᵖ")?;

    let sides = [&cov_op, contra.category(), lens.category()];
    Ok(IsoReport {
        name: "tfae".to_string(),
        objects: sides.iter().map(|c| c.n_objects()).collect(),
        morphisms: sides.iter().map(|c| c.n_morphisms()).collect(),
        checks,
    })
}

fn context(what: &str, e: Error) -> Error {
    match e {
        Error::IsoFailure(msg) => Error::IsoFailure(format!("{what}: {msg}")),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::super::check_indexed_laws;
    use super::*;
    use crate::catkit::{
        check_category_laws, check_functor_laws, commutative_square, walking_arrow,
    };

    #[test]
    fn constant_terminal_total_categories_match_base() {
        for base in [walking_arrow(), commutative_square()] {
            let f = IndexedCat::constant_terminal(base.clone());
            let lens = lens_category(&f).unwrap();
            let contra = groth_contra(&f).unwrap();
            let cov = groth_cov(&f.read_covariantly()).unwrap();
            for total in [&lens, &contra] {
                check_isomorphism(total.category(), &base, &projection(total)).unwrap();
            }
            check_isomorphism(cov.category(), &base.opposite(), &projection(&cov)).unwrap();
            let report = check_tfae_iso(&f).unwrap();
            assert_eq!(report.objects, vec![base.n_objects(); 3]);
        }
    }

    #[test]
    fn object_count_is_disjoint_union() {
        let f = IndexedCat::constant(walking_arrow(), commutative_square());
        let lens = lens_category(&f).unwrap();
        assert_eq!(lens.category().n_objects(), 2 * 4);
        assert!(check_category_laws(lens.category()).is_pass());
        let pi = projection(&lens);
        assert!(check_functor_laws(lens.category(), f.base(), &pi).unwrap().is_pass());
        let g = groth_contra(&pointwise_opposite(&f)).unwrap();
        assert_eq!(g.objects(), lens.objects());
        check_tfae_iso(&f).unwrap();
    }

    #[test]
    fn hom_counts_match_brute_force_for_constant_fiber() {
        // For a constant F every reindexing functor is the identity, so
        // |Lens((c,x),(d,y))| = |C(c,d)| · |K(y,x)|.
        let k = commutative_square();
        let base = walking_arrow();
        let f = IndexedCat::constant(base.clone(), k.clone());
        assert!(check_indexed_laws(&f).is_pass());
        let lens = lens_category(&f).unwrap();
        let cov = groth_cov(&f.read_covariantly()).unwrap();
        for (i, a) in lens.objects().iter().enumerate() {
            for (j, b) in lens.objects().iter().enumerate() {
                let expected = base.hom(a.base, b.base).len() * k.hom(b.fiber, a.fiber).len();
                assert_eq!(lens.category().hom(i, j).len(), expected);
                let cov_expected = base.hom(b.base, a.base).len() * k.hom(a.fiber, b.fiber).len();
                assert_eq!(cov.category().hom(i, j).len(), cov_expected);
            }
        }
    }
}
