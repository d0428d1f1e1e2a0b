use super::{comon_category, ComonCategory, Comonoid, Smc};
use crate::catkit::{check_isomorphism, FunctorData, IsoReport, Labeled};
use crate::error::{Error, Result};
use crate::indexed::{lens_category, IndexedCat, LensObject};
use crate::limit::Limit;

/// A morphism `x → y` of the coKleisli fiber over `c`: an ambient morphism
/// `mor: c ⊗ x → y`. `source` and `target` are the objects `x`, `y` themselves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoKleisliMor<M> {
    pub source: usize,
    pub target: usize,
    pub mor: M,
}

/// The coKleisli indexed category over a list of comonoids, with the labeled
/// base and fibers it was built from.
#[derive(Debug, Clone)]
pub struct CoKleisli<M> {
    pub comonoids: Vec<Comonoid<M>>,
    pub fiber_objects: Vec<usize>,
    pub base: ComonCategory<M>,
    pub fibers: Vec<Labeled<usize, CoKleisliMor<M>>>,
    pub indexed: IndexedCat,
}

fn check_objects(fiber_objects: &[usize]) -> Result<()> {
    let mut sorted = fiber_objects.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != fiber_objects.len() {
        return Err(Error::MalformedData("fiber objects must be distinct".into()));
    }
    Ok(())
}

/// Base: the comonoid category. Fiber over `c`: the listed objects with
/// `hom(x, y) = C(c ⊗ x, y)`, identity `ε_c ⊗ x` and composite
/// `(δ_c ⊗ x) ⨟ (c ⊗ f) ⨟ g`. Reindexing along `p: c → d` is the identity on
/// objects and sends `h` to `(p ⊗ x) ⨟ h`.
pub fn cokleisli_indexed<S: Smc>(
    m: &S,
    comonoids: &[Comonoid<S::Mor>],
    fiber_objects: &[usize],
    limit: Limit,
) -> Result<CoKleisli<S::Mor>> {
    check_objects(fiber_objects)?;
    let base = comon_category(m, comonoids, limit)?;
    let fibers = comonoids
        .iter()
        .map(|k| cokleisli_fiber(m, k, fiber_objects, limit))
        .collect::<Result<Vec<_>>>()?;

    let reindex = base
        .morphisms()
        .iter()
        .map(|p| {
            let (src, tgt) = (&fibers[p.source], &fibers[p.target]);
            let mor_map = tgt
                .morphisms()
                .iter()
                .map(|h| {
                    let pulled = CoKleisliMor {
                        mor: m.compose(&m.whisker_right(&p.mor, h.source), &h.mor)?,
                        ..h.clone()
                    };
                    src.morphism_id(&pulled).ok_or_else(|| {
                        Error::MalformedData("reindexed morphism is missing from its fiber".into())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FunctorData {
                obj_map: (0..fiber_objects.len()).collect(),
                mor_map,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let indexed = IndexedCat::new(
        base.category().clone(),
        fibers.iter().map(|f| f.category().clone()).collect(),
        reindex,
    )?;
    Ok(CoKleisli {
        comonoids: comonoids.to_vec(),
        fiber_objects: fiber_objects.to_vec(),
        base,
        fibers,
        indexed,
    })
}

fn cokleisli_fiber<S: Smc>(
    m: &S,
    k: &Comonoid<S::Mor>,
    objects: &[usize],
    limit: Limit,
) -> Result<Labeled<usize, CoKleisliMor<S::Mor>>> {
    let c = k.carrier;
    let mut morphisms = Vec::new();
    for (i, &x) in objects.iter().enumerate() {
        for (j, &y) in objects.iter().enumerate() {
            for h in m.hom_limited(m.tensor_ob(c, x), y, limit)? {
                morphisms.push((
                    i,
                    j,
                    CoKleisliMor {
                        source: x,
                        target: y,
                        mor: h,
                    },
                ));
            }
            limit.check(morphisms.len() as u128)?;
        }
    }
    Labeled::build(
        objects.to_vec(),
        morphisms,
        |&x| {
            Ok(CoKleisliMor {
                source: x,
                target: x,
                mor: m.whisker_right(&k.counit, x),
            })
        },
        |f, g| {
            let x = f.source;
            let spread = m.compose(&m.whisker_right(&k.comult, x), &m.whisker_left(c, &f.mor))?;
            Ok(CoKleisliMor {
                source: x,
                target: g.target,
                mor: m.compose(&spread, &g.mor)?,
            })
        },
    )
}

/// A lens `⟨c|x⟩ → ⟨d|y⟩` over comonoids: a comonoid morphism `get: c → d`
/// and `put: c ⊗ y → x`. Object labels use comonoid positions and fiber
/// object positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmcLensMor<M> {
    pub source: LensObject,
    pub target: LensObject,
    pub get: M,
    pub put: M,
}

pub type SmcLensCategory<M> = Labeled<LensObject, SmcLensMor<M>>;

/// Lenses built directly from the ambient structure: identity
/// `⟨id_c | ε_c ⊗ x⟩` and composite put
/// `(δ_c ⊗ z) ⨟ (c ⊗ f ⊗ z) ⨟ (c ⊗ g♯) ⨟ f♯`.
///
/// Morphisms are ordered by `(source, target, get, put)`.
pub fn smc_lens_category<S: Smc>(
    m: &S,
    comonoids: &[Comonoid<S::Mor>],
    fiber_objects: &[usize],
    limit: Limit,
) -> Result<SmcLensCategory<S::Mor>> {
    check_objects(fiber_objects)?;
    let base = comon_category(m, comonoids, limit)?;
    let objects: Vec<LensObject> = (0..comonoids.len())
        .flat_map(|c| (0..fiber_objects.len()).map(move |x| LensObject::new(c, x)))
        .collect();
    let mut morphisms = Vec::new();
    for (s, src) in objects.iter().enumerate() {
        for (t, tgt) in objects.iter().enumerate() {
            let c = comonoids[src.base].carrier;
            let (x, y) = (fiber_objects[src.fiber], fiber_objects[tgt.fiber]);
            let puts = m.hom_limited(m.tensor_ob(c, y), x, limit)?;
            for &f in base.category().hom(src.base, tgt.base) {
                for put in &puts {
                    morphisms.push((
                        s,
                        t,
                        SmcLensMor {
                            source: *src,
                            target: *tgt,
                            get: base.morphism(f).mor.clone(),
                            put: put.clone(),
                        },
                    ));
                }
            }
            limit.check(morphisms.len() as u128)?;
        }
    }
    Labeled::build(
        objects,
        morphisms,
        |o| {
            let k = &comonoids[o.base];
            Ok(SmcLensMor {
                source: *o,
                target: *o,
                get: m.identity(k.carrier),
                put: m.whisker_right(&k.counit, fiber_objects[o.fiber]),
            })
        },
        |f, g| {
            let k = &comonoids[f.source.base];
            let c = k.carrier;
            let z = fiber_objects[g.target.fiber];
            let copy = m.whisker_right(&k.comult, z);
            let forward = m.whisker_left(c, &m.whisker_right(&f.get, z));
            let back = m.whisker_left(c, &g.put);
            let put = m.compose(&m.compose(&m.compose(&copy, &forward)?, &back)?, &f.put)?;
            Ok(SmcLensMor {
                source: f.source,
                target: g.target,
                get: m.compose(&f.get, &g.get)?,
                put,
            })
        },
    )
}

/// Checks that `Lens` of the coKleisli indexed category and the directly
/// built lens category have the same objects, the same `(get, put)` data, and
/// the same composites, via the identity-on-data bijection.
pub fn check_recover_usual<S: Smc>(
    m: &S,
    comonoids: &[Comonoid<S::Mor>],
    fiber_objects: &[usize],
    limit: Limit,
) -> Result<IsoReport> {
    let ck = cokleisli_indexed(m, comonoids, fiber_objects, limit)?;
    let generic = lens_category(&ck.indexed)?;
    let direct = smc_lens_category(m, comonoids, fiber_objects, limit)?;
    if generic.objects() != direct.objects() {
        return Err(Error::IsoFailure("object sets differ".into()));
    }
    let functor = generic.functor_to(
        &direct,
        |o| *o,
        |l| SmcLensMor {
            source: l.source,
            target: l.target,
            get: ck.base.morphism(l.get).mor.clone(),
            put: ck.fibers[l.source.base].morphism(l.put).mor.clone(),
        },
    )?;
    let checks = check_isomorphism(generic.category(), direct.category(), &functor)?;
    let sides = [generic.category(), direct.category()];
    Ok(IsoReport {
        name: "recover-usual".into(),
        objects: sides.iter().map(|c| c.n_objects()).collect(),
        morphisms: sides.iter().map(|c| c.n_morphisms()).collect(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_comonoids, FinSetCartesian};
    use super::*;
    use crate::catkit::check_category_laws;
    use crate::finset::{all_maps, product, FinFn};
    use crate::indexed::check_indexed_laws;

    fn fox_list(max: usize) -> Vec<Comonoid<FinFn>> {
        (0..=max)
            .flat_map(|c| enumerate_comonoids(&FinSetCartesian, c, Limit::default()).unwrap())
            .collect()
    }

    #[test]
    fn cokleisli_fibers_obey_laws() {
        let ck = cokleisli_indexed(&FinSetCartesian, &fox_list(2), &[0, 1, 2], Limit::default())
            .unwrap();
        assert!(check_indexed_laws(&ck.indexed).is_pass());
        // unit comonoid: hom(1 × x, y) = hom(x, y)
        let unit_fiber = &ck.fibers[1];
        for (i, &x) in ck.fiber_objects.iter().enumerate() {
            for (j, &y) in ck.fiber_objects.iter().enumerate() {
                let n = crate::finset::hom_count(x, y).unwrap() as usize;
                assert_eq!(unit_fiber.category().hom(i, j).len(), n);
            }
        }
    }

    #[test]
    fn cokleisli_unit_law_by_hand() {
        // over c = 2, composing the identity (ε ⊗ x) with h recovers h
        let m = FinSetCartesian;
        let k = &fox_list(2)[2];
        let (x, y) = (2, 2);
        let p = product(2, x);
        let id = m.whisker_right(&k.counit, x);
        for h in all_maps(p.size(), y) {
            let spread = m
                .compose(&m.whisker_right(&k.comult, x), &m.whisker_left(2, &id))
                .unwrap();
            assert_eq!(spread.compose(&h).unwrap(), h);
        }
    }

    #[test]
    fn smc_lenses_over_cartesian() {
        let lens = smc_lens_category(&FinSetCartesian, &fox_list(2), &[0, 1, 2], Limit::default())
            .unwrap();
        assert!(check_category_laws(lens.category()).is_pass());
        let two = lens.object_id(&LensObject::new(2, 2)).unwrap();
        assert_eq!(lens.category().hom(two, two).len(), 64);
        let id = lens.morphism(lens.category().identity(two));
        assert_eq!(id.put.table(), &[0, 1, 0, 1]);
    }

    #[test]
    fn recover_usual_passes() {
        let report =
            check_recover_usual(&FinSetCartesian, &fox_list(2), &[0, 1, 2], Limit::default()).unwrap();
        assert_eq!(report.objects, vec![9, 9]);
        assert_eq!(report.morphisms[0], report.morphisms[1]);
    }
}
