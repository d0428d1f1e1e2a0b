use crate::catkit::{
    check_isomorphism, twisted_arrow, FinCategory, FunctorData, IsoReport, Labeled, TwistedMor,
};
use crate::error::{Error, Result};
use crate::indexed::{lens_category, IndexedCat};

/// A morphism `x → y` of the coslice under `c`: `h: cod x → cod y` with `x ⨟ h = y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosliceMor {
    pub source: usize,
    pub target: usize,
    pub h: usize,
}

/// Coslices of a finite category, with labeled fibers.
#[derive(Debug, Clone)]
pub struct Coslice {
    pub fibers: Vec<Labeled<usize, CosliceMor>>,
    pub indexed: IndexedCat,
}

/// Fiber over `c`: morphisms out of `c` (ascending id) and commuting
/// triangles, ordered by `(source, target, h)`. Reindexing along `f: b → c`
/// precomposes with `f`.
pub fn coslice_indexed(c: &FinCategory) -> Result<Coslice> {
    let comp = |f: usize, g: usize| {
        c.compose(f, g)
            .ok_or_else(|| Error::MalformedData(format!("({f}, {g}) is not composable")))
    };
    let mut fibers = Vec::with_capacity(c.n_objects());
    for o in 0..c.n_objects() {
        let objects: Vec<usize> = c.out(o).to_vec();
        let mut morphisms = Vec::new();
        for (i, &x) in objects.iter().enumerate() {
            for (j, &y) in objects.iter().enumerate() {
                for &h in c.hom(c.cod(x), c.cod(y)) {
                    if comp(x, h)? == y {
                        morphisms.push((i, j, CosliceMor { source: x, target: y, h }));
                    }
                }
            }
        }
        fibers.push(Labeled::build(
            objects,
            morphisms,
            |&x| {
                Ok(CosliceMor {
                    source: x,
                    target: x,
                    h: c.identity(c.cod(x)),
                })
            },
            |u, v| {
                Ok(CosliceMor {
                    source: u.source,
                    target: v.target,
                    h: comp(u.h, v.h)?,
                })
            },
        )?);
    }
    let missing = || Error::MalformedData("precomposite is missing from its coslice".into());
    let reindex = (0..c.n_morphisms())
        .map(|f| {
            let (from, to) = (&fibers[c.cod(f)], &fibers[c.dom(f)]);
            let obj_map = from
                .objects()
                .iter()
                .map(|&x| to.object_id(&comp(f, x)?).ok_or_else(missing))
                .collect::<Result<Vec<_>>>()?;
            let mor_map = from
                .morphisms()
                .iter()
                .map(|u| {
                    let pulled = CosliceMor {
                        source: comp(f, u.source)?,
                        target: comp(f, u.target)?,
                        h: u.h,
                    };
                    to.morphism_id(&pulled).ok_or_else(missing)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FunctorData { obj_map, mor_map })
        })
        .collect::<Result<Vec<_>>>()?;
    let indexed = IndexedCat::new(
        c.clone(),
        fibers.iter().map(|f| f.category().clone()).collect(),
        reindex,
    )?;
    Ok(Coslice { fibers, indexed })
}

/// Builds `Lens` of the coslice indexed category and the twisted arrow
/// category and checks the bijection `⟨c|x⟩ ↦ x`, `⟨f|h⟩ ↦ (f, h)`.
pub fn check_twisted_iso(c: &FinCategory) -> Result<IsoReport> {
    let coslice = coslice_indexed(c)?;
    let lens = lens_category(&coslice.indexed)?;
    let tw = twisted_arrow(c)?;
    let functor = lens.functor_to(
        &tw,
        |o| *coslice.fibers[o.base].object(o.fiber),
        |m| {
            let fiber = &coslice.fibers[m.source.base];
            TwistedMor {
                source: *fiber.object(m.source.fiber),
                target: *coslice.fibers[m.target.base].object(m.target.fiber),
                forward: m.get,
                backward: fiber.morphism(m.put).h,
            }
        },
    )?;
    let checks = check_isomorphism(lens.category(), tw.category(), &functor)?;
    let sides = [lens.category(), tw.category()];
    Ok(IsoReport {
        name: "twisted-arrow".into(),
        objects: sides.iter().map(|s| s.n_objects()).collect(),
        morphisms: sides.iter().map(|s| s.n_morphisms()).collect(),
        checks,
    })
}
