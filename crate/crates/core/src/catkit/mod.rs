//! Finite categories and functors as explicit data, exhaustive law checkers,
//! and a few standard constructions.

mod category;
mod labeled;
mod laws;

pub use category::{FinCategory, RawCategory, RawMorphism};
pub use labeled::Labeled;
pub use laws::{
    check_category_laws, check_commutes, check_functor_laws, check_isomorphism, FunctorData,
    IsoReport, LawReport, Violation,
};

use crate::error::{Error, Result};
use crate::finset::{all_maps, hom_count, FinFn};
use crate::limit::Limit;

/// Opposite category; see [`FinCategory::opposite`].
pub fn opposite(c: &FinCategory) -> FinCategory {
    c.opposite()
}

/// Builds a category from non-identity composites only. `rule(f, g)` is
/// consulted for pairs where neither side is an identity.
fn generated(
    n_objects: usize,
    morphisms: Vec<(usize, usize)>,
    identity: Vec<usize>,
    rule: impl Fn(usize, usize) -> Option<usize>,
) -> FinCategory {
    let is_id = |m: usize| identity.contains(&m);
    FinCategory::from_fn(n_objects, morphisms, identity.clone(), |f, g| {
        if is_id(f) {
            Ok(g)
        } else if is_id(g) {
            Ok(f)
        } else {
            rule(f, g).ok_or_else(|| Error::MalformedData(format!("no composite for ({f}, {g})")))
        }
    })
    .expect("named categories are well formed")
}

/// One object, one morphism.
pub fn terminal_category() -> FinCategory {
    generated(1, vec![(0, 0)], vec![0], |_, _| None)
}

/// `n` objects and only identities.
pub fn discrete(n: usize) -> FinCategory {
    generated(n, (0..n).map(|o| (o, o)).collect(), (0..n).collect(), |_, _| None)
}

/// `0 → 1`: morphisms are `[id₀, id₁, a]`.
pub fn walking_arrow() -> FinCategory {
    generated(2, vec![(0, 0), (1, 1), (0, 1)], vec![0, 1], |_, _| None)
}

/// The commuting square `a → b → d = a → c → d` on objects `a, b, c, d = 0..4`.
///
/// Morphisms: identities `0..4`, then `f: a→b` (4), `g: a→c` (5), `h: b→d` (6),
/// `k: c→d` (7) and the diagonal `a→d` (8) with `f⨟h = g⨟k = 8`.
pub fn commutative_square() -> FinCategory {
    let morphisms = vec![
        (0, 0),
        (1, 1),
        (2, 2),
        (3, 3),
        (0, 1),
        (0, 2),
        (1, 3),
        (2, 3),
        (0, 3),
    ];
    generated(4, morphisms, vec![0, 1, 2, 3], |f, g| match (f, g) {
        (4, 6) | (5, 7) => Some(8),
        _ => None,
    })
}

/// Full subcategory of finite sets on sizes `0..=max_size`; morphisms are
/// labeled by their tables and ordered by `(dom, cod, table)`.
pub type FinSetCategory = Labeled<usize, FinFn>;

pub fn finset_category(max_size: usize, limit: Limit) -> Result<FinSetCategory> {
    let sizes = 0..=max_size;
    let total = sizes
        .clone()
        .flat_map(|a| sizes.clone().map(move |b| hom_count(a, b)))
        .try_fold(0u128, |acc, n| acc.checked_add(n?));
    limit.check_opt(total)?;

    let mut morphisms = Vec::new();
    for a in sizes.clone() {
        for b in sizes.clone() {
            morphisms.extend(all_maps(a, b).map(|f| (a, b, f)));
        }
    }
    Labeled::build(
        sizes.collect(),
        morphisms,
        |&n| Ok(FinFn::identity(n)),
        |f, g| f.compose(g),
    )
}

/// A morphism `x → y` of the twisted arrow category: `forward: dom x → dom y`
/// and `backward: cod y → cod x` with `x = forward ⨟ y ⨟ backward`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedMor {
    pub source: usize,
    pub target: usize,
    pub forward: usize,
    pub backward: usize,
}

/// Objects are the morphisms of `c`; morphisms are twisted squares, ordered by
/// `(source, target, forward, backward)`.
pub fn twisted_arrow(c: &FinCategory) -> Result<Labeled<usize, TwistedMor>> {
    let comp = |f: usize, g: usize| {
        c.compose(f, g)
            .ok_or_else(|| Error::MalformedData(format!("({f}, {g}) is not composable")))
    };
    let mut morphisms = Vec::new();
    for x in 0..c.n_morphisms() {
        for y in 0..c.n_morphisms() {
            for &forward in c.hom(c.dom(x), c.dom(y)) {
                for &backward in c.hom(c.cod(y), c.cod(x)) {
                    if comp(comp(forward, y)?, backward)? == x {
                        morphisms.push((
                            x,
                            y,
                            TwistedMor {
                                source: x,
                                target: y,
                                forward,
                                backward,
                            },
                        ));
                    }
                }
            }
        }
    }
    Labeled::build(
        (0..c.n_morphisms()).collect(),
        morphisms,
        |&x| {
            Ok(TwistedMor {
                source: x,
                target: x,
                forward: c.identity(c.dom(x)),
                backward: c.identity(c.cod(x)),
            })
        },
        |p, q| {
            Ok(TwistedMor {
                source: p.source,
                target: q.target,
                forward: comp(p.forward, q.forward)?,
                backward: comp(q.backward, p.backward)?,
            })
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom_counts(c: &FinCategory) -> Vec<usize> {
        let n = c.n_objects();
        (0..n * n).map(|k| c.hom(k / n, k % n).len()).collect()
    }

    #[test]
    fn named_categories_pass() {
        for c in [terminal_category(), discrete(3), walking_arrow(), commutative_square()] {
            let report = check_category_laws(&c);
            assert!(report.is_pass(), "{:?}", report.violations);
        }
        assert_eq!(walking_arrow().n_morphisms(), 3);
    }

    #[test]
    fn planted_unit_violation_is_cited() {
        let mut raw = walking_arrow().to_raw();
        // corrupt a ⨟ id₁ = a into a ⨟ id₁ = id₀
        for entry in raw.comp.iter_mut() {
            if entry[0] == 2 && entry[1] == 1 {
                entry[2] = 0;
            }
        }
        let c = FinCategory::from_raw(&raw).unwrap();
        let report = check_category_laws(&c);
        assert!(!report.is_pass());
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "right-unit" && v.witness == vec![2, 1]));
    }

    #[test]
    fn missing_comp_entry_is_malformed() {
        let mut raw = walking_arrow().to_raw();
        raw.comp.pop();
        assert!(matches!(FinCategory::from_raw(&raw), Err(Error::MalformedData(_))));
        let mut raw = walking_arrow().to_raw();
        raw.comp.push([2, 2, 2]);
        assert!(matches!(FinCategory::from_raw(&raw), Err(Error::MalformedData(_))));
    }

    #[test]
    fn raw_round_trip() {
        let c = commutative_square();
        assert_eq!(FinCategory::from_raw(&c.to_raw()).unwrap(), c);
    }

    #[test]
    fn finset_category_counts() {
        let one = finset_category(1, Limit::default()).unwrap();
        assert_eq!(one.category().n_morphisms(), 3);
        let two = finset_category(2, Limit::default()).unwrap();
        assert_eq!(two.category().hom(2, 2).len(), 4);
        // full subcategory on sizes {1, 2}: Σ b^a = 1 + 2 + 1 + 4
        let c = two.category();
        let sub: usize = [1usize, 2]
            .iter()
            .flat_map(|&a| [1usize, 2].map(|b| c.hom(a, b).len()))
            .sum();
        let oracle: usize = [1u32, 2]
            .iter()
            .flat_map(|&a| [1usize, 2].map(move |b| b.pow(a)))
            .sum();
        assert_eq!(oracle, 8);
        assert_eq!(sub, oracle);
        assert!(check_category_laws(c).is_pass());
        assert!(matches!(
            finset_category(3, Limit(10)),
            Err(Error::ResourceBound { .. })
        ));
    }

    #[test]
    fn functor_checks() {
        let c = walking_arrow();
        assert!(check_functor_laws(&c, &c, &FunctorData::identity(&c)).unwrap().is_pass());
        // constant at object 0
        let constant = FunctorData {
            obj_map: vec![0, 0],
            mor_map: vec![0, 0, 0],
        };
        assert!(check_functor_laws(&c, &c, &constant).unwrap().is_pass());

        let sq = commutative_square();
        let mut bad = FunctorData::identity(&sq);
        bad.mor_map[8] = 5; // diagonal ↦ g, breaking f ⨟ h
        let report = check_functor_laws(&sq, &sq, &bad).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "preserves-composition" && v.witness == vec![4, 6]));
        let short = FunctorData {
            obj_map: vec![0],
            mor_map: vec![],
        };
        assert!(check_functor_laws(&c, &c, &short).is_err());
    }

    #[test]
    fn opposite_properties() {
        for c in [walking_arrow(), commutative_square()] {
            let op = opposite(&c);
            assert_eq!(opposite(&op), c);
            assert!(check_category_laws(&op).is_pass());
            for a in 0..c.n_objects() {
                for b in 0..c.n_objects() {
                    assert_eq!(c.hom(a, b).len(), op.hom(b, a).len());
                }
            }
        }
        // the opposite walking arrow is the walking arrow with its ends exchanged
        let op = opposite(&walking_arrow());
        let swap = FunctorData {
            obj_map: vec![1, 0],
            mor_map: vec![1, 0, 2],
        };
        check_isomorphism(&op, &walking_arrow(), &swap).unwrap();
        assert_ne!(hom_counts(&op), hom_counts(&walking_arrow()));
    }

    #[test]
    fn twisted_arrow_examples() {
        let tw = twisted_arrow(&walking_arrow()).unwrap();
        assert_eq!(tw.category().n_objects(), 3);
        assert!(check_category_laws(tw.category()).is_pass());
        let x = 2;
        let id = tw.category().identity(x);
        assert_eq!(
            *tw.morphism(id),
            TwistedMor {
                source: x,
                target: x,
                forward: 0,
                backward: 1
            }
        );

        let t = twisted_arrow(&terminal_category()).unwrap();
        check_isomorphism(t.category(), &terminal_category(), &FunctorData::identity(&terminal_category()))
            .unwrap();
    }
}
