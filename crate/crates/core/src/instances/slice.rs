use serde::{Deserialize, Serialize};

use crate::catkit::{finset_category, FinSetCategory, FunctorData, LawReport, Labeled};
use crate::error::{Error, Result};
use crate::finset::{all_maps, hom_count, product, pullback, FinFn};
use crate::indexed::{IndexedCat, Laxator, MonoidalBase};
use crate::limit::Limit;

/// A family of finite sets `(X_i)` indexed by `i < base_size`; the fiber
/// form of a bundle `p: x → c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub struct FiberFamily {
    fibers: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    base: usize,
    fibers: Vec<usize>,
}

impl TryFrom<RawFamily> for FiberFamily {
    type Error = Error;

    fn try_from(raw: RawFamily) -> Result<Self> {
        FiberFamily::new(raw.base, raw.fibers)
    }
}

impl From<FiberFamily> for RawFamily {
    fn from(f: FiberFamily) -> Self {
        RawFamily {
            base: f.base_size(),
            fibers: f.fibers,
        }
    }
}

impl FiberFamily {
    pub fn new(base_size: usize, fibers: Vec<usize>) -> Result<Self> {
        if fibers.len() != base_size {
            return Err(Error::MalformedData(format!(
                "family over {base_size} lists {} fibers",
                fibers.len()
            )));
        }
        Ok(Self { fibers })
    }

    pub fn from_fibers(fibers: Vec<usize>) -> Self {
        Self { fibers }
    }

    /// The family `(x, …, x)` over `c`.
    pub fn constant(c: usize, x: usize) -> Self {
        Self { fibers: vec![x; c] }
    }

    pub fn base_size(&self) -> usize {
        self.fibers.len()
    }

    pub fn fibers(&self) -> &[usize] {
        &self.fibers
    }

    pub fn fiber(&self, i: usize) -> usize {
        self.fibers[i]
    }

    pub fn total(&self) -> usize {
        self.fibers.iter().sum()
    }

    /// `(X_{f(i)})_i` for `f: b → c` and `self` over `c`.
    pub fn reindex(&self, f: &FinFn) -> Result<Self> {
        self.expect_base(f.cod())?;
        Ok(Self {
            fibers: f.table().iter().map(|&j| self.fibers[j]).collect(),
        })
    }

    fn expect_base(&self, n: usize) -> Result<()> {
        if self.base_size() != n {
            return Err(Error::InterfaceMismatch(format!(
                "family over {} used where a family over {n} is required",
                self.base_size()
            )));
        }
        Ok(())
    }
}

/// The fiber sizes of `p` together with the bijection `dom p → Σ fibers`
/// that lists each fiber's elements in ascending order, fiber by fiber.
pub fn bundle_to_family(p: &FinFn) -> (FiberFamily, FinFn) {
    let mut fibers = vec![0; p.cod()];
    for &j in p.table() {
        fibers[j] += 1;
    }
    let mut next: Vec<usize> = fibers
        .iter()
        .scan(0, |acc, &n| {
            let start = *acc;
            *acc += n;
            Some(start)
        })
        .collect();
    let sort = p
        .table()
        .iter()
        .map(|&j| {
            next[j] += 1;
            next[j] - 1
        })
        .collect();
    let sort = FinFn::new(p.dom(), p.dom(), sort).expect("positions are in range");
    (FiberFamily { fibers }, sort)
}

/// The bundle `Σ X_i → base` sending the elements of fiber `i` to `i`.
pub fn family_to_bundle(family: &FiberFamily) -> FinFn {
    let table = family
        .fibers
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| std::iter::repeat_n(i, n))
        .collect();
    FinFn::new(family.total(), family.base_size(), table).expect("indices are in range")
}

/// Fiber at `j` is `Σ_{f(i)=j} X_i`.
pub fn dep_sum(f: &FinFn, family: &FiberFamily) -> Result<FiberFamily> {
    family.expect_base(f.dom())?;
    let mut fibers = vec![0; f.cod()];
    for (i, &j) in f.table().iter().enumerate() {
        fibers[j] += family.fibers[i];
    }
    Ok(FiberFamily { fibers })
}

/// Fiber at `j` is `Π_{f(i)=j} X_i`; empty products are `1`.
pub fn dep_prod(f: &FinFn, family: &FiberFamily) -> Result<FiberFamily> {
    family.expect_base(f.dom())?;
    let mut fibers = vec![1; f.cod()];
    for (i, &j) in f.table().iter().enumerate() {
        fibers[j] *= family.fibers[i];
    }
    Ok(FiberFamily { fibers })
}

/// Every family of maps `(X_i → Y_i)`, lexicographic with the first index
/// most significant.
pub fn family_homs(x: &FiberFamily, y: &FiberFamily) -> Result<Vec<Vec<FinFn>>> {
    y.expect_base(x.base_size())?;
    let mut acc = vec![Vec::new()];
    for (&a, &b) in x.fibers.iter().zip(&y.fibers) {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                all_maps(a, b).map(move |f| {
                    let mut next = prefix.clone();
                    next.push(f);
                    next
                })
            })
            .collect();
    }
    Ok(acc)
}

fn family_hom_count(x: &FiberFamily, y: &FiberFamily) -> Option<u128> {
    x.fibers
        .iter()
        .zip(&y.fibers)
        .try_fold(1u128, |acc, (&a, &b)| acc.checked_mul(hom_count(a, b)?))
}

/// Every family over a base of size at most `base_max` with fibers at most
/// `fiber_max`, by base size and then lexicographically.
pub fn families_up_to(base_max: usize, fiber_max: usize) -> Vec<FiberFamily> {
    (0..=base_max)
        .flat_map(|c| {
            all_maps(c, fiber_max + 1).map(|t| FiberFamily {
                fibers: t.table().to_vec(),
            })
        })
        .collect()
}

/// Start offset of each `X_i` inside `(Σ_f X)_{f(i)}`.
fn sum_offsets(f: &FinFn, x: &FiberFamily) -> Vec<usize> {
    let mut filled = vec![0; f.cod()];
    f.table()
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            let start = filled[j];
            filled[j] += x.fibers[i];
            start
        })
        .collect()
}

/// `hom(Σ_f X, Y) → hom(X, f* Y)`: restricts each `u_j` to the summands.
pub fn sum_transpose(f: &FinFn, x: &FiberFamily, u: &[FinFn]) -> Result<Vec<FinFn>> {
    let offsets = sum_offsets(f, x);
    (0..f.dom())
        .map(|i| {
            let uj = &u[f.apply(i)];
            FinFn::from_fn(x.fibers[i], uj.cod(), |k| uj.apply(offsets[i] + k))
        })
        .collect()
}

/// `hom(X, f* Y) → hom(Σ_f X, Y)`: copairs the maps out of each summand.
pub fn sum_untranspose(f: &FinFn, x: &FiberFamily, y: &FiberFamily, v: &[FinFn]) -> Result<Vec<FinFn>> {
    let sum = dep_sum(f, x)?;
    let mut tables: Vec<Vec<usize>> = sum.fibers.iter().map(|&n| Vec::with_capacity(n)).collect();
    for (i, &j) in f.table().iter().enumerate() {
        tables[j].extend_from_slice(v[i].table());
    }
    tables
        .into_iter()
        .enumerate()
        .map(|(j, t)| FinFn::new(sum.fibers[j], y.fibers[j], t))
        .collect()
}

/// Mixed-radix place value of coordinate `i` in `(Π_f X)_{f(i)}`; the first
/// preimage element is most significant.
fn prod_place_values(f: &FinFn, x: &FiberFamily) -> Vec<usize> {
    let mut place = vec![1; f.dom()];
    let mut running = vec![1; f.cod()];
    for i in (0..f.dom()).rev() {
        let j = f.apply(i);
        place[i] = running[j];
        running[j] *= x.fibers[i];
    }
    place
}

/// `hom(f* Y, X) → hom(Y, Π_f X)`: tuples the components.
pub fn prod_transpose(f: &FinFn, x: &FiberFamily, y: &FiberFamily, v: &[FinFn]) -> Result<Vec<FinFn>> {
    let prod = dep_prod(f, x)?;
    let place = prod_place_values(f, x);
    (0..f.cod())
        .map(|j| {
            FinFn::from_fn(y.fibers[j], prod.fibers[j], |e| {
                (0..f.dom())
                    .filter(|&i| f.apply(i) == j)
                    .map(|i| v[i].apply(e) * place[i])
                    .sum()
            })
        })
        .collect()
}

/// `hom(Y, Π_f X) → hom(f* Y, X)`: projects each component.
pub fn prod_untranspose(f: &FinFn, x: &FiberFamily, u: &[FinFn]) -> Result<Vec<FinFn>> {
    let place = prod_place_values(f, x);
    (0..f.dom())
        .map(|i| {
            let uj = &u[f.apply(i)];
            FinFn::from_fn(uj.dom(), x.fibers[i], |e| (uj.apply(e) / place[i]) % x.fibers[i])
        })
        .collect()
}

/// For every `X` over `dom f` and `Y` over `cod f` with fibers at most
/// `fiber_max`, checks that the transposes for `Σ_f ⊣ f*` and `f* ⊣ Π_f` are
/// mutually inverse bijections between the enumerated hom-sets.
pub fn check_adjoint_triple(f: &FinFn, fiber_max: usize) -> Result<LawReport> {
    let mut report = LawReport::default();
    let over = |n: usize| {
        all_maps(n, fiber_max + 1)
            .map(|t| FiberFamily::from_fibers(t.table().to_vec()))
            .collect::<Vec<_>>()
    };
    let (xs, ys) = (over(f.dom()), over(f.cod()));
    for (a, x) in xs.iter().enumerate() {
        for (b, y) in ys.iter().enumerate() {
            let pulled = y.reindex(f)?;
            let left = family_homs(&dep_sum(f, x)?, y)?;
            let right = family_homs(x, &pulled)?;
            let mut images: Vec<Vec<FinFn>> = left
                .iter()
                .map(|u| sum_transpose(f, x, u))
                .collect::<Result<_>>()?;
            let round_trip = images
                .iter()
                .zip(&left)
                .map(|(v, u)| sum_untranspose(f, x, y, v).map(|w| w == *u))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|ok| ok);
            images.sort();
            report.expect(
                round_trip && images == right,
                "sum-adjunction",
                || vec![a, b],
                || format!("Σ_f ⊣ f* fails for X = {:?}, Y = {:?}", x.fibers, y.fibers),
            );

            let left = family_homs(&pulled, x)?;
            let right = family_homs(y, &dep_prod(f, x)?)?;
            let mut images: Vec<Vec<FinFn>> = left
                .iter()
                .map(|v| prod_transpose(f, x, y, v))
                .collect::<Result<_>>()?;
            let round_trip = images
                .iter()
                .zip(&left)
                .map(|(u, v)| prod_untranspose(f, x, u).map(|w| w == *v))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|ok| ok);
            images.sort();
            report.expect(
                round_trip && images == right,
                "product-adjunction",
                || vec![a, b],
                || format!("f* ⊣ Π_f fails for X = {:?}, Y = {:?}", x.fibers, y.fibers),
            );
        }
    }
    Ok(report)
}

/// Reindexing a bundle by pullback agrees with reindexing its family.
pub fn pullback_coherent(p: &FinFn, f: &FinFn) -> Result<bool> {
    let pb = pullback(f, p)?;
    let (via_bundle, _) = bundle_to_family(&pb.leg1());
    let (family, _) = bundle_to_family(p);
    Ok(via_bundle == family.reindex(f)?)
}

/// A fiber of the slice indexed category: families and families of maps.
pub type SliceFiber = Labeled<FiberFamily, Vec<FinFn>>;

/// Dependent lenses as an indexed category over finite sets.
#[derive(Debug, Clone)]
pub struct SliceIndexed {
    pub base: FinSetCategory,
    pub fibers: Vec<SliceFiber>,
    pub indexed: IndexedCat,
    pub fiber_max: usize,
}

/// `slice_indexed_with(max_size, max_size, limit)`.
pub fn slice_indexed(max_size: usize, limit: Limit) -> Result<SliceIndexed> {
    slice_indexed_with(max_size, max_size, limit)
}

/// Base: sets of size at most `base_max`. Fiber over `c`: families over `c`
/// with fibers at most `fiber_max` (lexicographic) and all families of maps
/// between them, ordered by `(source, target, tables)`. Reindexing along
/// `f: b → c` sends `(X_j)` to `(X_{f(i)})`.
pub fn slice_indexed_with(base_max: usize, fiber_max: usize, limit: Limit) -> Result<SliceIndexed> {
    let base = finset_category(base_max, limit)?;
    let mut fibers = Vec::new();
    for c in 0..=base_max {
        let objects: Vec<FiberFamily> = all_maps(c, fiber_max + 1)
            .map(|t| FiberFamily::from_fibers(t.table().to_vec()))
            .collect();
        let mut total: u128 = 0;
        for x in &objects {
            for y in &objects {
                total = total.saturating_add(family_hom_count(x, y).unwrap_or(u128::MAX));
            }
        }
        limit.check(total)?;
        let mut morphisms = Vec::new();
        for (i, x) in objects.iter().enumerate() {
            for (j, y) in objects.iter().enumerate() {
                morphisms.extend(family_homs(x, y)?.into_iter().map(|m| (i, j, m)));
            }
        }
        fibers.push(Labeled::build(
            objects,
            morphisms,
            |x| Ok(x.fibers.iter().map(|&n| FinFn::identity(n)).collect()),
            |u, v| u.iter().zip(v).map(|(a, b)| a.compose(b)).collect(),
        )?);
    }
    let reindex = base
        .morphisms()
        .iter()
        .map(|f| reindex_functor(f, &fibers[f.cod()], &fibers[f.dom()]))
        .collect::<Result<Vec<_>>>()?;
    let indexed = IndexedCat::new(
        base.category().clone(),
        fibers.iter().map(|f| f.category().clone()).collect(),
        reindex,
    )?;
    Ok(SliceIndexed {
        base,
        fibers,
        indexed,
        fiber_max,
    })
}

fn reindex_functor(f: &FinFn, from: &SliceFiber, to: &SliceFiber) -> Result<FunctorData> {
    let missing = || Error::MalformedData("reindexed family is missing from its fiber".into());
    let obj_map = from
        .objects()
        .iter()
        .map(|x| to.object_id(&x.reindex(f)?).ok_or_else(missing))
        .collect::<Result<Vec<_>>>()?;
    let mor_map = from
        .morphisms()
        .iter()
        .map(|u| {
            let pulled: Vec<FinFn> = f.table().iter().map(|&j| u[j].clone()).collect();
            to.morphism_id(&pulled).ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctorData { obj_map, mor_map })
}

impl SliceIndexed {
    /// Id of a base set of the given size.
    pub fn base_object(&self, c: usize) -> Option<usize> {
        self.base.object_id(&c)
    }

    pub fn fiber_object(&self, family: &FiberFamily) -> Option<usize> {
        self.fibers.get(family.base_size())?.object_id(family)
    }

    /// The cartesian monoidal structure on the base; requires the base to be
    /// closed under products.
    pub fn cartesian_base(&self) -> Result<MonoidalBase> {
        let cat = self.base.category();
        let missing = || Error::MalformedData("the base is not closed under products".into());
        MonoidalBase::from_fn(
            cat,
            self.base_object(1).ok_or_else(missing)?,
            |a, b| self.base_object(self.base.object(a) * self.base.object(b)).ok_or_else(missing),
            |f, g| {
                let fg = crate::finset::product_map(self.base.morphism(f), self.base.morphism(g));
                self.base.morphism_id(&fg).ok_or_else(missing)
            },
        )
    }
}

/// `φ((X_i), (Y_j)) = (X_i × Y_j)` over `c × d`, on maps by `product_map`.
pub struct SliceLaxator<'a>(pub &'a SliceIndexed);

impl SliceLaxator<'_> {
    fn fiber(&self, c: usize, d: usize) -> Result<&SliceFiber> {
        let size = self.0.base.object(c) * self.0.base.object(d);
        self.0
            .fibers
            .get(size)
            .ok_or_else(|| Error::MalformedData(format!("no fiber over a set of size {size}")))
    }
}

impl Laxator for SliceLaxator<'_> {
    fn unit(&self) -> usize {
        self.0.fibers[1]
            .object_id(&FiberFamily::constant(1, 1))
            .expect("the unit family exists whenever fibers reach size 1")
    }

    fn on_objects(&self, c: usize, d: usize, x: usize, y: usize) -> Result<usize> {
        let (x, y) = (self.0.fibers[c].object(x), self.0.fibers[d].object(y));
        let phi = tensor_families(x, y);
        self.fiber(c, d)?
            .object_id(&phi)
            .ok_or_else(|| Error::MalformedData(format!("φ{:?} exceeds the fiber bound", phi.fibers)))
    }

    fn on_morphisms(&self, c: usize, d: usize, u: usize, v: usize) -> Result<usize> {
        let (u, v) = (self.0.fibers[c].morphism(u), self.0.fibers[d].morphism(v));
        let phi = tensor_maps(u, v);
        self.fiber(c, d)?
            .morphism_id(&phi)
            .ok_or_else(|| Error::MalformedData("φ(u, v) exceeds the fiber bound".into()))
    }
}

/// `(X_i × Y_j)` indexed by `pair(i, j)`.
pub fn tensor_families(x: &FiberFamily, y: &FiberFamily) -> FiberFamily {
    let p = product(x.base_size(), y.base_size());
    FiberFamily::from_fibers(
        (0..p.size())
            .map(|k| {
                let (i, j) = p.unpair(k);
                x.fibers[i] * y.fibers[j]
            })
            .collect(),
    )
}

/// `(u_i × v_j)` indexed by `pair(i, j)`.
pub fn tensor_maps(u: &[FinFn], v: &[FinFn]) -> Vec<FinFn> {
    let p = product(u.len(), v.len());
    (0..p.size())
        .map(|k| {
            let (i, j) = p.unpair(k);
            crate::finset::product_map(&u[i], &v[j])
        })
        .collect()
}
