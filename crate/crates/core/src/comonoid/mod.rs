//! Commutative comonoids in strict symmetric monoidal categories, the
//! coKleisli indexed category they induce, and lenses over them.
//!
//! A symmetric monoidal category is anything implementing [`Smc`]. Two
//! structures on finite sets are built in (`×` on FinSet and `+` on its
//! opposite); [`TableSmc`] accepts an arbitrary finite one as explicit data.

mod cokleisli;
mod comon;

pub use cokleisli::{
    check_recover_usual, cokleisli_indexed, smc_lens_category, CoKleisli, CoKleisliMor,
    SmcLensCategory, SmcLensMor,
};
pub use comon::{
    check_comonoid, comon_category, enumerate_comonoids, tensor_comonoid, ComonCategory, ComonMor,
    Comonoid, RawComonoid,
};

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::catkit::{check_category_laws, FinCategory, LawReport, RawCategory};
use crate::error::{Error, Result};
use crate::finset::{
    all_maps, coproduct, coproduct_symmetry, hom_count, product_map, sum_map, symmetry, FinFn,
};
use crate::indexed::MonoidalBase;
use crate::limit::Limit;

/// A strict symmetric monoidal category whose objects are `usize` ids.
pub trait Smc {
    type Mor: Clone + Eq + Hash + Ord + Debug;

    fn dom(&self, f: &Self::Mor) -> usize;
    fn cod(&self, f: &Self::Mor) -> usize;
    fn identity(&self, a: usize) -> Self::Mor;
    /// Diagrammatic composite `f ⨟ g`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn unit(&self) -> usize;
    fn tensor_ob(&self, a: usize, b: usize) -> usize;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    /// `σ_{a,b}: a ⊗ b → b ⊗ a`.
    fn symmetry(&self, a: usize, b: usize) -> Self::Mor;
    /// `None` when the count overflows.
    fn hom_count(&self, a: usize, b: usize) -> Option<u128>;
    /// Every morphism `a → b`, in the category's canonical order.
    fn hom(&self, a: usize, b: usize) -> Vec<Self::Mor>;
    /// The integer naming `f`, as used in comonoid files.
    fn morphism_id(&self, f: &Self::Mor) -> u128;
    fn morphism_from_id(&self, dom: usize, cod: usize, id: u128) -> Result<Self::Mor>;

    fn hom_limited(&self, a: usize, b: usize, limit: Limit) -> Result<Vec<Self::Mor>> {
        limit.check_opt(self.hom_count(a, b))?;
        Ok(self.hom(a, b))
    }

    /// `a ⊗ f` for an object `a`.
    fn whisker_left(&self, a: usize, f: &Self::Mor) -> Self::Mor {
        self.tensor_mor(&self.identity(a), f)
    }

    /// `f ⊗ b` for an object `b`.
    fn whisker_right(&self, f: &Self::Mor, b: usize) -> Self::Mor {
        self.tensor_mor(f, &self.identity(b))
    }
}

/// Finite sets under cartesian product; objects are sizes, unit `1`.
/// Morphism ids are lexicographic ranks within each hom-set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FinSetCartesian;

impl Smc for FinSetCartesian {
    type Mor = FinFn;

    fn dom(&self, f: &FinFn) -> usize {
        f.dom()
    }
    fn cod(&self, f: &FinFn) -> usize {
        f.cod()
    }
    fn identity(&self, a: usize) -> FinFn {
        FinFn::identity(a)
    }
    fn compose(&self, f: &FinFn, g: &FinFn) -> Result<FinFn> {
        f.compose(g)
    }
    fn unit(&self) -> usize {
        1
    }
    fn tensor_ob(&self, a: usize, b: usize) -> usize {
        a * b
    }
    fn tensor_mor(&self, f: &FinFn, g: &FinFn) -> FinFn {
        product_map(f, g)
    }
    fn symmetry(&self, a: usize, b: usize) -> FinFn {
        symmetry(a, b)
    }
    fn hom_count(&self, a: usize, b: usize) -> Option<u128> {
        hom_count(a, b)
    }
    fn hom(&self, a: usize, b: usize) -> Vec<FinFn> {
        all_maps(a, b).collect()
    }
    fn morphism_id(&self, f: &FinFn) -> u128 {
        f.rank()
    }
    fn morphism_from_id(&self, dom: usize, cod: usize, id: u128) -> Result<FinFn> {
        FinFn::from_rank(dom, cod, id)
    }
}

/// The opposite of FinSet under coproduct; objects are sizes, unit `0`.
///
/// A morphism `a → b` is stored as the underlying function `b → a`, so
/// `dom` reads the table's codomain and composition runs backwards.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FinSetCocartesianOp;

impl Smc for FinSetCocartesianOp {
    type Mor = FinFn;

    fn dom(&self, f: &FinFn) -> usize {
        f.cod()
    }
    fn cod(&self, f: &FinFn) -> usize {
        f.dom()
    }
    fn identity(&self, a: usize) -> FinFn {
        FinFn::identity(a)
    }
    fn compose(&self, f: &FinFn, g: &FinFn) -> Result<FinFn> {
        g.compose(f)
    }
    fn unit(&self) -> usize {
        0
    }
    fn tensor_ob(&self, a: usize, b: usize) -> usize {
        coproduct(a, b).size()
    }
    fn tensor_mor(&self, f: &FinFn, g: &FinFn) -> FinFn {
        sum_map(f, g)
    }
    fn symmetry(&self, a: usize, b: usize) -> FinFn {
        coproduct_symmetry(b, a)
    }
    fn hom_count(&self, a: usize, b: usize) -> Option<u128> {
        hom_count(b, a)
    }
    fn hom(&self, a: usize, b: usize) -> Vec<FinFn> {
        all_maps(b, a).collect()
    }
    fn morphism_id(&self, f: &FinFn) -> u128 {
        f.rank()
    }
    fn morphism_from_id(&self, dom: usize, cod: usize, id: u128) -> Result<FinFn> {
        FinFn::from_rank(cod, dom, id)
    }
}

/// A finite strict symmetric monoidal category given by tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSmc {
    carrier: FinCategory,
    monoidal: MonoidalBase,
    symmetry: Vec<usize>,
}

/// JSON form of a [`TableSmc`]. `tensor_ob`, `tensor_mor` and `symmetry`
/// are row-major square tables flattened to one list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSmc {
    pub category: RawCategory,
    pub unit: usize,
    pub tensor_ob: Vec<usize>,
    pub tensor_mor: Vec<usize>,
    pub symmetry: Vec<usize>,
}

impl TableSmc {
    pub fn new(carrier: FinCategory, monoidal: MonoidalBase, symmetry: Vec<usize>) -> Result<Self> {
        let n = carrier.n_objects();
        if symmetry.len() != n * n || symmetry.iter().any(|&s| s >= carrier.n_morphisms()) {
            return Err(Error::MalformedData(format!(
                "symmetry table must list {} morphism ids",
                n * n
            )));
        }
        Ok(Self {
            carrier,
            monoidal,
            symmetry,
        })
    }

    /// Tabulates any other structure on the listed objects, which must be
    /// closed under the tensor. Object ids become positions in `objects`.
    pub fn tabulate<M: Smc>(m: &M, objects: &[usize], limit: Limit) -> Result<Self> {
        let position = |o: usize| {
            objects
                .iter()
                .position(|&p| p == o)
                .ok_or_else(|| Error::MalformedData(format!("object {o} is not in the list")))
        };
        let mut morphisms = Vec::new();
        let mut labels = Vec::new();
        for (i, &a) in objects.iter().enumerate() {
            for (j, &b) in objects.iter().enumerate() {
                for f in m.hom_limited(a, b, limit)? {
                    morphisms.push((i, j));
                    labels.push(f);
                }
            }
        }
        limit.check(labels.len() as u128 * labels.len() as u128)?;
        let find = |f: &M::Mor| {
            labels
                .iter()
                .position(|g| g == f)
                .ok_or_else(|| Error::MalformedData("tensor leaves the listed objects".into()))
        };
        let identity = objects
            .iter()
            .map(|&a| find(&m.identity(a)))
            .collect::<Result<Vec<_>>>()?;
        let carrier = FinCategory::from_fn(objects.len(), morphisms, identity, |f, g| {
            find(&m.compose(&labels[f], &labels[g])?)
        })?;
        let monoidal = MonoidalBase::from_fn(
            &carrier,
            position(m.unit())?,
            |a, b| position(m.tensor_ob(objects[a], objects[b])),
            |f, g| find(&m.tensor_mor(&labels[f], &labels[g])),
        )?;
        let n = objects.len();
        let symmetry = (0..n * n)
            .map(|k| find(&m.symmetry(objects[k / n], objects[k % n])))
            .collect::<Result<Vec<_>>>()?;
        Self::new(carrier, monoidal, symmetry)
    }

    pub fn carrier(&self) -> &FinCategory {
        &self.carrier
    }

    pub fn monoidal(&self) -> &MonoidalBase {
        &self.monoidal
    }

    pub fn from_raw(raw: &RawSmc) -> Result<Self> {
        let carrier = FinCategory::from_raw(&raw.category)?;
        let monoidal = MonoidalBase::new(
            &carrier,
            raw.unit,
            raw.tensor_ob.clone(),
            raw.tensor_mor.clone(),
        )?;
        Self::new(carrier, monoidal, raw.symmetry.clone())
    }

    pub fn to_raw(&self) -> RawSmc {
        let n = self.carrier.n_objects();
        let m = self.carrier.n_morphisms();
        RawSmc {
            category: self.carrier.to_raw(),
            unit: self.monoidal.unit(),
            tensor_ob: (0..n * n).map(|k| self.monoidal.ob(k / n, k % n)).collect(),
            tensor_mor: (0..m * m).map(|k| self.monoidal.mor(k / m, k % m)).collect(),
            symmetry: self.symmetry.clone(),
        }
    }

    /// Category laws, strict monoidal laws, and the symmetry laws.
    pub fn check_laws(&self) -> Result<LawReport> {
        let mut report = LawReport::default();
        report.absorb("carrier", check_category_laws(&self.carrier));
        report.absorb("monoidal", self.monoidal.check_laws(&self.carrier));
        if !report.is_pass() {
            return Ok(report);
        }
        let objects: Vec<usize> = (0..self.carrier.n_objects()).collect();
        report.absorb("", check_smc_laws(self, &objects, Limit::default())?);
        Ok(report)
    }
}

impl Smc for TableSmc {
    type Mor = usize;

    fn dom(&self, f: &usize) -> usize {
        self.carrier.dom(*f)
    }
    fn cod(&self, f: &usize) -> usize {
        self.carrier.cod(*f)
    }
    fn identity(&self, a: usize) -> usize {
        self.carrier.identity(a)
    }
    fn compose(&self, f: &usize, g: &usize) -> Result<usize> {
        self.carrier.compose(*f, *g).ok_or(Error::CodomainMismatch {
            left_cod: self.carrier.cod(*f),
            right_dom: self.carrier.dom(*g),
        })
    }
    fn unit(&self) -> usize {
        self.monoidal.unit()
    }
    fn tensor_ob(&self, a: usize, b: usize) -> usize {
        self.monoidal.ob(a, b)
    }
    fn tensor_mor(&self, f: &usize, g: &usize) -> usize {
        self.monoidal.mor(*f, *g)
    }
    fn symmetry(&self, a: usize, b: usize) -> usize {
        self.symmetry[a * self.carrier.n_objects() + b]
    }
    fn hom_count(&self, a: usize, b: usize) -> Option<u128> {
        Some(self.carrier.hom(a, b).len() as u128)
    }
    fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.carrier.hom(a, b).to_vec()
    }
    fn morphism_id(&self, f: &usize) -> u128 {
        *f as u128
    }
    fn morphism_from_id(&self, dom: usize, cod: usize, id: u128) -> Result<usize> {
        let f = usize::try_from(id)
            .ok()
            .filter(|&f| f < self.carrier.n_morphisms())
            .ok_or(Error::IndexOutOfRange {
                what: "morphism",
                index: id.min(usize::MAX as u128) as usize,
                size: self.carrier.n_morphisms(),
            })?;
        if self.carrier.endpoints()[f] != (dom, cod) {
            return Err(Error::MalformedData(format!("morphism {f} is not {dom} → {cod}")));
        }
        Ok(f)
    }
}

/// Checks, over the listed objects and every morphism between them: unit
/// and identity laws of the tensor, interchange, `σ ⨟ σ = id`, naturality of
/// `σ`, and the hexagon `σ_{a⊗b,c} = (a ⊗ σ_{b,c}) ⨟ (σ_{a,c} ⊗ b)`.
///
/// Witnesses are positions in `objects` (for object laws) or in the
/// concatenated hom-set enumeration (for morphism laws).
pub fn check_smc_laws<M: Smc>(m: &M, objects: &[usize], limit: Limit) -> Result<LawReport> {
    let mut report = LawReport::default();
    let mut morphisms = Vec::new();
    for &a in objects {
        for &b in objects {
            morphisms.extend(m.hom_limited(a, b, limit)?);
        }
    }
    limit.check((morphisms.len() as u128).pow(2))?;
    let eq = |l: Result<M::Mor>, r: Result<M::Mor>| matches!((l, r), (Ok(l), Ok(r)) if l == r);

    for (i, &a) in objects.iter().enumerate() {
        report.expect(
            m.tensor_ob(m.unit(), a) == a && m.tensor_ob(a, m.unit()) == a,
            "strict-unit",
            || vec![i],
            || format!("unit does not act trivially on {a}"),
        );
        for (j, &b) in objects.iter().enumerate() {
            let ab = m.tensor_ob(a, b);
            report.expect(
                m.tensor_mor(&m.identity(a), &m.identity(b)) == m.identity(ab),
                "tensor-identity",
                || vec![i, j],
                || format!("id_{a} ⊗ id_{b} is not an identity"),
            );
            let twice = m.compose(&m.symmetry(a, b), &m.symmetry(b, a));
            report.expect(
                eq(twice, Ok(m.identity(ab))),
                "symmetry-involution",
                || vec![i, j],
                || format!("σ_{{{a},{b}}} ⨟ σ_{{{b},{a}}} ≠ id"),
            );
            for (k, &c) in objects.iter().enumerate() {
                let lhs = m.symmetry(ab, c);
                let rhs = m.compose(
                    &m.whisker_left(a, &m.symmetry(b, c)),
                    &m.whisker_right(&m.symmetry(a, c), b),
                );
                report.expect(
                    eq(Ok(lhs), rhs),
                    "hexagon",
                    || vec![i, j, k],
                    || format!("σ_{{{a}⊗{b},{c}}} differs from its hexagon factorization"),
                );
            }
        }
    }
    for f in &morphisms {
        report.expect(
            m.tensor_mor(&m.identity(m.unit()), f) == *f && m.tensor_mor(f, &m.identity(m.unit())) == *f,
            "strict-unit",
            Vec::new,
            || format!("the unit identity does not act trivially on {f:?}"),
        );
    }
    for (x, f) in morphisms.iter().enumerate() {
        for (y, g) in morphisms.iter().enumerate() {
            let (a, a2, b, b2) = (m.dom(f), m.cod(f), m.dom(g), m.cod(g));
            let lhs = m.compose(&m.tensor_mor(f, g), &m.symmetry(a2, b2));
            let rhs = m.compose(&m.symmetry(a, b), &m.tensor_mor(g, f));
            report.expect(
                eq(lhs, rhs),
                "symmetry-naturality",
                || vec![x, y],
                || format!("σ is not natural at {f:?}, {g:?}"),
            );
        }
    }
    let composable: Vec<(usize, usize, M::Mor)> = morphisms
        .iter()
        .enumerate()
        .flat_map(|(x, f)| {
            morphisms.iter().enumerate().filter_map(move |(y, g)| {
                m.compose(f, g).ok().map(|fg| (x, y, fg))
            })
        })
        .collect();
    limit.check((composable.len() as u128).pow(2))?;
    for (f, g, fg) in &composable {
        for (h, k, hk) in &composable {
            let lhs = m.compose(
                &m.tensor_mor(&morphisms[*f], &morphisms[*h]),
                &m.tensor_mor(&morphisms[*g], &morphisms[*k]),
            );
            report.expect(
                eq(lhs, Ok(m.tensor_mor(fg, hk))),
                "interchange",
                || vec![*f, *g, *h, *k],
                || "(f⊗h)⨟(g⊗k) ≠ (f⨟g)⊗(h⨟k)".into(),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_structures_pass() {
        let sizes = [0, 1, 2];
        assert!(check_smc_laws(&FinSetCartesian, &sizes, Limit::default()).unwrap().is_pass());
        assert!(check_smc_laws(&FinSetCocartesianOp, &sizes, Limit::default()).unwrap().is_pass());
    }

    #[test]
    fn cocartesian_op_reverses_direction() {
        let m = FinSetCocartesianOp;
        // the op morphism 2 → 1 is the function 1 → 2
        let f = FinFn::new(1, 2, vec![1]).unwrap();
        assert_eq!((m.dom(&f), m.cod(&f)), (2, 1));
        let g = FinFn::new(3, 1, vec![0, 0, 0]).unwrap();
        assert_eq!(m.compose(&f, &g).unwrap(), g.compose(&f).unwrap());
        assert_eq!(m.hom(2, 1).len(), 2);
    }

    #[test]
    fn tabulated_structure_round_trips() {
        let t = TableSmc::tabulate(&FinSetCartesian, &[0, 1], Limit::default()).unwrap();
        assert_eq!(t.carrier().n_morphisms(), 3);
        assert!(t.check_laws().unwrap().is_pass());
        let raw = t.to_raw();
        assert_eq!(TableSmc::from_raw(&raw).unwrap(), t);
        assert!(TableSmc::tabulate(&FinSetCartesian, &[0, 2], Limit::default()).is_err());
    }

    /// The group `Z/2` as a one-object category, tensored by multiplication.
    fn z2(sigma: usize) -> TableSmc {
        let c = FinCategory::from_fn(1, vec![(0, 0), (0, 0)], vec![0], |f, g| Ok(f ^ g)).unwrap();
        let m = MonoidalBase::new(&c, 0, vec![0], vec![0, 1, 1, 0]).unwrap();
        TableSmc::new(c, m, vec![sigma]).unwrap()
    }

    #[test]
    fn hexagon_violation_is_reported() {
        assert!(z2(0).check_laws().unwrap().is_pass());
        // σ = s is natural and involutive, but σ_{a⊗a,a} = s while the hexagon gives s ⨟ s = id
        let report = z2(1).check_laws().unwrap();
        assert!(!report.is_pass());
        assert!(report.violations.iter().all(|v| v.law == "hexagon"));
    }
}
