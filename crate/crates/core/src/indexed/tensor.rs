use super::{IndexedCat, LensMorphism, LensObject, TotalCategory};
use crate::catkit::{FinCategory, LawReport};
use crate::error::{Error, Result};

/// A strict monoidal structure on a finite category, stored as tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalBase {
    unit: usize,
    n_objects: usize,
    n_morphisms: usize,
    tensor_ob: Vec<usize>,
    tensor_mor: Vec<usize>,
}

impl MonoidalBase {
    pub fn new(
        base: &FinCategory,
        unit: usize,
        tensor_ob: Vec<usize>,
        tensor_mor: Vec<usize>,
    ) -> Result<Self> {
        let (n, m) = (base.n_objects(), base.n_morphisms());
        if unit >= n {
            return Err(Error::IndexOutOfRange {
                what: "unit object",
                index: unit,
                size: n,
            });
        }
        if tensor_ob.len() != n * n || tensor_mor.len() != m * m {
            return Err(Error::MalformedData(format!(
                "tensor tables have lengths ({}, {}), expected ({}, {})",
                tensor_ob.len(),
                tensor_mor.len(),
                n * n,
                m * m
            )));
        }
        if tensor_ob.iter().any(|&o| o >= n) || tensor_mor.iter().any(|&f| f >= m) {
            return Err(Error::MalformedData("tensor table entry out of range".into()));
        }
        Ok(Self {
            unit,
            n_objects: n,
            n_morphisms: m,
            tensor_ob,
            tensor_mor,
        })
    }

    /// Tabulates closures over every pair of objects and morphisms.
    pub fn from_fn(
        base: &FinCategory,
        unit: usize,
        mut on_objects: impl FnMut(usize, usize) -> Result<usize>,
        mut on_morphisms: impl FnMut(usize, usize) -> Result<usize>,
    ) -> Result<Self> {
        let (n, m) = (base.n_objects(), base.n_morphisms());
        let tensor_ob = (0..n * n)
            .map(|k| on_objects(k / n, k % n))
            .collect::<Result<Vec<_>>>()?;
        let tensor_mor = (0..m * m)
            .map(|k| on_morphisms(k / m, k % m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, unit, tensor_ob, tensor_mor)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn ob(&self, c: usize, d: usize) -> usize {
        self.tensor_ob[c * self.n_objects + d]
    }

    pub fn mor(&self, f: usize, g: usize) -> usize {
        self.tensor_mor[f * self.n_morphisms + g]
    }

    /// Bifunctoriality, strict unit and strict associativity, exhaustively.
    pub fn check_laws(&self, base: &FinCategory) -> LawReport {
        let mut report = LawReport::default();
        let (n, m) = (self.n_objects, self.n_morphisms);
        for f in 0..m {
            for g in 0..m {
                let fg = self.mor(f, g);
                report.expect(
                    base.dom(fg) == self.ob(base.dom(f), base.dom(g))
                        && base.cod(fg) == self.ob(base.cod(f), base.cod(g)),
                    "tensor-typing",
                    || vec![f, g],
                    || format!("{f} ⊗ {g} = {fg} has the wrong endpoints"),
                );
            }
        }
        for c in 0..n {
            for d in 0..n {
                let ids = self.mor(base.identity(c), base.identity(d));
                report.expect(
                    ids == base.identity(self.ob(c, d)),
                    "tensor-identity",
                    || vec![c, d],
                    || format!("id ⊗ id = {ids}"),
                );
            }
            report.expect(
                self.ob(self.unit, c) == c && self.ob(c, self.unit) == c,
                "strict-unit",
                || vec![c],
                || "the unit object does not act trivially".into(),
            );
        }
        let id_unit = base.identity(self.unit);
        for f in 0..m {
            report.expect(
                self.mor(id_unit, f) == f && self.mor(f, id_unit) == f,
                "strict-unit",
                || vec![f],
                || "the unit identity does not act trivially".into(),
            );
        }
        for (f, g, fg) in base.composable_pairs() {
            for (h, k, hk) in base.composable_pairs() {
                let lhs = base.compose(self.mor(f, h), self.mor(g, k));
                report.expect(
                    lhs == Some(self.mor(fg, hk)),
                    "interchange",
                    || vec![f, g, h, k],
                    || format!("(f⊗h)⨟(g⊗k) = {lhs:?}, (f⨟g)⊗(h⨟k) = {}", self.mor(fg, hk)),
                );
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let (l, r) = (self.mor(self.mor(a, b), c), self.mor(a, self.mor(b, c)));
                    report.expect(
                        l == r,
                        "strict-associativity",
                        || vec![a, b, c],
                        || format!("(a⊗b)⊗c = {l}, a⊗(b⊗c) = {r}"),
                    );
                }
            }
        }
        report
    }
}

/// Structure maps `φ_{c,d}: F(c) × F(d) → F(c ⊗ d)` and a unit object of `F(I)`.
pub trait Laxator {
    fn unit(&self) -> usize;
    /// Object `φ(x, y)` of `fiber(c ⊗ d)` for `x` in `fiber(c)` and `y` in `fiber(d)`.
    fn on_objects(&self, c: usize, d: usize, x: usize, y: usize) -> Result<usize>;
    /// Morphism `φ(u, v)` of `fiber(c ⊗ d)`.
    fn on_morphisms(&self, c: usize, d: usize, u: usize, v: usize) -> Result<usize>;
}

/// Exhaustively checks that each `φ_{c,d}` is a functor, that it commutes
/// with reindexing along `f ⊗ g`, and that `φ(unit, x) = x = φ(x, unit)`.
pub fn check_laxator<L: Laxator>(f: &IndexedCat, monoidal: &MonoidalBase, laxator: &L) -> Result<LawReport> {
    let base = f.base();
    let mut report = LawReport::default();
    let n = base.n_objects();
    for c in 0..n {
        for d in 0..n {
            let (fc, fd, fcd) = (f.fiber(c), f.fiber(d), f.fiber(monoidal.ob(c, d)));
            for u in 0..fc.n_morphisms() {
                for v in 0..fd.n_morphisms() {
                    let w = laxator.on_morphisms(c, d, u, v)?;
                    let (dom, cod) = (
                        laxator.on_objects(c, d, fc.dom(u), fd.dom(v))?,
                        laxator.on_objects(c, d, fc.cod(u), fd.cod(v))?,
                    );
                    report.expect(
                        fcd.dom(w) == dom && fcd.cod(w) == cod,
                        "laxator-typing",
                        || vec![c, d, u, v],
                        || format!("φ(u, v) = {w} has the wrong endpoints"),
                    );
                }
            }
            for x in 0..fc.n_objects() {
                for y in 0..fd.n_objects() {
                    let w = laxator.on_morphisms(c, d, fc.identity(x), fd.identity(y))?;
                    let o = laxator.on_objects(c, d, x, y)?;
                    report.expect(
                        w == fcd.identity(o),
                        "laxator-identity",
                        || vec![c, d, x, y],
                        || format!("φ(id, id) = {w}"),
                    );
                }
            }
            for (u, u2, uu) in fc.composable_pairs() {
                for (v, v2, vv) in fd.composable_pairs() {
                    let lhs = fcd.compose(
                        laxator.on_morphisms(c, d, u, v)?,
                        laxator.on_morphisms(c, d, u2, v2)?,
                    );
                    let rhs = laxator.on_morphisms(c, d, uu, vv)?;
                    report.expect(
                        lhs == Some(rhs),
                        "laxator-composition",
                        || vec![c, d, u, u2, v, v2],
                        || format!("φ(u,v)⨟φ(u',v') = {lhs:?}, φ(u⨟u', v⨟v') = {rhs}"),
                    );
                }
            }
        }
    }
    for g in 0..base.n_morphisms() {
        for h in 0..base.n_morphisms() {
            let (c, d) = (base.dom(g), base.dom(h));
            let (c2, d2) = (base.cod(g), base.cod(h));
            let along = f.reindex(monoidal.mor(g, h));
            let (rg, rh) = (f.reindex(g), f.reindex(h));
            let (fc2, fd2) = (f.fiber(c2), f.fiber(d2));
            for x in 0..fc2.n_objects() {
                for y in 0..fd2.n_objects() {
                    let lhs = along.obj_map[laxator.on_objects(c2, d2, x, y)?];
                    let rhs = laxator.on_objects(c, d, rg.obj_map[x], rh.obj_map[y])?;
                    report.expect(
                        lhs == rhs,
                        "laxator-naturality",
                        || vec![g, h, x, y],
                        || format!("reindexing then φ gives {rhs}, φ then reindexing gives {lhs}"),
                    );
                }
            }
            for u in 0..fc2.n_morphisms() {
                for v in 0..fd2.n_morphisms() {
                    let lhs = along.mor_map[laxator.on_morphisms(c2, d2, u, v)?];
                    let rhs = laxator.on_morphisms(c, d, rg.mor_map[u], rh.mor_map[v])?;
                    report.expect(
                        lhs == rhs,
                        "laxator-naturality",
                        || vec![g, h, u, v],
                        || format!("reindexing then φ gives {rhs}, φ then reindexing gives {lhs}"),
                    );
                }
            }
        }
    }
    let i = monoidal.unit();
    for c in 0..n {
        for x in 0..f.fiber(c).n_objects() {
            let (l, r) = (
                laxator.on_objects(i, c, laxator.unit(), x)?,
                laxator.on_objects(c, i, x, laxator.unit())?,
            );
            report.expect(
                l == x && r == x,
                "laxator-unit",
                || vec![c, x],
                || format!("φ(unit, x) = {l}, φ(x, unit) = {r}"),
            );
        }
    }
    Ok(report)
}

/// The tensor `⟨c|x⟩ ⊗ ⟨d|y⟩ = ⟨c⊗d | φ(x,y)⟩`, `⟨f|f♯⟩ ⊗ ⟨g|g♯⟩ = ⟨f⊗g | φ(f♯,g♯)⟩`
/// on a lens category whose base carries a strict monoidal structure.
pub struct LensTensor<'a, L> {
    indexed: &'a IndexedCat,
    monoidal: MonoidalBase,
    laxator: L,
}

impl<'a, L: Laxator> LensTensor<'a, L> {
    /// Verifies the base structure and the laxator before accepting them.
    pub fn new(indexed: &'a IndexedCat, monoidal: MonoidalBase, laxator: L) -> Result<Self> {
        if let Some(v) = monoidal.check_laws(indexed.base()).violations.first() {
            return Err(Error::MalformedData(format!("monoidal base: {v}")));
        }
        if let Some(v) = check_laxator(indexed, &monoidal, &laxator)?.violations.first() {
            return Err(Error::LaxatorIncoherent(v.to_string()));
        }
        Ok(Self {
            indexed,
            monoidal,
            laxator,
        })
    }

    pub fn unit_object(&self) -> LensObject {
        LensObject::new(self.monoidal.unit(), self.laxator.unit())
    }

    pub fn tensor_objects(&self, a: LensObject, b: LensObject) -> Result<LensObject> {
        Ok(LensObject::new(
            self.monoidal.ob(a.base, b.base),
            self.laxator.on_objects(a.base, b.base, a.fiber, b.fiber)?,
        ))
    }

    pub fn tensor_morphisms(&self, a: &LensMorphism, b: &LensMorphism) -> Result<LensMorphism> {
        Ok(LensMorphism {
            get: self.monoidal.mor(a.get, b.get),
            put: self
                .laxator
                .on_morphisms(a.source.base, b.source.base, a.put, b.put)?,
            source: self.tensor_objects(a.source, b.source)?,
            target: self.tensor_objects(a.target, b.target)?,
        })
    }

    fn tensor_ids(&self, lens: &TotalCategory, a: usize, b: usize) -> Result<usize> {
        let label = self.tensor_morphisms(lens.morphism(a), lens.morphism(b))?;
        lens.morphism_id(&label).ok_or_else(|| {
            Error::MalformedData(format!("{a} ⊗ {b} is not a morphism of the lens category"))
        })
    }

    /// `(α⊗β) ⨟ (γ⊗δ) = (α⨟γ) ⊗ (β⨟δ)` over all pairs of composable pairs,
    /// and `id ⊗ id = id`. `lens` must be `lens_category` of the same indexed category.
    pub fn check_interchange(&self, lens: &TotalCategory) -> Result<LawReport> {
        let c = lens.category();
        let mut report = LawReport::default();
        for a in 0..c.n_objects() {
            for b in 0..c.n_objects() {
                let ids = self.tensor_ids(lens, c.identity(a), c.identity(b))?;
                let expected = lens.object_id(&self.tensor_objects(*lens.object(a), *lens.object(b))?);
                report.expect(
                    Some(ids) == expected.map(|o| c.identity(o)),
                    "tensor-identity",
                    || vec![a, b],
                    || format!("id ⊗ id = {ids}"),
                );
            }
        }
        for (alpha, gamma, ag) in c.composable_pairs() {
            for (beta, delta, bd) in c.composable_pairs() {
                let lhs = c.compose(
                    self.tensor_ids(lens, alpha, beta)?,
                    self.tensor_ids(lens, gamma, delta)?,
                );
                let rhs = self.tensor_ids(lens, ag, bd)?;
                report.expect(
                    lhs == Some(rhs),
                    "interchange",
                    || vec![alpha, gamma, beta, delta],
                    || format!("(α⊗β)⨟(γ⊗δ) = {lhs:?}, (α⨟γ)⊗(β⨟δ) = {rhs}"),
                );
            }
        }
        Ok(report)
    }

    /// Tensoring with the unit object or its identity changes nothing.
    pub fn check_unit(&self, lens: &TotalCategory) -> Result<LawReport> {
        let mut report = LawReport::default();
        let unit = self.unit_object();
        for (i, &o) in lens.objects().iter().enumerate() {
            let (l, r) = (self.tensor_objects(unit, o)?, self.tensor_objects(o, unit)?);
            report.expect(
                l == o && r == o,
                "tensor-unit",
                || vec![i],
                || format!("unit ⊗ x = {l:?}, x ⊗ unit = {r:?}"),
            );
        }
        let id_unit = lens
            .object_id(&unit)
            .map(|u| lens.category().identity(u))
            .ok_or_else(|| Error::MalformedData("unit object is missing".into()))?;
        for m in 0..lens.category().n_morphisms() {
            let (l, r) = (self.tensor_ids(lens, id_unit, m)?, self.tensor_ids(lens, m, id_unit)?);
            report.expect(
                l == m && r == m,
                "tensor-unit",
                || vec![m],
                || format!("id ⊗ m = {l}, m ⊗ id = {r}"),
            );
        }
        Ok(report)
    }

    pub fn indexed(&self) -> &IndexedCat {
        self.indexed
    }
}
