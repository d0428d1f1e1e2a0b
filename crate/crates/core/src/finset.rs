//! Skeletal finite sets and total functions between them.
//!
//! A finite set is identified with its size `n` and has elements `0..n`.
//! Products use the row-major encoding `pair(i, j) = i * |b| + j`, which makes
//! `(a × b) × c` and `a × (b × c)` literally the same set with the same
//! element encoding. Coproducts place the left summand first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total function `{0..dom} → {0..cod}` stored as a lookup table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawFinFn")]
pub struct FinFn {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

#[derive(Deserialize)]
struct RawFinFn {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

impl TryFrom<RawFinFn> for FinFn {
    type Error = Error;

    fn try_from(raw: RawFinFn) -> Result<Self> {
        FinFn::new(raw.dom, raw.cod, raw.table)
    }
}

impl FinFn {
    pub fn new(dom: usize, cod: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom {
            return Err(Error::InvalidTable(format!(
                "table has {} entries but the domain has size {dom}",
                table.len()
            )));
        }
        if let Some((i, &t)) = table.iter().enumerate().find(|(_, &t)| t >= cod) {
            return Err(Error::InvalidTable(format!(
                "entry {i} maps to {t}, outside codomain of size {cod}"
            )));
        }
        Ok(Self { dom, cod, table })
    }

    /// Builds a map from a closure. The closure must land in `0..cod`.
    pub fn from_fn(dom: usize, cod: usize, f: impl FnMut(usize) -> usize) -> Result<Self> {
        Self::new(dom, cod, (0..dom).map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self {
            dom: n,
            cod: n,
            table: (0..n).collect(),
        }
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Result<Self> {
        Self::new(dom, cod, vec![value; dom])
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// Diagrammatic composite `self ⨟ g`.
    pub fn compose(&self, g: &FinFn) -> Result<FinFn> {
        if self.cod != g.dom {
            return Err(Error::CodomainMismatch {
                left_cod: self.cod,
                right_dom: g.dom,
            });
        }
        Ok(FinFn {
            dom: self.dom,
            cod: g.cod,
            table: self.table.iter().map(|&t| g.table[t]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        self.table.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.dom == self.cod && self.is_injective()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Option<FinFn> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.dom];
        for (i, &t) in self.table.iter().enumerate() {
            table[t] = i;
        }
        Some(FinFn {
            dom: self.cod,
            cod: self.dom,
            table,
        })
    }

    /// Elements of the domain sent to `j`, ascending.
    pub fn preimage(&self, j: usize) -> Vec<usize> {
        (0..self.dom).filter(|&i| self.table[i] == j).collect()
    }

    /// Lexicographic rank of the table among all maps `dom → cod`.
    pub fn rank(&self) -> u128 {
        self.table
            .iter()
            .fold(0u128, |acc, &t| acc * self.cod as u128 + t as u128)
    }

    /// Inverse of [`FinFn::rank`].
    pub fn from_rank(dom: usize, cod: usize, rank: u128) -> Result<FinFn> {
        let total = hom_count(dom, cod).ok_or(Error::ResourceBound {
            needed: u128::MAX,
            limit: usize::MAX,
        })?;
        if rank >= total {
            return Err(Error::IndexOutOfRange {
                what: "hom-set",
                index: rank.min(usize::MAX as u128) as usize,
                size: total.min(usize::MAX as u128) as usize,
            });
        }
        let mut table = vec![0; dom];
        let mut r = rank;
        for slot in table.iter_mut().rev() {
            *slot = (r % cod as u128) as usize;
            r /= cod as u128;
        }
        FinFn::new(dom, cod, table)
    }
}

/// `|cod|^|dom|`, with `0^0 = 1`; `None` on overflow.
pub fn hom_count(dom: usize, cod: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..dom {
        acc = acc.checked_mul(cod as u128)?;
    }
    Some(acc)
}

/// Every map `dom → cod`, in lexicographic order of tables.
pub fn all_maps(dom: usize, cod: usize) -> AllMaps {
    AllMaps {
        dom,
        cod,
        next: if dom > 0 && cod == 0 {
            None
        } else {
            Some(vec![0; dom])
        },
    }
}

#[derive(Debug, Clone)]
pub struct AllMaps {
    dom: usize,
    cod: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for AllMaps {
    type Item = FinFn;

    fn next(&mut self) -> Option<FinFn> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = self.dom;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.cod {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(FinFn {
            dom: self.dom,
            cod: self.cod,
            table: current,
        })
    }
}

/// The product `left × right` with its row-major encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Product {
    pub left: usize,
    pub right: usize,
}

pub fn product(left: usize, right: usize) -> Product {
    Product { left, right }
}

impl Product {
    pub fn size(&self) -> usize {
        self.left * self.right
    }

    pub fn pair(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.left && j < self.right);
        i * self.right + j
    }

    pub fn unpair(&self, k: usize) -> (usize, usize) {
        (k / self.right, k % self.right)
    }

    pub fn proj1(&self) -> FinFn {
        FinFn {
            dom: self.size(),
            cod: self.left,
            table: (0..self.size()).map(|k| self.unpair(k).0).collect(),
        }
    }

    pub fn proj2(&self) -> FinFn {
        FinFn {
            dom: self.size(),
            cod: self.right,
            table: (0..self.size()).map(|k| self.unpair(k).1).collect(),
        }
    }

    /// The pairing `⟨f, g⟩: z → left × right`.
    pub fn pairing(&self, f: &FinFn, g: &FinFn) -> Result<FinFn> {
        if f.cod != self.left {
            return Err(Error::CodomainMismatch {
                left_cod: f.cod,
                right_dom: self.left,
            });
        }
        if g.cod != self.right {
            return Err(Error::CodomainMismatch {
                left_cod: g.cod,
                right_dom: self.right,
            });
        }
        if f.dom != g.dom {
            return Err(Error::InvalidTable(format!(
                "pairing needs a common domain, got {} and {}",
                f.dom, g.dom
            )));
        }
        Ok(FinFn {
            dom: f.dom,
            cod: self.size(),
            table: (0..f.dom).map(|k| self.pair(f.table[k], g.table[k])).collect(),
        })
    }
}

/// The product map `f × g: a × b → a' × b'`.
pub fn product_map(f: &FinFn, g: &FinFn) -> FinFn {
    let src = product(f.dom, g.dom);
    let tgt = product(f.cod, g.cod);
    FinFn {
        dom: src.size(),
        cod: tgt.size(),
        table: (0..src.size())
            .map(|k| {
                let (i, j) = src.unpair(k);
                tgt.pair(f.table[i], g.table[j])
            })
            .collect(),
    }
}

/// The coproduct `left + right`; left elements come first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coproduct {
    pub left: usize,
    pub right: usize,
}

pub fn coproduct(left: usize, right: usize) -> Coproduct {
    Coproduct { left, right }
}

/// Which summand an element of a coproduct lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summand {
    Left(usize),
    Right(usize),
}

impl Coproduct {
    pub fn size(&self) -> usize {
        self.left + self.right
    }

    pub fn inl(&self, i: usize) -> usize {
        i
    }

    pub fn inr(&self, j: usize) -> usize {
        self.left + j
    }

    pub fn split(&self, k: usize) -> Summand {
        if k < self.left {
            Summand::Left(k)
        } else {
            Summand::Right(k - self.left)
        }
    }

    pub fn inl_map(&self) -> FinFn {
        FinFn {
            dom: self.left,
            cod: self.size(),
            table: (0..self.left).collect(),
        }
    }

    pub fn inr_map(&self) -> FinFn {
        FinFn {
            dom: self.right,
            cod: self.size(),
            table: (self.left..self.size()).collect(),
        }
    }

    /// The copairing `[f, g]: left + right → z`.
    pub fn copair(&self, f: &FinFn, g: &FinFn) -> Result<FinFn> {
        if f.dom != self.left || g.dom != self.right {
            return Err(Error::InvalidTable(format!(
                "copairing expects domains {} and {}, got {} and {}",
                self.left, self.right, f.dom, g.dom
            )));
        }
        if f.cod != g.cod {
            return Err(Error::CodomainMismatch {
                left_cod: f.cod,
                right_dom: g.cod,
            });
        }
        let mut table = f.table.clone();
        table.extend_from_slice(&g.table);
        Ok(FinFn {
            dom: self.size(),
            cod: f.cod,
            table,
        })
    }
}

/// The sum map `f + g: a + b → a' + b'`.
pub fn sum_map(f: &FinFn, g: &FinFn) -> FinFn {
    let mut table = f.table.clone();
    table.extend(g.table.iter().map(|&t| f.cod + t));
    FinFn {
        dom: f.dom + g.dom,
        cod: f.cod + g.cod,
        table,
    }
}

/// Diagonal `δ_c: c → c × c`.
pub fn diagonal(c: usize) -> FinFn {
    let p = product(c, c);
    FinFn {
        dom: c,
        cod: p.size(),
        table: (0..c).map(|i| p.pair(i, i)).collect(),
    }
}

/// Terminal map `ε_c: c → 1`.
pub fn terminal(c: usize) -> FinFn {
    FinFn {
        dom: c,
        cod: 1,
        table: vec![0; c],
    }
}

/// Initial map `0 → c`.
pub fn initial(c: usize) -> FinFn {
    FinFn {
        dom: 0,
        cod: c,
        table: Vec::new(),
    }
}

/// Symmetry `σ_{a,b}: a × b → b × a`.
pub fn symmetry(a: usize, b: usize) -> FinFn {
    let src = product(a, b);
    let tgt = product(b, a);
    FinFn {
        dom: src.size(),
        cod: tgt.size(),
        table: (0..src.size())
            .map(|k| {
                let (i, j) = src.unpair(k);
                tgt.pair(j, i)
            })
            .collect(),
    }
}

/// Codiagonal `∇_c = [id, id]: c + c → c`.
pub fn codiagonal(c: usize) -> FinFn {
    FinFn {
        dom: 2 * c,
        cod: c,
        table: (0..c).chain(0..c).collect(),
    }
}

/// Coproduct symmetry `a + b → b + a`.
pub fn coproduct_symmetry(a: usize, b: usize) -> FinFn {
    let src = coproduct(a, b);
    let tgt = coproduct(b, a);
    FinFn {
        dom: src.size(),
        cod: tgt.size(),
        table: (0..src.size())
            .map(|k| match src.split(k) {
                Summand::Left(i) => tgt.inr(i),
                Summand::Right(j) => tgt.inl(j),
            })
            .collect(),
    }
}

/// The pullback of a cospan `f: a → c ← b: g`.
///
/// The carrier enumerates the agreeing pairs `(i, j)` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    left: FinFn,
    right: FinFn,
    pairs: Vec<(usize, usize)>,
}

pub fn pullback(f: &FinFn, g: &FinFn) -> Result<Pullback> {
    if f.cod != g.cod {
        return Err(Error::CodomainMismatch {
            left_cod: f.cod,
            right_dom: g.cod,
        });
    }
    let pairs = (0..f.dom)
        .flat_map(|i| (0..g.dom).map(move |j| (i, j)))
        .filter(|&(i, j)| f.table[i] == g.table[j])
        .collect();
    Ok(Pullback {
        left: f.clone(),
        right: g.clone(),
        pairs,
    })
}

impl Pullback {
    pub fn carrier(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn leg1(&self) -> FinFn {
        FinFn {
            dom: self.carrier(),
            cod: self.left.dom,
            table: self.pairs.iter().map(|p| p.0).collect(),
        }
    }

    pub fn leg2(&self) -> FinFn {
        FinFn {
            dom: self.carrier(),
            cod: self.right.dom,
            table: self.pairs.iter().map(|p| p.1).collect(),
        }
    }

    /// The unique map into the carrier induced by a commuting cone `(q1, q2)`.
    pub fn factor(&self, q1: &FinFn, q2: &FinFn) -> Result<FinFn> {
        if q1.cod != self.left.dom || q2.cod != self.right.dom || q1.dom != q2.dom {
            return Err(Error::InvalidTable(
                "cone legs do not match the cospan".to_string(),
            ));
        }
        let table = (0..q1.dom)
            .map(|k| {
                let key = (q1.table[k], q2.table[k]);
                self.pairs.binary_search(&key).map_err(|_| Error::NoFactorization)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinFn {
            dom: q1.dom,
            cod: self.carrier(),
            table,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ff(dom: usize, cod: usize, t: &[usize]) -> FinFn {
        FinFn::new(dom, cod, t.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let swap = ff(2, 2, &[1, 0]);
        assert_eq!(FinFn::identity(2).compose(&swap).unwrap(), swap);
        let f = ff(2, 1, &[0, 0]);
        let g = ff(1, 3, &[2]);
        assert_eq!(f.compose(&g).unwrap().table(), &[2, 2]);
        let empty = ff(0, 5, &[]);
        let h = ff(5, 2, &[0, 1, 1, 0, 1]);
        let e = empty.compose(&h).unwrap();
        assert_eq!((e.dom(), e.cod(), e.table().len()), (0, 2, 0));
    }

    #[test]
    fn compose_mismatch() {
        let f = ff(2, 2, &[0, 1]);
        let g = ff(3, 1, &[0, 0, 0]);
        assert_eq!(
            f.compose(&g),
            Err(Error::CodomainMismatch {
                left_cod: 2,
                right_dom: 3
            })
        );
    }

    #[test]
    fn table_validation() {
        assert!(FinFn::new(2, 2, vec![0, 2]).is_err());
        assert!(FinFn::new(2, 2, vec![0]).is_err());
        assert!(FinFn::new(0, 0, vec![]).is_ok());
    }

    #[test]
    fn product_examples() {
        let p = product(2, 3);
        assert_eq!(p.size(), 6);
        assert_eq!(p.pair(1, 2), 5);
        assert_eq!(product(4, 1).proj1(), FinFn::identity(4));
        let f = ff(2, 2, &[1, 0]);
        let g = ff(2, 2, &[0, 0]);
        let fg = product(2, 2).pairing(&f, &g).unwrap();
        assert_eq!(fg.table(), &[2, 0]);
        assert_eq!(fg.compose(&product(2, 2).proj1()).unwrap(), f);
        assert_eq!(fg.compose(&product(2, 2).proj2()).unwrap(), g);
    }

    #[test]
    fn coproduct_examples() {
        let s = coproduct(2, 3);
        assert_eq!(s.size(), 5);
        assert_eq!(s.inr(1), 3);
        assert_eq!(codiagonal(2).table(), &[0, 1, 0, 1]);
        let f = ff(1, 2, &[1]);
        let g = ff(1, 2, &[0]);
        assert_eq!(coproduct(1, 1).copair(&f, &g).unwrap().table(), &[1, 0]);
    }

    #[test]
    fn structural_examples() {
        assert_eq!(diagonal(2).table(), &[0, 3]);
        assert_eq!(terminal(3).table(), &[0, 0, 0]);
        let s = symmetry(2, 3);
        assert_eq!(s.apply(product(2, 3).pair(1, 2)), product(3, 2).pair(2, 1));
        assert_eq!(s.apply(5), 5);
    }

    #[test]
    fn pullback_examples() {
        let id = FinFn::identity(2);
        let g = ff(3, 2, &[0, 0, 1]);
        let pb = pullback(&id, &g).unwrap();
        assert_eq!(pb.pairs(), &[(0, 0), (0, 1), (1, 2)]);
        assert!(pb.leg2().is_bijective());

        let f = terminal(2);
        let h = terminal(3);
        assert_eq!(pullback(&f, &h).unwrap().carrier(), 6);
    }

    #[test]
    fn pullback_factorization() {
        let f = ff(2, 2, &[0, 1]);
        let g = ff(3, 2, &[0, 0, 1]);
        let pb = pullback(&f, &g).unwrap();
        let q1 = ff(2, 2, &[1, 0]);
        let q2 = ff(2, 3, &[2, 1]);
        let u = pb.factor(&q1, &q2).unwrap();
        assert_eq!(u.compose(&pb.leg1()).unwrap(), q1);
        assert_eq!(u.compose(&pb.leg2()).unwrap(), q2);
        let bad = ff(2, 3, &[0, 1]);
        assert_eq!(pb.factor(&q1, &bad), Err(Error::NoFactorization));
        assert!(matches!(
            pullback(&f, &ff(1, 3, &[0])),
            Err(Error::CodomainMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_order_and_counts() {
        let tables: Vec<Vec<usize>> = all_maps(2, 2).map(|f| f.table().to_vec()).collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(all_maps(0, 0).count(), 1);
        assert_eq!(all_maps(0, 3).count(), 1);
        assert_eq!(all_maps(2, 0).count(), 0);
        assert_eq!(all_maps(3, 3).count(), 27);
        for (r, f) in all_maps(3, 2).enumerate() {
            assert_eq!(f.rank(), r as u128);
            assert_eq!(FinFn::from_rank(3, 2, r as u128).unwrap(), f);
        }
    }

    #[test]
    fn serde_validates() {
        let f: FinFn = serde_json::from_str(r#"{"dom":2,"cod":3,"table":[2,0]}"#).unwrap();
        assert_eq!(f.table(), &[2, 0]);
        assert!(serde_json::from_str::<FinFn>(r#"{"dom":2,"cod":2,"table":[2,0]}"#).is_err());
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"dom":2,"cod":3,"table":[2,0]}"#
        );
    }
}
