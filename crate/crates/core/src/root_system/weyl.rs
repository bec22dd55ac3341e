//! Weyl group elements, enumeration, the extended Weyl group, and the
//! shifted (dot) action with linkage.
//!
//! Elements carry two integer matrices: the action on fundamental weight
//! coordinates and the action on coroot coordinates (used for torsion
//! labels). Both are exact; equality is matrix equality on the weight side.

use std::collections::{HashSet, VecDeque};

use num_traits::Zero;

use crate::error::Error;
use crate::rat::{mod1, rat, Rat};

use super::{RootSystem, Weight};

/// An element of the Weyl group.
#[derive(Debug, Clone)]
pub struct WeylElement {
    rank: usize,
    /// Row-major action on fundamental coordinates.
    mat: Vec<i64>,
    /// Row-major action on coroot coordinates.
    cmat: Vec<i64>,
    /// A word in simple reflections reaching this element (shortest found).
    word: Vec<u8>,
    sign: i8,
}

// The action on fundamental coordinates is faithful, so equality compares
// the weight-side matrix only; words found by different routes may differ.
impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.mat == other.mat
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.mat.hash(state);
    }
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut mat = vec![0i64; rank * rank];
        for i in 0..rank {
            mat[i * rank + i] = 1;
        }
        WeylElement { rank, mat: mat.clone(), cmat: mat, word: Vec::new(), sign: 1 }
    }

    /// The simple reflection s_i.
    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        let n = rs.rank();
        let a = rs.cartan();
        let mut mat = vec![0i64; n * n];
        let mut cmat = vec![0i64; n * n];
        for k in 0..n {
            for j in 0..n {
                // fundamental coordinates: I - col_i(A) e_i^T
                mat[k * n + j] = (k == j) as i64 - if j == i { a[k][i] } else { 0 };
                // coroot coordinates: I - e_i col_i(A)^T
                cmat[k * n + j] = (k == j) as i64 - if k == i { a[j][i] } else { 0 };
            }
        }
        WeylElement { rank: n, mat, cmat, word: vec![i as u8], sign: -1 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Determinant of the weight-side action: +1 or -1.
    pub fn sign(&self) -> i64 {
        self.sign as i64
    }

    /// A word in simple reflections (indices, 0-based) for this element.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty() || *self == WeylElement::identity(self.rank)
    }

    /// Group product `self * other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.rank, other.rank);
        let n = self.rank;
        let mut mat = vec![0i64; n * n];
        let mut cmat = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i64;
                let mut cs = 0i64;
                for k in 0..n {
                    s += self.mat[i * n + k] * other.mat[k * n + j];
                    cs += self.cmat[i * n + k] * other.cmat[k * n + j];
                }
                mat[i * n + j] = s;
                cmat[i * n + j] = cs;
            }
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { rank: n, mat, cmat, word, sign: self.sign * other.sign }
    }

    /// Linear action on a weight (both real and torsion parts).
    pub fn apply(&self, w: &Weight) -> Weight {
        let n = self.rank;
        assert_eq!(w.rank(), n);
        let real: Vec<Rat> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| rat(self.mat[i * n + j]) * &w.real()[j])
                    .sum()
            })
            .collect();
        let torsion: Vec<Rat> = (0..n)
            .map(|i| {
                mod1(
                    &(0..n)
                        .map(|j| rat(self.cmat[i * n + j]) * &w.torsion()[j])
                        .sum::<Rat>(),
                )
            })
            .collect();
        Weight::with_torsion(real, torsion)
    }
}

/// An element of the extended Weyl group: a 2-torsion label paired with a
/// Weyl element, with product `(z, v)(e, w) = (z + v e, v w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtWeylElement {
    zeta: Vec<Rat>,
    w: WeylElement,
}

impl ExtWeylElement {
    /// Requires `2 zeta = 0` after mod-1 reduction (entries in {0, 1/2}).
    pub fn new(rs: &RootSystem, zeta: Vec<Rat>, w: WeylElement) -> Result<Self, Error> {
        assert_eq!(zeta.len(), rs.rank());
        let zeta: Vec<Rat> = zeta.iter().map(mod1).collect();
        let carrier = Weight::with_torsion(vec![Rat::zero(); rs.rank()], zeta.clone());
        if !rs.torsion_in_yq(&carrier) {
            return Err(Error::Parse(
                "extended Weyl label must satisfy 2*zeta = 0".into(),
            ));
        }
        Ok(ExtWeylElement { zeta, w })
    }

    pub fn from_weyl(rs: &RootSystem, w: WeylElement) -> Self {
        ExtWeylElement { zeta: vec![Rat::zero(); rs.rank()], w }
    }

    pub fn identity(rs: &RootSystem) -> Self {
        Self::from_weyl(rs, WeylElement::identity(rs.rank()))
    }

    pub fn zeta(&self) -> &[Rat] {
        &self.zeta
    }

    pub fn weyl(&self) -> &WeylElement {
        &self.w
    }

    /// Semidirect product law.
    pub fn compose(&self, other: &ExtWeylElement) -> ExtWeylElement {
        let n = self.w.rank();
        let carrier = Weight::with_torsion(vec![Rat::zero(); n], other.zeta.clone());
        let moved = self.w.apply(&carrier);
        let zeta: Vec<Rat> = self
            .zeta
            .iter()
            .zip(moved.torsion())
            .map(|(a, b)| mod1(&(a + b)))
            .collect();
        ExtWeylElement { zeta, w: self.w.compose(&other.w) }
    }
}

impl RootSystem {
    /// Enumerate the Weyl group by closure under the simple reflections.
    /// Errors when the group has more than `cap` elements.
    pub fn weyl_elements(&self, cap: usize) -> Result<Vec<WeylElement>, Error> {
        let gens: Vec<WeylElement> = (0..self.rank())
            .map(|i| WeylElement::simple(self, i))
            .collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut out: Vec<WeylElement> = Vec::new();
        let mut queue = VecDeque::new();
        let id = WeylElement::identity(self.rank());
        seen.insert(id.mat.clone());
        queue.push_back(id.clone());
        out.push(id);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let next = g.compose(&w);
                if seen.insert(next.mat.clone()) {
                    if out.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }

    /// All 2-torsion labels (the group Y_q), as torsion vectors.
    pub fn yq_elements(&self) -> Vec<Vec<Rat>> {
        let n = self.rank();
        let mut out = vec![vec![Rat::zero(); n]];
        for i in 0..n {
            let mut extended = Vec::with_capacity(out.len() * 2);
            for v in &out {
                extended.push(v.clone());
                let mut half = v.clone();
                half[i] = crate::rat::ratio(1, 2);
                extended.push(half);
            }
            out = extended;
        }
        out
    }

    /// The shifted action `(zeta, w) . lambda = w(lambda + rho) - rho + zeta`.
    pub fn shifted_action(&self, what: &ExtWeylElement, lam: &Weight) -> Weight {
        let moved = what.weyl().apply(&lam.add(self.rho()));
        let real: Vec<Rat> = moved
            .real()
            .iter()
            .zip(self.rho().real())
            .map(|(a, r)| a - r)
            .collect();
        let torsion: Vec<Rat> = moved
            .torsion()
            .iter()
            .zip(what.zeta())
            .map(|(t, z)| mod1(&(t + z)))
            .collect();
        Weight::with_torsion(real, torsion)
    }

    /// Linkage: `mu` lies in the shifted orbit of `lam` under the extended
    /// Weyl group. Enumerates the (finite) group exhaustively.
    pub fn are_linked(&self, lam: &Weight, mu: &Weight) -> Result<bool, Error> {
        let group = self.weyl_elements(self.enum_cap())?;
        let yq = self.yq_elements();
        for w in &group {
            let base = ExtWeylElement::from_weyl(self, w.clone());
            let dotted = self.shifted_action(&base, lam);
            if dotted.real() != mu.real() {
                continue;
            }
            for zeta in &yq {
                let shifted: Vec<Rat> = dotted
                    .torsion()
                    .iter()
                    .zip(zeta)
                    .map(|(t, z)| mod1(&(t + z)))
                    .collect();
                if shifted == mu.torsion() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}
