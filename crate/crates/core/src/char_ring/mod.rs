//! The computational character ring: coset-grouped polynomial numerators
//! over products of positive-root binomial factors, with canonical reduction
//! and truncated series expansion.
//!
//! An element is stored as `sum_i e^{mu_i} f_i / prod_beta (1 - e^{-beta})^{n_beta}`
//! where the `mu_i` lie in pairwise distinct root-lattice cosets, each `f_i`
//! has trivial greatest common monomial, and for each denominator root some
//! `f_i` is not divisible by its binomial. Denominator factors are restricted
//! to positive roots of the ambient system; asking for anything else is a
//! construction error.

mod laurent;
mod series;

pub use laurent::{LaurentPoly, Mono};
pub use series::SeriesWindow;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Error;
use crate::root_system::{RootSystem, Weight};

/// An element of the character ring in rational form.
#[derive(Debug, Clone)]
pub struct RationalChar {
    rs: Arc<RootSystem>,
    /// Coset representative plus numerator polynomial, sorted by
    /// representative.
    terms: Vec<(Weight, LaurentPoly)>,
    /// Positive-root index -> denominator multiplicity.
    denom: BTreeMap<usize, u32>,
}

impl RationalChar {
    pub fn zero(rs: &Arc<RootSystem>) -> Self {
        RationalChar { rs: Arc::clone(rs), terms: Vec::new(), denom: BTreeMap::new() }
    }

    /// The constant `e^0`, the multiplicative identity.
    pub fn one(rs: &Arc<RootSystem>) -> Self {
        Self::monomial(rs, &Weight::zero(rs.rank()))
    }

    /// A single exponential `e^lambda`.
    pub fn monomial(rs: &Arc<RootSystem>, lam: &Weight) -> Self {
        RationalChar {
            rs: Arc::clone(rs),
            terms: vec![(lam.clone(), LaurentPoly::one(rs.rank()))],
            denom: BTreeMap::new(),
        }
    }

    /// Build from raw parts, validating that every denominator factor is a
    /// positive root. The numerator is coset-grouped and shift-normalized;
    /// the denominator is *not* cancelled (call [`RationalChar::reduce`]).
    pub fn new(
        rs: &Arc<RootSystem>,
        terms: Vec<(Weight, LaurentPoly)>,
        denom: Vec<(Vec<i64>, u32)>,
    ) -> Result<Self, Error> {
        let mut denom_map: BTreeMap<usize, u32> = BTreeMap::new();
        for (coords, n) in denom {
            let idx = rs
                .find_posroot(&coords)
                .ok_or_else(|| Error::NotPositiveRoot(format!("{coords:?}")))?;
            if n > 0 {
                *denom_map.entry(idx).or_insert(0) += n;
            }
        }
        Ok(Self::from_parts(rs, terms, denom_map))
    }

    /// Internal constructor: group terms by root-lattice coset, extract the
    /// unique monomial shift that makes each numerator's greatest common
    /// monomial trivial, drop zeros, and sort.
    pub(crate) fn from_parts(
        rs: &Arc<RootSystem>,
        raw_terms: Vec<(Weight, LaurentPoly)>,
        denom: BTreeMap<usize, u32>,
    ) -> Self {
        let rank = rs.rank();
        // Accumulate per coset relative to the first representative seen,
        // with exponents allowed to be temporarily negative.
        let mut groups: Vec<(Weight, BTreeMap<Vec<i64>, BigInt>)> = Vec::new();
        for (w, f) in raw_terms {
            if f.is_zero() {
                continue;
            }
            assert_eq!(w.rank(), rank, "weight rank mismatch");
            assert_eq!(f.nvars(), rank, "numerator rank mismatch");
            let hit = groups
                .iter_mut()
                .find_map(|(rep, acc)| rs.root_offset(rep, &w).map(|o| (o, acc)));
            match hit {
                Some((offset, acc)) => {
                    // Zero entries are filtered once the group is complete.
                    for (m, c) in f.iter() {
                        let key: Vec<i64> = m
                            .0
                            .iter()
                            .zip(&offset)
                            .map(|(&e, &o)| e as i64 + o)
                            .collect();
                        *acc.entry(key).or_insert_with(BigInt::zero) += c;
                    }
                }
                None => {
                    let acc: BTreeMap<Vec<i64>, BigInt> = f
                        .iter()
                        .map(|(m, c)| {
                            (m.0.iter().map(|&e| e as i64).collect(), c.clone())
                        })
                        .collect();
                    groups.push((w, acc));
                }
            }
        }

        let mut terms: Vec<(Weight, LaurentPoly)> = Vec::new();
        for (rep, acc) in groups {
            let entries: Vec<(Vec<i64>, BigInt)> =
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if entries.is_empty() {
                continue;
            }
            let mut min = entries[0].0.clone();
            for (key, _) in &entries[1..] {
                for (a, &b) in min.iter_mut().zip(key) {
                    if b < *a {
                        *a = b;
                    }
                }
            }
            let rep = rs.weight_minus_root_vec(&rep, &min);
            let mut poly = LaurentPoly::zero(rank);
            for (key, c) in entries {
                let exps: Vec<u32> = key
                    .iter()
                    .zip(&min)
                    .map(|(&k, &m)| u32::try_from(k - m).expect("exponent overflow"))
                    .collect();
                poly.add_term(Mono(exps), c);
            }
            terms.push((rep, poly));
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));

        let denom = if terms.is_empty() {
            BTreeMap::new()
        } else {
            denom.into_iter().filter(|&(_, n)| n > 0).collect()
        };
        RationalChar { rs: Arc::clone(rs), terms, denom }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn terms(&self) -> &[(Weight, LaurentPoly)] {
        &self.terms
    }

    /// Denominator as (positive root coordinates, multiplicity), in the fixed
    /// root order. Reflects the stored form; see
    /// [`RationalChar::denominator_roots`] for the canonical multiset.
    pub fn denom(&self) -> Vec<(Vec<i64>, u32)> {
        self.denom
            .iter()
            .map(|(&idx, &n)| (self.rs.posroots()[idx].coords().to_vec(), n))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same_rs(&self, other: &Self) -> Result<(), Error> {
        if self.rs.same_as(&other.rs) {
            Ok(())
        } else {
            Err(Error::MismatchedRootSystems)
        }
    }

    /// Ring addition; the result is in canonical reduced form.
    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_rs(other)?;
        let mut denom: BTreeMap<usize, u32> = self.denom.clone();
        for (&idx, &n) in &other.denom {
            let e = denom.entry(idx).or_insert(0);
            *e = (*e).max(n);
        }
        let mut raw = Vec::new();
        for side in [self, other] {
            let mut fill = LaurentPoly::one(self.rs.rank());
            for (&idx, &n) in &denom {
                let have = side.denom.get(&idx).copied().unwrap_or(0);
                let b: Vec<u32> = self.rs.posroots()[idx]
                    .coords()
                    .iter()
                    .map(|&c| c as u32)
                    .collect();
                for _ in have..n {
                    fill = fill.mul(&LaurentPoly::binomial(self.rs.rank(), &b));
                }
            }
            for (w, f) in &side.terms {
                raw.push((w.clone(), f.mul(&fill)));
            }
        }
        Ok(Self::from_parts(&self.rs, raw, denom).reduce())
    }

    pub fn neg(&self) -> Self {
        RationalChar {
            rs: Arc::clone(&self.rs),
            terms: self.terms.iter().map(|(w, f)| (w.clone(), f.neg())).collect(),
            denom: self.denom.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    /// Convolution product without the final denominator cancellation:
    /// numerators convolve pairwise and denominator multiplicities add.
    pub fn mul_raw(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_rs(other)?;
        let mut denom = self.denom.clone();
        for (&idx, &n) in &other.denom {
            *denom.entry(idx).or_insert(0) += n;
        }
        let mut raw = Vec::new();
        for (w1, f1) in &self.terms {
            for (w2, f2) in &other.terms {
                raw.push((w1.add(w2), f1.mul(f2)));
            }
        }
        Ok(Self::from_parts(&self.rs, raw, denom))
    }

    /// Ring multiplication; the result is in canonical reduced form.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul_raw(other)?.reduce())
    }

    /// Canonical reduced form: for each denominator root, in the fixed
    /// height-then-lex order, divide every numerator by `1 - e^{-beta}` for
    /// as long as all are divisible, decrementing the multiplicity. Total
    /// and idempotent; preserves every truncated series.
    pub fn reduce(&self) -> Self {
        let canon = Self::from_parts(&self.rs, self.terms.clone(), self.denom.clone());
        if canon.terms.is_empty() {
            return Self::zero(&self.rs);
        }
        let mut terms = canon.terms;
        let mut denom = canon.denom;
        let indices: Vec<usize> = denom.keys().copied().collect();
        for idx in indices {
            let b: Vec<u32> = self.rs.posroots()[idx]
                .coords()
                .iter()
                .map(|&c| c as u32)
                .collect();
            while denom.get(&idx).copied().unwrap_or(0) > 0 {
                let quotients: Option<Vec<LaurentPoly>> =
                    terms.iter().map(|(_, f)| f.div_binomial(&b)).collect();
                match quotients {
                    Some(qs) => {
                        for ((_, f), q) in terms.iter_mut().zip(qs) {
                            *f = q;
                        }
                        let n = denom.get_mut(&idx).unwrap();
                        *n -= 1;
                        if *n == 0 {
                            denom.remove(&idx);
                        }
                    }
                    None => break,
                }
            }
        }
        RationalChar { rs: Arc::clone(&self.rs), terms, denom }
    }

    /// Structural equality of canonical reduced forms.
    pub fn equals(&self, other: &Self) -> Result<bool, Error> {
        self.check_same_rs(other)?;
        let a = self.reduce();
        let b = other.reduce();
        Ok(a.terms == b.terms && a.denom == b.denom)
    }

    /// The denominator-root multiset of the reduced form.
    pub fn denominator_roots(&self) -> Vec<(Vec<i64>, u32)> {
        self.reduce().denom()
    }

    /// Exact multiplicities of all weights within `depth` (measured in root
    /// height below a coset representative).
    pub fn series_expand(&self, depth: u32) -> SeriesWindow {
        let mut window = SeriesWindow::new(depth);
        for (rep, f) in &self.terms {
            for (w, c) in self.expand_term(rep, f, depth) {
                window.add(w, c);
            }
        }
        window
    }

    /// Parallel variant of [`RationalChar::series_expand`]; identical output.
    #[cfg(feature = "parallel")]
    pub fn par_series_expand(&self, depth: u32) -> SeriesWindow {
        let chunks: Vec<Vec<(Weight, BigInt)>> = self
            .terms
            .par_iter()
            .map(|(rep, f)| self.expand_term(rep, f, depth))
            .collect();
        let mut window = SeriesWindow::new(depth);
        for chunk in chunks {
            for (w, c) in chunk {
                window.add(w, c);
            }
        }
        window
    }

    fn expand_term(&self, rep: &Weight, f: &LaurentPoly, depth: u32) -> Vec<(Weight, BigInt)> {
        let depth = depth as u64;
        let mut acc: BTreeMap<Mono, BigInt> = f
            .iter()
            .filter(|(m, _)| m.height() <= depth)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        for (&idx, &n) in &self.denom {
            let b: Vec<u32> = self.rs.posroots()[idx]
                .coords()
                .iter()
                .map(|&c| c as u32)
                .collect();
            for _ in 0..n {
                acc = geometric_convolve(&acc, &b, depth);
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| {
                let gamma: Vec<i64> = m.0.iter().map(|&e| e as i64).collect();
                (self.rs.weight_minus_root_vec(rep, &gamma), c)
            })
            .collect()
    }

    /// Whether the window at this depth determines the coefficient at `w`
    /// exactly. Weights outside every numerator cone are guaranteed zero;
    /// only weights strictly deeper than `depth` below a representative are
    /// out of range.
    pub fn series_domain_contains(&self, w: &Weight, depth: u32) -> bool {
        self.terms.iter().all(|(rep, _)| {
            match self.rs.root_offset(rep, w) {
                Some(gamma) if gamma.iter().all(|&g| g >= 0) => {
                    gamma.iter().sum::<i64>() <= depth as i64
                }
                _ => true,
            }
        })
    }
}

/// Multiply by the geometric series `1 + x^b + x^{2b} + ...`, truncated to
/// monomial height `depth`.
fn geometric_convolve(
    g: &BTreeMap<Mono, BigInt>,
    b: &[u32],
    depth: u64,
) -> BTreeMap<Mono, BigInt> {
    let mut out: BTreeMap<Mono, BigInt> = BTreeMap::new();
    for (m, c) in g {
        let mut cur = m.clone();
        loop {
            let entry = out.entry(cur.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            let next = Mono(cur.0.iter().zip(b).map(|(&x, &y)| x + y).collect());
            if next.height() > depth {
                break;
            }
            cur = next;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Exact division of a numerator polynomial by `1 - e^{-beta}` for a
/// positive root `beta`; `Ok(None)` reports "not divisible".
pub fn divide_by_factor(
    rs: &RootSystem,
    f: &LaurentPoly,
    beta_coords: &[i64],
) -> Result<Option<LaurentPoly>, Error> {
    let idx = rs
        .find_posroot(beta_coords)
        .ok_or_else(|| Error::NotPositiveRoot(format!("{beta_coords:?}")))?;
    let b: Vec<u32> = rs.posroots()[idx]
        .coords()
        .iter()
        .map(|&c| c as u32)
        .collect();
    Ok(f.div_binomial(&b))
}

impl PartialEq for RationalChar {
    /// Structural equality of the stored representation (not the ring
    /// equality; see [`RationalChar::equals`]).
    fn eq(&self, other: &Self) -> bool {
        self.rs.same_as(&other.rs) && self.terms == other.terms && self.denom == other.denom
    }
}

impl Eq for RationalChar {}

impl fmt::Display for RationalChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let nums: Vec<String> = self
            .terms
            .iter()
            .map(|(w, p)| {
                if p.is_one() {
                    format!("e[{w}]")
                } else {
                    format!("e[{w}]*({p})")
                }
            })
            .collect();
        let num = nums.join(" + ");
        if self.denom.is_empty() {
            write!(f, "{num}")
        } else {
            let dens: Vec<String> = self
                .denom
                .iter()
                .map(|(&idx, &n)| {
                    let name = self.rs.posroots()[idx].name();
                    if n == 1 {
                        format!("(1-e^-({name}))")
                    } else {
                        format!("(1-e^-({name}))^{n}")
                    }
                })
                .collect();
            write!(f, "({num}) / {}", dens.join(""))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use num_traits::One;

    fn a1() -> Arc<RootSystem> {
        RootSystem::parse("A1").unwrap()
    }

    fn a2() -> Arc<RootSystem> {
        RootSystem::parse("A2").unwrap()
    }

    /// 1 / prod (1 - e^{-beta}), assembled by hand for tests.
    fn p_char(rs: &Arc<RootSystem>) -> RationalChar {
        let denom = rs
            .posroots()
            .iter()
            .map(|r| (r.coords().to_vec(), 1))
            .collect();
        RationalChar::new(rs, vec![(rs.zero_weight(), LaurentPoly::one(rs.rank()))], denom)
            .unwrap()
    }

    #[test]
    fn additive_identity_and_coset_separation() {
        let rs = a1();
        let a = p_char(&rs);
        let sum = a.add(&RationalChar::zero(&rs)).unwrap();
        assert!(sum.equals(&a).unwrap());

        // e^w + e^0 keeps two cosets, empty denominator.
        let two = RationalChar::monomial(&rs, &rs.fundamental(0))
            .add(&RationalChar::one(&rs))
            .unwrap();
        assert_eq!(two.terms().len(), 2);
        assert!(two.denom().is_empty());
    }

    #[test]
    fn telescoping_sum_cancels_denominator() {
        // e^0/(1-e^-a) + (-1) e^-a/(1-e^-a) = 1.
        let rs = a1();
        let alpha = rs.weight_of_root_vec(&[1]);
        let lead = RationalChar::new(
            &rs,
            vec![(rs.zero_weight(), LaurentPoly::one(1))],
            vec![(vec![1], 1)],
        )
        .unwrap();
        let trail = RationalChar::new(
            &rs,
            vec![(alpha.neg(), LaurentPoly::constant(1, BigInt::from(-1)))],
            vec![(vec![1], 1)],
        )
        .unwrap();
        let sum = lead.add(&trail).unwrap();
        assert!(sum.equals(&RationalChar::one(&rs)).unwrap());
        // Cross-check by series expansion.
        let window = sum.series_expand(6);
        assert_eq!(window.get(&rs.zero_weight()), BigInt::one());
        assert_eq!(window.len(), 1);
    }

    #[test]
    fn paper_remark_product_reduces() {
        // a = (1 + e^{-a/2})/(1-e^-a), b = (1 - e^{-a/2})/(1-e^-a);
        // a b = (1-e^-a)/(1-e^-a)^2 unreduced, = 1/(1-e^-a) reduced.
        let rs = a1();
        let half = rs.fundamental(0); // alpha/2
        let a = RationalChar::new(
            &rs,
            vec![
                (rs.zero_weight(), LaurentPoly::one(1)),
                (half.neg(), LaurentPoly::one(1)),
            ],
            vec![(vec![1], 1)],
        )
        .unwrap();
        let b = RationalChar::new(
            &rs,
            vec![
                (rs.zero_weight(), LaurentPoly::one(1)),
                (half.neg(), LaurentPoly::constant(1, BigInt::from(-1))),
            ],
            vec![(vec![1], 1)],
        )
        .unwrap();

        let raw = a.mul_raw(&b).unwrap();
        assert_eq!(raw.denom(), vec![(vec![1], 2)]);
        assert_eq!(raw.terms().len(), 1);

        let prod = a.mul(&b).unwrap();
        assert!(prod.equals(&p_char(&rs)).unwrap());
    }

    #[test]
    fn multiplicative_identity() {
        let rs = a2();
        let a = p_char(&rs);
        assert!(a.mul(&RationalChar::one(&rs)).unwrap().equals(&a).unwrap());
    }

    #[test]
    fn reduce_examples() {
        let rs = a1();
        // (1 - e^-a)/(1 - e^-a)^2 -> 1/(1 - e^-a)
        let f = LaurentPoly::binomial(1, &[1]);
        let x = RationalChar::new(&rs, vec![(rs.zero_weight(), f)], vec![(vec![1], 2)]).unwrap();
        let red = x.reduce();
        assert_eq!(red.denom(), vec![(vec![1], 1)]);
        assert!(red.terms()[0].1.is_one());
        // Idempotent.
        assert_eq!(red.reduce(), red);

        // A2: (1 - e^{-a1-a2}) / ((1-e^{-a1})(1-e^{-a1-a2})) -> 1/(1-e^{-a1})
        let rs2 = a2();
        let f = LaurentPoly::binomial(2, &[1, 1]);
        let x = RationalChar::new(
            &rs2,
            vec![(rs2.zero_weight(), f)],
            vec![(vec![1, 0], 1), (vec![1, 1], 1)],
        )
        .unwrap();
        let red = x.reduce();
        assert_eq!(red.denom(), vec![(vec![1, 0], 1)]);
        assert!(red.terms()[0].1.is_one());
        // Series agreement between input and output at several depths.
        for depth in [0, 3, 7] {
            assert_eq!(x.series_expand(depth), red.series_expand(depth));
        }
    }

    #[test]
    fn reduce_preserves_series_with_multiple_cosets() {
        let rs = a2();
        let w1 = rs.fundamental(0);
        let mut f = LaurentPoly::one(2);
        f.add_term(Mono(vec![1, 0]), BigInt::from(-1));
        let x = RationalChar::new(
            &rs,
            vec![
                (rs.zero_weight(), f),
                (w1, LaurentPoly::one(2)),
            ],
            vec![(vec![1, 0], 1), (vec![0, 1], 1)],
        )
        .unwrap();
        let red = x.reduce();
        for depth in [0, 2, 5, 9] {
            assert_eq!(x.series_expand(depth), red.series_expand(depth));
        }
        assert_eq!(red.reduce(), red);
    }

    #[test]
    fn zero_reduces_to_empty() {
        let rs = a1();
        let x = RationalChar::new(
            &rs,
            vec![
                (rs.zero_weight(), LaurentPoly::one(1)),
                (rs.zero_weight(), LaurentPoly::constant(1, BigInt::from(-1))),
            ],
            vec![(vec![1], 1)],
        )
        .unwrap();
        assert!(x.is_zero());
        assert!(x.denom().is_empty());
        assert!(x.reduce().is_zero());
    }

    #[test]
    fn denominator_restricted_to_posroots() {
        let rs = a1();
        let err = RationalChar::new(
            &rs,
            vec![(rs.zero_weight(), LaurentPoly::one(1))],
            vec![(vec![2], 1)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotPositiveRoot(_)));
    }

    #[test]
    fn series_of_p_examples() {
        let rs = a1();
        let p = p_char(&rs);
        let window = p.series_expand(3);
        for k in 0..=3 {
            let w = rs.weight_of_root_vec(&[k]).neg();
            assert_eq!(window.get(&w), BigInt::one(), "coefficient at -{k}a");
        }
        assert_eq!(window.len(), 4);

        let rs2 = a2();
        let p2 = p_char(&rs2);
        let window = p2.series_expand(2);
        let target = rs2.weight_of_root_vec(&[1, 1]).neg();
        assert_eq!(window.get(&target), BigInt::from(2));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_series_matches_sequential() {
        let rs = a2();
        let p = p_char(&rs);
        assert_eq!(p.series_expand(8), p.par_series_expand(8));
    }

    #[test]
    fn depth_zero_keeps_top_coefficients() {
        let rs = a1();
        let p = p_char(&rs);
        let window = p.series_expand(0);
        assert_eq!(window.len(), 1);
        assert_eq!(window.get(&rs.zero_weight()), BigInt::one());
    }

    #[test]
    fn equals_distinguishes_cosets_and_presentations() {
        let rs = a1();
        let a = RationalChar::monomial(&rs, &rs.fundamental(0));
        let b = RationalChar::one(&rs);
        assert!(!a.equals(&b).unwrap());
        assert!(a.equals(&a.reduce()).unwrap());

        // Same element, two presentations:
        // (1+e^-a)/(1-e^-a) vs (1-e^-2a)/(1-e^-a)^2.
        let mut num1 = LaurentPoly::one(1);
        num1.add_term(Mono(vec![1]), BigInt::one());
        let c1 = RationalChar::new(&rs, vec![(rs.zero_weight(), num1)], vec![(vec![1], 1)])
            .unwrap();
        let mut num2 = LaurentPoly::one(1);
        num2.add_term(Mono(vec![2]), BigInt::from(-1));
        let c2 = RationalChar::new(&rs, vec![(rs.zero_weight(), num2)], vec![(vec![1], 2)])
            .unwrap();
        assert!(c1.equals(&c2).unwrap());
        for depth in [0, 5, 10] {
            assert_eq!(c1.series_expand(depth), c2.series_expand(depth));
        }
    }

    #[test]
    fn addition_merges_unequal_multiplicities() {
        // p^2 + p = (2 - e^-a) / (1 - e^-a)^2, already reduced.
        let rs = a1();
        let p = p_char(&rs);
        let p2 = p.mul_raw(&p).unwrap();
        let sum = p2.add(&p).unwrap();
        assert_eq!(sum.denom(), vec![(vec![1], 2)]);
        let mut expected = LaurentPoly::constant(1, BigInt::from(2));
        expected.add_term(Mono(vec![1]), BigInt::from(-1));
        assert_eq!(sum.terms()[0].1, expected);
        // Series cross-check: coefficient of e^{-ka} is k + 2.
        let window = sum.series_expand(5);
        for k in 0..=5 {
            let w = rs.weight_of_root_vec(&[k]).neg();
            assert_eq!(window.get(&w), BigInt::from(k + 2));
        }
    }

    #[test]
    fn torsion_labels_merge_cosets_in_products() {
        // e^{0; 1/2} * e^{0; 1/2} lands back in the zero-torsion coset.
        let rs = a1();
        let twisted = Weight::with_torsion(vec![rat(0)], vec![ratio(1, 2)]);
        let t = RationalChar::monomial(&rs, &twisted);
        let sq = t.mul(&t).unwrap();
        assert!(sq.equals(&RationalChar::one(&rs)).unwrap());
        let mixed = sq.add(&RationalChar::one(&rs)).unwrap();
        assert_eq!(mixed.terms().len(), 1);
        assert_eq!(mixed.terms()[0].1, LaurentPoly::constant(1, BigInt::from(2)));
    }

    #[test]
    fn mismatched_systems_rejected() {
        let x = p_char(&a1());
        let y = p_char(&a2());
        assert_eq!(x.add(&y).unwrap_err(), Error::MismatchedRootSystems);
        assert_eq!(x.mul(&y).unwrap_err(), Error::MismatchedRootSystems);
        assert_eq!(x.equals(&y).unwrap_err(), Error::MismatchedRootSystems);
    }

    #[test]
    fn divide_by_factor_examples() {
        let rs = a1();
        let f = LaurentPoly::binomial(1, &[1]);
        assert!(divide_by_factor(&rs, &f, &[1]).unwrap().unwrap().is_one());

        let mut f = LaurentPoly::one(1);
        f.add_term(Mono(vec![2]), BigInt::from(-1));
        let q = divide_by_factor(&rs, &f, &[1]).unwrap().unwrap();
        let mut expected = LaurentPoly::one(1);
        expected.add_term(Mono(vec![1]), BigInt::one());
        assert_eq!(q, expected);

        let mut f = LaurentPoly::one(1);
        f.add_term(Mono(vec![1]), BigInt::one());
        assert!(divide_by_factor(&rs, &f, &[1]).unwrap().is_none());

        assert!(matches!(
            divide_by_factor(&rs, &f, &[3]),
            Err(Error::NotPositiveRoot(_))
        ));
    }

    #[test]
    fn gcm_normalization_picks_unique_shift() {
        let rs = a1();
        // e^0 * (y + y^2)  ==  e^{-alpha} * (1 + y) after normalization.
        let mut f = LaurentPoly::zero(1);
        f.add_term(Mono(vec![1]), BigInt::one());
        f.add_term(Mono(vec![2]), BigInt::one());
        let x = RationalChar::new(&rs, vec![(rs.zero_weight(), f)], vec![]).unwrap();
        let alpha = rs.weight_of_root_vec(&[1]);
        assert_eq!(x.terms()[0].0, alpha.neg());
        assert_eq!(x.terms()[0].1.gcm(), Some(vec![0]));
    }

    #[test]
    fn torsion_rides_coset_labels() {
        let rs = a1();
        let lam = Weight::with_torsion(vec![ratio(-1, 1)], vec![ratio(1, 2)]);
        let x = RationalChar::new(
            &rs,
            vec![(lam.clone(), LaurentPoly::one(1))],
            vec![(vec![1], 1)],
        )
        .unwrap();
        let window = x.series_expand(1);
        assert_eq!(window.get(&lam), BigInt::one());
        let below = rs.weight_minus_root_vec(&lam, &[1]);
        assert_eq!(window.get(&below), BigInt::one());
        assert!(!below.is_torsion_zero());
        let _ = rat(0);
    }
}
