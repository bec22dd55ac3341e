//! Sparse integer polynomials in the formal symbols `e^{-alpha_i}`.
//!
//! A monomial with exponent vector `m` stands for `e^{-(m_1 alpha_1 + ... +
//! m_N alpha_N)}`; exponents are component-wise non-negative and coefficients
//! are arbitrary-precision integers. The one non-trivial operation is exact
//! division by a binomial `1 - x^b`, the engine behind canonical reduction.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exponent vector under graded lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn height(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    fn checked_sub(&self, other: &[u32]) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (&a, &b) in self.0.iter().zip(other) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }

    fn add(&self, other: &[u32]) -> Mono {
        Mono(self.0.iter().zip(other).map(|(&a, &b)| a + b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over Z in `nvars` formal symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Mono, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; nvars]), c);
        }
        p
    }

    pub fn monomial(exps: Vec<u32>, c: BigInt) -> Self {
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(Mono(exps), c);
        }
        p
    }

    /// `1 - x^b`.
    pub fn binomial(nvars: usize, b: &[u32]) -> Self {
        assert_eq!(b.len(), nvars);
        let mut p = Self::one(nvars);
        p.add_term(Mono(b.to_vec()), -BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.height() == 0 && c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Mono(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: BigInt) {
        assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.add(&m2.0), c1 * c2);
            }
        }
        out
    }

    /// Greatest common monomial: component-wise minimum exponent, or `None`
    /// for the zero polynomial.
    pub fn gcm(&self) -> Option<Vec<u32>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut min = first.0.clone();
        for m in it {
            for (a, &b) in min.iter_mut().zip(&m.0) {
                if b < *a {
                    *a = b;
                }
            }
        }
        Some(min)
    }

    /// Divide out `x^shift` exactly; panics if some exponent would go
    /// negative.
    pub fn shift_down(&self, shift: &[u32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        m.checked_sub(shift).expect("shift exceeds exponent"),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Exact division by `1 - x^b`. Returns `None` when not divisible.
    ///
    /// The loop peels the graded-lex leading monomial: if the remainder `r`
    /// equals `g (1 - x^b)` then its leading monomial is `lead(g) + b`, which
    /// determines the leading term of `g`. The leading monomial strictly
    /// decreases, so the loop terminates.
    pub fn div_binomial(&self, b: &[u32]) -> Option<Self> {
        assert_eq!(b.len(), self.nvars);
        assert!(b.iter().any(|&x| x > 0), "division by 1 - x^0 = 0");
        let mut r = self.terms.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((m, c)) = r.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let low = m.checked_sub(b)?;
            q.add_term(low.clone(), -c.clone());
            // r := r - (-c x^low)(1 - x^b) = r + c x^low - c x^m
            r.remove(&m);
            match r.entry(low) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Some(q)
    }

    /// Sum of all coefficients (the value at every symbol = 1).
    pub fn coeff_sum(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if first {
                first = false;
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("y{}", i + 1)
                    } else {
                        format!("y{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}
