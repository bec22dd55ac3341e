//! Category-O character constructors and decision procedures: the Kostant
//! element, Verma and Weyl characters, Verma-basis decomposition, the
//! finite-dimensionality criterion, and tensor-product obstructions.
//!
//! Everything is decided at the level of rational forms. The obstruction
//! test is necessary-only: a square in the reduced denominator certifies the
//! product is not the character of any module in O, while the absence of
//! squares makes no membership claim.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::char_ring::{LaurentPoly, RationalChar};
use crate::error::Error;
use crate::root_system::{RootSystem, Weight};

/// A finite integer combination of Verma characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VermaDecomposition {
    entries: Vec<(Weight, BigInt)>,
}

impl VermaDecomposition {
    /// Merge duplicate weights, drop zero coefficients, sort canonically.
    pub fn new(entries: Vec<(Weight, BigInt)>) -> Self {
        let mut merged: Vec<(Weight, BigInt)> = Vec::new();
        for (w, c) in entries {
            match merged.iter_mut().find(|(v, _)| *v == w) {
                Some((_, acc)) => *acc += c,
                None => merged.push((w, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        VermaDecomposition { entries: merged }
    }

    pub fn empty() -> Self {
        VermaDecomposition { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[(Weight, BigInt)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

impl fmt::Display for VermaDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(w, c)| format!("{c}*M[{w}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `prod_{beta > 0} (1 - e^{-beta})` as a numerator polynomial.
pub fn weyl_denominator_poly(rs: &RootSystem) -> LaurentPoly {
    let mut p = LaurentPoly::one(rs.rank());
    for beta in rs.posroots() {
        let b: Vec<u32> = beta.coords().iter().map(|&c| c as u32).collect();
        p = p.mul(&LaurentPoly::binomial(rs.rank(), &b));
    }
    p
}

fn full_denominator(rs: &RootSystem) -> std::collections::BTreeMap<usize, u32> {
    (0..rs.posroots().len()).map(|i| (i, 1)).collect()
}

/// The Kostant element `p = 1 / prod_{beta > 0} (1 - e^{-beta})`.
pub fn kostant_p(rs: &Arc<RootSystem>) -> RationalChar {
    RationalChar::from_parts(
        rs,
        vec![(rs.zero_weight(), LaurentPoly::one(rs.rank()))],
        full_denominator(rs),
    )
}

/// Verma character `e^lambda p`; already in reduced form.
pub fn verma_character(rs: &Arc<RootSystem>, lam: &Weight) -> RationalChar {
    RationalChar::from_parts(
        rs,
        vec![(lam.clone(), LaurentPoly::one(rs.rank()))],
        full_denominator(rs),
    )
}

/// Finite-dimensional simple character via the alternating Weyl numerator
/// and exact division by the denominator product.
///
/// Requires a dominant integral weight with zero torsion; other weights are
/// routed to [`simple_character`].
pub fn weyl_character(rs: &Arc<RootSystem>, lam: &Weight) -> Result<RationalChar, Error> {
    if !rs.is_dominant_integral(lam) {
        return Err(Error::NotDominantIntegral);
    }
    let group = rs.weyl_elements(rs.enum_cap())?;
    let lam_rho = lam.add(rs.rho());
    let raw: Vec<(Weight, LaurentPoly)> = group
        .iter()
        .map(|w| {
            let weight = w.apply(&lam_rho).sub(rs.rho());
            (weight, LaurentPoly::constant(rs.rank(), BigInt::from(w.sign())))
        })
        .collect();
    let numerator = RationalChar::from_parts(rs, raw, full_denominator(rs));
    let reduced = numerator.reduce();
    // The Weyl numerator is exactly divisible by the denominator product;
    // anything left over is an implementation bug, not an input error.
    assert!(
        reduced.denom().is_empty(),
        "Weyl numerator division left a denominator"
    );
    Ok(reduced)
}

/// Simple highest-weight character where it is determined without KL input:
/// dominant integral weights (Weyl character) and rank-1 zero-torsion
/// non-dominant weights, where the Verma module is already simple.
pub fn simple_character(rs: &Arc<RootSystem>, lam: &Weight) -> Result<RationalChar, Error> {
    if rs.is_dominant_integral(lam) {
        return weyl_character(rs, lam);
    }
    if rs.rank() == 1 && lam.is_torsion_zero() {
        // Non-dominant-integral rank 1: (lam + rho, alpha^v) is not a
        // positive integer, so M(lam) is simple.
        return Ok(verma_character(rs, lam));
    }
    Err(Error::SimpleNeedsKlData)
}

/// `sum c_i e^{lambda_i} p`, reduced.
pub fn assemble_from_verma(rs: &Arc<RootSystem>, dec: &VermaDecomposition) -> RationalChar {
    let raw: Vec<(Weight, LaurentPoly)> = dec
        .entries()
        .iter()
        .map(|(w, c)| (w.clone(), LaurentPoly::constant(rs.rank(), c.clone())))
        .collect();
    RationalChar::from_parts(rs, raw, full_denominator(rs)).reduce()
}

/// Invert against the Verma basis: multiply by the denominator product and
/// read off the monomials. Errors when the denominator does not clear,
/// which certifies the input is not a finite integer combination of Verma
/// characters.
pub fn verma_decomposition(chi: &RationalChar) -> Result<VermaDecomposition, Error> {
    let rs = chi.root_system();
    let dchar = RationalChar::from_parts(
        rs,
        vec![(rs.zero_weight(), weyl_denominator_poly(rs))],
        std::collections::BTreeMap::new(),
    );
    let prod = chi.mul(&dchar)?;
    if !prod.denom().is_empty() {
        let leftovers: Vec<String> = prod
            .denom()
            .iter()
            .map(|(coords, n)| {
                let idx = rs.find_posroot(coords).expect("denominator root");
                format!("(1-e^-({}))^{}", rs.posroots()[idx].name(), n)
            })
            .collect();
        return Err(Error::DenominatorNotCleared(leftovers.join("")));
    }
    let mut entries = Vec::new();
    for (rep, f) in prod.terms() {
        for (m, c) in f.iter() {
            let gamma: Vec<i64> = m.0.iter().map(|&e| e as i64).collect();
            entries.push((rs.weight_minus_root_vec(rep, &gamma), c.clone()));
        }
    }
    Ok(VermaDecomposition::new(entries))
}

/// Necessary condition for being the character of a module in O: every
/// reduced denominator multiplicity equals 1. Necessary, not sufficient.
pub fn satisfies_o_necessary(chi: &RationalChar) -> bool {
    chi.denominator_roots().iter().all(|&(_, n)| n == 1)
}

/// Finite-dimensionality criterion: empty reduced denominator.
pub fn is_finite_dim_char(chi: &RationalChar) -> bool {
    chi.denominator_roots().is_empty()
}

/// Total dimension of a finite-dimensional character: the sum of all
/// numerator coefficients. Errors on infinite-dimensional input or negative
/// coefficients.
pub fn char_dimension(chi: &RationalChar) -> Result<BigInt, Error> {
    let red = chi.reduce();
    if !red.denom().is_empty() {
        return Err(Error::InfiniteDimensional);
    }
    let mut total = BigInt::zero();
    for (rep, f) in red.terms() {
        for (m, c) in f.iter() {
            if c.is_negative() {
                let gamma: Vec<i64> = m.0.iter().map(|&e| e as i64).collect();
                let w = red.root_system().weight_minus_root_vec(rep, &gamma);
                return Err(Error::NegativeCoefficient(w.to_string()));
            }
            total += c;
        }
    }
    Ok(total)
}

/// Outcome of the character-level tensor obstruction test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorVerdict {
    /// The reduced product has a square in its denominator; the witnesses
    /// are the roots with multiplicity at least 2. The product cannot be the
    /// character of any module in O.
    Obstructed { witnesses: Vec<Vec<i64>> },
    /// No square found. This makes no claim of membership in O.
    Unobstructed,
}

impl TensorVerdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, TensorVerdict::Obstructed { .. })
    }
}

/// Decide by full multiply-and-reduce: squares in the reduced denominator of
/// the product certify the obstruction.
pub fn tensor_obstruction(a: &RationalChar, b: &RationalChar) -> Result<TensorVerdict, Error> {
    let prod = a.mul(b)?;
    let witnesses: Vec<Vec<i64>> = prod
        .denom()
        .into_iter()
        .filter(|&(_, n)| n >= 2)
        .map(|(coords, _)| coords)
        .collect();
    if witnesses.is_empty() {
        Ok(TensorVerdict::Unobstructed)
    } else {
        Ok(TensorVerdict::Obstructed { witnesses })
    }
}

/// Fast-path hint only: common roots of the two reduced denominators. For
/// single-term numerators a nonempty overlap forces an obstruction; for
/// multi-term numerators it proves nothing, so [`tensor_obstruction`] always
/// multiplies and reduces.
pub fn denominator_overlap(a: &RationalChar, b: &RationalChar) -> Result<Vec<Vec<i64>>, Error> {
    if !a.root_system().same_as(b.root_system()) {
        return Err(Error::MismatchedRootSystems);
    }
    let db = b.denominator_roots();
    Ok(a.denominator_roots()
        .into_iter()
        .filter(|(coords, _)| db.iter().any(|(c2, _)| c2 == coords))
        .map(|(coords, _)| coords)
        .collect())
}

/// Per-weight record of the tensor-closedness sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepEntry {
    pub weight: Weight,
    pub finite_dim: bool,
    pub dimension: Option<BigInt>,
    pub obstructed: bool,
    pub witnesses: Vec<Vec<i64>>,
    /// True when the verdict contradicts the expected equivalence
    /// (finite-dimensional <=> no self-product obstruction); indicates an
    /// implementation bug, never a counterexample.
    pub violation: bool,
}

/// Report of a tensor-closedness sweep, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn violations(&self) -> usize {
        self.entries.iter().filter(|e| e.violation).count()
    }
}

fn sweep_one(rs: &Arc<RootSystem>, lam: &Weight) -> Result<SweepEntry, Error> {
    let ch = simple_character(rs, lam)?;
    let finite_dim = is_finite_dim_char(&ch);
    let dimension = if finite_dim {
        Some(char_dimension(&ch)?)
    } else {
        None
    };
    let verdict = tensor_obstruction(&ch, &ch)?;
    let (obstructed, witnesses) = match verdict {
        TensorVerdict::Obstructed { witnesses } => (true, witnesses),
        TensorVerdict::Unobstructed => (false, Vec::new()),
    };
    let violation = finite_dim == obstructed;
    Ok(SweepEntry { weight: lam.clone(), finite_dim, dimension, obstructed, witnesses, violation })
}

/// For each weight, test the self-product of its simple character: infinite
/// dimensional must be obstructed, finite dimensional must not be.
pub fn theorem_sweep(rs: &Arc<RootSystem>, weights: &[Weight]) -> Result<SweepReport, Error> {
    let entries: Result<Vec<SweepEntry>, Error> =
        weights.iter().map(|lam| sweep_one(rs, lam)).collect();
    Ok(SweepReport { entries: entries? })
}

/// Parallel variant of [`theorem_sweep`]; identical report.
#[cfg(feature = "parallel")]
pub fn par_theorem_sweep(rs: &Arc<RootSystem>, weights: &[Weight]) -> Result<SweepReport, Error> {
    let entries: Result<Vec<SweepEntry>, Error> =
        weights.par_iter().map(|lam| sweep_one(rs, lam)).collect();
    Ok(SweepReport { entries: entries? })
}
