//! Independent brute-force verifiers: Kostant partition counting,
//! Freudenthal weight multiplicities, and the Weyl dimension formula.
//!
//! These deliberately share no code path with the character ring's series
//! expansion, so agreement between the two is evidence rather than
//! tautology.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rat::{is_integer, rat, to_bigint, Rat};
use crate::root_system::{RootSystem, Weight};

/// Number of multisets of positive roots summing to `gamma` (simple-root
/// coordinates), by exhaustive bounded enumeration.
pub fn kostant_partition_count(rs: &RootSystem, gamma: &[i64]) -> BigInt {
    assert_eq!(gamma.len(), rs.rank());
    assert!(gamma.iter().all(|&g| g >= 0), "gamma must be non-negative");
    count_from(rs, 0, gamma.to_vec())
}

fn count_from(rs: &RootSystem, idx: usize, remaining: Vec<i64>) -> BigInt {
    if remaining.iter().all(|&x| x == 0) {
        return BigInt::one();
    }
    if idx == rs.posroots().len() {
        return BigInt::zero();
    }
    let beta = rs.posroots()[idx].coords();
    let kmax = remaining
        .iter()
        .zip(beta)
        .filter(|&(_, &b)| b > 0)
        .map(|(&r, &b)| r / b)
        .min()
        .unwrap_or(0);
    let mut total = BigInt::zero();
    for k in 0..=kmax {
        let next: Vec<i64> = remaining
            .iter()
            .zip(beta)
            .map(|(&r, &b)| r - k * b)
            .collect();
        total += count_from(rs, idx + 1, next);
    }
    total
}

/// Repeatedly reflect negative coordinates away to reach the dominant
/// chamber (zero-torsion weights only).
fn dominant_representative(rs: &RootSystem, w: &Weight) -> Weight {
    let mut cur = w.clone();
    loop {
        let neg = cur.real().iter().position(|c| c.is_negative());
        match neg {
            Some(i) => cur = rs.reflect(i, &cur),
            None => return cur,
        }
    }
}

/// Weight multiplicity of `mu` in the simple module of highest weight `lam`
/// via the Freudenthal recursion, exact rationals with an integrality
/// assertion at every step.
pub fn freudenthal_multiplicity(
    rs: &Arc<RootSystem>,
    lam: &Weight,
    mu: &Weight,
) -> Result<BigInt, Error> {
    if !rs.is_dominant_integral(lam) {
        return Err(Error::NotDominantIntegral);
    }
    let Some(gamma) = rs.root_offset(lam, mu) else {
        return Ok(BigInt::zero()); // wrong coset
    };
    if gamma.iter().any(|&g| g < 0) {
        return Ok(BigInt::zero());
    }
    let mut memo: HashMap<Vec<i64>, BigInt> = HashMap::new();
    Ok(mult_at(rs, lam, &mut memo, gamma))
}

fn mult_at(
    rs: &Arc<RootSystem>,
    lam: &Weight,
    memo: &mut HashMap<Vec<i64>, BigInt>,
    gamma: Vec<i64>,
) -> BigInt {
    if gamma.iter().all(|&g| g == 0) {
        return BigInt::one();
    }
    if gamma.iter().any(|&g| g < 0) {
        return BigInt::zero();
    }
    if let Some(m) = memo.get(&gamma) {
        return m.clone();
    }
    let mu = rs.weight_minus_root_vec(lam, &gamma);
    // Support test: the dominant representative of a weight of V(lam) must
    // still lie below lam.
    let dom = dominant_representative(rs, &mu);
    if !rs.leq(&dom, lam) {
        memo.insert(gamma, BigInt::zero());
        return BigInt::zero();
    }

    let rho = rs.rho();
    let lam_rho = lam.add(rho);
    let mu_rho = mu.add(rho);
    let denom = rs.pair_weights(lam_rho.real(), lam_rho.real())
        - rs.pair_weights(mu_rho.real(), mu_rho.real());
    assert!(
        denom.is_positive(),
        "Freudenthal divisor must be positive away from the highest weight"
    );

    let mut numer = Rat::zero();
    for idx in 0..rs.posroots().len() {
        let beta = rs.posroots()[idx].coords().to_vec();
        let mut k = 1i64;
        loop {
            let shifted: Vec<i64> = gamma
                .iter()
                .zip(&beta)
                .map(|(&g, &b)| g - k * b)
                .collect();
            if shifted.iter().any(|&x| x < 0) {
                break;
            }
            let m = mult_at(rs, lam, memo, shifted);
            if !m.is_zero() {
                let up = rs.weight_minus_root_vec(
                    lam,
                    &gamma
                        .iter()
                        .zip(&beta)
                        .map(|(&g, &b)| g - k * b)
                        .collect::<Vec<i64>>(),
                );
                let pairing = rs.pair_weight_root(up.real(), &rs.posroots()[idx]);
                numer += Rat::from_integer(m) * pairing;
            }
            k += 1;
        }
    }
    let value = numer * rat(2) / denom;
    assert!(is_integer(&value), "Freudenthal multiplicity must be integral");
    let m = to_bigint(&value);
    assert!(!m.is_negative(), "multiplicities are non-negative");
    memo.insert(gamma, m.clone());
    m
}

/// Weyl dimension formula `prod (lam + rho, beta) / (rho, beta)`, exact.
pub fn weyl_dimension(rs: &RootSystem, lam: &Weight) -> Result<BigInt, Error> {
    if !rs.is_dominant_integral(lam) {
        return Err(Error::NotDominantIntegral);
    }
    let lam_rho = lam.add(rs.rho());
    let mut prod = Rat::one();
    for beta in rs.posroots() {
        prod *= rs.pair_weight_root(lam_rho.real(), beta) / rs.pair_weight_root(rs.rho().real(), beta);
    }
    assert!(is_integer(&prod), "Weyl dimension must be integral");
    let dim = to_bigint(&prod);
    assert!(dim.is_positive());
    Ok(dim)
}
