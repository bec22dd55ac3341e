//! Weights of the parameter space: a rational vector in the
//! fundamental-weight basis plus an optional torsion label.
//!
//! The torsion label models the finite imaginary directions of the quantum
//! parameter space: a rational coweight expressed in coroot coordinates and
//! canonically reduced modulo the coroot lattice (each entry in `[0, 1)`).
//! Weights with zero torsion are ordinary rational weights.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::error::Error;
use crate::rat::{mod1, parse_rat, Rat};

/// A point of the weight parameter space, exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    /// Coordinates in the fundamental-weight basis.
    real: Vec<Rat>,
    /// Torsion label in coroot coordinates, each entry reduced into `[0, 1)`.
    torsion: Vec<Rat>,
}

impl Weight {
    /// Weight with the given fundamental coordinates and zero torsion.
    pub fn new(real: Vec<Rat>) -> Self {
        let n = real.len();
        Weight { real, torsion: vec![Rat::zero(); n] }
    }

    /// Weight with explicit torsion; the torsion is reduced mod 1 entrywise.
    pub fn with_torsion(real: Vec<Rat>, torsion: Vec<Rat>) -> Self {
        assert_eq!(real.len(), torsion.len(), "rank mismatch");
        let torsion = torsion.iter().map(mod1).collect();
        Weight { real, torsion }
    }

    pub fn zero(rank: usize) -> Self {
        Weight::new(vec![Rat::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.real.len()
    }

    pub fn real(&self) -> &[Rat] {
        &self.real
    }

    pub fn torsion(&self) -> &[Rat] {
        &self.torsion
    }

    pub fn is_torsion_zero(&self) -> bool {
        self.torsion.iter().all(|t| t.is_zero())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        Weight::with_torsion(
            self.real.iter().zip(&other.real).map(|(a, b)| a + b).collect(),
            self.torsion.iter().zip(&other.torsion).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        Weight::with_torsion(
            self.real.iter().zip(&other.real).map(|(a, b)| a - b).collect(),
            self.torsion.iter().zip(&other.torsion).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn neg(&self) -> Weight {
        Weight::with_torsion(
            self.real.iter().map(|a| -a).collect(),
            self.torsion.iter().map(|a| -a).collect(),
        )
    }

    /// Parse `"a,b,..."` fundamental coordinates with an optional
    /// `";t1,t2,..."` torsion suffix, all exact rationals.
    pub fn parse(rank: usize, s: &str) -> Result<Weight, Error> {
        let mut halves = s.splitn(2, ';');
        let real_part = halves.next().unwrap_or("");
        let real = parse_vec(rank, real_part)?;
        let torsion = match halves.next() {
            Some(t) => parse_vec(rank, t)?,
            None => vec![Rat::zero(); rank],
        };
        Ok(Weight::with_torsion(real, torsion))
    }
}

fn parse_vec(rank: usize, s: &str) -> Result<Vec<Rat>, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != rank {
        return Err(Error::Parse(format!(
            "expected {rank} comma-separated rationals, got '{s}'"
        )));
    }
    parts.iter().map(|p| parse_rat(p)).collect()
}

// Canonical order: real coordinates lexicographically, then torsion.
impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.real
            .cmp(&other.real)
            .then_with(|| self.torsion.cmp(&other.torsion))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.real.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", coords.join(","))?;
        if !self.is_torsion_zero() {
            let t: Vec<String> = self.torsion.iter().map(|r| r.to_string()).collect();
            write!(f, ";{}", t.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn parse_and_display_round_trip() {
        let w = Weight::parse(2, "1/2,-3").unwrap();
        assert_eq!(w.real(), &[ratio(1, 2), rat(-3)]);
        assert!(w.is_torsion_zero());
        assert_eq!(w.to_string(), "1/2,-3");

        let w = Weight::parse(2, "0,1;1/2,0").unwrap();
        assert!(!w.is_torsion_zero());
        assert_eq!(w.to_string(), "0,1;1/2,0");
        assert_eq!(Weight::parse(2, &w.to_string()).unwrap(), w);
    }

    #[test]
    fn torsion_is_reduced_mod_one() {
        let a = Weight::with_torsion(vec![rat(0)], vec![ratio(3, 2)]);
        let b = Weight::with_torsion(vec![rat(0)], vec![ratio(1, 2)]);
        assert_eq!(a, b);
        let c = Weight::with_torsion(vec![rat(0)], vec![ratio(-1, 2)]);
        assert_eq!(c, b);
    }

    #[test]
    fn parse_rejects_wrong_rank_and_floats() {
        assert!(Weight::parse(2, "1").is_err());
        assert!(Weight::parse(1, "0.5").is_err());
    }

    #[test]
    fn arithmetic_wraps_torsion() {
        let a = Weight::with_torsion(vec![rat(1)], vec![ratio(1, 2)]);
        let sum = a.add(&a);
        assert_eq!(sum.real(), &[rat(2)]);
        assert!(sum.is_torsion_zero());
    }
}
