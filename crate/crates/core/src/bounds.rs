//! Exact counting bounds on the number of functions computable with `k` AND gates.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Largest arity for which `|B_n| = 2^(2^n)` is materialized (a 2 MiB integer).
pub const MAX_B_N_ARITY: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn pow2(e: u64) -> Self {
        BigCount(BigUint::one() << e)
    }

    pub fn pow(base: u64, e: u32) -> Self {
        BigCount(BigUint::from(base).pow(e))
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    /// Number of binary digits; `2^e` has `e + 1`.
    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn is_power_of_two(&self) -> bool {
        self.0.count_ones() == 1
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl Mul for BigCount {
    type Output = BigCount;

    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl Mul for &BigCount {
    type Output = BigCount;

    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

fn sq(k: u32) -> u64 {
    k as u64 * k as u64
}

/// `2^(k^2 + 2k + 2kn + n + 1)`: all circuits with `n` inputs and `k` AND gates.
pub fn lemma15_bound(n: u32, k: u32) -> BigCount {
    let (n, k64) = (n as u64, k as u64);
    BigCount::pow2(sq(k) + 2 * k64 + 2 * k64 * n + n + 1)
}

/// `2^(k^2 - k)` topologies on `k` gates: gate `i` picks two subsets of `i - 1` gates.
pub fn topology_count_bound(k: u32) -> BigCount {
    BigCount::pow2(sq(k) - k as u64)
}

/// `(2^(n+1))^(2k) * 2^(k+n+1)`: linear wirings and outputs for one topology.
pub fn circuits_per_topology(n: u32, k: u32) -> BigCount {
    let (n, k) = (n as u64, k as u64);
    BigCount::pow2((n + 1) * 2 * k + k + n + 1)
}

/// `(3 * 2^(2n))^k * 2^(n+k+1)`: negation-normal circuits for one topology.
pub fn negnormal_bound(n: u32, k: u32) -> BigCount {
    let (n64, k64) = (n as u64, k as u64);
    BigCount::pow(3, k) * BigCount::pow2(2 * n64 * k64 + n64 + k64 + 1)
}

/// `3^k * 2^(k^2 + 2kn + n + 1)`: negation-normal circuits over all topologies.
pub fn corollary_bound(n: u32, k: u32) -> BigCount {
    let (n64, k64) = (n as u64, k as u64);
    BigCount::pow(3, k) * BigCount::pow2(sq(k) + 2 * k64 * n64 + n64 + 1)
}

/// `3^k * 2^(2kn + n + k + 1) * t` for `t` topology classes.
pub fn refined_bound(n: u32, k: u32, t: &BigCount) -> BigCount {
    &negnormal_bound(n, k) * t
}

/// `|B_n| = 2^(2^n)`.
pub fn b_n_size(n: u32) -> Result<BigCount> {
    if n > MAX_B_N_ARITY {
        return Err(Error::Capacity(format!(
            "2^(2^{n}) is too large to materialize; arity is limited to {MAX_B_N_ARITY}"
        )));
    }
    Ok(BigCount::pow2(1u64 << n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u32,
    pub k: u32,
    pub topology_class_count: BigCount,
    pub lemma15: BigCount,
    pub topology_count: BigCount,
    pub circuits_per_topology: BigCount,
    pub negnormal: BigCount,
    pub corollary: BigCount,
    pub refined: BigCount,
    pub b_n: BigCount,
    /// `refined < b_n`: some function in `B_n` needs more than `k` AND gates.
    pub verdict: bool,
}

pub fn pigeonhole_report(n: u32, k: u32, t: &BigCount) -> Result<BoundReport> {
    let b_n = b_n_size(n)?;
    let refined = refined_bound(n, k, t);
    Ok(BoundReport {
        n,
        k,
        topology_class_count: t.clone(),
        lemma15: lemma15_bound(n, k),
        topology_count: topology_count_bound(k),
        circuits_per_topology: circuits_per_topology(n, k),
        negnormal: negnormal_bound(n, k),
        corollary: corollary_bound(n, k),
        verdict: refined < b_n,
        refined,
        b_n,
    })
}

impl BoundReport {
    pub fn to_text(&self) -> String {
        let rows = [
            ("topology_classes", &self.topology_class_count),
            ("lemma15_bound", &self.lemma15),
            ("topology_count_bound", &self.topology_count),
            ("circuits_per_topology", &self.circuits_per_topology),
            ("negnormal_bound", &self.negnormal),
            ("corollary_bound", &self.corollary),
            ("refined_bound", &self.refined),
        ];
        let mut s = format!("n = {}\nk = {}\n", self.n, self.k);
        for (name, v) in rows {
            s.push_str(&format!("{name} = {v}\n"));
        }
        s.push_str(&format!("|B_n| = {}\n", self.b_n));
        s.push_str(&format!(
            "verdict: M({}) ≥ {}: {}\n",
            self.n,
            self.k + 1,
            self.verdict
        ));
        s
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(e: u64) -> BigCount {
        BigCount::pow2(e)
    }

    #[test]
    fn lemma15_values() {
        assert_eq!(lemma15_bound(7, 6), p2(140));
        assert_eq!(lemma15_bound(1, 0), BigCount::from(4));
        assert_eq!(lemma15_bound(3, 2), p2(24));
    }

    #[test]
    fn topology_and_circuit_counts() {
        assert_eq!(topology_count_bound(3), BigCount::from(64));
        assert_eq!(topology_count_bound(1), BigCount::from(1));
        assert_eq!(topology_count_bound(0), BigCount::from(1));
        assert_eq!(topology_count_bound(6), p2(30));
        assert_eq!(circuits_per_topology(7, 6), p2(110));
        assert_eq!(circuits_per_topology(1, 0), p2(2));
    }

    #[test]
    fn negation_normal_counts() {
        let three6 = BigCount::pow(3, 6);
        assert_eq!(negnormal_bound(7, 6), &three6 * &p2(98));
        assert_eq!(negnormal_bound(7, 0), p2(8));
        assert_eq!(corollary_bound(7, 6), &three6 * &p2(128));
        assert!(corollary_bound(7, 6) > p2(137));
        // with no AND gates only the 2^(n+1) affine functions remain
        assert_eq!(corollary_bound(2, 0), p2(3));
    }

    #[test]
    fn refined_values() {
        let t = BigCount::from(555_709);
        let r = refined_bound(7, 6, &t);
        assert_eq!(r, &(&t * &BigCount::pow(3, 6)) * &p2(98));
        assert!(r < p2(128));
        assert_eq!(
            refined_bound(4, 3, &BigCount::from(1)),
            negnormal_bound(4, 3)
        );
        assert!(refined_bound(5, 2, &BigCount::from(7)) <= refined_bound(5, 2, &BigCount::from(8)));
    }

    #[test]
    fn b_n_values() {
        assert_eq!(b_n_size(7).unwrap(), p2(128));
        assert_eq!(b_n_size(1).unwrap(), BigCount::from(4));
        assert_eq!(b_n_size(3).unwrap(), BigCount::from(256));
        assert!(matches!(b_n_size(25), Err(Error::Capacity(_))));
    }

    #[test]
    fn identities_for_small_parameters() {
        for n in 1..=10 {
            for k in 0..=10 {
                let t = topology_count_bound(k);
                assert_eq!(&t * &circuits_per_topology(n, k), lemma15_bound(n, k));
                assert_eq!(&t * &negnormal_bound(n, k), corollary_bound(n, k));
                assert!(negnormal_bound(n, k) <= circuits_per_topology(n, k));
            }
        }
    }

    #[test]
    fn reports() {
        let r = pigeonhole_report(7, 6, &BigCount::from(555_709)).unwrap();
        assert!(r.verdict);
        assert!(r.to_text().ends_with("verdict: M(7) ≥ 7: true\n"));
        assert!(r
            .to_text()
            .contains("|B_n| = 340282366920938463463374607431768211456\n"));
        assert!(!pigeonhole_report(7, 6, &p2(30)).unwrap().verdict);
        assert!(!pigeonhole_report(1, 0, &BigCount::from(1)).unwrap().verdict);
        // the refined count stays below 2^128 exactly while t < 2^30 / 3^6
        let edge = BigCount::from((1u64 << 30) / 729);
        assert!(pigeonhole_report(7, 6, &edge).unwrap().verdict);
        let over = BigCount::from((1u64 << 30) / 729 + 1);
        assert!(!pigeonhole_report(7, 6, &over).unwrap().verdict);
    }
}
