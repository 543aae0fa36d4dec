//! Shared helpers and independent oracles for the integration suites.
//!
//! Everything here recomputes expected values from first principles (brute
//! force over subsets, definitions applied literally) so the tests stay
//! independent of the library's own derivations.

#![allow(dead_code)]

use gutsline_core::{Matroid, Subset};

pub fn subset(m: &Matroid, labels: &[&str]) -> Subset {
    m.ground().subset_from_labels(labels).expect("known labels")
}

/// Exhaustive pairwise check of the rank axioms, straight from their
/// definitions (not the local criteria the library verifies with).
pub fn assert_axioms_pairwise(m: &Matroid) {
    let n = m.size();
    assert_eq!(m.rank(Subset::EMPTY), 0);
    for x_mask in 0..1u32 << n {
        let x = Subset::from_mask(x_mask);
        assert!(m.rank(x) <= x.len(), "R1 fails on {:?}", x);
        for y_mask in 0..1u32 << n {
            let y = Subset::from_mask(y_mask);
            if x.is_subset_of(y) {
                assert!(m.rank(x) <= m.rank(y), "R2 fails on {:?} ⊆ {:?}", x, y);
            }
            assert!(
                m.rank(x.union(y)) + m.rank(x.inter(y)) <= m.rank(x) + m.rank(y),
                "R3 fails on {:?}, {:?}",
                x,
                y
            );
        }
    }
}

/// Rank by brute force over an explicit circuit list: the size of a largest
/// subset of `x` containing no listed circuit.
pub fn brute_rank_from_circuits(n: usize, circuits: &[Subset], x: Subset) -> usize {
    let mut best = 0;
    for mask in 0..1u32 << n {
        let s = Subset::from_mask(mask);
        if s.is_subset_of(x) && s.len() > best && circuits.iter().all(|&c| !c.is_subset_of(s)) {
            best = s.len();
        }
    }
    best
}

/// Circuits of a rank-`rank` sparse paving matroid, from the definition: the
/// listed circuit-hyperplanes plus every (rank+1)-subset containing none of
/// them.
pub fn sparse_paving_circuits(n: usize, rank: usize, hyperplanes: &[Subset]) -> Vec<Subset> {
    let mut out: Vec<Subset> = hyperplanes.to_vec();
    for mask in 0..1u32 << n {
        let x = Subset::from_mask(mask);
        if x.len() == rank + 1 && hyperplanes.iter().all(|&h| !h.is_subset_of(x)) {
            out.push(x);
        }
    }
    out.sort_by_key(|c| (c.len(), c.mask()));
    out
}

/// A tiny deterministic generator for the sampled (non-exhaustive) suites.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn subset(&mut self, n: usize) -> Subset {
        Subset::from_mask((self.next_u64() & ((1 << n) - 1)) as u32)
    }
}
