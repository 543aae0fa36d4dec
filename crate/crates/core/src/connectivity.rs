//! Connectivity λ, local connectivity ⊓, modular pairs, and exact
//! k-separations.

use alloc::vec::Vec;
use core::fmt;

use crate::matroid::Matroid;
use crate::set::Subset;

/// A two-sided partition of the ground set with its order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Separation {
    pub a: Subset,
    pub b: Subset,
    pub order: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectivityError {
    TooLarge { n: usize, max: usize },
}

impl fmt::Display for ConnectivityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectivityError::TooLarge { n, max } => write!(
                f,
                "separation enumeration scans 2^n subsets; n = {n} exceeds the cap of {max}"
            ),
        }
    }
}

impl core::error::Error for ConnectivityError {}

impl Matroid {
    /// λ(A) = r(A) + r(E - A) - r(E).
    pub fn connectivity(&self, a: Subset) -> usize {
        self.rank(a) + self.rank(a.complement(self.size())) - self.rank_of_ground()
    }

    /// ⊓(A, B) = r(A) + r(B) - r(A ∪ B). Total in both arguments; no
    /// disjointness is required.
    #[inline]
    pub fn local_conn(&self, a: Subset, b: Subset) -> usize {
        self.rank(a) + self.rank(b) - self.rank(a.union(b))
    }

    /// Whether r(U) + r(V) = r(U ∪ V) + r(U ∩ V).
    pub fn is_modular_pair(&self, u: Subset, v: Subset) -> bool {
        self.rank(u) + self.rank(v) == self.rank(u.union(v)) + self.rank(u.inter(v))
    }

    /// Whether λ(A) = k - 1 with both sides of size at least k.
    pub fn is_exact_k_separation(&self, a: Subset, k: usize) -> bool {
        assert!(k >= 1, "separation order must be at least 1");
        let b = a.complement(self.size());
        a.len() >= k && b.len() >= k && self.connectivity(a) == k - 1
    }
}

/// All unordered exact 3-separations, each reported once with the
/// numerically smaller mask as the A side, in ascending mask order.
pub fn enumerate_exact_3_separations(m: &Matroid) -> Result<Vec<Separation>, ConnectivityError> {
    const MAX_ENUMERATION: usize = 16;
    let n = m.size();
    if n > MAX_ENUMERATION {
        return Err(ConnectivityError::TooLarge {
            n,
            max: MAX_ENUMERATION,
        });
    }
    let mut out = Vec::new();
    for mask in 0..1u32 << n {
        let a = Subset::from_mask(mask);
        let b = a.complement(n);
        if a.mask() < b.mask() && m.is_exact_k_separation(a, 3) {
            out.push(Separation {
                a,
                b,
                order: 3,
                exact: true,
            });
        }
    }
    Ok(out)
}

pub(crate) fn require_exact_3_separation(m: &Matroid, a: Subset, b: Subset) -> bool {
    a.union(b) == m.full_set() && !a.intersects(b) && m.is_exact_k_separation(a, 3)
}
