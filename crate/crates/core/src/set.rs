//! Ground sets and bitmask subsets.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::matroid::MatroidError;

/// A subset of a ground set, stored as a characteristic bitmask.
///
/// Bit `i` corresponds to element index `i` of the owning [`GroundSet`].
/// All set algebra is exact; masks are cheap `Copy` values.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    /// Maximum number of ground-set elements a mask can address.
    pub const CAPACITY: usize = 24;

    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u32) -> Subset {
        Subset(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn singleton(e: usize) -> Subset {
        Subset(1 << e)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Subset {
        let mut mask = 0u32;
        for i in indices {
            debug_assert!(i < Self::CAPACITY);
            mask |= 1 << i;
        }
        Subset(mask)
    }

    /// The full set `{0, …, n-1}`.
    pub const fn full(n: usize) -> Subset {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub const fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    #[must_use]
    pub const fn with(self, e: usize) -> Subset {
        Subset(self.0 | 1 << e)
    }

    #[must_use]
    pub const fn without(self, e: usize) -> Subset {
        Subset(self.0 & !(1 << e))
    }

    pub const fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub const fn inter(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub const fn diff(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub const fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    /// Element indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        core::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(e)
            }
        })
    }

    /// Exchanges the membership of `e` and `f`.
    #[must_use]
    pub fn swap_pair(self, e: usize, f: usize) -> Subset {
        match (self.contains(e), self.contains(f)) {
            (true, false) => self.without(e).with(f),
            (false, true) => self.without(f).with(e),
            _ => self,
        }
    }

    /// All submasks of `self`, sorted by (cardinality, mask).
    pub fn submasks_by_size(self) -> Vec<Subset> {
        let mut out = Vec::with_capacity(1 << self.len());
        let m = self.0;
        let mut s = 0u32;
        loop {
            out.push(Subset(s));
            if s == m {
                break;
            }
            s = s.wrapping_sub(m) & m;
        }
        out.sort_unstable_by_key(|x| (x.len(), x.0));
        out
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// An ordered list of distinct element labels.
///
/// The position of a label is its element index; subsets refer to elements by
/// index only, so a `GroundSet` is the single point where labels and masks
/// meet.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<GroundSet, MatroidError> {
        if labels.is_empty() {
            return Err(MatroidError::InvalidSpec {
                reason: "ground set must have at least one element".to_string(),
            });
        }
        if labels.len() > Subset::CAPACITY {
            return Err(MatroidError::TooLarge {
                n: labels.len(),
                max: Subset::CAPACITY,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(MatroidError::InvalidSpec {
                    reason: "element labels must be nonempty".to_string(),
                });
            }
            if labels[..i].contains(l) {
                return Err(MatroidError::InvalidSpec {
                    reason: alloc::format!("duplicate element label \"{l}\""),
                });
            }
        }
        Ok(GroundSet { labels })
    }

    pub fn from_strs(labels: &[&str]) -> Result<GroundSet, MatroidError> {
        GroundSet::new(labels.iter().map(|s| s.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Builds the subset named by `labels`; fails on unknown labels.
    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset, MatroidError> {
        let mut s = Subset::EMPTY;
        for l in labels {
            match self.index_of(l.as_ref()) {
                Some(i) => s = s.with(i),
                None => {
                    return Err(MatroidError::UnknownLabel {
                        label: l.as_ref().to_string(),
                    })
                }
            }
        }
        Ok(s)
    }

    pub fn label_vec(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Renders a subset as `{a,b,c}` using element labels.
    pub fn format_subset(&self, s: Subset) -> String {
        let mut out = String::from("{");
        for (k, i) in s.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&self.labels[i]);
        }
        out.push('}');
        out
    }

    /// Whether both ground sets carry the same labels, in any order.
    pub fn same_labels(&self, other: &GroundSet) -> bool {
        self.len() == other.len() && self.labels.iter().all(|l| other.index_of(l).is_some())
    }

    /// First label in `base`, `base1`, `base2`, … that is not yet in use.
    pub fn fresh_label(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        let mut k = 1usize;
        loop {
            let candidate = alloc::format!("{base}{k}");
            if self.index_of(&candidate).is_none() {
                return candidate;
            }
            k += 1;
        }
    }

    /// Appends a fresh element derived from `base`; returns the grown ground
    /// set together with the label and index of the new element.
    pub fn extended(&self, base: &str) -> Result<(GroundSet, String, usize), MatroidError> {
        if self.len() + 1 > Subset::CAPACITY {
            return Err(MatroidError::TooLarge {
                n: self.len() + 1,
                max: Subset::CAPACITY,
            });
        }
        let label = self.fresh_label(base);
        let mut labels = self.labels.clone();
        labels.push(label.clone());
        let idx = labels.len() - 1;
        Ok((GroundSet { labels }, label, idx))
    }

    /// Keeps only the elements of `keep`, preserving label order.
    pub fn restricted(&self, keep: Subset) -> GroundSet {
        GroundSet {
            labels: keep.iter().map(|i| self.labels[i].clone()).collect(),
        }
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundSet({})", self.format_subset(self.full_set()))
    }
}
