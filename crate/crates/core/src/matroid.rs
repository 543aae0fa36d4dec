//! Matroids as dense rank tables with exhaustively verified axioms.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::set::{GroundSet, Subset};

/// Hard cap for matroids constructed from a [`MatroidSpec`]. Internally grown
/// matroids (extensions) may use the remaining headroom up to
/// [`Subset::CAPACITY`].
pub const MAX_SPEC_ELEMENTS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankAxiom {
    /// r(∅) = 0 and 0 ≤ r(X) ≤ |X|.
    Normalization,
    /// X ⊆ Y implies r(X) ≤ r(Y).
    Monotonicity,
    /// r(X) + r(Y) ≥ r(X ∪ Y) + r(X ∩ Y).
    Submodularity,
}

/// A concrete rank-axiom violation, reported with the offending sets as
/// label lists and the two sides of the violated comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomWitness {
    pub axiom: RankAxiom,
    pub first: Vec<String>,
    pub second: Option<Vec<String>>,
    pub lhs: i64,
    pub rhs: i64,
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |labels: &[String]| labels.join(",");
        match self.axiom {
            RankAxiom::Normalization => write!(
                f,
                "normalization fails on {{{}}}: rank {} outside [0, {}]",
                join(&self.first),
                self.lhs,
                self.rhs
            ),
            RankAxiom::Monotonicity => write!(
                f,
                "monotonicity fails: r({{{}}}) = {} > {} = r({{{}}})",
                join(&self.first),
                self.lhs,
                self.rhs,
                join(self.second.as_deref().unwrap_or(&[])),
            ),
            RankAxiom::Submodularity => write!(
                f,
                "submodularity fails: r({{{}}}) + r({{{}}}) = {} < {} = r(union) + r(intersection)",
                join(&self.first),
                join(self.second.as_deref().unwrap_or(&[])),
                self.lhs,
                self.rhs
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidError {
    /// A structural precondition of a spec kind is violated.
    InvalidSpec {
        reason: String,
    },
    /// The derived rank table fails one of the rank axioms.
    NotAMatroid {
        witness: AxiomWitness,
    },
    TooLarge {
        n: usize,
        max: usize,
    },
    /// `minor` was called with intersecting delete and contract sets.
    OverlappingSets,
    /// Two matroids with different label sets were compared.
    GroundMismatch,
    UnknownLabel {
        label: String,
    },
}

impl fmt::Display for MatroidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidError::InvalidSpec { reason } => write!(f, "invalid matroid spec: {reason}"),
            MatroidError::NotAMatroid { witness } => write!(f, "not a matroid: {witness}"),
            MatroidError::TooLarge { n, max } => {
                write!(
                    f,
                    "ground set too large: {n} elements exceeds the cap of {max}"
                )
            }
            MatroidError::OverlappingSets => {
                write!(f, "delete and contract sets must be disjoint")
            }
            MatroidError::GroundMismatch => {
                write!(f, "matroids are labeled by different ground sets")
            }
            MatroidError::UnknownLabel { label } => write!(f, "unknown element label \"{label}\""),
        }
    }
}

impl core::error::Error for MatroidError {}

/// A structural description from which a matroid is built.
///
/// `sets` name subsets by element label; the listed labels must all appear in
/// `labels`, which fixes the element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidSpec {
    /// The listed sets are exactly the circuits.
    Circuits {
        labels: Vec<String>,
        sets: Vec<Vec<String>>,
    },
    /// The listed sets are exactly the bases.
    Bases {
        labels: Vec<String>,
        sets: Vec<Vec<String>>,
    },
    /// Rank-`rank` sparse paving matroid: the listed sets are the
    /// non-spanning circuits (circuit-hyperplanes), every one of size `rank`
    /// with pairwise intersections of size at most `rank - 2`.
    SparsePaving {
        labels: Vec<String>,
        rank: usize,
        sets: Vec<Vec<String>>,
    },
}

impl MatroidSpec {
    pub fn labels(&self) -> &[String] {
        match self {
            MatroidSpec::Circuits { labels, .. }
            | MatroidSpec::Bases { labels, .. }
            | MatroidSpec::SparsePaving { labels, .. } => labels,
        }
    }

    pub fn sets(&self) -> &[Vec<String>] {
        match self {
            MatroidSpec::Circuits { sets, .. }
            | MatroidSpec::Bases { sets, .. }
            | MatroidSpec::SparsePaving { sets, .. } => sets,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            MatroidSpec::Circuits { .. } => "circuits",
            MatroidSpec::Bases { .. } => "bases",
            MatroidSpec::SparsePaving { .. } => "sparse_paving",
        }
    }
}

/// A matroid over at most [`Subset::CAPACITY`] elements with a fully
/// materialized rank table.
///
/// Values are immutable after construction; the circuit and flat caches are
/// filled at most once behind an atomic guard, so shared references may be
/// queried from any number of threads.
pub struct Matroid {
    ground: GroundSet,
    rank_table: Vec<u8>,
    circuits_cache: OnceBox<Vec<Subset>>,
    flats_cache: OnceBox<Vec<Vec<Subset>>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid {
            ground: self.ground.clone(),
            rank_table: self.rank_table.clone(),
            circuits_cache: OnceBox::new(),
            flats_cache: OnceBox::new(),
        }
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matroid(n={}, rank={}, ground={:?})",
            self.size(),
            self.rank_of_ground(),
            self.ground
        )
    }
}

impl Matroid {
    /// Builds a matroid from an explicit rank table and verifies the rank
    /// axioms before returning.
    pub fn from_rank_table(
        ground: GroundSet,
        rank_table: Vec<u8>,
    ) -> Result<Matroid, MatroidError> {
        assert_eq!(
            rank_table.len(),
            1usize << ground.len(),
            "rank table must have one entry per subset"
        );
        verify_axioms(&ground, &rank_table)
            .map_err(|witness| MatroidError::NotAMatroid { witness })?;
        Ok(Self::from_rank_table_unchecked(ground, rank_table))
    }

    /// Builds a matroid whose table is known to satisfy the axioms by
    /// construction (minors of verified matroids).
    pub(crate) fn from_rank_table_unchecked(ground: GroundSet, rank_table: Vec<u8>) -> Matroid {
        debug_assert!(verify_axioms(&ground, &rank_table).is_ok());
        Matroid {
            ground,
            rank_table,
            circuits_cache: OnceBox::new(),
            flats_cache: OnceBox::new(),
        }
    }

    /// Materializes the table of `rank_fn` over all subsets and verifies it.
    pub fn from_rank_fn<F>(ground: GroundSet, rank_fn: F) -> Result<Matroid, MatroidError>
    where
        F: Fn(Subset) -> usize,
    {
        let n = ground.len();
        let mut table = Vec::with_capacity(1 << n);
        for mask in 0..1u32 << n {
            let r = rank_fn(Subset::from_mask(mask));
            debug_assert!(r <= u8::MAX as usize);
            table.push(r as u8);
        }
        Matroid::from_rank_table(ground, table)
    }

    /// Builds a matroid from a structural spec.
    ///
    /// The spec's structural invariants are checked first (`InvalidSpec`),
    /// then the derived rank table is verified against the rank axioms
    /// (`NotAMatroid` with a witness).
    pub fn build(spec: &MatroidSpec) -> Result<Matroid, MatroidError> {
        if spec.labels().len() > MAX_SPEC_ELEMENTS {
            return Err(MatroidError::TooLarge {
                n: spec.labels().len(),
                max: MAX_SPEC_ELEMENTS,
            });
        }
        let ground = GroundSet::new(spec.labels().to_vec())?;
        let n = ground.len();
        let masks: Vec<Subset> = spec
            .sets()
            .iter()
            .map(|s| {
                let mask = ground.subset_from_labels(s)?;
                if mask.len() != s.len() {
                    return Err(MatroidError::InvalidSpec {
                        reason: format!("set {{{}}} repeats an element", s.join(",")),
                    });
                }
                Ok(mask)
            })
            .collect::<Result<_, _>>()?;

        let table = match spec {
            MatroidSpec::Circuits { .. } => {
                for (i, &c) in masks.iter().enumerate() {
                    if c.is_empty() {
                        return Err(MatroidError::InvalidSpec {
                            reason: "the empty set cannot be a circuit".to_string(),
                        });
                    }
                    for &d in &masks[..i] {
                        if c.is_subset_of(d) || d.is_subset_of(c) {
                            return Err(MatroidError::InvalidSpec {
                                reason: format!(
                                    "circuits must form an antichain: {} is contained in {}",
                                    ground.format_subset(if c.is_subset_of(d) { c } else { d }),
                                    ground.format_subset(if c.is_subset_of(d) { d } else { c }),
                                ),
                            });
                        }
                    }
                }
                rank_table_from_circuits(n, &masks)
            }
            MatroidSpec::Bases { .. } => {
                if masks.is_empty() {
                    return Err(MatroidError::InvalidSpec {
                        reason: "a bases spec must list at least one basis".to_string(),
                    });
                }
                let size = masks[0].len();
                if masks.iter().any(|b| b.len() != size) {
                    return Err(MatroidError::InvalidSpec {
                        reason: "all bases must have the same cardinality".to_string(),
                    });
                }
                rank_table_from_bases(n, &masks)
            }
            MatroidSpec::SparsePaving { rank, .. } => {
                let rank = *rank;
                if rank > n {
                    return Err(MatroidError::InvalidSpec {
                        reason: format!("rank {rank} exceeds the number of elements {n}"),
                    });
                }
                if rank == 0 && !masks.is_empty() {
                    return Err(MatroidError::InvalidSpec {
                        reason: "a rank-0 sparse paving matroid has no circuit-hyperplanes"
                            .to_string(),
                    });
                }
                for (i, &h) in masks.iter().enumerate() {
                    if h.len() != rank {
                        return Err(MatroidError::InvalidSpec {
                            reason: format!(
                                "listed set {} must have size equal to the rank {rank}",
                                ground.format_subset(h)
                            ),
                        });
                    }
                    for &g in &masks[..i] {
                        if h.inter(g).len() + 2 > rank {
                            return Err(MatroidError::InvalidSpec {
                                reason: format!(
                                    "listed sets {} and {} intersect in more than rank - 2 elements",
                                    ground.format_subset(g),
                                    ground.format_subset(h)
                                ),
                            });
                        }
                    }
                }
                rank_table_from_sparse_paving(n, rank, &masks)
            }
        };

        Matroid::from_rank_table(ground, table)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Number of ground-set elements.
    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn full_set(&self) -> Subset {
        self.ground.full_set()
    }

    /// Rank of a subset, by table lookup.
    #[inline]
    pub fn rank(&self, x: Subset) -> usize {
        debug_assert!(
            (x.mask() as usize) < self.rank_table.len(),
            "subset addresses elements outside the ground set"
        );
        self.rank_table[x.mask() as usize] as usize
    }

    pub fn rank_of_ground(&self) -> usize {
        self.rank(self.full_set())
    }

    #[inline]
    pub fn is_independent(&self, x: Subset) -> bool {
        self.rank(x) == x.len()
    }

    /// cl(X) = {e : r(X ∪ e) = r(X)}; always a flat containing X.
    pub fn closure(&self, x: Subset) -> Subset {
        let r = self.rank(x);
        let mut out = x;
        for e in x.complement(self.size()).iter() {
            if self.rank(x.with(e)) == r {
                out = out.with(e);
            }
        }
        out
    }

    pub fn is_flat(&self, x: Subset) -> bool {
        let r = self.rank(x);
        x.complement(self.size())
            .iter()
            .all(|e| self.rank(x.with(e)) > r)
    }

    /// X is a circuit iff r(X) = |X| - 1 and every one-element deletion is
    /// independent.
    pub fn is_circuit(&self, x: Subset) -> bool {
        !x.is_empty()
            && self.rank(x) + 1 == x.len()
            && x.iter().all(|e| self.is_independent(x.without(e)))
    }

    /// All circuits, ascending by (size, mask).
    pub fn circuits(&self) -> &[Subset] {
        self.circuits_cache.get_or_init(|| {
            let mut list: Vec<Subset> = (0..1u32 << self.size())
                .map(Subset::from_mask)
                .filter(|&x| self.is_circuit(x))
                .collect();
            list.sort_unstable_by_key(|c| (c.len(), c.mask()));
            Box::new(list)
        })
    }

    /// All flats, grouped by rank `0 ..= r(E)`, each group ascending by mask.
    pub fn flats_by_rank(&self) -> &[Vec<Subset>] {
        self.flats_cache.get_or_init(|| {
            let mut buckets: Vec<Vec<Subset>> = Vec::new();
            buckets.resize(self.rank_of_ground() + 1, Vec::new());
            for mask in 0..1u32 << self.size() {
                let x = Subset::from_mask(mask);
                if self.is_flat(x) {
                    buckets[self.rank(x)].push(x);
                }
            }
            Box::new(buckets)
        })
    }

    /// All flats in ascending (rank, mask) order.
    pub fn flats(&self) -> impl Iterator<Item = Subset> + '_ {
        self.flats_by_rank().iter().flatten().copied()
    }

    /// The set of loops, cl(∅).
    pub fn loops(&self) -> Subset {
        self.closure(Subset::EMPTY)
    }

    /// M \ delete / contract. The survivors keep their labels and relative
    /// order; ranks satisfy r'(X) = r(X ∪ contract) - r(contract).
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<Matroid, MatroidError> {
        if delete.intersects(contract) {
            return Err(MatroidError::OverlappingSets);
        }
        let keep = self.full_set().diff(delete).diff(contract);
        let ground = self.ground.restricted(keep);
        let old_index: Vec<usize> = keep.iter().collect();
        let r_contract = self.rank(contract);
        let mut table = Vec::with_capacity(1 << old_index.len());
        for mask in 0..1u32 << old_index.len() {
            let mut old = contract;
            for (new_bit, &old_bit) in old_index.iter().enumerate() {
                if mask >> new_bit & 1 == 1 {
                    old = old.with(old_bit);
                }
            }
            table.push((self.rank(old) - r_contract) as u8);
        }
        Ok(Matroid::from_rank_table_unchecked(ground, table))
    }

    pub fn delete(&self, delete: Subset) -> Result<Matroid, MatroidError> {
        self.minor(delete, Subset::EMPTY)
    }

    pub fn contract(&self, contract: Subset) -> Result<Matroid, MatroidError> {
        self.minor(Subset::EMPTY, contract)
    }

    /// S is a separator iff r(S) + r(E - S) = r(E).
    pub fn is_separator(&self, s: Subset) -> bool {
        self.rank(s) + self.rank(s.complement(self.size())) == self.rank_of_ground()
    }

    /// Rank-table equality after aligning the other matroid's element order
    /// to this one's labels. Errors if the label sets differ.
    pub fn equals(&self, other: &Matroid) -> Result<bool, MatroidError> {
        if !self.ground.same_labels(&other.ground) {
            return Err(MatroidError::GroundMismatch);
        }
        let perm: Vec<usize> = (0..self.size())
            .map(|i| other.ground.index_of(self.ground.label(i)).unwrap())
            .collect();
        for mask in 0..1u32 << self.size() {
            let x = Subset::from_mask(mask);
            let mapped = Subset::from_indices(x.iter().map(|i| perm[i]));
            if self.rank(x) != other.rank(mapped) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether swapping `e` and `f` (fixing everything else) preserves all
    /// ranks.
    pub fn are_clones(&self, e: usize, f: usize) -> bool {
        assert!(e != f, "clone check requires two distinct elements");
        assert!(e < self.size() && f < self.size());
        for mask in 0..1u32 << self.size() {
            let x = Subset::from_mask(mask);
            if x.contains(e) && !x.contains(f) && self.rank(x) != self.rank(x.swap_pair(e, f)) {
                return false;
            }
        }
        true
    }

    /// Clones whose pair is independent: r({e,f}) = 2.
    pub fn are_independent_clones(&self, e: usize, f: usize) -> bool {
        self.are_clones(e, f) && self.rank(Subset::singleton(e).with(f)) == 2
    }

    pub(crate) fn rank_table(&self) -> &[u8] {
        &self.rank_table
    }
}

fn rank_table_from_bases(n: usize, bases: &[Subset]) -> Vec<u8> {
    let mut table = Vec::with_capacity(1 << n);
    for mask in 0..1u32 << n {
        let x = Subset::from_mask(mask);
        let r = bases.iter().map(|&b| x.inter(b).len()).max().unwrap_or(0);
        table.push(r as u8);
    }
    table
}

fn rank_table_from_circuits(n: usize, circuits: &[Subset]) -> Vec<u8> {
    // dependent[X] = some listed circuit is contained in X, via upward
    // subset-sum propagation.
    let mut dependent = alloc::vec![false; 1usize << n];
    for &c in circuits {
        dependent[c.mask() as usize] = true;
    }
    for e in 0..n {
        for mask in 0..1u32 << n {
            if dependent[mask as usize] {
                dependent[(mask | 1 << e) as usize] = true;
            }
        }
    }
    // Greedy growth over the independence predicate, in element order.
    let mut table = Vec::with_capacity(1 << n);
    for mask in 0..1u32 << n {
        let x = Subset::from_mask(mask);
        let mut picked = Subset::EMPTY;
        for e in x.iter() {
            if !dependent[picked.with(e).mask() as usize] {
                picked = picked.with(e);
            }
        }
        table.push(picked.len() as u8);
    }
    table
}

fn rank_table_from_sparse_paving(n: usize, rank: usize, hyperplanes: &[Subset]) -> Vec<u8> {
    let mut table = Vec::with_capacity(1 << n);
    for mask in 0..1u32 << n {
        let x = Subset::from_mask(mask);
        table.push(core::cmp::min(x.len(), rank) as u8);
    }
    for &h in hyperplanes {
        table[h.mask() as usize] = (rank - 1) as u8;
    }
    table
}

/// Checks R1-R3 over the whole table using the local criteria, which are
/// equivalent to the pairwise axioms: r(∅) = 0 and r(X) ≤ |X|; r(X - e) ≤
/// r(X) for every e ∈ X; and r(X ∪ a) + r(X ∪ b) ≥ r(X ∪ {a,b}) + r(X) for
/// every X and distinct a, b ∉ X.
pub(crate) fn verify_axioms(ground: &GroundSet, table: &[u8]) -> Result<(), AxiomWitness> {
    let n = ground.len();
    debug_assert_eq!(table.len(), 1usize << n);
    if table[0] != 0 {
        return Err(AxiomWitness {
            axiom: RankAxiom::Normalization,
            first: Vec::new(),
            second: None,
            lhs: table[0] as i64,
            rhs: 0,
        });
    }
    for mask in 0..1u32 << n {
        let x = Subset::from_mask(mask);
        let r = table[mask as usize] as i64;
        if r > x.len() as i64 {
            return Err(AxiomWitness {
                axiom: RankAxiom::Normalization,
                first: ground.label_vec(x),
                second: None,
                lhs: r,
                rhs: x.len() as i64,
            });
        }
        for e in x.iter() {
            let smaller = x.without(e);
            let rs = table[smaller.mask() as usize] as i64;
            if rs > r {
                return Err(AxiomWitness {
                    axiom: RankAxiom::Monotonicity,
                    first: ground.label_vec(smaller),
                    second: Some(ground.label_vec(x)),
                    lhs: rs,
                    rhs: r,
                });
            }
        }
    }
    for mask in 0..1u32 << n {
        let x = Subset::from_mask(mask);
        let rx = table[mask as usize] as i64;
        let outside = x.complement(n);
        for a in outside.iter() {
            let ra = table[x.with(a).mask() as usize] as i64;
            for b in outside.iter() {
                if b <= a {
                    continue;
                }
                let rb = table[x.with(b).mask() as usize] as i64;
                let rab = table[x.with(a).with(b).mask() as usize] as i64;
                if ra + rb < rab + rx {
                    return Err(AxiomWitness {
                        axiom: RankAxiom::Submodularity,
                        first: ground.label_vec(x.with(a)),
                        second: Some(ground.label_vec(x.with(b))),
                        lhs: ra + rb,
                        rhs: rab + rx,
                    });
                }
            }
        }
    }
    Ok(())
}
