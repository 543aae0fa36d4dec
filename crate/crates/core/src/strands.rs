//! Strands of an exact 3-separation, the bipartite strand graph, and its
//! bunches.

use alloc::vec::Vec;
use core::fmt;

use crate::connectivity::require_exact_3_separation;
use crate::matroid::Matroid;
use crate::set::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// A minimal subset of one side whose local connectivity with the whole
/// other side is one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strand {
    pub side: Side,
    pub members: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrandError {
    NotExact3Separation,
    /// The given set is not a vertex of the strand graph.
    NotAStrand {
        side: Side,
    },
    /// The two designated strands are not adjacent (⊓ ≠ 1).
    NotAdjacent,
}

impl fmt::Display for StrandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrandError::NotExact3Separation => {
                write!(f, "(A,B) is not an exact 3-separation")
            }
            StrandError::NotAStrand { side } => {
                write!(f, "the designated {side:?}-side set is not a strand")
            }
            StrandError::NotAdjacent => {
                write!(
                    f,
                    "the designated strands have local connectivity different from one"
                )
            }
        }
    }
}

impl core::error::Error for StrandError {}

/// Bipartite graph on A-strands and B-strands, adjacent when their local
/// connectivity is one. `component_id` labels A-vertices first, then
/// B-vertices.
#[derive(Clone, Debug)]
pub struct StrandGraph {
    pub a_strands: Vec<Strand>,
    pub b_strands: Vec<Strand>,
    /// Pairs (i, j): a_strands[i] adjacent to b_strands[j].
    pub edges: Vec<(usize, usize)>,
    pub component_id: Vec<usize>,
}

/// The vertex set of a strand-graph component with at least one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bunch {
    pub a_indices: Vec<usize>,
    pub b_indices: Vec<usize>,
    pub complete: bool,
}

impl Bunch {
    pub fn is_complete(&self) -> bool {
        self.complete
    }
}

/// All strands of the chosen side: minimal subsets with ⊓(·, other side) = 1,
/// in (size, mask) order.
///
/// The scan walks subsets by ascending cardinality and skips proper supersets
/// of strands already found; by monotonicity of ⊓ this is exactly the
/// minimality condition.
pub fn strands(m: &Matroid, a: Subset, b: Subset, side: Side) -> Result<Vec<Strand>, StrandError> {
    if !require_exact_3_separation(m, a, b) {
        return Err(StrandError::NotExact3Separation);
    }
    let (own, other) = match side {
        Side::A => (a, b),
        Side::B => (b, a),
    };
    let mut found: Vec<Strand> = Vec::new();
    for x in own.submasks_by_size() {
        if x.is_empty() {
            continue;
        }
        if found.iter().any(|s| s.members.is_subset_of(x)) {
            continue;
        }
        if m.local_conn(x, other) == 1 {
            found.push(Strand { side, members: x });
        }
    }
    Ok(found)
}

/// The strand graph of (M, A, B) with component labels.
pub fn strand_graph(m: &Matroid, a: Subset, b: Subset) -> Result<StrandGraph, StrandError> {
    let a_strands = strands(m, a, b, Side::A)?;
    let b_strands = strands(m, a, b, Side::B)?;
    let mut edges = Vec::new();
    for (i, sa) in a_strands.iter().enumerate() {
        for (j, sb) in b_strands.iter().enumerate() {
            if m.local_conn(sa.members, sb.members) == 1 {
                edges.push((i, j));
            }
        }
    }

    let na = a_strands.len();
    let total = na + b_strands.len();
    let mut adjacency: Vec<Vec<usize>> = alloc::vec![Vec::new(); total];
    for &(i, j) in &edges {
        adjacency[i].push(na + j);
        adjacency[na + j].push(i);
    }
    let mut component_id = alloc::vec![usize::MAX; total];
    let mut next = 0;
    for start in 0..total {
        if component_id[start] != usize::MAX {
            continue;
        }
        let mut queue = alloc::vec![start];
        component_id[start] = next;
        while let Some(v) = queue.pop() {
            for &w in &adjacency[v] {
                if component_id[w] == usize::MAX {
                    component_id[w] = next;
                    queue.push(w);
                }
            }
        }
        next += 1;
    }

    Ok(StrandGraph {
        a_strands,
        b_strands,
        edges,
        component_id,
    })
}

impl StrandGraph {
    fn component_count(&self) -> usize {
        self.component_id.iter().copied().max().map_or(0, |c| c + 1)
    }

    fn bunch_of_component(&self, c: usize) -> Option<Bunch> {
        let na = self.a_strands.len();
        let a_indices: Vec<usize> = (0..na).filter(|&i| self.component_id[i] == c).collect();
        let b_indices: Vec<usize> = (0..self.b_strands.len())
            .filter(|&j| self.component_id[na + j] == c)
            .collect();
        let edge_count = self
            .edges
            .iter()
            .filter(|&&(i, _)| self.component_id[i] == c)
            .count();
        if edge_count == 0 {
            return None;
        }
        Some(Bunch {
            complete: edge_count == a_indices.len() * b_indices.len(),
            a_indices,
            b_indices,
        })
    }

    /// Components with at least one edge, in component order. Isolated strand
    /// vertices belong to no bunch.
    pub fn bunches(&self) -> Vec<Bunch> {
        (0..self.component_count())
            .filter_map(|c| self.bunch_of_component(c))
            .collect()
    }

    /// The bunch of the component containing the adjacent strands `a0`, `b0`.
    pub fn special_strands(&self, a0: Subset, b0: Subset) -> Result<Bunch, StrandError> {
        let i = self
            .a_strands
            .iter()
            .position(|s| s.members == a0)
            .ok_or(StrandError::NotAStrand { side: Side::A })?;
        let j = self
            .b_strands
            .iter()
            .position(|s| s.members == b0)
            .ok_or(StrandError::NotAStrand { side: Side::B })?;
        if !self.edges.contains(&(i, j)) {
            return Err(StrandError::NotAdjacent);
        }
        let c = self.component_id[i];
        debug_assert_eq!(c, self.component_id[self.a_strands.len() + j]);
        Ok(self
            .bunch_of_component(c)
            .expect("adjacent pair spans an edge"))
    }

    /// Member sets of every strand in the bunch, both sides.
    pub fn bunch_members(&self, bunch: &Bunch) -> Vec<Subset> {
        bunch
            .a_indices
            .iter()
            .map(|&i| self.a_strands[i].members)
            .chain(bunch.b_indices.iter().map(|&j| self.b_strands[j].members))
            .collect()
    }
}
