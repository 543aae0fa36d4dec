//! Built-in matroids used throughout the test suites and exposed by the CLI.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::matroid::{Matroid, MatroidError, MatroidSpec};
use crate::set::{GroundSet, Subset};

/// Names of the fixed catalog entries, with one-line descriptions. The
/// parametric `uniform(r,n)` generator is handled by [`get`] directly.
pub const ENTRIES: &[(&str, &str)] = &[
    (
        "vamos",
        "rank-4 sparse paving matroid on a1,a1p,a2,a2p,b1,b1p,b2,b2p with five 4-element circuit-hyperplanes",
    ),
    (
        "vamos-plus",
        "vamos with the sixth circuit-hyperplane {a2,a2p,b2,b2p} added",
    ),
    (
        "k4",
        "cycle matroid of the complete graph on 4 vertices; elements 12,13,14,23,24,34",
    ),
    (
        "prism",
        "cycle matroid of the triangular prism; triangles 12,13,23 and 45,46,56, rungs 14,25,36",
    ),
    (
        "two-triangles",
        "direct sum of two triangles; circuits {1,2,3} and {4,5,6}",
    ),
];

fn owned(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

fn owned_sets(sets: &[&[&str]]) -> Vec<Vec<String>> {
    sets.iter().map(|s| owned(s)).collect()
}

pub const VAMOS_LABELS: [&str; 8] = ["a1", "a1p", "a2", "a2p", "b1", "b1p", "b2", "b2p"];

const VAMOS_CIRCUIT_HYPERPLANES: [&[&str]; 5] = [
    &["a1", "a1p", "a2", "a2p"],
    &["a1", "a1p", "b1", "b1p"],
    &["a1", "a1p", "b2", "b2p"],
    &["a2", "a2p", "b1", "b1p"],
    &["b1", "b1p", "b2", "b2p"],
];

pub fn vamos_spec() -> MatroidSpec {
    MatroidSpec::SparsePaving {
        labels: owned(&VAMOS_LABELS),
        rank: 4,
        sets: owned_sets(&VAMOS_CIRCUIT_HYPERPLANES),
    }
}

pub fn vamos() -> Matroid {
    Matroid::build(&vamos_spec()).expect("catalog matroid")
}

pub fn vamos_plus_spec() -> MatroidSpec {
    let mut sets = owned_sets(&VAMOS_CIRCUIT_HYPERPLANES);
    sets.push(owned(&["a2", "a2p", "b2", "b2p"]));
    MatroidSpec::SparsePaving {
        labels: owned(&VAMOS_LABELS),
        rank: 4,
        sets,
    }
}

pub fn vamos_plus() -> Matroid {
    Matroid::build(&vamos_plus_spec()).expect("catalog matroid")
}

/// The cycle matroid of a graph: ranks are computed as |vertices touched|
/// minus the number of connected components of the chosen edge set.
pub fn graphic(vertex_count: usize, edges: &[(usize, usize)], labels: &[&str]) -> Matroid {
    assert_eq!(edges.len(), labels.len());
    let ground = GroundSet::from_strs(labels).expect("graphic matroid labels");
    let edges: Vec<(usize, usize)> = edges.to_vec();
    Matroid::from_rank_fn(ground, move |subset: Subset| {
        let mut parent: Vec<usize> = (0..vertex_count).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut rank = 0;
        for e in subset.iter() {
            let (u, v) = edges[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                rank += 1;
            }
        }
        rank
    })
    .expect("graphic rank function is a matroid rank function")
}

pub const K4_LABELS: [&str; 6] = ["12", "13", "14", "23", "24", "34"];

pub const K4_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn k4() -> Matroid {
    graphic(4, &K4_EDGES, &K4_LABELS)
}

pub const PRISM_LABELS: [&str; 9] = ["12", "13", "23", "45", "46", "56", "14", "25", "36"];

pub const PRISM_EDGES: [(usize, usize); 9] = [
    (0, 1),
    (0, 2),
    (1, 2),
    (3, 4),
    (3, 5),
    (4, 5),
    (0, 3),
    (1, 4),
    (2, 5),
];

pub fn prism() -> Matroid {
    graphic(6, &PRISM_EDGES, &PRISM_LABELS)
}

pub fn two_triangles() -> Matroid {
    let spec = MatroidSpec::Circuits {
        labels: owned(&["1", "2", "3", "4", "5", "6"]),
        sets: owned_sets(&[&["1", "2", "3"], &["4", "5", "6"]]),
    };
    Matroid::build(&spec).expect("catalog matroid")
}

/// U_{r,n} on labels "1" … "n".
pub fn uniform(rank: usize, n: usize) -> Result<Matroid, MatroidError> {
    if rank > n {
        return Err(MatroidError::InvalidSpec {
            reason: alloc::format!("uniform matroid needs rank ≤ n, got U_{{{rank},{n}}}"),
        });
    }
    let labels: Vec<String> = (1..=n).map(|i| alloc::format!("{i}")).collect();
    let ground = GroundSet::new(labels)?;
    Matroid::from_rank_fn(ground, move |s: Subset| core::cmp::min(s.len(), rank))
}

/// Looks up a catalog entry by name. `uniform(r,n)` is parsed as a
/// parametric entry.
pub fn get(name: &str) -> Result<Matroid, MatroidError> {
    match name {
        "vamos" => return Ok(vamos()),
        "vamos-plus" => return Ok(vamos_plus()),
        "k4" => return Ok(k4()),
        "prism" => return Ok(prism()),
        "two-triangles" => return Ok(two_triangles()),
        _ => {}
    }
    if let Some(args) = name
        .strip_prefix("uniform(")
        .and_then(|s| s.strip_suffix(')'))
    {
        let mut parts = args.splitn(2, ',');
        let rank = parts
            .next()
            .map(str::trim)
            .and_then(|s| s.parse::<usize>().ok());
        let n = parts
            .next()
            .map(str::trim)
            .and_then(|s| s.parse::<usize>().ok());
        if let (Some(rank), Some(n)) = (rank, n) {
            if (1..=crate::matroid::MAX_SPEC_ELEMENTS).contains(&n) {
                return uniform(rank, n);
            }
            return Err(MatroidError::InvalidSpec {
                reason: alloc::format!("uniform(r,n) needs 1 ≤ n ≤ 20, got n = {n}"),
            });
        }
        return Err(MatroidError::InvalidSpec {
            reason: alloc::format!("cannot parse uniform parameters from \"{name}\""),
        });
    }
    Err(MatroidError::InvalidSpec {
        reason: alloc::format!("unknown catalog entry \"{name}\""),
    })
}
