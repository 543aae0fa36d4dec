//! Machine-readable reports and the exit-code contract.
//!
//! Every command emits one report. Exit code 0 means the affirmative result,
//! 1 a negative verdict (blocked extension, axiom failure, empty oracle),
//! 2 usage, IO, or parse problems. Machine payloads are deterministic:
//! identical inputs and flags give byte-identical JSON.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// A failure that still produces a report; `code` picks the exit status.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub code: u8,
}

impl CliError {
    pub fn usage(kind: &'static str, message: String) -> CliError {
        CliError {
            kind,
            message,
            code: EXIT_USAGE,
        }
    }

    pub fn negative(kind: &'static str, message: String) -> CliError {
        CliError {
            kind,
            message,
            code: EXIT_NEGATIVE,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    /// Where the matroid came from: a path or a `catalog:` reference.
    pub source: String,
    pub name: String,
    /// SHA-256 of the canonical matroid file text below.
    pub digest: String,
    /// Canonical matroid file; re-running the command on this text
    /// reproduces the payload exactly.
    pub canonical: String,
}

#[derive(Debug, Serialize)]
pub struct SeparationEcho {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct WitnessEcho {
    pub a1: Vec<String>,
    pub b1: Vec<String>,
    /// (⊓(A0,B1), ⊓(A1,B0), ⊓(A1,B1)).
    pub values: [usize; 3],
}

#[derive(Debug, Serialize)]
pub struct SubmodularityEcho {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Serialize)]
pub struct BunchEcho {
    pub a_strands: Vec<Vec<String>>,
    pub b_strands: Vec<Vec<String>>,
    pub complete: bool,
}

#[derive(Debug, Serialize)]
pub struct CatalogEntryEcho {
    pub name: String,
    pub description: String,
    pub elements: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Error {
        error: String,
        message: String,
    },
    Validate {
        valid: bool,
        detail: Option<String>,
    },
    Info {
        elements: Vec<String>,
        rank: usize,
        circuit_count: usize,
        flats_by_rank: Vec<usize>,
        loops: Vec<String>,
        coloops: Vec<String>,
    },
    Circuits {
        circuits: Vec<Vec<String>>,
    },
    Separations {
        separations: Vec<SeparationEcho>,
    },
    SeparationCheck {
        a: Vec<String>,
        k: usize,
        exact: bool,
    },
    Strands {
        a_strands: Vec<Vec<String>>,
        b_strands: Vec<Vec<String>>,
        edges: Vec<[usize; 2]>,
        bunches: Vec<BunchEcho>,
    },
    CheckExtend {
        verdict: String,
        witness: Option<WitnessEcho>,
    },
    Extend {
        verdict: String,
        label: Option<String>,
        matroid: Option<String>,
        written: Option<String>,
        witness: Option<WitnessEcho>,
        submodularity: Option<SubmodularityEcho>,
    },
    TreeExtend {
        pins: Vec<String>,
        matroid: String,
        written: Option<String>,
    },
    Oracle {
        count: usize,
        extensions: Vec<String>,
    },
    CatalogList {
        entries: Vec<CatalogEntryEcho>,
    },
    CatalogShow {
        matroid: String,
        written: Option<String>,
    },
}

#[derive(Debug, Serialize)]
pub struct Report {
    /// Echo of the invocation (arguments as given).
    pub command: String,
    pub input: Option<InputEcho>,
    pub payload: Payload,
    pub summary: String,
}

pub fn sha256_hex(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    let mut out = String::with_capacity(64);
    for byte in hash {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

pub fn format_set(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}
