//! The structured-text (TOML) matroid and plan file formats.
//!
//! Matroid files carry `name`, `elements`, `kind`, `rank` (sparse_paving
//! only), and `sets`. The canonical form orders each set by element index
//! and the set list by (size, index order); [`write_matroid_file`] emits it,
//! so canonically ordered files round-trip byte-identically.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use gutsline_core::{ExtensionRequest, Matroid, MatroidSpec, Subset, TreeExtensionPlan};
use serde::Deserialize;

use crate::report::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatroidFile {
    name: String,
    elements: Vec<String>,
    kind: String,
    rank: Option<usize>,
    sets: Vec<Vec<String>>,
}

/// A parsed, schema-checked matroid file.
#[derive(Debug, Clone)]
pub struct MatroidFile {
    pub name: String,
    pub spec: MatroidSpec,
}

pub fn parse_matroid_file(text: &str) -> Result<MatroidFile, CliError> {
    let raw: RawMatroidFile =
        toml::from_str(text).map_err(|e| CliError::usage("parse", format!("matroid file: {e}")))?;
    let schema = |message: String| CliError::usage("schema", message);

    if raw.name.is_empty() {
        return Err(schema("name must be nonempty".into()));
    }
    for (i, label) in raw.elements.iter().enumerate() {
        if label.is_empty() {
            return Err(schema("element labels must be nonempty".into()));
        }
        if raw.elements[..i].contains(label) {
            return Err(schema(format!("duplicate element label \"{label}\"")));
        }
    }
    for set in &raw.sets {
        for label in set {
            if !raw.elements.contains(label) {
                return Err(schema(format!(
                    "set member \"{label}\" is not a listed element"
                )));
            }
        }
    }

    let spec = match raw.kind.as_str() {
        "circuits" | "bases" => {
            if raw.rank.is_some() {
                return Err(schema(format!(
                    "kind \"{}\" does not take a rank field",
                    raw.kind
                )));
            }
            if raw.kind == "circuits" {
                MatroidSpec::Circuits {
                    labels: raw.elements,
                    sets: raw.sets,
                }
            } else {
                MatroidSpec::Bases {
                    labels: raw.elements,
                    sets: raw.sets,
                }
            }
        }
        "sparse_paving" => {
            let rank = raw
                .rank
                .ok_or_else(|| schema("kind \"sparse_paving\" requires a rank field".into()))?;
            MatroidSpec::SparsePaving {
                labels: raw.elements,
                rank,
                sets: raw.sets,
            }
        }
        other => {
            return Err(schema(format!(
                "unknown kind \"{other}\" (expected circuits, bases, or sparse_paving)"
            )))
        }
    };
    Ok(MatroidFile {
        name: raw.name,
        spec,
    })
}

fn toml_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn toml_string_list(items: &[String]) -> String {
    let quoted: Vec<String> = items.iter().map(|s| toml_string(s)).collect();
    format!("[{}]", quoted.join(", "))
}

/// Canonical matroid-file text for a spec: members in element order, sets
/// ordered by (size, element order).
pub fn write_spec_file(name: &str, spec: &MatroidSpec) -> String {
    let labels = spec.labels();
    let index_of = |label: &String| labels.iter().position(|l| l == label).unwrap();
    let mut sets: Vec<Vec<String>> = spec
        .sets()
        .iter()
        .map(|set| {
            let mut sorted = set.clone();
            sorted.sort_by_key(index_of);
            sorted
        })
        .collect();
    sets.sort_by_key(|set| (set.len(), set.iter().map(index_of).collect::<Vec<usize>>()));

    let mut out = String::new();
    let _ = writeln!(out, "name = {}", toml_string(name));
    let _ = writeln!(out, "elements = {}", toml_string_list(labels));
    let _ = writeln!(out, "kind = {}", toml_string(spec.kind_name()));
    if let MatroidSpec::SparsePaving { rank, .. } = spec {
        let _ = writeln!(out, "rank = {rank}");
    }
    if sets.is_empty() {
        let _ = writeln!(out, "sets = []");
    } else {
        let _ = writeln!(out, "sets = [");
        for set in &sets {
            let _ = writeln!(out, "    {},", toml_string_list(set));
        }
        let _ = writeln!(out, "]");
    }
    out
}

/// Canonical circuits-kind file of an arbitrary matroid: every desk-scale
/// matroid is reproducible from its circuit list.
pub fn write_matroid_file(name: &str, m: &Matroid) -> String {
    let sets: Vec<Vec<String>> = m
        .circuits()
        .iter()
        .map(|&c| m.ground().label_vec(c))
        .collect();
    let spec = MatroidSpec::Circuits {
        labels: m.ground().labels().to_vec(),
        sets,
    };
    write_spec_file(name, &spec)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlanRequest {
    edge: [String; 2],
    #[serde(rename = "Y_strand")]
    y_strand: Vec<String>,
    #[serde(rename = "Z_strand")]
    z_strand: Vec<String>,
    label: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlanFile {
    parts: BTreeMap<String, Vec<String>>,
    tree_edges: Vec<[String; 2]>,
    requests: Vec<RawPlanRequest>,
}

/// Parses a plan file and resolves part names and element labels against a
/// matroid's ground set. Structural plan validity (partition, tree shape,
/// separations) is checked by the extension machinery.
pub fn parse_plan_file(text: &str, m: &Matroid) -> Result<TreeExtensionPlan, CliError> {
    let raw: RawPlanFile =
        toml::from_str(text).map_err(|e| CliError::usage("parse", format!("plan file: {e}")))?;
    let schema = |message: String| CliError::usage("schema", message);

    let mut parts = Vec::new();
    for (name, labels) in &raw.parts {
        let members = m
            .ground()
            .subset_from_labels(labels)
            .map_err(|e| schema(format!("part \"{name}\": {e}")))?;
        parts.push((name.clone(), members));
    }
    let part_index = |name: &str| -> Result<usize, CliError> {
        parts
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| schema(format!("unknown part name \"{name}\"")))
    };

    let mut tree_edges = Vec::new();
    for [u, v] in &raw.tree_edges {
        tree_edges.push((part_index(u)?, part_index(v)?));
    }

    let mut requests = Vec::new();
    for req in &raw.requests {
        let edge = (part_index(&req.edge[0])?, part_index(&req.edge[1])?);
        let y_strand = m
            .ground()
            .subset_from_labels(&req.y_strand)
            .map_err(|e| schema(format!("request \"{}\": {e}", req.label)))?;
        let z_strand = m
            .ground()
            .subset_from_labels(&req.z_strand)
            .map_err(|e| schema(format!("request \"{}\": {e}", req.label)))?;
        requests.push(ExtensionRequest {
            edge,
            y_strand,
            z_strand,
            label: req.label.clone(),
        });
    }

    Ok(TreeExtensionPlan {
        parts,
        tree_edges,
        requests,
    })
}

/// Splits a comma-separated label list from a CLI flag.
pub fn parse_label_list(raw: &str) -> Vec<String> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

/// Resolves a label-list flag to a subset of the matroid's ground set.
pub fn parse_side(m: &Matroid, flag: &str, raw: &str) -> Result<Subset, CliError> {
    m.ground()
        .subset_from_labels(&parse_label_list(raw))
        .map_err(|e| CliError::usage("usage", format!("--{flag}: {e}")))
}
