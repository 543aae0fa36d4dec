//! File-based front end: parse matroid files, run analyses and extensions,
//! and emit deterministic reports.

use gutsline_cli::{format, report};

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gutsline_core::{
    catalog, check_guts_extendability, enumerate_exact_3_separations,
    enumerate_guts_extensions_oracle, force_guts_point_extension, guts_point_extension,
    strand_graph, tree_multi_extension, ConnectivityError, ExtensionError, Matroid, MatroidError,
    Subset, Verdict,
};

use format::{
    parse_matroid_file, parse_plan_file, parse_side, write_matroid_file, write_spec_file,
};
use report::{
    format_set, sha256_hex, BunchEcho, CatalogEntryEcho, CliError, InputEcho, Payload, Report,
    SeparationEcho, SubmodularityEcho, WitnessEcho, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Parser)]
#[command(
    name = "gutsline",
    version,
    about = "Decide and construct fixed-element extensions in the guts of exact 3-separations of small matroids"
)]
struct Cli {
    /// Report format: human text or deterministic JSON
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a matroid file and verify the rank axioms
    Validate { input: String },
    /// Ground set, rank, circuit and flat counts
    Info { input: String },
    /// List all circuits
    Circuits { input: String },
    /// Enumerate exact 3-separations, or test one side given via --A
    Separations {
        input: String,
        /// Side to test (comma-separated labels); omit to enumerate
        #[arg(long = "A", value_name = "LABELS")]
        a: Option<String>,
        /// Separation order for the --A test
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Strands and the strand graph of an exact 3-separation
    Strands {
        input: String,
        #[arg(long = "A", value_name = "LABELS")]
        a: String,
        /// Defaults to the complement of --A
        #[arg(long = "B", value_name = "LABELS")]
        b: Option<String>,
    },
    /// Decide whether an extension pinning A0 to B0 exists
    CheckExtend {
        input: String,
        #[arg(long = "A", value_name = "LABELS")]
        a: String,
        #[arg(long = "B", value_name = "LABELS")]
        b: Option<String>,
        #[arg(long = "A0", value_name = "LABELS")]
        a0: String,
        #[arg(long = "B0", value_name = "LABELS")]
        b0: String,
    },
    /// Construct the extension pinning A0 to B0 and write it as a matroid file
    Extend {
        input: String,
        #[arg(long = "A", value_name = "LABELS")]
        a: String,
        #[arg(long = "B", value_name = "LABELS")]
        b: Option<String>,
        #[arg(long = "A0", value_name = "LABELS")]
        a0: String,
        #[arg(long = "B0", value_name = "LABELS")]
        b0: String,
        /// Label for the new element
        #[arg(long, default_value = "p")]
        label: String,
        #[arg(short = 'o', long = "output", value_name = "PATH")]
        output: Option<PathBuf>,
        /// Diagnostic: run the construction even past a blocked verdict to
        /// surface the submodularity violation
        #[arg(long = "force-build")]
        force_build: bool,
    },
    /// Run a multi-extension plan along a tree of separations
    TreeExtend {
        input: String,
        #[arg(long, value_name = "PATH")]
        plan: PathBuf,
        #[arg(short = 'o', long = "output", value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Exhaustively enumerate all extensions pinning A0 to B0
    Oracle {
        input: String,
        #[arg(long = "A", value_name = "LABELS")]
        a: String,
        #[arg(long = "B", value_name = "LABELS")]
        b: Option<String>,
        #[arg(long = "A0", value_name = "LABELS")]
        a0: String,
        #[arg(long = "B0", value_name = "LABELS")]
        b0: String,
    },
    /// List built-in matroids, or emit one as a matroid file
    Catalog {
        name: Option<String>,
        #[arg(short = 'o', long = "output", value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

struct Loaded {
    echo: InputEcho,
    matroid: Matroid,
}

fn matroid_error(e: MatroidError) -> CliError {
    match e {
        MatroidError::NotAMatroid { ref witness } => {
            CliError::negative("not-a-matroid", format!("not a matroid: {witness}"))
        }
        MatroidError::InvalidSpec { .. } => CliError::usage("schema", e.to_string()),
        other => CliError::usage("usage", other.to_string()),
    }
}

fn extension_error(e: ExtensionError) -> CliError {
    match e {
        ExtensionError::NotExtendable { .. }
        | ExtensionError::SubmodularityFailure { .. }
        | ExtensionError::StepBlocked { .. } => CliError::negative("blocked", e.to_string()),
        ExtensionError::PlanInvalid { .. } => CliError::usage("schema", e.to_string()),
        other => CliError::usage("usage", other.to_string()),
    }
}

/// Resolves `catalog:NAME` or a file path to (echo, axiom-checked build).
fn load_parsed(input: &str) -> Result<(InputEcho, Result<Matroid, MatroidError>), CliError> {
    if let Some(name) = input.strip_prefix("catalog:") {
        let matroid = catalog::get(name).map_err(|e| CliError::usage("usage", e.to_string()))?;
        let canonical = write_matroid_file(name, &matroid);
        let echo = InputEcho {
            source: input.to_string(),
            name: name.to_string(),
            digest: sha256_hex(&canonical),
            canonical,
        };
        return Ok((echo, Ok(matroid)));
    }
    let text = fs::read_to_string(input)
        .map_err(|e| CliError::usage("io", format!("cannot read {input}: {e}")))?;
    let file = parse_matroid_file(&text)?;
    let canonical = write_spec_file(&file.name, &file.spec);
    let echo = InputEcho {
        source: input.to_string(),
        name: file.name.clone(),
        digest: sha256_hex(&canonical),
        canonical,
    };
    Ok((echo, Matroid::build(&file.spec)))
}

fn load(input: &str) -> Result<Loaded, CliError> {
    let (echo, build) = load_parsed(input)?;
    let matroid = build.map_err(matroid_error)?;
    Ok(Loaded { echo, matroid })
}

fn side_pair(m: &Matroid, a_raw: &str, b_raw: Option<&str>) -> Result<(Subset, Subset), CliError> {
    let a = parse_side(m, "A", a_raw)?;
    let b = match b_raw {
        Some(raw) => parse_side(m, "B", raw)?,
        None => a.complement(m.size()),
    };
    Ok((a, b))
}

fn witness_echo(w: &gutsline_core::BlockedWitness) -> WitnessEcho {
    WitnessEcho {
        a1: w.a1_labels.clone(),
        b1: w.b1_labels.clone(),
        values: w.values,
    }
}

fn write_output(path: &PathBuf, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::usage("io", format!("cannot write {}: {e}", path.display())))
}

struct Outcome {
    input: Option<InputEcho>,
    payload: Payload,
    summary: String,
    code: u8,
}

#[allow(clippy::result_large_err)] // called once; the error is the final report
fn run(command: &Command) -> Result<Outcome, (Option<InputEcho>, CliError)> {
    match command {
        Command::Validate { input } => {
            let (echo, build) = load_parsed(input).map_err(|e| (None, e))?;
            match build {
                Ok(m) => {
                    let summary = format!(
                        "valid: \"{}\" is a matroid of rank {} on {} elements",
                        echo.name,
                        m.rank_of_ground(),
                        m.size()
                    );
                    Ok(Outcome {
                        input: Some(echo),
                        payload: Payload::Validate {
                            valid: true,
                            detail: None,
                        },
                        summary,
                        code: EXIT_OK,
                    })
                }
                Err(MatroidError::NotAMatroid { witness }) => Ok(Outcome {
                    input: Some(echo),
                    payload: Payload::Validate {
                        valid: false,
                        detail: Some(witness.to_string()),
                    },
                    summary: format!("invalid: not a matroid: {witness}"),
                    code: EXIT_NEGATIVE,
                }),
                Err(other) => Err((Some(echo), matroid_error(other))),
            }
        }

        Command::Info { input } => {
            let loaded = load(input).map_err(|e| (None, e))?;
            let m = &loaded.matroid;
            let flats_by_rank: Vec<usize> = m
                .flats_by_rank()
                .iter()
                .map(|bucket| bucket.len())
                .collect();
            let loops = m.ground().label_vec(m.loops());
            let coloops: Vec<String> = (0..m.size())
                .filter(|&e| m.rank(m.full_set().without(e)) < m.rank_of_ground())
                .map(|e| m.ground().label(e).to_string())
                .collect();
            let summary = format!(
                "\"{}\": rank {} on {} elements, {} circuits, {} flats",
                loaded.echo.name,
                m.rank_of_ground(),
                m.size(),
                m.circuits().len(),
                flats_by_rank.iter().sum::<usize>(),
            );
            Ok(Outcome {
                payload: Payload::Info {
                    elements: m.ground().labels().to_vec(),
                    rank: m.rank_of_ground(),
                    circuit_count: m.circuits().len(),
                    flats_by_rank,
                    loops,
                    coloops,
                },
                input: Some(loaded.echo),
                summary,
                code: EXIT_OK,
            })
        }

        Command::Circuits { input } => {
            let loaded = load(input).map_err(|e| (None, e))?;
            let m = &loaded.matroid;
            let circuits: Vec<Vec<String>> = m
                .circuits()
                .iter()
                .map(|&c| m.ground().label_vec(c))
                .collect();
            let summary = format!("\"{}\" has {} circuits", loaded.echo.name, circuits.len());
            Ok(Outcome {
                input: Some(loaded.echo),
                payload: Payload::Circuits { circuits },
                summary,
                code: EXIT_OK,
            })
        }

        Command::Separations { input, a, k } => {
            let loaded = load(input).map_err(|e| (None, e))?;
            let m = &loaded.matroid;
            if let Some(a_raw) = a {
                if *k < 1 {
                    return Err((
                        Some(loaded.echo),
                        CliError::usage("usage", "--k must be at least 1".into()),
                    ));
                }
                let side = match parse_side(m, "A", a_raw) {
                    Ok(s) => s,
                    Err(e) => return Err((Some(loaded.echo), e)),
                };
                let exact = m.is_exact_k_separation(side, *k);
                let summary = format!(
                    "{} {} an exact {k}-separation of \"{}\"",
                    m.ground().format_subset(side),
                    if exact { "is" } else { "is not" },
                    loaded.echo.name
                );
                return Ok(Outcome {
                    payload: Payload::SeparationCheck {
                        a: m.ground().label_vec(side),
                        k: *k,
                        exact,
                    },
                    input: Some(loaded.echo),
                    summary,
                    code: if exact { EXIT_OK } else { EXIT_NEGATIVE },
                });
            }
            if *k != 3 {
                return Err((
                    Some(loaded.echo),
                    CliError::usage(
                        "usage",
                        "enumeration supports only k = 3; use --A to test other orders".into(),
                    ),
                ));
            }
            let seps = match enumerate_exact_3_separations(m) {
                Ok(seps) => seps,
                Err(e @ ConnectivityError::TooLarge { .. }) => {
                    return Err((Some(loaded.echo), CliError::usage("usage", e.to_string())))
                }
            };
            let separations: Vec<SeparationEcho> = seps
                .iter()
                .map(|s| SeparationEcho {
                    a: m.ground().label_vec(s.a),
                    b: m.ground().label_vec(s.b),
                })
                .collect();
            let summary = format!(
                "\"{}\" has {} exact 3-separations",
                loaded.echo.name,
                separations.len()
            );
            Ok(Outcome {
                input: Some(loaded.echo),
                payload: Payload::Separations { separations },
                summary,
                code: EXIT_OK,
            })
        }

        Command::Strands { input, a, b } => {
            let loaded = load(input).map_err(|e| (None, e))?;
            let m = &loaded.matroid;
            let (a, b) = match side_pair(m, a, b.as_deref()) {
                Ok(p) => p,
                Err(e) => return Err((Some(loaded.echo), e)),
            };
            let graph = match strand_graph(m, a, b) {
                Ok(g) => g,
                Err(e) => return Err((Some(loaded.echo), CliError::usage("usage", e.to_string()))),
            };
            let bunches: Vec<BunchEcho> = graph
                .bunches()
                .iter()
                .map(|bunch| BunchEcho {
                    a_strands: bunch
                        .a_indices
                        .iter()
                        .map(|&i| m.ground().label_vec(graph.a_strands[i].members))
                        .collect(),
                    b_strands: bunch
                        .b_indices
                        .iter()
                        .map(|&j| m.ground().label_vec(graph.b_strands[j].members))
                        .collect(),
                    complete: bunch.is_complete(),
                })
                .collect();
            let summary = format!(
                "{} A-strands, {} B-strands, {} edges, {} bunches",
                graph.a_strands.len(),
                graph.b_strands.len(),
                graph.edges.len(),
                bunches.len()
            );
            Ok(Outcome {
                payload: Payload::Strands {
                    a_strands: graph
                        .a_strands
                        .iter()
                        .map(|s| m.ground().label_vec(s.members))
                        .collect(),
                    b_strands: graph
                        .b_strands
                        .iter()
                        .map(|s| m.ground().label_vec(s.members))
                        .collect(),
                    edges: graph.edges.iter().map(|&(i, j)| [i, j]).collect(),
                    bunches,
                },
                input: Some(loaded.echo),
                summary,
                code: EXIT_OK,
            })
        }

        Command::CheckExtend {
            input,
            a,
            b,
            a0,
            b0,
        } => {
            let loaded = load(input).map_err(|e| (None, e))?;
            let m = &loaded.matroid;
            let parsed = (|| {
                let (a, b) = side_pair(m, a, b.as_deref())?;
                let a0 = parse_side(m, "A0", a0)?;
                let b0 = parse_side(m, "B0", b0)?;
                Ok((a, b, a0, b0))
            })();
            let (a, b, a0, b0) = match parsed {
                Ok(t) => t,
                Err(e) => return Err((Some(loaded.echo), e)),
            };
            let verdict = match check_guts_extendability(m, a, b, a0, b0) {
                Ok(v) => v,
                Err(e) => return Err((Some(loaded.echo), extension_error(e))),
            };
            match verdict {
                Verdict::Extendable => Ok(Outcome {
                    summary: format!(
                        "extendable: a point pinning {} to {} exists and is unique",
                        m.ground().format_subset(a0),
                        m.ground().format_subset(b0)
                    ),
                    input: Some(loaded.echo),
                    payload: Payload::CheckExtend {
                        verdict: "extendable".into(),
                        witness: None,
                    },
                    code: EXIT_OK,
                }),
                Verdict::Blocked(w) => Ok(Outcome {
                    summary: format!("blocked: {w}"),
                    input: Some(loaded.echo),
                    payload: Payload::CheckExtend {
                        verdict: "blocked".into(),
                        witness: Some(witness_echo(&w)),
                    },
                    code: EXIT_NEGATIVE,
                }),
            }
        }

        Command::Extend {
            input,
            a,
            b,
            a0,
            b0,
            label,
            output,
            force_build,
        } => {
            let loaded = load(input).map_err(|e| (None, e))?;
            let m = &loaded.matroid;
            let parsed = (|| {
                let (a, b) = side_pair(m, a, b.as_deref())?;
                let a0 = parse_side(m, "A0", a0)?;
                let b0 = parse_side(m, "B0", b0)?;
                Ok((a, b, a0, b0))
            })();
            let (a, b, a0, b0) = match parsed {
                Ok(t) => t,
                Err(e) => return Err((Some(loaded.echo), e)),
            };
            let built = if *force_build {
                force_guts_point_extension(m, a, b, a0, b0, label)
            } else {
                guts_point_extension(m, a, b, a0, b0, label)
            };
            match built {
                Ok(result) => {
                    let out_name = format!("{}+{}", loaded.echo.name, result.p);
                    let text = write_matroid_file(&out_name, &result.mp);
                    let written = match output {
                        Some(path) => {
                            if let Err(e) = write_output(path, &text) {
                                return Err((Some(loaded.echo), e));
                            }
                            Some(path.display().to_string())
                        }
                        None => None,
                    };
                    Ok(Outcome {
                        summary: format!(
                            "extended \"{}\" by \"{}\": {} and {} are circuits",
                            loaded.echo.name,
                            result.p,
                            m.ground().format_subset(a0),
                            m.ground().format_subset(b0),
                        ),
                        input: Some(loaded.echo),
                        payload: Payload::Extend {
                            verdict: "extended".into(),
                            label: Some(result.p),
                            matroid: Some(text),
                            written,
                            witness: None,
                            submodularity: None,
                        },
                        code: EXIT_OK,
                    })
                }
                Err(ExtensionError::NotExtendable { witness }) => Ok(Outcome {
                    summary: format!("blocked: {witness}"),
                    input: Some(loaded.echo),
                    payload: Payload::Extend {
                        verdict: "blocked".into(),
                        label: None,
                        matroid: None,
                        written: None,
                        witness: Some(witness_echo(&witness)),
                        submodularity: None,
                    },
                    code: EXIT_NEGATIVE,
                }),
                Err(ExtensionError::SubmodularityFailure { witness }) => Ok(Outcome {
                    summary: format!("forced build failed as expected: {witness}"),
                    input: Some(loaded.echo),
                    payload: Payload::Extend {
                        verdict: "submodularity-failure".into(),
                        label: None,
                        matroid: None,
                        written: None,
                        witness: None,
                        submodularity: Some(SubmodularityEcho {
                            first: witness.first.clone(),
                            second: witness.second.clone().unwrap_or_default(),
                            lhs: witness.lhs,
                            rhs: witness.rhs,
                        }),
                    },
                    code: EXIT_NEGATIVE,
                }),
                Err(other) => Err((Some(loaded.echo), extension_error(other))),
            }
        }

        Command::TreeExtend {
            input,
            plan,
            output,
        } => {
            let loaded = load(input).map_err(|e| (None, e))?;
            let m = &loaded.matroid;
            let plan_text = match fs::read_to_string(plan) {
                Ok(t) => t,
                Err(e) => {
                    return Err((
                        Some(loaded.echo),
                        CliError::usage("io", format!("cannot read {}: {e}", plan.display())),
                    ))
                }
            };
            let plan = match parse_plan_file(&plan_text, m) {
                Ok(p) => p,
                Err(e) => return Err((Some(loaded.echo), e)),
            };
            let extended = match tree_multi_extension(m, &plan) {
                Ok(ext) => ext,
                Err(e) => return Err((Some(loaded.echo), extension_error(e))),
            };
            let pins: Vec<String> = extended.ground().labels()[m.size()..].to_vec();
            let mut out_name = loaded.echo.name.clone();
            for pin in &pins {
                out_name.push('+');
                out_name.push_str(pin);
            }
            let text = write_matroid_file(&out_name, &extended);
            let written = match output {
                Some(path) => {
                    if let Err(e) = write_output(path, &text) {
                        return Err((Some(loaded.echo), e));
                    }
                    Some(path.display().to_string())
                }
                None => None,
            };
            Ok(Outcome {
                summary: format!(
                    "extended \"{}\" by {} pinned elements: {}",
                    loaded.echo.name,
                    pins.len(),
                    pins.join(", ")
                ),
                input: Some(loaded.echo),
                payload: Payload::TreeExtend {
                    pins,
                    matroid: text,
                    written,
                },
                code: EXIT_OK,
            })
        }

        Command::Oracle {
            input,
            a,
            b,
            a0,
            b0,
        } => {
            let loaded = load(input).map_err(|e| (None, e))?;
            let m = &loaded.matroid;
            let parsed = (|| {
                let (a, b) = side_pair(m, a, b.as_deref())?;
                let a0 = parse_side(m, "A0", a0)?;
                let b0 = parse_side(m, "B0", b0)?;
                Ok((a, b, a0, b0))
            })();
            let (a, b, a0, b0) = match parsed {
                Ok(t) => t,
                Err(e) => return Err((Some(loaded.echo), e)),
            };
            let found = match enumerate_guts_extensions_oracle(m, a, b, a0, b0) {
                Ok(list) => list,
                Err(e) => return Err((Some(loaded.echo), extension_error(e))),
            };
            let extensions: Vec<String> = found
                .iter()
                .map(|ext| write_matroid_file(&format!("{}+p", loaded.echo.name), ext))
                .collect();
            let count = extensions.len();
            let summary = if count == 0 {
                format!(
                    "no extension of \"{}\" pins {} to {}",
                    loaded.echo.name,
                    m.ground().format_subset(a0),
                    m.ground().format_subset(b0)
                )
            } else {
                format!("{count} extension(s) found by exhaustive search")
            };
            Ok(Outcome {
                input: Some(loaded.echo),
                payload: Payload::Oracle { count, extensions },
                summary,
                code: if count == 0 { EXIT_NEGATIVE } else { EXIT_OK },
            })
        }

        Command::Catalog { name, output } => match name {
            None => {
                let entries: Vec<CatalogEntryEcho> = catalog::ENTRIES
                    .iter()
                    .map(|&(name, description)| CatalogEntryEcho {
                        name: name.to_string(),
                        description: description.to_string(),
                        elements: catalog::get(name)
                            .expect("catalog entry")
                            .ground()
                            .labels()
                            .to_vec(),
                    })
                    .collect();
                Ok(Outcome {
                    input: None,
                    summary: format!(
                        "{} fixed entries plus the uniform(r,n) generator",
                        entries.len()
                    ),
                    payload: Payload::CatalogList { entries },
                    code: EXIT_OK,
                })
            }
            Some(name) => {
                let m = catalog::get(name)
                    .map_err(|e| (None, CliError::usage("usage", e.to_string())))?;
                let text = write_matroid_file(name, &m);
                let written = match output {
                    Some(path) => {
                        if let Err(e) = write_output(path, &text) {
                            return Err((None, e));
                        }
                        Some(path.display().to_string())
                    }
                    None => None,
                };
                Ok(Outcome {
                    input: None,
                    summary: format!(
                        "\"{name}\": rank {} on {} elements",
                        m.rank_of_ground(),
                        m.size()
                    ),
                    payload: Payload::CatalogShow {
                        matroid: text,
                        written,
                    },
                    code: EXIT_OK,
                })
            }
        },
    }
}

fn render_text(report: &Report) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "{}", report.summary);
    match &report.payload {
        Payload::Circuits { circuits } => {
            for c in circuits {
                let _ = writeln!(out, "  {}", format_set(c));
            }
        }
        Payload::Separations { separations } => {
            for s in separations {
                let _ = writeln!(out, "  {} | {}", format_set(&s.a), format_set(&s.b));
            }
        }
        Payload::Strands {
            a_strands,
            b_strands,
            bunches,
            ..
        } => {
            let _ = writeln!(out, "A-strands:");
            for s in a_strands {
                let _ = writeln!(out, "  {}", format_set(s));
            }
            let _ = writeln!(out, "B-strands:");
            for s in b_strands {
                let _ = writeln!(out, "  {}", format_set(s));
            }
            for (i, bunch) in bunches.iter().enumerate() {
                let sets: Vec<String> = bunch
                    .a_strands
                    .iter()
                    .chain(&bunch.b_strands)
                    .map(|s| format_set(s))
                    .collect();
                let _ = writeln!(
                    out,
                    "bunch {}: {} ({})",
                    i,
                    sets.join(" "),
                    if bunch.complete {
                        "complete"
                    } else {
                        "incomplete"
                    }
                );
            }
        }
        Payload::Info {
            elements,
            flats_by_rank,
            loops,
            coloops,
            ..
        } => {
            let _ = writeln!(out, "elements: {}", elements.join(", "));
            let _ = writeln!(out, "flats by rank: {flats_by_rank:?}");
            if !loops.is_empty() {
                let _ = writeln!(out, "loops: {}", loops.join(", "));
            }
            if !coloops.is_empty() {
                let _ = writeln!(out, "coloops: {}", coloops.join(", "));
            }
        }
        Payload::Extend {
            matroid: Some(text),
            written: None,
            ..
        }
        | Payload::TreeExtend {
            matroid: text,
            written: None,
            ..
        } => {
            let _ = write!(out, "{text}");
        }
        Payload::CatalogShow {
            matroid,
            written: None,
        } => {
            let _ = write!(out, "{matroid}");
        }
        Payload::CatalogList { entries } => {
            for e in entries {
                let _ = writeln!(out, "  {} - {}", e.name, e.description);
                let _ = writeln!(out, "    elements: {}", e.elements.join(", "));
            }
            let _ = writeln!(
                out,
                "  uniform(r,n) - uniform matroid of rank r on elements 1..n"
            );
        }
        Payload::Oracle { extensions, .. } => {
            for (i, text) in extensions.iter().enumerate() {
                let _ = writeln!(out, "--- extension {} ---", i + 1);
                let _ = write!(out, "{text}");
            }
        }
        _ => {}
    }
    out
}

/// Writes the rendered report, tolerating a closed pipe on the read side.
fn emit(text: &str, to_stderr: bool) {
    use std::io::Write;
    let outcome = if to_stderr {
        std::io::stderr().write_all(text.as_bytes())
    } else {
        std::io::stdout().write_all(text.as_bytes())
    };
    if let Err(e) = outcome {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            panic!("failed writing report: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_echo: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");

    let (report, code) = match run(&cli.command) {
        Ok(outcome) => (
            Report {
                command: command_echo,
                input: outcome.input,
                payload: outcome.payload,
                summary: outcome.summary,
            },
            outcome.code,
        ),
        Err((input, error)) => (
            Report {
                command: command_echo,
                input,
                summary: error.message.clone(),
                payload: Payload::Error {
                    error: error.kind.to_string(),
                    message: error.message,
                },
            },
            error.code,
        ),
    };

    match cli.format {
        Format::Machine => {
            let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
            json.push('\n');
            emit(&json, false);
        }
        Format::Text => {
            if code == EXIT_USAGE {
                emit(&format!("error: {}\n", report.summary), true);
            } else {
                emit(&render_text(&report), false);
            }
        }
    }
    ExitCode::from(code)
}
