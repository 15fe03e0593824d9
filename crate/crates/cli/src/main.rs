//! `wreathlab`: batch front end over the wreathlab library.
//!
//! Every subcommand reads JSON input files, calls one library operation and
//! prints either a plain text table or the library's JSON structures.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wreathlab::actions::{clique_orbits, stabilizer_of_clique, Action, DEFAULT_ELEMENT_CAP};
use wreathlab::graphs::{enumerate_cliques, flag_complex, SimpleGraph};
use wreathlab::homology::{homology_all, homology_of, ChainComplex};
use wreathlab::houghton::{transitivity_witness, HoughtonElement, RayPoint};
use wreathlab::lhs_decomp::{
    induced_clique_map, mapping_torus_homology, nakaoka_decomposition, GraphAutomorphism,
};
use wreathlab::polyprod::{build_polyprod, check_star_hypothesis, default_dim_cap, polyprod_json, raag_homology, CellModel};
use wreathlab::presentations::{abelianization, graph_wreath_presentation, parse_stabilizer_words, Presentation};
use wreathlab::verdict::{classify, Catalog, GroupSpec, VerdictAction};
use wreathlab::{Error, Result};

const DEFAULT_SEARCH_CAP: usize = 100_000;

#[derive(Parser)]
#[command(name = "wreathlab", version, about = "Graph-wreath products: cliques, homology, presentations and F_n verdicts")]
struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Resource cap: group order for finite actions, visited sets for
    /// Houghton searches.
    #[arg(long, env = "WREATHLAB_CAP", global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the p-cliques of a graph.
    Cliques {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Simplex counts of the flag complex.
    Flag {
        #[arg(long)]
        graph: PathBuf,
        /// Top simplex dimension (default: clique number − 1).
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Orbits of p-cliques under an action, with stabilizers.
    Orbits {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Setwise stabilizer of one clique (vertex names, or `v,i` for shifts).
    Stabilizer {
        #[arg(long)]
        action: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        clique: Vec<String>,
    },
    /// Homology of a chain complex file.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        /// Single degree; all degrees when omitted.
        #[arg(long)]
        dim: Option<i64>,
    },
    /// Cells and boundary matrices of a polyhedral product X^L, L = flag(Γ).
    Polyprod {
        #[arg(long)]
        graph: PathBuf,
        /// circle, wedge2, projective_plane, torus, or a cell model file.
        #[arg(long, default_value = "circle")]
        model: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// H_p of the right-angled Artin group on Γ.
    Raag {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Whether the quotient differentials vanish for a cell model.
    StarCheck {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "circle")]
        model: String,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Signed permutation induced by an automorphism on p-clique homology.
    InducedMap {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// H_p of the mapping torus of φ on the Salvetti-type complex.
    Wang {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// H_p of B ⋊_φ Z from Tor over Z[t, t^-1].
    Nakaoka {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Also compute the mapping torus and compare.
        #[arg(long)]
        check: bool,
    },
    /// Finite presentation of A ≀_Γ H.
    Present {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "H")]
        h: PathBuf,
        #[arg(long)]
        action: PathBuf,
        /// Stabilizer words keyed by vertex-orbit representative.
        #[arg(long)]
        stabilizers: Option<PathBuf>,
    },
    /// Abelianization of a presented group.
    Abelianize {
        #[arg(long)]
        group: PathBuf,
    },
    /// F_n verdict for A ≀_Γ H.
    Classify {
        /// `catalog:<tag>`, `catalog:raag:<graph file>`, or a group file.
        #[arg(long = "A")]
        a: String,
        #[arg(long = "H")]
        h: String,
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        n: u32,
    },
    /// Houghton elements: print one on a window, or search for a witness
    /// mapping one finite set onto another.
    Houghton {
        #[arg(long, conflicts_with_all = ["source", "target"])]
        element: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        window: u64,
        #[arg(long)]
        n: Option<u32>,
        /// Ray points `ray,pos`.
        #[arg(long, num_args = 1.., requires = "target")]
        source: Vec<String>,
        #[arg(long, num_args = 1.., requires = "source")]
        target: Vec<String>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<SimpleGraph> {
    SimpleGraph::from_json(&read(path)?)
}

fn load_model(spec: &str) -> Result<CellModel> {
    match spec {
        "circle" | "wedge2" | "projective_plane" | "torus" => CellModel::named(spec),
        path => CellModel::from_json(&read(Path::new(path))?),
    }
}

fn load_group(spec: &str) -> Result<GroupSpec> {
    match spec.strip_prefix("catalog:") {
        Some(tag) => match tag.strip_prefix("raag:") {
            Some(path) => Ok(GroupSpec::catalog(Catalog::Raag(load_graph(Path::new(path))?))),
            None => Ok(GroupSpec::catalog(Catalog::parse(tag)?)),
        },
        None => GroupSpec::from_json(&read(Path::new(spec))?),
    }
}

fn ray_points(items: &[String]) -> Result<BTreeSet<RayPoint>> {
    items.iter().map(|s| RayPoint::parse(s)).collect()
}

/// Rendered output: text lines for table mode and a JSON value.
struct Output {
    lines: Vec<String>,
    json: Value,
}

fn run(cli: &Cli) -> Result<Output> {
    let element_cap = cli.cap.unwrap_or(DEFAULT_ELEMENT_CAP);
    Ok(match &cli.command {
        Command::Cliques { graph, dim } => {
            let g = load_graph(graph)?;
            let cliques: Vec<String> = enumerate_cliques(&g, *dim).iter().map(|c| g.format_clique(c)).collect();
            let mut lines = vec![format!("{} clique(s) of size {dim}", cliques.len())];
            lines.extend(cliques.iter().cloned());
            Output { lines, json: json!({ "p": dim, "cliques": cliques }) }
        }
        Command::Flag { graph, dim } => {
            let g = load_graph(graph)?;
            let cap = dim.unwrap_or_else(|| g.clique_number().saturating_sub(1));
            let l = flag_complex(&g, cap);
            let counts: Vec<usize> = (-1..=cap as isize).map(|d| l.count(d)).collect();
            let lines = counts.iter().zip(-1..).map(|(c, d)| format!("dim {d}: {c} simplices")).collect();
            let simplices: Vec<Vec<String>> = (-1..=cap as isize)
                .map(|d| l.simplices(d).iter().map(|c| g.format_clique(c)).collect())
                .collect();
            Output { lines, json: json!({ "dim_cap": cap, "counts": counts, "simplices": simplices }) }
        }
        Command::Orbits { action, dim } => {
            let act = Action::from_json(&read(action)?, element_cap)?;
            let report = clique_orbits(&act, *dim)?;
            let mut lines = vec![format!("orbits of {dim}-cliques: {}", report.orbit_count)];
            for (r, s) in report.representatives.iter().zip(&report.stabilizers) {
                lines.push(format!("  {}  stabilizer: {s}", act.format_rep(r)));
            }
            if !report.exhaustive {
                lines.push("  (sample of distinct orbits)".into());
            }
            Output { lines, json: act.report_json(&report) }
        }
        Command::Stabilizer { action, clique } => {
            let act = Action::from_json(&read(action)?, element_cap)?;
            let rep = act.parse_clique(clique)?;
            let s = stabilizer_of_clique(&act, &rep)?;
            Output { lines: vec![format!("stabilizer of {}: {s}", act.format_rep(&rep))], json: act.stabilizer_json(&s) }
        }
        Command::Homology { complex, dim } => {
            let c = ChainComplex::from_json(&read(complex)?)?;
            let groups = match dim {
                Some(p) => vec![(*p, homology_of(&c, *p)?)],
                None => homology_all(&c),
            };
            homology_output(&groups)
        }
        Command::Polyprod { graph, model, dim } => {
            let g = load_graph(graph)?;
            let x = load_model(model)?;
            let l = flag_complex(&g, g.vertex_count());
            let product = build_polyprod(&l, &x, dim.unwrap_or_else(|| default_dim_cap(&l, &x)))?;
            let lines = product
                .cells
                .iter()
                .enumerate()
                .map(|(d, cells)| {
                    let names: Vec<String> = cells.iter().map(|c| c.format(&g)).collect();
                    format!("dim {d}: {} cell(s)  {}", cells.len(), names.join(" "))
                })
                .collect();
            Output { lines, json: polyprod_json(&product, &g) }
        }
        Command::Raag { graph, dim } => {
            let g = load_graph(graph)?;
            homology_output(&[(*dim as i64, raag_homology(&g, *dim)?)])
        }
        Command::StarCheck { graph, model, dim } => {
            let g = load_graph(graph)?;
            let x = load_model(model)?;
            let l = flag_complex(&g, g.vertex_count());
            let cap = dim.unwrap_or_else(|| default_dim_cap(&l, &x));
            let holds = check_star_hypothesis(&l, &x, cap)?;
            Output {
                lines: vec![format!("quotient differentials vanish up to dimension {cap}: {holds}")],
                json: json!({ "dim_cap": cap, "holds": holds }),
            }
        }
        Command::InducedMap { graph, phi, dim } => {
            let g = load_graph(graph)?;
            let phi = GraphAutomorphism::from_json(&g, &read(phi)?)?;
            let map = induced_clique_map(&g, &phi, *dim)?;
            let basis: Vec<String> = map.basis.iter().map(|c| g.format_clique(c)).collect();
            let mut lines = vec![format!("basis: {}", basis.join(" "))];
            lines.extend(map.matrix.to_string().lines().map(str::to_string));
            Output { lines, json: map.to_json(&g) }
        }
        Command::Wang { graph, phi, dim } => {
            let g = load_graph(graph)?;
            let phi = GraphAutomorphism::from_json(&g, &read(phi)?)?;
            homology_output(&[(*dim as i64, mapping_torus_homology(&g, &phi, *dim)?)])
        }
        Command::Nakaoka { graph, phi, dim, check } => {
            let g = load_graph(graph)?;
            let phi = GraphAutomorphism::from_json(&g, &read(phi)?)?;
            let h = nakaoka_decomposition(&g, &phi, *dim)?;
            if *check {
                let oracle = mapping_torus_homology(&g, &phi, *dim)?;
                if oracle != h {
                    return Err(Error::Invariant(format!(
                        "decomposition {h} disagrees with the mapping torus {oracle} in degree {dim}"
                    )));
                }
                Output {
                    lines: vec![format!("{h}, oracle agreement: OK")],
                    json: json!({ "p": dim, "group": h.to_json(), "oracle": oracle.to_json(), "agreement": true }),
                }
            } else {
                Output { lines: vec![h.to_string()], json: json!({ "p": dim, "group": h.to_json() }) }
            }
        }
        Command::Present { a, h, action, stabilizers } => {
            let a = Presentation::from_json(&read(a)?)?;
            let h = Presentation::from_json(&read(h)?)?;
            let act = Action::from_json(&read(action)?, element_cap)?;
            let words = match stabilizers {
                Some(path) => Some(parse_stabilizer_words(&act, &h, &read(path)?)?),
                None => None,
            };
            let p = graph_wreath_presentation(&act, &a, &h, words.as_deref())?;
            Output { lines: p.to_string().lines().map(str::to_string).collect(), json: p.to_json() }
        }
        Command::Abelianize { group } => {
            let p = Presentation::from_json(&read(group)?)?;
            let ab = abelianization(&p);
            Output { lines: vec![ab.to_string()], json: ab.to_json() }
        }
        Command::Classify { a, h, action, n } => {
            let a = load_group(a)?;
            let h = load_group(h)?;
            let act = VerdictAction::from_json(&read(action)?, element_cap)?;
            let v = classify(&a, &h, &act, *n)?;
            let mut lines = vec![v.subject.clone(), v.finiteness.to_string(), "trace:".into()];
            for e in &v.trace {
                let n = e.n.map_or("∞".to_string(), |n| n.to_string());
                let p = e.p.map_or(String::new(), |p| format!(" p={p}"));
                lines.push(format!("  {} n={n}{p}: {} => {}", e.rule, e.condition, e.outcome));
            }
            for s in &v.assumptions {
                lines.push(format!("assumption: {s}"));
            }
            Output { lines, json: v.to_json() }
        }
        Command::Houghton { element, window, n, source, target } => match element {
            Some(path) => {
                let e = HoughtonElement::from_json(&read(path)?)?;
                let mut lines = vec![e.to_string()];
                lines.extend(e.window_table(*window)?);
                Output { lines, json: e.to_json() }
            }
            None => {
                let n = n.ok_or_else(|| Error::Domain("a witness search needs --n".into()))?;
                if source.is_empty() {
                    return Err(Error::Domain("give either --element or --source/--target".into()));
                }
                let (src, tgt) = (ray_points(source)?, ray_points(target)?);
                let cap = cli.cap.unwrap_or(DEFAULT_SEARCH_CAP);
                let cap = i64::try_from(cap).map_err(|_| Error::Domain("search cap too large".into()))?;
                match transitivity_witness(n, &src, &tgt, cap)? {
                    Some(w) => Output { lines: vec![format!("witness: {w}")], json: json!({ "witness": w.to_json() }) },
                    None => Output { lines: vec!["NOT_FOUND".into()], json: json!({ "witness": null }) },
                }
            }
        },
    })
}

fn homology_output(groups: &[(i64, wreathlab::homology::HomologyGroup)]) -> Output {
    let lines = groups.iter().map(|(p, h)| format!("H_{p} = {h}")).collect();
    let json = Value::Array(groups.iter().map(|(p, h)| json!({ "p": p, "group": h.to_json() })).collect());
    Output { lines, json }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Table => {
                    for line in out.lines {
                        println!("{line}");
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("wreathlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
