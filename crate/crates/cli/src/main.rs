//! `shrubfo` command-line front end.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict, 2 usage or
//! input errors, 3 resource refusals.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shrubfo::corpus::{random_formula, random_graph, FormulaParams};
use shrubfo::eval::model_check;
use shrubfo::graph::generators::{gen_flipped_half_graph, gen_layerwise_flipped_kpt, gen_path, SideRelation};
use shrubfo::graph::io::{
    parse_forest_file, parse_graph_file, parse_tree_file, parse_tree_model_file, write_graph, write_graph_file,
    write_tree, GraphFile,
};
use shrubfo::graph::{
    apply_flip, build_sc_graph, tree_depth, validate_elimination_forest, validate_tree_model, ScRecipe,
};
use shrubfo::hardness::{cross_validate, reduce_to_path};
use shrubfo::interpret::{
    backwards_translate, depth_edge_interpretation, mc_tree, mc_treedepth, mc_treemodel, tree_model_interpretation,
    InterpretationScheme,
};
use shrubfo::kernel::reduce_tree;
use shrubfo::logic::{parse_formula, render_formula};
use shrubfo::pebble::{fo_s_equivalent, type_census};
use shrubfo::{ColoredGraph, Error, PartitionFlip, RootedColoredTree, Sentence, TreeModel};

#[derive(Parser)]
#[command(name = "shrubfo", version, about = "Variable-bounded first-order model checking toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum McVia {
    Direct,
    Tree,
    Treedepth,
    Treemodel,
}

#[derive(Clone, Copy, ValueEnum)]
enum TranslateVia {
    Identity,
    Complement,
    Treedepth,
    Treemodel,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a sentence holds.
    Mc {
        #[arg(long, required_unless_present = "tree")]
        graph: Option<PathBuf>,
        /// Tree file, for `--via tree`.
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, value_enum, default_value = "direct")]
        via: McVia,
        /// Variable budget; defaults to the variable count of the sentence.
        #[arg(long)]
        s: Option<usize>,
        /// Tree-depth budget; defaults to the exact tree-depth.
        #[arg(long)]
        k: Option<usize>,
        /// Tree-model file, for `--via treemodel`.
        #[arg(long)]
        tm: Option<PathBuf>,
    },
    /// Reduce a bounded-depth tree to its FO^s kernel.
    Kernelize {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        s: usize,
        /// Kernel file; defaults to `<tree>.kernel.t` next to the input.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide FO^s equivalence of two graphs.
    Equiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        s: usize,
    },
    /// Group graphs into FO^s equivalence classes; prints argument positions.
    Census {
        #[arg(long)]
        s: usize,
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
    },
    /// Write a generated graph.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Build the path instance and sentence of the reduction.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        /// Directory receiving path.g, psi.fo and provenance.txt.
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-validate the reduction; prints TAP.
    Xvalidate {
        /// Directory of `*.g` graphs and `*.fo` files with one sentence per line.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Number of additional random instances.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the backwards translation of a sentence.
    Translate {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, value_enum)]
        via: TranslateVia,
        /// Forest height, for `--via treedepth`.
        #[arg(long)]
        k: Option<usize>,
        /// Color count of the interpreted graph.
        #[arg(long, default_value_t = 1)]
        colors: u32,
        /// Tree-model file, for `--via treemodel`.
        #[arg(long)]
        tm: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a decomposition against a graph.
    Validate {
        #[command(subcommand)]
        what: ValidateWhat,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    Path {
        #[arg(long)]
        n: usize,
    },
    /// Half-graph H_t, optionally flipped by side pairs such as `AA,AB`.
    Halfgraph {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "")]
        rel: String,
    },
    /// k disjoint paths on t vertices, optionally flipped by layer pairs such as `1-2,3-3`.
    Kpt {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "")]
        rel: String,
    },
    /// Apply a flip between the `part` lines of a graph file, e.g. `--rel 1-2`.
    Flip {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        rel: String,
    },
    /// Graph of an SC-depth recipe such as `C[0,1](L L)`.
    Sc {
        #[arg(long)]
        recipe: String,
    },
    /// Erdős–Rényi graph; the seed goes in the header comment.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        colors: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ValidateWhat {
    /// Elimination forest.
    Ef {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        forest: PathBuf,
    },
    /// Tree-model.
    Tm {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tm: PathBuf,
    },
}

/// Successful outcome of a subcommand.
enum Verdict {
    Yes,
    No,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("shrubfo: {e}");
            ExitCode::from(match e {
                Error::ResourceLimit(_) => 3,
                _ => 2,
            })
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_graph_file(path: &Path) -> Result<GraphFile, Error> {
    parse_graph_file(&path.display().to_string(), &read(path)?)
}

fn load_graph(path: &Path) -> Result<ColoredGraph, Error> {
    Ok(load_graph_file(path)?.graph)
}

fn load_tree(path: &Path) -> Result<RootedColoredTree, Error> {
    parse_tree_file(&path.display().to_string(), &read(path)?)
}

fn load_tree_model(path: &Path) -> Result<TreeModel, Error> {
    parse_tree_model_file(&path.display().to_string(), &read(path)?)
}

/// A formula file holds one formula, possibly over several lines.
fn load_sentence(path: &Path) -> Result<Sentence, Error> {
    let body: String = read(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let f = parse_formula(&body).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    Sentence::new(f)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn need<'a>(opt: &'a Option<PathBuf>, flag: &str, via: &str) -> Result<&'a Path, Error> {
    opt.as_deref()
        .ok_or_else(|| Error::Invalid(format!("--via {via} needs --{flag}")))
}

/// Pairs written `i-j`, comma separated.
fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, Error> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let bad = || Error::Invalid(format!("expected a pair like 1-2, found '{item}'"));
            let (a, b) = item.split_once('-').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

fn run(cmd: Command) -> Result<Verdict, Error> {
    match cmd {
        Command::Mc {
            graph,
            tree,
            formula,
            via,
            s,
            k,
            tm,
        } => {
            let phi = load_sentence(&formula)?;
            let s = s.unwrap_or_else(|| phi.formula().variable_count().max(1));
            let verdict = match via {
                McVia::Direct => model_check(&load_graph(need(&graph, "graph", "direct")?)?, &phi)?,
                McVia::Tree => mc_tree(&load_tree(need(&tree, "tree", "tree")?)?, &phi, s)?,
                McVia::Treedepth => {
                    let g = load_graph(need(&graph, "graph", "treedepth")?)?;
                    if g.n() > 64 {
                        return Err(Error::ResourceLimit("exact tree-depth search is limited to 64 vertices".into()));
                    }
                    let k = k.unwrap_or_else(|| tree_depth(&g).max(1));
                    mc_treedepth(&g, &phi, k, s)?
                }
                McVia::Treemodel => {
                    let g = load_graph(need(&graph, "graph", "treemodel")?)?;
                    mc_treemodel(&g, &load_tree_model(need(&tm, "tm", "treemodel")?)?, &phi, s)?
                }
            };
            println!("{verdict}");
            Ok(verdict.into())
        }
        Command::Kernelize { tree, s, out } => {
            if s == 0 {
                return Err(Error::Invalid("--s must be at least 1".into()));
            }
            let t = load_tree(&tree)?;
            let r = reduce_tree(&t, s);
            let out = out.unwrap_or_else(|| {
                let stem = tree.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                tree.with_file_name(format!("{stem}.kernel.t"))
            });
            fs::write(&out, write_tree(&r.kernel))?;
            println!("kept={} bound={}", r.kept.len(), r.bound);
            Ok(Verdict::Yes)
        }
        Command::Equiv { a, b, s } => {
            let eq = fo_s_equivalent(&load_graph(&a)?, &load_graph(&b)?, s)?;
            println!("{}", if eq { "equivalent" } else { "inequivalent" });
            Ok(eq.into())
        }
        Command::Census { s, graphs } => {
            let gs = graphs.iter().map(|p| load_graph(p)).collect::<Result<Vec<_>, _>>()?;
            for (i, block) in type_census(&gs, s)?.iter().enumerate() {
                // 1-based positions of the graph arguments.
                let ids: Vec<String> = block.iter().map(|&j| (j + 1).to_string()).collect();
                println!("class {}: {}", i + 1, ids.join(" "));
            }
            Ok(Verdict::Yes)
        }
        Command::Gen { family, out } => {
            let text = match family {
                GenFamily::Path { n } => write_graph(&gen_path(n)?),
                GenFamily::Halfgraph { t, rel } => {
                    let h = gen_flipped_half_graph(t, SideRelation::parse(&rel)?)?;
                    let parts = h.partition();
                    write_graph_file(&GraphFile { graph: h.graph, parts })
                }
                GenFamily::Kpt { k, t, rel } => write_graph(&gen_layerwise_flipped_kpt(k, t, &parse_pairs(&rel)?)?),
                GenFamily::Flip { graph, rel } => {
                    let f = load_graph_file(&graph)?;
                    let mut pairs = Vec::new();
                    for (a, b) in parse_pairs(&rel)? {
                        if a == 0 || b == 0 {
                            return Err(Error::Invalid("part indices start at 1".into()));
                        }
                        pairs.push((a - 1, b - 1));
                    }
                    let flip = PartitionFlip::new(f.parts.clone(), pairs)?;
                    write_graph_file(&GraphFile {
                        graph: apply_flip(&f.graph, &flip)?,
                        parts: f.parts,
                    })
                }
                GenFamily::Sc { recipe } => write_graph(&build_sc_graph(&ScRecipe::parse(&recipe)?)?),
                GenFamily::Random { n, p, colors, seed } => {
                    if !(0.0..=1.0).contains(&p) || colors == 0 {
                        return Err(Error::Invalid("--p must lie in [0,1] and --colors be positive".into()));
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    format!("# seed={seed}\n{}", write_graph(&random_graph(&mut rng, n, p, colors)))
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(Verdict::Yes)
        }
        Command::Reduce { graph, formula, out } => {
            let g = load_graph(&graph)?;
            let phi = load_sentence(&formula)?;
            let r = reduce_to_path(&g, &phi)?;
            fs::create_dir_all(&out)?;
            fs::write(out.join("path.g"), write_graph(&r.path))?;
            fs::write(out.join("psi.fo"), format!("{}\n", render_formula(r.psi.formula())))?;
            let ordering: Vec<String> = r.ordering.iter().map(|v| (v + 1).to_string()).collect();
            let mut prov = String::new();
            writeln!(prov, "source {}", graph.display()).unwrap();
            writeln!(prov, "ordering {}", ordering.join(" ")).unwrap();
            writeln!(prov, "quantifier_rank {}", r.quantifier_rank).unwrap();
            writeln!(prov, "variable_budget {}", r.variable_budget).unwrap();
            writeln!(prov, "variables_used {}", r.psi.formula().variable_count()).unwrap();
            fs::write(out.join("provenance.txt"), prov)?;
            Ok(Verdict::Yes)
        }
        Command::Xvalidate { corpus, random, seed } => xvalidate(corpus.as_deref(), random, seed),
        Command::Translate {
            formula,
            via,
            k,
            colors,
            tm,
            out,
        } => {
            let phi = load_sentence(&formula)?;
            let scheme = match via {
                TranslateVia::Identity => InterpretationScheme::identity(),
                TranslateVia::Complement => InterpretationScheme::complement(),
                TranslateVia::Treedepth => {
                    let k = k.ok_or_else(|| Error::Invalid("--via treedepth needs --k".into()))?;
                    depth_edge_interpretation(k, colors)?
                }
                TranslateVia::Treemodel => tree_model_interpretation(&load_tree_model(need(&tm, "tm", "treemodel")?)?, colors)?,
            };
            let psi = backwards_translate(&phi, &scheme)?;
            emit(out.as_deref(), &format!("{}\n", render_formula(psi.formula())))?;
            Ok(Verdict::Yes)
        }
        Command::Validate { what } => {
            let ok = match what {
                ValidateWhat::Ef { graph, forest } => {
                    let g = load_graph(&graph)?;
                    let ef = parse_forest_file(&forest.display().to_string(), &read(&forest)?)?;
                    let ok = validate_elimination_forest(&g, &ef);
                    if ok {
                        println!("valid height={}", ef.height());
                    }
                    ok
                }
                ValidateWhat::Tm { graph, tm } => {
                    let ok = validate_tree_model(&load_graph(&graph)?, &load_tree_model(&tm)?)?;
                    if ok {
                        println!("valid");
                    }
                    ok
                }
            };
            if !ok {
                println!("invalid");
            }
            Ok(ok.into())
        }
    }
}

fn files_with_extension(dir: &Path, ext: &str) -> Result<Vec<PathBuf>, Error> {
    let mut out: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    out.sort();
    Ok(out)
}

fn xvalidate(corpus: Option<&Path>, random: usize, seed: u64) -> Result<Verdict, Error> {
    let mut cases: Vec<(String, ColoredGraph, Sentence)> = Vec::new();
    if let Some(dir) = corpus {
        let graphs = files_with_extension(dir, "g")?;
        let mut phis = Vec::new();
        for path in files_with_extension(dir, "fo")? {
            let lines = shrubfo::logic::parse_formula_lines(&read(&path)?)
                .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            for (i, f) in lines.into_iter().enumerate() {
                phis.push((format!("{}#{}", path.display(), i + 1), Sentence::new(f)?));
            }
        }
        for g in &graphs {
            let graph = load_graph(g)?;
            for (name, phi) in &phis {
                cases.push((format!("{} {name}", g.display()), graph.clone(), phi.clone()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        let n = rng.gen_range(3..=6);
        let colors = rng.gen_range(1..=2);
        let g = random_graph(&mut rng, n, 0.5, colors);
        let q = rng.gen_range(1..=3);
        let phi = Sentence::new(random_formula(&mut rng, &FormulaParams::sentences(4, colors, q)))?;
        cases.push((format!("random {}", i + 1), g, phi));
    }

    println!("TAP version 13");
    println!("# seed={seed}");
    println!("1..{}", cases.len());
    let mut all = true;
    for (i, (name, g, phi)) in cases.iter().enumerate() {
        if g.n() < 3 {
            println!("ok {} - {name} # SKIP fewer than 3 vertices", i + 1);
            continue;
        }
        let r = cross_validate(g, phi)?;
        all &= r.agree;
        let status = if r.agree { "ok" } else { "not ok" };
        println!("{status} {} - {name} lhs={} rhs={}", i + 1, r.lhs, r.rhs);
    }
    Ok(all.into())
}
