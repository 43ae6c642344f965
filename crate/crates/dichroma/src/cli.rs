//! Command-line front end. [`run`] parses arguments, dispatches, re-checks every
//! certificate and renders the report; the binary only prints it.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::brooks::{brooks_bound_holds, brooks_colour, classify_brooks, deltamin_gadget};
use crate::defective::{
    defective_colour, defective_tower, exact_defective_index, np_gadget_defective, petersen,
    random_regular_multigraph, verify_edge_colouring,
};
use crate::dicolour::{colour_count, exact_dichromatic, verify_dicolouring};
use crate::digraph::{Digraph, Multigraph};
use crate::error::{Error, Result};
use crate::extremal::{
    extremal_with_overlapping_triangles, random_join_digraph, recognize_k_extremal, replay,
};
use crate::extremal::{dicut_size, lambda, tree_join_order_pair};
use crate::heroes::{
    contains_induced, gen_chordal_c122, gen_chordal_hero_free, gen_ds, gen_fk, named_pattern,
    random_tt3_free_chordal,
};
use crate::io::{parse_digraph_file, parse_graph_file, parse_multigraph_file, write_digraph, write_multigraph, GraphFile};
use crate::local::{
    check_four_sets, check_local_class, find_2king, hub_decomposition, inround_order, random_in_round,
    random_locally_semicomplete, semicomplete_structure, two_dicolour_lot, InRound, SemicompleteStructure,
};

const DEFAULT_EDGE_BUDGET: u64 = 20_000_000;

#[derive(Parser, Debug)]
#[command(name = "dichroma", version, about = "Dicolouring and defective edge colouring toolkit")]
pub struct Cli {
    /// Node budget for exact searches.
    #[arg(long, global = true, env = "DICHROMA_BUDGET")]
    pub budget: Option<u64>,
    /// Seed for random generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Wrap the result in a report with command, input digest and timing.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact dichromatic number with an optimal colouring.
    Chi { file: PathBuf },
    /// Check a vertex colouring of a digraph, or with --d an edge colouring of a multigraph.
    Verify {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        colouring: Vec<usize>,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Brooks classification per component and a colouring meeting the bound.
    Brooks { file: PathBuf },
    /// Maximum local arc-connectivity with a minimum dicut per pair.
    Lambda { file: PathBuf },
    /// Decide k-extremality (exit 0 when extremal, 1 otherwise).
    Extremal {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Print a generated graph file.
    Gen { name: String, params: Vec<usize> },
    /// Decide whether the digraph avoids an induced pattern (exit 0 when free).
    Free {
        file: PathBuf,
        /// Pattern file, or one of C3, TT3, C3(1,2,2), C3(1,1,2), C3(1,2,C3), C3(1,2,3), C3=>K1, K1=>C3.
        #[arg(long)]
        pattern: String,
    },
    /// In-round cyclic order, or the local condition that rules it out.
    Round { file: PathBuf },
    /// Maximal hubs and their in-round quotient.
    Hubs { file: PathBuf },
    /// Two-dicolouring of a locally out-transitive oriented graph with T monochromatic.
    Dicolour2 {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<usize>,
    },
    /// Structure of a connected locally semicomplete digraph.
    Structure { file: PathBuf },
    /// A vertex reaching all others within two steps.
    King { file: PathBuf },
    /// d-defective edge colouring of a multigraph.
    Defective {
        file: PathBuf,
        #[arg(long)]
        d: usize,
        /// Exact index by search instead of the constructive routes.
        #[arg(long)]
        exact: bool,
    },
    /// Hardness gadgets.
    Gadget {
        #[command(subcommand)]
        kind: GadgetKind,
    },
}

#[derive(Subcommand, Debug)]
pub enum GadgetKind {
    /// Vertex gadget for the Δ_min reduction; lifts a k-dicolouring when one is found.
    Deltamin {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Welded tower copies on a k-regular simple graph, with the forward colouring extension.
    Defective {
        file: PathBuf,
        #[arg(long)]
        d: usize,
    },
}

/// Rendered result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Reply {
    value: Value,
    verdict: Option<bool>,
    /// Plain output used instead of JSON when `--json` is absent.
    text: Option<String>,
}

impl Reply {
    fn value(v: impl Serialize) -> Result<Reply> {
        Ok(Reply {
            value: to_value(v)?,
            verdict: None,
            text: None,
        })
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn recheck(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("{what} failed re-verification")))
    }
}

struct Input {
    text: String,
}

impl Input {
    fn read(path: &PathBuf) -> Result<Input> {
        let text = if path.as_os_str() == "-" {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(path)
        }
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Ok(Input { text })
    }
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Chi { .. } => "chi",
        Command::Verify { .. } => "verify",
        Command::Brooks { .. } => "brooks",
        Command::Lambda { .. } => "lambda",
        Command::Extremal { .. } => "extremal",
        Command::Gen { .. } => "gen",
        Command::Free { .. } => "free",
        Command::Round { .. } => "round",
        Command::Hubs { .. } => "hubs",
        Command::Dicolour2 { .. } => "dicolour2",
        Command::Structure { .. } => "structure",
        Command::King { .. } => "king",
        Command::Defective { .. } => "defective",
        Command::Gadget { .. } => "gadget",
    }
}

/// Runs one command line (including the program name) and renders its output.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => failure(&Error::UsageError(rendered.trim().to_string())),
            };
        }
    };
    let start = Instant::now();
    let mut digest = Sha256::new();
    match dispatch(&cli, &mut digest) {
        Ok(reply) => {
            let stdout = if cli.json {
                let mut report = json!({
                    "command": command_name(&cli.command),
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                    "input_digest": format!("{:x}", digest.finalize()),
                    "result": reply.value,
                });
                if let Some(v) = reply.verdict {
                    report["verdict"] = json!(v);
                }
                format!("{report}\n")
            } else if let Some(text) = reply.text {
                text
            } else {
                format!("{}\n", reply.value)
            };
            Outcome {
                code: if reply.verdict == Some(false) { 1 } else { 0 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => failure(&e),
    }
}

fn failure(e: &Error) -> Outcome {
    let mut body = json!({"error": error_kind(e), "message": e.to_string()});
    if let Error::BudgetExceeded { lower, upper } = e {
        body["lower"] = json!(lower);
        body["upper"] = json!(upper);
    }
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("{body}\n"),
    }
}

fn dispatch(cli: &Cli, digest: &mut Sha256) -> Result<Reply> {
    let budget = cli.budget;
    let mut digraph = |file: &PathBuf| -> Result<Digraph> {
        let input = Input::read(file)?;
        digest.update(input.text.as_bytes());
        parse_digraph_file(&input.text)
    };
    match &cli.command {
        Command::Chi { file } => {
            let d = digraph(file)?;
            let r = exact_dichromatic(&d, budget)?;
            recheck(
                verify_dicolouring(&d, &r.colouring)?.is_valid() && colour_count(&r.colouring) == r.chi,
                "dicolouring",
            )?;
            Reply::value(json!({"chi": r.chi, "colouring": r.colouring}))
        }
        Command::Verify { file, colouring, d } => {
            let input = Input::read(file)?;
            digest.update(input.text.as_bytes());
            match (parse_graph_file(&input.text)?, d) {
                (GraphFile::Digraph(g), None) => {
                    let check = verify_dicolouring(&g, colouring)?;
                    Reply::value(json!({"check": check, "colours": colour_count(colouring), "valid": check.is_valid()}))
                }
                (GraphFile::Multigraph(g), Some(d)) => {
                    let check = verify_edge_colouring(&g, colouring, *d)?;
                    let colours = colouring.iter().copied().max().unwrap_or(0);
                    Reply::value(json!({"check": check, "colours": colours, "valid": check.is_valid()}))
                }
                (GraphFile::Digraph(_), Some(_)) => Err(Error::UsageError("--d applies to multigraph files".into())),
                (GraphFile::Multigraph(_), None) => Err(Error::UsageError("multigraph files need --d".into())),
            }
        }
        Command::Brooks { file } => {
            let d = digraph(file)?;
            let verdict = classify_brooks(&d);
            let c = brooks_colour(&d);
            recheck(brooks_bound_holds(&d, &c.colouring), "Brooks colouring")?;
            Reply::value(json!({
                "colouring": c.colouring,
                "colours": colour_count(&c.colouring),
                "verdict": verdict,
                "warnings": c.warnings,
            }))
        }
        Command::Lambda { file } => {
            let d = digraph(file)?;
            let profile = lambda(&d);
            for p in &profile.pairs {
                recheck(
                    p.source_side.contains(&p.source)
                        && !p.source_side.contains(&p.target)
                        && dicut_size(&d, &p.source_side) == p.value,
                    "dicut",
                )?;
            }
            recheck(profile.pairs.iter().map(|p| p.value).max().unwrap_or(0) == profile.lambda, "lambda")?;
            Reply::value(&profile)
        }
        Command::Extremal { file, k } => {
            let d = digraph(file)?;
            let r = recognize_k_extremal(&d, *k, budget)?;
            if let Some(cert) = &r.certificate {
                recheck(replay(cert)? == d, "decomposition certificate")?;
            }
            let mut reply = Reply::value(&r)?;
            reply.verdict = Some(r.extremal);
            Ok(reply)
        }
        Command::Gen { name, params } => {
            digest.update(format!("{name} {params:?} {}", cli.seed).as_bytes());
            generate(name, params, cli.seed)
        }
        Command::Free { file, pattern } => {
            let d = digraph(file)?;
            let p = match named_pattern(pattern) {
                Some(p) => p,
                None => {
                    let input = Input::read(&PathBuf::from(pattern))?;
                    digest.update(input.text.as_bytes());
                    parse_digraph_file(&input.text)?
                }
            };
            let found = contains_induced(&d, &p, budget)?;
            if let Some(map) = &found {
                let induced = (0..p.n()).all(|a| (0..p.n()).all(|b| a == b || p.has_arc(a, b) == d.has_arc(map[a], map[b])));
                recheck(induced, "embedding")?;
            }
            let free = found.is_none();
            let mut reply = Reply::value(json!({"embedding": found, "free": free}))?;
            reply.verdict = Some(free);
            Ok(reply)
        }
        Command::Round { file } => {
            let d = digraph(file)?;
            let r = inround_order(&d)?;
            if let InRound::Order(order) = &r {
                recheck(order.is_in_round_for(&d), "in-round order")?;
            }
            Reply::value(&r)
        }
        Command::Hubs { file } => {
            let d = digraph(file)?;
            let h = hub_decomposition(&d)?;
            let mut seen = vec![0; d.n()];
            for part in &h.parts {
                for &v in part {
                    seen[v] += 1;
                }
            }
            recheck(seen.iter().all(|&x| x == 1) && h.order.is_in_round_for(&h.quotient), "hub partition")?;
            Reply::value(&h)
        }
        Command::Dicolour2 { file, t } => {
            let d = digraph(file)?;
            let c = two_dicolour_lot(&d, t)?;
            let mono = t.windows(2).all(|w| c[w[0]] == c[w[1]]);
            recheck(verify_dicolouring(&d, &c)?.is_valid() && colour_count(&c) <= 2 && mono, "2-dicolouring")?;
            Reply::value(json!({"colouring": c, "colours": colour_count(&c)}))
        }
        Command::Structure { file } => {
            let d = digraph(file)?;
            let s = semicomplete_structure(&d)?;
            match &s {
                SemicompleteStructure::UniversalVertex { vertex } => {
                    recheck((0..d.n()).all(|u| u == *vertex || d.adjacent(u, *vertex)), "universal vertex")?;
                }
                SemicompleteStructure::FourSetPartition { e, f, g, h, .. } => {
                    recheck(check_four_sets(&d, e, f, g, h).is_ok(), "four-set partition")?;
                }
                SemicompleteStructure::RoundBlowup { parts, .. } => {
                    recheck(parts.iter().map(Vec::len).sum::<usize>() == d.n(), "round blow-up")?;
                }
            }
            Reply::value(json!({"class": check_local_class(&d), "structure": s}))
        }
        Command::King { file } => {
            let d = digraph(file)?;
            let king = find_2king(&d);
            if let Some(v) = king {
                let mut reach = vec![false; d.n()];
                reach[v] = true;
                for &w in d.out_neighbours(v) {
                    reach[w] = true;
                    for &z in d.out_neighbours(w) {
                        reach[z] = true;
                    }
                }
                recheck(reach.iter().all(|&r| r), "2-king")?;
            }
            Reply::value(json!({"king": king}))
        }
        Command::Defective { file, d, exact } => {
            let input = Input::read(file)?;
            digest.update(input.text.as_bytes());
            let g = parse_multigraph_file(&input.text)?;
            defective(&g, *d, *exact, budget.unwrap_or(DEFAULT_EDGE_BUDGET))
        }
        Command::Gadget { kind } => match kind {
            GadgetKind::Deltamin { file, k } => {
                let d = digraph(file)?;
                let gadget = deltamin_gadget(&d, *k)?;
                let lifted = match exact_dichromatic(&d, budget) {
                    Ok(r) if r.chi <= *k => {
                        let c = crate::brooks::gadget_lift(&d, *k, &r.colouring)?;
                        recheck(verify_dicolouring(&gadget, &c)?.is_valid(), "lifted dicolouring")?;
                        Some(c)
                    }
                    _ => None,
                };
                let text = write_digraph(&gadget);
                Ok(Reply {
                    value: json!({"arcs": gadget.arc_count(), "file": text, "lifted_colouring": lifted, "n": gadget.n()}),
                    verdict: None,
                    text: Some(text),
                })
            }
            GadgetKind::Defective { file, d } => {
                let input = Input::read(file)?;
                digest.update(input.text.as_bytes());
                let g = match parse_graph_file(&input.text)? {
                    GraphFile::Multigraph(g) => g,
                    GraphFile::Digraph(d) => {
                        let mut edges: Vec<(usize, usize)> = d.arcs().into_iter().filter(|&(u, v)| u < v || !d.has_arc(v, u)).collect();
                        edges.sort_unstable();
                        Multigraph::new(d.n(), &edges)?
                    }
                };
                let k = g.regular_degree().ok_or(Error::NotRegular)?;
                let gadget = np_gadget_defective(&g, k, *d)?;
                let proper = exact_defective_index(&g, 1, budget.unwrap_or(DEFAULT_EDGE_BUDGET))?;
                let extension = if proper.index == k { Some(gadget.extend(&proper.colouring)?) } else { None };
                let text = write_multigraph(&gadget.graph);
                Ok(Reply {
                    value: json!({
                        "degree": gadget.graph.regular_degree(),
                        "edges": gadget.graph.edge_count(),
                        "extension": extension,
                        "file": text,
                        "n": gadget.graph.n(),
                    }),
                    verdict: None,
                    text: Some(text),
                })
            }
        },
    }
}

fn defective(g: &Multigraph, d: usize, exact: bool, budget: u64) -> Result<Reply> {
    let delta = g.max_degree();
    let (value, colouring) = if exact {
        let r = exact_defective_index(g, d, budget)?;
        let v = json!({"colours": r.index, "colouring": r.colouring, "exact": true, "lower_bound": delta.div_ceil(d.max(1))});
        (v, r.colouring)
    } else {
        match defective_colour(g, d, true) {
            Ok(r) => (to_value(&r)?, r.colouring),
            Err(Error::FallbackToExact(reason)) => {
                let r = exact_defective_index(g, d, budget)?;
                let v = json!({
                    "colours": r.index,
                    "colouring": r.colouring,
                    "lower_bound": delta.div_ceil(d),
                    "route": {"route": "exact", "reason": reason},
                });
                (v, r.colouring)
            }
            Err(e) => return Err(e),
        }
    };
    recheck(verify_edge_colouring(g, &colouring, d)?.is_valid(), "edge colouring")?;
    Reply::value(value)
}

fn param(params: &[usize], i: usize, name: &str) -> Result<usize> {
    params
        .get(i)
        .copied()
        .ok_or_else(|| Error::UsageError(format!("missing parameter {name}")))
}

fn generate(name: &str, p: &[usize], seed: u64) -> Result<Reply> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let digraph_reply = |d: Digraph, claimed_chi: Option<usize>, forbidden: Vec<String>| {
        let text = write_digraph(&d);
        Reply {
            value: json!({"claimed_chi": claimed_chi, "file": text, "forbidden": forbidden, "name": name}),
            verdict: None,
            text: Some(text),
        }
    };
    let multigraph_reply = |g: Multigraph| {
        let text = write_multigraph(&g);
        Reply {
            value: json!({"file": text, "name": name}),
            verdict: None,
            text: Some(text),
        }
    };
    let generated = |r: crate::heroes::Generated| digraph_reply(r.digraph, r.claimed_chi, r.forbidden);
    Ok(match name {
        "fk" => generated(gen_fk(param(p, 0, "l")?, param(p, 1, "k")?)?),
        "ds" => generated(gen_ds(param(p, 0, "s")?)?),
        "chordal-c122" => generated(gen_chordal_c122(param(p, 0, "k")?)?),
        "chordal-hero-free" => generated(gen_chordal_hero_free(param(p, 0, "k")?)?),
        "cycle" => digraph_reply(Digraph::directed_cycle(param(p, 0, "n")?), None, vec![]),
        "symmetric-cycle" => digraph_reply(Digraph::symmetric_cycle(param(p, 0, "n")?), None, vec![]),
        "symmetric-complete" => digraph_reply(Digraph::symmetric_complete(param(p, 0, "n")?), None, vec![]),
        "transitive" => digraph_reply(Digraph::transitive_tournament(param(p, 0, "n")?), Some(1), vec![]),
        "wheel" => digraph_reply(Digraph::symmetric_wheel(param(p, 0, "rim")?), None, vec![]),
        "order-pair" => {
            let (a, b) = tree_join_order_pair();
            let pick = param(p, 0, "index (0 or 1)")?;
            digraph_reply(if pick == 0 { a } else { b }, Some(4), vec![])
        }
        "overlapping-triangles" => digraph_reply(extremal_with_overlapping_triangles(), Some(4), vec![]),
        "random-join" => digraph_reply(
            random_join_digraph(&mut rng, param(p, 0, "depth")?, param(p, 1, "max_n")?, 0.0),
            None,
            vec![],
        ),
        "random-in-round" => digraph_reply(random_in_round(&mut rng, param(p, 0, "n")?, usize::MAX), None, vec![]),
        "random-locally-semicomplete" => {
            digraph_reply(random_locally_semicomplete(&mut rng, param(p, 0, "max_n")?), None, vec![])
        }
        "random-tt3-free-chordal" => {
            digraph_reply(random_tt3_free_chordal(&mut rng, param(p, 0, "n")?), None, vec!["TT3".into()])
        }
        "shannon" => multigraph_reply(Multigraph::shannon(param(p, 0, "k")?)),
        "complete-graph" => multigraph_reply(Multigraph::complete(param(p, 0, "n")?)),
        "petersen" => multigraph_reply(petersen()),
        "tower" => multigraph_reply(defective_tower(param(p, 0, "j")?, param(p, 1, "d")?)?.0),
        "random-regular" => multigraph_reply(random_regular_multigraph(&mut rng, param(p, 0, "n")?, param(p, 1, "delta")?)?),
        other => return Err(Error::UsageError(format!("unknown generator {other:?}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file_with(text: &str) -> tempfile_path::TempPath {
        tempfile_path::TempPath::new(text)
    }

    mod tempfile_path {
        use std::path::PathBuf;
        use std::sync::atomic::{AtomicUsize, Ordering};

        static NEXT: AtomicUsize = AtomicUsize::new(0);

        pub struct TempPath(pub PathBuf);

        impl TempPath {
            pub fn new(text: &str) -> TempPath {
                let id = NEXT.fetch_add(1, Ordering::SeqCst);
                let path = std::env::temp_dir().join(format!("dichroma-cli-{}-{id}.txt", std::process::id()));
                std::fs::write(&path, text).unwrap();
                TempPath(path)
            }

            pub fn arg(&self) -> String {
                self.0.display().to_string()
            }
        }

        impl Drop for TempPath {
            fn drop(&mut self) {
                let _ = std::fs::remove_file(&self.0);
            }
        }
    }

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("dichroma").chain(args.iter().copied()))
    }

    #[test]
    fn chi_on_c3() {
        let f = file_with("digraph 3\n0 1\n1 2\n2 0\n");
        let out = run_args(&["chi", &f.arg()]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "{\"chi\":2,\"colouring\":[1,1,2]}\n");
        let out = run_args(&["--json", "chi", &f.arg()]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["command"], "chi");
        assert_eq!(v["result"]["chi"], 2);
        assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    }

    #[test]
    fn exit_codes() {
        let f = file_with("digraph 3\n0 1\n1 2\n2 0\n");
        assert_eq!(run_args(&["extremal", "--k", "1", &f.arg()]).code, 0);
        let tt = file_with("digraph 3\n0 1\n1 2\n0 2\n");
        assert_eq!(run_args(&["extremal", "--k", "1", &tt.arg()]).code, 1);
        assert_eq!(run_args(&["free", "--pattern", "C3", &tt.arg()]).code, 0);
        assert_eq!(run_args(&["free", "--pattern", "C3", &f.arg()]).code, 1);
        let bad = file_with("digraph 2\n0 0\n");
        let out = run_args(&["chi", &bad.arg()]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("SemanticError"), "{}", out.stderr);
        assert_eq!(run_args(&["nonsense"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn defective_on_sh4() {
        let f = file_with("multigraph 3\n0 1\n0 1\n1 2\n1 2\n2 0\n2 0\n");
        let out = run_args(&["defective", "--d", "3", &f.arg()]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["colours"], 2);
        let out = run_args(&["defective", "--d", "3", "--exact", &f.arg()]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["colours"], 2);
    }

    #[test]
    fn gen_round_trips_through_commands() {
        let out = run_args(&["gen", "fk", "3", "2"]);
        assert_eq!(out.code, 0);
        let f = file_with(&out.stdout);
        let chi: Value = serde_json::from_str(&run_args(&["chi", &f.arg()]).stdout).unwrap();
        assert_eq!(chi["chi"], 2);
        let out = run_args(&["--seed", "3", "gen", "random-in-round", "7"]);
        let f = file_with(&out.stdout);
        let round = run_args(&["round", &f.arg()]);
        assert_eq!(round.code, 0, "{}", round.stderr);
        assert!(round.stdout.contains("Order"));
        let hubs = run_args(&["hubs", &f.arg()]);
        assert_eq!(hubs.code, 0, "{}", hubs.stderr);
        let two = run_args(&["dicolour2", "--t", "0", &f.arg()]);
        assert_eq!(two.code, 0, "{}", two.stderr);
        assert_eq!(run_args(&["gen", "nope"]).code, 2);
    }

    #[test]
    fn verify_and_budget() {
        let f = file_with("digraph 3\n0 1\n1 2\n2 0\n");
        let out = run_args(&["verify", "--colouring", "1,1,1", &f.arg()]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["valid"], false);
        let m = file_with("multigraph 3\n0 1\n1 2\n2 0\n");
        let out = run_args(&["verify", "--d", "2", "--colouring", "1,1,1", &m.arg()]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["valid"], true);
        let k7 = run_args(&["gen", "fk", "3", "3"]);
        let f = file_with(&k7.stdout);
        let out = run_args(&["--budget", "2", "chi", &f.arg()]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("BudgetExceeded"));
    }

    #[test]
    fn other_commands() {
        let wheel = file_with(&run_args(&["gen", "wheel", "5"]).stdout);
        for cmd in ["brooks", "lambda", "king"] {
            let out = run_args(&[cmd, &wheel.arg()]);
            assert_eq!(out.code, 0, "{cmd}: {}", out.stderr);
        }
        let ls = file_with(&run_args(&["--seed", "5", "gen", "random-locally-semicomplete", "8"]).stdout);
        let out = run_args(&["structure", &ls.arg()]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let k4 = file_with("multigraph 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
        let out = run_args(&["gadget", "defective", "--d", "3", &k4.arg()]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("multigraph 196\n"));
        let c3 = file_with("digraph 3\n0 1\n1 2\n2 0\n");
        let out = run_args(&["--json", "gadget", "deltamin", "--k", "2", &c3.arg()]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(v["result"]["lifted_colouring"].is_array());
        let _ = std::io::stdout().flush();
    }
}
