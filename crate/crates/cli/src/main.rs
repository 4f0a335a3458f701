use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use engel_core::claims::{claims, run_all, run_claim, ClaimResult, Status};
use engel_core::collector::{theorem2_symbolic_capped, Collector, Verdict, DEFAULT_INSTANCE_CAP};
use engel_core::corpus::{self, default_corpus, default_specs, load_cayley_table, load_permutation_file};
use engel_core::engel::{left_engel_set, right_engel_set};
use engel_core::exponent::{eval_exponent, parse_exponent};
use engel_core::group::DEFAULT_ORDER_CAP;
use engel_core::structure::{baer_radical, fitting_oracle, nilpotency_class, Subgroup};
use engel_core::{Elem, FiniteGroup, Word};

#[derive(Parser)]
#[command(name = "engel", version, about = "Check statements about left 3-Engel elements on finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum RadicalKind {
    Baer,
    Fitting,
}

#[derive(Subcommand)]
enum Command {
    /// List the default corpus with group orders.
    ListGroups,
    /// List the registered claims.
    ListClaims,
    /// Run one claim on one corpus group.
    Check {
        #[arg(long)]
        claim: String,
        #[arg(long)]
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Run claims over corpus groups.
    CheckAll {
        /// Comma-separated group names; default is the whole corpus.
        #[arg(long)]
        groups: Option<String>,
        /// Comma-separated claim ids; default is every claim.
        #[arg(long)]
        claims: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Record elapsed milliseconds (reports are then no longer reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Print L_n(G) or R_n(G).
    EngelSet {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        group: String,
    },
    /// Print the Baer radical or the Fitting oracle.
    Radical {
        #[arg(long, value_enum)]
        kind: RadicalKind,
        #[arg(long)]
        group: String,
    },
    /// Collect a word in the free nilpotent group of given rank and class.
    Collect {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        class: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Symbolic class-4 check for two left 3-Engel generators.
    Theorem2Sym {
        #[arg(long)]
        instance_len: usize,
        #[arg(long)]
        conj_len: usize,
        #[arg(long, default_value_t = DEFAULT_INSTANCE_CAP)]
        cap: usize,
    },
    /// Evaluate base^expr in a corpus group.
    EvalExpr {
        #[arg(long)]
        group: String,
        #[arg(long)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Bindings `label=word,...` in the group's generators.
        #[arg(long, default_value = "")]
        env: String,
    },
    /// Load and validate a group from a Cayley table or permutation file.
    Load {
        #[arg(long, conflicts_with = "perms", required_unless_present = "perms")]
        cayley: Option<PathBuf>,
        #[arg(long)]
        perms: Option<PathBuf>,
        #[arg(long)]
        name: String,
        /// Also run every claim on the loaded group.
        #[arg(long)]
        check: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn find_group(name: &str) -> Result<FiniteGroup> {
    let spec = corpus::lookup(name).ok_or_else(|| anyhow!("unknown group {name:?}; see `engel list-groups`"))?;
    Ok(corpus::build(&spec)?)
}

fn csv(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn exit_for(results: &[ClaimResult]) -> ExitCode {
    if results.iter().any(|r| r.status == Status::Fail) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn print_text(r: &ClaimResult) {
    let mut line = format!("{}  {}  {}", r.claim, r.group, r.status);
    if let Some(w) = &r.witness {
        let parts: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
        line.push_str("  ");
        line.push_str(&parts.join("; "));
    }
    if r.ms > 0 {
        line.push_str(&format!("  ({} ms)", r.ms));
    }
    println!("{line}");
}

fn print_report(results: &[ClaimResult], json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(results)?);
    } else {
        for r in results {
            print_text(r);
        }
        let count = |s| results.iter().filter(|r| r.status == s).count();
        println!(
            "{} results: {} pass, {} fail, {} info",
            results.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Info)
        );
    }
    Ok(())
}

fn parse_word(text: &str) -> Result<Word> {
    text.parse::<Word>().map_err(|e| anyhow!("bad word {text:?}: {e}"))
}

fn eval_in(g: &FiniteGroup, text: &str) -> Result<Elem> {
    Ok(g.evaluate(&parse_word(text)?)?)
}

fn show_subgroup(g: &FiniteGroup, h: &Subgroup<'_>) {
    let class = nilpotency_class(h).map_or("not nilpotent".to_string(), |c| c.to_string());
    println!("order {}  normal {}  class {}", h.order(), h.is_normal_in(&Subgroup::whole(g)), class);
    for &x in h.elements() {
        println!("{}", g.show(x));
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::ListGroups => {
            for g in default_corpus() {
                println!("{}\t{}", g.name(), g.order());
            }
        }
        Command::ListClaims => {
            for c in claims() {
                println!("{}\t{}\t{}", c.id, c.kind, c.statement);
            }
        }
        Command::Check { claim, group, json } => {
            let g = find_group(&group)?;
            let r = run_claim(&claim, &g)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                print_text(&r);
            }
            return Ok(exit_for(&[r]));
        }
        Command::CheckAll {
            groups,
            claims: claim_sel,
            json,
            jobs,
            timings,
        } => {
            if let Some(n) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .context("configuring worker threads")?;
            }
            let claim_ids = match claim_sel {
                Some(text) => csv(&text),
                None => claims().iter().map(|c| c.id.to_string()).collect(),
            };
            for id in &claim_ids {
                engel_core::claims::claim(id)?;
            }
            let specs = match groups {
                Some(text) => csv(&text)
                    .iter()
                    .map(|n| corpus::lookup(n).ok_or_else(|| anyhow!("unknown group {n:?}")))
                    .collect::<Result<Vec<_>>>()?,
                None => default_specs(),
            };
            let built: Vec<FiniteGroup> = specs.iter().map(corpus::build).collect::<Result<_, _>>()?;
            let results = run_all(&built, &claim_ids, timings)?;
            print_report(&results, json)?;
            return Ok(exit_for(&results));
        }
        Command::EngelSet { side, n, group } => {
            let g = find_group(&group)?;
            let set = match side {
                SideArg::Left => left_engel_set(&g, n),
                SideArg::Right => right_engel_set(&g, n),
            };
            let tag = match side {
                SideArg::Left => "L",
                SideArg::Right => "R",
            };
            println!("{tag}_{n}({}) has {} of {} elements", g.name(), set.len(), g.order());
            for x in set.elements() {
                println!("{}", g.show(x));
            }
        }
        Command::Radical { kind, group } => {
            let g = find_group(&group)?;
            let h = match kind {
                RadicalKind::Baer => baer_radical(&g),
                RadicalKind::Fitting => fitting_oracle(&g),
            };
            show_subgroup(&g, &h);
        }
        Command::Collect { rank, class, word } => {
            let c = Collector::new(rank, class)?;
            let nf = c.collect(&parse_word(&word)?)?;
            println!("{}", c.show(&nf));
            let exps: Vec<String> = nf.exponents().iter().map(|e| e.to_string()).collect();
            println!("[{}]", exps.join(", "));
        }
        Command::Theorem2Sym {
            instance_len,
            conj_len,
            cap,
        } => {
            let o = theorem2_symbolic_capped(instance_len, conj_len, cap)?;
            let idx: Vec<String> = o.layer_indices.iter().map(|i| i.to_string()).collect();
            let verdict = match o.verdict {
                Verdict::Verified => "verified",
                Verdict::Inconclusive => "inconclusive",
            };
            println!("{verdict}");
            println!("layer indices: {}", idx.join(" "));
            println!("instances: {} ({} distinct)", o.instances, o.distinct);
            return Ok(match o.verdict {
                Verdict::Verified => ExitCode::SUCCESS,
                Verdict::Inconclusive => ExitCode::from(1),
            });
        }
        Command::EvalExpr { group, base, expr, env } => {
            let g = find_group(&group)?;
            let u = eval_in(&g, &base)?;
            let e = parse_exponent(&expr)?;
            let mut bindings = HashMap::new();
            for item in csv(&env) {
                let (label, word) = item
                    .split_once('=')
                    .ok_or_else(|| anyhow!("binding {item:?} is not label=word"))?;
                bindings.insert(label.trim().to_string(), eval_in(&g, word.trim())?);
            }
            let v = eval_exponent(&g, u, &e, &bindings)?;
            println!("{}", g.show(v));
        }
        Command::Load {
            cayley,
            perms,
            name,
            check,
        } => {
            let g = match (cayley, perms) {
                (Some(path), _) => load_cayley_table(&path, &name)?,
                (None, Some(path)) => load_permutation_file(&path, &name, DEFAULT_ORDER_CAP)?,
                (None, None) => bail!("one of --cayley or --perms is required"),
            };
            let whole = Subgroup::whole(&g);
            let class = nilpotency_class(&whole).map_or("not nilpotent".to_string(), |c| c.to_string());
            println!("{}: order {}, abelian {}, class {}", g.name(), g.order(), g.is_abelian(), class);
            let gens: Vec<String> = g.generators().iter().map(|(l, _)| l.clone()).collect();
            println!("generators: {}", gens.join(" "));
            if check {
                let ids: Vec<String> = claims().iter().map(|c| c.id.to_string()).collect();
                let results = run_all(std::slice::from_ref(&g), &ids, false)?;
                print_report(&results, false)?;
                return Ok(exit_for(&results));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
