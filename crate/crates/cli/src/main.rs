//! `verbalforge`: build verbal products and wreath products, run amplification
//! experiments and the acceptance suite.
//!
//! Exit codes: 0 ok, 1 other failure, 2 bad descriptor or config, 3 unresolved or
//! over the enumeration cap, 4 map window not closed.

use clap::{Parser, Subcommand};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use verbalforge::amplify::{coordinatewise_counterexample, run_experiment, ExperimentConfig};
use verbalforge::descriptor::GroupDesc;
use verbalforge::group::{abelianization, cap_from_env, tensor_product, FgAbelianGroup};
use verbalforge::product::{EngineChoice, VerbalProduct};
use verbalforge::suite::{run_suite, Verdict};
use verbalforge::words::{verbal_subgroup, WordSet};
use verbalforge::wreath::VerbalWreath;
use verbalforge::Error;

#[derive(Parser)]
#[command(name = "verbalforge", version, about = "Verbal products of finite groups and metric approximations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build A ∗ʷ B and print its order, engine and cartesian part.
    Product {
        a: String,
        b: String,
        words: String,
        /// direct, class2, metab, generic or auto.
        #[arg(long, default_value = "auto")]
        engine: String,
    },
    /// Build the restricted verbal wreath product G ≀ʷ H.
    Wreath { g: String, h: String, words: String },
    /// The verbal subgroup W(G).
    VerbalSubgroup {
        group: String,
        words: String,
        /// Also list the members.
        #[arg(long)]
        members: bool,
    },
    /// Tensor product of abelianizations; `ab:R:d1,d2,...` gives Z^R ⊕ Z/d1 ⊕ ... directly.
    Tensor { m: String, n: String },
    /// Run an amplification experiment from a JSON config.
    Amplify {
        config: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write one CSV row per window element here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// The coordinate-wise map on Z/p ∗² Z/p, which fails freeness by design.
    Counterexample {
        #[arg(long, default_value_t = 3)]
        p: usize,
    },
    /// Run every acceptance criterion.
    Suite {
        #[arg(long)]
        json: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::MalformedTable(_) | Error::InvalidConfig(_) | Error::ArityMismatch { .. } => 2,
        Error::Unresolved { .. } | Error::SizeCapExceeded { .. } | Error::BudgetExceeded(_) => 3,
        Error::WindowNotClosed(_) => 4,
        _ => 1,
    }
}

// A closed pipe (`| head`) is not an error worth a panic.
fn emit(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn print(v: &serde_json::Value) {
    emit(&(serde_json::to_string_pretty(v).expect("json") + "\n"));
}

fn abelian(s: &str, cap: usize) -> verbalforge::Result<FgAbelianGroup> {
    if let Some(rest) = s.strip_prefix("ab:") {
        let (free, tors) = rest.split_once(':').unwrap_or((rest, ""));
        let free = free.parse().map_err(|_| Error::Parse(format!("bad free rank in '{}'", s)))?;
        let tors = tors
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().ok().filter(|&d| d > 0))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse(format!("bad torsion list in '{}'", s)))?;
        return Ok(FgAbelianGroup::from_cyclic(free, &tors));
    }
    Ok(abelianization(&s.parse::<GroupDesc>()?.build(cap)?).group)
}

fn run(cmd: Cmd, cap: usize) -> verbalforge::Result<u8> {
    match cmd {
        Cmd::Product { a, b, words, engine } => {
            let (ga, gb) = (a.parse::<GroupDesc>()?.build(cap)?, b.parse::<GroupDesc>()?.build(cap)?);
            let w: WordSet = words.parse()?;
            let p = VerbalProduct::build(&ga, &gb, &w, engine.parse::<EngineChoice>()?, cap)?;
            let mut out = p.to_json();
            out["summary"] = json!(match p.order() {
                Some(n) => format!("order {}", n),
                None => p.finiteness().to_string(),
            });
            if p.order().is_some_and(|n| n <= cap as u128) {
                out["normal_forms_checked"] = json!(p.normal_form_bijection(cap)?);
            }
            print(&out);
        }
        Cmd::Wreath { g, h, words } => {
            let (gg, gh) = (g.parse::<GroupDesc>()?.build(cap)?, h.parse::<GroupDesc>()?.build(cap)?);
            let wr = VerbalWreath::new(&gg, &gh, &words.parse()?)?;
            let mut out = json!({
                "order": wr.order().to_string(),
                "base_order": wr.base.order().to_string(),
                "copies": gh.order(),
                "generators": wr.generators().len(),
            });
            if wr.order() <= cap as u128 {
                let (grp, _) = wr.to_finite_group(cap)?;
                out["enumerated_order"] = json!(grp.order());
            }
            print(&out);
        }
        Cmd::VerbalSubgroup { group, words, members } => {
            let g = group.parse::<GroupDesc>()?.build(cap)?;
            let s = verbal_subgroup(&g, &words.parse()?)?;
            let mut out = json!({"group_order": g.order(), "order": s.order(), "normal": s.is_normal(&g)});
            if members {
                out["members"] = json!(s.members().iter().map(|&x| g.label(x)).collect::<Vec<_>>());
            }
            print(&out);
        }
        Cmd::Tensor { m, n } => {
            let (m, n) = (abelian(&m, cap)?, abelian(&n, cap)?);
            let t = tensor_product(&m, &n);
            print(&json!({
                "left": m.to_string(),
                "right": n.to_string(),
                "tensor": t.to_string(),
                "free_rank": t.free_rank,
                "torsion": t.torsion,
                "order": t.order().map(|o| o.to_string()),
            }));
        }
        Cmd::Amplify { config, json, csv } => {
            let text = std::fs::read_to_string(&config).map_err(|e| Error::Io(format!("{}: {}", config.display(), e)))?;
            let cfg = ExperimentConfig::from_json(&text)?;
            let report = run_experiment(&cfg, cap)?;
            let body = serde_json::to_string_pretty(&report).expect("json") + "\n";
            match json {
                Some(path) => std::fs::write(&path, body).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))?,
                None => emit(&body),
            }
            if let Some(path) = csv {
                std::fs::write(&path, report.csv()).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))?;
            }
        }
        Cmd::Counterexample { p } => {
            let r = coordinatewise_counterexample(p, cap)?;
            let mut out = serde_json::to_value(&r).expect("json");
            if r.fail_by_design {
                out["verdict"] = json!("FAIL-BY-DESIGN");
            }
            print(&out);
        }
        Cmd::Suite { json } => {
            let rows = run_suite(cap);
            if json {
                print(&serde_json::to_value(&rows).expect("json"));
            } else {
                emit(&rows.iter().map(|r| format!("{}\n", r)).collect::<String>());
            }
            if rows.iter().any(|r| r.verdict == Verdict::Fail) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd, cap_from_env()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
