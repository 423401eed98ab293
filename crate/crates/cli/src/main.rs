use std::io::Read;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use vbraid::pure::verify_pv_presentation;
use vbraid::search::{min_genus_bounded, r_equivalent_bounded, Budget, Verdict};
use vbraid::selftest::roundtrip_suite;
use vbraid::{build_ribbon_graph, canonical_form, canonical_genus, realize, vm_equivalent, word_to_gauss};
use vbraid::{BraidGaussDiagram, BraidWord};

/// Exit code for malformed input and usage errors; 1 and 2 are verdicts.
const EXIT_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "vbraid",
    version,
    about = "Virtual braids: Gauss diagrams, equivalence and genus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the braid-Gauss diagram of a word.
    Gauss {
        #[arg(short)]
        n: usize,
        /// Emit JSON instead of the text format.
        #[arg(long)]
        json: bool,
        /// Normalize the arrow order first.
        #[arg(long)]
        canonical: bool,
        /// Word such as "s1 t2 s1'"; `-` reads standard input.
        #[arg(default_value = "-", allow_hyphen_values = true)]
        word: String,
    },
    /// Decide whether two words are equivalent. Exit code 0 equivalent,
    /// 1 inequivalent, 2 unknown.
    Equal {
        #[command(flatten)]
        mode: Mode,
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Print the canonical genus of a word.
    Genus {
        #[arg(short)]
        n: usize,
        /// Search equivalent diagrams for a smaller genus and print a witness.
        #[arg(long)]
        minimize: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(default_value = "-", allow_hyphen_values = true)]
        word: String,
    },
    /// Turn a Gauss diagram (text or JSON) into a word.
    Realize {
        /// Emit the word as JSON.
        #[arg(long)]
        json: bool,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Export the ribbon graph of a word.
    Ribbon {
        #[arg(short)]
        n: usize,
        #[arg(default_value = "-", allow_hyphen_values = true)]
        word: String,
    },
    /// Built-in verification suites with a JSON report.
    #[command(subcommand)]
    Selftest(Selftest),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Mode {
    /// Virtual and mixed moves only (exact).
    #[arg(long)]
    vm: bool,
    /// Reidemeister moves as well (bounded search).
    #[arg(long)]
    reid: bool,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Maximum number of search states.
    #[arg(long, env = "VBRAID_BUDGET", default_value_t = Budget::default().max_nodes)]
    budget: usize,
    /// Extra arrows allowed by Omega-2 insertions.
    #[arg(long, default_value_t = Budget::default().insert_slack)]
    slack: usize,
    /// Wall-clock limit in milliseconds; makes results timing dependent.
    #[arg(long)]
    time_limit_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.budget,
            insert_slack: self.slack,
            time_limit_ms: self.time_limit_ms,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Selftest {
    /// Check the pure virtual braid presentation on n strands.
    Pv {
        #[arg(short)]
        n: usize,
        /// Longest accepted move sequence for a triangle relation.
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Realize random diagrams and compare canonical forms.
    Roundtrip {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 20)]
        max_arrows: usize,
    },
}

fn read_arg(arg: &str) -> Result<String> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .context("reading standard input")?;
    Ok(buf)
}

fn parse_word(arg: &str, n: usize) -> Result<BraidWord> {
    let text = read_arg(arg)?;
    BraidWord::parse(text.trim(), n).with_context(|| format!("invalid word {:?}", text.trim()))
}

fn verdict_code(verdict: &Verdict) -> u8 {
    match verdict {
        Verdict::Equivalent(_) => 0,
        Verdict::Inequivalent(_) => 1,
        Verdict::Unknown => 2,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gauss {
            n,
            json,
            canonical,
            word,
        } => {
            let mut g = word_to_gauss(&parse_word(&word, n)?);
            if canonical {
                g = canonical_form(&g).into_diagram();
            }
            println!("{}", if json { g.to_json() } else { g.to_text() });
            Ok(0)
        }
        Command::Equal {
            mode,
            n,
            budget,
            left,
            right,
        } => {
            let (a, b) = (parse_word(&left, n)?, parse_word(&right, n)?);
            if mode.vm {
                let same = vm_equivalent(&a, &b)?;
                println!("{}", if same { "equivalent" } else { "inequivalent" });
                return Ok(if same { 0 } else { 1 });
            }
            let verdict = r_equivalent_bounded(&a, &b, &budget.budget())?;
            match &verdict {
                Verdict::Equivalent(trace) => println!("equivalent\n{}", trace.to_json()),
                Verdict::Inequivalent(cert) => println!("inequivalent\n{}", serde_json::to_string(cert)?),
                Verdict::Unknown => println!("unknown"),
            }
            Ok(verdict_code(&verdict))
        }
        Command::Genus {
            n,
            minimize,
            budget,
            word,
        } => {
            let w = parse_word(&word, n)?;
            if minimize {
                let best = min_genus_bounded(&w, &budget.budget());
                println!("{}\n{}", best.genus, best.witness.to_text());
            } else {
                println!("{}", canonical_genus(&w));
            }
            Ok(0)
        }
        Command::Realize { json, input } => {
            let text = read_arg(&input)?;
            let g = BraidGaussDiagram::parse_any(text.trim()).context("invalid Gauss diagram")?;
            let w = realize(&g);
            println!("{}", if json { w.to_json() } else { w.to_text() });
            Ok(0)
        }
        Command::Ribbon { n, word } => {
            print!("{}", build_ribbon_graph(&parse_word(&word, n)?).to_text());
            Ok(0)
        }
        Command::Selftest(Selftest::Pv { n, depth }) => {
            let report = verify_pv_presentation(n, depth);
            let passed = report.all_passed();
            println!(
                "{}",
                json!({ "suite": "pv", "n": n, "passed": passed, "instances": report })
            );
            Ok(if passed { 0 } else { 1 })
        }
        Command::Selftest(Selftest::Roundtrip {
            trials,
            seed,
            max_n,
            max_arrows,
        }) => {
            let report = roundtrip_suite(trials, seed, max_n, max_arrows);
            println!("{}", serde_json::to_string(&report)?);
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
