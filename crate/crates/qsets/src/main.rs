//! Command-line front end: quotient reports, difference-graph exports,
//! explicit constructions, exhaustive searches, and gap-distribution
//! sampling. Exit codes: 0 success, 2 usage error, 3 budget exceeded.

use clap::{Parser, Subcommand, ValueEnum};
use quotient_sets::catalog::{catalog_entries, group_from_spec};
use quotient_sets::constructions::{
    an_nominal_cards, apply_hom, ck_nominal_gap, ck_nominal_right, construct_an, construct_ck,
    difference_set, dinfty_set, embed_free, f3_base_set, find_gap_set, int_gap, realize_gap,
    sumset,
};
use quotient_sets::graph::{build_difference_graph, export_dot, DotOptions};
use quotient_sets::search::{
    exhaustive_balance_check_with_budget, SearchVerdict, DEFAULT_SEARCH_BUDGET,
};
use quotient_sets::stats::{gap_distribution, StatsMode};
use quotient_sets::{gap_report, Error, GapReport, Side, SubsetOfGroup};

#[derive(Parser)]
#[command(
    name = "qsets",
    version,
    about = "Left and right quotient sets of finite group subsets"
)]
struct Cli {
    /// Cap the worker thread count
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(side: SideArg) -> Side {
        match side {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SampleMode {
    Exact,
    Mc,
}

#[derive(Subcommand)]
enum Command {
    /// Cardinalities, gap, and energies of one subset
    Quotient {
        /// Group spec, e.g. f:3, dinf, sd16, prod(q8,c:2)
        #[arg(long)]
        group: String,
        /// Comma-separated element literals
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value = "json")]
        format: TextFormat,
    },
    /// Difference graph of a subset as DOT or component JSON
    Graph {
        #[arg(long)]
        group: String,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
        /// Attach component ids as node labels (DOT only)
        #[arg(long)]
        labels: bool,
    },
    /// Emit one of the explicit constructions
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Exhaustively scan subsets of a finite group for a nonzero gap
    Search {
        #[arg(long)]
        group: String,
        #[arg(long)]
        max_size: usize,
        /// Budget exponent b: enumerate at most 2^b subsets
        #[arg(long)]
        budget: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: TextFormat,
    },
    /// Gap distribution over subsets of a ball in the rank-2 free group
    Sample {
        #[arg(long)]
        radius: usize,
        #[arg(long, value_enum)]
        mode: SampleMode,
        /// Trial count (Monte Carlo only)
        #[arg(long)]
        trials: Option<u64>,
        /// Generator seed (Monte Carlo only)
        #[arg(long)]
        seed: Option<u64>,
        /// Raise the exact-mode subset cap to 2^bits (hard cap 2^25)
        #[arg(long)]
        override_bits: Option<u32>,
    },
    /// List the group specs the tool understands
    Catalog {
        #[arg(long, default_value_t = true)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The 5-element rank-3 base set with quotient sizes 17 and 15
    F3 {
        #[arg(long)]
        verify: bool,
    },
    /// Integer set with prescribed |B-B| - |B+B| found by window search
    Gapset {
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        #[arg(long, default_value_t = 16)]
        window: u32,
        /// Allow the composition fallback when the window has no witness
        #[arg(long)]
        compose: bool,
        #[arg(long)]
        verify: bool,
    },
    /// Lift of a gap-t integer set into the infinite dihedral group
    Dinfty {
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        #[arg(long, default_value_t = 16)]
        window: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Disjoint-alphabet family with gap exactly 2n (in the rank-3n free group)
    An {
        #[arg(long)]
        n: usize,
        /// Push the set through the embedding into the rank-2 free group
        #[arg(long)]
        embed: bool,
        #[arg(long)]
        verify: bool,
    },
    /// Powers-and-coset family in the rank-2 free group with quadratic gap
    Ck {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        verify: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        let code = match &err {
            Error::BudgetExceeded { .. } | Error::ExactTooLarge { .. } => 3,
            Error::Malformed { .. }
            | Error::UnsupportedSpec { .. }
            | Error::InvalidArgument(_)
            | Error::WindowTooLarge(_)
            | Error::ContextMismatch(_)
            | Error::DuplicateElement(_)
            | Error::EmptySubset => 2,
            _ => 1,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn verify_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            std::process::exit(2);
        }
        if !quotient_sets::set_thread_cap(threads) && threads > 1 {
            eprintln!("note: built without the parallel feature; --threads ignored");
        }
    }
    if let Err(failure) = run(cli.command) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Quotient { group, set, format } => {
            let ctx = group_from_spec(&group)?;
            let subset = SubsetOfGroup::parse(ctx, &set)?;
            let report = gap_report(&subset);
            match format {
                TextFormat::Json => println!("{}", to_json(&report)),
                TextFormat::Text => {
                    println!("group: {group}");
                    println!("set: {}", subset.format());
                    print_report_text(&report);
                }
            }
            Ok(())
        }
        Command::Graph {
            group,
            set,
            side,
            format,
            labels,
        } => {
            let ctx = group_from_spec(&group)?;
            let subset = SubsetOfGroup::parse(ctx, &set)?;
            let graph = build_difference_graph(&subset, side.into());
            match format {
                GraphFormat::Json => println!("{}", graph.component_summary_json()),
                GraphFormat::Dot => {
                    let options = DotOptions {
                        label_components: labels,
                    };
                    match export_dot(&graph, &options) {
                        Ok(dot) => print!("{dot}"),
                        Err(Error::DotTooLarge(n)) => {
                            eprintln!(
                                "note: n = {n} exceeds the DOT grid cap; emitting the component summary"
                            );
                            println!("{}", graph.component_summary_json());
                        }
                        Err(other) => return Err(other.into()),
                    }
                }
            }
            Ok(())
        }
        Command::Construct { family } => run_construct(family),
        Command::Search {
            group,
            max_size,
            budget,
            format,
        } => {
            let ctx = group_from_spec(&group)?;
            let budget = match budget {
                None => DEFAULT_SEARCH_BUDGET,
                Some(b) if b <= 32 => 1u64 << b,
                Some(b) => {
                    return Err(usage(format!("budget exponent {b} exceeds 32")));
                }
            };
            let verdict = exhaustive_balance_check_with_budget(&ctx, max_size, budget)?;
            match format {
                TextFormat::Json => println!("{}", to_json(&verdict)),
                TextFormat::Text => print_verdict_text(&verdict),
            }
            Ok(())
        }
        Command::Sample {
            radius,
            mode,
            trials,
            seed,
            override_bits,
        } => {
            let mode = match mode {
                SampleMode::Exact => {
                    if trials.is_some() || seed.is_some() {
                        return Err(usage("--trials/--seed apply to --mode mc only"));
                    }
                    StatsMode::Exact {
                        bit_limit_override: override_bits,
                    }
                }
                SampleMode::Mc => {
                    if override_bits.is_some() {
                        return Err(usage("--override-bits applies to --mode exact only"));
                    }
                    StatsMode::MonteCarlo {
                        trials: trials.ok_or_else(|| usage("--mode mc requires --trials"))?,
                        seed: seed.unwrap_or(0),
                    }
                }
            };
            let stats = gap_distribution(radius, mode)?;
            println!("{}", to_json(&stats));
            Ok(())
        }
        Command::Catalog { list: _ } => {
            for (spec, description) in catalog_entries() {
                println!("{spec:<16} {description}");
            }
            Ok(())
        }
    }
}

fn run_construct(family: Family) -> Result<(), Failure> {
    match family {
        Family::F3 { verify } => {
            let set = f3_base_set();
            let report = gap_report(&set);
            println!("group: f:3");
            println!("set: {}", set.format());
            println!("{}", to_json(&report));
            if verify {
                check(
                    "quotient cardinalities",
                    &format!("{}/{}", report.right_card, report.left_card),
                    "17/15",
                )?;
            }
            Ok(())
        }
        Family::Gapset {
            t,
            window,
            compose,
            verify,
        } => {
            let b = if compose {
                realize_gap(t, window)?
            } else {
                find_gap_set(t, window)?
            };
            let sums = sumset(&b).len();
            let diffs = difference_set(&b).len();
            println!("B: {b}");
            println!(
                "{}",
                serde_json::json!({
                    "set": b.to_string(),
                    "sumset_card": sums,
                    "difference_card": diffs,
                    "gap": diffs as i64 - sums as i64,
                })
            );
            if verify {
                check(
                    "gap",
                    &(diffs as i64 - sums as i64).to_string(),
                    &t.to_string(),
                )?;
            }
            Ok(())
        }
        Family::Dinfty { t, window, verify } => {
            let b = realize_gap(t, window)?;
            let set = dinfty_set(&b)?;
            let report = gap_report(&set);
            println!("B: {b}");
            println!("group: dinf");
            println!("set: {}", set.format());
            println!("{}", to_json(&report));
            if verify {
                check(
                    "lift gap",
                    &report.gap.to_string(),
                    &int_gap(&b).to_string(),
                )?;
                check("target gap", &report.gap.to_string(), &t.to_string())?;
            }
            Ok(())
        }
        Family::An { n, embed, verify } => {
            let set = construct_an(n)?;
            let set = if embed {
                let hom = embed_free(3 * n)?;
                apply_hom(&hom, &set)?
            } else {
                set
            };
            let report = gap_report(&set);
            println!("group: f:{}", if embed { 2 } else { 3 * n });
            println!("set: {}", set.format());
            println!("{}", to_json(&report));
            if verify {
                check("gap", &report.gap.to_string(), &(2 * n as i64).to_string())?;
                let (right, left) = an_nominal_cards(n as u64);
                check(
                    "right cardinality (enumerated vs nominal closed form)",
                    &report.right_card.to_string(),
                    &right.to_string(),
                )?;
                check(
                    "left cardinality (enumerated vs nominal closed form)",
                    &report.left_card.to_string(),
                    &left.to_string(),
                )?;
            }
            Ok(())
        }
        Family::Ck { k, verify } => {
            let set = construct_ck(k)?;
            let report = gap_report(&set);
            println!("group: f:2");
            println!("set: {}", set.format());
            println!("{}", to_json(&report));
            if verify {
                check(
                    "right cardinality",
                    &report.right_card.to_string(),
                    &ck_nominal_right(k as u64).to_string(),
                )?;
                check(
                    "gap (enumerated vs nominal closed form)",
                    &report.gap.to_string(),
                    &ck_nominal_gap(k as i64).to_string(),
                )?;
            }
            Ok(())
        }
    }
}

/// Compares an enumerated value against a claimed one, failing loudly on
/// mismatch with both values printed.
fn check(what: &str, enumerated: &str, nominal: &str) -> Result<(), Failure> {
    if enumerated == nominal {
        println!("verify {what}: {enumerated} == {nominal}");
        Ok(())
    } else {
        println!("verify {what}: MISMATCH enumerated {enumerated} vs claimed {nominal}");
        Err(verify_failure(format!(
            "verification mismatch for {what}: enumerated {enumerated}, claimed {nominal}"
        )))
    }
}

fn print_report_text(report: &GapReport) {
    println!(
        "|AA^-1| = {}, |A^-1A| = {}, |AA| = {}, gap = {}, energies = {}/{}, n = {}",
        report.right_card,
        report.left_card,
        report.product_card,
        report.gap,
        report.right_energy,
        report.left_energy,
        report.subset_size
    );
}

fn print_verdict_text(verdict: &SearchVerdict) {
    println!("group: {}", verdict.group);
    println!("max size checked: {}", verdict.max_size_checked);
    println!("subsets examined: {}", verdict.subsets_examined);
    match (&verdict.min_asymmetric_size, &verdict.witness) {
        (Some(size), Some(witness)) => {
            let report = gap_report(witness);
            println!("min asymmetric size: {size}");
            println!("witness: {}", witness.format());
            println!("witness gap: {}", report.gap);
        }
        _ => println!("min asymmetric size: none (all scanned subsets balanced)"),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}
