use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ire::extension::{apply_positive_step_floating, invert_step_floating};
use ire::extension::{apply_step_extension, apply_step_floating, invert_step_extension};
use ire::induction::{
    apply_step, apply_step_lengths, apply_step_scheme, check_positive_step, invert_step,
    invert_step_lengths, invert_step_scheme, rauzy_class, InductionStep,
};
use ire::io::{
    analyze, class_to_doc, parse_input, surface_svg, surface_to_doc, to_json, tree_to_doc, Input,
};
use ire::realdata::lengths_from_endpoints;
use ire::verify::verify_input;
use ire::{build_surface, glue_ire, rational, worked, BranchRule, IreError};

#[derive(Parser)]
#[command(name = "ire", version, about = "Interval rearrangement ensembles")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Turns, twists, genus and dimensions of a scheme.
    Analyze { input: String },
    /// The dual scheme.
    Dual { input: String },
    /// Apply induction steps in order to a scheme, IRE or extension.
    Induct {
        input: String,
        /// Step such as `rb:d,a`; repeat for a sequence.
        #[arg(long = "step", required = true)]
        steps: Vec<String>,
        /// Apply the inverse steps instead.
        #[arg(long)]
        inverse: bool,
        /// Refuse ties and steps that make a length non-positive.
        #[arg(long)]
        positive: bool,
    },
    /// Enumerate the Rauzy class of a scheme.
    Class {
        input: String,
        #[arg(long, default_value_t = 10_000)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = ClassFormat::Text)]
        format: ClassFormat,
    },
    /// Glue the tree of an IRE (or the dual tree of an extension with `--dual`).
    Glue {
        input: String,
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        branch: BranchArgs,
    },
    /// Build the zippered-rectangle surface of a natural extension.
    Surface {
        input: String,
        #[arg(long, value_enum, default_value_t = SurfaceFormat::Json)]
        format: SurfaceFormat,
        #[command(flatten)]
        branch: BranchArgs,
        /// Branch coordinates for the vertical (dual) tree, comma separated.
        #[arg(long, value_delimiter = ',')]
        vertical_at: Vec<String>,
    },
    /// Run the invariant suite; exits 0 iff every check passes.
    Verify { input: String },
    /// Print the built-in worked extension.
    Example,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceFormat {
    Json,
    Svg,
}

#[derive(clap::Args)]
struct BranchArgs {
    /// Where each reduction places its branch point.
    #[arg(long, value_enum, default_value_t = BranchChoice::Midpoint)]
    branch: BranchChoice,
    /// Explicit branch coordinates, comma separated; overrides `--branch`.
    #[arg(long, value_delimiter = ',')]
    branch_at: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchChoice {
    Midpoint,
    LeftEnd,
}

fn branch_rule(choice: BranchChoice, at: &[String]) -> anyhow::Result<BranchRule> {
    if !at.is_empty() {
        let values = at
            .iter()
            .map(|s| rational::parse(s.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(BranchRule::Explicit(values));
    }
    Ok(match choice {
        BranchChoice::Midpoint => BranchRule::Midpoint,
        BranchChoice::LeftEnd => BranchRule::LeftEnd,
    })
}

/// A path to an existing file, otherwise the literal text.
fn read_input(arg: &str) -> anyhow::Result<Input> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    } else {
        arg.to_string()
    };
    Ok(parse_input(&text)?)
}

fn induct(
    input: Input,
    steps: &[InductionStep],
    inverse: bool,
    positive: bool,
) -> anyhow::Result<Input> {
    if positive && inverse {
        bail!("--positive applies to forward steps only");
    }
    let mut cur = input;
    for st in steps {
        cur = match cur {
            Input::Scheme(_) if positive => bail!("--positive needs lengths, got a bare scheme"),
            Input::Scheme(s) if inverse => Input::Scheme(invert_step_scheme(&s, st)?),
            Input::Scheme(s) => Input::Scheme(apply_step_scheme(&s, st)?),
            Input::Ire(s, x) if inverse => {
                let (s, x) = invert_step(&s, &x, st)?;
                Input::Ire(s, x)
            }
            Input::Ire(s, x) => {
                if positive {
                    check_positive_step(&s, &lengths_from_endpoints(&s, &x)?, st)?;
                }
                let (s, x) = apply_step(&s, &x, st)?;
                Input::Ire(s, x)
            }
            Input::Floating(s, v) if inverse => {
                let (s, v) = invert_step_lengths(&s, &v, st)?;
                Input::Floating(s, v)
            }
            Input::Floating(s, v) => {
                if positive {
                    check_positive_step(&s, &v, st)?;
                }
                let (s, v) = apply_step_lengths(&s, &v, st)?;
                Input::Floating(s, v)
            }
            Input::Extension(e) if inverse => Input::Extension(invert_step_extension(&e, st)?),
            Input::Extension(e) => {
                if positive {
                    check_positive_step(&e.scheme, &e.v, st)?;
                }
                Input::Extension(apply_step_extension(&e, st)?)
            }
            Input::FloatingExtension(e) if inverse => {
                Input::FloatingExtension(invert_step_floating(&e, st)?)
            }
            Input::FloatingExtension(e) if positive => {
                Input::FloatingExtension(apply_positive_step_floating(&e, st)?)
            }
            Input::FloatingExtension(e) => Input::FloatingExtension(apply_step_floating(&e, st)?),
        };
    }
    Ok(cur)
}

fn print_input(input: &Input, as_json: bool) {
    if as_json || !matches!(input, Input::Scheme(_)) {
        println!("{}", to_json(&input.to_doc()));
    } else {
        println!("{}", input.scheme());
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Analyze { input } => {
            let report = analyze(read_input(&input)?.scheme())?;
            if cli.json {
                println!("{}", to_json(&report));
            } else {
                println!("{report}");
            }
        }
        Command::Dual { input } => {
            let dual = read_input(&input)?.scheme().dual();
            if cli.json {
                println!("{}", json!({ "scheme": dual.to_string() }));
            } else {
                println!("{dual}");
            }
        }
        Command::Induct {
            input,
            steps,
            inverse,
            positive,
        } => {
            let steps = steps
                .iter()
                .map(|s| s.parse::<InductionStep>())
                .collect::<Result<Vec<_>, _>>()?;
            let mut steps = steps;
            if inverse {
                steps.reverse();
            }
            let out = induct(read_input(&input)?, &steps, inverse, positive)?;
            print_input(&out, cli.json);
        }
        Command::Class {
            input,
            max_size,
            format,
        } => {
            let class = rauzy_class(read_input(&input)?.scheme(), max_size)?;
            match (cli.json, format) {
                (_, ClassFormat::Dot) => print!("{}", class.to_dot()),
                (true, _) | (_, ClassFormat::Json) => {
                    println!("{}", to_json(&class_to_doc(&class)))
                }
                (false, ClassFormat::Text) => {
                    for s in &class.schemes {
                        println!("{s}");
                    }
                    println!(
                        "{} schemes, {} non-loop edges{}",
                        class.schemes.len(),
                        class.non_loop_edges(),
                        if class.truncated { ", truncated" } else { "" }
                    );
                }
            }
        }
        Command::Glue {
            input,
            dual,
            branch,
        } => {
            let rule = branch_rule(branch.branch, &branch.branch_at)?;
            let tree = match (read_input(&input)?, dual) {
                (Input::Ire(s, x), false) => glue_ire(&s, &x, &rule)?,
                (Input::Extension(e), false) => glue_ire(&e.scheme, &e.x, &rule)?,
                (Input::Extension(e), true) => glue_ire(&e.dual_scheme(), &e.y, &rule)?,
                (_, false) => bail!("glue needs endpoints: {{scheme, x}} or {{scheme, x, y}}"),
                (_, true) => bail!("glue --dual needs a natural extension {{scheme, x, y}}"),
            };
            println!("{}", to_json(&tree_to_doc(&tree)));
        }
        Command::Surface {
            input,
            format,
            branch,
            vertical_at,
        } => {
            let Input::Extension(e) = read_input(&input)? else {
                bail!("surface needs a natural extension {{scheme, x, y}}");
            };
            let h = branch_rule(branch.branch, &branch.branch_at)?;
            let v = branch_rule(branch.branch, &vertical_at)?;
            let surf = build_surface(&e, &h, &v)?;
            match format {
                SurfaceFormat::Json => println!("{}", to_json(&surface_to_doc(&surf))),
                SurfaceFormat::Svg => print!("{}", surface_svg(&surf)),
            }
        }
        Command::Verify { input } => {
            let report = verify_input(&read_input(&input)?);
            if cli.json {
                let checks: Vec<_> = report
                    .checks
                    .iter()
                    .map(|c| json!({ "name": c.name, "ok": c.ok, "detail": c.detail }))
                    .collect();
                let doc = json!({ "ok": report.all_ok(), "checks": checks });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                for c in &report.checks {
                    let mark = if c.ok { "ok  " } else { "FAIL" };
                    if c.detail.is_empty() {
                        println!("{mark} {}", c.name);
                    } else {
                        println!("{mark} {}: {}", c.name, c.detail);
                    }
                }
            }
            if !report.all_ok() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Example => {
            println!(
                "{}",
                to_json(&Input::Extension(worked::worked_example()).to_doc())
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            match err.downcast_ref::<IreError>() {
                Some(IreError::TieDetected { .. }) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
