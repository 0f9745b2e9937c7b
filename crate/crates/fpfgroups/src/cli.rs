//! Argument parsing and dispatch. Exit status: 0 when every check passes,
//! 1 on a failed check or a finding, 2 on bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fpfgroups_core::criterion::DEFAULT_CAP;
use fpfgroups_core::group::LoadOptions;
use fpfgroups_core::report::VerificationReport;
use fpfgroups_core::suite::SuiteOptions;

use crate::commands::{self, Selection};
use crate::formats::{self, load_action, load_group, load_lie};
use crate::output::{render_exponent_table, render_report, render_reports, summary_text, Format};

#[derive(Debug, Parser)]
#[command(name = "fpfgroups", version, about = "Fixed-point-free four-group actions and their Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Prime for Jennings computations; inferred from the order of a p-group.
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    /// Cap on enumerated vectors per weight.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Worker threads for fixture-level parallelism.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file, or directory for `verify all` and `fixtures build`.
    #[arg(short = 'o', long = "out", global = true)]
    pub out: Option<PathBuf>,
    /// Leave timing out of reports.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, exponent, series, powerful predicate, Jennings layers.
    Info { file: PathBuf },
    /// Jennings-Zassenhaus filtration, DL(G), L_p(G) and Lazard's identity.
    Jennings {
        file: PathBuf,
        /// Action file whose maps are induced on DL(G).
        #[arg(long)]
        action: Option<PathBuf>,
        /// Write DL(G) as a Lie algebra file.
        #[arg(long)]
        emit_lie: Option<PathBuf>,
    },
    /// Check that maps define a faithful action.
    Action {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Lemmas on the components G_1, G_2, G_3.
    Vtheory {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// x * y for x, y in different components.
    Star { group: PathBuf, action: PathBuf, x: usize, y: usize },
    /// Graded lemmas and the (m, n) profile of a Lie algebra file with an action.
    Criterion {
        lie: PathBuf,
        /// Coordinates of x1; searched for when absent.
        #[arg(long, value_delimiter = ',')]
        x1: Option<Vec<u32>>,
    },
    /// Built-in fixture families.
    Fixtures {
        #[command(subcommand)]
        cmd: FixturesCmd,
    },
    /// Tables over fixture families.
    Report {
        #[command(subcommand)]
        cmd: ReportCmd,
    },
    /// Full verification runs.
    Verify {
        #[command(subcommand)]
        cmd: VerifyAllCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    Verify { group: PathBuf, action: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum FixturesCmd {
    /// Write group, action and expectation files for a fixture.
    Build {
        /// heisenberg_d8, cube_s4, affine_v or products.
        name: String,
        #[arg(long = "p")]
        p: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReportCmd {
    /// Exponent table over a parameter range.
    Exponents {
        family: String,
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyAllCmd {
    /// Every suite on each selected fixture.
    All {
        /// Fixture names, family names or family:param items.
        #[arg(long, value_delimiter = ',')]
        select: Option<Vec<String>>,
        /// Directory of fixture directories instead of the built-in set.
        #[arg(long)]
        from: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn single(g: &GlobalArgs, r: &VerificationReport, elapsed: Duration) -> Result<bool> {
    let t = (!g.no_timing).then_some(elapsed);
    emit(g.out.as_deref(), &render_report(r, g.format, t))?;
    Ok(r.passed())
}

/// Runs a parsed command; `Ok(passed)` or an input error.
pub fn run(cli: &Cli) -> Result<bool> {
    let g = &cli.global;
    let start = Instant::now();
    let opts = LoadOptions::default();
    match &cli.command {
        Command::Info { file } => {
            let grp = load_group(file, &opts)?;
            let mut r = commands::info(&grp, g.prime)?;
            r.subject = file.display().to_string();
            single(g, &r, start.elapsed())
        }
        Command::Jennings { file, action, emit_lie } => {
            let grp = load_group(file, &opts)?;
            let spec = action.as_ref().map(|a| load_action(a, grp.order())).transpose()?;
            let (r, lie) = commands::jennings(&grp, g.prime, spec.as_ref())?;
            if let Some(path) = emit_lie {
                formats::write_json(path, &lie)?;
            }
            single(g, &r, start.elapsed())
        }
        Command::Action { cmd: VerifyCmd::Verify { group, action } } => {
            let grp = load_group(group, &opts)?;
            let spec = load_action(action, grp.order())?;
            single(g, &commands::action_verify(&grp, &spec)?, start.elapsed())
        }
        Command::Vtheory { cmd: VerifyCmd::Verify { group, action } } => {
            let grp = load_group(group, &opts)?;
            let spec = load_action(action, grp.order())?;
            single(g, &commands::vtheory_verify(&grp, &spec)?, start.elapsed())
        }
        Command::Star { group, action, x, y } => {
            let grp = load_group(group, &opts)?;
            let spec = load_action(action, grp.order())?;
            single(g, &commands::star(&grp, &spec, *x, *y)?, start.elapsed())
        }
        Command::Criterion { lie, x1 } => {
            let (l, act) = load_lie(lie)?;
            let Some(act) = act else { bail!("{}: no action in the Lie algebra file", lie.display()) };
            let r = commands::criterion(&l, &act, x1.as_deref(), g.cap)?;
            single(g, &r, start.elapsed())
        }
        Command::Fixtures { cmd: FixturesCmd::Build { name, p } } => {
            let Some(p) = p.or(g.prime) else { bail!("fixtures build needs --p") };
            let Some(dir) = g.out.as_deref() else { bail!("fixtures build needs -o <dir>") };
            let f = commands::build_fixture(name, p, dir)?;
            println!("{}: order {}, written to {}", f.name, f.group.order(), dir.display());
            Ok(true)
        }
        Command::Report { cmd: ReportCmd::Exponents { family, params } } => {
            let rows = commands::exponent_rows(family, params)?;
            emit(g.out.as_deref(), &render_exponent_table(family, &rows, g.format))?;
            Ok(true)
        }
        Command::Verify { cmd: VerifyAllCmd::All { select, from } } => {
            let sel = match from {
                Some(dir) => Selection::Directory(dir.clone(), select.clone()),
                None => Selection::Builtin(select.clone()),
            };
            let suite = SuiteOptions { cap: g.cap };
            let reports = commands::verify_all(&sel, &suite)?;
            let passed = reports.iter().all(|(r, _)| r.passed());
            match g.out.as_deref() {
                Some(dir) => {
                    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                    for (r, d) in &reports {
                        let path = dir.join(format!("{}.{}", r.subject, g.format.extension()));
                        let t = (!g.no_timing).then_some(*d);
                        emit(Some(&path), &render_report(r, g.format, t))?;
                    }
                    emit(Some(&dir.join("summary.txt")), &summary_text(reports.iter().map(|(r, _)| r)))?;
                    print!("{}", summary_text(reports.iter().map(|(r, _)| r)));
                }
                None => print!("{}", render_reports(&reports, g.format, !g.no_timing)),
            }
            Ok(passed)
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
