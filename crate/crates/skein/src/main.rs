use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use skein::fixtures::{self, FixtureError};
use skein::report::{self, any_failed, Check, Status};
use skein_core::{Lamination, Triangulation};

#[derive(Parser)]
#[command(name = "skein", version, about = "Canonical functions of laminations on triangulated surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    surface: PathBuf,
    #[arg(long)]
    lam: PathBuf,
    /// Flip sequence "k1,k2,..." applied before computing.
    #[arg(long, default_value = "")]
    flips: String,
    /// Multiply every weight by K.
    #[arg(long)]
    weight: Option<i64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Expansion with its F · X^h factorization.
    Expand(Common),
    /// Tropical coordinates a_i and the h-vector.
    Coords(Common),
    /// Grassmannian Euler characteristics of M_{T,l}.
    Chi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dim: Option<String>,
    },
    /// F-polynomials from every route, side by side.
    Fpoly(Common),
    /// Flip transport against native recomputation.
    Flipcheck(Common),
    /// Full property suite on one lamination or a fixture tree.
    Verify {
        #[arg(long, required_unless_present = "all")]
        surface: Option<PathBuf>,
        #[arg(long)]
        lam: Option<PathBuf>,
        #[arg(long)]
        all: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Cluster variables after a mutation path.
    Seed {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, default_value = "")]
        flips: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Framed quiver, count tables and the module isomorphism verdict.
    Framed {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Basis and arrow action of M_{T,l}.
    Module(Common),
}

/// Failure of the inputs, as opposed to a failed verification.
#[derive(Debug, thiserror::Error)]
#[error(transparent)]
struct InputError(#[from] FixtureError);

fn load(c: &Common) -> Result<(Triangulation, Lamination)> {
    let (_, t) = fixtures::load_surface(&c.surface).map_err(InputError)?;
    let (_, lam) = fixtures::load_lamination(&c.lam, &t).map_err(InputError)?;
    let lam = match c.weight {
        Some(k) => lam.scaled(k),
        None => lam,
    };
    let flips = report::parse_list(&c.flips)?;
    report::apply_flips(&t, &lam, &flips)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render_checks(title: &str, checks: &[Check], s: &mut String) {
    s.push_str(&format!("== {title}\n"));
    for c in checks {
        s.push_str(&c.line());
        s.push('\n');
    }
}

fn verify_tree(root: &Path, seed: u64) -> Result<(String, bool)> {
    let mut s = String::new();
    let mut failed = false;
    for dir in fixtures::discover(root).map_err(InputError)? {
        let (name, t) = fixtures::load_surface(&dir.surface).map_err(InputError)?;
        let checks = report::verify_surface(&t);
        if !checks.is_empty() {
            render_checks(&format!("{name}: surface"), &checks, &mut s);
            failed |= any_failed(&checks);
        }
        for p in &dir.laminations {
            let (lname, lam) = fixtures::load_lamination(p, &t).map_err(InputError)?;
            let checks = report::verify_lamination(&t, &lam, seed);
            render_checks(&format!("{name}: {lname}"), &checks, &mut s);
            failed |= any_failed(&checks);
        }
        for p in &dir.skein {
            let (sname, inst) = fixtures::load_skein(p).map_err(InputError)?;
            let c = report::verify_skein_instance(&t, &inst);
            failed |= c.status == Status::Fail;
            render_checks(&format!("{name}: {sname}"), &[c], &mut s);
        }
    }
    Ok((s, failed))
}

fn run(cli: Cli) -> Result<bool> {
    let mut failed = false;
    match cli.command {
        Command::Expand(c) => {
            let (t, lam) = load(&c)?;
            let (text, warn) = report::expand(&t, &lam)?;
            if let Some(w) = warn {
                eprintln!("warning: {w}");
            }
            emit(c.out.as_deref(), &text)?;
        }
        Command::Coords(c) => {
            let (t, lam) = load(&c)?;
            emit(c.out.as_deref(), &report::coords(&t, &lam)?)?;
        }
        Command::Chi { common, dim } => {
            let (t, lam) = load(&common)?;
            let dim = dim.as_deref().map(report::parse_list).transpose()?;
            emit(common.out.as_deref(), &report::chi(&t, &lam, dim.as_deref())?)?;
        }
        Command::Fpoly(c) => {
            let (t, lam) = load(&c)?;
            emit(c.out.as_deref(), &report::fpoly(&t, &lam)?)?;
        }
        Command::Flipcheck(c) => {
            let (t, lam) = load(&c)?;
            let checks = report::flipcheck(&t, &lam, &[]);
            let mut s = String::new();
            render_checks("flip invariance", &checks, &mut s);
            failed = any_failed(&checks);
            emit(c.out.as_deref(), &s)?;
        }
        Command::Verify { surface, lam, all, out, seed } => {
            let (text, f) = match (all, surface) {
                (Some(root), _) => verify_tree(&root, seed)?,
                (None, Some(surface)) => {
                    let (name, t) = fixtures::load_surface(&surface).map_err(InputError)?;
                    let mut s = String::new();
                    let mut checks = report::verify_surface(&t);
                    if let Some(lp) = lam {
                        let (_, l) = fixtures::load_lamination(&lp, &t).map_err(InputError)?;
                        checks.extend(report::verify_lamination(&t, &l, seed));
                    }
                    render_checks(&name, &checks, &mut s);
                    (s, any_failed(&checks))
                }
                (None, None) => unreachable!("clap requires --surface or --all"),
            };
            failed = f;
            emit(out.as_deref(), &text)?;
        }
        Command::Seed { surface, flips, out } => {
            let (_, t) = fixtures::load_surface(&surface).map_err(InputError)?;
            emit(out.as_deref(), &report::seed(&t, &report::parse_list(&flips)?)?)?;
        }
        Command::Framed { common, seed } => {
            let (t, lam) = load(&common)?;
            let (mut text, checks) = report::framed(&t, &lam, seed)?;
            render_checks("checks", &checks, &mut text);
            failed = any_failed(&checks);
            emit(common.out.as_deref(), &text)?;
        }
        Command::Module(c) => {
            let (t, lam) = load(&c)?;
            emit(c.out.as_deref(), &report::module(&t, &lam)?)?;
        }
    }
    Ok(failed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
