//! Command-line front end: load a declaration file, run one command, return
//! the text for stdout and the exit code.
//!
//! Exit codes: 0 when a value was computed or every check passed, 1 when a law
//! or check failed, 2 on parse, resolve, invariant or usage errors.

mod parse;
pub mod print;
mod workspace;

use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::Rng;

use crate::fincat::{check_functor, check_nat_trans, chi_leq, opposite_category, validate_category, ViolationReport};
use crate::finspace::{check_product_universal, pairing, product_space, FinSpace, DEFAULT_ENUMERATION_CAP};
use crate::giry::{check_monad_laws, check_mult_naturality, check_unit_naturality, MixMeasure};
use crate::kernel::{check_stoch_laws, compose_kernels, kleisli_apply};
use crate::measure::{bounded_constant, integrate, normalize, pushforward};
use crate::report::LawCheck;
use crate::sample;

pub use parse::{parse_workspace, CliError};
pub use workspace::{Kind, Registry, Workspace};

#[derive(Debug, Parser)]
#[command(name = "finprob", version, about = "Exact checks for finite probability spaces, kernels and the Giry monad")]
struct Cli {
    /// Seed for the randomized law suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Declaration file to load.
    file: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Validate every declaration and every declared category, functor and natural transformation.
    Check,
    /// Print the workspace in canonical form.
    Print,
    /// Chapman-Kolmogorov composite U∘T.
    Compose {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Image measure of a measure under a map.
    Pushforward {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        map: String,
    },
    /// Push a probability measure through a kernel.
    Bind {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        kernel: String,
    },
    /// Integral of an observable.
    Integrate {
        #[arg(long)]
        obs: String,
        #[arg(long)]
        measure: String,
    },
    /// Minimal constant M with dom(f⁻¹(A)) ≤ M·cod(A).
    Bounded {
        #[arg(long)]
        map: String,
        #[arg(long)]
        dom: String,
        #[arg(long)]
        cod: String,
    },
    /// Rescale a finite measure to total mass one.
    Normalize {
        #[arg(long)]
        measure: String,
    },
    /// Whether left ≤ right in the χ preorder.
    Chi {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Product space and projections, optionally with the universal property check.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, requires_all = ["z", "f", "g"])]
        universal: bool,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
    },
    /// Law suites over declared objects plus seeded random samples.
    Laws {
        #[command(subcommand)]
        suite: LawSuite,
    },
    /// Opposite of a declared category.
    Opposite {
        #[arg(long)]
        cat: String,
    },
    /// Check declared functors (all of them, or one).
    FunctorCheck {
        #[arg(long)]
        functor: Option<String>,
    },
    /// Check declared natural transformations (all of them, or one).
    NattransCheck {
        #[arg(long)]
        nattrans: Option<String>,
    },
    #[command(external_subcommand)]
    Unknown(Vec<String>),
}

#[derive(Debug, Clone, Subcommand)]
pub enum LawSuite {
    /// Associativity and identity laws for kernel composition.
    Stoch {
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Unit and associativity laws of the Giry monad.
    Monad {
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Naturality of unit and multiplication along a map.
    Naturality {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return (e.render().to_string(), e.exit_code()),
    };
    let text = match std::fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => return (format!("error: {}\n", CliError::Io(format!("{}: {e}", cli.file.display()))), 2),
    };
    match parse_workspace(&text) {
        Ok(ws) => run_command(&ws, &cli.command, cli.seed),
        Err(e) => (format!("error: {e}\n"), 2),
    }
}

/// Runs one command against a loaded workspace.
pub fn run_command(ws: &Workspace, command: &Command, seed: u64) -> (String, i32) {
    if let Command::Unknown(words) = command {
        let name = words.first().map(String::as_str).unwrap_or_default();
        return (format!("error: UnknownCommand: {name}\n"), 2);
    }
    match execute(ws, command, seed) {
        Ok((out, true)) => (out, 0),
        Ok((out, false)) => (out, 1),
        Err(e) => (format!("error: {e}\n"), 2),
    }
}

fn lookup<'a, T>(registry: &'a Registry<T>, kind: Kind, name: &str) -> Result<&'a T, CliError> {
    registry.get(name).ok_or_else(|| CliError::Resolve {
        code: "UnknownName",
        at: None,
        msg: format!("no {} named {name}", kind.keyword()),
    })
}

fn invariant(e: impl std::fmt::Display) -> CliError {
    CliError::invariant(e, None)
}

fn laws_text(checks: &[&LawCheck]) -> (String, bool) {
    let out = checks.iter().map(|c| format!("{c}\n")).collect();
    (out, checks.iter().all(|c| c.passed()))
}

fn violations_text(kind: &str, name: &str, report: &ViolationReport, out: &mut String) {
    if report.is_valid() {
        writeln!(out, "{kind} {name} PASS").unwrap();
    } else {
        writeln!(out, "{kind} {name} FAIL").unwrap();
        for v in &report.violations {
            writeln!(out, "  {v}").unwrap();
        }
    }
}

fn execute(ws: &Workspace, command: &Command, seed: u64) -> Result<(String, bool), CliError> {
    let mut rng = sample::rng(seed);
    match command {
        Command::Check => {
            let mut out = format!(
                "loaded {} spaces, {} measures, {} maps, {} kernels, {} observables, {} mixes, {} mix2, {} chi, {} categories, {} functors, {} nattrans\n",
                ws.spaces.len(),
                ws.measures.len(),
                ws.maps.len(),
                ws.kernels.len(),
                ws.observables.len(),
                ws.mixes.len(),
                ws.mix2s.len(),
                ws.chis.len(),
                ws.categories.len(),
                ws.functors.len(),
                ws.nattrans.len()
            );
            let mut ok = true;
            for (name, c) in ws.categories.iter() {
                let r = validate_category(c);
                ok &= r.is_valid();
                violations_text("category", name, &r, &mut out);
            }
            for (name, f) in ws.functors.iter() {
                let r = check_functor(f);
                ok &= r.is_valid();
                violations_text("functor", name, &r, &mut out);
            }
            for (name, t) in ws.nattrans.iter() {
                let r = check_nat_trans(t);
                ok &= r.is_valid();
                violations_text("nattrans", name, &r, &mut out);
            }
            writeln!(out, "check {}", if ok { "PASS" } else { "FAIL" }).unwrap();
            Ok((out, ok))
        }
        Command::Print => Ok((ws.to_text(), true)),
        Command::Compose { left, right } => {
            let u = lookup(&ws.kernels, Kind::Kernel, left)?;
            let t = lookup(&ws.kernels, Kind::Kernel, right)?;
            let ut = compose_kernels(u, t).map_err(invariant)?;
            Ok((print::kernel(&format!("{left}_o_{right}"), &ut) + "\n", true))
        }
        Command::Pushforward { measure, map } => {
            let m = lookup(&ws.measures, Kind::Measure, measure)?;
            let f = lookup(&ws.maps, Kind::Map, map)?;
            let image = pushforward(m, f).map_err(invariant)?;
            Ok((print::measure(&format!("{measure}_push_{map}"), &image) + "\n", true))
        }
        Command::Bind { measure, kernel } => {
            let m = lookup(&ws.measures, Kind::Measure, measure)?;
            let t = lookup(&ws.kernels, Kind::Kernel, kernel)?;
            let out = kleisli_apply(t, m).map_err(invariant)?;
            Ok((print::measure(&format!("{measure}_bind_{kernel}"), &out) + "\n", true))
        }
        Command::Integrate { obs, measure } => {
            let theta = lookup(&ws.observables, Kind::Observable, obs)?;
            let m = lookup(&ws.measures, Kind::Measure, measure)?;
            let value = integrate(theta, m).map_err(invariant)?;
            Ok((print::rational(&value) + "\n", true))
        }
        Command::Bounded { map, dom, cod } => {
            let f = lookup(&ws.maps, Kind::Map, map)?;
            let p = lookup(&ws.measures, Kind::Measure, dom)?;
            let q = lookup(&ws.measures, Kind::Measure, cod)?;
            match bounded_constant(f, p, q).map_err(invariant)? {
                Some(m) => Ok((format!("M = {}\n", print::rational(&m)), true)),
                None => Ok(("UNBOUNDED\n".to_string(), false)),
            }
        }
        Command::Normalize { measure } => {
            let m = lookup(&ws.measures, Kind::Measure, measure)?;
            let n = normalize(m).map_err(invariant)?;
            Ok((print::measure(&format!("{measure}_norm"), &n) + "\n", true))
        }
        Command::Chi { left, right } => {
            let v = lookup(&ws.chis, Kind::Chi, left)?;
            let u = lookup(&ws.chis, Kind::Chi, right)?;
            let leq = chi_leq(v, u).map_err(invariant)?;
            Ok((format!("{leq}\n"), leq))
        }
        Command::Product { left, right, universal, z, f, g } => {
            let x = lookup(&ws.spaces, Kind::Space, left)?;
            let y = lookup(&ws.spaces, Kind::Space, right)?;
            let product = product_space(x, y);
            let mut out = format!(
                "{}\n{}\n{}\n",
                print::space(&product.space),
                print::map(&product.p1),
                print::map(&product.p2)
            );
            if !universal {
                return Ok((out, true));
            }
            let (z, f, g) = (z.as_deref().unwrap_or(""), f.as_deref().unwrap_or(""), g.as_deref().unwrap_or(""));
            let zs = lookup(&ws.spaces, Kind::Space, z)?;
            let fm = lookup(&ws.maps, Kind::Map, f)?;
            let gm = lookup(&ws.maps, Kind::Map, g)?;
            let report = check_product_universal(x, y, zs, fm, gm, DEFAULT_ENUMERATION_CAP).map_err(invariant)?;
            let pair = pairing(fm, gm, &product).map_err(invariant)?;
            writeln!(out, "{}", print::map(&pair)).unwrap();
            writeln!(out, "candidates {}", report.candidates).unwrap();
            writeln!(out, "measurable {}", report.measurable).unwrap();
            writeln!(out, "mediating {}", report.mediating).unwrap();
            writeln!(out, "witness is pairing: {}", report.witness_is_pairing).unwrap();
            let ok = report.holds();
            writeln!(out, "universal {}", if ok { "PASS" } else { "FAIL" }).unwrap();
            Ok((out, ok))
        }
        Command::Laws { suite } => match suite {
            LawSuite::Stoch { samples } => {
                let mut report = check_stoch_laws(&ws.kernels.iter().map(|(_, k)| k.clone()).collect::<Vec<_>>());
                for s in 0..*samples {
                    let spaces: Vec<FinSpace> = (0..4)
                        .map(|i| {
                            let atoms = rng.gen_range(2..=6);
                            sample::space(&mut rng, &format!("S{s}_{i}"), "x", atoms)
                        })
                        .collect();
                    let chain: Vec<_> = spaces.windows(2).map(|w| sample::kernel(&mut rng, &w[0], &w[1])).collect();
                    let r = check_stoch_laws(&chain);
                    report.associativity.absorb(r.associativity);
                    report.left_identity.absorb(r.left_identity);
                    report.right_identity.absorb(r.right_identity);
                }
                Ok(laws_text(&[&report.associativity, &report.left_identity, &report.right_identity]))
            }
            LawSuite::Monad { samples } => {
                let mut all: Vec<_> = ws.mix2s.iter().map(|(_, m)| m.clone()).collect();
                for s in 0..*samples {
                    let atoms = rng.gen_range(1..=5);
                    let space = sample::space(&mut rng, &format!("S{s}"), "x", atoms);
                    all.push(sample::mix_mix(&mut rng, &space, 4));
                }
                let report = check_monad_laws(&all);
                Ok(laws_text(&[&report.left_unit, &report.right_unit, &report.associativity]))
            }
            LawSuite::Naturality { map, samples } => {
                let f = lookup(&ws.maps, Kind::Map, map)?;
                let unit = check_unit_naturality(f, f.dom().points()).map_err(invariant)?;
                let mut mixes: Vec<MixMeasure> =
                    ws.mixes.iter().filter(|(_, m)| m.base() == f.dom()).map(|(_, m)| m.clone()).collect();
                mixes.extend((0..*samples).map(|_| sample::mix(&mut rng, f.dom(), 4)));
                let mult = check_mult_naturality(f, &mixes).map_err(invariant)?;
                Ok(laws_text(&[&unit, &mult]))
            }
        },
        Command::Opposite { cat } => {
            let c = lookup(&ws.categories, Kind::Category, cat)?;
            Ok((print::category(&opposite_category(c)) + "\n", true))
        }
        Command::FunctorCheck { functor } => {
            let mut out = String::new();
            let mut ok = true;
            let selected: Vec<_> = match functor {
                Some(name) => vec![(name.as_str(), lookup(&ws.functors, Kind::Functor, name)?)],
                None => ws.functors.iter().collect(),
            };
            for (name, f) in selected {
                let r = check_functor(f);
                ok &= r.is_valid();
                violations_text("functor", name, &r, &mut out);
            }
            Ok((out, ok))
        }
        Command::Unknown(_) => unreachable!("handled in run_command"),
        Command::NattransCheck { nattrans } => {
            let mut out = String::new();
            let mut ok = true;
            let selected: Vec<_> = match nattrans {
                Some(name) => vec![(name.as_str(), lookup(&ws.nattrans, Kind::NatTrans, name)?)],
                None => ws.nattrans.iter().collect(),
            };
            for (name, t) in selected {
                let r = check_nat_trans(t);
                ok &= r.is_valid();
                violations_text("nattrans", name, &r, &mut out);
            }
            Ok((out, ok))
        }
    }
}
