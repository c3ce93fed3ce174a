//! Command-line interface: every library operation on `.fds` and tree-code
//! files. Exit codes: 0 success, 2 usage or parse error, 3 algebraic
//! failure (division bottom, missing root, factorisation failure).

use clap::{Parser, Subcommand};
use fds_algebra::cycles::{chinese_witness, Permutation};
use fds_algebra::division::{divide_by_cancellative, divide_dendrons, divide_trees};
use fds_algebra::fds::{format_fds, parse_fds, Fds};
use fds_algebra::forest::{decode_code, format_code, parse_code, Tree};
use fds_algebra::ldk::{factor_ldk, factor_ldk_auto};
use fds_algebra::oracle::{enumerate, fixtures, EnumKind};
use fds_algebra::roots::{check_poly_injectivity, kth_root, NatPolynomial};
use fds_algebra::unrolling::unroll_truncated;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 2;
const EXIT_ALGEBRA: u8 = 3;

const FORMAT_HELP: &str = "\
File formats:
  .fds         line 1: state count n; line 2: n space-separated successors
               in [0,n); lines starting with '#' are comments; trailing
               newline required. Outputs are always in canonical form.
  tree code    one line of comma-separated child counts in canonical level
               order (round-trips through decoding).
  forest       one tree code per line.
Exit codes: 0 success, 2 usage or parse error, 3 algebraic failure.";

#[derive(Parser)]
#[command(
    name = "fds",
    about = "Exact arithmetic on finite dynamical systems",
    version,
    after_help = FORMAT_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Disjoint union of two systems.
    Sum {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Direct product of two systems.
    Prod {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Canonical form; prints the canonical code.
    Canon {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// States of depth at most the bound.
    Truncate {
        #[arg(long)]
        depth: u32,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Components with cycle length in the list.
    Supp {
        /// Comma-separated cycle lengths.
        #[arg(long, value_delimiter = ',')]
        lengths: Vec<u64>,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Truncated unrolling: one tree code per line.
    Unroll {
        #[arg(long)]
        depth: u32,
        input: PathBuf,
    },
    /// Dendron division: dividend / divisor.
    Divide {
        dividend: PathBuf,
        divisor: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Finite tree division on code files.
    DivideTree {
        dividend: PathBuf,
        divisor: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Division by a divisor with a fixpoint.
    DivideCancel {
        dividend: PathBuf,
        divisor: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The unique k-th root, if any.
    Root {
        #[arg(short)]
        k: u32,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustively probe polynomial injectivity up to a size bound.
    Polycheck {
        /// Comma-separated coefficient files, constant term first.
        #[arg(long, value_delimiter = ',')]
        poly: Vec<PathBuf>,
        #[arg(long)]
        bound: u64,
    },
    /// Two distinct permutations with equal products against each cycle.
    Witness {
        #[arg(long, value_delimiter = ',')]
        cycles: Vec<u64>,
        /// Prefix for the emitted .fds files.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Unique factorisation in the monoid of K-rhizome linear dendrons.
    FactorLdk {
        /// Rhizome count; inferred when omitted.
        #[arg(short)]
        k: Option<u32>,
        input: PathBuf,
        /// Prefix for the factor .fds files.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate isomorphism classes of one size.
    Enum {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        size: u64,
        #[arg(long)]
        count_only: bool,
    },
    /// Verify the built-in regression fixtures.
    Fixtures {
        /// Directory for the fixture .fds files.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// DOT export.
    Dot { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read_system(path: &Path) -> Result<Fds, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_fds(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_tree(path: &Path) -> Result<Tree, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .ok_or_else(|| format!("{}: empty tree file", path.display()))?;
    let code = parse_code(line).map_err(|e| format!("{}: {e}", path.display()))?;
    decode_code(&code).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit_system(fds: &Fds, output: Option<&Path>) -> Result<(), String> {
    let canonical = fds.canonical_form();
    match output {
        Some(path) => std::fs::write(path, format_fds(&canonical))
            .map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{}", format_fds(&canonical));
            Ok(())
        }
    }
}

fn algebra_failure(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("{msg}");
    ExitCode::from(EXIT_ALGEBRA)
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Sum { a, b, output } => {
            let result = read_system(&a)?.sum(&read_system(&b)?);
            emit_system(&result, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Prod { a, b, output } => {
            let result = read_system(&a)?.product(&read_system(&b)?);
            emit_system(&result, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Canon { input, output } => {
            let sys = read_system(&input)?;
            println!("{}", sys.canonical_code());
            if output.is_some() {
                emit_system(&sys, output.as_deref())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Truncate {
            depth,
            input,
            output,
        } => {
            let result = read_system(&input)?.truncate(depth);
            emit_system(&result, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Supp {
            lengths,
            input,
            output,
        } => {
            let result = read_system(&input)?.supp_in(&lengths);
            emit_system(&result, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Unroll { depth, input } => {
            let forest = unroll_truncated(&read_system(&input)?, depth);
            for tree in forest.iter() {
                println!("{}", format_code(&tree.code()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Divide {
            dividend,
            divisor,
            output,
        } => {
            let c = read_system(&dividend)?;
            let a = read_system(&divisor)?;
            if !c.is_dendron() || !a.is_dendron() {
                return Err("divide expects dendrons; see divide-cancel".into());
            }
            match divide_dendrons(&c, &a) {
                Ok(q) => {
                    emit_system(&q, output.as_deref())?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Ok(algebra_failure(e)),
            }
        }
        Command::DivideTree {
            dividend,
            divisor,
            output,
        } => {
            let c = read_tree(&dividend)?;
            let a = read_tree(&divisor)?;
            match divide_trees(&c, &a) {
                Ok(q) => {
                    let line = format_code(&q.code());
                    match output {
                        Some(path) => std::fs::write(&path, format!("{line}\n"))
                            .map_err(|e| format!("{}: {e}", path.display()))?,
                        None => println!("{line}"),
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Ok(algebra_failure(e)),
            }
        }
        Command::DivideCancel {
            dividend,
            divisor,
            output,
        } => {
            let d = read_system(&dividend)?;
            let a = read_system(&divisor)?;
            if !a.has_fixpoint() {
                return Err("divisor has no fixpoint, so it is not cancellative".into());
            }
            match divide_by_cancellative(&d, &a) {
                Ok(q) => {
                    emit_system(&q, output.as_deref())?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Ok(algebra_failure(e)),
            }
        }
        Command::Root { k, input, output } => {
            if k == 0 {
                return Err("k must be positive".into());
            }
            match kth_root(&read_system(&input)?, k) {
                Ok(r) => {
                    emit_system(&r, output.as_deref())?;
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Ok(algebra_failure(e)),
            }
        }
        Command::Polycheck { poly, bound } => {
            if poly.is_empty() {
                return Err("--poly needs at least one coefficient file".into());
            }
            let coefficients = poly
                .iter()
                .map(|p| read_system(p))
                .collect::<Result<Vec<_>, _>>()?;
            let report = check_poly_injectivity(&NatPolynomial::new(coefficients), bound);
            println!(
                "tested {} classes up to size {}",
                report.classes_tested, report.size_bound
            );
            if report.is_injective() {
                println!("injective");
            } else {
                for v in &report.violations {
                    println!(
                        "collision: {} and {} map to {}",
                        v.first.canonical_code(),
                        v.second.canonical_code(),
                        v.image.canonical_code()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Witness { cycles, output } => {
            if cycles.is_empty() || cycles.iter().any(|&c| c < 2) {
                return Err("--cycles needs entries greater than 1".into());
            }
            let pair = chinese_witness(&cycles);
            let x = pair.x.to_fds();
            let xp = pair.x_prime.to_fds();
            println!("x: {}", x.canonical_code());
            println!("x': {}", xp.canonical_code());
            for &a in &cycles {
                let ca = Permutation::cycle(a);
                let common = ca.product(&pair.x);
                assert_eq!(common, ca.product(&pair.x_prime));
                println!(
                    "C_{a} * x = C_{a} * x' = {}",
                    common.to_fds().canonical_code()
                );
            }
            if let Some(prefix) = output {
                let base = prefix.display();
                std::fs::write(format!("{base}.x.fds"), format_fds(&x.canonical_form()))
                    .map_err(|e| e.to_string())?;
                std::fs::write(
                    format!("{base}.xprime.fds"),
                    format_fds(&xp.canonical_form()),
                )
                .map_err(|e| e.to_string())?;
                for &a in &cycles {
                    let ca = Fds::cycle(a as u32);
                    std::fs::write(
                        format!("{base}.prod-c{a}.fds"),
                        format_fds(&ca.product(&x).canonical_form()),
                    )
                    .map_err(|e| e.to_string())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::FactorLdk { k, input, output } => {
            let p = read_system(&input)?;
            let outcome = match k {
                Some(0) => return Err("K must be positive".into()),
                Some(k) => factor_ldk(&p, k).map(|f| (k, f)).map_err(|e| e.to_string()),
                None => factor_ldk_auto(&p).ok_or_else(|| "no rhizome count fits".to_string()),
            };
            match outcome {
                Ok((k, factors)) => {
                    println!("K = {k}");
                    for f in &factors {
                        println!("{f}");
                    }
                    if let Some(prefix) = output {
                        for (i, f) in factors.iter().enumerate() {
                            std::fs::write(
                                format!("{}.factor-{i}.fds", prefix.display()),
                                format_fds(&f.to_fds().canonical_form()),
                            )
                            .map_err(|e| e.to_string())?;
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Ok(algebra_failure(e)),
            }
        }
        Command::Enum {
            kind,
            size,
            count_only,
        } => {
            let kind =
                EnumKind::parse(&kind).ok_or("kind must be fds, tree, dendron or permutation")?;
            let cursor = enumerate(kind, size);
            if count_only {
                println!("{}", cursor.count());
            } else {
                for sys in cursor {
                    if kind == EnumKind::Tree {
                        let tree = sys.dendron_tree().expect("tree classes are dendrons");
                        println!("{}", format_code(&tree.code()));
                    } else {
                        let canon = sys.canonical_form();
                        let succ: Vec<String> =
                            canon.successors().iter().map(u32::to_string).collect();
                        println!("{} | {}", canon.size(), succ.join(" "));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fixtures { output } => {
            let mut all_ok = true;
            for f in fixtures() {
                let ok = f.holds();
                all_ok &= ok;
                println!("{} {}", if ok { "PASS" } else { "FAIL" }, f.name);
                if let Some(dir) = &output {
                    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
                    std::fs::write(
                        dir.join(format!("{}.lhs.fds", f.name)),
                        format_fds(&f.lhs.canonical_form()),
                    )
                    .map_err(|e| e.to_string())?;
                    std::fs::write(
                        dir.join(format!("{}.rhs.fds", f.name)),
                        format_fds(&f.rhs.canonical_form()),
                    )
                    .map_err(|e| e.to_string())?;
                }
            }
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_ALGEBRA)
            })
        }
        Command::Dot { input } => {
            print!("{}", read_system(&input)?.to_dot());
            Ok(ExitCode::SUCCESS)
        }
    }
}
