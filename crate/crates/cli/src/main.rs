//! `legknots`: classical invariants and classification of Legendrian and
//! transversal knots from the command line.
//!
//! Exit status: 0 success, 1 invalid input, 2 negative answer to a
//! predicate (not realizable, not isotopic), 3 step limit exhausted.

mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use legknots::bypass::{self, BypassError, DividingConfig, NormalizationOutcome};
use legknots::classify::{self, Isotopy, KnotType, LegendrianClass};
use legknots::transversal::{self, CablingList};
use legknots::{convex, front, lattice};
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    /// A well-posed question whose answer is "no"; the message is the answer.
    #[error("{0}")]
    Negative(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Negative(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Parser)]
#[command(name = "legknots", version, about = "Legendrian and transversal knot invariants and classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Svg,
}

/// A `tb,rot` pair such as `-22,3`.
fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected tb,rot")?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

#[derive(Subcommand)]
enum Command {
    /// Thurston-Bennequin and rotation numbers of a front diagram:
    /// tb = writhe - #right cusps, rot = (#down cusps - #up cusps) / 2.
    /// With --knot, the diagram is checked against the Bennequin inequality
    /// tb + |rot| <= -chi for the declared knot type.
    Invariants {
        /// Front file: one event per line, `L i`, `R i` or `X i`; `#` starts a comment.
        file: PathBuf,
        /// Declared knot type: unknot, torus:p,q or fig8.
        #[arg(long)]
        knot: Option<KnotType>,
    },
    /// Is (tb, rot) realized by a Legendrian knot of this type? Answers from
    /// the classification of Legendrian unknots, torus knots and the
    /// figure-eight knot, which are determined by (tb, rot).
    Classify {
        #[arg(long)]
        knot: KnotType,
        #[arg(long, allow_hyphen_values = true)]
        tb: i64,
        #[arg(long, allow_hyphen_values = true)]
        rot: i64,
    },
    /// Decide Legendrian isotopy of two classes. For the knot types covered,
    /// Legendrian knots are determined up to isotopy by tb and rot.
    Isotopic {
        #[arg(long)]
        knot: KnotType,
        /// First class as tb,rot.
        #[arg(allow_hyphen_values = true, value_parser = parse_pair)]
        a: (i64, i64),
        /// Second class as tb,rot.
        #[arg(allow_hyphen_values = true, value_parser = parse_pair)]
        b: (i64, i64),
    },
    /// Mountain range: every realizable (tb, rot) down to `depth` stabilizations
    /// below the maximal tb, from the classification theorems. Output is
    /// ordered by rot ascending, then tb descending.
    Range {
        #[arg(long)]
        knot: KnotType,
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Valleys of a negative torus knot's mountain range: the highest common
    /// stabilization of neighbouring peaks (|p| = mq + e; the gaps between
    /// peak rotation numbers are 2e and 2(q - e)).
    Valleys {
        #[arg(long)]
        knot: KnotType,
    },
    /// Negative continued fraction -p/q = [r0, ..., rk] with every ri <= -2.
    FareyCf { p: i64, q: i64 },
    /// Number of tight contact structures on the solid torus with boundary
    /// slope -p/q and two dividing curves: |(r0+1)...(r(k-1)+1) rk|.
    FareyCount { p: i64, q: i64 },
    /// Normalize a dividing-curve configuration on the figure-eight fiber by
    /// bypass moves: either it reaches the standard tight or the overtwisted
    /// orbit of maximal-tb configurations, or a destabilization is found.
    BypassNormalize {
        /// Configuration such as `III:1,2,inf`, `II:1x2,infx2` or `I:infx5+1c`.
        config: DividingConfig,
        /// Maximum number of moves; the default scales with the Farey depth.
        #[arg(long)]
        limit: Option<usize>,
        /// Print the move trace.
        #[arg(long)]
        trace: bool,
    },
    /// Maximal self-linking number of transversal knots: max over the
    /// Legendrian peaks of tb + rot (transversal push-off).
    TransversalMaxSl {
        #[arg(long)]
        knot: KnotType,
    },
    /// Maximal self-linking number of an iterated torus knot, by the cabling
    /// recursion starting from a1 = (q1 - 1) p1.
    TransversalIterated {
        /// Cabling sequence `p1,q1;p2,q2;...`.
        #[arg(allow_hyphen_values = true)]
        cables: CablingList,
    },
    /// Compare max tb with the Bennequin bound -chi and, for negative torus
    /// knots, the Kauffman-polynomial bound (q even: -|p|q; q odd:
    /// -|p|q + |p| - q).
    Bounds {
        #[arg(long)]
        knot: KnotType,
    },
}

fn run(cmd: Command) -> Result<String, CliError> {
    let mut out = String::new();
    match cmd {
        Command::Invariants { file, knot } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
            let d = front::parse_front(&text).map_err(input)?;
            let inv = d.invariants();
            if let Some(k) = knot {
                if !classify::satisfies_bennequin(k, inv.tb, inv.rot) {
                    return Err(CliError::Input(format!(
                        "tb={} rot={} violates the Bennequin bound {} for {k}",
                        inv.tb,
                        inv.rot,
                        -classify::euler_char(k)
                    )));
                }
            }
            writeln!(out, "tb={}", inv.tb).unwrap();
            writeln!(out, "rot={}", inv.rot).unwrap();
            writeln!(out, "writhe={}", inv.writhe).unwrap();
            writeln!(out, "right_cusps={}", inv.right_cusps).unwrap();
        }
        Command::Classify { knot, tb, rot } => {
            let top = classify::max_tb(knot);
            if !classify::realizable(knot, tb, rot) {
                return Err(CliError::Negative(format!(
                    "not realizable: {knot} has no Legendrian representative with tb={tb} rot={rot}"
                )));
            }
            writeln!(out, "realizable").unwrap();
            writeln!(out, "max_tb={top}").unwrap();
            writeln!(out, "stabilizations={}", top - tb).unwrap();
        }
        Command::Isotopic { knot, a, b } => {
            let a = LegendrianClass::new(knot, a.0, a.1).map_err(input)?;
            let b = LegendrianClass::new(knot, b.0, b.1).map_err(input)?;
            match classify::decide_isotopy(&a, &b) {
                Isotopy::Isotopic => writeln!(out, "isotopic").unwrap(),
                Isotopy::Distinct => return Err(CliError::Negative("distinct".into())),
            }
        }
        Command::Range {
            knot,
            depth,
            format,
        } => {
            let range = classify::mountain_range(knot, depth);
            out = match format {
                Format::Tsv => render::tsv(&range),
                Format::Svg => render::svg(&range),
            };
        }
        Command::Valleys { knot } => {
            let peaks = classify::peaks(knot);
            for w in peaks.windows(2) {
                let (tb, rot) = classify::common_destabilization(knot, w[0], w[1]).map_err(input)?;
                writeln!(out, "{tb}\t{rot}").unwrap();
            }
        }
        Command::FareyCf { p, q } => {
            let cf = lattice::neg_cf(p, q).map_err(input)?;
            let parts: Vec<String> = cf.iter().map(i64::to_string).collect();
            writeln!(out, "{}", parts.join(" ")).unwrap();
        }
        Command::FareyCount { p, q } => {
            writeln!(out, "{}", convex::tight_count(p, q).map_err(input)?).unwrap();
        }
        Command::BypassNormalize {
            config,
            limit,
            trace,
        } => {
            let limit = limit.unwrap_or_else(|| bypass::default_step_limit(&config));
            let outcome = match bypass::normalize(&config, limit) {
                Ok(o) => o,
                Err(e @ BypassError::NonTermination { .. }) => return Err(CliError::Limit(e.to_string())),
                Err(e) => return Err(input(e)),
            };
            let (verdict, moves) = match &outcome {
                NormalizationOutcome::StandardTight { trace } => ("standard-tight".to_string(), trace),
                NormalizationOutcome::Overtwisted { trace } => ("overtwisted".to_string(), trace),
                NormalizationOutcome::Destabilizes { trace, steps } => {
                    (format!("destabilizes after {steps} moves"), trace)
                }
            };
            writeln!(out, "{verdict}").unwrap();
            if trace {
                for m in moves {
                    writeln!(out, "{m}").unwrap();
                }
            }
        }
        Command::TransversalMaxSl { knot } => {
            writeln!(out, "{}", transversal::max_sl(knot)).unwrap();
        }
        Command::TransversalIterated { cables } => {
            writeln!(out, "{}", transversal::iterated_max_sl(&cables)).unwrap();
        }
        Command::Bounds { knot } => {
            let b = classify::bounds_report(knot).map_err(input)?;
            writeln!(out, "max_tb={}", b.max_tb).unwrap();
            writeln!(out, "bennequin={}", b.bennequin).unwrap();
            match b.fuchs_tabachnikov {
                Some(ft) => writeln!(out, "kauffman={ft}").unwrap(),
                None => writeln!(out, "kauffman=none").unwrap(),
            }
            writeln!(out, "strict={}", b.strict).unwrap();
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            // a negative answer is still an answer
            if let CliError::Negative(_) = e {
                println!("{e}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
    }
}
