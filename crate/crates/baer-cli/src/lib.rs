//! Command-line front end: descriptor parsing, computation dispatch, text
//! and JSON output.
//!
//! Exit codes: 0 on success, 1 when a computation is refused by a resource
//! guard, 2 on usage or descriptor errors. Results go to stdout, error text
//! to stderr.

pub mod parse;
pub mod render;

use baer::collect::{verify_theorem_11_with, CollectError, DEFAULT_VERIFY_MAX_CLASS};
use baer::gamma::{gamma, GammaError};
use baer::hall::{HallBasis, HallError, DEFAULT_BASIS_CEILING};
use baer::pgroups::{bound_theorem17, capability, multiplier, GroupDescriptor, PGroupError};
use baer::witt::witt;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use parse::descriptor_to_string;
use serde_json::json;
use std::io::Write;

#[derive(Parser, Debug)]
#[command(
    name = "baer",
    version,
    about = "c-nilpotent multipliers, bounds and capability for recognized finite p-groups",
    after_help = "Descriptors: Ab(p;e1,e2,..), ES(p;m;expP|expP2|D8|Q8), \
                  GES(p;m;split|central;rank), Zp(p,e), 1; join factors with 'x'.\n\
                  GES(p;1;split;r) denotes the capable representative (E1 or D8 times \
                  an elementary group); spell other variants as explicit products."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    /// Nilpotency class of the variety (c = 1 is the classical multiplier).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    c: u32,
    /// Emit a JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// c-nilpotent multiplier of a recognized group descriptor.
    Multiplier {
        #[command(flatten)]
        common: Common,
        /// Group descriptor, e.g. "ES(5;2;expP)" or "ES(3;1;expP) x Ab(3;1,1)".
        descriptor: String,
    },
    /// Capability and c-capability verdict for (generalized) extra-specials.
    Capability {
        #[command(flatten)]
        common: Common,
        descriptor: String,
    },
    /// Order-bound exponent for |G| = p^n with |G'| = p^m.
    Bound {
        /// Exponent of the group order.
        #[arg(long)]
        n: u32,
        /// Exponent of the derived-subgroup order.
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Number of basic commutators of weight n on d letters.
    Witt {
        /// Commutator weight (>= 1).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Alphabet size.
        #[arg(long)]
        d: u64,
        /// Emit a JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// List the Hall basis up to a weight bound.
    Hall {
        /// Alphabet size.
        #[arg(long)]
        d: usize,
        /// Largest weight to enumerate (>= 1).
        #[arg(long = "max-weight", value_parser = clap::value_parser!(u32).range(1..))]
        max_weight: u32,
        /// Basis-size ceiling override.
        #[arg(long, default_value_t = DEFAULT_BASIS_CEILING)]
        ceiling: u64,
        /// Emit a JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Mixed tensor correction term for a direct product of abelian groups.
    Gamma {
        #[command(flatten)]
        common: Common,
        /// First abelian descriptor.
        a: String,
        /// Second abelian descriptor.
        b: String,
    },
    /// Check the relator-lattice congruence and compute the quotient.
    VerifyE1 {
        /// The prime of the presentation.
        #[arg(long)]
        p: u64,
        /// Nilpotency class (>= 2).
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        c: u32,
        /// Largest class accepted before refusing.
        #[arg(long = "max-c", default_value_t = DEFAULT_VERIFY_MAX_CLASS)]
        max_c: u32,
        /// Include the generator matrix and its Hermite form in the output.
        #[arg(long = "dump-lattice")]
        dump_lattice: bool,
        /// Emit a JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
}

/// An error destined for stderr, with its process exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn refusal(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<parse::ParseError> for Failure {
    fn from(e: parse::ParseError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<PGroupError> for Failure {
    fn from(e: PGroupError) -> Self {
        match e {
            PGroupError::Resource(inner) => Failure::from(inner),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<GammaError> for Failure {
    fn from(e: GammaError) -> Self {
        match e {
            GammaError::Resource(inner) => Failure::from(inner),
            GammaError::RankTooLarge => Failure::refusal(e.to_string()),
        }
    }
}

impl From<HallError> for Failure {
    fn from(e: HallError) -> Self {
        match e {
            HallError::EnumerationTooLarge { .. } => Failure::refusal(e.to_string()),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<CollectError> for Failure {
    fn from(e: CollectError) -> Self {
        match e {
            CollectError::Hall(inner) => Failure::from(inner),
            CollectError::ContextTooLarge { .. }
            | CollectError::ClassOutOfRange { .. } => Failure::refusal(e.to_string()),
            other => Failure::usage(other.to_string()),
        }
    }
}

/// Run the CLI against explicit argv and streams; returns the exit code.
pub fn run<O: Write, E: Write>(args: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    write!(out, "{e}").expect("write stdout");
                    0
                }
                _ => {
                    write!(err, "{e}").expect("write stderr");
                    2
                }
            }
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(f) => {
            writeln!(err, "error: {}", f.message).expect("write stderr");
            f.code
        }
    }
}

fn dispatch<O: Write>(cli: Cli, out: &mut O) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Multiplier { common, descriptor } => {
            let g = parse::parse(&descriptor)?;
            let result = multiplier(&g, common.c)?;
            let name = descriptor_to_string(&g);
            if common.json {
                emit(out, &render::multiplier_json(&name, common.c, &result))
            } else {
                line(out, &render::multiplier_text(&result))
            }
        }
        Cmd::Capability { common, descriptor } => {
            let g = parse::parse(&descriptor)?;
            let verdict = capability(&g, common.c)?;
            let name = descriptor_to_string(&g);
            if common.json {
                emit(out, &render::capability_json(&name, common.c, &verdict))
            } else {
                line(out, &render::capability_text(&verdict))
            }
        }
        Cmd::Bound { n, m, common } => {
            let exponent = bound_theorem17(n, m, common.c)?;
            if common.json {
                emit(
                    out,
                    &json!({
                        "n": n,
                        "m": m,
                        "c": common.c,
                        "exponent": exponent.to_string(),
                        "provenance": "Thm3.17",
                    }),
                )
            } else {
                line(out, &format!("{exponent}  [Thm3.17]"))
            }
        }
        Cmd::Witt { n, d, json: as_json } => {
            let value = witt(n, d).map_err(|e| Failure::usage(e.to_string()))?;
            if as_json {
                emit(
                    out,
                    &json!({"n": n, "d": d, "value": value.to_string()}),
                )
            } else {
                line(out, &value.to_string())
            }
        }
        Cmd::Hall {
            d,
            max_weight,
            ceiling,
            json: as_json,
        } => {
            let basis = HallBasis::generate_with_ceiling(d, max_weight, ceiling)?;
            if as_json {
                let elements: Vec<_> = basis
                    .elements()
                    .iter()
                    .map(|e| {
                        json!({
                            "weight": e.weight(),
                            "rendered": basis.render(e),
                        })
                    })
                    .collect();
                emit(
                    out,
                    &json!({
                        "d": d,
                        "max_weight": max_weight,
                        "count": basis.len(),
                        "elements": elements,
                    }),
                )
            } else {
                if !basis.is_empty() {
                    line(out, &basis.to_string())?;
                }
                line(out, &format!("count: {}", basis.len()))
            }
        }
        Cmd::Gamma { common, a, b } => {
            let ga = parse::parse(&a)?;
            let gb = parse::parse(&b)?;
            let (abelian_a, abelian_b) = match (&ga, &gb) {
                (GroupDescriptor::Abelian(x), GroupDescriptor::Abelian(y)) => (x, y),
                _ => {
                    return Err(Failure::usage(
                        "gamma takes abelian descriptors (Ab, Zp, 1)",
                    ))
                }
            };
            let result = gamma(abelian_a, abelian_b, common.c)?;
            if common.json {
                emit(
                    out,
                    &render::gamma_json(
                        &descriptor_to_string(&ga),
                        &descriptor_to_string(&gb),
                        common.c,
                        &result,
                    ),
                )
            } else {
                line(out, &render::gamma_text(&result))
            }
        }
        Cmd::VerifyE1 {
            p,
            c,
            max_c,
            dump_lattice,
            json: as_json,
        } => {
            // The parallel switch is a no-op when the library was built
            // without its `parallel` feature.
            let report = verify_theorem_11_with(p, c, max_c, true)?;
            if as_json {
                emit(out, &render::verify_json(&report, dump_lattice))
            } else {
                line(out, &render::verify_text(&report))?;
                if dump_lattice {
                    let v = render::verify_json(&report, true);
                    emit(out, &v["lattice"])?;
                }
                Ok(())
            }
        }
    }
}

fn line<O: Write>(out: &mut O, s: &str) -> Result<(), Failure> {
    writeln!(out, "{s}").expect("write stdout");
    Ok(())
}

fn emit<O: Write>(out: &mut O, v: &serde_json::Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string(v).expect("serialize")).expect("write stdout");
    Ok(())
}
