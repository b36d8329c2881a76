//! `pyr` — construct, classify and verify pyramidal permutation groups,
//! query their order sets, run the number-theoretic scans, and work with
//! Steiner/Kirkman triple systems. All success output is JSON on stdout.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use pyramidal::acceptance;
use pyramidal::arith;
use pyramidal::classify::{classify_pyramidal, Verdict};
use pyramidal::constructions;
use pyramidal::designs::{self, Resolution, TripleSystem};
use pyramidal::group::PermGroup;
use pyramidal::io::{DesignFile, GroupFile};
use pyramidal::sweep;

#[derive(Parser)]
#[command(name = "pyr", version, about = "pyramidal groups toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the pyramidal group families
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Classify a group read from a JSON file
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Order-set membership and witness synthesis
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Number-theoretic brute-force scans
    Nt {
        #[command(subcommand)]
        scan: NtScan,
    },
    /// Steiner and Kirkman triple system operations
    Design {
        #[command(subcommand)]
        op: DesignOp,
    },
    /// Exhaustive subgroup sweeps
    Sweep {
        #[command(subcommand)]
        universe: SweepUniverse,
    },
    /// Run verification suites
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
}

#[derive(Subcommand)]
enum Family {
    /// C_n as an n-cycle
    Cyclic {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// D_{2m} on m points
    Dihedral {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// C_m ⋊ C_{2^a} for odd prime m with 2^a | m-1
    Cm2 {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// (Z/2^l)^n ⋊ <γ> with γ a Singer lift of order 2^n - 1
    Homocyclic {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// F_q² ⋊ SL(2,q) on q² points
    AffineSl2 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// An m-pyramidal group of the requested order
    Witness {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        order: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Is N the order of an m-pyramidal group?
    Member {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        order: u64,
    },
    /// Build and save a verified witness group of order N
    Witness {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        order: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum NtScan {
    /// All prime powers p^k = a^n - 1 in the given ranges
    Mersenne {
        #[arg(long)]
        amax: u64,
        #[arg(long)]
        nmax: u32,
        #[arg(long, default_value_t = 1_000_000)]
        pmax: u64,
    },
    /// Least primitive prime divisor of a^n - 1
    Zsigmondy {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Args)]
struct DesignInput {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum DesignOp {
    /// Check the triple system (and resolution, when present)
    Validate(DesignInput),
    /// Search for a Kirkman system of order v
    Search {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full automorphism group of the design
    Aut(DesignInput),
    /// Search for a subgroup fixing m points and regular on the rest
    Pyramidal {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the block-based involution extraction for an action
    Prop1 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        m: u32,
        /// group file; found by search when omitted
        #[arg(long)]
        group: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SweepUniverse {
    /// All 156 subgroups of S_5
    S5,
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Run every acceptance criterion; exit 0 iff all pass
    All,
}

fn read_group(path: &Path) -> Result<PermGroup> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let file: GroupFile = serde_json::from_str(&text).context("parsing group JSON")?;
    Ok(file.to_group()?)
}

fn read_design(path: &Path) -> Result<(TripleSystem, Option<Resolution>)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let file: DesignFile = serde_json::from_str(&text).context("parsing design JSON")?;
    Ok(file.to_design())
}

fn emit_group(g: &PermGroup, name: &str, out: Option<&Path>) -> Result<()> {
    let file = GroupFile::from_group(g, Some(name.to_string()));
    let text = serde_json::to_string(&file)?;
    if let Some(path) = out {
        std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Construct { family } => {
            let (group, name, out) = match family {
                Family::Cyclic { n, out } => (constructions::cyclic(n)?, format!("C_{n}"), out),
                Family::Dihedral { m, out } => {
                    (constructions::dihedral(m)?, format!("D_{}", 2 * m), out)
                }
                Family::Cm2 { m, a, out } => (
                    constructions::cm_semidirect_2group(m, a)?,
                    format!("C_{m}:C_{}", 1u64 << a),
                    out,
                ),
                Family::Homocyclic { l, n, out } => (
                    constructions::homocyclic_singer(l, n)?,
                    format!("H_{{{l},{n}}}:C_{}", (1u64 << n) - 1),
                    out,
                ),
                Family::AffineSl2 { q, out } => (
                    constructions::affine_sl2(q)?,
                    format!("F_{q}^2:SL(2,{q})"),
                    out,
                ),
                Family::Witness { m, order, out } => (
                    constructions::witness_group(m, order)?,
                    format!("{m}-pyramidal of order {order}"),
                    out,
                ),
            };
            emit_group(&group, &name, out.as_deref())?;
            Ok(0)
        }
        Command::Analyze { input } => {
            let g = read_group(&input)?;
            let report = classify_pyramidal(&g)?;
            println!("{}", serde_json::to_string(&report)?);
            Ok(0)
        }
        Command::Oracle { query } => match query {
            OracleQuery::Member { m, order } => {
                let (member, set) = arith::in_x(m, order)?;
                println!(
                    "{}",
                    json!({ "m": m, "N": order, "member": member, "set": set })
                );
                Ok(0)
            }
            OracleQuery::Witness { m, order, out } => {
                let g = constructions::witness_group(m, order)?;
                emit_group(&g, &format!("{m}-pyramidal of order {order}"), Some(&out))?;
                Ok(0)
            }
        },
        Command::Nt { scan } => match scan {
            NtScan::Mersenne { amax, nmax, pmax } => {
                let solutions = arith::mersenne_solutions(amax, nmax, pmax);
                println!("{}", serde_json::to_string(&solutions)?);
                Ok(0)
            }
            NtScan::Zsigmondy { a, n } => {
                if a < 2 || n < 2 {
                    return Err(anyhow!("requires a >= 2 and n >= 2"));
                }
                match arith::zsigmondy(a, n)? {
                    arith::Zsigmondy::Exception => println!("{}", json!({ "exception": true })),
                    arith::Zsigmondy::Primitive(q) => {
                        println!("{}", json!({ "exception": false, "primitive": q }))
                    }
                }
                Ok(0)
            }
        },
        Command::Design { op } => match op {
            DesignOp::Validate(DesignInput { input }) => {
                let (t, r) = read_design(&input)?;
                let sts = designs::validate_sts(&t);
                let kts = r.as_ref().map(|res| designs::validate_kts(&t, res));
                let ok = sts.is_ok() && kts.as_ref().is_none_or(|v| v.is_ok());
                println!(
                    "{}",
                    json!({
                        "v": t.v,
                        "valid": ok,
                        "sts_error": sts.err().map(|e| e.to_string()),
                        "kts_error": kts.and_then(|v| v.err()).map(|e| e.to_string()),
                    })
                );
                Ok(if ok { 0 } else { 1 })
            }
            DesignOp::Search { v, out } => {
                let (t, r) = designs::search_kts(v)?;
                let file = DesignFile::from_design(&t, Some(&r));
                let text = serde_json::to_string(&file)?;
                if let Some(path) = out {
                    std::fs::write(&path, &text)
                        .with_context(|| format!("writing {}", path.display()))?;
                }
                println!("{text}");
                Ok(0)
            }
            DesignOp::Aut(DesignInput { input }) => {
                let (t, r) = read_design(&input)?;
                let aut = designs::automorphism_group(&t, r.as_ref())?;
                let file = GroupFile::from_group(&aut, Some("automorphism group".into()));
                println!(
                    "{}",
                    json!({ "order": aut.order(), "group": file })
                );
                Ok(0)
            }
            DesignOp::Pyramidal { input, m, out } => {
                let (t, r) = read_design(&input)?;
                match designs::find_pyramidal_action(&t, r.as_ref(), m)? {
                    Some(g) => {
                        let file = GroupFile::from_group(
                            &g,
                            Some(format!("{m}-pyramidal action on v={}", t.v)),
                        );
                        let text = serde_json::to_string(&json!({
                            "found": true,
                            "order": g.order(),
                            "group": file,
                        }))?;
                        if let Some(path) = out {
                            let group_only = serde_json::to_string(&file)?;
                            std::fs::write(&path, group_only)
                                .with_context(|| format!("writing {}", path.display()))?;
                        }
                        println!("{text}");
                        Ok(0)
                    }
                    None => {
                        println!("{}", json!({ "found": false }));
                        Ok(0)
                    }
                }
            }
            DesignOp::Prop1 { input, m, group } => {
                let (t, r) = read_design(&input)?;
                let g = match group {
                    Some(path) => read_group(&path)?,
                    None => designs::find_pyramidal_action(&t, r.as_ref(), m)?
                        .ok_or_else(|| anyhow!("no {m}-pyramidal action found"))?,
                };
                let outcome = designs::verify_prop1(&t, r.as_ref(), &g, m)?;
                let involutions: Vec<Vec<u32>> = outcome
                    .extracted
                    .iter()
                    .map(|p| p.images().to_vec())
                    .collect();
                println!(
                    "{}",
                    json!({ "verdict": outcome.verdict, "involutions": involutions })
                );
                Ok(if outcome.verdict == Verdict::Verified { 0 } else { 1 })
            }
        },
        Command::Sweep { universe } => match universe {
            SweepUniverse::S5 => {
                let report = sweep::sweep_s5();
                println!("{}", serde_json::to_string(&report)?);
                Ok(if report.all_pass() { 0 } else { 1 })
            }
        },
        Command::Verify { suite } => match suite {
            VerifySuite::All => {
                let mut all_pass = true;
                let mut results = Vec::new();
                for (id, _name) in acceptance::CRITERIA {
                    let result = match id {
                        1 => acceptance::criterion_1(),
                        2 => acceptance::criterion_2(),
                        3 => acceptance::criterion_3(),
                        4 => acceptance::criterion_4(),
                        5 => acceptance::criterion_5(),
                        6 => acceptance::criterion_6(),
                        7 => acceptance::criterion_7(),
                        8 => acceptance::criterion_8(),
                        9 => acceptance::criterion_9(),
                        10 => acceptance::criterion_10(),
                        11 => acceptance::criterion_11(),
                        _ => unreachable!(),
                    };
                    let tag = if result.pass { "PASS" } else { "FAIL" };
                    eprintln!(
                        "{tag} criterion {:2} ({}): {} [{:.2}s]",
                        result.id, result.name, result.detail, result.seconds
                    );
                    all_pass &= result.pass;
                    results.push(result);
                }
                println!("{}", serde_json::to_string(&results)?);
                Ok(if all_pass { 0 } else { 1 })
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("{}", json!({ "error": format!("{err:#}") }));
            ExitCode::from(2)
        }
    }
}
