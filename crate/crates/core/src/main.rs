use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use modring::decomp::{decomposition, obstruction_search, table_generate, BlockKind, TableFlavor};
use modring::eisenstein::hasse_lift;
use modring::exactnum::format_rational;
use modring::hilbert::{serre_duality_check, WeightedLine};
use modring::levels::{CongruenceGroup, DimensionTable, LevelInvariants, Weight1Data};
use modring::ringalg::presets::{self, PresetKind};
use modring::ringalg::Presentation;
use modring::suite::{self, Suite};
use modring::{Error, Result};

#[derive(Parser)]
#[command(
    name = "modring",
    about = "Rings of modular forms with level structure, computed exactly"
)]
struct Cli {
    /// Weight-1 cusp form dimensions (`kind level s1` per line) overriding
    /// the builtin table.
    #[arg(long, global = true, value_name = "PATH")]
    weight1: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
    Markdown,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum WprojQuery {
    H0,
    H1,
    Serre,
}

#[derive(Subcommand)]
enum Command {
    /// Index, degree of ω, cusps, elliptic points and genus.
    Levels {
        group: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// dim M_k and dim S_k over a range of weights.
    Dims {
        group: String,
        #[arg(long, default_value_t = 0)]
        from: i64,
        #[arg(long, default_value_t = 12)]
        to: i64,
        #[arg(long, value_enum, default_value = "tsv")]
        format: TableFormat,
    },
    /// Decomposition sequence of one group into shifted blocks.
    Decomp {
        group: String,
        #[arg(long, default_value = "omega")]
        block: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decomposition numbers of Γ₁(n) for a range of levels.
    Table {
        #[arg(long)]
        flavor: String,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value = "tsv")]
        format: TableFormat,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Lift of the mod-2 Hasse invariant from a weight-one Eisenstein series.
    Hasse {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 60)]
        prec: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cohomology of O(m) on the weighted projective line P(a, b).
    #[command(allow_negative_numbers = true)]
    Wproj {
        #[arg(value_enum)]
        query: WprojQuery,
        a: u64,
        b: u64,
        m: i64,
    },
    /// Primes p for which d_q does not divide d_p.
    Obstruct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certify that a basis makes a ring free over a subring.
    Freebasis {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        preset: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check that a sequence of elements is regular.
    Regseq {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        preset: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check c4^3 - c6^2 = 1728 Delta for a presentation.
    Weierstrass {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        preset: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// What a command produced: stdout text and whether its checks passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

fn weight1_data(path: Option<&Path>) -> Result<Weight1Data> {
    let builtin = Weight1Data::builtin();
    Ok(match path {
        Some(p) => builtin.with_overrides(&Weight1Data::load(p)?),
        None => builtin,
    })
}

fn json_text(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load_presentation(kind: PresetKind, preset: Option<&str>, file: Option<&Path>) -> Result<Presentation> {
    match (preset, file) {
        (Some(name), _) => {
            let p = presets::find(kind, name).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown preset `{name}`; available: {}",
                    presets::names(kind).join(", ")
                ))
            })?;
            Presentation::parse(p.text)
        }
        (None, Some(path)) => Presentation::parse(&std::fs::read_to_string(path)?),
        (None, None) => Err(Error::InvalidInput("need --preset or --file".into())),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let w1_path = cli.weight1.as_deref();
    match cli.command {
        Command::Levels { group, format } => {
            let g: CongruenceGroup = group.parse()?;
            let inv = LevelInvariants::of(&g);
            Ok(Outcome::ok(match format {
                Format::Json => json_text(&inv),
                Format::Text => format!(
                    "group={} index={} omega_degree={} cusps={} elliptic2={} elliptic3={} genus={}\n",
                    inv.group,
                    inv.index,
                    format_rational(&inv.omega_degree),
                    inv.cusps,
                    inv.elliptic2,
                    inv.elliptic3,
                    inv.genus
                ),
            }))
        }
        Command::Dims {
            group,
            from,
            to,
            format,
        } => {
            let g: CongruenceGroup = group.parse()?;
            if from > to || from < 0 {
                return Err(Error::InvalidInput(format!("bad weight range {from}..{to}")));
            }
            let t = DimensionTable::compute(&g, from..=to, &weight1_data(w1_path)?)?;
            let rows: Vec<(i64, u64, u64)> = (from..=to).map(|k| (k, t.m(k), t.s(k))).collect();
            Ok(Outcome::ok(match format {
                TableFormat::Tsv => {
                    let mut s = String::from("k\tm_k\ts_k\n");
                    for (k, m, c) in rows {
                        s += &format!("{k}\t{m}\t{c}\n");
                    }
                    s
                }
                TableFormat::Markdown => {
                    let mut s = String::from("| k | m_k | s_k |\n|---:|---:|---:|\n");
                    for (k, m, c) in rows {
                        s += &format!("| {k} | {m} | {c} |\n");
                    }
                    s
                }
                TableFormat::Json => json_text(&json!({
                    "group": g,
                    "columns": ["k", "m_k", "s_k"],
                    "rows": rows.iter().map(|&(k, m, c)| json!([k, m, c])).collect::<Vec<_>>(),
                })),
            }))
        }
        Command::Decomp { group, block, format } => {
            let g: CongruenceGroup = group.parse()?;
            let block: BlockKind = block.parse()?;
            let seq = decomposition(&g, block, &weight1_data(w1_path)?)?;
            Ok(Outcome::ok(match format {
                Format::Json => json_text(&seq),
                Format::Text => format!(
                    "group={} block={} mult={}\n",
                    seq.group,
                    seq.block,
                    seq.to_vec().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                ),
            }))
        }
        Command::Table {
            flavor,
            from,
            to,
            format,
        } => {
            let flavor: TableFlavor = flavor.parse()?;
            if from > to {
                return Err(Error::InvalidInput(format!("empty range {from}..{to}")));
            }
            let t = table_generate(from, to, flavor, &weight1_data(w1_path)?)?;
            Ok(Outcome::ok(match format {
                TableFormat::Tsv => t.to_tsv(),
                TableFormat::Markdown => t.to_markdown(),
                TableFormat::Json => json_text(&t.to_json()),
            }))
        }
        Command::Verify { suite: name, format } => {
            let s: Suite = name.parse()?;
            let overrides = w1_path.map(Weight1Data::load).transpose()?;
            eprintln!("modring {} verify --suite {s}", env!("CARGO_PKG_VERSION"));
            let report = suite::run(s, overrides.as_ref());
            let passed = report.all_passed();
            let text = match format {
                Format::Json => json_text(&json!({
                    "suite": s.name(),
                    "passed": passed,
                    "checks": report.checks,
                })),
                Format::Text => {
                    let failed = report.failures().count();
                    let mut t = report.to_string();
                    t += &format!("{} checks, {failed} failed\n", report.len());
                    if let Some(f) = report.first_failure() {
                        t += &format!("first failure: {}: {}\n", f.name, f.detail);
                    }
                    t
                }
            };
            Ok(Outcome { text, passed })
        }
        Command::Hasse { prime, prec, format } => {
            let r = hasse_lift(prime, prec)?;
            let text = match format {
                Format::Json => json_text(&r.to_json()),
                Format::Text => format!(
                    "p={} m={} l_value={} v2_l={} stated_exponent={} computed_exponent={} precision={} galois_average={} verdict={}\n",
                    r.p,
                    r.m,
                    r.l_value,
                    r.v2_l,
                    format_rational(&r.stated_exponent),
                    format_rational(&r.computed_exponent),
                    r.precision,
                    r.galois_average,
                    if r.passed() { "pass" } else { "fail" }
                ),
            };
            Ok(Outcome {
                text,
                passed: r.passed(),
            })
        }
        Command::Wproj { query, a, b, m } => {
            if a == 0 || b == 0 {
                return Err(Error::InvalidInput("weights must be positive".into()));
            }
            let line = WeightedLine::new(a, b);
            Ok(match query {
                WprojQuery::H0 => Outcome::ok(format!("{}\n", line.h0_dim(m))),
                WprojQuery::H1 => Outcome::ok(format!("{}\n", line.h1_dim(m))),
                WprojQuery::Serre => {
                    let r = serre_duality_check(line, m..=m);
                    let dual = -m + line.canonical_degree();
                    Outcome {
                        text: format!(
                            "h0({m})={} h1({dual})={} holds={}\n",
                            line.h0_dim(m),
                            line.h1_dim(dual),
                            r.holds()
                        ),
                        passed: r.holds(),
                    }
                }
            })
        }
        Command::Obstruct { q, bound, format } => {
            let r = obstruction_search(q, bound)?;
            Ok(Outcome::ok(match format {
                Format::Json => json_text(&r),
                Format::Text => {
                    let mut t = format!("q={} d_q={}", r.q, r.d_q);
                    if let Some(d) = r.divisor {
                        t += &format!(" divisor={} witness_residue={}", d.d, d.witness_residue);
                    }
                    t += "\np\td_p\td_p mod d_q\twitness_class\n";
                    for e in &r.primes {
                        t += &format!("{}\t{}\t{}\t{}\n", e.p, e.d_p, e.residue, e.in_witness_class);
                    }
                    t
                }
            }))
        }
        Command::Freebasis {
            preset,
            file,
            bound,
            format,
        } => {
            let p = load_presentation(PresetKind::FreeBasis, preset.as_deref(), file.as_deref())?;
            let c = p.free_basis_certificate(bound)?;
            let passed = c.is_free() && c.hilbert_identity;
            let text = match format {
                Format::Json => json_text(&c),
                Format::Text => {
                    let mut t = format!(
                        "field={} basis_rank={} bound={} hilbert_identity={} verdict={}\n",
                        c.ambient.field,
                        c.basis_degrees.len(),
                        c.bound,
                        c.hilbert_identity,
                        if c.is_free() { "free" } else { "not free" }
                    );
                    if let modring::ringalg::BasisVerdict::NotFree { degree, failure } = c.verdict {
                        t += &format!("failure: {failure:?} in degree {degree}\n");
                    }
                    t
                }
            };
            Ok(Outcome { text, passed })
        }
        Command::Regseq { preset, file, format } => {
            let p = load_presentation(PresetKind::RegularSequence, preset.as_deref(), file.as_deref())?;
            let r = p.regular_sequence_report()?;
            let text = match format {
                Format::Json => json_text(&r),
                Format::Text => {
                    let mut t = format!(
                        "field={} elements={} bound={} hilbert_criterion={} regular={}\n",
                        r.field,
                        r.elements.join(", "),
                        r.bound,
                        r.hilbert_criterion,
                        r.regular
                    );
                    if let Some(f) = r.first_failure {
                        t += &format!(
                            "failure: element {} is a zero divisor in degree {}\n",
                            f.position, f.degree
                        );
                    }
                    t
                }
            };
            Ok(Outcome {
                text,
                passed: r.regular,
            })
        }
        Command::Weierstrass { preset, file, format } => {
            let p = load_presentation(PresetKind::Weierstrass, preset.as_deref(), file.as_deref())?;
            let r = p.weierstrass_report()?;
            let text = match format {
                Format::Json => json_text(&r),
                Format::Text => format!("field={} holds={} residual={}\n", r.field, r.holds, r.residual),
            };
            Ok(Outcome { text, passed: r.holds })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
