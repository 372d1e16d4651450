//! Command-line frontend: file parsing, subcommand dispatch, rendering.
//!
//! Exit codes: 0 success, 1 validation error (bad arguments, bad files,
//! bad documents), 2 unsupported page (an operation that needs a planar
//! page met positive genus). Identical invocations print byte-identical
//! output, `search` included.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::book::{OpenBook, Sign};
use crate::contact::{catalog_lookup, d3_connected_sum, HalfInteger};
use crate::error::{Error, Result};
use crate::format::{parse_open_book, serialize_open_book};
use crate::homology::{h1, seifert_h1, AbelianGroup};
use crate::search::{search_report, verify_annulus_family, SearchConfig};

#[derive(Parser)]
#[command(
    name = "openbook",
    version,
    about = "Exact-arithmetic toolkit for planar open book decompositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the norm 2g + r - 1 of an open book
    Norm { file: PathBuf },
    /// Print the first homology of the manifold underlying an open book
    H1 { file: PathBuf },
    /// Plumb (Murasugi sum) two open books and print the result
    Plumb { a: PathBuf, b: PathBuf },
    /// Stabilize an open book with a Hopf band over the given holes
    Stabilize {
        file: PathBuf,
        /// Twist sign of the new band: +1 or -1
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        /// Holes the band runs over, as a comma list (may be empty)
        #[arg(long, default_value = "")]
        holes: String,
    },
    /// Print the first homology of the Seifert space Y_{p,q,r}
    Seifert {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[arg(allow_hyphen_values = true)]
        r: i64,
    },
    /// Print d3 of a connected sum of structures with the given d3 values
    D3 {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Enumerate canonical open books and print the bucketed CSV report
    Search {
        #[arg(long)]
        max_boundary: u32,
        #[arg(long)]
        max_total_exponent: u64,
        #[arg(long)]
        exponent_bound: Option<u64>,
        /// Restrict the report to books with this first homology
        #[arg(long)]
        target: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        norm_cap: Option<i64>,
        /// Worker threads; the report does not depend on this
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Look up an open book in the contact catalog
    Catalog { file: PathBuf },
    /// Check the annulus-book classification for |m| <= M_MAX
    VerifyAnnulus { m_max: i64 },
}

fn read_book(path: &Path) -> Result<OpenBook> {
    let text = std::fs::read_to_string(path).map_err(|io| Error::InvalidArgument {
        what: "input file",
        value: format!("{} ({io})", path.display()),
    })?;
    parse_open_book(&text)
}

fn parse_sign(s: &str) -> Result<Sign> {
    match s {
        "+1" | "+" => Ok(Sign::Positive),
        "-1" | "-" => Ok(Sign::Negative),
        _ => Err(Error::InvalidArgument {
            what: "sign",
            value: s.to_string(),
        }),
    }
}

fn parse_holes(s: &str) -> Result<Vec<u32>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            tok.parse().map_err(|_| Error::InvalidArgument {
                what: "hole list",
                value: s.to_string(),
            })
        })
        .collect()
}

fn render_catalog(ob: &OpenBook) -> String {
    match catalog_lookup(ob) {
        Some(entry) => entry.to_string(),
        None => "no catalog entry\n".to_string(),
    }
}

fn execute(command: Command) -> Result<String> {
    match command {
        Command::Norm { file } => Ok(format!("{}\n", read_book(&file)?.norm())),
        Command::H1 { file } => Ok(format!("{}\n", h1(&read_book(&file)?)?)),
        Command::Plumb { a, b } => {
            let plumbed = read_book(&a)?.plumb(&read_book(&b)?)?;
            Ok(serialize_open_book(&plumbed))
        }
        Command::Stabilize { file, sign, holes } => {
            let stabilized =
                read_book(&file)?.stabilize(parse_sign(&sign)?, &parse_holes(&holes)?)?;
            Ok(serialize_open_book(&stabilized))
        }
        Command::Seifert { p, q, r } => Ok(format!("{}\n", seifert_h1(p, q, r))),
        Command::D3 { a, b } => {
            let a: HalfInteger = a.parse()?;
            let b: HalfInteger = b.parse()?;
            Ok(format!("{}\n", d3_connected_sum(a, b, true)?))
        }
        Command::Search {
            max_boundary,
            max_total_exponent,
            exponent_bound,
            target,
            norm_cap,
            jobs,
        } => {
            let mut config = SearchConfig::new(max_boundary, max_total_exponent)?;
            if let Some(b) = exponent_bound {
                config = config.with_exponent_bound(b);
            }
            if let Some(t) = target {
                config = config.with_target(t.parse::<AbelianGroup>()?);
            }
            if let Some(cap) = norm_cap {
                config = config.with_norm_cap(cap);
            }
            Ok(search_report(&config, jobs)?.to_csv())
        }
        Command::Catalog { file } => Ok(render_catalog(&read_book(&file)?)),
        Command::VerifyAnnulus { m_max } => verify_annulus_family(m_max),
    }
}

/// Parses `argv` and runs the selected subcommand, writing results to
/// `stdout` and one-line diagnostics to `stderr`. Returns the exit code:
/// 0 success, 1 validation error, 2 unsupported page.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else is
            // a validation failure (exit 1, never clap's default 2).
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let target: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(target, "{}", err.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(output) => {
            let _ = stdout.write_all(output.as_bytes());
            0
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            err.exit_code()
        }
    }
}
