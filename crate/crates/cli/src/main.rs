use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use seqcorr::analysis::{
    convergence_sweep, monte_carlo_baseline, parse_sizes, report_pairs, rows_to_csv, rows_to_json,
    shift_search, shipped_targets, AnalysisError, AsymptoticTarget, PairConstruction, PairGrid,
    PairParams, RootSelector, SweepRow,
};
use seqcorr::constructions::FamilySpec;
use seqcorr::corr::{aperiodic_xcorr, periodic_xcorr, psc, rational_to_f64, CorrelationSpectrum};
use seqcorr::rsl::{
    golay_base, golay_compose, golay_pair_of_length, search_golay_exhaustive, search_golay_random,
    search_optimal_seeds, GolayPair, Seed, SignSequence,
};
use seqcorr::sequence::{format_sequences, parse_pair, parse_sequences};
use seqcorr::{corr, BinarySequence};

#[derive(Parser)]
#[command(
    name = "seqcorr",
    version,
    about = "Correlation analysis of binary sequence families"
)]
struct Cli {
    /// Worker threads (defaults to one per core)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a sequence from a family descriptor such as `legendre:p=31,shift=best`
    Generate { descriptor: String },
    /// Print the correlation values of one sequence (auto) or two (cross)
    Correlate {
        /// Sequence file, `-` for stdin
        file: PathBuf,
        #[arg(long)]
        periodic: bool,
    },
    /// Demerit factors and Pursley-Sarwate criterion of a sequence or pair
    Demerit {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a family at several sizes and compare its ADF with a target
    Sweep(SweepArgs),
    /// Report a pair construction against its limiting PSC
    Pairs(PairsArgs),
    /// Count optimal seeds by exhaustive enumeration
    SeedSearch {
        #[arg(long)]
        max_len: u32,
        #[arg(long, default_value_t = 1)]
        min_len: u32,
        #[arg(long)]
        json: bool,
    },
    /// Golay complementary pair tools
    Golay {
        #[command(subcommand)]
        action: GolayCommand,
    },
    /// Monte Carlo means of ADF and CDF for uniform random sequences
    Baseline {
        #[arg(long)]
        len: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// List the asymptotic targets, or solve a given cubic
    Roots {
        /// Coefficients `c3,c2,c1,c0` of a cubic to solve instead
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        cubic: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value = "smallest")]
        select: Selector,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Family descriptor without the size, e.g. `legendre:shift=best,resize=1.0578`
    family: String,
    /// Sizes as a list with ranges, e.g. `8-12` or `991-1019`
    #[arg(long)]
    sizes: String,
    /// Target name (see `roots`), fraction `a/b` or decimal
    #[arg(long)]
    target: Option<String>,
    /// Fail with status 3 when the last row misses the target by this much or more
    #[arg(long, requires = "target")]
    tolerance: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PairsArgs {
    construction: String,
    /// Size list, read according to the construction (degree, prime, depth or length)
    #[arg(long)]
    sizes: String,
    #[arg(long, allow_negative_numbers = true)]
    decimation: Option<i64>,
    /// Two-line seed file for `rsl_pair`
    #[arg(long)]
    seeds: Option<PathBuf>,
    /// Sign sequence for `rsl_pair` as `+`/`-` characters
    #[arg(long)]
    signs: Option<String>,
    /// Experimental resize ratio for `quartic_pair`
    #[arg(long)]
    resize: Option<f64>,
    #[arg(long, value_enum, default_value = "auto")]
    grid: Grid,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum GolayCommand {
    /// Check that a two-line file holds a complementary pair
    Verify { file: PathBuf },
    /// Compose two pair files, or build the pair of a given length from the bases
    Compose {
        outer: Option<PathBuf>,
        inner: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["outer", "inner"])]
        length: Option<usize>,
    },
    /// Exhaustive search at length 10
    Search10,
    /// Search at any length, exhaustively or by randomized local search
    Search {
        len: usize,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000_000)]
        max_flips: u64,
    },
    /// Print and re-certify the bundled base pairs
    Bases,
}

#[derive(Clone, Copy, ValueEnum)]
enum Grid {
    Auto,
    Product,
    Diagonal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Selector {
    Smallest,
    Middle,
    Largest,
}

type Result<T> = std::result::Result<T, AnalysisError>;

fn invalid(msg: impl Into<String>) -> AnalysisError {
    AnalysisError::InvalidArgument(msg.into())
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| invalid(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }
}

fn read_sequences(path: &PathBuf, max: usize) -> Result<Vec<BinarySequence>> {
    let seqs = parse_sequences(&read_input(path)?)?;
    if seqs.is_empty() || seqs.len() > max {
        return Err(invalid(format!(
            "{}: expected 1 to {max} sequences, found {}",
            path.display(),
            seqs.len()
        )));
    }
    Ok(seqs)
}

fn print_spectrum(out: &mut String, spectrum: &CorrelationSpectrum) {
    for (s, v) in spectrum.iter() {
        out.push_str(&format!("{s} {v}\n"));
    }
}

fn emit_rows(rows: &[SweepRow], as_json: bool) -> Result<String> {
    if as_json {
        Ok(rows_to_json(rows) + "\n")
    } else {
        rows_to_csv(rows)
    }
}

fn check_tolerance(rows: &[SweepRow], tolerance: Option<f64>) -> Result<()> {
    let (Some(tol), Some(last)) = (tolerance, rows.last()) else {
        return Ok(());
    };
    match last.abs_err {
        Some(err) if err >= tol => Err(AnalysisError::Certification(format!(
            "{} misses its target by {err:.6} (tolerance {tol})",
            last.family
        ))),
        _ => Ok(()),
    }
}

fn run(cmd: Command, out: &mut String) -> Result<()> {
    match cmd {
        Command::Generate { descriptor } => {
            let spec: FamilySpec = descriptor.parse()?;
            let (resolved, seq) = if spec.has_best_shift() {
                let found = shift_search(&spec)?;
                (spec.resolve_shift(found.shift as i64), found.sequence)
            } else {
                let seq = spec.build()?;
                (spec, seq)
            };
            let header = format!("{resolved} (length {})", seq.len());
            out.push_str(&format_sequences(&[&header], [&seq]));
        }
        Command::Correlate { file, periodic } => {
            let seqs = read_sequences(&file, 2)?;
            let (f, g) = (&seqs[0], seqs.get(1).unwrap_or(&seqs[0]));
            let spectrum = if periodic {
                periodic_xcorr(f, g)?
            } else {
                aperiodic_xcorr(f, g)
            };
            print_spectrum(out, &spectrum);
        }
        Command::Demerit { file, json } => {
            let seqs = read_sequences(&file, 2)?;
            if let [f] = seqs.as_slice() {
                let adf = corr::adf(f);
                if json {
                    let v = json!({"length": f.len(), "adf": adf.to_string(), "adf_value": rational_to_f64(&adf)});
                    out.push_str(&format!("{v:#}\n"));
                } else {
                    out.push_str(&format!(
                        "length {}\nadf {adf} ({:.12})\n",
                        f.len(),
                        rational_to_f64(&adf)
                    ));
                }
            } else {
                let r = psc(&seqs[0], &seqs[1])?;
                if json {
                    let v = json!({
                        "length": seqs[0].len(),
                        "adf_f": r.adf_f.to_string(),
                        "adf_g": r.adf_g.to_string(),
                        "cdf": r.cdf.to_string(),
                        "psc": r.psc.exact.map(|p| p.to_string()),
                        "psc_value": r.psc.approx,
                    });
                    out.push_str(&format!("{v:#}\n"));
                } else {
                    out.push_str(&format!("length {}\n", seqs[0].len()));
                    for (name, q) in [("adf_f", r.adf_f), ("adf_g", r.adf_g), ("cdf", r.cdf)] {
                        out.push_str(&format!("{name} {q} ({:.12})\n", rational_to_f64(&q)));
                    }
                    out.push_str(&format!("psc {} ({:.12})\n", r.psc, r.psc.approx));
                }
            }
        }
        Command::Sweep(args) => {
            let template: FamilySpec = args.family.parse()?;
            if template.size.is_some() {
                return Err(invalid("give sizes with --sizes, not in the descriptor"));
            }
            let sizes = parse_sizes(template.kind, &args.sizes)?;
            let target = args
                .target
                .as_deref()
                .map(str::parse::<AsymptoticTarget>)
                .transpose()?;
            let rows = convergence_sweep(&template, &sizes, target.as_ref())?;
            out.push_str(&emit_rows(&rows, args.json)?);
            check_tolerance(&rows, args.tolerance)?;
        }
        Command::Pairs(args) => {
            let construction: PairConstruction = args.construction.parse()?;
            let sizes = match construction.size_kind() {
                Some(kind) => parse_sizes(kind, &args.sizes)?,
                None => args
                    .sizes
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u64>()
                            .map_err(|_| invalid(format!("bad size {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            let mut params = PairParams::new(sizes);
            params.decimation = args.decimation;
            params.resize = args.resize;
            params.grid = match args.grid {
                Grid::Auto => PairGrid::Auto,
                Grid::Product => PairGrid::Product,
                Grid::Diagonal => PairGrid::Diagonal,
            };
            if let Some(path) = &args.seeds {
                let (a, b) = parse_pair(&read_input(path)?)?;
                params.seeds = Some((Seed(a), Seed(b)));
            }
            if let Some(text) = &args.signs {
                let s: BinarySequence = text.parse()?;
                params.signs = Some(SignSequence::new(s.terms().to_vec())?);
            }
            let rows = report_pairs(construction, &params)?;
            out.push_str(&emit_rows(&rows, args.json)?);
            check_tolerance(&rows, args.tolerance)?;
        }
        Command::SeedSearch {
            max_len,
            min_len,
            json,
        } => {
            if min_len == 0 || min_len > max_len {
                return Err(invalid("need 1 <= --min-len <= --max-len"));
            }
            let mut records = Vec::new();
            if !json {
                out.push_str("length,count,exemplars\n");
            }
            for len in min_len..=max_len {
                let census = search_optimal_seeds(len)?;
                let exemplars: Vec<String> =
                    census.exemplars.iter().map(|s| s.to_string()).collect();
                if json {
                    records.push(
                        json!({"length": len, "count": census.count, "exemplars": exemplars}),
                    );
                } else {
                    out.push_str(&format!("{len},{},{}\n", census.count, exemplars.join(" ")));
                }
            }
            if json {
                out.push_str(&format!("{:#}\n", serde_json::Value::Array(records)));
            }
        }
        Command::Golay { action } => golay(action, out)?,
        Command::Baseline {
            len,
            trials,
            seed,
            json,
        } => {
            let r = monte_carlo_baseline(len, trials, seed)?;
            if json {
                out.push_str(&format!(
                    "{:#}\n",
                    serde_json::to_value(&r).expect("serializable")
                ));
            } else {
                out.push_str(&format!(
                    "len {len}\ntrials {trials}\nseed {seed}\nmean_adf {:.12} (expected {:.12})\nmean_cdf {:.12} (expected {:.12})\n",
                    r.mean_adf, r.expected_adf, r.mean_cdf, r.expected_cdf
                ));
            }
        }
        Command::Roots { cubic, select } => match cubic {
            Some(c) => {
                let [c3, c2, c1, c0] = <[i64; 4]>::try_from(c)
                    .map_err(|_| invalid("--cubic takes exactly four coefficients"))?;
                let selector = match select {
                    Selector::Smallest => RootSelector::SmallestReal,
                    Selector::Middle => RootSelector::MiddleReal,
                    Selector::Largest => RootSelector::LargestReal,
                };
                let root = seqcorr::analysis::cubic_root(c3, c2, c1, c0, selector)?;
                let residual = seqcorr::analysis::eval_cubic([c3, c2, c1, c0], root).abs();
                out.push_str(&format!("{root:.15} (residual {residual:.1e})\n"));
            }
            None => {
                for t in shipped_targets() {
                    out.push_str(&format!(
                        "{:<26} {:.15}  {} (residual {:.1e})\n",
                        t.name,
                        t.value,
                        t.describe(),
                        t.residual()
                    ));
                }
            }
        },
    }
    Ok(())
}

fn load_pair(path: &PathBuf) -> Result<GolayPair> {
    let (a, b) = parse_pair(&read_input(path)?)?;
    Ok(GolayPair::certify(a, b)?)
}

fn golay(action: GolayCommand, out: &mut String) -> Result<()> {
    match action {
        GolayCommand::Verify { file } => {
            let pair = load_pair(&file)?;
            out.push_str(&format!("certified Golay pair of length {}\n", pair.len()));
        }
        GolayCommand::Compose {
            outer,
            inner,
            length,
        } => {
            let pair = match (outer, inner, length) {
                (_, _, Some(len)) => golay_pair_of_length(len)?,
                (Some(o), Some(i), None) => golay_compose(&load_pair(&o)?, &load_pair(&i)?)?,
                _ => return Err(invalid("give two pair files or --length")),
            };
            let header = format!("certified Golay pair of length {}", pair.len());
            out.push_str(&format_sequences(&[&header], [pair.a(), pair.b()]));
        }
        GolayCommand::Search10 => search(10, None, out)?,
        GolayCommand::Search {
            len,
            random,
            seed,
            max_flips,
        } => search(len, random.then_some((seed, max_flips)), out)?,
        GolayCommand::Bases => {
            for len in [2, 10, 26] {
                let pair = golay_base(len)?;
                let header = format!("certified base pair of length {len}");
                out.push_str(&format_sequences(&[&header], [pair.a(), pair.b()]));
            }
        }
    }
    Ok(())
}

fn search(len: usize, random: Option<(u64, u64)>, out: &mut String) -> Result<()> {
    let found = match random {
        Some((seed, flips)) => search_golay_random(len, seed, flips),
        None => search_golay_exhaustive(len),
    };
    match found {
        Some(pair) => {
            let header = format!("Golay pair of length {len}");
            out.push_str(&format_sequences(&[&header], [pair.a(), pair.b()]));
            Ok(())
        }
        None if random.is_none() => Err(AnalysisError::Certification(format!(
            "no Golay pair of length {len} exists"
        ))),
        None => Err(AnalysisError::Certification(format!(
            "randomized search found no Golay pair of length {len}"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    // Partial output (e.g. rows that missed a tolerance) is still printed.
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
