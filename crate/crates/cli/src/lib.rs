//! Command-line front end for the braidforge library.

pub mod suite;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use braidforge::braid::{delta_word, full_twist_word, BraidWord, DeltaVariant, FullTwistVariant, PureGenerator};
use braidforge::fpgroup::{
    abelianization, check_homomorphism, coset_enumerate, eliminate_generator, FreeWord, Presentation,
    DEFAULT_MAX_COSETS,
};
use braidforge::garside::{braids_equal, normal_form};
use braidforge::perm::Permutation;
use braidforge::presentations::{self, StratumParams};
use braidforge::trajectory::{extract_braid, ExtractionParams, StrandPaths};
use clap::{Args, Parser, Subcommand, ValueEnum};

use suite::{run_suite, StandardPresentations};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SEED_VAR: &str = "BRAIDFORGE_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "braidforge",
    version,
    about = "Braid groups, presentations and configuration-space checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the left-greedy normal form of a braid word.
    Normalize {
        /// Braid word file, or `-` for standard input.
        file: PathBuf,
    },
    /// Decide whether two braid words represent the same braid.
    Equal { a: PathBuf, b: PathBuf },
    /// Print the permutation of a braid word.
    Perm { file: PathBuf },
    /// Print a positive word for the half twist.
    Delta {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
        variant: u8,
    },
    /// Print a word for the full twist.
    Fulltwist {
        #[arg(long)]
        n: usize,
        /// One of A, B, C, D, D', E, F.
        #[arg(long, default_value = "A")]
        variant: String,
    },
    /// Expand a pure braid generator into Artin generators.
    ExpandAlpha {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        n: usize,
    },
    /// Abelianization of a presentation.
    Abelianize(PresentationArgs),
    /// Coset enumeration over a subgroup.
    Coset {
        #[command(flatten)]
        source: PresentationArgs,
        /// Comma-separated subgroup generators; empty means the trivial subgroup.
        #[arg(long, default_value = "")]
        subgroup: String,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max: usize,
    },
    /// Eliminate a generator using a relator in which it occurs once.
    Eliminate {
        #[command(flatten)]
        source: PresentationArgs,
        #[arg(long)]
        gen: String,
        /// 1-based relator index.
        #[arg(long)]
        rel: usize,
    },
    /// Check that generator images into a symmetric group respect every relator.
    CheckHom {
        #[command(flatten)]
        source: PresentationArgs,
        #[arg(long)]
        sym: usize,
        /// Images in generator order, `;`-separated, each like `[2,1,3]`.
        #[arg(long)]
        images: String,
    },
    /// Emit a built-in presentation.
    Presentation {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Read the braid traced by sampled planar trajectories.
    ExtractBraid {
        file: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        angle: f64,
        /// Retry seed; overrides BRAIDFORGE_SEED.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run every claim check and report pass/fail per check.
    #[command(name = "paper-suite")]
    Suite {
        #[arg(long = "max-n", default_value_t = 6, value_parser = clap::value_parser!(u64).range(3..=8))]
        max_n: u64,
        /// Write the report here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Tsv)]
        format: ReportFormat,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Pb,
    Artin,
    SpherePure,
    Sphere,
    FStratum,
    CStratum,
    PappusPi,
    PappusP,
}

/// A presentation read from a file or built from a family.
#[derive(Debug, Args)]
struct PresentationArgs {
    /// Presentation file, or `-` for standard input.
    #[arg(conflicts_with = "family", required_unless_present = "family")]
    file: Option<PathBuf>,
    #[arg(long, value_enum, requires = "k")]
    family: Option<Family>,
    /// Family size; for strata, the number of points.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

/// A failure after argument parsing succeeded.
#[derive(Debug)]
struct DomainError(String);

impl<E: std::fmt::Display> From<E> for DomainError {
    fn from(e: E) -> Self {
        DomainError(e.to_string())
    }
}

type Output = Result<String, DomainError>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(DomainError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}

fn dispatch(command: Command) -> Result<(String, i32), DomainError> {
    let ok = |out: Output| out.map(|s| (s, EXIT_OK));
    match command {
        Command::Normalize { file } => ok(read_braid(&file).map(|w| format!("{}\n", normal_form(&w)))),
        Command::Equal { a, b } => ok((|| {
            let same = braids_equal(&read_braid(&a)?, &read_braid(&b)?)?;
            Ok(if same { "equal\n" } else { "not equal\n" }.to_string())
        })()),
        Command::Perm { file } => ok(read_braid(&file).map(|w| format!("{}\n", w.permutation()))),
        Command::Delta { n, variant } => ok((|| {
            let v = DeltaVariant::from_index(variant as usize).expect("range checked by clap");
            Ok(format!("{}\n", delta_word(n, v)?))
        })()),
        Command::Fulltwist { n, variant } => ok((|| {
            let v: FullTwistVariant = variant.parse()?;
            Ok(format!("{}\n", full_twist_word(n, v)?))
        })()),
        Command::ExpandAlpha { i, j, n } => ok((|| Ok(format!("{}\n", PureGenerator::new(i, j, n)?.expand())))()),
        Command::Abelianize(source) => ok((|| Ok(format!("{}\n", abelianization(&source.load()?))))()),
        Command::Coset { source, subgroup, max } => ok(coset(&source, &subgroup, max)),
        Command::Eliminate { source, gen, rel } => ok((|| {
            let p = source.load()?;
            let index = rel
                .checked_sub(1)
                .ok_or_else(|| DomainError("--rel is 1-based".into()))?;
            Ok(format!("{}\n", eliminate_generator(&p, &gen, index)?))
        })()),
        Command::CheckHom { source, sym, images } => ok(check_hom(&source, sym, &images)),
        Command::Presentation { family, k, i, n } => ok((|| Ok(format!("{}\n", build_family(family, k, i, n)?)))()),
        Command::ExtractBraid { file, angle, seed } => ok(extract(&file, angle, seed)),
        Command::Suite { max_n, output, format } => claim_suite(max_n as usize, output.as_deref(), format),
    }
}

fn read_input(path: &Path) -> Result<String, DomainError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| DomainError(format!("{}: {e}", path.display())))
    }
}

fn read_braid(path: &Path) -> Result<BraidWord, DomainError> {
    read_input(path)?
        .parse::<BraidWord>()
        .map_err(|e| DomainError(format!("{}: {e}", path.display())))
}

impl PresentationArgs {
    fn load(&self) -> Result<Presentation, DomainError> {
        match (&self.file, self.family) {
            (Some(path), _) => read_input(path)?
                .parse::<Presentation>()
                .map_err(|e| DomainError(format!("{}: {e}", path.display()))),
            (None, Some(family)) => build_family(family, self.k.expect("required by clap"), self.i, self.n),
            (None, None) => unreachable!("clap requires a file or a family"),
        }
    }
}

fn build_family(family: Family, k: usize, i: Option<usize>, n: Option<usize>) -> Result<Presentation, DomainError> {
    let positive = |k: usize, min: usize| {
        if k >= min {
            Ok(k)
        } else {
            Err(DomainError(format!("--k must be at least {min} for this family")))
        }
    };
    let stratum = || -> Result<StratumParams, DomainError> {
        let i = i.ok_or_else(|| DomainError("--i is required for strata".into()))?;
        let n = n.ok_or_else(|| DomainError("--n is required for strata".into()))?;
        Ok(StratumParams::new(k, i, n)?)
    };
    Ok(match family {
        Family::Pb => presentations::pure_braid_presentation(positive(k, 1)?),
        Family::Artin => presentations::artin_presentation(positive(k, 1)?),
        Family::SpherePure => presentations::sphere_pure_presentation(positive(k, 1)?),
        Family::Sphere => presentations::sphere_braid_presentation(positive(k, 1)?),
        Family::FStratum => presentations::f_stratum_presentation(&stratum()?)?,
        Family::CStratum => presentations::c_stratum_presentation(&stratum()?)?,
        Family::PappusPi => presentations::pappus_pi_presentation(),
        Family::PappusP => presentations::pappus_p_presentation(),
    })
}

fn coset(source: &PresentationArgs, subgroup: &str, max: usize) -> Output {
    let p = source.load()?;
    let words = subgroup
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| p.parse_word(s))
        .collect::<Result<Vec<FreeWord>, _>>()?;
    let table = coset_enumerate(&p, &words, max)?;
    let trivial = words.iter().all(|w| w.free_reduce().is_empty());
    Ok(if trivial {
        format!("order={}\n", table.cosets())
    } else {
        format!("index={}\n", table.cosets())
    })
}

fn parse_permutation(text: &str, degree: usize) -> Result<Permutation, DomainError> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let images = inner
        .split([',', ' '])
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| DomainError(format!("bad permutation entry {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if images.len() != degree {
        return Err(DomainError(format!(
            "permutation {text:?} does not have degree {degree}"
        )));
    }
    Ok(Permutation::from_images(&images)?)
}

fn check_hom(source: &PresentationArgs, sym: usize, images: &str) -> Output {
    let p = source.load()?;
    let perms = images
        .split(';')
        .map(|s| parse_permutation(s, sym))
        .collect::<Result<Vec<_>, _>>()?;
    if perms.len() != p.generator_count() {
        return Err(DomainError(format!(
            "{} images given for {} generators",
            perms.len(),
            p.generator_count()
        )));
    }
    let map = p.generators().iter().cloned().zip(perms).collect();
    Ok(format!("{}\n", check_homomorphism(&p, &map)?))
}

fn seed_from_env() -> Result<Option<u64>, DomainError> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| DomainError(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn extract(file: &Path, angle: f64, seed: Option<u64>) -> Output {
    let paths: StrandPaths = read_input(file)?
        .parse()
        .map_err(|e| DomainError(format!("{}: {e}", file.display())))?;
    let seed = match seed {
        Some(s) => s,
        None => seed_from_env()?.unwrap_or(0),
    };
    let params = ExtractionParams {
        projection_angle: angle,
        retry_seed: seed,
        ..ExtractionParams::default()
    };
    Ok(format!("{}\n", extract_braid(&paths, &params)?.word))
}

fn claim_suite(max_n: usize, output: Option<&Path>, format: ReportFormat) -> Result<(String, i32), DomainError> {
    let report = run_suite(max_n, &StandardPresentations)?;
    let text = match format {
        ReportFormat::Tsv => report.to_tsv(),
        ReportFormat::Json => report.to_json(),
    };
    let code = if report.all_passed() { EXIT_OK } else { EXIT_DOMAIN };
    let summary = format!(
        "passed={} failed={} skipped={}\n",
        report.summary.passed, report.summary.failed, report.summary.skipped
    );
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| DomainError(format!("{}: {e}", path.display())))?;
            Ok((summary, code))
        }
        None => Ok((text, code)),
    }
}
