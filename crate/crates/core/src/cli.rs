//! `imgcrypt` command-line front end.
//!
//! Exit codes are stable:
//!
//! | code | meaning                                              |
//! |------|------------------------------------------------------|
//! | 0    | success                                              |
//! | 2    | usage error (bad flag, missing argument)             |
//! | 3    | validation error (odd size, bad S-box, bad envelope) |
//! | 4    | I/O error (missing or unwritable file)               |
//! | 5    | crypto mismatch (wrong key, side file or S-box)      |

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{self, differential_test, full_report, ReportConfig};
use crate::chaos::{SystemId, SystemParams};
use crate::cipher::{
    decrypt_gh401, decrypt_ieahf, encrypt_gh401, encrypt_ieahf, CipherConfig, KeyEnvelope,
    SideChannelFile, GH401_DEFAULT_ROUNDS, IEAHF_MIN_ROUNDS,
};
use crate::error::{Error, ErrorClass, Result};
use crate::image::GrayImage;
use crate::permute::Scheme;
use crate::sbox::{resolve_sbox, SBox8};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_CRYPTO: i32 = 5;

/// Relative spread of `--seed` parameter draws around the canonical set.
pub const PARAM_JITTER: f64 = 0.01;

pub fn exit_code(err: &Error) -> i32 {
    match err.class() {
        ErrorClass::Validation => EXIT_VALIDATION,
        ErrorClass::Io => EXIT_IO,
        ErrorClass::CryptoMismatch => EXIT_CRYPTO,
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "imgcrypt",
    version,
    about = "Chaos-based grayscale image encryption and analysis"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// gh401 (hardened) or ieahf (baseline)
    #[arg(long, global = true, default_value = "gh401")]
    pub scheme: Scheme,
    /// Dynamical system: hosny6d or reftestmap
    #[arg(long, global = true, default_value = "hosny6d")]
    pub system: SystemId,
    /// Round count [default: 4 for gh401, 2 for ieahf]
    #[arg(long, global = true)]
    pub rounds: Option<usize>,
    /// Seed for sampling; on encrypt, draws parameters within 1% of the canonical set
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, default_value_t = analysis::DEFAULT_TRIALS)]
    pub trials: usize,
    /// Adjacent pairs per correlation estimate
    #[arg(long, global = true, default_value_t = analysis::DEFAULT_PAIRS)]
    pub pairs: usize,
    /// Bundled S-box name (aes, identity) or a .txt/.bin table [default: aes,
    /// or on decrypt the one named in the key]
    #[arg(long, global = true)]
    pub sbox: Option<String>,
    /// Key envelope path [default: <out>.key]
    #[arg(long, global = true)]
    pub key: Option<PathBuf>,
    /// Side-channel permutation file [default: <out>.ss]
    #[arg(long, global = true)]
    pub ss: Option<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report path; stdout when absent
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Encrypt a P5 PGM image
    Encrypt { input: PathBuf },
    /// Decrypt with --key (gh401) or --ss (ieahf)
    Decrypt { input: PathBuf },
    /// Statistics of an image; optionally against its plaintext
    Analyze {
        input: PathBuf,
        plain: Option<PathBuf>,
        /// Treat INPUT as plaintext and run the one-pixel differential test
        #[arg(long)]
        differential: bool,
    },
    /// Encrypt one image with both schemes and report side by side
    Compare { input: PathBuf },
    /// Bijectivity and transparency order of --sbox
    SboxEval,
    /// Mean encrypt/decrypt wall time over --trials runs
    Bench { input: Option<PathBuf> },
}

impl Options {
    fn rounds_for(&self, scheme: Scheme) -> usize {
        self.rounds.unwrap_or(match scheme {
            Scheme::Gh401 => GH401_DEFAULT_ROUNDS,
            Scheme::Ieahf => IEAHF_MIN_ROUNDS,
        })
    }

    fn params(&self) -> SystemParams {
        match self.seed {
            Some(s) => SystemParams::HYPERCHAOTIC.jittered(s, PARAM_JITTER),
            None => SystemParams::HYPERCHAOTIC,
        }
    }

    fn cipher_config(&self, scheme: Scheme) -> CipherConfig {
        CipherConfig::new(self.system, self.params(), self.rounds_for(scheme))
    }

    fn report_config(&self) -> ReportConfig {
        ReportConfig {
            pairs: self.pairs,
            seed: self.seed.unwrap_or(0),
        }
    }

    fn sbox(&self) -> Result<SBox8> {
        resolve_sbox(self.sbox.as_deref().unwrap_or("aes"))
    }

    fn out(&self) -> Result<&Path> {
        self.out
            .as_deref()
            .ok_or_else(|| Error::parse("arguments", "--out is required"))
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Writes through a sibling temp file and renames it into place.
pub fn write_atomic(path: &Path, data: &[u8]) -> Result<()> {
    let tmp = with_suffix(path, &format!(".tmp{}", std::process::id()));
    let res = std::fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(data).and_then(|_| f.sync_all()))
        .and_then(|_| std::fs::rename(&tmp, path));
    if res.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    Ok(res?)
}

fn read_image(path: &Path) -> Result<GrayImage> {
    GrayImage::decode_pgm(&std::fs::read(path)?)
}

fn emit(opts: &Options, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &opts.report {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn encrypt_with(
    scheme: Scheme,
    img: &GrayImage,
    opts: &Options,
    sbox: Option<&SBox8>,
) -> Result<GrayImage> {
    let config = opts.cipher_config(scheme);
    match (scheme, sbox) {
        (Scheme::Gh401, Some(s)) => Ok(encrypt_gh401(img, &config, s)?.0),
        (Scheme::Gh401, None) => Ok(encrypt_gh401(img, &config, &opts.sbox()?)?.0),
        (Scheme::Ieahf, _) => Ok(encrypt_ieahf(img, &config)?.0),
    }
}

pub fn cmd_encrypt(input: &Path, opts: &Options, stdout: &mut dyn Write) -> Result<()> {
    let img = read_image(input)?;
    img.ensure_even()?;
    let out = opts.out()?;
    let config = opts.cipher_config(opts.scheme);
    match opts.scheme {
        Scheme::Gh401 => {
            let sbox = opts.sbox()?;
            let (cipher, env) = encrypt_gh401(&img, &config, &sbox)?;
            let key = opts.key.clone().unwrap_or_else(|| with_suffix(out, ".key"));
            write_atomic(&key, env.to_text().as_bytes())?;
            write_atomic(out, &cipher.encode_pgm())?;
            writeln!(stdout, "wrote {} and key {}", out.display(), key.display())?;
        }
        Scheme::Ieahf => {
            let (cipher, side) = encrypt_ieahf(&img, &config)?;
            let ss = opts.ss.clone().unwrap_or_else(|| with_suffix(out, ".ss"));
            write_atomic(&ss, &side.encode())?;
            write_atomic(out, &cipher.encode_pgm())?;
            writeln!(
                stdout,
                "wrote {} and side file {}",
                out.display(),
                ss.display()
            )?;
        }
    }
    Ok(())
}

pub fn cmd_decrypt(input: &Path, opts: &Options, stdout: &mut dyn Write) -> Result<()> {
    let cipher = read_image(input)?;
    let out = opts.out()?;
    // a side file alone implies the baseline scheme
    let scheme = if opts.ss.is_some() && opts.key.is_none() {
        Scheme::Ieahf
    } else {
        opts.scheme
    };
    let plain = match scheme {
        Scheme::Gh401 => {
            let key = opts
                .key
                .clone()
                .unwrap_or_else(|| with_suffix(input, ".key"));
            let text = std::fs::read_to_string(&key)?;
            let env = KeyEnvelope::parse(&text)?;
            let sbox = resolve_sbox(
                opts.sbox
                    .as_deref()
                    .or(env.sbox.as_deref())
                    .unwrap_or("aes"),
            )?;
            decrypt_gh401(&cipher, &env, &sbox)?
        }
        Scheme::Ieahf => {
            let ss = opts.ss.clone().unwrap_or_else(|| with_suffix(input, ".ss"));
            decrypt_ieahf(&cipher, &SideChannelFile::decode(&std::fs::read(&ss)?)?)?
        }
    };
    write_atomic(out, &plain.encode_pgm())?;
    writeln!(stdout, "wrote {}", out.display())?;
    Ok(())
}

pub fn cmd_analyze(
    input: &Path,
    plain: Option<&Path>,
    differential: bool,
    opts: &Options,
    stdout: &mut dyn Write,
) -> Result<()> {
    let img = read_image(input)?;
    let plain = plain.map(read_image).transpose()?;
    let mut report = full_report(&img, plain.as_ref(), opts.report_config())?;
    if differential {
        let sbox = match opts.scheme {
            Scheme::Gh401 => Some(opts.sbox()?),
            Scheme::Ieahf => None,
        };
        let encrypt = |x: &GrayImage| encrypt_with(opts.scheme, x, opts, sbox.as_ref());
        report.differential = Some(differential_test(
            encrypt,
            &img,
            opts.trials,
            opts.seed.unwrap_or(0),
        )?);
    }
    let mut text = String::new();
    if differential {
        let _ = writeln!(text, "scheme = {}", opts.scheme);
        let _ = writeln!(text, "system = {}", opts.system);
        let _ = writeln!(text, "rounds = {}", opts.rounds_for(opts.scheme));
    }
    text.push_str(&report.to_text());
    emit(opts, &text, stdout)
}

pub fn cmd_compare(input: &Path, opts: &Options, stdout: &mut dyn Write) -> Result<()> {
    let img = read_image(input)?;
    img.ensure_even()?;
    let sbox = opts.sbox()?;
    let seed = opts.seed.unwrap_or(0);
    let mut text = String::new();
    let _ = writeln!(text, "image.width = {}", img.width());
    let _ = writeln!(text, "image.height = {}", img.height());
    let _ = writeln!(text, "sample.seed = {seed}");
    let _ = writeln!(text, "sample.pairs = {}", opts.pairs);
    let _ = writeln!(text, "differential.trials = {}", opts.trials);
    let _ = writeln!(
        text,
        "note = informational; third-party schemes are not implemented"
    );
    for scheme in [Scheme::Ieahf, Scheme::Gh401] {
        let tag = scheme.as_str().to_ascii_lowercase();
        let encrypt = |x: &GrayImage| encrypt_with(scheme, x, opts, Some(&sbox));
        let cipher = encrypt(&img)?;
        let m = analysis::ImageMetrics::compute(&cipher, opts.pairs, seed)?;
        let _ = writeln!(text, "{tag}.rounds = {}", opts.rounds_for(scheme));
        let _ = writeln!(text, "{tag}.entropy = {:.6}", m.entropy);
        let _ = writeln!(text, "{tag}.chi_square = {:.6}", m.chi_square.statistic);
        let _ = writeln!(text, "{tag}.chi_square.pass = {}", m.chi_square.passes);
        let _ = writeln!(
            text,
            "{tag}.correlation.zero_variance = {}",
            m.zero_variance()
        );
        if let Some(c) = m.correlation {
            for (dir, r) in analysis::Direction::ALL.iter().zip(c) {
                let _ = writeln!(text, "{tag}.correlation.{dir} = {r:.4}");
            }
        }
        if opts.trials > 0 {
            let d = differential_test(encrypt, &img, opts.trials, seed)?;
            let _ = writeln!(text, "{tag}.differential.npcr.mean = {:.6}", d.mean_npcr);
            let _ = writeln!(text, "{tag}.differential.uaci.mean = {:.6}", d.mean_uaci);
        }
    }
    emit(opts, &text, stdout)
}

pub fn cmd_sbox_eval(opts: &Options, stdout: &mut dyn Write) -> Result<()> {
    let sbox = opts.sbox()?;
    let mut text = String::new();
    let _ = writeln!(text, "sbox.name = {}", sbox.name());
    // construction already rejected anything non-bijective
    let _ = writeln!(text, "sbox.bijective = true");
    let _ = writeln!(
        text,
        "sbox.transparency_order = {:.6}",
        sbox.transparency_order()
    );
    emit(opts, &text, stdout)
}

pub fn cmd_bench(input: Option<&Path>, opts: &Options, stdout: &mut dyn Write) -> Result<()> {
    let img = match input {
        Some(p) => read_image(p)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.unwrap_or(0));
            GrayImage::from_fn(256, 256, |_, _| rng.gen())?
        }
    };
    img.ensure_even()?;
    let trials = opts.trials.max(1);
    let config = opts.cipher_config(opts.scheme);
    let sbox = opts.sbox()?;
    let (mut enc, mut dec) = (0.0, 0.0);
    let mut digest = 0;
    for _ in 0..trials {
        let t = Instant::now();
        let (cipher, back) = match opts.scheme {
            Scheme::Gh401 => {
                let (c, env) = encrypt_gh401(&img, &config, &sbox)?;
                enc += t.elapsed().as_secs_f64();
                let t = Instant::now();
                let p = decrypt_gh401(&c, &env, &sbox)?;
                dec += t.elapsed().as_secs_f64();
                (c, p)
            }
            Scheme::Ieahf => {
                let (c, side) = encrypt_ieahf(&img, &config)?;
                enc += t.elapsed().as_secs_f64();
                let t = Instant::now();
                let p = decrypt_ieahf(&c, &side)?;
                dec += t.elapsed().as_secs_f64();
                (c, p)
            }
        };
        if back != img {
            return Err(Error::SideChannelMismatch(
                "round trip failed during bench".into(),
            ));
        }
        digest = crc32fast::hash(cipher.pixels());
    }
    let mut text = String::new();
    let _ = writeln!(text, "scheme = {}", opts.scheme);
    let _ = writeln!(text, "system = {}", opts.system);
    let _ = writeln!(text, "rounds = {}", config.rounds);
    let _ = writeln!(text, "image.width = {}", img.width());
    let _ = writeln!(text, "image.height = {}", img.height());
    let _ = writeln!(text, "trials = {trials}");
    let _ = writeln!(text, "encrypt.mean_seconds = {:.6}", enc / trials as f64);
    let _ = writeln!(text, "decrypt.mean_seconds = {:.6}", dec / trials as f64);
    let _ = writeln!(text, "ciphertext.crc32 = {digest:08x}");
    emit(opts, &text, stdout)
}

pub fn execute(config: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    let opts = &config.opts;
    match &config.command {
        Command::Encrypt { input } => cmd_encrypt(input, opts, stdout),
        Command::Decrypt { input } => cmd_decrypt(input, opts, stdout),
        Command::Analyze {
            input,
            plain,
            differential,
        } => cmd_analyze(input, plain.as_deref(), *differential, opts, stdout),
        Command::Compare { input } => cmd_compare(input, opts, stdout),
        Command::SboxEval => cmd_sbox_eval(opts, stdout),
        Command::Bench { input } => cmd_bench(input.as_deref(), opts, stdout),
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match execute(&config, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "imgcrypt: {e}");
            exit_code(&e)
        }
    }
}
