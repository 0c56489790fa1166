//! Statistical security metrics for cipher images.
//!
//! All sampling is driven by a seeded ChaCha8 generator so every number in a
//! report can be regenerated bit-for-bit from the recorded seed.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Upper 1% point of chi-square with 255 degrees of freedom.
pub const CHI_SQUARE_CRITICAL: f64 = 310.457;

/// NPCR lower bound for 256x256 images at alpha = 0.05.
pub const NPCR_CRITICAL: f64 = 99.5693;

/// UACI acceptance interval for 256x256 images at alpha = 0.05.
pub const UACI_CRITICAL: (f64, f64) = (33.2824, 33.6447);

/// Adjacent pairs sampled per correlation estimate unless overridden.
pub const DEFAULT_PAIRS: usize = 40_000;

/// Trials averaged by the differential test unless overridden.
pub const DEFAULT_TRIALS: usize = 100;

pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut h = [0u64; 256];
    for &p in img.pixels() {
        h[p as usize] += 1;
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    /// Statistic below [`CHI_SQUARE_CRITICAL`]: uniformity not rejected.
    pub passes: bool,
}

/// Pearson statistic `sum_k (v_k - e)^2 / e` with `e = MN / 256`.
pub fn chi_square(img: &GrayImage) -> ChiSquare {
    let mn = img.len() as i128;
    // (v - mn/256)^2 / (mn/256) = (256 v - mn)^2 / (256 mn)
    let num: i128 = histogram(img)
        .iter()
        .map(|&v| {
            let d = 256 * v as i128 - mn;
            d * d
        })
        .sum();
    let statistic = num as f64 / (256 * mn) as f64;
    ChiSquare {
        statistic,
        passes: statistic < CHI_SQUARE_CRITICAL,
    }
}

/// Shannon entropy in bits of the gray-level distribution.
pub fn entropy(img: &GrayImage) -> f64 {
    let n = img.len() as f64;
    let s: f64 = histogram(img)
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * p.log2()
        })
        .sum();
    0.0 - s
}

/// `(NPCR, UACI)` in percent.
pub fn npcr_uaci(c1: &GrayImage, c2: &GrayImage) -> Result<(f64, f64)> {
    c1.same_shape(c2)?;
    let (mut changed, mut intensity) = (0u64, 0u64);
    for (&a, &b) in c1.pixels().iter().zip(c2.pixels()) {
        changed += u64::from(a != b);
        intensity += u64::from(a.abs_diff(b));
    }
    let mn = c1.len() as f64;
    Ok((
        100.0 * changed as f64 / mn,
        100.0 * intensity as f64 / (255.0 * mn),
    ))
}

/// Neighbour direction for adjacent-pixel correlation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [
        Direction::Horizontal,
        Direction::Vertical,
        Direction::Diagonal,
    ];

    fn offset(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
            Direction::Diagonal => (1, 1),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Horizontal => "h",
            Direction::Vertical => "v",
            Direction::Diagonal => "d",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h" | "horizontal" => Ok(Direction::Horizontal),
            "v" | "vertical" => Ok(Direction::Vertical),
            "d" | "diagonal" => Ok(Direction::Diagonal),
            _ => Err(Error::parse("direction", format!("`{s}` is not h, v or d"))),
        }
    }
}

/// Draws `count` distinct (pixel, neighbour) pairs uniformly, or every pair
/// when the image has fewer than `count` positions.
pub fn sample_pairs(
    img: &GrayImage,
    direction: Direction,
    count: usize,
    seed: u64,
) -> Result<Vec<(u8, u8)>> {
    let (dr, dc) = direction.offset();
    if img.height() <= dr || img.width() <= dc {
        return Err(Error::NotEnoughPixels {
            direction: direction.as_str(),
        });
    }
    let (rows, cols) = (img.height() - dr, img.width() - dc);
    let available = rows * cols;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(index::sample(&mut rng, available, count.min(available))
        .into_iter()
        .map(|i| {
            let (r, c) = (i / cols, i % cols);
            (img.get(r, c), img.get(r + dr, c + dc))
        })
        .collect())
}

/// `r = cov(x, y) / sqrt(D(x) D(y))` with population moments.
pub fn pearson(pairs: &[(u8, u8)]) -> Result<f64> {
    if pairs.len() < 2 {
        return Err(Error::TooFew {
            what: "pairs",
            min: 2,
            got: pairs.len(),
        });
    }
    let n = pairs.len() as f64;
    let ex = pairs.iter().map(|p| f64::from(p.0)).sum::<f64>() / n;
    let ey = pairs.iter().map(|p| f64::from(p.1)).sum::<f64>() / n;
    let (mut dx, mut dy, mut cov) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        let (u, v) = (f64::from(x) - ex, f64::from(y) - ey);
        dx += u * u;
        dy += v * v;
        cov += u * v;
    }
    if dx == 0.0 || dy == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok((cov / n) / ((dx / n) * (dy / n)).sqrt())
}

/// Adjacent-pixel correlation from `pairs` seeded samples.
pub fn correlation(img: &GrayImage, direction: Direction, pairs: usize, seed: u64) -> Result<f64> {
    if pairs < 2 {
        return Err(Error::TooFew {
            what: "pairs",
            min: 2,
            got: pairs,
        });
    }
    pearson(&sample_pairs(img, direction, pairs, seed)?)
}

/// Averages of a one-pixel differential attack.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialResult {
    pub trials: usize,
    pub seed: u64,
    pub mean_npcr: f64,
    pub mean_uaci: f64,
    /// Trial with the largest NPCR.
    pub best_npcr: f64,
    pub best_uaci: f64,
    pub per_trial: Vec<(f64, f64)>,
}

impl DifferentialResult {
    pub fn npcr_passes(&self) -> bool {
        self.mean_npcr >= NPCR_CRITICAL
    }

    pub fn uaci_passes(&self) -> bool {
        (UACI_CRITICAL.0..=UACI_CRITICAL.1).contains(&self.mean_uaci)
    }
}

/// Pixel index and its replacement for trial `trial`.
pub fn differential_perturbation(img: &GrayImage, seed: u64, trial: usize) -> (usize, u8) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
    let i = rng.gen_range(0..img.len());
    (i, img.pixels()[i].wrapping_add(1))
}

/// For each trial, bumps one seeded pixel by 1 (mod 256), encrypts both images
/// with `encrypt` and averages NPCR/UACI. Trials run in parallel and are summed
/// in trial order.
pub fn differential_test<F>(
    encrypt: F,
    img: &GrayImage,
    trials: usize,
    seed: u64,
) -> Result<DifferentialResult>
where
    F: Fn(&GrayImage) -> Result<GrayImage> + Sync,
{
    if trials == 0 {
        return Err(Error::TooFew {
            what: "trials",
            min: 1,
            got: 0,
        });
    }
    let reference = encrypt(img)?;
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (i, v) = differential_perturbation(img, seed, t);
            let mut px = img.pixels().to_vec();
            px[i] = v;
            let other = encrypt(&img.with_pixels(px)?)?;
            npcr_uaci(&reference, &other)
        })
        .collect::<Result<Vec<_>>>()?;
    let n = trials as f64;
    let mean_npcr = per_trial.iter().map(|r| r.0).sum::<f64>() / n;
    let mean_uaci = per_trial.iter().map(|r| r.1).sum::<f64>() / n;
    let best =
        per_trial.iter().copied().fold(
            (f64::NEG_INFINITY, 0.0),
            |acc, r| if r.0 > acc.0 { r } else { acc },
        );
    Ok(DifferentialResult {
        trials,
        seed,
        mean_npcr,
        mean_uaci,
        best_npcr: best.0,
        best_uaci: best.1,
        per_trial,
    })
}

/// First-order statistics of one image.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageMetrics {
    pub histogram: [u64; 256],
    pub chi_square: ChiSquare,
    pub entropy: f64,
    /// `None` when the sampled pixels have zero variance.
    pub correlation: Option<[f64; 3]>,
}

impl ImageMetrics {
    pub fn compute(img: &GrayImage, pairs: usize, seed: u64) -> Result<Self> {
        let mut corr = [0.0; 3];
        let mut defined = true;
        for (slot, dir) in corr.iter_mut().zip(Direction::ALL) {
            match correlation(img, dir, pairs, seed) {
                Ok(r) => *slot = r,
                Err(Error::UndefinedCorrelation) => defined = false,
                Err(e) => return Err(e),
            }
        }
        Ok(Self {
            histogram: histogram(img),
            chi_square: chi_square(img),
            entropy: entropy(img),
            correlation: defined.then_some(corr),
        })
    }

    pub fn zero_variance(&self) -> bool {
        self.correlation.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportConfig {
    pub pairs: usize,
    pub seed: u64,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            pairs: DEFAULT_PAIRS,
            seed: 0,
        }
    }
}

/// Every metric for one cipher image, optionally against its plaintext.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub width: usize,
    pub height: usize,
    pub config: ReportConfig,
    pub cipher: ImageMetrics,
    pub plain: Option<ImageMetrics>,
    /// NPCR/UACI between plaintext and ciphertext.
    pub plain_vs_cipher: Option<(f64, f64)>,
    pub differential: Option<DifferentialResult>,
}

pub fn full_report(
    cipher: &GrayImage,
    plain: Option<&GrayImage>,
    config: ReportConfig,
) -> Result<AnalysisReport> {
    let cipher_metrics = ImageMetrics::compute(cipher, config.pairs, config.seed)?;
    let (plain_metrics, plain_vs_cipher) = match plain {
        Some(p) => (
            Some(ImageMetrics::compute(p, config.pairs, config.seed)?),
            Some(npcr_uaci(p, cipher)?),
        ),
        None => (None, None),
    };
    Ok(AnalysisReport {
        width: cipher.width(),
        height: cipher.height(),
        config,
        cipher: cipher_metrics,
        plain: plain_metrics,
        plain_vs_cipher,
        differential: None,
    })
}

fn write_metrics(out: &mut String, prefix: &str, m: &ImageMetrics) {
    let hist: Vec<String> = m.histogram.iter().map(u64::to_string).collect();
    let _ = writeln!(out, "{prefix}.histogram = {}", hist.join(" "));
    let _ = writeln!(
        out,
        "{prefix}.histogram.sum = {}",
        m.histogram.iter().sum::<u64>()
    );
    let _ = writeln!(out, "{prefix}.chi_square = {:.6}", m.chi_square.statistic);
    let _ = writeln!(out, "{prefix}.chi_square.pass = {}", m.chi_square.passes);
    let _ = writeln!(out, "{prefix}.entropy = {:.6}", m.entropy);
    let _ = writeln!(
        out,
        "{prefix}.correlation.zero_variance = {}",
        m.zero_variance()
    );
    if let Some(c) = m.correlation {
        for (dir, r) in Direction::ALL.iter().zip(c) {
            let _ = writeln!(out, "{prefix}.correlation.{dir} = {r:.4}");
        }
    }
}

impl AnalysisReport {
    /// Dotted `key = value` lines; percentages to 6 places, correlations to 4.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "image.width = {}", self.width);
        let _ = writeln!(out, "image.height = {}", self.height);
        let _ = writeln!(out, "sample.seed = {}", self.config.seed);
        let _ = writeln!(out, "sample.pairs = {}", self.config.pairs);
        write_metrics(&mut out, "cipher", &self.cipher);
        if let Some(p) = &self.plain {
            write_metrics(&mut out, "plain", p);
        }
        if let Some((npcr, uaci)) = self.plain_vs_cipher {
            let _ = writeln!(out, "plain_vs_cipher.npcr = {npcr:.6}");
            let _ = writeln!(out, "plain_vs_cipher.uaci = {uaci:.6}");
        }
        if let Some(d) = &self.differential {
            let _ = writeln!(out, "differential.trials = {}", d.trials);
            let _ = writeln!(out, "differential.seed = {}", d.seed);
            let _ = writeln!(out, "differential.npcr.mean = {:.6}", d.mean_npcr);
            let _ = writeln!(out, "differential.uaci.mean = {:.6}", d.mean_uaci);
            let _ = writeln!(out, "differential.npcr.best = {:.6}", d.best_npcr);
            let _ = writeln!(out, "differential.uaci.best = {:.6}", d.best_uaci);
            let _ = writeln!(out, "differential.npcr.pass = {}", d.npcr_passes());
            let _ = writeln!(out, "differential.uaci.pass = {}", d.uaci_passes());
        }
        out
    }
}

/// Reads the `key = value` lines written by the report serializers.
pub fn parse_key_values(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}
