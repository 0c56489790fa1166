//! The two permutation-diffusion pipelines, their key material and the
//! serialized forms that travel with a ciphertext.
//!
//! Baseline (IEAHF): every round re-seeds the orbit from the current image,
//! permutes by the argsort of the odd orbit columns and diffuses 2x2 blocks.
//! Because decryption cannot recompute a seed taken from an image it does not
//! have yet, the per-round permutations ship in a [`SideChannelFile`].
//!
//! Hardened (GH401): one seed from the plaintext, one orbit sliced into
//! per-round permutations, and per round: whitening XOR, round-offset
//! permutation, incremented diffusion, S-box. Everything needed to decrypt
//! fits in a small [`KeyEnvelope`].

use std::fmt::Write as _;

use crate::chaos::{
    argsort_ascending, build_sort_sequence, derive_initial_conditions, derive_whitening_key,
    generate_orbit, rows_for_pixels, InitialConditions, SystemId, SystemParams, WHITENING_KEY_LEN,
    WHITENING_ROWS,
};
use crate::diffuse::{diffuse_gh401, diffuse_ieahf, inverse_diffuse};
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::permute::{invert_permute, permute_gh401, permute_ieahf, PermutationVector, Scheme};
use crate::sbox::{substitute, SBox8};

pub const IEAHF_MIN_ROUNDS: usize = 2;
pub const GH401_MIN_ROUNDS: usize = 3;
pub const GH401_DEFAULT_ROUNDS: usize = 4;

/// What the caller chooses: the dynamical system, its parameters and the
/// round count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CipherConfig {
    pub system: SystemId,
    pub params: SystemParams,
    pub rounds: usize,
}

impl CipherConfig {
    pub fn new(system: SystemId, params: SystemParams, rounds: usize) -> Self {
        Self {
            system,
            params,
            rounds,
        }
    }
}

impl Default for CipherConfig {
    fn default() -> Self {
        Self::new(
            SystemId::default(),
            SystemParams::default(),
            GH401_DEFAULT_ROUNDS,
        )
    }
}

fn min_rounds(scheme: Scheme) -> usize {
    match scheme {
        Scheme::Ieahf => IEAHF_MIN_ROUNDS,
        Scheme::Gh401 => GH401_MIN_ROUNDS,
    }
}

fn check_rounds(scheme: Scheme, rounds: usize) -> Result<()> {
    let min = min_rounds(scheme);
    if rounds < min {
        return Err(Error::TooFewRounds {
            scheme: scheme.as_str(),
            min,
            rounds,
        });
    }
    Ok(())
}

/// Everything the receiver needs, as a line-oriented `field=value` record.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyEnvelope {
    pub scheme: Scheme,
    pub system: SystemId,
    pub ic: InitialConditions,
    pub params: SystemParams,
    pub rounds: usize,
    /// Hardened scheme only.
    pub whitening: Option<[u8; WHITENING_KEY_LEN]>,
    /// Hardened scheme only.
    pub sbox: Option<String>,
}

const IC_FIELDS: [&str; 6] = ["x1", "x2", "x3", "x4", "x5", "x6"];
const PARAM_FIELDS: [&str; 6] = ["a", "b", "c", "d", "e", "r"];

/// 17 significant digits: enough to round-trip every f64.
fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

impl KeyEnvelope {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scheme={}", self.scheme);
        let _ = writeln!(out, "system={}", self.system);
        for (name, v) in IC_FIELDS.iter().zip(self.ic.0) {
            let _ = writeln!(out, "{name}={}", format_real(v));
        }
        for (name, v) in PARAM_FIELDS.iter().zip(self.params.to_array()) {
            let _ = writeln!(out, "{name}={}", format_real(v));
        }
        let _ = writeln!(out, "n={}", self.rounds);
        let hex: String = self
            .whitening
            .map(|k| k.iter().map(|b| format!("{b:02x}")).collect())
            .unwrap_or_default();
        let _ = writeln!(out, "whitening={hex}");
        let _ = writeln!(out, "sbox={}", self.sbox.as_deref().unwrap_or(""));
        out
    }

    /// Strict parser: fields must appear once each, in the serialized order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let mut field = |name: &str| -> Result<String> {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse("key envelope", format!("missing field `{name}`")))?;
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::parse("key envelope", format!("bad line `{line}`")))?;
            if k.trim() != name {
                return Err(Error::parse(
                    "key envelope",
                    format!("expected `{name}`, found `{}`", k.trim()),
                ));
            }
            Ok(v.trim().to_string())
        };
        let real = |name: &str, v: String| -> Result<f64> {
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| {
                    Error::parse("key envelope", format!("`{name}` is not a finite real"))
                })
        };

        let scheme: Scheme = field("scheme")?.parse()?;
        let system: SystemId = field("system")?.parse()?;
        let mut ic = [0.0; 6];
        for (slot, name) in ic.iter_mut().zip(IC_FIELDS) {
            *slot = real(name, field(name)?)?;
        }
        let mut params = [0.0; 6];
        for (slot, name) in params.iter_mut().zip(PARAM_FIELDS) {
            *slot = real(name, field(name)?)?;
        }
        let rounds: usize = field("n")?
            .parse()
            .map_err(|_| Error::parse("key envelope", "`n` is not a count"))?;
        check_rounds(scheme, rounds)?;
        let whitening_hex = field("whitening")?;
        let sbox = field("sbox")?;

        let (whitening, sbox) = match scheme {
            Scheme::Ieahf => (None, None),
            Scheme::Gh401 => {
                let key = parse_hex_key(&whitening_hex)?;
                if sbox.is_empty() {
                    return Err(Error::parse("key envelope", "missing S-box name"));
                }
                (Some(key), Some(sbox))
            }
        };
        Ok(Self {
            scheme,
            system,
            ic: InitialConditions(ic),
            params: SystemParams::from_array(params),
            rounds,
            whitening,
            sbox,
        })
    }

    /// Serialized size of a representative hardened-scheme envelope, the
    /// denominator of [`bandwidth_ratio`].
    pub fn reference_len() -> usize {
        let ic = InitialConditions::from_x1(1.0 / 129.0);
        KeyEnvelope {
            scheme: Scheme::Gh401,
            system: SystemId::Hosny6d,
            ic,
            params: SystemParams::HYPERCHAOTIC,
            rounds: GH401_DEFAULT_ROUNDS,
            whitening: Some([0; WHITENING_KEY_LEN]),
            sbox: Some("aes".into()),
        }
        .to_text()
        .len()
    }
}

fn parse_hex_key(hex: &str) -> Result<[u8; WHITENING_KEY_LEN]> {
    if hex.len() != 2 * WHITENING_KEY_LEN || !hex.is_ascii() {
        return Err(Error::parse(
            "key envelope",
            "whitening key must be 32 hex digits",
        ));
    }
    let mut key = [0u8; WHITENING_KEY_LEN];
    for (i, slot) in key.iter_mut().enumerate() {
        *slot = u8::from_str_radix(&hex[2 * i..2 * i + 2], 16)
            .map_err(|_| Error::parse("key envelope", "whitening key must be 32 hex digits"))?;
    }
    Ok(key)
}

/// One round of the baseline's transmitted side information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideChannelRound {
    pub permutation: PermutationVector,
    /// CRC-32 of the image after this round.
    pub checksum: u32,
}

/// Per-round permutations the baseline transmits alongside its ciphertext.
///
/// Binary layout (little-endian): `b"SSX1"`, `n: u32`, `width: u32`,
/// `height: u32`, then `n` blocks of `width*height` 0-based `u32` indices each
/// followed by a `u32` checksum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideChannelFile {
    pub width: usize,
    pub height: usize,
    pub rounds: Vec<SideChannelRound>,
}

const SS_MAGIC: &[u8; 4] = b"SSX1";

impl SideChannelFile {
    pub fn encode(&self) -> Vec<u8> {
        let mn = self.width * self.height;
        let mut out = Vec::with_capacity(16 + self.rounds.len() * (mn + 1) * 4);
        out.extend_from_slice(SS_MAGIC);
        for v in [self.rounds.len(), self.width, self.height] {
            out.extend_from_slice(&(v as u32).to_le_bytes());
        }
        for round in &self.rounds {
            for &i in round.permutation.as_slice() {
                out.extend_from_slice(&(i as u32).to_le_bytes());
            }
            out.extend_from_slice(&round.checksum.to_le_bytes());
        }
        out
    }

    pub fn decode(data: &[u8]) -> Result<Self> {
        let bad = |reason: &str| Error::parse("side-channel file", reason.to_string());
        if data.len() < 16 || &data[..4] != SS_MAGIC {
            return Err(bad("missing SSX1 header"));
        }
        let word = |i: usize| u32::from_le_bytes(data[i..i + 4].try_into().unwrap()) as usize;
        let (n, width, height) = (word(4), word(8), word(12));
        let mn = width
            .checked_mul(height)
            .ok_or_else(|| bad("dimensions overflow"))?;
        let block = (mn + 1) * 4;
        if data.len() != 16 + n * block {
            return Err(bad("length does not match header"));
        }
        let mut rounds = Vec::with_capacity(n);
        for r in 0..n {
            let base = 16 + r * block;
            let indices = (0..mn).map(|i| word(base + 4 * i)).collect();
            rounds.push(SideChannelRound {
                permutation: PermutationVector::new(indices)?,
                checksum: word(base + 4 * mn) as u32,
            });
        }
        Ok(Self {
            width,
            height,
            rounds,
        })
    }

    /// Bytes of permutation payload: `n * width * height` 32-bit indices.
    pub fn payload_len(rounds: usize, width: usize, height: usize) -> usize {
        rounds * width * height * 4
    }
}

fn checksum(img: &GrayImage) -> u32 {
    crc32fast::hash(img.pixels())
}

fn sort_permutation(orbit: &crate::chaos::ChaoticOrbit, mn: usize) -> Result<PermutationVector> {
    argsort_ascending(&build_sort_sequence(orbit, mn)?)
}

/// One baseline round: seed from `img`, permute, diffuse.
pub fn ieahf_round(
    img: &GrayImage,
    system: SystemId,
    params: &SystemParams,
) -> Result<(GrayImage, PermutationVector)> {
    img.ensure_even()?;
    let mn = img.len();
    let ic = derive_initial_conditions(img)?;
    let orbit = generate_orbit(system.system(), &ic, params, rows_for_pixels(mn))?;
    let s = sort_permutation(&orbit, mn)?;
    let shuffled = img.with_pixels(permute_ieahf(img.pixels(), &s)?)?;
    Ok((diffuse_ieahf(&shuffled)?, s))
}

/// Baseline encryption with any round count `>= 1`; [`encrypt_ieahf`]
/// enforces the scheme's minimum.
pub fn encrypt_ieahf_rounds(
    img: &GrayImage,
    system: SystemId,
    params: &SystemParams,
    rounds: usize,
) -> Result<(GrayImage, SideChannelFile)> {
    img.ensure_even()?;
    let mut current = img.clone();
    let mut side = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let (next, s) = ieahf_round(&current, system, params)?;
        side.push(SideChannelRound {
            permutation: s,
            checksum: checksum(&next),
        });
        current = next;
    }
    Ok((
        current,
        SideChannelFile {
            width: img.width(),
            height: img.height(),
            rounds: side,
        },
    ))
}

pub fn encrypt_ieahf(
    img: &GrayImage,
    config: &CipherConfig,
) -> Result<(GrayImage, SideChannelFile)> {
    check_rounds(Scheme::Ieahf, config.rounds)?;
    encrypt_ieahf_rounds(img, config.system, &config.params, config.rounds)
}

/// Undoes the baseline rounds in reverse using the transmitted permutations,
/// checking each intermediate image against its stored checksum.
pub fn decrypt_ieahf(cipher: &GrayImage, side: &SideChannelFile) -> Result<GrayImage> {
    cipher.ensure_even()?;
    if side.width != cipher.width() || side.height != cipher.height() {
        return Err(Error::SideChannelMismatch(format!(
            "file is for {}x{}, ciphertext is {}x{}",
            side.width,
            side.height,
            cipher.width(),
            cipher.height()
        )));
    }
    if side.rounds.is_empty() {
        return Err(Error::SideChannelMismatch("no rounds stored".into()));
    }
    let mut current = cipher.clone();
    for (k, round) in side.rounds.iter().enumerate().rev() {
        if checksum(&current) != round.checksum {
            return Err(Error::ChecksumMismatch { round: k + 1 });
        }
        let mixed = inverse_diffuse(&current, Scheme::Ieahf)?;
        let p = invert_permute(mixed.pixels(), &round.permutation, k + 1, Scheme::Ieahf)?;
        current = current.with_pixels(p)?;
    }
    Ok(current)
}

/// Per-round permutations and whitening key of the hardened scheme.
struct Gh401Schedule {
    permutations: Vec<PermutationVector>,
    whitening: [u8; WHITENING_KEY_LEN],
}

fn gh401_schedule(
    system: SystemId,
    ic: &InitialConditions,
    params: &SystemParams,
    rounds: usize,
    mn: usize,
) -> Result<Gh401Schedule> {
    let per_round = rows_for_pixels(mn);
    let total = (rounds * per_round).max(WHITENING_ROWS);
    let orbit = generate_orbit(system.system(), ic, params, total)?;
    let whitening = derive_whitening_key(&orbit)?;
    let permutations = (0..rounds)
        .map(|k| sort_permutation(&orbit.slice(k * per_round, per_round)?, mn))
        .collect::<Result<_>>()?;
    Ok(Gh401Schedule {
        permutations,
        whitening,
    })
}

fn xor_whitening(pixels: &mut [u8], key: &[u8; WHITENING_KEY_LEN]) {
    for (p, k) in pixels.iter_mut().zip(key.iter().cycle()) {
        *p ^= k;
    }
}

/// Hardened encryption. The seed comes from the plaintext once; the returned
/// envelope is the complete decryption key.
pub fn encrypt_gh401(
    img: &GrayImage,
    config: &CipherConfig,
    sbox: &SBox8,
) -> Result<(GrayImage, KeyEnvelope)> {
    check_rounds(Scheme::Gh401, config.rounds)?;
    img.ensure_even()?;
    let ic = derive_initial_conditions(img)?;
    let schedule = gh401_schedule(config.system, &ic, &config.params, config.rounds, img.len())?;
    let mut current = img.clone();
    for (k, s) in schedule.permutations.iter().enumerate() {
        let mut p = current.into_pixels();
        xor_whitening(&mut p, &schedule.whitening);
        let shuffled = img.with_pixels(permute_gh401(&p, s, k + 1)?)?;
        current = substitute(&diffuse_gh401(&shuffled)?, sbox, false);
    }
    let envelope = KeyEnvelope {
        scheme: Scheme::Gh401,
        system: config.system,
        ic,
        params: config.params,
        rounds: config.rounds,
        whitening: Some(schedule.whitening),
        sbox: Some(sbox.name().to_string()),
    };
    Ok((current, envelope))
}

pub fn decrypt_gh401(cipher: &GrayImage, env: &KeyEnvelope, sbox: &SBox8) -> Result<GrayImage> {
    if env.scheme != Scheme::Gh401 {
        return Err(Error::SchemeMismatch {
            expected: Scheme::Gh401.as_str(),
            found: env.scheme.as_str(),
        });
    }
    let (Some(whitening), Some(expected_sbox)) = (env.whitening, env.sbox.as_deref()) else {
        return Err(Error::parse(
            "key envelope",
            "hardened key lacks whitening key or S-box",
        ));
    };
    if expected_sbox != sbox.name() {
        return Err(Error::SBoxMismatch {
            expected: expected_sbox.to_string(),
            actual: sbox.name().to_string(),
        });
    }
    check_rounds(Scheme::Gh401, env.rounds)?;
    cipher.ensure_even()?;
    let schedule = gh401_schedule(env.system, &env.ic, &env.params, env.rounds, cipher.len())?;
    let mut current = cipher.clone();
    for (k, s) in schedule.permutations.iter().enumerate().rev() {
        let mixed = inverse_diffuse(&substitute(&current, sbox, true), Scheme::Gh401)?;
        let mut p = invert_permute(mixed.pixels(), s, k + 1, Scheme::Gh401)?;
        xor_whitening(&mut p, &whitening);
        current = current.with_pixels(p)?;
    }
    Ok(current)
}

/// Twelve 16-decimal-digit reals (10^96), the 128-bit whitening key and the
/// round count: `log2(n) + 128 + 96 log2(10)`.
pub fn key_space_bits(rounds: usize) -> f64 {
    assert!(rounds >= 1);
    (rounds as f64).log2() + 128.0 + ieahf_key_space_bits()
}

/// Baseline key space: the twelve reals alone, `96 log2(10)`.
pub fn ieahf_key_space_bits() -> f64 {
    96.0 * 10f64.log2()
}

/// Size of the baseline's per-round permutation payload relative to a
/// hardened-scheme key envelope.
pub fn bandwidth_ratio(width: usize, height: usize, rounds: usize) -> f64 {
    SideChannelFile::payload_len(rounds, width, height) as f64 / KeyEnvelope::reference_len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(rounds: usize) -> CipherConfig {
        CipherConfig::new(SystemId::RefTestMap, SystemParams::uniform(3.99), rounds)
    }

    fn sample_image(w: usize, h: usize) -> GrayImage {
        GrayImage::from_fn(w, h, |r, c| ((r * 37 + c * 11) ^ (r * c)) as u8).unwrap()
    }

    #[test]
    fn black_is_a_fixed_point_of_the_baseline() {
        let black = GrayImage::filled(16, 16, 0).unwrap();
        for n in [2, 3, 5] {
            let (c, _) = encrypt_ieahf(&black, &small_config(n)).unwrap();
            assert_eq!(c, black);
        }
    }

    #[test]
    fn white_round_one_is_two_valued() {
        let white = GrayImage::filled(8, 8, 255).unwrap();
        let (c, side) =
            encrypt_ieahf_rounds(&white, SystemId::RefTestMap, &SystemParams::default(), 1)
                .unwrap();
        assert_eq!(side.rounds.len(), 1);
        for row in 0..8 {
            for col in 0..8 {
                assert_eq!(c.get(row, col), if col % 2 == 0 { 112 } else { 167 });
            }
        }
    }

    #[test]
    fn baseline_round_trip() {
        let img = sample_image(12, 10);
        for system in [SystemId::RefTestMap, SystemId::Hosny6d] {
            let cfg = CipherConfig::new(system, SystemParams::default(), 3);
            let (c, side) = encrypt_ieahf(&img, &cfg).unwrap();
            assert_ne!(c, img);
            assert_eq!(decrypt_ieahf(&c, &side).unwrap(), img);
        }
    }

    #[test]
    fn baseline_rejects_wrong_side_file() {
        let img = sample_image(8, 8);
        let (c, mut side) = encrypt_ieahf(&img, &small_config(3)).unwrap();
        side.rounds.swap(0, 2);
        assert!(matches!(
            decrypt_ieahf(&c, &side),
            Err(Error::ChecksumMismatch { round: 3 })
        ));
        let (_, other) = encrypt_ieahf(&sample_image(8, 4), &small_config(2)).unwrap();
        assert!(matches!(
            decrypt_ieahf(&c, &other),
            Err(Error::SideChannelMismatch(_))
        ));
    }

    #[test]
    fn round_minimums() {
        let img = sample_image(4, 4);
        assert!(matches!(
            encrypt_ieahf(&img, &small_config(1)),
            Err(Error::TooFewRounds { min: 2, .. })
        ));
        assert!(matches!(
            encrypt_gh401(&img, &small_config(2), &SBox8::aes()),
            Err(Error::TooFewRounds { min: 3, .. })
        ));
    }

    #[test]
    fn odd_images_rejected() {
        let img = GrayImage::filled(5, 4, 9).unwrap();
        assert!(matches!(
            encrypt_gh401(&img, &small_config(4), &SBox8::aes()),
            Err(Error::OddDimensions { .. })
        ));
        assert!(encrypt_ieahf(&img, &small_config(2)).is_err());
    }

    #[test]
    fn hardened_round_trip_both_systems() {
        let img = sample_image(16, 6);
        for system in [SystemId::RefTestMap, SystemId::Hosny6d] {
            let cfg = CipherConfig::new(system, SystemParams::default(), 4);
            let (c, env) = encrypt_gh401(&img, &cfg, &SBox8::aes()).unwrap();
            assert_eq!(decrypt_gh401(&c, &env, &SBox8::aes()).unwrap(), img);
        }
    }

    #[test]
    fn hardened_is_deterministic() {
        let img = sample_image(8, 8);
        let a = encrypt_gh401(&img, &small_config(4), &SBox8::aes()).unwrap();
        let b = encrypt_gh401(&img, &small_config(4), &SBox8::aes()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hardened_rejects_wrong_sbox_and_scheme() {
        let img = sample_image(8, 8);
        let (c, env) = encrypt_gh401(&img, &small_config(3), &SBox8::aes()).unwrap();
        assert!(matches!(
            decrypt_gh401(&c, &env, &SBox8::identity()),
            Err(Error::SBoxMismatch { .. })
        ));
        let mut wrong = env.clone();
        wrong.scheme = Scheme::Ieahf;
        assert!(matches!(
            decrypt_gh401(&c, &wrong, &SBox8::aes()),
            Err(Error::SchemeMismatch { .. })
        ));
    }

    #[test]
    fn envelope_text_round_trip_is_bit_exact() {
        let img = sample_image(8, 8);
        let (_, env) = encrypt_gh401(&img, &CipherConfig::default(), &SBox8::aes()).unwrap();
        let text = env.to_text();
        let parsed = KeyEnvelope::parse(&text).unwrap();
        assert_eq!(parsed, env);
        assert_eq!(parsed.to_text(), text);
        for (a, b) in parsed.ic.0.iter().zip(env.ic.0.iter()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn envelope_field_order_is_fixed() {
        let env = KeyEnvelope {
            scheme: Scheme::Gh401,
            system: SystemId::RefTestMap,
            ic: InitialConditions::from_x1(0.25),
            params: SystemParams::uniform(3.99),
            rounds: 4,
            whitening: Some([0xab; 16]),
            sbox: Some("aes".into()),
        };
        let text = env.to_text();
        let keys: Vec<&str> = text.lines().map(|l| l.split('=').next().unwrap()).collect();
        assert_eq!(
            keys,
            [
                "scheme",
                "system",
                "x1",
                "x2",
                "x3",
                "x4",
                "x5",
                "x6",
                "a",
                "b",
                "c",
                "d",
                "e",
                "r",
                "n",
                "whitening",
                "sbox"
            ]
        );
        assert!(text.contains("x1=2.5000000000000000e-1\n"));
        assert!(text.contains(&format!("whitening={}\n", "ab".repeat(16))));
        let swapped = text.replacen(
            "scheme=GH401\nsystem=reftestmap",
            "system=reftestmap\nscheme=GH401",
            1,
        );
        assert!(KeyEnvelope::parse(&swapped).is_err());
    }

    #[test]
    fn envelope_rejects_bad_values() {
        let good = KeyEnvelope {
            scheme: Scheme::Gh401,
            system: SystemId::Hosny6d,
            ic: InitialConditions::from_x1(0.5),
            params: SystemParams::default(),
            rounds: 4,
            whitening: Some([1; 16]),
            sbox: Some("aes".into()),
        }
        .to_text();
        assert!(KeyEnvelope::parse(&good.replace("n=4", "n=2")).is_err());
        assert!(KeyEnvelope::parse(&good.replace("system=hosny6d", "system=lorenz")).is_err());
        assert!(KeyEnvelope::parse(&good.replace(&"01".repeat(16), "zz")).is_err());
        assert!(KeyEnvelope::parse(&good.replace("sbox=aes", "sbox=")).is_err());
        assert!(KeyEnvelope::parse(&good.replace("a=1.0000000000000000e1", "a=NaN")).is_err());
    }

    #[test]
    fn side_channel_binary_layout() {
        let side = SideChannelFile {
            width: 2,
            height: 2,
            rounds: vec![SideChannelRound {
                permutation: PermutationVector::new(vec![3, 1, 0, 2]).unwrap(),
                checksum: 0xdead_beef,
            }],
        };
        let bytes = side.encode();
        let mut expected = b"SSX1".to_vec();
        for w in [1u32, 2, 2, 3, 1, 0, 2, 0xdead_beef] {
            expected.extend_from_slice(&w.to_le_bytes());
        }
        assert_eq!(bytes, expected);
        assert_eq!(SideChannelFile::decode(&bytes).unwrap(), side);
        assert!(SideChannelFile::decode(&bytes[..bytes.len() - 1]).is_err());
        let mut dup = bytes.clone();
        dup[16..20].copy_from_slice(&1u32.to_le_bytes());
        assert!(SideChannelFile::decode(&dup).is_err());
    }

    #[test]
    fn key_space_arithmetic() {
        assert!((key_space_bits(1) - 446.905).abs() < 0.001);
        assert!((key_space_bits(4) - 448.905).abs() < 0.001);
        assert!((ieahf_key_space_bits() - 318.9).abs() < 0.05);
    }

    #[test]
    fn bandwidth_ratio_examples() {
        let len = KeyEnvelope::reference_len();
        assert!((200..400).contains(&len), "{len}");
        let r2 = bandwidth_ratio(256, 256, 2);
        assert_eq!(r2, 524_288.0 / len as f64);
        assert!(r2 > 1000.0);
        assert_eq!(bandwidth_ratio(256, 256, 4), 2.0 * r2);
        assert!(bandwidth_ratio(1, 1, 1) < 1.0);
    }
}
