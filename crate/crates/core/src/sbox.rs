//! Bijective 8-bit substitution and the transparency-order leakage metric.

use std::path::Path;

use crate::error::{Error, Result};
use crate::image::GrayImage;

const AES_TABLE_TXT: &str = include_str!("../data/aes.txt");

/// Validated bijective byte substitution with its inverse table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SBox8 {
    name: String,
    table: [u8; 256],
    inverse: [u8; 256],
}

impl SBox8 {
    pub fn new(name: impl Into<String>, table: &[u8]) -> Result<Self> {
        if table.len() != 256 {
            return Err(Error::SBoxLength(table.len()));
        }
        let mut inverse = [0u8; 256];
        let mut seen = [false; 256];
        for (x, &y) in table.iter().enumerate() {
            if seen[y as usize] {
                return Err(Error::SBoxDuplicate { value: y, index: x });
            }
            seen[y as usize] = true;
            inverse[y as usize] = x as u8;
        }
        let mut t = [0u8; 256];
        t.copy_from_slice(table);
        Ok(Self {
            name: name.into(),
            table: t,
            inverse,
        })
    }

    pub fn identity() -> Self {
        let table: Vec<u8> = (0..=255).collect();
        Self::new("identity", &table).expect("identity is bijective")
    }

    /// The AES (Rijndael) S-box, bundled as the default strong table.
    pub fn aes() -> Self {
        parse_sbox_text("aes", AES_TABLE_TXT).expect("bundled AES table is valid")
    }

    /// Looks up a bundled table by name.
    pub fn bundled(name: &str) -> Option<Self> {
        match name {
            "identity" => Some(Self::identity()),
            "aes" => Some(Self::aes()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &[u8; 256] {
        &self.table
    }

    pub fn inverse_table(&self) -> &[u8; 256] {
        &self.inverse
    }

    #[inline]
    pub fn apply(&self, x: u8) -> u8 {
        self.table[x as usize]
    }

    #[inline]
    pub fn apply_inverse(&self, y: u8) -> u8 {
        self.inverse[y as usize]
    }

    pub fn transparency_order(&self) -> f64 {
        transparency_order(self)
    }
}

/// Raw form: exactly 256 bytes.
pub fn load_sbox(name: impl Into<String>, source: &[u8]) -> Result<SBox8> {
    SBox8::new(name, source)
}

/// Text form: 256 whitespace-separated decimal byte values.
pub fn parse_sbox_text(name: impl Into<String>, text: &str) -> Result<SBox8> {
    let values = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<u8>()
                .map_err(|_| Error::parse("S-box", format!("`{tok}` is not a byte value")))
        })
        .collect::<Result<Vec<u8>>>()?;
    SBox8::new(name, &values)
}

/// Reads a `.txt` (decimal) or `.bin` (raw) table. The file stem becomes the
/// S-box name.
pub fn load_sbox_file(path: &Path) -> Result<SBox8> {
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("sbox")
        .to_string();
    let bytes = std::fs::read(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("txt") => {
            let text = std::str::from_utf8(&bytes)
                .map_err(|_| Error::parse("S-box", "text table is not UTF-8"))?;
            parse_sbox_text(name, text)
        }
        Some("bin") => load_sbox(name, &bytes),
        _ => Err(Error::parse(
            "S-box",
            format!("{}: expected a .txt or .bin file", path.display()),
        )),
    }
}

/// Resolves a bundled name or a file path.
pub fn resolve_sbox(name_or_path: &str) -> Result<SBox8> {
    match SBox8::bundled(name_or_path) {
        Some(s) => Ok(s),
        None => load_sbox_file(Path::new(name_or_path)),
    }
}

/// Replaces every pixel `v` by `table[v]` (or the inverse table).
pub fn substitute(img: &GrayImage, sbox: &SBox8, inverse: bool) -> GrayImage {
    let t = if inverse { &sbox.inverse } else { &sbox.table };
    let mut out = img.clone();
    for p in out.pixels_mut() {
        *p = t[*p as usize];
    }
    out
}

/// In-place Walsh-Hadamard transform.
fn walsh_hadamard(v: &mut [i64]) {
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        h *= 2;
    }
}

/// Autocorrelation spectrum `AC(a) = sum_x (-1)^(f(x) ^ f(x ^ a))` of one
/// coordinate function, via `AC = WHT(W^2) / 2^n`.
fn autocorrelation(table: &[u8], bit: usize) -> Vec<i64> {
    let size = table.len();
    let mut w: Vec<i64> = table
        .iter()
        .map(|&y| if (y >> bit) & 1 == 1 { -1 } else { 1 })
        .collect();
    walsh_hadamard(&mut w);
    for v in w.iter_mut() {
        *v *= *v;
    }
    walsh_hadamard(&mut w);
    w.iter().map(|v| v / size as i64).collect()
}

/// Transparency order of an `n`-bit to `m`-bit function given as a lookup
/// table of length `2^n`:
///
/// ```text
/// TO = max_beta ( |m - 2 wt(beta)|
///        - 1/(2^2n - 2^n) * sum_{a != 0} | sum_j (-1)^beta_j AC_j(a) | )
/// ```
///
/// Lower is less leaky. Works for `1 <= n <= 8`, `1 <= m <= 8`.
pub fn transparency_order_table(table: &[u8], n: u32, m: u32) -> f64 {
    assert!((1..=8).contains(&n) && (1..=8).contains(&m));
    assert_eq!(table.len(), 1 << n, "table must have 2^n entries");
    let size = 1usize << n;
    let ac: Vec<Vec<i64>> = (0..m as usize).map(|j| autocorrelation(table, j)).collect();
    let norm = (size * size - size) as f64;
    (0..1u32 << m)
        .map(|beta| {
            let spread: i64 = (1..size)
                .map(|a| {
                    ac.iter()
                        .enumerate()
                        .map(|(j, acj)| {
                            if (beta >> j) & 1 == 1 {
                                -acj[a]
                            } else {
                                acj[a]
                            }
                        })
                        .sum::<i64>()
                        .abs()
                })
                .sum();
            (m as f64 - 2.0 * beta.count_ones() as f64).abs() - spread as f64 / norm
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn transparency_order(sbox: &SBox8) -> f64 {
    transparency_order_table(&sbox.table, 8, 8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_valid() {
        let s = load_sbox("id", &(0..=255).collect::<Vec<u8>>()).unwrap();
        assert_eq!(s.apply(17), 17);
        assert_eq!(s.table(), SBox8::identity().table());
        assert_eq!(s.inverse_table(), s.table());
    }

    #[test]
    fn duplicates_are_named() {
        let mut t: Vec<u8> = (0..=255).collect();
        t[0] = 7;
        t[1] = 7;
        assert!(matches!(
            SBox8::new("bad", &t),
            Err(Error::SBoxDuplicate { value: 7, index: 1 })
        ));
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(matches!(
            SBox8::new("short", &[0u8; 255]),
            Err(Error::SBoxLength(255))
        ));
    }

    #[test]
    fn aes_table_is_the_rijndael_sbox() {
        let s = SBox8::aes();
        assert_eq!(s.apply(0x00), 0x63);
        assert_eq!(s.apply(0x01), 0x7c);
        assert_eq!(s.apply(0x53), 0xed);
        assert_eq!(s.apply(0xff), 0x16);
        for x in 0..=255u8 {
            assert_eq!(s.apply_inverse(s.apply(x)), x);
        }
    }

    #[test]
    fn text_parser_reports_bad_tokens() {
        assert!(parse_sbox_text("x", "1 2 three").is_err());
        assert!(parse_sbox_text("x", "256").is_err());
    }

    #[test]
    fn substitution_examples() {
        let img = GrayImage::from_fn(4, 4, |r, c| (r * 40 + c * 7) as u8).unwrap();
        assert_eq!(substitute(&img, &SBox8::identity(), false), img);
        let aes = SBox8::aes();
        let constant = GrayImage::filled(4, 2, 7).unwrap();
        let out = substitute(&constant, &aes, false);
        assert!(out.pixels().iter().all(|&v| v == aes.apply(7)));
        assert_eq!(substitute(&substitute(&img, &aes, false), &aes, true), img);
    }

    #[test]
    fn substitution_permutes_histogram() {
        let img = GrayImage::from_fn(16, 16, |r, c| ((r * 31) ^ (c * 5)) as u8).unwrap();
        let aes = SBox8::aes();
        let out = substitute(&img, &aes, false);
        let mut hin = [0usize; 256];
        let mut hout = [0usize; 256];
        img.pixels().iter().for_each(|&v| hin[v as usize] += 1);
        out.pixels().iter().for_each(|&v| hout[v as usize] += 1);
        for v in 0..256 {
            assert_eq!(hout[aes.apply(v as u8) as usize], hin[v]);
        }
    }

    #[test]
    fn walsh_hadamard_of_delta() {
        let mut v = vec![0i64; 8];
        v[0] = 1;
        walsh_hadamard(&mut v);
        assert_eq!(v, vec![1; 8]);
    }

    #[test]
    fn autocorrelation_at_zero_is_full() {
        let s = SBox8::aes();
        for bit in 0..8 {
            assert_eq!(autocorrelation(s.table(), bit)[0], 256);
        }
    }

    #[test]
    fn transparency_order_in_range() {
        for s in [SBox8::identity(), SBox8::aes()] {
            let to = s.transparency_order();
            assert!((0.0..=8.0).contains(&to), "{} -> {to}", s.name());
        }
    }

    #[test]
    fn identity_transparency_order_closed_form() {
        // AC_j(a) = 256 (-1)^a_j, so beta = 0 wins with
        // 8 - 256 * sum_{a != 0} |8 - 2 wt(a)| / (2^16 - 2^8)
        let spread: i64 = (1..256u32)
            .map(|a| (8 - 2 * a.count_ones() as i64).abs())
            .sum();
        assert_eq!(spread, 552);
        let to = SBox8::identity().transparency_order();
        assert!((to - (8.0 - 552.0 * 256.0 / 65280.0)).abs() < 1e-12, "{to}");
    }

    const PRESENT: [u8; 16] = [
        0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD, 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2,
    ];

    #[test]
    fn input_xor_invariance() {
        let base = transparency_order_table(&PRESENT, 4, 4);
        for c in 0..16usize {
            let shifted: Vec<u8> = (0..16).map(|x| PRESENT[x ^ c]).collect();
            assert!((transparency_order_table(&shifted, 4, 4) - base).abs() < 1e-12);
        }
    }
}
