//! Full statistical report of a ciphertext against its plaintext.
//!
//! Usage: cargo run --example analysis_report [input.pgm]

use chaos_imgcrypt::analysis::{full_report, ReportConfig};
use chaos_imgcrypt::cipher::{encrypt_gh401, CipherConfig};
use chaos_imgcrypt::{GrayImage, SBox8};

fn main() -> chaos_imgcrypt::Result<()> {
    let plain = match std::env::args().nth(1) {
        Some(path) => GrayImage::decode_pgm(&std::fs::read(path)?)?,
        None => GrayImage::from_fn(256, 256, |r, c| ((r ^ c) as u8) / 4 + 64)?,
    };
    let (cipher, _) = encrypt_gh401(&plain, &CipherConfig::default(), &SBox8::aes())?;
    let report = full_report(&cipher, Some(&plain), ReportConfig::default())?;
    for line in report
        .to_text()
        .lines()
        .filter(|l| !l.contains(".histogram ="))
    {
        println!("{line}");
    }
    Ok(())
}
