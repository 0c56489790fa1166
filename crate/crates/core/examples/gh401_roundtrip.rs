//! Encrypt and decrypt with the hardened scheme, writing PGM files and the
//! key envelope to a scratch directory.
//!
//! Usage: cargo run --example gh401_roundtrip [input.pgm]

use chaos_imgcrypt::cipher::{decrypt_gh401, encrypt_gh401, CipherConfig, KeyEnvelope};
use chaos_imgcrypt::{GrayImage, SBox8};

fn main() -> chaos_imgcrypt::Result<()> {
    let img = match std::env::args().nth(1) {
        Some(path) => GrayImage::decode_pgm(&std::fs::read(path)?)?,
        // a smooth gradient stands in for a photograph
        None => GrayImage::from_fn(256, 256, |r, c| ((r + c) / 2) as u8)?,
    };
    let sbox = SBox8::aes();
    let (cipher, env) = encrypt_gh401(&img, &CipherConfig::default(), &sbox)?;

    let dir = std::env::temp_dir().join("imgcrypt-example");
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("plain.pgm"), img.encode_pgm())?;
    std::fs::write(dir.join("cipher.pgm"), cipher.encode_pgm())?;
    std::fs::write(dir.join("cipher.key"), env.to_text())?;
    print!("{}", env.to_text());

    // decrypt from the serialized key, as a receiver would
    let key = KeyEnvelope::parse(&std::fs::read_to_string(dir.join("cipher.key"))?)?;
    let back = decrypt_gh401(&cipher, &key, &sbox)?;
    println!("round trip exact: {}", back == img);
    println!("files in {}", dir.display());
    Ok(())
}
