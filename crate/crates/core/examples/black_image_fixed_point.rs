//! The baseline cipher cannot encrypt an all-black image: the sum-seeded
//! permutation shuffles zeros and the block diffusion maps zero to zero.

use chaos_imgcrypt::analysis::{chi_square, entropy};
use chaos_imgcrypt::cipher::{encrypt_gh401, encrypt_ieahf, CipherConfig};
use chaos_imgcrypt::{GrayImage, SBox8, SystemId, SystemParams};

fn main() -> chaos_imgcrypt::Result<()> {
    let black = GrayImage::filled(256, 256, 0)?;
    for n in [2, 3, 5] {
        let cfg = CipherConfig::new(SystemId::Hosny6d, SystemParams::HYPERCHAOTIC, n);
        let (c, _) = encrypt_ieahf(&black, &cfg)?;
        println!("IEAHF n={n}: ciphertext == plaintext: {}", c == black);
    }

    let (c, _) = encrypt_gh401(&black, &CipherConfig::default(), &SBox8::aes())?;
    let chi = chi_square(&c);
    println!(
        "GH401 n=4: entropy {:.4}, chi-square {:.1} (pass: {})",
        entropy(&c),
        chi.statistic,
        chi.passes
    );
    Ok(())
}
