//! One-pixel differential attack (NPCR/UACI) against both schemes.

use chaos_imgcrypt::analysis::{differential_test, NPCR_CRITICAL, UACI_CRITICAL};
use chaos_imgcrypt::cipher::{encrypt_gh401, encrypt_ieahf_rounds, CipherConfig};
use chaos_imgcrypt::{GrayImage, SBox8, SystemId, SystemParams};

fn main() -> chaos_imgcrypt::Result<()> {
    let white = GrayImage::filled(256, 256, 255)?;
    let trials = 100;
    let p = SystemParams::HYPERCHAOTIC;

    for rounds in 1..=3 {
        let d = differential_test(
            |x| Ok(encrypt_ieahf_rounds(x, SystemId::Hosny6d, &p, rounds)?.0),
            &white,
            trials,
            0,
        )?;
        println!(
            "IEAHF n={rounds}: NPCR {:8.4}%  UACI {:8.4}%",
            d.mean_npcr, d.mean_uaci
        );
    }

    let sbox = SBox8::aes();
    for rounds in [3, 4] {
        let cfg = CipherConfig::new(SystemId::Hosny6d, p, rounds);
        let d = differential_test(|x| Ok(encrypt_gh401(x, &cfg, &sbox)?.0), &white, trials, 0)?;
        println!(
            "GH401 n={rounds}: NPCR {:8.4}%  UACI {:8.4}%  (pass: {}/{})",
            d.mean_npcr,
            d.mean_uaci,
            d.npcr_passes(),
            d.uaci_passes()
        );
    }
    println!(
        "thresholds: NPCR >= {NPCR_CRITICAL}, UACI in [{}, {}]",
        UACI_CRITICAL.0, UACI_CRITICAL.1
    );
    Ok(())
}
