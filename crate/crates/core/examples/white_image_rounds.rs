//! Round-by-round statistics of the baseline cipher on an all-white image.
//! Round 1 leaves exactly two gray levels.

use chaos_imgcrypt::analysis::{chi_square, correlation, entropy, Direction};
use chaos_imgcrypt::cipher::encrypt_ieahf_rounds;
use chaos_imgcrypt::{Error, GrayImage, SystemId, SystemParams};

fn main() -> chaos_imgcrypt::Result<()> {
    let white = GrayImage::filled(256, 256, 255)?;
    println!("round  entropy  chi-square      r_h      r_v      r_d");
    for n in 1..=5 {
        let (c, _) =
            encrypt_ieahf_rounds(&white, SystemId::Hosny6d, &SystemParams::HYPERCHAOTIC, n)?;
        let mut r = Vec::new();
        for dir in Direction::ALL {
            r.push(match correlation(&c, dir, 40_000, 1) {
                Ok(v) => format!("{v:8.4}"),
                Err(Error::UndefinedCorrelation) => "     n/a".into(),
                Err(e) => return Err(e),
            });
        }
        println!(
            "{n:5}  {:7.4}  {:10.1}  {}",
            entropy(&c),
            chi_square(&c).statistic,
            r.join(" ")
        );
    }
    Ok(())
}
