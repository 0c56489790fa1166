//! From pixels to key material: the seed, the orbit, the sorting
//! permutation and the whitening key.

use chaos_imgcrypt::chaos::{
    argsort_ascending, build_sort_sequence, derive_initial_conditions, derive_whitening_key,
    generate_orbit, rows_for_pixels,
};
use chaos_imgcrypt::{GrayImage, SystemId, SystemParams};

fn main() -> chaos_imgcrypt::Result<()> {
    let img = GrayImage::from_fn(64, 64, |r, c| (r * c) as u8)?;
    let ic = derive_initial_conditions(&img)?;
    println!("initial conditions: {:?}", ic.as_array());

    for system in [SystemId::Hosny6d, SystemId::RefTestMap] {
        let orbit = generate_orbit(
            system.system(),
            &ic,
            &SystemParams::HYPERCHAOTIC,
            rows_for_pixels(img.len()),
        )?;
        println!(
            "\n{system}: {} rows, first {:?}",
            orbit.rows(),
            orbit.row(0)
        );
        let s = argsort_ascending(&build_sort_sequence(&orbit, img.len())?)?;
        println!("  permutation head: {:?}", &s.as_slice()[..10]);
        let key: String = derive_whitening_key(&orbit)?
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        println!("  whitening key: {key}");
    }
    Ok(())
}
