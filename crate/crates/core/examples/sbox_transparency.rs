//! Transparency order of the bundled S-boxes, or of a table file given on
//! the command line (.txt decimal or .bin raw).

use chaos_imgcrypt::sbox::{load_sbox_file, transparency_order_table};
use chaos_imgcrypt::SBox8;

fn main() -> chaos_imgcrypt::Result<()> {
    let mut boxes = vec![SBox8::identity(), SBox8::aes()];
    if let Some(path) = std::env::args().nth(1) {
        boxes.push(load_sbox_file(path.as_ref())?);
    }
    for s in &boxes {
        println!("{:>10}: TO = {:.6}", s.name(), s.transparency_order());
    }

    let present = [
        0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD, 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2,
    ];
    println!(
        "4-bit PRESENT: TO = {:.6}",
        transparency_order_table(&present, 4, 4)
    );
    Ok(())
}
