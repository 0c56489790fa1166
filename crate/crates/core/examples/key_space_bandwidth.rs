//! Key-space size and the side-file cost the baseline pays per image.

use chaos_imgcrypt::cipher::{
    bandwidth_ratio, ieahf_key_space_bits, key_space_bits, KeyEnvelope, SideChannelFile,
};

fn main() {
    println!("baseline key space: 2^{:.2}", ieahf_key_space_bits());
    for n in [1, 3, 4, 8] {
        println!("hardened key space, n={n}: 2^{:.2}", key_space_bits(n));
    }

    println!("key envelope: {} bytes", KeyEnvelope::reference_len());
    for n in [2, 4, 8] {
        println!(
            "256x256, n={n}: side file payload {} bytes, {:.0}x the envelope",
            SideChannelFile::payload_len(n, 256, 256),
            bandwidth_ratio(256, 256, n)
        );
    }
}
