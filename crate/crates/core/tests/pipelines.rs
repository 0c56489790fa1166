mod common;

use chaos_imgcrypt::analysis::{chi_square, entropy, histogram};
use chaos_imgcrypt::chaos::{
    argsort_ascending, build_sort_sequence, generate_orbit, rows_for_pixels,
};
use chaos_imgcrypt::cipher::*;
use chaos_imgcrypt::{Error, GrayImage, InitialConditions, SBox8, SystemId, SystemParams};
use common::{differing_fraction, random_image};
use proptest::prelude::*;

fn config(system: SystemId, rounds: usize) -> CipherConfig {
    CipherConfig::new(system, SystemParams::HYPERCHAOTIC, rounds)
}

#[test]
fn ieahf_black_is_a_fixed_point_for_every_round_count() {
    let black = GrayImage::filled(256, 256, 0).unwrap();
    for n in 2..=6 {
        let (c, side) = encrypt_ieahf(&black, &config(SystemId::Hosny6d, n)).unwrap();
        assert_eq!(c, black, "n = {n}");
        assert_eq!(decrypt_ieahf(&c, &side).unwrap(), black);
    }
}

#[test]
fn ieahf_white_first_round_is_two_valued() {
    let white = GrayImage::filled(256, 256, 255).unwrap();
    let (c, _) =
        encrypt_ieahf_rounds(&white, SystemId::Hosny6d, &SystemParams::HYPERCHAOTIC, 1).unwrap();
    let h = histogram(&c);
    assert_eq!(h[112], 32768);
    assert_eq!(h[167], 32768);
    assert_eq!(entropy(&c), 1.0);
}

#[test]
fn ieahf_side_file_round_order_is_checked() {
    let img = random_image(16, 16, 3);
    let (c, mut side) = encrypt_ieahf(&img, &config(SystemId::Hosny6d, 3)).unwrap();
    side.rounds.swap(0, 2);
    assert!(matches!(
        decrypt_ieahf(&c, &side),
        Err(Error::ChecksumMismatch { .. })
    ));
}

#[test]
fn ieahf_side_file_survives_serialization() {
    let img = random_image(32, 16, 4);
    let (c, side) = encrypt_ieahf(&img, &config(SystemId::Hosny6d, 2)).unwrap();
    let bytes = side.encode();
    assert_eq!(
        bytes.len(),
        16 + SideChannelFile::payload_len(2, 32, 16) + 2 * 4
    );
    assert_eq!(
        decrypt_ieahf(&c, &SideChannelFile::decode(&bytes).unwrap()).unwrap(),
        img
    );
}

#[test]
fn gh401_has_no_uniform_fixed_point() {
    let sbox = SBox8::aes();
    let mut passing = 0;
    for v in 0..=255u8 {
        let img = GrayImage::filled(256, 256, v).unwrap();
        let (c, _) = encrypt_gh401(&img, &CipherConfig::default(), &sbox).unwrap();
        assert_ne!(c, img, "constant {v}");
        passing += usize::from(chi_square(&c).passes);
    }
    // a 1% test: an ideal cipher fails it on ~2.6 of 256 images
    assert!(passing >= 246, "{passing}/256 pass chi-square");
}

#[test]
fn gh401_is_deterministic() {
    let img = random_image(64, 32, 9);
    let sbox = SBox8::aes();
    let a = encrypt_gh401(&img, &CipherConfig::default(), &sbox).unwrap();
    let b = encrypt_gh401(&img, &CipherConfig::default(), &sbox).unwrap();
    assert_eq!(a, b);
}

#[test]
fn gh401_envelope_text_decrypts() {
    let img = random_image(32, 32, 10);
    let sbox = SBox8::aes();
    let (c, env) = encrypt_gh401(&img, &CipherConfig::default(), &sbox).unwrap();
    let env2 = KeyEnvelope::parse(&env.to_text()).unwrap();
    assert_eq!(env2, env);
    assert_eq!(env2.to_text(), env.to_text());
    assert_eq!(decrypt_gh401(&c, &env2, &sbox).unwrap(), img);
}

#[test]
fn gh401_wrong_sbox_is_a_mismatch() {
    let img = random_image(8, 8, 1);
    let (c, env) = encrypt_gh401(&img, &CipherConfig::default(), &SBox8::aes()).unwrap();
    assert!(matches!(
        decrypt_gh401(&c, &env, &SBox8::identity()),
        Err(Error::SBoxMismatch { .. })
    ));
}

#[test]
fn gh401_plaintext_sensitivity() {
    let sbox = SBox8::aes();
    let img = random_image(256, 256, 12);
    let (c1, _) = encrypt_gh401(&img, &CipherConfig::default(), &sbox).unwrap();
    let mut px = img.pixels().to_vec();
    px[1000] = px[1000].wrapping_add(1);
    let (c2, _) = encrypt_gh401(
        &img.with_pixels(px).unwrap(),
        &CipherConfig::default(),
        &sbox,
    )
    .unwrap();
    assert!(differing_fraction(c1.pixels(), c2.pixels()) >= 0.99);
}

fn perturbed_key_garbles(system: SystemId) -> f64 {
    let sbox = SBox8::aes();
    let img = random_image(256, 256, 13);
    let (c, mut env) = encrypt_gh401(&img, &config(system, 4), &sbox).unwrap();
    env.ic.0[0] += 1e-10;
    let wrong = decrypt_gh401(&c, &env, &sbox).unwrap();
    differing_fraction(wrong.pixels(), img.pixels())
}

#[test]
fn gh401_key_sensitivity_reftestmap() {
    let f = perturbed_key_garbles(SystemId::RefTestMap);
    assert!(f >= 0.99, "{f}");
}

#[test]
fn gh401_key_sensitivity_hosny6d() {
    let f = perturbed_key_garbles(SystemId::Hosny6d);
    assert!(f >= 0.99, "{f}");
}

fn argsort_change(system: SystemId) -> f64 {
    let mn = 4096;
    let ic = InitialConditions::from_x1(0.3141592653589793);
    let mut ic2 = ic;
    ic2.0[0] += 1e-10;
    let perm = |ic: &InitialConditions| {
        let orbit = generate_orbit(
            system.system(),
            ic,
            &SystemParams::HYPERCHAOTIC,
            rows_for_pixels(mn),
        )
        .unwrap();
        argsort_ascending(&build_sort_sequence(&orbit, mn).unwrap()).unwrap()
    };
    let (a, b) = (perm(&ic), perm(&ic2));
    let moved = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .filter(|(x, y)| x != y)
        .count();
    moved as f64 / mn as f64
}

#[test]
fn argsort_sensitivity_reftestmap() {
    let f = argsort_change(SystemId::RefTestMap);
    assert!(f >= 0.9, "{f}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_both_schemes(
        w in 1usize..=16, h in 1usize..=16, seed in any::<u64>(),
        n in 3usize..=5, jitter in any::<u64>(), reftest in any::<bool>(),
    ) {
        let img = random_image(2 * w, 2 * h, seed);
        let system = if reftest { SystemId::RefTestMap } else { SystemId::Hosny6d };
        let cfg = CipherConfig::new(system, SystemParams::HYPERCHAOTIC.jittered(jitter, 0.01), n);
        let sbox = SBox8::aes();
        let (c, env) = encrypt_gh401(&img, &cfg, &sbox).unwrap();
        prop_assert_eq!(decrypt_gh401(&c, &env, &sbox).unwrap(), img.clone());
        let (c, side) = encrypt_ieahf(&img, &cfg).unwrap();
        prop_assert_eq!(side.rounds.len(), n);
        prop_assert_eq!(decrypt_ieahf(&c, &side).unwrap(), img);
    }
}
