//! Chaos-based grayscale image encryption.
//!
//! Two permutation-diffusion ciphers share one toolkit:
//!
//! * a baseline scheme ([`cipher::encrypt_ieahf`]) that re-seeds a chaotic
//!   orbit from the image every round and ships its permutations in a side file;
//! * a hardened scheme ([`cipher::encrypt_gh401`]) with a whitening key,
//!   round-dependent permutation offsets, an affine diffusion step and an
//!   S-box, decryptable from a compact key envelope.
//!
//! [`analysis`] holds the statistical tests (histogram, chi-square, entropy,
//! NPCR/UACI, adjacent-pixel correlation, differential attack) and
//! [`sbox::transparency_order`] scores S-boxes for power-analysis leakage.
//!
//! ```
//! use chaos_imgcrypt::{cipher, GrayImage, SBox8};
//!
//! let img = GrayImage::from_fn(16, 16, |r, c| (r * 16 + c) as u8).unwrap();
//! let sbox = SBox8::aes();
//! let (enc, key) = cipher::encrypt_gh401(&img, &Default::default(), &sbox).unwrap();
//! assert_eq!(cipher::decrypt_gh401(&enc, &key, &sbox).unwrap(), img);
//! ```

pub mod analysis;
pub mod chaos;
pub mod cipher;
pub mod cli;
pub mod diffuse;
pub mod error;
pub mod image;
pub mod permute;
pub mod sbox;

pub use chaos::{InitialConditions, SystemId, SystemParams};
pub use cipher::{CipherConfig, KeyEnvelope, SideChannelFile};
pub use error::{Error, ErrorClass, Result};
pub use image::GrayImage;
pub use permute::{PermutationVector, Scheme};
pub use sbox::SBox8;
