//! Fibonacci Q-matrix diffusion over non-overlapping 2x2 pixel blocks.
//!
//! Each block `B` (rows `i, i+1`, columns `j, j+1`, tiled row-major from the
//! top-left) is replaced by `B * A mod 256` where `A = Q^10 = [[89, 55], [55, 34]]`.
//! `det A = 1`, so `A` is invertible mod 256 with `A^-1 = [[34, -55], [-55, 89]]
//! = [[34, 201], [201, 89]]`.

use crate::error::Result;
use crate::image::GrayImage;
use crate::permute::Scheme;

/// 2x2 integer matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QMatrix(pub [[u64; 2]; 2]);

impl QMatrix {
    pub fn mul_mod256(&self, other: &QMatrix) -> QMatrix {
        let (a, b) = (&self.0, &other.0);
        QMatrix(std::array::from_fn(|i| {
            std::array::from_fn(|j| (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 256)
        }))
    }

    pub fn reduce_mod256(&self) -> QMatrix {
        QMatrix(self.0.map(|row| row.map(|v| v % 256)))
    }

    /// Determinant over the integers.
    pub fn det(&self) -> i128 {
        let m = &self.0;
        m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128
    }
}

/// Diffusion matrix `Q^10 mod 256`.
pub const DIFFUSION: QMatrix = QMatrix([[89, 55], [55, 34]]);

/// Inverse of [`DIFFUSION`] mod 256.
pub const DIFFUSION_INV: QMatrix = QMatrix([[34, 201], [201, 89]]);

/// `Q^n = [[F(n+1), F(n)], [F(n), F(n-1)]]` by integer recurrence (`F(1) = F(2) = 1`).
/// Exact for `n <= 92`.
pub fn fib_q_power(n: usize) -> QMatrix {
    assert!((1..=92).contains(&n), "fib_q_power supports 1 <= n <= 92");
    // (F(n-1), F(n))
    let (mut prev, mut cur) = (0u64, 1u64);
    for _ in 1..n {
        (prev, cur) = (cur, prev + cur);
    }
    QMatrix([[prev + cur, cur], [cur, prev]])
}

#[inline]
fn mix_block(block: [u8; 4], m: &QMatrix) -> [u8; 4] {
    // [[b0, b1], [b2, b3]] * m
    let b = block.map(u32::from);
    let m = m.0.map(|r| r.map(|v| v as u32));
    [
        ((b[0] * m[0][0] + b[1] * m[1][0]) % 256) as u8,
        ((b[0] * m[0][1] + b[1] * m[1][1]) % 256) as u8,
        ((b[2] * m[0][0] + b[3] * m[1][0]) % 256) as u8,
        ((b[2] * m[0][1] + b[3] * m[1][1]) % 256) as u8,
    ]
}

fn map_blocks(img: &GrayImage, f: impl Fn([u8; 4]) -> [u8; 4]) -> Result<GrayImage> {
    img.ensure_even()?;
    let w = img.width();
    let src = img.pixels();
    let mut out = vec![0u8; src.len()];
    for i in (0..img.height()).step_by(2) {
        for j in (0..w).step_by(2) {
            let top = i * w + j;
            let bottom = top + w;
            let [c0, c1, c2, c3] = f([src[top], src[top + 1], src[bottom], src[bottom + 1]]);
            out[top] = c0;
            out[top + 1] = c1;
            out[bottom] = c2;
            out[bottom + 1] = c3;
        }
    }
    img.with_pixels(out)
}

fn add(block: [u8; 4], k: u8) -> [u8; 4] {
    block.map(|v| v.wrapping_add(k))
}

fn sub(block: [u8; 4], k: u8) -> [u8; 4] {
    block.map(|v| v.wrapping_sub(k))
}

/// Baseline diffusion: `C = B * A mod 256` per block.
pub fn diffuse_ieahf(img: &GrayImage) -> Result<GrayImage> {
    map_blocks(img, |b| mix_block(b, &DIFFUSION))
}

/// Hardened diffusion: `C = (B + 1) * A + 1 mod 256` per block, so a zero
/// block no longer maps to itself.
pub fn diffuse_gh401(img: &GrayImage) -> Result<GrayImage> {
    map_blocks(img, |b| add(mix_block(add(b, 1), &DIFFUSION), 1))
}

/// Exact inverse of the forward diffusion of `scheme`.
pub fn inverse_diffuse(img: &GrayImage, scheme: Scheme) -> Result<GrayImage> {
    match scheme {
        Scheme::Ieahf => map_blocks(img, |b| mix_block(b, &DIFFUSION_INV)),
        Scheme::Gh401 => map_blocks(img, |b| sub(mix_block(sub(b, 1), &DIFFUSION_INV), 1)),
    }
}
