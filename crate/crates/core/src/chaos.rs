//! Chaotic key schedule: plaintext-derived seeds, orbit generation and the
//! sequences the ciphers extract from the orbit.
//!
//! An orbit is a table of 6-vectors, one row per post-transient iteration of a
//! [`DynamicalSystem`]. The odd state variables (columns 1, 3, 5 in 1-based
//! numbering) feed the sorting permutation; the even ones feed the whitening key.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::permute::PermutationVector;

/// Iterations discarded before any orbit value is used. Not key material.
pub const TRANSIENT_STEPS: usize = 1000;

/// Fixed RK4 step for continuous systems.
pub const RK4_STEP: f64 = 0.001;

/// Bytes in the whitening key.
pub const WHITENING_KEY_LEN: usize = 16;

/// Rows of the orbit the whitening key is cut from.
pub const WHITENING_ROWS: usize = 6;

/// Six real parameters of the dynamical system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub r: f64,
}

impl SystemParams {
    /// Canonical parameter set of the hyperchaotic regime.
    pub const HYPERCHAOTIC: SystemParams = SystemParams {
        a: 10.0,
        b: 8.0 / 3.0,
        c: 28.0,
        d: -1.0,
        e: 8.0,
        r: 3.0,
    };

    pub fn from_array(v: [f64; 6]) -> Self {
        let [a, b, c, d, e, r] = v;
        Self { a, b, c, d, e, r }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.r]
    }

    pub fn uniform(v: f64) -> Self {
        Self::from_array([v; 6])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Scales every parameter by an independent factor drawn uniformly from
    /// `[1 - rel, 1 + rel]`, reproducibly from `seed`.
    pub fn jittered(&self, seed: u64, rel: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::from_array(
            self.to_array()
                .map(|v| v * (1.0 + rng.gen_range(-rel..=rel))),
        )
    }
}

impl Default for SystemParams {
    fn default() -> Self {
        Self::HYPERCHAOTIC
    }
}

/// Seeds x1..x6 of the orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialConditions(pub [f64; 6]);

impl InitialConditions {
    /// Expands x1 with x_i = frac(x_{i-1} * 10^6).
    pub fn from_x1(x1: f64) -> Self {
        let mut x = [0.0; 6];
        x[0] = x1;
        for i in 1..6 {
            x[i] = (x[i - 1] * 1e6).fract();
        }
        Self(x)
    }

    pub fn x1(&self) -> f64 {
        self.0[0]
    }

    pub fn as_array(&self) -> &[f64; 6] {
        &self.0
    }
}

/// Post-transient trajectory, one 6-vector per row.
#[derive(Debug, Clone, PartialEq)]
pub struct ChaoticOrbit {
    rows: Vec<[f64; 6]>,
}

impl ChaoticOrbit {
    pub fn from_rows(rows: Vec<[f64; 6]>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::OrbitDivergence { step: i });
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[f64; 6] {
        &self.rows[i]
    }

    /// Column `j` (0-based state variable index).
    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(move |r| r[j])
    }

    /// Rows `start..start + len` as a new orbit.
    pub fn slice(&self, start: usize, len: usize) -> Result<ChaoticOrbit> {
        let end = start + len;
        if end > self.rows.len() {
            return Err(Error::OrbitTooShort {
                rows: self.rows.len(),
                needed: end,
            });
        }
        Ok(ChaoticOrbit {
            rows: self.rows[start..end].to_vec(),
        })
    }
}

/// A deterministic 6-dimensional map: next state from current state.
pub trait DynamicalSystem: Send + Sync {
    fn id(&self) -> &'static str;
    fn step(&self, state: &[f64; 6], params: &SystemParams) -> [f64; 6];
}

/// Six-dimensional Lorenz-type hyperchaotic flow, advanced one RK4 step of
/// [`RK4_STEP`] per iteration.
///
/// ```text
/// x1' = a(x2 - x1) + x4
/// x2' = c x1 - x2 - x1 x3 + x5
/// x3' = x1 x2 - b x3 + x6
/// x4' = d x4 - x2 x3
/// x5' = -e x2
/// x6' = r x1 - x6
/// ```
#[derive(Debug, Clone, Copy, Default)]
pub struct Hosny6d;

impl Hosny6d {
    fn field(x: &[f64; 6], p: &SystemParams) -> [f64; 6] {
        [
            p.a * (x[1] - x[0]) + x[3],
            p.c * x[0] - x[1] - x[0] * x[2] + x[4],
            x[0] * x[1] - p.b * x[2] + x[5],
            p.d * x[3] - x[1] * x[2],
            -p.e * x[1],
            p.r * x[0] - x[5],
        ]
    }
}

fn axpy(x: &[f64; 6], k: &[f64; 6], s: f64) -> [f64; 6] {
    std::array::from_fn(|i| x[i] + s * k[i])
}

impl DynamicalSystem for Hosny6d {
    fn id(&self) -> &'static str {
        "hosny6d"
    }

    fn step(&self, x: &[f64; 6], p: &SystemParams) -> [f64; 6] {
        let h = RK4_STEP;
        let k1 = Self::field(x, p);
        let k2 = Self::field(&axpy(x, &k1, h / 2.0), p);
        let k3 = Self::field(&axpy(x, &k2, h / 2.0), p);
        let k4 = Self::field(&axpy(x, &k3, h), p);
        std::array::from_fn(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
    }
}

/// Coupled-logistic test map confined to [0, 1):
/// `y'_j = frac(rho_j y_j (1 - y_j) + 0.1 y_{j+1})` with `rho_j = 3.99 + 0.001 j`
/// (1-based j, neighbour index wrapping 6 -> 1). Ignores the parameters.
#[derive(Debug, Clone, Copy, Default)]
pub struct RefTestMap;

impl DynamicalSystem for RefTestMap {
    fn id(&self) -> &'static str {
        "reftestmap"
    }

    fn step(&self, state: &[f64; 6], _params: &SystemParams) -> [f64; 6] {
        let y: [f64; 6] = std::array::from_fn(|i| state[i].abs().fract());
        std::array::from_fn(|i| {
            let rho = 3.99 + 0.001 * (i + 1) as f64;
            (rho * y[i] * (1.0 - y[i]) + 0.1 * y[(i + 1) % 6]).fract()
        })
    }
}

/// Registered systems, selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SystemId {
    #[default]
    Hosny6d,
    RefTestMap,
}

impl SystemId {
    pub fn system(self) -> &'static dyn DynamicalSystem {
        match self {
            SystemId::Hosny6d => &Hosny6d,
            SystemId::RefTestMap => &RefTestMap,
        }
    }

    pub fn as_str(self) -> &'static str {
        self.system().id()
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hosny6d" => Ok(SystemId::Hosny6d),
            "reftestmap" => Ok(SystemId::RefTestMap),
            other => Err(Error::UnknownSystem(other.to_string())),
        }
    }
}

/// Seeds the orbit from pixel content: x1 = (sum P + MN) / (2^23 + MN), the
/// remaining five by repeated `frac(x * 10^6)`. x1 exceeds 1 for bright images
/// and is used as-is.
pub fn derive_initial_conditions(image: &GrayImage) -> Result<InitialConditions> {
    if image.is_empty() {
        return Err(Error::EmptyImage);
    }
    let mn = image.len() as u64;
    let sum: u64 = image.pixels().iter().map(|&p| u64::from(p)).sum();
    let x1 = (sum + mn) as f64 / ((1u64 << 23) + mn) as f64;
    Ok(InitialConditions::from_x1(x1))
}

/// Iterates `system` for `TRANSIENT_STEPS + length` steps and keeps the last
/// `length` states.
pub fn generate_orbit(
    system: &dyn DynamicalSystem,
    ic: &InitialConditions,
    params: &SystemParams,
    length: usize,
) -> Result<ChaoticOrbit> {
    if length == 0 {
        return Err(Error::EmptyOrbit);
    }
    let mut state = ic.0;
    let mut rows = Vec::with_capacity(length);
    for step in 1..=TRANSIENT_STEPS + length {
        state = system.step(&state, params);
        if state.iter().any(|v| !v.is_finite()) {
            return Err(Error::OrbitDivergence { step });
        }
        if step > TRANSIENT_STEPS {
            rows.push(state);
        }
    }
    Ok(ChaoticOrbit { rows })
}

/// Rows each odd column contributes for `mn` pixels.
pub fn rows_for_pixels(mn: usize) -> usize {
    mn.div_ceil(3)
}

/// Concatenates the first `ceil(mn/3)` values of columns x1, x3 and x5 and
/// truncates to `mn`.
pub fn build_sort_sequence(orbit: &ChaoticOrbit, mn: usize) -> Result<Vec<f64>> {
    let per = rows_for_pixels(mn);
    if orbit.rows() < per {
        return Err(Error::OrbitTooShort {
            rows: orbit.rows(),
            needed: per,
        });
    }
    let mut seq = Vec::with_capacity(3 * per);
    for col in [0, 2, 4] {
        seq.extend(orbit.column(col).take(per));
    }
    seq.truncate(mn);
    Ok(seq)
}

/// Positions of `values` in ascending order; ties keep their original order.
pub fn argsort_ascending(values: &[f64]) -> Result<PermutationVector> {
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let mut idx: Vec<usize> = (0..values.len()).collect();
    // values are finite, partial_cmp never fails
    idx.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    Ok(PermutationVector::from_trusted(idx))
}

/// One key byte from one orbit value: `floor(frac(|v|) * 2^32) mod 256`.
pub fn quantize_key_byte(v: f64) -> u8 {
    let frac = v.abs().fract();
    ((frac * 4_294_967_296.0).floor() as u64 & 0xff) as u8
}

/// 128-bit whitening key from the even state variables (x2, x4, x6) of the
/// first six rows, read row-major; the first 16 of the 18 bytes are kept.
pub fn derive_whitening_key(orbit: &ChaoticOrbit) -> Result<[u8; WHITENING_KEY_LEN]> {
    if orbit.rows() < WHITENING_ROWS {
        return Err(Error::OrbitTooShort {
            rows: orbit.rows(),
            needed: WHITENING_ROWS,
        });
    }
    let mut key = [0u8; WHITENING_KEY_LEN];
    let bytes = orbit.rows[..WHITENING_ROWS]
        .iter()
        .flat_map(|row| [row[1], row[3], row[5]])
        .map(quantize_key_byte);
    for (slot, b) in key.iter_mut().zip(bytes) {
        *slot = b;
    }
    Ok(key)
}
