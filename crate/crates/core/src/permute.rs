//! Sort-based pixel permutation and its inverse.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Cipher variant. The baseline permutes and diffuses only; the hardened
/// variant adds round offsets, incremented diffusion, whitening and an S-box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Ieahf,
    Gh401,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Ieahf => "IEAHF",
            Scheme::Gh401 => "GH401",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "IEAHF" => Ok(Scheme::Ieahf),
            "GH401" => Ok(Scheme::Gh401),
            _ => Err(Error::UnknownScheme(s.to_string())),
        }
    }
}

/// A bijection on `0..len`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationVector(Vec<usize>);

impl PermutationVector {
    /// Validates that every index in `0..len` appears exactly once.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; indices.len()];
        for &i in &indices {
            if i >= seen.len() || seen[i] {
                return Err(Error::NotAPermutation(i));
            }
            seen[i] = true;
        }
        Ok(Self(indices))
    }

    pub(crate) fn from_trusted(indices: Vec<usize>) -> Self {
        debug_assert!(Self::new(indices.clone()).is_ok());
        Self(indices)
    }

    pub fn identity(len: usize) -> Self {
        Self((0..len).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

fn check_len(p: &[u8], s: &PermutationVector) -> Result<()> {
    if p.len() != s.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: s.len(),
        });
    }
    Ok(())
}

/// `R[i] = P[S[i]]`.
pub fn permute_ieahf(p: &[u8], s: &PermutationVector) -> Result<Vec<u8>> {
    check_len(p, s)?;
    Ok(s.0.iter().map(|&i| p[i]).collect())
}

/// `R[i] = (P[S[i]] + round) mod 256`, rounds counted from 1.
pub fn permute_gh401(p: &[u8], s: &PermutationVector, round: usize) -> Result<Vec<u8>> {
    check_len(p, s)?;
    let offset = (round % 256) as u8;
    Ok(s.0.iter().map(|&i| p[i].wrapping_add(offset)).collect())
}

/// Left inverse of [`permute_ieahf`] / [`permute_gh401`]. `round` is ignored
/// for the baseline scheme.
pub fn invert_permute(
    r: &[u8],
    s: &PermutationVector,
    round: usize,
    scheme: Scheme,
) -> Result<Vec<u8>> {
    check_len(r, s)?;
    let offset = match scheme {
        Scheme::Ieahf => 0,
        Scheme::Gh401 => (round % 256) as u8,
    };
    let mut p = vec![0u8; r.len()];
    for (&v, &i) in r.iter().zip(&s.0) {
        p[i] = v.wrapping_sub(offset);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(v: &[usize]) -> PermutationVector {
        PermutationVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn baseline_examples() {
        let s = perm(&[2, 0, 1]);
        assert_eq!(permute_ieahf(&[10, 20, 30], &s).unwrap(), vec![30, 10, 20]);
        let p = [9u8, 8, 7, 6];
        assert_eq!(
            permute_ieahf(&p, &PermutationVector::identity(4)).unwrap(),
            p
        );
        let white = vec![255u8; 5];
        assert_eq!(
            permute_ieahf(&white, &perm(&[4, 2, 0, 1, 3])).unwrap(),
            white
        );
    }

    #[test]
    fn round_offset_examples() {
        let s = perm(&[2, 0, 1]);
        assert_eq!(permute_gh401(&[0, 0, 0], &s, 1).unwrap(), vec![1, 1, 1]);
        assert_eq!(
            permute_gh401(&[255, 3, 3], &perm(&[0, 1, 2]), 1).unwrap()[0],
            0
        );
        assert_eq!(
            permute_gh401(&[10, 20, 30], &s, 2).unwrap(),
            vec![32, 12, 22]
        );
    }

    #[test]
    fn inverse_examples() {
        let id = PermutationVector::identity(3);
        assert_eq!(
            invert_permute(&[5, 6, 7], &id, 1, Scheme::Ieahf).unwrap(),
            vec![5, 6, 7]
        );
        let s = perm(&[1, 2, 0]);
        let fwd = permute_gh401(&[1, 1, 1], &s, 1).unwrap();
        assert_eq!(
            invert_permute(&fwd, &s, 1, Scheme::Gh401).unwrap(),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let s = PermutationVector::identity(3);
        assert!(matches!(
            permute_ieahf(&[1, 2], &s),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
        assert!(permute_gh401(&[1, 2], &s, 1).is_err());
        assert!(invert_permute(&[1, 2], &s, 1, Scheme::Gh401).is_err());
    }

    #[test]
    fn permutation_vector_validation() {
        assert!(PermutationVector::new(vec![0, 0, 1]).is_err());
        assert!(PermutationVector::new(vec![0, 3, 1]).is_err());
        assert!(PermutationVector::new(vec![]).is_ok());
    }

    fn histogram(p: &[u8]) -> [usize; 256] {
        let mut h = [0; 256];
        for &v in p {
            h[v as usize] += 1;
        }
        h
    }

    fn arb_instance() -> impl Strategy<Value = (Vec<u8>, PermutationVector)> {
        (1usize..200).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<u8>(), n),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
                .prop_map(|(p, s)| (p, PermutationVector::new(s).unwrap()))
        })
    }

    proptest! {
        #[test]
        fn forward_then_inverse_is_identity((p, s) in arb_instance(), round in 1usize..600) {
            let r = permute_ieahf(&p, &s).unwrap();
            prop_assert_eq!(invert_permute(&r, &s, round, Scheme::Ieahf).unwrap(), p.clone());
            let r = permute_gh401(&p, &s, round).unwrap();
            prop_assert_eq!(invert_permute(&r, &s, round, Scheme::Gh401).unwrap(), p);
        }

        #[test]
        fn baseline_preserves_histogram((p, s) in arb_instance()) {
            let r = permute_ieahf(&p, &s).unwrap();
            prop_assert_eq!(histogram(&r), histogram(&p));
        }

        #[test]
        fn round_offset_rotates_histogram((p, s) in arb_instance(), round in 1usize..600) {
            let hin = histogram(&p);
            let hout = histogram(&permute_gh401(&p, &s, round).unwrap());
            for v in 0..256 {
                prop_assert_eq!(hout[(v + round) % 256], hin[v]);
            }
        }
    }
}
