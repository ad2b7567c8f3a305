use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Sign;
use crate::error::{Error, Result};
use crate::forms::cubic::alpha_signed_bits;
use crate::forms::TwistingMap;
use crate::z2lin::{guard, BitMatrix, GroupIndex, InvertibleMatrices, Signature, MAX_ENUM_DIM};

/// A graded isomorphism `O_dst -> O_src`, `u_x -> c(x) u_{Ax}`.
///
/// The matrix transports the generating functions:
/// `alpha_src(A x) = alpha_dst(x)` for every `x`. Column `j` of `A` is the
/// degree of the image of the `j`-th generator of the destination.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoWitness {
    src: Signature,
    dst: Signature,
    matrix: BitMatrix,
    signs: Option<Vec<Sign>>,
}

/// Serialized form of a witness.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WitnessJson {
    pub n: usize,
    pub src: [usize; 2],
    pub dst: [usize; 2],
    pub matrix: Vec<String>,
    pub verified: bool,
    pub signs_checked: bool,
}

impl IsoWitness {
    /// An unverified candidate; fails only on shape errors.
    pub fn new(src: Signature, dst: Signature, matrix: BitMatrix) -> Result<Self> {
        if src.n() != dst.n() {
            return Err(Error::UnequalDimensions { src, dst });
        }
        if src.n() < 3 {
            return Err(Error::SignatureTooSmall(src));
        }
        if matrix.dim() != src.n() {
            return Err(Error::DimensionMismatch {
                expected: src.n(),
                found: matrix.dim(),
            });
        }
        Ok(IsoWitness {
            src,
            dst,
            matrix,
            signs: None,
        })
    }

    /// The identity witness `(p,q) -> (p,q)`.
    pub fn identity(sig: Signature) -> Result<Self> {
        IsoWitness::new(sig, sig, BitMatrix::identity(sig.n()))
    }

    pub fn dim(&self) -> usize {
        self.src.n()
    }

    pub fn src(&self) -> Signature {
        self.src
    }

    pub fn dst(&self) -> Signature {
        self.dst
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// `c(x)` indexed by the mask of `x`, when a sign map has been attached.
    pub fn signs(&self) -> Option<&[Sign]> {
        self.signs.as_deref()
    }

    /// Whether `A` is invertible and transports `alpha_src` to `alpha_dst`.
    pub fn verify(&self) -> bool {
        self.matrix.is_invertible()
            && (0..1u32 << self.dim()).all(|x| {
                alpha_signed_bits(self.src, self.matrix.apply_bits(x))
                    == alpha_signed_bits(self.dst, x)
            })
    }

    /// `self` followed by `next`: `src -> next.dst` with matrix `A_self A_next`.
    pub fn compose(&self, next: &IsoWitness) -> Result<IsoWitness> {
        if self.dst != next.src {
            return Err(Error::InvalidWitness {
                src: self.dst,
                dst: next.src,
            });
        }
        IsoWitness::new(self.src, next.dst, self.matrix.mul(&next.matrix)?)
    }

    /// The witness `dst -> src`.
    pub fn inverse(&self) -> Result<IsoWitness> {
        let inv = self.matrix.inverse().ok_or(Error::InvalidWitness {
            src: self.src,
            dst: self.dst,
        })?;
        IsoWitness::new(self.dst, self.src, inv)
    }

    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            n: self.dim(),
            src: [self.src.p, self.src.q],
            dst: [self.dst.p, self.dst.q],
            matrix: self.matrix.row_strings(),
            verified: self.verify(),
            signs_checked: self.signs.is_some(),
        }
    }
}

/// Whether the witness is a valid transport of generating functions.
pub fn verify_witness(w: &IsoWitness) -> bool {
    w.verify()
}

/// Searches `GL(n,2)` for `A` with `alpha_src(A x) = alpha_dst(x)`.
///
/// Generator images are placed one at a time in increasing mask order; a
/// partial assignment is abandoned as soon as a subset sum containing the
/// newest image disagrees with its preimage in `alpha` or in the number of
/// `y` with `alpha(y) = alpha(v + y) = 1`, a quantity every transporting
/// bijection preserves. Work is split over the first image and the lowest
/// witness is returned, so the result is deterministic.
pub fn find_graded_iso(src: Signature, dst: Signature) -> Result<Option<IsoWitness>> {
    let n = src.n();
    if n != dst.n() {
        return Err(Error::UnequalDimensions { src, dst });
    }
    if n < 3 {
        return Err(Error::SignatureTooSmall(src));
    }
    guard("find_graded_iso", n, MAX_ENUM_DIM)?;
    let alpha_src = point_profile(src);
    let alpha_dst = point_profile(dst);

    let transported = |images: &[GroupIndex]| {
        let k = images.len() - 1;
        let newest = images[k].bits();
        let mut sum = newest;
        let mut mask = 1u32 << k;
        if alpha_src[sum as usize] != alpha_dst[mask as usize] {
            return false;
        }
        for t in 1..1u32 << k {
            let j = t.trailing_zeros();
            sum ^= images[j as usize].bits();
            mask ^= 1 << j;
            if alpha_src[sum as usize] != alpha_dst[mask as usize] {
                return false;
            }
        }
        true
    };

    let found = (1..1u32 << n)
        .into_par_iter()
        .filter(|&g| alpha_src[g as usize] == alpha_dst[1])
        .find_map_first(|g| {
            let first = GroupIndex::from_bits(n, g);
            InvertibleMatrices::with_first_row(n, first, transported)
                .expect("dimension already checked")
                .next()
        });
    match found {
        None => Ok(None),
        Some(images) => {
            let w = IsoWitness::new(src, dst, images.transpose())?;
            debug_assert!(w.verify());
            Ok(Some(w))
        }
    }
}

/// `2 #{y : alpha(y) = alpha(v + y) = 1} + alpha(v)` for every `v`.
fn point_profile(sig: Signature) -> Vec<u32> {
    let size = 1u32 << sig.n();
    let alpha: Vec<bool> = (0..size).map(|x| alpha_signed_bits(sig, x)).collect();
    let odd: Vec<u32> = (0..size).filter(|&y| alpha[y as usize]).collect();
    (0..size)
        .map(|v| {
            let both = odd.iter().filter(|&&y| alpha[(v ^ y) as usize]).count() as u32;
            2 * both + alpha[v as usize] as u32
        })
        .collect()
}

/// Sign of the right-nested product `u_{g_1} (u_{g_2} ( ... u_{g_l}))`
/// relative to `u_{g_1 + ... + g_l}`.
fn nested_sign(f: &TwistingMap, gens: &[u32]) -> bool {
    let mut acc = 0u32;
    let mut sign = false;
    for &g in gens.iter().rev() {
        sign ^= f.eval_bits(g, acc);
        acc ^= g;
    }
    sign
}

/// Attaches the scalars `c(x)` that turn the degree map into an algebra
/// isomorphism `u_x -> c(x) u_{Ax}` with `c(e_i) = +1`, and checks
/// `c(x) c(y) (-1)^{f_src(Ax, Ay)} = c(x+y) (-1)^{f_dst(x, y)}` on all pairs.
pub fn sign_map(w: &IsoWitness) -> Result<IsoWitness> {
    let n = w.dim();
    guard("sign_map", n, 6)?;
    if !w.verify() {
        return Err(Error::InvalidWitness {
            src: w.src,
            dst: w.dst,
        });
    }
    let f_src = TwistingMap::oseries(w.src)?;
    let f_dst = TwistingMap::oseries(w.dst)?;
    let images: Vec<u32> = w.matrix.columns().iter().map(|g| g.bits()).collect();
    let size = 1u32 << n;

    let c: Vec<bool> = (0..size)
        .map(|x| {
            let units: Vec<u32> = (0..n).filter(|i| x >> i & 1 == 1).map(|i| 1 << i).collect();
            let mapped: Vec<u32> = (0..n)
                .filter(|i| x >> i & 1 == 1)
                .map(|i| images[i])
                .collect();
            nested_sign(&f_dst, &units) ^ nested_sign(&f_src, &mapped)
        })
        .collect();

    for x in 0..size {
        for y in 0..size {
            let lhs = c[x as usize]
                ^ c[y as usize]
                ^ f_src.eval_bits(w.matrix.apply_bits(x), w.matrix.apply_bits(y));
            let rhs = c[(x ^ y) as usize] ^ f_dst.eval_bits(x, y);
            if lhs != rhs {
                return Err(Error::HomomorphismViolation { x, y });
            }
        }
    }
    let mut out = w.clone();
    out.signs = Some(c.into_iter().map(Sign::from_parity).collect());
    Ok(out)
}
