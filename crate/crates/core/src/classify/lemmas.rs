//! Explicit changes of generators that identify different signatures.
//!
//! Each lemma is a list of generator degrees written in "arranged"
//! coordinates, where the positive generators may sit anywhere. An
//! arrangement chooses which arranged positions carry the positive
//! generators of the source; relabelling gives degrees in standard
//! coordinates, and sorting the new generators by the sign of their squares
//! gives the witness matrix.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::classify::witness::IsoWitness;
use crate::forms::cubic::{alpha_standard_bits, beta_from, phi_from};
use crate::z2lin::{low_mask, parity, BitMatrix, GroupIndex, Signature};

/// The catalogued constructions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum LemmaId {
    /// `O_{3,0} -> O_{2,1}` by a coordinate change.
    N3Coords,
    /// `O_{2,1} -> O_{1,2}` through the Clifford generators.
    N3Clifford,
    /// `O_{4,0} -> O_{2,2}` with `e1+e4, e2+e4, e3, e4`.
    N4Pairs,
    /// `O_{1,3} <-> O_{3,1}` with the four weight-3 vectors.
    N4Triples,
    /// `n = 4k`, `p, q` even, `p >= 2`, `q >= 6`: `(p+4, q-4)` by blocks of four.
    BlocksEven,
    /// `n = 4k`, `p, q` odd, `q >= 3`: `(p+2, q-2)` by blocks of four.
    BlocksOdd,
    /// `n = 4k+1`, `p >= 5`, `q >= 1`: `(p-4, q+4)` with the maximal-weight element.
    MaxWeightShift4,
    /// `n = 4k+1`, `p` even, `p >= 2`, `q >= 2`: `(p+1, q-1)` with the maximal-weight element.
    MaxWeightShift1,
    /// `n = 4k+2`, `p, q` odd, `q >= 5`: `(p+4, q-4)` using `w2`.
    W2Odd,
    /// `n = 4k+2`, `p, q` even, `p >= 4`, `q >= 2`: `(p-2, q+2)` using `w2`.
    W2Even,
    /// `n = 4k+3 >= 7`, `p >= 5`, `q >= 1`: `(p-4, q+4)` using `w1, w2, w3`.
    W123Shift4,
    /// `n = 4k+3 >= 7`, `p` even, `p >= 2`, `q >= 1`: `(p-1, q+1)` using `w1, w2, w3`.
    W123Shift1,
    /// `n = 4k+3`, `p` even, `p >= 2`, `q >= 1`: `(p-1, q+1)` with `v'_1 = v_1 ... v_{n-1}`.
    CliffordRemark,
}

impl LemmaId {
    pub const ALL: [LemmaId; 13] = [
        LemmaId::N3Coords,
        LemmaId::N3Clifford,
        LemmaId::N4Pairs,
        LemmaId::N4Triples,
        LemmaId::BlocksEven,
        LemmaId::BlocksOdd,
        LemmaId::MaxWeightShift4,
        LemmaId::MaxWeightShift1,
        LemmaId::W2Odd,
        LemmaId::W2Even,
        LemmaId::W123Shift4,
        LemmaId::W123Shift1,
        LemmaId::CliffordRemark,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::N3Coords => "n3-coords",
            LemmaId::N3Clifford => "n3-clifford",
            LemmaId::N4Pairs => "n4-pairs",
            LemmaId::N4Triples => "n4-triples",
            LemmaId::BlocksEven => "blocks-even",
            LemmaId::BlocksOdd => "blocks-odd",
            LemmaId::MaxWeightShift4 => "maxweight-shift4",
            LemmaId::MaxWeightShift1 => "maxweight-shift1",
            LemmaId::W2Odd => "w2-odd",
            LemmaId::W2Even => "w2-even",
            LemmaId::W123Shift4 => "w123-shift4",
            LemmaId::W123Shift1 => "w123-shift1",
            LemmaId::CliffordRemark => "clifford-remark",
        }
    }

    /// The destination signature, or `None` outside the stated hypotheses.
    pub fn target(self, sig: Signature) -> Option<Signature> {
        let (p, q, n) = (sig.p, sig.q, sig.n());
        let even = p % 2 == 0 && q % 2 == 0;
        let odd = p % 2 == 1 && q % 2 == 1;
        let to = |p, q| Some(Signature::new(p, q));
        match self {
            LemmaId::N3Coords if (p, q) == (3, 0) => to(2, 1),
            LemmaId::N3Clifford if (p, q) == (2, 1) => to(1, 2),
            LemmaId::N4Pairs if (p, q) == (4, 0) => to(2, 2),
            LemmaId::N4Triples if (p, q) == (1, 3) || (p, q) == (3, 1) => to(q, p),
            LemmaId::BlocksEven if n % 4 == 0 && even && p >= 2 && q >= 6 => to(p + 4, q - 4),
            LemmaId::BlocksOdd if n % 4 == 0 && odd && q >= 3 => to(p + 2, q - 2),
            LemmaId::MaxWeightShift4 if n % 4 == 1 && p >= 5 && q >= 1 => to(p - 4, q + 4),
            LemmaId::MaxWeightShift1 if n % 4 == 1 && p % 2 == 0 && p >= 2 && q >= 2 => {
                to(p + 1, q - 1)
            }
            LemmaId::W2Odd if n % 4 == 2 && odd && q >= 5 => to(p + 4, q - 4),
            LemmaId::W2Even if n % 4 == 2 && even && p >= 4 && q >= 2 => to(p - 2, q + 2),
            LemmaId::W123Shift4 if n % 4 == 3 && n >= 7 && p >= 5 && q >= 1 => to(p - 4, q + 4),
            LemmaId::W123Shift1 if n % 4 == 3 && n >= 7 && p % 2 == 0 && p >= 2 && q >= 1 => {
                to(p - 1, q + 1)
            }
            LemmaId::CliffordRemark if n % 4 == 3 && p % 2 == 0 && p >= 2 && q >= 1 => {
                to(p - 1, q + 1)
            }
            _ => None,
        }
    }

    /// Degrees of the new generators in arranged coordinates.
    pub fn images(self, n: usize) -> Vec<GroupIndex> {
        let bits = match self {
            LemmaId::N3Coords => vec![0b111, 0b100, 0b110],
            LemmaId::N3Clifford => vec![0b111, 0b010, 0b100],
            LemmaId::N4Pairs => vec![0b1001, 0b1010, 0b0100, 0b1000],
            LemmaId::N4Triples | LemmaId::BlocksEven | LemmaId::BlocksOdd => blocks(n),
            LemmaId::MaxWeightShift4 | LemmaId::MaxWeightShift1 => {
                let mut v = blocks(n - 1);
                v.push(low_mask(n));
                v
            }
            LemmaId::W2Odd | LemmaId::W2Even => {
                let w2 = w2(n);
                (0..n).map(|i| if i < 4 { 1 << i ^ w2 } else { 1 << i }).collect()
            }
            LemmaId::W123Shift4 | LemmaId::W123Shift1 => w123(n),
            LemmaId::CliffordRemark => {
                let mut v = vec![low_mask(n)];
                v.extend((1..n).map(|i| 1u32 << i));
                v
            }
        };
        bits.into_iter().map(|b| GroupIndex::from_bits(n, b)).collect()
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown lemma {s:?}")))
    }
}

/// For each block of four coordinates, the sums of three of its units.
fn blocks(n: usize) -> Vec<u32> {
    (0..n / 4)
        .flat_map(|b| {
            let block = 0b1111u32 << (4 * b);
            (0..4).map(move |j| block ^ 1 << (4 * b + j))
        })
        .collect()
}

/// `w2 = (0,0,0,0,1,...,1)`.
fn w2(n: usize) -> u32 {
    low_mask(n) & !0b1111
}

/// `e_i + w3` for `i <= 4`, `e_i` up to `n-2`, then `w1 + w2` and `w2`, with
/// `w3 = (0,0,0,0,1,...,1,0)`.
///
/// The last-but-one degree differs from the printed `w1 = (1,...,1,0)`: that
/// element has weight `n-1 = 2 mod 4` and associates with every other new
/// generator, so it cannot complete the system; `w1 + w2` does.
fn w123(n: usize) -> Vec<u32> {
    let w2 = w2(n);
    let w3 = w2 & !(1 << (n - 1));
    let w1 = low_mask(n - 1);
    let mut v: Vec<u32> = (0..n - 2)
        .map(|i| if i < 4 { 1 << i ^ w3 } else { 1 << i })
        .collect();
    v.push(w1 ^ w2);
    v.push(w2);
    v
}

/// Whether the degrees anticommute and antiassociate pairwise; this depends
/// only on `alpha_n`, never on the signature.
fn valid_system(images: &[u32]) -> bool {
    let a = alpha_standard_bits;
    let n = images.len();
    (0..n).all(|i| (i + 1..n).all(|j| beta_from(a, images[i], images[j])))
        && (0..n).all(|i| {
            (i + 1..n).all(|j| (j + 1..n).all(|k| phi_from(a, images[i], images[j], images[k])))
        })
}

/// `k`-subsets of `0..n` as masks, in lexicographic order of index tuples.
fn combinations(n: usize, k: usize) -> Vec<u32> {
    fn go(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - k {
            go(i + 1, n, k - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    go(0, n, k, 0, &mut out);
    out
}

/// Applies one arrangement: `positive` marks the arranged positions of the
/// positive source generators.
fn arranged_witness(src: Signature, images: &[u32], positive: u32) -> Result<IsoWitness> {
    let n = src.n();
    let mut relabel = vec![0usize; n];
    let (mut pos, mut neg) = (0, src.p);
    for (i, slot) in relabel.iter_mut().enumerate() {
        if positive >> i & 1 == 1 {
            *slot = pos;
            pos += 1;
        } else {
            *slot = neg;
            neg += 1;
        }
    }
    let standard = |g: u32| {
        (0..n)
            .filter(|&i| g >> i & 1 == 1)
            .fold(0u32, |acc, i| acc | 1 << relabel[i])
    };
    let squares_minus = |g: u32| alpha_standard_bits(g) ^ parity(g & positive);
    let columns: Vec<GroupIndex> = images
        .iter()
        .filter(|&&g| !squares_minus(g))
        .chain(images.iter().filter(|&&g| squares_minus(g)))
        .map(|&g| GroupIndex::from_bits(n, standard(g)))
        .collect();
    let q = images.iter().filter(|&&g| squares_minus(g)).count();
    IsoWitness::new(src, Signature::new(n - q, q), BitMatrix::from_columns(&columns)?)
}

/// A catalogue witness and the number of lemma applications composed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LemmaWitness {
    pub lemma: LemmaId,
    pub witness: IsoWitness,
    pub steps: usize,
}

/// The witness asserted by `lemma` for `sig`.
///
/// Arrangements are tried in lexicographic order from the standard one; when
/// no single application lands on the destination, two applications of the
/// same construction are composed.
pub fn lemma_witness(lemma: LemmaId, sig: Signature) -> Result<LemmaWitness> {
    let target = lemma.target(sig).ok_or(Error::HypothesesNotMet {
        lemma: lemma.name(),
        signature: sig,
    })?;
    let n = sig.n();
    let images: Vec<u32> = lemma.images(n).iter().map(|g| g.bits()).collect();
    let unreachable = Error::LemmaUnreachable {
        lemma: lemma.name(),
        signature: sig,
        target,
    };
    if !valid_system(&images) {
        return Err(unreachable);
    }
    let found = |witness: IsoWitness, steps| {
        debug_assert!(witness.verify());
        Ok(LemmaWitness {
            lemma,
            witness,
            steps,
        })
    };
    for positive in combinations(n, sig.p) {
        let w = arranged_witness(sig, &images, positive)?;
        if w.dst() == target {
            return found(w, 1);
        }
    }
    for first in combinations(n, sig.p) {
        let w1 = arranged_witness(sig, &images, first)?;
        for second in combinations(n, w1.dst().p) {
            let w2 = arranged_witness(w1.dst(), &images, second)?;
            if w2.dst() == target {
                return found(w1.compose(&w2)?, 2);
            }
        }
    }
    Err(unreachable)
}

/// Every catalogue witness whose hypotheses hold for some signature of
/// dimension `n`.
pub fn catalog(n: usize) -> Result<Vec<LemmaWitness>> {
    let mut out = Vec::new();
    for lemma in LemmaId::ALL {
        for sig in Signature::all_with_n(n) {
            if lemma.target(sig).is_some() {
                out.push(lemma_witness(lemma, sig)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q)
    }

    #[test]
    fn n3_matrix_matches_coordinate_change() {
        let w = lemma_witness(LemmaId::N3Coords, sig(3, 0)).unwrap();
        assert_eq!(w.witness.matrix().row_strings(), ["100", "101", "111"]);
        assert_eq!(w.witness.dst(), sig(2, 1));
        assert_eq!(w.steps, 1);
    }

    #[test]
    fn n4_triples_swaps() {
        let w = lemma_witness(LemmaId::N4Triples, sig(1, 3)).unwrap();
        assert_eq!(w.witness.dst(), sig(3, 1));
        assert!(w.witness.verify());
    }

    #[test]
    fn max_weight_appends_all_ones() {
        let images = LemmaId::MaxWeightShift4.images(5);
        let shown: Vec<String> = images.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["01110", "10110", "11010", "11100", "11111"]);
        assert!(lemma_witness(LemmaId::MaxWeightShift4, sig(5, 0)).is_err());
        let w = lemma_witness(LemmaId::MaxWeightShift1, sig(2, 3)).unwrap();
        assert_eq!(w.witness.dst(), sig(3, 2));
        assert!(w.witness.verify());
    }

    #[test]
    fn w2_at_4_2() {
        let images = LemmaId::W2Even.images(6);
        let shown: Vec<String> = images.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["100011", "010011", "001011", "000111", "000010", "000001"]);
        let w = lemma_witness(LemmaId::W2Even, sig(4, 2)).unwrap();
        assert_eq!(w.witness.dst(), sig(2, 4));
    }

    #[test]
    fn printed_w1_is_not_a_generator_system() {
        for n in [7, 11] {
            let mut images = w123(n);
            images[n - 2] = low_mask(n - 1);
            assert!(!valid_system(&images));
            assert!(valid_system(&w123(n)));
        }
    }

    #[test]
    fn hypotheses_enforced() {
        assert!(matches!(
            lemma_witness(LemmaId::BlocksEven, sig(4, 4)),
            Err(Error::HypothesesNotMet { .. })
        ));
        assert!(lemma_witness(LemmaId::N3Coords, sig(2, 1)).is_err());
    }

    #[test]
    fn two_step_cases() {
        let w = lemma_witness(LemmaId::MaxWeightShift4, sig(5, 4)).unwrap();
        assert_eq!((w.witness.dst(), w.steps), (sig(1, 8), 2));
        let w = lemma_witness(LemmaId::MaxWeightShift4, sig(8, 1)).unwrap();
        assert_eq!((w.witness.dst(), w.steps), (sig(4, 5), 2));
    }

    #[test]
    fn names_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(id.name().parse::<LemmaId>().unwrap(), id);
        }
        assert!("bogus".parse::<LemmaId>().is_err());
    }
}
