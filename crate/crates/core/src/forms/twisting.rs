use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::z2lin::{check_dim, parity, GroupIndex, Signature};

/// A monomial `prod_{i in x} x_i * prod_{j in y} y_j` of a twisting polynomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TwistMonomial {
    pub x: u32,
    pub y: u32,
}

impl TwistMonomial {
    #[inline]
    fn eval(self, x: u32, y: u32) -> bool {
        x & self.x == self.x && y & self.y == self.y
    }

    fn degree(self) -> u32 {
        self.x.count_ones() + self.y.count_ones()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Clifford(Signature),
    OSeries(Signature),
    Explicit(BTreeSet<TwistMonomial>),
    Table(Vec<bool>),
}

/// A twisting function `f : Z2^n x Z2^n -> Z2`.
///
/// Twistings are compared by evaluation (see [`TwistingMap::pointwise_eq`]);
/// the derived `PartialEq` only compares presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingMap {
    n: usize,
    kind: Kind,
}

/// Bit `j` of the result is `x_1 + ... + x_{j+1}`.
#[inline]
fn prefix_parity(x: u32) -> u32 {
    let mut p = x;
    p ^= p << 1;
    p ^= p << 2;
    p ^= p << 4;
    p ^= p << 8;
    p ^= p << 16;
    p
}

/// `sum_{i<=j} x_i y_j + sum_{i<=p} x_i y_i`.
#[inline]
pub(crate) fn clifford_bits(sig: Signature, x: u32, y: u32) -> bool {
    parity(prefix_parity(x) & y) ^ parity(x & y & sig.positive_mask())
}

/// `sum_{i<j<k} (x_i x_j y_k + x_i y_j x_k + y_i x_j x_k)`.
///
/// Grouping by the position `t` carrying the `y` factor, each `t` in `supp y`
/// contributes `C(|x \ {t}|, 2)`, whose parity is bit 1 of `|x \ {t}|`.
#[inline]
pub(crate) fn cubic_bits(x: u32, y: u32) -> bool {
    let w = x.count_ones();
    let inside = (y & x).count_ones() & 1 == 1 && w >= 1 && (w - 1) & 2 != 0;
    let outside = (y & !x).count_ones() & 1 == 1 && w & 2 != 0;
    inside ^ outside
}

#[inline]
pub(crate) fn oseries_bits(sig: Signature, x: u32, y: u32) -> bool {
    cubic_bits(x, y) ^ clifford_bits(sig, x, y)
}

impl TwistingMap {
    /// The bilinear twisting of `Cl_{p,q}`.
    pub fn clifford(sig: Signature) -> Result<Self> {
        check_dim(sig.n())?;
        Ok(TwistingMap {
            n: sig.n(),
            kind: Kind::Clifford(sig),
        })
    }

    /// The twisting of `O_{p,q}`; requires `n >= 3`.
    pub fn oseries(sig: Signature) -> Result<Self> {
        check_dim(sig.n())?;
        if sig.n() < 3 {
            return Err(Error::SignatureTooSmall(sig));
        }
        Ok(TwistingMap {
            n: sig.n(),
            kind: Kind::OSeries(sig),
        })
    }

    /// A polynomial twisting of joint degree at most 3 in the `x` and `y` variables.
    pub fn explicit(n: usize, monomials: impl IntoIterator<Item = TwistMonomial>) -> Result<Self> {
        check_dim(n)?;
        let mut set = BTreeSet::new();
        for m in monomials {
            if m.degree() == 0 || m.degree() > 3 {
                return Err(Error::Parse(format!(
                    "twisting monomial of degree {} (allowed 1..=3)",
                    m.degree()
                )));
            }
            if (m.x | m.y) >> n != 0 {
                return Err(Error::ValueOutOfRange { bits: m.x | m.y, n });
            }
            // coefficients live in Z2: a repeated monomial cancels
            if !set.insert(m) {
                set.remove(&m);
            }
        }
        Ok(TwistingMap {
            n,
            kind: Kind::Explicit(set),
        })
    }

    /// A twisting given by its full value table, indexed by `x << n | y`.
    pub(crate) fn from_table(n: usize, table: Vec<bool>) -> Self {
        debug_assert_eq!(table.len(), 1 << (2 * n));
        TwistingMap {
            n,
            kind: Kind::Table(table),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Monomials of an explicit twisting, `None` for the other presentations.
    pub fn monomials(&self) -> Option<impl Iterator<Item = TwistMonomial> + '_> {
        match &self.kind {
            Kind::Explicit(set) => Some(set.iter().copied()),
            _ => None,
        }
    }

    /// `f(x, y)` on raw masks.
    #[inline]
    pub fn eval_bits(&self, x: u32, y: u32) -> bool {
        match &self.kind {
            Kind::Clifford(sig) => clifford_bits(*sig, x, y),
            Kind::OSeries(sig) => oseries_bits(*sig, x, y),
            Kind::Explicit(set) => set.iter().fold(false, |acc, m| acc ^ m.eval(x, y)),
            Kind::Table(t) => t[((x as usize) << self.n) | y as usize],
        }
    }

    /// `f(x, y)`.
    ///
    /// # Panics
    ///
    /// Panics if either argument has the wrong dimension.
    pub fn eval(&self, x: GroupIndex, y: GroupIndex) -> bool {
        assert!(
            x.dim() == self.n && y.dim() == self.n,
            "twisting on Z2^{} applied to Z2^{} x Z2^{}",
            self.n,
            x.dim(),
            y.dim()
        );
        self.eval_bits(x.bits(), y.bits())
    }

    /// Full value table indexed by `x << n | y`.
    pub(crate) fn table(&self) -> Vec<bool> {
        let size = 1usize << self.n;
        let mut out = Vec::with_capacity(size * size);
        for x in 0..size as u32 {
            for y in 0..size as u32 {
                out.push(self.eval_bits(x, y));
            }
        }
        out
    }

    /// Whether the two twistings agree on every pair.
    pub fn pointwise_eq(&self, other: &TwistingMap) -> bool {
        if self.n != other.n {
            return false;
        }
        let size = 1u32 << self.n;
        (0..size).all(|x| (0..size).all(|y| self.eval_bits(x, y) == other.eval_bits(x, y)))
    }
}

impl fmt::Display for TwistingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Clifford(sig) => write!(f, "f_Cl{sig}"),
            Kind::OSeries(sig) => write!(f, "f_O{sig}"),
            Kind::Table(_) => write!(f, "<tabulated twisting on Z2^{}>", self.n),
            Kind::Explicit(set) if set.is_empty() => write!(f, "0"),
            Kind::Explicit(set) => {
                let terms: Vec<String> = set.iter().map(|m| monomial_text(*m, self.n)).collect();
                write!(f, "{}", terms.join(" + "))
            }
        }
    }
}

/// Factors listed by index; `x_i` before `y_i` at a shared index.
fn monomial_text(m: TwistMonomial, n: usize) -> String {
    let mut factors = Vec::new();
    for i in 0..n {
        if m.x >> i & 1 == 1 {
            factors.push(format!("x{}", i + 1));
        }
        if m.y >> i & 1 == 1 {
            factors.push(format!("y{}", i + 1));
        }
    }
    factors.join("*")
}

/// `f_{Cl_{p,q}}(x, y)`.
pub fn f_clifford(sig: Signature, x: GroupIndex, y: GroupIndex) -> Result<bool> {
    check_pair(sig.n(), x, y)?;
    Ok(clifford_bits(sig, x.bits(), y.bits()))
}

/// `f_{O_{p,q}}(x, y)`; requires `n >= 3`.
pub fn f_oseries(sig: Signature, x: GroupIndex, y: GroupIndex) -> Result<bool> {
    if sig.n() < 3 {
        return Err(Error::SignatureTooSmall(sig));
    }
    check_pair(sig.n(), x, y)?;
    Ok(oseries_bits(sig, x.bits(), y.bits()))
}

fn check_pair(n: usize, x: GroupIndex, y: GroupIndex) -> Result<()> {
    for d in [x.dim(), y.dim()] {
        if d != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d,
            });
        }
    }
    Ok(())
}

/// Commutation defect `beta(x, y) = f(x, y) + f(y, x)`.
pub fn beta_of_f(f: &TwistingMap, x: GroupIndex, y: GroupIndex) -> bool {
    f.eval(x, y) ^ f.eval(y, x)
}

/// Association defect `phi(x, y, z) = f(y, z) + f(x + y, z) + f(x, y + z) + f(x, y)`.
pub fn phi_of_f(f: &TwistingMap, x: GroupIndex, y: GroupIndex, z: GroupIndex) -> bool {
    f.eval(y, z) ^ f.eval(x + y, z) ^ f.eval(x, y + z) ^ f.eval(x, y)
}

#[inline]
pub(crate) fn phi_bits(f: &TwistingMap, x: u32, y: u32, z: u32) -> bool {
    f.eval_bits(y, z) ^ f.eval_bits(x ^ y, z) ^ f.eval_bits(x, y ^ z) ^ f.eval_bits(x, y)
}

/// The trilinear alternating form with `phi(e_i, e_j, e_k) = 1` for distinct
/// `i, j, k`: the parity of the number of pairwise distinct index triples
/// drawn from the three supports.
pub fn trilinear_phi(x: GroupIndex, y: GroupIndex, z: GroupIndex) -> bool {
    assert!(x.dim() == y.dim() && y.dim() == z.dim());
    trilinear_bits(x.bits(), y.bits(), z.bits())
}

#[inline]
pub(crate) fn trilinear_bits(x: u32, y: u32, z: u32) -> bool {
    let c = |m: u32| m.count_ones();
    // inclusion-exclusion; the +2|x&y&z| term vanishes mod 2
    let distinct = c(x) * c(y) * c(z) + c(x & y) * c(z) + c(x & z) * c(y) + c(y & z) * c(x);
    distinct & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> GroupIndex {
        GroupIndex::unit(n, i)
    }

    #[test]
    fn quaternion_twisting() {
        let h = Signature::new(0, 2);
        assert!(f_clifford(h, e(2, 1), e(2, 2)).unwrap());
        assert!(!f_clifford(h, e(2, 2), e(2, 1)).unwrap());
        for y in GroupIndex::all(2) {
            assert!(!f_clifford(h, GroupIndex::zero(2), y).unwrap());
        }
    }

    #[test]
    fn octonion_twisting_examples() {
        let o = Signature::new(0, 3);
        assert!(f_oseries(o, e(3, 1), e(3, 2)).unwrap());
        let z = GroupIndex::zero(3);
        assert!(!f_oseries(o, z, z).unwrap());
        assert!(matches!(
            f_oseries(Signature::new(1, 1), e(2, 1), e(2, 2)),
            Err(Error::SignatureTooSmall(_))
        ));
        assert!(f_oseries(o, e(3, 1), e(4, 2)).is_err());
    }

    #[test]
    fn defect_examples() {
        let f = TwistingMap::oseries(Signature::new(0, 3)).unwrap();
        assert!(beta_of_f(&f, e(3, 1), e(3, 2)));
        assert!(phi_of_f(&f, e(3, 1), e(3, 2), e(3, 3)));
        let h = TwistingMap::clifford(Signature::new(0, 2)).unwrap();
        assert!(beta_of_f(&h, e(2, 1), e(2, 2)));
    }

    #[test]
    fn trilinear_examples() {
        assert!(trilinear_phi(e(3, 1), e(3, 2), e(3, 3)));
        assert!(!trilinear_phi(e(3, 1), e(3, 1), e(3, 2)));
        assert!(trilinear_phi(e(3, 1) + e(3, 2), e(3, 1), e(3, 3)));
    }

    #[test]
    fn explicit_cancels_repeats_and_rejects_high_degree() {
        let m = TwistMonomial { x: 1, y: 1 };
        let t = TwistingMap::explicit(2, [m, m]).unwrap();
        assert_eq!(t.to_string(), "0");
        let quartic = TwistMonomial { x: 0b11, y: 0b11 };
        assert!(TwistingMap::explicit(2, [quartic]).is_err());
    }

    #[test]
    fn explicit_display() {
        let t = TwistingMap::explicit(
            3,
            [TwistMonomial { x: 0b011, y: 0b100 }, TwistMonomial { x: 0b001, y: 0b001 }],
        )
        .unwrap();
        assert_eq!(t.to_string(), "x1*y1 + x1*x2*y3");
    }
}
