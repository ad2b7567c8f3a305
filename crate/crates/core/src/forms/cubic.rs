use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::forms::twisting::{TwistMonomial, TwistingMap};
use crate::z2lin::{check_dim, guard, low_mask, parity, GroupIndex, Signature};

/// A polynomial of degree at most 3 without constant term on Z2^n.
///
/// Monomials are stored as coordinate masks (`0b101` is `x1*x3`), which makes
/// the set normalized by construction: factor order and repeated factors
/// (`x_i^2 = x_i` on Z2) disappear, and a repeated monomial is kept once.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CubicForm {
    n: usize,
    monomials: BTreeSet<u32>,
}

impl CubicForm {
    /// The zero form.
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(CubicForm {
            n,
            monomials: BTreeSet::new(),
        })
    }

    /// Builds a form from monomials given as 1-based index lists.
    pub fn from_monomials<I, M>(n: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = M>,
        M: AsRef<[usize]>,
    {
        let mut form = CubicForm::zero(n)?;
        for m in monomials {
            let mut mask = 0u32;
            for &i in m.as_ref() {
                if !(1..=n).contains(&i) {
                    return Err(Error::Parse(format!("variable x{i} out of range 1..={n}")));
                }
                mask |= 1 << (i - 1);
            }
            form.insert_mask(mask)?;
        }
        Ok(form)
    }

    fn insert_mask(&mut self, mask: u32) -> Result<()> {
        match mask.count_ones() {
            0 => Err(Error::Parse("constant terms are not allowed (alpha(0) = 0)".into())),
            1..=3 => {
                self.monomials.insert(mask);
                Ok(())
            }
            d => Err(Error::Parse(format!("monomial of degree {d} exceeds 3"))),
        }
    }

    /// `alpha_n`: every monomial of degree 1, 2 and 3.
    pub fn alpha_n(n: usize) -> Result<Self> {
        check_dim(n)?;
        let monomials = (1..=low_mask(n)).filter(|m| m.count_ones() <= 3).collect();
        Ok(CubicForm { n, monomials })
    }

    /// `alpha_{p,q} = alpha_n + sum_{i<=p} x_i`; the linear terms `x_1..x_p` cancel.
    pub fn alpha_pq(sig: Signature) -> Result<Self> {
        if sig.n() < 3 {
            return Err(Error::SignatureTooSmall(sig));
        }
        let mut form = CubicForm::alpha_n(sig.n())?;
        for i in 0..sig.p {
            form.monomials.remove(&(1 << i));
        }
        Ok(form)
    }

    /// `f_{Cl_{p,q}}(x, x) = sum_{i<j} x_i x_j + sum_{i>p} x_i`.
    pub fn clifford(sig: Signature) -> Result<Self> {
        let n = sig.n();
        check_dim(n)?;
        let monomials = (1..=low_mask(n))
            .filter(|&m| match m.count_ones() {
                1 => m & sig.positive_mask() == 0,
                2 => true,
                _ => false,
            })
            .collect();
        Ok(CubicForm { n, monomials })
    }

    /// `sum_{i<j<=n-1} x_i x_j x_n + sum_{i<=j} x_i x_j + sum_{i<=p} x_i`, a
    /// generating function of an algebra isomorphic to `O_{p,q}` when `q > 0`.
    pub fn alternate(sig: Signature) -> Result<Self> {
        let n = sig.n();
        if n < 3 {
            return Err(Error::SignatureTooSmall(sig));
        }
        let last = 1u32 << (n - 1);
        let monomials = (1..=low_mask(n))
            .filter(|&m| match m.count_ones() {
                // sum_{i<=j} x_i x_j contributes x_i (i = j) for every i,
                // and sum_{i<=p} x_i cancels those with i <= p
                1 => m & sig.positive_mask() == 0,
                2 => true,
                3 => m & last != 0,
                _ => false,
            })
            .collect();
        Ok(CubicForm { n, monomials })
    }

    /// Algebraic normal form of `f` (Moebius transform over the subset
    /// lattice); fails if `f(0) = 1` or the degree exceeds 3.
    pub fn from_fn(n: usize, f: impl Fn(GroupIndex) -> bool) -> Result<Self> {
        check_dim(n)?;
        guard("CubicForm::from_fn", n, 20)?;
        let mut coeffs: Vec<bool> = GroupIndex::all(n).map(f).collect();
        for i in 0..n {
            let bit = 1usize << i;
            for m in 0..coeffs.len() {
                if m & bit != 0 {
                    coeffs[m] ^= coeffs[m ^ bit];
                }
            }
        }
        let mut form = CubicForm::zero(n)?;
        for (m, &c) in coeffs.iter().enumerate() {
            if c {
                form.insert_mask(m as u32)?;
            }
        }
        Ok(form)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn monomial_masks(&self) -> impl Iterator<Item = u32> + '_ {
        self.monomials.iter().copied()
    }

    fn of_degree(&self, d: u32) -> Vec<Vec<usize>> {
        self.monomials
            .iter()
            .filter(|m| m.count_ones() == d)
            .map(|&m| GroupIndex::from_bits(self.n, m).support().collect())
            .collect()
    }

    /// Indices `i` of the linear monomials `x_i`.
    pub fn linear(&self) -> Vec<usize> {
        self.of_degree(1).into_iter().map(|v| v[0]).collect()
    }

    /// Pairs `(i, j)`, `i < j`, of the quadratic monomials.
    pub fn quadratic(&self) -> Vec<(usize, usize)> {
        self.of_degree(2).into_iter().map(|v| (v[0], v[1])).collect()
    }

    /// Triples `(i, j, k)`, `i < j < k`, of the cubic monomials.
    pub fn cubic(&self) -> Vec<(usize, usize, usize)> {
        self.of_degree(3)
            .into_iter()
            .map(|v| (v[0], v[1], v[2]))
            .collect()
    }

    #[inline]
    pub fn eval_bits(&self, x: u32) -> bool {
        self.monomials
            .iter()
            .fold(false, |acc, &m| acc ^ (x & m == m))
    }

    /// `alpha(x)`.
    ///
    /// # Panics
    ///
    /// Panics on a dimension mismatch.
    pub fn eval(&self, x: GroupIndex) -> bool {
        assert_eq!(x.dim(), self.n, "cubic form dimension mismatch");
        self.eval_bits(x.bits())
    }

    /// Value table over all of Z2^n.
    pub fn table(&self) -> Vec<bool> {
        (0..=low_mask(self.n)).map(|x| self.eval_bits(x)).collect()
    }

    /// Pointwise equality on Z2^n.
    pub fn pointwise_eq(&self, other: &CubicForm) -> bool {
        self.n == other.n && (0..=low_mask(self.n)).all(|x| self.eval_bits(x) == other.eval_bits(x))
    }

    /// Parses `"x1*x2*x3 + x1*x2 + x1"`; whitespace-insensitive, 1-based.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut monomials = Vec::new();
        if text != "0" {
            for term in text.split('+') {
                if term.is_empty() {
                    return Err(Error::Parse(format!("empty term in {text:?}")));
                }
                let factors = term
                    .split('*')
                    .map(|v| {
                        v.strip_prefix('x')
                            .and_then(|d| d.parse::<usize>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad variable {v:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                monomials.push(factors);
            }
        }
        CubicForm::from_monomials(n, monomials)
    }

    /// Parses a form and infers `n` from the largest variable index.
    pub fn parse_infer(text: &str) -> Result<Self> {
        let n = text
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|d| d.parse::<usize>().ok())
            .max()
            .ok_or_else(|| Error::Parse(format!("no variables in {text:?}")))?;
        CubicForm::parse(n, text)
    }
}

impl fmt::Display for CubicForm {
    /// Cubic monomials first, then quadratic, then linear.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let mut masks: Vec<u32> = self.monomials.iter().copied().collect();
        masks.sort_by_key(|&m| (Reverse(m.count_ones()), Reverse(m.reverse_bits())));
        let terms: Vec<String> = masks
            .iter()
            .map(|&m| {
                GroupIndex::from_bits(self.n, m)
                    .support()
                    .map(|i| format!("x{i}"))
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `alpha_n(x)`: 0 iff the weight of `x` is divisible by 4.
pub fn alpha_standard(n: usize, x: GroupIndex) -> bool {
    assert_eq!(x.dim(), n, "alpha_standard dimension mismatch");
    alpha_standard_bits(x.bits())
}

#[inline]
pub(crate) fn alpha_standard_bits(x: u32) -> bool {
    x.count_ones() % 4 != 0
}

#[inline]
pub(crate) fn alpha_signed_bits(sig: Signature, x: u32) -> bool {
    alpha_standard_bits(x) ^ parity(x & sig.positive_mask())
}

/// `alpha_{p,q}(x) = alpha_n(x) + x_1 + ... + x_p`; requires `n >= 3`.
pub fn alpha_signed(sig: Signature, x: GroupIndex) -> Result<bool> {
    if sig.n() < 3 {
        return Err(Error::SignatureTooSmall(sig));
    }
    if x.dim() != sig.n() {
        return Err(Error::DimensionMismatch {
            expected: sig.n(),
            found: x.dim(),
        });
    }
    Ok(alpha_signed_bits(sig, x.bits()))
}

/// `alpha(x)`.
pub fn cubic_eval(form: &CubicForm, x: GroupIndex) -> bool {
    form.eval(x)
}

#[inline]
pub(crate) fn beta_from(alpha: impl Fn(u32) -> bool, x: u32, y: u32) -> bool {
    alpha(x ^ y) ^ alpha(x) ^ alpha(y)
}

#[inline]
pub(crate) fn phi_from(alpha: impl Fn(u32) -> bool, x: u32, y: u32, z: u32) -> bool {
    alpha(x ^ y ^ z)
        ^ alpha(x ^ y)
        ^ alpha(x ^ z)
        ^ alpha(y ^ z)
        ^ alpha(x)
        ^ alpha(y)
        ^ alpha(z)
}

/// `beta(x, y) = alpha(x + y) + alpha(x) + alpha(y)`.
pub fn beta_of_alpha(form: &CubicForm, x: GroupIndex, y: GroupIndex) -> bool {
    assert!(
        x.dim() == form.dim() && y.dim() == form.dim(),
        "cubic form dimension mismatch"
    );
    beta_from(|v| form.eval_bits(v), x.bits(), y.bits())
}

/// `phi(x, y, z)`, the second polarization of `alpha`.
pub fn phi_of_alpha(form: &CubicForm, x: GroupIndex, y: GroupIndex, z: GroupIndex) -> bool {
    assert!(
        [x, y, z].iter().all(|v| v.dim() == form.dim()),
        "cubic form dimension mismatch"
    );
    phi_from(|v| form.eval_bits(v), x.bits(), y.bits(), z.bits())
}

/// Which condition of the generating-function definition fails first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratingDefect {
    /// `f(x, x) != alpha(x)`
    Square { x: u32 },
    /// `beta_f(x, y)` differs from the polarization of `alpha`
    Commutation { x: u32, y: u32 },
    /// `phi_f(x, y, z)` differs from the second polarization of `alpha`
    Association { x: u32, y: u32, z: u32 },
}

/// Exhaustively checks the three generating-function conditions and returns
/// the first failure in the order squares, commutation, association.
pub fn generating_defect(f: &TwistingMap, form: &CubicForm) -> Result<Option<GeneratingDefect>> {
    let n = form.dim();
    if f.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.dim(),
        });
    }
    guard("is_generating", n, 8)?;
    let alpha = form.table();
    let ft = f.table();
    let size = 1usize << n;
    let fv = |x: usize, y: usize| ft[x << n | y];
    let a = |v: u32| alpha[v as usize];

    for x in 0..size {
        if fv(x, x) != alpha[x] {
            return Ok(Some(GeneratingDefect::Square { x: x as u32 }));
        }
    }
    for x in 0..size {
        for y in 0..size {
            if fv(x, y) ^ fv(y, x) != beta_from(a, x as u32, y as u32) {
                return Ok(Some(GeneratingDefect::Commutation {
                    x: x as u32,
                    y: y as u32,
                }));
            }
        }
    }
    for x in 0..size {
        for y in 0..size {
            let fxy = fv(x, y);
            for z in 0..size {
                let phi_f = fv(y, z) ^ fv(x ^ y, z) ^ fv(x, y ^ z) ^ fxy;
                if phi_f != phi_from(a, x as u32, y as u32, z as u32) {
                    return Ok(Some(GeneratingDefect::Association {
                        x: x as u32,
                        y: y as u32,
                        z: z as u32,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `form` is a generating function for the twisted group algebra of `f`.
pub fn is_generating(f: &TwistingMap, form: &CubicForm) -> Result<bool> {
    Ok(generating_defect(f, form)?.is_none())
}

/// The explicit twisting obtained by the substitution
/// `x_i x_j x_k -> x_i x_j y_k + x_i y_j x_k + y_i x_j x_k`,
/// `x_i x_j -> x_i y_j`, `x_i -> x_i y_i` (indices increasing).
pub fn canonical_twisting(form: &CubicForm) -> TwistingMap {
    let mut terms = Vec::new();
    for m in form.monomial_masks() {
        let idx: Vec<u32> = (0..32).filter(|i| m >> i & 1 == 1).map(|i| 1u32 << i).collect();
        match idx.as_slice() {
            [i] => terms.push(TwistMonomial { x: *i, y: *i }),
            [i, j] => terms.push(TwistMonomial { x: *i, y: *j }),
            [i, j, k] => {
                terms.push(TwistMonomial { x: i | j, y: *k });
                terms.push(TwistMonomial { x: i | k, y: *j });
                terms.push(TwistMonomial { x: j | k, y: *i });
            }
            _ => unreachable!("monomials have degree 1..=3"),
        }
    }
    TwistingMap::explicit(form.dim(), terms).expect("substituted monomials have degree <= 3")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, units: &[usize]) -> GroupIndex {
        GroupIndex::from_units(n, units)
    }

    #[test]
    fn alpha_standard_examples() {
        assert!(!alpha_standard(3, GroupIndex::zero(3)));
        assert!(alpha_standard(3, g(3, &[1, 2, 3])));
        assert!(!alpha_standard(4, g(4, &[1, 2, 3, 4])));
    }

    #[test]
    fn alpha_signed_examples() {
        let s30 = Signature::new(3, 0);
        assert!(alpha_signed(s30, g(3, &[1, 2])).unwrap());
        assert!(!alpha_signed(s30, g(3, &[1, 2, 3])).unwrap());
        for n in 3..7 {
            assert!(!alpha_signed(Signature::new(0, n), GroupIndex::zero(n)).unwrap());
        }
        assert!(alpha_signed(Signature::new(1, 1), GroupIndex::zero(2)).is_err());
    }

    #[test]
    fn cubic_eval_examples() {
        let full = CubicForm::from_monomials(
            3,
            [&[1, 2, 3][..], &[1, 2], &[1, 3], &[2, 3], &[1], &[2], &[3]],
        )
        .unwrap();
        for x in GroupIndex::all(3) {
            assert_eq!(
                cubic_eval(&full, x),
                alpha_signed(Signature::new(0, 3), x).unwrap()
            );
        }
        let empty = CubicForm::zero(3).unwrap();
        assert!(GroupIndex::all(3).all(|x| !cubic_eval(&empty, x)));
        let single = CubicForm::from_monomials(3, [[1, 2, 3]]).unwrap();
        assert!(!cubic_eval(&single, g(3, &[1, 2])));
    }

    #[test]
    fn named_forms_agree_with_closed_expressions() {
        for n in 3..=8 {
            for sig in Signature::all_with_n(n) {
                let form = CubicForm::alpha_pq(sig).unwrap();
                assert!(GroupIndex::all(n).all(|x| form.eval(x) == alpha_signed(sig, x).unwrap()));
            }
        }
    }

    #[test]
    fn polarization_examples() {
        let a03 = CubicForm::alpha_pq(Signature::new(0, 3)).unwrap();
        assert!(beta_of_alpha(&a03, g(3, &[1]), g(3, &[2])));
        for sig in Signature::all_with_n(3) {
            let a = CubicForm::alpha_pq(sig).unwrap();
            assert!(phi_of_alpha(&a, g(3, &[1]), g(3, &[2]), g(3, &[3])));
        }
        for x in GroupIndex::all(3) {
            assert!(!beta_of_alpha(&a03, x, GroupIndex::zero(3)));
        }
    }

    #[test]
    fn parse_and_display() {
        let f = CubicForm::parse(3, " x1*x2*x3 + x1*x2 +x1").unwrap();
        assert_eq!(f.cubic(), vec![(1, 2, 3)]);
        assert_eq!(f.quadratic(), vec![(1, 2)]);
        assert_eq!(f.linear(), vec![1]);
        assert_eq!(f.to_string(), "x1*x2*x3 + x1*x2 + x1");
        assert_eq!(CubicForm::parse(3, "x2*x1 + x1*x2").unwrap().quadratic(), vec![(1, 2)]);
        assert_eq!(CubicForm::parse(2, "x1*x1").unwrap().linear(), vec![1]);
        assert!(CubicForm::parse(4, "x1*x2*x3*x4").is_err());
        assert!(CubicForm::parse(3, "x5").is_err());
        assert!(CubicForm::parse(3, "x1 + + x2").is_err());
        assert_eq!(CubicForm::parse_infer("x1*x4").unwrap().dim(), 4);
    }

    #[test]
    fn moebius_recovers_forms() {
        for sig in Signature::all_with_n(5) {
            let a = CubicForm::alpha_pq(sig).unwrap();
            let back = CubicForm::from_fn(5, |x| a.eval(x)).unwrap();
            assert_eq!(back, a);
        }
        assert!(CubicForm::from_fn(4, |x| x.bits() == 0b1111).is_err());
        assert!(CubicForm::from_fn(3, |_| true).is_err());
    }

    #[test]
    fn generating_examples() {
        let f = TwistingMap::oseries(Signature::new(0, 3)).unwrap();
        let wrong = CubicForm::alpha_pq(Signature::new(3, 0)).unwrap();
        assert_eq!(
            generating_defect(&f, &wrong).unwrap(),
            Some(GeneratingDefect::Square { x: 0b001 })
        );
        let big = CubicForm::alpha_n(9).unwrap();
        let fb = TwistingMap::oseries(Signature::new(0, 9)).unwrap();
        assert!(matches!(is_generating(&fb, &big), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn canonical_twisting_examples() {
        let x1 = CubicForm::from_monomials(2, [[1]]).unwrap();
        let t = canonical_twisting(&x1);
        assert_eq!(t.to_string(), "x1*y1");
        let zero = canonical_twisting(&CubicForm::zero(3).unwrap());
        assert!(GroupIndex::all(3).all(|x| GroupIndex::all(3).all(|y| !zero.eval(x, y))));
    }
}
