//! Linear algebra over the two-element field.
//!
//! An element `x = (x_1, ..., x_n)` of Z2^n is stored as an `n`-bit mask in
//! which bit `i - 1` holds the coordinate `x_i`. Text literals put `x_1` on
//! the left, so `"101"` is `e1 + e3`; the same element may be written as the
//! unit sum `"e1+e3"`.
//!
//! Matrices act on coordinates: row `i` of a [`BitMatrix`] lists which input
//! coordinates are summed to produce output coordinate `x'_i`. The image of
//! the unit vector `e_j` is therefore column `j`.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 24;

/// Largest dimension accepted by exhaustive enumeration over GL(n, 2).
pub const MAX_ENUM_DIM: usize = 8;

#[inline]
pub(crate) fn parity(bits: u32) -> bool {
    bits.count_ones() & 1 == 1
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange {
            n,
            min: 1,
            max: MAX_DIM,
        })
    }
}

pub(crate) fn guard(operation: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::GuardExceeded { operation, n, max })
    } else {
        Ok(())
    }
}

/// An element of Z2^n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupIndex {
    bits: u32,
    n: u8,
}

impl GroupIndex {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        check_dim(n)?;
        if bits & !low_mask(n) != 0 {
            return Err(Error::ValueOutOfRange { bits, n });
        }
        Ok(GroupIndex { bits, n: n as u8 })
    }

    /// Builds an element without range checks. Callers guarantee `bits < 2^n`.
    #[inline]
    pub(crate) fn from_bits(n: usize, bits: u32) -> Self {
        debug_assert!(n <= MAX_DIM && bits & !low_mask(n) == 0);
        GroupIndex { bits, n: n as u8 }
    }

    /// # Panics
    ///
    /// Panics if `n` is outside `1..=24`.
    pub fn zero(n: usize) -> Self {
        check_dim(n).expect("invalid dimension");
        GroupIndex::from_bits(n, 0)
    }

    /// The unit vector `e_i`, with `i` counted from 1.
    ///
    /// # Panics
    ///
    /// Panics if `i` is not in `1..=n` or `n` is outside `1..=24`.
    pub fn unit(n: usize, i: usize) -> Self {
        check_dim(n).expect("invalid dimension");
        assert!((1..=n).contains(&i), "unit index {i} out of range 1..={n}");
        GroupIndex::from_bits(n, 1 << (i - 1))
    }

    /// The element of maximal weight `(1, ..., 1)`.
    pub fn ones(n: usize) -> Self {
        check_dim(n).expect("invalid dimension");
        GroupIndex::from_bits(n, low_mask(n))
    }

    /// Sum of the unit vectors with the given 1-based indices.
    pub fn from_units(n: usize, units: &[usize]) -> Self {
        units
            .iter()
            .fold(GroupIndex::zero(n), |acc, &i| acc + GroupIndex::unit(n, i))
    }

    /// All `2^n` elements in increasing mask order.
    pub fn all(n: usize) -> impl Iterator<Item = GroupIndex> + Clone {
        check_dim(n).expect("invalid dimension");
        (0..=low_mask(n)).map(move |b| GroupIndex::from_bits(n, b))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn dim(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Coordinate `x_i`, 1-based.
    pub fn coord(self, i: usize) -> bool {
        assert!((1..=self.dim()).contains(&i));
        self.bits >> (i - 1) & 1 == 1
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(self) -> usize {
        self.bits.count_ones() as usize
    }

    /// 1-based indices of the nonzero coordinates, increasing.
    pub fn support(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.dim())
            .filter(move |&i| bits >> i & 1 == 1)
            .map(|i| i + 1)
    }

    pub fn try_add(self, other: GroupIndex) -> Result<GroupIndex> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(GroupIndex::from_bits(self.dim(), self.bits ^ other.bits))
    }

    /// Parses a bitstring of length `n` (`"101"`) or a unit sum (`"e1+e3"`).
    pub fn parse(n: usize, text: &str) -> Result<GroupIndex> {
        check_dim(n)?;
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty element literal".into()));
        }
        if text.chars().all(|c| c == '0' || c == '1') {
            if text.len() != n {
                return Err(Error::Parse(format!(
                    "bitstring {text:?} has length {}, expected {n}",
                    text.len()
                )));
            }
            let bits = text
                .bytes()
                .enumerate()
                .filter(|&(_, b)| b == b'1')
                .fold(0u32, |acc, (i, _)| acc | 1 << i);
            return Ok(GroupIndex::from_bits(n, bits));
        }
        let mut bits = 0u32;
        for unit in text.split('+') {
            let index = unit
                .strip_prefix('e')
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad unit {unit:?} in {text:?}")))?;
            if !(1..=n).contains(&index) {
                return Err(Error::Parse(format!("unit e{index} out of range 1..={n}")));
            }
            bits ^= 1 << (index - 1);
        }
        Ok(GroupIndex::from_bits(n, bits))
    }

    /// The unit-sum spelling, `"0"` for the zero element.
    pub fn unit_sum(self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.support()
            .map(|i| format!("e{i}"))
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Panics on dimension mismatch; use [`GroupIndex::try_add`] to get an error instead.
impl Add for GroupIndex {
    type Output = GroupIndex;

    fn add(self, rhs: GroupIndex) -> GroupIndex {
        self.try_add(rhs).expect("adding elements of different Z2^n")
    }
}

impl fmt::Display for GroupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", bitstring(self.bits, self.dim()))
    }
}

pub(crate) fn bitstring(bits: u32, n: usize) -> String {
    (0..n)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Hamming weight of `x`.
pub fn weight(x: GroupIndex) -> usize {
    x.weight()
}

/// Coordinatewise sum mod 2.
pub fn add(x: GroupIndex, y: GroupIndex) -> Result<GroupIndex> {
    x.try_add(y)
}

/// The signature `(p, q)`: `p` generators squaring to `+1`, `q` to `-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub const fn new(p: usize, q: usize) -> Self {
        Signature { p, q }
    }

    #[inline]
    pub const fn n(self) -> usize {
        self.p + self.q
    }

    /// Mask of the coordinates `x_1..x_p`.
    #[inline]
    pub(crate) fn positive_mask(self) -> u32 {
        low_mask(self.p)
    }

    /// The swapped signature `(q, p)`.
    pub const fn swapped(self) -> Self {
        Signature::new(self.q, self.p)
    }

    /// All signatures with `p + q = n`, in the order `(n,0), (n-1,1), ..., (0,n)`.
    pub fn all_with_n(n: usize) -> impl Iterator<Item = Signature> {
        (0..=n).map(move |q| Signature::new(n - q, q))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (p, q) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("signature {s:?} is not of the form p,q")))?;
        let p = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad p in {s:?}")))?;
        let q = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad q in {s:?}")))?;
        Ok(Signature::new(p, q))
    }
}

/// A square matrix over Z2 stored as row masks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<u32>,
}

impl BitMatrix {
    pub fn new(n: usize, rows: Vec<u32>) -> Result<Self> {
        check_dim(n)?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if let Some(&bad) = rows.iter().find(|&&r| r & !low_mask(n) != 0) {
            return Err(Error::ValueOutOfRange { bits: bad, n });
        }
        Ok(BitMatrix { n, rows })
    }

    pub fn identity(n: usize) -> Self {
        check_dim(n).expect("invalid dimension");
        BitMatrix {
            n,
            rows: (0..n).map(|i| 1 << i).collect(),
        }
    }

    /// The matrix whose column `j` is `images[j]`, i.e. `A e_j = images[j]`.
    pub fn from_columns(images: &[GroupIndex]) -> Result<Self> {
        let n = images.len();
        check_dim(n)?;
        if let Some(bad) = images.iter().find(|g| g.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        let mut rows = vec![0u32; n];
        for (j, g) in images.iter().enumerate() {
            for (i, row) in rows.iter_mut().enumerate() {
                if g.bits() >> i & 1 == 1 {
                    *row |= 1 << j;
                }
            }
        }
        Ok(BitMatrix { n, rows })
    }

    /// Parses rows given as bitstrings, leftmost character = coefficient of `x_1`.
    pub fn from_row_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.len();
        check_dim(n)?;
        let rows = rows
            .iter()
            .map(|r| {
                let r = r.as_ref();
                if r.len() != n || !r.chars().all(|c| c == '0' || c == '1') {
                    return Err(Error::Parse(format!("matrix row {r:?} is not a {n}-bit string")));
                }
                GroupIndex::parse(n, r).map(GroupIndex::bits)
            })
            .collect::<Result<Vec<_>>>()?;
        BitMatrix::new(n, rows)
    }

    pub fn row_strings(&self) -> Vec<String> {
        self.rows.iter().map(|&r| bitstring(r, self.n)).collect()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Image of `e_j` (1-based), i.e. column `j`.
    pub fn column(&self, j: usize) -> GroupIndex {
        assert!((1..=self.n).contains(&j));
        let bits = self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| r >> (j - 1) & 1 == 1)
            .fold(0u32, |acc, (i, _)| acc | 1 << i);
        GroupIndex::from_bits(self.n, bits)
    }

    pub fn columns(&self) -> Vec<GroupIndex> {
        (1..=self.n).map(|j| self.column(j)).collect()
    }

    #[inline]
    pub(crate) fn apply_bits(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &r)| acc | (parity(r & x) as u32) << i)
    }

    pub fn apply(&self, x: GroupIndex) -> Result<GroupIndex> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.dim(),
            });
        }
        Ok(GroupIndex::from_bits(self.n, self.apply_bits(x.bits())))
    }

    pub fn rank(&self) -> usize {
        rank_of(self.rows.iter().copied())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn transpose(&self) -> BitMatrix {
        let cols = self.columns();
        BitMatrix {
            n: self.n,
            rows: cols.iter().map(|c| c.bits()).collect(),
        }
    }

    /// The product `self * other`, acting as `x -> self(other(x))`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                other
                    .rows
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| r >> k & 1 == 1)
                    .fold(0u32, |acc, (_, &o)| acc ^ o)
            })
            .collect();
        Ok(BitMatrix { n: self.n, rows })
    }

    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(BitMatrix { n, rows: inv })
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.row_strings().join(", "))
    }
}

/// Rank over Z2 of a list of masks.
pub(crate) fn rank_of(vectors: impl IntoIterator<Item = u32>) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Image of `x` under `A`.
pub fn mat_apply(a: &BitMatrix, x: GroupIndex) -> Result<GroupIndex> {
    a.apply(x)
}

/// Whether `A` has full rank over Z2.
pub fn mat_invertible(a: &BitMatrix) -> bool {
    a.is_invertible()
}

/// `2^n`-bit membership set for the span of the rows placed so far.
#[derive(Clone, Copy, Default)]
struct SpanSet([u64; 4]);

impl SpanSet {
    fn zero_only() -> Self {
        let mut s = SpanSet::default();
        s.0[0] = 1;
        s
    }

    #[inline]
    fn contains(&self, v: u32) -> bool {
        self.0[(v >> 6) as usize] >> (v & 63) & 1 == 1
    }

    fn extended(&self, v: u32) -> Self {
        let mut out = *self;
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let t = bits.trailing_zeros();
                bits &= bits - 1;
                let s = (w as u32) << 6 | t;
                let u = s ^ v;
                out.0[(u >> 6) as usize] |= 1 << (u & 63);
            }
        }
        out
    }
}

/// Depth-first stream of invertible matrices, rows placed top-down in
/// increasing mask order.
///
/// The constraint sees the partial row list after every placement and prunes
/// the whole subtree when it returns `false`.
pub struct InvertibleMatrices<F> {
    n: usize,
    constraint: F,
    rows: Vec<GroupIndex>,
    next: Vec<u32>,
    spans: Vec<SpanSet>,
    first_range: (u32, u32),
    done: bool,
}

impl<F> InvertibleMatrices<F>
where
    F: FnMut(&[GroupIndex]) -> bool,
{
    fn with_first_range(n: usize, first_range: (u32, u32), constraint: F) -> Result<Self> {
        check_dim(n)?;
        guard("enumerate_invertible", n, MAX_ENUM_DIM)?;
        let mut next = vec![0u32; n];
        next[0] = first_range.0;
        let mut spans = vec![SpanSet::default(); n + 1];
        spans[0] = SpanSet::zero_only();
        Ok(InvertibleMatrices {
            n,
            constraint,
            rows: Vec::with_capacity(n),
            next,
            spans,
            first_range,
            done: false,
        })
    }

    /// Restricts the stream to matrices whose first row is `first`.
    pub fn with_first_row(n: usize, first: GroupIndex, constraint: F) -> Result<Self> {
        if first.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: first.dim(),
            });
        }
        Self::with_first_range(n, (first.bits(), first.bits() + 1), constraint)
    }
}

impl<F> Iterator for InvertibleMatrices<F>
where
    F: FnMut(&[GroupIndex]) -> bool,
{
    type Item = BitMatrix;

    fn next(&mut self) -> Option<BitMatrix> {
        if self.done {
            return None;
        }
        loop {
            let depth = self.rows.len();
            if depth == self.n {
                let matrix = BitMatrix {
                    n: self.n,
                    rows: self.rows.iter().map(|g| g.bits()).collect(),
                };
                self.rows.pop();
                return Some(matrix);
            }
            let limit = if depth == 0 {
                self.first_range.1
            } else {
                1 << self.n
            };
            let span = self.spans[depth];
            let mut placed = false;
            let mut candidate = self.next[depth];
            while candidate < limit {
                if !span.contains(candidate) {
                    self.rows.push(GroupIndex::from_bits(self.n, candidate));
                    if (self.constraint)(&self.rows) {
                        self.next[depth] = candidate + 1;
                        self.spans[depth + 1] = span.extended(candidate);
                        if depth + 1 < self.n {
                            self.next[depth + 1] = 0;
                        }
                        placed = true;
                        break;
                    }
                    self.rows.pop();
                }
                candidate += 1;
            }
            if !placed {
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                self.rows.pop();
            }
        }
    }
}

/// All invertible `n x n` matrices whose every row prefix satisfies `constraint`.
pub fn enumerate_invertible<F>(n: usize, constraint: F) -> Result<InvertibleMatrices<F>>
where
    F: FnMut(&[GroupIndex]) -> bool,
{
    InvertibleMatrices::with_first_range(n, (1, 1 << n.min(31)), constraint)
}

/// `|GL(n, 2)| = prod_{k<n} (2^n - 2^k)`.
pub fn gl_order(n: usize) -> u128 {
    (0..n).map(|k| (1u128 << n) - (1u128 << k)).product()
}
