use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};
use crate::forms::{canonical_twisting, is_generating, CubicForm, TwistingMap};
use crate::z2lin::{bitstring, check_dim, GroupIndex, Signature};

/// A sign `(-1)^k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^parity`.
    #[inline]
    pub fn from_parity(parity: bool) -> Sign {
        if parity {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    #[inline]
    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    #[inline]
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        Sign::from_parity(!self.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A twisted group algebra `(R[Z2^n], f)`, optionally with a known
/// generating function.
#[derive(Clone, Debug)]
pub struct AlgebraContext {
    n: usize,
    twist: TwistingMap,
    form: Option<CubicForm>,
}

impl AlgebraContext {
    /// Builds a context; when a form is supplied and `n <= 8` it must be a
    /// generating function of `twist`.
    pub fn new(twist: TwistingMap, form: Option<CubicForm>) -> Result<Self> {
        let n = twist.dim();
        if let Some(form) = &form {
            if form.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: form.dim(),
                });
            }
            if n <= 8 && !is_generating(&twist, form)? {
                return Err(Error::NotGenerating);
            }
        }
        Ok(AlgebraContext { n, twist, form })
    }

    /// `O_{p,q}` with its standard twisting and generating function.
    pub fn oseries(sig: Signature) -> Result<Self> {
        Ok(AlgebraContext {
            n: sig.n(),
            twist: TwistingMap::oseries(sig)?,
            form: Some(CubicForm::alpha_pq(sig)?),
        })
    }

    /// `Cl_{p,q}`; its generating function is the quadratic form `f(x, x)`.
    pub fn clifford(sig: Signature) -> Result<Self> {
        Ok(AlgebraContext {
            n: sig.n(),
            twist: TwistingMap::clifford(sig)?,
            form: Some(CubicForm::clifford(sig)?),
        })
    }

    /// The algebra determined by a cubic form, realised with the
    /// substitution twisting.
    pub fn from_form(form: CubicForm) -> Self {
        AlgebraContext {
            n: form.dim(),
            twist: canonical_twisting(&form),
            form: Some(form),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn twist(&self) -> &TwistingMap {
        &self.twist
    }

    pub fn form(&self) -> Option<&CubicForm> {
        self.form.as_ref()
    }

    /// `u_x * u_y = sign * u_{x+y}`.
    pub fn basis_product(&self, x: GroupIndex, y: GroupIndex) -> (Sign, GroupIndex) {
        assert!(
            x.dim() == self.n && y.dim() == self.n,
            "basis_product dimension mismatch"
        );
        let (s, z) = self.basis_product_bits(x.bits(), y.bits());
        (s, GroupIndex::from_bits(self.n, z))
    }

    #[inline]
    pub(crate) fn basis_product_bits(&self, x: u32, y: u32) -> (Sign, u32) {
        (Sign::from_parity(self.twist.eval_bits(x, y)), x ^ y)
    }
}

/// `(sign, x + y)` for `u_x * u_y` in `ctx`.
pub fn basis_product(ctx: &AlgebraContext, x: GroupIndex, y: GroupIndex) -> (Sign, GroupIndex) {
    ctx.basis_product(x, y)
}

/// An element `sum_x c_x u_x` with integer coefficients; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<u32, i64>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `u_0`.
    pub fn one(n: usize) -> Self {
        AlgebraElement::scalar(n, 1)
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        AlgebraElement::term(GroupIndex::zero(n), c)
    }

    /// The basis element `u_x`.
    pub fn basis(x: GroupIndex) -> Self {
        AlgebraElement::term(x, 1)
    }

    /// `c * u_x`.
    pub fn term(x: GroupIndex, c: i64) -> Self {
        let mut e = AlgebraElement::zero(x.dim());
        e.add_term(x.bits(), c);
        e
    }

    /// Sums the given terms; repeated degrees are combined.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (GroupIndex, i64)>) -> Result<Self> {
        let mut e = AlgebraElement::zero(n);
        for (x, c) in terms {
            if x.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: x.dim(),
                });
            }
            e.add_term(x.bits(), c);
        }
        Ok(e)
    }

    fn add_term(&mut self, x: u32, c: i64) {
        let slot = self.terms.entry(x).or_insert(0);
        *slot = slot.checked_add(c).expect("coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&x);
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `u_x`.
    pub fn coeff(&self, x: GroupIndex) -> i64 {
        self.terms.get(&x.bits()).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (GroupIndex, i64)> + '_ {
        self.terms
            .iter()
            .map(|(&x, &c)| (GroupIndex::from_bits(self.n, x), c))
    }

    fn check_same(&self, other: &AlgebraElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&x, &c) in &other.terms {
            out.add_term(x, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        for (&x, &c) in &self.terms {
            out.add_term(x, c.checked_mul(k).expect("coefficient overflow"));
        }
        out
    }

    /// Parses `"1 + 2*[110] - [e1+e3]"`: an integer, an optional `*`, and a
    /// bracketed basis literal per term.
    pub fn parse(n: usize, text: &str) -> Result<AlgebraElement> {
        check_dim(n)?;
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let bytes = s.as_bytes();
        let mut e = AlgebraElement::zero(n);
        let mut i = 0;
        let mut first = true;
        while i < bytes.len() {
            let negative = match bytes[i] {
                b'+' => {
                    i += 1;
                    false
                }
                b'-' => {
                    i += 1;
                    true
                }
                _ if first => false,
                c => {
                    return Err(Error::Parse(format!(
                        "expected '+' or '-' at '{}'",
                        c as char
                    )))
                }
            };
            first = false;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff = if i > start {
                s[start..i]
                    .parse::<i64>()
                    .map_err(|err| Error::Parse(format!("bad coefficient: {err}")))?
            } else {
                1
            };
            let has_number = i > start;
            if i < bytes.len() && bytes[i] == b'*' {
                if !has_number {
                    return Err(Error::Parse("'*' must follow a coefficient".into()));
                }
                i += 1;
                if i >= bytes.len() || bytes[i] != b'[' {
                    return Err(Error::Parse("expected '[' after '*'".into()));
                }
            }
            let degree = if i < bytes.len() && bytes[i] == b'[' {
                let close = s[i..]
                    .find(']')
                    .ok_or_else(|| Error::Parse("unclosed '['".into()))?;
                let x = GroupIndex::parse(n, &s[i + 1..i + close])?;
                i += close + 1;
                x.bits()
            } else if has_number {
                0
            } else {
                return Err(Error::Parse(format!(
                    "basis terms must be bracketed, e.g. [101], near '{}'",
                    &s[start..]
                )));
            };
            e.add_term(degree, if negative { -coeff } else { coeff });
        }
        Ok(e)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&x, &c)) in self.terms.iter().enumerate() {
            let magnitude = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if x == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude == 1 {
                write!(f, "[{}]", bitstring(x, self.n))?;
            } else {
                write!(f, "{magnitude}*[{}]", bitstring(x, self.n))?;
            }
        }
        Ok(())
    }
}

/// The bilinear extension of the twisted product.
pub fn multiply(ctx: &AlgebraContext, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    for e in [a, b] {
        if e.n != ctx.n {
            return Err(Error::DimensionMismatch {
                expected: ctx.n,
                found: e.n,
            });
        }
    }
    let mut out = AlgebraElement::zero(ctx.n);
    for (&x, &cx) in &a.terms {
        for (&y, &cy) in &b.terms {
            let (sign, z) = ctx.basis_product_bits(x, y);
            let c = cx.checked_mul(cy).expect("coefficient overflow");
            out.add_term(z, c * sign.value());
        }
    }
    Ok(out)
}
