use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::element::Sign;
use crate::error::{Error, Result};
use crate::forms::cubic::{beta_from, phi_from};
use crate::forms::{canonical_twisting, CubicForm};
use crate::z2lin::{guard, rank_of, GroupIndex, Signature};

/// Candidate degrees `g_1, ..., g_n` of new generators `u'_i = u_{g_i}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorSet {
    n: usize,
    images: Vec<GroupIndex>,
}

impl GeneratorSet {
    /// Rejects wrong dimensions and linearly dependent images.
    pub fn new(images: Vec<GroupIndex>) -> Result<Self> {
        let n = images.len();
        if let Some(bad) = images.iter().find(|g| g.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        if rank_of(images.iter().map(|g| g.bits())) != n {
            return Err(Error::DependentImages);
        }
        Ok(GeneratorSet { n, images })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[GroupIndex] {
        &self.images
    }
}

/// Result of [`analyze_generator_set`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorReport {
    /// All pairs anticommute and all distinct triples antiassociate.
    pub valid: bool,
    /// `(#{i : alpha(g_i) = 0}, #{i : alpha(g_i) = 1})`.
    pub signature: Signature,
    /// `u'_i^2`, in the order of the images.
    pub squares: Vec<Sign>,
}

/// Decides whether the images form a system of anticommuting,
/// antiassociating generators, using only `alpha`.
pub fn analyze_generator_set(form: &CubicForm, gens: &GeneratorSet) -> Result<GeneratorReport> {
    if form.dim() != gens.n {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            found: gens.n,
        });
    }
    let alpha = |v: u32| form.eval_bits(v);
    let g: Vec<u32> = gens.images.iter().map(|x| x.bits()).collect();
    let n = g.len();
    let anticommute = (0..n).all(|i| (i + 1..n).all(|j| beta_from(alpha, g[i], g[j])));
    let antiassociate = anticommute
        && (0..n).all(|i| {
            (i + 1..n).all(|j| (j + 1..n).all(|k| phi_from(alpha, g[i], g[j], g[k])))
        });
    let squares: Vec<Sign> = g.iter().map(|&v| Sign::from_parity(alpha(v))).collect();
    let q = squares.iter().filter(|s| s.is_minus()).count();
    Ok(GeneratorReport {
        valid: anticommute && antiassociate,
        signature: Signature::new(n - q, q),
        squares,
    })
}

/// Checks that `v_i = u_{e_i + e_n}`, `i < n`, satisfy the relations of
/// `Cl_{p,q-1}` inside `O_{p,q}`: squares `+1` for `i <= p` and `-1` after,
/// pairwise anticommutation, and associativity on the even part.
pub fn even_subalgebra_check(sig: Signature) -> Result<bool> {
    let n = sig.n();
    if n < 3 {
        return Err(Error::SignatureTooSmall(sig));
    }
    if sig.q == 0 {
        return Err(Error::NoNegativeGenerator(sig));
    }
    guard("even_subalgebra_check", n, 8)?;
    let form = CubicForm::alpha_pq(sig)?;
    let table = form.table();
    let alpha = |v: u32| table[v as usize];
    let last = 1u32 << (n - 1);
    let v: Vec<u32> = (0..n - 1).map(|i| 1 << i | last).collect();

    let squares_ok = v.iter().enumerate().all(|(i, &vi)| alpha(vi) == (i >= sig.p));
    let anticommute = (0..v.len()).all(|i| (i + 1..v.len()).all(|j| beta_from(alpha, v[i], v[j])));
    let even: Vec<u32> = (0..1u32 << n).filter(|x| x.count_ones() % 2 == 0).collect();
    let associative = even.par_iter().all(|&x| {
        even.iter()
            .all(|&y| even.iter().all(|&z| !phi_from(alpha, x, y, z)))
    });
    Ok(squares_ok && anticommute && associative)
}

/// Nonzero degrees `x` with `beta(x, .) = 0` and `phi(x, ., .) = 0`.
///
/// `phi` is trilinear, so it suffices to test it on pairs of unit vectors;
/// once `phi(x, ., .)` vanishes, `beta(x, .)` is additive and is tested on
/// unit vectors as well.
pub fn graded_center(form: &CubicForm) -> Result<Vec<GroupIndex>> {
    let n = form.dim();
    guard("graded_center", n, 12)?;
    let table = form.table();
    let alpha = |v: u32| table[v as usize];
    let units: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    let central: Vec<u32> = (1..1u32 << n)
        .into_par_iter()
        .filter(|&x| {
            units
                .iter()
                .enumerate()
                .all(|(j, &a)| units[j..].iter().all(|&b| !phi_from(alpha, x, a, b)))
                && units.iter().all(|&a| !beta_from(alpha, x, a))
        })
        .collect();
    Ok(central
        .into_iter()
        .map(|x| GroupIndex::from_bits(n, x))
        .collect())
}

/// Result of [`decomposability`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub decomposes: bool,
    /// A central degree with `u_x^2 = +1`; `(1 +- u_x)/2` are then orthogonal
    /// central idempotents.
    pub witness: Option<GroupIndex>,
}

/// Looks for a central involution among the homogeneous elements.
pub fn decomposability(form: &CubicForm) -> Result<Decomposition> {
    let witness = graded_center(form)?
        .into_iter()
        .find(|&x| !form.eval(x));
    Ok(Decomposition {
        decomposes: witness.is_some(),
        witness,
    })
}

/// Coarse structure read off from the homogeneous center.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterVerdict {
    /// A central `u_x` with `u_x^2 = 1`: the algebra is a direct sum.
    SplitsSum,
    /// A central `u_x` with `u_x^2 = -1`: a complex structure on the center.
    ComplexCenter,
    /// No nonzero central degree.
    CentralSimpleLike,
}

impl CenterVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CenterVerdict::SplitsSum => "splits_sum",
            CenterVerdict::ComplexCenter => "complex_center",
            CenterVerdict::CentralSimpleLike => "central_simple_like",
        }
    }
}

/// Classifies the homogeneous center of the algebra of `form`.
pub fn center_verdict(form: &CubicForm) -> Result<CenterVerdict> {
    let center = graded_center(form)?;
    Ok(if center.iter().any(|&x| !form.eval(x)) {
        CenterVerdict::SplitsSum
    } else if center.is_empty() {
        CenterVerdict::CentralSimpleLike
    } else {
        CenterVerdict::ComplexCenter
    })
}

/// Checks `u (u v) = u^2 v` on homogeneous elements, both for the
/// substitution twisting of `form` and through `phi(x, x, y) = 0`.
pub fn graded_alternative_check(form: &CubicForm) -> Result<bool> {
    let n = form.dim();
    guard("graded_alternative_check", n, 8)?;
    let f = canonical_twisting(form);
    let size = 1u32 << n;
    let twist: Vec<bool> = (0..size)
        .flat_map(|x| (0..size).map(move |y| (x, y)))
        .map(|(x, y)| f.eval_bits(x, y))
        .collect();
    let fv = |x: u32, y: u32| twist[((x as usize) << n) | y as usize];
    let table = form.table();
    let alpha = |v: u32| table[v as usize];
    Ok((0..size).all(|x| {
        (0..size).all(|y| {
            // u_x (u_x u_y) = (-1)^{f(x,y) + f(x,x+y)} u_y, u_x^2 u_y = (-1)^{f(x,x)} u_y
            let twisted = fv(x, y) ^ fv(x, x ^ y) == fv(x, x);
            twisted && !phi_from(alpha, x, x, y)
        })
    }))
}
