//! Twisting functions recovered from a cubic form through the ordered
//! monomial basis `u'_x = u_{i1} (u_{i2} ( ... u_{il}))`, `i1 < ... < il`.
//!
//! The sign of `u'_x * u'_y` is found by rewriting the product into a single
//! right-nested word and sorting it, using nothing but the relations encoded
//! by `alpha`: squares of generators, commutation signs `beta` and
//! association signs `phi` between homogeneous elements.

use crate::error::Result;
use crate::forms::cubic::{beta_from, phi_from, CubicForm};
use crate::forms::twisting::TwistingMap;
use crate::z2lin::guard;

/// Signs read off from `alpha` alone.
struct Relations {
    alpha: Vec<bool>,
}

impl Relations {
    #[inline]
    fn alpha(&self, v: u32) -> bool {
        self.alpha[v as usize]
    }

    #[inline]
    fn beta(&self, a: u32, b: u32) -> bool {
        beta_from(|v| self.alpha(v), a, b)
    }

    #[inline]
    fn phi(&self, a: u32, b: u32, c: u32) -> bool {
        phi_from(|v| self.alpha(v), a, b, c)
    }
}

fn degree(word: &[u8]) -> u32 {
    word.iter().fold(0, |acc, &g| acc ^ 1 << g)
}

fn generators(x: u32) -> impl Iterator<Item = u8> {
    (0..32u8).filter(move |&i| x >> i & 1 == 1)
}

/// Parity of the sign in `u'_x * u'_y = (-1)^s u'_{x+y}`.
fn reduce(rel: &Relations, x: u32, y: u32) -> bool {
    let mut sign = false;

    // (g A') B = (-1)^phi(g, A', B) g (A' B): push B inside the left word.
    let xs: Vec<u8> = generators(x).collect();
    for k in 0..xs.len() {
        sign ^= rel.phi(1 << xs[k], degree(&xs[k + 1..]), y);
    }
    let mut word: Vec<u8> = xs;
    word.extend(generators(y));

    // Bubble sort the right-nested word g1 (g2 ( ... gm)).
    let mut changed = true;
    while changed {
        changed = false;
        let mut k = 0;
        while k + 1 < word.len() {
            let (a, b) = (1u32 << word[k], 1u32 << word[k + 1]);
            let rest = degree(&word[k + 2..]);
            if a == b {
                // g (g R) = (-1)^phi(g, g, R) (g g) R = (-1)^(phi + alpha(g)) R
                sign ^= rel.phi(a, a, rest) ^ rel.alpha(a);
                word.drain(k..k + 2);
                changed = true;
            } else if a > b {
                // a (b R) = (-1)^(phi(a,b,R) + beta(a,b) + phi(b,a,R)) b (a R)
                sign ^= rel.phi(a, b, rest) ^ rel.beta(a, b) ^ rel.phi(b, a, rest);
                word.swap(k, k + 1);
                changed = true;
                k += 1;
            } else {
                k += 1;
            }
        }
    }
    debug_assert_eq!(degree(&word), x ^ y);
    sign
}

/// The twisting `f'` defined by `u'_x * u'_y = (-1)^{f'(x,y)} u'_{x+y}`.
pub fn pbw_twisting(form: &CubicForm) -> Result<TwistingMap> {
    let n = form.dim();
    guard("pbw_twisting", n, 8)?;
    let rel = Relations {
        alpha: form.table(),
    };
    let size = 1u32 << n;
    let mut table = Vec::with_capacity((size as usize) * (size as usize));
    for x in 0..size {
        for y in 0..size {
            table.push(reduce(&rel, x, y));
        }
    }
    Ok(TwistingMap::from_table(n, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::cubic::is_generating;
    use crate::z2lin::{GroupIndex, Signature};

    #[test]
    fn right_unit_and_squares() {
        let form = CubicForm::alpha_pq(Signature::new(1, 3)).unwrap();
        let f = pbw_twisting(&form).unwrap();
        for x in GroupIndex::all(4) {
            assert!(!f.eval(x, GroupIndex::zero(4)));
            assert!(!f.eval(GroupIndex::zero(4), x));
        }
        for i in 1..=4 {
            let e = GroupIndex::unit(4, i);
            assert_eq!(f.eval(e, e), form.eval(e));
        }
    }

    #[test]
    fn generates_its_form() {
        for sig in Signature::all_with_n(4) {
            let form = CubicForm::alpha_pq(sig).unwrap();
            assert!(is_generating(&pbw_twisting(&form).unwrap(), &form).unwrap());
        }
    }

    #[test]
    fn guard() {
        let form = CubicForm::alpha_n(9).unwrap();
        assert!(pbw_twisting(&form).is_err());
    }
}
