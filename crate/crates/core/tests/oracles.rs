//! Literal re-implementations of the definitions, compared with the library.

use opq::algebra::{graded_center, AlgebraContext, Sign};
use opq::classify::statistics;
use opq::forms::{f_clifford, f_oseries, phi_of_f, CubicForm, TwistingMap};
use opq::z2lin::{GroupIndex, Signature};

fn bit(v: GroupIndex, i: usize) -> u32 {
    v.bits() >> (i - 1) & 1
}

/// The defining sums of the octonion-series twisting, 1-based as written.
fn f_oseries_literal(p: usize, q: usize, x: GroupIndex, y: GroupIndex) -> bool {
    let n = p + q;
    let mut sum = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                sum += bit(x, i) * bit(x, j) * bit(y, k);
                sum += bit(x, i) * bit(y, j) * bit(x, k);
                sum += bit(y, i) * bit(x, j) * bit(x, k);
            }
        }
    }
    for i in 1..=n {
        for j in i..=n {
            sum += bit(x, i) * bit(y, j);
        }
    }
    for i in 1..=p {
        sum += bit(x, i) * bit(y, i);
    }
    sum % 2 == 1
}

fn f_clifford_literal(p: usize, q: usize, x: GroupIndex, y: GroupIndex) -> bool {
    let n = p + q;
    let mut sum = 0;
    for i in 1..=n {
        for j in i..=n {
            sum += bit(x, i) * bit(y, j);
        }
    }
    for i in 1..=p {
        sum += bit(x, i) * bit(y, i);
    }
    sum % 2 == 1
}

fn signatures(n: usize) -> impl Iterator<Item = Signature> {
    Signature::all_with_n(n)
}

#[test]
fn oseries_twisting_matches_its_definition() {
    for n in 3..=5 {
        for s in signatures(n) {
            for x in GroupIndex::all(n) {
                for y in GroupIndex::all(n) {
                    assert_eq!(
                        f_oseries(s, x, y).unwrap(),
                        f_oseries_literal(s.p, s.q, x, y),
                        "{s} at ({x}, {y})"
                    );
                }
            }
        }
    }
}

#[test]
fn clifford_twisting_matches_its_definition() {
    for n in 1..=5 {
        for s in signatures(n) {
            for x in GroupIndex::all(n) {
                for y in GroupIndex::all(n) {
                    assert_eq!(f_clifford(s, x, y).unwrap(), f_clifford_literal(s.p, s.q, x, y));
                }
            }
        }
    }
}

#[test]
fn statistics_counts_negative_squares() {
    for n in 3..=8 {
        for s in signatures(n) {
            let ctx = AlgebraContext::oseries(s).unwrap();
            let negative = GroupIndex::all(n)
                .filter(|&x| ctx.basis_product(x, x) == (Sign::Minus, GroupIndex::zero(n)))
                .count() as u64;
            assert_eq!(statistics(s).unwrap(), negative, "{s}");
        }
    }
}

#[test]
fn generators_square_as_the_signature_says() {
    for s in signatures(6) {
        let ctx = AlgebraContext::oseries(s).unwrap();
        for i in 1..=6 {
            let e = GroupIndex::unit(6, i);
            let expected = if i <= s.p { Sign::Plus } else { Sign::Minus };
            assert_eq!(ctx.basis_product(e, e).0, expected, "{s}, e{i}");
        }
    }
}

/// `u_x` is central when it commutes with every `u_y` and associates in
/// every position.
fn center_brute_force(s: Signature) -> Vec<GroupIndex> {
    let n = s.n();
    let f = TwistingMap::oseries(s).unwrap();
    let all: Vec<GroupIndex> = GroupIndex::all(n).collect();
    all.iter()
        .copied()
        .filter(|x| !x.is_zero())
        .filter(|&x| {
            all.iter().all(|&y| f.eval(x, y) == f.eval(y, x))
                && all.iter().all(|&y| {
                    all.iter().all(|&z| {
                        !phi_of_f(&f, x, y, z) && !phi_of_f(&f, y, x, z) && !phi_of_f(&f, y, z, x)
                    })
                })
        })
        .collect()
}

#[test]
fn graded_center_matches_brute_force() {
    for n in 3..=6 {
        for s in signatures(n) {
            let mut got = graded_center(&CubicForm::alpha_pq(s).unwrap()).unwrap();
            got.retain(|x| !x.is_zero());
            got.sort();
            assert_eq!(got, center_brute_force(s), "{s}");
        }
    }
}
