//! Built-in example algebras.

use num_traits::{One, Zero};

use crate::algebra::Algebra;
use crate::exactla::{rat, zero_vec, Rational};

/// `k e ⊕ k u` with unit `e` and `u∘u = a e + b u`.
pub fn make_j2(a: Rational, b: Rational) -> Algebra {
    let mut sc = zero_vec(8);
    let mut set = |i: usize, j: usize, k: usize, c: Rational| {
        sc[(i * 2 + j) * 2 + k] = c.clone();
        sc[(j * 2 + i) * 2 + k] = c;
    };
    set(0, 0, 0, Rational::one());
    set(0, 1, 1, Rational::one());
    set(1, 1, 0, a);
    set(1, 1, 1, b);
    Algebra::from_flat(vec!["e".into(), "u".into()], sc).expect("commutative by construction")
}

/// Spin factor `k e ⊕ V` with `v_i ∘ v_j = δ_ij q_i e`.
pub fn make_spin(q: &[Rational]) -> Algebra {
    assert!(!q.is_empty(), "spin factor needs at least one generator");
    let d = 1 + q.len();
    let mut sc = zero_vec(d * d * d);
    let idx = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
    for i in 0..d {
        sc[idx(0, i, i)] = Rational::one();
        sc[idx(i, 0, i)] = Rational::one();
    }
    for (n, qi) in q.iter().enumerate() {
        sc[idx(n + 1, n + 1, 0)] = qi.clone();
    }
    let mut labels = vec!["e".to_string()];
    labels.extend((1..d).map(|i| format!("v{i}")));
    Algebra::from_flat(labels, sc).expect("commutative by construction")
}

/// Basis `v, w` with `v∘v = w`, `w∘w = v`, `v∘w = 0`: commutative, not unital,
/// not Jordan.
pub fn make_non_jordan() -> Algebra {
    let mut sc = zero_vec(8);
    sc[1] = Rational::one(); // v∘v = w
    sc[(2 + 1) * 2] = Rational::one(); // w∘w = v
    Algebra::from_flat(vec!["v".into(), "w".into()], sc).expect("commutative by construction")
}

/// The one-dimensional algebra `k`.
pub fn make_field() -> Algebra {
    Algebra::from_flat(vec!["e".into()], vec![Rational::one()]).expect("commutative")
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub algebra: Algebra,
    /// Expected cubic-Jordan verdict.
    pub jordan: bool,
}

/// The shipped corpus in its fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry { name: "j2_1_0", algebra: make_j2(rat(1), Rational::zero()), jordan: true },
        CorpusEntry { name: "j2_0_0", algebra: make_j2(Rational::zero(), Rational::zero()), jordan: true },
        CorpusEntry { name: "j2_m1_2", algebra: make_j2(rat(-1), rat(2)), jordan: true },
        CorpusEntry { name: "spin_1_1", algebra: make_spin(&[rat(1), rat(1)]), jordan: true },
        CorpusEntry { name: "non_jordan", algebra: make_non_jordan(), jordan: false },
        CorpusEntry { name: "field", algebra: make_field(), jordan: true },
    ]
}

pub fn by_name(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// Recognizes `k e ⊕ k u` with unit `b_0` and returns `(a, b)` from
/// `u∘u = a e + b u`.
pub fn j2_parameters(alg: &Algebra) -> Option<(Rational, Rational)> {
    if alg.dim() != 2 {
        return None;
    }
    let (a, b) = (alg.c(1, 1, 0).clone(), alg.c(1, 1, 1).clone());
    let candidate = make_j2(a.clone(), b.clone());
    let same = (0..2).all(|i| (0..2).all(|j| (0..2).all(|k| alg.c(i, j, k) == candidate.c(i, j, k))));
    same.then_some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_cubic_jordan, check_operator_identity};
    use crate::exactla::ratio;
    use proptest::prelude::*;

    #[test]
    fn j2_structure_constants() {
        let a = make_j2(rat(1), rat(0));
        assert_eq!(a.c(1, 1, 0), &rat(1));
        assert_eq!(a.c(1, 1, 1), &rat(0));
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(a.c(0, j, k), &rat(i64::from(j == k)));
            }
        }
        let dual = make_j2(rat(0), rat(0));
        assert!(dual.basis_product(1, 1).iter().all(Zero::is_zero));
        assert_eq!(j2_parameters(&make_j2(rat(-1), rat(2))), Some((rat(-1), rat(2))));
        assert_eq!(j2_parameters(&make_non_jordan()), None);
    }

    #[test]
    fn spin_factor() {
        let s = make_spin(&[rat(1), rat(1)]);
        assert_eq!(s.basis_product(1, 1), &[rat(1), rat(0), rat(0)][..]);
        assert!(s.basis_product(1, 2).iter().all(Zero::is_zero));
        assert!(check_cubic_jordan(&s).holds);
        assert!(!check_operator_identity(&s).holds);
        // spin(1) coincides with j2(1, 0) up to basis labels.
        let one = make_spin(&[rat(1)]);
        let j = make_j2(rat(1), rat(0));
        for i in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    assert_eq!(one.c(i, k, l), j.c(i, k, l));
                }
            }
        }
    }

    #[test]
    fn corpus_loads_and_verdicts() {
        let c = corpus();
        assert_eq!(c.len(), 6);
        for e in c {
            assert_eq!(check_cubic_jordan(&e.algebra).holds, e.jordan, "{}", e.name);
            assert_eq!(Algebra::from_json(&e.algebra.to_json()).unwrap(), e.algebra);
        }
    }

    proptest! {
        #[test]
        fn j2_family_is_jordan(a in (-9i64..10, 1i64..5), b in (-9i64..10, 1i64..5)) {
            let alg = make_j2(ratio(a.0, a.1), ratio(b.0, b.1));
            prop_assert!(check_cubic_jordan(&alg).holds);
        }
    }
}
