//! Symmetric cochains `Sym^n(J^∨) ⊗ J` on the multiset basis.
//!
//! A cochain of arity `n` on a `d`-dimensional space stores, for every sorted
//! multiset `M` of `n` basis indices and every output index `k`, the `k`-th
//! coordinate of its value at the basis tuple of `M` (repetitions included).
//! Total symmetry is therefore built into the representation.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{add_scaled, rational_string, zero_vec, Rational};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of multisets of size `n` over `d` symbols.
pub fn multiset_count(d: usize, n: usize) -> usize {
    if d == 0 {
        return usize::from(n == 0);
    }
    binomial(d + n - 1, n)
}

/// `dim C^n = binomial(d+n−1, n) · d`.
pub fn sym_basis_dim(d: usize, n: usize) -> usize {
    multiset_count(d, n) * d
}

/// All sorted multisets of size `n` over `0..d`, in lexicographic order.
pub fn multisets(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in start..d {
            cur.push(v);
            rec(d, n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(multiset_count(d, n));
    rec(d, n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Lexicographic rank of a sorted multiset among [`multisets`]`(d, n)`.
pub fn multiset_rank(d: usize, sorted: &[usize]) -> usize {
    let n = sorted.len();
    let mut rank = 0;
    let mut lo = 0;
    for (pos, &m) in sorted.iter().enumerate() {
        let remaining = n - pos - 1;
        for v in lo..m {
            rank += multiset_count(d - v, remaining);
        }
        lo = m;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymCochain {
    arity: usize,
    dim: usize,
    /// Indexed by `multiset_rank * dim + k`.
    coeffs: Vec<Rational>,
}

impl SymCochain {
    pub fn zero(arity: usize, dim: usize) -> Self {
        SymCochain { arity, dim, coeffs: zero_vec(sym_basis_dim(dim, arity)) }
    }

    /// The cochain with coordinate vector `coeffs` in basis order.
    pub fn from_coeff_vec(arity: usize, dim: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != sym_basis_dim(dim, arity) {
            return Err(Error::Dimension(format!(
                "{} coefficients for C^{arity} of a {dim}-dimensional space",
                coeffs.len()
            )));
        }
        Ok(SymCochain { arity, dim, coeffs })
    }

    /// Basis cochain number `index` (multiset-major, output index minor).
    pub fn basis(arity: usize, dim: usize, index: usize) -> Self {
        let mut c = Self::zero(arity, dim);
        c.coeffs[index] = Rational::one();
        c
    }

    /// A vector of `J` viewed as an element of `C^0`.
    pub fn constant(v: &[Rational]) -> Self {
        SymCochain { arity: 0, dim: v.len(), coeffs: v.to_vec() }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_endomorphism(&crate::exactla::Matrix::identity(dim)).expect("square")
    }

    /// An endomorphism (column `i` = image of `b_i`) as an element of `C^1`.
    pub fn from_endomorphism(m: &crate::exactla::Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::Dimension("endomorphism matrix must be square".into()));
        }
        let d = m.rows();
        let mut c = Self::zero(1, d);
        for i in 0..d {
            for k in 0..d {
                c.coeffs[i * d + k] = m[(k, i)].clone();
            }
        }
        Ok(c)
    }

    pub fn to_endomorphism(&self) -> Result<crate::exactla::Matrix> {
        if self.arity != 1 {
            return Err(Error::Arity(format!("expected arity 1, got {}", self.arity)));
        }
        let d = self.dim;
        let cols: Vec<Vec<Rational>> = (0..d).map(|i| self.coeffs[i * d..(i + 1) * d].to_vec()).collect();
        crate::exactla::Matrix::from_columns(d, &cols)
    }

    /// The product of `a` as an element of `C^2`.
    pub fn from_algebra(a: &Algebra) -> Self {
        let d = a.dim();
        let mut c = Self::zero(2, d);
        for i in 0..d {
            for j in i..d {
                c.set_value(&[i, j], a.basis_product(i, j));
            }
        }
        c
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Lie degree `arity − 1`.
    pub fn degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff_vec(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient for a multiset (any order) and output index.
    pub fn coeff(&self, multiset: &[usize], k: usize) -> &Rational {
        let mut m = multiset.to_vec();
        m.sort_unstable();
        &self.coeffs[multiset_rank(self.dim, &m) * self.dim + k]
    }

    /// Value at a basis tuple, given as an already sorted multiset.
    pub fn value_sorted(&self, sorted: &[usize]) -> &[Rational] {
        let r = multiset_rank(self.dim, sorted) * self.dim;
        &self.coeffs[r..r + self.dim]
    }

    /// Value at a basis tuple in any order.
    pub fn value_at_basis(&self, tuple: &[usize]) -> &[Rational] {
        let mut m = tuple.to_vec();
        m.sort_unstable();
        self.value_sorted(&m)
    }

    pub(crate) fn set_value(&mut self, sorted: &[usize], v: &[Rational]) {
        let r = multiset_rank(self.dim, sorted) * self.dim;
        self.coeffs[r..r + self.dim].clone_from_slice(v);
    }

    pub(crate) fn add_value(&mut self, sorted: &[usize], s: &Rational, v: &[Rational]) {
        let r = multiset_rank(self.dim, sorted) * self.dim;
        add_scaled(&mut self.coeffs[r..r + self.dim], s, v);
    }

    fn check_args(&self, args: &[Vec<Rational>]) -> Result<()> {
        if args.len() != self.arity {
            return Err(Error::Arity(format!("{} arguments for arity {}", args.len(), self.arity)));
        }
        if let Some(bad) = args.iter().find(|a| a.len() != self.dim) {
            return Err(Error::Dimension(format!(
                "argument of length {} for dimension {}",
                bad.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Multilinear evaluation at arbitrary vectors.
    pub fn evaluate(&self, args: &[Vec<Rational>]) -> Result<Vec<Rational>> {
        self.check_args(args)?;
        Ok(self.eval_unchecked(args))
    }

    /// Expands over ordered basis tuples with nonzero weight and looks up the
    /// sorted multiset of each.
    pub(crate) fn eval_unchecked(&self, args: &[impl AsRef<[Rational]>]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        let mut tuple = Vec::with_capacity(self.arity);
        self.eval_rec(args, &mut tuple, &Rational::one(), &mut out);
        out
    }

    fn eval_rec(
        &self,
        args: &[impl AsRef<[Rational]>],
        tuple: &mut Vec<usize>,
        weight: &Rational,
        out: &mut [Rational],
    ) {
        let pos = tuple.len();
        if pos == self.arity {
            let mut sorted = tuple.clone();
            sorted.sort_unstable();
            add_scaled(out, weight, self.value_sorted(&sorted));
            return;
        }
        for (i, x) in args[pos].as_ref().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            tuple.push(i);
            self.eval_rec(args, tuple, &(weight * x), out);
            tuple.pop();
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        SymCochain { arity: self.arity, dim: self.dim, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("ambient dimensions {} and {}", self.dim, other.dim)));
        }
        if self.arity != other.arity {
            return Err(Error::Arity(format!("arities {} and {}", self.arity, other.arity)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        linear_combine(&[Rational::one(), Rational::one()], &[self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        linear_combine(&[Rational::one(), -Rational::one()], &[self.clone(), other.clone()])
    }

    /// First basis multiset where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<Vec<usize>> {
        if self.arity != other.arity || self.dim != other.dim {
            return None;
        }
        multisets(self.dim, self.arity)
            .into_iter()
            .find(|m| self.value_sorted(m) != other.value_sorted(m))
    }
}

/// `Σ s_i c_i` over cochains of equal arity and dimension.
pub fn linear_combine(scalars: &[Rational], cochains: &[SymCochain]) -> Result<SymCochain> {
    if scalars.len() != cochains.len() {
        return Err(Error::Dimension(format!(
            "{} scalars for {} cochains",
            scalars.len(),
            cochains.len()
        )));
    }
    let first = cochains
        .first()
        .ok_or_else(|| Error::Input("linear combination of no cochains".into()))?;
    let mut out = SymCochain::zero(first.arity, first.dim);
    for (s, c) in scalars.iter().zip(cochains) {
        first.check_compatible(c)?;
        add_scaled(&mut out.coeffs, s, &c.coeffs);
    }
    Ok(out)
}

/// A multilinear map given on every ordered basis tuple (`d^n` values,
/// last argument fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearTable {
    pub arity: usize,
    pub dim: usize,
    pub values: Vec<Vec<Rational>>,
}

impl MultilinearTable {
    pub fn zero(arity: usize, dim: usize) -> Self {
        MultilinearTable { arity, dim, values: vec![zero_vec(dim); dim.pow(arity as u32)] }
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, tuple: &[usize]) -> &[Rational] {
        &self.values[self.index(tuple)]
    }

    pub fn set(&mut self, tuple: &[usize], v: Vec<Rational>) {
        let i = self.index(tuple);
        self.values[i] = v;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// The average `(1/n!) Σ_σ T∘σ`.
pub fn symmetrize(t: &MultilinearTable) -> Result<SymCochain> {
    if t.values.len() != t.dim.pow(t.arity as u32) || t.values.iter().any(|v| v.len() != t.dim) {
        return Err(Error::Dimension("multilinear table has the wrong shape".into()));
    }
    let perms = permutations(t.arity);
    let inv = Rational::new(1.into(), (perms.len() as u64).into());
    let mut out = SymCochain::zero(t.arity, t.dim);
    for m in multisets(t.dim, t.arity) {
        let mut acc = zero_vec(t.dim);
        for p in &perms {
            let tuple: Vec<usize> = p.iter().map(|&i| m[i]).collect();
            add_scaled(&mut acc, &inv, t.get(&tuple));
        }
        out.set_value(&m, &acc);
    }
    Ok(out)
}

/// On-disk cochain format.
#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub n: usize,
    pub dim: usize,
    pub coeffs: Vec<CoeffEntry>,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub multiset: Vec<usize>,
    pub k: usize,
    #[serde(with = "rational_string")]
    pub c: Rational,
}

impl SymCochain {
    pub fn to_file(&self) -> CochainFile {
        let mut coeffs = Vec::new();
        for (r, m) in multisets(self.dim, self.arity).into_iter().enumerate() {
            for k in 0..self.dim {
                let c = &self.coeffs[r * self.dim + k];
                if !c.is_zero() {
                    coeffs.push(CoeffEntry { multiset: m.clone(), k, c: c.clone() });
                }
            }
        }
        CochainFile { n: self.arity, dim: self.dim, coeffs }
    }

    pub fn from_file(file: CochainFile) -> Result<Self> {
        if file.dim == 0 {
            return Err(Error::Input("cochain dimension must be at least 1".into()));
        }
        let mut out = SymCochain::zero(file.n, file.dim);
        let mut seen = vec![false; out.coeffs.len()];
        for e in file.coeffs {
            if e.multiset.len() != file.n || e.k >= file.dim || e.multiset.iter().any(|&i| i >= file.dim) {
                return Err(Error::Input(format!(
                    "coefficient entry {:?}/{} does not fit C^{} on dimension {}",
                    e.multiset, e.k, file.n, file.dim
                )));
            }
            let mut m = e.multiset;
            m.sort_unstable();
            let idx = multiset_rank(file.dim, &m) * file.dim + e.k;
            if seen[idx] {
                return Err(Error::Input(format!("duplicate coefficient entry {m:?}/{}", e.k)));
            }
            seen[idx] = true;
            out.coeffs[idx] = e.c;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: CochainFile =
            serde_json::from_str(s).map_err(|e| Error::Input(format!("cochain file: {e}")))?;
        Self::from_file(file)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactla::{rat, ratio, unit_vec};
    use proptest::prelude::*;

    #[test]
    fn basis_dims() {
        assert_eq!(sym_basis_dim(2, 2), 6);
        assert_eq!(sym_basis_dim(2, 3), 8);
        assert_eq!(sym_basis_dim(2, 0), 2);
        assert_eq!(sym_basis_dim(3, 4), 45);
    }

    #[test]
    fn ranks_follow_enumeration() {
        for d in 1..5 {
            for n in 0..5 {
                let ms = multisets(d, n);
                assert_eq!(ms.len(), multiset_count(d, n));
                for (i, m) in ms.iter().enumerate() {
                    assert_eq!(multiset_rank(d, m), i);
                }
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let a = corpus::make_j2(rat(1), rat(0));
        let mu = SymCochain::from_algebra(&a);
        let (e, u) = (a.basis(0), a.basis(1));
        assert_eq!(mu.evaluate(&[u.clone(), u.clone()]).unwrap(), e);
        assert!(SymCochain::zero(3, 2).evaluate(&[e.clone(), u.clone(), u.clone()]).unwrap().iter().all(Zero::is_zero));

        let mut f = SymCochain::zero(2, 2);
        f.set_value(&[0, 1], &u);
        assert_eq!(f.evaluate(&[e.clone(), u.clone()]).unwrap(), u);
        assert_eq!(f.evaluate(&[u.clone(), e.clone()]).unwrap(), u);
        assert_eq!(f.evaluate(&[e.clone(), e.clone()]).unwrap(), zero_vec(2));
        // Independent expansion at (e+u, e+u): f(e,u)+f(u,e) = 2u.
        let eu = vec![rat(1), rat(1)];
        assert_eq!(f.evaluate(&[eu.clone(), eu]).unwrap(), vec![rat(0), rat(2)]);
        assert!(f.evaluate(std::slice::from_ref(&e)).is_err());
        assert!(f.evaluate(&[e, vec![rat(1)]]).is_err());
    }

    #[test]
    fn symmetrize_examples() {
        let mut t = MultilinearTable::zero(2, 2);
        t.set(&[0, 1], unit_vec(2, 0));
        let s = symmetrize(&t).unwrap();
        assert_eq!(s.coeff(&[0, 1], 0), &ratio(1, 2));
        assert_eq!(s.coeff(&[0, 1], 1), &rat(0));

        // Arity 3: one ordered entry c at (0,0,1). Orbit of (0,0,1) has 3
        // elements; averaging over S_3 (6 perms, each multiset tuple
        // permutation hits an orbit element) gives 2c/6 per orbit element.
        let mut t3 = MultilinearTable::zero(3, 2);
        t3.set(&[0, 0, 1], vec![rat(6), rat(0)]);
        let s3 = symmetrize(&t3).unwrap();
        assert_eq!(s3.value_at_basis(&[1, 0, 0]), &[rat(2), rat(0)][..]);
        assert_eq!(s3.value_at_basis(&[0, 1, 1]), &[rat(0), rat(0)][..]);
        // Idempotence on symmetric input.
        let mut again = MultilinearTable::zero(3, 2);
        for t in 0..8usize {
            let tuple = [t >> 2 & 1, t >> 1 & 1, t & 1];
            again.set(&tuple, s3.value_at_basis(&tuple).to_vec());
        }
        assert_eq!(symmetrize(&again).unwrap(), s3);
    }

    #[test]
    fn combine_examples() {
        let a = corpus::make_j2(rat(1), rat(0));
        let mu = SymCochain::from_algebra(&a);
        let z = linear_combine(&[rat(1), rat(-1)], &[mu.clone(), mu.clone()]).unwrap();
        assert!(z.is_zero());
        let two = linear_combine(&[rat(2)], std::slice::from_ref(&mu)).unwrap();
        assert_eq!(two.value_at_basis(&[1, 1]), &[rat(2), rat(0)][..]);
        assert!(linear_combine(&[rat(1), rat(1)], &[mu, SymCochain::zero(3, 2)]).is_err());
    }

    #[test]
    fn endomorphism_round_trip() {
        let m = crate::exactla::Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let f = SymCochain::from_endomorphism(&m).unwrap();
        assert_eq!(f.evaluate(&[unit_vec(2, 0)]).unwrap(), vec![rat(1), rat(3)]);
        assert_eq!(f.to_endomorphism().unwrap(), m);
    }

    pub(crate) fn cochain_strategy(d: usize, n: usize) -> impl Strategy<Value = SymCochain> {
        proptest::collection::vec((-3i64..4, 1i64..3), sym_basis_dim(d, n)).prop_map(move |xs| {
            SymCochain::from_coeff_vec(n, d, xs.into_iter().map(|(p, q)| ratio(p, q)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn rebuild_from_basis_samples(f in (1usize..4, 0usize..4).prop_flat_map(|(d, n)| cochain_strategy(d, n))) {
            let mut g = SymCochain::zero(f.arity(), f.dim());
            for m in multisets(f.dim(), f.arity()) {
                let args: Vec<Vec<Rational>> = m.iter().map(|&i| unit_vec(f.dim(), i)).collect();
                g.set_value(&m, &f.evaluate(&args).unwrap());
            }
            prop_assert_eq!(g, f.clone());
            prop_assert_eq!(SymCochain::from_json(&f.to_json()).unwrap(), f);
        }

        #[test]
        fn evaluate_is_slotwise_linear(
            f in cochain_strategy(2, 3),
            xs in proptest::collection::vec(-3i64..4, 8),
            s in -3i64..4,
        ) {
            let v = |o: usize| vec![rat(xs[o]), rat(xs[o + 1])];
            let (x, y, z, w) = (v(0), v(2), v(4), v(6));
            let sw: Vec<Rational> = x.iter().zip(&w).map(|(a, b)| a + rat(s) * b).collect();
            let lhs = f.evaluate(&[y.clone(), sw, z.clone()]).unwrap();
            let mut rhs = f.evaluate(&[y.clone(), x, z.clone()]).unwrap();
            add_scaled(&mut rhs, &rat(s), &f.evaluate(&[y.clone(), w, z.clone()]).unwrap());
            prop_assert_eq!(lhs, rhs);
            let p1 = f.evaluate(&[y.clone(), z.clone(), v(1)]).unwrap();
            let p2 = f.evaluate(&[v(1), y, z]).unwrap();
            prop_assert_eq!(p1, p2);
        }
    }
}
