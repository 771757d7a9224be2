//! Finite-dimensional commutative algebras given by structure constants, and
//! exact checkers for the cubic Jordan identity and two related identities.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{
    self, add_scaled, format_vec, is_zero_vec, rational_string, unit_vec, zero_vec, Matrix,
    Rational,
};

/// `basis_i ∘ basis_j = Σ_k sc[i][j][k] basis_k`, stored flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    labels: Vec<String>,
    sc: Vec<Rational>,
}

impl Algebra {
    /// Builds an algebra from a full `d × d × d` table, rejecting
    /// non-commutative tables.
    pub fn new(labels: Vec<String>, sc: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::Input("algebra dimension must be at least 1".into()));
        }
        if sc.len() != dim || sc.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
            return Err(Error::Dimension(format!("structure constants must be {dim}x{dim}x{dim}")));
        }
        let flat: Vec<Rational> = sc.into_iter().flatten().flatten().collect();
        Self::from_flat(labels, flat)
    }

    pub(crate) fn from_flat(labels: Vec<String>, sc: Vec<Rational>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::Input("algebra dimension must be at least 1".into()));
        }
        debug_assert_eq!(sc.len(), dim * dim * dim);
        let a = Algebra { dim, labels, sc };
        for i in 0..dim {
            for j in i + 1..dim {
                for k in 0..dim {
                    if a.c(i, j, k) != a.c(j, i, k) {
                        return Err(Error::Input(format!(
                            "product is not commutative: c[{i}][{j}][{k}] = {} but c[{j}][{i}][{k}] = {}",
                            exactla::format_rational(a.c(i, j, k)),
                            exactla::format_rational(a.c(j, i, k)),
                        )));
                    }
                }
            }
        }
        Ok(a)
    }

    /// The algebra of dimension `dim` with identically zero product.
    pub fn zero_product(dim: usize) -> Result<Self> {
        let labels = (0..dim).map(|i| format!("b{i}")).collect();
        Self::from_flat(labels, zero_vec(dim * dim * dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.sc[(i * self.dim + j) * self.dim + k]
    }

    /// `basis_i ∘ basis_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.sc[start..start + self.dim]
    }

    pub fn basis(&self, i: usize) -> Vec<Rational> {
        unit_vec(self.dim, i)
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!(
                "vector of length {} in an algebra of dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    /// Unchecked bilinear product used internally.
    pub(crate) fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                add_scaled(&mut out, &(xi * yj), self.basis_product(i, j));
            }
        }
        out
    }

    /// Matrix of `x ↦ x ∘ v`.
    pub fn multiplication_operator(&self, v: &[Rational]) -> Result<Matrix> {
        self.check_len(v)?;
        let cols: Vec<_> = (0..self.dim).map(|i| self.mul(&self.basis(i), v)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Solves `L_e = id` for `e`; returns it when the solution exists.
    ///
    /// The map `v ↦ L_v` is linear, so the conditions `e ∘ b_i = b_i` form a
    /// `d² × d` linear system in the coordinates of `e`. A solution is unique
    /// whenever it exists, because two units `e, e'` satisfy `e = e ∘ e' = e'`.
    pub fn find_unit(&self) -> Option<Vec<Rational>> {
        let d = self.dim;
        let mut m = Matrix::zeros(d * d, d);
        let mut rhs = zero_vec(d * d);
        for i in 0..d {
            for k in 0..d {
                let row = i * d + k;
                for l in 0..d {
                    m[(row, l)] = self.c(l, i, k).clone();
                }
                if i == k {
                    rhs[row] = Rational::one();
                }
            }
        }
        exactla::solve(&m, &rhs).expect("shapes agree")
    }

    pub fn is_zero_product(&self) -> bool {
        is_zero_vec(&self.sc)
    }
}

/// A failing instance of an identity: the inputs and the two unequal sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    #[serde(with = "vec_of_vecs")]
    pub inputs: Vec<Vec<Rational>>,
    #[serde(with = "vec_of_rationals")]
    pub left: Vec<Rational>,
    #[serde(with = "vec_of_rationals")]
    pub right: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl IdentityReport {
    pub fn holds() -> Self {
        IdentityReport { holds: true, witness: None }
    }

    pub fn fails(witness: Witness) -> Self {
        IdentityReport { holds: false, witness: Some(witness) }
    }
}

pub(crate) mod vec_of_rationals {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        format_vec(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| exactla::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub(crate) mod vec_of_vecs {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|x| format_vec(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| exactla::parse_rational(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Sides of the Jordan identity `(x∘y)∘(x∘x) = x∘(y∘(x∘x))`.
pub fn cubic_sides(a: &Algebra, x: &[Rational], y: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let xx = a.mul(x, x);
    (a.mul(&a.mul(x, y), &xx), a.mul(x, &a.mul(y, &xx)))
}

/// Sides of the variant `(x∘x)∘(y∘x) = x∘(x∘(y∘x))`. It implies the Jordan
/// identity for commutative products but is strictly stronger: spin factors
/// satisfy the Jordan identity and fail this one.
pub fn printed_cubic_sides(a: &Algebra, x: &[Rational], y: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let xx = a.mul(x, x);
    let yx = a.mul(y, x);
    (a.mul(&xx, &yx), a.mul(x, &a.mul(x, &yx)))
}

/// Sides of the operator identity `(x∘x)∘y = x∘(x∘y)`.
pub fn operator_sides(a: &Algebra, x: &[Rational], y: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    (a.mul(&a.mul(x, x), y), a.mul(x, &a.mul(x, y)))
}

/// `A(x,y,z) = (x∘y)∘z − x∘(y∘z)`.
pub fn associator(a: &Algebra, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
    sub(&a.mul(&a.mul(x, y), z), &a.mul(x, &a.mul(y, z)))
}

/// Cyclic sum `A(x,y,z) + A(y,z,x) + A(z,x,y)`.
pub fn six_term(a: &Algebra, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
    let mut out = associator(a, x, y, z);
    for (p, q, r) in [(y, z, x), (z, x, y)] {
        add_scaled(&mut out, &Rational::one(), &associator(a, p, q, r));
    }
    out
}

/// Searches for a concrete `(x, y)` where `sides` disagree: basis pairs
/// first, then `x` over the coefficient grid `{0,1,2,3}^d` with basis `y`.
///
/// Both identities are linear in `y` and of degree at most 3 in `x`, so a
/// nonzero polynomial identity always has a failing point on that grid.
fn search_witness(
    a: &Algebra,
    label: &str,
    sides: impl Fn(&Algebra, &[Rational], &[Rational]) -> (Vec<Rational>, Vec<Rational>),
) -> Option<Witness> {
    let d = a.dim;
    let try_pair = |x: Vec<Rational>, y: Vec<Rational>| {
        let (l, r) = sides(a, &x, &y);
        (l != r).then(|| Witness { label: label.to_string(), inputs: vec![x, y], left: l, right: r })
    };
    for i in 0..d {
        for j in 0..d {
            if let Some(w) = try_pair(a.basis(i), a.basis(j)) {
                return Some(w);
            }
        }
    }
    let mut digits = vec![0i64; d];
    loop {
        let mut pos = 0;
        while pos < d && digits[pos] == 3 {
            digits[pos] = 0;
            pos += 1;
        }
        if pos == d {
            return None;
        }
        digits[pos] += 1;
        let x: Vec<Rational> = digits.iter().map(|&c| exactla::rat(c)).collect();
        for j in 0..d {
            if let Some(w) = try_pair(x.clone(), a.basis(j)) {
                return Some(w);
            }
        }
    }
}

fn for_each_tuple(d: usize, len: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut t = vec![0usize; len];
    loop {
        if !f(&t) {
            return;
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < d {
                break;
            }
            t[pos] = 0;
        }
    }
}

type Sides = fn(&Algebra, &[Rational], &[Rational]) -> (Vec<Rational>, Vec<Rational>);

/// One ordered term of a polarized cubic identity: both sides with their
/// three `x` occurrences (left to right) replaced by `x1, x2, x3`.
type PolarizedSides =
    fn(&Algebra, &[Rational], &[Rational], &[Rational], &[Rational]) -> (Vec<Rational>, Vec<Rational>);

fn jordan_term(a: &Algebra, x1: &[Rational], x2: &[Rational], x3: &[Rational], y: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let x23 = a.mul(x2, x3);
    (a.mul(&a.mul(x1, y), &x23), a.mul(x1, &a.mul(y, &x23)))
}

fn printed_term(a: &Algebra, x1: &[Rational], x2: &[Rational], x3: &[Rational], y: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let yx3 = a.mul(y, x3);
    (a.mul(&a.mul(x1, x2), &yx3), a.mul(x1, &a.mul(x2, &yx3)))
}

/// Checks a cubic identity (degree 3 in `x`, linear in `y`) through its full
/// polarization in `x`, on every basis 4-tuple `(x1, x2, x3, y)`. Over the
/// rationals the polarized form vanishes iff the cubic one does.
fn check_polarized_cubic(a: &Algebra, label: &str, term: PolarizedSides, sides: Sides) -> IdentityReport {
    let d = a.dim;
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut fails = false;
    for_each_tuple(d, 4, |t| {
        let y = a.basis(t[3]);
        let mut acc = zero_vec(d);
        for p in &perms {
            let (x1, x2, x3) = (a.basis(t[p[0]]), a.basis(t[p[1]]), a.basis(t[p[2]]));
            let (l, r) = term(a, &x1, &x2, &x3, &y);
            add_scaled(&mut acc, &Rational::one(), &sub(&l, &r));
        }
        fails = !is_zero_vec(&acc);
        !fails
    });
    if !fails {
        return IdentityReport::holds();
    }
    let w = search_witness(a, label, sides).expect("a nonzero cubic form has a failing grid point");
    IdentityReport::fails(w)
}

/// The Jordan identity `(x∘y)∘(x∘x) = x∘(y∘(x∘x))`, checked exactly through
/// its complete polarization in `x`.
pub fn check_cubic_jordan(a: &Algebra) -> IdentityReport {
    check_polarized_cubic(a, "(x∘y)∘(x∘x) = x∘(y∘(x∘x))", jordan_term, cubic_sides)
}

/// The variant `(x∘x)∘(y∘x) = x∘(x∘(y∘x))`, checked the same way.
pub fn check_printed_cubic(a: &Algebra) -> IdentityReport {
    check_polarized_cubic(a, "(x∘x)∘(y∘x) = x∘(x∘(y∘x))", printed_term, printed_cubic_sides)
}

/// Cyclic six-term associator sum on every basis triple.
pub fn check_six_term(a: &Algebra) -> IdentityReport {
    let d = a.dim;
    let mut found = None;
    for_each_tuple(d, 3, |t| {
        let (x, y, z) = (a.basis(t[0]), a.basis(t[1]), a.basis(t[2]));
        let v = six_term(a, &x, &y, &z);
        if !is_zero_vec(&v) {
            found = Some(Witness {
                label: "A(x,y,z)+A(y,z,x)+A(z,x,y) = 0".into(),
                inputs: vec![x, y, z],
                left: v,
                right: zero_vec(d),
            });
            return false;
        }
        true
    });
    found.map_or_else(IdentityReport::holds, IdentityReport::fails)
}

/// `L_{x∘x} = L_x L_x`, polarized in `x`: `(x1∘x2)∘y = ½(x1∘(x2∘y) + x2∘(x1∘y))`.
pub fn check_operator_identity(a: &Algebra) -> IdentityReport {
    let d = a.dim;
    let mut fails = false;
    for_each_tuple(d, 3, |t| {
        let (x1, x2, y) = (a.basis(t[0]), a.basis(t[1]), a.basis(t[2]));
        let lhs = a.mul(&a.mul(&x1, &x2), &y);
        let mut rhs = a.mul(&x1, &a.mul(&x2, &y));
        add_scaled(&mut rhs, &Rational::one(), &a.mul(&x2, &a.mul(&x1, &y)));
        let two_lhs: Vec<Rational> = lhs.iter().map(|v| v * exactla::rat(2)).collect();
        fails = two_lhs != rhs;
        !fails
    });
    if !fails {
        return IdentityReport::holds();
    }
    let w = search_witness(a, "(x∘x)∘y = x∘(x∘y)", operator_sides)
        .expect("a nonzero quadratic form has a failing grid point");
    IdentityReport::fails(w)
}

/// On-disk algebra format.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub labels: Vec<String>,
    pub sc: Vec<ScEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    #[serde(with = "rational_string")]
    pub c: Rational,
}

impl Algebra {
    pub fn to_file(&self) -> AlgebraFile {
        let d = self.dim;
        let mut sc = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        sc.push(ScEntry { i, j, k, c: c.clone() });
                    }
                }
            }
        }
        AlgebraFile { dim: d, labels: self.labels.clone(), sc }
    }

    pub fn from_file(file: AlgebraFile) -> Result<Self> {
        let d = file.dim;
        if d == 0 {
            return Err(Error::Input("algebra dimension must be at least 1".into()));
        }
        if file.labels.len() != d {
            return Err(Error::Input(format!("{} labels for dimension {d}", file.labels.len())));
        }
        let mut sc = zero_vec(d * d * d);
        let mut seen = vec![false; d * d * d];
        for e in file.sc {
            if e.i >= d || e.j >= d || e.k >= d {
                return Err(Error::Input(format!("index ({}, {}, {}) out of range", e.i, e.j, e.k)));
            }
            let idx = (e.i * d + e.j) * d + e.k;
            if seen[idx] {
                return Err(Error::Input(format!("duplicate entry ({}, {}, {})", e.i, e.j, e.k)));
            }
            seen[idx] = true;
            sc[idx] = e.c;
        }
        Self::from_flat(file.labels, sc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: AlgebraFile =
            serde_json::from_str(s).map_err(|e| Error::Input(format!("algebra file: {e}")))?;
        Self::from_file(file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactla::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn j2_products() {
        let a = corpus::make_j2(rat(1), rat(0));
        let (e, u) = (a.basis(0), a.basis(1));
        assert_eq!(a.product(&u, &u).unwrap(), e);
        assert_eq!(a.product(&e, &u).unwrap(), u);
        assert!(a.product(&e, &[rat(1)]).is_err());
    }

    #[test]
    fn non_jordan_products() {
        let a = corpus::make_non_jordan();
        let (v, w) = (a.basis(0), a.basis(1));
        assert!(is_zero_vec(&a.product(&v, &w).unwrap()));
        assert_eq!(a.product(&v, &v).unwrap(), w);
    }

    #[test]
    fn units() {
        let a = corpus::make_j2(ratio(2, 3), rat(-5));
        assert_eq!(a.find_unit(), Some(a.basis(0)));
        assert_eq!(corpus::make_non_jordan().find_unit(), None);
        assert_eq!(corpus::make_field().find_unit(), Some(vec![rat(1)]));
        assert_eq!(corpus::make_spin(&[rat(1), rat(1)]).find_unit(), Some(unit_vec(3, 0)));
    }

    // The non-Jordan algebra has no unit: e = p v + q w with e∘v = v needs
    // p w = v, impossible.
    #[test]
    fn non_jordan_unit_system_by_hand() {
        // e∘v = p w, e∘w = q v; unit requires p w = v and q v = w.
        let m = Matrix::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[0, 0]]);
        let rhs = [rat(1), rat(0), rat(0), rat(1)];
        assert_eq!(exactla::solve(&m, &rhs).unwrap(), None);
    }

    #[test]
    fn multiplication_operators() {
        let a = corpus::make_j2(rat(1), rat(0));
        assert_eq!(a.multiplication_operator(&a.basis(0)).unwrap(), Matrix::identity(2));
        assert_eq!(a.multiplication_operator(&a.basis(1)).unwrap(), Matrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert!(a.multiplication_operator(&zero_vec(2)).unwrap().is_zero());
    }

    #[test]
    fn cubic_checker_verdicts() {
        for a in [
            corpus::make_j2(rat(1), rat(0)),
            corpus::make_j2(rat(0), rat(0)),
            corpus::make_j2(rat(2), rat(3)),
            corpus::make_spin(&[rat(1), rat(1)]),
            corpus::make_field(),
        ] {
            assert!(check_cubic_jordan(&a).holds);
        }
        let nj = corpus::make_non_jordan();
        let r = check_cubic_jordan(&nj);
        let w = r.witness.expect("fails");
        assert_eq!(w.inputs, vec![nj.basis(0), nj.basis(0)]);
        assert_eq!(w.left, nj.basis(0));
        assert_eq!(w.right, zero_vec(2));
    }

    #[test]
    fn printed_variant_separates_spin_factor() {
        let s = corpus::make_spin(&[rat(1), rat(1)]);
        let w = check_printed_cubic(&s).witness.expect("spin factor fails the variant");
        let (l, r) = printed_cubic_sides(&s, &w.inputs[0], &w.inputs[1]);
        assert_eq!((l, r), (w.left, w.right));
        assert!(check_printed_cubic(&corpus::make_j2(rat(3), rat(-1))).holds);
        assert!(!check_printed_cubic(&corpus::make_non_jordan()).holds);
    }

    #[test]
    fn six_term_is_identically_zero() {
        for a in [
            corpus::make_j2(rat(1), rat(0)),
            corpus::make_non_jordan(),
            corpus::make_spin(&[rat(1), rat(1)]),
        ] {
            assert!(check_six_term(&a).holds);
        }
    }

    #[test]
    fn operator_identity_verdicts() {
        assert!(check_operator_identity(&corpus::make_j2(rat(1), rat(0))).holds);
        assert!(check_operator_identity(&corpus::make_field()).holds);
        let s = corpus::make_spin(&[rat(1), rat(1)]);
        let w = check_operator_identity(&s).witness.expect("fails on the spin factor");
        assert_eq!(w.inputs, vec![s.basis(1), s.basis(2)]);
        assert_eq!(w.left, s.basis(2));
        assert_eq!(w.right, zero_vec(3));
    }

    #[test]
    fn loader_rejects_noncommutative() {
        let json = r#"{"dim":2,"labels":["a","b"],"sc":[{"i":0,"j":1,"k":0,"c":"1"}]}"#;
        assert!(matches!(Algebra::from_json(json), Err(Error::Input(_))));
        let dup = r#"{"dim":1,"labels":["a"],"sc":[{"i":0,"j":0,"k":0,"c":"1"},{"i":0,"j":0,"k":0,"c":"2"}]}"#;
        assert!(Algebra::from_json(dup).is_err());
        let bad = r#"{"dim":1,"labels":["a"],"sc":[{"i":0,"j":0,"k":3,"c":"1"}]}"#;
        assert!(Algebra::from_json(bad).is_err());
    }

    fn random_algebra() -> impl Strategy<Value = Algebra> {
        (1usize..4).prop_flat_map(|d| {
            proptest::collection::vec(-2i64..3, d * d * d).prop_map(move |xs| {
                let mut sc = zero_vec(d * d * d);
                for i in 0..d {
                    for j in i..d {
                        for k in 0..d {
                            let c = rat(xs[(i * d + j) * d + k]);
                            sc[(i * d + j) * d + k] = c.clone();
                            sc[(j * d + i) * d + k] = c;
                        }
                    }
                }
                Algebra::from_flat((0..d).map(|i| format!("b{i}")).collect(), sc).unwrap()
            })
        })
    }

    fn vec_for(d: usize, seed: &[i64], shift: usize) -> Vec<Rational> {
        (0..d).map(|i| ratio(seed[(i + shift) % seed.len()], 1 + (i as i64 % 2))).collect()
    }

    proptest! {
        #[test]
        fn product_symmetric_bilinear(a in random_algebra(), seed in proptest::collection::vec(-4i64..5, 8)) {
            let d = a.dim();
            let (x, y, z) = (vec_for(d, &seed, 0), vec_for(d, &seed, 3), vec_for(d, &seed, 5));
            prop_assert_eq!(a.product(&x, &y).unwrap(), a.product(&y, &x).unwrap());
            let s = ratio(seed[1], 3);
            let xz: Vec<Rational> = x.iter().zip(&z).map(|(p, q)| p + &s * q).collect();
            let mut expect = a.product(&x, &y).unwrap();
            add_scaled(&mut expect, &s, &a.product(&z, &y).unwrap());
            prop_assert_eq!(a.product(&xz, &y).unwrap(), expect);
        }

        #[test]
        fn six_term_vanishes_for_commutative(a in random_algebra()) {
            prop_assert!(check_six_term(&a).holds);
        }

        #[test]
        fn round_trip_file(a in random_algebra()) {
            prop_assert_eq!(Algebra::from_json(&a.to_json()).unwrap(), a);
        }
    }

    #[test]
    fn cubic_checker_matches_direct_evaluation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let algebras = [
            corpus::make_j2(rat(1), rat(0)),
            corpus::make_non_jordan(),
            corpus::make_spin(&[rat(1), rat(2)]),
            Algebra::from_flat(
                vec!["p".into(), "q".into()],
                vec![rat(1), rat(0), rat(0), rat(1), rat(0), rat(1), rat(1), rat(0)],
            )
            .unwrap(),
        ];
        for a in &algebras {
            let polarized = check_cubic_jordan(a).holds;
            let mut direct = true;
            for _ in 0..100 {
                let mut r = || -> Vec<Rational> {
                    (0..a.dim()).map(|_| ratio(rng.gen_range(-5..6), rng.gen_range(1..4))).collect()
                };
                let (x, y) = (r(), r());
                let (l, rr) = cubic_sides(a, &x, &y);
                direct &= l == rr;
            }
            assert_eq!(polarized, direct);
        }
    }
}
