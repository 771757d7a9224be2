//! The differential `d_μ = [μ, ·]` as matrices on the multiset basis, the
//! two explicit low-degree coboundary formulas, `d²` checks and cohomology
//! data.

use num_traits::One;
use serde::Serialize;

use crate::algebra::{Algebra, IdentityReport};
use crate::bracket::{compare_cochains, graded_bracket, InsertionMode};
use crate::cochain::{multisets, sym_basis_dim, SymCochain};
use crate::error::{Error, Result};
use crate::exactla::{self, add_scaled, ratio, zero_vec, Matrix, Rational};

/// The product of `a` as a cochain in `C^2`.
pub fn mu(a: &Algebra) -> SymCochain {
    SymCochain::from_algebra(a)
}

fn check_dim(a: &Algebra, f: &SymCochain) -> Result<()> {
    if f.dim() != a.dim() {
        return Err(Error::Dimension(format!(
            "cochain on dimension {} for an algebra of dimension {}",
            f.dim(),
            a.dim()
        )));
    }
    Ok(())
}

fn check_arity(f: &SymCochain, n: usize) -> Result<()> {
    if f.arity() != n {
        return Err(Error::Arity(format!("expected arity {n}, got {}", f.arity())));
    }
    Ok(())
}

/// `d_μ f = [μ, f]`.
pub fn differential(a: &Algebra, f: &SymCochain, mode: InsertionMode) -> Result<SymCochain> {
    check_dim(a, f)?;
    graded_bracket(&mu(a), f, mode)
}

/// `(d f)(x, y) = f(x∘y) − f(x)∘y − x∘f(y)`.
pub fn coboundary_c1_explicit(a: &Algebra, f: &SymCochain) -> Result<SymCochain> {
    check_dim(a, f)?;
    check_arity(f, 1)?;
    let d = a.dim();
    let mut out = SymCochain::zero(2, d);
    for m in multisets(d, 2) {
        let (x, y) = (a.basis(m[0]), a.basis(m[1]));
        let mut v = f.eval_unchecked(&[a.mul(&x, &y)]);
        let fx = f.eval_unchecked(&[&x]);
        let fy = f.eval_unchecked(&[&y]);
        add_scaled(&mut v, &-Rational::one(), &a.mul(&fx, &y));
        add_scaled(&mut v, &-Rational::one(), &a.mul(&x, &fy));
        out.set_value(&m, &v);
    }
    Ok(out)
}

/// `(d φ)(x, y, z) = Σ_cyc (μ(φ(x,y), z) − φ(μ(x,y), z))`.
pub fn coboundary_c2_explicit(a: &Algebra, phi: &SymCochain) -> Result<SymCochain> {
    check_dim(a, phi)?;
    check_arity(phi, 2)?;
    let d = a.dim();
    let mut out = SymCochain::zero(3, d);
    for m in multisets(d, 3) {
        let b = [a.basis(m[0]), a.basis(m[1]), a.basis(m[2])];
        let mut v = zero_vec(d);
        for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let pxy = phi.eval_unchecked(&[&b[x], &b[y]]);
            add_scaled(&mut v, &Rational::one(), &a.mul(&pxy, &b[z]));
            let mxy = a.mul(&b[x], &b[y]);
            add_scaled(&mut v, &-Rational::one(), &phi.eval_unchecked(&[&mxy, &b[z]]));
        }
        out.set_value(&m, &v);
    }
    Ok(out)
}

/// Matrix of a linear map `C^n → C^{n_out}` on the multiset bases.
pub fn operator_matrix(
    dim: usize,
    n: usize,
    n_out: usize,
    op: impl Fn(&SymCochain) -> Result<SymCochain>,
) -> Result<Matrix> {
    let cols = (0..sym_basis_dim(dim, n))
        .map(|j| {
            let img = op(&SymCochain::basis(n, dim, j))?;
            if img.arity() != n_out {
                return Err(Error::Invariant(format!(
                    "operator produced arity {}, expected {n_out}",
                    img.arity()
                )));
            }
            Ok(img.coeff_vec().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(sym_basis_dim(dim, n_out), &cols)
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferentialData {
    pub mode: InsertionMode,
    pub degree: usize,
    pub matrix: Matrix,
}

/// Matrix of `d_μ : C^n → C^{n+1}`; column `j` holds the coefficients of the
/// differential of basis cochain `j`.
pub fn differential_matrix(a: &Algebra, n: usize, mode: InsertionMode) -> DifferentialData {
    let m = mu(a);
    let matrix = operator_matrix(a.dim(), n, n + 1, |f| graded_bracket(&m, f, mode))
        .expect("bracket with μ raises arity by one");
    DifferentialData { mode, degree: n, matrix }
}

pub fn explicit_c1_matrix(a: &Algebra) -> Matrix {
    operator_matrix(a.dim(), 1, 2, |f| coboundary_c1_explicit(a, f)).expect("arity 1 → 2")
}

pub fn explicit_c2_matrix(a: &Algebra) -> Matrix {
    operator_matrix(a.dim(), 2, 3, |f| coboundary_c2_explicit(a, f)).expect("arity 2 → 3")
}

/// Human-readable name of basis cochain `j` of `C^n`.
pub fn basis_label(a: &Algebra, n: usize, j: usize) -> String {
    let d = a.dim();
    let m = &multisets(d, n)[j / d];
    let args: Vec<&str> = m.iter().map(|&i| a.labels()[i].as_str()).collect();
    format!("basis cochain ({}) -> {}", args.join(","), a.labels()[j % d])
}

/// `½[[μ,μ], f]`.
pub fn half_ad_mumu(a: &Algebra, f: &SymCochain, mode: InsertionMode) -> Result<SymCochain> {
    let m = mu(a);
    let mm = graded_bracket(&m, &m, mode)?;
    Ok(graded_bracket(&mm, f, mode)?.scale(&ratio(1, 2)))
}

#[derive(Clone, Debug, Serialize)]
pub struct DSquaredReport {
    pub degree: usize,
    pub mode: InsertionMode,
    /// `d∘d` equals `f ↦ ½[[μ,μ],f]` on `C^n`.
    pub equal: IdentityReport,
    pub d_squared_zero: bool,
    pub half_ad_zero: bool,
}

/// Compares `d_{n+1} d_n` with the matrix of `f ↦ ½[[μ,μ],f]` on `C^n`.
pub fn check_d_squared(a: &Algebra, n: usize, mode: InsertionMode) -> DSquaredReport {
    let d0 = differential_matrix(a, n, mode).matrix;
    let d1 = differential_matrix(a, n + 1, mode).matrix;
    let dd = d1.mul(&d0).expect("composable");
    let half_ad = operator_matrix(a.dim(), n, n + 2, |f| half_ad_mumu(a, f, mode)).expect("arity n → n+2");
    let equal = if dd == half_ad {
        IdentityReport::holds()
    } else {
        let j = (0..dd.cols()).find(|&j| dd.column(j) != half_ad.column(j)).expect("columns differ");
        let left = SymCochain::from_coeff_vec(n + 2, a.dim(), dd.column(j)).expect("shape");
        let right = SymCochain::from_coeff_vec(n + 2, a.dim(), half_ad.column(j)).expect("shape");
        let mut w = compare_cochains("", &left, &right, 1).pop().expect("differ");
        w.label = format!("d∘d vs ½[[μ,μ],f] at f = {}", basis_label(a, n, j));
        IdentityReport::fails(w)
    };
    DSquaredReport { degree: n, mode, equal, d_squared_zero: dd.is_zero(), half_ad_zero: half_ad.is_zero() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub degree: usize,
    pub mode: InsertionMode,
    pub dim_cochains: usize,
    pub dim_kernel: usize,
    pub dim_image_from_below: usize,
    /// Whether `d_n ∘ d_{n−1} = 0`.
    pub complex_valid: bool,
    #[serde(rename = "dim_H")]
    pub dim_h: Option<usize>,
    /// Rank of `d_n ∘ d_{n−1}`.
    pub defect_rank: usize,
}

pub fn cohomology(a: &Algebra, n: usize, mode: InsertionMode) -> CohomologyReport {
    let dn = differential_matrix(a, n, mode).matrix;
    let dim_kernel = dn.cols() - exactla::rank(&dn);
    let (dim_image_from_below, defect_rank) = if n == 0 {
        (0, 0)
    } else {
        let below = differential_matrix(a, n - 1, mode).matrix;
        let comp = dn.mul(&below).expect("composable");
        (exactla::rank(&below), exactla::rank(&comp))
    };
    let complex_valid = defect_rank == 0;
    CohomologyReport {
        degree: n,
        mode,
        dim_cochains: sym_basis_dim(a.dim(), n),
        dim_kernel,
        dim_image_from_below,
        complex_valid,
        dim_h: complex_valid.then(|| dim_kernel - dim_image_from_below),
        defect_rank,
    }
}

/// Basis of the derivations `f(x∘y) = f(x)∘y + x∘f(y)`, as endomorphism
/// matrices (column `i` is the image of `b_i`).
pub fn derivations(a: &Algebra) -> Vec<Matrix> {
    exactla::kernel_basis(&explicit_c1_matrix(a))
        .into_iter()
        .map(|v| {
            SymCochain::from_coeff_vec(1, a.dim(), v)
                .and_then(|c| c.to_endomorphism())
                .expect("C^1 coordinates")
        })
        .collect()
}

/// Witness-producing comparison for two cochain-valued routes.
pub fn compare_report(label: &str, left: &SymCochain, right: &SymCochain) -> IdentityReport {
    match compare_cochains(label, left, right, 1).pop() {
        Some(w) => IdentityReport::fails(w),
        None => IdentityReport::holds(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactla::{rat, unit_vec};

    #[test]
    fn differential_on_constants_is_left_multiplication() {
        let a = corpus::make_j2(rat(1), rat(0));
        let v = vec![rat(3), rat(-2)];
        for mode in InsertionMode::ALL {
            let dv = differential(&a, &SymCochain::constant(&v), mode).unwrap();
            assert_eq!(dv.to_endomorphism().unwrap(), a.multiplication_operator(&v).unwrap());
        }
    }

    #[test]
    fn differential_of_identity() {
        let a = corpus::make_spin(&[rat(1), rat(3)]);
        let m = mu(&a);
        let id = SymCochain::identity(a.dim());
        // Sum mode: μ∘id = 2μ, id∘μ = μ.
        assert_eq!(differential(&a, &id, InsertionMode::Sum).unwrap(), m);
        // Averaged mode: μ∘id = 2μ, id∘μ = μ/2.
        assert_eq!(differential(&a, &id, InsertionMode::Paper).unwrap(), m.scale(&ratio(3, 2)));
    }

    #[test]
    fn sum_mode_c1_differential_is_negated_explicit_formula() {
        for e in corpus::corpus() {
            let a = &e.algebra;
            let dm = differential_matrix(a, 1, InsertionMode::Sum).matrix;
            assert_eq!(dm, explicit_c1_matrix(a).scale(&rat(-1)), "{}", e.name);
        }
    }

    #[test]
    fn explicit_c1_on_j2_generic_entries() {
        // a = 3, b = -2, α = 1, β = 2, γ = -1, δ = 5.
        let (pa, pb) = (rat(3), rat(-2));
        let a = corpus::make_j2(pa.clone(), pb.clone());
        let (al, be, ga, de) = (rat(1), rat(2), rat(-1), rat(5));
        let f = SymCochain::from_endomorphism(&Matrix::from_rows(vec![
            vec![al.clone(), ga.clone()],
            vec![be.clone(), de.clone()],
        ]).unwrap())
        .unwrap();
        let df = coboundary_c1_explicit(&a, &f).unwrap();
        assert_eq!(df.value_at_basis(&[0, 0]), &[-al.clone(), -be.clone()][..]);
        // (e,u): −f(e)∘u = −(α u + β(a e + b u)).
        assert_eq!(df.value_at_basis(&[0, 1]), &[-&be * &pa, -(&al + &be * &pb)][..]);
        let uu_e = &pa * &al + &pb * &ga - rat(2) * &pa * &de;
        let uu_u = &pa * &be - &pb * &de - rat(2) * &ga;
        assert_eq!(df.value_at_basis(&[1, 1]), &[uu_e, uu_u][..]);
        assert!(coboundary_c1_explicit(&a, &SymCochain::zero(1, 2)).unwrap().is_zero());
        assert!(coboundary_c1_explicit(&a, &mu(&a)).is_err());
    }

    #[test]
    fn explicit_c2_on_j2() {
        let (pa, pb) = (rat(2), rat(7));
        let a = corpus::make_j2(pa.clone(), pb.clone());
        let (x1, x2, y1, y2, z1, z2) = (rat(1), rat(-3), rat(4), rat(5), rat(-2), rat(6));
        let mut phi = SymCochain::zero(2, 2);
        phi.set_value(&[0, 0], &[x1.clone(), x2.clone()]);
        phi.set_value(&[0, 1], &[y1.clone(), y2.clone()]);
        phi.set_value(&[1, 1], &[z1, z2]);
        let dphi = coboundary_c2_explicit(&a, &phi).unwrap();
        assert_eq!(dphi.value_at_basis(&[0, 0, 1]), &[&pa * &x2 - &y1, &x1 + &pb * &x2 - &y2][..]);
        assert!(coboundary_c2_explicit(&a, &mu(&a)).unwrap().is_zero());
        assert!(coboundary_c2_explicit(&a, &SymCochain::zero(2, 2)).unwrap().is_zero());
    }

    #[test]
    fn matrix_shapes_and_zero_product() {
        let a = corpus::make_j2(rat(1), rat(0));
        let d1 = differential_matrix(&a, 1, InsertionMode::Sum).matrix;
        assert_eq!((d1.rows(), d1.cols()), (6, 4));
        assert_eq!(exactla::rank(&differential_matrix(&a, 0, InsertionMode::Sum).matrix), 2);
        let z = Algebra::zero_product(2).unwrap();
        for n in 0..3 {
            assert!(differential_matrix(&z, n, InsertionMode::Paper).matrix.is_zero());
        }
    }

    #[test]
    fn matrix_agrees_with_action() {
        let a = corpus::make_spin(&[rat(1), rat(-1)]);
        let f = SymCochain::from_coeff_vec(2, 3, (0..18).map(|i| ratio(i * 7 % 5 - 2, 1 + i % 3)).collect()).unwrap();
        for mode in InsertionMode::ALL {
            let m = differential_matrix(&a, 2, mode).matrix;
            assert_eq!(m.mul_vec(f.coeff_vec()).unwrap(), differential(&a, &f, mode).unwrap().coeff_vec());
        }
    }

    #[test]
    fn d_squared_zero_product() {
        let z = Algebra::zero_product(2).unwrap();
        let r = check_d_squared(&z, 1, InsertionMode::Sum);
        assert!(r.equal.holds && r.d_squared_zero && r.half_ad_zero);
    }

    #[test]
    fn self_bracket_witness_on_j2() {
        let a = corpus::make_j2(rat(1), rat(0));
        let m = mu(&a);
        let mm = graded_bracket(&m, &m, InsertionMode::Sum).unwrap();
        assert_eq!(mm.value_at_basis(&[1, 1, 1]), &[rat(0), rat(6)][..]);
        assert!(!check_d_squared(&a, 1, InsertionMode::Sum).d_squared_zero);
    }

    #[test]
    fn cohomology_examples() {
        let z = Algebra::zero_product(2).unwrap();
        let r = cohomology(&z, 2, InsertionMode::Sum);
        assert_eq!((r.dim_kernel, r.dim_image_from_below, r.complex_valid, r.dim_h), (6, 0, true, Some(6)));

        let a = corpus::make_j2(rat(1), rat(0));
        for mode in InsertionMode::ALL {
            let r = cohomology(&a, 1, mode);
            assert_eq!(r.dim_kernel, 0);
            assert!(!r.complex_valid);
            assert!(r.defect_rank > 0);
            assert_eq!(r.dim_h, None);
            let dn = differential_matrix(&a, 1, mode).matrix;
            assert_eq!(r.dim_kernel + exactla::rank(&dn), sym_basis_dim(2, 1));
        }
    }

    #[test]
    fn derivation_dimensions() {
        assert!(derivations(&corpus::make_j2(rat(1), rat(0))).is_empty());
        assert!(derivations(&corpus::make_field()).is_empty());
        let a = corpus::make_j2(rat(-1), rat(2));
        let ds = derivations(&a);
        assert_eq!(ds.len(), 1);
        let f = SymCochain::from_endomorphism(&ds[0]).unwrap();
        assert!(coboundary_c1_explicit(&a, &f).unwrap().is_zero());
        let u = unit_vec(2, 1);
        assert_eq!(f.evaluate(&[unit_vec(2, 0)]).unwrap(), zero_vec(2));
        assert_ne!(f.evaluate(&[u]).unwrap(), zero_vec(2));
    }
}
