//! Maurer–Cartan residuals, order-by-order solving, obstruction classes and
//! gauge transport by truncated exponentials.
//!
//! Series are indexed from 1: `μ_t = μ + Σ_{i≥1} t^i φ_i`. The order-`n`
//! residual pairs only indices `i, j ≥ 1`; the `i = 0` terms are the
//! differential `d_μ φ_n`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::bracket::{graded_bracket, InsertionMode};
use crate::cochain::{multisets, CochainFile, CoeffEntry, SymCochain};
use crate::complex::{coboundary_c1_explicit, differential, differential_matrix, explicit_c1_matrix, mu};
use crate::error::{Error, Result};
use crate::exactla::{self, add_scaled, format_vec, rat, ratio, zero_vec, Matrix, Rational};

fn check_terms(dim: usize, arity: usize, terms: &[SymCochain]) -> Result<()> {
    for (i, t) in terms.iter().enumerate() {
        if t.arity() != arity || t.dim() != dim {
            return Err(Error::Arity(format!(
                "series term of order {} is C^{} on dimension {}, expected C^{arity} on dimension {dim}",
                i + 1,
                t.arity(),
                t.dim()
            )));
        }
    }
    Ok(())
}

/// `μ + t φ_1 + … + t^N φ_N` over a base algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationSeries {
    base: Algebra,
    terms: Vec<SymCochain>,
    mode: InsertionMode,
}

impl DeformationSeries {
    pub fn new(base: Algebra, terms: Vec<SymCochain>, mode: InsertionMode) -> Result<Self> {
        check_terms(base.dim(), 2, &terms)?;
        Ok(DeformationSeries { base, terms, mode })
    }

    /// The undeformed product.
    pub fn trivial(base: Algebra, mode: InsertionMode) -> Self {
        DeformationSeries { base, terms: Vec::new(), mode }
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[SymCochain] {
        &self.terms
    }

    pub fn mode(&self) -> InsertionMode {
        self.mode
    }

    /// `φ_i`, with `φ_0 = μ` and zero beyond the stored order.
    pub fn term(&self, i: usize) -> SymCochain {
        match i {
            0 => mu(&self.base),
            _ => self.terms.get(i - 1).cloned().unwrap_or_else(|| SymCochain::zero(2, self.base.dim())),
        }
    }

    pub fn push(&mut self, phi: SymCochain) -> Result<()> {
        check_terms(self.base.dim(), 2, std::slice::from_ref(&phi))?;
        self.terms.push(phi);
        Ok(())
    }

    pub fn to_entries(&self) -> Vec<SeriesEntry> {
        SeriesEntry::from_terms(&self.terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_entries()).expect("serializable")
    }

    pub fn from_json(base: Algebra, s: &str, mode: InsertionMode) -> Result<Self> {
        let terms = parse_series(s, base.dim(), 2)?;
        Self::new(base, terms, mode)
    }
}

/// `T_t = exp(t f_1 + … + t^N f_N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeSeries {
    terms: Vec<SymCochain>,
}

impl GaugeSeries {
    pub fn new(terms: Vec<SymCochain>) -> Result<Self> {
        if let Some(d) = terms.first().map(SymCochain::dim) {
            check_terms(d, 1, &terms)?;
        }
        Ok(GaugeSeries { terms })
    }

    pub fn identity(order: usize, dim: usize) -> Self {
        GaugeSeries { terms: vec![SymCochain::zero(1, dim); order] }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[SymCochain] {
        &self.terms
    }

    /// `exp(−X)` is the formal inverse of `exp(X)`.
    pub fn inverse(&self) -> Self {
        GaugeSeries { terms: self.terms.iter().map(|f| f.scale(&rat(-1))).collect() }
    }

    fn generator(&self, i: usize, dim: usize) -> Result<Matrix> {
        match self.terms.get(i.wrapping_sub(1)) {
            Some(f) if i >= 1 => {
                if f.dim() != dim {
                    return Err(Error::Dimension(format!(
                        "gauge term on dimension {}, algebra of dimension {dim}",
                        f.dim()
                    )));
                }
                f.to_endomorphism()
            }
            _ => Ok(Matrix::zeros(dim, dim)),
        }
    }

    /// Coefficients `T_0 = 1, T_1, …, T_N` of the truncated exponential.
    pub fn exponential(&self, dim: usize, n: usize) -> Result<Vec<Matrix>> {
        let x = (0..=n).map(|i| self.generator(i, dim)).collect::<Result<Vec<_>>>()?;
        let mut out = vec![Matrix::zeros(dim, dim); n + 1];
        out[0] = Matrix::identity(dim);
        // power holds X^k / k!
        let mut power = out.clone();
        for k in 1..=n {
            let mut next = vec![Matrix::zeros(dim, dim); n + 1];
            for (a, pa) in power.iter().enumerate() {
                for (b, xb) in x.iter().enumerate().skip(1) {
                    if a + b > n {
                        break;
                    }
                    next[a + b] = next[a + b].add(&xb.mul(pa)?)?;
                }
            }
            power = next.into_iter().map(|m| m.scale(&ratio(1, k as i64))).collect();
            for (o, p) in out.iter_mut().zip(&power) {
                *o = o.add(p)?;
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SeriesEntry::from_terms(&self.terms)).expect("serializable")
    }

    pub fn from_json(s: &str, dim: usize) -> Result<Self> {
        Self::new(parse_series(s, dim, 1)?)
    }
}

/// One term of a serialized series: a cochain with its power of `t`.
#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct SeriesEntry {
    pub order: usize,
    pub n: usize,
    pub dim: usize,
    pub coeffs: Vec<CoeffEntry>,
}

impl SeriesEntry {
    fn from_terms(terms: &[SymCochain]) -> Vec<SeriesEntry> {
        terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let f = t.to_file();
                SeriesEntry { order: i + 1, n: f.n, dim: f.dim, coeffs: f.coeffs }
            })
            .collect()
    }
}

/// Reads a list of series entries; orders must be distinct and at least 1,
/// missing orders below the maximum are zero.
pub fn parse_series(s: &str, dim: usize, arity: usize) -> Result<Vec<SymCochain>> {
    let entries: Vec<SeriesEntry> =
        serde_json::from_str(s).map_err(|e| Error::Input(format!("series file: {e}")))?;
    let top = entries.iter().map(|e| e.order).max().unwrap_or(0);
    let mut terms: Vec<Option<SymCochain>> = vec![None; top];
    for e in entries {
        if e.order == 0 {
            return Err(Error::Input("series orders start at 1".into()));
        }
        if e.n != arity || e.dim != dim {
            return Err(Error::Input(format!(
                "series term of order {} is C^{} on dimension {}, expected C^{arity} on dimension {dim}",
                e.order, e.n, e.dim
            )));
        }
        let slot = &mut terms[e.order - 1];
        if slot.is_some() {
            return Err(Error::Input(format!("duplicate series order {}", e.order)));
        }
        *slot = Some(SymCochain::from_file(CochainFile { n: e.n, dim: e.dim, coeffs: e.coeffs })?);
    }
    Ok(terms.into_iter().map(|t| t.unwrap_or_else(|| SymCochain::zero(arity, dim))).collect())
}

/// `½ Σ_{i+j=n, i,j≥1} [φ_i, φ_j]`.
fn half_quadratic(s: &DeformationSeries, n: usize) -> Result<SymCochain> {
    let mut acc = SymCochain::zero(3, s.base.dim());
    for i in 1..n {
        let (pi, pj) = (s.term(i), s.term(n - i));
        if pi.is_zero() || pj.is_zero() {
            continue;
        }
        acc = acc.add(&graded_bracket(&pi, &pj, s.mode)?)?;
    }
    Ok(acc.scale(&ratio(1, 2)))
}

/// Residuals of `[μ_t, μ_t] = 0` by order: entry 0 is `½[μ,μ]`, entry `n ≥ 1`
/// is `d_μ φ_n + ½ Σ_{i+j=n, i,j≥1} [φ_i, φ_j]` with `φ_n = 0` beyond the
/// series order.
pub fn mc_residual(s: &DeformationSeries, upto: usize) -> Result<Vec<SymCochain>> {
    if upto > 2 * s.order() {
        return Err(Error::Input(format!(
            "residual order {upto} exceeds twice the series order {}",
            s.order()
        )));
    }
    let m = mu(&s.base);
    let mut out = vec![graded_bracket(&m, &m, s.mode)?.scale(&ratio(1, 2))];
    for n in 1..=upto {
        let dphi = differential(&s.base, &s.term(n), s.mode)?;
        out.push(dphi.add(&half_quadratic(s, n)?)?);
    }
    Ok(out)
}

/// Position of a degree-3 cochain relative to the image of `d_μ : C^2 → C^3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionClass {
    #[serde(serialize_with = "serialize_cochain")]
    pub representative: SymCochain,
    pub in_image: bool,
    /// Coordinates along the standard basis cochains that complete the image,
    /// listed in `complement`.
    #[serde(serialize_with = "serialize_rationals")]
    pub quotient_coords: Vec<Rational>,
    pub complement: Vec<usize>,
}

fn serialize_cochain<S: serde::Serializer>(c: &SymCochain, s: S) -> std::result::Result<S::Ok, S::Error> {
    c.to_file().serialize(s)
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    format_vec(v).serialize(s)
}

/// Class of `r ∈ C^3` modulo `im(d_μ : C^2 → C^3)`.
pub fn residual_class(a: &Algebra, r: &SymCochain, mode: InsertionMode) -> Result<ObstructionClass> {
    if r.arity() != 3 || r.dim() != a.dim() {
        return Err(Error::Arity(format!("class of a C^{} cochain, expected C^3", r.arity())));
    }
    let d2 = differential_matrix(a, 2, mode).matrix;
    let pivots = exactla::column_space_basis(&d2);
    let complement = exactla::complement_basis(&d2);
    let rows = d2.rows();
    let mut cols: Vec<Vec<Rational>> = pivots.iter().map(|&p| d2.column(p)).collect();
    cols.extend(complement.iter().map(|&c| exactla::unit_vec(rows, c)));
    let basis = Matrix::from_columns(rows, &cols)?;
    let y = exactla::solve(&basis, r.coeff_vec())?
        .ok_or_else(|| Error::Invariant("image and complement do not span C^3".into()))?;
    let quotient_coords = y[pivots.len()..].to_vec();
    Ok(ObstructionClass {
        representative: r.clone(),
        in_image: exactla::is_zero_vec(&quotient_coords),
        quotient_coords,
        complement,
    })
}

/// Class of the second-order obstruction `−½[φ_1, φ_1]`.
pub fn obstruction_class(a: &Algebra, phi1: &SymCochain, mode: InsertionMode) -> Result<ObstructionClass> {
    let r = graded_bracket(phi1, phi1, mode)?.scale(&ratio(-1, 2));
    residual_class(a, &r, mode)
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepOutcome {
    /// A particular solution with free variables set to zero.
    Solved(SymCochain),
    Obstructed(Obstruction),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub order: usize,
    /// `½ Σ_{i+j=n, i,j≥1} [φ_i, φ_j]`.
    pub residual: SymCochain,
    /// Class of the right-hand side `−residual`.
    pub class: ObstructionClass,
}

/// Solves `d_μ φ_n = −½ Σ_{i+j=n, i,j≥1} [φ_i, φ_j]` given `φ_1..φ_{n−1}`.
pub fn mc_solve_step(s: &DeformationSeries, n: usize) -> Result<StepOutcome> {
    if n == 0 {
        return Err(Error::Input("Maurer–Cartan steps start at order 1".into()));
    }
    if s.order() + 1 < n {
        return Err(Error::Input(format!("order {n} needs φ_1..φ_{} (have {})", n - 1, s.order())));
    }
    let residual = half_quadratic(s, n)?;
    let rhs = residual.scale(&rat(-1));
    let d2 = differential_matrix(&s.base, 2, s.mode).matrix;
    match exactla::solve(&d2, rhs.coeff_vec())? {
        Some(x) => Ok(StepOutcome::Solved(SymCochain::from_coeff_vec(2, s.base.dim(), x)?)),
        None => {
            let class = residual_class(&s.base, &rhs, s.mode)?;
            Ok(StepOutcome::Obstructed(Obstruction { order: n, residual, class }))
        }
    }
}

/// Extends `s` by solving orders `s.order()+1 ..= order`, stopping at the
/// first obstruction.
pub fn mc_extend(s: &DeformationSeries, order: usize) -> Result<(DeformationSeries, Option<Obstruction>)> {
    let mut out = s.clone();
    while out.order() < order {
        match mc_solve_step(&out, out.order() + 1)? {
            StepOutcome::Solved(phi) => out.push(phi)?,
            StepOutcome::Obstructed(o) => return Ok((out, Some(o))),
        }
    }
    Ok((out, None))
}

/// Transports `μ_t` along `T_t`: `(T·μ_t)(x, y) = T μ_t(T⁻¹x, T⁻¹y)`,
/// truncated at `t^N`.
pub fn gauge_transport_series(t: &GaugeSeries, s: &DeformationSeries, n: usize) -> Result<DeformationSeries> {
    if n == 0 {
        return Err(Error::Input("gauge transport needs order at least 1".into()));
    }
    let d = s.base.dim();
    let tt = t.exponential(d, n)?;
    let ti = t.inverse().exponential(d, n)?;
    let phis: Vec<SymCochain> = (0..=n).map(|c| s.term(c)).collect();
    let basis: Vec<Vec<Rational>> = (0..d).map(|i| s.base.basis(i)).collect();
    // moved[b][i] = S_b e_i
    let moved: Vec<Vec<Vec<Rational>>> = ti
        .iter()
        .map(|m| basis.iter().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut terms = Vec::with_capacity(n);
    for order in 1..=n {
        let mut out = SymCochain::zero(2, d);
        for m in multisets(d, 2) {
            let mut v = zero_vec(d);
            for c in 0..=order {
                if phis[c].is_zero() {
                    continue;
                }
                for a in 0..=order - c {
                    for b in 0..=order - c - a {
                        let dd = order - c - a - b;
                        let (x, y) = (&moved[b][m[0]], &moved[dd][m[1]]);
                        if exactla::is_zero_vec(x) || exactla::is_zero_vec(y) {
                            continue;
                        }
                        let inner = phis[c].eval_unchecked(&[x, y]);
                        add_scaled(&mut v, &Rational::one(), &tt[a].mul_vec(&inner)?);
                    }
                }
            }
            out.set_value(&m, &v);
        }
        terms.push(out);
    }
    DeformationSeries::new(s.base.clone(), terms, s.mode)
}

/// Transports the undeformed product of `a` along `T_t`.
pub fn gauge_transport(t: &GaugeSeries, a: &Algebra, n: usize) -> Result<DeformationSeries> {
    gauge_transport_series(t, &DeformationSeries::trivial(a.clone(), InsertionMode::default()), n)
}

/// Some `f` with `coboundary_c1_explicit(a, f) = φ′ − φ`, if one exists.
pub fn gauge_equiv_first_order(a: &Algebra, phi: &SymCochain, phi_prime: &SymCochain) -> Result<Option<SymCochain>> {
    let diff = phi_prime.sub(phi)?;
    if diff.arity() != 2 || diff.dim() != a.dim() {
        return Err(Error::Arity(format!("first-order terms must be C^2 on dimension {}", a.dim())));
    }
    let sol = exactla::solve(&explicit_c1_matrix(a), diff.coeff_vec())?;
    sol.map(|x| {
        let f = SymCochain::from_coeff_vec(1, a.dim(), x)?;
        debug_assert_eq!(coboundary_c1_explicit(a, &f)?, diff);
        Ok(f)
    })
    .transpose()
}

/// Whether every entry of `v` is zero.
pub fn all_zero(v: &[SymCochain]) -> bool {
    v.iter().all(|c| c.coeff_vec().iter().all(Zero::is_zero))
}
