//! Claim-by-claim verification of the identities asserted for the cochain
//! bracket, on a concrete algebra. Every claim is tested in its literal
//! printed form; disagreements are recorded as data with re-evaluable
//! witnesses.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    check_cubic_jordan, check_operator_identity, check_printed_cubic, check_six_term, cubic_sides,
    operator_sides, printed_cubic_sides, six_term, Algebra, Witness,
};
use crate::bracket::{
    compare_cochains, graded_bracket, insert, insert_evaluate, insert_lowdeg_variant, jacobiator, prelie_sides,
    InsertionMode,
};
use crate::cochain::{sym_basis_dim, MultilinearTable, SymCochain};
use crate::complex::{
    coboundary_c1_explicit, coboundary_c2_explicit, derivations, differential, half_ad_mumu, mu,
};
use crate::corpus;
use crate::error::{Error, Result};
use crate::exactla::{add_scaled, format_vec, rat, ratio, zero_vec, Matrix, Rational};
use crate::symbolic::Poly;

const MAX_WITNESSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    /// Holds for structural reasons unrelated to the property it is meant to
    /// characterize.
    Vacuous,
}

impl Verdict {
    fn of(holds: bool) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Vacuous => "vacuous",
        }
    }
}

/// A witness together with the names of the objects it was evaluated on, so
/// that it can be recomputed from the report alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub operands: Vec<String>,
    #[serde(flatten)]
    pub witness: Witness,
}

/// A printed coefficient next to the one obtained by expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicEntry {
    pub component: String,
    pub printed: String,
    pub expanded: String,
    /// Both sides with the algebra's own parameters substituted.
    pub printed_here: String,
    pub expanded_here: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub location: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<InsertionMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    pub verdict: Verdict,
    pub detail: String,
    pub witnesses: Vec<Evidence>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub symbolic: Vec<SymbolicEntry>,
}

impl ClaimRecord {
    fn new(id: &str, location: &str, mode: Option<InsertionMode>) -> Self {
        ClaimRecord {
            id: id.to_string(),
            location: location.to_string(),
            mode,
            scope: None,
            verdict: Verdict::Holds,
            detail: String::new(),
            witnesses: Vec::new(),
            symbolic: Vec::new(),
        }
    }

    fn scoped(mut self, scope: impl Into<String>) -> Self {
        self.scope = Some(scope.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub algebra: String,
    pub dim: usize,
    pub derivations_dim: usize,
    pub records: Vec<ClaimRecord>,
}

impl AuditReport {
    pub fn records_for<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a ClaimRecord> + 'a {
        self.records.iter().filter(move |r| r.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn evidence(operands: &[&str], w: Witness) -> Evidence {
    Evidence { operands: operands.iter().map(|s| s.to_string()).collect(), witness: w }
}

/// Named cochains used as operands of the bracket-level claims.
pub const FAMILY: [&str; 3] = ["id", "mu", "mumu"];

/// `id`, `mu`, or `mumu = μ∘μ` (plain unshuffle sum).
pub fn operand(a: &Algebra, name: &str) -> Result<SymCochain> {
    match name {
        "id" => Ok(SymCochain::identity(a.dim())),
        "mu" => Ok(mu(a)),
        "mumu" => insert(&mu(a), &mu(a), InsertionMode::Sum),
        _ => Err(Error::Input(format!("unknown operand {name:?}"))),
    }
}

fn family(a: &Algebra) -> Result<Vec<(&'static str, SymCochain)>> {
    FAMILY.iter().map(|&n| Ok((n, operand(a, n)?))).collect()
}

fn basis_tuple(a: &Algebra, t: &[usize]) -> Vec<Vec<Rational>> {
    t.iter().map(|&i| a.basis(i)).collect()
}

fn ordered_tuples(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn label_of(a: &Algebra, t: &[usize]) -> String {
    let names: Vec<&str> = t.iter().map(|&i| a.labels()[i].as_str()).collect();
    format!("({})", names.join(","))
}

/// Multilinear evaluation of a table at arbitrary vectors.
pub fn table_eval(t: &MultilinearTable, args: &[Vec<Rational>]) -> Vec<Rational> {
    let mut acc = zero_vec(t.dim);
    for tuple in ordered_tuples(t.dim, t.arity) {
        let mut c = Rational::one();
        for (arg, &i) in args.iter().zip(&tuple) {
            c *= &arg[i];
            if c.is_zero() {
                break;
            }
        }
        if !c.is_zero() {
            add_scaled(&mut acc, &c, t.get(&tuple));
        }
    }
    acc
}

fn sym_closure(a: &Algebra, mode: InsertionMode) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new("SYM-CLOSURE", "insertion preserves symmetry", Some(mode));
    let fam = family(a)?;
    let mut checked = 0;
    for (fname, f) in &fam {
        for (gname, g) in &fam {
            let arity = f.arity() + g.arity() - 1;
            for t in ordered_tuples(a.dim(), arity) {
                let mut perm: Vec<usize> = (0..arity).collect();
                perm.sort_by_key(|&i| t[i]);
                let args = basis_tuple(a, &t);
                let permuted: Vec<Vec<Rational>> = perm.iter().map(|&i| args[i].clone()).collect();
                let left = insert_evaluate(f, g, mode, &args)?;
                let right = insert_evaluate(f, g, mode, &permuted)?;
                checked += 1;
                if left != right && rec.witnesses.len() < MAX_WITNESSES {
                    let p: Vec<String> = perm.iter().map(|i| i.to_string()).collect();
                    let perm_op = format!("perm={}", p.join(","));
                    rec.witnesses.push(evidence(
                        &[fname, gname, &perm_op],
                        Witness { label: format!("({fname}∘{gname}) at {} vs permuted", label_of(a, &t)), inputs: args, left, right },
                    ));
                }
            }
        }
    }
    rec.verdict = Verdict::of(rec.witnesses.is_empty());
    rec.detail = format!(
        "direct unshuffle evaluation compared with its sorted permutation on {checked} ordered basis tuples over operands {{id, mu, mumu}}"
    );
    Ok(rec)
}

fn triples() -> Vec<[&'static str; 3]> {
    let mut out = Vec::new();
    for f in FAMILY {
        for g in FAMILY {
            for h in FAMILY {
                out.push([f, g, h]);
            }
        }
    }
    out
}

fn prelie(a: &Algebra, mode: InsertionMode) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new("PRELIE", "right pre-Lie identity for insertion", Some(mode));
    let mut failing = 0;
    for [f, g, h] in triples() {
        let (cf, cg, ch) = (operand(a, f)?, operand(a, g)?, operand(a, h)?);
        let Some((l, r)) = prelie_sides(&cf, &cg, &ch, mode)? else { continue };
        let ws = compare_cochains(&format!("pre-Lie with f={f} g={g} h={h}"), &l, &r, 1);
        if !ws.is_empty() {
            failing += 1;
        }
        for w in ws {
            if rec.witnesses.len() < MAX_WITNESSES {
                rec.witnesses.push(evidence(&[f, g, h], w));
            }
        }
    }
    rec.verdict = Verdict::of(failing == 0);
    rec.detail = format!(
        "(f∘g)∘h − f∘(g∘h) = (−1)^{{|g||h|}}((f∘h)∘g − f∘(h∘g)) fails on {failing} of 27 operand triples from {{id, mu, mumu}}"
    );
    Ok(rec)
}

fn jacobi(a: &Algebra, mode: InsertionMode) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new("JACOBI", "graded Jacobi identity for the commutator", Some(mode));
    let mut failing = 0;
    for [f, g, h] in triples() {
        let (cf, cg, ch) = (operand(a, f)?, operand(a, g)?, operand(a, h)?);
        let Some(j) = jacobiator(&cf, &cg, &ch, mode)? else { continue };
        let zero = SymCochain::zero(j.arity(), j.dim());
        let ws = compare_cochains(&format!("Jacobiator of f={f} g={g} h={h}"), &j, &zero, 1);
        if !ws.is_empty() {
            failing += 1;
        }
        for w in ws {
            if rec.witnesses.len() < MAX_WITNESSES {
                rec.witnesses.push(evidence(&[f, g, h], w));
            }
        }
    }
    rec.verdict = Verdict::of(failing == 0);
    rec.detail = format!("graded Jacobiator is nonzero on {failing} of 27 operand triples from {{id, mu, mumu}}");
    Ok(rec)
}

fn lowdeg(a: &Algebra, mode: InsertionMode) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new(
        "LOWDEG-VARIANT",
        "two-term low-degree insertion formula vs the unshuffle insertion",
        Some(mode),
    );
    let m = mu(a);
    let table = insert_lowdeg_variant(&m, &m)?;
    let full = insert(&m, &m, mode)?;
    let mut failing = 0;
    for t in ordered_tuples(a.dim(), 3) {
        let (l, r) = (table.get(&t).to_vec(), full.value_at_basis(&t).to_vec());
        if l != r {
            failing += 1;
            rec.witnesses.push(evidence(
                &["mu", "mu"],
                Witness {
                    label: format!("two-term (μ∘μ) vs unshuffle (μ∘μ) at {}", label_of(a, &t)),
                    inputs: basis_tuple(a, &t),
                    left: l,
                    right: r,
                },
            ));
        }
    }
    rec.verdict = Verdict::of(failing == 0);
    rec.detail = format!(
        "½(μ(μ(x,y),z) + μ(μ(x,z),y)) differs from the unshuffle insertion μ∘μ on {failing} of {} ordered basis triples",
        a.dim().pow(3)
    );
    Ok(rec)
}

fn cyclic_half(a: &Algebra, args: &[Vec<Rational>]) -> Vec<Rational> {
    six_term(a, &args[0], &args[1], &args[2]).into_iter().map(|c| c * ratio(1, 2)).collect()
}

fn mumu_doubling(a: &Algebra, mode: InsertionMode) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new("MUMU-DOUBLING", "[μ,μ] = 2(μ∘μ)", Some(mode));
    let m = mu(a);
    let bb = graded_bracket(&m, &m, mode)?;
    let twice = insert(&m, &m, mode)?.scale(&rat(2));
    rec.witnesses = compare_cochains("[μ,μ] vs 2(μ∘μ)", &bb, &twice, MAX_WITNESSES)
        .into_iter()
        .map(|w| evidence(&["mu"], w))
        .collect();
    rec.verdict = Verdict::of(rec.witnesses.is_empty());
    rec.detail = "graded commutator of the odd element μ with itself against twice its self-insertion".into();
    Ok(rec)
}

fn mumu_formula(a: &Algebra, mode: InsertionMode) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new("MUMU-FORMULA", "cyclic expression for μ∘μ", Some(mode));
    let m = mu(a);
    let twice = insert(&m, &m, mode)?.scale(&rat(2));
    let mut cyclic_zero = true;
    for t in ordered_tuples(a.dim(), 3) {
        let args = basis_tuple(a, &t);
        let right = cyclic_half(a, &args);
        cyclic_zero &= right.iter().all(Zero::is_zero);
        let left = twice.value_at_basis(&t).to_vec();
        if left != right && rec.witnesses.len() < MAX_WITNESSES {
            rec.witnesses.push(evidence(
                &["mu"],
                Witness {
                    label: format!("2(μ∘μ) vs ½Σ_cyc(μ(μ(x,y),z) − μ(x,μ(y,z))) at {}", label_of(a, &t)),
                    inputs: args,
                    left,
                    right,
                },
            ));
        }
    }
    rec.verdict = Verdict::of(rec.witnesses.is_empty());
    rec.detail = if cyclic_zero {
        "the cyclic expression vanishes identically for a commutative product, so the claim reduces to μ∘μ = 0".into()
    } else {
        "the cyclic expression is nonzero".into()
    };
    Ok(rec)
}

fn mc_iff_jordan(a: &Algebra, mode: InsertionMode) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new("MC-IFF-JORDAN", "[μ,μ] = 0 iff the Jordan identity holds", Some(mode));
    let m = mu(a);
    let bb = graded_bracket(&m, &m, mode)?;
    let zero = SymCochain::zero(3, a.dim());
    let cubic = check_cubic_jordan(a);
    let mc = bb.is_zero();
    for w in compare_cochains("[μ,μ] vs 0", &bb, &zero, MAX_WITNESSES) {
        rec.witnesses.push(evidence(&["[mu,mu]"], w));
    }
    if let Some(w) = &cubic.witness {
        rec.witnesses.push(evidence(&["cubic"], w.clone()));
    }
    rec.verdict = Verdict::of(mc == cubic.holds);
    rec.detail = match (mc, cubic.holds) {
        (true, true) => "[μ,μ] = 0 and the Jordan identity holds".into(),
        (false, false) => "[μ,μ] ≠ 0 and the Jordan identity fails".into(),
        (false, true) => "fails (forward direction): the Jordan identity holds but [μ,μ] ≠ 0".into(),
        (true, false) => "fails (reverse direction): [μ,μ] = 0 but the Jordan identity fails".into(),
    };
    Ok(rec)
}

fn ad_squared(a: &Algebra, mode: InsertionMode, n: usize) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new("AD-SQUARED", "d² = ½ ad_[μ,μ]", Some(mode)).scoped(format!("degree {n}"));
    let mut dd_zero = true;
    let mut ad_zero = true;
    let mut failing = 0;
    for j in 0..sym_basis_dim(a.dim(), n) {
        let f = SymCochain::basis(n, a.dim(), j);
        let l = differential(a, &differential(a, &f, mode)?, mode)?;
        let r = half_ad_mumu(a, &f, mode)?;
        dd_zero &= l.is_zero();
        ad_zero &= r.is_zero();
        if let Some(w) = compare_cochains(&format!("d(d f) vs ½[[μ,μ],f], f = basis cochain {j}"), &l, &r, 1).pop() {
            failing += 1;
            if rec.witnesses.len() < MAX_WITNESSES {
                rec.witnesses.push(evidence(&[&format!("basis={j}"), &format!("degree={n}")], w));
            }
        }
    }
    rec.verdict = Verdict::of(failing == 0);
    rec.detail = format!(
        "{failing} of {} basis cochains differ; d∘d vanishes: {dd_zero}; ½ad_[μ,μ] vanishes: {ad_zero}",
        sym_basis_dim(a.dim(), n)
    );
    Ok(rec)
}

fn d2_sanity(a: &Algebra, mode: InsertionMode) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new(
        "D2-SANITY",
        "explicit low-degree coboundaries compose to ½[[μ,μ],f]",
        Some(mode),
    )
    .scoped("degree 1");
    let mut explicit_zero = true;
    let mut failing = 0;
    for j in 0..sym_basis_dim(a.dim(), 1) {
        let f = SymCochain::basis(1, a.dim(), j);
        let l = coboundary_c2_explicit(a, &coboundary_c1_explicit(a, &f)?)?;
        let r = half_ad_mumu(a, &f, mode)?;
        explicit_zero &= l.is_zero();
        if let Some(w) = compare_cochains(&format!("explicit d(d f) vs ½[[μ,μ],f], f = basis cochain {j}"), &l, &r, 1).pop() {
            failing += 1;
            if rec.witnesses.len() < MAX_WITNESSES {
                rec.witnesses.push(evidence(&[&format!("basis={j}")], w));
            }
        }
    }
    rec.verdict = Verdict::of(failing == 0);
    rec.detail = format!(
        "{failing} of {} basis endomorphisms differ; explicit composite vanishes: {explicit_zero}",
        sym_basis_dim(a.dim(), 1)
    );
    Ok(rec)
}

fn sixterm(a: &Algebra) -> ClaimRecord {
    let mut rec = ClaimRecord::new("SIXTERM", "six-term identity equivalent to [μ,μ] = 0", None);
    let r = check_six_term(a);
    match r.witness {
        None => {
            rec.verdict = Verdict::Vacuous;
            rec.detail =
                "A(x,y,z)+A(y,z,x)+A(z,x,y) vanishes on every basis triple; the terms cancel pairwise for any commutative product"
                    .into();
        }
        Some(w) => {
            rec.verdict = Verdict::Fails;
            rec.detail = "six-term expression is nonzero".into();
            rec.witnesses.push(evidence(&["six-term"], w));
        }
    }
    rec
}

fn cubic_vs_operator(a: &Algebra) -> ClaimRecord {
    let mut rec = ClaimRecord::new(
        "CUBIC-VS-OPERATOR",
        "six-term identity implies the cubic identity through the operator identity (x∘x)∘y = x∘(x∘y)",
        None,
    );
    let cubic = check_cubic_jordan(a);
    let op = check_operator_identity(a);
    let six = check_six_term(a).holds;
    let mut notes = Vec::new();
    if six && !op.holds {
        notes.push(if cubic.holds {
            "operator identity fails on a Jordan algebra"
        } else {
            "six-term identity holds while the operator identity fails"
        });
    }
    if six && !cubic.holds {
        notes.push("six-term identity holds while the cubic identity fails");
    }
    if let Some(w) = op.witness {
        rec.witnesses.push(evidence(&["operator"], w));
    }
    if let Some(w) = cubic.witness {
        rec.witnesses.push(evidence(&["cubic"], w));
    }
    rec.verdict = Verdict::of(notes.is_empty());
    rec.detail = if notes.is_empty() {
        format!("six-term: {six}, operator identity: {}, cubic identity: {}", op.holds, cubic.holds)
    } else {
        notes.join("; ")
    };
    rec
}

fn jordan_form(a: &Algebra) -> ClaimRecord {
    let mut rec = ClaimRecord::new(
        "JORDAN-FORM",
        "printed cubic identity (x∘x)∘(y∘x) = x∘(x∘(y∘x)) vs the Jordan identity (x∘y)∘(x∘x) = x∘(y∘(x∘x))",
        None,
    );
    let printed = check_printed_cubic(a);
    let standard = check_cubic_jordan(a);
    rec.verdict = Verdict::of(printed.holds == standard.holds);
    rec.detail = format!("printed form: {}, Jordan identity: {}", printed.holds, standard.holds);
    if let Some(w) = printed.witness {
        rec.witnesses.push(evidence(&["printed-cubic"], w));
    }
    if let Some(w) = standard.witness {
        rec.witnesses.push(evidence(&["cubic"], w));
    }
    rec
}

/// Variables of the symbolic expansion over the family `J(a,b)`.
pub const S5_VARS: [&str; 12] =
    ["a", "b", "alpha", "beta", "gamma", "delta", "x1", "x2", "y1", "y2", "z1", "z2"];
const NV: usize = S5_VARS.len();
/// Values of `alpha..z2` used for numeric witnesses.
const S5_SAMPLE: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

type PVec = [Poly; 2];

fn pv(i: usize) -> Poly {
    Poly::var(NV, i)
}

fn pc(c: i64) -> Poly {
    Poly::constant(NV, rat(c))
}

fn padd(x: &PVec, y: &PVec) -> PVec {
    [x[0].add(&y[0]), x[1].add(&y[1])]
}

fn psub(x: &PVec, y: &PVec) -> PVec {
    [x[0].sub(&y[0]), x[1].sub(&y[1])]
}

fn pscale(s: &Poly, x: &PVec) -> PVec {
    [s.mul(&x[0]), s.mul(&x[1])]
}

/// Product of `J(a,b)`: `e` unit, `u∘u = a e + b u`.
fn pmul(x: &PVec, y: &PVec) -> PVec {
    let uu = x[1].mul(&y[1]);
    [x[0].mul(&y[0]).add(&pv(0).mul(&uu)), x[0].mul(&y[1]).add(&x[1].mul(&y[0])).add(&pv(1).mul(&uu))]
}

/// `f(e) = αe + βu`, `f(u) = γe + δu`.
fn pf(x: &PVec) -> PVec {
    [pv(2).mul(&x[0]).add(&pv(4).mul(&x[1])), pv(3).mul(&x[0]).add(&pv(5).mul(&x[1]))]
}

/// `φ(e,e) = x1 e + x2 u`, `φ(e,u) = y1 e + y2 u`, `φ(u,u) = z1 e + z2 u`.
fn pphi(x: &PVec, y: &PVec) -> PVec {
    let ee = [pv(6), pv(7)];
    let eu = [pv(8), pv(9)];
    let uu = [pv(10), pv(11)];
    let cross = x[0].mul(&y[1]).add(&x[1].mul(&y[0]));
    padd(&padd(&pscale(&x[0].mul(&y[0]), &ee), &pscale(&cross, &eu)), &pscale(&x[1].mul(&y[1]), &uu))
}

fn pbasis(i: usize) -> PVec {
    if i == 0 {
        [pc(1), pc(0)]
    } else {
        [pc(0), pc(1)]
    }
}

fn symbolic_c1(x: &PVec, y: &PVec) -> PVec {
    psub(&psub(&pf(&pmul(x, y)), &pmul(&pf(x), y)), &pmul(x, &pf(y)))
}

fn symbolic_c2(args: [&PVec; 3]) -> PVec {
    let mut acc = [pc(0), pc(0)];
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        acc = padd(&acc, &pmul(&pphi(args[i], args[j]), args[k]));
        acc = psub(&acc, &pphi(&pmul(args[i], args[j]), args[k]));
    }
    acc
}

/// The printed coefficients, by evaluation point.
fn printed_s5(point: &[usize]) -> PVec {
    let (a, b) = (pv(0), pv(1));
    let (al, be, ga, de) = (pv(2), pv(3), pv(4), pv(5));
    match point {
        [0, 0] => [pc(0), pc(0)],
        [0, 1] => [pc(0), be.scale(&rat(-1))],
        [1, 1] => [
            a.mul(&al).add(&b.mul(&ga)).sub(&ga.scale(&rat(2))),
            a.mul(&be).sub(&al.scale(&rat(2))).sub(&b.mul(&de)),
        ],
        [0, 0, 1] => [pc(0), pv(6)],
        _ => unreachable!("no printed value at {point:?}"),
    }
}

fn expanded_s5(point: &[usize]) -> PVec {
    let args: Vec<PVec> = point.iter().map(|&i| pbasis(i)).collect();
    match args.len() {
        2 => symbolic_c1(&args[0], &args[1]),
        _ => symbolic_c2([&args[0], &args[1], &args[2]]),
    }
}

fn s5_sample(a: &Rational, b: &Rational) -> Vec<Rational> {
    let mut v = vec![a.clone(), b.clone()];
    v.extend(S5_SAMPLE.iter().map(|&c| rat(c)));
    v
}

fn s5_operands(a: &Rational, b: &Rational) -> Vec<String> {
    s5_sample(a, b).iter().zip(S5_VARS).map(|(v, n)| format!("{n}={}", crate::exactla::format_rational(v))).collect()
}

/// Engine-side value at an S5 evaluation point for the sample parameters.
fn engine_s5(alg: &Algebra, point: &[usize], vals: &[Rational]) -> Result<Vec<Rational>> {
    let args = basis_tuple(alg, point);
    if point.len() == 2 {
        let m = Matrix::from_rows(vec![vec![vals[2].clone(), vals[4].clone()], vec![vals[3].clone(), vals[5].clone()]])?;
        let f = SymCochain::from_endomorphism(&m)?;
        coboundary_c1_explicit(alg, &f)?.evaluate(&args)
    } else {
        let mut phi = SymCochain::zero(2, 2);
        for (m, base) in [([0, 0], 6), ([0, 1], 8), ([1, 1], 10)] {
            phi.set_value(&m, &[vals[base].clone(), vals[base + 1].clone()]);
        }
        coboundary_c2_explicit(alg, &phi)?.evaluate(&args)
    }
}

fn specialize(p: &Poly, a: &Rational, b: &Rational) -> Poly {
    p.substitute(0, a).substitute(1, b)
}

fn s5_coeffs(alg: &Algebra, a: &Rational, b: &Rational, point: &[usize]) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new(
        "S5-COEFFS",
        "printed coboundary coefficients for the two-dimensional unital example",
        None,
    )
    .scoped(label_of(alg, point));
    let printed = printed_s5(point);
    let expanded = expanded_s5(point);
    let vals = s5_sample(a, b);
    let engine = engine_s5(alg, point, &vals)?;
    let from_expansion: Vec<Rational> = expanded.iter().map(|p| p.eval(&vals)).collect();
    if engine != from_expansion {
        return Err(Error::Invariant(format!(
            "symbolic expansion at {point:?} disagrees with the engine: {:?} vs {:?}",
            format_vec(&from_expansion),
            format_vec(&engine)
        )));
    }
    let mut all_match = true;
    for k in 0..2 {
        let ph = specialize(&printed[k], a, b);
        let eh = specialize(&expanded[k], a, b);
        all_match &= ph == eh;
        rec.symbolic.push(SymbolicEntry {
            component: alg.labels()[k].clone(),
            printed: printed[k].display(&S5_VARS).to_string(),
            expanded: expanded[k].display(&S5_VARS).to_string(),
            printed_here: ph.display(&S5_VARS).to_string(),
            expanded_here: eh.display(&S5_VARS).to_string(),
        });
    }
    let printed_val: Vec<Rational> = printed.iter().map(|p| p.eval(&vals)).collect();
    if engine != printed_val {
        let ops = s5_operands(a, b);
        let ops: Vec<&str> = ops.iter().map(String::as_str).collect();
        rec.witnesses.push(evidence(
            &ops,
            Witness {
                label: format!("expanded coboundary vs printed coefficients at {}", label_of(alg, point)),
                inputs: basis_tuple(alg, point),
                left: engine,
                right: printed_val,
            },
        ));
    }
    rec.verdict = Verdict::of(all_match);
    rec.detail = if all_match {
        "printed coefficients agree with the expansion".into()
    } else {
        "printed coefficients differ from the expansion of the explicit coboundary".into()
    };
    Ok(rec)
}

/// `f(e) = 0, f(u) = u` and its claimed inner form `x ↦ x∘(½e)`.
fn s5_claimed(alg: &Algebra) -> Result<(SymCochain, Matrix)> {
    let m = Matrix::from_i64(&[&[0, 0], &[0, 1]]);
    let f = SymCochain::from_endomorphism(&m)?;
    let v = vec![ratio(1, 2), rat(0)];
    Ok((f, alg.multiplication_operator(&v)?))
}

fn s5_inner(alg: &Algebra) -> Result<ClaimRecord> {
    let mut rec = ClaimRecord::new(
        "S5-INNER",
        "remaining derivation f(e) = 0, f(u) = δu of the quadratic norm case is inner via v = (δ/2)e",
        None,
    )
    .scoped("delta = 1");
    let (f, inner) = s5_claimed(alg)?;
    let df = coboundary_c1_explicit(alg, &f)?;
    let is_derivation = df.is_zero();
    for w in compare_cochains("f(x∘y) − f(x)∘y − x∘f(y) vs 0", &df, &SymCochain::zero(2, 2), MAX_WITNESSES) {
        rec.witnesses.push(evidence(&["claimed-derivation"], w));
    }
    let mut matches_inner = true;
    for i in 0..2 {
        let x = alg.basis(i);
        let left = f.evaluate(std::slice::from_ref(&x))?;
        let right = inner.mul_vec(&x)?;
        if left != right {
            matches_inner = false;
            rec.witnesses.push(evidence(
                &["inner"],
                Witness { label: format!("f({}) vs {}∘v", alg.labels()[i], alg.labels()[i]), inputs: vec![x], left, right },
            ));
        }
    }
    let dim = derivations(alg).len();
    rec.verdict = Verdict::of(is_derivation && matches_inner);
    rec.detail = format!(
        "claimed map is a derivation: {is_derivation}; agrees with x ↦ x∘v: {matches_inner}; derivation space has dimension {dim}"
    );
    Ok(rec)
}

/// Runs every claim on `alg`.
pub fn audit(name: &str, alg: &Algebra) -> Result<AuditReport> {
    let modes = InsertionMode::ALL;
    let mut records = Vec::new();
    for mode in modes {
        records.push(sym_closure(alg, mode)?);
    }
    for mode in modes {
        records.push(prelie(alg, mode)?);
    }
    for mode in modes {
        records.push(jacobi(alg, mode)?);
    }
    for mode in modes {
        records.push(lowdeg(alg, mode)?);
    }
    for mode in modes {
        records.push(mumu_doubling(alg, mode)?);
    }
    for mode in modes {
        records.push(mumu_formula(alg, mode)?);
    }
    for mode in modes {
        records.push(mc_iff_jordan(alg, mode)?);
    }
    for mode in modes {
        for n in 0..3 {
            records.push(ad_squared(alg, mode, n)?);
        }
    }
    for mode in modes {
        records.push(d2_sanity(alg, mode)?);
    }
    records.push(sixterm(alg));
    records.push(cubic_vs_operator(alg));
    records.push(jordan_form(alg));
    if let Some((a, b)) = corpus::j2_parameters(alg) {
        for point in [&[0, 0][..], &[0, 1], &[1, 1], &[0, 0, 1]] {
            records.push(s5_coeffs(alg, &a, &b, point)?);
        }
        if a == rat(1) && b.is_zero() {
            records.push(s5_inner(alg)?);
        }
    }
    Ok(AuditReport { algebra: name.to_string(), dim: alg.dim(), derivations_dim: derivations(alg).len(), records })
}

/// Audits every corpus entry, in corpus order.
pub fn audit_all() -> Result<Vec<AuditReport>> {
    corpus::corpus().iter().map(|e| audit(e.name, &e.algebra)).collect()
}

fn operand_value<'a>(ev: &'a Evidence, key: &str) -> Result<&'a str> {
    ev.operands
        .iter()
        .find_map(|o| o.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .ok_or_else(|| Error::Input(format!("witness lacks operand {key}")))
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Input(format!("bad index {s:?}")))
}

fn record_mode(rec: &ClaimRecord) -> Result<InsertionMode> {
    rec.mode.ok_or_else(|| Error::Input(format!("{} record has no mode", rec.id)))
}

fn named_sides(alg: &Algebra, name: &str, inputs: &[Vec<Rational>]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let two = |f: fn(&Algebra, &[Rational], &[Rational]) -> (Vec<Rational>, Vec<Rational>)| {
        if inputs.len() != 2 {
            return Err(Error::Input(format!("{name} witness needs two inputs")));
        }
        Ok(f(alg, &inputs[0], &inputs[1]))
    };
    match name {
        "cubic" => two(cubic_sides),
        "printed-cubic" => two(printed_cubic_sides),
        "operator" => two(operator_sides),
        "six-term" => Ok((six_term(alg, &inputs[0], &inputs[1], &inputs[2]), zero_vec(alg.dim()))),
        "claimed-derivation" => {
            let (f, _) = s5_claimed(alg)?;
            Ok((coboundary_c1_explicit(alg, &f)?.evaluate(inputs)?, zero_vec(alg.dim())))
        }
        "inner" => {
            let (f, inner) = s5_claimed(alg)?;
            Ok((f.evaluate(inputs)?, inner.mul_vec(&inputs[0])?))
        }
        _ => Err(Error::Input(format!("unknown witness operand {name:?}"))),
    }
}

/// Recomputes both sides of a witness from its claim, operands and inputs.
pub fn reevaluate(alg: &Algebra, rec: &ClaimRecord, ev: &Evidence) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let inputs = &ev.witness.inputs;
    let op = |i: usize| -> Result<SymCochain> {
        let name = ev.operands.get(i).ok_or_else(|| Error::Input("missing operand".into()))?;
        operand(alg, name)
    };
    let zero = || zero_vec(alg.dim());
    match rec.id.as_str() {
        "SYM-CLOSURE" => {
            let mode = record_mode(rec)?;
            let perm = operand_value(ev, "perm")?
                .split(',')
                .map(parse_usize)
                .collect::<Result<Vec<_>>>()?;
            let permuted: Vec<Vec<Rational>> = perm.iter().map(|&i| inputs[i].clone()).collect();
            let (f, g) = (op(0)?, op(1)?);
            Ok((insert_evaluate(&f, &g, mode, inputs)?, insert_evaluate(&f, &g, mode, &permuted)?))
        }
        "PRELIE" => {
            let (l, r) = prelie_sides(&op(0)?, &op(1)?, &op(2)?, record_mode(rec)?)?
                .ok_or_else(|| Error::Input("pre-Lie sides in arity −1".into()))?;
            Ok((l.evaluate(inputs)?, r.evaluate(inputs)?))
        }
        "JACOBI" => {
            let j = jacobiator(&op(0)?, &op(1)?, &op(2)?, record_mode(rec)?)?
                .ok_or_else(|| Error::Input("Jacobiator in arity −1".into()))?;
            Ok((j.evaluate(inputs)?, zero()))
        }
        "LOWDEG-VARIANT" => {
            let m = mu(alg);
            let table = insert_lowdeg_variant(&m, &m)?;
            Ok((table_eval(&table, inputs), insert(&m, &m, record_mode(rec)?)?.evaluate(inputs)?))
        }
        "MUMU-DOUBLING" => {
            let m = mu(alg);
            let mode = record_mode(rec)?;
            Ok((
                graded_bracket(&m, &m, mode)?.evaluate(inputs)?,
                insert(&m, &m, mode)?.scale(&rat(2)).evaluate(inputs)?,
            ))
        }
        "MUMU-FORMULA" => {
            let m = mu(alg);
            let twice = insert(&m, &m, record_mode(rec)?)?.scale(&rat(2));
            Ok((twice.evaluate(inputs)?, cyclic_half(alg, inputs)))
        }
        "MC-IFF-JORDAN" if ev.operands.first().map(String::as_str) == Some("[mu,mu]") => {
            let m = mu(alg);
            Ok((graded_bracket(&m, &m, record_mode(rec)?)?.evaluate(inputs)?, zero()))
        }
        "AD-SQUARED" | "D2-SANITY" => {
            let mode = record_mode(rec)?;
            let j = parse_usize(operand_value(ev, "basis")?)?;
            let n = if rec.id == "AD-SQUARED" { parse_usize(operand_value(ev, "degree")?)? } else { 1 };
            let f = SymCochain::basis(n, alg.dim(), j);
            let l = if rec.id == "AD-SQUARED" {
                differential(alg, &differential(alg, &f, mode)?, mode)?
            } else {
                coboundary_c2_explicit(alg, &coboundary_c1_explicit(alg, &f)?)?
            };
            Ok((l.evaluate(inputs)?, half_ad_mumu(alg, &f, mode)?.evaluate(inputs)?))
        }
        "S5-COEFFS" => {
            let vals = S5_VARS
                .iter()
                .map(|n| crate::exactla::parse_rational(operand_value(ev, n)?))
                .collect::<Result<Vec<_>>>()?;
            let point: Vec<usize> = inputs
                .iter()
                .map(|v| v.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::Input("zero input".into())))
                .collect::<Result<_>>()?;
            let printed = printed_s5(&point);
            Ok((engine_s5(alg, &point, &vals)?, printed.iter().map(|p| p.eval(&vals)).collect()))
        }
        _ => named_sides(alg, ev.operands.first().map(String::as_str).unwrap_or(""), inputs),
    }
}

/// Whether a stored witness re-evaluates to exactly its recorded sides.
pub fn verify_witness(alg: &Algebra, rec: &ClaimRecord, ev: &Evidence) -> Result<bool> {
    let (l, r) = reevaluate(alg, rec, ev)?;
    Ok(l == ev.witness.left && r == ev.witness.right && l != r)
}

fn render_vec(v: &[Rational]) -> String {
    format!("[{}]", format_vec(v).join(", "))
}

/// Human-readable rendering: one line per claim plus indented witnesses.
pub fn render_text(reports: &[AuditReport]) -> String {
    let mut out = String::new();
    for rep in reports {
        let _ = writeln!(out, "algebra {} (dim {}, derivations {})", rep.algebra, rep.dim, rep.derivations_dim);
        for rec in &rep.records {
            let mode = rec.mode.map(|m| format!(" [{m}]")).unwrap_or_default();
            let scope = rec.scope.as_ref().map(|s| format!(" {s}")).unwrap_or_default();
            let _ = writeln!(out, "  {}{mode}{scope}: {} ({})", rec.id, rec.verdict.as_str(), rec.location);
            let _ = writeln!(out, "    {}", rec.detail);
            for s in &rec.symbolic {
                let _ = writeln!(
                    out,
                    "    {}-coefficient: printed {} | expanded {}",
                    s.component, s.printed, s.expanded
                );
            }
            for ev in &rec.witnesses {
                let inputs: Vec<String> = ev.witness.inputs.iter().map(|v| render_vec(v)).collect();
                let _ = writeln!(
                    out,
                    "    witness {}: inputs {} left {} right {}",
                    ev.witness.label,
                    inputs.join(" "),
                    render_vec(&ev.witness.left),
                    render_vec(&ev.witness.right)
                );
            }
        }
    }
    out
}
