//! Multivariate polynomials with rational coefficients over a fixed list of
//! named variables. Just enough algebra to expand low-degree coboundaries
//! with generic parameters.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactla::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    /// Exponent vector → coefficient; zero coefficients are never stored.
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_term(&mut self, e: Vec<u32>, c: Rational) {
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term(e, c1 * c2);
            }
        }
        out
    }

    /// Replaces variable `i` by the constant `v`.
    pub fn substitute(&self, i: usize, v: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[i], 0);
            out.insert_term(e2, c * num_traits::pow(v.clone(), k as usize));
        }
        out
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                t *= num_traits::pow(v.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    pub fn display<'a>(&'a self, names: &'a [&'a str]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [&'a str],
}

impl fmt::Display for PolyDisplay<'_> {
    /// Terms in graded-lexicographic order of the variable list, e.g.
    /// `a*alpha + b*gamma - 2*gamma`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<u32>, &Rational)> = self.poly.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.names[i].to_string() } else { format!("{}^{k}", self.names[i]) })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (n, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if mono.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, ratio};

    const NAMES: [&str; 3] = ["a", "b", "c"];

    #[test]
    fn arithmetic_and_display() {
        let a = Poly::var(3, 0);
        let b = Poly::var(3, 1);
        let p = a.mul(&a).add(&b.scale(&rat(-2))).add(&Poly::constant(3, ratio(1, 2)));
        assert_eq!(p.display(&NAMES).to_string(), "a^2 - 2*b + 1/2");
        assert_eq!(p.eval(&[rat(3), rat(1), rat(0)]), ratio(15, 2));
        assert!(p.sub(&p).is_zero());
        assert_eq!(Poly::zero(3).display(&NAMES).to_string(), "0");
        let q = a.mul(&b).scale(&rat(-1));
        assert_eq!(q.display(&NAMES).to_string(), "-a*b");
    }

    #[test]
    fn substitution() {
        let a = Poly::var(3, 0);
        let c = Poly::var(3, 2);
        let p = a.mul(&a).mul(&c).add(&c);
        let s = p.substitute(0, &rat(2));
        assert_eq!(s, c.scale(&rat(5)));
        assert!(p.substitute(2, &rat(0)).is_zero());
    }
}
