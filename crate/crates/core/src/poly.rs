//! Sparse polynomials in `t`, `q`, `u` with arbitrary-precision integer
//! coefficients.
//!
//! `t` carries descents, `q` the major index and `u` the rank statistic
//! `mu`. Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose derived
//! order is lexicographic on `(t, q, u)`; that order is the canonical
//! printing order, so every rendering is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    Q,
    U,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub t: u64,
    pub q: u64,
    pub u: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { t: 0, q: 0, u: 0 };

    pub fn new(t: u64, q: u64, u: u64) -> Self {
        Monomial { t, q, u }
    }

    pub fn tq(t: u64, q: u64) -> Self {
        Monomial { t, q, u: 0 }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial {
            t: self.t + other.t,
            q: self.q + other.q,
            u: self.u + other.u,
        }
    }

    fn factors(&self) -> impl Iterator<Item = (&'static str, u64)> {
        [("t", self.t), ("q", self.q), ("u", self.u)]
            .into_iter()
            .filter(|&(_, e)| e > 0)
    }

    fn plain(&self) -> String {
        self.factors()
            .map(|(v, e)| {
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn latex(&self) -> String {
        self.factors()
            .map(|(v, e)| {
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{{{e}}}")
                }
            })
            .collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.plain())
        }
    }
}

/// Output style for [`Polynomial::format`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Style {
    Plain,
    Latex,
    Json,
    Csv,
}

impl FromStr for Style {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Style::Plain),
            "latex" => Ok(Style::Latex),
            "json" => Ok(Style::Json),
            "csv" => Ok(Style::Csv),
            other => Err(Error::BadParams(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(1, m)
    }

    pub fn term(coeff: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, m);
        p
    }

    /// `c * t^a * q^b`; a convenience for bivariate literals.
    pub fn tq(coeff: impl Into<BigInt>, a: u64, b: u64) -> Self {
        Self::term(coeff, Monomial::tq(a, b))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(match v {
            Var::T => Monomial::new(1, 0, 0),
            Var::Q => Monomial::new(0, 1, 0),
            Var::U => Monomial::new(0, 0, 1),
        })
    }

    /// Builds a polynomial from `(coeff, monomial)` pairs, merging repeats.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, Monomial)>) -> Self {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    /// Univariate `sum_i coeffs[i] * t^i`.
    pub fn from_t_coefficients<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (c, Monomial::new(i as u64, 0, 0))),
        )
    }

    /// `1 + t + ... + t^(r-1)`; zero when `r = 0`.
    pub fn t_geometric(r: u64) -> Self {
        Self::from_terms((0..r).map(|i| (1, Monomial::new(i, 0, 0))))
    }

    pub fn add_term(&mut self, coeff: impl Into<BigInt>, m: Monomial) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn degree(&self, v: Var) -> Option<u64> {
        self.terms
            .keys()
            .map(|m| match v {
                Var::T => m.t,
                Var::Q => m.q,
                Var::U => m.u,
            })
            .max()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `1` for `v`.
    pub fn specialize(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut m = *m;
            match v {
                Var::T => m.t = 0,
                Var::Q => m.q = 0,
                Var::U => m.u = 0,
            }
            (c.clone(), m)
        }))
    }

    /// `t^d * p(1/t, 1/q, q*u)`: each `t^a q^b u^c` goes to
    /// `t^(d-a) q^(c-b) u^c`. Fails when the image leaves the polynomial
    /// ring.
    pub fn reverse_transform(&self, d: u64) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (Some(t), Some(q)) = (d.checked_sub(m.t), m.u.checked_sub(m.q)) else {
                return Err(Error::ExponentUnderflow {
                    t: m.t,
                    q: m.q,
                    u: m.u,
                    degree: d,
                });
            };
            out.add_term(c.clone(), Monomial::new(t, q, m.u));
        }
        Ok(out)
    }

    /// `t^dt * q^dq * p(1/t, 1/q, u)`.
    pub fn reflect_tq(&self, dt: u64, dq: u64) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (Some(t), Some(q)) = (dt.checked_sub(m.t), dq.checked_sub(m.q)) else {
                return Err(Error::ExponentUnderflow {
                    t: m.t,
                    q: m.q,
                    u: m.u,
                    degree: dt,
                });
            };
            out.add_term(c.clone(), Monomial::new(t, q, m.u));
        }
        Ok(out)
    }

    pub fn is_univariate_in_t(&self) -> bool {
        self.terms.keys().all(|m| m.q == 0 && m.u == 0)
    }

    /// Coefficients of `1, t, t^2, ...` up to the `t`-degree.
    pub fn t_coefficients(&self) -> Result<Vec<BigInt>> {
        if !self.is_univariate_in_t() {
            return Err(Error::NotUnivariate);
        }
        let len = self.degree(Var::T).map_or(0, |d| d as usize + 1);
        let mut out = vec![BigInt::zero(); len];
        for (m, c) in &self.terms {
            out[m.t as usize] = c.clone();
        }
        Ok(out)
    }

    /// Whether `[t^i] p = [t^(d-i)] p` for all `i`.
    pub fn is_palindromic_in_t(&self, d: u64) -> Result<bool> {
        if !self.is_univariate_in_t() {
            return Err(Error::NotUnivariate);
        }
        Ok(self
            .terms
            .iter()
            .all(|(m, c)| m.t <= d && self.coeff(&Monomial::new(d - m.t, 0, 0)) == *c))
    }

    /// `p(t + 1)` for a univariate `p`, returned as a coefficient vector.
    pub fn shift_t_by_one(&self) -> Result<Vec<BigInt>> {
        let h = self.t_coefficients()?;
        let mut f = vec![BigInt::zero(); h.len()];
        for (j, hj) in h.iter().enumerate() {
            let mut binom = BigInt::one();
            for (i, fi) in f.iter_mut().enumerate().take(j + 1) {
                *fi += hj * &binom;
                // C(j, i+1) = C(j, i) * (j - i) / (i + 1)
                binom = binom * BigInt::from(j - i) / BigInt::from(i + 1);
            }
        }
        Ok(f)
    }

    pub fn evaluate(&self, t: i64, q: i64, u: i64) -> BigInt {
        let pow = |base: i64, e: u64| -> BigInt {
            let e = u32::try_from(e).expect("exponent too large to evaluate");
            num_traits::pow(BigInt::from(base), e as usize)
        };
        self.terms
            .iter()
            .map(|(m, c)| c * pow(t, m.t) * pow(q, m.q) * pow(u, m.u))
            .sum()
    }

    pub fn format(&self, style: Style) -> String {
        match style {
            Style::Plain => self.render(|m| m.plain(), "*"),
            Style::Latex => self.render(|m| m.latex(), ""),
            Style::Json => self.to_json().to_string(),
            Style::Csv => {
                let mut out = String::from("t,q,u,coeff\n");
                for (m, c) in &self.terms {
                    out.push_str(&format!("{},{},{},{}\n", m.t, m.q, m.u, c));
                }
                out
            }
        }
    }

    fn render(&self, mono: impl Fn(&Monomial) -> String, sep: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push_str(sep);
                }
                out.push_str(&mono(m));
            }
        }
        out
    }

    /// `{"terms":[{"t":a,"q":b,"u":c,"coeff":m}, ...]}` in canonical order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let coeff: serde_json::Number = c
                    .to_string()
                    .parse()
                    .expect("integer literal is a JSON number");
                json!({"t": m.t, "q": m.q, "u": m.u, "coeff": coeff})
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::BadParams(format!("polynomial JSON: {msg}"));
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `terms` array"))?;
        let mut p = Self::zero();
        for term in terms {
            let exp = |k: &str| {
                term.get(k)
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad(&format!("missing exponent `{k}`")))
            };
            let coeff = match term.get("coeff") {
                Some(Value::Number(n)) => n.to_string().parse::<BigInt>().ok(),
                Some(Value::String(s)) => s.parse::<BigInt>().ok(),
                _ => None,
            }
            .ok_or_else(|| bad("coefficient is not an integer"))?;
            p.add_term(coeff, Monomial::new(exp("t")?, exp("q")?, exp("u")?));
        }
        Ok(p)
    }

    /// Smallest monomial (canonical order) on which `self` and `other`
    /// disagree.
    pub fn first_difference(&self, other: &Polynomial) -> Option<Monomial> {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .filter(|m| self.coeff(m) != other.coeff(m))
            .min()
            .copied()
    }

    pub fn to_i64_coeffs(&self) -> Option<Vec<(Monomial, i64)>> {
        self.terms
            .iter()
            .map(|(m, c)| Some((*m, c.to_i64()?)))
            .collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(Style::Plain))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.format(Style::Plain))
    }
}

impl<'a> Add<&'a Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(c.clone(), *m);
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        *self += &rhs;
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl<'a> Sub<&'a Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ca * cb, ma.times(*mb));
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a Polynomial> for Polynomial {
    fn sum<I: Iterator<Item = &'a Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| acc * p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tq(c: i64, a: u64, b: u64) -> Polynomial {
        Polynomial::tq(c, a, b)
    }

    fn tqu(c: i64, a: u64, b: u64, u: u64) -> Polynomial {
        Polynomial::term(c, Monomial::new(a, b, u))
    }

    #[test]
    fn add_merges_and_cancels() {
        let p = tq(1, 0, 0) + tq(1, 1, 1);
        assert_eq!(p.clone() + tq(1, 1, 1), tq(1, 0, 0) + tq(2, 1, 1));
        assert_eq!(p.clone() + Polynomial::zero(), p);
        let r = tq(1, 1, 2) + tq(-1, 1, 2);
        assert!(r.is_zero());
        assert_eq!(r.len(), 0);
    }

    #[test]
    fn mul_examples() {
        let one_t = tq(1, 0, 0) + tq(1, 1, 0);
        assert_eq!(&one_t * &one_t, tq(1, 0, 0) + tq(2, 1, 0) + tq(1, 2, 0));
        let p = Polynomial::t_geometric(3);
        assert_eq!(&p * &Polynomial::one(), p);
        let a = tq(1, 0, 0) + tq(1, 1, 1);
        let b = tq(1, 0, 0) + tq(1, 1, 2);
        assert_eq!(a * b, tq(1, 0, 0) + tq(1, 1, 1) + tq(1, 1, 2) + tq(1, 2, 3));
    }

    #[test]
    fn specialize_examples() {
        let p = tq(1, 0, 0) + tq(2, 1, 1) + tq(1, 1, 2) + tq(1, 2, 3);
        assert_eq!(
            p.specialize(Var::Q),
            tq(1, 0, 0) + tq(3, 1, 0) + tq(1, 2, 0)
        );
        assert_eq!(p.specialize(Var::U), p);
        let r = tqu(1, 0, 0, 1) + tqu(1, 1, 1, 1);
        assert_eq!(r.specialize(Var::U), tq(1, 0, 0) + tq(1, 1, 1));
    }

    #[test]
    fn reverse_transform_examples() {
        let seg = tqu(1, 0, 0, 1) + tqu(1, 1, 1, 1);
        assert_eq!(seg.reverse_transform(1).unwrap(), seg);
        assert_eq!(
            Polynomial::one().reverse_transform(0).unwrap(),
            Polynomial::one()
        );
        assert!(matches!(
            tq(1, 1, 2).reverse_transform(1),
            Err(Error::ExponentUnderflow { .. })
        ));
        assert!(matches!(
            tq(1, 2, 0).reverse_transform(1),
            Err(Error::ExponentUnderflow { .. })
        ));
    }

    #[test]
    fn palindromic_examples() {
        let eul = tq(1, 0, 0) + tq(4, 1, 0) + tq(1, 2, 0);
        assert!(eul.is_palindromic_in_t(2).unwrap());
        assert!((tq(1, 0, 0) + tq(1, 1, 0)).is_palindromic_in_t(1).unwrap());
        assert!(!(tq(1, 0, 0) + tq(2, 1, 0)).is_palindromic_in_t(1).unwrap());
        assert_eq!(
            tq(1, 1, 1).is_palindromic_in_t(2),
            Err(Error::NotUnivariate)
        );
    }

    #[test]
    fn evaluate_examples() {
        let p = tq(1, 0, 0) + tq(2, 1, 1) + tq(1, 1, 2) + tq(1, 2, 3);
        assert_eq!(p.evaluate(1, 1, 1), BigInt::from(5));
        assert_eq!(Polynomial::zero().evaluate(3, -2, 7), BigInt::from(0));
        let h = tq(1, 0, 0) + tq(3, 1, 0) + tq(1, 2, 0);
        assert_eq!(h.evaluate(1, 1, 1), BigInt::from(5));
        assert_eq!(h.evaluate(2, 0, 0), BigInt::from(11));
    }

    #[test]
    fn format_examples() {
        assert_eq!((tq(1, 0, 0) + tq(1, 1, 1)).format(Style::Plain), "1 + t*q");
        assert_eq!(Polynomial::zero().format(Style::Plain), "0");
        assert_eq!(tq(1, 2, 3).format(Style::Latex), "t^{2}q^{3}");
        assert_eq!(
            (tq(1, 0, 0) + tq(2, 1, 1) + tq(1, 1, 2) + tq(1, 2, 3)).format(Style::Plain),
            "1 + 2*t*q + t*q^2 + t^2*q^3"
        );
        assert_eq!(
            (tq(-1, 0, 0) + tq(-3, 1, 0)).format(Style::Plain),
            "-1 - 3*t"
        );
        assert_eq!((tq(2, 0, 1) + tq(1, 0, 2)).to_string(), "2*q + q^2");
        assert_eq!(tqu(3, 1, 1, 2).format(Style::Latex), "3tqu^{2}");
        assert_eq!(
            (tq(1, 0, 0) + tq(2, 1, 1)).format(Style::Csv),
            "t,q,u,coeff\n0,0,0,1\n1,1,0,2\n"
        );
    }

    #[test]
    fn json_layout_is_canonical() {
        let p = tq(1, 1, 1) + tq(1, 0, 0);
        assert_eq!(
            p.format(Style::Json),
            r#"{"terms":[{"t":0,"q":0,"u":0,"coeff":1},{"t":1,"q":1,"u":0,"coeff":1}]}"#
        );
        let big = Polynomial::term(BigInt::from(u64::MAX) * 1000, Monomial::ONE);
        assert_eq!(Polynomial::from_json(&big.to_json()).unwrap(), big);
        assert_eq!(Polynomial::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn shift_by_one_gives_f_vector() {
        let h = Polynomial::from_t_coefficients([1, 4, 1]);
        let f: Vec<i64> = h
            .shift_t_by_one()
            .unwrap()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(f, vec![6, 6, 1]);
    }

    #[test]
    fn first_difference_is_smallest_disagreeing_monomial() {
        let printed = tq(1, 0, 0) + tq(3, 1, 2) + tq(1, 2, 5);
        let oracle = tq(1, 0, 0) + tq(1, 1, 1) + tq(2, 1, 2) + tq(1, 2, 3);
        assert_eq!(printed.first_difference(&oracle), Some(Monomial::tq(1, 1)));
        assert_eq!(oracle.first_difference(&oracle), None);
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-5i64..=5, 0u64..4, 0u64..4, 0u64..3), 0..6).prop_map(|ts| {
            Polynomial::from_terms(
                ts.into_iter()
                    .map(|(c, a, b, u)| (c, Monomial::new(a, b, u))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn specialize_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
            for v in [Var::T, Var::Q, Var::U] {
                prop_assert_eq!((&a + &b).specialize(v), &a.specialize(v) + &b.specialize(v));
                prop_assert_eq!((&a * &b).specialize(v), &a.specialize(v) * &b.specialize(v));
            }
        }

        #[test]
        fn reverse_transform_is_an_involution(a in arb_poly(), d in 0u64..6) {
            if let Ok(r) = a.reverse_transform(d) {
                prop_assert_eq!(r.reverse_transform(d).unwrap(), a);
            }
        }
    }
}
