//! Closed forms for the symmetric nestohedra, the stellohedron and the
//! Stanley–Pitman polytope.
//!
//! The printed formulas are evaluated exactly as stated, even where they
//! disagree with enumeration. Rank-exact variants live next to them and are
//! only trusted because the oracle comparison in [`compare_with_oracle`]
//! confirms them.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::btree::{h_polynomial, Vars};
use crate::buildset::{snk, stanley_pitman, star};
use crate::combinat::{binomial, perm_stats};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Var};

fn check_snk(n: u32, k: u32) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::BadParams(format!(
            "snk needs 2 <= k <= n, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Subsets of `[n]` of size `m` in colexicographic order.
fn colex_subsets(n: u32, m: usize) -> Vec<Vec<u32>> {
    let mut subsets: Vec<Vec<u32>> = (1..=n).combinations(m).collect();
    subsets.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    subsets
}

/// `sum over A of size n-k+1, pi in S_A` of
/// `t^(des + c) q^(maj + des + c)` with `c = #{j not in A : j > pi_1}`.
pub fn snk_closed_form(n: u32, k: u32) -> Result<Polynomial> {
    check_snk(n, k)?;
    let mut h = Polynomial::zero();
    for a in colex_subsets(n, (n - k + 1) as usize) {
        for pi in a.iter().copied().permutations(a.len()) {
            let s = perm_stats(&pi);
            let c = (1..=n).filter(|j| !a.contains(j) && *j > pi[0]).count();
            let (des, maj, c) = (s.des as u64, s.maj as u64, c as u64);
            h.add_term(1, Monomial::tq(des + c, maj + des + c));
        }
    }
    Ok(h)
}

/// `(k^2 - 2kn - k + n^2 + 3n - 2) / 2`, the `q` degree of the reflection.
pub fn snk_reflection_exponent(n: u32, k: u32) -> u64 {
    let (n, k) = (n as i64, k as i64);
    ((k * k - 2 * k * n - k + n * n + 3 * n - 2) / 2) as u64
}

/// Whether `h = t^(n-1) q^E h(1/t, 1/q)` holds for the closed form.
pub fn snk_palindromicity_check(n: u32, k: u32) -> Result<bool> {
    let h = snk_closed_form(n, k)?;
    match h.reflect_tq(n as u64 - 1, snk_reflection_exponent(n, k)) {
        Ok(r) => Ok(r == h),
        Err(Error::ExponentUnderflow { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Injective words over `[n]`, by length and then lexicographically. The
/// empty word comes first.
pub fn partial_permutations(n: u32) -> impl Iterator<Item = Vec<u32>> {
    (0..=n as usize).flat_map(move |len| (1..=n).permutations(len))
}

fn check_positive(what: &str, n: u32, least: u32) -> Result<()> {
    if n < least {
        return Err(Error::BadParams(format!(
            "{what} needs n >= {least}, got {n}"
        )));
    }
    Ok(())
}

/// `1 + sum over nonempty w` of `t^(des+1) q^(maj + 2 des + 2)`, as printed.
pub fn stellohedron_closed_form(n: u32) -> Result<Polynomial> {
    check_positive("the stellohedron", n, 1)?;
    let mut h = Polynomial::one();
    for w in partial_permutations(n).skip(1) {
        let s = perm_stats(&w);
        let (des, maj) = (s.des as u64, s.maj as u64);
        h.add_term(1, Monomial::tq(des + 1, maj + 2 * des + 2));
    }
    Ok(h)
}

/// The same sum with full words (no antichain under the center) using
/// `t^(des+1) q^(maj + des + 1)`: every rank drops by one there.
pub fn stellohedron_rank_exact(n: u32) -> Result<Polynomial> {
    check_positive("the stellohedron", n, 1)?;
    let mut h = Polynomial::one();
    for w in partial_permutations(n).skip(1) {
        let s = perm_stats(&w);
        let (des, maj) = (s.des as u64, s.maj as u64);
        let q = if w.len() == n as usize {
            maj + des + 1
        } else {
            maj + 2 * des + 2
        };
        h.add_term(1, Monomial::tq(des + 1, q));
    }
    Ok(h)
}

/// `sum_l C(n-2, l) t^l q^((l^2 + 3l + 2)/2) (t + q^l)`, as printed.
pub fn stanley_pitman_closed_form(n: u32) -> Result<Polynomial> {
    check_positive("the Stanley-Pitman polytope", n, 2)?;
    let mut h = Polynomial::zero();
    for l in 0..=(n as u64 - 2) {
        let c = binomial(n as u64 - 2, l);
        let e = (l * l + 3 * l + 2) / 2;
        h.add_term(c.clone(), Monomial::tq(l + 1, e));
        h.add_term(c, Monomial::tq(l, e + l));
    }
    Ok(h)
}

/// `(1 + tq) sum_l C(n-2, l) t^l q^(l(l+3)/2)`.
pub fn stanley_pitman_rank_exact(n: u32) -> Result<Polynomial> {
    check_positive("the Stanley-Pitman polytope", n, 2)?;
    let sum = Polynomial::from_terms(
        (0..=(n as u64 - 2)).map(|l| (binomial(n as u64 - 2, l), Monomial::tq(l, l * (l + 3) / 2))),
    );
    Ok(&(Polynomial::one() + Polynomial::tq(1, 1, 1)) * &sum)
}

/// A closed form together with the building set it describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    Snk,
    StellohedronPrinted,
    StellohedronRankExact,
    StanleyPitmanPrinted,
    StanleyPitmanRankExact,
}

impl Formula {
    pub const ALL: [Formula; 5] = [
        Formula::Snk,
        Formula::StellohedronPrinted,
        Formula::StellohedronRankExact,
        Formula::StanleyPitmanPrinted,
        Formula::StanleyPitmanRankExact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::Snk => "snk",
            Formula::StellohedronPrinted => "stellohedron_printed",
            Formula::StellohedronRankExact => "stellohedron_rank_exact",
            Formula::StanleyPitmanPrinted => "stanley_pitman_printed",
            Formula::StanleyPitmanRankExact => "stanley_pitman_rank_exact",
        }
    }

    pub fn evaluate(self, n: u32, k: Option<u32>) -> Result<Polynomial> {
        match self {
            Formula::Snk => snk_closed_form(n, require_k(k)?),
            Formula::StellohedronPrinted => stellohedron_closed_form(n),
            Formula::StellohedronRankExact => stellohedron_rank_exact(n),
            Formula::StanleyPitmanPrinted => stanley_pitman_closed_form(n),
            Formula::StanleyPitmanRankExact => stanley_pitman_rank_exact(n),
        }
    }

    /// `h(t, q)` of the matching building set, by enumeration.
    pub fn oracle(self, n: u32, k: Option<u32>) -> Result<Polynomial> {
        let b = match self {
            Formula::Snk => snk(n, require_k(k)?)?,
            Formula::StellohedronPrinted | Formula::StellohedronRankExact => {
                check_positive("the stellohedron", n, 1)?;
                star(n)?
            }
            Formula::StanleyPitmanPrinted | Formula::StanleyPitmanRankExact => {
                check_positive("the Stanley-Pitman polytope", n, 2)?;
                stanley_pitman(n)?
            }
        };
        h_polynomial(&b, Vars::TQ)
    }
}

fn require_k(k: Option<u32>) -> Result<u32> {
    k.ok_or_else(|| Error::BadParams("snk needs a value for k".into()))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stellohedron" => return Ok(Formula::StellohedronPrinted),
            "stanley_pitman" => return Ok(Formula::StanleyPitmanPrinted),
            _ => {}
        }
        Formula::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown formula `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaReport {
    pub family: Formula,
    pub n: u32,
    pub k: Option<u32>,
    pub formula_poly: Polynomial,
    pub oracle_poly: Polynomial,
    pub agree: bool,
    /// Least monomial on which the two disagree.
    pub first_difference: Option<Monomial>,
    /// Agreement after setting `q = 1`.
    pub q1_agree: bool,
}

impl FormulaReport {
    pub fn to_json(&self) -> Value {
        let mut params = json!({ "n": self.n });
        if let Some(k) = self.k {
            params["k"] = json!(k);
        }
        json!({
            "family": self.family.name(),
            "params": params,
            "agree": self.agree,
            "q1_agree": self.q1_agree,
            "first_difference": self.first_difference.map(|m| m.to_string()),
            "formula": self.formula_poly.to_json(),
            "oracle": self.oracle_poly.to_json(),
        })
    }
}

pub fn compare_with_oracle(family: Formula, n: u32, k: Option<u32>) -> Result<FormulaReport> {
    let formula_poly = family.evaluate(n, k)?;
    let oracle_poly = family.oracle(n, k)?;
    let first_difference = formula_poly.first_difference(&oracle_poly);
    let q1_agree = formula_poly.specialize(Var::Q) == oracle_poly.specialize(Var::Q);
    Ok(FormulaReport {
        family,
        n,
        k: if family == Formula::Snk { k } else { None },
        agree: first_difference.is_none(),
        first_difference,
        q1_agree,
        formula_poly,
        oracle_poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::euler_mahonian;

    fn p(s: &str) -> String {
        s.to_string()
    }

    #[test]
    fn snk_examples() {
        assert_eq!(
            snk_closed_form(3, 3).unwrap().to_string(),
            p("1 + t*q + t^2*q^2")
        );
        assert_eq!(snk_closed_form(3, 2).unwrap(), euler_mahonian(3));
        assert_eq!(snk_closed_form(2, 2).unwrap().to_string(), p("1 + t*q"));
        assert!(snk_closed_form(3, 1).is_err());
        assert!(snk_closed_form(3, 4).is_err());
    }

    #[test]
    fn snk_reflection() {
        assert_eq!(snk_reflection_exponent(3, 3), 2);
        assert_eq!(snk_reflection_exponent(3, 2), 3);
        assert!(snk_palindromicity_check(3, 3).unwrap());
        assert!(snk_palindromicity_check(3, 2).unwrap());
    }

    #[test]
    fn partial_permutation_order() {
        let words: Vec<Vec<u32>> = partial_permutations(2).collect();
        assert_eq!(
            words,
            vec![vec![], vec![1], vec![2], vec![1, 2], vec![2, 1]]
        );
        assert_eq!(partial_permutations(0).count(), 1);
        assert_eq!(partial_permutations(1).count(), 2);
        assert_eq!(partial_permutations(4).count(), 65);
    }

    #[test]
    fn stellohedron_examples() {
        assert_eq!(
            stellohedron_closed_form(1).unwrap().to_string(),
            p("1 + t*q^2")
        );
        assert_eq!(
            stellohedron_closed_form(2).unwrap().to_string(),
            p("1 + 3*t*q^2 + t^2*q^5")
        );
        assert_eq!(
            stellohedron_closed_form(2).unwrap().specialize(Var::Q),
            Polynomial::from_t_coefficients([1, 3, 1])
        );
        assert_eq!(
            stellohedron_rank_exact(2).unwrap().to_string(),
            p("1 + t*q + 2*t*q^2 + t^2*q^3")
        );
        assert_eq!(
            stellohedron_rank_exact(1).unwrap().to_string(),
            p("1 + t*q")
        );
        assert!(stellohedron_closed_form(0).is_err());
    }

    #[test]
    fn stanley_pitman_examples() {
        assert_eq!(
            stanley_pitman_closed_form(2).unwrap().to_string(),
            p("q + t*q")
        );
        assert_eq!(
            stanley_pitman_closed_form(3).unwrap().to_string(),
            p("q + t*q + t*q^4 + t^2*q^3")
        );
        assert_eq!(
            stanley_pitman_rank_exact(2).unwrap().to_string(),
            p("1 + t*q")
        );
        assert_eq!(
            stanley_pitman_rank_exact(3).unwrap().to_string(),
            p("1 + t*q + t*q^2 + t^2*q^3")
        );
        for n in 2..=10 {
            let cube = Polynomial::from_t_coefficients([1, 1]).pow(n - 1);
            assert_eq!(
                stanley_pitman_closed_form(n).unwrap().specialize(Var::Q),
                cube
            );
            assert_eq!(
                stanley_pitman_rank_exact(n).unwrap().specialize(Var::Q),
                cube
            );
        }
        assert!(stanley_pitman_closed_form(1).is_err());
    }

    #[test]
    fn oracle_reports() {
        let r = compare_with_oracle(Formula::Snk, 3, Some(3)).unwrap();
        assert!(r.agree && r.q1_agree && r.first_difference.is_none());

        let r = compare_with_oracle(Formula::StellohedronPrinted, 2, None).unwrap();
        assert!(!r.agree && r.q1_agree);
        assert_eq!(r.first_difference, Some(Monomial::tq(1, 1)));

        let r = compare_with_oracle(Formula::StanleyPitmanPrinted, 3, None).unwrap();
        assert!(!r.agree && r.q1_agree);
        assert_eq!(r.oracle_poly.to_string(), "1 + t*q + t*q^2 + t^2*q^3");

        let r = compare_with_oracle(Formula::StanleyPitmanPrinted, 2, None).unwrap();
        assert_eq!(r.first_difference, Some(Monomial::ONE));

        let j = r.to_json();
        assert_eq!(j["family"], "stanley_pitman_printed");
        assert_eq!(j["first_difference"], "1");
        assert!(compare_with_oracle(Formula::Snk, 3, None).is_err());
    }

    #[test]
    fn formula_names_round_trip() {
        for f in Formula::ALL {
            assert_eq!(f.name().parse::<Formula>().unwrap(), f);
        }
        assert_eq!(
            "stellohedron".parse::<Formula>().unwrap(),
            Formula::StellohedronPrinted
        );
        assert!("cyclohedron".parse::<Formula>().is_err());
    }
}
