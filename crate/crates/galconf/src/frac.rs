//! Polynomials divided by products of declared `(1 + alpha*t)` factors.
//!
//! Finite conformal transformations produce denominators of exactly this
//! shape (`alpha` a signed parameter monomial such as `-c`), and nothing in
//! the verified identities needs a wider function field. Fractions are kept
//! canonical: the numerator shares no declared factor with the denominator,
//! so structural equality is semantic equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use crate::poly::{Monomial, Poly};
use crate::rational::Rational;
use crate::var::VarId;
use crate::Error;

/// Build the factor polynomial `1 + alpha*t`; `alpha` must be a single-term
/// polynomial in parameters only (so it is invertible).
pub fn one_plus_alpha_t(alpha: &Poly) -> Result<Poly, Error> {
    let (m, _) = alpha.as_single_term().ok_or_else(|| {
        Error::Unsupported(format!(
            "denominator slope must be a parameter monomial, got {alpha}"
        ))
    })?;
    if !m.all_params() {
        return Err(Error::Unsupported(format!(
            "denominator slope must involve parameters only, got {alpha}"
        )));
    }
    Ok(&Poly::one() + &(alpha * &Poly::time()))
}

/// If `p` has the declared factor form `1 + alpha*t`, return `alpha`.
fn factor_alpha(p: &Poly) -> Option<Poly> {
    let c0 = p.coeff(&Monomial::unit());
    if !c0.is_one() {
        return None;
    }
    let rest = p - &Poly::one();
    let (m, c) = rest.as_single_term()?;
    if m.exponent(&VarId::Time) != 1 {
        return None;
    }
    let alpha_mono = m.with_time_removed();
    if !alpha_mono.all_params() {
        return None;
    }
    Some(Poly::from_term(alpha_mono, c))
}

impl Monomial {
    fn with_time_removed(&self) -> Monomial {
        let mut out = Monomial::unit();
        for &(v, e) in self.vars() {
            if v != VarId::Time {
                out = out.mul(&Monomial::var_pow(v, e));
            }
        }
        out
    }
}

/// Exact fraction `num / prod_i (1 + alpha_i t)^{e_i}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frac {
    num: Poly,
    denom: BTreeMap<Poly, u32>,
}

impl From<Poly> for Frac {
    fn from(num: Poly) -> Self {
        Frac {
            num,
            denom: BTreeMap::new(),
        }
    }
}

impl Frac {
    pub fn zero() -> Self {
        Frac::from(Poly::zero())
    }

    pub fn one() -> Self {
        Frac::from(Poly::one())
    }

    /// `num / prod (1 + alpha_i t)^{e_i}`, validating each factor's shape.
    pub fn new(num: Poly, denom: &[(Poly, u32)]) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for (f, e) in denom {
            if *e == 0 {
                continue;
            }
            if factor_alpha(f).is_none() {
                return Err(Error::Unsupported(format!(
                    "denominator factor must have the form 1 + alpha*t, got {f}"
                )));
            }
            *map.entry(f.clone()).or_insert(0) += e;
        }
        Ok(Frac::make(num, map))
    }

    /// `1 / (1 + alpha*t)^power`.
    pub fn inverse_factor(alpha: &Poly, power: u32) -> Result<Self, Error> {
        let f = one_plus_alpha_t(alpha)?;
        Frac::new(Poly::one(), &[(f, power)])
    }

    fn make(num: Poly, mut denom: BTreeMap<Poly, u32>) -> Self {
        if num.is_zero() {
            return Frac {
                num,
                denom: BTreeMap::new(),
            };
        }
        let mut num = num;
        denom.retain(|_, e| *e > 0);
        let factors: Vec<Poly> = denom.keys().cloned().collect();
        for f in factors {
            let alpha = factor_alpha(&f).expect("denominator invariant");
            let alpha_inv = alpha.invert_monomial().expect("parameter monomial");
            while denom.get(&f).copied().unwrap_or(0) > 0 {
                match divide_by_factor(&num, &alpha_inv) {
                    Some(q) => {
                        num = q;
                        let e = denom.get_mut(&f).unwrap();
                        *e -= 1;
                        if *e == 0 {
                            denom.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
        Frac { num, denom }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn denom_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.denom.iter().map(|(f, e)| (f, *e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The underlying polynomial when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.denom.is_empty().then_some(&self.num)
    }

    pub fn denom_poly(&self) -> Poly {
        self.denom
            .iter()
            .fold(Poly::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// Equality by cross multiplication into the polynomial ring.
    pub fn eq_cross(&self, other: &Frac) -> bool {
        &self.num * &other.denom_poly() == &other.num * &self.denom_poly()
    }

    pub fn scale(&self, c: &Rational) -> Frac {
        Frac::make(self.num.scale(c), self.denom.clone())
    }

    pub fn pow(&self, e: u32) -> Frac {
        let mut denom = BTreeMap::new();
        for (f, p) in &self.denom {
            denom.insert(f.clone(), p * e);
        }
        Frac::make(self.num.pow(e), denom)
    }

    /// Reciprocal; supported when the numerator is a parameter monomial,
    /// optionally times powers of declared `(1 + alpha*t)` factors.
    pub fn recip(&self) -> Result<Frac, Error> {
        let mut num = self.denom_poly();
        let mut rest = self.num.clone();
        let mut denom: BTreeMap<Poly, u32> = BTreeMap::new();
        // Strip declared-form factors off the numerator.
        loop {
            if let Ok(inv) = rest.invert_monomial() {
                num = &num * &inv;
                break;
            }
            if let Some(alpha) = factor_candidate(&rest) {
                let f = one_plus_alpha_t(&alpha)?;
                let alpha_inv = alpha.invert_monomial()?;
                if let Some(q) = divide_by_factor(&rest, &alpha_inv) {
                    *denom.entry(f).or_insert(0) += 1;
                    rest = q;
                    continue;
                }
            }
            return Err(Error::Unsupported(format!(
                "cannot invert {}: numerator is not a parameter monomial times declared factors",
                self.num
            )));
        }
        Ok(Frac::make(num, denom))
    }

    /// Total time derivative; factors differentiate by the chain rule.
    pub fn total_time_derivative(&self) -> Result<Frac, Error> {
        let mut out = Frac::make(self.num.total_time_derivative()?, self.denom.clone());
        for (f, p) in &self.denom {
            let alpha = factor_alpha(f).expect("denominator invariant");
            let mut denom = self.denom.clone();
            *denom.get_mut(f).unwrap() += 1;
            let num = (&self.num * &alpha).scale(&-Rational::from_integer((*p).into()));
            out = &out + &Frac::make(num, denom);
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to any variable.
    pub fn partial_derivative(&self, v: &VarId) -> Frac {
        let mut out = Frac::make(self.num.partial_derivative(v), self.denom.clone());
        for (f, p) in &self.denom {
            let dalpha = factor_alpha(f)
                .expect("denominator invariant")
                .partial_derivative(v);
            if dalpha.is_zero() {
                continue;
            }
            let mut denom = self.denom.clone();
            *denom.get_mut(f).unwrap() += 1;
            let num = (&(&self.num * &dalpha) * &Poly::time())
                .scale(&-Rational::from_integer((*p).into()));
            out = &out + &Frac::make(num, denom);
        }
        out
    }

    /// Simultaneous substitution. Factor images must stay in the declared
    /// class or become invertible constants.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, Poly>) -> Result<Frac, Error> {
        let mut num = self.num.substitute(bindings)?;
        let mut denom = BTreeMap::new();
        for (f, p) in &self.denom {
            let img = f.substitute(bindings)?;
            if factor_alpha(&img).is_some() {
                *denom.entry(img).or_insert(0) += p;
            } else if let Ok(inv) = img.invert_monomial() {
                num = &num * &inv.pow(*p);
            } else {
                return Err(Error::Unsupported(format!(
                    "substitution maps denominator factor {f} to {img}, outside the declared class"
                )));
            }
        }
        Ok(Frac::make(num, denom))
    }

    /// Multiply by `factor^power` and demand a polynomial result; the
    /// denominator must be a lower power of the same factor.
    pub fn clear_with(&self, factor: &Poly, power: u32) -> Result<Poly, Error> {
        for (f, p) in &self.denom {
            if f != factor {
                return Err(Error::Unsupported(format!(
                    "denominator factor {f} differs from clearing factor {factor}"
                )));
            }
            if *p > power {
                return Err(Error::Unsupported(format!(
                    "denominator power {p} exceeds clearing power {power}"
                )));
            }
        }
        let present = self.denom.get(factor).copied().unwrap_or(0);
        Ok(&self.num * &factor.pow(power - present))
    }
}

/// A candidate slope for a declared factor dividing `p`: solves
/// `p = (1 + alpha t) * q` by looking at the constant-in-`t` part.
fn factor_candidate(p: &Poly) -> Option<Poly> {
    // Works for pure powers (1 + alpha t)^k times parameter monomials: the
    // ratio of the t^1 and t^0 coefficients is k * alpha, and trial division
    // by every divisor of k is avoided by trying the linear coefficient
    // ratio's primitive part directly. Only exercised through recip().
    let coeffs = p.coefficients_in(&VarId::Time);
    if coeffs.len() < 2 {
        return None;
    }
    let c0 = &coeffs[0];
    let c1 = &coeffs[1];
    let c0_inv = c0.invert_monomial().ok()?;
    let ratio = c1 * &c0_inv; // = k * alpha for (1 + alpha t)^k
    let (m, c) = ratio.as_single_term()?;
    let k = Rational::from_integer((coeffs.len() as i64 - 1).into());
    Some(Poly::from_term(m, c / k))
}

/// Exact division of `p` by `1 + alpha*t` (with `alpha_inv` supplied);
/// `None` when not divisible.
fn divide_by_factor(p: &Poly, alpha_inv: &Poly) -> Option<Poly> {
    if p.is_zero() {
        return Some(Poly::zero());
    }
    let coeffs = p.coefficients_in(&VarId::Time);
    let d = coeffs.len() - 1;
    if d == 0 {
        return None;
    }
    let mut q = vec![Poly::zero(); d];
    q[d - 1] = &coeffs[d] * alpha_inv;
    for k in (1..d).rev() {
        q[k - 1] = &(&coeffs[k] - &q[k]) * alpha_inv;
    }
    if coeffs[0] != q[0] {
        return None;
    }
    let t = Poly::time();
    let mut out = Poly::zero();
    for (k, qk) in q.iter().enumerate() {
        out = &out + &(qk * &t.pow(k as u32));
    }
    Some(out)
}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, other: &Frac) -> Frac {
        // Common denominator: per-factor maximum power.
        let mut denom = self.denom.clone();
        for (f, e) in &other.denom {
            let cur = denom.entry(f.clone()).or_insert(0);
            *cur = (*cur).max(*e);
        }
        let mut left = self.num.clone();
        let mut right = other.num.clone();
        for (f, e) in &denom {
            let ls = e - self.denom.get(f).unwrap_or(&0);
            let rs = e - other.denom.get(f).unwrap_or(&0);
            if ls > 0 {
                left = &left * &f.pow(ls);
            }
            if rs > 0 {
                right = &right * &f.pow(rs);
            }
        }
        Frac::make(&left + &right, denom)
    }
}

impl Sub for &Frac {
    type Output = Frac;
    fn sub(self, other: &Frac) -> Frac {
        self + &(-other)
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, other: &Frac) -> Frac {
        let mut denom = self.denom.clone();
        for (f, e) in &other.denom {
            *denom.entry(f.clone()).or_insert(0) += e;
        }
        Frac::make(&self.num * &other.num, denom)
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac {
            num: -&self.num,
            denom: self.denom.clone(),
        }
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_empty() {
            return write!(f, "{}", self.num);
        }
        let parts: Vec<String> = self
            .denom
            .iter()
            .map(|(fac, e)| {
                if *e == 1 {
                    format!("({fac})")
                } else {
                    format!("({fac})^{e}")
                }
            })
            .collect();
        write!(f, "({}) / {}", self.num, parts.join("*"))
    }
}
