//! Exact sparse multivariate polynomials.
//!
//! Coefficients are big rationals; exponents of parameter variables may be
//! negative (Laurent), so group parameters and the mass stay symbolic and
//! every verified identity holds for all parameter values. Terms live in a
//! `BTreeMap` keyed by the canonical monomial order, which makes equality
//! structural and rendering deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, Rational};
use crate::var::{ParamName, VarId};
use crate::Error;

/// Exponent vector: sorted `(variable, exponent)` pairs, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(VarId, i32)>);

impl Monomial {
    /// The empty (unit) monomial.
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// `v^e`. Negative exponents are only legal for parameters.
    pub fn var_pow(v: VarId, e: i32) -> Self {
        assert!(
            e >= 0 || v.is_param(),
            "negative exponent on non-parameter {v}"
        );
        if e == 0 {
            Monomial::unit()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: &VarId) -> i32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = &(VarId, i32)> {
        self.0.iter()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = self.0[i].1 + other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Replace the exponent of `v` (removing it at zero).
    fn with_exponent(&self, v: &VarId, e: i32) -> Monomial {
        let mut out: Vec<(VarId, i32)> = self.0.iter().copied().filter(|(w, _)| w != v).collect();
        if e != 0 {
            out.push((*v, e));
            out.sort_by_key(|&(v, _)| v);
        }
        Monomial(out)
    }

    fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|(v, e)| (*v, -e)).collect())
    }

    pub fn all_params(&self) -> bool {
        self.0.iter().all(|(v, _)| v.is_param())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|(v, e)| format!("{v}^{e}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial: monomial -> nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::unit(), r);
        p
    }

    pub fn var(v: VarId) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), Rational::one());
        p
    }

    /// The time variable `t`.
    pub fn time() -> Self {
        Poly::var(VarId::Time)
    }

    pub fn param(name: ParamName) -> Self {
        Poly::var(VarId::Param(name))
    }

    /// Laurent power of a parameter, e.g. `m^-1`.
    pub fn param_pow(name: ParamName, e: i32) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var_pow(VarId::Param(name), e), Rational::one());
        p
    }

    pub fn from_term(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// `Some(c)` when the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some((monomial, coeff))` when the polynomial is a single term.
    pub fn as_single_term(&self) -> Option<(Monomial, Rational)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((m.clone(), c.clone()))
        } else {
            None
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Integer power, allowing negative exponents for invertible single-term
    /// polynomials (rational times parameter powers).
    pub fn powi(&self, e: i32) -> Result<Poly, Error> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        let inv = self.invert_monomial()?;
        Ok(inv.pow((-e) as u32))
    }

    /// Inverse of a single-term polynomial whose variables are all parameters.
    pub fn invert_monomial(&self) -> Result<Poly, Error> {
        let (m, c) = self.as_single_term().ok_or_else(|| {
            Error::Unsupported(format!("cannot invert non-monomial expression {self}"))
        })?;
        if !m.all_params() {
            return Err(Error::Unsupported(format!(
                "cannot invert monomial with non-parameter variables: {self}"
            )));
        }
        Ok(Poly::from_term(m.inverse(), c.recip()))
    }

    /// Formal partial derivative (Laurent aware on parameters).
    pub fn partial_derivative(&self, v: &VarId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            out.add_term(
                m.with_exponent(v, e - 1),
                c * Rational::from_integer(e.into()),
            );
        }
        out
    }

    /// Total time derivative by jet prolongation: `t -> 1`,
    /// `q^(n) -> q^(n+1)`, parameters -> 0. Phase-space variables are a
    /// different geometry and are rejected.
    pub fn total_time_derivative(&self) -> Result<Poly, Error> {
        if let Some(v) = self.vars().find(|v| v.is_phase()) {
            return Err(Error::Kind(format!(
                "total time derivative applied to phase-space variable {v}"
            )));
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for &(v, e) in m.vars() {
                let factor = Rational::from_integer(e.into());
                match v {
                    VarId::Time => {
                        out.add_term(m.with_exponent(&v, e - 1), c * &factor);
                    }
                    VarId::Jet { order, axis } => {
                        let lowered = m.with_exponent(&v, e - 1);
                        let raised = lowered.mul(&Monomial::var(VarId::jet(order + 1, axis)));
                        out.add_term(raised, c * &factor);
                    }
                    _ => {}
                }
            }
        }
        Ok(out)
    }

    /// Simultaneous substitution (a ring homomorphism on generators).
    ///
    /// A binding image may mention its own key (`t -> t - tau` is the normal
    /// way to express a transformation) but not a *different* key: such
    /// chained bindings are ambiguous and rejected as cyclic.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, Poly>) -> Result<Poly, Error> {
        check_bindings(bindings)?;
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for &(v, e) in m.vars() {
                let image = match bindings.get(&v) {
                    Some(img) => img.clone(),
                    None => Poly::var(v),
                };
                let factor = if e >= 0 {
                    image.pow(e as u32)
                } else {
                    image.invert_monomial()?.pow((-e) as u32)
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn vars(&self) -> impl Iterator<Item = &VarId> {
        self.terms.keys().flat_map(|m| m.vars().map(|(v, _)| v))
    }

    pub fn has_phase_vars(&self) -> bool {
        self.vars().any(|v| v.is_phase())
    }

    pub fn has_jet_vars(&self) -> bool {
        self.vars().any(|v| v.is_jet())
    }

    /// Highest exponent of `v` across all terms (0 when absent).
    pub fn degree_in(&self, v: &VarId) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Highest jet order present, if any.
    pub fn max_jet_order(&self) -> Option<u32> {
        self.vars()
            .filter_map(|v| match v {
                VarId::Jet { order, .. } => Some(*order),
                _ => None,
            })
            .max()
    }

    /// Coefficient polynomials of powers of `v`: result[e] multiplies `v^e`.
    /// Only meaningful for non-Laurent variables.
    pub fn coefficients_in(&self, v: &VarId) -> Vec<Poly> {
        let deg = self.degree_in(v);
        let mut out = vec![Poly::zero(); (deg + 1).max(1) as usize];
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            assert!(e >= 0, "coefficients_in on Laurent variable");
            out[e as usize].add_term(m.with_exponent(v, 0), c.clone());
        }
        out
    }
}

fn check_bindings(bindings: &BTreeMap<VarId, Poly>) -> Result<(), Error> {
    for (k, img) in bindings {
        if let Some(other) = img.vars().find(|v| *v != k && bindings.contains_key(v)) {
            return Err(Error::CyclicBindings(format!(
                "binding for {k} mentions bound variable {other}"
            )));
        }
    }
    Ok(())
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest monomial first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if m.is_unit() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), m)?;
            }
        }
        Ok(())
    }
}

/// Dot product of two equal-length polynomial vectors.
pub fn dot(a: &[Poly], b: &[Poly]) -> Poly {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Poly::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// 3D cross product.
pub fn cross3(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    assert!(a.len() == 3 && b.len() == 3);
    vec![
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// 2D cross product (scalar): `a_x b_y - a_y b_x`.
pub fn cross2(a: &[Poly], b: &[Poly]) -> Poly {
    assert!(a.len() == 2 && b.len() == 2);
    &(&a[0] * &b[1]) - &(&a[1] * &b[0])
}

/// Levi-Civita symbol in two dimensions with `eps[0][1] = +1`.
pub fn eps2(a: usize, b: usize) -> i64 {
    match (a, b) {
        (0, 1) => 1,
        (1, 0) => -1,
        _ => 0,
    }
}

/// Levi-Civita symbol in three dimensions.
pub fn eps3(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}
