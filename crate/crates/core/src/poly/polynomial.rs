use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::{PolyError, Rational};

/// Variable names plus the active monomial order. Variables are positional; the
/// names only matter for parsing and printing.
#[derive(Clone, Debug)]
pub struct Ring {
    vars: Arc<[String]>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::with_order(vars, MonomialOrder::GrevLex)
    }

    pub fn with_order<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Self {
        Self {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            order,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same variables, different order.
    pub fn reordered(&self, order: MonomialOrder) -> Ring {
        Ring {
            vars: Arc::clone(&self.vars),
            order,
        }
    }

    pub fn same_vars(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn var(&self, index: usize) -> Polynomial {
        self.term(Monomial::var(self.nvars(), index), Rational::one())
    }

    pub fn term(&self, mono: Monomial, coeff: Rational) -> Polynomial {
        debug_assert_eq!(mono.nvars(), self.nvars());
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![(mono, coeff)]
        };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same_vars(other) && self.order == other.order
    }
}

impl Eq for Ring {}

/// Sparse polynomial over the rationals. Terms are kept sorted in descending
/// order under the ring's monomial order with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = ring.order();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusted constructor: terms already sorted, distinct and nonzero.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m == mono)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Leading term under the ring order.
    pub fn leading_term(&self) -> Result<(&Monomial, &Rational), PolyError> {
        self.terms.first().map(|(m, c)| (m, c)).ok_or(PolyError::ZeroPolynomial)
    }

    /// Leading term under an arbitrary order.
    pub fn leading_term_in(&self, ord: MonomialOrder) -> Result<(Monomial, Rational), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Same polynomial with terms re-sorted under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.ring.order() {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: self.ring.reordered(order),
            terms,
        }
    }

    /// Moves the polynomial into another ring with the same variables.
    pub fn in_ring(&self, ring: &Ring) -> Result<Polynomial, PolyError> {
        if !self.ring.same_vars(ring) {
            return Err(PolyError::RingMismatch);
        }
        let mut p = self.with_order(ring.order());
        p.ring = ring.clone();
        Ok(p)
    }

    /// Re-embeds into `target`, mapping variable `i` of this ring to `positions[i]`.
    pub fn embed(&self, target: &Ring, positions: &[usize]) -> Polynomial {
        assert_eq!(positions.len(), self.ring.nvars());
        Polynomial::from_terms(
            target,
            self.terms
                .iter()
                .map(|(m, c)| (m.embed(target.nvars(), positions), c.clone())),
        )
    }

    /// Restricts to the listed variables. Fails if another variable occurs.
    pub fn restrict(&self, target: &Ring, positions: &[usize]) -> Option<Polynomial> {
        let keep: Vec<bool> = (0..self.ring.nvars()).map(|i| positions.contains(&i)).collect();
        for (m, _) in &self.terms {
            if m.exponents().iter().enumerate().any(|(i, &e)| e > 0 && !keep[i]) {
                return None;
            }
        }
        Some(Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.select(positions), c.clone())),
        ))
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        let other = other.in_ring(&self.ring)?;
        Ok(self.merge(&other, |c| c.clone()))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        let other = other.in_ring(&self.ring)?;
        Ok(self.merge(&other, |c| -c))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        let other = other.in_ring(&self.ring)?;
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Ok(Polynomial::from_terms(&self.ring, acc))
    }

    // sorted merge of self + f(other)
    fn merge(&self, other: &Polynomial, f: impl Fn(&Rational) -> Rational) -> Polynomial {
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ord.cmp(ma, mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), f(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + f(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), f(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * mono * self`; order is preserved because monomial orders are multiplicative.
    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial, PolyError> {
        if index >= self.ring.nvars() {
            return Err(PolyError::IndexOutOfRange {
                index,
                nvars: self.ring.nvars(),
            });
        }
        // dividing every surviving term by the same variable keeps them sorted
        Ok(Polynomial::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .filter_map(|(m, c)| {
                    let e = m.exponent(index);
                    (e > 0).then(|| (m.lowered(index), c * Rational::from_integer(e.into())))
                })
                .collect(),
        ))
    }

    /// Homogeneous component of the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .cloned()
                .collect(),
        }
    }

    /// If `self == c * other` for a nonzero rational `c`, returns `c`.
    pub fn scalar_ratio(&self, other: &Polynomial) -> Option<Rational> {
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let other = other.in_ring(&self.ring).ok()?;
        let c = &self.terms[0].1 / &other.terms[0].1;
        let same = self
            .terms
            .iter()
            .zip(&other.terms)
            .all(|((ma, ca), (mb, cb))| ma == mb && *ca == cb * &c);
        same.then_some(c)
    }

    /// Positive integer multiple with coprime integer coefficients and positive leading term.
    pub fn primitive(&self) -> Polynomial {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = num_bigint::BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut s = Rational::new(den, g);
        if self.terms[0].1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !self.ring.same_vars(&other.ring) || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.ring.order() == other.ring.order() {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.ring.order()).terms
        }
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

// Operator sugar for internal algorithms. Panics when the variable lists differ;
// use the `try_*` methods on untrusted input.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials over different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials over different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials over different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}
