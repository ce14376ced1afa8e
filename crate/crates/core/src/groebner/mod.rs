//! Ideal arithmetic: division, Buchberger's algorithm, elimination, syzygies,
//! and the presentation ideals used to decide linear type.

mod engine;
mod presentation;
mod syzygy;

use std::fmt;

use crate::par::Execution;
use crate::poly::{Monomial, MonomialOrder, PolyError, Polynomial, Rational, Ring};

pub use presentation::{
    is_linear_type, is_linear_type_with, jacobian_ideal, rees_ideal, rees_ideal_with, sym_ideal, sym_ideal_with,
    sym_quotient_with, LinearTypeMethod, LinearTypeVerdict, PresentationIdeal,
};
pub use syzygy::{syzygies, syzygies_with, SyzygyModule};

pub const DEFAULT_STEP_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("the zero ideal has no Gröbner basis to compute")]
    ZeroIdeal,
    #[error("resource limit exceeded: more than {cap} reduction steps")]
    ResourceLimit { cap: usize },
    #[error("constant polynomial has no singular locus to describe")]
    ConstantInput,
    #[error("empty generator list")]
    EmptyInput,
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbOptions {
    /// Maximum number of single-term reduction steps before giving up.
    pub step_cap: usize,
    pub execution: Execution,
}

impl Default for GbOptions {
    fn default() -> Self {
        Self {
            step_cap: DEFAULT_STEP_CAP,
            execution: Execution::default(),
        }
    }
}

/// Generators of an ideal. Zero generators are dropped on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, generators: &[Polynomial]) -> Result<Self, GroebnerError> {
        let generators = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.in_ring(ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            ring: ring.clone(),
            generators,
        })
    }

    pub fn zero(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g)?;
        }
        f.write_str(")")
    }
}

/// A reduced Gröbner basis: monic, minimal and tail-reduced, sorted by
/// decreasing leading monomial. Unique for a given ideal and order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    /// Normal form of `p` modulo the basis.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        Ok(divide_reduce(p, &self.elements, self.order())?.1)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.reduce(p)?.is_zero())
    }

    pub fn as_ideal(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            generators: self.elements.clone(),
        }
    }
}

/// Multivariate division: `p = sum q_i d_i + r` with no term of `r` divisible by
/// a leading term of any divisor. Divisors are tried in list order.
pub fn divide_reduce(
    p: &Polynomial,
    divisors: &[Polynomial],
    ord: MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial), GroebnerError> {
    let ring = p.ring().reordered(ord);
    let mut rest = p.in_ring(&ring)?;
    let divs: Vec<Polynomial> = divisors.iter().map(|d| d.in_ring(&ring)).collect::<Result<_, _>>()?;
    if divs.iter().any(|d| d.is_zero()) {
        return Err(PolyError::ZeroPolynomial.into());
    }
    let leads: Vec<(Monomial, Rational)> = divs
        .iter()
        .map(|d| {
            let (m, c) = d.leading_term().unwrap();
            (m.clone(), c.clone())
        })
        .collect();
    let mut quotients: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); divs.len()];
    let mut remainder: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(i) => {
                let shift = leads[i].0.quotient_of(&m).unwrap();
                let coeff = &c / &leads[i].1;
                rest = &rest - &divs[i].mul_term(&shift, &coeff);
                quotients[i].push((shift, coeff));
            }
            None => {
                remainder.push((m, c));
                rest = Polynomial::from_sorted(&ring, rest.terms()[1..].to_vec());
            }
        }
    }
    let back = p.ring();
    let quotients = quotients
        .into_iter()
        .map(|q| Polynomial::from_terms(&ring, q).with_order(back.order()))
        .collect();
    let remainder = Polynomial::from_sorted(&ring, remainder).with_order(back.order());
    Ok((quotients, remainder))
}

/// `S(f, g) = (L / lt(f)) f - (L / lt(g)) g` with `L` the lcm of the leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: MonomialOrder) -> Result<Polynomial, GroebnerError> {
    let (mf, cf) = f.leading_term_in(ord)?;
    let (mg, cg) = g.leading_term_in(ord)?;
    let l = mf.lcm(&mg);
    let a = f.mul_term(&mf.quotient_of(&l).unwrap(), &cf.recip());
    let b = g.mul_term(&mg.quotient_of(&l).unwrap(), &cg.recip());
    Ok(a.try_sub(&b)?)
}

pub fn buchberger(ideal: &Ideal) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with(ideal, &GbOptions::default())
}

pub fn buchberger_with(ideal: &Ideal, opts: &GbOptions) -> Result<GroebnerBasis, GroebnerError> {
    if ideal.is_zero() {
        return Err(GroebnerError::ZeroIdeal);
    }
    groebner_basis(ideal, opts)
}

/// Like [`buchberger_with`] but returns an empty basis for the zero ideal.
pub(crate) fn groebner_basis(ideal: &Ideal, opts: &GbOptions) -> Result<GroebnerBasis, GroebnerError> {
    let out = engine::Engine::run(&ideal.ring, &ideal.generators, false, opts.step_cap, opts.execution)?;
    Ok(GroebnerBasis {
        ring: ideal.ring.clone(),
        elements: out.basis,
        reduced: true,
    })
}

/// Reduced basis together with cofactors expressing each element in the
/// original generators: `basis[k] = sum_i cofactors[k][i] * generators[i]`.
pub(crate) fn groebner_with_cofactors(
    ideal: &Ideal,
    opts: &GbOptions,
) -> Result<(GroebnerBasis, Vec<Vec<Polynomial>>), GroebnerError> {
    let out = engine::Engine::run(&ideal.ring, &ideal.generators, true, opts.step_cap, opts.execution)?;
    let cofactors = out.cofactors.unwrap_or_default();
    Ok((
        GroebnerBasis {
            ring: ideal.ring.clone(),
            elements: out.basis,
            reduced: true,
        },
        cofactors,
    ))
}

pub fn ideal_membership(p: &Polynomial, ideal: &Ideal) -> Result<bool, GroebnerError> {
    ideal_membership_with(p, ideal, &GbOptions::default())
}

pub fn ideal_membership_with(p: &Polynomial, ideal: &Ideal, opts: &GbOptions) -> Result<bool, GroebnerError> {
    if p.is_zero() {
        return Ok(true);
    }
    if ideal.is_zero() {
        return Ok(false);
    }
    groebner_basis(ideal, opts)?.contains(p)
}

/// Generators of `I ∩ k[remaining variables]`, computed with a block order that
/// puts the dropped variables first.
pub fn eliminate(ideal: &Ideal, drop_vars: &[&str]) -> Result<Ideal, GroebnerError> {
    eliminate_with(ideal, drop_vars, &GbOptions::default())
}

pub fn eliminate_with(ideal: &Ideal, drop_vars: &[&str], opts: &GbOptions) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring();
    let mut dropped = Vec::new();
    for name in drop_vars {
        let i = ring
            .index_of(name)
            .ok_or_else(|| GroebnerError::UnknownVariable(name.to_string()))?;
        if !dropped.contains(&i) {
            dropped.push(i);
        }
    }
    let kept: Vec<usize> = (0..ring.nvars()).filter(|i| !dropped.contains(i)).collect();
    let k = dropped.len();
    // new position of each old variable: dropped block first
    let mut positions = vec![0; ring.nvars()];
    for (new, &old) in dropped.iter().chain(kept.iter()).enumerate() {
        positions[old] = new;
    }
    let names: Vec<&str> = dropped
        .iter()
        .chain(kept.iter())
        .map(|&i| ring.vars()[i].as_str())
        .collect();
    let elim_ring = Ring::with_order(&names, MonomialOrder::Block(k));
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&elim_ring, &positions))
        .collect();
    let target_names: Vec<&str> = kept.iter().map(|&i| ring.vars()[i].as_str()).collect();
    let target = Ring::with_order(&target_names, MonomialOrder::GrevLex);
    if gens.is_empty() {
        return Ok(Ideal::zero(&target));
    }
    let gb = groebner_basis(&Ideal::new(&elim_ring, &gens)?, opts)?;
    let tail: Vec<usize> = (k..elim_ring.nvars()).collect();
    let generators: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter_map(|g| g.restrict(&target, &tail))
        .map(|g| g.primitive())
        .collect();
    Ideal::new(&target, &generators)
}

/// `(J ∩ (f)) / f`, with the intersection obtained by eliminating `t` from
/// `(t J, (1 - t) f)`.
fn intersect_principal(ideal: &Ideal, f: &Polynomial, opts: &GbOptions) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring();
    let t = syzygy::fresh_names(ring.vars(), "t", 1).remove(0);
    let mut names: Vec<String> = ring.vars().to_vec();
    names.push(t.clone());
    let big = Ring::new(&names);
    let positions: Vec<usize> = (0..ring.nvars()).collect();
    let tv = big.var(ring.nvars());
    let mut gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| &tv * &g.embed(&big, &positions))
        .collect();
    gens.push(&(&big.one() - &tv) * &f.embed(&big, &positions));
    eliminate_with(&Ideal::new(&big, &gens)?, &[t.as_str()], opts)
}

/// `J : f = {g : g f ∈ J}`.
pub fn ideal_quotient(ideal: &Ideal, f: &Polynomial, opts: &GbOptions) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring();
    let f = f.in_ring(ring)?;
    if f.is_zero() {
        return Ideal::new(ring, &[ring.one()]);
    }
    if ideal.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let meet = intersect_principal(ideal, &f, opts)?;
    let mut quotients = Vec::with_capacity(meet.generators().len());
    for g in meet.generators() {
        let (q, r) = divide_reduce(&g.in_ring(ring)?, std::slice::from_ref(&f), ring.order())?;
        debug_assert!(r.is_zero());
        quotients.push(q[0].primitive());
    }
    Ideal::new(ring, &quotients)
}

/// `gcd(f, g)` as `f g / lcm(f, g)`, with `(lcm) = (f) ∩ (g)` obtained by
/// eliminating `t` from `(t f, (1 - t) g)`. Primitive with positive leading term.
pub fn polynomial_gcd(f: &Polynomial, g: &Polynomial, opts: &GbOptions) -> Result<Polynomial, GroebnerError> {
    let ring = f.ring();
    let g = g.in_ring(ring)?;
    if f.is_zero() {
        return Ok(g.primitive());
    }
    if g.is_zero() || f.is_constant() || g.is_constant() {
        return Ok(if g.is_zero() { f.primitive() } else { ring.one() });
    }
    let meet = intersect_principal(&Ideal::new(ring, std::slice::from_ref(f))?, &g, opts)?;
    let lcm = meet.generators()[0].in_ring(ring)?;
    let (q, r) = divide_reduce(&(f * &g), &[lcm], ring.order())?;
    debug_assert!(r.is_zero());
    Ok(q[0].primitive())
}

/// Two ideals are equal iff their reduced bases coincide.
pub fn same_ideal(a: &Ideal, b: &Ideal, opts: &GbOptions) -> Result<bool, GroebnerError> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    let b = Ideal::new(a.ring(), b.generators())?;
    Ok(groebner_basis(a, opts)?.elements == groebner_basis(&b, opts)?.elements)
}
