//! Logarithmic derivations with bounded coefficients, as the kernel of the
//! linear map `(p, q) -> Σ p_i ∂_i h - q h`.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use super::{log_remainder, Derivation, LogderError};
use crate::linalg;
use crate::par::Execution;
use crate::poly::{Monomial, Polynomial, Rational};

/// Basis of the degree-`d` piece of `Der(-log h)` for homogeneous `h`.
#[derive(Clone, Debug, Serialize)]
pub struct GradedDerivationSpace {
    pub degree: u32,
    pub basis: Vec<Derivation>,
}

impl GradedDerivationSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Unknown `mono · ∂_i` with `i = var`.
#[derive(Clone)]
struct Unknown {
    var: usize,
    mono: Monomial,
}

/// Kernel of `(p, q) -> Σ p_i ∂_i h - q h` over the given monomial supports,
/// projected to `p` and brought to reduced echelon form. Every returned
/// derivation is re-verified by exact division.
fn solve(
    h: &Polynomial,
    p_monos: &[Monomial],
    q_monos: &[Monomial],
    exec: Execution,
) -> Result<Vec<Derivation>, LogderError> {
    let ring = h.ring();
    let m = ring.nvars();
    let partials: Vec<Polynomial> = (0..m).map(|i| h.partial_derivative(i)).collect::<Result<_, _>>()?;
    let unknowns: Vec<Unknown> = p_monos
        .iter()
        .flat_map(|mono| {
            (0..m).map(move |var| Unknown {
                var,
                mono: mono.clone(),
            })
        })
        .collect();
    let np = unknowns.len();
    let one = Rational::from_integer(1.into());
    let minus_one = -one.clone();
    let mut images: Vec<Polynomial> = exec.map(&unknowns, |u| partials[u.var].mul_term(&u.mono, &one));
    images.extend(exec.map(q_monos, |mono| h.mul_term(mono, &minus_one)));

    let mut rows: HashMap<Monomial, usize> = HashMap::new();
    for img in &images {
        for (mono, _) in img.terms() {
            let next = rows.len();
            rows.entry(mono.clone()).or_insert(next);
        }
    }
    let ncols = images.len();
    let mut matrix = vec![vec![Rational::zero(); ncols]; rows.len()];
    for (col, img) in images.iter().enumerate() {
        for (mono, c) in img.terms() {
            matrix[rows[mono]][col] = c.clone();
        }
    }
    let kernel = if rows.is_empty() {
        // every image vanishes: all unknowns are free
        (0..ncols)
            .map(|k| {
                let mut v = vec![Rational::zero(); ncols];
                v[k] = one.clone();
                v
            })
            .collect()
    } else {
        linalg::nullspace(&matrix, ncols)
    };
    let projected: Vec<Vec<Rational>> = kernel.into_iter().map(|v| v[..np].to_vec()).collect();
    let echelon = linalg::rref(&projected, np);
    let derivations: Vec<Derivation> = echelon
        .rows
        .iter()
        .map(|row| {
            let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); m];
            for (u, c) in unknowns.iter().zip(row) {
                if !c.is_zero() {
                    parts[u.var].push((u.mono.clone(), c.clone()));
                }
            }
            let coeffs = parts.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect();
            Derivation::new(ring, coeffs).map(|d| d.primitive())
        })
        .collect::<Result<_, _>>()?;
    let checks = exec.map(&derivations, |d| log_remainder(d, h));
    for (index, r) in checks.into_iter().enumerate() {
        let r = r?;
        if !r.is_zero() {
            return Err(LogderError::NotLogarithmic {
                index,
                remainder: r.to_string(),
            });
        }
    }
    Ok(derivations)
}

pub fn graded_log_derivations(h: &Polynomial, d: u32) -> Result<GradedDerivationSpace, LogderError> {
    graded_log_derivations_with(h, d, Execution::default())
}

pub fn graded_log_derivations_with(
    h: &Polynomial,
    d: u32,
    exec: Execution,
) -> Result<GradedDerivationSpace, LogderError> {
    if h.is_constant() {
        return Err(LogderError::ConstantInput);
    }
    if !h.is_homogeneous() {
        return Err(LogderError::NotHomogeneous);
    }
    let m = h.ring().nvars();
    let p_monos = Monomial::all_of_degree(m, d);
    let q_monos = if d == 0 {
        Vec::new()
    } else {
        Monomial::all_of_degree(m, d - 1)
    };
    Ok(GradedDerivationSpace {
        degree: d,
        basis: solve(h, &p_monos, &q_monos, exec)?,
    })
}

/// All logarithmic derivations with coefficients of total degree at most `bound`,
/// for arbitrary (not necessarily homogeneous) `h`. The basis is in reduced
/// echelon form with higher-degree monomials as leading columns, so elements
/// of low degree appear as themselves.
pub fn bounded_log_derivations(h: &Polynomial, bound: u32) -> Result<Vec<Derivation>, LogderError> {
    if h.is_constant() {
        return Err(LogderError::ConstantInput);
    }
    let m = h.ring().nvars();
    let p_monos: Vec<Monomial> = (0..=bound).rev().flat_map(|d| Monomial::all_of_degree(m, d)).collect();
    let q_monos: Vec<Monomial> = (0..bound).rev().flat_map(|d| Monomial::all_of_degree(m, d)).collect();
    let mut basis = solve(h, &p_monos, &q_monos, Execution::default())?;
    basis.sort_by_key(|d| d.degree());
    Ok(basis)
}
