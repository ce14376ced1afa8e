//! Freeness of `Der(-log h)` for homogeneous `h`.
//!
//! Minimal homogeneous generators are collected degree by degree: a degree-`d`
//! logarithmic derivation is a new generator iff it is not in the span of the
//! polynomial multiples of the generators already found. By graded Nakayama a
//! free module has exactly `m` minimal generators forming a Saito basis, so
//! more than `m`, a degree sum above `deg h`, or `m` generators failing
//! Saito's criterion each certify non-freeness.

use serde::{Deserialize, Serialize};

use super::saito::{saito_test, SaitoCertificate, SaitoFailure};
use super::solve::graded_log_derivations_with;
use super::{Derivation, LogderError};
use crate::arrangement::{characteristic_polynomial, Arrangement, CharPoly};
use crate::chow::{ChowClass, ChowRing};
use crate::groebner::{polynomial_gcd, GbOptions};
use crate::linalg;
use crate::par::Execution;
use crate::poly::{Monomial, Polynomial, Rational};

#[derive(Clone, Copy, Debug, Default)]
pub struct FreenessOptions {
    /// Largest generator degree searched; `deg h` when `None`.
    pub degree_bound: Option<u32>,
    pub execution: Execution,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum NonFreeReason {
    /// `χ(t)` does not split over the nonnegative integers.
    TeraoFactorization {
        verdict: TeraoVerdict,
    },
    TooManyGenerators {
        degrees: Vec<u32>,
    },
    DegreeSumExceeded {
        degrees: Vec<u32>,
        polynomial_degree: u32,
    },
    /// Exactly `m` minimal generators whose determinant is not a unit times `h`.
    SaitoFailure {
        degrees: Vec<u32>,
        failure: SaitoFailure,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum FreenessVerdict {
    Free {
        certificate: SaitoCertificate,
    },
    NotFree {
        reason: NonFreeReason,
    },
    /// Fewer than `m` generators up to the degree bound.
    Inconclusive {
        degrees: Vec<u32>,
        degree_bound: u32,
    },
}

impl FreenessVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, FreenessVerdict::Free { .. })
    }

    pub fn certificate(&self) -> Option<&SaitoCertificate> {
        match self {
            FreenessVerdict::Free { certificate } => Some(certificate),
            _ => None,
        }
    }

    pub fn exponents(&self) -> Option<&[u32]> {
        self.certificate().map(|c| c.exponents.as_slice())
    }
}

/// Integer-root deflation of `χ(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeraoVerdict {
    pub certified_non_free: bool,
    /// Integer roots with multiplicity, ascending.
    pub roots: Vec<i64>,
    /// What is left after removing the integer roots, descending coefficients.
    pub residual: Vec<i64>,
    /// Discriminant of the residual when it is quadratic.
    pub discriminant: Option<i64>,
}

/// A free arrangement has `χ(t) = Π (t - e_i)` with `e_i ≥ 0`; a nonconstant
/// residual or a negative root rules freeness out.
pub fn terao_factorization_check(a: &Arrangement) -> TeraoVerdict {
    terao_check_char_poly(&characteristic_polynomial(a))
}

pub fn terao_check_char_poly(chi: &CharPoly) -> TeraoVerdict {
    let mut poly: Vec<i64> = chi.coeffs().to_vec();
    let mut roots = Vec::new();
    while poly.len() > 1 {
        let Some(r) = integer_root(&poly) else {
            break;
        };
        roots.push(r);
        poly = deflate(&poly, r);
    }
    roots.sort_unstable();
    let discriminant = (poly.len() == 3).then(|| poly[1] * poly[1] - 4 * poly[0] * poly[2]);
    TeraoVerdict {
        certified_non_free: poly.len() > 1 || roots.iter().any(|&r| r < 0),
        roots,
        residual: poly,
        discriminant,
    }
}

fn evaluate(poly: &[i64], t: i64) -> i128 {
    poly.iter().fold(0i128, |acc, &c| acc * t as i128 + c as i128)
}

/// An integer root: `0`, or a divisor of the constant term.
fn integer_root(poly: &[i64]) -> Option<i64> {
    let c = *poly.last()?;
    if c == 0 {
        return Some(0);
    }
    let c = c.unsigned_abs();
    let mut d = 1u64;
    while d * d <= c {
        if c % d == 0 {
            for q in [d, c / d] {
                for r in [q as i64, -(q as i64)] {
                    if evaluate(poly, r) == 0 {
                        return Some(r);
                    }
                }
            }
        }
        d += 1;
    }
    None
}

/// Synthetic division by `t - r`; `r` must be a root.
fn deflate(poly: &[i64], r: i64) -> Vec<i64> {
    let mut out = Vec::with_capacity(poly.len() - 1);
    let mut acc = 0i64;
    for &c in &poly[..poly.len() - 1] {
        acc = acc * r + c;
        out.push(acc);
    }
    out
}

/// Coordinates of a homogeneous derivation of degree `d` in the basis
/// `mono · ∂_i`, monomials in `Monomial::all_of_degree` order.
fn coordinates(theta: &Derivation, monos: &[Monomial]) -> Vec<Rational> {
    monos
        .iter()
        .flat_map(|mono| theta.coeffs().iter().map(move |p| p.coefficient(mono)))
        .collect()
}

pub fn find_free_basis(h: &Polynomial) -> Result<FreenessVerdict, LogderError> {
    find_free_basis_with(h, &FreenessOptions::default())
}

/// Decides freeness of `Der(-log h)` for a homogeneous squarefree `h`.
pub fn find_free_basis_with(h: &Polynomial, opts: &FreenessOptions) -> Result<FreenessVerdict, LogderError> {
    if h.is_constant() {
        return Err(LogderError::ConstantInput);
    }
    if !h.is_homogeneous() {
        return Err(LogderError::NotHomogeneous);
    }
    let gb = GbOptions {
        execution: opts.execution,
        ..GbOptions::default()
    };
    let mut g = h.clone();
    for i in 0..h.ring().nvars() {
        g = polynomial_gcd(&g, &h.partial_derivative(i)?, &gb)?;
        if g.is_constant() {
            break;
        }
    }
    if !g.is_constant() {
        return Err(LogderError::NotSquarefree { factor: g.to_string() });
    }
    search(h, opts)
}

fn search(h: &Polynomial, opts: &FreenessOptions) -> Result<FreenessVerdict, LogderError> {
    let ring = h.ring();
    let m = ring.nvars();
    let deg_h = h.degree().unwrap_or(0);
    let bound = opts.degree_bound.unwrap_or(deg_h);
    let mut generators: Vec<Derivation> = Vec::new();
    for d in 0..=bound {
        let monos = Monomial::all_of_degree(m, d);
        let ncols = monos.len() * m;
        let mut span: Vec<Vec<Rational>> = Vec::new();
        for g in &generators {
            let gd = g.degree().unwrap_or(0);
            for shift in Monomial::all_of_degree(m, d - gd) {
                let one = Rational::from_integer(1.into());
                let mult = g.scale_by(&ring.term(shift, one));
                span.push(coordinates(&mult, &monos));
            }
        }
        let mut echelon = linalg::rref(&span, ncols);
        let space = graded_log_derivations_with(h, d, opts.execution)?;
        for theta in space.basis {
            let v = coordinates(&theta, &monos);
            if !echelon.contains(&v) {
                span.push(v);
                echelon = linalg::rref(&span, ncols);
                generators.push(theta);
            }
        }
        let degrees: Vec<u32> = generators.iter().map(|g| g.degree().unwrap_or(0)).collect();
        if generators.len() > m {
            return Ok(FreenessVerdict::NotFree {
                reason: NonFreeReason::TooManyGenerators { degrees },
            });
        }
        if degrees.iter().sum::<u32>() > deg_h {
            return Ok(FreenessVerdict::NotFree {
                reason: NonFreeReason::DegreeSumExceeded {
                    degrees,
                    polynomial_degree: deg_h,
                },
            });
        }
        if generators.len() == m {
            return Ok(match saito_test(h, &generators)? {
                Ok(certificate) => FreenessVerdict::Free { certificate },
                Err(failure) => FreenessVerdict::NotFree {
                    reason: NonFreeReason::SaitoFailure { degrees, failure },
                },
            });
        }
    }
    Ok(FreenessVerdict::Inconclusive {
        degrees: generators.iter().map(|g| g.degree().unwrap_or(0)).collect(),
        degree_bound: bound,
    })
}

/// Freeness of an arrangement: Terao's factorization test first, then the
/// generator search on the defining polynomial. The empty arrangement is free
/// with basis `∂_i` and all exponents zero.
pub fn arrangement_freeness(a: &Arrangement, opts: &FreenessOptions) -> Result<FreenessVerdict, LogderError> {
    let verdict = terao_factorization_check(a);
    if verdict.certified_non_free {
        return Ok(FreenessVerdict::NotFree {
            reason: NonFreeReason::TeraoFactorization { verdict },
        });
    }
    let ring = a.ring();
    if a.is_empty() {
        let basis: Vec<Derivation> = (0..ring.nvars()).map(|i| Derivation::partial(&ring, i)).collect();
        let certificate = saito_test(&ring.one(), &basis)?.expect("identity matrix has determinant 1");
        return Ok(FreenessVerdict::Free { certificate });
    }
    // distinct linear forms: squarefree by construction
    search(&a.defining_polynomial(), opts)
}

/// Total Chern class of the logarithmic tangent sheaf on `P^n` of a free
/// arrangement with exponents `1, e_2, .., e_{n+1}`: the sheaf splits as
/// `⊕ O(1 - e_i)` over the non-Euler exponents, giving `Π (1 + (1 - e_i) h)`.
/// All-zero exponents (no hyperplanes) give `c(T P^n) = (1 + h)^{n+1}`.
pub fn chern_log_sheaf(exponents: &[u32], n: usize) -> Result<ChowClass, LogderError> {
    if exponents.len() != n + 1 {
        return Err(LogderError::ExponentCount {
            expected: n + 1,
            found: exponents.len(),
        });
    }
    let linear = |e: i64| ChowClass::from_polynomial(n, &[1, e]);
    if exponents.iter().all(|&e| e == 0) {
        return Ok((0..=n).fold(ChowClass::one(n), |acc, _| acc.times(&linear(1))));
    }
    let Some(euler) = exponents.iter().position(|&e| e == 1) else {
        return Err(LogderError::NoEulerExponent {
            exponents: exponents.to_vec(),
        });
    };
    Ok(exponents
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != euler)
        .fold(ChowClass::one(n), |acc, (_, &e)| acc.times(&linear(1 - e as i64))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logder::default_ring;
    use crate::poly::parse_in_ring;

    fn free_exponents(a: &Arrangement) -> Vec<u32> {
        let v = arrangement_freeness(a, &FreenessOptions::default()).unwrap();
        v.exponents().expect("free").to_vec()
    }

    #[test]
    fn free_arrangements() {
        assert_eq!(free_exponents(&Arrangement::boolean(2)), vec![1, 1, 1]);
        assert_eq!(free_exponents(&Arrangement::braid(2, true)), vec![1, 2, 3]);
        let concurrent = Arrangement::from_integers(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        assert_eq!(free_exponents(&concurrent), vec![0, 1, 2]);
        let xyz_sum = Arrangement::from_integers(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0]]).unwrap();
        assert_eq!(free_exponents(&xyz_sum), vec![1, 1, 2]);
        assert_eq!(free_exponents(&Arrangement::new(2, vec![]).unwrap()), vec![0, 0, 0]);
    }

    #[test]
    fn generic_planes_fail_terao() {
        let a = Arrangement::from_integers(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let v = terao_factorization_check(&a);
        assert!(v.certified_non_free);
        assert_eq!(v.roots, vec![1]);
        assert_eq!(v.residual, vec![1, -3, 3]);
        assert_eq!(v.discriminant, Some(-3));
        let verdict = arrangement_freeness(&a, &FreenessOptions::default()).unwrap();
        assert!(matches!(
            verdict,
            FreenessVerdict::NotFree {
                reason: NonFreeReason::TeraoFactorization { .. }
            }
        ));
    }

    #[test]
    fn generic_planes_fail_generator_search_too() {
        let r = default_ring(3);
        let h = parse_in_ring("x*y*z*(x + y + z)", &r).unwrap();
        let v = find_free_basis(&h).unwrap();
        assert!(matches!(v, FreenessVerdict::NotFree { .. }), "{v:?}");
    }

    #[test]
    fn factorization_alone_is_not_sufficient_input() {
        let chi = CharPoly::new(vec![1, -6, 11, -6]);
        let v = terao_check_char_poly(&chi);
        assert!(!v.certified_non_free);
        assert_eq!(v.roots, vec![1, 2, 3]);
        assert!(v.residual.len() == 1 && v.discriminant.is_none());
        let negative = terao_check_char_poly(&CharPoly::new(vec![1, 0, -1]));
        assert!(negative.certified_non_free);
        assert_eq!(negative.roots, vec![-1, 1]);
    }

    #[test]
    fn rejects_non_reduced_input() {
        let r = default_ring(2);
        let h = parse_in_ring("x^2*y", &r).unwrap();
        assert_eq!(
            find_free_basis(&h).unwrap_err(),
            LogderError::NotSquarefree { factor: "x".into() }
        );
    }

    #[test]
    fn bound_too_small_is_inconclusive() {
        let opts = FreenessOptions {
            degree_bound: Some(1),
            ..Default::default()
        };
        let v = arrangement_freeness(&Arrangement::braid(2, true), &opts).unwrap();
        assert!(matches!(v, FreenessVerdict::Inconclusive { ref degrees, degree_bound: 1 } if degrees == &[1]));
    }

    #[test]
    fn log_sheaf_classes() {
        assert_eq!(chern_log_sheaf(&[1, 2, 3], 2).unwrap().coeffs(), &[1, -3, 2]);
        assert_eq!(chern_log_sheaf(&[1, 1, 1], 2).unwrap().coeffs(), &[1, 0, 0]);
        assert_eq!(chern_log_sheaf(&[0, 0, 0], 2).unwrap().coeffs(), &[1, 3, 3]);
        assert_eq!(chern_log_sheaf(&[0, 1, 1], 2).unwrap().coeffs(), &[1, 1, 0]);
        assert!(matches!(
            chern_log_sheaf(&[1, 2], 2),
            Err(LogderError::ExponentCount { .. })
        ));
        assert!(matches!(
            chern_log_sheaf(&[0, 2, 2], 2),
            Err(LogderError::NoEulerExponent { .. })
        ));
    }
}
