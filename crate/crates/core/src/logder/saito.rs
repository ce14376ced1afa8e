//! Saito's criterion: `m` logarithmic derivations form a basis of `Der(-log h)`
//! iff the determinant of their coefficient matrix is a nonzero scalar times `h`.

use serde::Serialize;

use super::{log_remainder, Derivation, LogderError};
use crate::poly::{Polynomial, Rational};

/// A verified free basis.
#[derive(Clone, Debug, Serialize)]
pub struct SaitoCertificate {
    /// Sorted by degree.
    pub basis: Vec<Derivation>,
    #[serde(serialize_with = "as_string")]
    pub determinant: Polynomial,
    /// `determinant = unit * h`.
    #[serde(serialize_with = "as_string")]
    pub unit: Rational,
    /// Degrees of the basis elements, ascending.
    pub exponents: Vec<u32>,
}

/// The candidates are logarithmic but their determinant is not a unit times `h`.
#[derive(Clone, Debug, Serialize)]
pub struct SaitoFailure {
    #[serde(serialize_with = "as_string")]
    pub determinant: Polynomial,
}

fn as_string<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// `det [θ_j(x_i)]` by Laplace expansion over column subsets; `2^m` states.
pub fn saito_determinant(basis: &[Derivation]) -> Result<Polynomial, LogderError> {
    let Some(first) = basis.first() else {
        return Err(LogderError::WrongBasisSize { expected: 1, found: 0 });
    };
    let ring = first.ring().clone();
    let m = ring.nvars();
    if basis.len() != m {
        return Err(LogderError::WrongBasisSize {
            expected: m,
            found: basis.len(),
        });
    }
    for d in basis {
        if !d.ring().same_vars(&ring) {
            return Err(LogderError::VariableMismatch {
                expected: m,
                found: d.coeffs().len(),
            });
        }
    }
    // minors[mask] = det of the first |mask| rows restricted to the columns in mask
    let mut minors: Vec<Option<Polynomial>> = vec![None; 1 << m];
    minors[0] = Some(ring.one());
    for mask in 1usize..(1 << m) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = ring.zero();
        // expansion along row `row`, the last row of the leading minor
        let mut sign_neg = row % 2 == 1;
        for col in 0..m {
            if mask & (1 << col) == 0 {
                continue;
            }
            let rest = mask & !(1 << col);
            let entry = basis[row].coeffs()[col].in_ring(&ring)?;
            if !entry.is_zero() {
                if let Some(minor) = &minors[rest] {
                    let term = &entry * minor;
                    acc = if sign_neg { &acc - &term } else { &acc + &term };
                }
            }
            // sign alternates along the columns still present in the mask
            sign_neg = !sign_neg;
        }
        if !acc.is_zero() {
            minors[mask] = Some(acc);
        }
    }
    Ok(minors[(1 << m) - 1].take().unwrap_or_else(|| ring.zero()))
}

/// Checks that every element is logarithmic and that the determinant is `c · h`
/// with `c ≠ 0`.
pub fn saito_test(h: &Polynomial, basis: &[Derivation]) -> Result<Result<SaitoCertificate, SaitoFailure>, LogderError> {
    let m = h.ring().nvars();
    if basis.len() != m {
        return Err(LogderError::WrongBasisSize {
            expected: m,
            found: basis.len(),
        });
    }
    for (index, d) in basis.iter().enumerate() {
        let r = log_remainder(d, h)?;
        if !r.is_zero() {
            return Err(LogderError::NotLogarithmic {
                index,
                remainder: r.to_string(),
            });
        }
    }
    let mut sorted: Vec<Derivation> = basis.to_vec();
    sorted.sort_by_key(|d| d.degree());
    let determinant = saito_determinant(&sorted)?;
    let h = h.in_ring(determinant.ring())?;
    match determinant.scalar_ratio(&h) {
        Some(unit) => {
            let exponents = sorted.iter().map(|d| d.degree().unwrap_or(0)).collect();
            Ok(Ok(SaitoCertificate {
                basis: sorted,
                determinant,
                unit,
                exponents,
            }))
        }
        None => Ok(Err(SaitoFailure { determinant })),
    }
}

/// Upper bound on the number of `m`-subsets tried by [`saito_from_candidates`].
pub const MAX_SAITO_COMBINATIONS: usize = 5000;

/// Tries `m`-subsets of the candidates in order of total degree, then
/// lexicographically, and returns the first that passes Saito's criterion.
/// `None` if no subset within [`MAX_SAITO_COMBINATIONS`] works.
pub fn saito_from_candidates(
    h: &Polynomial,
    candidates: &[Derivation],
) -> Result<Option<SaitoCertificate>, LogderError> {
    let m = h.ring().nvars();
    let nonzero: Vec<&Derivation> = candidates.iter().filter(|d| !d.is_zero()).collect();
    if nonzero.len() < m {
        return Ok(None);
    }
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    collect_subsets(nonzero.len(), m, 0, &mut current, &mut subsets, MAX_SAITO_COMBINATIONS);
    let weight = |s: &Vec<usize>| -> u32 { s.iter().map(|&i| nonzero[i].degree().unwrap_or(0)).sum() };
    subsets.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| a.cmp(b)));
    for s in subsets {
        let pick: Vec<Derivation> = s.iter().map(|&i| nonzero[i].clone()).collect();
        if let Ok(cert) = saito_test(h, &pick)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

fn collect_subsets(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) {
    if out.len() >= cap {
        return;
    }
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    for i in start..n {
        if n - i < k - current.len() {
            break;
        }
        current.push(i);
        collect_subsets(n, k, i + 1, current, out, cap);
        current.pop();
        if out.len() >= cap {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logder::{bounded_log_derivations, default_ring};
    use crate::poly::{parse_in_ring, Ring};

    fn der(r: &Ring, t: &[&str]) -> Derivation {
        Derivation::parse(r, t).unwrap()
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let r = Ring::new(&["x", "y", "z"]);
        let b = [
            der(&r, &["x", "y", "z"]),
            der(&r, &["0", "y", "2*z"]),
            der(&r, &["y^2", "0", "x"]),
        ];
        // expansion along the first column
        let expected = parse_in_ring("x*(y*x - 0) - 0 + y^2*(y*2*z - y*z)", &r).unwrap();
        assert_eq!(saito_determinant(&b).unwrap(), expected);
    }

    #[test]
    fn normal_crossing() {
        let r = default_ring(2);
        let h = parse_in_ring("x*y", &r).unwrap();
        let cert = saito_test(&h, &[der(&r, &["x", "0"]), der(&r, &["0", "y"])])
            .unwrap()
            .unwrap();
        assert_eq!(cert.exponents, vec![1, 1]);
        assert_eq!(cert.unit, Rational::from_integer(1.into()));
    }

    #[test]
    fn cusp_certificate() {
        let r = default_ring(2);
        let h = parse_in_ring("x^2 - y^3", &r).unwrap();
        let cert = saito_test(&h, &[der(&r, &["3*y^2", "2*x"]), der(&r, &["3*x", "2*y"])])
            .unwrap()
            .unwrap();
        assert_eq!(cert.determinant, parse_in_ring("6*x^2 - 6*y^3", &r).unwrap());
        assert_eq!(cert.unit, Rational::from_integer(6.into()));
        assert_eq!(cert.exponents, vec![1, 2]);
        let found = saito_from_candidates(&h, &bounded_log_derivations(&h, 2).unwrap())
            .unwrap()
            .expect("a basis within degree 2");
        assert!(found.unit != Rational::from_integer(0.into()));
        assert_eq!(found.determinant.scalar_ratio(&h), Some(found.unit.clone()));
    }

    #[test]
    fn failures() {
        let r = default_ring(2);
        let h = parse_in_ring("x*y", &r).unwrap();
        let fail = saito_test(&h, &[der(&r, &["x", "0"]), der(&r, &["0", "x*y"])])
            .unwrap()
            .unwrap_err();
        assert_eq!(fail.determinant, parse_in_ring("x^2*y", &r).unwrap());
        assert!(matches!(
            saito_test(&h, &[der(&r, &["1", "0"]), der(&r, &["0", "y"])]),
            Err(LogderError::NotLogarithmic { index: 0, .. })
        ));
        assert!(matches!(
            saito_test(&h, &[der(&r, &["x", "0"])]),
            Err(LogderError::WrongBasisSize { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn subset_enumeration_respects_cap() {
        let mut out = Vec::new();
        collect_subsets(5, 2, 0, &mut Vec::new(), &mut out, 100);
        assert_eq!(out.len(), 10);
        let mut capped = Vec::new();
        collect_subsets(30, 3, 0, &mut Vec::new(), &mut capped, 50);
        assert_eq!(capped.len(), 50);
    }
}
