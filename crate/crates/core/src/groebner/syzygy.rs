//! Syzygies by Schreyer's construction on a cofactor-tracked Gröbner basis.
//!
//! With `G = A F` (cofactors from Buchberger) and `F = B G` (division of each
//! input by `G`), the relations of `F` are generated by `s A` for the Schreyer
//! relations `s` of `G`, together with the rows of `I - B A`.

use super::{divide_reduce, groebner_basis, groebner_with_cofactors, GbOptions, GroebnerBasis, GroebnerError, Ideal};
use crate::poly::{Monomial, Polynomial, Rational, Ring};
use num_traits::One;

/// Generating set of `{(a_i) : sum a_i f_i = 0}`.
#[derive(Clone, Debug)]
pub struct SyzygyModule {
    generators: Vec<Polynomial>,
    relations: Vec<Vec<Polynomial>>,
}

impl SyzygyModule {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn relations(&self) -> &[Vec<Polynomial>] {
        &self.relations
    }

    pub fn is_zero(&self) -> bool {
        self.relations.is_empty()
    }

    /// Expands every relation and checks it vanishes.
    pub fn verify(&self) -> bool {
        self.relations.iter().all(|r| expand(r, &self.generators).is_zero())
    }
}

pub(crate) fn expand(relation: &[Polynomial], generators: &[Polynomial]) -> Polynomial {
    relation
        .iter()
        .zip(generators)
        .fold(generators[0].ring().zero(), |acc, (a, f)| &acc + &(a * f))
}

pub fn syzygies(f: &[Polynomial]) -> Result<SyzygyModule, GroebnerError> {
    syzygies_with(f, &GbOptions::default())
}

pub fn syzygies_with(f: &[Polynomial], opts: &GbOptions) -> Result<SyzygyModule, GroebnerError> {
    if f.is_empty() {
        return Err(GroebnerError::EmptyInput);
    }
    let ring = f[0].ring().clone();
    let f: Vec<Polynomial> = f.iter().map(|p| p.in_ring(&ring)).collect::<Result<_, _>>()?;
    let m = f.len();
    let unit =
        |i: usize| -> Vec<Polynomial> { (0..m).map(|k| if k == i { ring.one() } else { ring.zero() }).collect() };

    let nonzero: Vec<usize> = (0..m).filter(|&i| !f[i].is_zero()).collect();
    let mut candidates: Vec<Vec<Polynomial>> = (0..m).filter(|i| f[*i].is_zero()).map(unit).collect();

    if !nonzero.is_empty() {
        let sub: Vec<Polynomial> = nonzero.iter().map(|&i| f[i].clone()).collect();
        let (gb, cof) = groebner_with_cofactors(&Ideal::new(&ring, &sub)?, opts)?;
        let g = gb.elements();
        let lift = |coords: &[Polynomial]| -> Vec<Polynomial> {
            // coords are in G; map through the cofactor matrix into F
            let mut out: Vec<Polynomial> = vec![ring.zero(); m];
            for (k, c) in coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (pos, &i) in nonzero.iter().enumerate() {
                    out[i] = &out[i] + &(c * &cof[k][pos]);
                }
            }
            out
        };

        for i in 0..g.len() {
            for j in (i + 1)..g.len() {
                let (mi, _) = g[i].leading_term()?;
                let (mj, _) = g[j].leading_term()?;
                let l = mi.lcm(mj);
                let si = mi.quotient_of(&l).unwrap();
                let sj = mj.quotient_of(&l).unwrap();
                let s = &g[i].mul_term(&si, &Rational::one()) - &g[j].mul_term(&sj, &Rational::one());
                let (q, r) = divide_reduce(&s, g, gb.order())?;
                debug_assert!(r.is_zero());
                let mut coords: Vec<Polynomial> = q.iter().map(|p| -p).collect();
                coords[i] = &coords[i] + &ring.term(si, Rational::one());
                coords[j] = &coords[j] - &ring.term(sj, Rational::one());
                candidates.push(lift(&coords));
            }
        }
        for (pos, &i) in nonzero.iter().enumerate() {
            let (b, r) = divide_reduce(&sub[pos], g, gb.order())?;
            debug_assert!(r.is_zero());
            let back = lift(&b);
            let mut row = unit(i);
            for k in 0..m {
                row[k] = &row[k] - &back[k];
            }
            candidates.push(row);
        }
    }

    let relations = minimize(&ring, &f, candidates, opts)?;
    Ok(SyzygyModule {
        generators: f,
        relations,
    })
}

/// Names for `count` presentation variables that do not clash with `base`.
pub(crate) fn fresh_names(base: &[String], prefix: &str, count: usize) -> Vec<String> {
    let mut sep = String::new();
    loop {
        let names: Vec<String> = (1..=count).map(|i| format!("{prefix}{sep}{i}")).collect();
        if names.iter().all(|n| !base.contains(n)) {
            return names;
        }
        sep.push('_');
    }
}

/// Ring `base[T1..Tm]` used to encode module elements as T-linear forms.
pub(crate) fn linear_form_ring(base: &Ring, m: usize) -> (Ring, Vec<String>) {
    let t = fresh_names(base.vars(), "T", m);
    let mut names: Vec<String> = base.vars().to_vec();
    names.extend(t.iter().cloned());
    (Ring::new(&names), t)
}

pub(crate) fn to_linear_form(relation: &[Polynomial], ring: &Ring) -> Polynomial {
    let n = relation[0].ring().nvars();
    let positions: Vec<usize> = (0..n).collect();
    relation.iter().enumerate().fold(ring.zero(), |acc, (i, a)| {
        let t = Monomial::var(ring.nvars(), n + i);
        &acc + &a.embed(ring, &positions).mul_term(&t, &Rational::one())
    })
}

fn from_linear_form(form: &Polynomial, base: &Ring, m: usize) -> Vec<Polynomial> {
    let n = base.nvars();
    let base_positions: Vec<usize> = (0..n).collect();
    let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); m];
    for (mono, c) in form.terms() {
        let i = (0..m).find(|&i| mono.exponent(n + i) == 1).unwrap();
        parts[i].push((mono.select(&base_positions), c.clone()));
    }
    parts.into_iter().map(|t| Polynomial::from_terms(base, t)).collect()
}

fn relation_degree(relation: &[Polynomial], f: &[Polynomial]) -> u32 {
    relation
        .iter()
        .zip(f)
        .filter_map(|(a, fi)| Some(a.degree()? + fi.degree().unwrap_or(0)))
        .max()
        .unwrap_or(0)
}

/// Drops zero and redundant relations, scanning by increasing degree. A relation
/// is redundant when its T-linear form lies in the ideal of the kept ones.
fn minimize(
    ring: &Ring,
    f: &[Polynomial],
    mut candidates: Vec<Vec<Polynomial>>,
    opts: &GbOptions,
) -> Result<Vec<Vec<Polynomial>>, GroebnerError> {
    let m = f.len();
    let (tring, _) = linear_form_ring(ring, m);
    candidates.retain(|r| r.iter().any(|a| !a.is_zero()));
    candidates.sort_by_cached_key(|r| (relation_degree(r, f), r.iter().map(|a| a.len()).sum::<usize>()));
    let mut kept_forms: Vec<Polynomial> = Vec::new();
    let mut gb: Option<GroebnerBasis> = None;
    let mut kept = Vec::new();
    for r in candidates {
        let form = to_linear_form(&r, &tring).primitive();
        if let Some(gb) = &gb {
            if gb.contains(&form)? {
                continue;
            }
        }
        kept_forms.push(form.clone());
        gb = Some(groebner_basis(&Ideal::new(&tring, &kept_forms)?, opts)?);
        kept.push(from_linear_form(&form, ring, m));
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn polys(texts: &[&str]) -> Vec<Polynomial> {
        texts
            .iter()
            .map(|t| parse_polynomial(t, &["x", "y"]).unwrap())
            .collect()
    }

    fn rel_strings(s: &SyzygyModule) -> Vec<Vec<String>> {
        s.relations()
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect()
    }

    #[test]
    fn koszul_relation() {
        let s = syzygies(&polys(&["x", "y"])).unwrap();
        assert!(s.verify());
        assert_eq!(rel_strings(&s), vec![vec!["y", "-x"]]);
    }

    #[test]
    fn twisted_cubic_cone_relations() {
        let s = syzygies(&polys(&["x^2", "x*y", "y^2"])).unwrap();
        assert!(s.verify());
        let mut got = rel_strings(&s);
        got.sort();
        assert_eq!(got, vec![vec!["0", "y", "-x"], vec!["y", "-x", "0"]]);
    }

    #[test]
    fn unit_generator_has_no_relations() {
        let s = syzygies(&polys(&["1"])).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn zero_generator_gives_unit_relation() {
        let s = syzygies(&polys(&["x", "0"])).unwrap();
        assert!(s.verify());
        assert_eq!(rel_strings(&s), vec![vec!["0", "1"]]);
    }

    #[test]
    fn jacobian_of_cusp_relations_verify() {
        let s = syzygies(&polys(&["x^2 - y^3", "2*x", "-3*y^2"])).unwrap();
        assert!(s.verify());
        assert!(!s.is_zero());
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let base = vec!["x".to_string(), "T1".to_string()];
        assert_eq!(fresh_names(&base, "T", 2), vec!["T_1", "T_2"]);
        assert_eq!(fresh_names(&["x".to_string()], "T", 2), vec!["T1", "T2"]);
    }
}
