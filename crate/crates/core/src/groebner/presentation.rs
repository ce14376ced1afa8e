//! Jacobian ideals and the two presentations of the blowup algebra of an ideal
//! `(f_1..f_m)` in `k[x][T_1..T_m]`:
//!
//! * Sym: generated by the T-linear forms of the syzygies of `f`.
//! * Rees: the kernel of `T_i -> t f_i`.
//!
//! Sym is always contained in Rees; the ideal is of linear type iff they agree.

use std::fmt;

use super::syzygy::{fresh_names, linear_form_ring, syzygies_with, to_linear_form};
use super::{eliminate_with, groebner_basis, GbOptions, GroebnerError, Ideal};
use crate::poly::{Polynomial, Ring};

/// An ideal of `k[base][T]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationIdeal {
    base_vars: Vec<String>,
    t_vars: Vec<String>,
    ideal: Ideal,
}

impl PresentationIdeal {
    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    pub fn t_vars(&self) -> &[String] {
        &self.t_vars
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.ideal.is_zero()
    }
}

impl fmt::Display for PresentationIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ideal.fmt(f)
    }
}

/// How the Rees side of the comparison is obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinearTypeMethod {
    /// `Rees = Sym : g^∞` for a nonzero generator `g`, so linear type iff `Sym : g = Sym`.
    #[default]
    Saturation,
    /// Rees ideal by eliminating `t` from `(T_i - t f_i)`.
    Elimination,
}

#[derive(Clone, Debug)]
pub struct LinearTypeVerdict {
    pub linear_type: bool,
    /// An element of the Rees ideal outside the Sym ideal when `linear_type` is false.
    pub witness: Option<Polynomial>,
    pub sym: PresentationIdeal,
    /// Generators of `Sym : g` or of the Rees ideal, depending on the method.
    pub comparison: PresentationIdeal,
    pub method: LinearTypeMethod,
}

/// `(h, ∂h/∂x_1, ..., ∂h/∂x_n)`; zero derivatives are dropped.
pub fn jacobian_ideal(h: &Polynomial) -> Result<Ideal, GroebnerError> {
    if h.is_constant() {
        return Err(GroebnerError::ConstantInput);
    }
    let mut gens = vec![h.clone()];
    for i in 0..h.ring().nvars() {
        gens.push(h.partial_derivative(i)?);
    }
    Ideal::new(h.ring(), &gens)
}

fn check_input(f: &[Polynomial]) -> Result<Ring, GroebnerError> {
    let first = f.first().ok_or(GroebnerError::EmptyInput)?;
    for p in f {
        p.in_ring(first.ring())?;
    }
    if f.iter().all(|p| p.is_zero()) {
        return Err(GroebnerError::Poly(crate::poly::PolyError::ZeroPolynomial));
    }
    Ok(first.ring().clone())
}

pub fn sym_ideal(f: &[Polynomial]) -> Result<PresentationIdeal, GroebnerError> {
    sym_ideal_with(f, &GbOptions::default())
}

pub fn sym_ideal_with(f: &[Polynomial], opts: &GbOptions) -> Result<PresentationIdeal, GroebnerError> {
    let base = check_input(f)?;
    let module = syzygies_with(f, opts)?;
    let (tring, t_vars) = linear_form_ring(&base, f.len());
    let forms: Vec<Polynomial> = module
        .relations()
        .iter()
        .map(|r| to_linear_form(r, &tring).primitive())
        .collect();
    Ok(PresentationIdeal {
        base_vars: base.vars().to_vec(),
        t_vars,
        ideal: Ideal::new(&tring, &forms)?,
    })
}

pub fn rees_ideal(f: &[Polynomial]) -> Result<PresentationIdeal, GroebnerError> {
    rees_ideal_with(f, &GbOptions::default())
}

pub fn rees_ideal_with(f: &[Polynomial], opts: &GbOptions) -> Result<PresentationIdeal, GroebnerError> {
    let base = check_input(f)?;
    let n = base.nvars();
    let m = f.len();
    let (tring, t_vars) = linear_form_ring(&base, m);
    let mut taken: Vec<String> = tring.vars().to_vec();
    taken.extend(t_vars.iter().cloned());
    let t = fresh_names(&taken, "t", 1).remove(0);
    let mut names = tring.vars().to_vec();
    names.push(t.clone());
    let big = Ring::new(&names);
    let positions: Vec<usize> = (0..n).collect();
    let tvar = big.var(n + m);
    let gens: Vec<Polynomial> = f
        .iter()
        .enumerate()
        .map(|(i, fi)| &big.var(n + i) - &(&tvar * &fi.embed(&big, &positions)))
        .collect();
    let elim = eliminate_with(&Ideal::new(&big, &gens)?, &[t.as_str()], opts)?;
    Ok(PresentationIdeal {
        base_vars: base.vars().to_vec(),
        t_vars,
        ideal: elim,
    })
}

pub fn is_linear_type(f: &[Polynomial]) -> Result<LinearTypeVerdict, GroebnerError> {
    is_linear_type_with(f, &GbOptions::default(), LinearTypeMethod::default())
}

/// Generators of `Sym : g` for the nonzero generator `g` of least degree. Since
/// `R[T]/Rees` is a domain containing `R`, `g` is a nonzerodivisor on it and
/// `Rees = Sym : g^∞`; one quotient step that changes nothing proves equality.
pub fn sym_quotient_with(
    f: &[Polynomial],
    sym: &PresentationIdeal,
    opts: &GbOptions,
) -> Result<PresentationIdeal, GroebnerError> {
    let g = f
        .iter()
        .filter(|p| !p.is_zero())
        .min_by_key(|p| (p.degree(), p.len()))
        .ok_or(GroebnerError::EmptyInput)?;
    let positions: Vec<usize> = (0..g.ring().nvars()).collect();
    let g = g.embed(sym.ring(), &positions);
    let quotient = if sym.is_zero() {
        sym.ideal().clone()
    } else {
        super::ideal_quotient(sym.ideal(), &g, opts)?
    };
    Ok(PresentationIdeal {
        base_vars: sym.base_vars.clone(),
        t_vars: sym.t_vars.clone(),
        ideal: quotient,
    })
}

/// Generators of the comparison ideal are reduced against a basis of Sym; the
/// first nonzero remainder is the witness.
pub fn is_linear_type_with(
    f: &[Polynomial],
    opts: &GbOptions,
    method: LinearTypeMethod,
) -> Result<LinearTypeVerdict, GroebnerError> {
    let (sym, comparison) = match method {
        LinearTypeMethod::Saturation => {
            let sym = sym_ideal_with(f, opts)?;
            let q = sym_quotient_with(f, &sym, opts)?;
            (sym, q)
        }
        LinearTypeMethod::Elimination => {
            let (sym, rees) = opts
                .execution
                .join(|| sym_ideal_with(f, opts), || rees_ideal_with(f, opts));
            (sym?, rees?)
        }
    };
    let witness = if sym.is_zero() {
        comparison.generators().first().cloned()
    } else {
        let gb = groebner_basis(sym.ideal(), opts)?;
        let inside = opts.execution.map(comparison.generators(), |g| gb.contains(g));
        let mut found = None;
        for (g, inside) in comparison.generators().iter().zip(inside) {
            if !inside? {
                found = Some(g.clone());
                break;
            }
        }
        found
    };
    Ok(LinearTypeVerdict {
        linear_type: witness.is_none(),
        witness,
        sym,
        comparison,
        method,
    })
}
