//! Buchberger's algorithm over fraction-free integer polynomials.
//!
//! Rational inputs are scaled to primitive integer polynomials; every reduction
//! step is `p <- (b/g) p - (a/g) m f` followed by removal of the content. Optional
//! cofactor tracking keeps, for every basis element `p`, rational polynomials
//! `c_i` with `p = sum c_i f_i` over the original generators.
//!
//! Pairs are processed by the normal strategy in batches of equal lcm degree.
//! Each batch is reduced against a snapshot of the basis (in parallel when the
//! execution mode allows it) and the remainders are then inserted one by one in
//! batch order, so the output does not depend on thread scheduling.

use std::cmp::Ordering;
use std::iter::Peekable;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GroebnerError;
use crate::par::Execution;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

pub(crate) struct Budget {
    used: AtomicUsize,
    cap: usize,
}

impl Budget {
    pub(crate) fn new(cap: usize) -> Self {
        Self {
            used: AtomicUsize::new(0),
            cap,
        }
    }

    pub(crate) fn tick(&self) -> Result<(), GroebnerError> {
        let n = self.used.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        if n > self.cap {
            Err(GroebnerError::ResourceLimit { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct IPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl IPoly {
    /// Returns `(q, s)` with `q = s * p` primitive.
    fn from_rational(p: &Polynomial) -> (IPoly, Rational) {
        let prim = p.primitive();
        let s = if p.is_zero() {
            Rational::one()
        } else {
            &prim.terms()[0].1 / &p.terms()[0].1
        };
        let terms = prim.terms().iter().map(|(m, c)| (m.clone(), c.to_integer())).collect();
        (IPoly { terms }, s)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn divide(&mut self, d: &BigInt) {
        for (_, c) in &mut self.terms {
            *c = &*c / d;
        }
    }

    fn to_rational(&self, ring: &Ring) -> Polynomial {
        Polynomial::from_sorted(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone())))
                .collect(),
        )
    }
}

/// Sorted merge of `a - b`.
fn merge_sub<A, B>(ord: MonomialOrder, out: &mut Vec<(Monomial, BigInt)>, a: A, b: B)
where
    A: Iterator<Item = (Monomial, BigInt)>,
    B: Iterator<Item = (Monomial, BigInt)>,
{
    let mut a: Peekable<A> = a.peekable();
    let mut b: Peekable<B> = b.peekable();
    loop {
        let which = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some((ma, _)), Some((mb, _))) => ord.cmp(ma, mb),
        };
        match which {
            Ordering::Greater => out.push(a.next().unwrap()),
            Ordering::Less => {
                let (m, c) = b.next().unwrap();
                out.push((m, -c));
            }
            Ordering::Equal => {
                let (m, ca) = a.next().unwrap();
                let (_, cb) = b.next().unwrap();
                let c = ca - cb;
                if !c.is_zero() {
                    out.push((m, c));
                }
            }
        }
    }
}

fn scaled<'a>(
    terms: &'a [(Monomial, BigInt)],
    shift: &'a Monomial,
    factor: &'a BigInt,
) -> impl Iterator<Item = (Monomial, BigInt)> + 'a {
    terms.iter().map(move |(m, c)| (m.mul(shift), c * factor))
}

#[derive(Clone, Debug)]
struct Tracked {
    poly: IPoly,
    cof: Option<Vec<Polynomial>>,
}

impl Tracked {
    fn normalize(&mut self) {
        if self.poly.is_zero() {
            return;
        }
        let mut g = self.poly.content();
        if self.poly.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            self.poly.divide(&g);
            if let Some(cof) = &mut self.cof {
                let inv = Rational::new(BigInt::one(), g);
                for c in cof.iter_mut() {
                    *c = c.scale(&inv);
                }
            }
        }
    }
}

struct Element {
    tracked: Tracked,
    mask: u64,
}

impl Element {
    fn lm(&self) -> &Monomial {
        self.tracked.poly.lm()
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub(crate) struct GbOutput {
    pub basis: Vec<Polynomial>,
    /// `cofactors[k][i]` multiplies input `i` in the expression of `basis[k]`.
    pub cofactors: Option<Vec<Vec<Polynomial>>>,
}

pub(crate) struct Engine {
    ord: MonomialOrder,
    ring: Ring,
    elems: Vec<Element>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    budget: Budget,
    exec: Execution,
}

impl Engine {
    /// Reduced Gröbner basis of the ideal generated by `gens` under `ring`'s order.
    pub(crate) fn run(
        ring: &Ring,
        gens: &[Polynomial],
        track: bool,
        step_cap: usize,
        exec: Execution,
    ) -> Result<GbOutput, GroebnerError> {
        let ord = ring.order();
        let inputs: Vec<Polynomial> = gens.iter().map(|g| g.in_ring(ring)).collect::<Result<_, _>>()?;
        let mut engine = Engine {
            ord,
            ring: ring.clone(),
            elems: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            budget: Budget::new(step_cap),
            exec,
        };
        // inputs enter one at a time, each reduced against what is already there
        for (i, f) in inputs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let (poly, s) = IPoly::from_rational(f);
            let cof = track.then(|| {
                (0..inputs.len())
                    .map(|k| if k == i { ring.constant(s.clone()) } else { ring.zero() })
                    .collect()
            });
            let t = engine.reduce(Tracked { poly, cof }, &engine.active, 0)?;
            if !t.poly.is_zero() {
                engine.insert(t);
            }
        }
        engine.main_loop()?;
        engine.finish(inputs.len())
    }

    fn main_loop(&mut self) -> Result<(), GroebnerError> {
        while !self.pairs.is_empty() {
            let deg = self.pairs.iter().map(|p| p.lcm.degree()).min().unwrap();
            let (mut batch, rest): (Vec<Pair>, Vec<Pair>) = self.pairs.drain(..).partition(|p| p.lcm.degree() == deg);
            self.pairs = rest;
            let ord = self.ord;
            batch.sort_by(|a, b| ord.cmp(&a.lcm, &b.lcm).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)));
            let snapshot = self.active.clone();
            let this = &*self;
            let results = self.exec.map(&batch, |pair| {
                let s = this.s_polynomial(pair);
                this.reduce(s, &snapshot, 0)
            });
            for r in results {
                let r = r?;
                if r.poly.is_zero() {
                    continue;
                }
                let r = if self.active != snapshot {
                    self.reduce(r, &self.active, 0)?
                } else {
                    r
                };
                if !r.poly.is_zero() {
                    self.insert(r);
                }
            }
        }
        Ok(())
    }

    fn s_polynomial(&self, pair: &Pair) -> Tracked {
        let f = &self.elems[pair.i].tracked;
        let g = &self.elems[pair.j].tracked;
        let sf = f.poly.lm().quotient_of(&pair.lcm).unwrap();
        let sg = g.poly.lm().quotient_of(&pair.lcm).unwrap();
        let gcd = f.poly.lc().gcd(g.poly.lc());
        let mf = g.poly.lc() / &gcd;
        let mg = f.poly.lc() / &gcd;
        let mut out = Vec::with_capacity(f.poly.terms.len() + g.poly.terms.len());
        merge_sub(
            self.ord,
            &mut out,
            scaled(&f.poly.terms[1..], &sf, &mf),
            scaled(&g.poly.terms[1..], &sg, &mg),
        );
        let cof = match (&f.cof, &g.cof) {
            (Some(cf), Some(cg)) => {
                let a = Rational::from_integer(mf);
                let b = Rational::from_integer(mg);
                Some(
                    cf.iter()
                        .zip(cg)
                        .map(|(x, y)| &x.mul_term(&sf, &a) - &y.mul_term(&sg, &b))
                        .collect(),
                )
            }
            _ => None,
        };
        let mut t = Tracked {
            poly: IPoly { terms: out },
            cof,
        };
        t.normalize();
        t
    }

    fn find_divisor(&self, m: &Monomial, basis: &[usize]) -> Option<usize> {
        let mask = m.support_mask();
        basis.iter().copied().find(|&idx| {
            let e = &self.elems[idx];
            e.mask & !mask == 0 && e.lm().divides(m)
        })
    }

    /// Fully reduces the terms of `t` from position `start` on.
    fn reduce(&self, mut t: Tracked, basis: &[usize], start: usize) -> Result<Tracked, GroebnerError> {
        let mut k = start;
        while k < t.poly.terms.len() {
            let Some(idx) = self.find_divisor(&t.poly.terms[k].0, basis) else {
                k += 1;
                continue;
            };
            self.budget.tick()?;
            let g = &self.elems[idx].tracked;
            let shift = g.poly.lm().quotient_of(&t.poly.terms[k].0).unwrap();
            let a = &t.poly.terms[k].1;
            let b = g.poly.lc();
            let gcd = a.gcd(b);
            let ma = a / &gcd;
            let mb = b / &gcd;
            let mut out = Vec::with_capacity(t.poly.terms.len() + g.poly.terms.len());
            if mb.is_one() {
                out.extend(t.poly.terms[..k].iter().cloned());
            } else {
                out.extend(t.poly.terms[..k].iter().map(|(m, c)| (m.clone(), c * &mb)));
            }
            let one = Monomial::one(shift.nvars());
            merge_sub(
                self.ord,
                &mut out,
                scaled(&t.poly.terms[k + 1..], &one, &mb),
                scaled(&g.poly.terms[1..], &shift, &ma),
            );
            t.poly.terms = out;
            if let (Some(cp), Some(cg)) = (&mut t.cof, &g.cof) {
                let a = Rational::from_integer(ma);
                let b = Rational::from_integer(mb);
                for (x, y) in cp.iter_mut().zip(cg) {
                    *x = &x.scale(&b) - &y.mul_term(&shift, &a);
                }
            }
            t.normalize();
        }
        t.normalize();
        Ok(t)
    }

    /// Adds a fully reduced element and updates pairs with the Gebauer–Möller
    /// criteria (Buchberger's coprime criterion included).
    fn insert(&mut self, t: Tracked) {
        let h = self.elems.len();
        let mask = t.poly.lm().support_mask();
        self.elems.push(Element { tracked: t, mask });
        let lm_h = self.elems[h].lm().clone();

        let mut candidates: Vec<(usize, Monomial)> =
            self.active.iter().map(|&g| (g, lm_h.lcm(self.elems[g].lm()))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = candidates.pop() {
            let coprime = lm_h.is_coprime(self.elems[g1].lm());
            if coprime
                || (!candidates.iter().any(|(_, l2)| l2.divides(&l1)) && !kept.iter().any(|(_, l2)| l2.divides(&l1)))
            {
                kept.push((g1, l1));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lm_h.is_coprime(self.elems[*g].lm()))
            .map(|(g, l)| Pair { i: g, j: h, lcm: l })
            .collect();

        let elems = &self.elems;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm) && lm_h.lcm(elems[p.i].lm()) != p.lcm && lm_h.lcm(elems[p.j].lm()) != p.lcm)
        });
        self.pairs.extend(fresh);
        self.active.retain(|&g| !lm_h.divides(elems[g].lm()));
        self.active.push(h);
    }

    fn finish(mut self, ninputs: usize) -> Result<GbOutput, GroebnerError> {
        let ord = self.ord;
        let mut order = self.active.clone();
        order.sort_by(|&a, &b| ord.cmp(self.elems[a].lm(), self.elems[b].lm()));
        // tail-reduce, smallest leading monomial first
        for pos in 0..order.len() {
            let idx = order[pos];
            let others: Vec<usize> = order.iter().copied().filter(|&o| o != idx).collect();
            let t = self.elems[idx].tracked.clone();
            let reduced = self.reduce(t, &others, 1)?;
            self.elems[idx].tracked = reduced;
        }
        order.reverse();
        let mut basis = Vec::with_capacity(order.len());
        let mut cofactors = Vec::with_capacity(order.len());
        let tracking = self.elems.first().is_some_and(|e| e.tracked.cof.is_some());
        for idx in order {
            let t = &self.elems[idx].tracked;
            let inv = Rational::new(BigInt::one(), t.poly.lc().clone());
            basis.push(t.poly.to_rational(&self.ring).scale(&inv));
            if let Some(cof) = &t.cof {
                cofactors.push(cof.iter().map(|c| c.scale(&inv)).collect::<Vec<_>>());
            }
        }
        debug_assert!(!tracking || cofactors.iter().all(|c| c.len() == ninputs));
        Ok(GbOutput {
            basis,
            cofactors: tracking.then_some(cofactors),
        })
    }
}
