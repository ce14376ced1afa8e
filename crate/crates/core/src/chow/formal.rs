use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::ChowRing;

/// Weighted symbols and the truncation degree of a formal base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSpace {
    names: Vec<String>,
    weights: Vec<u32>,
    dimension: usize,
}

impl FormalSpace {
    pub fn new(names: Vec<String>, weights: Vec<u32>, dimension: usize) -> Arc<Self> {
        assert_eq!(names.len(), weights.len());
        assert!(weights.iter().all(|&w| w > 0), "symbols have positive degree");
        Arc::new(Self {
            names,
            weights,
            dimension,
        })
    }

    /// Symbols `c1..cr` and `f1..fs` of degrees `1..r` and `1..s`.
    pub fn chern_symbols(e_rank: usize, f_rank: usize, dimension: usize) -> Arc<Self> {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for (prefix, rank) in [("c", e_rank), ("f", f_rank)] {
            for i in 1..=rank {
                names.push(format!("{prefix}{i}"));
                weights.push(i as u32);
            }
        }
        Self::new(names, weights, dimension)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn weight(&self, exps: &[u32]) -> usize {
        exps.iter().zip(&self.weights).map(|(e, w)| (e * w) as usize).sum()
    }
}

/// Integer polynomial in the symbols of a [`FormalSpace`]; monomials of degree
/// above the space's dimension are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalClass {
    space: Arc<FormalSpace>,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl FormalClass {
    pub fn zero(space: &Arc<FormalSpace>) -> Self {
        Self {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &Arc<FormalSpace>, c: i64) -> Self {
        let mut z = Self::zero(space);
        z.add_term(vec![0; space.names.len()], c);
        z
    }

    pub fn symbol(space: &Arc<FormalSpace>, index: usize) -> Self {
        let mut exps = vec![0; space.names.len()];
        exps[index] = 1;
        let mut z = Self::zero(space);
        z.add_term(exps, 1);
        z
    }

    pub fn named(space: &Arc<FormalSpace>, name: &str) -> Option<Self> {
        space.index_of(name).map(|i| Self::symbol(space, i))
    }

    pub fn space(&self) -> &Arc<FormalSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: i64) {
        if c == 0 || self.space.weight(&exps) > self.space.dimension {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }
}

impl ChowRing for FormalClass {
    fn dimension(&self) -> usize {
        self.space.dimension
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.space)
    }

    fn one_like(&self) -> Self {
        Self::constant(&self.space, 1)
    }

    fn plus(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.space, &other.space) || self.space == other.space);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    fn times(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.space, &other.space) || self.space == other.space);
        let mut out = self.zero_like();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    fn scaled(&self, k: i64) -> Self {
        let mut out = self.zero_like();
        if k != 0 {
            out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn constant_term(&self) -> i64 {
        self.terms.get(&vec![0; self.space.names.len()]).copied().unwrap_or(0)
    }

    fn graded_part(&self, k: usize) -> Self {
        let mut out = self.zero_like();
        out.terms = self
            .terms
            .iter()
            .filter(|(e, _)| self.space.weight(e) == k)
            .map(|(e, c)| (e.clone(), *c))
            .collect();
        out
    }
}

impl fmt::Display for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| self.space.weight(a).cmp(&self.space.weight(b)).then_with(|| b.cmp(a)));
        for (i, e) in keys.into_iter().enumerate() {
            let c = self.terms[e];
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, p)| **p > 0)
                .map(|(j, p)| {
                    if *p == 1 {
                        self.space.names[j].clone()
                    } else {
                        format!("{}^{}", self.space.names[j], p)
                    }
                })
                .collect();
            match (factors.is_empty(), mag) {
                (true, m) => write!(f, "{m}")?,
                (false, 1) => f.write_str(&factors.join("*"))?,
                (false, m) => write!(f, "{m}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalClass({self})")
    }
}
