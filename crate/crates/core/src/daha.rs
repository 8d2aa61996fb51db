//! Elements of the degenerate affine Hecke algebra `H_l` in the normal form
//! `sum c_{w,a} w * e1^{a_1} ... el^{a_l}` (group part on the left).
//!
//! The only relation needed for straightening is, for a polynomial `f` and a
//! simple reflection `s = s_i`,
//!
//! ```text
//! f * s = s * s(f) - d_i(f),    d_i(f) = (f - s(f)) / (e_i - e_{i+1}),
//! ```
//!
//! which for `f = e_i` is the defining relation `s_i e_i = e_{i+1} s_i - 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, Q};
use crate::root_weyl::Perm;

/// Cap on the total degree of polynomial parts.
pub const DEFAULT_DEGREE_CAP: u32 = 16;

/// Polynomial in `e1..el`: exponent vector to coefficient.
pub type Poly = BTreeMap<Vec<u32>, Q>;

#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    rank: usize,
    terms: BTreeMap<(Perm, Vec<u32>), Q>,
}

fn add_to<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn swap_vars(a: &[u32], i: usize) -> Vec<u32> {
    let mut b = a.to_vec();
    b.swap(i - 1, i);
    b
}

/// `s_i(f)`, 1-based.
pub fn reflect_poly(f: &Poly, i: usize) -> Poly {
    f.iter().map(|(a, c)| (swap_vars(a, i), c.clone())).collect()
}

/// Divided difference `(f - s_i f) / (e_i - e_{i+1})`, 1-based.
pub fn divided_difference(f: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (a, c) in f {
        let (p, r) = (a[i - 1], a[i]);
        if p == r {
            continue;
        }
        // x^p y^r - x^r y^p = (xy)^m (x^k - y^k) * sign, k = |p - r|
        let (m, k, sign) = if p > r { (r, p - r, Q::one()) } else { (p, r - p, -Q::one()) };
        for t in 0..k {
            let mut b = a.clone();
            b[i - 1] = m + k - 1 - t;
            b[i] = m + t;
            add_to(&mut out, b, c * &sign);
        }
    }
    out
}

fn total_degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

impl HeckeElement {
    pub fn zero(rank: usize) -> Self {
        HeckeElement { rank, terms: BTreeMap::new() }
    }

    pub fn scalar(rank: usize, c: Q) -> Self {
        Self::term(Perm::identity(rank), vec![0; rank], c)
    }

    pub fn one(rank: usize) -> Self {
        Self::scalar(rank, Q::one())
    }

    pub fn term(w: Perm, exps: Vec<u32>, c: Q) -> Self {
        let rank = w.n();
        assert_eq!(exps.len(), rank);
        let mut terms = BTreeMap::new();
        add_to(&mut terms, (w, exps), c);
        HeckeElement { rank, terms }
    }

    pub fn group(w: &Perm) -> Self {
        Self::term(w.clone(), vec![0; w.n()], Q::one())
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        Self::group(&Perm::simple(rank, i))
    }

    /// `eps_i^vee`, 1-based.
    pub fn eps(rank: usize, i: usize) -> Self {
        let mut a = vec![0; rank];
        a[i - 1] = 1;
        Self::term(Perm::identity(rank), a, Q::one())
    }

    pub fn from_poly(rank: usize, p: &Poly) -> Self {
        let mut terms = BTreeMap::new();
        for (a, c) in p {
            add_to(&mut terms, (Perm::identity(rank), a.clone()), c.clone());
        }
        HeckeElement { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Vec<u32>, &Q)> {
        self.terms.iter().map(|((w, a), c)| (w, a, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|(_, a)| total_degree(a)).max().unwrap_or(0)
    }

    /// True if every group part is the identity.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|(w, _)| w.is_identity())
    }

    /// Polynomial part, when [`HeckeElement::is_polynomial`] holds.
    pub fn as_poly(&self) -> Option<Poly> {
        self.is_polynomial().then(|| self.terms.iter().map(|((_, a), c)| (a.clone(), c.clone())).collect())
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: other.rank });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_to(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.rank);
        for (k, x) in &self.terms {
            add_to(&mut out.terms, k.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_capped(other, DEFAULT_DEGREE_CAP)
    }

    pub fn mul_capped(&self, other: &Self, cap: u32) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        // Group the left factor by group element so p1 * w2 is straightened once per pair.
        let mut left: BTreeMap<&Perm, Poly> = BTreeMap::new();
        for ((w, a), c) in &self.terms {
            add_to(left.entry(w).or_default(), a.clone(), c.clone());
        }
        let mut right: BTreeMap<&Perm, Poly> = BTreeMap::new();
        for ((w, a), c) in &other.terms {
            add_to(right.entry(w).or_default(), a.clone(), c.clone());
        }
        for (w1, p1) in &left {
            for (w2, p2) in &right {
                let middle = poly_times_word(p1, &w2.reduced_word(), self.rank);
                for ((g, f), c) in middle.terms {
                    let wg = w1.mul(&g);
                    for (a2, c2) in p2 {
                        let exps: Vec<u32> = f.iter().zip(a2).map(|(x, y)| x + y).collect();
                        let deg = total_degree(&exps);
                        if deg > cap {
                            return Err(Error::DegreeOverflow(deg));
                        }
                        add_to(&mut out.terms, (wg.clone(), exps), &c * c2);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Commutator `xy - yx`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Image under the evaluation homomorphism `H_l -> Q[W_l]`,
    /// `w -> w`, `e_i -> sum_{j<i} s_{ji}`.
    pub fn evaluation(&self) -> Result<Self> {
        let n = self.rank;
        let jm: Vec<HeckeElement> = (1..=n)
            .map(|i| {
                (1..i).fold(Self::zero(n), |acc, j| {
                    acc.add(&Self::group(&Perm::transposition(n, j, i))).expect("same rank")
                })
            })
            .collect();
        let mut out = Self::zero(n);
        for ((w, a), c) in &self.terms {
            let mut t = Self::term(w.clone(), vec![0; n], c.clone());
            for (i, &k) in a.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&jm[i])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Commutes with `s_1..s_{l-1}` and `e_1`, which generate `H_l`.
    pub fn is_central(&self) -> Result<bool> {
        let n = self.rank;
        for i in 1..n {
            if !self.commutator(&Self::simple(n, i))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(self.commutator(&Self::eps(n, 1))?.is_zero())
    }

    /// A pure polynomial invariant under every `s_i`.
    pub fn is_symmetric_polynomial(&self) -> bool {
        match self.as_poly() {
            Some(p) => (1..self.rank).all(|i| reflect_poly(&p, i) == p),
            None => false,
        }
    }

    /// The automorphism `t_c`: `s_i -> s_i`, `e_i -> e_i + c`.
    pub fn twist(&self, c: &Q) -> Self {
        let n = self.rank;
        let mut out = Self::zero(n);
        for ((w, a), coef) in &self.terms {
            // expand prod_i (e_i + c)^{a_i}
            let mut acc: Poly = Poly::from([(vec![0; n], coef.clone())]);
            for (i, &k) in a.iter().enumerate() {
                let mut next = Poly::new();
                for (b, x) in &acc {
                    let mut binom = Q::one();
                    for t in 0..=k {
                        // binom(k, t) e_i^t c^{k-t}
                        let mut e = b.clone();
                        e[i] += t;
                        let cpow = num_traits::pow(c.clone(), (k - t) as usize);
                        add_to(&mut next, e, x * &binom * cpow);
                        binom = binom * q((k - t) as i64) / q(t as i64 + 1);
                    }
                }
                acc = next;
            }
            for (b, x) in acc {
                add_to(&mut out.terms, (w.clone(), b), x);
            }
        }
        out
    }

    /// Parses the printed grammar, e.g. `w[2,1,3]*e1^2*e3 + 1/2`. Factors
    /// inside a term are multiplied in the order written.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut out = Self::zero(rank);
        let mut depth = 0i32;
        let mut start = 0;
        let bytes: Vec<char> = compact.chars().collect();
        let mut pieces = Vec::new();
        for (i, &ch) in bytes.iter().enumerate() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                '+' | '-' if depth == 0 && i > start && bytes[i - 1] != '*' => {
                    pieces.push(bytes[start..i].iter().collect::<String>());
                    start = i;
                }
                _ => {}
            }
        }
        pieces.push(bytes[start..].iter().collect::<String>());
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(b) => (-Q::one(), b.to_string()),
                None => (Q::one(), piece.strip_prefix('+').unwrap_or(&piece).to_string()),
            };
            let mut t = Self::scalar(rank, sign);
            for f in body.split('*') {
                t = t.mul(&Self::parse_factor(f, rank)?)?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    fn parse_factor(f: &str, rank: usize) -> Result<Self> {
        if f == "0" {
            return Ok(Self::zero(rank));
        }
        if let Some(inner) = f.strip_prefix('w') {
            let w = Perm::parse(inner, Some(rank))?;
            return Ok(Self::group(&w));
        }
        if let Some(rest) = f.strip_prefix('e') {
            let (idx, pow) = match rest.split_once('^') {
                Some((i, p)) => (i, p.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{f}`")))?),
                None => (rest, 1),
            };
            let i: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable `{f}`")))?;
            if i == 0 || i > rank {
                return Err(Error::Parse(format!("variable `{f}` out of range for rank {rank}")));
            }
            let mut a = vec![0; rank];
            a[i - 1] = pow;
            return Ok(Self::term(Perm::identity(rank), a, Q::one()));
        }
        Ok(Self::scalar(rank, parse_q(f)?))
    }
}

/// `p * s_{a_1} * ... * s_{a_k}` straightened into normal form. Any word for
/// the same permutation gives the same result.
pub fn poly_times_word(p: &Poly, word: &[usize], rank: usize) -> HeckeElement {
    let mut state: BTreeMap<(Perm, Vec<u32>), Q> = BTreeMap::new();
    for (a, c) in p {
        add_to(&mut state, (Perm::identity(rank), a.clone()), c.clone());
    }
    for &i in word {
        let s = Perm::simple(rank, i);
        // regroup so each (g, f) is handled as a polynomial block
        let mut blocks: BTreeMap<Perm, Poly> = BTreeMap::new();
        for ((g, a), c) in state {
            add_to(blocks.entry(g).or_default(), a, c);
        }
        let mut next = BTreeMap::new();
        for (g, f) in blocks {
            let gs = g.mul(&s);
            for (a, c) in reflect_poly(&f, i) {
                add_to(&mut next, (gs.clone(), a), c);
            }
            for (a, c) in divided_difference(&f, i) {
                add_to(&mut next, (g.clone(), a), -c);
            }
        }
        state = next;
    }
    HeckeElement { rank, terms: state }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((w, a), c)) in self.terms.iter().enumerate() {
            let neg = *c < Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            let trivial = w.is_identity() && a.iter().all(|&x| x == 0);
            if !abs.is_one() || trivial {
                factors.push(fmt_q(&abs));
            }
            if !w.is_identity() {
                factors.push(format!("w{w}"));
            }
            for (i, &e) in a.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("e{}", i + 1)),
                    _ => factors.push(format!("e{}^{e}", i + 1)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn h(s: &str, rank: usize) -> HeckeElement {
        HeckeElement::parse(s, rank).unwrap()
    }

    #[test]
    fn defining_relation() {
        // s e1 = e2 s - 1, so e2 s straightens to s e1 + 1
        let lhs = HeckeElement::eps(2, 2).mul(&HeckeElement::simple(2, 1)).unwrap();
        assert_eq!(lhs, h("w[2,1]*e1 + 1", 2));
        assert_eq!(lhs.to_string(), "1 + w[2,1]*e1");
    }

    #[test]
    fn polynomials_commute() {
        let a = HeckeElement::eps(3, 1).mul(&HeckeElement::eps(3, 2)).unwrap();
        let b = HeckeElement::eps(3, 2).mul(&HeckeElement::eps(3, 1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn symmetric_sum_commutes_with_s() {
        let p = h("e1 + e2", 2);
        let s = HeckeElement::simple(2, 1);
        assert_eq!(p.mul(&s).unwrap(), s.mul(&p).unwrap());
    }

    #[test]
    fn evaluation_examples() {
        assert!(HeckeElement::eps(3, 1).evaluation().unwrap().is_zero());
        assert_eq!(HeckeElement::eps(3, 2).evaluation().unwrap(), HeckeElement::simple(3, 1));
        let x = h("w[2,1]*e1", 2).sub(&h("e2*w[2,1]", 2)).unwrap();
        assert_eq!(x.evaluation().unwrap(), HeckeElement::scalar(2, q(-1)));
    }

    #[test]
    fn centrality() {
        assert!(h("e1^2 + e2^2 + e3^2", 3).is_central().unwrap());
        assert!(!HeckeElement::eps(3, 1).is_central().unwrap());
        assert!(!HeckeElement::simple(3, 1).is_central().unwrap());
    }

    #[test]
    fn twist_examples() {
        let x = h("w[2,1,3]*e1^2*e3 + 1/2", 3);
        assert_eq!(x.twist(&q(0)), x);
        assert_eq!(HeckeElement::eps(2, 1).twist(&q(1)), h("e1 + 1", 2));
        assert_eq!(x.twist(&qf(3, 2)).twist(&qf(-3, 2)), x);
    }

    #[test]
    fn print_parse_round_trip() {
        let x = h("w[2,1,3]*e1^2*e3 + 1/2", 3);
        assert_eq!(x.to_string(), "1/2 + w[2,1,3]*e1^2*e3");
        assert_eq!(h(&x.to_string(), 3), x);
        assert!(HeckeElement::parse("e4", 3).is_err());
        assert!(HeckeElement::parse("w[1,2]", 3).is_err());
    }

    #[test]
    fn degree_cap_enforced() {
        let x = h("e1^9", 2);
        assert!(matches!(x.mul(&x), Err(Error::DegreeOverflow(18))));
    }

    #[test]
    fn divided_difference_values() {
        let f: Poly = Poly::from([(vec![2, 0], q(1))]);
        // (x^2 - y^2)/(x - y) = x + y
        let d = divided_difference(&f, 1);
        assert_eq!(d, Poly::from([(vec![1, 0], q(1)), (vec![0, 1], q(1))]));
    }
}
