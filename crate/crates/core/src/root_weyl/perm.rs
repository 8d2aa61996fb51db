use std::fmt;

use super::weight::Weight;
use crate::error::{Error, Result};

/// An element of `S_n` in one-line notation (stored 0-based).
///
/// Products compose right to left: `(w * v)(x) = w(v(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u8).collect() }
    }

    /// Simple transposition `s_i = (i, i+1)`, 1-based.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} is not a simple reflection of S_{n}");
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    /// Transposition `s_{ij}`, 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Perm { images: images.iter().map(|&x| (x - 1) as u8).collect() })
    }

    /// `s_{a_1} s_{a_2} ... s_{a_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::Parse(format!("s{i} is not a generator of S_{n}")));
            }
            p = p.mul(&Self::simple(n, i));
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n(), "permutations of different degrees");
        Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut l = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// `l(w s_i) < l(w)`, 1-based.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    /// `l(s_i w) < l(w)`, 1-based.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.images[i - 1] > inv.images[i]
    }

    /// Lexicographically first reduced word, `w = s_{a_1} ... s_{a_k}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        // Strip left descents: w = s_i (s_i w).
        while let Some(i) = (1..w.n()).find(|&i| w.has_left_descent(i)) {
            word.push(i);
            w = Perm::simple(w.n(), i).mul(&w);
        }
        word
    }

    /// All of `S_n`, sorted by length and then lexicographically.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Perm { images: cur.clone() });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out.sort_by_key(|p| p.length());
        out
    }

    /// Longest element of `S_n`.
    pub fn longest(n: usize) -> Perm {
        Perm { images: (0..n as u8).rev().collect() }
    }

    /// Acts on weights by permuting coordinates: `w(eps_i) = eps_{w(i)}`.
    pub fn act(&self, lambda: &Weight) -> Weight {
        assert_eq!(self.n(), lambda.rank());
        let mut c = lambda.coords().to_vec();
        for i in 0..self.n() {
            c[self.apply(i)] = lambda.coord(i).clone();
        }
        Weight::new(c)
    }

    /// Accepts `[2,1,3]`, compact `213` (for `n <= 9`), a word such as
    /// `s1 s2` / `s1*s2`, or `e`. Words and `e` need the degree `n`.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Perm> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            let imgs = inner
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad permutation `{s}`"))))
                .collect::<Result<Vec<_>>>()?;
            return Self::checked_degree(Self::from_one_line(&imgs)?, n);
        }
        if !t.is_empty() && t.chars().all(|c| c.is_ascii_digit()) {
            let imgs: Vec<usize> = t.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
            return Self::checked_degree(Self::from_one_line(&imgs)?, n);
        }
        let n = n.ok_or_else(|| Error::Parse(format!("degree needed to parse word `{s}`")))?;
        if t == "e" || t.is_empty() {
            return Ok(Perm::identity(n));
        }
        let word = t
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|x| !x.is_empty())
            .map(|tok| {
                tok.strip_prefix('s')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad generator `{tok}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::from_word(n, &word)
    }

    fn checked_degree(p: Perm, n: Option<usize>) -> Result<Perm> {
        match n {
            Some(n) if n != p.n() => Err(Error::RankMismatch { expected: n, got: p.n() }),
            _ => Ok(p),
        }
    }

    /// `s1 s2`-style reduced word, `e` for the identity.
    pub fn word_string(&self) -> String {
        let w = self.reduced_word();
        if w.is_empty() {
            "e".into()
        } else {
            w.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
        }
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Bruhat order via the tableau (rank-matrix) criterion:
/// `x <= y` iff `#{j <= i : x(j) >= k} <= #{j <= i : y(j) >= k}` for all `i, k`.
pub fn bruhat_leq(x: &Perm, y: &Perm) -> bool {
    assert_eq!(x.n(), y.n());
    let n = x.n();
    for i in 0..n {
        for k in 0..n {
            let cx = (0..=i).filter(|&j| x.apply(j) >= k).count();
            let cy = (0..=i).filter(|&j| y.apply(j) >= k).count();
            if cx > cy {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_factor_first() {
        let s1 = Perm::simple(3, 1);
        let s2 = Perm::simple(3, 2);
        assert_eq!(s1.mul(&s2).one_line(), vec![2, 3, 1]);
        assert_eq!(Perm::from_word(3, &[1, 2]).unwrap(), s1.mul(&s2));
    }

    #[test]
    fn reduced_words_reconstruct() {
        for w in Perm::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(Perm::from_word(4, &word).unwrap(), w);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Perm::parse("[2,1,3]", None).unwrap(), Perm::simple(3, 1));
        assert_eq!(Perm::parse("1324", Some(4)).unwrap(), Perm::simple(4, 2));
        assert_eq!(Perm::parse("s2 s1", Some(3)).unwrap(), Perm::from_word(3, &[2, 1]).unwrap());
        assert_eq!(Perm::parse("e", Some(3)).unwrap(), Perm::identity(3));
        assert!(Perm::parse("[1,1]", None).is_err());
        assert!(Perm::parse("s5", Some(3)).is_err());
        assert!(Perm::parse("s1", None).is_err());
    }

    #[test]
    fn bruhat_examples() {
        let e = Perm::identity(3);
        for w in Perm::all(3) {
            assert!(bruhat_leq(&e, &w));
        }
        let s1 = Perm::simple(3, 1);
        let s1s2 = Perm::from_word(3, &[1, 2]).unwrap();
        let s2s1 = Perm::from_word(3, &[2, 1]).unwrap();
        assert!(bruhat_leq(&s1, &s1s2));
        assert!(!bruhat_leq(&s1s2, &s2s1));
        assert!(!bruhat_leq(&s2s1, &s1s2));
    }

    #[test]
    fn all_has_factorial_size() {
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::all(1).len(), 1);
        assert_eq!(Perm::longest(4).length(), 6);
    }
}
