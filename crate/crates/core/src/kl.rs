//! Kazhdan-Lusztig polynomials of `S_n` and the multiplicity formulas for
//! Verma modules and standard modules built on them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::root_weyl::{bruhat_leq, coset_data, dot_action, rho, tensor_weight_decompose, ParabolicData, Perm, Weight};

/// Polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    fn add_shifted(&mut self, other: &IntPolynomial, shift: usize, factor: i64) {
        if self.coeffs.len() < other.coeffs.len() + shift {
            self.coeffs.resize(other.coeffs.len() + shift, 0);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[i + shift] += factor * c;
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    /// Parses `"1+q"`, `"1+2q^3"`, `"0"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut coeffs = Vec::new();
        let bad = || Error::Parse(format!("malformed polynomial `{s}`"));
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            terms.push(cur);
        }
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (c, deg) = match body.split_once('q') {
                None => (body.parse::<i64>().map_err(|_| bad())?, 0usize),
                Some((c, rest)) => {
                    let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? };
                    let d = match rest.strip_prefix('^') {
                        Some(d) => d.parse::<usize>().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (c, d)
                }
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] += sign * c;
        }
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let a = c.abs();
            let body = match (d, a) {
                (0, _) => a.to_string(),
                (1, 1) => "q".to_string(),
                (1, _) => format!("{a}q"),
                (_, 1) => format!("q^{d}"),
                _ => format!("{a}q^{d}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// Memoized KL polynomials. Reads take a shared lock; each newly computed
/// value is inserted under a short exclusive lock.
#[derive(Default)]
pub struct KlEngine {
    cache: RwLock<HashMap<(Perm, Perm), IntPolynomial>>,
}

impl KlEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide engine; seeded from `KL_CACHE` by the CLI when set.
    pub fn global() -> &'static KlEngine {
        static ENGINE: OnceLock<KlEngine> = OnceLock::new();
        ENGINE.get_or_init(KlEngine::new)
    }

    pub fn cached_len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    /// `P_{x,y}(q)`, zero unless `x <= y`.
    pub fn poly(&self, x: &Perm, y: &Perm) -> Result<IntPolynomial> {
        if x.n() != y.n() {
            return Err(Error::RankMismatch { expected: y.n(), got: x.n() });
        }
        Ok(self.poly_unchecked(x, y))
    }

    fn poly_unchecked(&self, x: &Perm, y: &Perm) -> IntPolynomial {
        if x == y {
            return IntPolynomial::one();
        }
        if !bruhat_leq(x, y) {
            return IntPolynomial::zero();
        }
        let key = (x.clone(), y.clone());
        if let Some(p) = self.cache.read().unwrap().get(&key) {
            return p.clone();
        }
        let p = self.compute(x, y);
        self.cache.write().unwrap().insert(key, p.clone());
        p
    }

    /// `mu(z, v)`: coefficient of `q^{(l(v)-l(z)-1)/2}` in `P_{z,v}`.
    pub fn mu(&self, z: &Perm, v: &Perm) -> i64 {
        let (lz, lv) = (z.length(), v.length());
        if lv <= lz || (lv - lz) % 2 == 0 {
            return 0;
        }
        self.poly_unchecked(z, v).coeff((lv - lz - 1) / 2)
    }

    // Recursion on a right descent s of y, with v = ys:
    // P_{x,y} = q^{1-c} P_{xs,v} + q^c P_{x,v}
    //           - sum_{z < v, zs < z} mu(z,v) q^{(l(y)-l(z))/2} P_{x,z},
    // where c = 1 if xs < x and 0 otherwise.
    fn compute(&self, x: &Perm, y: &Perm) -> IntPolynomial {
        let n = y.n();
        let i = (1..n).find(|&i| y.has_right_descent(i)).expect("y > x is not the identity");
        let s = Perm::simple(n, i);
        let v = y.mul(&s);
        let xs = x.mul(&s);
        let c = usize::from(x.has_right_descent(i));
        let mut p = IntPolynomial::zero();
        p.add_shifted(&self.poly_unchecked(&xs, &v), 1 - c, 1);
        p.add_shifted(&self.poly_unchecked(x, &v), c, 1);
        let ly = y.length();
        for z in Perm::all(n) {
            if z == v || !z.has_right_descent(i) || z.length() >= v.length() {
                continue;
            }
            if !bruhat_leq(x, &z) || !bruhat_leq(&z, &v) {
                continue;
            }
            let m = self.mu(&z, &v);
            if m != 0 {
                let pxz = self.poly_unchecked(x, &z);
                p.add_shifted(&pxz, (ly - z.length()) / 2, -m);
            }
        }
        p
    }

    /// Writes every cached entry as `x;y;c0,c1,...`, one per line, sorted.
    pub fn save(&self, path: &Path) -> Result<()> {
        let cache = self.cache.read().unwrap();
        let mut lines: Vec<String> = cache
            .iter()
            .map(|((x, y), p)| {
                let cs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                format!("{x};{y};{}", cs.join(","))
            })
            .collect();
        lines.sort();
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        for l in lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }

    /// Merges entries from a file written by [`KlEngine::save`]; a missing
    /// file is treated as empty.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let f = match std::fs::File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let mut count = 0;
        let mut cache = self.cache.write().unwrap();
        for line in std::io::BufReader::new(f).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split(';').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad cache line `{line}`")));
            }
            let x = Perm::parse(parts[0], None)?;
            let y = Perm::parse(parts[1], None)?;
            let coeffs = if parts[2].is_empty() {
                Vec::new()
            } else {
                parts[2]
                    .split(',')
                    .map(|c| c.parse::<i64>().map_err(|_| Error::Parse(format!("bad cache line `{line}`"))))
                    .collect::<Result<Vec<_>>>()?
            };
            cache.insert((x, y), IntPolynomial::new(coeffs));
            count += 1;
        }
        Ok(count)
    }
}

pub fn kl_polynomial(x: &Perm, y: &Perm) -> Result<IntPolynomial> {
    KlEngine::global().poly(x, y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Verma,
    Standard,
}

/// Checks `lambda + rho` is dominant integral.
pub fn check_dominant(lambda: &Weight) -> Result<ParabolicData> {
    let nu = lambda.add(&rho(lambda.rank()))?;
    if !nu.is_dominant_integral() {
        return Err(Error::Precondition(format!("lambda + rho = {nu} is not dominant integral")));
    }
    Ok(ParabolicData::stabilizer_of(&nu))
}

/// `lambda - w o lambda` is a weight of `V^{(x) n}` (the set `S(lambda)`).
pub fn in_tensor_weights(lambda: &Weight, w: &Perm) -> Result<bool> {
    let mu = dot_action(w, lambda)?;
    Ok(tensor_weight_decompose(lambda, &mu, lambda.rank()).is_some())
}

/// `[M(w o lambda) : L(y o lambda)] = P_{w, y_R}(1)` or
/// `[M(lambda, w o lambda) : L(lambda, y o lambda)] = P_{w_LR, y_LR}(1)`.
pub fn multiplicity(lambda: &Weight, w: &Perm, y: &Perm, side: Side) -> Result<u64> {
    let j = check_dominant(lambda)?;
    for p in [w, y] {
        if p.n() != lambda.rank() {
            return Err(Error::RankMismatch { expected: lambda.rank(), got: p.n() });
        }
    }
    let engine = KlEngine::global();
    let value = match side {
        Side::Verma => engine.poly(w, &coset_data(y, &j)?.w_r)?.eval_at_one(),
        Side::Standard => {
            for p in [w, y] {
                if !in_tensor_weights(lambda, p)? {
                    return Err(Error::Precondition(format!(
                        "lambda - {} o lambda is not a weight of V^(x){}",
                        p.word_string(),
                        lambda.rank()
                    )));
                }
            }
            engine.poly(&coset_data(w, &j)?.w_lr, &coset_data(y, &j)?.w_lr)?.eval_at_one()
        }
    };
    u64::try_from(value).map_err(|_| Error::Invariant(format!("negative multiplicity {value}")))
}

/// Square matrix of multiplicities indexed by coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    pub index: Vec<Perm>,
    pub entries: Vec<Vec<u64>>,
}

impl MultiplicityMatrix {
    /// `[M(w o lambda) : L(y o lambda)]` over longest right-coset
    /// representatives, sorted by length.
    pub fn verma(lambda: &Weight) -> Result<Self> {
        let j = check_dominant(lambda)?;
        let index = j.right_coset_reps();
        let entries = index
            .iter()
            .map(|w| index.iter().map(|y| multiplicity(lambda, w, y, Side::Verma)).collect())
            .collect::<Result<Vec<Vec<u64>>>>()?;
        Ok(MultiplicityMatrix { index, entries })
    }

    /// `[M(lambda, w o lambda) : L(lambda, y o lambda)]` over the double
    /// cosets in `S(lambda)`.
    pub fn standard(lambda: &Weight) -> Result<Self> {
        let j = check_dominant(lambda)?;
        let mut index = Vec::new();
        for w in j.double_coset_reps() {
            if in_tensor_weights(lambda, &w)? {
                index.push(w);
            }
        }
        let entries = index
            .iter()
            .map(|w| index.iter().map(|y| multiplicity(lambda, w, y, Side::Standard)).collect())
            .collect::<Result<Vec<Vec<u64>>>>()?;
        Ok(MultiplicityMatrix { index, entries })
    }

    /// Rows index the module, columns the simple factor; unitriangular
    /// means ones on the diagonal and zeros whenever the column is not
    /// strictly longer than the row (or equal).
    pub fn is_unitriangular(&self) -> bool {
        let k = self.index.len();
        (0..k).all(|r| {
            (0..k).all(|c| {
                let e = self.entries[r][c];
                if r == c {
                    e == 1
                } else if self.index[c].length() <= self.index[r].length() {
                    e == 0
                } else {
                    true
                }
            })
        })
    }
}

/// Formal integer combination of simple classes `[L(lambda, z o lambda)]`
/// keyed by the longest double-coset representative `z`.
pub type FormalSum = BTreeMap<Perm, i64>;

/// Predicts `[F_lambda(L(w o lambda))]` from the two KL multiplicity
/// formulas: invert the Verma matrix, send `[M(mu)]` to `[M(lambda, mu)]`
/// (or zero), and re-expand in simple classes.
pub fn grothendieck_simple_image(lambda: &Weight, w: &Perm) -> Result<FormalSum> {
    let j = check_dominant(lambda)?;
    if w.n() != lambda.rank() {
        return Err(Error::RankMismatch { expected: lambda.rank(), got: w.n() });
    }
    if !in_tensor_weights(lambda, w)? {
        return Err(Error::Precondition(format!(
            "lambda - {} o lambda is not a weight of V^(x){}",
            w.word_string(),
            lambda.rank()
        )));
    }
    let verma = MultiplicityMatrix::verma(lambda)?;
    let k = verma.index.len();
    let target = coset_data(w, &j)?.w_r;
    let row = verma.index.iter().position(|p| *p == target).expect("right coset representative");

    // Row `row` of the inverse of a unitriangular (by length) matrix:
    // x A = e_row, solved by increasing length of the column index.
    let a: Vec<Vec<i64>> = verma.entries.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    let mut inv_row = vec![0i64; k];
    for c in 0..k {
        let rhs = i64::from(c == row);
        let acc: i64 = (0..c).map(|r| inv_row[r] * a[r][c]).sum();
        inv_row[c] = rhs - acc;
    }

    let simples: Vec<Perm> = {
        let mut v = Vec::new();
        for z in j.double_coset_reps() {
            if in_tensor_weights(lambda, &z)? {
                v.push(z);
            }
        }
        v
    };
    let mut out = FormalSum::new();
    for (y, &coef) in verma.index.iter().zip(&inv_row) {
        if coef == 0 || !in_tensor_weights(lambda, y)? {
            continue;
        }
        for z in &simples {
            let m = multiplicity(lambda, y, z, Side::Standard)? as i64;
            if m != 0 {
                *out.entry(z.clone()).or_insert(0) += coef * m;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}
