use std::fmt;

use num_traits::{One, Zero};

use super::perm::Perm;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, Q};

/// A point of `h*_n`, stored as its sum-zero representative in the
/// `eps`-basis of `t*_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Q>,
}

impl Weight {
    /// Canonicalizes by subtracting the mean, so any representative of the
    /// class modulo `(1,...,1)` may be passed.
    pub fn new(coords: Vec<Q>) -> Self {
        let n = coords.len();
        if n == 0 {
            return Weight { coords };
        }
        let mean: Q = coords.iter().sum::<Q>() / q(n as i64);
        Weight { coords: coords.into_iter().map(|c| c - &mean).collect() }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Weight { coords: vec![Q::zero(); n] }
    }

    /// `eps_i` (1-based), projected to `h*_n`.
    pub fn epsilon(n: usize, i: usize) -> Self {
        let mut c = vec![Q::zero(); n];
        c[i - 1] = Q::one();
        Self::new(c)
    }

    /// Simple root `alpha_i = eps_i - eps_{i+1}` (1-based).
    pub fn simple_root(n: usize, i: usize) -> Self {
        let mut c = vec![Q::zero(); n];
        c[i - 1] = Q::one();
        c[i] = -Q::one();
        Weight { coords: c }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// `<self, eps_i^vee>` of the canonical representative (0-based index).
    pub fn coord(&self, i: usize) -> &Q {
        &self.coords[i]
    }

    /// `<self, h_i> = self_i - self_{i+1}` (1-based `i`).
    pub fn pair_coroot(&self, i: usize) -> Q {
        &self.coords[i - 1] - &self.coords[i]
    }

    pub fn is_integral(&self) -> bool {
        (1..self.rank()).all(|i| self.pair_coroot(i).is_integer())
    }

    /// Membership in `P_n^+`.
    pub fn is_dominant_integral(&self) -> bool {
        (1..self.rank()).all(|i| {
            let p = self.pair_coroot(i);
            p.is_integer() && p >= Q::zero()
        })
    }

    /// Coordinates in the simple-root basis if the weight lies in the root
    /// lattice tensored with `Q`; `beta = sum c_i alpha_i` has `c_i` equal
    /// to the partial sums of the coordinates.
    pub fn root_coords(&self) -> Vec<Q> {
        let mut acc = Q::zero();
        (0..self.rank().saturating_sub(1))
            .map(|i| {
                acc += &self.coords[i];
                acc.clone()
            })
            .collect()
    }

    /// Height if the weight lies in `Q_n^+`.
    pub fn height_in_positive_cone(&self) -> Option<u32> {
        let mut h = 0u32;
        for c in self.root_coords() {
            if !c.is_integer() || c < Q::zero() {
                return None;
            }
            h += crate::rational::to_i64(&c)? as u32;
        }
        Some(h)
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        self.check_rank(other)?;
        Ok(Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        self.check_rank(other)?;
        Ok(Weight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    fn check_rank(&self, other: &Weight) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: other.rank() });
        }
        Ok(())
    }

    /// Parses `"(1,0,-1)"` or `"(1/2,-1/2)"`; the result is canonicalized.
    pub fn parse(s: &str) -> Result<Weight> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("weight literal `{s}` must be parenthesized")))?;
        if inner.trim().is_empty() {
            return Err(Error::Parse("empty weight literal".into()));
        }
        let coords = inner.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
        Ok(Weight::new(coords))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Half the sum of the positive roots: `((n-1)/2, (n-3)/2, ..., -(n-1)/2)`.
pub fn rho(n: usize) -> Weight {
    Weight { coords: (0..n).map(|i| Q::new((n as i64 - 1 - 2 * i as i64).into(), 2.into())).collect() }
}

/// `w o lambda = w(lambda + rho) - rho`.
pub fn dot_action(w: &Perm, lambda: &Weight) -> Result<Weight> {
    if w.n() != lambda.rank() {
        return Err(Error::RankMismatch { expected: lambda.rank(), got: w.n() });
    }
    let r = rho(lambda.rank());
    w.act(&lambda.add(&r)?).sub(&r)
}

/// The composition `(l_1..l_n)` with `l_i >= 0`, `sum l_i = ell` and
/// `lambda - mu = sum l_i eps_i` modulo `eps`, if it exists.
pub fn tensor_weight_decompose(lambda: &Weight, mu: &Weight, ell: usize) -> Option<Vec<usize>> {
    let d = lambda.sub(mu).ok()?;
    let n = d.rank();
    // The canonical difference sums to zero, so the shift is ell/n.
    let shift = Q::new((ell as i64).into(), (n as i64).into());
    d.coords()
        .iter()
        .map(|c| {
            let v = c + &shift;
            if v.is_integer() && v >= Q::zero() {
                crate::rational::to_i64(&v).map(|x| x as usize)
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn canonical_representative() {
        let a = Weight::from_ints(&[1, 1, 0]);
        let b = Weight::from_ints(&[2, 2, 1]);
        assert_eq!(a, b);
        assert_eq!(a.coords(), &[qf(1, 3), qf(1, 3), qf(-2, 3)]);
        assert_eq!(a.pair_coroot(1), q(0));
        assert_eq!(a.pair_coroot(2), q(1));
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(3), Weight::from_ints(&[1, 0, -1]));
        assert_eq!(rho(2).coords(), &[qf(1, 2), qf(-1, 2)]);
    }

    #[test]
    fn dot_action_examples() {
        let e = Perm::identity(3);
        let lam = Weight::from_ints(&[2, 0, -2]);
        assert_eq!(dot_action(&e, &lam).unwrap(), lam);
        let s1 = Perm::simple(2, 1);
        assert_eq!(dot_action(&s1, &Weight::zero(2)).unwrap(), Weight::from_ints(&[-1, 1]));
        let w = Perm::from_word(3, &[1, 2]).unwrap();
        assert_eq!(dot_action(&w, &Weight::zero(3)).unwrap(), Weight::from_ints(&[-2, 1, 1]));
        assert!(dot_action(&e, &Weight::zero(2)).is_err());
    }

    #[test]
    fn tensor_weights() {
        let z = Weight::zero(3);
        assert_eq!(tensor_weight_decompose(&z, &z, 3), Some(vec![1, 1, 1]));
        let mu = Weight::from_ints(&[-1, 1, 0]);
        assert_eq!(tensor_weight_decompose(&z, &mu, 3), Some(vec![2, 0, 1]));
        let two_alpha = Weight::from_ints(&[2, -2, 0]);
        assert_eq!(tensor_weight_decompose(&z, &two_alpha, 3), None);
    }

    #[test]
    fn parse_and_print() {
        let w = Weight::parse("(1/2, -1/2)").unwrap();
        assert_eq!(w.to_string(), "(1/2,-1/2)");
        assert!(Weight::parse("1,2").is_err());
        assert!(Weight::parse("(1,x)").is_err());
    }

    #[test]
    fn positive_cone() {
        let beta = Weight::simple_root(3, 1).add(&Weight::simple_root(3, 2)).unwrap();
        assert_eq!(beta.height_in_positive_cone(), Some(2));
        assert_eq!(Weight::simple_root(3, 1).scale(&q(-1)).height_in_positive_cone(), None);
    }
}
