use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::daha::HeckeElement;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{fmt_q, parse_q, q, Q};
use crate::root_weyl::Perm;

/// A finite-dimensional `H_l`-module given by the matrices of `s_1..s_{l-1}`
/// and `eps_1..eps_l`. Rank 0 stands for `H_0 = Q` acting on a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinModule {
    rank: usize,
    dim: usize,
    s: Vec<Matrix>,
    eps: Vec<Matrix>,
    cyclic: Option<Vec<Q>>,
}

/// The first relation that fails, with both sides.
#[derive(Clone, Debug)]
pub struct RelationFailure {
    pub relation: String,
    pub lhs: Matrix,
    pub rhs: Matrix,
}

impl FinModule {
    /// Builds a module without checking relations.
    pub fn from_parts(
        rank: usize,
        dim: usize,
        s: Vec<Matrix>,
        eps: Vec<Matrix>,
        cyclic: Option<Vec<Q>>,
    ) -> Result<Self> {
        if s.len() != rank.saturating_sub(1) || eps.len() != rank {
            return Err(Error::Precondition(format!(
                "rank {rank} needs {} reflections and {rank} eps matrices, got {} and {}",
                rank.saturating_sub(1),
                s.len(),
                eps.len()
            )));
        }
        for m in s.iter().chain(&eps) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Precondition(format!(
                    "matrix of shape {}x{} in a module of dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if let Some(v) = &cyclic {
            if v.len() != dim {
                return Err(Error::Precondition("cyclic vector has the wrong length".into()));
            }
        }
        Ok(FinModule { rank, dim, s, eps, cyclic })
    }

    /// Builds a module and checks every defining relation.
    pub fn new(rank: usize, dim: usize, s: Vec<Matrix>, eps: Vec<Matrix>, cyclic: Option<Vec<Q>>) -> Result<Self> {
        let m = Self::from_parts(rank, dim, s, eps, cyclic)?;
        if let Err(f) = m.check_relations() {
            return Err(Error::Invariant(format!("relation {} fails", f.relation)));
        }
        Ok(m)
    }

    pub fn zero(rank: usize) -> Self {
        FinModule {
            rank,
            dim: 0,
            s: vec![Matrix::zeros(0, 0); rank.saturating_sub(1)],
            eps: vec![Matrix::zeros(0, 0); rank],
            cyclic: None,
        }
    }

    /// The one-dimensional module of `H_0`.
    pub fn rank_zero_line() -> Self {
        FinModule { rank: 0, dim: 1, s: Vec::new(), eps: Vec::new(), cyclic: Some(vec![Q::one()]) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Matrix of `s_i`, 1-based.
    pub fn s(&self, i: usize) -> &Matrix {
        &self.s[i - 1]
    }

    /// Matrix of `eps_i`, 1-based.
    pub fn eps(&self, i: usize) -> &Matrix {
        &self.eps[i - 1]
    }

    pub fn s_mats(&self) -> &[Matrix] {
        &self.s
    }

    pub fn eps_mats(&self) -> &[Matrix] {
        &self.eps
    }

    /// Every generator: reflections first, then the `eps`.
    pub fn generators(&self) -> Vec<Matrix> {
        self.s.iter().chain(&self.eps).cloned().collect()
    }

    pub fn cyclic(&self) -> Option<&Vec<Q>> {
        self.cyclic.as_ref()
    }

    pub fn with_cyclic(mut self, v: Option<Vec<Q>>) -> Self {
        self.cyclic = v;
        self
    }

    /// Matrix of a group element, via a reduced word.
    pub fn group_matrix(&self, w: &Perm) -> Matrix {
        w.reduced_word().iter().fold(Matrix::identity(self.dim), |acc, &i| acc.mul(&self.s[i - 1]))
    }

    /// Matrix by which an algebra element acts.
    pub fn act(&self, x: &HeckeElement) -> Result<Matrix> {
        if x.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: x.rank() });
        }
        let mut out = Matrix::zeros(self.dim, self.dim);
        let mut group_cache: BTreeMap<Perm, Matrix> = BTreeMap::new();
        for (w, a, c) in x.terms() {
            let g = group_cache.entry(w.clone()).or_insert_with(|| self.group_matrix(w)).clone();
            let mut m = g;
            for (i, &k) in a.iter().enumerate() {
                for _ in 0..k {
                    m = m.mul(&self.eps[i]);
                }
            }
            out = out.add(&m.scale(c));
        }
        Ok(out)
    }

    /// `P^{-1} g P` for every generator.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let inv = p.inverse().ok_or_else(|| Error::Precondition("change of basis is singular".into()))?;
        let conj = |m: &Matrix| inv.mul(m).mul(p);
        Ok(FinModule {
            rank: self.rank,
            dim: self.dim,
            s: self.s.iter().map(conj).collect(),
            eps: self.eps.iter().map(conj).collect(),
            cyclic: self.cyclic.as_ref().map(|v| inv.mul_vec(v)),
        })
    }

    /// Checks `s_i^2 = 1`, the braid relations, `[eps_i, eps_j] = 0` and
    /// `s_i eps_j - eps_{s_i(j)} s_i = -<alpha_i, eps_j>`.
    pub fn check_relations(&self) -> std::result::Result<(), RelationFailure> {
        let n = self.rank;
        let id = Matrix::identity(self.dim);
        let fail = |relation: String, lhs: Matrix, rhs: Matrix| Err(RelationFailure { relation, lhs, rhs });
        for i in 1..n {
            let sq = self.s(i).mul(self.s(i));
            if sq != id {
                return fail(format!("s{i}^2 = 1"), sq, id);
            }
        }
        for i in 1..n {
            for j in i + 1..n {
                let (a, b) = (self.s(i), self.s(j));
                let (lhs, rhs) = if j == i + 1 { (a.mul(b).mul(a), b.mul(a).mul(b)) } else { (a.mul(b), b.mul(a)) };
                if lhs != rhs {
                    let name = if j == i + 1 {
                        format!("s{i} s{j} s{i} = s{j} s{i} s{j}")
                    } else {
                        format!("s{i} s{j} = s{j} s{i}")
                    };
                    return fail(name, lhs, rhs);
                }
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let c = self.eps(i).commutator(self.eps(j));
                if !c.is_zero() {
                    return fail(format!("[eps{i}, eps{j}] = 0"), c, Matrix::zeros(self.dim, self.dim));
                }
            }
        }
        for i in 1..n {
            for j in 1..=n {
                let sj = if j == i {
                    i + 1
                } else if j == i + 1 {
                    i
                } else {
                    j
                };
                let pairing = if j == i {
                    q(1)
                } else if j == i + 1 {
                    q(-1)
                } else {
                    Q::zero()
                };
                let lhs = self.s(i).mul(self.eps(j)).sub(&self.eps(sj).mul(self.s(i)));
                let rhs = Matrix::scalar(self.dim, &-pairing);
                if lhs != rhs {
                    return fail(format!("s{i} eps{j} - eps{sj} s{i} = -<alpha{i}, eps{j}>"), lhs, rhs);
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &Matrix| -> Value {
            Value::Array(
                (0..m.rows())
                    .map(|r| Value::Array(m.row(r).iter().map(|x| Value::String(fmt_q(x))).collect()))
                    .collect(),
            )
        };
        let mut obj = json!({
            "dim": self.dim,
            "s": self.s.iter().map(mat).collect::<Vec<_>>(),
            "eps": self.eps.iter().map(mat).collect::<Vec<_>>(),
        });
        if let Some(v) = &self.cyclic {
            obj["cyclic"] = Value::Array(v.iter().map(|x| Value::String(fmt_q(x))).collect());
        }
        obj
    }

    /// Parses the JSON form and validates the relations.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("module JSON: {what}"));
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing `dim`"))? as usize;
        let scalar = |x: &Value| -> Result<Q> {
            match x {
                Value::String(s) => parse_q(s),
                Value::Number(n) => n.as_i64().map(q).ok_or_else(|| bad("non-integer number")),
                _ => Err(bad("entries must be rational strings")),
            }
        };
        let matrix = |m: &Value| -> Result<Matrix> {
            let rows = m.as_array().ok_or_else(|| bad("matrix must be a list of rows"))?;
            if rows.len() != dim {
                return Err(bad("matrix row count differs from `dim`"));
            }
            let rows = rows
                .iter()
                .map(|r| {
                    let r = r.as_array().ok_or_else(|| bad("row must be a list"))?;
                    if r.len() != dim {
                        return Err(bad("matrix column count differs from `dim`"));
                    }
                    r.iter().map(scalar).collect::<Result<Vec<Q>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(if dim == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) })
        };
        let list = |key: &str| -> Result<Vec<Matrix>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("missing `{key}`")))?
                .iter()
                .map(matrix)
                .collect()
        };
        let eps = list("eps")?;
        let s = list("s")?;
        let rank = eps.len();
        let cyclic = match v.get("cyclic") {
            None | Some(Value::Null) => None,
            Some(c) => Some(
                c.as_array()
                    .ok_or_else(|| bad("`cyclic` must be a list"))?
                    .iter()
                    .map(scalar)
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let m = Self::from_parts(rank, dim, s, eps, cyclic)?;
        if let Err(f) = m.check_relations() {
            return Err(Error::Precondition(format!("imported module violates {}", f.relation)));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_module(values: &[i64]) -> FinModule {
        let n = values.len();
        FinModule::new(
            n,
            1,
            vec![Matrix::identity(1); n - 1],
            values.iter().map(|&v| Matrix::scalar(1, &q(v))).collect(),
            Some(vec![q(1)]),
        )
        .unwrap()
    }

    #[test]
    fn line_with_consecutive_values() {
        assert!(scalar_module(&[0, 1, 2]).check_relations().is_ok());
        let bad =
            FinModule::from_parts(2, 1, vec![Matrix::identity(1)], vec![Matrix::scalar(1, &q(0)); 2], None).unwrap();
        let f = bad.check_relations().unwrap_err();
        assert!(f.relation.starts_with("s1 eps1"), "{}", f.relation);
    }

    #[test]
    fn noncommuting_eps_reported() {
        let a = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]]);
        let b = a.transpose();
        let m = FinModule::from_parts(2, 2, vec![Matrix::identity(2)], vec![a, b], None).unwrap();
        let f = m.check_relations().unwrap_err();
        assert_eq!(f.relation, "[eps1, eps2] = 0");
        assert!(!f.lhs.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let m = scalar_module(&[0, 1, 2]);
        let text = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(text, r#"{"cyclic":["1"],"dim":1,"eps":[[["0"]],[["1"]],[["2"]]],"s":[[["1"]],[["1"]]]}"#);
        let back = FinModule::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, m);
        let z = FinModule::zero(2);
        assert_eq!(FinModule::from_json(&z.to_json()).unwrap(), z);
    }

    #[test]
    fn json_import_rejects_broken_relations() {
        let text = r#"{"dim":1,"eps":[[["0"]],[["0"]]],"s":[[["1"]]]}"#;
        assert!(matches!(FinModule::from_json(&serde_json::from_str(text).unwrap()), Err(Error::Precondition(_))));
    }
}
