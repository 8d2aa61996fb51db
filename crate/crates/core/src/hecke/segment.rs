use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, is_integer, parse_q, q, Q};

/// `[a, b]` with `b - a + 1` a nonnegative integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    a: Q,
    b: Q,
}

impl Segment {
    pub fn new(a: Q, b: Q) -> Result<Self> {
        let len = &b - &a + Q::one();
        if !is_integer(&len) || len < Q::zero() {
            return Err(Error::Precondition(format!(
                "[{}, {}] is not a segment: b - a + 1 must be a nonnegative integer",
                fmt_q(&a),
                fmt_q(&b)
            )));
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    pub fn len(&self) -> usize {
        (&self.b - &self.a + Q::one()).to_integer().to_usize().expect("segment length")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Eigenvalues `a, a+1, ..., b` of the `eps` operators on `1_[a,b]`.
    pub fn values(&self) -> Vec<Q> {
        (0..self.len()).map(|i| &self.a + q(i as i64)).collect()
    }

    /// Parses `[a,b]`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("segment `{s}` must look like [a,b]")))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("segment `{s}` needs two ends")))?;
        Segment::new(parse_q(a)?, parse_q(b)?)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", fmt_q(&self.a), fmt_q(&self.b))
    }
}

/// Ordered list of segments; the order matters for induction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SegmentSequence(pub Vec<Segment>);

impl SegmentSequence {
    pub fn new(segments: Vec<Segment>) -> Self {
        SegmentSequence(segments)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn total_len(&self) -> usize {
        self.0.iter().map(Segment::len).sum()
    }

    /// The sequence with zero-length segments removed.
    pub fn nonempty(&self) -> SegmentSequence {
        SegmentSequence(self.0.iter().filter(|s| !s.is_empty()).cloned().collect())
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.0.iter().map(Segment::len).collect()
    }

    /// Weight of `1_Delta`: the concatenation of the segment values.
    pub fn zeta(&self) -> Vec<Q> {
        self.0.iter().flat_map(Segment::values).collect()
    }

    /// Parses `[0,1];[-1,-1]` (separators `;`, optional surrounding parens).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        if t.is_empty() {
            return Ok(SegmentSequence::default());
        }
        t.split(';').map(Segment::parse).collect::<Result<Vec<_>>>().map(SegmentSequence)
    }
}

impl fmt::Display for SegmentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(";"))
    }
}
