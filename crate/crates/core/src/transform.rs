//! Full transformations of the chain `1 < 2 < ... < n`.
//!
//! A [`Transformation`] is stored as its image tuple `(1α, ..., nα)` with
//! 1-based values. Composition follows the right-action convention used
//! throughout the crate: `x(αβ) = (xα)β`, so `a.then(&b)` applies `a`
//! first and `b` second.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{domain, Error, ParseError, ParseErrorKind, Result};

/// Largest chain size a [`Transformation`] can represent.
pub const MAX_CHAIN: usize = u8::MAX as usize;

type Images = SmallVec<[u8; 16]>;

/// A total self-map of `{1, ..., n}`.
///
/// Ordering is lexicographic on the image tuple, which is the canonical
/// order of every [`SemigroupSet`](crate::SemigroupSet).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Transformation {
    images: Images,
}

impl Transformation {
    /// Builds a transformation from 1-based image values.
    pub fn new(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(domain("a transformation needs at least one point"));
        }
        if n > MAX_CHAIN {
            return Err(domain(format!("chain size {n} exceeds {MAX_CHAIN}")));
        }
        if let Some((i, &v)) = images.iter().enumerate().find(|(_, &v)| v == 0 || v > n) {
            return Err(domain(format!(
                "image of {} is {v}, outside 1..={n}",
                i + 1
            )));
        }
        Ok(Self {
            images: images.iter().map(|&v| v as u8).collect(),
        })
    }

    /// Caller guarantees every entry lies in `1..=len` and `len <= MAX_CHAIN`.
    pub(crate) fn from_raw(images: Images) -> Self {
        debug_assert!(!images.is_empty() && images.len() <= MAX_CHAIN);
        debug_assert!(images.iter().all(|&v| v >= 1 && v as usize <= images.len()));
        Self { images }
    }

    pub(crate) fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Self {
        Self::from_raw((1..=n).map(|i| f(i) as u8).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i| i)
    }

    /// The constant map onto 1, the zero element of the order-decreasing maps.
    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| 1)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// The image tuple, 1-based.
    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `xα` for a 1-based point `x`.
    ///
    /// # Panics
    /// If `x` is not in `1..=n`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DomainMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.then(other))
    }

    /// Infallible form of [`compose`](Self::compose).
    ///
    /// # Panics
    /// If the chain sizes differ.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "composing maps on different chains");
        Self::from_raw(
            self.images
                .iter()
                .map(|&v| other.images[v as usize - 1])
                .collect(),
        )
    }

    /// `im(α)`, ascending.
    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n() + 1];
        for &v in &self.images {
            seen[v as usize] = true;
        }
        (1..=self.n()).filter(|&v| seen[v]).collect()
    }

    /// `|im(α)|`.
    pub fn rank(&self) -> usize {
        let mut seen = [0u64; 4];
        let mut count = 0;
        for &v in &self.images {
            let (w, b) = (v as usize / 64, v as usize % 64);
            if seen[w] & (1 << b) == 0 {
                seen[w] |= 1 << b;
                count += 1;
            }
        }
        count
    }

    /// Points fixed by the map, ascending.
    pub fn fix_set(&self) -> Vec<usize> {
        self.points().filter(|&i| self.apply(i) == i).collect()
    }

    pub fn kernel(&self) -> KernelPartition {
        let mut classes: Vec<KernelClass> = self
            .image()
            .into_iter()
            .rev()
            .map(|v| KernelClass {
                image: v,
                members: Vec::new(),
            })
            .collect();
        // classes are in decreasing image order, so class index is found by search
        for i in self.points() {
            let v = self.apply(i);
            let idx = classes
                .binary_search_by(|c| v.cmp(&c.image))
                .expect("image value has a class");
            classes[idx].members.push(i);
        }
        KernelPartition { classes }
    }

    /// `ker(self) ⊆ ker(other)`: points identified by `self` are identified by `other`.
    pub fn kernel_refines(&self, other: &Self) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let mut target = vec![0u8; self.n() + 1];
        for (&s, &o) in self.images.iter().zip(&other.images) {
            let slot = &mut target[s as usize];
            if *slot == 0 {
                *slot = o;
            } else if *slot != o {
                return false;
            }
        }
        true
    }

    fn points(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n()
    }

    fn count_steps(&self, cyclic: bool) -> (usize, usize) {
        let n = self.n();
        let limit = if cyclic { n } else { n - 1 };
        let mut ascents = 0;
        let mut descents = 0;
        for i in 0..limit {
            let a = self.images[i];
            let b = self.images[(i + 1) % n];
            if b < a {
                descents += 1;
            } else if a < b {
                ascents += 1;
            }
        }
        (ascents, descents)
    }

    pub fn is_order_preserving(&self) -> bool {
        self.images.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_order_reversing(&self) -> bool {
        self.images.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_order_decreasing(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize <= i + 1)
    }

    /// The image sequence, read cyclically with `(n+1)α = 1α`, has at most one descent.
    pub fn is_orientation_preserving(&self) -> bool {
        self.count_steps(true).1 <= 1
    }

    /// The image sequence, read cyclically, has at most one ascent.
    pub fn is_orientation_reversing(&self) -> bool {
        self.count_steps(true).0 <= 1
    }

    pub fn is_oriented(&self) -> bool {
        let (ascents, descents) = self.count_steps(true);
        ascents <= 1 || descents <= 1
    }

    pub fn is_idempotent(&self) -> bool {
        self.images
            .iter()
            .all(|&v| self.images[v as usize - 1] == v)
    }

    /// For an order-decreasing map, nilpotent means `fix(α) = {1}`.
    pub fn is_nilpotent_decreasing(&self) -> Result<bool> {
        if !self.is_order_decreasing() {
            return Err(Error::Precondition(format!(
                "nilpotency is only decided here for order-decreasing maps, got {self}"
            )));
        }
        Ok(self
            .images
            .iter()
            .skip(1)
            .enumerate()
            .all(|(i, &v)| v as usize != i + 2))
    }

    /// Member of `C_n`: order-preserving and order-decreasing.
    pub fn is_in_chain(&self) -> bool {
        self.is_order_decreasing() && self.is_order_preserving()
    }

    /// Member of `OPD_n`.
    pub fn is_in_opd(&self) -> bool {
        self.is_order_decreasing() && self.is_orientation_preserving()
    }

    /// Member of `ORD_n`.
    pub fn is_in_ord(&self) -> bool {
        self.is_order_decreasing() && self.is_oriented()
    }

    /// Member of `RD*_n = ORD_n \ OPD_n`.
    pub fn is_in_rd_star(&self) -> bool {
        if !self.is_order_decreasing() {
            return false;
        }
        let (ascents, descents) = self.count_steps(true);
        ascents <= 1 && descents > 1
    }

    /// Largest `m` such that the restriction to `{1..m}` is order-preserving.
    ///
    /// Defined on `OPD_n`; returns `n` exactly when the map is order-preserving.
    pub fn opd_degree(&self) -> Result<usize> {
        if !self.is_in_opd() {
            return Err(Error::Precondition(format!(
                "opd degree needs an orientation-preserving order-decreasing map, got {self}"
            )));
        }
        let m = self
            .images
            .windows(2)
            .position(|w| w[1] < w[0])
            .map_or(self.n(), |i| i + 1);
        Ok(m)
    }

    /// Least point not sent to 1. Defined on `RD*_n`.
    pub fn ord_degree(&self) -> Result<usize> {
        if !self.is_in_rd_star() {
            return Err(Error::Precondition(format!(
                "ord degree needs a map in RD*_n, got {self}"
            )));
        }
        Ok(self
            .images
            .iter()
            .position(|&v| v != 1)
            .expect("RD* maps are not constant")
            + 1)
    }

    /// Parses the line format and additionally requires exactly `n` values.
    pub fn parse_with_len(text: &str, n: usize) -> Result<Self, ParseError> {
        let t: Self = text.parse()?;
        if t.n() != n {
            return Err(ParseError {
                position: 0,
                kind: ParseErrorKind::Arity {
                    expected: n,
                    found: t.n(),
                },
            });
        }
        Ok(t)
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_string().replace(' ', ","))
    }
}

/// Whitespace-separated 1-based image values, e.g. `"1 1 3 2 1"`.
impl FromStr for Transformation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let n = tokens.len();
        if n == 0 {
            return Err(ParseError {
                position: 0,
                kind: ParseErrorKind::Empty,
            });
        }
        if n > MAX_CHAIN {
            return Err(ParseError {
                position: MAX_CHAIN + 1,
                kind: ParseErrorKind::TooLong(n),
            });
        }
        let mut images = Images::with_capacity(n);
        for (i, tok) in tokens.iter().enumerate() {
            let position = i + 1;
            let value: u64 = tok.parse().map_err(|_| ParseError {
                position,
                kind: ParseErrorKind::NotAnInteger(tok.chars().take(32).collect()),
            })?;
            if value == 0 || value > n as u64 {
                return Err(ParseError {
                    position,
                    kind: ParseErrorKind::OutOfRange { value, n },
                });
            }
            images.push(value as u8);
        }
        Ok(Self::from_raw(images))
    }
}

impl TryFrom<String> for Transformation {
    type Error = ParseError;

    fn try_from(s: String) -> Result<Self, ParseError> {
        s.parse()
    }
}

impl From<Transformation> for String {
    fn from(t: Transformation) -> Self {
        t.to_string()
    }
}

/// One block `xα⁻¹` of a kernel, tagged with its image value `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelClass {
    pub image: usize,
    /// Ascending.
    pub members: Vec<usize>,
}

impl KernelClass {
    pub fn transversal_min(&self) -> usize {
        self.members[0]
    }
}

/// The preimage classes of a transformation, in decreasing order of image value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPartition {
    pub classes: Vec<KernelClass>,
}

impl KernelPartition {
    pub fn n(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    /// Index of the class containing `x`, if any.
    pub fn class_of(&self, x: usize) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.members.binary_search(&x).is_ok())
    }

    /// Whether `set` meets every class in exactly one point.
    pub fn is_transversal(&self, set: &[usize]) -> bool {
        let mut hits = vec![0usize; self.classes.len()];
        for &x in set {
            match self.class_of(x) {
                Some(i) => hits[i] += 1,
                None => return false,
            }
        }
        hits.iter().all(|&h| h == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Transformation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_is_right_action() {
        assert_eq!(t("1 1 3 4 1").then(&t("1 1 3 2 1")), t("1 1 3 2 1"));
        let a = t("1 1 3 2 1");
        assert_eq!(a.then(&Transformation::identity(5)), a);
        assert_eq!(Transformation::zero(5).then(&a), Transformation::zero(5));
        // (2 applied first) sends 1 -> 2 -> 1
        assert_eq!(t("2 1").then(&t("2 2")), t("2 2"));
        assert_eq!(t("1 1").then(&t("2 1")), t("2 2"));
    }

    #[test]
    fn compose_rejects_size_mismatch() {
        assert_eq!(
            t("1 1").compose(&t("1 1 1")),
            Err(Error::DomainMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn image_fix_kernel() {
        let a = t("1 1 3 2 1");
        assert_eq!(a.image(), vec![1, 2, 3]);
        assert_eq!(a.rank(), 3);
        assert_eq!(a.fix_set(), vec![1, 3]);
        let k = a.kernel();
        let listed: Vec<(usize, Vec<usize>)> = k
            .classes
            .iter()
            .map(|c| (c.image, c.members.clone()))
            .collect();
        assert_eq!(listed, vec![(3, vec![3]), (2, vec![4]), (1, vec![1, 2, 5])]);

        assert_eq!(Transformation::identity(4).fix_set(), vec![1, 2, 3, 4]);
        let z = Transformation::zero(5);
        assert_eq!(z.image(), vec![1]);
        assert_eq!(z.kernel().classes.len(), 1);
        assert_eq!(z.kernel().classes[0].members, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn order_predicates() {
        let a = t("1 2 3 3");
        assert!(a.is_order_preserving() && a.is_order_decreasing());
        let b = t("1 1 3 2 1");
        assert!(!b.is_order_preserving() && !b.is_order_reversing() && b.is_order_decreasing());
        let c = t("4 3 2 1");
        assert!(c.is_order_reversing() && !c.is_order_decreasing());
    }

    #[test]
    fn orientation_predicates() {
        let b = t("1 1 3 2 1");
        assert!(b.is_orientation_reversing());
        assert!(!b.is_orientation_preserving());
        assert!(b.is_oriented());
        let c = t("3 3 3");
        assert!(c.is_orientation_preserving() && c.is_orientation_reversing());
        // 1 3 2 4 has two ascents and two descents cyclically
        assert!(!t("1 3 2 4").is_oriented());
        assert!(t("1").is_orientation_preserving());
    }

    #[test]
    fn idempotent_and_nilpotent() {
        assert!(t("1 1 3 3 3").is_idempotent());
        assert_eq!(t("1 1 1 3 2").is_nilpotent_decreasing(), Ok(true));
        let id = Transformation::identity(4);
        assert!(id.is_idempotent());
        assert_eq!(id.is_nilpotent_decreasing(), Ok(false));
        assert!(matches!(
            t("2 1").is_nilpotent_decreasing(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn degrees() {
        assert_eq!(t("1 2 1 1").opd_degree(), Ok(2));
        assert_eq!(t("1 1 2 3").opd_degree(), Ok(4));
        assert_eq!(t("1 2 3 1 1").opd_degree(), Ok(3));
        assert!(t("1 1 3 2 1").opd_degree().is_err());

        assert_eq!(t("1 1 3 2 1").ord_degree(), Ok(3));
        assert_eq!(t("1 1 1 4 3").ord_degree(), Ok(4));
        assert_eq!(t("1 1 3 2").ord_degree(), Ok(3));
        assert!(t("1 2 3 1 1").ord_degree().is_err());
    }

    #[test]
    fn parse_and_format() {
        let a = t("1 1 3 2 1");
        assert_eq!(a.images(), &[1, 1, 3, 2, 1]);
        assert_eq!(a.to_string(), "1 1 3 2 1");
        assert_eq!(t("1 2 3"), Transformation::identity(3));
        assert_eq!(
            "1 0 2".parse::<Transformation>(),
            Err(ParseError {
                position: 2,
                kind: ParseErrorKind::OutOfRange { value: 0, n: 3 }
            })
        );
        assert_eq!("1 x".parse::<Transformation>().unwrap_err().position, 2);
        assert_eq!(
            "   ".parse::<Transformation>().unwrap_err().kind,
            ParseErrorKind::Empty
        );
        assert!(matches!(
            Transformation::parse_with_len("1 1", 3).unwrap_err().kind,
            ParseErrorKind::Arity {
                expected: 3,
                found: 2
            }
        ));
        assert!(matches!(
            "1 4 2".parse::<Transformation>().unwrap_err().kind,
            ParseErrorKind::OutOfRange { value: 4, .. }
        ));
    }

    #[test]
    fn kernel_transversals() {
        let k = t("1 1 3 2 2").kernel();
        assert!(k.is_transversal(&[1, 3, 4]));
        assert!(k.is_transversal(&[2, 3, 5]));
        assert!(!k.is_transversal(&[1, 2, 3, 4]));
        assert!(!k.is_transversal(&[1, 3]));
        assert_eq!(k.n(), 5);
        assert!(t("1 1 3 2 2").kernel_refines(&t("1 1 3 1 1")));
        assert!(!t("1 1 3 1 1").kernel_refines(&t("1 1 3 2 2")));
    }

    #[test]
    fn serde_uses_line_format() {
        let a = t("1 1 3 2 1");
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, "\"1 1 3 2 1\"");
        assert_eq!(serde_json::from_str::<Transformation>(&js).unwrap(), a);
        assert!(serde_json::from_str::<Transformation>("\"1 9\"").is_err());
    }
}
