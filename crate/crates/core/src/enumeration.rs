//! Exhaustive generators for the transformation families.
//!
//! Every family here is a subset of the order-decreasing maps, so the
//! generator backtracks over `1α ∈ {1}, 2α ∈ {1,2}, ...` (n! leaves) in
//! increasing value order, which yields lexicographically sorted output for
//! free. Branches are cut only when a prefix already violates a necessary
//! condition (too many distinct values, two descents for orientation-preserving
//! families, two ascents and two descents for oriented ones); every leaf is then
//! checked against the family's definitional predicate.

use std::fmt;

use num_bigint::BigUint;

use crate::counting::max_reversing_rank;
use crate::error::{Error, Result};
use crate::set::SemigroupSet;
use crate::transform::Transformation;

/// Largest chain size the enumerators accept.
pub const MAX_ENUMERATION_N: usize = 12;

/// A family of order-decreasing transformations.
///
/// `max_rank` bounds `|im(α)|` from above; `rank` is an exact image size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    /// `D_n`.
    AllDecreasing,
    /// `ORD(n, r)`, or `ORD_n` without a bound.
    Ord { max_rank: Option<usize> },
    /// `OPD(n, r)`.
    Opd { max_rank: Option<usize> },
    /// `RD*(n, r)`.
    RdStar { max_rank: Option<usize> },
    /// `C(n, r)`.
    Chain { max_rank: Option<usize> },
    /// `J_{n,r}`: elements of `RD*_n` with image size exactly `rank`.
    J { rank: usize },
    /// `G(n, r, m)`: elements of `J_{n,r}` with order-reversing degree `ord`.
    GSlice { rank: usize, ord: usize },
    /// `B_m`: rank-`rank` idempotents of `OPD_n` with order-preserving degree `opd`.
    B { rank: usize, opd: usize },
    /// Elements of the inner family with `fix(α) = {1}`.
    NilpotentOf(Box<Family>),
    /// Idempotents of the inner family.
    IdempotentsOf(Box<Family>),
}

impl Family {
    pub fn ord(max_rank: usize) -> Self {
        Family::Ord {
            max_rank: Some(max_rank),
        }
    }

    pub fn opd(max_rank: usize) -> Self {
        Family::Opd {
            max_rank: Some(max_rank),
        }
    }

    pub fn rd_star(max_rank: usize) -> Self {
        Family::RdStar {
            max_rank: Some(max_rank),
        }
    }

    pub fn nilpotent(self) -> Self {
        Family::NilpotentOf(Box::new(self))
    }

    pub fn idempotents(self) -> Self {
        Family::IdempotentsOf(Box::new(self))
    }

    /// Definitional membership test.
    pub fn contains(&self, t: &Transformation) -> bool {
        let within = |bound: &Option<usize>| bound.is_none_or(|r| t.rank() <= r);
        match self {
            Family::AllDecreasing => t.is_order_decreasing(),
            Family::Ord { max_rank } => t.is_in_ord() && within(max_rank),
            Family::Opd { max_rank } => t.is_in_opd() && within(max_rank),
            Family::RdStar { max_rank } => t.is_in_rd_star() && within(max_rank),
            Family::Chain { max_rank } => t.is_in_chain() && within(max_rank),
            Family::J { rank } => t.is_in_rd_star() && t.rank() == *rank,
            Family::GSlice { rank, ord } => {
                t.is_in_rd_star() && t.rank() == *rank && t.ord_degree() == Ok(*ord)
            }
            Family::B { rank, opd } => {
                t.is_in_opd()
                    && t.is_idempotent()
                    && t.rank() == *rank
                    && t.opd_degree() == Ok(*opd)
            }
            Family::NilpotentOf(inner) => {
                inner.contains(t) && t.is_nilpotent_decreasing() == Ok(true)
            }
            Family::IdempotentsOf(inner) => inner.contains(t) && t.is_idempotent(),
        }
    }

    fn prune(&self) -> Prune {
        match self {
            Family::AllDecreasing => Prune::default(),
            Family::Ord { max_rank } | Family::RdStar { max_rank } => Prune {
                shape: Shape::Oriented,
                max_rank: *max_rank,
            },
            Family::Opd { max_rank } => Prune {
                shape: Shape::OrientationPreserving,
                max_rank: *max_rank,
            },
            Family::Chain { max_rank } => Prune {
                shape: Shape::OrderPreserving,
                max_rank: *max_rank,
            },
            Family::J { rank } | Family::GSlice { rank, .. } => Prune {
                shape: Shape::Oriented,
                max_rank: Some(*rank),
            },
            Family::B { rank, .. } => Prune {
                shape: Shape::OrientationPreserving,
                max_rank: Some(*rank),
            },
            Family::NilpotentOf(inner) | Family::IdempotentsOf(inner) => inner.prune(),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        let check_bound = |bound: &Option<usize>| match bound {
            Some(r) if *r < 1 || *r > n => bad(format!("rank bound {r} outside 1..={n}")),
            _ => Ok(()),
        };
        match self {
            Family::AllDecreasing => Ok(()),
            Family::Ord { max_rank }
            | Family::Opd { max_rank }
            | Family::RdStar { max_rank }
            | Family::Chain { max_rank } => check_bound(max_rank),
            Family::J { rank } => {
                let cap = max_reversing_rank(n);
                if *rank < 3 || *rank > cap {
                    return bad(format!(
                        "J needs 3 <= r <= {cap} at n = {n}, got r = {rank}"
                    ));
                }
                Ok(())
            }
            Family::GSlice { rank, ord } => {
                Family::J { rank: *rank }.validate(n)?;
                if *ord < *rank || *ord + rank > n + 2 {
                    return bad(format!(
                        "G slice needs {rank} <= m <= {} at n = {n}, got m = {ord}",
                        n + 2 - rank
                    ));
                }
                Ok(())
            }
            Family::B { rank, opd } => {
                if *rank < 1 || *rank >= n || *opd <= *rank || *opd > n {
                    return bad(format!(
                        "B needs 1 <= r <= n-1 and r+1 <= m <= n, got n = {n}, r = {rank}, m = {opd}"
                    ));
                }
                Ok(())
            }
            Family::NilpotentOf(inner) | Family::IdempotentsOf(inner) => inner.validate(n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = |f: &mut fmt::Formatter<'_>, name: &str, b: &Option<usize>| match b {
            Some(r) => write!(f, "{name}({r})"),
            None => write!(f, "{name}"),
        };
        match self {
            Family::AllDecreasing => write!(f, "all-decreasing"),
            Family::Ord { max_rank } => bound(f, "ord", max_rank),
            Family::Opd { max_rank } => bound(f, "opd", max_rank),
            Family::RdStar { max_rank } => bound(f, "rdstar", max_rank),
            Family::Chain { max_rank } => bound(f, "chain", max_rank),
            Family::J { rank } => write!(f, "j({rank})"),
            Family::GSlice { rank, ord } => write!(f, "g-slice({rank},{ord})"),
            Family::B { rank, opd } => write!(f, "b({rank},{opd})"),
            Family::NilpotentOf(inner) => write!(f, "nilpotent:{inner}"),
            Family::IdempotentsOf(inner) => write!(f, "idempotent:{inner}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
enum Shape {
    #[default]
    Any,
    Oriented,
    OrientationPreserving,
    OrderPreserving,
}

#[derive(Debug, Clone, Copy, Default)]
struct Prune {
    shape: Shape,
    max_rank: Option<usize>,
}

/// A family on a particular chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySelector {
    pub n: usize,
    pub family: Family,
}

impl FamilySelector {
    pub fn new(n: usize, family: Family) -> Result<Self> {
        let sel = Self { n, family };
        sel.validate()?;
        Ok(sel)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("chain size must be at least 1".into()));
        }
        if self.n > MAX_ENUMERATION_N {
            return Err(Error::Budget {
                what: "enumeration chain size",
                actual: self.n,
                limit: MAX_ENUMERATION_N,
            });
        }
        self.family.validate(self.n)
    }
}

/// Calls `visit` on every member of the family, in lexicographic order.
pub fn for_each(selector: &FamilySelector, mut visit: impl FnMut(&Transformation)) -> Result<()> {
    selector.validate()?;
    let prune = selector.family.prune();
    let mut walker = Walker {
        n: selector.n,
        prune,
        images: Vec::with_capacity(selector.n),
        seen: 0,
        distinct: 0,
        ascents: 0,
        descents: 0,
    };
    walker.descend(&mut |images: &[u8]| {
        let t = Transformation::from_raw(images.iter().copied().collect());
        if selector.family.contains(&t) {
            visit(&t);
        }
    });
    Ok(())
}

/// All members of the family as a canonically ordered set.
pub fn enumerate(selector: &FamilySelector) -> Result<SemigroupSet> {
    let mut out = Vec::new();
    for_each(selector, |t| out.push(t.clone()))?;
    Ok(SemigroupSet::from_sorted(selector.n, out))
}

/// `|enumerate(selector)|` without storing the members.
pub fn count_by_enumeration(selector: &FamilySelector) -> Result<BigUint> {
    let mut count: u64 = 0;
    for_each(selector, |_| count += 1)?;
    Ok(BigUint::from(count))
}

/// The shift `α ↦ α̂` with `1α̂ = 1` and `iα̂ = (i-1)α`, from `n-1` points to `n`.
pub fn psi_hat(a: &Transformation) -> Transformation {
    let n = a.n() + 1;
    Transformation::from_fn(n, |i| if i == 1 { 1 } else { a.apply(i - 1) })
}

struct Walker {
    n: usize,
    prune: Prune,
    images: Vec<u8>,
    seen: u32,
    distinct: usize,
    ascents: usize,
    descents: usize,
}

impl Walker {
    fn descend(&mut self, leaf: &mut dyn FnMut(&[u8])) {
        let i = self.images.len();
        if i == self.n {
            leaf(&self.images);
            return;
        }
        for v in 1..=(i + 1) as u8 {
            let prev = self.images.last().copied();
            let (up, down) = match prev {
                Some(p) if v > p => (1, 0),
                Some(p) if v < p => (0, 1),
                _ => (0, 0),
            };
            let new_value = self.seen & (1 << v) == 0;
            let distinct = self.distinct + new_value as usize;
            let ascents = self.ascents + up;
            let descents = self.descents + down;

            if self.prune.max_rank.is_some_and(|r| distinct > r) {
                continue;
            }
            let viable = match self.prune.shape {
                Shape::Any => true,
                Shape::Oriented => ascents < 2 || descents < 2,
                Shape::OrientationPreserving => descents < 2,
                Shape::OrderPreserving => descents == 0,
            };
            if !viable {
                continue;
            }

            let saved = (self.seen, self.distinct, self.ascents, self.descents);
            self.seen |= 1 << v;
            self.distinct = distinct;
            self.ascents = ascents;
            self.descents = descents;
            self.images.push(v);
            self.descend(leaf);
            self.images.pop();
            (self.seen, self.distinct, self.ascents, self.descents) = saved;
        }
    }
}
