//! Maximal subsemigroups of `ORD(n, r)` and `ORD_n`.
//!
//! For `3 <= r <= n-1` every maximal subsemigroup of `ORD(n, r)` is one of
//!
//! * `ORD(n, r) \ {α}` for `α ∈ C`,
//! * `ORD(n, r) \ {λ_{m,r̂}}` for `n - r̂ + 2 <= m <= n - 1`,
//! * `ORD(n, r) \ L_{m,r̂}` for `3 <= m <= n - r̂ + 1`,
//!
//! and those of `ORD_n` are `ORD(n, n-1)` together with the maximal
//! subsemigroups of `ORD(n, n-1)` with `1_n` adjoined.

use serde::{Deserialize, Serialize};

use crate::closure::is_maximal_in;
use crate::counting::hat_r;
use crate::enumeration::{enumerate, Family, FamilySelector};
use crate::error::{domain, Error, Result};
use crate::generators::{c_contains, c_set, lambda};
use crate::set::SemigroupSet;
use crate::transform::{KernelPartition, Transformation};

fn check_params(n: usize, r: usize) -> Result<()> {
    if n < 4 || r < 3 || r >= n {
        return Err(domain(format!(
            "need n >= 4 and 3 <= r <= n-1, got n = {n}, r = {r}"
        )));
    }
    Ok(())
}

/// `L_{m,r̂}`: maps in `ORD_n` with the image of `λ_{m,r̂}` and the same
/// least preimage for every image point.
pub fn l_set(n: usize, r: usize, m: usize) -> Result<SemigroupSet> {
    check_params(n, r)?;
    let rhat = hat_r(n, r)?.value;
    let lam = lambda(n, rhat, m)?;
    let image = lam.image();
    let mins = least_preimages(&lam);
    let ord_n = enumerate(&FamilySelector::new(n, Family::Ord { max_rank: None })?)?;
    let members: Vec<Transformation> = ord_n
        .into_vec()
        .into_iter()
        .filter(|a| a.image() == image && least_preimages(a) == mins)
        .collect();
    if members.iter().any(|a| a.rank() > r) {
        return Err(Error::Precondition(format!(
            "L_{{{m},{rhat}}} leaves ORD({n},{r})"
        )));
    }
    SemigroupSet::from_elements(n, members)
}

/// `min(xα⁻¹)` for each image point `x`, in increasing order of `x`.
fn least_preimages(a: &Transformation) -> Vec<usize> {
    let mut out = vec![0usize; a.n() + 1];
    for x in (1..=a.n()).rev() {
        out[a.apply(x)] = x;
    }
    out.into_iter().filter(|&v| v != 0).collect()
}

/// The idempotent with the given kernel sending each class to its point of
/// `transversal`.
pub fn idempotent_with(kernel: &KernelPartition, transversal: &[usize]) -> Result<Transformation> {
    if kernel.classes.is_empty() || !kernel.is_transversal(transversal) {
        return Err(domain(format!(
            "{transversal:?} is not a transversal of the kernel"
        )));
    }
    let n = kernel.n();
    let mut images = vec![0usize; n];
    for class in &kernel.classes {
        let rep = *transversal
            .iter()
            .find(|t| class.members.binary_search(t).is_ok())
            .expect("transversal meets every class");
        for &x in &class.members {
            images[x - 1] = rep;
        }
    }
    Transformation::new(&images)
}

/// What is removed from the ambient semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DescriptorKind {
    /// Remove a single element of `C`.
    RemoveC { alpha: Transformation },
    /// Remove the undecomposable `λ_{m,r̂}`.
    RemoveLambda { m: usize },
    /// Remove the whole of `L_{m,r̂}`.
    RemoveL { m: usize },
    /// `ORD(n, n-1)` as a subsemigroup of `ORD_n`.
    DropIdentity,
}

/// A symbolic maximal subsemigroup.
///
/// With `with_identity` set the descriptor lives in `ORD_n` (and `r = n - 1`):
/// the realized set is the `ORD(n, n-1)` one with `1_n` adjoined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalDescriptor {
    #[serde(flatten)]
    pub kind: DescriptorKind,
    pub n: usize,
    pub r: usize,
    #[serde(default, skip_serializing_if = "is_false")]
    pub with_identity: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl MaximalDescriptor {
    pub fn new(n: usize, r: usize, kind: DescriptorKind) -> Result<Self> {
        let d = Self {
            kind,
            n,
            r,
            with_identity: false,
        };
        d.validate()?;
        Ok(d)
    }

    /// Decodes one JSON descriptor and checks its invariants.
    pub fn from_json(text: &str) -> Result<Self> {
        let d: Self = serde_json::from_str(text).map_err(|e| Error::Decode(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    /// Whether the descriptor lives in `ORD_n` rather than `ORD(n, r)`.
    pub fn is_full_semigroup(&self) -> bool {
        self.with_identity || self.kind == DescriptorKind::DropIdentity
    }

    pub fn validate(&self) -> Result<()> {
        let (n, r) = (self.n, self.r);
        check_params(n, r)?;
        if self.is_full_semigroup() && r != n - 1 {
            return Err(domain(format!(
                "descriptors of ORD_n are taken at r = n-1, got n = {n}, r = {r}"
            )));
        }
        let rhat = hat_r(n, r)?.value;
        match &self.kind {
            DescriptorKind::RemoveC { alpha } => {
                if alpha.n() != n || !c_contains(alpha, r)? {
                    return Err(domain(format!("{alpha} is not in C for n = {n}, r = {r}")));
                }
            }
            DescriptorKind::RemoveLambda { m } => {
                if *m + rhat < n + 2 || *m >= n {
                    return Err(domain(format!(
                        "removing λ needs {} <= m <= {}, got m = {m}",
                        n + 2 - rhat,
                        n - 1
                    )));
                }
            }
            DescriptorKind::RemoveL { m } => {
                if *m < 3 || *m + rhat > n + 1 {
                    return Err(domain(format!(
                        "removing L needs 3 <= m <= {}, got m = {m}",
                        n + 1 - rhat
                    )));
                }
            }
            DescriptorKind::DropIdentity => {
                if self.with_identity {
                    return Err(domain("drop_identity cannot also adjoin the identity"));
                }
            }
        }
        Ok(())
    }

    /// The semigroup this descriptor is maximal in: `ORD(n, r)`, or `ORD_n`.
    pub fn ambient(&self) -> Result<SemigroupSet> {
        let max_rank = if self.is_full_semigroup() {
            None
        } else {
            Some(self.r)
        };
        enumerate(&FamilySelector::new(self.n, Family::Ord { max_rank })?)
    }

    /// The concrete subsemigroup.
    pub fn realize(&self) -> Result<SemigroupSet> {
        self.validate()?;
        let ord_nr = enumerate(&FamilySelector::new(self.n, Family::ord(self.r))?)?;
        self.realize_in(&ord_nr)
    }

    /// As [`realize`](Self::realize), reusing an already enumerated `ORD(n, r)`.
    pub fn realize_in(&self, ord_nr: &SemigroupSet) -> Result<SemigroupSet> {
        if ord_nr.n() != self.n {
            return Err(Error::DomainMismatch {
                left: self.n,
                right: ord_nr.n(),
            });
        }
        let rhat = hat_r(self.n, self.r)?.value;
        let base = match &self.kind {
            DescriptorKind::RemoveC { alpha } => ord_nr.without(alpha),
            DescriptorKind::RemoveLambda { m } => ord_nr.without(&lambda(self.n, rhat, *m)?),
            DescriptorKind::RemoveL { m } => ord_nr.difference(&l_set(self.n, self.r, *m)?)?,
            DescriptorKind::DropIdentity => ord_nr.clone(),
        };
        if self.with_identity {
            base.with(Transformation::identity(self.n))
        } else {
            Ok(base)
        }
    }
}

/// Every maximal subsemigroup of `ORD(n, r)`: one per element of `C`, one per
/// undecomposable `λ_{m,r̂}`, one per `L_{m,r̂}`.
pub fn maximal_descriptors(n: usize, r: usize) -> Result<Vec<MaximalDescriptor>> {
    check_params(n, r)?;
    let rhat = hat_r(n, r)?.value;
    let mut out: Vec<MaximalDescriptor> = c_set(n, r)?
        .into_vec()
        .into_iter()
        .map(|alpha| MaximalDescriptor {
            kind: DescriptorKind::RemoveC { alpha },
            n,
            r,
            with_identity: false,
        })
        .collect();
    let plain = |kind| MaximalDescriptor {
        kind,
        n,
        r,
        with_identity: false,
    };
    out.extend(((n + 2 - rhat)..n).map(|m| plain(DescriptorKind::RemoveLambda { m })));
    out.extend((3..=(n + 1 - rhat)).map(|m| plain(DescriptorKind::RemoveL { m })));
    Ok(out)
}

/// Every maximal subsemigroup of `ORD_n`.
pub fn maximal_descriptors_full(n: usize) -> Result<Vec<MaximalDescriptor>> {
    if n < 4 {
        return Err(domain(format!("need n >= 4, got {n}")));
    }
    let mut out = vec![MaximalDescriptor {
        kind: DescriptorKind::DropIdentity,
        n,
        r: n - 1,
        with_identity: false,
    }];
    out.extend(maximal_descriptors(n, n - 1)?.into_iter().map(|mut d| {
        d.with_identity = true;
        d
    }));
    Ok(out)
}

/// Realizes `d` and checks it is maximal in its ambient semigroup.
pub fn verify_descriptor(d: &MaximalDescriptor) -> Result<bool> {
    let whole = d.ambient()?;
    let ord_nr = if d.is_full_semigroup() {
        enumerate(&FamilySelector::new(d.n, Family::ord(d.r))?)?
    } else {
        whole.clone()
    };
    is_maximal_in(&d.realize_in(&ord_nr)?, &whole)
}
