//! Product closure and the finite-semigroup queries built on it.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::set::SemigroupSet;
use crate::transform::Transformation;

/// Largest semigroup [`exhaustive_maximal_search`] will scan.
pub const MAX_EXHAUSTIVE_SEARCH: usize = 22;

/// `⟨gens⟩`: the least product-closed set containing `gens`.
pub fn close(gens: &SemigroupSet) -> Result<SemigroupSet> {
    if gens.is_empty() {
        return Err(domain("cannot close an empty generator set"));
    }
    Ok(close_from(gens.n(), gens.as_slice().to_vec()))
}

/// Worklist closure. Each round multiplies the frontier against everything
/// known on both sides; the round's new products form the next frontier.
fn close_from(n: usize, seeds: Vec<Transformation>) -> SemigroupSet {
    let mut index: HashSet<Transformation> = HashSet::with_capacity(seeds.len() * 4);
    let mut known: Vec<Transformation> = Vec::with_capacity(seeds.len() * 4);
    for s in seeds {
        if index.insert(s.clone()) {
            known.push(s);
        }
    }
    let mut start = 0;
    while start < known.len() {
        let all = &known;
        let fresh: Vec<Vec<Transformation>> = known[start..]
            .par_iter()
            .map(|f| {
                let mut out = Vec::new();
                for k in all {
                    for p in [f.then(k), k.then(f)] {
                        if !index.contains(&p) {
                            out.push(p);
                        }
                    }
                }
                out
            })
            .collect();
        let next = known.len();
        for p in fresh.into_iter().flatten() {
            if index.insert(p.clone()) {
                known.push(p);
            }
        }
        start = next;
    }
    known.sort_unstable();
    SemigroupSet::from_sorted(n, known)
}

/// Whether `⟨gens⟩ = target`. `gens` must be a subset of `target`.
pub fn is_generating(gens: &SemigroupSet, target: &SemigroupSet) -> Result<bool> {
    if !gens.is_subset(target) {
        return Err(domain("generator set is not contained in the target"));
    }
    if gens.is_empty() {
        return Ok(target.is_empty());
    }
    Ok(close(gens)? == *target)
}

/// Closed under composition.
pub fn is_subsemigroup(s: &SemigroupSet) -> bool {
    s.as_slice()
        .par_iter()
        .all(|a| s.iter().all(|b| s.contains(&a.then(b))))
}

/// Whether `s` is a maximal subsemigroup of `whole`: proper, nonempty,
/// closed, and adjoining any missing element regenerates `whole`.
pub fn is_maximal_in(s: &SemigroupSet, whole: &SemigroupSet) -> Result<bool> {
    if !s.is_subset(whole) {
        return Err(domain(
            "candidate is not contained in the ambient semigroup",
        ));
    }
    if s.is_empty() || s.len() == whole.len() || !is_subsemigroup(s) {
        return Ok(false);
    }
    for x in whole.difference(s)?.iter() {
        let mut seeds = s.as_slice().to_vec();
        seeds.push(x.clone());
        if close_from(s.n(), seeds).len() != whole.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How [`find_decomposition`] searches for factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Left factors restricted to `|im(u)| >= |im(a)|` and `ker(u) ⊆ ker(a)`.
    Pruned,
    /// Every ordered pair.
    Exhaustive,
}

/// Some `(u, v)` in `s` with `uv = a`, `u ≠ a`, `v ≠ a`, if one exists.
pub fn find_decomposition(
    a: &Transformation,
    s: &SemigroupSet,
    mode: SearchMode,
) -> Result<Option<(Transformation, Transformation)>> {
    if !s.contains(a) {
        return Err(domain(format!("{a} is not in the semigroup")));
    }
    let rank = a.rank();
    let found = s
        .as_slice()
        .par_iter()
        .filter(|u| *u != a)
        .filter(|u| mode == SearchMode::Exhaustive || (u.rank() >= rank && u.kernel_refines(a)))
        .find_map_first(|u| {
            s.iter()
                .find(|v| *v != a && u.then(v) == *a)
                .map(|v| (u.clone(), v.clone()))
        });
    Ok(found)
}

pub fn is_undecomposable(a: &Transformation, s: &SemigroupSet) -> Result<bool> {
    Ok(find_decomposition(a, s, SearchMode::Pruned)?.is_none())
}

/// Every maximal proper subsemigroup of `whole`, by scanning all subsets.
///
/// Closed proper subsets are collected with a product table over bitmasks and
/// then reduced to the inclusion-maximal ones.
pub fn exhaustive_maximal_search(whole: &SemigroupSet) -> Result<Vec<SemigroupSet>> {
    let size = whole.len();
    if size > MAX_EXHAUSTIVE_SEARCH {
        return Err(Error::Budget {
            what: "semigroup size for exhaustive search",
            actual: size,
            limit: MAX_EXHAUSTIVE_SEARCH,
        });
    }
    if size <= 1 {
        return Ok(Vec::new());
    }
    let elems = whole.as_slice();
    let mut table = vec![0u8; size * size];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let p = a.then(b);
            let k = elems
                .binary_search(&p)
                .map_err(|_| domain("ambient set is not closed under composition"))?;
            table[i * size + j] = k as u8;
        }
    }
    let full: u32 = (1u32 << size) - 1;
    let closed_mask = |mask: u32| -> bool {
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let row = &table[i * size..(i + 1) * size];
            let mut inner = mask;
            while inner != 0 {
                let j = inner.trailing_zeros() as usize;
                inner &= inner - 1;
                if mask & (1 << row[j]) == 0 {
                    return false;
                }
            }
        }
        true
    };
    let mut closed: Vec<u32> = (1..full)
        .into_par_iter()
        .filter(|&m| closed_mask(m))
        .collect();
    closed.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));

    let mut maximal: Vec<u32> = Vec::new();
    for c in closed {
        if !maximal.iter().any(|&m| c & m == c) {
            maximal.push(c);
        }
    }
    let mut out: Vec<SemigroupSet> = maximal
        .into_iter()
        .map(|m| {
            let members = (0..size)
                .filter(|&i| m & (1 << i) != 0)
                .map(|i| elems[i].clone())
                .collect();
            SemigroupSet::from_sorted(whole.n(), members)
        })
        .collect();
    out.sort();
    Ok(out)
}
