//! Named transformations and generating sets.
//!
//! * `ζ_Y`, the step idempotent with image `Y`;
//! * `ρ_m`, the partial identity on `{1..m}` sending the rest to 1;
//! * `B_m` and the set `C`, the minimal generating set of `OPD(n, r)`;
//! * `λ_{m,r̂}` and `G_{n,r̂}`, the orientation-reversing generators;
//! * the factor pair `α_{m,r̂} β_{m,r̂} = λ_{m,r̂}` and the constructive
//!   factorization of elements of `RD*(n, r)` over `OPD(n, r) ∪ G_{n,r̂}`.

use serde::{Deserialize, Serialize};

use crate::counting::{hat_r, max_reversing_rank};
use crate::enumeration::{enumerate, Family, FamilySelector};
use crate::error::{domain, Error, Result};
use crate::set::SemigroupSet;
use crate::transform::{Transformation, MAX_CHAIN};

fn check_chain(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CHAIN {
        return Err(domain(format!(
            "chain size must be in 1..={MAX_CHAIN}, got {n}"
        )));
    }
    Ok(())
}

fn check_ord_params(n: usize, r: usize) -> Result<()> {
    check_chain(n)?;
    if n < 4 || r < 3 || r >= n {
        return Err(domain(format!(
            "need n >= 4 and 3 <= r <= n-1, got n = {n}, r = {r}"
        )));
    }
    Ok(())
}

/// The unique idempotent of `C_n` with image `y`: `[a_i, a_{i+1}-1] ↦ a_i`.
pub fn zeta(n: usize, y: &[usize]) -> Result<Transformation> {
    check_chain(n)?;
    let mut y = y.to_vec();
    y.sort_unstable();
    y.dedup();
    if y.first() != Some(&1) {
        return Err(domain("the image of ζ_Y must contain 1"));
    }
    if y.last().is_some_and(|&v| v > n) {
        return Err(domain(format!("image set exceeds the chain 1..={n}")));
    }
    Ok(Transformation::from_fn(n, |i| {
        let idx = y.partition_point(|&v| v <= i);
        y[idx - 1]
    }))
}

/// `ρ_m = (1 2 ... m 1 ... 1)`.
pub fn rho(n: usize, m: usize) -> Result<Transformation> {
    check_chain(n)?;
    if m < 2 || m > n {
        return Err(domain(format!(
            "ρ_m needs 2 <= m <= n, got n = {n}, m = {m}"
        )));
    }
    Ok(Transformation::from_fn(n, |i| if i <= m { i } else { 1 }))
}

fn combinations(
    pool: &[usize],
    k: usize,
    out: &mut Vec<Vec<usize>>,
    cur: &mut Vec<usize>,
    from: usize,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in from..pool.len() {
        if pool.len() - i < k - cur.len() {
            break;
        }
        cur.push(pool[i]);
        combinations(pool, k, out, cur, i + 1);
        cur.pop();
    }
}

fn check_b_params(n: usize, r: usize, m: usize) -> Result<()> {
    check_chain(n)?;
    if r < 1 || r >= n || m <= r || m > n {
        return Err(domain(format!(
            "B_m needs 1 <= r <= n-1 and r+1 <= m <= n, got n = {n}, r = {r}, m = {m}"
        )));
    }
    Ok(())
}

/// `B_m`: the rank-`r` idempotents of `OPD_n` whose order-preserving degree is `m`.
///
/// Built directly: each is `ζ_Y` on `[1, m]` followed by 1's, with `1 ∈ Y ⊆ [1, m]`
/// and `|Y| = r`. See [`b_set_by_filter`] for the definitional construction.
pub fn b_set(n: usize, r: usize, m: usize) -> Result<SemigroupSet> {
    check_b_params(n, r, m)?;
    let pool: Vec<usize> = (2..=m).collect();
    let mut picks = Vec::new();
    combinations(&pool, r - 1, &mut picks, &mut Vec::new(), 0);
    let mut out = Vec::with_capacity(picks.len());
    for pick in picks {
        let mut y = vec![1];
        y.extend(pick);
        let t = b_candidate(n, m, &y)?;
        // with r = 1 the tail of 1's merges with the prefix and the degree is n
        if t.opd_degree() == Ok(m) {
            out.push(t);
        }
    }
    SemigroupSet::from_elements(n, out)
}

fn b_candidate(n: usize, m: usize, y: &[usize]) -> Result<Transformation> {
    let step = zeta(m, y)?;
    Ok(Transformation::from_fn(n, |i| {
        if i <= m {
            step.apply(i)
        } else {
            1
        }
    }))
}

/// `B_m` by filtering enumerated idempotents of `OPD_n`.
pub fn b_set_by_filter(n: usize, r: usize, m: usize) -> Result<SemigroupSet> {
    check_b_params(n, r, m)?;
    enumerate(&FamilySelector::new(n, Family::B { rank: r, opd: m })?)
}

/// `C = (∪_{m=r+1}^{n} B_m) ∪ {ρ_2, ..., ρ_r}`.
pub fn c_set(n: usize, r: usize) -> Result<SemigroupSet> {
    check_chain(n)?;
    if r < 2 || r >= n {
        return Err(domain(format!(
            "C needs 2 <= r <= n-1, got n = {n}, r = {r}"
        )));
    }
    let mut all = Vec::new();
    for m in (r + 1)..=n {
        all.extend(b_set(n, r, m)?.into_vec());
    }
    for m in 2..=r {
        all.push(rho(n, m)?);
    }
    SemigroupSet::from_elements(n, all)
}

/// Membership in `C` without building the set.
pub fn c_contains(t: &Transformation, r: usize) -> Result<bool> {
    let n = t.n();
    if r < 2 || r >= n {
        return Err(domain(format!(
            "C needs 2 <= r <= n-1, got n = {n}, r = {r}"
        )));
    }
    if (2..=r).any(|m| (1..=n).all(|i| t.apply(i) == if i <= m { i } else { 1 })) {
        return Ok(true);
    }
    if !t.is_in_opd() {
        return Ok(false);
    }
    let m = match t.opd_degree() {
        Ok(m) if m > r => m,
        _ => return Ok(false),
    };
    let mut y: Vec<usize> = (1..=m).map(|i| t.apply(i)).collect();
    y.dedup();
    if y.len() != r || y[0] != 1 {
        return Ok(false);
    }
    Ok(b_candidate(n, m, &y)? == *t)
}

/// Which displayed shape `λ_{m,r̂}` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `3 <= m <= n - r̂ + 1`: descending run `m, ..., p+2`, then a tail of 1's.
    Eq4,
    /// `n - r̂ + 2 <= m <= n - 1`: descending run `m, ..., 2m - n` to the end.
    Eq5,
}

/// Parameters of one `λ_{m,r̂}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaSpec {
    pub n: usize,
    pub rhat: usize,
    pub m: usize,
    pub regime: Regime,
    /// `max(0, m - r̂)`.
    pub p: usize,
}

impl LambdaSpec {
    pub fn new(n: usize, rhat: usize, m: usize) -> Result<Self> {
        check_chain(n)?;
        let cap = max_reversing_rank(n);
        if n < 4 || rhat < 3 || rhat > cap {
            return Err(domain(format!(
                "λ needs n >= 4 and 3 <= r̂ <= {cap}, got n = {n}, r̂ = {rhat}"
            )));
        }
        if m < 3 || m >= n {
            return Err(domain(format!(
                "λ needs 3 <= m <= n-1, got n = {n}, m = {m}"
            )));
        }
        let regime = if m + rhat <= n + 1 {
            Regime::Eq4
        } else {
            Regime::Eq5
        };
        if regime == Regime::Eq5 {
            debug_assert!(2 * m >= n + 2);
        }
        Ok(Self {
            n,
            rhat,
            m,
            regime,
            p: m.saturating_sub(rhat),
        })
    }

    /// Last position of the descending run.
    pub fn run_end(&self) -> usize {
        match self.regime {
            Regime::Eq4 => 2 * self.m - self.p - 2,
            Regime::Eq5 => self.n,
        }
    }

    pub fn to_transformation(&self) -> Transformation {
        let (m, end) = (self.m, self.run_end());
        Transformation::from_fn(
            self.n,
            |i| if (m..=end).contains(&i) { 2 * m - i } else { 1 },
        )
    }
}

/// `λ_{m,r̂}`.
pub fn lambda(n: usize, rhat: usize, m: usize) -> Result<Transformation> {
    Ok(LambdaSpec::new(n, rhat, m)?.to_transformation())
}

/// `G_{n,r̂} = {λ_{m,r̂} : 3 <= m <= n-1}`, with `r̂ = hat_r(n, r)`.
pub fn g_set(n: usize, r: usize) -> Result<SemigroupSet> {
    check_ord_params(n, r)?;
    let rhat = hat_r(n, r)?.value;
    SemigroupSet::from_elements(
        n,
        (3..n)
            .map(|m| lambda(n, rhat, m))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// `C ∪ G_{n,r̂}`, a minimal generating set of `ORD(n, r)`.
pub fn minimal_generating_set(n: usize, r: usize) -> Result<SemigroupSet> {
    check_ord_params(n, r)?;
    c_set(n, r)?.union(&g_set(n, r)?)
}

/// The pair `(α_{m,r̂}, β_{m,r̂})` with `α_{m,r̂} β_{m,r̂} = λ_{m,r̂}`, defined when
/// `λ_{m,r̂}` has the tail-of-ones shape.
pub fn alpha_beta_pair(
    n: usize,
    rhat: usize,
    m: usize,
) -> Result<(Transformation, Transformation)> {
    let spec = LambdaSpec::new(n, rhat, m)?;
    if spec.regime != Regime::Eq4 {
        return Err(domain(format!(
            "the α/β pair needs m <= n - r̂ + 1, got n = {n}, r̂ = {rhat}, m = {m}"
        )));
    }
    let end = spec.run_end();
    let p = spec.p;
    let alpha = Transformation::from_fn(n, |i| if (m..=end).contains(&i) { i } else { 1 });
    let beta = Transformation::from_fn(n, |i| match i {
        i if i < m => 1,
        i if i < end => 2 * m - i,
        _ => p + 2,
    });
    Ok((alpha, beta))
}

/// Membership class a factor of a [`FactorizationWitness`] is claimed to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorClass {
    /// `OPD(n, r)`.
    Opd,
    /// An element of `G_{n,r̂}`.
    Lambda,
    /// `C(n, r)`.
    Chain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub class: FactorClass,
    pub map: Transformation,
}

/// A word over `OPD(n, r) ∪ G_{n,r̂}` whose product is `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationWitness {
    pub target: Transformation,
    /// Order-reversing degree of the target.
    pub m: usize,
    /// Image size of the target.
    pub k: usize,
    pub word: Vec<Factor>,
}

impl FactorizationWitness {
    pub fn product(&self) -> Transformation {
        self.word
            .iter()
            .skip(1)
            .fold(self.word[0].map.clone(), |acc, f| acc.then(&f.map))
    }

    /// Checks the product and every factor's class against `OPD(n, r)`, `C(n, r)`
    /// and `G_{n,r̂}`.
    pub fn verify(&self, r: usize) -> std::result::Result<(), String> {
        let n = self.target.n();
        if self.product() != self.target {
            return Err(format!(
                "word multiplies to {}, not {}",
                self.product(),
                self.target
            ));
        }
        let lambdas = self
            .word
            .iter()
            .filter(|f| f.class == FactorClass::Lambda)
            .count();
        if lambdas != 1 {
            return Err(format!("expected exactly one λ factor, found {lambdas}"));
        }
        let g = g_set(n, r).map_err(|e| e.to_string())?;
        for f in &self.word {
            let ok = match f.class {
                FactorClass::Opd => f.map.is_in_opd() && f.map.rank() <= r,
                FactorClass::Chain => f.map.is_in_chain() && f.map.rank() <= r,
                FactorClass::Lambda => g.contains(&f.map),
            };
            if !ok {
                return Err(format!(
                    "factor {} is not in its class {:?}",
                    f.map, f.class
                ));
            }
        }
        Ok(())
    }
}

/// Writes `a ∈ RD*(n, r)` as `β₁ λ_{m,r̂} β₂` (when `m + k - 2 = n`) or
/// `β₁ λ_{m,r̂} δ_{m,k} β₂`, where `m = ord(a)` and `k = |im(a)|`.
pub fn factorize(a: &Transformation, n: usize, r: usize) -> Result<FactorizationWitness> {
    if a.n() != n {
        return Err(Error::DomainMismatch {
            left: n,
            right: a.n(),
        });
    }
    check_chain(n)?;
    if n < 4 || r < 3 || r > n {
        return Err(domain(format!(
            "need n >= 4 and 3 <= r <= n, got n = {n}, r = {r}"
        )));
    }
    if !a.is_in_rd_star() || a.rank() > r {
        return Err(domain(format!("{a} is not in RD*({n},{r})")));
    }
    let rhat = hat_r(n, r)?.value;
    let m = a.ord_degree()?;
    let image = a.image();
    let k = image.len();

    // β₁ sends a_i α⁻¹ (i >= 2) to m + k - i and everything else to 1
    let beta1 = Transformation::from_fn(n, |x| {
        let v = a.apply(x);
        if x < m || v == 1 {
            1
        } else {
            let i = image.binary_search(&v).expect("value is in the image") + 1;
            m + k - i
        }
    });
    // β₂: [1, m-k+1] ↦ 1, m-k+j ↦ a_j for 2 <= j <= k-1, [m, n] ↦ a_k
    let beta2 = Transformation::from_fn(n, |x| {
        if x + k <= m + 1 {
            1
        } else if x >= m {
            image[k - 1]
        } else {
            image[x + k - m - 1]
        }
    });
    let lam = lambda(n, rhat, m)?;

    let mut word = vec![
        Factor {
            class: FactorClass::Opd,
            map: beta1,
        },
        Factor {
            class: FactorClass::Lambda,
            map: lam,
        },
    ];
    if m + k - 2 < n {
        let delta = Transformation::from_fn(n, |x| {
            if x + k <= m + 1 {
                1
            } else if x >= m {
                m
            } else {
                x
            }
        });
        word.push(Factor {
            class: FactorClass::Chain,
            map: delta,
        });
    }
    word.push(Factor {
        class: FactorClass::Opd,
        map: beta2,
    });
    let witness = FactorizationWitness {
        target: a.clone(),
        m,
        k,
        word,
    };
    debug_assert_eq!(witness.product(), *a);
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Transformation {
        s.parse().unwrap()
    }

    #[test]
    fn c_contains_matches_c_set() {
        for n in 3..=7 {
            for r in 2..n {
                let c = c_set(n, r).unwrap();
                let all =
                    enumerate(&FamilySelector::new(n, Family::AllDecreasing).unwrap()).unwrap();
                for a in all.iter() {
                    assert_eq!(
                        c_contains(a, r).unwrap(),
                        c.contains(a),
                        "n={n} r={r} a={a}"
                    );
                }
            }
        }
        assert!(c_contains(&t("1 2 3"), 3).is_err());
        assert!(!c_contains(&t("3 1 2"), 2).unwrap());
    }

    #[test]
    fn zeta_examples() {
        let z = zeta(5, &[1, 3]).unwrap();
        assert_eq!(z, t("1 1 3 3 3"));
        assert!(z.is_idempotent() && z.is_in_chain());
        assert_eq!(zeta(4, &[1]).unwrap(), Transformation::zero(4));
        assert_eq!(zeta(4, &[1, 2, 3, 4]).unwrap(), Transformation::identity(4));
        assert!(zeta(4, &[2, 3]).is_err());
        assert!(zeta(4, &[1, 5]).is_err());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(5, 3).unwrap(), t("1 2 3 1 1"));
        assert_eq!(rho(5, 5).unwrap(), Transformation::identity(5));
        assert_eq!(rho(5, 2).unwrap(), t("1 2 1 1 1"));
        assert!(rho(5, 1).is_err());
        assert!(rho(5, 6).is_err());
    }

    #[test]
    fn b_and_c_sets() {
        assert_eq!(b_set(5, 3, 4).unwrap().len(), 3);
        assert_eq!(b_set(5, 3, 5).unwrap().len(), 6);
        let b434 = b_set(4, 3, 4).unwrap();
        let zetas: Vec<_> = [[1, 2, 3], [1, 2, 4], [1, 3, 4]]
            .iter()
            .map(|y| zeta(4, y).unwrap())
            .collect();
        assert_eq!(b434, SemigroupSet::from_elements(4, zetas).unwrap());
        assert_eq!(b_set(5, 1, 3).unwrap().len(), 0);
        assert!(b_set(5, 3, 3).is_err());

        assert_eq!(c_set(5, 3).unwrap().len(), 11);
        assert_eq!(c_set(4, 3).unwrap().len(), 5);
        let c = c_set(6, 3).unwrap();
        assert!(c.contains(&rho(6, 3).unwrap()));
        assert!(!c.contains(&rho(6, 4).unwrap()));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda(5, 3, 3).unwrap(), t("1 1 3 2 1"));
        assert_eq!(lambda(5, 3, 4).unwrap(), t("1 1 1 4 3"));
        assert_eq!(lambda(4, 3, 3).unwrap(), t("1 1 3 2"));
        assert_eq!(LambdaSpec::new(5, 3, 3).unwrap().regime, Regime::Eq4);
        assert_eq!(LambdaSpec::new(5, 3, 4).unwrap().regime, Regime::Eq5);
        assert_eq!(LambdaSpec::new(4, 3, 3).unwrap().regime, Regime::Eq5);
        assert!(lambda(5, 4, 3).is_err());
        assert!(lambda(5, 3, 5).is_err());
    }

    #[test]
    fn g_and_generating_sets() {
        let g = g_set(5, 3).unwrap();
        assert_eq!(g.as_slice(), &[t("1 1 1 4 3"), t("1 1 3 2 1")]);
        assert_eq!(g_set(4, 3).unwrap().as_slice(), &[t("1 1 3 2")]);
        assert_eq!(minimal_generating_set(5, 3).unwrap().len(), 13);
        assert!(g_set(5, 5).is_err());
    }

    #[test]
    fn alpha_beta_examples() {
        let (a, b) = alpha_beta_pair(6, 3, 3).unwrap();
        assert_eq!(a, t("1 1 3 4 1 1"));
        assert_eq!(b, t("1 1 3 2 2 2"));
        assert_eq!(a.then(&b), lambda(6, 3, 3).unwrap());
        assert!(alpha_beta_pair(5, 3, 4).is_err());
    }

    #[test]
    fn factorize_worked_example() {
        let a = t("1 1 3 2 1");
        let w = factorize(&a, 5, 3).unwrap();
        let maps: Vec<String> = w.word.iter().map(|f| f.map.to_string()).collect();
        assert_eq!(maps, ["1 1 3 4 1", "1 1 3 2 1", "1 2 3 3 3", "1 2 3 3 3"]);
        assert_eq!(w.product(), a);
        assert_eq!(w.verify(3), Ok(()));

        // m + k - 2 = n: three-factor word
        let b = t("1 1 1 4 3");
        let w = factorize(&b, 5, 3).unwrap();
        assert_eq!(w.word.len(), 3);
        assert_eq!(w.verify(3), Ok(()));

        assert!(factorize(&t("1 2 3 1 1"), 5, 3).is_err());
        assert!(factorize(&a, 6, 3).is_err());
    }
}
