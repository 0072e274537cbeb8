//! Exact closed-form counts and rank formulas.
//!
//! All values are arbitrary-precision; divisions (Catalan, Narayana, the
//! cubic in the `RD*_n` count) are exact and asserted to be so.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// `⌈(n+1)/2⌉`, the largest image size an orientation-reversing
/// order-decreasing map of `n` points can have.
pub fn max_reversing_rank(n: usize) -> usize {
    (n + 2) / 2
}

/// `C(n, k)`; zero unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(n, i) here, and C(n, i) * (n - i) is divisible by i + 1
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

fn bin(n: usize, k: usize) -> BigUint {
    binomial(n as i64, k as i64)
}

fn exact_div(num: BigUint, den: u64) -> BigUint {
    let den = BigUint::from(den);
    let q = &num / &den;
    debug_assert_eq!(&q * &den, num, "inexact division");
    q
}

/// `C_m = C(2m, m) / (m + 1)`.
pub fn catalan(m: i64) -> Result<BigUint> {
    if m < 0 {
        return Err(domain(format!(
            "Catalan index must be non-negative, got {m}"
        )));
    }
    Ok(exact_div(binomial(2 * m, m), (m + 1) as u64))
}

/// `N(m, k) = C(m, k) C(m, k-1) / m`; zero for `k` outside `1..=m`.
pub fn narayana(m: i64, k: i64) -> Result<BigUint> {
    if m < 1 {
        return Err(domain(format!("Narayana row must be at least 1, got {m}")));
    }
    Ok(exact_div(binomial(m, k) * binomial(m, k - 1), m as u64))
}

/// The effective rank cap `r̂ = min(r, ⌈(n+1)/2⌉)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RHat {
    pub n: usize,
    pub r: usize,
    pub value: usize,
}

pub fn hat_r(n: usize, r: usize) -> Result<RHat> {
    if r < 1 || r > n {
        return Err(domain(format!("r̂ needs 1 <= r <= n, got n = {n}, r = {r}")));
    }
    Ok(RHat {
        n,
        r,
        value: r.min(max_reversing_rank(n)),
    })
}

fn check_j_range(n: usize, r: usize) -> Result<()> {
    let cap = max_reversing_rank(n);
    if r < 3 || r > cap {
        return Err(domain(format!(
            "need 3 <= r <= {cap} at n = {n}, got r = {r}"
        )));
    }
    Ok(())
}

fn check_ord_range(n: usize, r: usize) -> Result<()> {
    if n < 4 || r < 3 || r >= n {
        return Err(domain(format!(
            "need n >= 4 and 3 <= r <= n-1, got n = {n}, r = {r}"
        )));
    }
    Ok(())
}

/// `|J_{n,r}| = C(n+1, 2r-1)`.
pub fn card_j(n: usize, r: usize) -> Result<BigUint> {
    check_j_range(n, r)?;
    Ok(bin(n + 1, 2 * r - 1))
}

/// `|G(n,r,m)| = C(m-1, r-1) C(n-m+1, r-1)`.
pub fn card_g_slice(n: usize, r: usize, m: usize) -> Result<BigUint> {
    check_j_range(n, r)?;
    if m < r || m + r > n + 2 {
        return Err(domain(format!(
            "need {r} <= m <= {} at n = {n}, r = {r}, got m = {m}",
            n + 2 - r
        )));
    }
    Ok(bin(m - 1, r - 1) * bin(n - m + 1, r - 1))
}

/// `|RD*_n| = 2^n - (n³ + 5n + 6)/6`.
pub fn card_rd_star(n: usize) -> Result<BigUint> {
    if n < 4 {
        return Err(domain(format!("RD* count is stated for n >= 4, got {n}")));
    }
    let n_big = BigInt::from(n);
    let cubic = &n_big * &n_big * &n_big + BigInt::from(5) * &n_big + BigInt::from(6);
    debug_assert!((&cubic % BigInt::from(6)).is_zero());
    let value = (BigInt::one() << n) - cubic / BigInt::from(6);
    Ok(value.to_biguint().expect("count is non-negative"))
}

/// Elements of `RD*_n` with order-reversing degree `m`:
/// `C(n, m-1) - m - (m-1)(n-m)`.
pub fn card_rd_star_ord_slice(n: usize, m: usize) -> Result<BigUint> {
    if n < 4 {
        return Err(domain(format!("RD* count is stated for n >= 4, got {n}")));
    }
    if m < 3 || m >= n {
        return Err(domain(format!("need 3 <= m <= n-1, got n = {n}, m = {m}")));
    }
    let value = BigInt::from(bin(n, m - 1)) - BigInt::from(m) - BigInt::from((m - 1) * (n - m));
    Ok(value.to_biguint().expect("count is non-negative"))
}

/// `|OPD(n, r)| = -n + 1 + Σ_{m=1}^{r} C_m + Σ_{m=r+1}^{n} Σ_{k=1}^{r} N(m, k)`.
pub fn card_opd(n: usize, r: usize) -> Result<BigUint> {
    if n < 1 || r < 1 || r > n {
        return Err(domain(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    let mut total = BigUint::one();
    for m in 1..=r {
        total += catalan(m as i64)?;
    }
    for m in (r + 1)..=n {
        for k in 1..=r {
            total += narayana(m as i64, k as i64)?;
        }
    }
    // the -n term; total >= n because each of the n rows contributes at least 1
    Ok(total - BigUint::from(n))
}

/// `|ORD(n, r)| = |OPD(n, r)| + Σ_{k=3}^{r̂} C(n+1, 2k-1)`.
///
/// Accepts every `1 <= r <= n`: for `r <= 2` the sum is empty, and `r = n`
/// gives all of `ORD_n`.
pub fn card_ord(n: usize, r: usize) -> Result<BigUint> {
    let rhat = hat_r(n, r)?.value;
    let mut total = card_opd(n, r)?;
    for k in 3..=rhat {
        total += bin(n + 1, 2 * k - 1);
    }
    Ok(total)
}

/// `|ORD_n| = 2^n - (n³ + 11n)/6 + Σ_{m=1}^{n} C_m`.
pub fn card_ord_full(n: usize) -> Result<BigUint> {
    if n < 1 {
        return Err(domain("chain size must be at least 1"));
    }
    let n_big = BigInt::from(n);
    let cubic = &n_big * &n_big * &n_big + BigInt::from(11) * &n_big;
    debug_assert!((&cubic % BigInt::from(6)).is_zero());
    let mut value = (BigInt::one() << n) - cubic / BigInt::from(6);
    for m in 1..=n {
        value += BigInt::from(catalan(m as i64)?);
    }
    Ok(value.to_biguint().expect("count is non-negative"))
}

/// `|N(ORD(n, r))| = |ORD(n-1, r)|` for `n >= 5`.
pub fn card_nilpotent_ord(n: usize, r: usize) -> Result<BigUint> {
    if n < 5 {
        return Err(domain(format!(
            "nilpotent count is stated for n >= 5, got {n}"
        )));
    }
    if r < 1 || r > n {
        return Err(domain(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    card_ord(n - 1, r.min(n - 1))
}

/// Both sides of the Rothe–Hagen identity at `a = r, b = 1, c = n-r+1, m = n-2r+2`.
pub fn rothe_hagen_specialized(n: usize, r: usize) -> Result<(BigUint, BigUint)> {
    check_j_range(n, r)?;
    let top = n + 2 - 2 * r;
    let lhs = (0..=top)
        .map(|k| bin(r - 1 + k, k) * bin(n + 1 - r - k, top - k))
        .sum();
    Ok((lhs, bin(n + 1, 2 * r - 1)))
}

/// `rank(ORD(n, r)) = C(n, r) + n + r - 5`.
pub fn rank_ord(n: usize, r: usize) -> Result<BigUint> {
    check_ord_range(n, r)?;
    Ok(bin(n, r) + BigUint::from(n + r - 5))
}

/// `rank(ORD_n) = 3n - 5`.
pub fn rank_ord_full(n: usize) -> Result<BigUint> {
    if n < 4 {
        return Err(domain(format!(
            "rank of ORD_n is stated for n >= 4, got {n}"
        )));
    }
    Ok(BigUint::from(3 * n - 5))
}

/// `rank(OPD(n, r)) = C(n, r) + r - 2`.
pub fn rank_opd(n: usize, r: usize) -> Result<BigUint> {
    if r < 2 || r >= n {
        return Err(domain(format!("need 2 <= r <= n-1, got n = {n}, r = {r}")));
    }
    Ok(bin(n, r) + BigUint::from(r - 2))
}

/// A closed-form count, optionally paired with the enumerated value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: usize,
    pub r: Option<usize>,
    pub family: String,
    #[serde(with = "big_number")]
    pub closed_form: BigUint,
    #[serde(with = "opt_big_number")]
    pub enumerated: Option<BigUint>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

impl CountReport {
    pub fn closed(
        n: usize,
        r: Option<usize>,
        family: impl Into<String>,
        closed_form: BigUint,
    ) -> Self {
        Self {
            n,
            r,
            family: family.into(),
            closed_form,
            enumerated: None,
            matches: None,
        }
    }

    pub fn with_enumerated(mut self, enumerated: BigUint) -> Self {
        self.matches = Some(self.closed_form == enumerated);
        self.enumerated = Some(enumerated);
        self
    }

    pub const CSV_HEADER: [&'static str; 6] =
        ["n", "r", "family", "closed_form", "enumerated", "match"];

    pub fn csv_record(&self) -> [String; 6] {
        let opt = |o: Option<String>| o.unwrap_or_default();
        [
            self.n.to_string(),
            opt(self.r.map(|r| r.to_string())),
            self.family.clone(),
            self.closed_form.to_string(),
            opt(self.enumerated.as_ref().map(|e| e.to_string())),
            opt(self.matches.map(|m| m.to_string())),
        ]
    }
}

/// Big integers as bare JSON numbers.
pub mod big_number {
    use std::str::FromStr;

    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        Number::from_str(&v.to_string())
            .expect("decimal digits form a JSON number")
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let n = Number::deserialize(d)?;
        BigUint::from_str(&n.to_string()).map_err(D::Error::custom)
    }
}

pub mod opt_big_number {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::big_number::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::big_number")] BigUint);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}
