//! Combinatorial oracles for (over)partitions with parts separated by parity.
//!
//! Two independent algorithms are provided: [`enumerate_sep`] lists every
//! decorated partition explicitly, while [`count_sep`] and [`series_sep`]
//! count them with a weighted product over the boundary between the two
//! parity blocks. The test suite checks that they agree.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::series::LaurentSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(size: u64) -> Parity {
        if size % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn opposite(self) -> Parity {
        match self {
            Parity::Odd => Parity::Even,
            Parity::Even => Parity::Odd,
        }
    }

    fn letter(self) -> char {
        match self {
            Parity::Odd => 'o',
            Parity::Even => 'e',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Restriction {
    Unrestricted,
    Distinct,
}

impl Restriction {
    fn letter(self) -> char {
        match self {
            Restriction::Unrestricted => 'u',
            Restriction::Distinct => 'd',
        }
    }
}

/// Which family: the parity and restriction of the smaller parts, and the
/// restriction of the larger parts (whose parity is the opposite one).
///
/// Written `xy^zw`, e.g. `od^eu` has distinct odd parts below unrestricted
/// even parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SepConfig {
    pub low_parity: Parity,
    pub low_restriction: Restriction,
    pub high_restriction: Restriction,
}

impl SepConfig {
    pub fn new(low_parity: Parity, low_restriction: Restriction, high_restriction: Restriction) -> Self {
        SepConfig {
            low_parity,
            low_restriction,
            high_restriction,
        }
    }

    pub fn high_parity(&self) -> Parity {
        self.low_parity.opposite()
    }

    /// All eight configurations.
    pub fn all() -> Vec<SepConfig> {
        let mut out = Vec::with_capacity(8);
        for p in [Parity::Even, Parity::Odd] {
            for lr in [Restriction::Unrestricted, Restriction::Distinct] {
                for hr in [Restriction::Unrestricted, Restriction::Distinct] {
                    out.push(SepConfig::new(p, lr, hr));
                }
            }
        }
        out
    }

    fn restriction_of(&self, parity: Parity) -> Restriction {
        if parity == self.low_parity {
            self.low_restriction
        } else {
            self.high_restriction
        }
    }

    /// Whether parts of this parity may carry an overline under `variant`.
    pub fn decorates(&self, parity: Parity, variant: Variant) -> bool {
        match variant {
            Variant::Plain => false,
            Variant::Overlined => true,
            Variant::Modified => self.restriction_of(parity) == Restriction::Unrestricted,
        }
    }
}

impl fmt::Display for SepConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}^{}{}",
            self.low_parity.letter(),
            self.low_restriction.letter(),
            self.high_parity().letter(),
            self.high_restriction.letter()
        )
    }
}

impl FromStr for SepConfig {
    type Err = String;

    /// Accepts `od^eu`, `od-eu`, `od/eu` or `odeu`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters: Vec<char> = s
            .chars()
            .filter(|c| !matches!(c, '^' | '-' | '/' | '_'))
            .map(|c| c.to_ascii_lowercase())
            .collect();
        let bad = || format!("invalid family `{s}` (expected e.g. `od^eu`)");
        if letters.len() != 4 {
            return Err(bad());
        }
        let parity = |c: char| match c {
            'o' => Ok(Parity::Odd),
            'e' => Ok(Parity::Even),
            _ => Err(bad()),
        };
        let restriction = |c: char| match c {
            'u' => Ok(Restriction::Unrestricted),
            'd' => Ok(Restriction::Distinct),
            _ => Err(bad()),
        };
        let low = parity(letters[0])?;
        let high = parity(letters[2])?;
        if low == high {
            return Err(format!("family `{s}` must use both parities"));
        }
        Ok(SepConfig::new(low, restriction(letters[1])?, restriction(letters[3])?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Ordinary partitions.
    Plain,
    /// Overpartitions: the first occurrence of every size may be overlined.
    Overlined,
    /// Overpartitions where parts of a distinct block are never overlined.
    Modified,
}

impl Variant {
    pub fn all() -> [Variant; 3] {
        [Variant::Plain, Variant::Overlined, Variant::Modified]
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Overlined => "over",
            Variant::Modified => "mod",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(Variant::Plain),
            "over" | "overlined" => Ok(Variant::Overlined),
            "mod" | "modified" => Ok(Variant::Modified),
            _ => Err(format!("invalid variant `{s}` (expected plain, over or mod)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part {
    pub size: u64,
    pub overlined: bool,
}

/// Parts in non-increasing order of size.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DecoratedPartition {
    pub parts: Vec<Part>,
}

impl DecoratedPartition {
    pub fn total(&self) -> u64 {
        self.parts.iter().map(|p| p.size).sum()
    }

    /// Check every structural invariant for membership in `(cfg, variant)`.
    pub fn validate(&self, cfg: &SepConfig, variant: Variant) -> Result<(), String> {
        let parts = &self.parts;
        for w in parts.windows(2) {
            if w[0].size < w[1].size {
                return Err("sizes are not non-increasing".into());
            }
            if w[0].size == w[1].size && w[1].overlined {
                return Err(format!("overline on a repeated copy of {}", w[1].size));
            }
        }
        if parts.iter().any(|p| p.size == 0) {
            return Err("zero part".into());
        }
        let low = cfg.low_parity;
        let high = cfg.high_parity();
        let max_low = parts.iter().filter(|p| Parity::of(p.size) == low).map(|p| p.size).max();
        let min_high = parts.iter().filter(|p| Parity::of(p.size) == high).map(|p| p.size).min();
        if let (Some(l), Some(h)) = (max_low, min_high) {
            if h <= l {
                return Err(format!("{h} is not larger than {l}"));
            }
        }
        for parity in [low, high] {
            let restriction = cfg.restriction_of(parity);
            let sizes: Vec<u64> = parts
                .iter()
                .filter(|p| Parity::of(p.size) == parity)
                .map(|p| p.size)
                .collect();
            if restriction == Restriction::Distinct && sizes.windows(2).any(|w| w[0] == w[1]) {
                return Err("repeated size in a distinct block".into());
            }
            let overlined = parts
                .iter()
                .any(|p| Parity::of(p.size) == parity && p.overlined);
            if overlined && !cfg.decorates(parity, variant) {
                return Err(format!("overline not allowed on {parity:?} parts"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for DecoratedPartition {
    /// `2~+1` for an overlined 2 followed by a plain 1; empty for `n = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{}{}", p.size, if p.overlined { "~" } else { "" })?;
        }
        Ok(())
    }
}

/// Every decorated partition of `n` in the family, each exactly once.
///
/// Size sequences are produced in decreasing lexicographic order; within a
/// size sequence the overline patterns count up in binary with the largest
/// decoratable size as the most significant bit.
pub fn enumerate_sep(cfg: &SepConfig, variant: Variant, n: u64) -> Vec<DecoratedPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    undecorated(cfg, n, n, false, &mut current, &mut |sizes| {
        decorate(cfg, variant, sizes, &mut out);
    });
    out
}

fn undecorated(
    cfg: &SepConfig,
    remaining: u64,
    max_size: u64,
    in_low: bool,
    current: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    for p in (1..=remaining.min(max_size)).rev() {
        let parity = Parity::of(p);
        let low = parity == cfg.low_parity;
        if in_low && !low {
            continue;
        }
        let next_max = if cfg.restriction_of(parity) == Restriction::Distinct {
            p - 1
        } else {
            p
        };
        current.push(p);
        undecorated(cfg, remaining - p, next_max, low, current, emit);
        current.pop();
    }
}

fn decorate(cfg: &SepConfig, variant: Variant, sizes: &[u64], out: &mut Vec<DecoratedPartition>) {
    let mut distinct: Vec<u64> = sizes.to_vec();
    distinct.dedup();
    let free: Vec<u64> = distinct
        .into_iter()
        .filter(|&s| cfg.decorates(Parity::of(s), variant))
        .collect();
    let k = free.len();
    for mask in 0u64..(1u64 << k) {
        let mut parts = Vec::with_capacity(sizes.len());
        let mut prev = None;
        for &s in sizes {
            let first = prev != Some(s);
            prev = Some(s);
            let overlined = first
                && free
                    .iter()
                    .position(|&f| f == s)
                    .is_some_and(|i| mask >> (k - 1 - i) & 1 == 1);
            parts.push(Part { size: s, overlined });
        }
        out.push(DecoratedPartition { parts });
    }
}

// Integer power series helpers for the weighted count, all truncated at `len`.

fn poly_one(len: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    if len > 0 {
        v[0] = BigInt::one();
    }
    v
}

/// Multiply in place by `1 + c q^s`.
fn mul_binomial(f: &mut [BigInt], c: i64, s: usize) {
    for k in (s..f.len()).rev() {
        if !f[k - s].is_zero() {
            let add = &f[k - s] * c;
            f[k] += add;
        }
    }
}

/// Divide in place by `1 + c q^s`.
fn div_binomial(f: &mut [BigInt], c: i64, s: usize) {
    for k in s..f.len() {
        if !f[k - s].is_zero() {
            let sub = &f[k - s] * c;
            f[k] -= sub;
        }
    }
}

/// Generating factor of one part size: `1 + w q^s` when distinct,
/// `1 + w q^s/(1 - q^s) = (1 + (w-1) q^s)/(1 - q^s)` when unrestricted.
fn apply_size(f: &mut [BigInt], s: usize, distinct: bool, weight: i64) {
    if distinct {
        mul_binomial(f, weight, s);
    } else {
        if weight != 1 {
            mul_binomial(f, weight - 1, s);
        }
        div_binomial(f, -1, s);
    }
}

fn remove_size(f: &mut [BigInt], s: usize, distinct: bool, weight: i64) {
    if distinct {
        div_binomial(f, weight, s);
    } else {
        mul_binomial(f, -1, s);
        if weight != 1 {
            div_binomial(f, weight - 1, s);
        }
    }
}

/// Coefficients `0..len` of the family's generating function.
///
/// Every member is split at its largest low-parity part `B` (`B = 0` when the
/// low block is empty): the low block has maximum exactly `B` and every
/// high-parity part exceeds `B`. Each member has exactly one such `B`, so the
/// sum over `B` counts it once. A size that may be overlined carries weight 2.
pub fn family_counts(cfg: &SepConfig, variant: Variant, len: usize) -> Vec<BigUint> {
    if len == 0 {
        return Vec::new();
    }
    let low = cfg.low_parity;
    let high = cfg.high_parity();
    let low_distinct = cfg.low_restriction == Restriction::Distinct;
    let high_distinct = cfg.high_restriction == Restriction::Distinct;
    let low_w: i64 = if cfg.decorates(low, variant) { 2 } else { 1 };
    let high_w: i64 = if cfg.decorates(high, variant) { 2 } else { 1 };

    // high block with every size available
    let mut high_gf = poly_one(len);
    for s in 1..len {
        if Parity::of(s as u64) == high {
            apply_size(&mut high_gf, s, high_distinct, high_w);
        }
    }
    let mut total = high_gf.clone();
    // low block with all sizes below the current boundary
    let mut low_below = poly_one(len);
    for b in 1..len {
        if Parity::of(b as u64) == high {
            // high parts must now exceed b
            remove_size(&mut high_gf, b, high_distinct, high_w);
            continue;
        }
        // low block whose largest part is exactly b: low_below * (factor_b - 1)
        let mut with_b = low_below.clone();
        apply_size(&mut with_b, b, low_distinct, low_w);
        let exact: Vec<BigInt> = with_b.iter().zip(&low_below).map(|(a, c)| a - c).collect();
        for (i, a) in exact.iter().enumerate().skip(b) {
            if a.is_zero() {
                continue;
            }
            for (j, h) in high_gf.iter().enumerate().take(len - i) {
                if !h.is_zero() {
                    total[i + j] += a * h;
                }
            }
        }
        low_below = with_b;
    }
    total
        .into_iter()
        .map(|c| {
            assert!(!c.is_negative(), "negative count");
            c.to_biguint().unwrap()
        })
        .collect()
}

/// Number of members of the family with total `n`.
pub fn count_sep(cfg: &SepConfig, variant: Variant, n: u64) -> BigUint {
    family_counts(cfg, variant, n as usize + 1).pop().unwrap()
}

/// The family's generating function, exact below `trunc`.
pub fn series_sep(cfg: &SepConfig, variant: Variant, trunc: i64) -> LaurentSeries {
    let counts = family_counts(cfg, variant, trunc.max(0) as usize);
    LaurentSeries::from_coeffs(
        0,
        counts
            .into_iter()
            .map(|c| Rational::from_integer(BigInt::from(c)))
            .collect(),
    )
}

/// Overpartitions of `n` with no parity condition: coefficient of
/// `prod (1 + q^k)/(1 - q^k)`.
pub fn count_overpartitions(n: u64) -> BigUint {
    let len = n as usize + 1;
    let mut f = poly_one(len);
    for s in 1..len {
        apply_size(&mut f, s, false, 2);
    }
    f.pop().unwrap().to_biguint().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> SepConfig {
        s.parse().unwrap()
    }

    fn render(list: &[DecoratedPartition]) -> Vec<String> {
        list.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn parse_and_display_family() {
        let c = cfg("od^eu");
        assert_eq!(c.low_parity, Parity::Odd);
        assert_eq!(c.low_restriction, Restriction::Distinct);
        assert_eq!(c.high_parity(), Parity::Even);
        assert_eq!(c.high_restriction, Restriction::Unrestricted);
        assert_eq!(c.to_string(), "od^eu");
        assert_eq!(cfg("EU-OD"), cfg("eu^od"));
        assert!("ou^ou".parse::<SepConfig>().is_err());
        assert!("ox^eu".parse::<SepConfig>().is_err());
        assert_eq!(SepConfig::all().len(), 8);
    }

    #[test]
    fn overlined_od_eu_of_three() {
        let list = enumerate_sep(&cfg("od^eu"), Variant::Overlined, 3);
        assert_eq!(render(&list), vec!["3", "3~", "2+1", "2+1~", "2~+1", "2~+1~"]);
        assert_eq!(count_sep(&cfg("od^eu"), Variant::Overlined, 3), BigUint::from(6u32));
    }

    #[test]
    fn modified_od_eu_of_three() {
        let list = enumerate_sep(&cfg("od^eu"), Variant::Modified, 3);
        assert_eq!(render(&list), vec!["3", "2+1", "2~+1"]);
        assert_eq!(count_sep(&cfg("od^eu"), Variant::Modified, 3), BigUint::from(3u32));
    }

    #[test]
    fn plain_od_eu_of_three() {
        let list = enumerate_sep(&cfg("od^eu"), Variant::Plain, 3);
        assert_eq!(render(&list), vec!["3", "2+1"]);
        assert_eq!(count_sep(&cfg("od^eu"), Variant::Plain, 3), BigUint::from(2u32));
    }

    #[test]
    fn empty_partition_once_everywhere() {
        for c in SepConfig::all() {
            for v in Variant::all() {
                let list = enumerate_sep(&c, v, 0);
                assert_eq!(list, vec![DecoratedPartition::default()]);
                assert_eq!(count_sep(&c, v, 0), BigUint::one());
            }
        }
    }

    #[test]
    fn single_one() {
        assert_eq!(count_sep(&cfg("ou^eu"), Variant::Overlined, 1), BigUint::from(2u32));
        let s = series_sep(&cfg("eu^ou"), Variant::Overlined, 2);
        assert_eq!(s, LaurentSeries::from_integers(0, &[1, 2]));
        let s = series_sep(&cfg("od^ed"), Variant::Overlined, 2);
        assert_eq!(s, LaurentSeries::from_integers(0, &[1, 2]));
        for c in SepConfig::all() {
            assert_eq!(series_sep(&c, Variant::Plain, 1), LaurentSeries::one(1));
        }
    }

    #[test]
    fn overpartition_totals() {
        assert_eq!(count_overpartitions(0), BigUint::one());
        assert_eq!(count_overpartitions(3), BigUint::from(8u32));
        assert_eq!(count_overpartitions(4), BigUint::from(14u32));
    }

    #[test]
    fn single_parity_members_counted_once() {
        // 4 = 4 = 2+2: all even, admissible under eu^ou; with 3+1 (all odd) and 1+1+1+1
        let list = enumerate_sep(&cfg("eu^ou"), Variant::Plain, 4);
        let r = render(&list);
        assert_eq!(r.len(), r.iter().collect::<std::collections::HashSet<_>>().len());
        assert_eq!(r, vec!["4", "3+1", "2+2", "1+1+1+1"]);
    }

    #[test]
    fn validator_rejects_bad_members() {
        let c = cfg("od^eu");
        let p = |v: &[(u64, bool)]| DecoratedPartition {
            parts: v.iter().map(|&(size, overlined)| Part { size, overlined }).collect(),
        };
        assert!(p(&[(2, true), (1, false)]).validate(&c, Variant::Modified).is_ok());
        assert!(p(&[(2, false), (1, true)]).validate(&c, Variant::Modified).is_err());
        assert!(p(&[(3, false), (2, false)]).validate(&c, Variant::Plain).is_err());
        assert!(p(&[(1, false), (1, false)]).validate(&c, Variant::Plain).is_err());
        assert!(p(&[(2, false), (2, true)]).validate(&c, Variant::Overlined).is_err());
        assert!(p(&[(2, true)]).validate(&c, Variant::Plain).is_err());
    }

    #[test]
    fn boundary_split_handles_empty_blocks() {
        // Members with an empty low block are counted by the initial high-only
        // term; members with an empty high block by the boundary at their
        // largest low part. Check both against direct listing for one case.
        let c = cfg("eu^od");
        for n in 0..12 {
            let listed = enumerate_sep(&c, Variant::Overlined, n);
            let only_high = listed
                .iter()
                .filter(|p| p.parts.iter().all(|x| Parity::of(x.size) == Parity::Odd))
                .count();
            let only_low = listed
                .iter()
                .filter(|p| !p.parts.is_empty() && p.parts.iter().all(|x| Parity::of(x.size) == Parity::Even))
                .count();
            let mixed = listed.len() - only_high - only_low;
            assert_eq!(
                BigUint::from(only_high + only_low + mixed),
                count_sep(&c, Variant::Overlined, n)
            );
        }
    }
}
