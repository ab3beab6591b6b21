//! Counting and generating packed words.
//!
//! `d(n,k)` counts packed words of length `n` with supremum `k`; it splits as
//! `d⁺(n,k) = S(n,k)·k!` (no zero letter) plus `d⁰(n,k) = S(n,k+1)·(k+1)!`
//! (zero letter present), and equals `S(n+1,k+1)·k!`. Row sums give `d_n`,
//! and `i_n`, the number of irreducible packed words of length `n`, is the
//! coefficient sequence of `D/(1+D)` for `D = Σ_{n≥1} d_n xⁿ`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::words::{Letter, PackedWord};

/// Stirling numbers of the second kind `S(n,k)` for `n, k ≤ max_n`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push({
            let mut r = vec![BigUint::zero(); max_n + 1];
            r[0] = BigUint::one();
            r
        });
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut r = vec![BigUint::zero(); max_n + 1];
            for k in 1..=n {
                r[k] = &prev[k - 1] + &prev[k] * BigUint::from(k);
            }
            rows.push(r);
        }
        StirlingTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        self.rows[n][k].clone()
    }
}

pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    StirlingTable::new(n).get(n, k)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Packed words of length `n`, supremum `k`, without the zero letter.
pub fn count_dnk_pure(n: usize, k: usize) -> BigUint {
    stirling2(n, k) * factorial(k)
}

/// Packed words of length `n`, supremum `k`, containing the zero letter.
pub fn count_dnk_with_zero(n: usize, k: usize) -> BigUint {
    stirling2(n, k + 1) * factorial(k + 1)
}

/// Packed words of length `n` with supremum `k`: `S(n+1,k+1)·k!`.
pub fn count_dnk(n: usize, k: usize) -> BigUint {
    stirling2(n + 1, k + 1) * factorial(k)
}

/// Packed words of length `n`.
pub fn count_dn(n: usize) -> BigUint {
    let table = StirlingTable::new(n + 1);
    (0..=n)
        .map(|k| table.get(n + 1, k + 1) * factorial(k))
        .sum()
}

/// `d(n,k)` for all `n, k ≤ max_n`, with `d(n,k) = 0` for `k > n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn new(max_n: usize) -> Self {
        let stirling = StirlingTable::new(max_n + 1);
        let rows = (0..=max_n)
            .map(|n| {
                (0..=max_n)
                    .map(|k| stirling.get(n + 1, k + 1) * factorial(k))
                    .collect()
            })
            .collect();
        CountTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> &BigUint {
        &self.rows[n][k]
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }
}

/// `d_0, ..., d_max_n`.
pub fn dn_sequence(max_n: usize) -> Vec<BigUint> {
    let stirling = StirlingTable::new(max_n + 1);
    (0..=max_n)
        .map(|n| {
            (0..=n)
                .map(|k| stirling.get(n + 1, k + 1) * factorial(k))
                .sum()
        })
        .collect()
}

/// `i_0, ..., i_max_n` from `i_n = d_n - Σ_{m=1}^{n-1} i_m d_{n-m}`, with `i_0 = 1`.
pub fn in_sequence(max_n: usize) -> Vec<BigUint> {
    let d: Vec<BigInt> = dn_sequence(max_n).into_iter().map(BigInt::from).collect();
    let mut i: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=max_n {
        let mut v = d[n].clone();
        for m in 1..n {
            v -= &i[m] * &d[n - m];
        }
        i.push(v);
    }
    i.into_iter()
        .map(|v| v.to_biguint().expect("irreducible counts are non-negative"))
        .collect()
}

/// Irreducible packed words of length `n` (`i_0 = 1` for the empty product).
pub fn count_in(n: usize) -> BigUint {
    in_sequence(n).pop().unwrap()
}

/// The alternating sum over compositions `j_1 + ... + j_k = n`
/// of `(-1)^{k+1} d_{j_1} ... d_{j_k}`, enumerated term by term.
pub fn count_in_compositions(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let d: Vec<BigInt> = dn_sequence(n).into_iter().map(BigInt::from).collect();
    fn walk(rest: usize, parts: usize, prod: &BigInt, d: &[BigInt], acc: &mut BigInt) {
        if rest == 0 {
            if parts % 2 == 1 {
                *acc += prod;
            } else {
                *acc -= prod;
            }
            return;
        }
        for j in 1..=rest {
            walk(rest - j, parts + 1, &(prod * &d[j]), d, acc);
        }
    }
    let mut acc = BigInt::zero();
    walk(n, 0, &BigInt::one(), &d, &mut acc);
    acc
}

/// Taylor coefficients `f_0..f_N` of `e^x / (2 - e^x)`, obtained by solving
/// `(2 - e^x) f = e^x` coefficientwise over the rationals.
pub fn egf_coefficients(max_n: usize) -> Vec<BigRational> {
    let exp: Vec<BigRational> = (0..=max_n)
        .map(|k| BigRational::new(BigInt::one(), BigInt::from(factorial(k))))
        .collect();
    // denominator series: g_0 = 1, g_k = -1/k!
    let g = |k: usize| -> BigRational {
        if k == 0 {
            BigRational::one()
        } else {
            -exp[k].clone()
        }
    };
    let mut f: Vec<BigRational> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut v = exp[n].clone();
        for k in 1..=n {
            v -= g(k) * &f[n - k];
        }
        f.push(v / g(0));
    }
    f
}

/// Count of letters from `1..=top` missing in `prefix`, or `None` if the
/// prefix contains a letter above a fixed target supremum.
fn missing_letters(prefix: &[Letter], target: Option<Letter>) -> Option<u32> {
    let mut seen: u128 = 0;
    let mut top = 0;
    for &x in prefix {
        if let Some(k) = target {
            if x > k {
                return None;
            }
        }
        if x != 0 {
            seen |= 1 << x;
            top = top.max(x);
        }
    }
    let top = target.unwrap_or(top);
    Some(top - seen.count_ones())
}

fn feasible(prefix: &[Letter], n: usize, target: Option<Letter>) -> bool {
    match missing_letters(prefix, target) {
        Some(m) => m as usize <= n - prefix.len(),
        None => false,
    }
}

/// Extends `word` to length `n` with the lexicographically smallest completion.
fn complete(word: &mut Vec<Letter>, n: usize, target: Option<Letter>) {
    while word.len() < n {
        let remaining = n - word.len();
        let missing = missing_letters(word, target).unwrap() as usize;
        if missing < remaining {
            word.push(0);
        } else {
            let top = target.unwrap_or_else(|| word.iter().copied().max().unwrap_or(0));
            let next = (1..=top).find(|v| !word.contains(v)).unwrap();
            word.push(next);
        }
    }
}

/// Streams packed words of a fixed length in canonical (lexicographic) order.
///
/// Each step moves to the next word by bumping the rightmost position that
/// still admits a packed completion, then filling the suffix minimally.
#[derive(Debug, Clone)]
pub struct PackedWords {
    n: usize,
    target: Option<Letter>,
    current: Option<Vec<Letter>>,
    started: bool,
}

impl PackedWords {
    fn new(n: usize, target: Option<Letter>) -> Self {
        assert!(n < 128, "word length {n} is too large to enumerate");
        let current = if target.is_some_and(|k| k as usize > n) {
            None
        } else {
            let mut w = Vec::with_capacity(n);
            complete(&mut w, n, target);
            Some(w)
        };
        PackedWords {
            n,
            target,
            current,
            started: false,
        }
    }

    fn advance(&mut self) {
        let Some(word) = self.current.as_mut() else {
            return;
        };
        let max_letter = self.target.unwrap_or(self.n as Letter);
        for i in (0..self.n).rev() {
            let old = word[i];
            word.truncate(i);
            for v in old + 1..=max_letter {
                word.push(v);
                if feasible(word, self.n, self.target) {
                    complete(word, self.n, self.target);
                    return;
                }
                word.pop();
            }
        }
        self.current = None;
    }
}

impl Iterator for PackedWords {
    type Item = PackedWord;

    fn next(&mut self) -> Option<PackedWord> {
        if self.started {
            self.advance();
        }
        self.started = true;
        self.current
            .as_ref()
            .map(|w| PackedWord::from_packed_unchecked(w.clone()))
    }
}

/// All packed words of length `n`, each once, in canonical order.
pub fn generate_packed(n: usize) -> PackedWords {
    PackedWords::new(n, None)
}

/// All packed words of length `n` with supremum `k`.
pub fn generate_packed_with_sup(n: usize, k: usize) -> PackedWords {
    PackedWords::new(n, Some(k as Letter))
}

/// Irreducible packed words of length `n ≥ 1`.
pub fn generate_irreducible(n: usize) -> impl Iterator<Item = PackedWord> {
    generate_packed(n).filter(|w| w.is_irreducible().unwrap_or(false))
}

/// Draws a packed word of length `n` letter by letter, choosing uniformly
/// among the letters that still admit a packed completion.
///
/// Every packed word has positive probability; the distribution is not
/// uniform over packed words.
pub fn sample_packed_word<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PackedWord {
    let mut word: Vec<Letter> = Vec::with_capacity(n);
    let mut options: Vec<Letter> = Vec::with_capacity(n + 1);
    while word.len() < n {
        options.clear();
        for v in 0..=n as Letter {
            word.push(v);
            if feasible(&word, n, None) {
                options.push(v);
            }
            word.pop();
        }
        word.push(options[rng.random_range(0..options.len())]);
    }
    PackedWord::from_packed_unchecked(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    // number of set partitions of {0..n} into exactly k blocks, by brute force
    fn partitions_brute(n: usize, k: usize) -> u64 {
        fn go(i: usize, n: usize, blocks: usize, k: usize) -> u64 {
            if i == n {
                return (blocks == k) as u64;
            }
            blocks as u64 * go(i + 1, n, blocks, k) + go(i + 1, n, blocks + 1, k)
        }
        go(0, n, 0, k)
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(partitions_brute(4, 2), 7);
        assert_eq!(stirling2(4, 2), big(7));
        for n in 0..8 {
            assert_eq!(stirling2(n, n), big(1));
            for k in 0..=n {
                assert_eq!(stirling2(n, k), big(partitions_brute(n, k)), "S({n},{k})");
            }
        }
        assert_eq!(stirling2(3, 0), big(0));
        assert_eq!(stirling2(2, 5), big(0));
    }

    #[test]
    fn dnk_examples() {
        assert_eq!(count_dnk(4, 2), big(50));
        assert_eq!(count_dnk(7, 5), big(31920));
        for n in 0..8 {
            assert_eq!(count_dnk(n, n), factorial(n));
        }
        for n in 0..=10 {
            for k in 0..=n {
                assert_eq!(
                    count_dnk(n, k),
                    count_dnk_pure(n, k) + count_dnk_with_zero(n, k)
                );
            }
        }
    }

    #[test]
    fn dn_examples() {
        assert_eq!(count_dn(0), big(1));
        assert_eq!(count_dn(3), big(26));
        assert_eq!(count_dn(10), big(204495126));
    }

    #[test]
    fn in_examples() {
        assert_eq!(count_in(0), big(1));
        assert_eq!(count_in(1), big(2));
        assert_eq!(count_in(4), big(66));
        assert_eq!(count_in(10), big(145992338));
        for n in 0..=12 {
            assert_eq!(
                count_in_compositions(n),
                BigInt::from(count_in(n)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn egf_examples() {
        let f = egf_coefficients(4);
        assert_eq!(f[0], BigRational::one());
        assert_eq!(f[1], BigRational::from_integer(2.into()));
        assert_eq!(f[4], BigRational::new(150.into(), 24.into()));
    }

    #[test]
    fn generation_small_cases() {
        let w2: Vec<String> = generate_packed(2).map(|w| w.to_string()).collect();
        assert_eq!(w2, ["[0,0]", "[0,1]", "[1,0]", "[1,1]", "[1,2]", "[2,1]"]);
        let s1: Vec<String> = generate_packed_with_sup(2, 1)
            .map(|w| w.to_string())
            .collect();
        assert_eq!(s1, ["[0,1]", "[1,0]", "[1,1]"]);
        assert_eq!(
            generate_packed(0).collect::<Vec<_>>(),
            vec![PackedWord::empty()]
        );
        assert_eq!(generate_packed_with_sup(2, 3).count(), 0);
        assert_eq!(generate_packed_with_sup(0, 0).count(), 1);
    }

    #[test]
    fn generation_matches_brute_force_filter() {
        for n in 0..=4 {
            let mut brute = Vec::new();
            let base = (n + 1) as u64;
            for code in 0..base.pow(n as u32) {
                let mut c = code;
                let letters: Vec<Letter> = (0..n)
                    .map(|_| {
                        let x = (c % base) as Letter;
                        c /= base;
                        x
                    })
                    .rev()
                    .collect();
                if let Ok(w) = PackedWord::new(letters) {
                    brute.push(w);
                }
            }
            brute.sort();
            assert_eq!(generate_packed(n).collect::<Vec<_>>(), brute, "n = {n}");
        }
    }

    #[test]
    fn irreducible_small_cases() {
        let i2: Vec<String> = generate_irreducible(2).map(|w| w.to_string()).collect();
        assert_eq!(i2, ["[1,1]", "[2,1]"]);
        let i1: Vec<String> = generate_irreducible(1).map(|w| w.to_string()).collect();
        assert_eq!(i1, ["[0]", "[1]"]);
        assert_eq!(generate_irreducible(3).count(), 10);
    }

    #[test]
    fn sampler_produces_packed_words() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..400 {
            let w = sample_packed_word(&mut rng, 2);
            assert!(w.is_packed());
            seen.insert(w);
        }
        assert_eq!(seen.len(), 6);
    }
}
