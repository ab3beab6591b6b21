//! Exhaustive and seeded-random checks of the Hopf algebra laws.
//!
//! Every law is checked on all packed words (or pairs) up to a small length
//! and then on random samples up to `max_len`. Random case `t` of a law draws
//! from its own ChaCha stream derived from `(seed, law, t)`, so the report
//! does not depend on how cases are scheduled across threads.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    coproduct, coproduct_left_with, coproduct_right_with, counit_left, counit_right,
    counit_times_unit, tensor_mul2, Antipode, CoproductFn,
};
use crate::enumeration::{generate_packed, sample_packed_word};
use crate::linear::Element;
use crate::par::Exec;
use crate::words::{select_mask, Letter, PackedWord, Word};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown law `{0}` (expected one of: coassoc, counit, bialgebra, antipode, pack-morphism, factorization, all)")]
    UnknownLaw(String),
    #[error("max_len must be at least 1")]
    ZeroLength,
    #[error("trials must be at least 1")]
    ZeroTrials,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    Coassociativity,
    Counit,
    Bialgebra,
    Antipode,
    PackMorphism,
    Factorization,
}

impl Law {
    pub const ALL: [Law; 6] = [
        Law::Coassociativity,
        Law::Counit,
        Law::Bialgebra,
        Law::Antipode,
        Law::PackMorphism,
        Law::Factorization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Coassociativity => "coassoc",
            Law::Counit => "counit",
            Law::Bialgebra => "bialgebra",
            Law::Antipode => "antipode",
            Law::PackMorphism => "pack-morphism",
            Law::Factorization => "factorization",
        }
    }

    fn stream_id(self) -> u64 {
        Law::ALL.iter().position(|&l| l == self).unwrap() as u64 + 1
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s.trim())
            .ok_or_else(|| VerifyError::UnknownLaw(s.trim().to_string()))
    }
}

/// Parses a comma-separated law list; `all` selects every law.
pub fn parse_laws(list: &str) -> Result<Vec<Law>, VerifyError> {
    let mut laws = Vec::new();
    for tok in list.split(',').filter(|t| !t.trim().is_empty()) {
        if tok.trim() == "all" {
            laws.extend(Law::ALL);
        } else {
            laws.push(tok.parse()?);
        }
    }
    laws.sort();
    laws.dedup();
    Ok(laws)
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_len: usize,
    pub trials: usize,
    pub seed: u64,
    pub laws: Vec<Law>,
    /// Single-word laws are checked on every packed word up to this length.
    pub exhaustive_len: usize,
    /// Pair laws are checked on every pair with `|u| + |v|` up to this.
    pub exhaustive_pair_len: usize,
    /// Longest word used for the antipode identities.
    pub antipode_max_len: usize,
    pub record_timings: bool,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_len: 7,
            trials: 500,
            seed: 42,
            laws: Law::ALL.to_vec(),
            exhaustive_len: 4,
            exhaustive_pair_len: 5,
            antipode_max_len: 6,
            record_timings: false,
            exec: Exec::default(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.max_len == 0 {
            return Err(VerifyError::ZeroLength);
        }
        if self.trials == 0 {
            return Err(VerifyError::ZeroTrials);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub exhaustive_cases: usize,
    pub random_cases: usize,
    pub tests: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub seed: u64,
    pub max_len: usize,
    pub trials: usize,
    pub laws: Vec<LawReport>,
}

impl VerifyReport {
    pub fn total_failures(&self) -> usize {
        self.laws.iter().map(|l| l.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.total_failures() == 0
    }

    pub fn law(&self, law: Law) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == law.name())
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "seed={} max_len={} trials={}",
            self.seed, self.max_len, self.trials
        );
        for l in &self.laws {
            let _ = write!(
                s,
                "{:<14} tests={:<6} (exhaustive {}, random {}) failures={}",
                l.law, l.tests, l.exhaustive_cases, l.random_cases, l.failures
            );
            if let Some(ms) = l.elapsed_ms {
                let _ = write!(s, " elapsed={ms}ms");
            }
            s.push('\n');
            if let Some(c) = &l.counterexample {
                let _ = writeln!(s, "  counterexample: {}", c.input.join(" "));
                let _ = writeln!(s, "    lhs: {}", c.lhs);
                let _ = writeln!(s, "    rhs: {}", c.rhs);
            }
        }
        let _ = writeln!(s, "{}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

#[derive(Debug, Clone)]
enum Case {
    Word(PackedWord),
    Pair(PackedWord, PackedWord),
    Raw(Word, Word),
}

impl Case {
    fn input(&self) -> Vec<String> {
        match self {
            Case::Word(w) => vec![w.to_string()],
            Case::Pair(u, v) => vec![u.to_string(), v.to_string()],
            Case::Raw(u, v) => vec![u.to_string(), v.to_string()],
        }
    }
}

struct Checker {
    coproduct: Arc<CoproductFn>,
    antipode: Antipode,
}

impl Checker {
    fn new(coproduct: Arc<CoproductFn>) -> Self {
        let cop = Arc::clone(&coproduct);
        Checker {
            coproduct,
            antipode: Antipode::with_coproduct(Box::new(move |w| cop(w))),
        }
    }

    /// `None` when the law holds on the case, else both sides rendered.
    fn check(&self, law: Law, case: &Case) -> Option<(String, String)> {
        let cop = &*self.coproduct;
        match (law, case) {
            (Law::Coassociativity, Case::Word(w)) => {
                let d = cop(w);
                let lhs = coproduct_left_with(&d, cop);
                let rhs = coproduct_right_with(&d, cop);
                (lhs != rhs).then(|| (lhs.to_string(), rhs.to_string()))
            }
            (Law::Counit, Case::Word(w)) => {
                let d = cop(w);
                let id = Element::basis(w.clone());
                let left = counit_left(&d);
                if left != id {
                    return Some((left.to_string(), id.to_string()));
                }
                let right = counit_right(&d);
                (right != id).then(|| (right.to_string(), id.to_string()))
            }
            (Law::Bialgebra, Case::Pair(u, v)) => {
                let lhs = cop(&u.star(v));
                let rhs = tensor_mul2(&cop(u), &cop(v));
                (lhs != rhs).then(|| (lhs.to_string(), rhs.to_string()))
            }
            (Law::Antipode, Case::Word(w)) => {
                let expected = counit_times_unit(w);
                let left = self.antipode.convolve_left(w);
                if left != expected {
                    return Some((left.to_string(), expected.to_string()));
                }
                let right = self.antipode.convolve_right(w);
                (right != expected).then(|| (right.to_string(), expected.to_string()))
            }
            (Law::PackMorphism, Case::Raw(u, v)) => check_pack_morphism(u, v),
            (Law::Factorization, Case::Word(w)) => check_factorization(w),
            _ => unreachable!("case shape does not match law {law}"),
        }
    }
}

/// `pack((u⋆v)[I+J]) = pack(u[I]) * pack(v[J'])` for every selection,
/// including the full one.
fn check_pack_morphism(u: &Word, v: &Word) -> Option<(String, String)> {
    let uv = u.shifted_concat(v);
    let (a, b) = (u.len(), v.len());
    for i_mask in 0..1u64 << a {
        for j_mask in 0..1u64 << b {
            let joint = i_mask | j_mask << a;
            let lhs = Word::new(select_mask(uv.letters(), joint)).pack();
            let rhs = Word::new(select_mask(u.letters(), i_mask))
                .pack()
                .star(&Word::new(select_mask(v.letters(), j_mask)).pack());
            if lhs != rhs {
                return Some((lhs.to_string(), rhs.to_string()));
            }
        }
    }
    None
}

fn check_factorization(w: &PackedWord) -> Option<(String, String)> {
    let factors = w.factor_irreducible();
    let rebuilt = factors
        .iter()
        .fold(PackedWord::empty(), |acc, f| acc.star(f));
    if &rebuilt != w {
        return Some((rebuilt.to_string(), w.to_string()));
    }
    if let Some(f) = factors.iter().find(|f| f.is_irreducible() != Ok(true)) {
        return Some((format!("reducible factor {f}"), w.to_string()));
    }
    // admissible cuts coincide with the positions where w splits as a product
    let letters = w.letters();
    let splits: Vec<usize> = (1..letters.len())
        .filter(|&i| {
            let head = Word::from(&letters[..i]);
            let tail = Word::from(&letters[i..]);
            head.is_packed() && head.pack().star(&tail.pack()) == *w
        })
        .collect();
    let cuts = w.admissible_cuts();
    (cuts != splits).then(|| (format!("cuts {cuts:?}"), format!("splits {splits:?}")))
}

fn trial_rng(seed: u64, law: Law, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(law.stream_id() << 40 | trial as u64);
    rng
}

/// Spreads a packed word to a raw word by a random strictly increasing
/// relabelling of its nonzero letters.
fn spread<R: Rng + ?Sized>(rng: &mut R, w: &PackedWord) -> Word {
    let mut phi = BTreeMap::new();
    phi.insert(0, 0);
    let mut next: Letter = 0;
    for j in 1..=w.sup() {
        next += rng.random_range(1..=3);
        phi.insert(j, next);
    }
    w.substitute(&phi).expect("map covers the alphabet")
}

fn all_raw_words(n: usize, alphabet: Letter) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                (0..alphabet).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Word::new).collect()
}

fn exhaustive_cases(law: Law, cfg: &VerifyConfig) -> Vec<Case> {
    let word_cap = match law {
        Law::Antipode => cfg
            .max_len
            .min(cfg.exhaustive_len)
            .min(cfg.antipode_max_len),
        _ => cfg.max_len.min(cfg.exhaustive_len),
    };
    match law {
        Law::Bialgebra => {
            let cap = cfg.max_len.min(cfg.exhaustive_pair_len);
            let by_len: Vec<Vec<PackedWord>> =
                (0..=cap).map(|n| generate_packed(n).collect()).collect();
            let mut out = Vec::new();
            for a in 0..=cap {
                for b in 0..=cap - a {
                    for u in &by_len[a] {
                        for v in &by_len[b] {
                            out.push(Case::Pair(u.clone(), v.clone()));
                        }
                    }
                }
            }
            out
        }
        Law::PackMorphism => {
            let mut out = Vec::new();
            for a in 0..=word_cap {
                for b in 0..=word_cap - a {
                    for u in all_raw_words(a, 4) {
                        for v in all_raw_words(b, 4) {
                            out.push(Case::Raw(u.clone(), v));
                        }
                    }
                }
            }
            out
        }
        _ => (0..=word_cap)
            .flat_map(generate_packed)
            .map(Case::Word)
            .collect(),
    }
}

fn random_case(law: Law, cfg: &VerifyConfig, trial: usize) -> Option<Case> {
    let mut rng = trial_rng(cfg.seed, law, trial);
    let (lo, hi) = match law {
        Law::Bialgebra => (cfg.exhaustive_pair_len + 1, cfg.max_len),
        Law::Antipode => (
            cfg.exhaustive_len + 1,
            cfg.max_len.min(cfg.antipode_max_len),
        ),
        _ => (cfg.exhaustive_len + 1, cfg.max_len),
    };
    if lo > hi {
        return None;
    }
    let n = rng.random_range(lo..=hi);
    Some(match law {
        Law::Bialgebra => {
            let a = rng.random_range(0..=n);
            let u = sample_packed_word(&mut rng, a);
            let v = sample_packed_word(&mut rng, n - a);
            Case::Pair(u, v)
        }
        Law::PackMorphism => {
            let a = rng.random_range(0..=n);
            let u = sample_packed_word(&mut rng, a);
            let v = sample_packed_word(&mut rng, n - a);
            Case::Raw(spread(&mut rng, &u), spread(&mut rng, &v))
        }
        _ => Case::Word(sample_packed_word(&mut rng, n)),
    })
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    run_with_coproduct(cfg, Arc::new(coproduct))
}

/// Runs the suites against an arbitrary coproduct on basis words.
pub fn run_with_coproduct(
    cfg: &VerifyConfig,
    coproduct: Arc<CoproductFn>,
) -> Result<VerifyReport, VerifyError> {
    cfg.validate()?;
    let checker = Checker::new(coproduct);
    let mut laws = cfg.laws.clone();
    laws.sort();
    laws.dedup();
    let mut reports = Vec::with_capacity(laws.len());
    for law in laws {
        let start = Instant::now();
        let mut cases = exhaustive_cases(law, cfg);
        let exhaustive = cases.len();
        cases.extend((0..cfg.trials).filter_map(|t| random_case(law, cfg, t)));
        let random = cases.len() - exhaustive;
        let results = cfg.exec.map(&cases, |c| checker.check(law, c));
        let failures = results.iter().filter(|r| r.is_some()).count();
        let counterexample = results
            .iter()
            .zip(&cases)
            .find_map(|(r, c)| r.as_ref().map(|(lhs, rhs)| (c, lhs, rhs)))
            .map(|(c, lhs, rhs)| Counterexample {
                input: c.input(),
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            });
        reports.push(LawReport {
            law: law.name().to_string(),
            exhaustive_cases: exhaustive,
            random_cases: random,
            tests: cases.len(),
            failures,
            counterexample,
            elapsed_ms: cfg.record_timings.then(|| start.elapsed().as_millis()),
        });
    }
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        max_len: cfg.max_len,
        trials: cfg.trials,
        laws: reports,
    })
}
