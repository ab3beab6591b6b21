//! Word calculus over the indexed alphabet `x_0, x_1, ...`.
//!
//! A letter `x_i` is stored as the integer `i`. The letter `0` is special:
//! packing, shifting and quotients never move it.
//!
//! Words are ordered by length first, then lexicographically. This is the
//! canonical order used for bases, map keys and all printed output.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Letter = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("cannot parse word `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("word {0} is not packed (run `pack` first)")]
    NotPacked(Word),
    #[error("substitution is undefined on letter {0}")]
    UndefinedLetter(Letter),
    #[error("substitution must fix 0, but maps 0 to {0}")]
    ZeroNotFixed(Letter),
    #[error("position {pos} is out of range for a word of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("index set positions must be strictly increasing and start at 1")]
    MalformedIndexSet,
    #[error("the empty word is neither reducible nor irreducible")]
    EmptyWord,
}

/// A finite word; `letters[j]` is the index of the letter at position `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// The unit word `1`.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of occurrences of the letter `i`.
    pub fn partial_degree(&self, i: Letter) -> usize {
        self.0.iter().filter(|&&x| x == i).count()
    }

    /// Indices of the letters occurring in the word, `0` included.
    pub fn ialph(&self) -> BTreeSet<Letter> {
        self.0.iter().copied().collect()
    }

    /// Largest letter index; `0` for the empty word and for all-zero words.
    pub fn sup(&self) -> Letter {
        sup_of(&self.0)
    }

    /// Smallest nonzero letter index, if any.
    pub fn inf_nonzero(&self) -> Option<Letter> {
        self.0.iter().copied().filter(|&x| x != 0).min()
    }

    /// Letterwise image under `phi`, which must be defined on every letter
    /// of the word and must fix `0`.
    pub fn substitute(&self, phi: &BTreeMap<Letter, Letter>) -> Result<Word, WordError> {
        if let Some(&z) = phi.get(&0) {
            if z != 0 {
                return Err(WordError::ZeroNotFixed(z));
            }
        }
        self.0
            .iter()
            .map(|&x| match phi.get(&x) {
                Some(&y) => Ok(y),
                None if x == 0 => Ok(0),
                None => Err(WordError::UndefinedLetter(x)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// Adds `t` to every nonzero letter.
    pub fn shift(&self, t: Letter) -> Word {
        Word(shift_letters(&self.0, t))
    }

    /// Shifted concatenation on raw words: `self` followed by `other`
    /// shifted by `sup(self)`.
    pub fn shifted_concat(&self, other: &Word) -> Word {
        Word(star_letters(&self.0, &other.0))
    }

    pub fn subword(&self, positions: &IndexSet) -> Result<Word, WordError> {
        if let Some(&last) = positions.positions().last() {
            if last > self.len() {
                return Err(WordError::PositionOutOfRange {
                    pos: last,
                    len: self.len(),
                });
            }
        }
        Ok(Word(
            positions
                .positions()
                .iter()
                .map(|&p| self.0[p - 1])
                .collect(),
        ))
    }

    /// Replaces every letter whose index lies in `killed` by `0`.
    pub fn quotient(&self, killed: &BTreeSet<Letter>) -> Word {
        Word(
            self.0
                .iter()
                .map(|x| if killed.contains(x) { 0 } else { *x })
                .collect(),
        )
    }

    /// `w /_u`: the quotient by the alphabet of `u`.
    pub fn quotient_by_word(&self, u: &Word) -> Word {
        self.quotient(&u.ialph())
    }

    pub fn is_packed(&self) -> bool {
        is_packed_letters(&self.0)
    }

    /// Closes the gaps between the nonzero letter indices; `0` stays fixed.
    pub fn pack(&self) -> PackedWord {
        PackedWord(Word(pack_letters(&self.0)))
    }

    /// The packing map `j_m -> m`, `0 -> 0`, on the alphabet of the word.
    pub fn packing_map(&self) -> BTreeMap<Letter, Letter> {
        let nonzero = self.ialph().into_iter().filter(|&j| j != 0);
        std::iter::once((0, 0)).chain(nonzero.zip(1..)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Parses the bracket format `[1,1,3,0,2]`; whitespace is allowed
    /// around brackets, commas and numbers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| WordError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| err("expected `[` ... `]`"))?;
        if inner.trim().is_empty() {
            return Ok(Word::empty());
        }
        inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok.is_empty() {
                    return Err(err("empty entry"));
                }
                tok.parse::<Letter>()
                    .map_err(|_| err(&format!("`{tok}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// A word whose nonzero letters are exactly `{1, ..., k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PackedWord(Word);

impl PackedWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        let w = Word(letters);
        if w.is_packed() {
            Ok(PackedWord(w))
        } else {
            Err(WordError::NotPacked(w))
        }
    }

    pub fn empty() -> Self {
        PackedWord(Word::empty())
    }

    /// Skips validation; callers guarantee the letters are packed.
    pub(crate) fn from_packed_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(is_packed_letters(&letters), "{letters:?} is not packed");
        PackedWord(Word(letters))
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    /// The algebra product: `self` followed by `other` shifted by `sup(self)`.
    pub fn star(&self, other: &PackedWord) -> PackedWord {
        PackedWord(Word(star_letters(self.letters(), other.letters())))
    }

    /// Positions `i` in `1..|w|` splitting the word as a nontrivial
    /// product `pack(w[1..i]) * pack(w[i+1..])`.
    ///
    /// A cut is admissible when the suffix is all zeros, or when the smallest
    /// nonzero letter of the suffix is `sup(prefix) + 1`.
    pub fn admissible_cuts(&self) -> Vec<usize> {
        let w = self.letters();
        let n = w.len();
        if n < 2 {
            return Vec::new();
        }
        // suffix_min[i] = smallest nonzero letter in w[i..], 0 if none
        let mut suffix_min = vec![0; n + 1];
        for i in (0..n).rev() {
            let x = w[i];
            let rest = suffix_min[i + 1];
            suffix_min[i] = match (x, rest) {
                (0, r) => r,
                (x, 0) => x,
                (x, r) => x.min(r),
            };
        }
        let mut cuts = Vec::new();
        let mut prefix_sup = 0;
        for i in 1..n {
            prefix_sup = prefix_sup.max(w[i - 1]);
            let m = suffix_min[i];
            if m == 0 || m == prefix_sup + 1 {
                cuts.push(i);
            }
        }
        cuts
    }

    /// The unique factorization into nontrivial irreducible packed words.
    /// The unit word factors as the empty product.
    pub fn factor_irreducible(&self) -> Vec<PackedWord> {
        let w = self.letters();
        if w.is_empty() {
            return Vec::new();
        }
        let mut bounds = vec![0];
        bounds.extend(self.admissible_cuts());
        bounds.push(w.len());
        bounds
            .windows(2)
            .map(|b| PackedWord(Word(pack_letters(&w[b[0]..b[1]]))))
            .collect()
    }

    pub fn is_irreducible(&self) -> Result<bool, WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyWord);
        }
        Ok(self.admissible_cuts().is_empty())
    }
}

impl Deref for PackedWord {
    type Target = Word;

    fn deref(&self) -> &Word {
        &self.0
    }
}

impl TryFrom<Word> for PackedWord {
    type Error = WordError;

    fn try_from(w: Word) -> Result<Self, Self::Error> {
        if w.is_packed() {
            Ok(PackedWord(w))
        } else {
            Err(WordError::NotPacked(w))
        }
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for PackedWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PackedWord::try_from(s.parse::<Word>()?)
    }
}

impl Serialize for PackedWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Strictly increasing 1-based positions into a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(positions: Vec<usize>) -> Result<Self, WordError> {
        if positions.first() == Some(&0) || positions.windows(2).any(|p| p[0] >= p[1]) {
            return Err(WordError::MalformedIndexSet);
        }
        Ok(IndexSet(positions))
    }

    /// All positions `1..=n`.
    pub fn full(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    /// Positions `p` with bit `p - 1` set in `mask`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        IndexSet((1..=n).filter(|p| mask >> (p - 1) & 1 == 1).collect())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positions of `1..=n` not in `self`.
    pub fn complement(&self, n: usize) -> Self {
        IndexSet(
            (1..=n)
                .filter(|p| self.0.binary_search(p).is_err())
                .collect(),
        )
    }

    pub fn union(&self, other: &IndexSet) -> Self {
        let set: BTreeSet<usize> = self.0.iter().chain(&other.0).copied().collect();
        IndexSet(set.into_iter().collect())
    }

    /// Every position moved down by `offset`; positions must exceed it.
    pub fn shifted_down(&self, offset: usize) -> Result<Self, WordError> {
        self.0
            .iter()
            .map(|&p| {
                p.checked_sub(offset)
                    .filter(|&q| q > 0)
                    .ok_or(WordError::MalformedIndexSet)
            })
            .collect::<Result<Vec<_>, _>>()
            .map(IndexSet)
    }
}

pub(crate) fn sup_of(letters: &[Letter]) -> Letter {
    letters.iter().copied().max().unwrap_or(0)
}

pub(crate) fn shift_letters(letters: &[Letter], t: Letter) -> Vec<Letter> {
    letters
        .iter()
        .map(|&x| if x == 0 { 0 } else { x + t })
        .collect()
}

pub(crate) fn star_letters(u: &[Letter], v: &[Letter]) -> Vec<Letter> {
    let t = sup_of(u);
    let mut out = Vec::with_capacity(u.len() + v.len());
    out.extend_from_slice(u);
    out.extend(v.iter().map(|&x| if x == 0 { 0 } else { x + t }));
    out
}

pub(crate) fn pack_letters(letters: &[Letter]) -> Vec<Letter> {
    let mut alph: Vec<Letter> = letters.iter().copied().filter(|&x| x != 0).collect();
    alph.sort_unstable();
    alph.dedup();
    letters
        .iter()
        .map(|&x| {
            if x == 0 {
                0
            } else {
                // position in the sorted alphabet, 1-based
                alph.binary_search(&x).map(|i| i as Letter + 1).unwrap()
            }
        })
        .collect()
}

pub(crate) fn is_packed_letters(letters: &[Letter]) -> bool {
    let k = sup_of(letters) as usize;
    if k > letters.len() {
        return false;
    }
    let mut seen = vec![false; k + 1];
    for &x in letters {
        seen[x as usize] = true;
    }
    seen[1..].iter().all(|&s| s)
}

/// Letters at the positions whose bit is set in `mask` (bit `j` = position `j + 1`).
pub(crate) fn select_mask(letters: &[Letter], mask: u64) -> Vec<Letter> {
    letters
        .iter()
        .enumerate()
        .filter(|(j, _)| mask >> j & 1 == 1)
        .map(|(_, &x)| x)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[Letter]) -> Word {
        Word::from(v)
    }

    fn p(v: &[Letter]) -> PackedWord {
        PackedWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partial_degree_counts_occurrences() {
        assert_eq!(w(&[1, 1, 5, 0, 4]).partial_degree(1), 2);
        assert_eq!(w(&[]).partial_degree(3), 0);
        assert_eq!(w(&[0, 0, 1]).partial_degree(0), 2);
    }

    #[test]
    fn ialph_and_sup() {
        assert_eq!(
            w(&[1, 1, 5, 0, 4]).ialph(),
            [0, 1, 4, 5].into_iter().collect()
        );
        assert!(w(&[]).ialph().is_empty());
        assert_eq!(w(&[2, 2]).ialph(), [2].into_iter().collect());
        assert_eq!(w(&[1, 1, 3, 0, 2]).sup(), 3);
        assert_eq!(w(&[]).sup(), 0);
        assert_eq!(w(&[0, 0]).sup(), 0);
    }

    #[test]
    fn substitute_applies_map_letterwise() {
        let phi: BTreeMap<Letter, Letter> = [(0, 0), (1, 1), (4, 2), (5, 3)].into_iter().collect();
        assert_eq!(
            w(&[1, 1, 5, 0, 4]).substitute(&phi).unwrap(),
            w(&[1, 1, 3, 0, 2])
        );
        assert_eq!(w(&[]).substitute(&BTreeMap::new()).unwrap(), w(&[]));
        let id: BTreeMap<Letter, Letter> = [(0, 0), (1, 1), (2, 2)].into_iter().collect();
        assert_eq!(w(&[2, 1]).substitute(&id).unwrap(), w(&[2, 1]));
    }

    #[test]
    fn substitute_errors() {
        let partial: BTreeMap<Letter, Letter> = [(1, 1)].into_iter().collect();
        assert_eq!(
            w(&[1, 2]).substitute(&partial),
            Err(WordError::UndefinedLetter(2))
        );
        let moves_zero: BTreeMap<Letter, Letter> = [(0, 3), (1, 1)].into_iter().collect();
        assert_eq!(
            w(&[1]).substitute(&moves_zero),
            Err(WordError::ZeroNotFixed(3))
        );
    }

    #[test]
    fn pack_closes_gaps() {
        assert_eq!(w(&[1, 1, 5, 0, 4]).pack(), p(&[1, 1, 3, 0, 2]));
        assert_eq!(w(&[1, 1, 3, 0, 2]).pack(), p(&[1, 1, 3, 0, 2]));
        assert_eq!(w(&[7]).pack(), p(&[1]));
        let word = w(&[1, 1, 5, 0, 4]);
        assert_eq!(
            word.substitute(&word.packing_map()).unwrap(),
            *word.pack().as_word()
        );
    }

    #[test]
    fn shift_fixes_zero() {
        assert_eq!(w(&[1, 0, 2]).shift(3), w(&[4, 0, 5]));
        assert_eq!(w(&[3, 1]).shift(0), w(&[3, 1]));
        assert_eq!(w(&[0, 0]).shift(5), w(&[0, 0]));
    }

    #[test]
    fn star_examples() {
        assert_eq!(p(&[1, 1]).star(&p(&[1])), p(&[1, 1, 2]));
        assert_eq!(PackedWord::empty().star(&p(&[2, 1])), p(&[2, 1]));
        assert_eq!(p(&[2, 1]).star(&PackedWord::empty()), p(&[2, 1]));
        // brute force: concatenate with a hand-shifted right factor
        let u = p(&[1]);
        let v = p(&[0, 1]);
        let mut expected = u.letters().to_vec();
        expected.extend(v.shift(u.sup()).letters());
        assert_eq!(u.star(&v).letters(), expected.as_slice());
        assert_eq!(u.star(&v), p(&[1, 0, 2]));
    }

    #[test]
    fn subword_and_quotient() {
        let word = w(&[1, 2, 1]);
        assert_eq!(
            word.subword(&IndexSet::new(vec![1, 3]).unwrap()).unwrap(),
            w(&[1, 1])
        );
        assert_eq!(word.subword(&IndexSet::default()).unwrap(), w(&[]));
        assert_eq!(word.subword(&IndexSet::full(3)).unwrap(), word);
        assert_eq!(
            word.subword(&IndexSet::new(vec![4]).unwrap()),
            Err(WordError::PositionOutOfRange { pos: 4, len: 3 })
        );
        let one: BTreeSet<Letter> = [1].into_iter().collect();
        assert_eq!(w(&[1, 2]).quotient(&one), w(&[0, 2]));
        assert_eq!(w(&[1, 2]).quotient(&BTreeSet::new()), w(&[1, 2]));
        assert_eq!(w(&[1, 1]).quotient(&one), w(&[0, 0]));
        assert_eq!(w(&[1, 2]).quotient_by_word(&w(&[1])), w(&[0, 2]));
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![2, 1]).is_err());
        assert!(IndexSet::new(vec![0, 1]).is_err());
        assert!(IndexSet::new(vec![1, 1]).is_err());
        assert_eq!(IndexSet::from_mask(0b101, 3).positions(), &[1, 3]);
        assert_eq!(
            IndexSet::from_mask(0b101, 3).complement(3).positions(),
            &[2]
        );
        assert_eq!(
            IndexSet::new(vec![4, 6])
                .unwrap()
                .shifted_down(3)
                .unwrap()
                .positions(),
            &[1, 3]
        );
    }

    #[test]
    fn admissible_cut_examples() {
        assert_eq!(p(&[1, 1, 2]).admissible_cuts(), vec![2]);
        assert!(p(&[1, 1, 1]).admissible_cuts().is_empty());
        // [1] * [0,1] and [1,0] * [1]
        assert_eq!(p(&[1, 0, 2]).admissible_cuts(), vec![1, 2]);
        assert_eq!(p(&[0, 0]).admissible_cuts(), vec![1]);
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(
            p(&[1, 1, 2]).factor_irreducible(),
            vec![p(&[1, 1]), p(&[1])]
        );
        assert_eq!(p(&[2, 1]).factor_irreducible(), vec![p(&[2, 1])]);
        assert!(PackedWord::empty().factor_irreducible().is_empty());
        assert_eq!(
            p(&[1, 0, 2, 0]).factor_irreducible(),
            vec![p(&[1]), p(&[0]), p(&[1]), p(&[0])]
        );
    }

    #[test]
    fn irreducibility() {
        assert_eq!(p(&[1, 1, 1]).is_irreducible(), Ok(true));
        assert_eq!(p(&[1, 1, 2]).is_irreducible(), Ok(false));
        assert_eq!(p(&[1, 0, 1, 0, 1]).is_irreducible(), Ok(true));
        assert_eq!(
            PackedWord::empty().is_irreducible(),
            Err(WordError::EmptyWord)
        );
    }

    #[test]
    fn text_format() {
        assert_eq!("[1,1,3,0,2]".parse::<Word>().unwrap(), w(&[1, 1, 3, 0, 2]));
        assert_eq!(" [ 1 , 0 ] ".parse::<Word>().unwrap(), w(&[1, 0]));
        assert_eq!("[]".parse::<Word>().unwrap(), w(&[]));
        assert_eq!("[ ]".parse::<Word>().unwrap(), w(&[]));
        assert_eq!(w(&[1, 0, 2]).to_string(), "[1,0,2]");
        assert_eq!(w(&[]).to_string(), "[]");
        assert!("1,2".parse::<Word>().is_err());
        assert!("[1,,2]".parse::<Word>().is_err());
        assert!("[-1]".parse::<Word>().is_err());
        assert!(matches!(
            "[2]".parse::<PackedWord>(),
            Err(WordError::NotPacked(_))
        ));
    }

    #[test]
    fn canonical_order_is_length_then_lex() {
        let mut v = vec![w(&[2, 1]), w(&[0, 0, 0]), w(&[1]), w(&[]), w(&[0, 1])];
        v.sort();
        assert_eq!(
            v,
            vec![w(&[]), w(&[1]), w(&[0, 1]), w(&[2, 1]), w(&[0, 0, 0])]
        );
    }
}
