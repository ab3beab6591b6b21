//! The Hopf algebra structure on the span of packed words.
//!
//! Product: shifted concatenation extended bilinearly. Coproduct: for every
//! split of the positions into `I + J`, the selected part `pack(w[I])` on the
//! left and the quotient `pack(w[J] / w[I])` on the right.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_traits::One;

use crate::linear::{scalar, Element, LinComb, Scalar, Tensor2, Tensor3};
use crate::words::{pack_letters, select_mask, Letter, PackedWord};

/// A coproduct on basis words, so that laws can be checked against
/// alternative implementations.
pub type CoproductFn = dyn Fn(&PackedWord) -> Tensor2 + Send + Sync;

pub fn unit() -> Element {
    Element::basis(PackedWord::empty())
}

/// Bilinear extension of the shifted concatenation.
pub fn mul(a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (u, c) in a.iter() {
        for (v, d) in b.iter() {
            out.add_term(u.star(v), c * d);
        }
    }
    out
}

/// Selection-quotient coproduct of a single packed word.
///
/// Runs over all `2^|w|` subsets `I`; identical terms accumulate.
pub fn coproduct(w: &PackedWord) -> Tensor2 {
    let letters = w.letters();
    let n = letters.len();
    assert!(n < 64, "word too long for subset enumeration");
    let mut counts: BTreeMap<(PackedWord, PackedWord), i64> = BTreeMap::new();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    for mask in 0..=full {
        let selected = select_mask(letters, mask);
        let rest = select_mask(letters, !mask & full);
        let quotient: Vec<Letter> = rest
            .iter()
            .map(|x| if selected.contains(x) { 0 } else { *x })
            .collect();
        let left = PackedWord::from_packed_unchecked(pack_letters(&selected));
        let right = PackedWord::from_packed_unchecked(pack_letters(&quotient));
        *counts.entry((left, right)).or_default() += 1;
        if mask == full {
            break;
        }
    }
    counts.into_iter().map(|(k, c)| (k, scalar(c))).collect()
}

/// Linear extension of [`coproduct`].
pub fn coproduct_elem(a: &Element) -> Tensor2 {
    a.map_linear(coproduct)
}

/// Coefficient of the empty word.
pub fn counit(a: &Element) -> Scalar {
    a.coeff(&PackedWord::empty())
}

/// `Δ(h) - 1 ⊗ h - h ⊗ 1` on each nonempty basis word; zero on the unit.
pub fn delta_plus(a: &Element) -> Tensor2 {
    delta_plus_with(a, &coproduct)
}

pub fn delta_plus_with(a: &Element, cop: &CoproductFn) -> Tensor2 {
    a.map_linear(|w| {
        if w.is_empty() {
            return Tensor2::zero();
        }
        let mut t = cop(w);
        t.add_term((PackedWord::empty(), w.clone()), -Scalar::one());
        t.add_term((w.clone(), PackedWord::empty()), -Scalar::one());
        t
    })
}

/// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
pub fn tensor_mul2(s: &Tensor2, t: &Tensor2) -> Tensor2 {
    let mut out = Tensor2::zero();
    for ((a, b), c) in s.iter() {
        for ((x, y), d) in t.iter() {
            out.add_term((a.star(x), b.star(y)), c * d);
        }
    }
    out
}

/// `(a ⊗ b) -> (b ⊗ a)`.
pub fn swap2(t: &Tensor2) -> Tensor2 {
    t.iter()
        .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
        .collect()
}

/// `Δ ⊗ Id`.
pub fn coproduct_left(t: &Tensor2) -> Tensor3 {
    coproduct_left_with(t, &coproduct)
}

/// `Id ⊗ Δ`.
pub fn coproduct_right(t: &Tensor2) -> Tensor3 {
    coproduct_right_with(t, &coproduct)
}

pub fn coproduct_left_with(t: &Tensor2, cop: &CoproductFn) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ((a, b), c) in t.iter() {
        for ((x, y), d) in cop(a).iter() {
            out.add_term((x.clone(), y.clone(), b.clone()), c * d);
        }
    }
    out
}

pub fn coproduct_right_with(t: &Tensor2, cop: &CoproductFn) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ((a, b), c) in t.iter() {
        for ((x, y), d) in cop(b).iter() {
            out.add_term((a.clone(), x.clone(), y.clone()), c * d);
        }
    }
    out
}

/// `(ε ⊗ Id)`, identifying `k ⊗ H` with `H`.
pub fn counit_left(t: &Tensor2) -> Element {
    t.iter()
        .filter(|((a, _), _)| a.is_empty())
        .map(|((_, b), c)| (b.clone(), c.clone()))
        .collect()
}

/// `(Id ⊗ ε)`, identifying `H ⊗ k` with `H`.
pub fn counit_right(t: &Tensor2) -> Element {
    t.iter()
        .filter(|((_, b), _)| b.is_empty())
        .map(|((a, _), c)| (a.clone(), c.clone()))
        .collect()
}

/// Antipode evaluator with a per-word cache.
///
/// Uses the recursion `S(1) = 1` and, for `w ≠ 1`,
/// `S(w) = -w - Σ S(pack(w[I])) * pack(w[J] / w[I])` over splits with
/// `I` and `J` both nonempty. The cache is shared between threads.
pub struct Antipode {
    coproduct: Box<CoproductFn>,
    cache: RwLock<HashMap<PackedWord, Element>>,
}

impl Default for Antipode {
    fn default() -> Self {
        Self::new()
    }
}

impl Antipode {
    pub fn new() -> Self {
        Self::with_coproduct(Box::new(coproduct))
    }

    pub fn with_coproduct(coproduct: Box<CoproductFn>) -> Self {
        Antipode {
            coproduct,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn coproduct(&self, w: &PackedWord) -> Tensor2 {
        (self.coproduct)(w)
    }

    pub fn eval(&self, w: &PackedWord) -> Element {
        if let Some(s) = self.cache.read().unwrap().get(w) {
            return s.clone();
        }
        let s = if w.is_empty() {
            unit()
        } else {
            let mut s = Element::term(-Scalar::one(), w.clone());
            for ((left, right), c) in (self.coproduct)(w).iter() {
                // a graded coproduct never yields |left| >= |w| here
                if left.is_empty() || right.is_empty() || left.len() >= w.len() {
                    continue;
                }
                for (z, d) in self.eval(left).iter() {
                    s.add_term(z.star(right), -(c * d));
                }
            }
            s
        };
        self.cache
            .write()
            .unwrap()
            .entry(w.clone())
            .or_insert(s)
            .clone()
    }

    pub fn eval_elem(&self, a: &Element) -> Element {
        a.map_linear(|w| self.eval(w))
    }

    /// `μ ∘ (S ⊗ Id) ∘ Δ (w)`.
    pub fn convolve_left(&self, w: &PackedWord) -> Element {
        let mut out = Element::zero();
        for ((a, b), c) in (self.coproduct)(w).iter() {
            for (z, d) in self.eval(a).iter() {
                out.add_term(z.star(b), c * d);
            }
        }
        out
    }

    /// `μ ∘ (Id ⊗ S) ∘ Δ (w)`.
    pub fn convolve_right(&self, w: &PackedWord) -> Element {
        let mut out = Element::zero();
        for ((a, b), c) in (self.coproduct)(w).iter() {
            for (z, d) in self.eval(b).iter() {
                out.add_term(a.star(z), c * d);
            }
        }
        out
    }

    pub fn cached_words(&self) -> usize {
        self.cache.read().unwrap().len()
    }
}

fn shared_antipode() -> &'static Antipode {
    static SHARED: OnceLock<Antipode> = OnceLock::new();
    SHARED.get_or_init(Antipode::new)
}

/// Antipode of a basis word, memoized for the whole process.
pub fn antipode(w: &PackedWord) -> Element {
    shared_antipode().eval(w)
}

pub fn antipode_elem(a: &Element) -> Element {
    shared_antipode().eval_elem(a)
}

/// `μ ∘ (S ⊗ Id) ∘ Δ (w)`; equals `ε(w) · 1`.
pub fn convolve_antipode_check(w: &PackedWord) -> Element {
    shared_antipode().convolve_left(w)
}

/// `μ ∘ (Id ⊗ S) ∘ Δ (w)`; equals `ε(w) · 1`.
pub fn convolve_antipode_check_right(w: &PackedWord) -> Element {
    shared_antipode().convolve_right(w)
}

/// `ε(w) · 1` for a basis word.
pub fn counit_times_unit(w: &PackedWord) -> Element {
    if w.is_empty() {
        unit()
    } else {
        Element::zero()
    }
}

/// True when every term `a ⊗ b` has `|a| + |b| = n`.
pub fn is_homogeneous2(t: &Tensor2, n: usize) -> bool {
    t.keys().all(|(a, b)| a.len() + b.len() == n)
}

pub fn element_from_words<'a>(words: impl IntoIterator<Item = (&'a PackedWord, i64)>) -> Element {
    words
        .into_iter()
        .map(|(w, c)| (w.clone(), scalar(c)))
        .collect::<LinComb<_>>()
}
