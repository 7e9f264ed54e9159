//! Braid words, closure permutations and word transforms.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("malformed braid token `{0}`")]
    Malformed(String),
    #[error("braid letters must be nonzero")]
    ZeroLetter,
    #[error("generator {letter} out of range for {n} strands")]
    OutOfRange { letter: i32, n: usize },
    #[error("a braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("cable multiplicity must be at least 1")]
    BadCable,
}

/// A braid word on `n` strands; letter `g` is `σ_|g|` with the sign of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    n: usize,
    letters: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = BraidError;
    fn try_from(raw: RawBraid) -> Result<Self, Self::Error> {
        BraidWord::new(raw.n, raw.letters)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(w: BraidWord) -> Self {
        RawBraid { n: w.n, letters: w.letters }
    }
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if n < 2 {
            return Err(BraidError::TooFewStrands(n));
        }
        for &g in &letters {
            if g == 0 {
                return Err(BraidError::ZeroLetter);
            }
            if g.unsigned_abs() as usize >= n {
                return Err(BraidError::OutOfRange { letter: g, n });
            }
        }
        Ok(Self { n, letters })
    }

    /// Parses whitespace-separated signed generator indices.
    pub fn parse(text: &str, n: usize) -> Result<Self, BraidError> {
        let letters = text
            .split_whitespace()
            .map(|tok| tok.parse::<i32>().map_err(|_| BraidError::Malformed(tok.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub(crate) fn letters_mut(&mut self) -> &mut Vec<i32> {
        &mut self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Composite of the transpositions `(k, k+1)` in word order, as a map
    /// from starting position to final position.
    pub fn closure_permutation(&self) -> Permutation {
        let mut at: Vec<usize> = (0..self.n).collect();
        for &g in &self.letters {
            let k = g.unsigned_abs() as usize - 1;
            at.swap(k, k + 1);
        }
        let mut images = vec![0; self.n];
        for (fin, &start) in at.iter().enumerate() {
            images[start] = fin;
        }
        Permutation { images }
    }

    /// True iff the closure is a knot, i.e. the permutation is one n-cycle.
    pub fn is_knot(&self) -> bool {
        self.closure_permutation().is_single_cycle()
    }

    /// The standard positive half twist `(σ1…σ_{n−1})(σ1…σ_{n−2})…(σ1)`.
    pub fn delta(n: usize) -> Result<Self, BraidError> {
        Self::new(n, delta_letters(n))
    }

    pub fn reverse(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self { n: self.n, letters }
    }

    /// Replaces each `σ_i^{±1}` by `σ_{n−i}^{±1}`.
    pub fn flip(&self) -> Self {
        let n = self.n as i32;
        let letters = self.letters.iter().map(|&g| g.signum() * (n - g.abs())).collect();
        Self { n: self.n, letters }
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&g| -g).collect();
        Self { n: self.n, letters }
    }

    pub fn concat(&self, other: &Self) -> Result<Self, BraidError> {
        if self.n != other.n {
            return Err(BraidError::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { n: self.n, letters })
    }

    /// `u · w · u⁻¹` without free reduction.
    pub fn conjugate(&self, u: &Self) -> Result<Self, BraidError> {
        u.concat(self)?.concat(&u.inverse())
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Self { n: self.n, letters }
    }

    /// Inserts the cancelling pair `σ_g σ_g⁻¹` before position `pos`.
    pub fn stabilize_pair(&self, pos: usize, g: i32) -> Result<Self, BraidError> {
        let mut letters = self.letters.clone();
        let pos = pos.min(letters.len());
        letters.splice(pos..pos, [g, -g]);
        Self::new(self.n, letters)
    }

    /// The `k`-cable: every strand becomes `k` parallel strands and each
    /// letter becomes the `k²` crossings of two adjacent bundles. A twist word
    /// on the `k·n` strands may be appended to make the closure a knot.
    pub fn cable(&self, k: usize, twist: Option<&[i32]>) -> Result<Self, BraidError> {
        if k == 0 {
            return Err(BraidError::BadCable);
        }
        let mut letters = Vec::with_capacity(self.letters.len() * k * k);
        for &g in &self.letters {
            let base = (g.unsigned_abs() as usize - 1) * k;
            for r in 0..k {
                for s in 0..k {
                    letters.push(g.signum() * (base + k + r - s) as i32);
                }
            }
        }
        if let Some(tw) = twist {
            letters.extend_from_slice(tw);
        }
        Self::new(self.n * k, letters)
    }
}

/// The twist `σ1 σ2 … σ_{k−1}` inside the first bundle of a `k`-cable.
pub fn default_cable_twist(k: usize) -> Vec<i32> {
    (1..k as i32).collect()
}

pub(crate) fn delta_letters(n: usize) -> Vec<i32> {
    let mut w = Vec::with_capacity(n * (n - 1) / 2);
    for top in (1..n as i32).rev() {
        w.extend(1..=top);
    }
    w
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A permutation of `{0, …, n−1}` (displayed 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn compose(&self, then: &Self) -> Self {
        Self { images: self.images.iter().map(|&i| then.images[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    /// Cycle lengths, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lens = Vec::new();
        for s in 0..self.images.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn is_single_cycle(&self) -> bool {
        self.cycle_type().len() == 1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}
