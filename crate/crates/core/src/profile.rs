//! Profile words: the E/N encoding of a partition's south-east boundary.
//!
//! The boundary is traced from the south-west corner to the north-east
//! corner of the Young diagram; a horizontal step is `E`, a vertical step is
//! `N`. Every non-empty partition corresponds to exactly one word that starts
//! with `E` and ends with `N`, and the word has length `Γ(π) + 1`.
//!
//! The second half of the module is the block grammar that characterises
//! the profiles of partitions in `𝔊_d`:
//!
//! ```text
//! E N^j0 · (E^{d+1} N^j1) · (N E^d N^j2) · (E^{d+1} N^j3) · … · N
//!  initial    type I          type II         type I           terminal
//! ```

use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;
use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    E,
    N,
}

impl Letter {
    fn is_n(self) -> bool {
        self == Letter::N
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("profile word is empty")]
    EmptyWord,
    #[error("profile word must start with E")]
    MustStartWithE,
    #[error("profile word must end with N")]
    MustEndWithN,
    #[error("invalid letter {letter:?} at position {position}; only E and N are allowed")]
    InvalidLetter { position: usize, letter: char },
    /// 0-based offset of the first letter the block grammar cannot consume;
    /// equal to the terminal letter's offset when the word runs out early.
    #[error("word is not the profile of a partition in the class (grammar fails at position {0})")]
    NotInClass(usize),
    #[error("block parameter d must be at least 1")]
    InvalidD,
    #[error("middle blocks must alternate type I, type II, … starting with type I (violated at block {0})")]
    BrokenAlternation(usize),
}

/// A validated profile word. Bits are packed, `1` meaning `N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProfileWord {
    bits: BitVec<u64, Lsb0>,
}

impl ProfileWord {
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Result<Self, ProfileError> {
        let bits: BitVec<u64, Lsb0> = letters.into_iter().map(Letter::is_n).collect();
        Self::from_bits(bits)
    }

    fn from_bits(bits: BitVec<u64, Lsb0>) -> Result<Self, ProfileError> {
        match (bits.first().map(|b| *b), bits.last().map(|b| *b)) {
            (None, _) | (_, None) => Err(ProfileError::EmptyWord),
            (Some(true), _) => Err(ProfileError::MustStartWithE),
            (_, Some(false)) => Err(ProfileError::MustEndWithN),
            _ => Ok(Self { bits }),
        }
    }

    /// The word `E · m · N` of length `n + 1`, where the `n − 1` middle
    /// letters are read from the low bits of `middle` (bit set = `N`).
    pub fn from_middle_bits(n: usize, middle: u64) -> Self {
        debug_assert!((1..=64).contains(&n));
        let mut bits = BitVec::with_capacity(n + 1);
        bits.push(false);
        for i in 0..n - 1 {
            bits.push(middle >> i & 1 == 1);
        }
        bits.push(true);
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letter(&self, i: usize) -> Letter {
        if self.bits[i] {
            Letter::N
        } else {
            Letter::E
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.bits.iter().map(|b| if *b { Letter::N } else { Letter::E })
    }

    pub fn count_n(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn count_e(&self) -> usize {
        self.bits.count_zeros()
    }

    /// Reverse the word and swap `E ↔ N`; this is the profile of the
    /// conjugate partition.
    pub fn transpose(&self) -> ProfileWord {
        let bits = self.bits.iter().rev().map(|b| !*b).collect();
        ProfileWord { bits }
    }

    /// The partition whose profile this is.
    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.count_n());
        let mut width = 0u32;
        for b in self.bits.iter() {
            if *b {
                parts.push(width);
            } else {
                width += 1;
            }
        }
        parts.reverse();
        Partition::from_sorted_unchecked(parts)
    }
}

impl fmt::Display for ProfileWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits.iter() {
            f.write_str(if *b { "N" } else { "E" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for ProfileWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProfileWord({self})")
    }
}

impl FromStr for ProfileWord {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                'E' => Ok(Letter::E),
                'N' => Ok(Letter::N),
                letter => Err(ProfileError::InvalidLetter { position, letter }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_letters(letters)
    }
}

/// Profile of `p`: for each part from the smallest up, `E^(πᵢ − πᵢ₊₁) N`.
pub fn to_profile(p: &Partition) -> ProfileWord {
    let parts = p.parts();
    let mut bits = BitVec::with_capacity(p.perimeter() as usize + 1);
    let mut below = 0;
    for &part in parts.iter().rev() {
        for _ in below..part {
            bits.push(false);
        }
        bits.push(true);
        below = part;
    }
    ProfileWord { bits }
}

pub fn from_profile(w: &ProfileWord) -> Partition {
    w.to_partition()
}

/// Parse `text` as a word and decode it.
pub fn partition_from_word(text: &str) -> Result<Partition, ProfileError> {
    text.parse::<ProfileWord>().map(|w| w.to_partition())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MiddleBlock {
    /// `E^{d+1}` followed by `j` letters `N`.
    TypeI(usize),
    /// `N E^d` followed by `j` letters `N`.
    TypeII(usize),
}

impl MiddleBlock {
    pub fn trailing(self) -> usize {
        match self {
            MiddleBlock::TypeI(j) | MiddleBlock::TypeII(j) => j,
        }
    }

    fn is_type_one(self) -> bool {
        matches!(self, MiddleBlock::TypeI(_))
    }
}

/// The unique block factorisation of a `𝔊_d` profile. The terminal block
/// (a single `N`) is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockDecomposition {
    initial: usize,
    middles: Vec<MiddleBlock>,
}

impl BlockDecomposition {
    /// Checks that the middle blocks alternate I, II, I, … .
    pub fn new(initial: usize, middles: Vec<MiddleBlock>) -> Result<Self, ProfileError> {
        if let Some(i) = middles
            .iter()
            .enumerate()
            .position(|(i, b)| b.is_type_one() != (i % 2 == 0))
        {
            return Err(ProfileError::BrokenAlternation(i));
        }
        Ok(Self { initial, middles })
    }

    /// Middle blocks given only by their trailing `N` counts; the types are
    /// forced by position.
    pub fn from_trailing(initial: usize, trailing: &[usize]) -> Self {
        let middles = trailing
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                if i % 2 == 0 {
                    MiddleBlock::TypeI(j)
                } else {
                    MiddleBlock::TypeII(j)
                }
            })
            .collect();
        Self { initial, middles }
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn middles(&self) -> &[MiddleBlock] {
        &self.middles
    }

    /// Length of the reassembled word for parameter `d`.
    pub fn word_len(&self, d: u32) -> usize {
        let d = d as usize;
        2 + self.initial + self.middles.iter().map(|b| d + 1 + b.trailing()).sum::<usize>()
    }

    pub fn to_word(&self, d: u32) -> ProfileWord {
        let d = d as usize;
        let mut bits = BitVec::with_capacity(self.word_len(d as u32));
        bits.push(false);
        push_run(&mut bits, true, self.initial);
        for block in &self.middles {
            match *block {
                MiddleBlock::TypeI(j) => {
                    push_run(&mut bits, false, d + 1);
                    push_run(&mut bits, true, j);
                }
                MiddleBlock::TypeII(j) => {
                    bits.push(true);
                    push_run(&mut bits, false, d);
                    push_run(&mut bits, true, j);
                }
            }
        }
        bits.push(true);
        ProfileWord { bits }
    }
}

fn push_run(bits: &mut BitVec<u64, Lsb0>, value: bool, count: usize) {
    for _ in 0..count {
        bits.push(value);
    }
}

/// Splits `w` into initial, alternating middle, and terminal blocks.
///
/// Single left-to-right pass with no backtracking: after a type I block the
/// last `N` of a run (if an `E` follows) must open the next type II block,
/// and after a type II block every `N` in the run is trailing.
pub fn decompose_blocks(w: &ProfileWord, d: u32) -> Result<BlockDecomposition, ProfileError> {
    if d == 0 {
        return Err(ProfileError::InvalidD);
    }
    let d = d as usize;
    // the last letter is the terminal block
    let body = w.len() - 1;
    let is_n = |i: usize| w.bits[i];
    let n_run = |from: usize| (from..body).take_while(|&i| is_n(i)).count();
    let expect_e = |from: usize, count: usize| -> Result<usize, ProfileError> {
        for i in from..from + count {
            if i >= body || is_n(i) {
                return Err(ProfileError::NotInClass(i.min(body)));
            }
        }
        Ok(from + count)
    };

    let mut pos = 1;
    let initial = n_run(pos);
    pos += initial;
    let mut middles = Vec::new();
    while pos < body {
        if middles.len() % 2 == 0 {
            pos = expect_e(pos, d + 1)?;
            let run = n_run(pos);
            if pos + run == body {
                middles.push(MiddleBlock::TypeI(run));
                pos = body;
            } else if run == 0 {
                return Err(ProfileError::NotInClass(pos));
            } else {
                middles.push(MiddleBlock::TypeI(run - 1));
                pos += run - 1;
            }
        } else {
            debug_assert!(is_n(pos));
            pos = expect_e(pos + 1, d)?;
            let run = n_run(pos);
            middles.push(MiddleBlock::TypeII(run));
            pos += run;
        }
    }
    Ok(BlockDecomposition { initial, middles })
}

pub fn blocks_to_partition(b: &BlockDecomposition, d: u32) -> Partition {
    b.to_word(d).to_partition()
}

/// Every block sequence whose word has length exactly `n + 1`, i.e. every
/// member of `𝔊_d` with perimeter `n`, generated straight from the grammar.
pub fn block_sequences(n: usize, d: u32) -> Vec<BlockDecomposition> {
    fn extend(
        remaining: usize,
        d: usize,
        initial: usize,
        trailing: &mut Vec<usize>,
        out: &mut Vec<BlockDecomposition>,
    ) {
        if remaining == 0 {
            out.push(BlockDecomposition::from_trailing(initial, trailing));
            return;
        }
        if remaining < d + 1 {
            return;
        }
        for j in 0..=remaining - (d + 1) {
            trailing.push(j);
            extend(remaining - (d + 1) - j, d, initial, trailing, out);
            trailing.pop();
        }
    }

    let mut out = Vec::new();
    if n == 0 || d == 0 {
        return out;
    }
    // word length n + 1 = 2 (initial E, terminal N) + initial Ns + middles
    let budget = n - 1;
    for initial in 0..=budget {
        extend(budget - initial, d as usize, initial, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::ConstraintClass;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn w(s: &str) -> ProfileWord {
        s.parse().unwrap()
    }

    const FIG: [u32; 9] = [9, 9, 6, 6, 6, 4, 1, 1, 1];

    #[test]
    fn encode_examples() {
        assert_eq!(to_profile(&p(&[2, 2, 1])).to_string(), "ENENN");
        assert_eq!(to_profile(&p(&[1])).to_string(), "EN");
        assert_eq!(to_profile(&p(&FIG)).to_string(), "ENNNEEENEENNNEEENN");
    }

    #[test]
    fn decode_examples() {
        assert_eq!(partition_from_word("ENENN").unwrap(), p(&[2, 2, 1]));
        assert_eq!(partition_from_word("EN").unwrap(), p(&[1]));
        assert_eq!(partition_from_word("NEN"), Err(ProfileError::MustStartWithE));
        assert_eq!(partition_from_word("ENE"), Err(ProfileError::MustEndWithN));
        assert_eq!(partition_from_word(""), Err(ProfileError::EmptyWord));
        assert_eq!(
            partition_from_word("ExN"),
            Err(ProfileError::InvalidLetter {
                position: 1,
                letter: 'x'
            })
        );
    }

    #[test]
    fn figure_block_split() {
        let b = decompose_blocks(&to_profile(&p(&FIG)), 2).unwrap();
        assert_eq!(b.initial(), 3);
        // ENNN | EEE | NEENNN | EEEN | N
        assert_eq!(
            b.middles(),
            &[MiddleBlock::TypeI(0), MiddleBlock::TypeII(3), MiddleBlock::TypeI(1)]
        );
        assert_eq!(blocks_to_partition(&b, 2), p(&FIG));
    }

    #[test]
    fn small_block_cases() {
        let b = decompose_blocks(&w("EN"), 2).unwrap();
        assert_eq!((b.initial(), b.middles().len()), (0, 0));
        assert_eq!(decompose_blocks(&w("EEEEEEEN"), 2), Err(ProfileError::NotInClass(4)));
        assert_eq!(decompose_blocks(&w("EEN"), 2), Err(ProfileError::NotInClass(2)));
        assert_eq!(decompose_blocks(&w("EN"), 0), Err(ProfileError::InvalidD));

        let one = BlockDecomposition::new(0, vec![]).unwrap();
        assert_eq!(blocks_to_partition(&one, 1), p(&[1]));
        let four = BlockDecomposition::new(0, vec![MiddleBlock::TypeI(0)]).unwrap();
        assert_eq!(four.to_word(2).to_string(), "EEEEN");
        assert_eq!(blocks_to_partition(&four, 2), p(&[4]));
        assert!(p(&[4]).is_member(ConstraintClass::GClass(2)));
    }

    #[test]
    fn alternation_enforced() {
        assert_eq!(
            BlockDecomposition::new(0, vec![MiddleBlock::TypeII(0)]),
            Err(ProfileError::BrokenAlternation(0))
        );
        assert_eq!(
            BlockDecomposition::new(0, vec![MiddleBlock::TypeI(0), MiddleBlock::TypeI(0)]),
            Err(ProfileError::BrokenAlternation(1))
        );
    }

    #[test]
    fn generated_blocks_have_requested_length() {
        for d in 1..=3 {
            for n in 1..=10 {
                for b in block_sequences(n, d) {
                    assert_eq!(b.word_len(d), n + 1);
                    assert_eq!(blocks_to_partition(&b, d).perimeter(), n as u64);
                }
            }
        }
        assert_eq!(block_sequences(7, 2).len(), 6);
    }

    #[test]
    fn transpose_is_conjugation() {
        let q = p(&[4, 3]);
        assert_eq!(to_profile(&q).transpose(), to_profile(&q.conjugate()));
    }
}
