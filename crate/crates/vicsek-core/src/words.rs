//! Symbolic address space for points of the Vicsek set.
//!
//! A point of `V_m` is named by an [`Address`] `(word, corner)`: the word
//! selects a chain of cells, the corner one of the four boundary fixed
//! points, and the point is the image of that corner under the composed
//! contractions. Projection is exact rational arithmetic, which is what
//! makes vertex identification (`F_5 q_1 = F_1 q_3` and friends) reliable.

use alloc::vec::Vec;

use crate::{Error, Rational, Result};

/// Letters of the cell alphabet: corners `1..=4` plus the center `5`.
pub const ALPHABET: [u8; 5] = [1, 2, 3, 4, 5];

/// The corner diagonally opposite `i` in the unit square, i.e. the corner
/// with `F_5(q_i) = F_i(q_opposite(i))`.
pub const fn opposite_corner(i: u8) -> u8 {
    match i {
        1 => 3,
        2 => 4,
        3 => 1,
        4 => 2,
        _ => panic!("corner out of range"),
    }
}

/// A finite word over the alphabet `{1..5}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[u8]) -> Result<Word> {
        for &l in letters {
            if !(1..=5).contains(&l) {
                return Err(Error::InvalidLetter(l));
            }
        }
        Ok(Word(letters.to_vec()))
    }

    /// The word `[i]^m` consisting of `m` copies of one letter.
    pub fn repeated(letter: u8, m: usize) -> Result<Word> {
        if !(1..=5).contains(&letter) {
            return Err(Error::InvalidLetter(letter));
        }
        Ok(Word(alloc::vec![letter; m]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Concatenation; the length adds.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Appends one letter (already validated words only).
    pub fn push(&mut self, letter: u8) {
        debug_assert!((1..=5).contains(&letter));
        self.0.push(letter);
    }
}

/// An address `(word, corner)` naming the point `F_word(q_corner)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address {
    pub word: Word,
    pub corner: u8,
}

impl Address {
    pub fn new(word: Word, corner: u8) -> Result<Address> {
        if !(1..=4).contains(&corner) {
            return Err(Error::InvalidCorner(corner));
        }
        Ok(Address { word, corner })
    }

    pub fn level(&self) -> usize {
        self.word.len()
    }
}

/// Exact rational plane coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactPoint {
    pub x: Rational,
    pub y: Rational,
}

impl ExactPoint {
    pub fn new(x: Rational, y: Rational) -> ExactPoint {
        ExactPoint { x, y }
    }
}

/// The fixed point `p_i` of the contraction `F_i`, for `i` in `1..=5`.
pub fn fixed_point(i: u8) -> ExactPoint {
    let (x, y) = match i {
        1 => (Rational::ZERO, Rational::ONE),
        2 => (Rational::ONE, Rational::ONE),
        3 => (Rational::ONE, Rational::ZERO),
        4 => (Rational::ZERO, Rational::ZERO),
        5 => (Rational::new(1, 2), Rational::new(1, 2)),
        _ => panic!("letter out of range"),
    };
    ExactPoint::new(x, y)
}

/// Applies `F_i(p) = (p - p_i)/3 + p_i` exactly.
pub fn apply_map(letter: u8, p: &ExactPoint) -> ExactPoint {
    let c = fixed_point(letter);
    let third = Rational::new(1, 3);
    let two_thirds = Rational::new(2, 3);
    ExactPoint::new(
        p.x.mul(&third).add(&c.x.mul(&two_thirds)),
        p.y.mul(&third).add(&c.y.mul(&two_thirds)),
    )
}

/// Exact coordinates of `q_{word,corner} = F_word(q_corner)`.
///
/// The composition applies the last letter first, so that
/// `F_word = F_w1 . F_w2 . ... . F_wm`.
pub fn project(addr: &Address) -> ExactPoint {
    let mut p = fixed_point(addr.corner);
    for &letter in addr.word.letters().iter().rev() {
        p = apply_map(letter, &p);
    }
    p
}

/// The transposition `(2 4)` applied letterwise and to the corner.
///
/// Geometrically this reflects the square across the diagonal from `q_1` to
/// `q_3`; letters 1, 3 and 5 are fixed.
pub fn rotate1(addr: &Address) -> Address {
    fn swap(l: u8) -> u8 {
        match l {
            2 => 4,
            4 => 2,
            other => other,
        }
    }
    let word = Word(addr.word.letters().iter().map(|&l| swap(l)).collect());
    Address {
        word,
        corner: swap(addr.corner),
    }
}

/// The 4-cycle `1 -> 2 -> 3 -> 4 -> 1` applied letterwise and to the corner;
/// letter 5 is fixed. Geometrically a quarter turn about the center.
pub fn rotate2(addr: &Address) -> Address {
    fn cycle(l: u8) -> u8 {
        match l {
            1 => 2,
            2 => 3,
            3 => 4,
            4 => 1,
            other => other,
        }
    }
    let word = Word(addr.word.letters().iter().map(|&l| cycle(l)).collect());
    Address {
        word,
        corner: cycle(addr.corner),
    }
}

/// The affine frame of one cell: `F_word(p) = scale * p + translation`.
///
/// Walking frames instead of re-projecting every address keeps graph
/// construction and eigenfunction extension linear in the number of cells.
#[derive(Debug, Clone)]
pub struct CellFrame {
    pub translation: ExactPoint,
    pub scale: Rational,
}

impl CellFrame {
    pub fn root() -> CellFrame {
        CellFrame {
            translation: ExactPoint::new(Rational::ZERO, Rational::ZERO),
            scale: Rational::ONE,
        }
    }

    /// The frame of the subcell `F_word . F_letter`.
    pub fn child(&self, letter: u8) -> CellFrame {
        let p = fixed_point(letter);
        let third = Rational::new(1, 3);
        let two_thirds = self.scale.mul(&Rational::new(2, 3));
        CellFrame {
            translation: ExactPoint::new(
                self.translation.x.add(&p.x.mul(&two_thirds)),
                self.translation.y.add(&p.y.mul(&two_thirds)),
            ),
            scale: self.scale.mul(&third),
        }
    }

    /// Exact coordinates of this cell's corner `q_i`.
    pub fn corner(&self, i: u8) -> ExactPoint {
        let q = fixed_point(i);
        ExactPoint::new(
            self.translation.x.add(&q.x.mul(&self.scale)),
            self.translation.y.add(&q.y.mul(&self.scale)),
        )
    }
}

/// Visits the frames of all `5^depth` cells of level `depth` in
/// lexicographic word order.
pub fn visit_cells(depth: u32, f: &mut impl FnMut(&CellFrame)) {
    fn rec(frame: &CellFrame, remaining: u32, f: &mut impl FnMut(&CellFrame)) {
        if remaining == 0 {
            f(frame);
            return;
        }
        for letter in ALPHABET {
            rec(&frame.child(letter), remaining - 1, f);
        }
    }
    rec(&CellFrame::root(), depth, f);
}

/// Lazy lexicographic enumeration (pre-order: a word precedes its
/// extensions) of all words of length `<= depth` whose first letter lies in
/// `first_letters`. The empty word is always yielded first.
pub fn enumerate_words(depth: usize, first_letters: &[u8]) -> WordIter {
    let mut allowed = [false; 6];
    for &l in first_letters {
        if (1..=5).contains(&l) {
            allowed[l as usize] = true;
        }
    }
    WordIter {
        depth,
        allowed,
        state: IterState::Start,
        stack: Vec::new(),
    }
}

enum IterState {
    Start,
    Running,
    Done,
}

pub struct WordIter {
    depth: usize,
    allowed: [bool; 6],
    state: IterState,
    stack: Vec<u8>,
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        match self.state {
            IterState::Start => {
                self.state = IterState::Running;
                return Some(Word::empty());
            }
            IterState::Done => return None,
            IterState::Running => {}
        }
        // Descend to the next word in pre-order: extend with letter 1 if
        // depth allows, otherwise increment the last letter, backtracking
        // past letters that are already 5.
        if self.stack.len() < self.depth {
            self.stack.push(1);
        } else {
            loop {
                match self.stack.pop() {
                    None => {
                        self.state = IterState::Done;
                        return None;
                    }
                    Some(l) if l < 5 => {
                        self.stack.push(l + 1);
                        break;
                    }
                    Some(_) => {}
                }
            }
        }
        // Enforce the first-letter filter by skipping entire subtrees.
        while !self.allowed[self.stack[0] as usize] {
            let first = self.stack[0];
            if first == 5 {
                self.state = IterState::Done;
                return None;
            }
            self.stack.clear();
            self.stack.push(first + 1);
        }
        Some(Word(self.stack.clone()))
    }
}
