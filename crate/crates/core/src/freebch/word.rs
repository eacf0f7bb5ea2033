use std::cmp::Ordering;
use std::fmt;

use crate::z2core::Parity;

/// The four ungraded generators of the extended series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
    U,
    W,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::X, Generator::Y, Generator::U, Generator::W];

    pub fn name(self) -> &'static str {
        match self {
            Generator::X => "x",
            Generator::Y => "y",
            Generator::U => "u",
            Generator::W => "w",
        }
    }

    pub fn letter(self, parity: Parity) -> Letter {
        Letter((self as u8) * 2 + parity.bit())
    }

    pub fn even(self) -> Letter {
        self.letter(Parity::Even)
    }

    pub fn odd(self) -> Letter {
        self.letter(Parity::Odd)
    }
}

/// A graded generator `g_0` or `g_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub const COUNT: usize = 8;

    pub fn all() -> impl Iterator<Item = Letter> {
        (0..Self::COUNT as u8).map(Letter)
    }

    pub fn from_index(i: usize) -> Option<Letter> {
        (i < Self::COUNT).then_some(Letter(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> Generator {
        Generator::ALL[(self.0 / 2) as usize]
    }

    pub fn parity(self) -> Parity {
        if self.0 % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.generator().name(), self.parity().bit())
    }
}

/// A word in the graded letters. Words with two or more odd letters vanish
/// in the quotient and are never constructed through [`GradedWord::concat`].
///
/// Ordered by degree first, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedWord(Vec<Letter>);

impl GradedWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Self(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn odd_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_odd()).count()
    }

    /// Zero in the quotient by `A_1 A_1 = 0`.
    pub fn vanishes(&self) -> bool {
        self.odd_count() >= 2
    }

    pub fn parity(&self) -> Parity {
        if self.odd_count() % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Concatenation, or `None` if the product vanishes or exceeds `max_degree`.
    pub fn concat(&self, other: &Self, max_degree: usize) -> Option<Self> {
        if self.degree() + other.degree() > max_degree || self.odd_count() + other.odd_count() >= 2 {
            return None;
        }
        let mut letters = Vec::with_capacity(self.degree() + other.degree());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Some(Self(letters))
    }

    pub fn contains_generator(&self, g: Generator) -> bool {
        self.0.iter().any(|l| l.generator() == g)
    }

    /// Number of letters coming from `g`, either parity.
    pub fn count_generator(&self, g: Generator) -> usize {
        self.0.iter().filter(|l| l.generator() == g).count()
    }
}

impl Ord for GradedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for GradedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GradedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
