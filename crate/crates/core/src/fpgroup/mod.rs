//! Finitely presented groups: words, presentations, and assignments of
//! generators to permutations.
//!
//! Nothing here decides the word problem. Two presentations are only ever
//! compared through invariants ([`hom_count`] and [`abelianization`]).

mod parse;
mod search;
mod smith;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use search::{enumerate_homs, hom_count, EnumerationOptions, HOM_COUNT_LIMIT};
pub use smith::{abelianization, invariant_factors, AbelianInvariants};

/// A generator raised to `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(String, i8)", into = "(String, i8)")]
pub struct Letter {
    pub generator: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: impl Into<String>, inverse: bool) -> Self {
        Self {
            generator: generator.into(),
            inverse,
        }
    }

    pub fn exponent(&self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl TryFrom<(String, i8)> for Letter {
    type Error = String;

    fn try_from((generator, exponent): (String, i8)) -> std::result::Result<Self, String> {
        match exponent {
            1 => Ok(Letter::new(generator, false)),
            -1 => Ok(Letter::new(generator, true)),
            e => Err(format!("letter exponent must be 1 or -1, got {e}")),
        }
    }
}

impl From<Letter> for (String, i8) {
    fn from(l: Letter) -> Self {
        let e = l.exponent();
        (l.generator, e)
    }
}

/// A word in the generators; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn generator(name: impl Into<String>) -> Self {
        Self(vec![Letter::new(name, false)])
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    /// Parses the compact notation used throughout the catalog, e.g.
    /// `e3^-1 b1 b2`, `(b1e2)^2b1`, `[b1, b2b3]`. A relation `u = v` parses to
    /// the relator `u⁻¹v`. Commutators are `[x, y] = x⁻¹y⁻¹xy`.
    pub fn parse(input: &str) -> Result<Self> {
        parse::parse_relation(input)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(
            self.0
                .iter()
                .rev()
                .map(|l| Letter::new(l.generator.clone(), !l.inverse))
                .collect(),
        )
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let n = base.0.len() * exponent.unsigned_abs() as usize;
        Self(base.0.iter().cycle().take(n).cloned().collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Self(letters)
    }

    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.inverse().concat(&y.inverse()).concat(x).concat(y)
    }

    /// Generators in order of first appearance.
    pub fn generators(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        self.0
            .iter()
            .filter(|l| seen.insert(l.generator.as_str()))
            .map(|l| l.generator.as_str())
            .collect()
    }

    /// Exponent sum of every generator.
    pub fn exponent_sums(&self) -> BTreeMap<&str, i64> {
        let mut sums = BTreeMap::new();
        for l in &self.0 {
            *sums.entry(l.generator.as_str()).or_insert(0) += i64::from(l.exponent());
        }
        sums
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // Runs of the same letter are printed as powers.
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let l = &self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == *l {
                j += 1;
            }
            let run = (j - i) as i64 * i64::from(l.exponent());
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{}", l.generator)?;
            } else {
                write!(f, "{}^{}", l.generator, run)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Generators plus relator words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

#[derive(Deserialize)]
struct RawPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl TryFrom<RawPresentation> for Presentation {
    type Error = Error;

    fn try_from(raw: RawPresentation) -> Result<Self> {
        Presentation::new(raw.generators, raw.relators)
    }
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relators {
            for l in r.letters() {
                if !seen.contains(l.generator.as_str()) {
                    return Err(Error::UnknownGenerator(l.generator.clone()));
                }
            }
        }
        Ok(Self {
            generators,
            relators,
        })
    }

    /// Builds a presentation from generator names and relations in the
    /// notation of [`Word::parse`].
    pub fn parse(generators: &[&str], relations: &[&str]) -> Result<Self> {
        let relators = relations
            .iter()
            .map(|r| Word::parse(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(generators.iter().map(|g| g.to_string()).collect(), relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generators.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, " >")
    }
}

/// Images of named generators, all of one degree. Order of insertion is kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    generators: Vec<String>,
    images: Vec<Permutation>,
    degree: usize,
}

impl Assignment {
    pub fn new(pairs: Vec<(String, Permutation)>) -> Result<Self> {
        let Some(degree) = pairs.first().map(|(_, p)| p.degree()) else {
            return Err(Error::ZeroDegree);
        };
        let mut seen = BTreeSet::new();
        for (g, p) in &pairs {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: p.degree(),
                });
            }
        }
        let (generators, images) = pairs.into_iter().unzip();
        Ok(Self {
            generators,
            images,
            degree,
        })
    }

    /// An assignment for `p`'s generators taking images in that order.
    pub fn for_presentation(p: &Presentation, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != p.generators.len() {
            return Err(Error::MissingGenerator(
                p.generators.get(images.len()).cloned().unwrap_or_default(),
            ));
        }
        Self::new(p.generators.iter().cloned().zip(images).collect())
    }

    /// Reorders a name-keyed map to follow `p`'s generator order; every
    /// generator must be present and no others.
    pub fn from_map(p: &Presentation, mut map: BTreeMap<String, Permutation>) -> Result<Self> {
        let mut pairs = Vec::with_capacity(p.generators.len());
        for g in &p.generators {
            let img = map
                .remove(g)
                .ok_or_else(|| Error::MissingGenerator(g.clone()))?;
            pairs.push((g.clone(), img));
        }
        if let Some(extra) = map.into_keys().next() {
            return Err(Error::UnknownGenerator(extra));
        }
        Self::new(pairs)
    }

    pub(crate) fn from_parts(
        generators: Vec<String>,
        images: Vec<Permutation>,
        degree: usize,
    ) -> Self {
        Self {
            generators,
            images,
            degree,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, generator: &str) -> Option<&Permutation> {
        self.generators
            .iter()
            .position(|g| g == generator)
            .map(|i| &self.images[i])
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Permutation)> {
        self.generators
            .iter()
            .map(String::as_str)
            .zip(self.images.iter())
    }

    pub fn to_map(&self) -> BTreeMap<String, Permutation> {
        self.iter()
            .map(|(g, p)| (g.to_string(), p.clone()))
            .collect()
    }
}

/// Left-to-right product of the images of `w`'s letters.
pub fn evaluate_word(w: &Word, a: &Assignment) -> Result<Permutation> {
    let mut acc = Permutation::identity(a.degree());
    for l in w.letters() {
        let img = a
            .get(&l.generator)
            .ok_or_else(|| Error::UnknownGenerator(l.generator.clone()))?;
        acc = if l.inverse {
            acc.then(&img.inverse())
        } else {
            acc.then(img)
        };
    }
    Ok(acc)
}

/// True iff every relator of `p` evaluates to the identity under `a`.
pub fn check_homomorphism(p: &Presentation, a: &Assignment) -> Result<bool> {
    for g in &p.generators {
        if a.get(g).is_none() {
            return Err(Error::UnknownGenerator(g.clone()));
        }
    }
    for r in &p.relators {
        if !evaluate_word(r, a)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}
