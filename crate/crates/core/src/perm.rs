//! Permutations of `{1..d}` and the small amount of permutation-group
//! machinery the rest of the crate is built on.
//!
//! Products are read left to right everywhere: `p.compose(&q)` applies `p`
//! first, then `q`. Points are 1-based in every public API that takes or
//! returns a point; the images are stored 0-based internally.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the size of a group closure.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// Largest degree for which [`canonical_tuple`] runs its exhaustive search.
pub const MAX_CANONICAL_DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list: entry `x - 1` is the
    /// image of `x`.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::ZeroDegree);
        }
        let d = images.len();
        let mut seen = vec![false; d];
        let mut zero_based = Vec::with_capacity(d);
        for &y in images {
            if y == 0 || y as usize > d {
                return Err(Error::InvalidPermutation(format!(
                    "image {y} outside 1..={d}"
                )));
            }
            let y0 = (y - 1) as usize;
            if seen[y0] {
                return Err(Error::InvalidPermutation(format!("image {y} repeated")));
            }
            seen[y0] = true;
            zero_based.push(y - 1);
        }
        Ok(Self {
            images: zero_based.into_boxed_slice(),
        })
    }

    /// Builds a permutation from disjoint 1-based cycles, e.g.
    /// `from_cycles(3, &[&[1, 3, 2]])`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x as usize > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} outside 1..={degree}"
                    )));
                }
                let x0 = (x - 1) as usize;
                if touched[x0] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} appears in two cycles"
                    )));
                }
                touched[x0] = true;
                images[x0] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Self {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_zero_based_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&images));
        Self {
            images: images.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// 1-based image list, the serialized form.
    pub fn to_images(&self) -> Vec<u32> {
        self.images.iter().map(|&y| y + 1).collect()
    }

    pub(crate) fn as_slice(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// Left-to-right product: the result maps `x` to `other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_degree(self.degree(), other)?;
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&y| other.images[y as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs() % self.order() as u64;
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹ · self · g`, i.e. `self` with every point relabeled through `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            out[g.images[x] as usize] = g.images[y as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    /// All cycles including fixed points, each starting at its least point,
    /// ordered by that point. 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut parts: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, lcm)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| other.images[y as usize] == self.images[other.images[x] as usize])
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u32>) -> Result<Self> {
        Permutation::from_images(&images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.to_images()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            write!(f, "({})", c.iter().join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.degree())
    }
}

fn is_bijection(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&y| {
        let y = y as usize;
        y < seen.len() && !std::mem::replace(&mut seen[y], true)
    })
}

fn check_degree(expected: usize, p: &Permutation) -> Result<()> {
    if p.degree() != expected {
        return Err(Error::DegreeMismatch {
            expected,
            found: p.degree(),
        });
    }
    Ok(())
}

fn check_all(degree: usize, gens: &[Permutation]) -> Result<()> {
    gens.iter().try_for_each(|g| check_degree(degree, g))
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Cycle lengths, fixed points included, in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    pub parts: Vec<usize>,
}

impl CycleType {
    /// Number of cycles.
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.parts.iter().join(","))
    }
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn cycle_type(p: &Permutation) -> CycleType {
    p.cycle_type()
}

/// Orbits of `⟨gens⟩` on `{1..degree}`, each sorted, ordered by least point.
pub fn orbits(degree: usize, gens: &[Permutation]) -> Result<Vec<Vec<usize>>> {
    check_all(degree, gens)?;
    let mut label = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = g.images[x] as usize;
                if label[y] == usize::MAX {
                    label[y] = id;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit.into_iter().map(|x| x + 1).collect());
    }
    Ok(out)
}

pub fn is_transitive(degree: usize, gens: &[Permutation]) -> Result<bool> {
    Ok(orbits(degree, gens)?.len() <= 1)
}

/// Breadth-first closure of `⟨gens⟩`.
pub fn group_elements(
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<HashSet<Permutation>> {
    check_all(degree, gens)?;
    let id = Permutation::identity(degree);
    let mut elements = HashSet::new();
    elements.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if !elements.contains(&y) {
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                elements.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(elements)
}

pub fn is_central(z: &Permutation, gens: &[Permutation]) -> Result<bool> {
    check_all(z.degree(), gens)?;
    Ok(gens.iter().all(|g| z.commutes_with(g)))
}

/// True iff every cycle of `z` (fixed points included) has the same length.
pub fn is_semiregular(z: &Permutation) -> bool {
    z.cycles().iter().map(Vec::len).all_equal()
}

/// A partition of `{1..degree}` into blocks of equal size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    degree: usize,
    block_size: usize,
    blocks: Vec<Vec<usize>>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// Blocks as sorted 1-based point lists, ordered by least element.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// 0-based index of the block containing the 1-based point `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x - 1]
    }
}

/// Blocks of imprimitivity given by the orbits of `⟨z⟩`.
pub fn blocks_from_central(z: &Permutation) -> Result<BlockSystem> {
    if !is_semiregular(z) {
        return Err(Error::NotSemiregular);
    }
    let blocks = orbits(z.degree(), std::slice::from_ref(z))?;
    let mut block_of = vec![0; z.degree()];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            block_of[x - 1] = i;
        }
    }
    Ok(BlockSystem {
        degree: z.degree(),
        block_size: z.order(),
        blocks,
        block_of,
    })
}

/// The permutation `p` induces on the blocks of `bs`.
pub fn action_on_blocks(p: &Permutation, bs: &BlockSystem) -> Result<Permutation> {
    check_degree(bs.degree, p)?;
    let mut images = Vec::with_capacity(bs.len());
    for block in &bs.blocks {
        let target = bs.block_of(p.apply(block[0]));
        if block.iter().any(|&x| bs.block_of(p.apply(x)) != target) {
            return Err(Error::BlocksNotPreserved);
        }
        images.push(target as u32);
    }
    if !is_bijection(&images) {
        return Err(Error::BlocksNotPreserved);
    }
    Ok(Permutation::from_zero_based_unchecked(images))
}

/// Every permutation of degree `d`, in lexicographic order of image lists.
pub fn symmetric_group(degree: usize) -> Vec<Permutation> {
    (0..degree as u32)
        .permutations(degree)
        .map(Permutation::from_zero_based_unchecked)
        .collect()
}

fn cached_symmetric_group(degree: usize) -> &'static [Permutation] {
    static CACHE: [OnceLock<Vec<Permutation>>; MAX_CANONICAL_DEGREE + 1] =
        [const { OnceLock::new() }; MAX_CANONICAL_DEGREE + 1];
    CACHE[degree].get_or_init(|| symmetric_group(degree))
}

/// All degree-`d` permutations, shared across calls for `d ≤ 8`.
pub(crate) fn all_permutations(degree: usize) -> std::borrow::Cow<'static, [Permutation]> {
    if degree <= MAX_CANONICAL_DEGREE {
        std::borrow::Cow::Borrowed(cached_symmetric_group(degree))
    } else {
        std::borrow::Cow::Owned(symmetric_group(degree))
    }
}

/// Partitions of `n` into non-increasing parts, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One permutation per conjugacy class of the symmetric group, built from
/// consecutive cycles: the partition `[3, 1]` gives `(1 2 3)`.
pub fn conjugacy_class_representatives(degree: usize) -> Vec<Permutation> {
    partitions(degree)
        .into_iter()
        .map(|parts| {
            let mut images = Vec::with_capacity(degree);
            let mut start = 0u32;
            for len in parts {
                let len = len as u32;
                images.extend((start + 1..start + len).chain(std::iter::once(start)));
                start += len;
            }
            Permutation::from_zero_based_unchecked(images)
        })
        .collect()
}

/// Lexicographically least simultaneous conjugate of `ps` over the whole
/// symmetric group. Two tuples are simultaneously conjugate iff their
/// canonical forms agree.
pub fn canonical_tuple(ps: &[Permutation]) -> Result<Vec<Permutation>> {
    let Some(first) = ps.first() else {
        return Ok(Vec::new());
    };
    let d = first.degree();
    check_all(d, ps)?;
    if d > MAX_CANONICAL_DEGREE {
        return Err(Error::DegreeTooLargeForCanonicalization {
            degree: d,
            max: MAX_CANONICAL_DEGREE,
        });
    }
    let mut best: Vec<Permutation> = ps.to_vec();
    let mut scratch = vec![0u32; d];
    for g in cached_symmetric_group(d) {
        // Compare component by component, abandoning as soon as the candidate
        // is known to be larger.
        let mut ordering = Ordering::Equal;
        let mut candidate = Vec::with_capacity(ps.len());
        for (p, b) in ps.iter().zip(&best) {
            for (x, &y) in p.images.iter().enumerate() {
                scratch[g.images[x] as usize] = g.images[y as usize];
            }
            if ordering == Ordering::Equal {
                ordering = scratch.as_slice().cmp(&b.images);
                if ordering == Ordering::Greater {
                    break;
                }
            }
            candidate.push(Permutation::from_zero_based_unchecked(scratch.clone()));
        }
        if ordering == Ordering::Less {
            best = candidate;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        let t12 = p(3, &[&[1, 2]]);
        let t13 = p(3, &[&[1, 3]]);
        assert_eq!(compose(&t12, &t13).unwrap(), p(3, &[&[1, 2, 3]]));
        assert!(compose(&p(2, &[&[1, 2]]), &p(2, &[&[1, 2]]))
            .unwrap()
            .is_identity());
        assert_eq!(compose(&t12, &Permutation::identity(3)).unwrap(), t12);
        assert_eq!(
            compose(&t12, &Permutation::identity(4)),
            Err(Error::DegreeMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn image_list_validation() {
        assert!(Permutation::from_images(&[2, 1, 3]).is_ok());
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[3, 1]).is_err());
        assert_eq!(Permutation::from_images(&[]), Err(Error::ZeroDegree));
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(3).cycle_type().parts, vec![1, 1, 1]);
        assert_eq!(Permutation::identity(3).cycle_type().count(), 3);
        assert_eq!(p(3, &[&[1, 2, 3]]).cycle_type().parts, vec![3]);
        let t = p(3, &[&[1, 2]]).cycle_type();
        assert_eq!((t.parts.clone(), t.count()), (vec![2, 1], 2));
    }

    #[test]
    fn orbit_partitions() {
        assert_eq!(
            orbits(3, &[p(3, &[&[1, 2]])]).unwrap(),
            vec![vec![1, 2], vec![3]]
        );
        assert_eq!(
            orbits(3, &[p(3, &[&[1, 2]]), p(3, &[&[1, 3]])]).unwrap(),
            vec![vec![1, 2, 3]]
        );
        assert_eq!(orbits(2, &[]).unwrap(), vec![vec![1], vec![2]]);
        assert!(orbits(2, &[p(3, &[])]).is_err());
    }

    #[test]
    fn closures() {
        let g = group_elements(2, &[p(2, &[&[1, 2]])], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.len(), 2);
        let s3 =
            group_elements(3, &[p(3, &[&[1, 2]]), p(3, &[&[1, 3]])], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(s3, symmetric_group(3).into_iter().collect());
        let ten = p(10, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]]);
        assert_eq!(
            group_elements(10, &[ten], 3),
            Err(Error::GroupTooLarge { cap: 3 })
        );
    }

    #[test]
    fn centrality() {
        let gens = [p(3, &[&[1, 2]]), p(3, &[&[1, 3]])];
        assert!(is_central(&Permutation::identity(3), &gens).unwrap());
        assert!(!is_central(&gens[0], &gens).unwrap());
    }

    #[test]
    fn semiregularity() {
        assert!(is_semiregular(&Permutation::identity(4)));
        assert!(is_semiregular(&p(4, &[&[1, 2], &[3, 4]])));
        assert!(!is_semiregular(&p(3, &[&[1, 2]])));
    }

    #[test]
    fn blocks_of_central_elements() {
        let bs = blocks_from_central(&Permutation::identity(3)).unwrap();
        assert_eq!(bs.blocks(), &[vec![1], vec![2], vec![3]]);
        let bs = blocks_from_central(&p(4, &[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(bs.blocks(), &[vec![1, 2], vec![3, 4]]);
        assert_eq!(bs.block_size(), 2);
        assert_eq!(
            blocks_from_central(&p(3, &[&[1, 2]])),
            Err(Error::NotSemiregular)
        );
    }

    #[test]
    fn block_actions() {
        let singletons = blocks_from_central(&Permutation::identity(3)).unwrap();
        let q = p(3, &[&[1, 3, 2]]);
        assert_eq!(action_on_blocks(&q, &singletons).unwrap(), q);
        let bs = blocks_from_central(&p(4, &[&[1, 2], &[3, 4]])).unwrap();
        assert!(action_on_blocks(&Permutation::identity(4), &bs)
            .unwrap()
            .is_identity());
        assert_eq!(
            action_on_blocks(&p(4, &[&[1, 3]]), &bs).unwrap_err(),
            Error::BlocksNotPreserved
        );
        assert_eq!(
            action_on_blocks(&p(4, &[&[1, 3], &[2, 4]]), &bs).unwrap(),
            p(2, &[&[1, 2]])
        );
    }

    #[test]
    fn canonical_forms() {
        let id = Permutation::identity(2);
        assert_eq!(
            canonical_tuple(&[id.clone(), id.clone()]).unwrap(),
            vec![id.clone(), id]
        );
        let t = p(2, &[&[1, 2]]);
        assert_eq!(
            canonical_tuple(&[t.clone(), t.clone()]).unwrap(),
            vec![t.clone(), t]
        );
        let a = canonical_tuple(&[p(3, &[&[1, 3]]), p(3, &[&[1, 2]])]).unwrap();
        let b = canonical_tuple(&[p(3, &[&[1, 2]]), p(3, &[&[1, 3]])]).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            canonical_tuple(&[Permutation::identity(9)]),
            Err(Error::DegreeTooLargeForCanonicalization { degree: 9, .. })
        ));
    }

    #[test]
    fn class_representatives_cover_every_cycle_type() {
        let reps = conjugacy_class_representatives(5);
        assert_eq!(reps.len(), 7);
        let types: HashSet<_> = reps.iter().map(Permutation::cycle_type).collect();
        assert_eq!(types.len(), 7);
        assert_eq!(reps[0], p(5, &[&[1, 2, 3, 4, 5]]));
    }

    #[test]
    fn powers_and_display() {
        let c = p(4, &[&[1, 2, 3, 4]]);
        assert_eq!(c.pow(4), Permutation::identity(4));
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.pow(2).to_string(), "(1 3)(2 4)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
        assert_eq!(c.order(), 4);
    }
}
