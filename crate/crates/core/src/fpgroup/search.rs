//! Backtracking search for homomorphisms into the symmetric group.
//!
//! Generators are assigned in presentation order. A relator is evaluated as
//! soon as its last generator has an image. A generator that occurs exactly
//! once in some relator whose other letters are already assigned is solved
//! for instead of enumerated; this is what keeps the long Mumford
//! presentations tractable, since every vertex relation pins the next vertex.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{Assignment, Presentation};
use crate::error::{Error, Result};
use crate::perm::{
    all_permutations, canonical_tuple, conjugacy_class_representatives, Permutation,
    MAX_CANONICAL_DEGREE,
};

/// Upper bound on the estimated number of leaves [`hom_count`] will visit.
pub const HOM_COUNT_LIMIT: f64 = 1e8;

#[derive(Clone, Debug, Default)]
pub struct EnumerationOptions {
    /// Keep only assignments generating a transitive group.
    pub transitive: bool,
    /// Generators whose image must not be the identity.
    pub nontrivial: BTreeSet<String>,
    /// Return one representative per simultaneous-conjugacy class.
    pub up_to_conjugacy: bool,
}

type Relator = Vec<(usize, bool)>;

struct Level {
    /// `(relator, position)` of the single occurrence used to solve for this
    /// generator.
    derive: Option<(usize, usize)>,
    checks: Vec<usize>,
    nontrivial: bool,
}

struct Plan {
    degree: usize,
    relators: Vec<Relator>,
    levels: Vec<Level>,
}

impl Plan {
    fn new(p: &Presentation, degree: usize, nontrivial: &BTreeSet<String>) -> Result<Self> {
        for g in nontrivial {
            if p.generator_index(g).is_none() {
                return Err(Error::UnknownGenerator(g.clone()));
            }
        }
        let relators: Vec<Relator> = p
            .relators()
            .iter()
            .map(|w| {
                w.letters()
                    .iter()
                    .map(|l| (p.generator_index(&l.generator).unwrap(), l.inverse))
                    .collect()
            })
            .filter(|r: &Relator| !r.is_empty())
            .collect();
        let last = |r: &Relator| r.iter().map(|&(g, _)| g).max().unwrap();
        let levels = (0..p.generators().len())
            .map(|i| {
                let checks: Vec<usize> = (0..relators.len())
                    .filter(|&r| last(&relators[r]) == i)
                    .collect();
                let derive = checks
                    .iter()
                    .filter_map(|&r| {
                        let mut hits = relators[r].iter().enumerate().filter(|(_, &(g, _))| g == i);
                        match (hits.next(), hits.next()) {
                            (Some((pos, _)), None) => Some((r, pos)),
                            _ => None,
                        }
                    })
                    .min_by_key(|&(r, _)| relators[r].len());
                Level {
                    derive,
                    checks,
                    nontrivial: nontrivial.contains(&p.generators()[i]),
                }
            })
            .collect();
        Ok(Self {
            degree,
            relators,
            levels,
        })
    }

    fn free_levels(&self) -> usize {
        self.levels.iter().filter(|l| l.derive.is_none()).count()
    }
}

struct State<'a> {
    plan: &'a Plan,
    images: Vec<Vec<u32>>,
    inverses: Vec<Vec<u32>>,
}

impl<'a> State<'a> {
    fn new(plan: &'a Plan) -> Self {
        let n = plan.levels.len();
        Self {
            plan,
            images: vec![vec![0; plan.degree]; n],
            inverses: vec![vec![0; plan.degree]; n],
        }
    }

    fn set(&mut self, level: usize, images: &[u32]) {
        self.images[level].copy_from_slice(images);
        let inv = &mut self.inverses[level];
        for (x, &y) in images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
    }

    fn letter(&self, (g, inverse): (usize, bool), x: u32) -> u32 {
        if inverse {
            self.inverses[g][x as usize]
        } else {
            self.images[g][x as usize]
        }
    }

    fn relator_holds(&self, r: usize) -> bool {
        let word = &self.plan.relators[r];
        (0..self.plan.degree as u32).all(|x| word.iter().fold(x, |y, &l| self.letter(l, y)) == x)
    }

    /// Solves `u · g^ε · v = 1` for `g`, given everything but `g`.
    fn solve(&self, r: usize, pos: usize) -> Vec<u32> {
        let word = &self.plan.relators[r];
        let (u, rest) = word.split_at(pos);
        let (g_inverse, v) = (rest[0].1, &rest[1..]);
        let x: Vec<u32> = (0..self.plan.degree as u32)
            .map(|pt| {
                let y = u
                    .iter()
                    .rev()
                    .fold(pt, |y, &(g, inv)| self.letter((g, !inv), y));
                v.iter()
                    .rev()
                    .fold(y, |y, &(g, inv)| self.letter((g, !inv), y))
            })
            .collect();
        if g_inverse {
            let mut inv = vec![0; x.len()];
            for (a, &b) in x.iter().enumerate() {
                inv[b as usize] = a as u32;
            }
            inv
        } else {
            x
        }
    }

    fn accepts(&self, level: usize) -> bool {
        let lv = &self.plan.levels[level];
        if lv.nontrivial
            && self.images[level]
                .iter()
                .enumerate()
                .all(|(x, &y)| x as u32 == y)
        {
            return false;
        }
        lv.checks.iter().all(|&r| self.relator_holds(r))
    }

    fn descend(&mut self, level: usize, perms: &[Permutation], leaf: &mut dyn FnMut(&State)) {
        if level == self.plan.levels.len() {
            leaf(self);
            return;
        }
        if let Some((r, pos)) = self.plan.levels[level].derive {
            let img = self.solve(r, pos);
            self.set(level, &img);
            if self.accepts(level) {
                self.descend(level + 1, perms, leaf);
            }
            return;
        }
        for cand in perms {
            self.set(level, cand.as_slice());
            if self.accepts(level) {
                self.descend(level + 1, perms, leaf);
            }
        }
    }

    fn is_transitive(&self) -> bool {
        let d = self.plan.degree;
        let mut seen = vec![false; d];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for img in &self.images {
                let y = img[x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        reached == d
    }

    fn permutations(&self) -> Vec<Permutation> {
        self.images
            .iter()
            .map(|img| Permutation::from_zero_based_unchecked(img.clone()))
            .collect()
    }
}

/// Runs the search, folding leaves into one accumulator per top-level branch
/// and merging the accumulators.
fn run<T, L, M>(
    plan: &Plan,
    first: Option<Vec<Permutation>>,
    init: fn() -> T,
    leaf: L,
    merge: M,
) -> T
where
    T: Send,
    L: Fn(&mut T, &State) + Sync,
    M: Fn(T, T) -> T + Sync + Send,
{
    let perms = all_permutations(plan.degree);
    let perms: &[Permutation] = &perms;
    if plan.levels.is_empty() || plan.levels[0].derive.is_some() {
        let mut acc = init();
        State::new(plan).descend(0, perms, &mut |st| leaf(&mut acc, st));
        return acc;
    }
    let first = first.unwrap_or_else(|| perms.to_vec());
    first
        .par_iter()
        .map(|cand| {
            let mut acc = init();
            let mut st = State::new(plan);
            st.set(0, cand.as_slice());
            if st.accepts(0) {
                st.descend(1, perms, &mut |st| leaf(&mut acc, st));
            }
            acc
        })
        .reduce(init, merge)
}

/// All homomorphisms from `p` into the degree-`d` symmetric group meeting
/// `opts`, sorted by their image tuples. With `up_to_conjugacy` each class is
/// represented by its canonical tuple.
pub fn enumerate_homs(
    p: &Presentation,
    degree: usize,
    opts: &EnumerationOptions,
) -> Result<Vec<Assignment>> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    if opts.up_to_conjugacy && degree > MAX_CANONICAL_DEGREE {
        return Err(Error::DegreeTooLargeForCanonicalization {
            degree,
            max: MAX_CANONICAL_DEGREE,
        });
    }
    let plan = Plan::new(p, degree, &opts.nontrivial)?;
    if p.generators().is_empty() {
        return Ok(vec![Assignment::from_parts(Vec::new(), Vec::new(), degree)]);
    }
    let transitive = opts.transitive;
    let tuples: BTreeSet<Vec<Permutation>> = if opts.up_to_conjugacy {
        // Every class meets a tuple whose first image is a class representative.
        let first = Some(conjugacy_class_representatives(degree));
        run(
            &plan,
            first,
            BTreeSet::new,
            |acc, st| {
                if !transitive || st.is_transitive() {
                    let canon = canonical_tuple(&st.permutations()).expect("degree checked above");
                    acc.insert(canon);
                }
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        )
    } else {
        run(
            &plan,
            None,
            BTreeSet::new,
            |acc, st| {
                if !transitive || st.is_transitive() {
                    acc.insert(st.permutations());
                }
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        )
    };
    Ok(tuples
        .into_iter()
        .map(|images| Assignment::from_parts(p.generators().to_vec(), images, degree))
        .collect())
}

/// Number of homomorphisms from `p` into the full degree-`d` symmetric group.
/// This depends only on the group, not on the presentation.
pub fn hom_count(p: &Presentation, degree: usize) -> Result<u64> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let plan = Plan::new(p, degree, &BTreeSet::new())?;
    let factorial: f64 = (1..=degree).map(|k| k as f64).product();
    let estimate = factorial.powi(plan.free_levels() as i32);
    if estimate > HOM_COUNT_LIMIT {
        return Err(Error::SearchSpaceTooLarge {
            estimate,
            limit: HOM_COUNT_LIMIT,
        });
    }
    if p.generators().is_empty() {
        return Ok(1);
    }
    Ok(run(&plan, None, || 0u64, |n, _| *n += 1, |a, b| a + b))
}
