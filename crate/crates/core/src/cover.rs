//! Germ covers, given by their monodromy: an assignment of permutations to
//! the generators of the simplified presentation of the branch curve's
//! local fundamental group.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::{distinguished_words, simplified_presentation, Family, SingularityType};
use crate::dessin::{classify, genus, BelyiClass, BelyiTriple};
use crate::error::{Error, Result};
use crate::fpgroup::{enumerate_homs, evaluate_word, Assignment, EnumerationOptions, Presentation};
use crate::perm::{
    action_on_blocks, blocks_from_central, gcd, group_elements, is_central, is_semiregular,
    is_transitive, Permutation, DEFAULT_GROUP_CAP,
};

/// Largest degree [`enumerate_covers`] accepts.
pub const MAX_COVER_DEGREE: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermCover {
    pub singularity: SingularityType,
    pub degree: usize,
    pub images: BTreeMap<String, Permutation>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

impl GermCover {
    pub fn from_assignment(singularity: SingularityType, a: &Assignment) -> Self {
        Self {
            singularity,
            degree: a.degree(),
            images: a.to_map(),
            meta: BTreeMap::new(),
        }
    }

    pub fn presentation(&self) -> Presentation {
        simplified_presentation(self.singularity)
    }

    /// The images in the presentation's generator order, after validation.
    pub fn assignment(&self) -> Result<Assignment> {
        let report = validate_cover(self);
        if !report.is_valid() {
            return Err(Error::InvalidCover(report));
        }
        Assignment::from_map(&self.presentation(), self.images.clone())
    }

    fn is_identity_exemption(&self) -> bool {
        // The identity map of a smooth germ: the only degree-1 cover, and the
        // only cover allowed an unbranched branch generator.
        self.singularity == SingularityType::a(0) && self.degree == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "defect", rename_all = "kebab-case")]
pub enum Defect {
    ZeroDegree,
    MissingGenerator { generator: String },
    UnknownGenerator { generator: String },
    WrongDegree { generator: String, found: usize },
    RelatorFails { relator: String },
    NotTransitive,
    TrivialBranch { generator: String },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::ZeroDegree => write!(f, "degree is zero"),
            Defect::MissingGenerator { generator } => write!(f, "no image for {generator}"),
            Defect::UnknownGenerator { generator } => write!(f, "{generator} is not a generator"),
            Defect::WrongDegree { generator, found } => {
                write!(f, "image of {generator} has degree {found}")
            }
            Defect::RelatorFails { relator } => write!(f, "relator {relator} is not the identity"),
            Defect::NotTransitive => write!(f, "monodromy group is not transitive"),
            Defect::TrivialBranch { generator } => {
                write!(f, "branch generator {generator} has trivial image")
            }
        }
    }
}

/// Every invariant a cover fails. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub defects: Vec<Defect>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.defects.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.defects.is_empty() {
            return write!(f, "valid");
        }
        for (i, d) in self.defects.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub fn validate_cover(c: &GermCover) -> ValidationReport {
    let p = c.presentation();
    let mut defects = Vec::new();
    if c.degree == 0 {
        defects.push(Defect::ZeroDegree);
    }
    for g in p.generators() {
        match c.images.get(g) {
            None => defects.push(Defect::MissingGenerator {
                generator: g.clone(),
            }),
            Some(img) if img.degree() != c.degree => defects.push(Defect::WrongDegree {
                generator: g.clone(),
                found: img.degree(),
            }),
            Some(_) => {}
        }
    }
    for g in c.images.keys() {
        if p.generator_index(g).is_none() {
            defects.push(Defect::UnknownGenerator {
                generator: g.clone(),
            });
        }
    }
    if !defects.is_empty() {
        return ValidationReport { defects };
    }

    let a = Assignment::from_map(&p, c.images.clone()).expect("shape checked above");
    for r in p.relators() {
        if !evaluate_word(r, &a)
            .expect("generators checked")
            .is_identity()
        {
            defects.push(Defect::RelatorFails {
                relator: r.to_string(),
            });
        }
    }
    if !is_transitive(c.degree, a.images()).expect("degrees checked") {
        defects.push(Defect::NotTransitive);
    }
    if !c.is_identity_exemption() {
        for (g, img) in a.iter() {
            if g.starts_with('b') && img.is_identity() {
                defects.push(Defect::TrivialBranch {
                    generator: g.to_string(),
                });
            }
        }
    }
    ValidationReport { defects }
}

/// Valid covers of degree `d` up to relabelling the sheets, in canonical
/// order. With `rational_only`, covers whose exceptional curve upstairs would
/// have positive genus are dropped; this is necessary for a smooth total
/// space, not sufficient.
pub fn enumerate_covers(
    t: SingularityType,
    d: usize,
    rational_only: bool,
) -> Result<Vec<GermCover>> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if d > MAX_COVER_DEGREE {
        return Err(Error::DegreeTooLargeForCanonicalization {
            degree: d,
            max: MAX_COVER_DEGREE,
        });
    }
    let p = simplified_presentation(t);
    let exempt = t == SingularityType::a(0) && d == 1;
    let opts = EnumerationOptions {
        transitive: true,
        nontrivial: if exempt {
            BTreeSet::new()
        } else {
            p.generators()
                .iter()
                .filter(|g| g.starts_with('b'))
                .cloned()
                .collect()
        },
        up_to_conjugacy: true,
    };
    let mut covers = Vec::new();
    for a in enumerate_homs(&p, d, &opts)? {
        let c = GermCover::from_assignment(t, &a);
        if rational_only {
            if let BetaDescriptor::Triple { genus, .. } = beta(&c, false)? {
                if genus > 0 {
                    continue;
                }
            }
        }
        covers.push(c);
    }
    Ok(covers)
}

/// The image `Z` of the centre generated by the distinguished element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterData {
    pub z: Permutation,
    pub order: usize,
    pub block_count: usize,
}

pub fn center_subgroup(c: &GermCover) -> Result<CenterData> {
    let a = c.assignment()?;
    if c.singularity == SingularityType::a(0) {
        return Ok(CenterData {
            z: Permutation::identity(c.degree),
            order: 1,
            block_count: c.degree,
        });
    }
    let words = distinguished_words(c.singularity)?;
    let z = evaluate_word(&words.e_word, &a)?;
    if !is_central(&z, a.images())? {
        return Err(Error::CentralityViolated);
    }
    if !is_semiregular(&z) {
        return Err(Error::NotSemiregular);
    }
    let order = z.order();
    Ok(CenterData {
        block_count: c.degree / order,
        order,
        z,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum BetaDescriptor {
    /// `x ↦ x^k`. The flag is set when the monodromy group is not the full
    /// product of the cyclic groups generated by the two branch images.
    PowerMap {
        k: usize,
        group_order_mismatch: bool,
    },
    Triple {
        triple: BelyiTriple,
        genus: usize,
    },
}

impl BetaDescriptor {
    pub fn degree(&self) -> usize {
        match self {
            BetaDescriptor::PowerMap { k, .. } => *k,
            BetaDescriptor::Triple { triple, .. } => triple.degree(),
        }
    }
}

/// The Belyi function of the exceptional curve upstairs, as a permutation
/// triple: the actions of the three neighbours of the distinguished vertex
/// on the orbits of its central image. For A0 and A1 the answer is a power
/// map. With `strict`, a positive genus is an error.
pub fn beta(c: &GermCover, strict: bool) -> Result<BetaDescriptor> {
    let a = c.assignment()?;
    let t = c.singularity;
    if t == SingularityType::a(0) {
        return Ok(BetaDescriptor::PowerMap {
            k: 1,
            group_order_mismatch: false,
        });
    }
    if t == SingularityType::a(1) {
        let (b1, b2) = (&a.images()[0], &a.images()[1]);
        let (n1, n2) = (b1.order(), b2.order());
        let group = group_elements(c.degree, a.images(), DEFAULT_GROUP_CAP)?;
        return Ok(BetaDescriptor::PowerMap {
            k: gcd(n1, n2),
            group_order_mismatch: group.len() != n1 * n2,
        });
    }
    let (_, taus) = block_triple(c, &a)?;
    let [t1, t2, _] = taus;
    let triple = BelyiTriple::new(t1, t2)?;
    let g = genus(&triple)?;
    if strict && g > 0 {
        return Err(Error::NonZeroGenus { genus: g });
    }
    Ok(BetaDescriptor::Triple { triple, genus: g })
}

fn gamma_images(c: &GermCover, a: &Assignment) -> Result<Option<[Permutation; 3]>> {
    let words = distinguished_words(c.singularity)?;
    let Some(gamma) = words.gamma_triple else {
        return Ok(None);
    };
    let [g1, g2, g3] = gamma;
    Ok(Some([
        evaluate_word(&g1, a)?,
        evaluate_word(&g2, a)?,
        evaluate_word(&g3, a)?,
    ]))
}

fn block_triple(
    c: &GermCover,
    a: &Assignment,
) -> Result<(crate::perm::BlockSystem, [Permutation; 3])> {
    let center = center_subgroup(c)?;
    let bs = blocks_from_central(&center.z)?;
    let gammas = gamma_images(c, a)?.expect("types past A1 have three neighbours");
    let [g1, g2, g3] = gammas;
    Ok((
        bs.clone(),
        [
            action_on_blocks(&g1, &bs)?,
            action_on_blocks(&g2, &bs)?,
            action_on_blocks(&g3, &bs)?,
        ],
    ))
}

/// A D4 cover of degree `n²` with centre of order `n` whose exceptional
/// curve realises the given genus-0 Belyi triple. Sheets `(i, k)` with
/// `i ∈ 1..=n`, `k ∈ ℤ/n` are numbered `k·n + i`; `b1` carries the shift in
/// `k`.
pub fn construct_d4_from_belyi(t: &BelyiTriple) -> Result<GermCover> {
    if !t.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if classify(t) != BelyiClass::Bel3 {
        return Err(Error::NotBel3);
    }
    let g = genus(t)?;
    if g != 0 {
        return Err(Error::NotGenusZero { genus: g });
    }
    let n = t.degree();
    let sheet = |i: usize, k: usize| (k % n) * n + i;
    let lift = |f: &dyn Fn(usize) -> usize, shift: usize| -> Permutation {
        let mut images = vec![0u32; n * n];
        for k in 0..n {
            for i in 1..=n {
                images[sheet(i, k) - 1] = sheet(f(i), k + shift) as u32;
            }
        }
        Permutation::from_images(&images).expect("a bijection of the sheets")
    };
    let s_inf_inv = t.sigma_inf().inverse();
    let b1 = lift(&|i| t.sigma0().apply(i), 1);
    let b2 = lift(&|i| t.sigma1().apply(i), 0);
    let b3 = lift(&|i| s_inf_inv.apply(i), 0);
    Ok(GermCover {
        singularity: SingularityType::d(4)?,
        degree: n * n,
        images: BTreeMap::from([("b1".into(), b1), ("b2".into(), b2), ("b3".into(), b3)]),
        meta: BTreeMap::from([
            ("construction".into(), "d4-from-belyi".into()),
            ("cocycle".into(), "shift-on-b1".into()),
        ]),
    })
}

/// The individual structural checks run on a cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// The image of `e` commutes with every generator image.
    Central,
    Semiregular,
    /// `|Z| · d₁ = d`.
    CenterDividesDegree,
    /// `γ₁γ₂γ₃` evaluates to the image of `e`.
    GammaProductIsE,
    /// `e` and the `γ`s generate the whole monodromy group.
    GeneratedByEAndGamma,
    BlockProductIdentity,
    BlockTransitive,
    BetaDegreeDivides,
    /// The action on blocks (or the map onto `ℤ/k`) is a well-defined
    /// homomorphism on the monodromy group.
    BetaHomomorphism,
    BetaSurjective,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Central,
        Check::Semiregular,
        Check::CenterDividesDegree,
        Check::GammaProductIsE,
        Check::GeneratedByEAndGamma,
        Check::BlockProductIdentity,
        Check::BlockTransitive,
        Check::BetaDegreeDivides,
        Check::BetaHomomorphism,
        Check::BetaSurjective,
    ];

    pub const BETA: [Check; 3] = [
        Check::BetaDegreeDivides,
        Check::BetaHomomorphism,
        Check::BetaSurjective,
    ];
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Check::Central => "central",
            Check::Semiregular => "semiregular",
            Check::CenterDividesDegree => "center-divides-degree",
            Check::GammaProductIsE => "gamma-product-is-e",
            Check::GeneratedByEAndGamma => "generated-by-e-and-gamma",
            Check::BlockProductIdentity => "block-product-identity",
            Check::BlockTransitive => "block-transitive",
            Check::BetaDegreeDivides => "beta-degree-divides",
            Check::BetaHomomorphism => "beta-homomorphism",
            Check::BetaSurjective => "beta-surjective",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoverChecks {
    pub failed: Vec<Check>,
    /// Checks that do not apply to the type (no distinguished element, or
    /// no neighbouring triple).
    pub not_applicable: Vec<Check>,
    /// Homomorphism checks abandoned because the group exceeded the cap.
    pub skipped: Vec<Check>,
}

impl CoverChecks {
    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }
}

/// Runs every [`Check`] on a valid cover.
pub fn check_cover(c: &GermCover) -> Result<CoverChecks> {
    check_cover_with_cap(c, DEFAULT_GROUP_CAP)
}

pub fn check_cover_with_cap(c: &GermCover, cap: usize) -> Result<CoverChecks> {
    let a = c.assignment()?;
    let d = c.degree;
    let gens = a.images();
    let mut out = CoverChecks::default();
    let mut record = |check: Check, ok: bool| {
        if !ok {
            out.failed.push(check);
        }
    };

    let t = c.singularity;
    if t == SingularityType::a(0) {
        // Trivial centre, β the identity: everything beyond is vacuous.
        out.not_applicable = vec![
            Check::Central,
            Check::Semiregular,
            Check::GammaProductIsE,
            Check::GeneratedByEAndGamma,
            Check::BlockProductIdentity,
            Check::BlockTransitive,
        ];
        return Ok(out);
    }

    let e = distinguished_words(t)?.e_word;
    let z = evaluate_word(&e, &a)?;
    let central = is_central(&z, gens)?;
    let semiregular = is_semiregular(&z);
    record(Check::Central, central);
    record(Check::Semiregular, semiregular);
    record(
        Check::CenterDividesDegree,
        semiregular && d.is_multiple_of(z.order()),
    );

    let mut skipped = Vec::new();
    let mut not_applicable = Vec::new();

    if t.family() == Family::A && t.index() == 1 {
        not_applicable.extend([
            Check::GammaProductIsE,
            Check::GeneratedByEAndGamma,
            Check::BlockProductIdentity,
            Check::BlockTransitive,
        ]);
        let k = match beta(c, false)? {
            BetaDescriptor::PowerMap { k, .. } => k,
            BetaDescriptor::Triple { .. } => unreachable!("A1 gives a power map"),
        };
        record(Check::BetaDegreeDivides, d.is_multiple_of(k));
        match surjects_onto_cyclic(gens, k, cap) {
            Ok(ok) => {
                record(Check::BetaHomomorphism, ok);
                record(Check::BetaSurjective, ok);
            }
            Err(Error::GroupTooLarge { .. }) => {
                skipped.extend([Check::BetaHomomorphism, Check::BetaSurjective])
            }
            Err(e) => return Err(e),
        }
    } else {
        let gammas = gamma_images(c, &a)?.expect("three neighbours");
        let product = gammas[0].then(&gammas[1]).then(&gammas[2]);
        record(Check::GammaProductIsE, product == z);

        let mut small: Vec<Permutation> = vec![z.clone()];
        small.extend(gammas.iter().cloned());
        match (group_elements(d, &small, cap), group_elements(d, gens, cap)) {
            (Ok(h), Ok(g)) => record(Check::GeneratedByEAndGamma, h == g),
            _ => skipped.push(Check::GeneratedByEAndGamma),
        }

        if !(central && semiregular) {
            for check in [
                Check::BlockProductIdentity,
                Check::BlockTransitive,
                Check::BetaDegreeDivides,
                Check::BetaHomomorphism,
                Check::BetaSurjective,
            ] {
                record(check, false);
            }
        } else {
            let bs = blocks_from_central(&z)?;
            let taus: Vec<Permutation> = gammas
                .iter()
                .map(|g| action_on_blocks(g, &bs))
                .collect::<Result<_>>()?;
            let d1 = bs.len();
            record(
                Check::BlockProductIdentity,
                taus[0].then(&taus[1]).then(&taus[2]).is_identity(),
            );
            record(Check::BlockTransitive, is_transitive(d1, &taus[..2])?);
            record(Check::BetaDegreeDivides, d.is_multiple_of(d1));

            let block_gens: Vec<Permutation> = gens
                .iter()
                .map(|g| action_on_blocks(g, &bs))
                .collect::<Result<_>>()?;
            match extends_to_homomorphism(gens, &block_gens, cap) {
                Ok(ok) => record(Check::BetaHomomorphism, ok),
                Err(Error::GroupTooLarge { .. }) => skipped.push(Check::BetaHomomorphism),
                Err(e) => return Err(e),
            }
            let image = group_elements(d1, &block_gens, cap)?;
            let target = group_elements(d1, &taus[..2], cap)?;
            record(Check::BetaSurjective, image == target);
        }
    }
    out.skipped = skipped;
    out.not_applicable = not_applicable;
    Ok(out)
}

/// Whether `src[i] ↦ tgt[i]` extends to a homomorphism `⟨src⟩ → ⟨tgt⟩`:
/// walk the group generated by `src`, carrying the target along, and look
/// for an element reached with two different targets.
pub fn extends_to_homomorphism(
    src: &[Permutation],
    tgt: &[Permutation],
    cap: usize,
) -> Result<bool> {
    if src.len() != tgt.len() {
        return Err(Error::DegreeMismatch {
            expected: src.len(),
            found: tgt.len(),
        });
    }
    let (Some(s0), Some(t0)) = (src.first(), tgt.first()) else {
        return Ok(true);
    };
    let start = (
        Permutation::identity(s0.degree()),
        Permutation::identity(t0.degree()),
    );
    let mut seen: HashMap<Permutation, Permutation> = HashMap::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((x, y)) = queue.pop_front() {
        for (s, t) in src.iter().zip(tgt) {
            let (x2, y2) = (x.then(s), y.then(t));
            match seen.get(&x2) {
                Some(prev) if *prev != y2 => return Ok(false),
                Some(_) => {}
                None => {
                    if seen.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    seen.insert(x2.clone(), y2.clone());
                    queue.push_back((x2, y2));
                }
            }
        }
    }
    Ok(true)
}

/// Whether `⟨gens⟩` has a homomorphism onto `ℤ/k`.
fn surjects_onto_cyclic(gens: &[Permutation], k: usize, cap: usize) -> Result<bool> {
    let cycle = crate::dessin::power_map(k).sigma0().clone();
    let powers: Vec<Permutation> = (0..k as i64).map(|i| cycle.pow(i)).collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let exps: BTreeSet<usize> = choice.iter().copied().collect();
        // Onto iff the chosen exponents generate ℤ/k.
        let onto = exps.iter().fold(k, |g, &e| gcd(g, e)) == 1;
        if onto {
            let tgt: Vec<Permutation> = choice.iter().map(|&e| powers[e].clone()).collect();
            if extends_to_homomorphism(gens, &tgt, cap)? {
                return Ok(true);
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(false);
            }
            choice[i] += 1;
            if choice[i] < k {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverFailure {
    pub cover: GermCover,
    pub failed: Vec<Check>,
}

/// Outcome of a family of checks over every cover of one type and degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub singularity: SingularityType,
    pub degree: usize,
    pub covers: usize,
    pub checks: Vec<Check>,
    pub failures: Vec<CoverFailure>,
    pub skipped: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `checks` on every enumerated cover of type `t` and degree `d`.
pub fn verify_covers(t: SingularityType, d: usize, checks: &[Check]) -> Result<SuiteReport> {
    let covers = enumerate_covers(t, d, false)?;
    let wanted: HashSet<Check> = checks.iter().copied().collect();
    let mut failures = Vec::new();
    let mut skipped = 0;
    for c in &covers {
        let r = check_cover(c)?;
        let failed: Vec<Check> = r
            .failed
            .into_iter()
            .filter(|x| wanted.contains(x))
            .collect();
        skipped += r.skipped.iter().filter(|x| wanted.contains(x)).count();
        if !failed.is_empty() {
            failures.push(CoverFailure {
                cover: c.clone(),
                failed,
            });
        }
    }
    Ok(SuiteReport {
        singularity: t,
        degree: d,
        covers: covers.len(),
        checks: checks.to_vec(),
        failures,
        skipped,
    })
}

/// The degree of β divides `d`, and β induces an epimorphism of monodromy
/// groups, for every cover of type `t` and degree `d`.
pub fn verify_theorem2(t: SingularityType, d: usize) -> Result<SuiteReport> {
    verify_covers(t, d, &Check::BETA)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dessin::power_map;

    fn p(d: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    fn ty(s: &str) -> SingularityType {
        s.parse().unwrap()
    }

    fn cover(t: &str, d: usize, images: &[(&str, Permutation)]) -> GermCover {
        GermCover {
            singularity: ty(t),
            degree: d,
            images: images
                .iter()
                .map(|(g, p)| (g.to_string(), p.clone()))
                .collect(),
            meta: BTreeMap::new(),
        }
    }

    fn d4_rational() -> GermCover {
        cover(
            "D4",
            3,
            &[
                ("b1", p(3, &[&[1, 2]])),
                ("b2", p(3, &[&[1, 3]])),
                ("b3", p(3, &[&[1, 3, 2]])),
            ],
        )
    }

    fn d4_elliptic() -> GermCover {
        let c = p(3, &[&[1, 2, 3]]);
        cover("D4", 3, &[("b1", c.clone()), ("b2", c.clone()), ("b3", c)])
    }

    #[test]
    fn validation_examples() {
        assert!(validate_cover(&d4_rational()).is_valid());
        let bad = cover(
            "D4",
            2,
            &[
                ("b1", p(2, &[&[1, 2]])),
                ("b2", p(2, &[&[1, 2]])),
                ("b3", Permutation::identity(2)),
            ],
        );
        assert_eq!(
            validate_cover(&bad).defects,
            [Defect::TrivialBranch {
                generator: "b3".into()
            }]
        );
        let a1 = cover(
            "A1",
            2,
            &[("b1", p(2, &[&[1, 2]])), ("b2", p(2, &[&[1, 2]]))],
        );
        assert!(validate_cover(&a1).is_valid());
    }

    #[test]
    fn validation_reports_shape_problems() {
        let c = cover("A1", 2, &[("b1", p(2, &[&[1, 2]])), ("x", p(3, &[]))]);
        let defects = validate_cover(&c).defects;
        assert!(defects.contains(&Defect::MissingGenerator {
            generator: "b2".into()
        }));
        assert!(defects.contains(&Defect::UnknownGenerator {
            generator: "x".into()
        }));
        let c = cover(
            "A1",
            3,
            &[("b1", p(3, &[&[1, 2]])), ("b2", p(3, &[&[1, 3]]))],
        );
        assert!(matches!(
            validate_cover(&c).defects[0],
            Defect::RelatorFails { .. }
        ));
        let c = cover(
            "A1",
            3,
            &[("b1", p(3, &[&[1, 2]])), ("b2", p(3, &[&[1, 2]]))],
        );
        assert_eq!(validate_cover(&c).defects, [Defect::NotTransitive]);
    }

    #[test]
    fn known_enumerations() {
        let a1 = enumerate_covers(ty("A1"), 2, false).unwrap();
        assert_eq!(a1.len(), 1);
        assert_eq!(a1[0].images["b1"], p(2, &[&[1, 2]]));
        assert_eq!(a1[0].images["b2"], p(2, &[&[1, 2]]));

        let d4 = enumerate_covers(ty("D4"), 3, false).unwrap();
        assert_eq!(d4.len(), 7);
        let canon = |c: &GermCover| {
            let imgs: Vec<_> = c.images.values().cloned().collect();
            crate::perm::canonical_tuple(&imgs).unwrap()
        };
        let all: Vec<_> = d4.iter().map(canon).collect();
        assert!(all.contains(&canon(&d4_rational())));
        assert!(all.contains(&canon(&d4_elliptic())));

        let rational: Vec<_> = enumerate_covers(ty("D4"), 3, true)
            .unwrap()
            .iter()
            .map(canon)
            .collect();
        assert_eq!(rational.len(), 6);
        assert!(!rational.contains(&canon(&d4_elliptic())));
    }

    #[test]
    fn a0_has_one_class_per_degree() {
        for d in 1..=6 {
            let covers = enumerate_covers(ty("A0"), d, false).unwrap();
            assert_eq!(covers.len(), 1, "d = {d}");
            assert_eq!(covers[0].images["b1"].cycle_type().parts, [d]);
        }
    }

    #[test]
    fn degree_bound() {
        assert!(matches!(
            enumerate_covers(ty("D4"), 8, false),
            Err(Error::DegreeTooLargeForCanonicalization { .. })
        ));
    }

    #[test]
    fn centers() {
        let c = center_subgroup(&d4_rational()).unwrap();
        assert!(c.z.is_identity());
        assert_eq!((c.order, c.block_count), (1, 3));

        let a3 = cover(
            "A3",
            4,
            &[
                ("b1", p(4, &[&[1, 2, 3, 4]])),
                ("b2", p(4, &[&[4, 3, 2, 1]])),
                ("e3", Permutation::identity(4)),
            ],
        );
        let c = center_subgroup(&a3).unwrap();
        assert_eq!(c.order, 1);

        let a0 = cover("A0", 3, &[("b1", p(3, &[&[1, 2, 3]]))]);
        assert_eq!(center_subgroup(&a0).unwrap().block_count, 3);
    }

    #[test]
    fn beta_examples() {
        let r = beta(&d4_rational(), true).unwrap();
        assert_eq!(
            r,
            BetaDescriptor::Triple {
                triple: BelyiTriple::new(p(3, &[&[1, 2]]), p(3, &[&[1, 3]])).unwrap(),
                genus: 0
            }
        );
        let e = beta(&d4_elliptic(), false).unwrap();
        let c = p(3, &[&[1, 2, 3]]);
        assert_eq!(
            e,
            BetaDescriptor::Triple {
                triple: BelyiTriple::new(c.clone(), c).unwrap(),
                genus: 1
            }
        );
        assert_eq!(
            beta(&d4_elliptic(), true),
            Err(Error::NonZeroGenus { genus: 1 })
        );

        let a1 = cover(
            "A1",
            2,
            &[("b1", p(2, &[&[1, 2]])), ("b2", p(2, &[&[1, 2]]))],
        );
        assert_eq!(
            beta(&a1, true).unwrap(),
            BetaDescriptor::PowerMap {
                k: 2,
                group_order_mismatch: true
            }
        );
        let a0 = cover("A0", 2, &[("b1", p(2, &[&[1, 2]]))]);
        assert_eq!(beta(&a0, true).unwrap().degree(), 1);
    }

    #[test]
    fn beta_rejects_invalid_covers() {
        let bad = cover("D4", 3, &[("b1", p(3, &[&[1, 2]]))]);
        assert!(matches!(beta(&bad, false), Err(Error::InvalidCover(_))));
    }

    #[test]
    fn d4_construction() {
        let t = BelyiTriple::new(p(3, &[&[1, 2]]), p(3, &[&[1, 3]])).unwrap();
        let c = construct_d4_from_belyi(&t).unwrap();
        assert_eq!(c.degree, 9);
        assert!(validate_cover(&c).is_valid());
        let z = center_subgroup(&c).unwrap();
        assert_eq!((z.order, z.block_count), (3, 3));
        // The centre is the shift (i, k) ↦ (i, k + 1).
        let shift: Vec<u32> = (1..=9).map(|x| ((x - 1 + 3) % 9) + 1).collect();
        assert_eq!(z.z, Permutation::from_images(&shift).unwrap());
        match beta(&c, true).unwrap() {
            BetaDescriptor::Triple { triple, genus } => {
                assert_eq!(genus, 0);
                assert_eq!(triple, t);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(check_cover(&c).unwrap().passed());
    }

    #[test]
    fn d4_construction_preconditions() {
        assert_eq!(construct_d4_from_belyi(&power_map(3)), Err(Error::NotBel3));
        let c = p(3, &[&[1, 2, 3]]);
        let elliptic = BelyiTriple::new(c.clone(), c).unwrap();
        assert_eq!(
            construct_d4_from_belyi(&elliptic),
            Err(Error::NotGenusZero { genus: 1 })
        );
        let split = BelyiTriple::new(p(3, &[&[1, 2]]), p(3, &[&[1, 2]])).unwrap();
        assert_eq!(construct_d4_from_belyi(&split), Err(Error::NotTransitive));
    }

    #[test]
    fn full_suite_small_cases() {
        assert!(verify_theorem2(ty("D4"), 3).unwrap().passed());
        let a1 = verify_theorem2(ty("A1"), 2).unwrap();
        assert!(a1.passed());
        assert_eq!(a1.covers, 1);
        assert!(verify_theorem2(ty("A0"), 5).unwrap().passed());
    }

    #[test]
    fn homomorphism_extension() {
        let c = p(3, &[&[1, 2, 3]]);
        let t = p(2, &[&[1, 2]]);
        // ℤ/3 has no nontrivial map to ℤ/2.
        assert!(
            !extends_to_homomorphism(std::slice::from_ref(&c), std::slice::from_ref(&t), 100)
                .unwrap()
        );
        assert!(extends_to_homomorphism(&[c], &[Permutation::identity(2)], 100).unwrap());
        // Sign map on S3.
        let s = [p(3, &[&[1, 2]]), p(3, &[&[1, 2, 3]])];
        assert!(extends_to_homomorphism(&s, &[t, Permutation::identity(2)], 100).unwrap());
    }

    #[test]
    fn cover_json_shape() {
        let json = serde_json::to_string(&d4_rational()).unwrap();
        assert_eq!(
            json,
            r#"{"singularity":"D4","degree":3,"images":{"b1":[2,1,3],"b2":[3,2,1],"b3":[3,1,2]}}"#
        );
        let back: GermCover = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d4_rational());
        let json = serde_json::to_string(&beta(&d4_rational(), false).unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"variant":"triple","triple":{"degree":3,"sigma0":[2,1,3],"sigma1":[3,2,1]},"genus":0}"#
        );
    }
}
