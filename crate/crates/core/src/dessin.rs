//! Belyi functions as permutation triples `(σ₀, σ₁, σ∞)` with `σ₀σ₁ = σ∞`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{
    all_permutations, canonical_tuple, conjugacy_class_representatives, is_transitive, CycleType,
    Permutation, MAX_CANONICAL_DEGREE,
};

/// Largest degree [`enumerate_belyi`] accepts.
pub const MAX_BELYI_DEGREE: usize = 6;

/// A pair `(σ₀, σ₁)` of permutations of one degree. `σ∞` is derived.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTriple")]
pub struct BelyiTriple {
    degree: usize,
    sigma0: Permutation,
    sigma1: Permutation,
}

#[derive(Deserialize)]
struct RawTriple {
    degree: usize,
    sigma0: Permutation,
    sigma1: Permutation,
}

impl TryFrom<RawTriple> for BelyiTriple {
    type Error = Error;

    fn try_from(raw: RawTriple) -> Result<Self> {
        let t = Self::new(raw.sigma0, raw.sigma1)?;
        if t.degree != raw.degree {
            return Err(Error::DegreeMismatch {
                expected: raw.degree,
                found: t.degree,
            });
        }
        Ok(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BelyiClass {
    Bel2,
    Bel3,
}

impl BelyiTriple {
    pub fn new(sigma0: Permutation, sigma1: Permutation) -> Result<Self> {
        if sigma0.degree() != sigma1.degree() {
            return Err(Error::DegreeMismatch {
                expected: sigma0.degree(),
                found: sigma1.degree(),
            });
        }
        Ok(Self {
            degree: sigma0.degree(),
            sigma0,
            sigma1,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn sigma0(&self) -> &Permutation {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    /// `σ₀` followed by `σ₁`.
    pub fn sigma_inf(&self) -> Permutation {
        self.sigma0.then(&self.sigma1)
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(self.degree, &[self.sigma0.clone(), self.sigma1.clone()])
            .expect("degrees agree by construction")
    }

    pub fn cycle_types(&self) -> [CycleType; 3] {
        [
            self.sigma0.cycle_type(),
            self.sigma1.cycle_type(),
            self.sigma_inf().cycle_type(),
        ]
    }

    pub fn genus(&self) -> Result<usize> {
        genus(self)
    }

    pub fn classify(&self) -> BelyiClass {
        classify(self)
    }

    /// The pair in canonical form, as another triple.
    pub fn canonical(&self) -> Result<Self> {
        let c = canonical_tuple(&[self.sigma0.clone(), self.sigma1.clone()])?;
        let [s0, s1]: [Permutation; 2] = c.try_into().expect("two in, two out");
        Self::new(s0, s1)
    }
}

/// Genus from the Riemann–Hurwitz count `2 − 2g = k₀ + k₁ + k∞ − n`.
pub fn genus(t: &BelyiTriple) -> Result<usize> {
    if !t.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let k: usize = t.cycle_types().iter().map(CycleType::count).sum();
    let euler = k as i64 - t.degree as i64;
    debug_assert!(euler <= 2 && euler % 2 == 0);
    Ok(((2 - euler) / 2) as usize)
}

pub fn classify(t: &BelyiTriple) -> BelyiClass {
    if t.sigma0.is_identity() || t.sigma1.is_identity() || t.sigma_inf().is_identity() {
        BelyiClass::Bel2
    } else {
        BelyiClass::Bel3
    }
}

pub fn equivalent(t1: &BelyiTriple, t2: &BelyiTriple) -> Result<bool> {
    if t1.degree != t2.degree {
        return Err(Error::DegreeMismatch {
            expected: t1.degree,
            found: t2.degree,
        });
    }
    Ok(t1.canonical()? == t2.canonical()?)
}

/// The Bel₂ triple of `x ↦ x^k`: a `k`-cycle over 0 and nothing over 1.
pub fn power_map(k: usize) -> BelyiTriple {
    assert!(k >= 1, "power map needs a positive exponent");
    let images: Vec<u32> = (2..=k as u32).chain(std::iter::once(1)).collect();
    let sigma0 = Permutation::from_images(&images).expect("a k-cycle");
    BelyiTriple::new(sigma0, Permutation::identity(k)).expect("same degree")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DessinClass {
    pub canonical: BelyiTriple,
    pub genus: usize,
    pub cycle_types: [CycleType; 3],
}

/// One class per simultaneous-conjugacy class of transitive pairs of degree
/// `n`, sorted by canonical form.
pub fn enumerate_belyi(n: usize, genus0_only: bool, strict_bel3: bool) -> Result<Vec<DessinClass>> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if n > MAX_BELYI_DEGREE.min(MAX_CANONICAL_DEGREE) {
        return Err(Error::DegreeTooLargeForCanonicalization {
            degree: n,
            max: MAX_BELYI_DEGREE,
        });
    }
    let sym = all_permutations(n);
    let found: BTreeSet<BelyiTriple> = conjugacy_class_representatives(n)
        .into_par_iter()
        .flat_map_iter(|s0| {
            sym.iter()
                .filter_map(|s1| {
                    let t = BelyiTriple::new(s0.clone(), s1.clone()).ok()?;
                    t.is_transitive()
                        .then(|| t.canonical().expect("n checked above"))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(found
        .into_iter()
        .map(|t| DessinClass {
            genus: genus(&t).expect("transitive"),
            cycle_types: t.cycle_types(),
            canonical: t,
        })
        .filter(|c| !genus0_only || c.genus == 0)
        .filter(|c| !strict_bel3 || classify(&c.canonical) == BelyiClass::Bel3)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    fn t(d: usize, a: &[&[u32]], b: &[&[u32]]) -> BelyiTriple {
        BelyiTriple::new(p(d, a), p(d, b)).unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&t(3, &[&[1, 2]], &[&[1, 3]])).unwrap(), 0);
        assert_eq!(genus(&t(1, &[], &[])).unwrap(), 0);
        assert_eq!(genus(&t(3, &[&[1, 2, 3]], &[&[1, 2, 3]])).unwrap(), 1);
        assert_eq!(genus(&t(3, &[&[1, 2]], &[])), Err(Error::NotTransitive));
    }

    #[test]
    fn sigma_inf_is_left_to_right() {
        let x = t(3, &[&[1, 2]], &[&[1, 3]]);
        // 1 → 2 → 2, 2 → 1 → 3, 3 → 3 → 1
        assert_eq!(x.sigma_inf(), p(3, &[&[1, 2, 3]]));
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&t(3, &[&[1, 2]], &[&[1, 3]])), BelyiClass::Bel3);
        assert_eq!(classify(&t(4, &[&[1, 2, 3, 4]], &[])), BelyiClass::Bel2);
        assert_eq!(classify(&t(1, &[], &[])), BelyiClass::Bel2);
        assert_eq!(classify(&t(2, &[&[1, 2]], &[&[1, 2]])), BelyiClass::Bel2);
    }

    #[test]
    fn equivalence() {
        let a = t(3, &[&[1, 2]], &[&[1, 3]]);
        assert!(equivalent(&a, &a).unwrap());
        // Conjugating by (2 3) swaps the two transpositions.
        let swapped = t(3, &[&[1, 3]], &[&[1, 2]]);
        assert!(equivalent(&a, &swapped).unwrap());
        let g = p(3, &[&[2, 3]]);
        let conj =
            BelyiTriple::new(a.sigma0().conjugate_by(&g), a.sigma1().conjugate_by(&g)).unwrap();
        assert!(equivalent(&a, &conj).unwrap());
        let other = t(3, &[&[1, 2, 3]], &[&[1, 2, 3]]);
        assert!(!equivalent(&a, &other).unwrap());
        assert!(matches!(
            equivalent(&a, &power_map(2)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn power_maps() {
        assert_eq!(power_map(1), t(1, &[], &[]));
        let x = power_map(3);
        assert_eq!(x.sigma0(), &p(3, &[&[1, 2, 3]]));
        assert_eq!(classify(&x), BelyiClass::Bel2);
        for k in 1..=8 {
            assert_eq!(genus(&power_map(k)).unwrap(), 0);
        }
    }

    #[test]
    fn enumeration_counts() {
        let counts = |genus0, bel3| {
            (1..=5)
                .map(|n| enumerate_belyi(n, genus0, bel3).unwrap().len())
                .collect::<Vec<_>>()
        };
        assert_eq!(counts(false, false), [1, 3, 7, 26, 97]);
        assert_eq!(counts(true, false), [1, 3, 6, 20, 60]);
        assert_eq!(counts(false, true), [0, 0, 4, 23, 94]);
        assert_eq!(counts(true, true), [0, 0, 3, 17, 57]);
    }

    #[test]
    fn enumeration_contains_the_basic_dessin() {
        let classes = enumerate_belyi(3, true, true).unwrap();
        let target = t(3, &[&[1, 2]], &[&[1, 3]]).canonical().unwrap();
        assert!(classes.iter().any(|c| c.canonical == target));
        assert_eq!(
            enumerate_belyi(1, false, false).unwrap()[0].canonical,
            t(1, &[], &[])
        );
        assert!(enumerate_belyi(7, false, false).is_err());
    }

    #[test]
    fn json_shape() {
        let x = t(3, &[&[1, 2]], &[&[1, 3]]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"degree":3,"sigma0":[2,1,3],"sigma1":[3,2,1]}"#);
        let back: BelyiTriple = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<BelyiTriple>(
            r#"{"degree":2,"sigma0":[2,1,3],"sigma1":[3,2,1]}"#
        )
        .is_err());
    }
}
