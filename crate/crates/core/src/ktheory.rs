//! Rational K⁰/KO⁰ model: classes are identified with their Chern-character
//! images in even rational cohomology.  KO classes live in degrees divisible
//! by four (the invariant part of the conjugation action); complexification
//! and realification compose to multiplication by 2 in both orders.

use core::fmt;

use crate::charclass::{ChernData, EvenClass, SwData};
use crate::field::{rat, Field, Rat, F2};
use crate::ring::{CohClass, GradedRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KtheoryError {
    /// A KO-model class had a component outside degrees 4i.
    NotFourPeriodic { degree: usize },
    NotConjInvariant,
}

impl fmt::Display for KtheoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KtheoryError::NotFourPeriodic { degree } => {
                write!(f, "KO-model classes live in degrees 4i; found degree {degree}")
            }
            KtheoryError::NotConjInvariant => {
                write!(f, "class is not fixed by the conjugation action")
            }
        }
    }
}

/// Rational complex K-class in the character model: any even-degree class.
pub type KClass = EvenClass;

/// Rational KO-class in the character model: supported in degrees 4i only.
#[derive(Debug, Clone, PartialEq)]
pub struct KoClass {
    inner: EvenClass,
}

impl KoClass {
    pub fn new(c: EvenClass) -> Result<Self, KtheoryError> {
        if let Some(d) = c.as_class().support().iter().find(|d| *d % 4 != 0) {
            return Err(KtheoryError::NotFourPeriodic { degree: *d });
        }
        Ok(KoClass { inner: c })
    }

    pub fn zero(ring: &GradedRing<Rat>) -> Self {
        KoClass {
            inner: EvenClass::zero(ring),
        }
    }

    pub fn ring(&self) -> &GradedRing<Rat> {
        self.inner.ring()
    }

    /// The character value (degree-4i components).
    pub fn character(&self) -> &EvenClass {
        &self.inner
    }

    /// Degree-`4i` component as a class.
    pub fn component(&self, i: usize) -> CohClass<Rat> {
        self.inner.as_class().extract(4 * i)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        KoClass {
            inner: self.inner.add(&other.inner),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        KoClass {
            inner: self.inner.scale(c),
        }
    }
}

impl fmt::Display for KoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

/// Complexification: the 4i-components included into the even grading.
pub fn complexify(kappa: &KoClass) -> KClass {
    kappa.inner.clone()
}

/// The conjugation involution on character values: negate degree-2i
/// components with i odd.
pub fn conj_action(y: &KClass) -> KClass {
    y.bar()
}

/// Realification, defined on conjugation-invariant classes only: regroup the
/// 4i-components, multiplied by 2, so that both composites with `complexify`
/// are multiplication by 2.  Errors on non-invariant input.
pub fn realify_invariant(y: &KClass) -> Result<KoClass, KtheoryError> {
    if conj_action(y) != *y {
        return Err(KtheoryError::NotConjInvariant);
    }
    // invariance over Q forces the support into degrees 4i
    KoClass::new(y.scale(&rat(2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionTarget {
    Su,
    So,
    Spin,
}

impl fmt::Display for ReductionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionTarget::Su => write!(f, "SU"),
            ReductionTarget::So => write!(f, "SO"),
            ReductionTarget::Spin => write!(f, "Spin"),
        }
    }
}

/// Outcome of a structure-group reduction test.  The verdict is true exactly
/// when the witness (the obstruction class that was checked) vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport<F: Field> {
    pub target: ReductionTarget,
    pub verdict: bool,
    pub witness: CohClass<F>,
}

/// A unitary bundle reduces to determinant one iff its first Chern class
/// vanishes.
pub fn su_reducible(phi: &ChernData) -> ReductionReport<Rat> {
    let c1 = phi.class(1);
    ReductionReport {
        target: ReductionTarget::Su,
        verdict: c1.is_zero(),
        witness: c1,
    }
}

/// Orientation and spin criteria: SO needs `w1 = 0`; Spin needs `w1 = 0` and
/// `w2 = 0`.  The Spin witness is the combined obstruction `w1 + w2`.
pub fn so_spin_reducible(w: &SwData) -> (ReductionReport<F2>, ReductionReport<F2>) {
    let w1 = w.w1();
    let w2 = w.w2();
    let so = ReductionReport {
        target: ReductionTarget::So,
        verdict: w1.is_zero(),
        witness: w1.clone(),
    };
    let spin_witness = w1.add(&w2);
    let spin = ReductionReport {
        target: ReductionTarget::Spin,
        verdict: spin_witness.is_zero(),
        witness: spin_witness,
    };
    (so, spin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charclass::{realize_single_class_su, whitney_sum_sw};
    use crate::field::ratio;
    use crate::ring::{make_ring, smash_with_sphere, RingSpec};
    use alloc::string::ToString;
    use alloc::vec;

    fn poly_ring(top: usize) -> GradedRing<Rat> {
        make_ring(&RingSpec {
            top_degree: top,
            generators: vec![("t".to_string(), 2)],
            relations: vec![],
        })
        .unwrap()
    }

    #[test]
    fn ko_support_is_checked() {
        let ring = poly_ring(6);
        let t = ring.basis_class(2, 0).unwrap();
        let bad = EvenClass::new(t.clone()).unwrap();
        assert_eq!(
            KoClass::new(bad).unwrap_err(),
            KtheoryError::NotFourPeriodic { degree: 2 }
        );
        let good = EvenClass::new(t.pow(2)).unwrap();
        assert!(KoClass::new(good).is_ok());
    }

    #[test]
    fn conj_action_matches_displayed_formula() {
        let ring = poly_ring(4);
        let t = ring.basis_class(2, 0).unwrap();
        let y = EvenClass::from_components(&ring, [(1, t.clone()), (2, t.pow(2))]).unwrap();
        let z = conj_action(&y);
        assert_eq!(z.component(1), t.scale(&rat(-1)));
        assert_eq!(z.component(2), t.pow(2));
        assert_eq!(conj_action(&z), y);
    }

    #[test]
    fn fixed_classes_live_in_degrees_four_i() {
        let ring = poly_ring(8);
        let t = ring.basis_class(2, 0).unwrap();
        let invariant = EvenClass::from_components(
            &ring,
            [(2, t.pow(2)), (4, t.pow(4).scale(&ratio(3, 7)))],
        )
        .unwrap();
        assert_eq!(conj_action(&invariant), invariant);
        let moved = EvenClass::new(t.clone()).unwrap();
        assert_ne!(conj_action(&moved), moved);
    }

    #[test]
    fn two_divisibility_identities() {
        let ring = poly_ring(8);
        let t = ring.basis_class(2, 0).unwrap();
        let kappa = KoClass::new(
            EvenClass::from_components(&ring, [(2, t.pow(2).scale(&ratio(5, 2)))]).unwrap(),
        )
        .unwrap();
        // r'(c(κ)) = 2κ
        let round = realify_invariant(&complexify(&kappa)).unwrap();
        assert_eq!(round, kappa.scale(&rat(2)));
        // c(r'(y)) = 2y on an invariant class
        let y = complexify(&kappa);
        assert_eq!(complexify(&realify_invariant(&y).unwrap()), y.scale(&rat(2)));
        // zero round-trips to zero
        let zero = KoClass::zero(&ring);
        assert!(realify_invariant(&complexify(&zero)).unwrap().is_zero());
    }

    #[test]
    fn non_invariant_classes_are_rejected() {
        let ring = poly_ring(4);
        let t = ring.basis_class(2, 0).unwrap();
        let y = EvenClass::new(t).unwrap();
        assert_eq!(
            realify_invariant(&y).unwrap_err(),
            KtheoryError::NotConjInvariant
        );
    }

    #[test]
    fn complexify_and_realify_are_additive() {
        let ring = poly_ring(8);
        let t = ring.basis_class(2, 0).unwrap();
        let a = KoClass::new(EvenClass::from_components(&ring, [(2, t.pow(2))]).unwrap()).unwrap();
        let b = KoClass::new(
            EvenClass::from_components(&ring, [(2, t.pow(2).scale(&rat(4)))]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            complexify(&a.add(&b)),
            complexify(&a).add(&complexify(&b))
        );
        let ya = complexify(&a);
        let yb = complexify(&b);
        assert_eq!(
            realify_invariant(&ya.add(&yb)).unwrap(),
            realify_invariant(&ya).unwrap().add(&realify_invariant(&yb).unwrap())
        );
    }

    #[test]
    fn su_reduction_predicate() {
        let ring = poly_ring(4);
        let t = ring.basis_class(2, 0).unwrap();
        let no_c1 = ChernData::new(&ring, 2, [(2, t.pow(2))]).unwrap();
        let r = su_reducible(&no_c1);
        assert!(r.verdict);
        assert!(r.witness.is_zero());
        assert_eq!(r.target, ReductionTarget::Su);
        let with_c1 = ChernData::line(&t).unwrap();
        let r = su_reducible(&with_c1);
        assert!(!r.verdict);
        assert_eq!(r.witness, t);
        // realized determinant-one data always passes
        let sm = smash_with_sphere(&poly_ring(6), 2).unwrap();
        let x = sm.basis_class(4, 0).unwrap();
        let (phi, _) = realize_single_class_su(&x).unwrap();
        assert!(su_reducible(&phi).verdict);
    }

    #[test]
    fn so_spin_reduction_predicate() {
        let ring = make_ring(&RingSpec::<F2> {
            top_degree: 5,
            generators: vec![("a".to_string(), 1)],
            relations: vec![],
        })
        .unwrap();
        let a = ring.basis_class(1, 0).unwrap();
        // w1 = 0, w2 ≠ 0: SO yes, Spin no
        let w = SwData::new(&ring, [(2, a.pow(2))]).unwrap();
        let (so, spin) = so_spin_reducible(&w);
        assert!(so.verdict);
        assert!(!spin.verdict);
        assert_eq!(spin.witness, a.pow(2));
        // w1 ≠ 0: both fail
        let w = SwData::new(&ring, [(1, a.clone())]).unwrap();
        let (so, spin) = so_spin_reducible(&w);
        assert!(!so.verdict);
        assert!(!spin.verdict);
        // four-fold sums always spin-reduce
        let phi = SwData::new(&ring, [(1, a.clone()), (2, a.pow(2))]).unwrap();
        let (_, spin) = so_spin_reducible(&phi.times(4));
        assert!(spin.verdict);
        // spin-reducibility is preserved by sums of spin-reducible data
        let p = SwData::new(&ring, [(3, a.pow(3))]).unwrap();
        let q = SwData::new(&ring, [(4, a.pow(4))]).unwrap();
        let (_, spin) = so_spin_reducible(&whitney_sum_sw(&p, &q).unwrap());
        assert!(spin.verdict);
    }
}
