//! Characteristic-class algebra: Newton polynomials, the Chern character and
//! its inverse, conjugation, Whitney sums, Stiefel–Whitney data and
//! single-class realization in product-free rings.
//!
//! Everything here is exact.  Chern data lives over the rationals,
//! Stiefel–Whitney data over F2.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::field::{factorial, rat, rat_as_i64, Field, Rat, F2};
use crate::ktheory::{complexify, KoClass};
use crate::ring::{CohClass, GradedRing, RingError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharError {
    MismatchedRings,
    /// A `c_i` (or `w_i`) was given outside its required degree.
    WrongDegree { index: usize, expected: usize },
    IndexZero,
    OddComponent { degree: usize },
    NonIntegralRank,
    NotProductFree,
    NotSingleEvenDegree,
    ZeroClass,
    SuNeedsHigherDegree { i: usize },
    KoNeedsQuadrupleDegree { degree: usize },
}

impl fmt::Display for CharError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharError::MismatchedRings => write!(f, "operands lie in different rings"),
            CharError::WrongDegree { index, expected } => {
                write!(f, "class with index {index} must be homogeneous of degree {expected}")
            }
            CharError::IndexZero => write!(f, "index 0 is implicit (the unit) and cannot be set"),
            CharError::OddComponent { degree } => {
                write!(f, "component in odd degree {degree} not allowed here")
            }
            CharError::NonIntegralRank => {
                write!(f, "degree-0 component is not an integer multiple of the unit")
            }
            CharError::NotProductFree => {
                write!(f, "ring has nonzero products of positive-degree classes")
            }
            CharError::NotSingleEvenDegree => {
                write!(f, "class must be nonzero and concentrated in one positive even degree")
            }
            CharError::ZeroClass => write!(f, "class must be nonzero"),
            CharError::SuNeedsHigherDegree { i } => {
                write!(f, "the determinant-one variant needs degree >= 4 (got 2*{i})")
            }
            CharError::KoNeedsQuadrupleDegree { degree } => {
                write!(f, "the real variant needs degree divisible by 4 (got {degree})")
            }
        }
    }
}

impl From<RingError> for CharError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::MismatchedRings => CharError::MismatchedRings,
            // class arithmetic inside one ring cannot hit the other variants
            _ => CharError::MismatchedRings,
        }
    }
}

fn sign(neg: bool) -> Rat {
    if neg {
        rat(-1)
    } else {
        rat(1)
    }
}

fn fact_rat(n: u64) -> Rat {
    BigRational::from_integer(factorial(n))
}

fn inv_fact_rat(n: u64) -> Rat {
    BigRational::new(BigInt::one(), factorial(n))
}

/// Total Chern data of a virtual bundle: a virtual dimension and the classes
/// `c_i` in degree `2i`.  Determinant-one data (`d_i`) uses the same shape
/// with `c_1 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernData {
    ring: GradedRing<Rat>,
    dim: i64,
    classes: BTreeMap<usize, CohClass<Rat>>,
}

impl ChernData {
    pub fn new(
        ring: &GradedRing<Rat>,
        dim: i64,
        classes: impl IntoIterator<Item = (usize, CohClass<Rat>)>,
    ) -> Result<Self, CharError> {
        let mut map = BTreeMap::new();
        for (i, c) in classes {
            if i == 0 {
                return Err(CharError::IndexZero);
            }
            if c.ring() != ring {
                return Err(CharError::MismatchedRings);
            }
            if c.is_zero() {
                continue;
            }
            if c.homogeneous_degree() != Some(2 * i) {
                return Err(CharError::WrongDegree {
                    index: i,
                    expected: 2 * i,
                });
            }
            map.insert(i, c);
        }
        Ok(ChernData {
            ring: ring.clone(),
            dim,
            classes: map,
        })
    }

    pub fn trivial(ring: &GradedRing<Rat>, dim: i64) -> Self {
        ChernData {
            ring: ring.clone(),
            dim,
            classes: BTreeMap::new(),
        }
    }

    /// Line-bundle data: dimension 1, `c_1` the given degree-2 class.
    pub fn line(c1: &CohClass<Rat>) -> Result<Self, CharError> {
        ChernData::new(c1.ring(), 1, [(1, c1.clone())])
    }

    pub fn ring(&self) -> &GradedRing<Rat> {
        &self.ring
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    /// `c_i`, zero when absent.
    pub fn class(&self, i: usize) -> CohClass<Rat> {
        self.classes
            .get(&i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn classes(&self) -> impl Iterator<Item = (usize, &CohClass<Rat>)> {
        self.classes.iter().map(|(i, c)| (*i, c))
    }

    /// Total class `1 + c_1 + c_2 + ...` as one mixed-degree element.
    pub fn total_class(&self) -> CohClass<Rat> {
        let mut acc = self.ring.unit();
        for c in self.classes.values() {
            acc = acc.add(c);
        }
        acc
    }

    fn from_total(ring: &GradedRing<Rat>, dim: i64, total: &CohClass<Rat>) -> Self {
        let mut classes = BTreeMap::new();
        for (d, _) in total.components() {
            if d == 0 {
                continue;
            }
            debug_assert_eq!(d % 2, 0, "total Chern class has even support");
            classes.insert(d / 2, total.extract(d));
        }
        ChernData {
            ring: ring.clone(),
            dim,
            classes,
        }
    }

    /// Whitney sum via the total-class product `c(E⊕F) = c(E)c(F)`.
    pub fn whitney_sum(&self, other: &Self) -> Result<Self, CharError> {
        if self.ring != other.ring {
            return Err(CharError::MismatchedRings);
        }
        let total = self.total_class().cup(&other.total_class())?;
        Ok(ChernData::from_total(
            &self.ring,
            self.dim + other.dim,
            &total,
        ))
    }

    /// `k`-fold Whitney sum of this data with itself.
    pub fn times(&self, k: u32) -> Self {
        let mut acc = ChernData::trivial(&self.ring, 0);
        for _ in 0..k {
            acc = acc.whitney_sum(self).expect("same ring");
        }
        acc
    }
}

/// `c_i ↦ (−1)^i c_i`; the classes of the conjugate bundle.
pub fn conjugate(c: &ChernData) -> ChernData {
    let classes = c
        .classes
        .iter()
        .map(|(i, x)| (*i, x.scale(&sign(i % 2 == 1))))
        .collect();
    ChernData {
        ring: c.ring.clone(),
        dim: c.dim,
        classes,
    }
}

/// Tuples `(r_1, ..., r_k)` with `Σ i·r_i = k`.
fn partition_tuples(k: usize) -> Vec<Vec<u32>> {
    fn rec(part: usize, rem: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if part == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for r in 0..=(rem / part) {
            cur[part - 1] = r as u32;
            rec(part - 1, rem - r * part, cur, out);
        }
        cur[part - 1] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    rec(k, k, &mut cur, &mut out);
    out
}

/// The `k`-th Newton polynomial `s_k` evaluated on Chern data, via the
/// summation formula
/// `s_k = k(−1)^k Σ [(r_1+…+r_k−1)!/(r_1!…r_k!)] Π (−c_i)^{r_i}`
/// over tuples with `Σ i·r_i = k`.  Truncation may force the result to zero.
pub fn newton_polynomial(k: usize, c: &ChernData) -> CohClass<Rat> {
    assert!(k >= 1, "newton_polynomial needs k >= 1");
    let ring = c.ring();
    let mut acc = ring.zero();
    if 2 * k > ring.top_degree() {
        return acc;
    }
    'tuples: for r in partition_tuples(k) {
        let total_r: u64 = r.iter().map(|x| u64::from(*x)).sum();
        let mut class = ring.unit();
        for (idx, ri) in r.iter().enumerate() {
            if *ri == 0 {
                continue;
            }
            let ci = c.class(idx + 1);
            if ci.is_zero() {
                continue 'tuples;
            }
            class = class.cup(&ci.pow(*ri)).expect("same ring");
            if class.is_zero() {
                continue 'tuples;
            }
        }
        // k · (−1)^k · (−1)^{Σr} · (Σr−1)! / Π r_i!
        let mut coeff = rat(k as i64)
            .mul(&sign((k as u64 + total_r) % 2 == 1))
            .mul(&fact_rat(total_r - 1));
        for ri in &r {
            coeff = coeff.mul(&inv_fact_rat(u64::from(*ri)));
        }
        acc = acc.add(&class.scale(&coeff));
    }
    acc
}

/// A class supported in even degrees: the shape of Chern-character values
/// (and, under the character identification, of rational K-classes).
#[derive(Debug, Clone, PartialEq)]
pub struct EvenClass {
    inner: CohClass<Rat>,
}

impl EvenClass {
    pub fn new(class: CohClass<Rat>) -> Result<Self, CharError> {
        if let Some(d) = class.support().iter().find(|d| *d % 2 != 0) {
            return Err(CharError::OddComponent { degree: *d });
        }
        Ok(EvenClass { inner: class })
    }

    pub fn zero(ring: &GradedRing<Rat>) -> Self {
        EvenClass { inner: ring.zero() }
    }

    /// Build from `(i, class of degree 2i)` pairs.
    pub fn from_components(
        ring: &GradedRing<Rat>,
        parts: impl IntoIterator<Item = (usize, CohClass<Rat>)>,
    ) -> Result<Self, CharError> {
        let mut acc = ring.zero();
        for (i, c) in parts {
            if c.ring() != ring {
                return Err(CharError::MismatchedRings);
            }
            if c.is_zero() {
                continue;
            }
            if c.homogeneous_degree() != Some(2 * i) {
                return Err(CharError::WrongDegree {
                    index: i,
                    expected: 2 * i,
                });
            }
            acc = acc.add(&c);
        }
        Ok(EvenClass { inner: acc })
    }

    pub fn ring(&self) -> &GradedRing<Rat> {
        self.inner.ring()
    }

    pub fn as_class(&self) -> &CohClass<Rat> {
        &self.inner
    }

    pub fn into_class(self) -> CohClass<Rat> {
        self.inner
    }

    /// Degree-`2i` component as a class.
    pub fn component(&self, i: usize) -> CohClass<Rat> {
        self.inner.extract(2 * i)
    }

    /// Coefficient of the unit (the virtual rank).
    pub fn rank(&self) -> Rat {
        self.inner.coefficient(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        EvenClass {
            inner: self.inner.add(&other.inner),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        EvenClass {
            inner: self.inner.sub(&other.inner),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        EvenClass {
            inner: self.inner.scale(c),
        }
    }

    /// Product (even degrees are closed under cup).
    pub fn mul(&self, other: &Self) -> Result<Self, CharError> {
        Ok(EvenClass {
            inner: self.inner.cup(&other.inner)?,
        })
    }

    /// Conjugation on character values: negate components in degrees `2i`
    /// with `i` odd (degrees 2, 6, 10, ...).
    pub fn bar(&self) -> Self {
        let mut acc = self.ring().zero();
        for (d, _) in self.inner.components() {
            let part = self.inner.extract(d);
            acc = acc.add(&part.scale(&sign(d % 4 == 2)));
        }
        EvenClass { inner: acc }
    }
}

impl fmt::Display for EvenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

/// `Ch = dim + Σ_{k≥1} s_k/k!`, exactly, within the ring truncation.
pub fn chern_character(c: &ChernData) -> EvenClass {
    let ring = c.ring();
    let mut acc = ring.unit().scale(&rat(c.dim()));
    let mut k = 1usize;
    while 2 * k <= ring.top_degree() {
        let sk = newton_polynomial(k, c);
        acc = acc.add(&sk.scale(&inv_fact_rat(k as u64)));
        k += 1;
    }
    EvenClass { inner: acc }
}

/// Invert the character degreewise: recover the `c_k` from
/// `s_k = k!·Ch_{2k}` through the Newton recursion
/// `s_k = c_1 s_{k−1} − c_2 s_{k−2} + … + (−1)^{k−1} k c_k`.
/// The degree-0 component is ignored here.
pub fn chern_classes_from_character(ch: &EvenClass) -> BTreeMap<usize, CohClass<Rat>> {
    let ring = ch.ring();
    let top = ring.top_degree();
    let mut s: Vec<CohClass<Rat>> = vec![ring.zero()]; // s[0] unused
    let mut c: Vec<CohClass<Rat>> = vec![ring.zero()];
    let mut out = BTreeMap::new();
    for k in 1..=top / 2 {
        let sk = ch.component(k).scale(&fact_rat(k as u64));
        let mut acc = sk.clone();
        for j in 1..k {
            let term = c[j].cup(&s[k - j]).expect("same ring");
            acc = acc.sub(&term.scale(&sign(j % 2 == 0)));
        }
        let ck = acc.scale(&sign(k % 2 == 0)).scale(&BigRational::new(
            BigInt::one(),
            BigInt::from(k),
        ));
        if !ck.is_zero() {
            out.insert(k, ck.clone());
        }
        s.push(sk);
        c.push(ck);
    }
    out
}

/// Full inversion: also read off the virtual dimension from degree 0,
/// which must be an integer.
pub fn chern_data_from_character(ch: &EvenClass) -> Result<ChernData, CharError> {
    let dim = rat_as_i64(&ch.rank()).ok_or(CharError::NonIntegralRank)?;
    let classes = chern_classes_from_character(ch);
    ChernData::new(ch.ring(), dim, classes)
}

fn realize_general(x: &CohClass<Rat>, det_one: bool) -> Result<(ChernData, Rat), CharError> {
    let ring = x.ring();
    if !ring.is_product_free() {
        return Err(CharError::NotProductFree);
    }
    if x.is_zero() {
        return Err(CharError::ZeroClass);
    }
    let Some(d) = x.homogeneous_degree() else {
        return Err(CharError::NotSingleEvenDegree);
    };
    if d == 0 || d % 2 != 0 {
        return Err(CharError::NotSingleEvenDegree);
    }
    let i = d / 2;
    if det_one && i < 2 {
        return Err(CharError::SuNeedsHigherDegree { i });
    }
    // in a product-free ring Ch_{2i} = (−1)^{i−1} c_i/(i−1)!, so the data
    // with c_i = q·x and q = (−1)^{i−1}(i−1)! has character exactly x
    let q = sign(i % 2 == 0).mul(&fact_rat(i as u64 - 1));
    let phi = ChernData::new(ring, 0, [(i, x.scale(&q))])?;
    Ok((phi, q))
}

/// Given a nonzero class `x` of degree `2i` in a product-free ring, produce
/// virtual-bundle data `φ` with `c_i(φ) = q·x`, all other `c_j = 0`, and
/// Chern character concentrated in degree `2i` with value exactly `x`;
/// `q = (−1)^{i−1}(i−1)!`.
pub fn realize_single_class(x: &CohClass<Rat>) -> Result<(ChernData, Rat), CharError> {
    realize_general(x, false)
}

/// Determinant-one flavor of `realize_single_class`: requires `i ≥ 2`, and
/// the output has `c_1 = 0` by construction.
pub fn realize_single_class_su(x: &CohClass<Rat>) -> Result<(ChernData, Rat), CharError> {
    realize_general(x, true)
}

/// Real flavor: given a nonzero class `x` of degree `4i` in a product-free
/// ring, produce the KO-model class `κ` whose character is concentrated in
/// degree `4i` with value `x`.  Under the fixed Pontryagin convention its
/// only Pontryagin component is `p_i(κ) = q·x` with `q = (−1)^{i+1}(2i−1)!`.
pub fn realize_single_class_ko(x: &CohClass<Rat>) -> Result<(KoClass, Rat), CharError> {
    let ring = x.ring();
    if !ring.is_product_free() {
        return Err(CharError::NotProductFree);
    }
    if x.is_zero() {
        return Err(CharError::ZeroClass);
    }
    let Some(d) = x.homogeneous_degree() else {
        return Err(CharError::NotSingleEvenDegree);
    };
    if d == 0 || d % 4 != 0 {
        return Err(CharError::KoNeedsQuadrupleDegree { degree: d });
    }
    let i = d / 4;
    let kappa = KoClass::new(EvenClass::new(x.clone())?)
        .expect("degree 4i support was just checked");
    // product-free: c_{2i} of the complexification is −(2i−1)!·x, and
    // p_i = (−1)^i c_{2i}
    let q = sign(i % 2 == 0).mul(&fact_rat(2 * i as u64 - 1));
    Ok((kappa, q))
}

/// Pontryagin components of a KO-model class under the fixed convention
/// `p_i(κ) := (−1)^i c_{2i}(complexify(κ))`.
pub fn pontryagin_components(kappa: &KoClass) -> BTreeMap<usize, CohClass<Rat>> {
    let y = complexify(kappa);
    let c = chern_classes_from_character(&y);
    let mut out = BTreeMap::new();
    for (k, class) in c {
        if k % 2 != 0 {
            continue; // odd c_k carry no Pontryagin data under the convention
        }
        let i = k / 2;
        let p = class.scale(&sign(i % 2 == 1));
        if !p.is_zero() {
            out.insert(i, p);
        }
    }
    out
}

/// Stiefel–Whitney data over F2, stored as the total class
/// `1 + w_1 + w_2 + ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwData {
    total: CohClass<F2>,
}

impl SwData {
    /// Build from `(i ≥ 1, class of degree i)` pairs; `w_0 = 1` is implicit.
    pub fn new(
        ring: &GradedRing<F2>,
        classes: impl IntoIterator<Item = (usize, CohClass<F2>)>,
    ) -> Result<Self, CharError> {
        let mut total = ring.unit();
        for (i, c) in classes {
            if i == 0 {
                return Err(CharError::IndexZero);
            }
            if c.ring() != ring {
                return Err(CharError::MismatchedRings);
            }
            if c.is_zero() {
                continue;
            }
            if c.homogeneous_degree() != Some(i) {
                return Err(CharError::WrongDegree {
                    index: i,
                    expected: i,
                });
            }
            total = total.add(&c);
        }
        Ok(SwData { total })
    }

    pub fn trivial(ring: &GradedRing<F2>) -> Self {
        SwData { total: ring.unit() }
    }

    pub fn ring(&self) -> &GradedRing<F2> {
        self.total.ring()
    }

    pub fn total(&self) -> &CohClass<F2> {
        &self.total
    }

    /// `w_i` as a class.
    pub fn w(&self, i: usize) -> CohClass<F2> {
        self.total.extract(i)
    }

    pub fn w1(&self) -> CohClass<F2> {
        self.w(1)
    }

    pub fn w2(&self) -> CohClass<F2> {
        self.w(2)
    }

    /// `k`-fold Whitney sum with itself: total class to the `k`-th power.
    pub fn times(&self, k: u32) -> Self {
        SwData {
            total: self.total.pow(k),
        }
    }
}

/// Whitney sum on Stiefel–Whitney data: the total classes multiply, which in
/// low degrees is `w1(E⊕F) = w1+w1'` and `w2(E⊕F) = w2 + w1·w1' + w2'`.
pub fn whitney_sum_sw(a: &SwData, b: &SwData) -> Result<SwData, CharError> {
    if a.ring() != b.ring() {
        return Err(CharError::MismatchedRings);
    }
    Ok(SwData {
        total: a.total.cup(&b.total)?,
    })
}
