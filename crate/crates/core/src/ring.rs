//! Finite-type graded-commutative rings truncated above a top degree.
//!
//! A ring is stored as an explicit basis per degree plus a sparse
//! multiplication table for pairs of positive-degree basis elements.  Rings
//! are built from generators and rewrite relations (`make_ring`), from two
//! factors (`kunneth`), or by smashing with a sphere (`smash_with_sphere`).
//! Every constructor validates associativity and graded commutativity on all
//! basis triples inside the truncation and fails loudly if they do not hold.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Coefficients, Field};

/// Sparse coordinates in a single degree: sorted `(basis index, coeff)` pairs.
pub type SparseVec<F> = Vec<(usize, F)>;

type ExpVec = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    GeneratorDegreeZero(String),
    DuplicateGenerator(String),
    UnknownGenerator(String),
    EmptyRelationLhs,
    InhomogeneousRelation { lhs: String, rhs_term: String },
    NonTerminatingReduction(String),
    InconsistentRelations(String),
    MissingUnit { betti0: usize },
    NotGradedCommutative { a: String, b: String },
    NotAssociative { a: String, b: String, c: String },
    MismatchedRings,
    SmashDegreeZero,
    SmashNotConnected { betti0: usize },
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::GeneratorDegreeZero(n) => {
                write!(f, "generator `{n}` has degree 0; generators must have positive degree")
            }
            RingError::DuplicateGenerator(n) => write!(f, "generator `{n}` declared twice"),
            RingError::UnknownGenerator(n) => write!(f, "unknown generator `{n}` in relation"),
            RingError::EmptyRelationLhs => write!(f, "relation has an empty left-hand side"),
            RingError::InhomogeneousRelation { lhs, rhs_term } => {
                write!(f, "relation `{lhs} = ...` mixes degrees (term `{rhs_term}`)")
            }
            RingError::NonTerminatingReduction(m) => {
                write!(f, "relation rewriting does not terminate at `{m}`")
            }
            RingError::InconsistentRelations(m) => {
                write!(f, "relations give conflicting normal forms for `{m}`")
            }
            RingError::MissingUnit { betti0 } => {
                write!(f, "degree 0 must be spanned by the unit alone (found rank {betti0})")
            }
            RingError::NotGradedCommutative { a, b } => {
                write!(f, "graded commutativity fails for `{a}`, `{b}`")
            }
            RingError::NotAssociative { a, b, c } => {
                write!(f, "associativity fails for `{a}`, `{b}`, `{c}`")
            }
            RingError::MismatchedRings => write!(f, "operands lie in different rings"),
            RingError::SmashDegreeZero => {
                write!(f, "smash with a sphere requires a positive sphere dimension")
            }
            RingError::SmashNotConnected { betti0 } => {
                write!(f, "smash requires a connected model (rank {betti0} in degree 0)")
            }
        }
    }
}

/// Input for `make_ring`: generators with degrees, and rewrite relations.
///
/// A relation `lhs = rhs` is read left-to-right as a rewrite rule; monomials
/// are exponent lists over the generator names.
#[derive(Debug, Clone)]
pub struct RingSpec<F: Field> {
    pub top_degree: usize,
    pub generators: Vec<(String, usize)>,
    pub relations: Vec<Relation<F>>,
}

#[derive(Debug, Clone)]
pub struct Relation<F: Field> {
    pub lhs: Vec<(String, u32)>,
    pub rhs: Vec<(F, Vec<(String, u32)>)>,
}

#[derive(Debug, PartialEq)]
struct RingData<F: Field> {
    top_degree: usize,
    reduced: bool,
    basis: Vec<Vec<String>>,
    table: BTreeMap<(usize, usize, usize, usize), SparseVec<F>>,
    generators: Option<Vec<(String, usize)>>,
}

/// A truncated graded ring.  Cheap to clone (shared handle); two handles are
/// equal when they share storage or have identical structure.
#[derive(Debug, Clone)]
pub struct GradedRing<F: Field> {
    data: Arc<RingData<F>>,
}

impl<F: Field> PartialEq for GradedRing<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl<F: Field> GradedRing<F> {
    pub fn coefficients(&self) -> Coefficients {
        F::COEFFICIENTS
    }

    pub fn top_degree(&self) -> usize {
        self.data.top_degree
    }

    /// True for rings that model a based (reduced) object, e.g. smash output.
    pub fn is_reduced(&self) -> bool {
        self.data.reduced
    }

    pub fn betti(&self, k: usize) -> usize {
        self.data.basis.get(k).map_or(0, Vec::len)
    }

    /// Reduced rank: degree 0 loses the unit, all other degrees are unchanged.
    pub fn reduced_betti(&self, k: usize) -> usize {
        if k == 0 {
            self.betti(0).saturating_sub(1)
        } else {
            self.betti(k)
        }
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|k| self.betti(k)).collect()
    }

    pub fn basis_labels(&self, k: usize) -> &[String] {
        self.data.basis.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn label(&self, k: usize, i: usize) -> &str {
        &self.data.basis[k][i]
    }

    /// Generator names and degrees, when the ring was built from a
    /// presentation (`make_ring`).  Künneth and smash outputs return `None`.
    pub fn generators(&self) -> Option<&[(String, usize)]> {
        self.data.generators.as_deref()
    }

    pub fn find_label(&self, k: usize, label: &str) -> Option<usize> {
        self.basis_labels(k).iter().position(|l| l == label)
    }

    /// True when every product of positive-degree classes vanishes.
    pub fn is_product_free(&self) -> bool {
        self.data.table.values().all(Vec::is_empty)
    }

    /// Product of two basis elements as sparse coordinates in degree `i + j`.
    /// Degree-0 factors (necessarily the unit) act as identity; products that
    /// leave the truncation are zero.
    pub fn product_of_basis(&self, i: usize, a: usize, j: usize, b: usize) -> SparseVec<F> {
        if i + j > self.top_degree() {
            return Vec::new();
        }
        if i == 0 {
            return vec![(b, F::one())];
        }
        if j == 0 {
            return vec![(a, F::one())];
        }
        self.data
            .table
            .get(&(i, a, j, b))
            .cloned()
            .unwrap_or_default()
    }

    pub fn zero(&self) -> CohClass<F> {
        CohClass {
            ring: self.clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn unit(&self) -> CohClass<F> {
        self.basis_class(0, 0).expect("unit basis element")
    }

    pub fn basis_class(&self, degree: usize, index: usize) -> Option<CohClass<F>> {
        if index >= self.betti(degree) {
            return None;
        }
        let mut v = vec![F::zero(); self.betti(degree)];
        v[index] = F::one();
        let mut components = BTreeMap::new();
        components.insert(degree, v);
        Some(CohClass {
            ring: self.clone(),
            components,
        })
    }

    /// Build a class from `(degree, index, coeff)` triples.
    /// Panics on out-of-range degree or index (programmer error).
    pub fn class(&self, parts: &[(usize, usize, F)]) -> CohClass<F> {
        let mut out = self.zero();
        for (d, i, c) in parts {
            assert!(*i < self.betti(*d), "basis index out of range");
            let entry = out
                .components
                .entry(*d)
                .or_insert_with(|| vec![F::zero(); self.betti(*d)]);
            entry[*i] = entry[*i].add(c);
        }
        out.normalize();
        out
    }

    fn from_data(data: RingData<F>) -> Result<Self, RingError> {
        let ring = GradedRing {
            data: Arc::new(data),
        };
        ring.validate()?;
        Ok(ring)
    }

    /// Check the ring axioms on the stored table: a single unit in degree 0,
    /// graded commutativity on basis pairs and associativity on basis triples,
    /// all inside the truncation.
    pub fn validate(&self) -> Result<(), RingError> {
        let top = self.top_degree();
        if self.betti(0) != 1 {
            return Err(RingError::MissingUnit {
                betti0: self.betti(0),
            });
        }
        for i in 1..=top {
            for j in i..=top {
                if i + j > top {
                    break;
                }
                for a in 0..self.betti(i) {
                    for b in 0..self.betti(j) {
                        let ab = self.product_of_basis(i, a, j, b);
                        let ba = self.product_of_basis(j, b, i, a);
                        let signed: SparseVec<F> = ba
                            .into_iter()
                            .map(|(k, c)| (k, c.signed(i % 2 == 1 && j % 2 == 1)))
                            .collect();
                        if ab != signed {
                            return Err(RingError::NotGradedCommutative {
                                a: self.label(i, a).to_string(),
                                b: self.label(j, b).to_string(),
                            });
                        }
                    }
                }
            }
        }
        for i in 1..=top {
            for j in 1..=top {
                for k in 1..=top {
                    if i + j + k > top {
                        continue;
                    }
                    for a in 0..self.betti(i) {
                        let x = self.basis_class(i, a).unwrap();
                        for b in 0..self.betti(j) {
                            let y = self.basis_class(j, b).unwrap();
                            let xy = x.cup(&y).unwrap();
                            for c in 0..self.betti(k) {
                                let z = self.basis_class(k, c).unwrap();
                                let left = xy.cup(&z).unwrap();
                                let right = x.cup(&y.cup(&z).unwrap()).unwrap();
                                if left != right {
                                    return Err(RingError::NotAssociative {
                                        a: self.label(i, a).to_string(),
                                        b: self.label(j, b).to_string(),
                                        c: self.label(k, c).to_string(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// An element of a `GradedRing`, possibly spread over several degrees.
/// Zero component vectors are never stored.
#[derive(Debug, Clone)]
pub struct CohClass<F: Field> {
    ring: GradedRing<F>,
    components: BTreeMap<usize, Vec<F>>,
}

impl<F: Field> PartialEq for CohClass<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.components == other.components
    }
}

impl<F: Field> CohClass<F> {
    pub fn ring(&self) -> &GradedRing<F> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &[F])> {
        self.components.iter().map(|(d, v)| (*d, v.as_slice()))
    }

    pub fn component(&self, k: usize) -> Option<&[F]> {
        self.components.get(&k).map(Vec::as_slice)
    }

    pub fn coefficient(&self, k: usize, i: usize) -> F {
        self.components
            .get(&k)
            .and_then(|v| v.get(i))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// Degrees carrying a nonzero component, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.components.keys().copied().collect()
    }

    /// `Some(d)` when the class is nonzero and concentrated in one degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.support().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// The degree-`k` part, as a class.
    pub fn extract(&self, k: usize) -> CohClass<F> {
        let mut out = self.ring.zero();
        if let Some(v) = self.components.get(&k) {
            out.components.insert(k, v.clone());
        }
        out
    }

    fn normalize(&mut self) {
        self.components.retain(|_, v| v.iter().any(|c| !c.is_zero()));
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "class arithmetic across different rings");
        let mut out = self.clone();
        for (d, v) in &other.components {
            let entry = out
                .components
                .entry(*d)
                .or_insert_with(|| vec![F::zero(); v.len()]);
            for (i, c) in v.iter().enumerate() {
                entry[i] = entry[i].add(c);
            }
        }
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.components.values_mut() {
            for c in v.iter_mut() {
                *c = c.negate();
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = self.clone();
        for v in out.components.values_mut() {
            for x in v.iter_mut() {
                *x = x.mul(c);
            }
        }
        out.normalize();
        out
    }

    /// Cup product.  Errors when the operands lie in different rings.
    pub fn cup(&self, other: &Self) -> Result<Self, RingError> {
        if self.ring != other.ring {
            return Err(RingError::MismatchedRings);
        }
        let top = self.ring.top_degree();
        let mut out = self.ring.zero();
        for (da, va) in &self.components {
            for (db, vb) in &other.components {
                let d = da + db;
                if d > top {
                    continue;
                }
                for (ia, ca) in va.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (ib, cb) in vb.iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        let prod = self.ring.product_of_basis(*da, ia, *db, ib);
                        if prod.is_empty() {
                            continue;
                        }
                        let scalar = ca.mul(cb);
                        let entry = out
                            .components
                            .entry(d)
                            .or_insert_with(|| vec![F::zero(); self.ring.betti(d)]);
                        for (k, c) in prod {
                            entry[k] = entry[k].add(&c.mul(&scalar));
                        }
                    }
                }
            }
        }
        out.normalize();
        Ok(out)
    }

    /// Cup power within one ring; `pow(0)` is the unit.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.unit();
        for _ in 0..e {
            acc = acc.cup(self).expect("same ring");
        }
        acc
    }
}

impl<F: Field> fmt::Display for CohClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, v) in &self.components {
            for (i, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (neg, mag) = if c.is_negative() {
                    (true, c.negate())
                } else {
                    (false, c.clone())
                };
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let label = self.ring.label(*d, i);
                if label == "1" {
                    write!(f, "{mag}")?;
                } else if mag == F::one() {
                    write!(f, "{label}")?;
                } else {
                    write!(f, "{mag}*{label}")?;
                }
            }
        }
        Ok(())
    }
}

fn mono_degree(degs: &[usize], e: &[u32]) -> usize {
    degs.iter().zip(e).map(|(d, x)| d * (*x as usize)).sum()
}

fn mono_label(names: &[String], e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (n, x) in names.iter().zip(e) {
        match x {
            0 => {}
            1 => parts.push(n.clone()),
            _ => parts.push(format!("{n}^{x}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Parity of the Koszul sign when the normally ordered monomial `a` is
/// multiplied by `b`: each odd generator of `b` moves left past the odd
/// generators of `a` with larger index.
fn koszul_parity(degs: &[usize], a: &[u32], b: &[u32]) -> bool {
    let mut parity = 0u64;
    for j in 0..degs.len() {
        if b[j] == 0 || degs[j] % 2 == 0 {
            continue;
        }
        for i in (j + 1)..degs.len() {
            if degs[i] % 2 == 1 {
                parity += u64::from(a[i]) * u64::from(b[j]);
            }
        }
    }
    parity % 2 == 1
}

/// Multiply two normally ordered monomials.  Returns `None` when the product
/// is forced to vanish (an odd generator squared, over the rationals).
fn mono_mul(degs: &[usize], coeffs: Coefficients, a: &[u32], b: &[u32]) -> Option<(bool, ExpVec)> {
    let sum: ExpVec = a.iter().zip(b).map(|(x, y)| x + y).collect();
    if coeffs == Coefficients::Rational {
        for (i, e) in sum.iter().enumerate() {
            if degs[i] % 2 == 1 && *e >= 2 {
                return None;
            }
        }
    }
    Some((koszul_parity(degs, a, b), sum))
}

struct ResolvedRelation<F> {
    lhs: ExpVec,
    rhs: Vec<(F, ExpVec)>,
}

struct Reducer<'a, F: Field> {
    degs: &'a [usize],
    names: &'a [String],
    top: usize,
    rels: &'a [ResolvedRelation<F>],
    memo: BTreeMap<ExpVec, BTreeMap<ExpVec, F>>,
    in_progress: BTreeSet<ExpVec>,
}

impl<'a, F: Field> Reducer<'a, F> {
    /// Normal form of a monomial as a combination of irreducible monomials.
    /// Detects rewrite cycles and disagreeing rewrite paths.
    fn reduce(&mut self, m: &ExpVec) -> Result<BTreeMap<ExpVec, F>, RingError> {
        if mono_degree(self.degs, m) > self.top {
            return Ok(BTreeMap::new());
        }
        if let Some(hit) = self.memo.get(m) {
            return Ok(hit.clone());
        }
        let applicable: Vec<&ResolvedRelation<F>> = self
            .rels
            .iter()
            .filter(|r| r.lhs.iter().zip(m).all(|(l, e)| l <= e))
            .collect();
        if applicable.is_empty() {
            let mut nf = BTreeMap::new();
            nf.insert(m.clone(), F::one());
            self.memo.insert(m.clone(), nf.clone());
            return Ok(nf);
        }
        if !self.in_progress.insert(m.clone()) {
            return Err(RingError::NonTerminatingReduction(mono_label(
                self.names, m,
            )));
        }
        let mut agreed: Option<BTreeMap<ExpVec, F>> = None;
        for rel in applicable {
            let q: ExpVec = m.iter().zip(&rel.lhs).map(|(e, l)| e - l).collect();
            let s1 = koszul_parity(self.degs, &rel.lhs, &q);
            let mut acc: BTreeMap<ExpVec, F> = BTreeMap::new();
            for (c, n) in &rel.rhs {
                let Some((s2, p)) = mono_mul(self.degs, F::COEFFICIENTS, n, &q) else {
                    continue;
                };
                let factor = c.clone().signed(s1 ^ s2);
                for (bm, bc) in self.reduce(&p)? {
                    let entry = acc.entry(bm).or_insert_with(F::zero);
                    *entry = entry.add(&bc.mul(&factor));
                }
            }
            acc.retain(|_, c| !c.is_zero());
            match &agreed {
                None => agreed = Some(acc),
                Some(prev) if *prev == acc => {}
                Some(_) => {
                    return Err(RingError::InconsistentRelations(mono_label(
                        self.names, m,
                    )))
                }
            }
        }
        self.in_progress.remove(m);
        let nf = agreed.unwrap_or_default();
        self.memo.insert(m.clone(), nf.clone());
        Ok(nf)
    }
}

fn enumerate_monomials(degs: &[usize], top: usize, cap_odd: bool) -> Vec<Vec<ExpVec>> {
    fn rec(
        degs: &[usize],
        top: usize,
        cap_odd: bool,
        i: usize,
        used: usize,
        cur: &mut ExpVec,
        out: &mut Vec<Vec<ExpVec>>,
    ) {
        if i == degs.len() {
            out[used].push(cur.clone());
            return;
        }
        let budget = (top - used) / degs[i];
        let max_e = if cap_odd && degs[i] % 2 == 1 {
            budget.min(1)
        } else {
            budget
        };
        for e in 0..=max_e {
            cur[i] = e as u32;
            rec(degs, top, cap_odd, i + 1, used + e * degs[i], cur, out);
        }
        cur[i] = 0;
    }
    let mut out = vec![Vec::new(); top + 1];
    let mut cur = vec![0u32; degs.len()];
    rec(degs, top, cap_odd, 0, 0, &mut cur, &mut out);
    out
}

/// Build a truncated ring from generators and rewrite relations.
///
/// Monomials above the top degree are zero.  Over the rationals an odd-degree
/// generator squares to zero automatically.  The relation set must be
/// confluent and terminating on the monomials inside the truncation; the
/// construction errors out otherwise instead of guessing.
pub fn make_ring<F: Field>(spec: &RingSpec<F>) -> Result<GradedRing<F>, RingError> {
    let top = spec.top_degree;
    let mut names: Vec<String> = Vec::new();
    let mut degs: Vec<usize> = Vec::new();
    for (name, d) in &spec.generators {
        if *d == 0 {
            return Err(RingError::GeneratorDegreeZero(name.clone()));
        }
        if names.iter().any(|n| n == name) {
            return Err(RingError::DuplicateGenerator(name.clone()));
        }
        names.push(name.clone());
        degs.push(*d);
    }

    let to_expvec = |mono: &[(String, u32)]| -> Result<ExpVec, RingError> {
        let mut e = vec![0u32; names.len()];
        for (name, k) in mono {
            let i = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| RingError::UnknownGenerator(name.clone()))?;
            e[i] += k;
        }
        Ok(e)
    };

    let mut rels: Vec<ResolvedRelation<F>> = Vec::new();
    for r in &spec.relations {
        if r.lhs.is_empty() {
            return Err(RingError::EmptyRelationLhs);
        }
        let lhs = to_expvec(&r.lhs)?;
        let d = mono_degree(&degs, &lhs);
        let mut rhs = Vec::new();
        for (c, mono) in &r.rhs {
            let e = to_expvec(mono)?;
            if mono_degree(&degs, &e) != d {
                return Err(RingError::InhomogeneousRelation {
                    lhs: mono_label(&names, &lhs),
                    rhs_term: mono_label(&names, &e),
                });
            }
            if c.is_zero() {
                continue;
            }
            if F::COEFFICIENTS == Coefficients::Rational
                && e.iter().enumerate().any(|(i, x)| degs[i] % 2 == 1 && *x >= 2)
            {
                // odd square: the term is already zero
                continue;
            }
            rhs.push((c.clone(), e));
        }
        if d <= top {
            rels.push(ResolvedRelation { lhs, rhs });
        }
    }

    let cap_odd = F::COEFFICIENTS == Coefficients::Rational;
    let monos = enumerate_monomials(&degs, top, cap_odd);

    let reducible = |m: &ExpVec| {
        rels.iter()
            .any(|r| r.lhs.iter().zip(m).all(|(l, e)| l <= e))
    };
    let mut basis_monos: Vec<Vec<ExpVec>> = Vec::with_capacity(top + 1);
    let mut index: BTreeMap<ExpVec, (usize, usize)> = BTreeMap::new();
    for (d, list) in monos.iter().enumerate() {
        let keep: Vec<ExpVec> = list.iter().filter(|m| !reducible(m)).cloned().collect();
        for (i, m) in keep.iter().enumerate() {
            index.insert(m.clone(), (d, i));
        }
        basis_monos.push(keep);
    }

    let mut reducer = Reducer {
        degs: &degs,
        names: &names,
        top,
        rels: &rels,
        memo: BTreeMap::new(),
        in_progress: BTreeSet::new(),
    };

    let mut table: BTreeMap<(usize, usize, usize, usize), SparseVec<F>> = BTreeMap::new();
    for da in 1..=top {
        for db in 1..=top {
            if da + db > top {
                break;
            }
            for (ia, ma) in basis_monos[da].iter().enumerate() {
                for (ib, mb) in basis_monos[db].iter().enumerate() {
                    let Some((s, p)) = mono_mul(&degs, F::COEFFICIENTS, ma, mb) else {
                        continue;
                    };
                    let nf = reducer.reduce(&p)?;
                    let mut sparse: SparseVec<F> = Vec::new();
                    for (bm, bc) in nf {
                        let (bd, bi) = index[&bm];
                        debug_assert_eq!(bd, da + db);
                        sparse.push((bi, bc.signed(s)));
                    }
                    sparse.sort_by_key(|(i, _)| *i);
                    if !sparse.is_empty() {
                        table.insert((da, ia, db, ib), sparse);
                    }
                }
            }
        }
    }

    let basis: Vec<Vec<String>> = basis_monos
        .iter()
        .map(|list| list.iter().map(|m| mono_label(&names, m)).collect())
        .collect();

    GradedRing::from_data(RingData {
        top_degree: top,
        reduced: false,
        basis,
        table,
        generators: Some(spec.generators.clone()),
    })
}

/// Tensor product of two rings over the same coefficient field, with the
/// product sign `(a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} (ac ⊗ bd)` and the top degree
/// added.  Basis elements are labelled `la⊗lb`.
pub fn kunneth<F: Field>(r: &GradedRing<F>, s: &GradedRing<F>) -> Result<GradedRing<F>, RingError> {
    let top = r.top_degree() + s.top_degree();
    let mut basis: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut pos: BTreeMap<(usize, usize, usize, usize), usize> = BTreeMap::new();
    let mut members: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); top + 1];
    for k in 0..=top {
        for i in 0..=k.min(r.top_degree()) {
            let j = k - i;
            if j > s.top_degree() {
                continue;
            }
            for a in 0..r.betti(i) {
                for b in 0..s.betti(j) {
                    let idx = basis[k].len();
                    let la = r.label(i, a);
                    let lb = s.label(j, b);
                    let label = if la == "1" && lb == "1" {
                        "1".to_string()
                    } else {
                        format!("{la}⊗{lb}")
                    };
                    basis[k].push(label);
                    pos.insert((i, a, j, b), idx);
                    members[k].push((i, a, j, b));
                }
            }
        }
    }

    let mut table: BTreeMap<(usize, usize, usize, usize), SparseVec<F>> = BTreeMap::new();
    for k1 in 1..=top {
        for k2 in 1..=top {
            if k1 + k2 > top {
                break;
            }
            for (x, &(i1, a1, j1, b1)) in members[k1].iter().enumerate() {
                for (y, &(i2, a2, j2, b2)) in members[k2].iter().enumerate() {
                    let parity = j1 % 2 == 1 && i2 % 2 == 1;
                    let ac = r.product_of_basis(i1, a1, i2, a2);
                    if ac.is_empty() {
                        continue;
                    }
                    let bd = s.product_of_basis(j1, b1, j2, b2);
                    if bd.is_empty() {
                        continue;
                    }
                    let mut acc: BTreeMap<usize, F> = BTreeMap::new();
                    for (ka, ca) in &ac {
                        for (kb, cb) in &bd {
                            let idx = pos[&(i1 + i2, *ka, j1 + j2, *kb)];
                            let c = ca.mul(cb).signed(parity);
                            let entry = acc.entry(idx).or_insert_with(F::zero);
                            *entry = entry.add(&c);
                        }
                    }
                    let sparse: SparseVec<F> = acc
                        .into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .collect();
                    if !sparse.is_empty() {
                        table.insert((k1, x, k2, y), sparse);
                    }
                }
            }
        }
    }

    GradedRing::from_data(RingData {
        top_degree: top,
        reduced: r.is_reduced() || s.is_reduced(),
        basis,
        table,
        generators: None,
    })
}

/// Ring of the smash with an `m`-sphere: reduced classes shift up by `m` and
/// all products of positive-degree classes vanish.  Requires `m ≥ 1` and a
/// connected model (a single unit in degree 0).
pub fn smash_with_sphere<F: Field>(
    r: &GradedRing<F>,
    m: usize,
) -> Result<GradedRing<F>, RingError> {
    if m == 0 {
        return Err(RingError::SmashDegreeZero);
    }
    if r.betti(0) != 1 {
        return Err(RingError::SmashNotConnected {
            betti0: r.betti(0),
        });
    }
    let top = r.top_degree() + m;
    let mut basis: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    basis[0].push("1".to_string());
    for k in 1..=r.top_degree() {
        basis[k + m] = r
            .basis_labels(k)
            .iter()
            .map(|l| format!("s{m}({l})"))
            .collect();
    }
    GradedRing::from_data(RingData {
        top_degree: top,
        reduced: true,
        basis,
        table: BTreeMap::new(),
        generators: None,
    })
}
