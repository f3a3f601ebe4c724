//! Finitely presented fundamental groups, matrix representations into the
//! compact families, relator verification, holonomy of loop words, and
//! grid-sampled families of representations.
//!
//! Convention: a word multiplies generator images left-to-right, and the
//! inverse of a generator image is its conjugate transpose (exact for
//! constraint-satisfying matrices, within tolerance in float mode).
//! `conjugate_rep` and every test use this single convention.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::field::rat;
use crate::groups::{GroupFamily, GroupTag};
use crate::matrix::{MatEntry, Matrix, C64};

#[derive(Debug, Clone, PartialEq)]
pub enum HolonomyError {
    Disconnected,
    MalformedBoundary { face: usize, reason: &'static str },
    BadEdge { edge: usize },
    WordOutOfRange { letter: i32 },
    GeneratorCountMismatch { expected: usize, found: usize },
    DimensionMismatch { expected: usize, found: usize },
    BadTolerance,
    ConstraintViolation { generator: usize, residual: f64 },
    InvalidConjugator { residual: f64 },
    PointOutsideGrid,
    SampleFailsVerification { point: Vec<f64>, residual: f64 },
}

impl fmt::Display for HolonomyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HolonomyError::Disconnected => write!(f, "2-complex is not connected"),
            HolonomyError::MalformedBoundary { face, reason } => {
                write!(f, "boundary word of 2-cell {face} is malformed: {reason}")
            }
            HolonomyError::BadEdge { edge } => write!(f, "edge {edge} has an invalid endpoint"),
            HolonomyError::WordOutOfRange { letter } => {
                write!(f, "word letter {letter} is out of range")
            }
            HolonomyError::GeneratorCountMismatch { expected, found } => {
                write!(f, "presentation has {expected} generators, representation has {found}")
            }
            HolonomyError::DimensionMismatch { expected, found } => {
                write!(f, "matrices must be {expected}x{expected} (found {found})")
            }
            HolonomyError::BadTolerance => {
                write!(f, "tolerance must be non-negative, and 0 in exact mode")
            }
            HolonomyError::ConstraintViolation { generator, residual } => {
                write!(
                    f,
                    "generator {generator} violates the family constraints (residual {residual:e})"
                )
            }
            HolonomyError::InvalidConjugator { residual } => {
                write!(f, "conjugating matrix violates the family constraints (residual {residual:e})")
            }
            HolonomyError::PointOutsideGrid => write!(f, "grid point out of range"),
            HolonomyError::SampleFailsVerification { point, residual } => {
                write!(f, "sample at (")?;
                for (i, x) in point.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ") fails verification (residual {residual:e})")
            }
        }
    }
}

/// A word in a finitely generated group: signed 1-based generator indices,
/// composed left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Check all letters are nonzero with |letter| ≤ generator count.
    pub fn validate(&self, generators: usize) -> Result<(), HolonomyError> {
        for l in &self.0 {
            if *l == 0 || l.unsigned_abs() as usize > generators {
                return Err(HolonomyError::WordOutOfRange { letter: *l });
            }
        }
        Ok(())
    }

    /// Cancel adjacent inverse pairs.
    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            if out.last().is_some_and(|last| last + l == 0) {
                out.pop();
            } else {
                out.push(*l);
            }
        }
        Word(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            let idx = (l.unsigned_abs() - 1) as usize;
            if idx < 26 {
                let c = (b'a' + idx as u8) as char;
                write!(f, "{c}")?;
            } else {
                write!(f, "g{}", idx + 1)?;
            }
            if *l < 0 {
                write!(f, "-")?;
            }
        }
        Ok(())
    }
}

/// Generators-and-relators presentation.  An empty relator list is a free
/// group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn free(generators: usize) -> Self {
        GroupPresentation {
            generators,
            relators: Vec::new(),
        }
    }

    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self, HolonomyError> {
        for r in &relators {
            r.validate(generators)?;
        }
        Ok(GroupPresentation {
            generators,
            relators,
        })
    }

    /// Presentation of the direct product: disjoint generators, both relator
    /// sets, plus commutators between the two factors.
    pub fn product(&self, other: &GroupPresentation) -> GroupPresentation {
        let shift = self.generators as i32;
        let mut relators = self.relators.clone();
        relators.extend(other.relators.iter().map(|w| {
            Word(
                w.0.iter()
                    .map(|l| if *l > 0 { l + shift } else { l - shift })
                    .collect(),
            )
        }));
        for a in 1..=self.generators as i32 {
            for b in 1..=other.generators as i32 {
                let bb = b + shift;
                relators.push(Word(vec![a, bb, -a, -bb]));
            }
        }
        GroupPresentation {
            generators: self.generators + other.generators,
            relators,
        }
    }

    /// Rank of the free part of the abelianization: generator count minus the
    /// exact rank of the relator exponent-sum matrix.
    pub fn abelianization_rank(&self) -> usize {
        let rows = self.generators;
        let cols = self.relators.len();
        if rows == 0 {
            return 0;
        }
        let mut a = vec![vec![BigRational::zero(); cols]; rows];
        for (j, r) in self.relators.iter().enumerate() {
            for l in &r.0 {
                let i = (l.unsigned_abs() - 1) as usize;
                let delta = if *l > 0 { rat(1) } else { rat(-1) };
                a[i][j] += delta;
            }
        }
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..rows).find(|r| !a[*r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            for r in 0..rows {
                if r != row && !a[r][col].is_zero() {
                    let f = &a[r][col] / &a[row][col];
                    for c in col..cols {
                        let v = &a[r][c] - &f * &a[row][c];
                        a[r][c] = v;
                    }
                }
            }
            rank += 1;
            row += 1;
            if row == rows {
                break;
            }
        }
        rows - rank
    }
}

/// A finite 2-complex: vertex count, oriented edges as (tail, head) vertex
/// pairs, and 2-cell boundary words over signed 1-based edge indices.
#[derive(Debug, Clone)]
pub struct TwoComplex {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Vec<i32>>,
}

/// Spanning-tree presentation of the fundamental group of a connected
/// 2-complex: generators are the edges outside a breadth-first spanning tree;
/// relators are the 2-cell boundary words with tree edges deleted.
pub fn presentation_from_2complex(c: &TwoComplex) -> Result<GroupPresentation, HolonomyError> {
    if c.vertices == 0 {
        return Err(HolonomyError::Disconnected);
    }
    for (idx, (t, h)) in c.edges.iter().enumerate() {
        if *t >= c.vertices || *h >= c.vertices {
            return Err(HolonomyError::BadEdge { edge: idx + 1 });
        }
    }
    for (fi, face) in c.faces.iter().enumerate() {
        let mut at: Option<usize> = None;
        let mut start: Option<usize> = None;
        for l in face {
            if *l == 0 || l.unsigned_abs() as usize > c.edges.len() {
                return Err(HolonomyError::MalformedBoundary {
                    face: fi,
                    reason: "edge index out of range",
                });
            }
            let (t, h) = c.edges[(l.unsigned_abs() - 1) as usize];
            let (from, to) = if *l > 0 { (t, h) } else { (h, t) };
            if let Some(v) = at {
                if v != from {
                    return Err(HolonomyError::MalformedBoundary {
                        face: fi,
                        reason: "edge path is not continuous",
                    });
                }
            } else {
                start = Some(from);
            }
            at = Some(to);
        }
        if let (Some(s), Some(e)) = (start, at) {
            if s != e {
                return Err(HolonomyError::MalformedBoundary {
                    face: fi,
                    reason: "edge path is not closed",
                });
            }
        }
    }

    // breadth-first spanning tree from vertex 0
    let mut visited = vec![false; c.vertices];
    visited[0] = true;
    let mut tree: BTreeSet<usize> = BTreeSet::new(); // edge indices (0-based)
    let mut queue = vec![0usize];
    while let Some(v) = queue.pop() {
        for (ei, (t, h)) in c.edges.iter().enumerate() {
            let other = if *t == v {
                *h
            } else if *h == v {
                *t
            } else {
                continue;
            };
            if !visited[other] {
                visited[other] = true;
                tree.insert(ei);
                queue.push(other);
            }
        }
    }
    if visited.iter().any(|v| !v) {
        return Err(HolonomyError::Disconnected);
    }

    // non-tree edges become generators, in edge order
    let mut gen_of_edge = vec![0i32; c.edges.len()];
    let mut next = 1i32;
    for ei in 0..c.edges.len() {
        if !tree.contains(&ei) {
            gen_of_edge[ei] = next;
            next += 1;
        }
    }
    let generators = (next - 1) as usize;

    let relators = c
        .faces
        .iter()
        .map(|face| {
            Word(
                face.iter()
                    .filter_map(|l| {
                        let g = gen_of_edge[(l.unsigned_abs() - 1) as usize];
                        if g == 0 {
                            None
                        } else {
                            Some(if *l > 0 { g } else { -g })
                        }
                    })
                    .collect(),
            )
            .freely_reduced()
        })
        .collect();

    Ok(GroupPresentation {
        generators,
        relators,
    })
}

/// Residual of one matrix against the defining constraints of a family:
/// deviation of `M·M^H` from the identity, entrywise realness for the
/// orthogonal-type families, and `det − 1` for the determinant-one families.
pub fn family_constraint_residual<T: MatEntry>(m: &Matrix<T>, tag: GroupTag) -> f64 {
    let gram = m.mul(&m.conj_transpose());
    let mut residual = gram.sub(&Matrix::identity(m.n())).max_abs();
    if tag.real_entries() {
        residual = residual.max(m.max_imag_abs());
    }
    if tag.det_one() {
        residual = residual.max(m.det().sub(&T::one()).abs_bound());
    }
    residual
}

fn family_constraint_exact<T: MatEntry>(m: &Matrix<T>, tag: GroupTag) -> bool {
    let gram = m.mul(&m.conj_transpose());
    if !gram.sub(&Matrix::identity(m.n())).is_exactly_zero() {
        return false;
    }
    if tag.real_entries() && !m.is_exactly_real() {
        return false;
    }
    if tag.det_one() && !m.det().sub(&T::one()).is_zero() {
        return false;
    }
    true
}

/// Verdict + residual for one matrix, exact or tolerance-based per the mode.
fn matrix_within_constraints<T: MatEntry>(
    m: &Matrix<T>,
    tag: GroupTag,
    tolerance: f64,
) -> (bool, f64) {
    let residual = family_constraint_residual(m, tag);
    let ok = if T::EXACT {
        family_constraint_exact(m, tag)
    } else {
        residual <= tolerance
    };
    (ok, residual)
}

/// A representation of a finitely generated group into a compact family:
/// one constraint-satisfying matrix per generator.  The entry type selects
/// the arithmetic mode; exact mode demands tolerance 0.
#[derive(Debug, Clone)]
pub struct MatrixRep<T: MatEntry> {
    family: GroupFamily,
    images: Vec<Matrix<T>>,
    tolerance: f64,
}

/// Default float tolerance (max-entry norm).
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

impl<T: MatEntry> MatrixRep<T> {
    /// Build and validate: square images of size `family.n()`, and every
    /// generator image within the family constraints (exactly in exact mode,
    /// within tolerance otherwise).  `tolerance = None` picks the mode
    /// default: 0 exact, 1e-9 float.
    pub fn new(
        family: GroupFamily,
        images: Vec<Matrix<T>>,
        tolerance: Option<f64>,
    ) -> Result<Self, HolonomyError> {
        let tolerance = match tolerance {
            None => {
                if T::EXACT {
                    0.0
                } else {
                    DEFAULT_FLOAT_TOLERANCE
                }
            }
            Some(t) if t < 0.0 => return Err(HolonomyError::BadTolerance),
            Some(t) if T::EXACT && t != 0.0 => return Err(HolonomyError::BadTolerance),
            Some(t) => t,
        };
        let n = family.n() as usize;
        for (gi, m) in images.iter().enumerate() {
            if m.n() != n {
                return Err(HolonomyError::DimensionMismatch {
                    expected: n,
                    found: m.n(),
                });
            }
            let (ok, residual) = matrix_within_constraints(m, family.tag(), tolerance);
            if !ok {
                return Err(HolonomyError::ConstraintViolation {
                    generator: gi + 1,
                    residual,
                });
            }
        }
        Ok(MatrixRep {
            family,
            images,
            tolerance,
        })
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, g: usize) -> &Matrix<T> {
        &self.images[g]
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn is_exact(&self) -> bool {
        T::EXACT
    }
}

/// Outcome of a membership check: whether all relators and constraints hold,
/// and the worst residual seen (0 in passing exact mode).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOutcome {
    pub ok: bool,
    pub max_residual: f64,
}

/// Check that a representation satisfies a presentation: every generator
/// image obeys the family constraints and every relator evaluates to the
/// identity (exactly, or within tolerance).
pub fn verify_representation<T: MatEntry>(
    rep: &MatrixRep<T>,
    p: &GroupPresentation,
) -> Result<VerifyOutcome, HolonomyError> {
    if rep.generator_count() != p.generators {
        return Err(HolonomyError::GeneratorCountMismatch {
            expected: p.generators,
            found: rep.generator_count(),
        });
    }
    let n = rep.family.n() as usize;
    let mut ok = true;
    let mut max_residual = 0.0f64;
    for m in &rep.images {
        let (this_ok, residual) = matrix_within_constraints(m, rep.family.tag(), rep.tolerance);
        ok &= this_ok;
        max_residual = max_residual.max(residual);
    }
    for r in &p.relators {
        let h = holonomy(rep, r)?;
        let dev = h.sub(&Matrix::identity(n));
        let residual = dev.max_abs();
        let this_ok = if T::EXACT {
            dev.is_exactly_zero()
        } else {
            residual <= rep.tolerance
        };
        ok &= this_ok;
        max_residual = max_residual.max(residual);
    }
    Ok(VerifyOutcome { ok, max_residual })
}

/// Product of generator images left-to-right along the word; a negative
/// letter contributes the conjugate transpose of the image.
pub fn holonomy<T: MatEntry>(rep: &MatrixRep<T>, w: &Word) -> Result<Matrix<T>, HolonomyError> {
    w.validate(rep.generator_count())?;
    let n = rep.family.n() as usize;
    let mut acc = Matrix::identity(n);
    for l in &w.0 {
        let g = (l.unsigned_abs() - 1) as usize;
        let factor = if *l > 0 {
            rep.images[g].clone()
        } else {
            rep.images[g].conj_transpose()
        };
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// Conjugate every generator image by `h` (as `g ↦ h^H·g·h`, i.e. `h⁻¹gh`
/// under the conjugate-transpose inverse convention).  `h` must satisfy the
/// family constraints.
pub fn conjugate_rep<T: MatEntry>(
    rep: &MatrixRep<T>,
    h: &Matrix<T>,
) -> Result<MatrixRep<T>, HolonomyError> {
    let n = rep.family.n() as usize;
    if h.n() != n {
        return Err(HolonomyError::DimensionMismatch {
            expected: n,
            found: h.n(),
        });
    }
    let (ok, residual) = matrix_within_constraints(h, rep.family.tag(), rep.tolerance);
    if !ok {
        return Err(HolonomyError::InvalidConjugator { residual });
    }
    let hh = h.conj_transpose();
    let images = rep
        .images
        .iter()
        .map(|m| hh.mul(m).mul(h))
        .collect();
    MatrixRep::new(rep.family, images, Some(rep.tolerance))
}

/// Rectangular grid over the unit cube: axis `j` carries `counts[j]` evenly
/// spaced points including both endpoints (a single point sits at 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub counts: Vec<usize>,
}

impl GridSpec {
    pub fn contains(&self, point: &[usize]) -> bool {
        point.len() == self.counts.len() && point.iter().zip(&self.counts).all(|(p, c)| p < c)
    }

    pub fn coordinates(&self, point: &[usize]) -> Vec<f64> {
        point
            .iter()
            .zip(&self.counts)
            .map(|(p, c)| {
                if *c <= 1 {
                    0.0
                } else {
                    *p as f64 / (*c as f64 - 1.0)
                }
            })
            .collect()
    }
}

type SamplerFn = dyn Fn(&[f64]) -> Vec<Matrix<C64>> + Send + Sync;

/// A parameterized family of float representations over a grid on a cube.
/// Every sampled point must pass verification against the presentation.
pub struct FamilySampler {
    family: GroupFamily,
    tolerance: f64,
    grid: GridSpec,
    presentation: GroupPresentation,
    eval: Box<SamplerFn>,
}

impl FamilySampler {
    pub fn new(
        family: GroupFamily,
        tolerance: f64,
        grid: GridSpec,
        presentation: GroupPresentation,
        eval: impl Fn(&[f64]) -> Vec<Matrix<C64>> + Send + Sync + 'static,
    ) -> Self {
        FamilySampler {
            family,
            tolerance,
            grid,
            presentation,
            eval: Box::new(eval),
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }
}

impl fmt::Debug for FamilySampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FamilySampler")
            .field("family", &self.family)
            .field("tolerance", &self.tolerance)
            .field("grid", &self.grid)
            .field("presentation", &self.presentation)
            .finish_non_exhaustive()
    }
}

/// Evaluate the family at one grid point and verify membership; errors name
/// the point and the residual when verification fails.
pub fn sample_family(
    sampler: &FamilySampler,
    point: &[usize],
) -> Result<MatrixRep<C64>, HolonomyError> {
    if !sampler.grid.contains(point) {
        return Err(HolonomyError::PointOutsideGrid);
    }
    let coords = sampler.grid.coordinates(point);
    let images = (sampler.eval)(&coords);
    let rep = MatrixRep::new(sampler.family, images, Some(sampler.tolerance)).map_err(|e| {
        if let HolonomyError::ConstraintViolation { residual, .. } = e {
            HolonomyError::SampleFailsVerification {
                point: coords.clone(),
                residual,
            }
        } else {
            e
        }
    })?;
    let outcome = verify_representation(&rep, &sampler.presentation)?;
    if !outcome.ok {
        return Err(HolonomyError::SampleFailsVerification {
            point: coords,
            residual: outcome.max_residual,
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ratio;
    use crate::matrix::GaussRat;
    use alloc::string::ToString;
    use num_complex::Complex;

    fn u_family(n: u32) -> GroupFamily {
        GroupFamily::new(GroupTag::Unitary, n).unwrap()
    }

    fn gauss(re: (i64, i64), im: (i64, i64)) -> GaussRat {
        Complex::new(ratio(re.0, re.1), ratio(im.0, im.1))
    }

    fn diag2(a: GaussRat, b: GaussRat) -> Matrix<GaussRat> {
        Matrix::from_rows(vec![
            vec![a, MatEntry::zero()],
            vec![MatEntry::zero(), b],
        ])
        .unwrap()
    }

    fn torus_presentation() -> GroupPresentation {
        GroupPresentation::new(2, vec![Word(vec![1, 2, -1, -2])]).unwrap()
    }

    #[test]
    fn torus_complex_presentation() {
        // one vertex, two loop edges, one square 2-cell glued along aba⁻¹b⁻¹
        let c = TwoComplex {
            vertices: 1,
            edges: vec![(0, 0), (0, 0)],
            faces: vec![vec![1, 2, -1, -2]],
        };
        let p = presentation_from_2complex(&c).unwrap();
        assert_eq!(p, torus_presentation());
    }

    #[test]
    fn genus_two_polygon() {
        let c = TwoComplex {
            vertices: 1,
            edges: vec![(0, 0); 4],
            faces: vec![vec![1, 2, -1, -2, 3, 4, -3, -4]],
        };
        let p = presentation_from_2complex(&c).unwrap();
        assert_eq!(p.generators, 4);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].len(), 8);
        assert_eq!(p.abelianization_rank(), 4);
    }

    #[test]
    fn projective_plane_complex() {
        let c = TwoComplex {
            vertices: 1,
            edges: vec![(0, 0)],
            faces: vec![vec![1, 1]],
        };
        let p = presentation_from_2complex(&c).unwrap();
        assert_eq!(p.generators, 1);
        assert_eq!(p.relators, vec![Word(vec![1, 1])]);
        assert_eq!(p.abelianization_rank(), 0);
    }

    #[test]
    fn spanning_tree_removes_edges() {
        // two vertices joined by two parallel edges: a circle; one generator
        let c = TwoComplex {
            vertices: 2,
            edges: vec![(0, 1), (1, 0)],
            faces: vec![],
        };
        let p = presentation_from_2complex(&c).unwrap();
        assert_eq!(p.generators, 1);
        assert!(p.relators.is_empty());
    }

    #[test]
    fn complex_input_errors() {
        let disconnected = TwoComplex {
            vertices: 2,
            edges: vec![],
            faces: vec![],
        };
        assert_eq!(
            presentation_from_2complex(&disconnected).unwrap_err(),
            HolonomyError::Disconnected
        );
        let open_path = TwoComplex {
            vertices: 2,
            edges: vec![(0, 1)],
            faces: vec![vec![1]],
        };
        assert!(matches!(
            presentation_from_2complex(&open_path).unwrap_err(),
            HolonomyError::MalformedBoundary { face: 0, .. }
        ));
        let bad_letter = TwoComplex {
            vertices: 1,
            edges: vec![(0, 0)],
            faces: vec![vec![2]],
        };
        assert!(matches!(
            presentation_from_2complex(&bad_letter).unwrap_err(),
            HolonomyError::MalformedBoundary { face: 0, .. }
        ));
    }

    #[test]
    fn abelianization_ranks() {
        assert_eq!(GroupPresentation::free(3).abelianization_rank(), 3);
        assert_eq!(torus_presentation().abelianization_rank(), 2);
        let t3 = torus_presentation().product(&GroupPresentation::free(1));
        assert_eq!(t3.generators, 3);
        assert_eq!(t3.abelianization_rank(), 3);
    }

    #[test]
    fn exact_diagonal_representation_verifies() {
        let i = gauss((0, 1), (1, 1));
        let rot = Matrix::from_rows(vec![
            vec![gauss((3, 5), (0, 1)), gauss((-4, 5), (0, 1))],
            vec![gauss((4, 5), (0, 1)), gauss((3, 5), (0, 1))],
        ])
        .unwrap();
        let rep = MatrixRep::new(
            u_family(2),
            vec![diag2(i.clone(), i.conj()), rot],
            None,
        )
        .unwrap();
        // diagonal and rotation do NOT commute... check they individually pass
        let free = GroupPresentation::free(2);
        let out = verify_representation(&rep, &free).unwrap();
        assert!(out.ok);
        assert_eq!(out.max_residual, 0.0);
        // commuting diagonals satisfy the torus relator exactly
        let rep = MatrixRep::new(
            u_family(2),
            vec![
                diag2(i.clone(), i.conj()),
                diag2(gauss((0, 1), (-1, 1)), gauss((0, 1), (1, 1))),
            ],
            None,
        )
        .unwrap();
        let out = verify_representation(&rep, &torus_presentation()).unwrap();
        assert!(out.ok);
        assert_eq!(out.max_residual, 0.0);
        let h = holonomy(&rep, &Word(vec![1, 2, -1, -2])).unwrap();
        assert!(h.sub(&Matrix::identity(2)).is_exactly_zero());
    }

    #[test]
    fn non_commuting_pair_fails_torus_relator() {
        let i = gauss((0, 1), (1, 1));
        let rot = Matrix::from_rows(vec![
            vec![gauss((3, 5), (0, 1)), gauss((-4, 5), (0, 1))],
            vec![gauss((4, 5), (0, 1)), gauss((3, 5), (0, 1))],
        ])
        .unwrap();
        let rep = MatrixRep::new(u_family(2), vec![diag2(i.clone(), i.conj()), rot], None).unwrap();
        let out = verify_representation(&rep, &torus_presentation()).unwrap();
        assert!(!out.ok);
        assert!(out.max_residual > 0.1);
    }

    #[test]
    fn holonomy_basics() {
        let i = gauss((0, 1), (1, 1));
        let a = diag2(i.clone(), i.conj());
        let rep = MatrixRep::new(u_family(2), vec![a.clone()], None).unwrap();
        assert_eq!(
            holonomy(&rep, &Word::identity()).unwrap(),
            Matrix::identity(2)
        );
        assert_eq!(holonomy(&rep, &Word(vec![1])).unwrap(), a);
        assert_eq!(
            holonomy(&rep, &Word(vec![-1])).unwrap(),
            a.conj_transpose()
        );
        assert!(matches!(
            holonomy(&rep, &Word(vec![2])),
            Err(HolonomyError::WordOutOfRange { letter: 2 })
        ));
        // homomorphism law on a concrete pair
        let w1 = Word(vec![1, 1, -1]);
        let w2 = Word(vec![-1, 1, 1]);
        let lhs = holonomy(&rep, &w1.concat(&w2)).unwrap();
        let rhs = holonomy(&rep, &w1).unwrap().mul(&holonomy(&rep, &w2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_preserves_verification() {
        let i = gauss((0, 1), (1, 1));
        let rep = MatrixRep::new(
            u_family(2),
            vec![
                diag2(i.clone(), i.conj()),
                diag2(gauss((0, 1), (-1, 1)), i.clone()),
            ],
            None,
        )
        .unwrap();
        let h = Matrix::from_rows(vec![
            vec![gauss((3, 5), (0, 1)), gauss((-4, 5), (0, 1))],
            vec![gauss((4, 5), (0, 1)), gauss((3, 5), (0, 1))],
        ])
        .unwrap();
        let conj = conjugate_rep(&rep, &h).unwrap();
        let out = verify_representation(&conj, &torus_presentation()).unwrap();
        assert!(out.ok);
        assert_eq!(out.max_residual, 0.0);
        // holonomy transforms as g ↦ h⁻¹ g h
        let w = Word(vec![1, 2, 2, -1]);
        let transformed = holonomy(&conj, &w).unwrap();
        let direct = h
            .conj_transpose()
            .mul(&holonomy(&rep, &w).unwrap())
            .mul(&h);
        assert_eq!(transformed, direct);
        // identity conjugator is a no-op
        let same = conjugate_rep(&rep, &Matrix::identity(2)).unwrap();
        assert_eq!(same.image(0), rep.image(0));
        // non-unitary conjugator is rejected
        let bad = Matrix::from_rows(vec![
            vec![gauss((2, 1), (0, 1)), MatEntry::zero()],
            vec![MatEntry::zero(), gauss((1, 1), (0, 1))],
        ])
        .unwrap();
        assert!(matches!(
            conjugate_rep(&rep, &bad).unwrap_err(),
            HolonomyError::InvalidConjugator { .. }
        ));
    }

    #[test]
    fn constraint_violations_caught_at_construction() {
        let not_unitary = Matrix::from_rows(vec![
            vec![gauss((2, 1), (0, 1)), MatEntry::zero()],
            vec![MatEntry::zero(), gauss((1, 1), (0, 1))],
        ])
        .unwrap();
        assert!(matches!(
            MatrixRep::new(u_family(2), vec![not_unitary], None).unwrap_err(),
            HolonomyError::ConstraintViolation { generator: 1, .. }
        ));
        // det-one family rejects diag(i, i) (det = −1)
        let su = GroupFamily::new(GroupTag::SpecialUnitary, 2).unwrap();
        let i = gauss((0, 1), (1, 1));
        assert!(matches!(
            MatrixRep::new(su, vec![diag2(i.clone(), i.clone())], None).unwrap_err(),
            HolonomyError::ConstraintViolation { .. }
        ));
        // and accepts diag(i, −i)
        assert!(MatrixRep::new(su, vec![diag2(i.clone(), i.conj())], None).is_ok());
        // real family rejects complex entries
        let o2 = GroupFamily::new(GroupTag::Orthogonal, 2).unwrap();
        assert!(matches!(
            MatrixRep::new(o2, vec![diag2(i.clone(), i.conj())], None).unwrap_err(),
            HolonomyError::ConstraintViolation { .. }
        ));
        // exact mode must have tolerance 0
        assert!(matches!(
            MatrixRep::new(u_family(2), vec![diag2(i.clone(), i.conj())], Some(1e-6)).unwrap_err(),
            HolonomyError::BadTolerance
        ));
    }

    fn circle_family() -> FamilySampler {
        FamilySampler::new(
            u_family(2),
            1e-9,
            GridSpec { counts: vec![8] },
            torus_presentation(),
            |coords| {
                let theta = coords[0] * core::f64::consts::TAU;
                let (s, c) = (theta.sin(), theta.cos());
                let a = Matrix::from_rows(vec![
                    vec![Complex::new(c, s), Complex::new(0.0, 0.0)],
                    vec![Complex::new(0.0, 0.0), Complex::new(c, -s)],
                ])
                .unwrap();
                let b = Matrix::from_rows(vec![
                    vec![Complex::new(0.0, 1.0), Complex::new(0.0, 0.0)],
                    vec![Complex::new(0.0, 0.0), Complex::new(0.0, -1.0)],
                ])
                .unwrap();
                vec![a, b]
            },
        )
    }

    #[test]
    fn sampled_family_verifies_on_grid() {
        let fam = circle_family();
        for p in 0..8 {
            let rep = sample_family(&fam, &[p]).unwrap();
            let out = verify_representation(&rep, fam.presentation()).unwrap();
            assert!(out.ok, "point {p}");
        }
        assert!(matches!(
            sample_family(&fam, &[8]).unwrap_err(),
            HolonomyError::PointOutsideGrid
        ));
        // constant family: every point yields the same representation
        let c = FamilySampler::new(
            u_family(1),
            1e-9,
            GridSpec { counts: vec![3] },
            GroupPresentation::free(1),
            |_| {
                vec![Matrix::from_rows(vec![vec![Complex::new(0.0, 1.0)]]).unwrap()]
            },
        );
        let r0 = sample_family(&c, &[0]).unwrap();
        let r2 = sample_family(&c, &[2]).unwrap();
        assert_eq!(r0.image(0), r2.image(0));
    }

    #[test]
    fn broken_sample_is_named() {
        // violates the relator away from the first grid point: the second
        // generator rotates the first off its diagonal axis
        let fam = FamilySampler::new(
            u_family(2),
            1e-9,
            GridSpec { counts: vec![2] },
            torus_presentation(),
            |coords| {
                let theta = coords[0];
                let (s, c) = (theta.sin(), theta.cos());
                let a = Matrix::from_rows(vec![
                    vec![Complex::new(0.0, 1.0), Complex::new(0.0, 0.0)],
                    vec![Complex::new(0.0, 0.0), Complex::new(0.0, -1.0)],
                ])
                .unwrap();
                let b = Matrix::from_rows(vec![
                    vec![Complex::new(c, 0.0), Complex::new(-s, 0.0)],
                    vec![Complex::new(s, 0.0), Complex::new(c, 0.0)],
                ])
                .unwrap();
                vec![a, b]
            },
        );
        assert!(sample_family(&fam, &[0]).is_ok());
        match sample_family(&fam, &[1]).unwrap_err() {
            HolonomyError::SampleFailsVerification { point, residual } => {
                assert_eq!(point, vec![1.0]);
                assert!(residual > 0.1);
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn word_display_round_trip_shape() {
        let w = Word(vec![1, 2, -1, -2]);
        assert_eq!(w.to_string(), "aba-b-");
        assert_eq!(Word::identity().to_string(), "1");
        assert_eq!(w.inverse(), Word(vec![2, 1, -2, -1]));
        assert_eq!(w.freely_reduced(), w);
        assert!(Word(vec![1, -1]).freely_reduced().is_empty());
    }
}
