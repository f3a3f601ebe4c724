//! Closed-manifold models: dimension, orientability, rational and mod-2
//! cohomology rings, and fundamental-group presentations.  Ring presentations
//! are hard-coded per family; products are assembled with `kunneth`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Coefficients, Field, F2, Rat};
use crate::holonomy::{GroupPresentation, Word};
use crate::ring::{kunneth, make_ring, GradedRing, Relation, RingError, RingSpec};

#[derive(Debug, Clone, PartialEq)]
pub enum CatalogError {
    InvalidParameter {
        descriptor: String,
        constraint: &'static str,
    },
    UnsupportedDescriptor(String),
    Ring(RingError),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::InvalidParameter {
                descriptor,
                constraint,
            } => write!(f, "invalid parameter in {descriptor}: requires {constraint}"),
            CatalogError::UnsupportedDescriptor(s) => {
                write!(f, "unsupported space descriptor: {s}")
            }
            CatalogError::Ring(e) => write!(f, "ring construction failed: {e}"),
        }
    }
}

impl From<RingError> for CatalogError {
    fn from(e: RingError) -> Self {
        CatalogError::Ring(e)
    }
}

/// Parsed space descriptor.  Grammar: `S<k>`, `T<n>`, `Sigma<g>`, `RP<n>`,
/// `CP<n>`, and `x` for products (left-associated).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceDescriptor {
    Sphere(u32),
    Torus(u32),
    Surface(u32),
    RealProjective(u32),
    ComplexProjective(u32),
    Product(Box<SpaceDescriptor>, Box<SpaceDescriptor>),
    /// A model registered from outside the built-in families; `get_space`
    /// cannot rebuild these, so the tag only carries the name.
    Named(String),
}

impl SpaceDescriptor {
    pub fn parse(s: &str) -> Result<SpaceDescriptor, CatalogError> {
        let bad = || CatalogError::UnsupportedDescriptor(s.to_string());
        let mut parts = s.split('x');
        let first = parts.next().ok_or_else(bad)?;
        let mut d = Self::parse_atom(first).ok_or_else(bad)?;
        for part in parts {
            let rhs = Self::parse_atom(part).ok_or_else(bad)?;
            d = SpaceDescriptor::Product(Box::new(d), Box::new(rhs));
        }
        Ok(d)
    }

    fn parse_atom(s: &str) -> Option<SpaceDescriptor> {
        let (head, tail) = if let Some(t) = s.strip_prefix("Sigma") {
            ("Sigma", t)
        } else if let Some(t) = s.strip_prefix("RP") {
            ("RP", t)
        } else if let Some(t) = s.strip_prefix("CP") {
            ("CP", t)
        } else if let Some(t) = s.strip_prefix('S') {
            ("S", t)
        } else if let Some(t) = s.strip_prefix('T') {
            ("T", t)
        } else {
            return None;
        };
        if tail.is_empty() || !tail.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let n: u32 = tail.parse().ok()?;
        Some(match head {
            "Sigma" => SpaceDescriptor::Surface(n),
            "RP" => SpaceDescriptor::RealProjective(n),
            "CP" => SpaceDescriptor::ComplexProjective(n),
            "S" => SpaceDescriptor::Sphere(n),
            "T" => SpaceDescriptor::Torus(n),
            _ => unreachable!(),
        })
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::Sphere(k) => write!(f, "S{k}"),
            SpaceDescriptor::Torus(n) => write!(f, "T{n}"),
            SpaceDescriptor::Surface(g) => write!(f, "Sigma{g}"),
            SpaceDescriptor::RealProjective(n) => write!(f, "RP{n}"),
            SpaceDescriptor::ComplexProjective(n) => write!(f, "CP{n}"),
            SpaceDescriptor::Product(a, b) => write!(f, "{a}x{b}"),
            SpaceDescriptor::Named(name) => write!(f, "{name}"),
        }
    }
}

/// A closed manifold's computable shadow.
#[derive(Debug, Clone)]
pub struct SpaceModel {
    pub descriptor: SpaceDescriptor,
    pub name: String,
    pub dim: usize,
    pub orientable: bool,
    pub ring_q: GradedRing<Rat>,
    pub ring_f2: GradedRing<F2>,
    pub pi1: Option<GroupPresentation>,
    pub notes: String,
}

impl SpaceModel {
    pub fn ring_for(&self, coefficients: Coefficients) -> RingChoice<'_> {
        match coefficients {
            Coefficients::Rational => RingChoice::Rational(&self.ring_q),
            Coefficients::ModTwo => RingChoice::ModTwo(&self.ring_f2),
        }
    }
}

/// Coefficient-dispatched view of a model's ring.
pub enum RingChoice<'a> {
    Rational(&'a GradedRing<Rat>),
    ModTwo(&'a GradedRing<F2>),
}

impl RingChoice<'_> {
    pub fn betti_vector(&self) -> Vec<usize> {
        match self {
            RingChoice::Rational(r) => r.betti_vector(),
            RingChoice::ModTwo(r) => r.betti_vector(),
        }
    }
}

/// Per-degree ranks of the selected coefficient ring, indices 0..=dim.
pub fn betti_vector(s: &SpaceModel, coefficients: Coefficients) -> Vec<usize> {
    s.ring_for(coefficients).betti_vector()
}

fn free_spec<F: Field>(top: usize, gens: &[(&str, usize)]) -> RingSpec<F> {
    RingSpec {
        top_degree: top,
        generators: gens.iter().map(|(n, d)| (n.to_string(), *d)).collect(),
        relations: Vec::new(),
    }
}

fn square_relations<F: Field>(gens: &[String]) -> Vec<Relation<F>> {
    gens.iter()
        .map(|g| Relation {
            lhs: vec![(g.clone(), 2)],
            rhs: Vec::new(),
        })
        .collect()
}

fn sphere_model(k: u32) -> Result<SpaceModel, CatalogError> {
    let d = SpaceDescriptor::Sphere(k);
    if k < 1 {
        return Err(CatalogError::InvalidParameter {
            descriptor: d.to_string(),
            constraint: "k >= 1",
        });
    }
    let top = k as usize;
    let ring_q = make_ring(&free_spec::<Rat>(top, &[("x", top)]))?;
    let ring_f2 = make_ring(&free_spec::<F2>(top, &[("x", top)]))?;
    let pi1 = Some(GroupPresentation::free(if k == 1 { 1 } else { 0 }));
    Ok(SpaceModel {
        name: d.to_string(),
        descriptor: d,
        dim: top,
        orientable: true,
        ring_q,
        ring_f2,
        pi1,
        notes: format!("one generator in degree {top}, truncated at the fundamental class"),
    })
}

fn torus_model(n: u32) -> Result<SpaceModel, CatalogError> {
    let d = SpaceDescriptor::Torus(n);
    if n < 1 {
        return Err(CatalogError::InvalidParameter {
            descriptor: d.to_string(),
            constraint: "n >= 1",
        });
    }
    let top = n as usize;
    let gens: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let gen_refs: Vec<(String, usize)> = gens.iter().map(|g| (g.clone(), 1)).collect();
    let ring_q = make_ring(&RingSpec::<Rat> {
        top_degree: top,
        generators: gen_refs.clone(),
        relations: Vec::new(),
    })?;
    let ring_f2 = make_ring(&RingSpec::<F2> {
        top_degree: top,
        generators: gen_refs,
        relations: square_relations(&gens),
    })?;
    // free abelian: all pairwise commutators
    let mut relators = Vec::new();
    for i in 1..=n as i32 {
        for j in (i + 1)..=n as i32 {
            relators.push(Word(vec![i, j, -i, -j]));
        }
    }
    Ok(SpaceModel {
        name: d.to_string(),
        descriptor: d,
        dim: top,
        orientable: true,
        ring_q,
        ring_f2,
        pi1: Some(GroupPresentation {
            generators: top,
            relators,
        }),
        notes: format!("exterior algebra on {n} degree-1 generators"),
    })
}

fn surface_model(g: u32) -> Result<SpaceModel, CatalogError> {
    let d = SpaceDescriptor::Surface(g);
    if g == 0 {
        let s2 = sphere_model(2)?;
        return Ok(SpaceModel {
            name: d.to_string(),
            descriptor: d,
            notes: "genus 0: the 2-sphere model".to_string(),
            ..s2
        });
    }
    let mut gens: Vec<String> = Vec::new();
    for i in 1..=g {
        gens.push(format!("a{i}"));
        gens.push(format!("b{i}"));
    }
    let gen_list: Vec<(String, usize)> = gens.iter().map(|s| (s.clone(), 1)).collect();
    // a_i b_i all hit the same fundamental class; every other product of two
    // distinct generators dies
    let fundamental = vec![(
        Rat::one(),
        vec![("a1".to_string(), 1), ("b1".to_string(), 1)],
    )];
    let mut relations: Vec<Relation<Rat>> = Vec::new();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let paired = i % 2 == 0 && j == i + 1;
            if paired && i == 0 {
                continue; // a1*b1 is the basis element
            }
            relations.push(Relation {
                lhs: vec![(gens[i].clone(), 1), (gens[j].clone(), 1)],
                rhs: if paired { fundamental.clone() } else { Vec::new() },
            });
        }
    }
    let ring_q = make_ring(&RingSpec {
        top_degree: 2,
        generators: gen_list.clone(),
        relations,
    })?;
    let fundamental2 = vec![(
        F2(true),
        vec![("a1".to_string(), 1), ("b1".to_string(), 1)],
    )];
    let mut relations2: Vec<Relation<F2>> = square_relations(&gens);
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let paired = i % 2 == 0 && j == i + 1;
            if paired && i == 0 {
                continue;
            }
            relations2.push(Relation {
                lhs: vec![(gens[i].clone(), 1), (gens[j].clone(), 1)],
                rhs: if paired { fundamental2.clone() } else { Vec::new() },
            });
        }
    }
    let ring_f2 = make_ring(&RingSpec {
        top_degree: 2,
        generators: gen_list,
        relations: relations2,
    })?;
    // one relator: product of commutators [a_i, b_i]
    let mut relator = Vec::new();
    for i in 0..g as i32 {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        relator.extend_from_slice(&[a, b, -a, -b]);
    }
    Ok(SpaceModel {
        name: d.to_string(),
        descriptor: d,
        dim: 2,
        orientable: true,
        ring_q,
        ring_f2,
        pi1: Some(GroupPresentation {
            generators: 2 * g as usize,
            relators: vec![Word(relator)],
        }),
        notes: format!("genus-{g} one-relator surface ring"),
    })
}

fn real_projective_model(n: u32) -> Result<SpaceModel, CatalogError> {
    let d = SpaceDescriptor::RealProjective(n);
    if n < 1 {
        return Err(CatalogError::InvalidParameter {
            descriptor: d.to_string(),
            constraint: "n >= 1",
        });
    }
    let top = n as usize;
    let odd = n % 2 == 1;
    let ring_f2 = make_ring(&free_spec::<F2>(top, &[("a", 1)]))?;
    let ring_q = if odd {
        make_ring(&free_spec::<Rat>(top, &[("v", top)]))?
    } else {
        make_ring(&free_spec::<Rat>(top, &[]))?
    };
    let pi1 = Some(if n == 1 {
        GroupPresentation::free(1)
    } else {
        GroupPresentation {
            generators: 1,
            relators: vec![Word(vec![1, 1])],
        }
    });
    Ok(SpaceModel {
        name: d.to_string(),
        descriptor: d,
        dim: top,
        orientable: odd,
        ring_q,
        ring_f2,
        pi1,
        notes: "mod-2 truncated polynomial on a degree-1 class".to_string(),
    })
}

fn complex_projective_model(n: u32) -> Result<SpaceModel, CatalogError> {
    let d = SpaceDescriptor::ComplexProjective(n);
    if n < 1 {
        return Err(CatalogError::InvalidParameter {
            descriptor: d.to_string(),
            constraint: "n >= 1",
        });
    }
    let top = 2 * n as usize;
    let ring_q = make_ring(&free_spec::<Rat>(top, &[("t", 2)]))?;
    let ring_f2 = make_ring(&free_spec::<F2>(top, &[("t", 2)]))?;
    Ok(SpaceModel {
        name: d.to_string(),
        descriptor: d,
        dim: top,
        orientable: true,
        ring_q,
        ring_f2,
        pi1: Some(GroupPresentation::free(0)),
        notes: "truncated polynomial on a degree-2 class".to_string(),
    })
}

fn product_model(a: &SpaceDescriptor, b: &SpaceDescriptor) -> Result<SpaceModel, CatalogError> {
    let left = get_space(a)?;
    let right = get_space(b)?;
    let d = SpaceDescriptor::Product(Box::new(a.clone()), Box::new(b.clone()));
    let pi1 = match (&left.pi1, &right.pi1) {
        (Some(p), Some(q)) => Some(p.product(q)),
        _ => None,
    };
    Ok(SpaceModel {
        name: d.to_string(),
        descriptor: d,
        dim: left.dim + right.dim,
        orientable: left.orientable && right.orientable,
        ring_q: kunneth(&left.ring_q, &right.ring_q)?,
        ring_f2: kunneth(&left.ring_f2, &right.ring_f2)?,
        pi1,
        notes: format!("product of {} and {}", left.name, right.name),
    })
}

/// Build the model for a descriptor.
pub fn get_space(d: &SpaceDescriptor) -> Result<SpaceModel, CatalogError> {
    let model = match d {
        SpaceDescriptor::Sphere(k) => sphere_model(*k)?,
        SpaceDescriptor::Torus(n) => torus_model(*n)?,
        SpaceDescriptor::Surface(g) => surface_model(*g)?,
        SpaceDescriptor::RealProjective(n) => real_projective_model(*n)?,
        SpaceDescriptor::ComplexProjective(n) => complex_projective_model(*n)?,
        SpaceDescriptor::Product(a, b) => product_model(a, b)?,
        SpaceDescriptor::Named(name) => {
            return Err(CatalogError::UnsupportedDescriptor(name.clone()))
        }
    };
    debug_assert_eq!(model.ring_q.top_degree(), model.dim);
    debug_assert_eq!(model.ring_f2.top_degree(), model.dim);
    debug_assert_eq!(model.ring_q.betti(0), 1);
    Ok(model)
}

/// Parse a descriptor string and build its model.
pub fn get_space_named(name: &str) -> Result<SpaceModel, CatalogError> {
    get_space(&SpaceDescriptor::parse(name)?)
}

/// The read-only registry iterated by the example calculators and the CLI
/// listing.
pub fn standard_catalog() -> Vec<SpaceModel> {
    [
        "S1", "S2", "S3", "S5", "T2", "T3", "Sigma2", "RP2", "RP5", "RP9", "CP2", "CP3", "S2xS3",
    ]
    .iter()
    .map(|name| get_space_named(name).expect("standard catalog entries are valid"))
    .collect()
}
