//! Text and structured renderers.  Both read the same report structs, so a
//! number can only appear in one view if it appears in the other.

use serde_json::{json, Map, Value};

use flatconn_core::bounds::BoundReport;
use flatconn_core::catalog::SpaceModel;
use flatconn_core::field::{Coefficients, Rat};
use flatconn_core::holonomy::{GroupPresentation, VerifyOutcome};
use flatconn_core::ktheory::ReductionReport;
use flatconn_core::matrix::{C64, GaussRat, MatEntry, Matrix};
use flatconn_core::ring::CohClass;
use flatconn_core::Field;

pub fn bound_report_text(query: &str, r: &BoundReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("query: {query}"));
    line(format!("family: {}", r.family));
    line(format!("space: {} (dim {})", r.space, r.dim));
    line(format!("m: {}", r.m));
    line(format!("window: {}", r.window));
    line(format!("applicable: {}", if r.applicable { "yes" } else { "no" }));
    if let Some(v) = &r.violated {
        line(format!("violated: {v}"));
    }
    if r.betti_terms.is_empty() {
        line("betti terms: none".to_string());
    } else {
        for t in &r.betti_terms {
            line(format!("betti[{}] = {}", t.degree, t.betti));
        }
    }
    line(format!("rank lower bound: {}", r.rank_lower_bound));
    if let Some(inf) = r.pi0_infinite {
        line(format!(
            "pi0 components infinite: {}",
            if inf { "yes" } else { "no" }
        ));
    }
    if let Some(cond) = &r.pi0_condition {
        line(format!("pi0 condition: {cond}"));
    }
    line(format!("citation: {}", r.citation));
    if let Some(n) = &r.note {
        line(format!("note: {n}"));
    }
    out
}

pub fn bound_report_json(query: &str, r: &BoundReport) -> Value {
    json!({
        "query": query,
        "family": r.family.tag().short(),
        "n": r.family.n(),
        "space": r.space,
        "dim": r.dim,
        "m": r.m,
        "window": r.window,
        "applicable": r.applicable,
        "violated": r.violated,
        "betti_terms": r.betti_terms.iter().map(|t| json!({
            "degree": t.degree,
            "betti": t.betti,
        })).collect::<Vec<_>>(),
        "rank_lower_bound": r.rank_lower_bound,
        "pi0_infinite": r.pi0_infinite,
        "pi0_condition": r.pi0_condition,
        "citation": r.citation,
        "note": r.note,
    })
}

pub fn vanish_text(m: usize, dim: usize, degrees: &[usize], citation: &str) -> String {
    let list = if degrees.is_empty() {
        "none".to_string()
    } else {
        degrees
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "query: vanish\nm: {m}\ntotal dim: {dim}\nvanishing degrees: {list}\ncitation: {citation}\n"
    )
}

pub fn vanish_json(m: usize, dim: usize, degrees: &[usize], citation: &str) -> Value {
    json!({
        "query": "vanish",
        "m": m,
        "total_dim": dim,
        "vanishing_degrees": degrees,
        "citation": citation,
    })
}

/// One reduction verdict with its witness label and citation.
pub struct ReductionView {
    pub target: String,
    pub verdict: bool,
    pub witness_name: &'static str,
    pub witness: String,
    pub citation: &'static str,
}

impl ReductionView {
    pub fn from_report<F: Field>(
        r: &ReductionReport<F>,
        witness_name: &'static str,
        citation: &'static str,
    ) -> Self {
        ReductionView {
            target: format!("{}", r.target),
            verdict: r.verdict,
            witness_name,
            witness: format!("{}", r.witness),
            citation,
        }
    }
}

pub fn reduce_text(kind: &str, source: &str, views: &[ReductionView]) -> String {
    let mut out = format!("query: reduce\nkind: {kind}\nsource: {source}\n");
    for v in views {
        out.push_str(&format!(
            "target: {}\nverdict: {}\nwitness {}: {}\ncitation: {}\n",
            v.target,
            if v.verdict { "reducible" } else { "not reducible" },
            v.witness_name,
            v.witness,
            v.citation
        ));
    }
    out
}

pub fn reduce_json(kind: &str, source: &str, views: &[ReductionView]) -> Value {
    json!({
        "query": "reduce",
        "kind": kind,
        "source": source,
        "reports": views.iter().map(|v| json!({
            "target": v.target,
            "verdict": v.verdict,
            "witness_name": v.witness_name,
            "witness": v.witness,
            "citation": v.citation,
        })).collect::<Vec<_>>(),
    })
}

pub fn ch_text(source: &str, dim: i64, parts: &[(usize, String)], citation: &str) -> String {
    let mut out = format!("query: ch\nsource: {source}\ndim: {dim}\n");
    if parts.is_empty() {
        out.push_str("ch = 0\n");
    } else {
        for (deg, val) in parts {
            out.push_str(&format!("ch[{deg}] = {val}\n"));
        }
    }
    out.push_str(&format!("citation: {citation}\n"));
    out
}

pub fn ch_json(source: &str, dim: i64, parts: &[(usize, String)], citation: &str) -> Value {
    let mut comp = Map::new();
    for (deg, val) in parts {
        comp.insert(deg.to_string(), Value::String(val.clone()));
    }
    json!({
        "query": "ch",
        "source": source,
        "dim": dim,
        "character": comp,
        "citation": citation,
    })
}

pub struct RealizeView {
    pub space: String,
    pub m: usize,
    pub top_degree: usize,
    pub degree: usize,
    pub index: usize,
    pub label: String,
    pub variant: &'static str,
    pub q: Rat,
    /// `(name, value)` pairs, e.g. `("c3", "2*s3(x)")`.
    pub classes: Vec<(String, String)>,
    pub character_ok: bool,
    pub citation: &'static str,
}

pub fn realize_text(v: &RealizeView) -> String {
    let mut out = format!(
        "query: realize\nspace: {}\nm: {}\nring: degree-shifted by {} (top degree {})\n\
         class: {} (degree {}, index {})\nvariant: {}\nq: {}\n",
        v.space, v.m, v.m, v.top_degree, v.label, v.degree, v.index, v.variant, v.q
    );
    for (name, val) in &v.classes {
        out.push_str(&format!("{name} = {val}\n"));
    }
    out.push_str(&format!(
        "character check: {}\ncitation: {}\n",
        if v.character_ok { "ok" } else { "FAILED" },
        v.citation
    ));
    out
}

pub fn realize_json(v: &RealizeView) -> Value {
    let mut classes = Map::new();
    for (name, val) in &v.classes {
        classes.insert(name.clone(), Value::String(val.clone()));
    }
    json!({
        "query": "realize",
        "space": v.space,
        "m": v.m,
        "top_degree": v.top_degree,
        "degree": v.degree,
        "index": v.index,
        "label": v.label,
        "variant": v.variant,
        "q": v.q.to_string(),
        "classes": classes,
        "character_ok": v.character_ok,
        "citation": v.citation,
    })
}

pub fn exact_entry_string(e: &GaussRat) -> String {
    if num_traits::Zero::is_zero(&e.im) {
        format!("{}", e.re)
    } else {
        format!("{},{}", e.re, e.im)
    }
}

pub fn float_entry_string(e: &C64) -> String {
    if e.im == 0.0 {
        format!("{}", e.re)
    } else {
        format!("{},{}", e.re, e.im)
    }
}

pub fn matrix_rows<T: MatEntry, F: Fn(&T) -> String>(m: &Matrix<T>, entry: F) -> Vec<Vec<String>> {
    (0..m.n())
        .map(|i| m.row(i).iter().map(&entry).collect())
        .collect()
}

pub struct HolonomyView {
    pub generators: usize,
    pub relators: usize,
    pub family: String,
    pub mode: &'static str,
    pub tolerance: f64,
    pub verification: VerifyOutcome,
    /// `(word, rows, deviation)` when a word was evaluated.
    pub word: Option<(String, Vec<Vec<String>>, f64)>,
    pub citation: &'static str,
}

pub fn holonomy_text(v: &HolonomyView) -> String {
    let mut out = format!(
        "query: holonomy\npresentation: {} generators, {} relators\n\
         representation: {}, {} mode, tolerance {}\nverification: {} (max residual {})\n",
        v.generators,
        v.relators,
        v.family,
        v.mode,
        v.tolerance,
        if v.verification.ok { "ok" } else { "FAILED" },
        v.verification.max_residual
    );
    if let Some((word, rows, deviation)) = &v.word {
        out.push_str(&format!("word: {word}\nholonomy matrix:\n"));
        for row in rows {
            out.push_str(&format!("  [{}]\n", row.join(", ")));
        }
        out.push_str(&format!("deviation from identity: {deviation}\n"));
    }
    out.push_str(&format!("citation: {}\n", v.citation));
    out
}

pub fn holonomy_json(v: &HolonomyView) -> Value {
    let word = v.word.as_ref().map(|(word, rows, deviation)| {
        json!({
            "word": word,
            "matrix": rows,
            "deviation_from_identity": deviation,
        })
    });
    json!({
        "query": "holonomy",
        "generators": v.generators,
        "relators": v.relators,
        "family": v.family,
        "mode": v.mode,
        "tolerance": v.tolerance,
        "verification": {
            "ok": v.verification.ok,
            "max_residual": v.verification.max_residual,
        },
        "holonomy": word,
        "citation": v.citation,
    })
}

fn betti_line(v: &[usize]) -> String {
    v.iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn pi1_summary(p: &Option<GroupPresentation>) -> String {
    match p {
        None => "unknown".to_string(),
        Some(p) => format!("{} generators, {} relators", p.generators, p.relators.len()),
    }
}

pub fn catalog_list_text(models: &[SpaceModel], extensions: &[SpaceModel]) -> String {
    let mut out = String::new();
    let section = |title: &str, models: &[SpaceModel], out: &mut String| {
        if models.is_empty() {
            return;
        }
        out.push_str(title);
        out.push('\n');
        for m in models {
            out.push_str(&format!(
                "  {}: dim {}, {}, betti[Q] {}, betti[F2] {}, pi1 {}\n",
                m.name,
                m.dim,
                if m.orientable { "orientable" } else { "non-orientable" },
                betti_line(&flatconn_core::catalog::betti_vector(m, Coefficients::Rational)),
                betti_line(&flatconn_core::catalog::betti_vector(m, Coefficients::ModTwo)),
                pi1_summary(&m.pi1),
            ));
        }
    };
    section("built-in spaces:", models, &mut out);
    section("extension spaces:", extensions, &mut out);
    out
}

fn model_json(m: &SpaceModel) -> Value {
    json!({
        "name": m.name,
        "dim": m.dim,
        "orientable": m.orientable,
        "betti_q": flatconn_core::catalog::betti_vector(m, Coefficients::Rational),
        "betti_f2": flatconn_core::catalog::betti_vector(m, Coefficients::ModTwo),
        "pi1": m.pi1.as_ref().map(|p| json!({
            "generators": p.generators,
            "relators": p.relators.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
        })),
        "note": m.notes,
    })
}

pub fn catalog_list_json(models: &[SpaceModel], extensions: &[SpaceModel]) -> Value {
    json!({
        "query": "catalog",
        "built_in": models.iter().map(model_json).collect::<Vec<_>>(),
        "extensions": extensions.iter().map(model_json).collect::<Vec<_>>(),
    })
}

pub fn catalog_detail_text(m: &SpaceModel) -> String {
    let mut out = format!(
        "query: catalog\nname: {}\ndim: {}\norientable: {}\nbetti[Q]: {}\nbetti[F2]: {}\npi1: {}\n",
        m.name,
        m.dim,
        if m.orientable { "yes" } else { "no" },
        betti_line(&flatconn_core::catalog::betti_vector(m, Coefficients::Rational)),
        betti_line(&flatconn_core::catalog::betti_vector(m, Coefficients::ModTwo)),
        pi1_summary(&m.pi1),
    );
    if let Some(p) = &m.pi1 {
        for w in &p.relators {
            out.push_str(&format!("relator: {w}\n"));
        }
    }
    if !m.notes.is_empty() {
        out.push_str(&format!("note: {}\n", m.notes));
    }
    out
}

pub fn catalog_detail_json(m: &SpaceModel) -> Value {
    let mut v = model_json(m);
    v.as_object_mut()
        .unwrap()
        .insert("query".to_string(), Value::String("catalog".to_string()));
    v
}

/// Collect the nonzero graded pieces of a class as `(degree, text)` pairs.
pub fn class_parts<F: Field>(c: &CohClass<F>) -> Vec<(usize, String)> {
    c.support()
        .into_iter()
        .map(|d| (d, format!("{}", c.extract(d))))
        .collect()
}
