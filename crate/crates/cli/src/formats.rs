//! Line-oriented input formats: group presentations, matrix representations,
//! ring descriptions, class assignments, and catalog extension files.
//!
//! All of them share the same skeleton: one record per line, `#` starts a
//! comment, blank lines are ignored.  Errors name the offending token.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

use flatconn_core::catalog::{get_space, SpaceDescriptor, SpaceModel};
use flatconn_core::charclass::{ChernData, SwData};
use flatconn_core::field::{Field, Rat, F2};
use flatconn_core::groups::{GroupFamily, GroupTag};
use flatconn_core::holonomy::{GroupPresentation, MatrixRep, Word};
use flatconn_core::matrix::{GaussRat, MatEntry, Matrix, C64};
use flatconn_core::ring::{make_ring, CohClass, GradedRing, Relation, RingSpec};

/// Split a line into its content part (comment stripped) and trim it.
fn content(line: &str) -> &str {
    match line.split_once('#') {
        Some((head, _)) => head.trim(),
        None => line.trim(),
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    Ok(text.lines().map(|l| l.to_string()).collect())
}

/// Parse a holonomy word: generator letters `a`..`z`, each optionally
/// followed by `-` for the inverse.  `1` alone is the identity.
pub fn parse_word(s: &str) -> Result<Word> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Word::identity());
    }
    let mut letters = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if !c.is_ascii_lowercase() {
            bail!("bad word token '{c}': expected a generator letter a..z");
        }
        let idx = (c as i32) - ('a' as i32) + 1;
        if chars.peek() == Some(&'-') {
            chars.next();
            letters.push(-idx);
        } else {
            letters.push(idx);
        }
    }
    Ok(Word(letters))
}

/// Render a word in the same syntax (`aba-b-`); identity prints as `1`.
pub fn word_string(w: &Word) -> String {
    format!("{w}")
}

/// Presentation file: `generators N` once, then `relator i1 i2 ...` lines
/// with signed one-based generator indices.
pub fn load_presentation(path: &Path) -> Result<GroupPresentation> {
    let mut generators: Option<usize> = None;
    let mut relators = Vec::new();
    for (no, raw) in read_lines(path)?.iter().enumerate() {
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap();
        match key {
            "generators" => {
                let tok = toks.next().ok_or_else(|| {
                    anyhow!("line {}: 'generators' needs a count", no + 1)
                })?;
                generators = Some(tok.parse().map_err(|_| {
                    anyhow!("line {}: bad generator count '{tok}'", no + 1)
                })?);
            }
            "relator" => {
                let mut letters = Vec::new();
                for tok in toks {
                    let v: i32 = tok.parse().map_err(|_| {
                        anyhow!("line {}: bad relator letter '{tok}'", no + 1)
                    })?;
                    letters.push(v);
                }
                relators.push(Word(letters));
            }
            other => bail!("line {}: unknown key '{other}'", no + 1),
        }
    }
    let generators =
        generators.ok_or_else(|| anyhow!("missing 'generators' line"))?;
    GroupPresentation::new(generators, relators)
        .map_err(|e| anyhow!("bad presentation: {e}"))
}

/// A representation in either arithmetic mode.
pub enum RepFile {
    Exact(MatrixRep<GaussRat>),
    Float(MatrixRep<C64>),
}

impl RepFile {
    pub fn family(&self) -> GroupFamily {
        match self {
            RepFile::Exact(r) => r.family(),
            RepFile::Float(r) => r.family(),
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            RepFile::Exact(_) => "exact",
            RepFile::Float(_) => "float",
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            RepFile::Exact(r) => r.tolerance(),
            RepFile::Float(r) => r.tolerance(),
        }
    }
}

pub fn parse_group_tag(s: &str) -> Result<GroupTag> {
    GroupTag::parse(s)
        .ok_or_else(|| anyhow!("bad group tag '{s}': expected U, SU, O, SO, or Spin"))
}

fn parse_big_rational(tok: &str) -> Result<BigRational> {
    match tok.split_once('/') {
        Some((num, den)) => {
            let n = BigInt::from_str(num)
                .map_err(|_| anyhow!("bad rational '{tok}'"))?;
            let d = BigInt::from_str(den)
                .map_err(|_| anyhow!("bad rational '{tok}'"))?;
            if d == BigInt::from(0) {
                bail!("bad rational '{tok}': zero denominator");
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(tok)
                .map_err(|_| anyhow!("bad rational '{tok}'"))?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// One matrix entry, `re` or `re,im`.
fn parse_exact_entry(tok: &str) -> Result<GaussRat> {
    match tok.split_once(',') {
        Some((re, im)) => Ok(GaussRat::new(
            parse_big_rational(re)?,
            parse_big_rational(im)?,
        )),
        None => Ok(GaussRat::new(
            parse_big_rational(tok)?,
            BigRational::from_integer(BigInt::from(0)),
        )),
    }
}

fn parse_float_entry(tok: &str) -> Result<C64> {
    let num = |s: &str| -> Result<f64> {
        s.parse()
            .map_err(|_| anyhow!("bad number '{s}'"))
    };
    match tok.split_once(',') {
        Some((re, im)) => Ok(C64::new(num(re)?, num(im)?)),
        None => Ok(C64::new(num(tok)?, 0.0)),
    }
}

/// Representation file: `family TAG`, `n N`, `mode exact|float`, optional
/// `tolerance X`, then for each generator a `generator` line followed by
/// `n` rows of `n` whitespace-separated entries (`re` or `re,im`; exact
/// entries are rationals `p/q`, float entries are decimals).
pub fn load_representation(path: &Path) -> Result<RepFile> {
    let lines = read_lines(path)?;
    let mut tag: Option<GroupTag> = None;
    let mut n: Option<u32> = None;
    let mut mode: Option<&'static str> = None;
    let mut tolerance: Option<f64> = None;
    let mut matrices: Vec<Vec<Vec<String>>> = Vec::new();
    let mut pending_rows: Option<usize> = None;

    for (no, raw) in lines.iter().enumerate() {
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rows_left) = pending_rows {
            let row: Vec<String> =
                line.split_whitespace().map(|t| t.to_string()).collect();
            let want = n.unwrap() as usize;
            if row.len() != want {
                bail!(
                    "line {}: matrix row has {} entries, expected {want}",
                    no + 1,
                    row.len()
                );
            }
            matrices.last_mut().unwrap().push(row);
            pending_rows = if rows_left > 1 { Some(rows_left - 1) } else { None };
            continue;
        }
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap();
        match key {
            "family" => {
                let tok = toks
                    .next()
                    .ok_or_else(|| anyhow!("line {}: 'family' needs a tag", no + 1))?;
                tag = Some(parse_group_tag(tok)?);
            }
            "n" => {
                let tok = toks
                    .next()
                    .ok_or_else(|| anyhow!("line {}: 'n' needs a value", no + 1))?;
                n = Some(tok.parse().map_err(|_| {
                    anyhow!("line {}: bad matrix size '{tok}'", no + 1)
                })?);
            }
            "mode" => {
                let tok = toks
                    .next()
                    .ok_or_else(|| anyhow!("line {}: 'mode' needs a value", no + 1))?;
                mode = Some(match tok {
                    "exact" => "exact",
                    "float" => "float",
                    other => bail!("line {}: bad mode '{other}'", no + 1),
                });
            }
            "tolerance" => {
                let tok = toks.next().ok_or_else(|| {
                    anyhow!("line {}: 'tolerance' needs a value", no + 1)
                })?;
                tolerance = Some(tok.parse().map_err(|_| {
                    anyhow!("line {}: bad tolerance '{tok}'", no + 1)
                })?);
            }
            "generator" => {
                let size = n.ok_or_else(|| {
                    anyhow!("line {}: 'generator' before 'n'", no + 1)
                })?;
                matrices.push(Vec::new());
                pending_rows = Some(size as usize);
            }
            other => bail!("line {}: unknown key '{other}'", no + 1),
        }
    }
    if pending_rows.is_some() {
        bail!("unexpected end of file inside a generator matrix");
    }
    let tag = tag.ok_or_else(|| anyhow!("missing 'family' line"))?;
    let n = n.ok_or_else(|| anyhow!("missing 'n' line"))?;
    let mode = mode.ok_or_else(|| anyhow!("missing 'mode' line"))?;
    let family = GroupFamily::new(tag, n)
        .ok_or_else(|| anyhow!("bad family size {n}: needs n >= 1"))?;

    match mode {
        "exact" => {
            let images = matrices
                .iter()
                .map(|rows| build_matrix(rows, parse_exact_entry))
                .collect::<Result<Vec<_>>>()?;
            let rep = MatrixRep::new(family, images, tolerance)
                .map_err(|e| anyhow!("bad representation: {e}"))?;
            Ok(RepFile::Exact(rep))
        }
        _ => {
            let images = matrices
                .iter()
                .map(|rows| build_matrix(rows, parse_float_entry))
                .collect::<Result<Vec<_>>>()?;
            let rep = MatrixRep::new(family, images, tolerance)
                .map_err(|e| anyhow!("bad representation: {e}"))?;
            Ok(RepFile::Float(rep))
        }
    }
}

fn build_matrix<T: MatEntry>(
    rows: &[Vec<String>],
    entry: impl Fn(&str) -> Result<T>,
) -> Result<Matrix<T>> {
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|t| entry(t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed).ok_or_else(|| anyhow!("matrix rows are not square"))
}

/// A graded ring over either coefficient field.
pub enum EitherRing {
    Q(GradedRing<Rat>),
    F2(GradedRing<F2>),
}

fn parse_monomial(s: &str) -> Result<Vec<(String, u32)>> {
    let mut factors = Vec::new();
    for part in s.split('*') {
        let part = part.trim();
        if part.is_empty() {
            bail!("bad monomial '{s}': empty factor");
        }
        let (name, exp) = match part.split_once('^') {
            Some((n, e)) => {
                let exp: u32 = e
                    .parse()
                    .map_err(|_| anyhow!("bad exponent '{e}' in '{part}'"))?;
                (n, exp)
            }
            None => (part, 1),
        };
        factors.push((name.to_string(), exp));
    }
    Ok(factors)
}

/// Right-hand sides of relations: `0`, or `+`/`-`-separated terms, each an
/// optional coefficient times a monomial in the generators.
fn parse_relation_rhs<F: Field>(
    s: &str,
    coeff: &impl Fn(&str) -> Result<F>,
) -> Result<Vec<(F, Vec<(String, u32)>)>> {
    let mut out = Vec::new();
    for (neg, term) in split_terms(s)? {
        if term == "0" {
            continue;
        }
        let (c, mono) = split_coefficient(&term, coeff)?;
        let mono = if mono.is_empty() {
            Vec::new()
        } else {
            parse_monomial(&mono)?
        };
        out.push((c.signed(neg), mono));
    }
    Ok(out)
}

/// Split `a + b - c` into `(sign, term)` pairs.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let s = s.trim();
    if s.is_empty() {
        bail!("empty expression");
    }
    let mut out = Vec::new();
    let mut current = String::new();
    let mut neg = false;
    let mut first = true;
    for c in s.chars() {
        match c {
            '+' | '-' if !first && !current.trim().is_empty() => {
                out.push((neg, current.trim().to_string()));
                current = String::new();
                neg = c == '-';
            }
            '-' if first => neg = true,
            _ => current.push(c),
        }
        if !c.is_whitespace() {
            first = false;
        }
    }
    if current.trim().is_empty() {
        bail!("dangling sign in '{s}'");
    }
    out.push((neg, current.trim().to_string()));
    Ok(out)
}

/// Split an optional leading `coeff*` off a term.  Returns the coefficient
/// and the remaining label text (possibly empty for a bare scalar).
fn split_coefficient<F: Field>(
    term: &str,
    coeff: &impl Fn(&str) -> Result<F>,
) -> Result<(F, String)> {
    if let Some((head, tail)) = term.split_once('*') {
        if let Ok(c) = coeff(head.trim()) {
            return Ok((c, tail.trim().to_string()));
        }
    }
    if let Ok(c) = coeff(term) {
        return Ok((c, String::new()));
    }
    Ok((F::one(), term.to_string()))
}

fn q_coeff(tok: &str) -> Result<Rat> {
    parse_big_rational(tok)
}

fn f2_coeff(tok: &str) -> Result<F2> {
    match tok {
        "0" => Ok(F2(false)),
        "1" => Ok(F2(true)),
        other => bail!("bad mod-2 coefficient '{other}'"),
    }
}

/// Shared body parser for ring descriptions: `top_degree N`,
/// `generator NAME DEG`, `relation MONOMIAL = RHS`.
fn parse_ring_body<F: Field>(
    lines: &[(usize, String)],
    coeff: &impl Fn(&str) -> Result<F>,
) -> Result<GradedRing<F>> {
    let mut top: Option<usize> = None;
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    for (no, line) in lines {
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap();
        match key {
            "top_degree" => {
                let tok = toks.next().ok_or_else(|| {
                    anyhow!("line {}: 'top_degree' needs a value", no + 1)
                })?;
                top = Some(tok.parse().map_err(|_| {
                    anyhow!("line {}: bad top degree '{tok}'", no + 1)
                })?);
            }
            "generator" => {
                let name = toks.next().ok_or_else(|| {
                    anyhow!("line {}: 'generator' needs a name", no + 1)
                })?;
                let deg = toks.next().ok_or_else(|| {
                    anyhow!("line {}: 'generator' needs a degree", no + 1)
                })?;
                let deg: usize = deg.parse().map_err(|_| {
                    anyhow!("line {}: bad generator degree '{deg}'", no + 1)
                })?;
                generators.push((name.to_string(), deg));
            }
            "relation" => {
                let rest: String =
                    toks.collect::<Vec<_>>().join(" ");
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| {
                    anyhow!("line {}: relation needs '='", no + 1)
                })?;
                relations.push(Relation {
                    lhs: parse_monomial(lhs.trim())
                        .with_context(|| format!("line {}", no + 1))?,
                    rhs: parse_relation_rhs(rhs.trim(), coeff)
                        .with_context(|| format!("line {}", no + 1))?,
                });
            }
            other => bail!("line {}: unknown key '{other}'", no + 1),
        }
    }
    let top = top.ok_or_else(|| anyhow!("missing 'top_degree' line"))?;
    let spec = RingSpec {
        top_degree: top,
        generators,
        relations,
    };
    make_ring(&spec).map_err(|e| anyhow!("bad ring description: {e}"))
}

/// Standalone ring file: a `coefficients Q|F2` line plus the shared body.
pub fn load_ring_file(path: &Path) -> Result<EitherRing> {
    let mut coefficients: Option<String> = None;
    let mut body = Vec::new();
    for (no, raw) in read_lines(path)?.iter().enumerate() {
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("coefficients") {
            let tok = rest.trim();
            if tok != "Q" && tok != "F2" {
                bail!("line {}: bad coefficients '{tok}': expected Q or F2", no + 1);
            }
            coefficients = Some(tok.to_string());
        } else {
            body.push((no, line.to_string()));
        }
    }
    match coefficients.as_deref() {
        Some("Q") => Ok(EitherRing::Q(parse_ring_body(&body, &q_coeff)?)),
        Some("F2") => Ok(EitherRing::F2(parse_ring_body(&body, &f2_coeff)?)),
        _ => bail!("missing 'coefficients' line"),
    }
}

/// Parse a class expression against a ring at a fixed degree.  Terms are
/// basis labels (as printed by the ring, e.g. `t^2` or `a*b`), optionally
/// scaled, or `[DEG:IDX]` basis references.
fn parse_class_expr<F: Field>(
    ring: &GradedRing<F>,
    degree: usize,
    s: &str,
    coeff: &impl Fn(&str) -> Result<F>,
) -> Result<CohClass<F>> {
    let mut acc = ring.zero();
    for (neg, term) in split_terms(s)? {
        if term == "0" {
            continue;
        }
        let (c, label) = split_coefficient(&term, coeff)?;
        let c = c.signed(neg);
        if label.is_empty() {
            bail!("bare scalar '{term}' is not a degree-{degree} class");
        }
        let idx = if let Some(inner) =
            label.strip_prefix('[').and_then(|t| t.strip_suffix(']'))
        {
            let (d, i) = inner
                .split_once(':')
                .ok_or_else(|| anyhow!("bad basis reference '[{inner}]'"))?;
            let d: usize = d
                .parse()
                .map_err(|_| anyhow!("bad degree in '[{inner}]'"))?;
            if d != degree {
                bail!("basis reference '[{inner}]' has degree {d}, expected {degree}");
            }
            i.parse::<usize>()
                .map_err(|_| anyhow!("bad index in '[{inner}]'"))?
        } else {
            ring.find_label(degree, &label).ok_or_else(|| {
                anyhow!("unknown degree-{degree} basis label '{label}'")
            })?
        };
        if ring.basis_class(degree, idx).is_none() {
            bail!("basis index {idx} out of range in degree {degree}");
        }
        acc = acc.add(&ring.class(&[(degree, idx, c)]));
    }
    Ok(acc)
}

/// A parsed class file: Chern data over Q or Stiefel-Whitney data over F2.
pub enum ClassFile {
    Chern { source: String, data: ChernData },
    Sw { source: String, data: SwData },
}

/// Class file: `kind chern|sw`, a ring source (`space DESC` or `ring PATH`,
/// resolved relative to the class file), optional `dim N` for Chern data,
/// then assignments `c1 = 2*t` / `w2 = a^2`.
pub fn load_class_file(path: &Path) -> Result<ClassFile> {
    let lines = read_lines(path)?;
    let mut kind: Option<String> = None;
    let mut source: Option<(String, String)> = None;
    let mut dim: i64 = 0;
    let mut assignments: Vec<(usize, String, String)> = Vec::new();

    for (no, raw) in lines.iter().enumerate() {
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match key {
            "kind" => {
                if rest != "chern" && rest != "sw" {
                    bail!("line {}: bad kind '{rest}': expected chern or sw", no + 1);
                }
                kind = Some(rest.to_string());
            }
            "space" | "ring" => {
                source = Some((key.to_string(), rest.to_string()));
            }
            "dim" => {
                dim = rest.parse().map_err(|_| {
                    anyhow!("line {}: bad dimension '{rest}'", no + 1)
                })?;
            }
            _ => {
                let (lhs, rhs) = line.split_once('=').ok_or_else(|| {
                    anyhow!("line {}: unknown key '{key}'", no + 1)
                })?;
                assignments.push((no, lhs.trim().to_string(), rhs.trim().to_string()));
            }
        }
    }

    let kind = kind.ok_or_else(|| anyhow!("missing 'kind' line"))?;
    let (source_kind, source_arg) =
        source.ok_or_else(|| anyhow!("missing ring source ('space' or 'ring' line)"))?;

    // Resolve the ring the classes live in.
    let (ring_q, ring_f2, source_name): (Option<GradedRing<Rat>>, Option<GradedRing<F2>>, String) =
        if source_kind == "space" {
            let model = resolve_space(&source_arg)?;
            (
                Some(model.ring_q.clone()),
                Some(model.ring_f2.clone()),
                model.name.clone(),
            )
        } else {
            let ring_path = path
                .parent()
                .unwrap_or_else(|| Path::new("."))
                .join(&source_arg);
            match load_ring_file(&ring_path)? {
                EitherRing::Q(r) => (Some(r), None, source_arg.clone()),
                EitherRing::F2(r) => (None, Some(r), source_arg.clone()),
            }
        };

    if kind == "chern" {
        let ring = ring_q
            .ok_or_else(|| anyhow!("chern data needs rational coefficients, ring '{source_arg}' is mod 2"))?;
        let mut classes = Vec::new();
        for (no, lhs, rhs) in &assignments {
            let i = lhs
                .strip_prefix('c')
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| {
                    anyhow!("line {}: bad class name '{lhs}': expected c1, c2, ...", no + 1)
                })?;
            if i == 0 {
                bail!("line {}: c0 is fixed by the dimension and cannot be assigned", no + 1);
            }
            let class = parse_class_expr(&ring, 2 * i, rhs, &q_coeff)
                .with_context(|| format!("line {}", no + 1))?;
            classes.push((i, class));
        }
        let data = ChernData::new(&ring, dim, classes)
            .map_err(|e| anyhow!("bad Chern data: {e}"))?;
        Ok(ClassFile::Chern {
            source: source_name,
            data,
        })
    } else {
        let ring = ring_f2
            .ok_or_else(|| anyhow!("sw data needs mod-2 coefficients, ring '{source_arg}' is rational"))?;
        let mut classes = Vec::new();
        for (no, lhs, rhs) in &assignments {
            let i = lhs
                .strip_prefix('w')
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| {
                    anyhow!("line {}: bad class name '{lhs}': expected w1, w2, ...", no + 1)
                })?;
            if i == 0 {
                bail!("line {}: w0 is always 1 and cannot be assigned", no + 1);
            }
            let class = parse_class_expr(&ring, i, rhs, &f2_coeff)
                .with_context(|| format!("line {}", no + 1))?;
            classes.push((i, class));
        }
        let data = SwData::new(&ring, classes)
            .map_err(|e| anyhow!("bad Stiefel-Whitney data: {e}"))?;
        Ok(ClassFile::Sw {
            source: source_name,
            data,
        })
    }
}

/// Catalog extension file: top-level `name`, `dim`, `orientable`, `note`
/// keys; `[ring Q]` and `[ring F2]` sections in the ring body grammar; an
/// optional `[pi1]` section in the presentation grammar.
pub fn load_space_file(path: &Path) -> Result<SpaceModel> {
    let lines = read_lines(path)?;
    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut orientable: Option<bool> = None;
    let mut note = String::new();
    let mut ring_q_lines: Vec<(usize, String)> = Vec::new();
    let mut ring_f2_lines: Vec<(usize, String)> = Vec::new();
    let mut pi1_lines: Vec<String> = Vec::new();
    let mut section: Option<&'static str> = None;

    for (no, raw) in lines.iter().enumerate() {
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            section = Some(match header.trim() {
                "ring Q" => "q",
                "ring F2" => "f2",
                "pi1" => "pi1",
                other => bail!("line {}: unknown section '[{other}]'", no + 1),
            });
            continue;
        }
        match section {
            Some("q") => ring_q_lines.push((no, line.to_string())),
            Some("f2") => ring_f2_lines.push((no, line.to_string())),
            Some("pi1") => pi1_lines.push(line.to_string()),
            _ => {
                let (key, rest) = match line.split_once(char::is_whitespace) {
                    Some((k, r)) => (k, r.trim()),
                    None => (line, ""),
                };
                match key {
                    "name" => name = Some(rest.to_string()),
                    "dim" => {
                        dim = Some(rest.parse().map_err(|_| {
                            anyhow!("line {}: bad dimension '{rest}'", no + 1)
                        })?)
                    }
                    "orientable" => {
                        orientable = Some(match rest {
                            "true" => true,
                            "false" => false,
                            other => bail!(
                                "line {}: bad orientable flag '{other}'",
                                no + 1
                            ),
                        })
                    }
                    "note" => note = rest.to_string(),
                    other => bail!("line {}: unknown key '{other}'", no + 1),
                }
            }
        }
    }

    let name = name.ok_or_else(|| anyhow!("missing 'name' line"))?;
    let dim = dim.ok_or_else(|| anyhow!("missing 'dim' line"))?;
    let orientable = orientable.ok_or_else(|| anyhow!("missing 'orientable' line"))?;
    if ring_q_lines.is_empty() {
        bail!("missing '[ring Q]' section");
    }
    if ring_f2_lines.is_empty() {
        bail!("missing '[ring F2]' section");
    }
    let ring_q = parse_ring_body(&ring_q_lines, &q_coeff)
        .context("in [ring Q] section")?;
    let ring_f2 = parse_ring_body(&ring_f2_lines, &f2_coeff)
        .context("in [ring F2] section")?;
    if ring_q.top_degree() != dim {
        bail!(
            "[ring Q] top degree {} does not match dim {dim}",
            ring_q.top_degree()
        );
    }
    if ring_f2.top_degree() != dim {
        bail!(
            "[ring F2] top degree {} does not match dim {dim}",
            ring_f2.top_degree()
        );
    }
    let pi1 = if pi1_lines.is_empty() {
        None
    } else {
        Some(parse_pi1_section(&pi1_lines)?)
    };

    Ok(SpaceModel {
        descriptor: SpaceDescriptor::Named(name.clone()),
        name,
        dim,
        orientable,
        ring_q,
        ring_f2,
        pi1,
        notes: note,
    })
}

fn parse_pi1_section(lines: &[String]) -> Result<GroupPresentation> {
    let mut generators: Option<usize> = None;
    let mut relators = Vec::new();
    for line in lines {
        let mut toks = line.split_whitespace();
        match toks.next().unwrap() {
            "generators" => {
                let tok = toks
                    .next()
                    .ok_or_else(|| anyhow!("'generators' needs a count"))?;
                generators =
                    Some(tok.parse().map_err(|_| anyhow!("bad generator count '{tok}'"))?);
            }
            "relator" => {
                let mut letters = Vec::new();
                for tok in toks {
                    letters.push(
                        tok.parse::<i32>()
                            .map_err(|_| anyhow!("bad relator letter '{tok}'"))?,
                    );
                }
                relators.push(Word(letters));
            }
            other => bail!("unknown key '{other}' in [pi1] section"),
        }
    }
    let generators = generators.ok_or_else(|| anyhow!("[pi1] missing 'generators'"))?;
    GroupPresentation::new(generators, relators)
        .map_err(|e| anyhow!("bad [pi1] presentation: {e}"))
}

/// Environment variable naming a directory of extra `.space` files.
pub const CATALOG_DIR_VAR: &str = "FLATCONN_CATALOG_DIR";

/// Resolve a space name: first as a built-in descriptor, then as
/// `NAME.space` in the catalog extension directory.
pub fn resolve_space(name: &str) -> Result<SpaceModel> {
    if let Ok(d) = SpaceDescriptor::parse(name) {
        return get_space(&d).map_err(|e| anyhow!("{e}"));
    }
    if let Ok(dir) = std::env::var(CATALOG_DIR_VAR) {
        let candidate = Path::new(&dir).join(format!("{name}.space"));
        if candidate.is_file() {
            return load_space_file(&candidate)
                .with_context(|| format!("in {}", candidate.display()));
        }
    }
    bail!(
        "unknown space '{name}': not a descriptor (S2, T3, Sigma2, RP5, CP2, products with 'x') \
         and no {name}.space file in ${CATALOG_DIR_VAR}"
    )
}

/// All extension models found in the catalog directory, sorted by name.
pub fn extension_spaces() -> Result<Vec<SpaceModel>> {
    let Ok(dir) = std::env::var(CATALOG_DIR_VAR) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let entries = fs::read_dir(&dir)
        .with_context(|| format!("cannot read ${CATALOG_DIR_VAR} directory {dir}"))?;
    for entry in entries {
        let path = entry?.path();
        if path.extension().and_then(|e| e.to_str()) == Some("space") {
            out.push(
                load_space_file(&path)
                    .with_context(|| format!("in {}", path.display()))?,
            );
        }
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}
