//! `flatconn` — command-line calculators for flat-connection lower bounds,
//! characteristic-class algebra, and holonomy checks over a catalog of
//! closed-manifold models.

mod formats;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use flatconn_core::bounds::{
    coker_rank_bound, dispatch_theorem_1_2, pi0_verdict, vanishing_degrees, BoundQuery,
    VANISHING_CITATION,
};
use flatconn_core::catalog::standard_catalog;
use flatconn_core::charclass::{
    chern_character, pontryagin_components, realize_single_class, realize_single_class_ko,
    realize_single_class_su,
};
use flatconn_core::groups::GroupFamily;
use flatconn_core::holonomy::{holonomy, verify_representation, Word};
use flatconn_core::ktheory::{so_spin_reducible, su_reducible};
use flatconn_core::matrix::Matrix;
use flatconn_core::ring::smash_with_sphere;

use formats::{
    extension_spaces, load_class_file, load_presentation, load_representation, parse_group_tag,
    parse_word, resolve_space, ClassFile, RepFile,
};
use render::{
    bound_report_json, bound_report_text, catalog_detail_json, catalog_detail_text,
    catalog_list_json, catalog_list_text, ch_json, ch_text, class_parts, exact_entry_string,
    float_entry_string, holonomy_json, holonomy_text, matrix_rows, realize_json, realize_text,
    reduce_json, reduce_text, vanish_json, vanish_text, HolonomyView, RealizeView, ReductionView,
};

const CH_CITATION: &str = "Appendix (Chern character)";
const SU_REDUCE_CITATION: &str = "Corollary 5.2";
const SO_REDUCE_CITATION: &str = "Section 5 (orientation criterion)";
const SPIN_REDUCE_CITATION: &str = "Section 5 (spin criterion)";
const HOLONOMY_CITATION: &str = "Proposition 2.7";

#[derive(Parser)]
#[command(
    name = "flatconn",
    version,
    about = "Lower bounds for spaces of flat connections, with characteristic-class \
             and holonomy calculators over exact arithmetic"
)]
struct Cli {
    /// Output format: human-readable text or structured JSON.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    /// Unitary realization: c_i = q x.
    Plain,
    /// Determinant-one realization: d_i = q x with c_1 = 0.
    Su,
    /// Real realization: p_i = q x (degree must be divisible by 4).
    Ko,
}

#[derive(Subcommand)]
enum Cmd {
    /// Unified lower bound: m = 0 gives the component count verdict,
    /// m > 0 the flat-classes rank bound.
    Bound(FamilyArgs),
    /// Are there infinitely many components of flat connections?
    Pi0(Pi0Args),
    /// Cokernel rank bound for the restriction away from flat classes.
    Coker(FamilyArgs),
    /// Vanishing-degree bookkeeping for product families.
    Vanish {
        /// Shift parameter of the family.
        #[arg(long)]
        m: usize,
        /// Total dimension cap for the listed degrees.
        #[arg(long)]
        dim: usize,
    },
    /// Structure-group reduction verdicts from a class file.
    Reduce {
        /// Class file (kind chern or sw).
        #[arg(long)]
        class: PathBuf,
    },
    /// Chern character of the data in a class file.
    Ch {
        /// Class file (kind chern).
        #[arg(long)]
        class: PathBuf,
    },
    /// Realize a single even class as characteristic data, reporting q.
    Realize {
        /// Base space descriptor, e.g. S3 or T2.
        #[arg(long)]
        space: String,
        /// Degree shift applied before realizing (sphere smash).
        #[arg(long)]
        m: usize,
        /// Degree of the basis class to realize.
        #[arg(long)]
        degree: usize,
        /// Basis index within that degree.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, value_enum, default_value_t = Variant::Plain)]
        variant: Variant,
    },
    /// Verify a representation against a presentation; optionally evaluate
    /// the holonomy of a word (letters a..z, trailing '-' for inverses).
    Holonomy {
        /// Presentation file (.grp).
        #[arg(long)]
        presentation: PathBuf,
        /// Representation file (.rep).
        #[arg(long)]
        rep: PathBuf,
        /// Word to evaluate, e.g. "aba-b-".
        #[arg(long)]
        word: Option<String>,
    },
    /// List the space catalog, or show one space in detail.
    Catalog {
        /// Space descriptor or extension name to show in detail.
        #[arg(long)]
        space: Option<String>,
    },
}

#[derive(clap::Args)]
struct FamilyArgs {
    /// Structure group family: U, SU, O, SO, or Spin.
    #[arg(long)]
    group: String,
    /// Family size n.
    #[arg(long)]
    n: u32,
    /// Space descriptor, e.g. RP9 or S2xS3.
    #[arg(long)]
    space: String,
    /// Shift parameter m.
    #[arg(long, default_value_t = 0)]
    m: usize,
}

#[derive(clap::Args)]
struct Pi0Args {
    /// Structure group family: U, SU, O, SO, or Spin.
    #[arg(long)]
    group: String,
    /// Family size n.
    #[arg(long)]
    n: u32,
    /// Space descriptor, e.g. RP9 or S2xS3.
    #[arg(long)]
    space: String,
}

fn family(group: &str, n: u32) -> Result<GroupFamily> {
    let tag = parse_group_tag(group)?;
    GroupFamily::new(tag, n).ok_or_else(|| anyhow!("bad family size {n}: needs n >= 1"))
}

/// Either rendering of one report.
enum Output {
    Text(String),
    Json(Value),
}

fn run(cli: &Cli) -> Result<Output> {
    let json = cli.format == Format::Structured;
    let pick = |text: String, value: Value| {
        if json {
            Output::Json(value)
        } else {
            Output::Text(text)
        }
    };

    match &cli.cmd {
        Cmd::Bound(args) => {
            let fam = family(&args.group, args.n)?;
            let space = resolve_space(&args.space)?;
            let report = dispatch_theorem_1_2(BoundQuery {
                family: fam,
                space: &space,
                m: args.m,
            });
            Ok(pick(
                bound_report_text("bound", &report),
                bound_report_json("bound", &report),
            ))
        }
        Cmd::Pi0(args) => {
            let fam = family(&args.group, args.n)?;
            let space = resolve_space(&args.space)?;
            let report = pi0_verdict(fam, &space);
            Ok(pick(
                bound_report_text("pi0", &report),
                bound_report_json("pi0", &report),
            ))
        }
        Cmd::Coker(args) => {
            let fam = family(&args.group, args.n)?;
            let space = resolve_space(&args.space)?;
            let report = coker_rank_bound(BoundQuery {
                family: fam,
                space: &space,
                m: args.m,
            });
            Ok(pick(
                bound_report_text("coker", &report),
                bound_report_json("coker", &report),
            ))
        }
        Cmd::Vanish { m, dim } => {
            let degrees = vanishing_degrees(*m, *dim);
            Ok(pick(
                vanish_text(*m, *dim, &degrees, VANISHING_CITATION),
                vanish_json(*m, *dim, &degrees, VANISHING_CITATION),
            ))
        }
        Cmd::Reduce { class } => {
            let views = match load_class_file(class)? {
                ClassFile::Chern { source, data } => {
                    let report = su_reducible(&data);
                    (
                        "chern",
                        source,
                        vec![ReductionView::from_report(
                            &report,
                            "c1",
                            SU_REDUCE_CITATION,
                        )],
                    )
                }
                ClassFile::Sw { source, data } => {
                    let (so, spin) = so_spin_reducible(&data);
                    (
                        "sw",
                        source,
                        vec![
                            ReductionView::from_report(&so, "w1", SO_REDUCE_CITATION),
                            ReductionView::from_report(&spin, "w1 + w2", SPIN_REDUCE_CITATION),
                        ],
                    )
                }
            };
            let (kind, source, views) = views;
            Ok(pick(
                reduce_text(kind, &source, &views),
                reduce_json(kind, &source, &views),
            ))
        }
        Cmd::Ch { class } => {
            let (source, data) = match load_class_file(class)? {
                ClassFile::Chern { source, data } => (source, data),
                ClassFile::Sw { .. } => {
                    bail!("'ch' needs a class file with kind chern, this one has kind sw")
                }
            };
            let character = chern_character(&data);
            let parts = class_parts(character.as_class());
            Ok(pick(
                ch_text(&source, data.dim(), &parts, CH_CITATION),
                ch_json(&source, data.dim(), &parts, CH_CITATION),
            ))
        }
        Cmd::Realize {
            space,
            m,
            degree,
            index,
            variant,
        } => {
            let model = resolve_space(space)?;
            let ring = smash_with_sphere(&model.ring_q, *m)
                .map_err(|e| anyhow!("cannot shift {}: {e}", model.name))?;
            let x = ring.basis_class(*degree, *index).ok_or_else(|| {
                anyhow!(
                    "no basis class at degree {degree}, index {index} (betti = {})",
                    ring.betti(*degree)
                )
            })?;
            let label = ring.label(*degree, *index).to_string();
            let (variant_name, citation, q, classes, character_ok) = match variant {
                Variant::Plain | Variant::Su => {
                    let (realized, q) = if matches!(variant, Variant::Plain) {
                        realize_single_class(&x).map_err(|e| anyhow!("{e}"))?
                    } else {
                        realize_single_class_su(&x).map_err(|e| anyhow!("{e}"))?
                    };
                    let classes = realized
                        .classes()
                        .map(|(i, c)| (format!("c{i}"), format!("{c}")))
                        .collect();
                    let ok = chern_character(&realized).as_class() == &x;
                    let (name, cite): (&'static str, &'static str) =
                        if matches!(variant, Variant::Plain) {
                            ("plain", "Lemma 3.3")
                        } else {
                            ("su", "Lemma 5.4")
                        };
                    (name, cite, q, classes, ok)
                }
                Variant::Ko => {
                    let (kappa, q) =
                        realize_single_class_ko(&x).map_err(|e| anyhow!("{e}"))?;
                    let classes = pontryagin_components(&kappa)
                        .into_iter()
                        .map(|(i, c)| (format!("p{i}"), format!("{c}")))
                        .collect();
                    let ok = kappa.character().as_class() == &x;
                    ("ko", "Lemma 4.1", q, classes, ok)
                }
            };
            if !character_ok {
                bail!("internal check failed: realized character differs from the input class");
            }
            let view = RealizeView {
                space: model.name.clone(),
                m: *m,
                top_degree: ring.top_degree(),
                degree: *degree,
                index: *index,
                label,
                variant: variant_name,
                q,
                classes,
                character_ok,
                citation,
            };
            Ok(pick(realize_text(&view), realize_json(&view)))
        }
        Cmd::Holonomy {
            presentation,
            rep,
            word,
        } => {
            let p = load_presentation(presentation)?;
            let rep = load_representation(rep)?;
            let word = word
                .as_deref()
                .map(parse_word)
                .transpose()?
                .map(|w| -> Result<Word> {
                    w.validate(p.generators)
                        .map_err(|e| anyhow!("bad word: {e}"))?;
                    Ok(w)
                })
                .transpose()?;
            let view = match &rep {
                RepFile::Exact(r) => {
                    let outcome =
                        verify_representation(r, &p).map_err(|e| anyhow!("{e}"))?;
                    let word_part = word
                        .map(|w| -> Result<_> {
                            let h = holonomy(r, &w).map_err(|e| anyhow!("{e}"))?;
                            let dev = h.sub(&Matrix::identity(h.n())).max_abs();
                            Ok((
                                formats::word_string(&w),
                                matrix_rows(&h, exact_entry_string),
                                dev,
                            ))
                        })
                        .transpose()?;
                    HolonomyView {
                        generators: p.generators,
                        relators: p.relators.len(),
                        family: format!("{}", rep.family()),
                        mode: rep.mode(),
                        tolerance: rep.tolerance(),
                        verification: outcome,
                        word: word_part,
                        citation: HOLONOMY_CITATION,
                    }
                }
                RepFile::Float(r) => {
                    let outcome =
                        verify_representation(r, &p).map_err(|e| anyhow!("{e}"))?;
                    let word_part = word
                        .map(|w| -> Result<_> {
                            let h = holonomy(r, &w).map_err(|e| anyhow!("{e}"))?;
                            let dev = h.sub(&Matrix::identity(h.n())).max_abs();
                            Ok((
                                formats::word_string(&w),
                                matrix_rows(&h, float_entry_string),
                                dev,
                            ))
                        })
                        .transpose()?;
                    HolonomyView {
                        generators: p.generators,
                        relators: p.relators.len(),
                        family: format!("{}", rep.family()),
                        mode: rep.mode(),
                        tolerance: rep.tolerance(),
                        verification: outcome,
                        word: word_part,
                        citation: HOLONOMY_CITATION,
                    }
                }
            };
            Ok(pick(holonomy_text(&view), holonomy_json(&view)))
        }
        Cmd::Catalog { space } => match space {
            Some(name) => {
                let model = resolve_space(name)?;
                Ok(pick(catalog_detail_text(&model), catalog_detail_json(&model)))
            }
            None => {
                let built_in = standard_catalog();
                let extensions = extension_spaces()?;
                Ok(pick(
                    catalog_list_text(&built_in, &extensions),
                    catalog_list_json(&built_in, &extensions),
                ))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Output::Json(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
