//! Argument parsing and the batch commands.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use opetope_core::genmult::{check_gen_axioms, GenMulticat};
use opetope_core::opetopes::{
    enumerate_multitopes, enumerate_opetopes, lift, manifestation_count, multitope_term, parse_multitope,
    verify_correspondence,
};
use opetope_core::category::check_category;
use opetope_core::symmult::{check_sym_axioms, SymMulticat};
use opetope_core::xi::{materialize, xi_inverse};
use serde::Serialize;

use crate::formats::{
    parse_input, CorrespondenceDoc, EnumerationDoc, GenDoc, Input, ManifestationsDoc, OpetopeDoc, ProfileDoc,
    ReportDoc, SliceArrowDoc, SliceDoc, SymDoc,
};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Opetope,
    Multitope,
}

/// Multicategories, slices, opetopes and multitopes.
#[derive(Debug, Parser)]
#[command(name = "opetope", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input document; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 2)]
    pub dim: usize,
    /// Node bound for lazily generated structures.
    #[arg(long, global = true, default_value_t = 3)]
    pub bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a category or multicategory document.
    Check,
    /// Symmetrise a generalised multicategory.
    Xi,
    /// Recover a generalised multicategory from a symmetric one.
    XiInverse,
    /// List the slice of a multicategory up to the bound.
    Slice,
    /// List opetopes or multitopes of a dimension up to the bound.
    Enumerate {
        #[arg(long, value_enum, default_value_t = Kind::Multitope)]
        kind: Kind,
    },
    /// Count the manifestations of an opetope given by its multitope term.
    Manifestations {
        #[arg(long)]
        seed: String,
    },
    /// Compare opetopes with multitopes in a dimension up to the bound.
    Verify,
}

/// Runs a command, writing its document to `out`. Returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Check => check(cli, out),
        Command::Xi => {
            let Input::Gen(m) = read_input(cli)? else {
                return Err(CliError::Precondition("xi needs a generalised multicategory".into()));
            };
            let q = materialize(&m)?;
            emit_json(out, &SymDoc::from_multicat(&q))?;
            Ok(0)
        }
        Command::XiInverse => {
            let Input::Sym(q) = read_input(cli)? else {
                return Err(CliError::Precondition("xi-inverse needs a symmetric multicategory".into()));
            };
            let r = xi_inverse(&q.into())?;
            emit_json(out, &GenDoc::from_multicat(&r.multicat))?;
            Ok(0)
        }
        Command::Slice => slice(cli, out),
        Command::Enumerate { kind } => enumerate(cli, *kind, out),
        Command::Manifestations { seed } => {
            let m = parse_multitope(cli.dim, seed).map_err(|e| match e {
                opetope_core::Error::Precondition(m) => CliError::Parse(m),
                other => CliError::Parse(other.to_string()),
            })?;
            let count = manifestation_count(cli.dim, &lift(cli.dim, &m)?)?;
            let doc = ManifestationsDoc {
                dim: cli.dim,
                seed: multitope_term(&m),
                count,
            };
            match cli.format {
                Format::Json => emit_json(out, &doc)?,
                Format::Text => writeln!(out, "{count}")?,
            }
            Ok(0)
        }
        Command::Verify => {
            let c = verify_correspondence(cli.dim, cli.bound)?;
            let doc = CorrespondenceDoc::from(&c);
            match cli.format {
                Format::Json => emit_json(out, &doc)?,
                Format::Text => {
                    writeln!(out, "dimension {} at bound {}", c.dim, cli.bound)?;
                    writeln!(out, "{}", c.equivalence.to_string().trim_end())?;
                    writeln!(out, "classes: {}", c.classes)?;
                    writeln!(out, "multitopes: {}", c.multitopes)?;
                    writeln!(out, "object bijection: {}", c.object_bijection)?;
                    for n in &c.notes {
                        writeln!(out, "note: {n}")?;
                    }
                    writeln!(out, "{}", if c.verdict() { "pass" } else { "fail" })?;
                }
            }
            Ok(if c.verdict() { 0 } else { 1 })
        }
    }
}

fn read_input(cli: &Cli) -> Result<Input, CliError> {
    let text = match &cli.input {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    parse_input(&text)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(doc).map_err(|e| CliError::Internal(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn check(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let (kind, report) = match read_input(cli)? {
        Input::Category(c) => ("category", check_category(&c)),
        Input::Gen(m) => ("generalised", check_gen_axioms(&GenMulticat::from(m), cli.bound)),
        Input::Sym(q) => ("symmetric", check_sym_axioms(&SymMulticat::from(q), cli.bound)),
    };
    let doc = ReportDoc::new(kind, cli.bound, &report);
    match cli.format {
        Format::Json => emit_json(out, &doc)?,
        Format::Text => {
            write!(out, "{report}")?;
            writeln!(out, "{kind}: {} violations", doc.violations.len())?;
        }
    }
    Ok(if doc.ok { 0 } else { 1 })
}

fn slice(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let b = cli.bound;
    let doc = match read_input(cli)? {
        Input::Gen(m) => {
            let s = GenMulticat::from(m).slice();
            let mut arrows = Vec::new();
            for f in s.arrows(b) {
                arrows.push(SliceArrowDoc {
                    arrow: f.to_string(),
                    profile: ProfileDoc {
                        inputs: s.source(&f)?.iter().map(|x| x.to_string()).collect(),
                        output: s.target(&f)?.to_string(),
                    },
                });
            }
            SliceDoc {
                kind: "generalised".into(),
                bound: b,
                objects: s.objects(b).iter().map(|x| x.to_string()).collect(),
                arrows,
            }
        }
        Input::Sym(q) => {
            let s = SymMulticat::from(q).slice();
            let mut arrows = Vec::new();
            for f in s.arrows(b) {
                arrows.push(SliceArrowDoc {
                    arrow: f.to_string(),
                    profile: (&s.profile(&f)?).into(),
                });
            }
            SliceDoc {
                kind: "symmetric".into(),
                bound: b,
                objects: s.objects(b).iter().map(|x| x.to_string()).collect(),
                arrows,
            }
        }
        Input::Category(_) => return Err(CliError::Precondition("slice needs a multicategory".into())),
    };
    match cli.format {
        Format::Json => emit_json(out, &doc)?,
        Format::Text => {
            for x in &doc.objects {
                writeln!(out, "object {x}")?;
            }
            for a in &doc.arrows {
                writeln!(out, "arrow {} : ({}) -> {}", a.arrow, a.profile.inputs.join(", "), a.profile.output)?;
            }
            writeln!(out, "{} objects, {} arrows", doc.objects.len(), doc.arrows.len())?;
        }
    }
    Ok(0)
}

fn enumerate(cli: &Cli, kind: Kind, out: &mut dyn Write) -> Result<i32, CliError> {
    let (k, b) = (cli.dim, cli.bound);
    let mut doc = EnumerationDoc {
        kind: match kind {
            Kind::Opetope => "opetope",
            Kind::Multitope => "multitope",
        }
        .into(),
        dim: k,
        bound: b,
        count: 0,
        multitopes: vec![],
        opetopes: vec![],
    };
    match kind {
        Kind::Multitope => {
            for m in enumerate_multitopes(k, b) {
                let t = multitope_term(&m);
                if cli.format == Format::Text {
                    writeln!(out, "{t}")?;
                }
                doc.multitopes.push(t);
            }
            doc.count = doc.multitopes.len();
        }
        Kind::Opetope => {
            let mut items = enumerate_opetopes(k, b);
            items.sort_by_cached_key(|x| x.to_string());
            for x in &items {
                let d = OpetopeDoc::new(k, x)?;
                if cli.format == Format::Text {
                    writeln!(out, "{} {:?} {:?} {}", d.tree, d.rho, d.tau, d.term)?;
                }
                doc.opetopes.push(d);
            }
            doc.count = doc.opetopes.len();
        }
    }
    match cli.format {
        Format::Json => emit_json(out, &doc)?,
        Format::Text => writeln!(out, "count {}", doc.count)?,
    }
    Ok(0)
}
