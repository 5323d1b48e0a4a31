use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{parser::ArgMatches, Args};
use intform::classify::e8;
use intform::{Catalog, CatalogEntry, IntegralLattice, LatticeClass, Parity, SurfaceInvariants};

use crate::Failure;

/// One lattice, from exactly one flag or else standard input.
#[derive(Debug, Args)]
pub struct LatticeSource {
    /// Gram matrix as a JSON array, e.g. "[[0,1],[1,0]]"
    #[arg(long)]
    gram: Option<String>,
    /// Built-in lattice: E8, E8neg, U, one, minus_one
    #[arg(long)]
    named: Option<String>,
    /// File holding a Gram matrix or {"gram": ...}
    #[arg(long)]
    file: Option<PathBuf>,
    /// Lattice class expression, e.g. "2E8(-1) + 3U"
    #[arg(long)]
    class: Option<String>,
}

/// Summands for `lattice sum`; the flags may repeat and are taken in the
/// order they appear on the command line.
#[derive(Debug, Args)]
pub struct LatticeSources {
    #[arg(long)]
    gram: Vec<String>,
    #[arg(long)]
    named: Vec<String>,
    #[arg(long)]
    file: Vec<PathBuf>,
    #[arg(long)]
    class: Vec<String>,
}

fn read_stdin() -> Result<String, Failure> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| Failure::Input(format!("cannot read standard input: {e}")))?;
    Ok(text)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_gram(text: &str) -> Result<IntegralLattice, Failure> {
    text.trim()
        .parse()
        .map_err(|e| Failure::Input(format!("bad matrix: {e}")))
}

pub fn named_lattice(name: &str) -> Result<IntegralLattice, Failure> {
    match name {
        "E8" => Ok(e8()),
        "E8neg" | "E8(-1)" => Ok(e8().negated()),
        "U" => Ok(IntegralLattice::hyperbolic()),
        "one" | "<1>" => Ok(IntegralLattice::diagonal(&[1])),
        "minus_one" | "<-1>" => Ok(IntegralLattice::diagonal(&[-1])),
        other => Err(Failure::Input(format!(
            "unknown lattice {other:?} (known: E8, E8neg, U, one, minus_one)"
        ))),
    }
}

fn class_lattice(expr: &str) -> Result<IntegralLattice, Failure> {
    let class: LatticeClass = expr
        .parse()
        .map_err(|e| Failure::Input(format!("bad class expression: {e}")))?;
    Ok(class.to_lattice())
}

impl LatticeSource {
    pub fn read(&self) -> Result<IntegralLattice, Failure> {
        let given = [
            self.gram.is_some(),
            self.named.is_some(),
            self.file.is_some(),
            self.class.is_some(),
        ];
        match given.iter().filter(|&&g| g).count() {
            0 => parse_gram(&read_stdin()?),
            1 => {
                if let Some(g) = &self.gram {
                    parse_gram(g)
                } else if let Some(n) = &self.named {
                    named_lattice(n)
                } else if let Some(p) = &self.file {
                    parse_gram(&read_file(p)?)
                } else {
                    class_lattice(self.class.as_deref().unwrap_or_default())
                }
            }
            _ => Err(Failure::Input(
                "give at most one of --gram, --named, --file, --class".into(),
            )),
        }
    }
}

impl LatticeSources {
    /// Summands in command-line order, using the raw matches for positions.
    pub fn read_ordered(matches: &ArgMatches) -> Result<Vec<IntegralLattice>, Failure> {
        let mut tagged: Vec<(usize, IntegralLattice)> = Vec::new();
        for id in ["gram", "named", "file", "class"] {
            let (Some(indices), Some(values)) = (matches.indices_of(id), matches.get_raw(id))
            else {
                continue;
            };
            for (index, raw) in indices.zip(values) {
                let text = raw.to_string_lossy();
                let lattice = match id {
                    "gram" => parse_gram(&text)?,
                    "named" => named_lattice(&text)?,
                    "file" => parse_gram(&read_file(Path::new(&*text))?)?,
                    _ => class_lattice(&text)?,
                };
                tagged.push((index, lattice));
            }
        }
        if tagged.is_empty() {
            return Err(Failure::Input("sum needs at least one summand".into()));
        }
        tagged.sort_by_key(|(i, _)| *i);
        Ok(tagged.into_iter().map(|(_, l)| l).collect())
    }
}

/// One surface, from the catalog, a file, an inline JSON string, or stdin.
#[derive(Debug, Args)]
pub struct SurfaceSource {
    /// Catalog entry name
    #[arg(long)]
    named: Option<String>,
    /// File holding invariants JSON
    #[arg(long)]
    file: Option<PathBuf>,
    /// Invariants as an inline JSON object
    #[arg(long)]
    invariants: Option<String>,
    /// Catalog file to use instead of the built-in one
    #[arg(long)]
    catalog: Option<PathBuf>,
}

/// Invariants plus catalog metadata when the surface came from the catalog.
pub struct Surface {
    pub invariants: SurfaceInvariants,
    pub entry: Option<CatalogEntry>,
}

impl Surface {
    pub fn parity_hint(&self) -> Option<Parity> {
        self.entry.as_ref().and_then(CatalogEntry::parity_hint)
    }
}

fn parse_invariants(text: &str) -> Result<SurfaceInvariants, Failure> {
    serde_json::from_str(text.trim()).map_err(|e| Failure::Input(format!("bad invariants: {e}")))
}

impl SurfaceSource {
    pub fn with_catalog(catalog: Option<PathBuf>) -> Self {
        SurfaceSource {
            named: None,
            file: None,
            invariants: None,
            catalog,
        }
    }

    pub fn catalog(&self) -> Result<Catalog, Failure> {
        match &self.catalog {
            Some(path) => Catalog::load(path).map_err(|e| Failure::Input(e.to_string())),
            None => Ok(Catalog::builtin()),
        }
    }

    pub fn read(&self) -> Result<Surface, Failure> {
        let given = [
            self.named.is_some(),
            self.file.is_some(),
            self.invariants.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() > 1 {
            return Err(Failure::Input(
                "give at most one of --named, --file, --invariants".into(),
            ));
        }
        if let Some(name) = &self.named {
            let catalog = self.catalog()?;
            let entry = catalog
                .get(name)
                .cloned()
                .ok_or_else(|| Failure::Input(format!("unknown catalog entry {name:?}")))?;
            return Ok(Surface {
                invariants: entry.invariants,
                entry: Some(entry),
            });
        }
        let text = match (&self.file, &self.invariants) {
            (Some(p), _) => read_file(p)?,
            (_, Some(s)) => s.clone(),
            _ => read_stdin()?,
        };
        Ok(Surface {
            invariants: parse_invariants(&text)?,
            entry: None,
        })
    }
}
