use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::SeifertMatrix;
use crate::intmat::IntMatrix;
use crate::poly::IntPolynomial;

const BUILTIN: &str = include_str!("../../data/knots.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("catalog line {line}: {message}")]
pub struct CatalogError {
    pub line: usize,
    pub message: String,
}

impl CatalogError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotCatalogEntry {
    pub name: String,
    pub seifert: SeifertMatrix,
    pub alexander_reference: Option<IntPolynomial>,
}

/// Ordered collection of named knots.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<KnotCatalogEntry>,
}

fn parse_ints(tokens: &[&str], line: usize) -> Result<Vec<i64>, CatalogError> {
    tokens
        .iter()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CatalogError::new(line, format!("expected integer, got `{t}`")))
        })
        .collect()
}

impl Catalog {
    /// unknot, trefoil, figure-eight, t2_5 and t3_4.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("built-in catalog parses")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CatalogError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| CatalogError::new(0, format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();
        let mut entries: Vec<KnotCatalogEntry> = Vec::new();
        while let Some((lineno, line)) = lines.next() {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let (name, dim) = match tokens.as_slice() {
                ["knot", name, dim] => {
                    let dim = dim
                        .parse::<usize>()
                        .map_err(|_| CatalogError::new(lineno, format!("bad dimension `{dim}`")))?;
                    (name.to_string(), dim)
                }
                _ => return Err(CatalogError::new(lineno, format!("expected `knot <name> <dim>`, got `{line}`"))),
            };
            if entries.iter().any(|e| e.name == name) {
                return Err(CatalogError::new(lineno, format!("duplicate knot `{name}`")));
            }
            let mut rows = Vec::with_capacity(dim);
            for _ in 0..dim {
                let (rl, row) = lines
                    .next()
                    .ok_or_else(|| CatalogError::new(lineno, format!("`{name}`: expected {dim} rows")))?;
                let tokens: Vec<&str> = row.split_whitespace().collect();
                let row = parse_ints(&tokens, rl)?;
                if row.len() != dim {
                    return Err(CatalogError::new(rl, format!("row has {} entries, expected {dim}", row.len())));
                }
                rows.push(row);
            }
            let matrix = IntMatrix::from_rows(&rows).expect("rows checked square");
            let seifert = SeifertMatrix::new(matrix).map_err(|e| CatalogError::new(lineno, format!("`{name}`: {e}")))?;
            let mut alexander_reference = None;
            if let Some(&(al, next)) = lines.peek() {
                if let Some(rest) = next.strip_prefix("alexander") {
                    let tokens: Vec<&str> = rest.split_whitespace().collect();
                    alexander_reference = Some(IntPolynomial::from_i64(&parse_ints(&tokens, al)?));
                    lines.next();
                }
            }
            entries.push(KnotCatalogEntry {
                name,
                seifert,
                alexander_reference,
            });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[KnotCatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&KnotCatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    /// Replaces an entry of the same name or appends.
    pub fn insert(&mut self, entry: KnotCatalogEntry) {
        match self.entries.iter_mut().find(|e| e.name == entry.name) {
            Some(slot) => *slot = entry,
            None => self.entries.push(entry),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&entry_text(&e.name, e.seifert.matrix(), e.alexander_reference.as_ref()));
        }
        out
    }
}

/// One catalog record for `m`.
pub fn entry_text(name: &str, m: &IntMatrix, alexander: Option<&IntPolynomial>) -> String {
    let mut out = format!("knot {name} {}\n{m}", m.dim());
    if let Some(p) = alexander {
        let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "alexander {}", coeffs.join(" "));
    }
    out
}
