//! JSON form of a character table.

use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::cyclotomic::CyclotomicValue;
use crate::error::Result;

pub const TABLE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassExport {
    pub order: u64,
    pub size: usize,
    /// 1-based cycle notation.
    pub representative: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterExport {
    pub degree: u64,
    /// One eigenvalue-multiplicity vector per class.
    pub values: Vec<CyclotomicValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableExport {
    pub version: u32,
    pub group: String,
    pub order: String,
    pub exponent: u64,
    pub dixon_prime: u64,
    pub classes: Vec<ClassExport>,
    pub characters: Vec<CharacterExport>,
}

impl TableExport {
    pub fn from_table(name: &str, t: &CharacterTable) -> Self {
        let cd = t.classes();
        TableExport {
            version: TABLE_SCHEMA_VERSION,
            group: name.to_string(),
            order: t.group_order().to_string(),
            exponent: t.exponent(),
            dixon_prime: t.dixon_prime(),
            classes: (0..cd.len())
                .map(|i| ClassExport {
                    order: cd.element_order(i),
                    size: cd.size(i),
                    representative: cd.rep(i).to_cycle_string(),
                })
                .collect(),
            characters: t
                .characters()
                .iter()
                .map(|c| CharacterExport {
                    degree: c.degree(),
                    values: c.values().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Human-readable table: class header, then one row per character.
pub fn render_text(name: &str, t: &CharacterTable) -> String {
    let cd = t.classes();
    let mut rows: Vec<Vec<String>> = Vec::new();
    rows.push(
        std::iter::once("order".to_string())
            .chain((0..cd.len()).map(|i| cd.element_order(i).to_string()))
            .collect(),
    );
    rows.push(
        std::iter::once("size".to_string())
            .chain((0..cd.len()).map(|i| cd.size(i).to_string()))
            .collect(),
    );
    for (k, c) in t.characters().iter().enumerate() {
        rows.push(
            std::iter::once(format!("X.{}", k + 1))
                .chain(c.values().iter().map(|v| v.to_string()))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..=cd.len())
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = format!("{name}: order {}, {} classes\n", t.group_order(), cd.len());
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
