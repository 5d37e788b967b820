//! Group files: `{ "p": 2, "order": 8, "table": [[...]] }` or
//! `{ "pc_presentation": { "p": 2, "generators": [...], "relations": [...] } }`.

use serde::{Deserialize, Serialize};

use super::{GroupTable, PcPresentation};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Table {
        p: u32,
        order: usize,
        table: Vec<Vec<usize>>,
    },
    Pc {
        pc_presentation: PcPresentation,
    },
}

impl GroupFile {
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|source| Error::Json {
            path: origin.to_string(),
            source,
        })
    }

    pub fn to_group(&self, cap: usize) -> Result<GroupTable> {
        match self {
            GroupFile::Table { p, order, table } => {
                if *order != table.len() {
                    return Err(Error::Invalid(format!(
                        "field \"order\" is {order} but the table has {} rows",
                        table.len()
                    )));
                }
                GroupTable::from_table(*p, table.clone(), cap)
            }
            GroupFile::Pc { pc_presentation } => pc_presentation.to_group(cap),
        }
    }

    pub fn from_group(g: &GroupTable) -> Self {
        GroupFile::Table {
            p: g.p(),
            order: g.order(),
            table: g.table_rows(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_formats_load() {
        let pc = r#"{"pc_presentation":{"p":2,"generators":["s","r","c"],"relations":["r^2 = c","r^s = r*c"]}}"#;
        let g = GroupFile::from_json(pc, "inline").unwrap().to_group(1024).unwrap();
        assert_eq!(g, GroupTable::dihedral8());
        let text = serde_json::to_string(&GroupFile::from_group(&g)).unwrap();
        let back = GroupFile::from_json(&text, "inline").unwrap().to_group(1024).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn order_field_checked() {
        let bad = r#"{"p":2,"order":4,"table":[[0,1],[1,0]]}"#;
        let err = GroupFile::from_json(bad, "inline").unwrap().to_group(1024).unwrap_err();
        assert!(err.to_string().contains("order"));
    }
}
