//! Side-by-side listings of equinumerous partition sets with equal
//! perimeter, as in the four example tables of the refinement and
//! `d`-distinct theorems.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::enumerate::enumerate_by_perimeter;
use crate::partition::{ConstraintClass, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("no table {0}; expected 1, 2, 3 or 4")]
    UnknownTable(u32),
    #[error("columns of table {table} at perimeter {perimeter} have lengths {lengths:?}")]
    RaggedColumns {
        table: u32,
        perimeter: u64,
        lengths: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub perimeter: u64,
    pub cells: Vec<Partition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairedTable {
    pub id: u32,
    pub headers: Vec<String>,
    /// Whether rows from several perimeters are listed together.
    pub grouped: bool,
    pub rows: Vec<TableRow>,
}

struct Column {
    header: &'static str,
    class: ConstraintClass,
    keep: fn(&Partition) -> bool,
    ascending: bool,
}

fn column(perimeter: u64, c: &Column) -> Vec<Partition> {
    let mut out: Vec<Partition> = enumerate_by_perimeter(perimeter as usize, c.class)
        .filter(|p| (c.keep)(p))
        .collect();
    if c.ascending {
        out.reverse();
    }
    out
}

fn zip_columns(id: u32, perimeter: u64, columns: &[Column]) -> Result<Vec<TableRow>, TableError> {
    let lists: Vec<Vec<Partition>> = columns.iter().map(|c| column(perimeter, c)).collect();
    let lengths: Vec<usize> = lists.iter().map(Vec::len).collect();
    if lengths.iter().any(|&l| l != lengths[0]) {
        return Err(TableError::RaggedColumns {
            table: id,
            perimeter,
            lengths,
        });
    }
    Ok((0..lengths[0])
        .map(|i| TableRow {
            perimeter,
            cells: lists.iter().map(|l| l[i].clone()).collect(),
        })
        .collect())
}

/// Builds table `id` from enumeration.
///
/// 1. Distinct, `Γ = 9`, four parts | odd, `Γ = 9`, largest part 7.
/// 2. Distinct, `Γ = 8`, largest part 6 | odd, `Γ = 8`, `λ₁ + 2ℓ = 13`.
/// 3. Distinct, `Γ = 7`, rank 2 | odd, `Γ = 7`, three parts.
/// 4. For `Γ = 1..=7`: 2-distinct | parts `≡ 1 (mod 3)` | the class `𝔊₂`.
pub fn paired_table(id: u32) -> Result<PairedTable, TableError> {
    let distinct = |keep| Column {
        header: "distinct partitions",
        class: ConstraintClass::Distinct,
        keep,
        ascending: false,
    };
    let odd = |keep| Column {
        header: "odd partitions",
        class: ConstraintClass::Odd,
        keep,
        ascending: false,
    };
    let (perimeters, columns): (Vec<u64>, Vec<Column>) = match id {
        1 => (vec![9], vec![distinct(|p| p.len() == 4), odd(|p| p.largest() == 7)]),
        2 => (
            vec![8],
            vec![
                distinct(|p| p.largest() == 6),
                odd(|p| p.largest() as usize + 2 * p.len() == 13),
            ],
        ),
        3 => (vec![7], vec![distinct(|p| p.rank() == 2), odd(|p| p.len() == 3)]),
        4 => (
            (1..=7).collect(),
            vec![
                Column {
                    header: "2-distinct",
                    class: ConstraintClass::DDistinct(2),
                    keep: |_| true,
                    ascending: false,
                },
                Column {
                    header: "parts = 1 (mod 3)",
                    class: ConstraintClass::ModOne(2),
                    keep: |_| true,
                    ascending: true,
                },
                Column {
                    header: "parts = 1, 4 (mod 5), bounded gaps",
                    class: ConstraintClass::GClass(2),
                    keep: |_| true,
                    ascending: true,
                },
            ],
        ),
        other => return Err(TableError::UnknownTable(other)),
    };
    let mut rows = Vec::new();
    for &n in &perimeters {
        rows.extend(zip_columns(id, n, &columns)?);
    }
    Ok(PairedTable {
        id,
        headers: columns.iter().map(|c| c.header.to_string()).collect(),
        grouped: perimeters.len() > 1,
        rows,
    })
}

impl PairedTable {
    pub fn column(&self, i: usize) -> Vec<Partition> {
        self.rows.iter().map(|r| r.cells[i].clone()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.grouped {
            out.push_str("perimeter,");
        }
        out.push_str(
            &self
                .headers
                .iter()
                .map(|h| format!("\"{h}\""))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
        for row in &self.rows {
            if self.grouped {
                out.push_str(&format!("{},", row.perimeter));
            }
            let cells: Vec<String> = row.cells.iter().map(|p| format!("\"{p}\"")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for PairedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            if self.grouped {
                write!(f, "{}: ", row.perimeter)?;
            }
            let cells: Vec<String> = row.cells.iter().map(Partition::to_string).collect();
            writeln!(f, "{}", cells.join(" | "))?;
        }
        Ok(())
    }
}
