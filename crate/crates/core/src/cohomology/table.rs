//! Tables of `H(y)` values.
//!
//! One row per line: `keys | symbol: poly ; symbol: poly`, where `keys` is a
//! comma-separated list of words in the completed-braid grammar sharing the
//! value. `#` starts a comment. The value `0` is allowed.

use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use super::{CohomologyError, GradedChar, GroupType, TypeData};
use crate::braid::{CompletedBraidElt, ZBraidElt};
use crate::rings::BiPoly;

#[derive(Clone, Debug)]
pub struct TableRow {
    pub keys: Vec<CompletedBraidElt>,
    pub value: GradedChar,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub ty: GroupType,
    rows: Vec<TableRow>,
    index: HashMap<ZBraidElt, usize>,
}

/// A successful table lookup `H(c) = factor^n · E^n(row value)`.
#[derive(Clone, Debug)]
pub struct TableHit {
    pub value: GradedChar,
    pub row: usize,
    pub periods: usize,
}

pub(crate) fn builtin_source(stem: &str, ext: &str) -> Option<&'static str> {
    Some(match (stem, ext) {
        ("a2", "tbl") => include_str!("../../data/a2.tbl"),
        ("2a2", "tbl") => include_str!("../../data/2a2.tbl"),
        ("b2", "tbl") => include_str!("../../data/b2.tbl"),
        ("2b2", "tbl") => include_str!("../../data/2b2.tbl"),
        ("g2", "tbl") => include_str!("../../data/g2.tbl"),
        ("2g2", "tbl") => include_str!("../../data/2g2.tbl"),
        ("a2", "ids") => include_str!("../../data/a2.ids"),
        ("2a2", "ids") => include_str!("../../data/2a2.ids"),
        ("b2", "ids") => include_str!("../../data/b2.ids"),
        ("2b2", "ids") => include_str!("../../data/2b2.ids"),
        ("g2", "ids") => include_str!("../../data/g2.ids"),
        ("2g2", "ids") => include_str!("../../data/2g2.ids"),
        _ => return None,
    })
}

/// Reads `<stem>.<ext>` from `$DLCOH_DATA` when set, else from the shipped copy.
pub fn data_source(ty: GroupType, ext: &str) -> Result<String, CohomologyError> {
    let stem = ty.data_stem();
    match std::env::var_os("DLCOH_DATA") {
        Some(dir) => {
            let path = Path::new(&dir).join(format!("{stem}.{ext}"));
            std::fs::read_to_string(&path).map_err(|e| CohomologyError::Io(format!("{}: {e}", path.display())))
        }
        None => builtin_source(&stem, ext)
            .map(str::to_string)
            .ok_or_else(|| CohomologyError::Io(format!("no data for {stem}.{ext}"))),
    }
}

/// Reads `sym: poly; sym: poly`, expanding the aliases of the type.
///
/// The symbol part may be a sum such as `sigma+2*rho`, meaning the polynomial is
/// added to each summand with that multiplicity.
pub fn parse_graded(data: &TypeData, src: &str) -> Result<GradedChar, CohomologyError> {
    let mut out = GradedChar::zero();
    let src = src.trim();
    if src == "0" || src.is_empty() {
        return Ok(out);
    }
    for part in src.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (syms, poly) =
            part.split_once(':').ok_or_else(|| CohomologyError::Parse(format!("expected 'symbol: poly' in '{part}'")))?;
        let p = BiPoly::parse(poly.trim()).map_err(|e| CohomologyError::Parse(format!("{e} in '{part}'")))?;
        for summand in syms.split('+').map(str::trim) {
            let (k, sym) = match summand.split_once('*') {
                Some((k, sym)) => {
                    let k: i64 =
                        k.trim().parse().map_err(|_| CohomologyError::Parse(format!("bad multiplicity in '{summand}'")))?;
                    (k, sym.trim())
                }
                None => (1, summand),
            };
            let targets: Vec<&str> = if let Some((_, parts)) = data.aliases.iter().find(|(a, _)| *a == sym) {
                parts.clone()
            } else if data.symbol_index(sym).is_some() || sym == "Id" || sym == "St" {
                vec![sym]
            } else {
                return Err(CohomologyError::Parse(format!("unknown symbol '{sym}' for {}", data.ty)));
            };
            for t in targets {
                out.add_to(t, &p.scale(k));
            }
        }
    }
    Ok(out)
}

impl Table {
    pub fn parse(ty: GroupType, src: &str) -> Result<Self, CohomologyError> {
        let data = ty.data();
        let m = data.monoid();
        let mut table = Table { ty, rows: Vec::new(), index: HashMap::new() };
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| CohomologyError::Data { line: i + 1, msg };
            let (keys, value) = line.split_once('|').ok_or_else(|| err("expected 'keys | value'".into()))?;
            let value = parse_graded(data, value).map_err(|e| err(e.to_string()))?;
            let keys: Vec<CompletedBraidElt> = keys
                .split(',')
                .map(|k| m.parse_completed(k.trim()).map_err(|e| err(e.to_string())))
                .collect::<Result<_, _>>()?;
            let row_id = table.rows.len();
            for k in &keys {
                let z = m.zb_image(k);
                if let Some(&prev) = table.index.get(&z) {
                    if prev != row_id && table.rows[prev].value != value {
                        return Err(err(format!(
                            "key '{}' repeats line {} with a different value",
                            m.format_completed(k),
                            table.rows[prev].line
                        )));
                    }
                    continue;
                }
                table.index.insert(z, row_id);
            }
            table.rows.push(TableRow { keys, value, line: i + 1 });
        }
        Ok(table)
    }

    /// The shipped table, ignoring `$DLCOH_DATA`.
    pub fn builtin(ty: GroupType) -> &'static Table {
        static CELLS: [OnceLock<Table>; 6] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        CELLS[ty as usize].get_or_init(|| {
            let src = builtin_source(&ty.data_stem(), "tbl").expect("shipped table");
            Table::parse(ty, src).unwrap_or_else(|e| panic!("shipped {ty} table is invalid: {e}"))
        })
    }

    /// The table from `$DLCOH_DATA` if set, else the shipped one.
    pub fn load(ty: GroupType) -> Result<Self, CohomologyError> {
        Table::parse(ty, &data_source(ty, "tbl")?)
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    /// Looks up `zb` directly, then after removing successive period factors.
    pub fn lookup_zb(&self, zb: &ZBraidElt) -> Option<TableHit> {
        let data = self.ty.data();
        let m = data.monoid();
        let p = data.period_braid();
        if zb.is_empty() {
            return None;
        }
        let mut z = zb.clone();
        for n in 0.. {
            if let Some(&row) = self.index.get(&z) {
                let value = self.rows[row].value.ennola(data, n).scale(&data.period_factor.pow(n as u32));
                return Some(TableHit { value, row, periods: n });
            }
            z = m.zb_left_quotient(&p, &z)?;
        }
        unreachable!()
    }

    pub fn lookup(&self, c: &CompletedBraidElt) -> Option<TableHit> {
        self.lookup_zb(&self.ty.data().monoid().zb_image(c))
    }

    /// `H(c)` read off the table, with no closed form and no rotations.
    pub fn table_h(&self, c: &CompletedBraidElt) -> Result<GradedChar, CohomologyError> {
        self.lookup(c)
            .map(|hit| hit.value)
            .ok_or_else(|| CohomologyError::NotInTable(self.ty.data().monoid().format_completed(c)))
    }
}
