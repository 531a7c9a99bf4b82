//! Text formats for finite groups.
//!
//! Cayley tables: a line `order n` followed by `n` rows of `n` element
//! indices. Permutation groups: `perm n: (1 2 3)(4 5) ; (1 2)`, points
//! numbered from 1, generators separated by `;`.

use gscheme_core::{Error, GroupTable};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_cayley(text: &str) -> Result<GroupTable, Error> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| parse_err("empty table"))?;
    let n: usize = header
        .strip_prefix("order")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err(format!("expected `order n`, found `{header}`")))?;
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(format!("row {}: bad entry `{t}`", i + 1))))
            .collect::<Result<_, _>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(parse_err(format!("expected {n} rows, found {}", rows.len())));
    }
    GroupTable::from_rows(&rows)
}

pub fn format_cayley(g: &GroupTable) -> String {
    let mut out = format!("order {}\n", g.order());
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses one permutation in cycle notation on points `1..=degree`.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<usize>, Error> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut rest = text.trim();
    if rest == "()" || rest.is_empty() {
        return Ok(perm);
    }
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| parse_err(format!("expected `(` in `{text}`")))?;
        let end = body.find(')').ok_or_else(|| parse_err(format!("unclosed cycle in `{text}`")))?;
        let points: Vec<usize> = body[..end]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(p) if (1..=degree).contains(&p) => Ok(p - 1),
                _ => Err(parse_err(format!("bad point `{t}` for degree {degree}"))),
            })
            .collect::<Result<_, _>>()?;
        // cycles compose left to right
        let mut cycle: Vec<usize> = (0..degree).collect();
        for (k, &p) in points.iter().enumerate() {
            cycle[p] = points[(k + 1) % points.len()];
        }
        perm = perm.iter().map(|&i| cycle[i]).collect();
        rest = body[end + 1..].trim_start();
    }
    Ok(perm)
}

/// `perm n: gen ; gen ; ...`
pub fn parse_perm_group(text: &str) -> Result<GroupTable, Error> {
    let text = text.trim();
    let body = text.strip_prefix("perm").ok_or_else(|| parse_err("expected `perm n: ...`"))?;
    let (deg, gens) = body.split_once(':').ok_or_else(|| parse_err("missing `:` after degree"))?;
    let degree: usize = deg.trim().parse().map_err(|_| parse_err(format!("bad degree `{}`", deg.trim())))?;
    let gens: Vec<Vec<usize>> = gens
        .split(';')
        .map(str::trim)
        .filter(|g| !g.is_empty())
        .map(|g| parse_cycles(g, degree))
        .collect::<Result<_, _>>()?;
    GroupTable::from_permutations(degree, &gens)
}

/// Reads either format, deciding by the first word.
pub fn parse_group_file(text: &str) -> Result<GroupTable, Error> {
    if text.trim_start().starts_with("perm") {
        parse_perm_group(text)
    } else {
        parse_cayley(text)
    }
}
