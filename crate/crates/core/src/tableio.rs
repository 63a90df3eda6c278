//! Line-oriented files for character tables and class data. The format is
//! plain UTF-8: `group`, `order`, `classes` headers, a `centralizers` block,
//! an optional `degrees` block, and optional `char i:` value rows. `#` starts
//! a comment anywhere. Class data is the same file without value rows, which
//! is how groups too large to enumerate (the Monster) enter the tool.

use crate::chartab::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{ConsistencyError, Error, ParseError};
use num::bigint::BigInt;
use num::Zero;
use std::fmt::Write as _;
use std::path::Path;

/// Conjugacy-class numerics without character values: enough for every
/// centralizer- and degree-based statistic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub name: String,
    pub order: BigInt,
    pub k: usize,
    /// Centralizer orders, identity class (value |G|) first.
    pub centralizers: Vec<BigInt>,
    pub degrees: Option<Vec<BigInt>>,
}

impl ClassData {
    pub fn class_sizes(&self) -> Vec<BigInt> {
        self.centralizers.iter().map(|z| &self.order / z).collect()
    }

    /// Checks the class equation, identity-first convention, and when
    /// degrees are present the Burnside identity.
    pub fn validate(&self) -> Result<(), ConsistencyError> {
        if self.centralizers.len() != self.k {
            return Err(ConsistencyError(format!(
                "{} centralizers for {} classes",
                self.centralizers.len(),
                self.k
            )));
        }
        if self.centralizers.first() != Some(&self.order) {
            return Err(ConsistencyError(
                "first centralizer must equal the group order".into(),
            ));
        }
        let mut total = BigInt::zero();
        for z in &self.centralizers {
            if z.is_zero() || !(&self.order % z).is_zero() {
                return Err(ConsistencyError(format!(
                    "centralizer {} does not divide the group order",
                    z
                )));
            }
            total += &self.order / z;
        }
        if total != self.order {
            return Err(ConsistencyError(format!(
                "class sizes sum to {}, group order is {}",
                total, self.order
            )));
        }
        if let Some(degrees) = &self.degrees {
            if degrees.len() != self.k {
                return Err(ConsistencyError(format!(
                    "{} degrees for {} classes",
                    degrees.len(),
                    self.k
                )));
            }
            let sq: BigInt = degrees.iter().map(|d| d * d).sum();
            if sq != self.order {
                return Err(ConsistencyError(format!(
                    "degree squares sum to {}, group order is {}",
                    sq, self.order
                )));
            }
        }
        Ok(())
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_class_data(cd: &ClassData) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group {}", cd.name);
    let _ = writeln!(out, "order {}", cd.order);
    let _ = writeln!(out, "classes {}", cd.k);
    out.push_str("centralizers\n");
    let _ = writeln!(out, "{}", join(&cd.centralizers));
    if let Some(degrees) = &cd.degrees {
        out.push_str("degrees\n");
        let _ = writeln!(out, "{}", join(degrees));
    }
    out
}

pub fn write_table(t: &CharacterTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group {}", t.group_name);
    let _ = writeln!(out, "order {}", t.order);
    let _ = writeln!(out, "classes {}", t.k);
    out.push_str("centralizers\n");
    let _ = writeln!(out, "{}", join(&t.centralizers));
    out.push_str("degrees\n");
    let _ = writeln!(out, "{}", join(&t.degrees));
    for (i, row) in t.values.iter().enumerate() {
        let _ = writeln!(out, "char {}: {}", i, join(row));
    }
    out
}

/// Meaningful lines: comments stripped, blanks dropped, 1-based numbers kept.
struct Lines<'a> {
    rest: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    fn new(src: &'a str) -> Self {
        Lines {
            rest: src.lines().enumerate().peekable(),
        }
    }

    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.rest.by_ref() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                return Some((i + 1, body));
            }
        }
        None
    }
}

fn expect_keyword<'a>(
    lines: &mut Lines<'a>,
    keyword: &str,
) -> Result<(usize, &'a str), ParseError> {
    let (line, body) = lines.next_content().ok_or_else(|| ParseError::Syntax {
        line: 0,
        msg: format!("missing `{}` line", keyword),
    })?;
    match body.strip_prefix(keyword) {
        Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => {
            Ok((line, rest.trim()))
        }
        _ => Err(ParseError::Syntax {
            line,
            msg: format!("expected `{}`, found `{}`", keyword, body),
        }),
    }
}

fn parse_big(line: usize, token: &str) -> Result<BigInt, ParseError> {
    token.parse().map_err(|_| ParseError::Value {
        line,
        value: token.into(),
        msg: "not an integer".into(),
    })
}

/// Reads exactly n integers, starting with any that share the keyword's own
/// line and continuing over as many following lines as needed.
fn integer_block(
    lines: &mut Lines,
    n: usize,
    what: &str,
    seed: (usize, &str),
) -> Result<Vec<BigInt>, ParseError> {
    let mut out = Vec::with_capacity(n);
    let mut chunk = Some((seed.0, seed.1.to_string()));
    loop {
        if let Some((line, body)) = chunk {
            for token in body.split_whitespace() {
                if out.len() == n {
                    return Err(ParseError::Syntax {
                        line,
                        msg: format!("more than {} values in the {} block", n, what),
                    });
                }
                out.push(parse_big(line, token)?);
            }
        }
        if out.len() == n {
            return Ok(out);
        }
        let (line, body) = lines.next_content().ok_or_else(|| ParseError::Syntax {
            line: 0,
            msg: format!("file ends inside the {} block", what),
        })?;
        chunk = Some((line, body.to_string()));
    }
}

struct RawFile {
    cd: ClassData,
    /// (line, row index, value tokens) for each `char` line.
    rows: Vec<(usize, usize, Vec<String>)>,
}

fn parse_raw(src: &str) -> Result<RawFile, ParseError> {
    let mut lines = Lines::new(src);
    let (line, name) = expect_keyword(&mut lines, "group")?;
    if name.is_empty() {
        return Err(ParseError::Syntax {
            line,
            msg: "empty group name".into(),
        });
    }
    let (line, order_tok) = expect_keyword(&mut lines, "order")?;
    let order = parse_big(line, order_tok)?;
    let (line, k_tok) = expect_keyword(&mut lines, "classes")?;
    let k: usize = k_tok.parse().map_err(|_| ParseError::Value {
        line,
        value: k_tok.into(),
        msg: "not a class count".into(),
    })?;
    if k == 0 {
        return Err(ParseError::Value {
            line,
            value: k_tok.into(),
            msg: "class count must be positive".into(),
        });
    }
    let seed = expect_keyword(&mut lines, "centralizers")?;
    let centralizers = integer_block(&mut lines, k, "centralizers", seed)?;

    let mut degrees = None;
    let mut rows = Vec::new();
    let mut pending = lines.next_content();
    if let Some((line, body)) = pending {
        if let Some(rest) = body.strip_prefix("degrees") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                degrees = Some(integer_block(&mut lines, k, "degrees", (line, rest.trim()))?);
                pending = lines.next_content();
            }
        }
    }
    while let Some((line, body)) = pending {
        let rest = body.strip_prefix("char").ok_or_else(|| ParseError::Syntax {
            line,
            msg: format!("unexpected line `{}`", body),
        })?;
        let (idx_part, vals) = rest.split_once(':').ok_or_else(|| ParseError::Syntax {
            line,
            msg: "char line needs `char <row>: values`".into(),
        })?;
        let idx: usize = idx_part.trim().parse().map_err(|_| ParseError::Value {
            line,
            value: idx_part.trim().into(),
            msg: "not a row index".into(),
        })?;
        let tokens: Vec<String> = vals.split_whitespace().map(String::from).collect();
        rows.push((line, idx, tokens));
        pending = lines.next_content();
    }

    Ok(RawFile {
        cd: ClassData {
            name: name.to_string(),
            order,
            k,
            centralizers,
            degrees,
        },
        rows,
    })
}

/// Parses class data; value rows, if present (a full table file), are
/// ignored.
pub fn parse_class_data(src: &str) -> Result<ClassData, Error> {
    let raw = parse_raw(src)?;
    raw.cd.validate()?;
    Ok(raw.cd)
}

pub fn parse_table(src: &str) -> Result<CharacterTable, Error> {
    let raw = parse_raw(src)?;
    raw.cd.validate()?;
    let k = raw.cd.k;
    if raw.rows.len() != k {
        return Err(ParseError::Syntax {
            line: raw.rows.last().map(|r| r.0).unwrap_or(0),
            msg: format!("{} char rows for {} classes", raw.rows.len(), k),
        }
        .into());
    }
    let mut values: Vec<Option<Vec<Cyclotomic>>> = vec![None; k];
    for (line, idx, tokens) in &raw.rows {
        if *idx >= k || values[*idx].is_some() {
            return Err(ParseError::Syntax {
                line: *line,
                msg: format!("bad or repeated row index {}", idx),
            }
            .into());
        }
        if tokens.len() != k {
            return Err(ParseError::Syntax {
                line: *line,
                msg: format!("{} values in a {}-class row", tokens.len(), k),
            }
            .into());
        }
        let row = tokens
            .iter()
            .map(|tok| {
                Cyclotomic::parse(tok).map_err(|msg| ParseError::Value {
                    line: *line,
                    value: tok.clone(),
                    msg,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        values[*idx] = Some(row);
    }
    let values: Vec<Vec<Cyclotomic>> = values.into_iter().map(|r| r.expect("all rows seen")).collect();

    // degrees default to the identity column, which must be integral
    let degrees = match raw.cd.degrees.clone() {
        Some(d) => d,
        None => values
            .iter()
            .map(|row| {
                row[0]
                    .as_integer()
                    .ok_or_else(|| ConsistencyError(format!("non-integer degree {}", row[0])))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    for (r, row) in values.iter().enumerate() {
        if row[0].as_integer().as_ref() != Some(&degrees[r]) {
            return Err(ConsistencyError(format!(
                "row {} identity value {} disagrees with degree {}",
                r, row[0], degrees[r]
            ))
            .into());
        }
    }
    let sq: BigInt = degrees.iter().map(|d| d * d).sum();
    if sq != raw.cd.order {
        return Err(ConsistencyError(format!(
            "degree squares sum to {}, group order is {}",
            sq, raw.cd.order
        ))
        .into());
    }

    let inv_class = CharacterTable::inv_class_from_values(&values)?;
    let conj_perm = conj_perm_from_values(&values)?;
    let class_sizes = raw.cd.class_sizes();
    Ok(CharacterTable {
        group_name: raw.cd.name,
        order: raw.cd.order,
        k,
        class_sizes,
        centralizers: raw.cd.centralizers,
        degrees,
        values,
        conj_perm,
        inv_class,
    })
}

fn conj_perm_from_values(values: &[Vec<Cyclotomic>]) -> Result<Vec<usize>, ConsistencyError> {
    let k = values.len();
    (0..k)
        .map(|r| {
            let conj: Vec<Cyclotomic> = values[r].iter().map(Cyclotomic::conj).collect();
            (0..k)
                .find(|&s| values[s] == conj)
                .ok_or_else(|| ConsistencyError(format!("row {} has no conjugate row", r)))
        })
        .collect()
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    ParseError::Io(format!("{}: {}", path.display(), e)).into()
}

pub fn read_table(path: &Path) -> Result<CharacterTable, Error> {
    let src = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_table(&src)
}

pub fn read_class_data(path: &Path) -> Result<ClassData, Error> {
    let src = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_class_data(&src)
}

pub fn write_table_file(t: &CharacterTable, path: &Path) -> Result<(), Error> {
    std::fs::write(path, write_table(t)).map_err(|e| io_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::families::Family;
    use num::One;

    fn table(spec: &str) -> CharacterTable {
        let g = Family::parse(spec).unwrap().build().unwrap();
        character_table(&g, 0)
    }

    #[test]
    fn round_trip_exact() {
        for spec in ["s:3", "c:4", "q8", "a:5", "sl2:5"] {
            let t = table(spec);
            let text = write_table(&t);
            let back = parse_table(&text).unwrap();
            assert_eq!(t, back, "{}", spec);
            // and the text itself is stable
            assert_eq!(text, write_table(&back), "{}", spec);
        }
    }

    #[test]
    fn class_data_round_trip_and_table_downgrade() {
        let t = table("s:4");
        let cd = ClassData {
            name: t.group_name.clone(),
            order: t.order.clone(),
            k: t.k,
            centralizers: t.centralizers.clone(),
            degrees: Some(t.degrees.clone()),
        };
        let text = write_class_data(&cd);
        assert_eq!(parse_class_data(&text).unwrap(), cd);
        // a full table file also parses as class data
        let from_table = parse_class_data(&write_table(&t)).unwrap();
        assert_eq!(from_table.centralizers, cd.centralizers);
    }

    #[test]
    fn comments_and_blank_lines() {
        let src = "# leading comment\n\ngroup demo # trailing\norder 2\nclasses 2\ncentralizers\n2 2\ndegrees\n1 1\nchar 0: 1 1\nchar 1: 1 -1\n";
        let t = parse_table(src).unwrap();
        assert_eq!(t.group_name, "demo");
        assert_eq!(t.k, 2);
        assert_eq!(t.degrees, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn degrees_derived_from_identity_column() {
        let src = "group demo\norder 2\nclasses 2\ncentralizers\n2 2\nchar 0: 1 1\nchar 1: 1 -1\n";
        let t = parse_table(src).unwrap();
        assert_eq!(t.degrees, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let missing = parse_class_data("group g\norder 6\nclasses 3\ncentralizers\n6 3\n");
        assert!(matches!(
            missing,
            Err(Error::Parse(ParseError::Syntax { .. }))
        ));
        let bad_value = parse_class_data("group g\norder x\nclasses 1\ncentralizers\n1\n");
        match bad_value {
            Err(Error::Parse(ParseError::Value { line, .. })) => assert_eq!(line, 2),
            other => panic!("expected value error, got {:?}", other.err()),
        }
        let stray = parse_class_data("group g\norder 1\nclasses 1\ncentralizers\n1\nwhat 3\n");
        assert!(matches!(
            stray,
            Err(Error::Parse(ParseError::Syntax { .. }))
        ));
    }

    #[test]
    fn consistency_errors() {
        // class sizes do not sum to the order
        let bad_sizes = "group g\norder 6\nclasses 2\ncentralizers\n6 2\n";
        assert!(matches!(
            parse_class_data(bad_sizes),
            Err(Error::Consistency(_))
        ));
        // degree squares miss the order
        let bad_burnside = "group g\norder 6\nclasses 3\ncentralizers\n6 3 2\ndegrees\n1 1 1\n";
        assert!(matches!(
            parse_class_data(bad_burnside),
            Err(Error::Consistency(_))
        ));
        // identity centralizer not first
        let bad_first = "group g\norder 6\nclasses 3\ncentralizers\n3 6 2\n";
        assert!(matches!(
            parse_class_data(bad_first),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn io_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s3.table");
        let t = table("s:3");
        write_table_file(&t, &path).unwrap();
        assert_eq!(read_table(&path).unwrap(), t);
        assert!(read_table(&dir.path().join("absent.table")).is_err());
    }
}
