//! Text formats: set-system documents, matrix files, subset literals,
//! slide sequences, and census record lines.
//!
//! A set-system document is a `ground <n>` header followed by one
//! brace-delimited subset per line; `{}` denotes the empty set and
//! elements within a line are strictly increasing. Formatting emits
//! members in ascending mask order, so `format(parse(text))` is
//! canonical and `parse(format(s))` is the identity.

use crate::census::CensusRecord;
use crate::error::{Error, Result};
use crate::gf2::SymmetricBinaryMatrix;
use crate::mask::SubsetMask;
use crate::system::SetSystem;
use crate::transforms::SlideInstruction;

fn parse_err(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

/// Parses a brace-delimited subset literal such as `{}` or `{1,2,5}`.
/// Elements must be strictly increasing. `line` and `col0` locate the
/// literal for error reporting; `col0` is the 1-based column of `{`.
fn parse_subset_at(text: &str, line: usize, col0: usize) -> Result<SubsetMask> {
    let inner = text
        .strip_prefix('{')
        .ok_or_else(|| parse_err(line, col0, "expected '{'"))?
        .strip_suffix('}')
        .ok_or_else(|| parse_err(line, col0 + text.len().saturating_sub(1), "expected '}'"))?;
    if inner.is_empty() {
        return Ok(SubsetMask::EMPTY);
    }
    let mut mask = SubsetMask::EMPTY;
    let mut prev: Option<u8> = None;
    let mut col = col0 + 1;
    for piece in inner.split(',') {
        let e: u8 = piece
            .parse()
            .map_err(|_| parse_err(line, col, format!("expected an element, found {piece:?}")))?;
        if e == 0 || e > 16 {
            return Err(parse_err(line, col, format!("element {e} out of range 1..=16")));
        }
        if prev.is_some_and(|p| e <= p) {
            return Err(parse_err(
                line,
                col,
                format!("elements must be strictly increasing, found {e}"),
            ));
        }
        prev = Some(e);
        mask = mask.with(e);
        col += piece.len() + 1;
    }
    Ok(mask)
}

/// Parses a standalone subset literal.
pub fn parse_subset(text: &str) -> Result<SubsetMask> {
    parse_subset_at(text.trim(), 1, 1)
}

pub fn format_subset(mask: SubsetMask) -> String {
    mask.to_string()
}

/// Parses a set-system document.
pub fn parse_system(text: &str) -> Result<SetSystem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty document"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("ground") {
        return Err(parse_err(header_line, 1, "expected header 'ground <n>'"));
    }
    let n: u8 = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(header_line, 8, "expected a ground-set size"))?;
    if tokens.next().is_some() {
        return Err(parse_err(header_line, 1, "unexpected tokens after header"));
    }
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if n > SetSystem::MAX_GROUND {
        return Err(Error::GroundSetTooLarge {
            n,
            cap: SetSystem::MAX_GROUND,
        });
    }
    let mut members = Vec::new();
    for (line_no, line) in lines {
        let trimmed = line.trim();
        let col = line.len() - line.trim_start().len() + 1;
        members.push(parse_subset_at(trimmed, line_no, col)?);
    }
    if members.is_empty() {
        return Err(Error::EmptyFamily);
    }
    SetSystem::new(n, members)
}

/// Formats a set system canonically: header plus members ascending.
pub fn format_system(system: &SetSystem) -> String {
    let mut out = format!("ground {}\n", system.ground_size());
    for m in system.members() {
        out.push_str(&m.to_string());
        out.push('\n');
    }
    out
}

/// Parses a matrix file: n lines of n whitespace-separated 0/1 entries.
/// Asymmetric input is rejected, not silently symmetrized.
pub fn parse_matrix(text: &str) -> Result<SymmetricBinaryMatrix> {
    let rows: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    if rows.is_empty() {
        return Err(parse_err(1, 1, "empty matrix"));
    }
    let n = rows.len();
    if n > 16 {
        return Err(Error::GroundSetTooLarge {
            n: n.min(255) as u8,
            cap: 16,
        });
    }
    let mut entries = Vec::with_capacity(n);
    for (line_no, tokens) in &rows {
        if tokens.len() != n {
            return Err(parse_err(
                *line_no,
                1,
                format!("expected {n} entries, found {}", tokens.len()),
            ));
        }
        let mut row = Vec::with_capacity(n);
        for (j, tok) in tokens.iter().enumerate() {
            match *tok {
                "0" => row.push(0u8),
                "1" => row.push(1u8),
                other => {
                    return Err(parse_err(
                        *line_no,
                        j + 1,
                        format!("expected 0 or 1, found {other:?}"),
                    ))
                }
            }
        }
        entries.push(row);
    }
    SymmetricBinaryMatrix::from_entries(&entries)
}

pub fn format_matrix(matrix: &SymmetricBinaryMatrix) -> String {
    matrix.to_string()
}

/// Parses a slide sequence written `a1,b1;a2,b2;...`.
pub fn parse_slide_sequence(text: &str) -> Result<Vec<SlideInstruction>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut col = 1usize;
    for piece in trimmed.split(';') {
        let mut parts = piece.split(',');
        let parse_one = |part: Option<&str>, col: usize| -> Result<u8> {
            part.and_then(|p| p.trim().parse().ok())
                .ok_or_else(|| parse_err(1, col, format!("expected 'a,b', found {piece:?}")))
        };
        let a = parse_one(parts.next(), col)?;
        let b = parse_one(parts.next(), col)?;
        if parts.next().is_some() {
            return Err(parse_err(1, col, format!("expected 'a,b', found {piece:?}")));
        }
        out.push(SlideInstruction::new(a, b));
        col += piece.len() + 1;
    }
    Ok(out)
}

pub fn format_slide_sequence(sequence: &[SlideInstruction]) -> String {
    sequence
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// One census record per line: ground size, the family in one-line form,
/// the classification, and the escape sequence (or `-`).
pub fn census_record_line(record: &CensusRecord) -> String {
    let class = match (record.is_delta_matroid, record.is_binary) {
        (false, _) => "not-dm",
        (true, Some(true)) => "binary",
        (true, _) => "non-binary",
    };
    let escape = match &record.escape {
        Some(w) => format_slide_sequence(&w.sequence),
        None => "-".to_string(),
    };
    format!(
        "{} {} {} {}",
        record.system.ground_size(),
        record.system,
        class,
        escape
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::ExcludedMinor;
    use crate::census;

    #[test]
    fn parses_the_s1_document() {
        let text = "ground 3\n{}\n{1,2}\n{1,3}\n{2,3}\n{1,2,3}\n";
        assert_eq!(parse_system(text).unwrap(), ExcludedMinor::S1.system());
    }

    #[test]
    fn parses_the_singleton_document() {
        assert_eq!(
            parse_system("ground 1\n{}\n").unwrap(),
            SetSystem::from_subsets(1, &[&[]]).unwrap()
        );
    }

    #[test]
    fn rejects_out_of_range_members() {
        assert_eq!(
            parse_system("ground 2\n{3}\n"),
            Err(Error::OutOfRange { element: 3, n: 2 })
        );
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            parse_system("ground 2\n"),
            Err(Error::EmptyFamily)
        ));
        assert!(matches!(
            parse_system("ground 0\n{}\n"),
            Err(Error::EmptyGroundSet)
        ));
        assert!(matches!(
            parse_system("ground 17\n{}\n"),
            Err(Error::GroundSetTooLarge { .. })
        ));
        assert!(matches!(
            parse_system("size 3\n{}\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_system("ground 3\n{2,1}\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_system("ground 3\n{1,1}\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_system("ground 3\n{1,x}\n"),
            Err(Error::Parse { line: 2, col: 4, .. })
        ));
    }

    #[test]
    fn format_then_parse_is_identity() {
        let s = ExcludedMinor::S5.system();
        assert_eq!(parse_system(&format_system(&s)).unwrap(), s);
    }

    #[test]
    fn parse_then_format_is_canonical() {
        // shuffled member order parses to the same canonical document
        let text = "ground 3\n{1,2,3}\n{}\n{2,3}\n{1,2}\n{1,3}\n";
        let formatted = format_system(&parse_system(text).unwrap());
        assert_eq!(formatted, "ground 3\n{}\n{1,2}\n{1,3}\n{2,3}\n{1,2,3}\n");
    }

    #[test]
    fn matrix_roundtrip_and_symmetry() {
        let text = "0 1 0 0\n1 0 1 1\n0 1 0 1\n0 1 1 0\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(format_matrix(&m), text);
        assert_eq!(
            parse_matrix("0 1\n0 0\n"),
            Err(Error::AsymmetricMatrix { row: 2, col: 1 })
        );
        assert!(matches!(
            parse_matrix("0 1\n1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("0 2\n2 0\n"),
            Err(Error::Parse { line: 1, col: 2, .. })
        ));
    }

    #[test]
    fn slide_sequences_roundtrip() {
        let seq = parse_slide_sequence("2,3;1,2").unwrap();
        assert_eq!(
            seq,
            vec![SlideInstruction::new(2, 3), SlideInstruction::new(1, 2)]
        );
        assert_eq!(format_slide_sequence(&seq), "2,3;1,2");
        assert!(parse_slide_sequence("").unwrap().is_empty());
        assert!(parse_slide_sequence("1;2").is_err());
        assert!(parse_slide_sequence("1,2,3").is_err());
    }

    #[test]
    fn census_lines_for_one_element() {
        let records = census::enumerate(1).unwrap();
        let lines: Vec<String> = records.iter().map(census_record_line).collect();
        assert_eq!(
            lines,
            vec![
                "1 {} binary -".to_string(),
                "1 {1} binary -".to_string(),
                "1 {};{1} binary -".to_string(),
            ]
        );
    }

    #[test]
    fn census_line_shows_escapes() {
        let s4 = ExcludedMinor::S4.system();
        let record = census::classify(&s4);
        assert_eq!(
            census_record_line(&record),
            format!("4 {} non-binary 1,2", s4)
        );
    }
}
