//! Argument parsing helpers with precise error messages.

use shapeinv::minimal::BlockComposition;
use shapeinv::partition::Partition;
use shapeinv::permutation::Permutation;

use crate::Failure;

/// Parses one-line notation from whitespace/comma separated tokens,
/// naming the offending token on failure.
pub fn parse_permutation(raw: &str) -> Result<Permutation, Failure> {
    let mut entries = Vec::new();
    for token in raw
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let value: usize = token
            .parse()
            .map_err(|_| Failure::input(format!("invalid permutation token '{token}'")))?;
        entries.push(value);
    }
    if entries.is_empty() {
        return Err(Failure::input("empty permutation".to_string()));
    }
    Permutation::new(entries)
        .map_err(|_| Failure::input(format!("'{raw}' is not a permutation of 1..=n")))
}

/// Shape grammar:
///
/// ```text
/// shape := item { ("," | space) item }
/// item  := PART [ "^" MULTIPLICITY ]
/// ```
///
/// with optional surrounding parentheses or angle brackets, so both
/// part lists like `4,3,1` and frequency notation like `2^6` parse.
/// The expanded parts must be weakly decreasing.
pub fn parse_shape(raw: &str) -> Result<Partition, Failure> {
    let trimmed = raw
        .trim()
        .trim_start_matches(['(', '<'])
        .trim_end_matches([')', '>']);
    let mut parts = Vec::new();
    for token in trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let (value_text, multiplicity_text) = match token.split_once('^') {
            Some((v, m)) => (v, Some(m)),
            None => (token, None),
        };
        let value: usize = value_text
            .parse()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| Failure::input(format!("invalid shape part '{token}'")))?;
        let multiplicity: usize = match multiplicity_text {
            Some(m) => m
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Failure::input(format!("invalid multiplicity in '{token}'")))?,
            None => 1,
        };
        parts.extend(std::iter::repeat_n(value, multiplicity));
    }
    Partition::new(parts).map_err(|_| {
        Failure::input(format!(
            "'{raw}' does not expand to weakly decreasing parts"
        ))
    })
}

pub fn parse_composition(raw: &str) -> Result<BlockComposition, Failure> {
    let mut blocks = Vec::new();
    for token in raw
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let value: usize = token
            .parse()
            .map_err(|_| Failure::input(format!("invalid block length '{token}'")))?;
        blocks.push(value);
    }
    BlockComposition::new(blocks).map_err(Failure::from)
}

/// Semicolon-separated jump components, each a comma-separated
/// partition; missing trailing components are empty. `"1,1;2,1;"`
/// gives three components ((1,1), (2,1), ()).
pub fn parse_components(raw: &str, expected: usize) -> Result<Vec<Partition>, Failure> {
    let mut components: Vec<Partition> = Vec::new();
    if !raw.trim().is_empty() {
        for piece in raw.split(';') {
            let partition = piece
                .parse::<Partition>()
                .map_err(|_| Failure::input(format!("invalid jump component '{piece}'")))?;
            components.push(partition);
        }
    }
    if components.len() > expected {
        return Err(Failure::input(format!(
            "{} jump components given, composition has {} boundaries",
            components.len(),
            expected
        )));
    }
    components.resize(expected, Partition::empty());
    Ok(components)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_parse_in_both_notations() {
        assert_eq!(parse_shape("4,3,1").unwrap().parts(), &[4, 3, 1]);
        assert_eq!(parse_shape("2^6").unwrap().parts(), &[2, 2, 2, 2, 2, 2]);
        assert_eq!(parse_shape("<3^2,1>").unwrap().parts(), &[3, 3, 1]);
        assert_eq!(parse_shape("(5 5 3 2)").unwrap().parts(), &[5, 5, 3, 2]);
        assert!(parse_shape("1,2").is_err());
        assert!(parse_shape("2^0").is_err());
        assert!(parse_shape("x").is_err());
    }

    #[test]
    fn permutations_report_offending_token() {
        let err = parse_permutation("3 x 2").unwrap_err();
        assert!(err.message.contains("'x'"));
        assert!(parse_permutation("1 1").is_err());
        assert_eq!(
            parse_permutation("3,1,2").unwrap().entries(),
            &[3, 1, 2]
        );
    }

    #[test]
    fn components_pad_to_expected() {
        let parsed = parse_components("1,1;2,1;", 3).unwrap();
        assert_eq!(parsed.len(), 3);
        assert_eq!(parsed[0].parts(), &[1, 1]);
        assert_eq!(parsed[1].parts(), &[2, 1]);
        assert!(parsed[2].is_empty());
        assert!(parse_components("1;1;1;1", 2).is_err());
        assert_eq!(parse_components("", 2).unwrap().len(), 2);
    }
}
