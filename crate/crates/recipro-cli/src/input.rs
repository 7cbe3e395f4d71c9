//! Parsing of sequence and bi-sequence literals from the command line.

use recipro::BiSequence;

/// Either a plain degree sequence or a `d+/d-` bi-sequence.
pub enum Literal {
    Sequence(Vec<usize>),
    Bi(BiSequence),
}

pub fn parse_sequence(text: &str) -> Result<Vec<usize>, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err("empty sequence literal".to_string());
    }
    trimmed
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<usize>()
                .map_err(|_| format!("invalid degree {tok:?}: expected a nonnegative integer"))
        })
        .collect()
}

pub fn parse_bisequence(text: &str) -> Result<BiSequence, String> {
    let (plus, minus) = text
        .split_once('/')
        .ok_or_else(|| "expected a bi-sequence literal \"d+,.../d-,...\"".to_string())?;
    let d_plus = parse_sequence(plus)?;
    let d_minus = parse_sequence(minus)?;
    BiSequence::new(d_plus, d_minus)
        .map_err(|_| "out- and in-degree lists differ in length".to_string())
}

/// Auto-detects the literal form by the presence of `/`.
pub fn parse_literal(text: &str) -> Result<Literal, String> {
    if text.contains('/') {
        Ok(Literal::Bi(parse_bisequence(text)?))
    } else {
        Ok(Literal::Sequence(parse_sequence(text)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences_parse_with_spaces() {
        assert_eq!(parse_sequence("1, 2 ,3").unwrap(), vec![1, 2, 3]);
        assert!(parse_sequence("").is_err());
        assert!(parse_sequence("1,-2").is_err());
        assert!(parse_sequence("1,x").is_err());
    }

    #[test]
    fn bisequences_need_matching_lengths() {
        let bs = parse_bisequence("1,1/1,1").unwrap();
        assert_eq!(bs.len(), 2);
        assert!(parse_bisequence("1,1/1").is_err());
        assert!(parse_bisequence("1,1").is_err());
    }

    #[test]
    fn literal_detection() {
        assert!(matches!(
            parse_literal("1,2,1").unwrap(),
            Literal::Sequence(_)
        ));
        assert!(matches!(parse_literal("1,1/1,1").unwrap(), Literal::Bi(_)));
    }
}
