//! Tokens of one manifest line.

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub col: usize,
}

const SYMBOLS: &[&str] = &[
    "..", "<=", ">=", "==", "!=", "[", "]", "(", ")", ",", "+", "-", "*", "/", "^", "=", "_", "<", ">", ":",
];

/// Split a line into tokens; `#` starts a comment. Columns are 1-based
/// character positions.
pub fn lex_line(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let frac = i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit();
            let expo = i < chars.len()
                && (chars[i] == 'e' || chars[i] == 'E')
                && chars.get(i + 1).map_or(false, |d| d.is_ascii_digit() || *d == '+' || *d == '-');
            if frac || expo {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '.' || chars[j] == '+' || chars[j] == '-') {
                    if (chars[j] == '+' || chars[j] == '-') && !matches!(chars[j - 1], 'e' | 'E') {
                        break;
                    }
                    j += 1;
                }
                return Err(ParseError::NonRationalLiteral { line, col, text: chars[start..j].iter().collect() });
            }
            out.push(Token { tok: Tok::Int(chars[start..i].iter().collect()), col });
            continue;
        }
        if c == '"' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '"' {
                j += 1;
            }
            if j == chars.len() {
                return Err(ParseError::SyntaxError { line, col, msg: "unterminated string".into() });
            }
            out.push(Token { tok: Tok::Str(chars[start..j].iter().collect()), col });
            i = j + 1;
            continue;
        }
        if c == '.' && chars.get(i + 1).map_or(false, |d| d.is_ascii_digit()) {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            return Err(ParseError::NonRationalLiteral { line, col, text: chars[i..j].iter().collect() });
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                out.push(Token { tok: Tok::Sym(s), col });
                i += s.len();
            }
            None => {
                return Err(ParseError::SyntaxError { line, col, msg: format!("unexpected character `{}`", c) });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex_line(s, 1).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            toks("bracket x[m] = (m*D) # note"),
            vec![
                Tok::Ident("bracket".into()),
                Tok::Ident("x".into()),
                Tok::Sym("["),
                Tok::Ident("m".into()),
                Tok::Sym("]"),
                Tok::Sym("="),
                Tok::Sym("("),
                Tok::Ident("m".into()),
                Tok::Sym("*"),
                Tok::Ident("D".into()),
                Tok::Sym(")"),
            ]
        );
        assert_eq!(toks("0..8"), vec![Tok::Int("0".into()), Tok::Sym(".."), Tok::Int("8".into())]);
        assert_eq!(toks("a<=b"), vec![Tok::Ident("a".into()), Tok::Sym("<="), Tok::Ident("b".into())]);
    }

    #[test]
    fn decimals_are_rejected() {
        for (s, text, col) in [("x = 0.5*L", "0.5", 5), ("2e3", "2e3", 1), ("1.5e-3 ", "1.5e-3", 1), ("  .25", ".25", 3)] {
            match lex_line(s, 4) {
                Err(ParseError::NonRationalLiteral { line: 4, col: c, text: t }) => {
                    assert_eq!((t.as_str(), c), (text, col), "{}", s);
                }
                other => panic!("{}: {:?}", s, other),
            }
        }
    }

    #[test]
    fn positions() {
        let t = lex_line("  ab  12", 3).unwrap();
        assert_eq!((t[0].col, t[1].col), (3, 7));
    }
}
