//! Tokenizer for `.shp` source.
//!
//! Layout is carried on the tokens themselves: every token records whether it
//! is the first on its line, and the parser uses that together with the
//! column to find where definitions and case branches begin.

use crate::ast::Pos;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    /// Lowercase identifier.
    Ident,
    /// Capitalized identifier (constructor or type name).
    UpperIdent,
    Keyword,
    Number(f64),
    Str(String),
    Symbol,
    /// `_`
    Underscore,
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub pos: Pos,
    /// No other token precedes this one on its line.
    pub first_on_line: bool,
    /// Whitespace, a comment or the start of input immediately precedes it.
    pub space_before: bool,
}

impl Token {
    pub fn is_symbol(&self, s: &str) -> bool {
        self.kind == TokenKind::Symbol && self.lexeme == s
    }

    pub fn is_keyword(&self, k: &str) -> bool {
        self.kind == TokenKind::Keyword && self.lexeme == k
    }

    /// Human-readable description for "expected ..." lists.
    pub fn describe(&self) -> String {
        match &self.kind {
            TokenKind::Eof => "end of input".to_string(),
            TokenKind::Str(_) => "a string".to_string(),
            TokenKind::Number(_) => format!("the number {}", self.lexeme),
            _ => format!("`{}`", self.lexeme),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct LexError {
    pub message: String,
    pub pos: Pos,
}

pub const KEYWORDS: [&str; 6] = ["type", "if", "then", "else", "case", "of"];

const SYMBOLS: [&str; 21] = [
    "|>", "->", "==", "<=", ">=", "(", ")", "[", "]", "{", "}", ",", "=", "|", ".", "+", "-", "*", "/",
    "<", ">",
];

pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1u32;
    let mut col = 1u32;
    let mut line_has_token = false;
    let mut space_before = true;

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            line_has_token = false;
            space_before = true;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            space_before = true;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            space_before = true;
            continue;
        }

        let pos = Pos::new(line, col);
        let start = i;
        let kind = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = chars[start..i].iter().collect();
            TokenKind::Number(text.parse().expect("digits parse as f64"))
        } else if c == '"' {
            i += 1;
            let mut value = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') | Some('\r') => {
                        return Err(LexError {
                            message: "this string is missing its closing quote \"".to_string(),
                            pos,
                        })
                    }
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => {
                        let escaped = match chars.get(i + 1) {
                            Some('n') => '\n',
                            Some('t') => '\t',
                            Some('"') => '"',
                            Some('\\') => '\\',
                            _ => {
                                return Err(LexError {
                                    message: "unknown escape in string".to_string(),
                                    pos: Pos::new(line, col + (i - start) as u32),
                                })
                            }
                        };
                        value.push(escaped);
                        i += 2;
                    }
                    Some(&ch) => {
                        value.push(ch);
                        i += 1;
                    }
                }
            }
            TokenKind::Str(value)
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            if text == "_" {
                TokenKind::Underscore
            } else if KEYWORDS.contains(&text.as_str()) {
                TokenKind::Keyword
            } else if c.is_uppercase() {
                TokenKind::UpperIdent
            } else {
                TokenKind::Ident
            }
        } else if let Some(sym) = SYMBOLS.iter().find(|s| {
            let n = s.chars().count();
            i + n <= chars.len() && chars[i..i + n].iter().copied().eq(s.chars())
        }) {
            i += sym.chars().count();
            TokenKind::Symbol
        } else {
            return Err(LexError {
                message: format!("unexpected character `{c}`"),
                pos,
            });
        };

        let lexeme: String = chars[start..i].iter().collect();
        col += (i - start) as u32;
        tokens.push(Token {
            kind,
            lexeme,
            pos,
            first_on_line: !line_has_token,
            space_before,
        });
        line_has_token = true;
        space_before = false;
    }

    tokens.push(Token {
        kind: TokenKind::Eof,
        lexeme: String::new(),
        pos: Pos::new(line, col),
        first_on_line: !line_has_token,
        space_before: true,
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lexemes(src: &str) -> Vec<String> {
        tokenize(src)
            .unwrap()
            .into_iter()
            .filter(|t| t.kind != TokenKind::Eof)
            .map(|t| t.lexeme)
            .collect()
    }

    #[test]
    fn pipeline_tokens() {
        let toks = tokenize("x |> f").unwrap();
        assert_eq!(lexemes("x |> f"), ["x", "|>", "f"]);
        assert_eq!(toks[0].kind, TokenKind::Ident);
        assert_eq!(toks[1].kind, TokenKind::Symbol);
    }

    #[test]
    fn comments_are_dropped() {
        let toks = tokenize("-- hi\ncircle 50").unwrap();
        assert_eq!(lexemes("-- hi\ncircle 50"), ["circle", "50"]);
        assert_eq!(toks[0].pos, Pos::new(2, 1));
        assert_eq!(toks[1].kind, TokenKind::Number(50.0));
    }

    #[test]
    fn unterminated_string() {
        let err = tokenize("\"abc").unwrap_err();
        assert_eq!(err.pos.line, 1);
    }

    #[test]
    fn crlf_and_layout_flags() {
        let toks = tokenize("a = 1\r\n  |> f\r\nb = 2").unwrap();
        let b = toks.iter().find(|t| t.lexeme == "b").unwrap();
        assert_eq!(b.pos, Pos::new(3, 1));
        assert!(b.first_on_line);
        let pipe = toks.iter().find(|t| t.lexeme == "|>").unwrap();
        assert_eq!(pipe.pos, Pos::new(2, 3));
    }

    #[test]
    fn numbers_and_fields() {
        assert_eq!(lexemes("0.5 model.time 3.x"), ["0.5", "model", ".", "time", "3", ".", "x"]);
        assert_eq!(lexemes("move(-50,0)"), ["move", "(", "-", "50", ",", "0", ")"]);
    }
}
