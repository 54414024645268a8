//! Hand-rolled lexer for the `.pl0` directive format. ASCII, case-sensitive,
//! `--` comments to end of line.

use super::ast::Span;
use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Zero,
    One,

    // Directive keywords.
    Atom,
    Positive,
    Negative,
    Plain,
    LambdaCheck,
    LambdaSynth,
    Expr,
    Pattern,
    Copattern,
    Coexpr,
    Command,

    // Term keywords.
    Case,
    Of,
    Let,
    In,
    Inl,
    Inr,
    Pi1,
    Pi2,
    Absurd,
    Match,
    Comatch,
    MuPlus,
    MuMinus,
    MutPlus,
    MutMinus,

    // Shared term/type keywords.
    Not,
    Down,
    Up,
    DownAdj, // `Down`
    UpAdj,   // `Up`
    Par,
    TensorUnit, // `I`
    Bot,
    Top,
    TopPos,
    TopNeg,

    // Punctuation and operators.
    Semi,
    Colon,
    Comma,
    Dot,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Lt,
    Gt,
    Pipe,
    Backslash,
    Star,
    Plus,
    Minus,
    Amp,
    Arrow,
    Lolli,
    Tilde,
    Bang,
    Question,
    FatArrow,
    Eq,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(n) => format!("identifier `{n}`"),
            other => format!("`{}`", token_text(other)),
        }
    }
}

fn token_text(t: &Tok) -> &'static str {
    match t {
        Tok::Ident(_) => "<ident>",
        Tok::Zero => "0",
        Tok::One => "1",
        Tok::Atom => "atom",
        Tok::Positive => "positive",
        Tok::Negative => "negative",
        Tok::Plain => "plain",
        Tok::LambdaCheck => "lambda-check",
        Tok::LambdaSynth => "lambda-synth",
        Tok::Expr => "expr",
        Tok::Pattern => "pattern",
        Tok::Copattern => "copattern",
        Tok::Coexpr => "coexpr",
        Tok::Command => "command",
        Tok::Case => "case",
        Tok::Of => "of",
        Tok::Let => "let",
        Tok::In => "in",
        Tok::Inl => "inl",
        Tok::Inr => "inr",
        Tok::Pi1 => "pi1",
        Tok::Pi2 => "pi2",
        Tok::Absurd => "absurd",
        Tok::Match => "match",
        Tok::Comatch => "comatch",
        Tok::MuPlus => "mu+",
        Tok::MuMinus => "mu-",
        Tok::MutPlus => "mut+",
        Tok::MutMinus => "mut-",
        Tok::Not => "not",
        Tok::Down => "down",
        Tok::Up => "up",
        Tok::DownAdj => "Down",
        Tok::UpAdj => "Up",
        Tok::Par => "par",
        Tok::TensorUnit => "I",
        Tok::Bot => "bot",
        Tok::Top => "Top",
        Tok::TopPos => "Top+",
        Tok::TopNeg => "Top-",
        Tok::Semi => ";",
        Tok::Colon => ":",
        Tok::Comma => ",",
        Tok::Dot => ".",
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBrack => "[",
        Tok::RBrack => "]",
        Tok::LBrace => "{",
        Tok::RBrace => "}",
        Tok::Lt => "<",
        Tok::Gt => ">",
        Tok::Pipe => "|",
        Tok::Backslash => "\\",
        Tok::Star => "*",
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Amp => "&",
        Tok::Arrow => "->",
        Tok::Lolli => "-o",
        Tok::Tilde => "~",
        Tok::Bang => "!",
        Tok::Question => "?",
        Tok::FatArrow => "=>",
        Tok::Eq => "=",
    }
}

pub fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0usize;
    let mut line = 1u32;
    let mut col = 1u32;

    macro_rules! span {
        () => {
            Span { offset: i, line, col }
        };
    }

    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            '-' => {
                let sp = span!();
                match bytes.get(i + 1).map(|b| *b as char) {
                    Some('-') => {
                        while i < bytes.len() && bytes[i] as char != '\n' {
                            i += 1;
                        }
                        // Column is reset on the newline branch.
                        col += 2;
                    }
                    Some('>') => {
                        toks.push((Tok::Arrow, sp));
                        i += 2;
                        col += 2;
                    }
                    Some('o') if !is_ident_char(bytes.get(i + 2)) => {
                        toks.push((Tok::Lolli, sp));
                        i += 2;
                        col += 2;
                    }
                    _ => {
                        toks.push((Tok::Minus, sp));
                        i += 1;
                        col += 1;
                    }
                }
            }
            '=' => {
                let sp = span!();
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::FatArrow, sp));
                    i += 2;
                    col += 2;
                } else {
                    toks.push((Tok::Eq, sp));
                    i += 1;
                    col += 1;
                }
            }
            '0' | '1' => {
                let sp = span!();
                if bytes.get(i + 1).is_some_and(|b| (*b as char).is_ascii_digit()) {
                    return Err(ParseError::new(sp, "unexpected number literal"));
                }
                toks.push((if c == '0' { Tok::Zero } else { Tok::One }, sp));
                i += 1;
                col += 1;
            }
            c if c.is_ascii_digit() => {
                return Err(ParseError::new(span!(), "unexpected number literal"));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let sp = span!();
                let start = i;
                while is_ident_char(bytes.get(i)) {
                    i += 1;
                    col += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "atom" => Tok::Atom,
                    "positive" => Tok::Positive,
                    "negative" => Tok::Negative,
                    "plain" => Tok::Plain,
                    "lambda" => {
                        // `lambda-check` / `lambda-synth` are single tokens.
                        if text[i..].starts_with("-check") {
                            i += 6;
                            col += 6;
                            Tok::LambdaCheck
                        } else if text[i..].starts_with("-synth") {
                            i += 6;
                            col += 6;
                            Tok::LambdaSynth
                        } else {
                            return Err(ParseError::new(
                                sp,
                                "expected `lambda-check` or `lambda-synth`",
                            ));
                        }
                    }
                    "expr" => Tok::Expr,
                    "pattern" => Tok::Pattern,
                    "copattern" => Tok::Copattern,
                    "coexpr" => Tok::Coexpr,
                    "command" => Tok::Command,
                    "case" => Tok::Case,
                    "of" => Tok::Of,
                    "let" => Tok::Let,
                    "in" => Tok::In,
                    "inl" => Tok::Inl,
                    "inr" => Tok::Inr,
                    "pi1" => Tok::Pi1,
                    "pi2" => Tok::Pi2,
                    "absurd" => Tok::Absurd,
                    "match" => Tok::Match,
                    "comatch" => Tok::Comatch,
                    "mu" | "mut" => {
                        let plus = match bytes.get(i).map(|b| *b as char) {
                            Some('+') => true,
                            Some('-') => false,
                            _ => {
                                return Err(ParseError::new(
                                    sp,
                                    format!("`{word}` must be followed by `+` or `-`"),
                                ))
                            }
                        };
                        i += 1;
                        col += 1;
                        match (word, plus) {
                            ("mu", true) => Tok::MuPlus,
                            ("mu", false) => Tok::MuMinus,
                            ("mut", true) => Tok::MutPlus,
                            (_, _) => Tok::MutMinus,
                        }
                    }
                    "not" => Tok::Not,
                    "down" => Tok::Down,
                    "up" => Tok::Up,
                    "Down" => Tok::DownAdj,
                    "Up" => Tok::UpAdj,
                    "par" => Tok::Par,
                    "I" => Tok::TensorUnit,
                    "bot" => Tok::Bot,
                    "Top" => match bytes.get(i).map(|b| *b as char) {
                        Some('+') => {
                            i += 1;
                            col += 1;
                            Tok::TopPos
                        }
                        Some('-') if !matches!(bytes.get(i + 1), Some(b'>') | Some(b'-')) => {
                            i += 1;
                            col += 1;
                            Tok::TopNeg
                        }
                        _ => Tok::Top,
                    },
                    _ => Tok::Ident(word.to_string()),
                };
                toks.push((tok, sp));
            }
            _ => {
                let sp = span!();
                let tok = match c {
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    ',' => Tok::Comma,
                    '.' => Tok::Dot,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBrack,
                    ']' => Tok::RBrack,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '<' => Tok::Lt,
                    '>' => Tok::Gt,
                    '|' => Tok::Pipe,
                    '\\' => Tok::Backslash,
                    '*' => Tok::Star,
                    '+' => Tok::Plus,
                    '&' => Tok::Amp,
                    '~' => Tok::Tilde,
                    '!' => Tok::Bang,
                    '?' => Tok::Question,
                    other => {
                        return Err(ParseError::new(sp, format!("unexpected character `{other}`")))
                    }
                };
                toks.push((tok, sp));
                i += 1;
                col += 1;
            }
        }
    }
    Ok(toks)
}

fn is_ident_char(b: Option<&u8>) -> bool {
    matches!(b, Some(c) if (*c as char).is_ascii_alphanumeric() || *c == b'_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_compound_tokens() {
        let toks: Vec<Tok> = lex("mu+ x . -> -o Top+ Top- lambda-check !?")
            .unwrap()
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        assert_eq!(
            toks,
            vec![
                Tok::MuPlus,
                Tok::Ident("x".into()),
                Tok::Dot,
                Tok::Arrow,
                Tok::Lolli,
                Tok::TopPos,
                Tok::TopNeg,
                Tok::LambdaCheck,
                Tok::Bang,
                Tok::Question,
            ]
        );
    }

    #[test]
    fn comments_run_to_end_of_line() {
        let toks = lex("a -- everything here is skipped ; } \nb").unwrap();
        assert_eq!(toks.len(), 2);
        assert_eq!(toks[1].1.line, 2);
        assert_eq!(toks[1].1.col, 1);
    }

    #[test]
    fn spans_are_monotone_and_in_bounds() {
        let text = "atom P positive;\ncommand [k : P] < x | k > ;";
        let toks = lex(text).unwrap();
        let mut last = 0usize;
        for (_, sp) in &toks {
            assert!(sp.offset >= last && sp.offset < text.len());
            last = sp.offset;
        }
    }
}
