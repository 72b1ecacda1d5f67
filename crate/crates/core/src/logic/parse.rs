use thiserror::Error;

use super::formula::{Formula, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Exists,
    Forall,
    Adj,
    Var(u32),
    Color(u32),
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    Bang,
    Amp,
    Pipe,
    Arrow,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Exists => "'exists'".into(),
            Tok::Forall => "'forall'".into(),
            Tok::Adj => "'adj'".into(),
            Tok::Var(i) => format!("variable x{i}"),
            Tok::Color(i) => format!("color C{i}"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Dot => "'.'".into(),
            Tok::Eq => "'='".into(),
            Tok::Bang => "'!'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

fn index_of(digits: &str, what: &str, line: usize, column: usize) -> Result<u32, ParseError> {
    let err = |message: String| ParseError {
        line,
        column,
        message,
    };
    let index: u32 = digits
        .parse()
        .map_err(|_| err(format!("{what} index '{digits}' is out of range")))?;
    if index == 0 {
        return Err(err(format!("{what} index 0 is not allowed")));
    }
    Ok(index)
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
                self.bump();
            }
            let (line, column) = (self.line, self.column);
            let err = |message: String| ParseError {
                line,
                column,
                message,
            };
            let Some(c) = self.bump() else {
                out.push((Tok::End, line, column));
                return Ok(out);
            };
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '=' => Tok::Eq,
                '!' => Tok::Bang,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                '-' => {
                    if self.bump() == Some('>') {
                        Tok::Arrow
                    } else {
                        return Err(err("expected '->'".into()));
                    }
                }
                c if c.is_ascii_alphabetic() => {
                    let mut word = String::from(c);
                    while let Some(&d) = self.chars.peek() {
                        if d.is_ascii_alphanumeric() || d == '_' {
                            word.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    match word.as_str() {
                        "exists" => Tok::Exists,
                        "forall" => Tok::Forall,
                        "adj" => Tok::Adj,
                        w if w.len() > 1
                            && w.starts_with('x')
                            && w[1..].bytes().all(|b| b.is_ascii_digit()) =>
                        {
                            Tok::Var(index_of(&w[1..], "variable", line, column)?)
                        }
                        w if w.len() > 1
                            && w.starts_with('C')
                            && w[1..].bytes().all(|b| b.is_ascii_digit()) =>
                        {
                            Tok::Color(index_of(&w[1..], "color", line, column)?)
                        }
                        w => return Err(err(format!("unknown word '{w}'"))),
                    }
                }
                other => return Err(err(format!("unexpected character '{other}'"))),
            };
            out.push((tok, line, column));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn error(&self, message: String) -> ParseError {
        let (_, line, column) = self.toks[self.pos];
        ParseError {
            line,
            column,
            message,
        }
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.advance();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    fn var(&mut self) -> Result<Var, ParseError> {
        match *self.peek() {
            Tok::Var(i) => {
                self.advance();
                Ok(Var::new(i))
            }
            ref t => Err(self.error(format!("expected a variable, found {}", t.describe()))),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut items = vec![self.conjunction()?];
        while *self.peek() == Tok::Pipe {
            self.advance();
            items.push(self.conjunction()?);
        }
        Ok(Formula::or(items))
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut items = vec![self.unary()?];
        while *self.peek() == Tok::Amp {
            self.advance();
            items.push(self.unary()?);
        }
        Ok(Formula::and(items))
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.advance();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Exists | Tok::Forall => {
                let q = self.advance();
                let v = self.var()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if q == Tok::Exists {
                    Formula::exists(v, body)
                } else {
                    Formula::forall(v, body)
                })
            }
            Tok::LParen => {
                self.advance();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Adj => {
                self.advance();
                self.expect(Tok::LParen)?;
                let u = self.var()?;
                self.expect(Tok::Comma)?;
                let v = self.var()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::edge(u, v))
            }
            Tok::Color(c) => {
                self.advance();
                self.expect(Tok::LParen)?;
                let v = self.var()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::color(c, v))
            }
            Tok::Var(_) => {
                let u = self.var()?;
                self.expect(Tok::Eq)?;
                let v = self.var()?;
                Ok(Formula::eq(u, v))
            }
            t => Err(self.error(format!("expected a formula, found {}", t.describe()))),
        }
    }
}

/// Parses one formula; the whole input must be consumed.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {}", p.peek().describe())));
    }
    Ok(f)
}

/// Parses a golden file: one formula per non-blank line, `#` starts a comment.
///
/// Returned errors carry the line number within the file.
pub fn parse_formula_lines(text: &str) -> Result<Vec<Formula>, ParseError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let f = parse_formula(line).map_err(|e| ParseError {
            line: lineno + 1,
            column: e.column,
            message: e.message,
        })?;
        out.push(f);
    }
    Ok(out)
}
