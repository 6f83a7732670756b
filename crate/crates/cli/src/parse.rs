//! Parsers for polynomials, C-presentations and integer matrices.

use std::fmt;

use alexpoly::cgroup::{CPresentation, ConjRelation, Word};
use alexpoly::linalg::IntMatrix;
use alexpoly::poly::IntPoly;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line, or 0 when the input is a single line.
    pub line: usize,
    /// 1-based column in characters.
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: 0,
            column,
            message: message.into(),
        }
    }

    fn on_line(mut self, line: usize, offset: usize) -> Self {
        self.line = line;
        self.column += offset;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(
                f,
                "line {}, column {}: {}",
                self.line, self.column, self.message
            )
        } else {
            write!(f, "column {}: {}", self.column, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

/// Character cursor with 1-based column tracking. Unicode minus signs are
/// read as `-`.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(s: &str) -> Self {
        Cursor {
            chars: s
                .chars()
                .map(|c| if c == '\u{2212}' { '-' } else { c })
                .collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn column(&mut self) -> usize {
        self.skip_ws();
        self.pos + 1
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a polynomial in `t` with integer coefficients.
///
/// ```text
/// expr   := term (("+" | "-") term)*
/// term   := unary ("*"? unary)*
/// unary  := "-" unary | power
/// power  := atom ("^" digits)?
/// atom   := digits | "t" | "(" expr ")"
/// ```
pub fn parse_poly(s: &str) -> Result<IntPoly, ParseError> {
    let mut c = Cursor::new(s);
    if c.at_end() {
        return Err(ParseError::at(1, "empty polynomial"));
    }
    let p = expr(&mut c)?;
    if !c.at_end() {
        let col = c.column();
        let ch = c.peek().unwrap();
        return Err(ParseError::at(col, format!("unexpected '{ch}'")));
    }
    Ok(p)
}

fn expr(c: &mut Cursor) -> Result<IntPoly, ParseError> {
    let mut acc = term(c)?;
    loop {
        if c.eat('+') {
            acc = &acc + &term(c)?;
        } else if c.eat('-') {
            acc = &acc - &term(c)?;
        } else {
            return Ok(acc);
        }
    }
}

fn starts_atom(ch: Option<char>) -> bool {
    matches!(ch, Some('t' | '(' | '0'..='9'))
}

fn term(c: &mut Cursor) -> Result<IntPoly, ParseError> {
    let mut acc = unary(c)?;
    loop {
        if c.eat('*') {
            acc = &acc * &unary(c)?;
        } else if starts_atom(c.peek()) {
            acc = &acc * &power(c)?;
        } else {
            return Ok(acc);
        }
    }
}

fn unary(c: &mut Cursor) -> Result<IntPoly, ParseError> {
    if c.eat('-') {
        Ok(-&unary(c)?)
    } else {
        power(c)
    }
}

fn power(c: &mut Cursor) -> Result<IntPoly, ParseError> {
    let base = atom(c)?;
    if !c.eat('^') {
        return Ok(base);
    }
    let col = c.column();
    let digits = c
        .digits()
        .ok_or_else(|| ParseError::at(col, "expected exponent"))?;
    let e: u32 = digits
        .parse()
        .ok()
        .filter(|&e| e <= 100_000)
        .ok_or_else(|| ParseError::at(col, "exponent too large"))?;
    Ok(base.pow(e))
}

fn atom(c: &mut Cursor) -> Result<IntPoly, ParseError> {
    let col = c.column();
    match c.peek() {
        Some('t') => {
            c.pos += 1;
            Ok(IntPoly::t())
        }
        Some('(') => {
            c.pos += 1;
            let inner = expr(c)?;
            if !c.eat(')') {
                let col = c.column();
                return Err(ParseError::at(col, "expected ')'"));
            }
            Ok(inner)
        }
        Some(ch) if ch.is_ascii_digit() => {
            let digits = c.digits().unwrap();
            Ok(IntPoly::constant(
                digits.parse::<BigInt>().expect("ascii digits"),
            ))
        }
        Some(ch) => Err(ParseError::at(col, format!("unexpected '{ch}'"))),
        None => Err(ParseError::at(col, "unexpected end of input")),
    }
}

/// One letter as written: generator, exponent, starting column.
type Token = (usize, i64, usize);

fn word_tokens(c: &mut Cursor) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    while c.peek() == Some('x') {
        let col = c.column();
        c.pos += 1;
        let digits = c
            .digits()
            .ok_or_else(|| ParseError::at(col + 1, "expected generator index"))?;
        let g: usize = digits
            .parse()
            .ok()
            .filter(|&g| g >= 1)
            .ok_or_else(|| ParseError::at(col, format!("bad generator index x{digits}")))?;
        let mut e = 1i64;
        if c.eat('^') {
            let ecol = c.column();
            let neg = c.eat('-');
            let d = c
                .digits()
                .ok_or_else(|| ParseError::at(ecol, "expected exponent"))?;
            e = d
                .parse()
                .map_err(|_| ParseError::at(ecol, "exponent too large"))?;
            if neg {
                e = -e;
            }
            if e == 0 {
                return Err(ParseError::at(ecol, "zero exponent"));
            }
        }
        out.push((g, e, col));
    }
    Ok(out)
}

fn to_word(tokens: &[Token]) -> Word {
    Word::new(tokens.iter().map(|&(g, e, _)| (g, e)))
}

/// Reads `W` as `c⁻¹ x_j c`. The balanced split (as printed) is tried first,
/// then every unit-exponent token left to right, then the freely reduced word.
fn conjugate_shape(tokens: &[Token]) -> Option<(usize, Word)> {
    let try_split = |i: usize| -> Option<(usize, Word)> {
        let (g, e, _) = tokens[i];
        if e != 1 {
            return None;
        }
        let prefix = to_word(&tokens[..i]);
        let suffix = to_word(&tokens[i + 1..]);
        (prefix == suffix.inverse()).then_some((g, suffix))
    };
    if tokens.len() % 2 == 1 {
        if let Some(found) = try_split(tokens.len() / 2) {
            return Some(found);
        }
    }
    if let Some(found) = (0..tokens.len()).find_map(try_split) {
        return Some(found);
    }
    let reduced: Vec<Token> = to_word(tokens)
        .unit_letters()
        .map(|(g, e)| (g, e, 0))
        .collect();
    (0..reduced.len()).find_map(|i| {
        let (g, e, _) = reduced[i];
        if e != 1 {
            return None;
        }
        let prefix = to_word(&reduced[..i]);
        let suffix = to_word(&reduced[i + 1..]);
        (prefix == suffix.inverse()).then_some((g, suffix))
    })
}

fn single_generator(tokens: &[Token]) -> Option<usize> {
    match tokens {
        [(g, 1, _)] => Some(*g),
        _ => None,
    }
}

/// Parses one relation line.
///
/// ```text
/// relation := word "=" word | "[" word "," word "]" "=" "1"
/// word     := letter+
/// letter   := "x" digits ("^" "-"? digits)?
/// ```
///
/// One side must be a single generator `x_i`; the other must be a
/// conjugate `c⁻¹ x_j c` of a generator. `[x_i, W] = 1` abbreviates
/// `x_i = W⁻¹ x_i W`.
pub fn parse_relation(s: &str) -> Result<ConjRelation, ParseError> {
    let mut c = Cursor::new(s);
    if c.eat('[') {
        let col = c.column();
        let left = word_tokens(&mut c)?;
        let Some(i) = single_generator(&left) else {
            return Err(ParseError::at(
                col,
                "commutator must start with a single generator",
            ));
        };
        if !c.eat(',') {
            let col = c.column();
            return Err(ParseError::at(col, "expected ','"));
        }
        let wcol = c.column();
        let w = word_tokens(&mut c)?;
        if w.is_empty() {
            return Err(ParseError::at(wcol, "expected a word"));
        }
        for (ch, what) in [(']', "']'"), ('=', "'='"), ('1', "'1'")] {
            if !c.eat(ch) {
                let col = c.column();
                return Err(ParseError::at(col, format!("expected {what}")));
            }
        }
        expect_end(&mut c)?;
        return Ok(ConjRelation::commutes(i, to_word(&w)));
    }
    let lcol = c.column();
    let lhs = word_tokens(&mut c)?;
    if lhs.is_empty() {
        return Err(ParseError::at(lcol, "expected a generator such as x1"));
    }
    if !c.eat('=') {
        let col = c.column();
        return Err(ParseError::at(col, "expected '='"));
    }
    let rcol = c.column();
    let rhs = word_tokens(&mut c)?;
    if rhs.is_empty() {
        return Err(ParseError::at(rcol, "expected a word"));
    }
    expect_end(&mut c)?;
    let (left, other, ocol) = match (single_generator(&lhs), single_generator(&rhs)) {
        (Some(a), Some(b)) => return Ok(ConjRelation::identify(a, b)),
        (Some(a), None) => (a, rhs, rcol),
        (None, Some(b)) => (b, lhs, lcol),
        (None, None) => {
            return Err(ParseError::at(lcol, "one side must be a single generator"));
        }
    };
    let (right, conj) = conjugate_shape(&other)
        .ok_or_else(|| ParseError::at(ocol, "expected a conjugate w^-1 xj w of a generator"))?;
    Ok(ConjRelation::new(left, right, conj))
}

fn expect_end(c: &mut Cursor) -> Result<(), ParseError> {
    if c.at_end() {
        Ok(())
    } else {
        let col = c.column();
        let ch = c.peek().unwrap();
        Err(ParseError::at(col, format!("unexpected '{ch}'")))
    }
}

/// The part of a line before any `#` comment.
fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Parses a presentation file.
///
/// ```text
/// file   := header relation*
/// header := "cgroup" "m" "=" digits
/// ```
///
/// Blank lines and `#` comments are ignored; one relation per line.
pub fn parse_presentation(text: &str) -> Result<CPresentation, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, content(l)))
        .filter(|(_, l)| !l.trim().is_empty());
    let Some((hline, header)) = lines.next() else {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "missing 'cgroup m=N' header".into(),
        });
    };
    let m = parse_header(header).map_err(|e| e.on_line(hline, 0))?;
    let mut rels = Vec::new();
    for (n, line) in lines {
        let r = parse_relation(line).map_err(|e| e.on_line(n, 0))?;
        for g in [r.left, r.right]
            .into_iter()
            .chain(r.conjugator.letters().iter().map(|l| l.0))
        {
            if g > m {
                let col = line
                    .find(&format!("x{g}"))
                    .map_or(1, |i| line[..i].chars().count() + 1);
                return Err(ParseError {
                    line: n,
                    column: col,
                    message: format!("generator x{g} exceeds m = {m}"),
                });
            }
        }
        rels.push(r);
    }
    CPresentation::new(m, rels).map_err(|e| ParseError {
        line: hline,
        column: 1,
        message: e.to_string(),
    })
}

fn parse_header(s: &str) -> Result<usize, ParseError> {
    let mut c = Cursor::new(s);
    let col = c.column();
    let word: String = {
        c.skip_ws();
        let start = c.pos;
        while c
            .chars
            .get(c.pos)
            .is_some_and(|ch| ch.is_ascii_alphabetic())
        {
            c.pos += 1;
        }
        c.chars[start..c.pos].iter().collect()
    };
    if word != "cgroup" {
        return Err(ParseError::at(col, "expected header 'cgroup m=N'"));
    }
    if !c.eat('m') || !c.eat('=') {
        let col = c.column();
        return Err(ParseError::at(col, "expected 'm='"));
    }
    let col = c.column();
    let m: usize = c
        .digits()
        .and_then(|d| d.parse().ok())
        .filter(|&m| m >= 1)
        .ok_or_else(|| ParseError::at(col, "expected a positive generator count"))?;
    expect_end(&mut c)?;
    Ok(m)
}

/// Parses a square integer matrix, either as nested rows `[[a, b], [c, d]]`
/// or as a dimension `n` followed by `n²` entries in row-major order.
/// Separators are whitespace and commas.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, ParseError> {
    let body: String = text.lines().map(content).collect::<Vec<_>>().join("\n");
    let mut nums: Vec<(BigInt, usize, usize)> = Vec::new();
    let mut rows: Vec<usize> = Vec::new();
    let mut depth = 0usize;
    let mut bracketed = false;
    let mut current_row = 0usize;
    for (ln, line) in body.lines().enumerate() {
        let chars: Vec<char> = line
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            match ch {
                '[' => {
                    bracketed = true;
                    depth += 1;
                    if depth == 2 {
                        current_row = 0;
                    }
                    if depth > 2 {
                        return Err(ParseError {
                            line: ln + 1,
                            column: i + 1,
                            message: "nesting too deep".into(),
                        });
                    }
                    i += 1;
                }
                ']' => {
                    if depth == 0 {
                        return Err(ParseError {
                            line: ln + 1,
                            column: i + 1,
                            message: "unbalanced ']'".into(),
                        });
                    }
                    if depth == 2 {
                        rows.push(current_row);
                    }
                    depth -= 1;
                    i += 1;
                }
                ',' => i += 1,
                c if c.is_whitespace() => i += 1,
                '-' | '0'..='9' => {
                    let start = i;
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let v = s.parse::<BigInt>().map_err(|_| ParseError {
                        line: ln + 1,
                        column: start + 1,
                        message: format!("bad integer '{s}'"),
                    })?;
                    if bracketed && depth != 2 {
                        return Err(ParseError {
                            line: ln + 1,
                            column: start + 1,
                            message: "entry outside a row".into(),
                        });
                    }
                    current_row += 1;
                    nums.push((v, ln + 1, start + 1));
                }
                other => {
                    return Err(ParseError {
                        line: ln + 1,
                        column: i + 1,
                        message: format!("unexpected '{other}'"),
                    })
                }
            }
        }
    }
    if depth != 0 {
        return Err(ParseError {
            line: body.lines().count().max(1),
            column: 1,
            message: "unbalanced '['".into(),
        });
    }
    let shape_error = |message: String| ParseError {
        line: 1,
        column: 1,
        message,
    };
    let (n, entries): (usize, Vec<BigInt>) = if bracketed {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|&r| r != n) {
            return Err(shape_error(format!(
                "row {} has {} entries, expected {n}",
                bad + 1,
                rows[bad]
            )));
        }
        (n, nums.into_iter().map(|x| x.0).collect())
    } else {
        let Some((first, ..)) = nums.first() else {
            return Err(shape_error("empty matrix".into()));
        };
        let n: usize = first
            .try_into()
            .map_err(|_| shape_error("dimension must be a nonnegative integer".into()))?;
        if nums.len() - 1 != n * n {
            return Err(shape_error(format!(
                "dimension {n} needs {} entries, found {}",
                n * n,
                nums.len() - 1
            )));
        }
        (n, nums.into_iter().skip(1).map(|x| x.0).collect())
    };
    let rows: Vec<Vec<BigInt>> = if n == 0 {
        Vec::new()
    } else {
        entries.chunks(n).map(<[BigInt]>::to_vec).collect()
    };
    Ok(IntMatrix::from_rows(rows, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alexpoly::cgroup::{example_4_1, example_4_2, g2};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("t^2 - t + 1").unwrap(), p(&[1, -1, 1]));
        assert_eq!(parse_poly("(t-1)(t+1)").unwrap(), p(&[-1, 0, 1]));
        assert_eq!(parse_poly("-(t + 1)^2").unwrap(), p(&[-1, -2, -1]));
        assert_eq!(parse_poly("2t^3*3").unwrap(), p(&[0, 0, 0, 6]));
        assert_eq!(parse_poly(" 1 ").unwrap(), p(&[1]));
        assert_eq!(parse_poly("t \u{2212} 1").unwrap(), p(&[-1, 1]));
        assert_eq!(parse_poly("--t").unwrap(), p(&[0, 1]));
    }

    #[test]
    fn polynomial_errors() {
        assert_eq!(parse_poly("t^2 + ").unwrap_err().column, 7);
        assert_eq!(parse_poly("t + y").unwrap_err().column, 5);
        assert_eq!(parse_poly("(t+1").unwrap_err().column, 5);
        assert_eq!(parse_poly("t^").unwrap_err().column, 3);
        assert_eq!(parse_poly("").unwrap_err().column, 1);
    }

    #[test]
    fn relations() {
        let r = parse_relation("x3 = x1^-1 x2 x1").unwrap();
        assert_eq!(r, ConjRelation::new(3, 2, Word::generator(1)));
        let r = parse_relation("x1^-1 x2 x1 = x3").unwrap();
        assert_eq!(r, ConjRelation::new(3, 2, Word::generator(1)));
        assert_eq!(
            parse_relation("x2 = x3").unwrap(),
            ConjRelation::identify(2, 3)
        );
        let r = parse_relation("[x1, x2 x3] = 1").unwrap();
        assert_eq!(r, ConjRelation::commutes(1, Word::new([(2, 1), (3, 1)])));
        let r = parse_relation("x2 = x2 x2 x2^-1").unwrap();
        assert_eq!(r, ConjRelation::new(2, 2, Word::power_of(2, -1)));
    }

    #[test]
    fn relation_errors() {
        assert!(parse_relation("x1 x2 = x2 x1").is_err());
        assert_eq!(parse_relation("x1 = x2 x3").unwrap_err().column, 6);
        assert_eq!(parse_relation("x1 = ").unwrap_err().column, 6);
        assert_eq!(parse_relation("x1 x2").unwrap_err().column, 6);
    }

    #[test]
    fn presentations_roundtrip() {
        for g in [example_4_1(), example_4_2(), g2()] {
            assert_eq!(parse_presentation(&g.to_string()).unwrap(), g);
        }
        let text = "# comment\n\ncgroup m=3\nx3 = x1^-1 x2 x1 # inline\n";
        assert_eq!(parse_presentation(text).unwrap().relations().len(), 1);
    }

    #[test]
    fn presentation_errors() {
        let e = parse_presentation("cgroup m=2\nx3 = x1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_presentation("group m=2\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_presentation("cgroup m=2\nx1 = x2 x1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 6));
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("[[0, 1], [1, 0]]").unwrap();
        assert_eq!(m, IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
        let m = parse_matrix("2\n1 1\n0 -1\n").unwrap();
        assert_eq!(m, IntMatrix::from_i64_rows(&[&[1, 1], &[0, -1]]));
        assert!(parse_matrix("[[1, 2], [3]]").is_err());
        assert!(parse_matrix("2 1 0 0").is_err());
        assert!(parse_matrix("[[1, a]]").is_err());
    }
}
