use thiserror::Error;

use super::{FpPoly, Monomial, PrimeField};

/// Errors from the polynomial text grammar. Every variant carries a byte
/// offset into the source string.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty polynomial expression")]
    Empty,
    #[error("unexpected character '{ch}' at offset {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("parentheses are not supported by the polynomial grammar (offset {pos})")]
    Parenthesis { pos: usize },
    #[error("unknown variable '{name}' at offset {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("'^' must follow a variable (offset {pos})")]
    MisplacedCaret { pos: usize },
    #[error("expected an exponent after '^' at offset {pos}")]
    MissingExponent { pos: usize },
    #[error("exponent {value} at offset {pos} exceeds the supported cap {cap}")]
    ExponentTooLarge { value: u64, pos: usize, cap: u64 },
    #[error("dangling operator at offset {pos}")]
    DanglingOperator { pos: usize },
}

const EXPONENT_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Plus(usize),
    Minus(usize),
    Star(usize),
    Caret(usize),
    Int { pos: usize, reduced: u64, raw: u64, big: bool },
    Ident { pos: usize, name: String },
}

fn lex(src: &str, field: PrimeField) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus(i));
                i += 1;
            }
            '-' => {
                out.push(Token::Minus(i));
                i += 1;
            }
            '*' => {
                out.push(Token::Star(i));
                i += 1;
            }
            '^' => {
                out.push(Token::Caret(i));
                i += 1;
            }
            '(' | ')' => return Err(ParseError::Parenthesis { pos: i }),
            c if c.is_ascii_digit() => {
                let pos = i;
                // fold the decimal digits mod p as we go so literals of any
                // length are accepted; keep an exact copy while it fits for
                // exponent use
                let mut reduced = 0u64;
                let mut raw = 0u64;
                let mut big = false;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    let d = bytes[i] as u64 - '0' as u64;
                    reduced = (reduced * 10 + d) % field.p();
                    if let Some(r) = raw.checked_mul(10).and_then(|r| r.checked_add(d)) {
                        raw = r;
                    } else {
                        big = true;
                    }
                    i += 1;
                }
                out.push(Token::Int { pos, reduced, raw, big });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let pos = i;
                let mut name = String::new();
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_')
                {
                    name.push(bytes[i]);
                    i += 1;
                }
                out.push(Token::Ident { pos, name });
            }
            _ => return Err(ParseError::UnexpectedChar { ch, pos: i }),
        }
    }
    Ok(out)
}

/// Parses the additive polynomial grammar: terms joined by '+'/'-', each term
/// a product of factors joined by '*' or juxtaposition, each factor an
/// integer literal or a named variable with an optional '^' power. No
/// parentheses. Integer literals reduce mod p.
pub fn parse_poly(src: &str, field: PrimeField, vars: &[&str]) -> Result<FpPoly, ParseError> {
    let tokens = lex(src, field)?;
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let nvars = vars.len();
    let mut poly = FpPoly::zero(field, nvars);
    let mut i = 0;

    loop {
        // optional sign run before a term
        let mut sign = 1i64;
        while i < tokens.len() {
            match tokens[i] {
                Token::Plus(_) => i += 1,
                Token::Minus(_) => {
                    sign = -sign;
                    i += 1;
                }
                _ => break,
            }
        }
        if i >= tokens.len() {
            return Err(ParseError::DanglingOperator { pos: last_pos(&tokens) });
        }

        // one term: factors until we hit +, -, or end
        let mut coeff = field.reduce_i64(sign);
        let mut exps = vec![0u32; nvars];
        let mut factors = 0usize;
        loop {
            match tokens.get(i) {
                Some(Token::Int { reduced, .. }) => {
                    coeff = field.mul(coeff, *reduced);
                    i += 1;
                    factors += 1;
                    if let Some(Token::Caret(pos)) = tokens.get(i) {
                        return Err(ParseError::MisplacedCaret { pos: *pos });
                    }
                }
                Some(Token::Ident { pos, name }) => {
                    let var = vars
                        .iter()
                        .position(|v| v == name)
                        .ok_or_else(|| ParseError::UnknownVariable { name: name.clone(), pos: *pos })?;
                    i += 1;
                    let mut e: u64 = 1;
                    if let Some(Token::Caret(cpos)) = tokens.get(i) {
                        i += 1;
                        match tokens.get(i) {
                            Some(Token::Int { raw, big, pos, .. }) => {
                                if *big || *raw > EXPONENT_CAP {
                                    return Err(ParseError::ExponentTooLarge {
                                        value: if *big { u64::MAX } else { *raw },
                                        pos: *pos,
                                        cap: EXPONENT_CAP,
                                    });
                                }
                                e = *raw;
                                i += 1;
                            }
                            _ => return Err(ParseError::MissingExponent { pos: *cpos }),
                        }
                    }
                    exps[var] = exps[var]
                        .checked_add(e as u32)
                        .expect("exponent overflow");
                    factors += 1;
                }
                Some(Token::Star(pos)) => {
                    if factors == 0 {
                        return Err(ParseError::DanglingOperator { pos: *pos });
                    }
                    i += 1;
                    // '*' must be followed by another factor
                    match tokens.get(i) {
                        Some(Token::Int { .. }) | Some(Token::Ident { .. }) => {}
                        _ => return Err(ParseError::DanglingOperator { pos: *pos }),
                    }
                }
                Some(Token::Caret(pos)) => return Err(ParseError::MisplacedCaret { pos: *pos }),
                _ => break,
            }
        }
        if factors == 0 {
            return Err(ParseError::DanglingOperator { pos: last_pos(&tokens) });
        }
        poly.add_term(Monomial::new(exps), coeff);

        if i >= tokens.len() {
            return Ok(poly);
        }
    }
}

fn last_pos(tokens: &[Token]) -> usize {
    match tokens.last() {
        Some(Token::Plus(p) | Token::Minus(p) | Token::Star(p) | Token::Caret(p)) => *p,
        Some(Token::Int { pos, .. } | Token::Ident { pos, .. }) => *pos,
        None => 0,
    }
}

/// Renders a polynomial in the same grammar [`parse_poly`] accepts, with
/// terms in descending graded lex order and explicit '*' between factors.
pub fn poly_to_string(f: &FpPoly, vars: &[&str]) -> String {
    assert_eq!(vars.len(), f.nvars(), "variable name list has wrong arity");
    if f.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<(&Monomial, u64)> = f.terms().collect();
    let mut pieces = Vec::with_capacity(terms.len());
    for (m, c) in terms.into_iter().rev() {
        let mut factors = Vec::new();
        if c != 1 || m.is_one() {
            factors.push(c.to_string());
        }
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(vars[i].to_string()),
                _ => factors.push(format!("{}^{}", vars[i], e)),
            }
        }
        pieces.push(factors.join("*"));
    }
    pieces.join(" + ")
}
