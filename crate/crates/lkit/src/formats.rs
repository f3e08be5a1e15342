//! Plain-text files: words, factorizations, matrices and Lagrangian bases.
//!
//! Word files start with a `g=<int>` header and hold one word per line. Tokens
//! are `z<i>`, `Z<i>` and `t(<sign>;<2g integers>;h=<k>)`, the last field
//! optional. `#` starts a comment.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::chart::ChartWord;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::meyer::{Ambient, Lagrangian};
use crate::signature::Factorization;
use crate::symplectic::{gen_to_twist, ClassTable, SpMatrix};
use crate::words::{GenLetter, Letter, TwistLetter, Word};

/// Lines with comments stripped, numbered from 1, blank lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn header(line: usize, l: &str, key: &str) -> Result<Option<usize>> {
    let Some(rest) = l.strip_prefix(key) else { return Ok(None) };
    let Some(v) = rest.trim_start().strip_prefix('=') else { return Ok(None) };
    v.trim().parse().map(Some).map_err(|_| Error::parse(line, format!("bad {key} header '{l}'")))
}

enum Token {
    Gen(GenLetter),
    Twist(TwistLetter),
}

fn parse_twist(body: &str, g: usize) -> std::result::Result<TwistLetter, String> {
    let parts: Vec<&str> = body.split(';').map(str::trim).collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(format!("twist letter needs 2 or 3 fields, got {}", parts.len()));
    }
    let sign: i64 = parts[0].trim_start_matches('+').parse().map_err(|_| format!("bad sign '{}'", parts[0]))?;
    if sign != 1 && sign != -1 {
        return Err(format!("twist sign {sign} is not ±1"));
    }
    let hclass = parts[1]
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<BigInt>().map_err(|_| format!("bad integer '{s}'")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let sep_genus = match parts.get(2) {
        None => None,
        Some(p) => {
            let v = p.strip_prefix("h=").ok_or_else(|| format!("expected h=<k>, got '{p}'"))?;
            Some(v.trim().parse().map_err(|_| format!("bad separating genus '{v}'"))?)
        }
    };
    let t = TwistLetter { sign: sign as i8, hclass, sep_genus };
    t.check(g).map_err(|e| e.to_string())?;
    Ok(t)
}

/// Splits at whitespace outside parentheses.
fn tokens(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = None;
    for (i, c) in line.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if let Some(s) = start.take() {
                out.push(&line[s..i]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(&line[s..]);
    }
    out
}

fn parse_token(tok: &str, g: usize) -> std::result::Result<Token, String> {
    if let Some(body) = tok.strip_prefix("t(").and_then(|b| b.strip_suffix(')')) {
        return parse_twist(body, g).map(Token::Twist);
    }
    let exp = match tok.chars().next() {
        Some('z') => 1,
        Some('Z') => -1,
        _ => return Err(format!("unknown token '{tok}'")),
    };
    let i: usize = tok[1..].parse().map_err(|_| format!("bad generator index in '{tok}'"))?;
    let l = GenLetter::new(i, exp);
    l.check(g).map_err(|e| e.to_string())?;
    Ok(Token::Gen(l))
}

/// One line of tokens. Generators mixed with twist letters are converted to
/// twists through the standard curve classes.
pub fn parse_word_line(line: &str, g: usize) -> Result<ChartWord> {
    parse_word_at(0, line, g)
}

fn parse_word_at(n: usize, line: &str, g: usize) -> Result<ChartWord> {
    let toks = tokens(line)
        .into_iter()
        .map(|t| parse_token(t, g).map_err(|m| Error::parse(n, m)))
        .collect::<Result<Vec<_>>>()?;
    if toks.iter().all(|t| matches!(t, Token::Gen(_))) {
        let ls = toks.into_iter().map(|t| if let Token::Gen(l) = t { l } else { unreachable!() }).collect();
        return Ok(ChartWord::Gen(Word::new(g, ls)?));
    }
    let table = ClassTable::standard(g);
    let ls = toks
        .into_iter()
        .map(|t| match t {
            Token::Gen(l) => gen_to_twist(&l, &table),
            Token::Twist(t) => t,
        })
        .collect();
    Ok(ChartWord::Twist(Word::new(g, ls)?))
}

#[derive(Clone, Debug)]
pub struct WordFile {
    pub g: usize,
    pub base_genus: Option<usize>,
    pub words: Vec<ChartWord>,
}

pub fn parse_word_file(text: &str) -> Result<WordFile> {
    let mut g = None;
    let mut base_genus = None;
    let mut words = Vec::new();
    for (n, l) in content_lines(text) {
        if let Some(v) = header(n, l, "g")? {
            if g.is_some() {
                return Err(Error::parse(n, "repeated g header"));
            }
            g = Some(v);
            continue;
        }
        if let Some(v) = header(n, l, "base_genus")? {
            base_genus = Some(v);
            continue;
        }
        let g = g.ok_or_else(|| Error::parse(n, "word before the g=<int> header"))?;
        words.push(parse_word_at(n, l, g)?);
    }
    let g = g.ok_or_else(|| Error::parse(1, "missing g=<int> header"))?;
    Ok(WordFile { g, base_genus, words })
}

/// A factorization file: the word lines are read as one word.
pub fn parse_factorization(text: &str) -> Result<Factorization> {
    let f = parse_word_file(text)?;
    let base_genus = f.base_genus.unwrap_or(0);
    let table = ClassTable::standard(f.g);
    let mut letters = Vec::new();
    for w in &f.words {
        match w {
            ChartWord::Gen(w) => letters.extend(w.letters().iter().map(|l| gen_to_twist(l, &table))),
            ChartWord::Twist(w) => letters.extend(w.letters().iter().cloned()),
        }
    }
    Factorization::new(Word::new(f.g, letters)?, base_genus)
}

pub fn format_word_file(g: usize, words: &[ChartWord]) -> String {
    let mut s = format!("g={g}\n");
    for w in words {
        let _ = writeln!(s, "{w}");
    }
    s
}

pub fn format_factorization(f: &Factorization) -> String {
    let mut s = format!("g={}\nbase_genus={}\n", f.g(), f.base_genus());
    let _ = writeln!(s, "{}", f.word());
    s
}

pub fn parse_matrix(text: &str) -> Result<SpMatrix> {
    let mut lines = content_lines(text);
    let (n0, first) = lines.next().ok_or_else(|| Error::parse(1, "empty matrix file"))?;
    let g = header(n0, first, "g")?.ok_or_else(|| Error::parse(n0, "expected g=<int> header"))?;
    let mut rows = Vec::with_capacity(2 * g);
    for (n, l) in lines {
        let row = l
            .split_whitespace()
            .map(|x| x.parse::<BigInt>().map_err(|_| Error::parse(n, format!("bad integer '{x}'"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != 2 * g {
            return Err(Error::parse(n, format!("row has {} entries, expected {}", row.len(), 2 * g)));
        }
        rows.push(row);
    }
    if rows.len() != 2 * g {
        return Err(Error::parse(n0, format!("matrix has {} rows, expected {}", rows.len(), 2 * g)));
    }
    SpMatrix::from_rows(g, rows)
}

pub fn format_matrix(m: &SpMatrix) -> String {
    let mut s = format!("g={}\n", m.g());
    for r in m.rows() {
        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    s
}

fn parse_rational(x: &str) -> Option<BigRational> {
    match x.split_once('/') {
        Some((p, q)) => {
            let (p, q): (BigInt, BigInt) = (p.parse().ok()?, q.parse().ok()?);
            (q != BigInt::from(0)).then(|| BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(x.parse().ok()?)),
    }
}

/// A Lagrangian of the standard symplectic space of dimension `2n`, given by
/// `n` basis columns.
pub fn parse_lagrangian(text: &str) -> Result<Lagrangian> {
    let mut lines = content_lines(text);
    let (n0, first) = lines.next().ok_or_else(|| Error::parse(1, "empty Lagrangian file"))?;
    let n = header(n0, first, "n")?.ok_or_else(|| Error::parse(n0, "expected n=<int> header"))?;
    let mut rows = Vec::with_capacity(2 * n);
    for (k, l) in lines {
        let row = l
            .split_whitespace()
            .map(|x| parse_rational(x).ok_or_else(|| Error::parse(k, format!("bad rational '{x}'"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::parse(k, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != 2 * n {
        return Err(Error::parse(n0, format!("basis has {} rows, expected {}", rows.len(), 2 * n)));
    }
    Lagrangian::new(Ambient::standard(n), QMatrix::from_rows(rows))
}

pub fn format_lagrangian(l: &Lagrangian) -> String {
    let b = l.basis();
    let mut s = format!("n={}\n", b.cols());
    for i in 0..b.rows() {
        let cells: Vec<String> = (0..b.cols())
            .map(|j| {
                let x = b.get(i, j);
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            })
            .collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    s
}
