//! Triangle mini-language.
//!
//! ```text
//! builtin:pascal|narayana|lah|aerated|allones
//! product:a=<seq>,b=<seq>,c=<seq>     a_k · b_{n-k} · c_n
//! rowseq:<seq> | colseq:<seq> | diagseq:<seq>
//! shift:i,j(<tri>)                    A_{n+i,k+j}
//! file:<path>
//! hadamard(<tri>;<tri>) | hinv(<tri>) | aerate(<tri>)
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::{aerate, hadamard_inverse, hadamard_product};
use crate::error::{Error, Result};
use crate::sequence::SequenceSpec;
use crate::triangle::{Builtin, Triangle, TriangleFile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleSpec {
    Builtin(Builtin),
    Product {
        a: SequenceSpec,
        b: SequenceSpec,
        c: SequenceSpec,
    },
    RowSeq(SequenceSpec),
    ColSeq(SequenceSpec),
    DiagSeq(SequenceSpec),
    Shift {
        rows: usize,
        cols: usize,
        inner: Box<TriangleSpec>,
    },
    File(PathBuf),
    Hadamard(Box<TriangleSpec>, Box<TriangleSpec>),
    HadamardInverse(Box<TriangleSpec>),
    Aerate(Box<TriangleSpec>),
}

impl TriangleSpec {
    pub fn product(a: SequenceSpec, b: SequenceSpec, c: SequenceSpec) -> Self {
        TriangleSpec::Product { a, b, c }
    }

    pub fn build(&self) -> Result<Triangle> {
        let name = self.to_string();
        let tri = match self {
            TriangleSpec::Builtin(b) => b.triangle(),
            TriangleSpec::Product { a, b, c } => {
                if b.eval(0)?.is_zero() {
                    return Err(Error::Invalid(format!("{name}: b_0 must be nonzero")));
                }
                let (a, b, c) = (a.clone(), b.clone(), c.clone());
                Triangle::from_fn(&name, move |n, k| Ok(a.eval(k)? * b.eval(n - k)? * c.eval(n)?))
            }
            TriangleSpec::RowSeq(s) => {
                let s = s.clone();
                Triangle::from_fn(&name, move |n, _| s.eval(n))
            }
            TriangleSpec::ColSeq(s) => {
                let s = s.clone();
                Triangle::from_fn(&name, move |_, k| s.eval(k))
            }
            TriangleSpec::DiagSeq(s) => {
                let s = s.clone();
                Triangle::from_fn(&name, move |n, k| s.eval(n - k))
            }
            TriangleSpec::Shift { rows, cols, inner } => {
                let (i, j) = (*rows, *cols);
                let inner = inner.build()?;
                Triangle::from_fn(&name, move |n, k| inner.get(n + i, k + j))
            }
            TriangleSpec::File(path) => {
                let file = TriangleFile::read(path)?;
                let label = file.name.clone();
                Triangle::from_window(label, file.into_window()?)
            }
            TriangleSpec::Hadamard(x, y) => hadamard_product(&x.build()?, &y.build()?),
            TriangleSpec::HadamardInverse(x) => hadamard_inverse(&x.build()?),
            TriangleSpec::Aerate(x) => aerate(&x.build()?),
        };
        Ok(match self {
            TriangleSpec::File(_) => tri,
            _ => tri.with_name(name),
        })
    }
}

/// Splits on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn call<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

fn parse_product(input: &str, body: &str) -> Result<TriangleSpec> {
    let mut fields: [Option<String>; 3] = [None, None, None];
    let mut current: Option<usize> = None;
    for token in split_top(body, ',') {
        let slot = match token.split_once('=') {
            Some(("a", _)) => Some(0),
            Some(("b", _)) => Some(1),
            Some(("c", _)) => Some(2),
            _ => None,
        };
        match (slot, current) {
            (Some(i), _) => {
                if fields[i].is_some() {
                    return Err(Error::parse(input, format!("duplicate key `{}`", &token[..1])));
                }
                fields[i] = Some(token[2..].to_string());
                current = Some(i);
            }
            // continuation of a `list:` value
            (None, Some(i)) => {
                let f = fields[i].as_mut().expect("current field is set");
                f.push(',');
                f.push_str(token);
            }
            (None, None) => return Err(Error::parse(input, "expected a=, b= or c=")),
        }
    }
    let [a, b, c] = fields.map(|f| f.unwrap_or_else(|| "ones".to_string()));
    Ok(TriangleSpec::Product {
        a: a.parse()?,
        b: b.parse()?,
        c: c.parse()?,
    })
}

impl FromStr for TriangleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(name) = t.strip_prefix("builtin:") {
            return Builtin::from_name(name)
                .map(TriangleSpec::Builtin)
                .ok_or_else(|| Error::parse(s, "unknown builtin"));
        }
        if let Some(body) = t.strip_prefix("product:") {
            return parse_product(s, body);
        }
        if let Some(seq) = t.strip_prefix("rowseq:") {
            return Ok(TriangleSpec::RowSeq(seq.parse()?));
        }
        if let Some(seq) = t.strip_prefix("colseq:") {
            return Ok(TriangleSpec::ColSeq(seq.parse()?));
        }
        if let Some(seq) = t.strip_prefix("diagseq:") {
            return Ok(TriangleSpec::DiagSeq(seq.parse()?));
        }
        if let Some(rest) = t.strip_prefix("shift:") {
            let open = rest.find('(').ok_or_else(|| Error::parse(s, "expected shift:i,j(<tri>)"))?;
            let inner = rest[open..]
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::parse(s, "unbalanced parentheses"))?;
            let (i, j) = rest[..open]
                .split_once(',')
                .ok_or_else(|| Error::parse(s, "expected shift:i,j(<tri>)"))?;
            let offset = |v: &str| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(s, "shift offsets must be integers >= 0"))
            };
            return Ok(TriangleSpec::Shift {
                rows: offset(i)?,
                cols: offset(j)?,
                inner: Box::new(inner.parse()?),
            });
        }
        if let Some(path) = t.strip_prefix("file:") {
            if path.is_empty() {
                return Err(Error::parse(s, "empty file path"));
            }
            return Ok(TriangleSpec::File(PathBuf::from(path)));
        }
        if let Some(body) = call(t, "hadamard") {
            let parts = split_top(body, ';');
            if parts.len() != 2 {
                return Err(Error::parse(s, "expected hadamard(<tri>;<tri>)"));
            }
            return Ok(TriangleSpec::Hadamard(
                Box::new(parts[0].parse()?),
                Box::new(parts[1].parse()?),
            ));
        }
        if let Some(body) = call(t, "hinv") {
            return Ok(TriangleSpec::HadamardInverse(Box::new(body.parse()?)));
        }
        if let Some(body) = call(t, "aerate") {
            return Ok(TriangleSpec::Aerate(Box::new(body.parse()?)));
        }
        Err(Error::parse(s, "unknown triangle spec"))
    }
}

impl fmt::Display for TriangleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangleSpec::Builtin(b) => write!(f, "builtin:{}", b.name()),
            TriangleSpec::Product { a, b, c } => write!(f, "product:a={a},b={b},c={c}"),
            TriangleSpec::RowSeq(s) => write!(f, "rowseq:{s}"),
            TriangleSpec::ColSeq(s) => write!(f, "colseq:{s}"),
            TriangleSpec::DiagSeq(s) => write!(f, "diagseq:{s}"),
            TriangleSpec::Shift { rows, cols, inner } => write!(f, "shift:{rows},{cols}({inner})"),
            TriangleSpec::File(p) => write!(f, "file:{}", p.display()),
            TriangleSpec::Hadamard(x, y) => write!(f, "hadamard({x};{y})"),
            TriangleSpec::HadamardInverse(x) => write!(f, "hinv({x})"),
            TriangleSpec::Aerate(x) => write!(f, "aerate({x})"),
        }
    }
}
