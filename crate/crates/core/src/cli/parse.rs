//! Tokenizer and recursive-descent parser for declaration files.

use std::fmt;

use num_traits::Zero;

use crate::fincat::{CategoryError, ChiObject, FinCategory, FinFunctor, FinNatTrans};
use crate::finspace::{FinSpace, MeasurableMap, Partition};
use crate::giry::{MixMeasure, MixMixMeasure};
use crate::kernel::StochKernel;
use crate::measure::{MeasureKind, RationalMeasure, RealObservable};
use crate::{parse_rational, Rational};

use super::workspace::{Kind, Workspace};

/// A load or command error with a stable one-word class and code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse { line: usize, col: usize, msg: String },
    Resolve { code: &'static str, at: Option<(usize, usize)>, msg: String },
    Invariant { code: String, at: Option<(usize, usize)>, msg: String },
    Io(String),
}

impl CliError {
    /// Wraps a library error whose message has the form `Code: detail`.
    pub fn invariant(err: impl fmt::Display, at: Option<(usize, usize)>) -> CliError {
        let text = err.to_string();
        match text.split_once(": ") {
            Some((code, msg)) if !code.is_empty() && code.chars().all(|c| c.is_ascii_alphanumeric()) => {
                CliError::Invariant { code: code.to_string(), at, msg: msg.to_string() }
            }
            _ => CliError::Invariant { code: "Invalid".to_string(), at, msg: text },
        }
    }

    fn unknown(kind: Kind, name: &str, at: (usize, usize)) -> CliError {
        CliError::Resolve { code: "UnknownName", at: Some(at), msg: format!("no {} named {name}", kind.keyword()) }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let loc = |at: &Option<(usize, usize)>| at.map(|(l, c)| format!(" {l}:{c}")).unwrap_or_default();
        match self {
            CliError::Parse { line, col, msg } => write!(f, "ParseError {line}:{col}: {msg}"),
            CliError::Resolve { code, at, msg } => write!(f, "ResolveError {code}{}: {msg}", loc(at)),
            CliError::Invariant { code, at, msg } => write!(f, "InvariantError {code}{}: {msg}", loc(at)),
            CliError::Io(msg) => write!(f, "IoError: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 16] = ["->", "~>", "=>", "{", "}", "(", ")", "[", "]", ",", ";", "=", ":", ".", "-", "/"];

fn tokenize(text: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    for (l, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (l + 1, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphanumeric() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), line, col });
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(*s)) {
                Some(s) => {
                    out.push(Token { tok: Tok::Sym(s), line, col });
                    i += s.len();
                }
                None => return Err(CliError::Parse { line, col, msg: format!("unexpected character '{c}'") }),
            }
        }
    }
    let (line, col) = match text.lines().enumerate().last() {
        Some((l, s)) => (l + 1, s.chars().count() + 1),
        None => (1, 1),
    };
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

fn is_name(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_alphabetic())
}

/// A parsed `{p,q}` literal and where it started.
struct AtomLit {
    labels: Vec<String>,
    at: (usize, usize),
}

enum MeasureRef {
    Named(String, (usize, usize)),
    Literal(Vec<(AtomLit, Rational)>, (usize, usize)),
}

enum MixRef {
    Named(String, (usize, usize)),
    Literal(Vec<(MeasureRef, Rational)>, (usize, usize)),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    ws: Workspace,
}

type PResult<T> = Result<T, CliError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn at(&self) -> (usize, usize) {
        let t = self.peek();
        (t.line, t.col)
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let t = self.peek();
        Err(CliError::Parse { line: t.line, col: t.col, msg: msg.into() })
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Word(w) => format!("'{w}'"),
            Tok::Sym(s) => format!("'{s}'"),
            Tok::Eof => "end of input".to_string(),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(t) if *t == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(t) if t == w)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected '{s}', found {}", Self::describe(&self.peek().tok)))
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.is_word(w) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{w}', found {}", Self::describe(&self.peek().tok)))
        }
    }

    fn name(&mut self) -> PResult<(String, (usize, usize))> {
        let at = self.at();
        match &self.peek().tok {
            Tok::Word(w) if is_name(w) => {
                let w = w.clone();
                self.pos += 1;
                Ok((w, at))
            }
            other => self.error(format!("expected a name, found {}", Self::describe(other))),
        }
    }

    /// A point label: a word, or a pair `(l,l)` of labels.
    fn label(&mut self) -> PResult<String> {
        if self.eat_sym("(") {
            let left = self.label()?;
            self.expect_sym(",")?;
            let right = self.label()?;
            self.expect_sym(")")?;
            return Ok(format!("({left},{right})"));
        }
        match &self.peek().tok {
            Tok::Word(w) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            other => self.error(format!("expected a point label, found {}", Self::describe(other))),
        }
    }

    fn rational(&mut self) -> PResult<Rational> {
        let at = self.at();
        let mut text = String::new();
        if self.eat_sym("-") {
            text.push('-');
        }
        let digits = |p: &mut Parser| -> PResult<String> {
            match &p.peek().tok {
                Tok::Word(w) if w.bytes().all(|b| b.is_ascii_digit()) => {
                    let w = w.clone();
                    p.pos += 1;
                    Ok(w)
                }
                other => p.error(format!("expected a number, found {}", Parser::describe(other))),
            }
        };
        text += &digits(self)?;
        if self.eat_sym("/") {
            text.push('/');
            text += &digits(self)?;
        } else if self.eat_sym(".") {
            text.push('.');
            text += &digits(self)?;
        }
        parse_rational(&text).ok_or(CliError::Parse { line: at.0, col: at.1, msg: format!("invalid number {text}") })
    }

    fn atom_lit(&mut self) -> PResult<AtomLit> {
        let at = self.at();
        self.expect_sym("{")?;
        let mut labels = vec![self.label()?];
        while self.eat_sym(",") {
            labels.push(self.label()?);
        }
        self.expect_sym("}")?;
        Ok(AtomLit { labels, at })
    }

    fn space_ref(&mut self) -> PResult<FinSpace> {
        let (name, at) = self.name()?;
        self.ws.spaces.get(&name).cloned().ok_or_else(|| CliError::unknown(Kind::Space, &name, at))
    }

    fn declared_name(&mut self, kind: Kind) -> PResult<(String, (usize, usize))> {
        let (name, at) = self.name()?;
        if self.ws.contains(kind, &name) {
            return Err(CliError::Resolve {
                code: "DuplicateName",
                at: Some(at),
                msg: format!("{} {name} is already declared", kind.keyword()),
            });
        }
        Ok((name, at))
    }

    fn parse(mut self) -> PResult<Workspace> {
        loop {
            let kind = match &self.peek().tok {
                Tok::Eof => return Ok(self.ws),
                Tok::Word(w) => match w.as_str() {
                    "space" => Kind::Space,
                    "measure" => Kind::Measure,
                    "map" => Kind::Map,
                    "kernel" => Kind::Kernel,
                    "observable" => Kind::Observable,
                    "mix" => Kind::Mix,
                    "mix2" => Kind::Mix2,
                    "chi" => Kind::Chi,
                    "category" => Kind::Category,
                    "functor" => Kind::Functor,
                    "nattrans" => Kind::NatTrans,
                    _ => return self.error(format!("unknown declaration '{w}'")),
                },
                other => return self.error(format!("expected a declaration, found {}", Self::describe(other))),
            };
            self.pos += 1;
            let name = match kind {
                Kind::Space => self.space()?,
                Kind::Measure => self.measure()?,
                Kind::Map => self.map()?,
                Kind::Kernel => self.kernel()?,
                Kind::Observable => self.observable()?,
                Kind::Mix => self.mix()?,
                Kind::Mix2 => self.mix2()?,
                Kind::Chi => self.chi()?,
                Kind::Category => self.category()?,
                Kind::Functor => self.functor()?,
                Kind::NatTrans => self.nattrans()?,
            };
            self.ws.record(kind, &name);
        }
    }

    fn space(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::Space)?;
        self.expect_sym("{")?;
        self.expect_word("points")?;
        self.expect_sym("=")?;
        let mut points = vec![self.label()?];
        while self.eat_sym(",") {
            points.push(self.label()?);
        }
        self.expect_sym(";")?;
        let mut blocks: Vec<Vec<String>> = Vec::new();
        if self.is_word("atoms") {
            self.pos += 1;
            self.expect_sym("=")?;
            while self.is_sym("{") {
                blocks.push(self.atom_lit()?.labels);
            }
            self.expect_sym(";")?;
        } else {
            blocks = points.iter().map(|p| vec![p.clone()]).collect();
        }
        self.expect_sym("}")?;
        let space = FinSpace::new(name.clone(), points, blocks).map_err(|e| CliError::invariant(e, Some(at)))?;
        self.ws.spaces.insert(name.clone(), space);
        Ok(name)
    }

    fn resolve_atom(space: &FinSpace, lit: &AtomLit) -> PResult<usize> {
        space.find_atom(&lit.labels).ok_or_else(|| CliError::Invariant {
            code: "NotAnAtom".into(),
            at: Some(lit.at),
            msg: format!("{{{}}} is not an atom of {}", lit.labels.join(","), space.name()),
        })
    }

    /// Turns `atom = value` entries into a vector over atoms; missing atoms get 0.
    fn atom_vector(space: &FinSpace, entries: Vec<(AtomLit, Rational)>) -> PResult<Vec<Rational>> {
        let mut out: Vec<Option<Rational>> = vec![None; space.atom_count()];
        for (lit, value) in entries {
            let a = Self::resolve_atom(space, &lit)?;
            if out[a].replace(value).is_some() {
                return Err(CliError::Invariant {
                    code: "DuplicateEntry".into(),
                    at: Some(lit.at),
                    msg: format!("atom {{{}}} is given twice", lit.labels.join(",")),
                });
            }
        }
        Ok(out.into_iter().map(|v| v.unwrap_or_else(Rational::zero)).collect())
    }

    /// `atom = rational` entries separated by `sep` up to `close`.
    fn weighted_atoms(&mut self, sep: &str, close: &str) -> PResult<Vec<(AtomLit, Rational)>> {
        let mut entries = Vec::new();
        while !self.is_sym(close) {
            let lit = self.atom_lit()?;
            self.expect_sym("=")?;
            entries.push((lit, self.rational()?));
            if !self.eat_sym(sep) {
                break;
            }
        }
        Ok(entries)
    }

    fn measure(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::Measure)?;
        self.expect_word("on")?;
        let space = self.space_ref()?;
        let kind = if self.is_word("finite") {
            self.pos += 1;
            MeasureKind::Finite
        } else {
            MeasureKind::Probability
        };
        self.expect_sym("{")?;
        let entries = self.weighted_atoms(";", "}")?;
        self.expect_sym("}")?;
        let weights = Self::atom_vector(&space, entries)?;
        let m = RationalMeasure::new(&space, weights, kind).map_err(|e| CliError::invariant(e, Some(at)))?;
        self.ws.measures.insert(name.clone(), m);
        Ok(name)
    }

    fn map(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::Map)?;
        self.expect_sym(":")?;
        let dom = self.space_ref()?;
        self.expect_sym("->")?;
        let cod = self.space_ref()?;
        self.expect_sym("{")?;
        let mut pairs = Vec::new();
        while !self.is_sym("}") {
            let x = self.label()?;
            self.expect_sym("->")?;
            let y = self.label()?;
            pairs.push((x, y));
            if !self.eat_sym(";") {
                break;
            }
        }
        self.expect_sym("}")?;
        let f = MeasurableMap::new(name.clone(), &dom, &cod, pairs.iter().map(|(x, y)| (x.as_str(), y.as_str())))
            .map_err(|e| CliError::invariant(e, Some(at)))?;
        self.ws.maps.insert(name.clone(), f);
        Ok(name)
    }

    fn kernel(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::Kernel)?;
        self.expect_sym(":")?;
        let dom = self.space_ref()?;
        self.expect_sym("~>")?;
        let cod = self.space_ref()?;
        self.expect_sym("{")?;
        let mut rows: Vec<Option<Vec<Rational>>> = vec![None; dom.atom_count()];
        while !self.is_sym("}") {
            let lit = self.atom_lit()?;
            let a = Self::resolve_atom(&dom, &lit)?;
            self.expect_sym(":")?;
            let entries = self.weighted_atoms(",", ";")?;
            let row = Self::atom_vector(&cod, entries)?;
            if rows[a].replace(row).is_some() {
                return Err(CliError::Invariant {
                    code: "DuplicateEntry".into(),
                    at: Some(lit.at),
                    msg: format!("row {{{}}} is given twice", lit.labels.join(",")),
                });
            }
            if !self.eat_sym(";") {
                break;
            }
        }
        self.expect_sym("}")?;
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(a, r)| {
                r.ok_or_else(|| CliError::Invariant {
                    code: "MissingRow".into(),
                    at: Some(at),
                    msg: format!("kernel {name} has no row for atom {{{}}}", dom.label_of_atom(a)),
                })
            })
            .collect::<PResult<Vec<_>>>()?;
        let k = StochKernel::new(&dom, &cod, rows).map_err(|e| CliError::invariant(e, Some(at)))?;
        self.ws.kernels.insert(name.clone(), k);
        Ok(name)
    }

    fn observable(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::Observable)?;
        self.expect_word("on")?;
        let space = self.space_ref()?;
        self.expect_sym("{")?;
        let entries = self.weighted_atoms(";", "}")?;
        self.expect_sym("}")?;
        let values = Self::atom_vector(&space, entries)?;
        let o = RealObservable::new(&space, values).map_err(|e| CliError::invariant(e, Some(at)))?;
        self.ws.observables.insert(name.clone(), o);
        Ok(name)
    }

    fn measure_ref(&mut self) -> PResult<MeasureRef> {
        let at = self.at();
        if self.eat_sym("[") {
            let entries = self.weighted_atoms(",", "]")?;
            self.expect_sym("]")?;
            return Ok(MeasureRef::Literal(entries, at));
        }
        let (name, at) = self.name()?;
        Ok(MeasureRef::Named(name, at))
    }

    fn resolve_measure(&self, space: &FinSpace, r: MeasureRef) -> PResult<RationalMeasure> {
        match r {
            MeasureRef::Named(name, at) => {
                self.ws.measures.get(&name).cloned().ok_or_else(|| CliError::unknown(Kind::Measure, &name, at))
            }
            MeasureRef::Literal(entries, at) => {
                let weights = Self::atom_vector(space, entries)?;
                RationalMeasure::probability(space, weights).map_err(|e| CliError::invariant(e, Some(at)))
            }
        }
    }

    /// `item = weight` entries separated by `sep` up to `close`.
    fn weighted<T>(&mut self, sep: &str, close: &str, item: impl Fn(&mut Parser) -> PResult<T>) -> PResult<Vec<(T, Rational)>> {
        let mut entries = Vec::new();
        while !self.is_sym(close) {
            let x = item(self)?;
            self.expect_sym("=")?;
            entries.push((x, self.rational()?));
            if !self.eat_sym(sep) {
                break;
            }
        }
        Ok(entries)
    }

    fn build_mix(&self, space: &FinSpace, entries: Vec<(MeasureRef, Rational)>, at: (usize, usize)) -> PResult<MixMeasure> {
        let resolved = entries
            .into_iter()
            .map(|(r, w)| Ok((self.resolve_measure(space, r)?, w)))
            .collect::<PResult<Vec<_>>>()?;
        MixMeasure::new(space, resolved).map_err(|e| CliError::invariant(e, Some(at)))
    }

    fn mix(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::Mix)?;
        self.expect_word("on")?;
        let space = self.space_ref()?;
        self.expect_sym("{")?;
        let entries = self.weighted(";", "}", Parser::measure_ref)?;
        self.expect_sym("}")?;
        let m = self.build_mix(&space, entries, at)?;
        self.ws.mixes.insert(name.clone(), m);
        Ok(name)
    }

    fn mix_ref(&mut self) -> PResult<MixRef> {
        let at = self.at();
        if self.eat_sym("[") {
            let entries = self.weighted(",", "]", Parser::measure_ref)?;
            self.expect_sym("]")?;
            return Ok(MixRef::Literal(entries, at));
        }
        let (name, at) = self.name()?;
        Ok(MixRef::Named(name, at))
    }

    fn mix2(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::Mix2)?;
        self.expect_word("on")?;
        let space = self.space_ref()?;
        self.expect_sym("{")?;
        let entries = self.weighted(";", "}", Parser::mix_ref)?;
        self.expect_sym("}")?;
        let mut resolved = Vec::new();
        for (r, w) in entries {
            let m = match r {
                MixRef::Named(n, at) => self.ws.mixes.get(&n).cloned().ok_or_else(|| CliError::unknown(Kind::Mix, &n, at))?,
                MixRef::Literal(entries, at) => self.build_mix(&space, entries, at)?,
            };
            resolved.push((m, w));
        }
        let mm = MixMixMeasure::new(&space, resolved).map_err(|e| CliError::invariant(e, Some(at)))?;
        self.ws.mix2s.insert(name.clone(), mm);
        Ok(name)
    }

    fn chi(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::Chi)?;
        self.expect_word("on")?;
        let space = self.space_ref()?;
        self.expect_sym("{")?;
        self.expect_word("atoms")?;
        self.expect_sym("=")?;
        let mut blocks = Vec::new();
        while self.is_sym("{") {
            blocks.push(self.atom_lit()?.labels);
        }
        self.expect_sym(";")?;
        self.expect_word("measure")?;
        self.expect_sym("=")?;
        let r = self.measure_ref()?;
        self.expect_sym(";")?;
        self.expect_sym("}")?;
        let measure = self.resolve_measure(&space, r)?;
        let partition = Partition::new(space.points().iter().cloned(), blocks)
            .map_err(|e| CliError::invariant(e, Some(at)))?;
        let obj = ChiObject::new(&space, partition, measure).map_err(|e| category_error(e, at))?;
        self.ws.chis.insert(name.clone(), obj);
        Ok(name)
    }

    fn category(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::Category)?;
        self.expect_sym("{")?;
        self.expect_word("objects")?;
        self.expect_sym("=")?;
        let mut builder = FinCategory::builder(name.clone()).object(self.name()?.0);
        while self.eat_sym(",") {
            builder = builder.object(self.name()?.0);
        }
        self.expect_sym(";")?;
        while !self.is_sym("}") {
            let keyword_at = self.at();
            let (keyword, _) = self.name()?;
            builder = match keyword.as_str() {
                "arrow" => {
                    let (a, _) = self.name()?;
                    self.expect_sym(":")?;
                    let (d, _) = self.name()?;
                    self.expect_sym("->")?;
                    let (c, _) = self.name()?;
                    builder.arrow(a, d, c)
                }
                "id" => {
                    let (o, _) = self.name()?;
                    self.expect_sym("=")?;
                    let (a, _) = self.name()?;
                    builder.identity(o, a)
                }
                "comp" => {
                    let (g, _) = self.name()?;
                    self.expect_sym(".")?;
                    let (f, _) = self.name()?;
                    self.expect_sym("=")?;
                    let (h, _) = self.name()?;
                    builder.compose(g, f, h)
                }
                other => {
                    return Err(CliError::Parse {
                        line: keyword_at.0,
                        col: keyword_at.1,
                        msg: format!("expected 'arrow', 'id' or 'comp', found '{other}'"),
                    })
                }
            };
            self.expect_sym(";")?;
        }
        self.expect_sym("}")?;
        let c = builder.build().map_err(|e| category_error(e, at))?;
        self.ws.categories.insert(name.clone(), c);
        Ok(name)
    }

    fn category_ref(&mut self) -> PResult<FinCategory> {
        let (name, at) = self.name()?;
        self.ws.categories.get(&name).cloned().ok_or_else(|| CliError::unknown(Kind::Category, &name, at))
    }

    fn functor(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::Functor)?;
        self.expect_sym(":")?;
        let src = self.category_ref()?;
        self.expect_sym("->")?;
        let dst = self.category_ref()?;
        self.expect_sym("{")?;
        let mut obs = Vec::new();
        let mut ars = Vec::new();
        while !self.is_sym("}") {
            let keyword_at = self.at();
            let (keyword, _) = self.name()?;
            let target = match keyword.as_str() {
                "ob" => &mut obs,
                "ar" => &mut ars,
                other => {
                    return Err(CliError::Parse {
                        line: keyword_at.0,
                        col: keyword_at.1,
                        msg: format!("expected 'ob' or 'ar', found '{other}'"),
                    })
                }
            };
            let (s, _) = self.name()?;
            self.expect_sym("->")?;
            let (t, _) = self.name()?;
            target.push((s, t));
            self.expect_sym(";")?;
        }
        self.expect_sym("}")?;
        let func = FinFunctor::new(
            name.clone(),
            &src,
            &dst,
            obs.iter().map(|(s, t)| (s.as_str(), t.as_str())),
            ars.iter().map(|(s, t)| (s.as_str(), t.as_str())),
        )
        .map_err(|e| category_error(e, at))?;
        self.ws.functors.insert(name.clone(), func);
        Ok(name)
    }

    fn nattrans(&mut self) -> PResult<String> {
        let (name, at) = self.declared_name(Kind::NatTrans)?;
        self.expect_sym(":")?;
        let functor_ref = |p: &mut Parser| -> PResult<FinFunctor> {
            let (n, at) = p.name()?;
            p.ws.functors.get(&n).cloned().ok_or_else(|| CliError::unknown(Kind::Functor, &n, at))
        };
        let from = functor_ref(self)?;
        self.expect_sym("=>")?;
        let to = functor_ref(self)?;
        self.expect_sym("{")?;
        let mut components = Vec::new();
        while !self.is_sym("}") {
            let (o, _) = self.name()?;
            self.expect_sym(":")?;
            let (a, _) = self.name()?;
            components.push((o, a));
            self.expect_sym(";")?;
        }
        self.expect_sym("}")?;
        let t = FinNatTrans::new(name.clone(), &from, &to, components.iter().map(|(o, a)| (o.as_str(), a.as_str())))
            .map_err(|e| category_error(e, at))?;
        self.ws.nattrans.insert(name.clone(), t);
        Ok(name)
    }
}

fn category_error(e: CategoryError, at: (usize, usize)) -> CliError {
    match e {
        CategoryError::UnknownObject(n) => {
            CliError::Resolve { code: "UnknownName", at: Some(at), msg: format!("no object named {n}") }
        }
        CategoryError::UnknownArrow(n) => {
            CliError::Resolve { code: "UnknownName", at: Some(at), msg: format!("no arrow named {n}") }
        }
        other => CliError::invariant(other, Some(at)),
    }
}

/// Parses and validates a declaration file.
pub fn parse_workspace(text: &str) -> Result<Workspace, CliError> {
    Parser { toks: tokenize(text)?, pos: 0, ws: Workspace::default() }.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn space_example() {
        let ws = parse_workspace("space X { points = a,b,c; atoms = {a} {b,c}; }").unwrap();
        let x = ws.spaces.get("X").unwrap();
        assert_eq!(x.atom_count(), 2);
        assert_eq!(x.name(), "X");
        let ws = parse_workspace("space D { points = 1, 2; }").unwrap();
        assert_eq!(ws.spaces.get("D").unwrap().atom_count(), 2);
    }

    #[test]
    fn measure_example() {
        let text = "space X { points = a,b,c; atoms = {a} {b,c}; }\nmeasure P on X { {a}=1/3; {b,c}=2/3; }";
        let ws = parse_workspace(text).unwrap();
        let p = ws.measures.get("P").unwrap();
        assert!(p.is_probability());
        assert_eq!(p.weights(), &[rat(1, 3), rat(2, 3)]);
        let text = "space X { points = a,b,c; atoms = {a} {b,c}; }\nmeasure P on X { {a}=1/3; {c,b}=0.5; }";
        let err = parse_workspace(text).unwrap_err();
        assert_eq!(err.to_string(), "InvariantError NotNormalized 2:9: probability weights sum to 5/6, not 1");
    }

    #[test]
    fn kernel_row_error() {
        let text = "space X { points = a,b,c; atoms = {a} {b,c}; }
space Y { points = u,v; }
kernel T : X ~> Y { {a}: {u}=1/2, {v}=1/2; {b,c}: {u}=0, {v}=5/6; }";
        let err = parse_workspace(text).unwrap_err();
        assert!(matches!(&err, CliError::Invariant { code, .. } if code == "RowNotNormalized"), "{err}");
    }

    #[test]
    fn parse_and_resolve_errors() {
        let err = parse_workspace("space X { points = a; } measure P on Z { {a}=1; }").unwrap_err();
        assert_eq!(err.to_string(), "ResolveError UnknownName 1:38: no space named Z");
        let err = parse_workspace("space X { points = a b; }").unwrap_err();
        assert_eq!(err.to_string(), "ParseError 1:22: expected ';', found 'b'");
        let err = parse_workspace("space X { points = a; } space X { points = b; }").unwrap_err();
        assert!(matches!(err, CliError::Resolve { code: "DuplicateName", .. }));
        let err = parse_workspace("space X { points = a, b; atoms = {a,b}; }\nmeasure P on X { {a}=1; }").unwrap_err();
        assert!(matches!(&err, CliError::Invariant { code, .. } if code == "NotAnAtom"));
        let err = parse_workspace("space X { points = a; } % ").unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));
    }

    #[test]
    fn comments_and_pairs() {
        let text = "# header\nspace P { points = (a,u), (a,v); atoms = {(a,u),(a,v)}; } # trailing";
        let ws = parse_workspace(text).unwrap();
        assert_eq!(ws.spaces.get("P").unwrap().points(), &["(a,u)".to_string(), "(a,v)".to_string()]);
    }

    #[test]
    fn mixes_and_categories() {
        let text = "space X { points = a, b; }
measure P on X { {a}=1; }
mix M on X { P=1/2; [{a}=0, {b}=1]=1/2; }
mix2 MM on X { M=1/3; [P=1]=2/3; }
category C { objects = A, B; arrow f : A -> B; }
functor F : C -> C { ob A -> A; ob B -> B; ar f -> f; }
nattrans a : F => F { A: id_A; B: id_B; }";
        let ws = parse_workspace(text).unwrap();
        assert_eq!(ws.mixes.get("M").unwrap().support().len(), 2);
        assert_eq!(ws.mix2s.get("MM").unwrap().support().len(), 2);
        assert_eq!(ws.categories.get("C").unwrap().arrows().len(), 3);
        assert!(ws.nattrans.contains("a"));
    }
}
