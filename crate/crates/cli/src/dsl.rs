//! The session script language.
//!
//! ```text
//! ring S = poly(p=32003, vars=[x,y], order=degrevlex);
//! ideal I = {x^2, x*y, y^4};
//! ring R = quotient(S, I);
//! module K = residue(R);
//! betti(K);
//! ```
//!
//! Ideals are parsed in the most recently declared ring.

use std::collections::BTreeMap;
use std::sync::Arc;

use syzygia::filtration::{
    truncation_filtration, truncation_ring, CertificateJson, FiltrationCertificate,
};
use syzygia::lex::stretched_algebra;
use syzygia::module::{FreeModule, GradedMatrix, Presentation, Vector};
use syzygia::tensor::{tensor_modules, tensor_rings};
use syzygia::{Error, MonomialOrder, PolyRing, Polynomial, PrimeField, QuotientRing, Result};

/// A parsed argument value with its byte offset in the script.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Atom(String, usize),
    Str(String, usize),
    List(Vec<Value>, usize),
    Set(Vec<Value>, usize),
}

impl Value {
    pub fn pos(&self) -> usize {
        match self {
            Value::Atom(_, p) | Value::Str(_, p) | Value::List(_, p) | Value::Set(_, p) => *p,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Call {
    pub name: String,
    pub pos: usize,
    pub positional: Vec<Value>,
    pub keywords: Vec<(String, Value)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    Declare {
        kind: String,
        name: String,
        pos: usize,
        value: Value,
        call: Option<Call>,
    },
    Command(Call),
}

/// Maps byte offsets to 1-based line and column.
#[derive(Clone, Debug)]
pub struct Source {
    text: String,
}

impl Source {
    pub fn new(text: &str) -> Self {
        Source {
            text: text.to_string(),
        }
    }

    pub fn locate(&self, pos: usize) -> (usize, usize) {
        let before = &self.text[..pos.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
        (line, column)
    }

    pub fn error(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.locate(pos);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Re-anchors an error from a sub-parser at `pos`.
    pub fn wrap(&self, pos: usize, err: Error) -> Error {
        match err {
            Error::Parse {
                column, message, ..
            } => self.error(pos + column - 1, message),
            Error::BudgetExceeded(_) | Error::Verification(_) => err,
            other => self.error(pos, other.to_string()),
        }
    }
}

struct Lexer<'a> {
    src: &'a Source,
    bytes: &'a [u8],
    pos: usize,
}

fn is_name_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'-'
}

impl<'a> Lexer<'a> {
    fn skip(&mut self) {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.bytes[self.pos..].starts_with(b"#") || self.bytes[self.pos..].starts_with(b"//")
            {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                return;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.src.error(
                self.pos,
                format!("expected '{}', found '{}'", c as char, x as char),
            )),
            None => Err(self.src.error(
                self.pos,
                format!("expected '{}', found end of input", c as char),
            )),
        }
    }

    fn name(&mut self) -> Result<(String, usize)> {
        self.skip();
        let start = self.pos;
        if !self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic() || *c == b'_')
        {
            return Err(self.src.error(start, "expected a name"));
        }
        while self.pos < self.bytes.len() && is_name_char(self.bytes[self.pos]) {
            self.pos += 1;
        }
        Ok((
            String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned(),
            start,
        ))
    }

    fn value(&mut self) -> Result<Value> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.src.error(self.pos, "expected a value")),
        };
        match self.bytes[start] {
            b'[' | b'{' => {
                let close = if self.bytes[start] == b'[' {
                    b']'
                } else {
                    b'}'
                };
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() == Some(close) {
                    self.pos += 1;
                } else {
                    loop {
                        items.push(self.value()?);
                        match self.peek() {
                            Some(b',') => self.pos += 1,
                            Some(c) if c == close => {
                                self.pos += 1;
                                break;
                            }
                            _ => {
                                return Err(self.src.error(
                                    self.pos,
                                    format!("expected ',' or '{}'", close as char),
                                ))
                            }
                        }
                    }
                }
                Ok(if close == b']' {
                    Value::List(items, start)
                } else {
                    Value::Set(items, start)
                })
            }
            b'"' => {
                self.pos += 1;
                let body = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'"' {
                    self.pos += 1;
                }
                if self.pos == self.bytes.len() {
                    return Err(self.src.error(start, "unterminated string"));
                }
                let s = String::from_utf8_lossy(&self.bytes[body..self.pos]).into_owned();
                self.pos += 1;
                Ok(Value::Str(s, start))
            }
            _ => {
                let mut depth = 0i32;
                while self.pos < self.bytes.len() {
                    match self.bytes[self.pos] {
                        b'(' => depth += 1,
                        b')' if depth > 0 => depth -= 1,
                        b',' | b']' | b'}' | b')' | b';' if depth == 0 => break,
                        _ => {}
                    }
                    self.pos += 1;
                }
                let raw = String::from_utf8_lossy(&self.bytes[start..self.pos]);
                let trimmed = raw.trim_end();
                if trimmed.is_empty() {
                    return Err(self.src.error(start, "expected a value"));
                }
                Ok(Value::Atom(trimmed.to_string(), start))
            }
        }
    }

    fn call(&mut self) -> Result<Call> {
        let (name, pos) = self.name()?;
        self.expect(b'(')?;
        let mut call = Call {
            name,
            pos,
            positional: Vec::new(),
            keywords: Vec::new(),
        };
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(call);
        }
        loop {
            // keyword argument?
            let save = self.pos;
            let mut keyword = None;
            if let Ok((k, _)) = self.name() {
                if self.peek() == Some(b'=') {
                    self.pos += 1;
                    keyword = Some(k);
                } else {
                    self.pos = save;
                }
            } else {
                self.pos = save;
            }
            let v = self.value()?;
            match keyword {
                Some(k) => call.keywords.push((k, v)),
                None => {
                    if !call.keywords.is_empty() {
                        return Err(self
                            .src
                            .error(v.pos(), "positional argument after keyword arguments"));
                    }
                    call.positional.push(v)
                }
            }
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(call);
                }
                _ => return Err(self.src.error(self.pos, "expected ',' or ')'")),
            }
        }
    }
}

/// Parses a script into statements (syntax only).
pub fn parse_statements(src: &Source) -> Result<Vec<Statement>> {
    let mut lx = Lexer {
        src,
        bytes: src.text.as_bytes(),
        pos: 0,
    };
    let mut out = Vec::new();
    while lx.peek().is_some() {
        let save = lx.pos;
        let (word, pos) = lx.name()?;
        let stmt = if matches!(word.as_str(), "ring" | "ideal" | "module" | "filtration") {
            let (name, _) = lx.name()?;
            lx.expect(b'=')?;
            if word == "ideal" {
                let value = lx.value()?;
                Statement::Declare {
                    kind: word,
                    name,
                    pos,
                    value,
                    call: None,
                }
            } else {
                let value_pos = lx.peek().map(|_| lx.pos).unwrap_or(lx.pos);
                let call = lx.call()?;
                Statement::Declare {
                    kind: word,
                    name,
                    pos,
                    value: Value::Atom(String::new(), value_pos),
                    call: Some(call),
                }
            }
        } else {
            lx.pos = save;
            Statement::Command(lx.call()?)
        };
        lx.expect(b';')?;
        out.push(stmt);
    }
    Ok(out)
}

/// Declared objects plus the commands to run, in order.
#[derive(Clone, Debug, Default)]
pub struct Session {
    pub rings: BTreeMap<String, Arc<QuotientRing>>,
    pub ideals: BTreeMap<String, Vec<Polynomial>>,
    pub modules: BTreeMap<String, Presentation>,
    pub filtrations: BTreeMap<String, FiltrationCertificate>,
    pub commands: Vec<Call>,
    pub source: Option<Arc<SourceHandle>>,
}

/// Shared handle to the script text for positioning run-time diagnostics.
#[derive(Debug)]
pub struct SourceHandle(pub Source);

struct Builder<'a> {
    src: &'a Source,
    session: Session,
    current: Option<String>,
    base_dir: std::path::PathBuf,
}

impl Builder<'_> {
    fn ring(&self, v: &Value) -> Result<Arc<QuotientRing>> {
        let name = atom(self.src, v)?;
        self.session
            .rings
            .get(name)
            .cloned()
            .ok_or_else(|| self.src.error(v.pos(), format!("unknown ring '{name}'")))
    }

    fn module(&self, v: &Value) -> Result<Presentation> {
        let name = atom(self.src, v)?;
        self.session
            .modules
            .get(name)
            .cloned()
            .ok_or_else(|| self.src.error(v.pos(), format!("unknown module '{name}'")))
    }

    fn polys(&self, ring: &PolyRing, v: &Value) -> Result<Vec<Polynomial>> {
        match v {
            Value::Set(items, _) | Value::List(items, _) => {
                items.iter().map(|x| poly(self.src, ring, x)).collect()
            }
            Value::Atom(name, pos) => self
                .session
                .ideals
                .get(name)
                .map(|gens| gens.iter().map(|g| ring.import(g)).collect())
                .ok_or_else(|| self.src.error(*pos, format!("unknown ideal '{name}'"))),
            Value::Str(_, pos) => Err(self.src.error(*pos, "expected an ideal")),
        }
    }

    fn declare(
        &mut self,
        kind: &str,
        name: &str,
        pos: usize,
        value: &Value,
        call: Option<&Call>,
    ) -> Result<()> {
        let taken = self.session.rings.contains_key(name)
            || self.session.ideals.contains_key(name)
            || self.session.modules.contains_key(name)
            || self.session.filtrations.contains_key(name);
        if taken {
            return Err(self.src.error(pos, format!("'{name}' is already declared")));
        }
        match kind {
            "ideal" => {
                let ring_name = self.current.clone().ok_or_else(|| {
                    self.src
                        .error(pos, "an ideal needs a ring declared before it")
                })?;
                let ring = self.session.rings[&ring_name].ring().clone();
                let gens = match value {
                    Value::Set(items, _) => items
                        .iter()
                        .map(|x| poly(self.src, &ring, x))
                        .collect::<Result<Vec<_>>>()?,
                    other => return Err(self.src.error(other.pos(), "expected {generators}")),
                };
                self.session.ideals.insert(name.to_string(), gens);
            }
            "ring" => {
                let r = self.build_ring(call.unwrap())?;
                self.session.rings.insert(name.to_string(), Arc::new(r));
                self.current = Some(name.to_string());
            }
            "module" => {
                let m = self.build_module(call.unwrap())?;
                self.session.modules.insert(name.to_string(), m);
            }
            "filtration" => {
                let f = self.build_filtration(call.unwrap())?;
                self.session.filtrations.insert(name.to_string(), f);
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    fn build_ring(&self, c: &Call) -> Result<QuotientRing> {
        let args = Args::new(self.src, c);
        match c.name.as_str() {
            "poly" => {
                args.only(&["p", "vars", "order"])?;
                let p = match args.keyword("p") {
                    Some(v) => int(self.src, v)? as u32,
                    None => PrimeField::default().characteristic(),
                };
                let field = PrimeField::new(p).map_err(|e| self.src.wrap(c.pos, e))?;
                let vars = match args.keyword("vars") {
                    Some(Value::List(items, _)) => items
                        .iter()
                        .map(|v| atom(self.src, v).map(str::to_string))
                        .collect::<Result<Vec<_>>>()?,
                    Some(v) => {
                        return Err(self.src.error(v.pos(), "vars must be a list [x, y, ...]"))
                    }
                    None => return Err(self.src.error(c.pos, "poly(...) needs vars=[...]")),
                };
                let order = match args.keyword("order") {
                    Some(v) => {
                        let name = atom(self.src, v)?;
                        MonomialOrder::parse(name).ok_or_else(|| {
                            self.src
                                .error(v.pos(), format!("unknown monomial order '{name}'"))
                        })?
                    }
                    None => MonomialOrder::default(),
                };
                let s = PolyRing::new(field, vars, order).map_err(|e| self.src.wrap(c.pos, e))?;
                Ok(QuotientRing::polynomial(s))
            }
            "quotient" => {
                args.positional_count(2)?;
                let base = self.ring(&c.positional[0])?;
                let extra = self.polys(base.ring(), &c.positional[1])?;
                let mut gens = base.min_gens.clone();
                gens.extend(extra);
                QuotientRing::new(base.ring().clone(), &gens)
                    .map_err(|e| self.src.wrap(c.positional[1].pos(), e))
            }
            "tensor" => {
                args.positional_count(2)?;
                let a = self.ring(&c.positional[0])?;
                let b = self.ring(&c.positional[1])?;
                let t = tensor_rings(&a, &b).map_err(|e| self.src.wrap(c.pos, e))?;
                Ok((*t.ring).clone())
            }
            "stretched" => {
                args.only(&["h", "s"])?;
                let h = args.required_int("h")? as usize;
                let s = args.required_int("s")? as u32;
                stretched_algebra(h, s).map_err(|e| self.src.wrap(c.pos, e))
            }
            "truncation" => {
                args.only(&["h", "t"])?;
                let h = args.required_int("h")? as usize;
                let t = args.required_int("t")? as u32;
                truncation_ring(h, t).map_err(|e| self.src.wrap(c.pos, e))
            }
            other => Err(self
                .src
                .error(c.pos, format!("unknown ring constructor '{other}'"))),
        }
    }

    fn build_module(&self, c: &Call) -> Result<Presentation> {
        let args = Args::new(self.src, c);
        let wrap = |e| self.src.wrap(c.pos, e);
        match c.name.as_str() {
            "residue" => {
                args.positional_count(1)?;
                Ok(Presentation::residue_field(self.ring(&c.positional[0])?))
            }
            "free" => {
                args.positional_count(1)?;
                args.only(&["shifts"])?;
                let r = self.ring(&c.positional[0])?;
                let shifts = match args.keyword("shifts") {
                    Some(v) => ints(self.src, v)?,
                    None => vec![0],
                };
                Ok(Presentation::free(r, shifts))
            }
            "cyclic" => {
                args.positional_count(2)?;
                let r = self.ring(&c.positional[0])?;
                let gens = self.polys(r.ring(), &c.positional[1])?;
                Presentation::cyclic(r, &gens).map_err(wrap)
            }
            "coker" => {
                args.positional_count(1)?;
                args.only(&["shifts", "relations"])?;
                let r = self.ring(&c.positional[0])?;
                let shifts = match args.keyword("shifts") {
                    Some(v) => ints(self.src, v)?,
                    None => return Err(self.src.error(c.pos, "coker(...) needs shifts=[...]")),
                };
                let columns = match args.keyword("relations") {
                    Some(Value::List(items, _)) => items.clone(),
                    Some(v) => {
                        return Err(self
                            .src
                            .error(v.pos(), "relations must be a list of columns"))
                    }
                    None => Vec::new(),
                };
                let s = r.ring();
                let mut domain = Vec::new();
                let mut vectors = Vec::new();
                for col in &columns {
                    let Value::List(entries, pos) = col else {
                        return Err(self
                            .src
                            .error(col.pos(), "each relation is a list [f_1, ..., f_r]"));
                    };
                    if entries.len() != shifts.len() {
                        return Err(self.src.error(
                            *pos,
                            format!(
                                "relation has {} entries for {} generators",
                                entries.len(),
                                shifts.len()
                            ),
                        ));
                    }
                    let mut degree = None;
                    let mut v = Vec::new();
                    for (k, e) in entries.iter().enumerate() {
                        let f = r.reduce(&poly(self.src, s, e)?);
                        if f.is_zero() {
                            continue;
                        }
                        let d = shifts[k] + f.homogeneous_degree().unwrap() as i32;
                        if degree.is_some_and(|x| x != d) {
                            return Err(self.src.error(e.pos(), "relation is not homogeneous"));
                        }
                        degree = Some(d);
                        v.push((k, f));
                    }
                    // zero relations carry no information
                    if let Some(d) = degree {
                        domain.push(d);
                        vectors.push(Vector::from_entries(v));
                    }
                }
                let m =
                    GradedMatrix::new(r, FreeModule::new(domain), FreeModule::new(shifts), vectors)
                        .map_err(wrap)?;
                Ok(Presentation::new(m))
            }
            "shift" => {
                args.positional_count(2)?;
                let m = self.module(&c.positional[0])?;
                Ok(m.shifted(int(self.src, &c.positional[1])? as i32))
            }
            "tensor" => {
                args.positional_count(2)?;
                let m = self.module(&c.positional[0])?;
                let n = self.module(&c.positional[1])?;
                let t = tensor_rings(m.ring(), n.ring()).map_err(wrap)?;
                tensor_modules(&t, &m, &n).map_err(wrap)
            }
            other => Err(self
                .src
                .error(c.pos, format!("unknown module constructor '{other}'"))),
        }
    }

    fn build_filtration(&self, c: &Call) -> Result<FiltrationCertificate> {
        let args = Args::new(self.src, c);
        match c.name.as_str() {
            "load" => {
                args.positional_count(1)?;
                let Value::Str(path, pos) = &c.positional[0] else {
                    return Err(self
                        .src
                        .error(c.positional[0].pos(), "load(...) takes a quoted path"));
                };
                let full = self.base_dir.join(path);
                load_certificate(&full).map_err(|e| self.src.wrap(*pos, e))
            }
            "truncation" => {
                args.only(&["h", "t"])?;
                let h = args.required_int("h")? as usize;
                let t = args.required_int("t")? as u32;
                truncation_filtration(h, t).map_err(|e| self.src.wrap(c.pos, e))
            }
            other => Err(self
                .src
                .error(c.pos, format!("unknown filtration constructor '{other}'"))),
        }
    }
}

/// Reads a certificate file.
pub fn load_certificate(path: &std::path::Path) -> Result<FiltrationCertificate> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let json: CertificateJson = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    FiltrationCertificate::from_json(&json)
}

/// Keyword lookup and arity checks for one call.
pub struct Args<'a> {
    src: &'a Source,
    call: &'a Call,
}

impl<'a> Args<'a> {
    pub fn new(src: &'a Source, call: &'a Call) -> Self {
        Args { src, call }
    }

    pub fn keyword(&self, k: &str) -> Option<&'a Value> {
        self.call
            .keywords
            .iter()
            .find(|(n, _)| n == k)
            .map(|(_, v)| v)
    }

    pub fn only(&self, allowed: &[&str]) -> Result<()> {
        for (k, v) in &self.call.keywords {
            if !allowed.contains(&k.as_str()) {
                return Err(self.src.error(
                    v.pos(),
                    format!("unknown argument '{k}' for {}", self.call.name),
                ));
            }
        }
        Ok(())
    }

    pub fn positional_count(&self, n: usize) -> Result<()> {
        if self.call.positional.len() != n {
            return Err(self.src.error(
                self.call.pos,
                format!(
                    "{} takes {n} positional argument(s), got {}",
                    self.call.name,
                    self.call.positional.len()
                ),
            ));
        }
        Ok(())
    }

    pub fn required_int(&self, k: &str) -> Result<i64> {
        match self.keyword(k) {
            Some(v) => int(self.src, v),
            None => Err(self
                .src
                .error(self.call.pos, format!("{} needs {k}=...", self.call.name))),
        }
    }

    pub fn optional_int(&self, k: &str) -> Result<Option<i64>> {
        self.keyword(k).map(|v| int(self.src, v)).transpose()
    }
}

pub fn atom<'v>(src: &Source, v: &'v Value) -> Result<&'v str> {
    match v {
        Value::Atom(s, _) => Ok(s),
        other => Err(src.error(other.pos(), "expected a name")),
    }
}

pub fn int(src: &Source, v: &Value) -> Result<i64> {
    let s = atom(src, v)?;
    s.parse()
        .map_err(|_| src.error(v.pos(), format!("expected an integer, found '{s}'")))
}

pub fn ints(src: &Source, v: &Value) -> Result<Vec<i32>> {
    match v {
        Value::List(items, _) => items
            .iter()
            .map(|x| int(src, x).map(|n| n as i32))
            .collect(),
        other => Err(src.error(other.pos(), "expected a list of integers")),
    }
}

pub fn poly(src: &Source, ring: &PolyRing, v: &Value) -> Result<Polynomial> {
    match v {
        Value::Atom(text, pos) => ring.parse_homogeneous(text).map_err(|e| src.wrap(*pos, e)),
        other => Err(src.error(other.pos(), "expected a polynomial")),
    }
}

/// Parses and builds a session; `base_dir` resolves relative `load(...)` paths.
pub fn parse_session(text: &str, base_dir: &std::path::Path) -> Result<Session> {
    let src = Source::new(text);
    let statements = parse_statements(&src)?;
    let mut b = Builder {
        src: &src,
        session: Session::default(),
        current: None,
        base_dir: base_dir.to_path_buf(),
    };
    for st in &statements {
        match st {
            Statement::Declare {
                kind,
                name,
                pos,
                value,
                call,
            } => b.declare(kind, name, *pos, value, call.as_ref())?,
            Statement::Command(c) => b.session.commands.push(c.clone()),
        }
    }
    let mut session = b.session;
    session.source = Some(Arc::new(SourceHandle(src)));
    Ok(session)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session(text: &str) -> Result<Session> {
        parse_session(text, std::path::Path::new("."))
    }

    #[test]
    fn declarations() {
        let s = session(
            "ring S = poly(p=32003, vars=[x,y], order=degrevlex);\n\
             ideal I = {x^2, x*y, y^4};\n\
             ring R = quotient(S, I);\n\
             module M = coker(R, shifts=[0], relations=[[x],[y]]);\n\
             betti(M);",
        )
        .unwrap();
        assert_eq!(s.rings["R"].max_generator_degree(), 4);
        let m = &s.modules["M"];
        assert_eq!(m.relations.domain.shifts, vec![1, 1]);
        assert_eq!(s.commands.len(), 1);
        assert_eq!(s.commands[0].name, "betti");
    }

    #[test]
    fn syntax_error_position() {
        let err = session("ring S = poly(vars=[x,y]);\nideal I = {x^};").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 14)),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn semantic_errors() {
        let e = session("ring S = poly(vars=[x,y]);\nideal I = {x^2 + y};").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = session("ring S = poly(vars=[x,y]);\nideal I = {x};\nring R = quotient(S, I);")
            .unwrap_err();
        assert!(e.to_string().contains("degree 1"), "{e}");
        let e = session("module K = residue(R);").unwrap_err();
        assert!(e.to_string().contains("unknown ring 'R'"), "{e}");
        let e = session("ring S = poly(vars=[x]);\nring S = poly(vars=[y]);").unwrap_err();
        assert!(e.to_string().contains("already declared"), "{e}");
    }

    #[test]
    fn comments_and_constructors() {
        let s = session(
            "# stretched example\nring R = stretched(h=2, s=2); // inline\n\
             ring U = truncation(h=1, t=3);\nring T = tensor(R, U);\n\
             module K = residue(T);\nmodule L = shift(K, 2);\nfiltration F = truncation(h=2, t=3);",
        )
        .unwrap();
        assert_eq!(s.rings["T"].ring().names, vec!["x", "y", "x_2"]);
        assert_eq!(s.modules["L"].generators().shifts, vec![2]);
        assert!(s.filtrations.contains_key("F"));
    }
}
