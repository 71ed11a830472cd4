//! Line-oriented instance files.
//!
//! One binding per line (or several separated by `;`), each of the form
//! `kind NAME [qualifiers] = constructor`, building on earlier names:
//!
//! ```text
//! ring R1 = zmod 6; ideal J of R1 = {0,3}
//! ring R2 = product [R1, R1]
//! ring Q = quotient R1 by J
//! hom f : R1 -> R1 = identity
//! module M over R1 = regular
//! modhom phi : M -> M via f = identity
//! submodule F of M = {0, 2, 4}
//! submodule G of M = generated {2}
//! multset S of R1 = generated {5}
//! ```
//!
//! Text after `#` is a comment. Every carrier and map is validated at
//! parse time, so a file that parses yields working objects. Errors
//! carry the one-based line number of the offending binding.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use bowtie_core::ring::Elem;
use bowtie_core::verify::{HomSpec, RingSpec};
use bowtie_core::{
    AlgebraError, Budget, FiniteModule, FiniteRing, Ideal, ModuleHom, MultSet, RingHom, Submodule,
};

use crate::error::{usage, CliError, Result};

pub struct RingBinding {
    pub ring: Arc<FiniteRing>,
    pub spec: RingSpec,
}

pub struct HomBinding {
    pub hom: RingHom,
    pub dom: String,
    pub cod: String,
    pub spec: HomSpec,
}

pub struct IdealBinding {
    pub ideal: Ideal,
    pub ring: String,
}

/// Structural description of a module binding that the sweep engine can
/// rebuild on its own: a regular module over the recorded ring shape.
/// `shape` lists zmod factor sizes when the ring is a product of them.
pub struct ModuleEcho {
    pub ring_spec: RingSpec,
    pub shape: Option<Vec<u32>>,
}

pub struct ModuleBinding {
    pub module: Arc<FiniteModule>,
    pub ring: Option<String>,
    pub echo: Option<ModuleEcho>,
}

pub struct ModHomBinding {
    pub hom: ModuleHom,
    pub dom: String,
    pub cod: String,
    pub spec: HomSpec,
}

pub struct SubBinding {
    pub sub: Submodule,
    pub module: String,
}

pub struct SetBinding {
    pub set: MultSet,
    pub ring: String,
}

pub enum Value {
    Ring(RingBinding),
    Hom(HomBinding),
    Ideal(IdealBinding),
    Module(ModuleBinding),
    ModHom(ModHomBinding),
    Submodule(SubBinding),
    MultSet(SetBinding),
}

impl Value {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Ring(_) => "ring",
            Value::Hom(_) => "hom",
            Value::Ideal(_) => "ideal",
            Value::Module(_) => "module",
            Value::ModHom(_) => "modhom",
            Value::Submodule(_) => "submodule",
            Value::MultSet(_) => "multset",
        }
    }
}

pub struct Entry {
    pub line: usize,
    pub value: Value,
}

/// All bindings from one file, in declaration order.
pub struct Bindings {
    map: BTreeMap<String, Entry>,
    order: Vec<String>,
}

impl Bindings {
    pub fn entry(&self, name: &str) -> Result<&Entry> {
        self.map.get(name).ok_or_else(|| {
            usage(format!(
                "no binding named {name} in the instance file (have: {})",
                self.order.join(", ")
            ))
        })
    }

    fn expect<'a, T>(
        &'a self,
        name: &str,
        want: &str,
        pick: impl Fn(&'a Value) -> Option<&'a T>,
    ) -> Result<&'a T> {
        let entry = self.entry(name)?;
        pick(&entry.value).ok_or_else(|| {
            usage(format!(
                "binding {name} is a {}, expected a {want}",
                entry.value.kind_name()
            ))
        })
    }

    pub fn ring(&self, name: &str) -> Result<&RingBinding> {
        self.expect(name, "ring", |v| match v {
            Value::Ring(b) => Some(b),
            _ => None,
        })
    }

    pub fn hom(&self, name: &str) -> Result<&HomBinding> {
        self.expect(name, "hom", |v| match v {
            Value::Hom(b) => Some(b),
            _ => None,
        })
    }

    pub fn ideal(&self, name: &str) -> Result<&IdealBinding> {
        self.expect(name, "ideal", |v| match v {
            Value::Ideal(b) => Some(b),
            _ => None,
        })
    }

    pub fn module(&self, name: &str) -> Result<&ModuleBinding> {
        self.expect(name, "module", |v| match v {
            Value::Module(b) => Some(b),
            _ => None,
        })
    }

    pub fn modhom(&self, name: &str) -> Result<&ModHomBinding> {
        self.expect(name, "modhom", |v| match v {
            Value::ModHom(b) => Some(b),
            _ => None,
        })
    }

    pub fn submodule(&self, name: &str) -> Result<&SubBinding> {
        self.expect(name, "submodule", |v| match v {
            Value::Submodule(b) => Some(b),
            _ => None,
        })
    }

    pub fn multset(&self, name: &str) -> Result<&SetBinding> {
        self.expect(name, "multset", |v| match v {
            Value::MultSet(b) => Some(b),
            _ => None,
        })
    }
}

pub fn load(path: &Path, budget: &Budget) -> Result<Bindings> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, budget)
}

pub fn parse(text: &str, budget: &Budget) -> Result<Bindings> {
    let mut bindings = Bindings {
        map: BTreeMap::new(),
        order: Vec::new(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        for stmt in stripped.split(';') {
            if stmt.trim().is_empty() {
                continue;
            }
            let toks = tokenize(stmt, line)?;
            let mut cur = Cursor {
                toks: &toks,
                pos: 0,
                line,
            };
            parse_binding(&mut cur, &mut bindings, budget)?;
            cur.finish()?;
        }
    }
    Ok(bindings)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(u32),
    Sym(char),
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("'{w}'"),
            Tok::Num(n) => format!("'{n}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::Arrow => "'->'".into(),
        }
    }
}

fn tokenize(stmt: &str, line: usize) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = stmt.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut text = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    text.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            let value: u32 = text.parse().map_err(|_| CliError::Parse {
                line,
                message: format!("number {text} does not fit in 32 bits"),
            })?;
            toks.push(Tok::Num(value));
        } else if c.is_alphabetic() || c == '_' {
            let mut text = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_alphanumeric() || d == '_' {
                    text.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            toks.push(Tok::Word(text));
        } else if c == '-' {
            chars.next();
            if chars.peek() == Some(&'>') {
                chars.next();
                toks.push(Tok::Arrow);
            } else {
                return Err(CliError::Parse {
                    line,
                    message: "stray '-' (did you mean '->'?)".into(),
                });
            }
        } else if matches!(c, '=' | ':' | ',' | '[' | ']' | '{' | '}') {
            chars.next();
            toks.push(Tok::Sym(c));
        } else {
            return Err(CliError::Parse {
                line,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(toks)
}

struct Cursor<'a> {
    toks: &'a [Tok],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> CliError {
        CliError::Parse {
            line: self.line,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<&'a Tok> {
        let tok = self
            .toks
            .get(self.pos)
            .ok_or_else(|| self.err(format!("expected {what}, found end of binding")))?;
        self.pos += 1;
        Ok(tok)
    }

    fn word(&mut self, what: &str) -> Result<&'a str> {
        match self.next(what)? {
            Tok::Word(w) => Ok(w),
            other => Err(self.err(format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let got = self.word(&format!("'{kw}'"))?;
        if got == kw {
            Ok(())
        } else {
            Err(self.err(format!("expected '{kw}', found '{got}'")))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(w)) if w == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sym(&mut self, c: char) -> Result<()> {
        match self.next(&format!("'{c}'"))? {
            Tok::Sym(s) if *s == c => Ok(()),
            other => Err(self.err(format!("expected '{c}', found {}", other.describe()))),
        }
    }

    fn arrow(&mut self) -> Result<()> {
        match self.next("'->'")? {
            Tok::Arrow => Ok(()),
            other => Err(self.err(format!("expected '->', found {}", other.describe()))),
        }
    }

    fn num(&mut self) -> Result<u32> {
        match self.next("a number")? {
            Tok::Num(n) => Ok(*n),
            other => Err(self.err(format!("expected a number, found {}", other.describe()))),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(tok) => Err(self.err(format!("trailing {} after the binding", tok.describe()))),
        }
    }

    /// `{ n, n, ... }` possibly empty.
    fn braced_numbers(&mut self) -> Result<Vec<u32>> {
        self.sym('{')?;
        self.comma_numbers('}')
    }

    /// `[ n, n, ... ]` possibly empty.
    fn bracketed_numbers(&mut self) -> Result<Vec<u32>> {
        self.sym('[')?;
        self.comma_numbers(']')
    }

    fn comma_numbers(&mut self, close: char) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        if matches!(self.peek(), Some(Tok::Sym(c)) if *c == close) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.num()?);
            match self.next(&format!("',' or '{close}'"))? {
                Tok::Sym(c) if *c == close => return Ok(out),
                Tok::Sym(',') => continue,
                other => {
                    return Err(self.err(format!(
                        "expected ',' or '{close}', found {}",
                        other.describe()
                    )))
                }
            }
        }
    }

    /// `[ A, B ]` with exactly two names.
    fn name_pair(&mut self) -> Result<(&'a str, &'a str)> {
        self.sym('[')?;
        let a = self.word("a name")?;
        self.sym(',')?;
        let b = self.word("a name")?;
        self.sym(']')?;
        Ok((a, b))
    }
}

fn bind(bindings: &mut Bindings, line: usize, name: &str, value: Value) -> Result<()> {
    if let Some(old) = bindings.map.get(name) {
        return Err(CliError::Parse {
            line,
            message: format!("name {name} is already bound on line {}", old.line),
        });
    }
    bindings.map.insert(name.to_string(), Entry { line, value });
    bindings.order.push(name.to_string());
    Ok(())
}

fn wrap(line: usize, name: &str, err: AlgebraError) -> CliError {
    CliError::Binding {
        line,
        name: name.to_string(),
        source: err,
    }
}

fn resolve<'a, T>(
    cur: &Cursor<'_>,
    bindings: &'a Bindings,
    name: &str,
    get: impl Fn(&'a Bindings, &str) -> Result<&'a T>,
) -> Result<&'a T> {
    get(bindings, name).map_err(|e| cur.err(e.to_string()))
}

fn check_range(cur: &Cursor<'_>, members: &[u32], size: usize, of: &str) -> Result<()> {
    for &x in members {
        if x as usize >= size {
            return Err(cur.err(format!("element {x} is out of range for {of} (size {size})")));
        }
    }
    Ok(())
}

fn zmod_shape(spec: &RingSpec) -> Option<Vec<u32>> {
    match spec {
        RingSpec::Zmod(n) => Some(vec![*n]),
        RingSpec::Product(a, b) => {
            let mut shape = zmod_shape(a)?;
            shape.extend(zmod_shape(b)?);
            Some(shape)
        }
        RingSpec::Quotient(..) => None,
    }
}

fn parse_binding(cur: &mut Cursor<'_>, bindings: &mut Bindings, budget: &Budget) -> Result<()> {
    let kind = cur.word("a binding kind")?;
    let name = cur.word("a name")?.to_string();
    if name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return Err(cur.err(format!("binding name {name} may not start with a digit")));
    }
    let line = cur.line;
    match kind {
        "ring" => {
            cur.sym('=')?;
            let (ring, spec) = parse_ring_expr(cur, bindings, budget, &name)?;
            bind(bindings, line, &name, Value::Ring(RingBinding { ring, spec }))
        }
        "hom" => {
            cur.sym(':')?;
            let dom_name = cur.word("the domain ring name")?.to_string();
            cur.arrow()?;
            let cod_name = cur.word("the codomain ring name")?.to_string();
            cur.sym('=')?;
            let dom = resolve(cur, bindings, &dom_name, Bindings::ring)?.ring.clone();
            let cod = resolve(cur, bindings, &cod_name, Bindings::ring)?.ring.clone();
            let (table, spec) = parse_map_expr(cur, dom.size(), "ring")?;
            let hom = RingHom::new(dom, cod, table).map_err(|e| wrap(line, &name, e))?;
            bind(
                bindings,
                line,
                &name,
                Value::Hom(HomBinding {
                    hom,
                    dom: dom_name,
                    cod: cod_name,
                    spec,
                }),
            )
        }
        "ideal" => {
            cur.keyword("of")?;
            let ring_name = cur.word("a ring name")?.to_string();
            cur.sym('=')?;
            let ring = resolve(cur, bindings, &ring_name, Bindings::ring)?.ring.clone();
            let ideal = if cur.eat_keyword("generated") {
                let gens = cur.braced_numbers()?;
                check_range(cur, &gens, ring.size(), &ring_name)?;
                Ideal::generated(&ring, &gens, budget).map_err(|e| wrap(line, &name, e))?
            } else {
                let members = cur.braced_numbers()?;
                check_range(cur, &members, ring.size(), &ring_name)?;
                Ideal::from_members(&ring, members).map_err(|e| wrap(line, &name, e))?
            };
            bind(
                bindings,
                line,
                &name,
                Value::Ideal(IdealBinding { ideal, ring: ring_name }),
            )
        }
        "module" => {
            let ring_name = if cur.eat_keyword("over") {
                Some(cur.word("a ring name")?.to_string())
            } else {
                None
            };
            cur.sym('=')?;
            let next = cur.word("'regular' or 'product'")?;
            let binding = match next {
                "regular" => {
                    let ring_name = ring_name
                        .ok_or_else(|| cur.err("a regular module needs 'over RING'"))?;
                    let rb = resolve(cur, bindings, &ring_name, Bindings::ring)?;
                    let module =
                        FiniteModule::regular(&rb.ring, budget).map_err(|e| wrap(line, &name, e))?;
                    let echo = ModuleEcho {
                        ring_spec: rb.spec.clone(),
                        shape: zmod_shape(&rb.spec),
                    };
                    ModuleBinding {
                        module,
                        ring: Some(ring_name),
                        echo: Some(echo),
                    }
                }
                "product" => {
                    if ring_name.is_some() {
                        return Err(cur.err(
                            "a product module determines its own ring; drop the 'over' qualifier",
                        ));
                    }
                    let (a_name, b_name) = cur.name_pair()?;
                    let a = resolve(cur, bindings, a_name, Bindings::module)?;
                    let b = resolve(cur, bindings, b_name, Bindings::module)?;
                    let module = FiniteModule::product(&a.module, &b.module, budget)
                        .map_err(|e| wrap(line, &name, e))?;
                    let echo = match (&a.echo, &b.echo) {
                        (Some(ea), Some(eb)) => Some(ModuleEcho {
                            ring_spec: RingSpec::Product(
                                Box::new(ea.ring_spec.clone()),
                                Box::new(eb.ring_spec.clone()),
                            ),
                            shape: match (&ea.shape, &eb.shape) {
                                (Some(sa), Some(sb)) => {
                                    let mut shape = sa.clone();
                                    shape.extend(sb.iter().copied());
                                    Some(shape)
                                }
                                _ => None,
                            },
                        }),
                        _ => None,
                    };
                    ModuleBinding {
                        module,
                        ring: None,
                        echo,
                    }
                }
                other => {
                    return Err(cur.err(format!(
                        "expected 'regular' or 'product', found '{other}'"
                    )))
                }
            };
            bind(bindings, line, &name, Value::Module(binding))
        }
        "modhom" => {
            cur.sym(':')?;
            let dom_name = cur.word("the domain module name")?.to_string();
            cur.arrow()?;
            let cod_name = cur.word("the codomain module name")?.to_string();
            let via = if cur.eat_keyword("via") {
                Some(cur.word("a hom name")?.to_string())
            } else {
                None
            };
            cur.sym('=')?;
            let dom = resolve(cur, bindings, &dom_name, Bindings::module)?;
            let cod = resolve(cur, bindings, &cod_name, Bindings::module)?;
            let ring_hom = match &via {
                Some(f_name) => resolve(cur, bindings, f_name, Bindings::hom)?.hom.clone(),
                None => {
                    let shared = match (&dom.ring, &cod.ring) {
                        (Some(a), Some(b)) if a == b => a.clone(),
                        _ => {
                            return Err(cur.err(
                                "without 'via HOM' both modules must be declared over the same ring",
                            ))
                        }
                    };
                    let ring = resolve(cur, bindings, &shared, Bindings::ring)?.ring.clone();
                    let table: Vec<Elem> = (0..ring.size() as Elem).collect();
                    RingHom::new(ring.clone(), ring, table).map_err(|e| wrap(line, &name, e))?
                }
            };
            let dom_module = dom.module.clone();
            let cod_module = cod.module.clone();
            let (table, spec) = parse_map_expr(cur, dom_module.size(), "module")?;
            let hom = ModuleHom::new(ring_hom, dom_module, cod_module, table)
                .map_err(|e| wrap(line, &name, e))?;
            bind(
                bindings,
                line,
                &name,
                Value::ModHom(ModHomBinding {
                    hom,
                    dom: dom_name,
                    cod: cod_name,
                    spec,
                }),
            )
        }
        "submodule" => {
            cur.keyword("of")?;
            let module_name = cur.word("a module name")?.to_string();
            cur.sym('=')?;
            let module = resolve(cur, bindings, &module_name, Bindings::module)?
                .module
                .clone();
            let sub = if cur.eat_keyword("generated") {
                let gens = cur.braced_numbers()?;
                check_range(cur, &gens, module.size(), &module_name)?;
                Submodule::generated(&module, &gens, budget).map_err(|e| wrap(line, &name, e))?
            } else {
                let members = cur.braced_numbers()?;
                check_range(cur, &members, module.size(), &module_name)?;
                Submodule::from_members(&module, members).map_err(|e| wrap(line, &name, e))?
            };
            bind(
                bindings,
                line,
                &name,
                Value::Submodule(SubBinding {
                    sub,
                    module: module_name,
                }),
            )
        }
        "multset" => {
            cur.keyword("of")?;
            let ring_name = cur.word("a ring name")?.to_string();
            cur.sym('=')?;
            let ring = resolve(cur, bindings, &ring_name, Bindings::ring)?.ring.clone();
            let set = if cur.eat_keyword("generated") {
                let gens = cur.braced_numbers()?;
                check_range(cur, &gens, ring.size(), &ring_name)?;
                let closed = multiplicative_closure(&ring, &gens);
                MultSet::from_members(&ring, closed).map_err(|e| wrap(line, &name, e))?
            } else {
                let members = cur.braced_numbers()?;
                check_range(cur, &members, ring.size(), &ring_name)?;
                MultSet::from_members(&ring, members).map_err(|e| wrap(line, &name, e))?
            };
            bind(
                bindings,
                line,
                &name,
                Value::MultSet(SetBinding { set, ring: ring_name }),
            )
        }
        other => Err(cur.err(format!(
            "unknown binding kind '{other}' (expected ring, hom, ideal, module, modhom, submodule, or multset)"
        ))),
    }
}

fn parse_ring_expr(
    cur: &mut Cursor<'_>,
    bindings: &Bindings,
    budget: &Budget,
    name: &str,
) -> Result<(Arc<FiniteRing>, RingSpec)> {
    let line = cur.line;
    match cur.word("'zmod', 'product', or 'quotient'")? {
        "zmod" => {
            let n = cur.num()?;
            let ring = FiniteRing::zmod(n, budget).map_err(|e| wrap(line, name, e))?;
            Ok((ring, RingSpec::Zmod(n)))
        }
        "product" => {
            let (a_name, b_name) = cur.name_pair()?;
            let a = resolve(cur, bindings, a_name, Bindings::ring)?;
            let b = resolve(cur, bindings, b_name, Bindings::ring)?;
            let ring =
                FiniteRing::product(&a.ring, &b.ring, budget).map_err(|e| wrap(line, name, e))?;
            let spec = RingSpec::Product(Box::new(a.spec.clone()), Box::new(b.spec.clone()));
            Ok((ring, spec))
        }
        "quotient" => {
            let base_name = cur.word("a ring name")?.to_string();
            cur.keyword("by")?;
            let ideal_name = cur.word("an ideal name")?.to_string();
            let base = resolve(cur, bindings, &base_name, Bindings::ring)?;
            let ib = resolve(cur, bindings, &ideal_name, Bindings::ideal)?;
            if ib.ring != base_name {
                return Err(cur.err(format!(
                    "ideal {ideal_name} lives in {}, not in {base_name}",
                    ib.ring
                )));
            }
            let q = FiniteRing::quotient(&base.ring, &ib.ideal, budget)
                .map_err(|e| wrap(line, name, e))?;
            let spec = RingSpec::Quotient(Box::new(base.spec.clone()), ib.ideal.members());
            Ok((q.ring, spec))
        }
        other => Err(cur.err(format!(
            "expected 'zmod', 'product', or 'quotient', found '{other}'"
        ))),
    }
}

/// `identity` or `map [..]`; returns the full table plus the shape echo.
fn parse_map_expr(cur: &mut Cursor<'_>, dom_size: usize, what: &str) -> Result<(Vec<Elem>, HomSpec)> {
    match cur.word("'identity' or 'map'")? {
        "identity" => Ok(((0..dom_size as Elem).collect(), HomSpec::Identity)),
        "map" => {
            let table = cur.bracketed_numbers()?;
            if table.len() != dom_size {
                return Err(cur.err(format!(
                    "map table has {} entries for a {what} of size {dom_size}",
                    table.len()
                )));
            }
            Ok((table.clone(), HomSpec::Table(table)))
        }
        other => Err(cur.err(format!("expected 'identity' or 'map', found '{other}'"))),
    }
}

/// Close a generating set under multiplication and adjoin 1.
fn multiplicative_closure(ring: &Arc<FiniteRing>, gens: &[Elem]) -> Vec<Elem> {
    let mut seen = vec![false; ring.size()];
    seen[ring.one() as usize] = true;
    let mut frontier: Vec<Elem> = vec![ring.one()];
    for &g in gens {
        if !seen[g as usize] {
            seen[g as usize] = true;
            frontier.push(g);
        }
    }
    while let Some(x) = frontier.pop() {
        let members: Vec<Elem> = seen
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i as Elem)
            .collect();
        for y in members {
            let p = ring.mul(x, y);
            if !seen[p as usize] {
                seen[p as usize] = true;
                frontier.push(p);
            }
        }
    }
    seen.iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| i as Elem)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(text: &str) -> Bindings {
        parse(text, &Budget::default()).expect("file parses")
    }

    fn err(text: &str) -> String {
        parse(text, &Budget::default())
            .err()
            .expect("file is rejected")
            .to_string()
    }

    #[test]
    fn parses_a_full_gluing_setup() {
        let b = ok("ring R1 = zmod 6; ideal J of R1 = {0, 3}\n\
                    hom f : R1 -> R1 = identity\n\
                    module M over R1 = regular\n\
                    modhom phi : M -> M via f = identity\n\
                    submodule F of M = {0, 2, 4}\n");
        assert_eq!(b.ring("R1").unwrap().ring.size(), 6);
        assert_eq!(b.ideal("J").unwrap().ideal.members(), vec![0, 3]);
        assert_eq!(b.ideal("J").unwrap().ring, "R1");
        assert!(b.hom("f").unwrap().hom.is_bijective());
        assert_eq!(b.module("M").unwrap().module.size(), 6);
        assert_eq!(b.modhom("phi").unwrap().dom, "M");
        assert_eq!(b.submodule("F").unwrap().sub.members(), vec![0, 2, 4]);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let b = ok("# a full comment line\n\n\
                    ring R = zmod 4  # trailing comment\n\
                    ideal I of R = {0, 2}\n");
        assert_eq!(b.ring("R").unwrap().ring.size(), 4);
        assert_eq!(b.ideal("I").unwrap().ideal.members(), vec![0, 2]);
    }

    #[test]
    fn generated_submodule_closes_under_the_action() {
        let b = ok("ring R = zmod 6\nmodule M over R = regular\n\
                    submodule G of M = generated {2}\n");
        assert_eq!(b.submodule("G").unwrap().sub.members(), vec![0, 2, 4]);
    }

    #[test]
    fn generated_multset_closes_under_multiplication() {
        let b = ok("ring R = zmod 12\nmultset S of R = generated {2}\n");
        assert_eq!(b.multset("S").unwrap().set.members(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn explicit_multset_must_already_be_closed() {
        let msg = err("ring R = zmod 12\nmultset S of R = {1, 2}\n");
        assert!(msg.contains("line 2"), "got: {msg}");
    }

    #[test]
    fn product_and_quotient_rings_compose() {
        let b = ok("ring A = zmod 2\nring B = zmod 3\nring P = product [A, B]\n\
                    ideal K of B = {0}\nring Q = quotient B by K\n");
        assert_eq!(b.ring("P").unwrap().ring.size(), 6);
        assert_eq!(b.ring("Q").unwrap().ring.size(), 3);
    }

    #[test]
    fn quotient_checks_the_ideal_lives_in_the_named_ring() {
        let msg = err("ring A = zmod 4\nring B = zmod 6\n\
                       ideal K of A = {0, 2}\nring Q = quotient B by K\n");
        assert!(msg.contains("line 4"), "got: {msg}");
        assert!(msg.contains('K'), "got: {msg}");
    }

    #[test]
    fn product_module_records_a_rebuildable_shape() {
        let b = ok("ring A = zmod 2\nring B = zmod 3\n\
                    module MA over A = regular\nmodule MB over B = regular\n\
                    module PM = product [MA, MB]\n");
        let pm = b.module("PM").unwrap();
        assert_eq!(pm.module.size(), 6);
        let echo = pm.echo.as_ref().expect("product of regulars echoes");
        assert_eq!(echo.shape.as_deref(), Some(&[2, 3][..]));
    }

    #[test]
    fn modhom_without_via_needs_a_shared_named_ring() {
        let b = ok("ring R = zmod 4\nmodule M over R = regular\n\
                    modhom p : M -> M = identity\n");
        assert!(b.modhom("p").unwrap().hom.is_bijective());
        let msg = err("ring A = zmod 2\nring B = zmod 3\n\
                       module MA over A = regular\nmodule MB over B = regular\n\
                       modhom p : MA -> MB = identity\n");
        assert!(msg.contains("line 5"), "got: {msg}");
    }

    #[test]
    fn undeclared_names_report_their_line() {
        let msg = err("ring R = zmod 6\nideal J of R2 = {0, 3}\n");
        assert!(msg.contains("line 2"), "got: {msg}");
        assert!(msg.contains("R2"), "got: {msg}");
        assert!(msg.contains('R'), "suggests what exists: {msg}");
    }

    #[test]
    fn duplicate_names_are_rejected_with_the_original_line() {
        let msg = err("ring R = zmod 6\nring R = zmod 4\n");
        assert!(msg.contains("line 2"), "got: {msg}");
        assert!(msg.contains("line 1"), "got: {msg}");
    }

    #[test]
    fn out_of_range_elements_are_rejected_before_construction() {
        let msg = err("ring R = zmod 6\nideal J of R = {0, 7}\n");
        assert!(msg.contains("out of range"), "got: {msg}");
        assert!(msg.contains("size 6"), "got: {msg}");
    }

    #[test]
    fn carriers_that_fail_closure_surface_the_binding_name() {
        let msg = err("ring R = zmod 6\nideal J of R = {0, 4}\n");
        assert!(msg.contains("binding J"), "got: {msg}");
    }

    #[test]
    fn wrong_kind_lookups_say_what_they_found() {
        let b = ok("ring R = zmod 6\n");
        let msg = b.ideal("R").err().expect("kind mismatch").to_string();
        assert!(msg.contains("is a ring"), "got: {msg}");
        assert!(msg.contains("expected a ideal") || msg.contains("expected an ideal"),
                "got: {msg}");
    }

    #[test]
    fn map_tables_must_cover_the_domain() {
        let msg = err("ring R = zmod 3\nhom f : R -> R = map [0, 1]\n");
        assert!(msg.contains("line 2"), "got: {msg}");
    }

    #[test]
    fn identity_needs_equal_carriers() {
        let msg = err("ring A = zmod 2\nring B = zmod 3\nhom f : A -> B = identity\n");
        assert!(msg.contains("line 3"), "got: {msg}");
    }

    #[test]
    fn names_may_not_start_with_a_digit() {
        let msg = err("ring 1R = zmod 6\n");
        assert!(msg.contains("line 1"), "got: {msg}");
    }

    #[test]
    fn stray_symbols_are_reported() {
        let msg = err("ring R - zmod 6\n");
        assert!(msg.contains("line 1"), "got: {msg}");
    }

    #[test]
    fn empty_files_parse_to_no_bindings() {
        let b = ok("# nothing here\n");
        let msg = b.entry("X").err().expect("no bindings").to_string();
        assert!(msg.contains('X'), "got: {msg}");
    }
}
