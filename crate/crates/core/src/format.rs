//! Line-oriented text formats for every object kind, and a `Workspace` that
//! loads several files and resolves the names they refer to.
//!
//! ```text
//! lattice D4
//! elements: 0 a b 1
//! covers: 0<a 0<b a<1 b<1
//! ortho: 0->1 a->b b->a 1->0     # optional
//!
//! map swap : D4 -> D4
//! 0 |-> 0
//! a |-> b
//! ```
//!
//! A `map` between closure spaces may carry `kernel: p q`; a `map` between
//! lattices may carry `anchor: a`, making it a partial join map on `[0,a]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::closure::{ClosureSpace, PartialContinuousMap};
use crate::error::{Error, Result};
use crate::lattice::{Elem, Lattice, LatticeRef, Limits};
use crate::maps::LatticeMap;
use crate::ortho::{validate_ortho, OrthoLattice, OrthoSpace};
use crate::state::CausalRelation;
use crate::transition::{TruncatedPower, UnionMap};
use crate::weak::PartialJoinMap;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Splits on `sep` outside of braces and parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '{' | '(' => depth += 1,
            '}' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Whitespace-separated tokens, keeping anything inside braces together.
fn tokens(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<usize> = None;
    for (i, c) in s.char_indices() {
        match c {
            '{' | '(' => depth += 1,
            '}' | ')' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth <= 0 {
            if let Some(st) = start.take() {
                out.push(&s[st..i]);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(&s[st..]);
    }
    out
}

/// `{a, b, c}` into its members; `{}` is empty.
fn parse_set(s: &str, line: usize) -> Result<Vec<String>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| perr(line, format!("expected a set in braces, found `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(split_top(inner, ',').into_iter().map(|t| t.trim().to_string()).collect())
}

/// Splits `a SEP b` where `SEP` occurs outside braces.
fn split_pair<'a>(s: &'a str, sep: &str, line: usize) -> Result<(&'a str, &'a str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '{' | '(' => depth += 1,
            '}' | ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            let (a, b) = (s[..i].trim(), s[i + sep.len()..].trim());
            if a.is_empty() || b.is_empty() {
                break;
            }
            return Ok((a, b));
        }
    }
    Err(perr(line, format!("expected `x {sep} y`, found `{s}`")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Lattice,
    Map,
    UMap,
    Causal,
    OSpace,
    CSpace,
}

#[derive(Debug, Clone)]
struct Block {
    kind: Kind,
    name: String,
    line: usize,
    arrow: Option<(String, String)>,
    fields: Vec<(String, String, usize)>,
    entries: Vec<(String, String, usize)>,
}

impl Block {
    fn field_values(&self, key: &str) -> Vec<(&str, usize)> {
        self.fields.iter().filter(|(k, _, _)| k == key).map(|(_, v, l)| (v.as_str(), *l)).collect()
    }

    fn field_tokens(&self, key: &str) -> Vec<(&str, usize)> {
        self.field_values(key).into_iter().flat_map(|(v, l)| tokens(v).into_iter().map(move |t| (t, l))).collect()
    }
}

/// `expect OBJECT key=value ...`: recorded facts about a named object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub object: String,
    pub key: String,
    pub value: String,
    pub origin: String,
    pub line: usize,
}

const FIELDS: &[(Kind, &[&str])] = &[
    (Kind::Lattice, &["elements", "covers", "ortho"]),
    (Kind::Map, &["anchor", "kernel"]),
    (Kind::UMap, &[]),
    (Kind::Causal, &[]),
    (Kind::OSpace, &["points", "orth"]),
    (Kind::CSpace, &["points", "closed"]),
];

fn entry_separator(kind: Kind) -> Option<&'static str> {
    match kind {
        Kind::Map | Kind::UMap => Some("|->"),
        Kind::Causal => Some("~>"),
        _ => None,
    }
}

fn parse_blocks(text: &str, origin: &str) -> Result<(Vec<Block>, Vec<Expectation>)> {
    let mut blocks: Vec<Block> = Vec::new();
    let mut expectations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks = tokens(content);
        let head = toks[0];
        let kind = match head {
            "lattice" => Some(Kind::Lattice),
            "map" => Some(Kind::Map),
            "umap" => Some(Kind::UMap),
            "causal" => Some(Kind::Causal),
            "ospace" => Some(Kind::OSpace),
            "cspace" => Some(Kind::CSpace),
            _ => None,
        };
        if head == "expect" {
            if toks.len() < 3 {
                return Err(perr(line, "expected `expect OBJECT key=value ...`"));
            }
            for kv in &toks[2..] {
                let (k, v) = kv.split_once('=').ok_or_else(|| perr(line, format!("expected key=value, found `{kv}`")))?;
                expectations.push(Expectation {
                    object: toks[1].to_string(),
                    key: k.to_string(),
                    value: v.to_string(),
                    origin: origin.to_string(),
                    line,
                });
            }
            continue;
        }
        if let Some(kind) = kind {
            let arrow = match kind {
                Kind::Map | Kind::UMap | Kind::Causal => {
                    if toks.len() != 6 || toks[2] != ":" || toks[4] != "->" {
                        return Err(perr(line, format!("expected `{head} NAME : SOURCE -> TARGET`")));
                    }
                    Some((toks[3].to_string(), toks[5].to_string()))
                }
                _ => {
                    if toks.len() != 2 {
                        return Err(perr(line, format!("expected `{head} NAME`")));
                    }
                    None
                }
            };
            blocks.push(Block { kind, name: toks[1].to_string(), line, arrow, fields: Vec::new(), entries: Vec::new() });
            continue;
        }
        let block = blocks.last_mut().ok_or_else(|| perr(line, format!("`{content}` appears before any object header")))?;
        let allowed = FIELDS.iter().find(|(k, _)| *k == block.kind).map(|(_, f)| *f).unwrap_or(&[]);
        if let Some((key, rest)) = content.split_once(':') {
            if allowed.contains(&key.trim()) {
                block.fields.push((key.trim().to_string(), rest.trim().to_string(), line));
                continue;
            }
        }
        match entry_separator(block.kind) {
            Some(sep) => {
                let (a, b) = split_pair(content, sep, line)?;
                block.entries.push((a.to_string(), b.to_string(), line));
            }
            None => return Err(perr(line, format!("unexpected line `{content}` in {}", block.name))),
        }
    }
    Ok((blocks, expectations))
}

fn lookup(l: &Lattice, label: &str, line: usize) -> Result<Elem> {
    l.index_of(label).ok_or_else(|| perr(line, format!("{} has no element `{label}`", l.name())))
}

fn build_lattice(b: &Block) -> Result<(LatticeRef, Option<OrthoLattice>)> {
    let elements: Vec<&str> = b.field_tokens("elements").into_iter().map(|(t, _)| t).collect();
    if elements.is_empty() {
        return Err(perr(b.line, format!("lattice {} lists no elements", b.name)));
    }
    let mut index = HashMap::new();
    for (i, &e) in elements.iter().enumerate() {
        if index.insert(e, i).is_some() {
            return Err(perr(b.line, format!("element `{e}` listed twice")));
        }
    }
    let mut covers = Vec::new();
    let mut last_line = b.line;
    for (tok, line) in b.field_tokens("covers") {
        last_line = line;
        let (x, y) = split_pair(tok, "<", line)?;
        let get = |e: &str| index.get(e).copied().ok_or_else(|| perr(line, format!("unknown element `{e}` in covers")));
        covers.push((get(x)?, get(y)?));
    }
    let l = Lattice::from_covers(b.name.clone(), &elements, &covers).map_err(|e| match e {
        Error::CycleDetected { a, b } => {
            // the poset only knows default labels `e<index>` at this point
            let name = |s: &str| s.strip_prefix('e').and_then(|i| i.parse::<usize>().ok()).and_then(|i| elements.get(i)).map(|e| e.to_string()).unwrap_or(s.to_string());
            perr(last_line, format!("covers form a cycle through {} and {}", name(&a), name(&b)))
        }
        e => e,
    })?;
    let l = Arc::new(l);
    let ortho_toks = b.field_tokens("ortho");
    if ortho_toks.is_empty() {
        return Ok((l, None));
    }
    let mut table: Vec<Option<Elem>> = vec![None; l.size()];
    for (tok, line) in ortho_toks {
        let (x, y) = split_pair(tok, "->", line)?;
        let (x, y) = (lookup(&l, x, line)?, lookup(&l, y, line)?);
        if table[x].replace(y).is_some() {
            return Err(perr(line, format!("orthocomplement of `{}` given twice", l.label(x))));
        }
    }
    let table: Vec<Elem> = table
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| perr(b.line, format!("no orthocomplement given for `{}`", l.label(x)))))
        .collect::<Result<_>>()?;
    let o = validate_ortho(&l, table)?;
    Ok((l, Some(o)))
}

fn point_names(b: &Block) -> Result<Vec<String>> {
    let pts: Vec<String> = b.field_tokens("points").into_iter().map(|(t, _)| t.to_string()).collect();
    let mut seen = std::collections::HashSet::new();
    for p in &pts {
        if !seen.insert(p) {
            return Err(perr(b.line, format!("point `{p}` listed twice")));
        }
    }
    Ok(pts)
}

fn point_index(points: &[String], p: &str, line: usize) -> Result<usize> {
    points.iter().position(|q| q == p).ok_or_else(|| perr(line, format!("unknown point `{p}`")))
}

fn build_cspace(b: &Block) -> Result<ClosureSpace> {
    let points = point_names(b)?;
    let mut closed = Vec::new();
    for (tok, line) in b.field_tokens("closed") {
        let mut m = 0u64;
        for p in parse_set(tok, line)? {
            m |= 1 << point_index(&points, &p, line)?;
        }
        closed.push(m);
    }
    ClosureSpace::new(b.name.clone(), points, closed)
}

fn build_ospace(b: &Block) -> Result<OrthoSpace> {
    let points = point_names(b)?;
    let mut pairs = Vec::new();
    for (tok, line) in b.field_tokens("orth") {
        let (x, y) = split_pair(tok, "~", line)?;
        pairs.push((point_index(&points, x, line)?, point_index(&points, y, line)?));
    }
    OrthoSpace::new(b.name.clone(), points, &pairs)
}

fn entry_table<'a>(b: &'a Block, domain: &[String]) -> Result<Vec<Option<(&'a str, usize)>>> {
    let mut table = vec![None; domain.len()];
    for (x, y, line) in &b.entries {
        let i = domain.iter().position(|d| d == x).ok_or_else(|| perr(*line, format!("`{x}` is not in the source of {}", b.name)))?;
        if table[i].replace((y.as_str(), *line)).is_some() {
            return Err(perr(*line, format!("`{x}` is mapped twice in {}", b.name)));
        }
    }
    Ok(table)
}

/// Objects loaded from text, by name. Every object name is unique.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub lattices: BTreeMap<String, LatticeRef>,
    pub ortho: BTreeMap<String, OrthoLattice>,
    pub maps: BTreeMap<String, LatticeMap>,
    pub partial_maps: BTreeMap<String, PartialJoinMap>,
    pub space_maps: BTreeMap<String, PartialContinuousMap>,
    pub cspaces: BTreeMap<String, ClosureSpace>,
    pub ospaces: BTreeMap<String, OrthoSpace>,
    pub umaps: BTreeMap<String, UnionMap>,
    pub causal: BTreeMap<String, CausalRelation>,
    pub expectations: Vec<Expectation>,
    /// Object name to the file it came from.
    pub origins: BTreeMap<String, String>,
}

impl Workspace {
    /// Loads `(origin, text)` sources; references may cross sources.
    pub fn from_sources(sources: &[(String, String)], limits: &Limits) -> Result<Workspace> {
        let mut ws = Workspace::default();
        let mut parsed = Vec::new();
        for (origin, text) in sources {
            let (blocks, exps) = parse_blocks(text, origin).map_err(|e| e.in_file(origin))?;
            ws.expectations.extend(exps);
            for b in blocks {
                if let Some(prev) = ws.origins.insert(b.name.clone(), origin.clone()) {
                    return Err(perr(b.line, format!("name {} already defined in {prev}", b.name)).in_file(origin));
                }
                parsed.push((origin.clone(), b));
            }
        }
        for pass in [0, 1] {
            for (origin, b) in &parsed {
                let first = matches!(b.kind, Kind::Lattice | Kind::CSpace | Kind::OSpace);
                if first == (pass == 0) {
                    ws.add_block(b, limits).map_err(|e| e.in_file(origin))?;
                }
            }
        }
        for e in &ws.expectations {
            if !ws.origins.contains_key(&e.object) {
                return Err(Error::Unresolved(format!("expectation for unknown object {}", e.object))
                    .in_file(format!("{}:{}", e.origin, e.line)));
            }
        }
        Ok(ws)
    }

    pub fn from_text(text: &str, limits: &Limits) -> Result<Workspace> {
        Workspace::from_sources(&[("<input>".to_string(), text.to_string())], limits)
    }

    pub fn from_files<P: AsRef<Path>>(paths: &[P], limits: &Limits) -> Result<Workspace> {
        let mut sources = Vec::new();
        for p in paths {
            let p = p.as_ref();
            let text = std::fs::read_to_string(p)
                .map_err(|e| perr(0, format!("cannot read: {e}")).in_file(p.display().to_string()))?;
            sources.push((p.display().to_string(), text));
        }
        Workspace::from_sources(&sources, limits)
    }

    /// Every `*.lat` file in `dir`, in name order.
    pub fn from_dir(dir: &Path, limits: &Limits) -> Result<Workspace> {
        let entries = std::fs::read_dir(dir).map_err(|e| perr(0, format!("cannot read directory: {e}")).in_file(dir.display().to_string()))?;
        let mut paths: Vec<_> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "lat"))
            .collect();
        paths.sort();
        Workspace::from_files(&paths, limits)
    }

    fn lattice_ref(&self, name: &str, line: usize) -> Result<&LatticeRef> {
        self.lattices.get(name).ok_or_else(|| Error::Unresolved(format!("line {line}: no lattice named {name}")))
    }

    fn add_block(&mut self, b: &Block, limits: &Limits) -> Result<()> {
        let name = b.name.clone();
        match b.kind {
            Kind::Lattice => {
                let (l, o) = build_lattice(b)?;
                limits.check_lattice(&name, l.size())?;
                self.lattices.insert(name.clone(), l);
                if let Some(o) = o {
                    self.ortho.insert(name, o);
                }
            }
            Kind::CSpace => {
                self.cspaces.insert(name, build_cspace(b)?);
            }
            Kind::OSpace => {
                self.ospaces.insert(name, build_ospace(b)?);
            }
            Kind::Map => {
                let (src, tgt) = b.arrow.clone().expect("map header has an arrow");
                if let (Some(s1), Some(s2)) = (self.cspaces.get(&src), self.cspaces.get(&tgt)) {
                    let m = self.build_space_map(b, s1, s2)?;
                    self.space_maps.insert(name, m);
                } else {
                    let l1 = self.lattice_ref(&src, b.line)?.clone();
                    let l2 = self.lattice_ref(&tgt, b.line)?.clone();
                    if let Some(&(a, line)) = b.field_tokens("anchor").first() {
                        let anchor = lookup(&l1, a, line)?;
                        let m = self.build_lattice_map(b, &l1, &l2, Some(anchor))?;
                        let values = m.values().to_vec();
                        self.partial_maps.insert(name, PartialJoinMap::from_fn(&l1, anchor, &l2, |x| values[x])?);
                    } else {
                        let m = self.build_lattice_map(b, &l1, &l2, None)?;
                        if let Some((x, y)) = m.isotone_witness() {
                            return Err(Error::NotIsotone(format!(
                                "{name}: {} <= {} but {} |-> {} and {} |-> {}",
                                l1.label(x),
                                l1.label(y),
                                l1.label(x),
                                l2.label(m.apply(x)),
                                l1.label(y),
                                l2.label(m.apply(y))
                            )));
                        }
                        self.maps.insert(name, m);
                    }
                }
            }
            Kind::UMap => {
                let (src, tgt) = b.arrow.clone().expect("umap header has an arrow");
                let l1 = self.lattice_ref(&src, b.line)?.clone();
                let l2 = self.lattice_ref(&tgt, b.line)?.clone();
                let p1 = TruncatedPower::new(&l1, limits)?;
                let p2 = TruncatedPower::new(&l2, limits)?;
                let domain: Vec<String> = p1.nonzero().iter().map(|&a| l1.label(a).to_string()).collect();
                let table = entry_table(b, &domain)?;
                let mut images = Vec::new();
                for (i, slot) in table.into_iter().enumerate() {
                    let (img, line) = slot.ok_or_else(|| perr(b.line, format!("no image given for `{}` in {name}", domain[i])))?;
                    let mut m = 0u32;
                    for e in parse_set(img, line)? {
                        let x = lookup(&l2, &e, line)?;
                        m |= p2.bit(x).map(|k| 1u32 << k).ok_or_else(|| perr(line, "the bottom element cannot appear in an image"))?;
                    }
                    images.push(m);
                }
                self.umaps.insert(name, UnionMap::new(&p1, &p2, images)?);
            }
            Kind::Causal => {
                let (src, tgt) = b.arrow.clone().expect("causal header has an arrow");
                let l1 = self.lattice_ref(&src, b.line)?.clone();
                let l2 = self.lattice_ref(&tgt, b.line)?.clone();
                let pairs: Vec<(Elem, Elem)> = b
                    .entries
                    .iter()
                    .map(|(x, y, line)| Ok((lookup(&l1, x, *line)?, lookup(&l2, y, *line)?)))
                    .collect::<Result<_>>()?;
                self.causal.insert(name, CausalRelation::new(&l1, &l2, &pairs)?);
            }
        }
        Ok(())
    }

    fn build_lattice_map(&self, b: &Block, l1: &LatticeRef, l2: &LatticeRef, anchor: Option<Elem>) -> Result<LatticeMap> {
        let domain: Vec<String> = l1.labels().to_vec();
        let table = entry_table(b, &domain)?;
        let mut values = vec![l2.bottom(); l1.size()];
        for x in l1.elements() {
            let needed = anchor.is_none_or(|a| l1.leq(x, a));
            match (table[x], needed) {
                (Some((y, line)), true) => values[x] = lookup(l2, y, line)?,
                (None, true) => return Err(perr(b.line, format!("no image given for `{}` in {}", l1.label(x), b.name))),
                (Some((_, line)), false) => {
                    return Err(perr(line, format!("`{}` is outside the anchor interval of {}", l1.label(x), b.name)))
                }
                (None, false) => {}
            }
        }
        LatticeMap::new(l1, l2, values)
    }

    fn build_space_map(&self, b: &Block, s1: &ClosureSpace, s2: &ClosureSpace) -> Result<PartialContinuousMap> {
        let table = entry_table(b, s1.points())?;
        let mut kernel = vec![false; s1.size()];
        for (p, line) in b.field_tokens("kernel") {
            kernel[point_index(s1.points(), p, line)?] = true;
        }
        let mut values = Vec::new();
        for (i, slot) in table.into_iter().enumerate() {
            values.push(match (slot, kernel[i]) {
                (Some((y, line)), false) => Some(point_index(s2.points(), y, line)?),
                (None, true) => None,
                (Some((_, line)), true) => return Err(perr(line, format!("kernel point `{}` is also mapped", s1.points()[i]))),
                (None, false) => {
                    return Err(perr(b.line, format!("`{}` is neither mapped nor in the kernel of {}", s1.points()[i], b.name)))
                }
            });
        }
        PartialContinuousMap::new(s1, s2, values)
    }

    pub fn object_names(&self) -> impl Iterator<Item = &String> {
        self.origins.keys()
    }
}

fn check_token(s: &str) {
    assert!(
        !s.is_empty() && !s.contains(char::is_whitespace) && !s.contains('#'),
        "label `{s}` cannot be written as a single token"
    );
}

pub fn write_lattice(l: &Lattice, ortho: Option<&OrthoLattice>) -> String {
    let mut out = String::new();
    check_token(l.name());
    l.labels().iter().for_each(|s| check_token(s));
    writeln!(out, "lattice {}", l.name()).unwrap();
    writeln!(out, "elements: {}", l.labels().join(" ")).unwrap();
    let covers: Vec<String> = l.poset().covers().iter().map(|&(a, b)| format!("{}<{}", l.label(a), l.label(b))).collect();
    if !covers.is_empty() {
        writeln!(out, "covers: {}", covers.join(" ")).unwrap();
    }
    if let Some(o) = ortho {
        let pairs: Vec<String> = l.elements().map(|a| format!("{}->{}", l.label(a), l.label(o.perp(a)))).collect();
        writeln!(out, "ortho: {}", pairs.join(" ")).unwrap();
    }
    out
}

pub fn write_map(name: &str, f: &LatticeMap) -> String {
    let (d, c) = (f.dom(), f.cod());
    let mut out = format!("map {name} : {} -> {}\n", d.name(), c.name());
    for a in d.elements() {
        writeln!(out, "{} |-> {}", d.label(a), c.label(f.apply(a))).unwrap();
    }
    out
}

pub fn write_partial(name: &str, alpha: &PartialJoinMap) -> String {
    let (s, t) = (alpha.source(), alpha.target());
    let mut out = format!("map {name} : {} -> {}\nanchor: {}\n", s.name(), t.name(), s.label(alpha.anchor()));
    for x in s.elements() {
        if let Some(y) = alpha.apply(x) {
            writeln!(out, "{} |-> {}", s.label(x), t.label(y)).unwrap();
        }
    }
    out
}

pub fn write_space_map(name: &str, m: &PartialContinuousMap) -> String {
    let (s, t) = (m.source(), m.target());
    let mut out = format!("map {name} : {} -> {}\n", s.name(), t.name());
    let kernel: Vec<&str> = (0..s.size()).filter(|&p| m.apply(p).is_none()).map(|p| s.points()[p].as_str()).collect();
    if !kernel.is_empty() {
        writeln!(out, "kernel: {}", kernel.join(" ")).unwrap();
    }
    for p in 0..s.size() {
        if let Some(q) = m.apply(p) {
            writeln!(out, "{} |-> {}", s.points()[p], t.points()[q]).unwrap();
        }
    }
    out
}

fn set_text(l: &Lattice, p: &TruncatedPower, mask: u32) -> String {
    let parts: Vec<&str> = p.members(mask).map(|a| l.label(a)).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn write_umap(name: &str, theta: &UnionMap) -> String {
    let (p1, p2) = (theta.source(), theta.target());
    let (l1, l2) = (p1.base(), p2.base());
    let mut out = format!("umap {name} : {} -> {}\n", l1.name(), l2.name());
    for &a in p1.nonzero() {
        writeln!(out, "{} |-> {}", l1.label(a), set_text(l2, p2, theta.image_of(a))).unwrap();
    }
    out
}

pub fn write_cspace(s: &ClosureSpace) -> String {
    let mut out = format!("cspace {}\npoints: {}\n", s.name(), s.points().join(" "));
    let sets: Vec<String> = s
        .closed_sets()
        .iter()
        .map(|&m| {
            let pts: Vec<&str> = (0..s.size()).filter(|&i| m & (1 << i) != 0).map(|i| s.points()[i].as_str()).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect();
    writeln!(out, "closed: {}", sets.join(" ")).unwrap();
    out
}

pub fn write_ospace(s: &OrthoSpace) -> String {
    let mut out = format!("ospace {}\npoints: {}\n", s.name(), s.points().join(" "));
    let mut pairs = Vec::new();
    for p in 0..s.size() {
        for q in p + 1..s.size() {
            if s.orthogonal(p, q) {
                pairs.push(format!("{}~{}", s.points()[p], s.points()[q]));
            }
        }
    }
    if !pairs.is_empty() {
        writeln!(out, "orth: {}", pairs.join(" ")).unwrap();
    }
    out
}

pub fn write_causal(name: &str, r: &CausalRelation) -> String {
    let (l1, l2) = (r.source(), r.target());
    let mut out = format!("causal {name} : {} -> {}\n", l1.name(), l2.name());
    for (a, b) in r.pairs() {
        writeln!(out, "{} ~> {}", l1.label(a), l2.label(b)).unwrap();
    }
    out
}
