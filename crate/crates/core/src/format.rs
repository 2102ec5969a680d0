//! Line-oriented text formats for instances and mappings.
//!
//! Instance:
//!
//! ```text
//! k 1
//! g 3 2
//! 0 1
//! 1 2
//! h 2 1
//! 0 1
//! wdefault 5
//! w 0 2 3
//! budget 5
//! ```
//!
//! `#` starts a comment. `wdefault` defaults to 0 and `budget` is optional.
//! Mapping: `map <h> <g>` lines, then `weight <value>`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::generate::Instance;
use crate::graph::{Graph, Mapping, WeightFn};

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

type Tokens<'a> = Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>;

struct Lines<'a> {
    inner: std::iter::Peekable<Tokens<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Tokens<'a> = Box::new(text.lines().enumerate().filter_map(|(i, l)| {
            let body = l.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            (!toks.is_empty()).then_some((i + 1, toks))
        }));
        Lines { inner: it.peekable(), last: 0 }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.inner.next();
        if let Some((l, _)) = &item {
            self.last = *l;
        }
        item
    }
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    if tok.starts_with('-') {
        return Err(perr(line, format!("negative {what}: {tok}")));
    }
    tok.parse().map_err(|_| perr(line, format!("invalid {what}: {tok}")))
}

fn arity(line: usize, toks: &[&str], n: usize) -> Result<()> {
    if toks.len() != n {
        return Err(perr(line, format!("`{}` takes {} values, found {}", toks[0], n - 1, toks.len() - 1)));
    }
    Ok(())
}

fn read_graph(lines: &mut Lines, line: usize, toks: &[&str]) -> Result<Graph> {
    arity(line, toks, 3)?;
    let n: usize = num(line, toks[1], "vertex count")?;
    let m: usize = num(line, toks[2], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = BTreeSet::new();
    for _ in 0..m {
        let (l, e) = lines.next().ok_or_else(|| perr(lines.last + 1, format!("expected {m} edge lines")))?;
        if e.len() != 2 {
            return Err(perr(l, "edge line needs two vertices"));
        }
        let u: usize = num(l, e[0], "vertex")?;
        let v: usize = num(l, e[1], "vertex")?;
        if u == v {
            return Err(perr(l, format!("self-loop at vertex {u}")));
        }
        if u >= n || v >= n {
            return Err(perr(l, format!("vertex {} out of range (graph has {n} vertices)", u.max(v))));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(perr(l, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    Graph::new(n, edges).map_err(|e| perr(line, e.to_string()))
}

/// Parses and validates an instance.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);
    let mut k = None;
    let mut g: Option<Graph> = None;
    let mut h: Option<Graph> = None;
    let mut default = None;
    let mut overrides: Vec<(usize, usize, usize, u64)> = Vec::new();
    let mut budget = None;
    while let Some((line, toks)) = lines.next() {
        let once = |seen: bool| if seen { Err(perr(line, format!("`{}` given twice", toks[0]))) } else { Ok(()) };
        match toks[0] {
            "k" => {
                once(k.is_some())?;
                arity(line, &toks, 2)?;
                let v: usize = num(line, toks[1], "k")?;
                if v != 1 && v != 2 {
                    return Err(perr(line, format!("k must be 1 or 2, got {v}")));
                }
                k = Some(v);
            }
            "g" => {
                once(g.is_some())?;
                g = Some(read_graph(&mut lines, line, &toks)?);
            }
            "h" => {
                once(h.is_some())?;
                h = Some(read_graph(&mut lines, line, &toks)?);
            }
            "wdefault" => {
                once(default.is_some())?;
                arity(line, &toks, 2)?;
                default = Some(num(line, toks[1], "weight")?);
            }
            "w" => {
                arity(line, &toks, 4)?;
                let u: usize = num(line, toks[1], "vertex")?;
                let v: usize = num(line, toks[2], "vertex")?;
                let x: u64 = num(line, toks[3], "weight")?;
                if u >= v {
                    return Err(perr(line, format!("weight pair must satisfy u < v, got {u} {v}")));
                }
                overrides.push((line, u, v, x));
            }
            "budget" => {
                once(budget.is_some())?;
                arity(line, &toks, 2)?;
                budget = Some(num(line, toks[1], "budget")?);
            }
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }
    let end = lines.last + 1;
    let k = k.ok_or_else(|| perr(end, "missing `k`"))?;
    let g = g.ok_or_else(|| perr(end, "missing `g`"))?;
    let h = h.ok_or_else(|| perr(end, "missing `h`"))?;
    let mut w = WeightFn::uniform(default.unwrap_or(0));
    let mut seen = BTreeSet::new();
    for (line, u, v, x) in overrides {
        if v >= g.n() {
            return Err(perr(line, format!("vertex {v} out of range (graph has {} vertices)", g.n())));
        }
        if !seen.insert((u, v)) {
            return Err(perr(line, format!("duplicate weight for {u} {v}")));
        }
        w.set(u, v, x);
    }
    Ok(Instance { k, g, h, w, budget })
}

fn push_graph(out: &mut String, tag: &str, g: &Graph) {
    out.push_str(&format!("{tag} {} {}\n", g.n(), g.m()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
}

/// Canonical text form: sorted edges, `wdefault` always present, overrides
/// that differ from the default in sorted order.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = format!("k {}\n", inst.k);
    push_graph(&mut out, "g", &inst.g);
    push_graph(&mut out, "h", &inst.h);
    out.push_str(&format!("wdefault {}\n", inst.w.default_weight()));
    for ((u, v), x) in inst.w.overrides() {
        if x != inst.w.default_weight() {
            out.push_str(&format!("w {u} {v} {x}\n"));
        }
    }
    if let Some(b) = inst.budget {
        out.push_str(&format!("budget {b}\n"));
    }
    out
}

/// Parsed mapping file: the pairs as written and the declared weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingFile {
    pub pairs: Vec<(usize, usize)>,
    pub weight: Option<u64>,
}

impl MappingFile {
    /// Builds the mapping for an `H` with `h_n` vertices, rejecting repeated
    /// or out-of-range `H`-vertices and repeated images.
    pub fn to_mapping(&self, h_n: usize, g_n: usize) -> Result<Mapping> {
        let mut m = Mapping::new(h_n);
        for &(x, v) in &self.pairs {
            if x >= h_n {
                return Err(Error::VertexOutOfRange { vertex: x, n: h_n });
            }
            if m.get(x).is_some() {
                return Err(Error::InvalidParameter(format!("vertex {x} of H is mapped twice")));
            }
            m.set(x, v);
        }
        m.validate(g_n)?;
        Ok(m)
    }
}

pub fn parse_mapping(text: &str) -> Result<MappingFile> {
    let mut lines = Lines::new(text);
    let mut pairs = Vec::new();
    let mut weight = None;
    while let Some((line, toks)) = lines.next() {
        match toks[0] {
            "map" => {
                arity(line, &toks, 3)?;
                pairs.push((num(line, toks[1], "vertex")?, num(line, toks[2], "vertex")?));
            }
            "weight" => {
                arity(line, &toks, 2)?;
                if weight.is_some() {
                    return Err(perr(line, "`weight` given twice"));
                }
                weight = Some(num(line, toks[1], "weight")?);
            }
            other => return Err(perr(line, format!("unknown directive `{other}`"))),
        }
    }
    Ok(MappingFile { pairs, weight })
}

pub fn serialize_mapping(phi: &Mapping, weight: u64) -> String {
    let mut out = String::new();
    for (x, v) in phi.pairs() {
        out.push_str(&format!("map {x} {v}\n"));
    }
    out.push_str(&format!("weight {weight}\n"));
    out
}
