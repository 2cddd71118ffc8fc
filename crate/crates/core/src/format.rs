//! Plain-text formats. Tokens are separated by whitespace and line breaks
//! carry no meaning (except in path files); `#` starts a comment, braces are
//! tokens of their own, and `omega` is the only infinite literal.
//!
//! ```text
//! # graph
//! vertex a
//! edge a b 2
//! edge b c omega
//!
//! # orientation
//! arc a b 1
//!
//! # star
//! core { vertex u  edge u v 1 }
//! template t copies omega { edge w b0 1  edge w b1 1  attach b0 u  attach b1 v }
//!
//! # symbolic orientation
//! core { arc u v 1 }
//! class t all copies omega { arc b0 w 1  arc w b1 1 }
//!
//! # decomposition
//! fragment left { edge a b 1  vertex c }
//!
//! # path (optionally naming the fragment of every step, and slots)
//! path a b c
//! via left right
//! slots 0 0
//! ```
//!
//! Writers emit sorted output, one statement per line.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::decomposition::{Decomposition, PathWitness, Step};
use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::graph::ExtMultigraph;
use crate::orientation::{ArcMap, Orientation};
use crate::rayless::{OrientedClass, StarRayless, SymbolicOrientation, Template};

struct Tokens<'a> {
    toks: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut toks = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for word in line.split_whitespace() {
                let mut rest = word;
                while !rest.is_empty() {
                    match rest.find(['{', '}']) {
                        Some(0) => {
                            toks.push((i + 1, &rest[..1]));
                            rest = &rest[1..];
                        }
                        Some(k) => {
                            toks.push((i + 1, &rest[..k]));
                            rest = &rest[k..];
                        }
                        None => {
                            toks.push((i + 1, rest));
                            rest = "";
                        }
                    }
                }
            }
        }
        Tokens { toks, pos: 0 }
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map_or(1, |t| t.0)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line(), msg)
    }

    fn peek(&self) -> Option<&'a str> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        match self.toks.get(self.pos) {
            Some(&(_, t)) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(self.err(format!("expected {what}, found end of input"))),
        }
    }

    fn name(&mut self, what: &str) -> Result<&'a str> {
        let t = self.next(what)?;
        if t == "{" || t == "}" {
            self.pos -= 1;
            return Err(self.err(format!("expected {what}, found `{t}`")));
        }
        Ok(t)
    }

    fn ext(&mut self) -> Result<ExtNat> {
        let t = self.name("a multiplicity")?;
        t.parse().map_err(|e: crate::ext::ParseExtNatError| {
            self.pos -= 1;
            self.err(e.to_string())
        })
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        let t = self.next(&format!("`{tok}`"))?;
        if t != tok {
            self.pos -= 1;
            return Err(self.err(format!("expected `{tok}`, found `{t}`")));
        }
        Ok(())
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn at_close(&self) -> bool {
        self.peek() == Some("}")
    }
}

fn ctx<T>(t: &Tokens, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ Error::Parse { .. } => e,
        e => t.err(e.to_string()),
    })
}

/// Reads `vertex` and `edge` statements until end of input or `}`.
fn graph_body(t: &mut Tokens) -> Result<ExtMultigraph> {
    statements(t, None)
}

/// Like [`graph_body`], also accepting `attach` when `attach` is given.
fn statements(
    t: &mut Tokens,
    mut attach: Option<&mut BTreeMap<String, String>>,
) -> Result<ExtMultigraph> {
    let mut g = ExtMultigraph::new();
    while !t.done() && !t.at_close() {
        let line = t.line();
        match t.next("a statement")? {
            "vertex" => {
                let v = t.name("a vertex")?;
                g.add_vertex(v);
            }
            "edge" => {
                let (u, v) = (t.name("a vertex")?, t.name("a vertex")?);
                let m = t.ext()?;
                if m.is_zero() {
                    return Err(Error::parse(
                        line,
                        format!("edge {u} {v} has multiplicity 0"),
                    ));
                }
                if u == v {
                    return Err(Error::parse(line, format!("loop at `{u}`")));
                }
                g.add_vertex(u);
                g.add_vertex(v);
                if g.mult(u, v).is_positive() {
                    return Err(Error::parse(line, format!("edge {u} {v} is listed twice")));
                }
                g.set_mult(u, v, m)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
            }
            "attach" if attach.is_some() => {
                let (tv, cv) = (t.name("a vertex")?, t.name("a core vertex")?);
                let map = attach.as_deref_mut().unwrap();
                if map.insert(tv.to_string(), cv.to_string()).is_some() {
                    return Err(Error::parse(line, format!("`{tv}` attaches twice")));
                }
            }
            other => return Err(Error::parse(line, format!("unexpected `{other}`"))),
        }
    }
    Ok(g)
}

/// Reads `arc` statements until end of input or `}`.
fn arc_body(t: &mut Tokens) -> Result<ArcMap> {
    let mut arcs = ArcMap::new();
    while !t.done() && !t.at_close() {
        let line = t.line();
        match t.next("a statement")? {
            "arc" => {
                let (u, v) = (t.name("a vertex")?, t.name("a vertex")?);
                let m = t.ext()?;
                if arcs.insert((u.into(), v.into()), m).is_some() {
                    return Err(Error::parse(line, format!("arc {u} {v} is listed twice")));
                }
            }
            other => return Err(Error::parse(line, format!("unexpected `{other}`"))),
        }
    }
    Ok(arcs)
}

pub fn parse_graph(text: &str) -> Result<ExtMultigraph> {
    let mut t = Tokens::new(text);
    let g = graph_body(&mut t)?;
    if !t.done() {
        return Err(t.err("unexpected `}`"));
    }
    Ok(g)
}

pub fn write_graph(g: &ExtMultigraph) -> String {
    let mut out = String::new();
    write_graph_lines(&mut out, g, "");
    out
}

fn write_graph_lines(out: &mut String, g: &ExtMultigraph, indent: &str) {
    for v in g.vertices() {
        let _ = writeln!(out, "{indent}vertex {v}");
    }
    for (p, m) in g.edges() {
        let _ = writeln!(out, "{indent}edge {} {} {m}", p.lo(), p.hi());
    }
}

/// Arcs of an orientation file, unchecked.
pub fn parse_arcs(text: &str) -> Result<ArcMap> {
    let mut t = Tokens::new(text);
    let arcs = arc_body(&mut t)?;
    if !t.done() {
        return Err(t.err("unexpected `}`"));
    }
    Ok(arcs)
}

/// An orientation of `base`; arcs must add up to its multiplicities.
pub fn parse_orientation(text: &str, base: &ExtMultigraph) -> Result<Orientation> {
    Orientation::new(base.clone(), parse_arcs(text)?)
}

pub fn write_orientation(o: &Orientation) -> String {
    let mut out = String::new();
    write_arc_lines(&mut out, o.arcs(), "");
    out
}

fn write_arc_lines(out: &mut String, arcs: &ArcMap, indent: &str) {
    for ((u, v), m) in arcs {
        if m.is_positive() {
            let _ = writeln!(out, "{indent}arc {u} {v} {m}");
        }
    }
}

pub fn parse_star(text: &str) -> Result<StarRayless> {
    let mut t = Tokens::new(text);
    let mut core = None;
    let mut templates = Vec::new();
    while !t.done() {
        let line = t.line();
        match t.next("`core` or `template`")? {
            "core" => {
                if core.is_some() {
                    return Err(Error::parse(line, "second `core` block"));
                }
                t.expect("{")?;
                core = Some(graph_body(&mut t)?);
                t.expect("}")?;
            }
            "template" => {
                let name = t.name("a template name")?;
                t.expect("copies")?;
                let copies = t.ext()?;
                t.expect("{")?;
                let mut attach = BTreeMap::new();
                let g = statements(&mut t, Some(&mut attach))?;
                t.expect("}")?;
                let tpl = Template::new(name, g, attach, copies);
                templates.push(ctx(&t, tpl)?);
            }
            other => return Err(Error::parse(line, format!("unexpected `{other}`"))),
        }
    }
    let core = core.ok_or_else(|| t.err("missing `core` block"))?;
    let s = StarRayless::new(core, templates);
    ctx(&t, s)
}

pub fn write_star(s: &StarRayless) -> String {
    let mut out = String::from("core {\n");
    write_graph_lines(&mut out, s.core(), "  ");
    out.push_str("}\n");
    for tpl in s.templates() {
        let _ = writeln!(out, "template {} copies {} {{", tpl.name(), tpl.copies());
        write_graph_lines(&mut out, tpl.graph(), "  ");
        for (tv, cv) in tpl.attach() {
            let _ = writeln!(out, "  attach {tv} {cv}");
        }
        out.push_str("}\n");
    }
    out
}

/// A symbolic orientation of `s`; classes are grouped by template name.
pub fn parse_symbolic(text: &str, s: &StarRayless) -> Result<SymbolicOrientation> {
    let mut t = Tokens::new(text);
    let mut core = None;
    let mut classes: Vec<Vec<OrientedClass>> = vec![Vec::new(); s.templates().len()];
    while !t.done() {
        let line = t.line();
        match t.next("`core` or `class`")? {
            "core" => {
                if core.is_some() {
                    return Err(Error::parse(line, "second `core` block"));
                }
                t.expect("{")?;
                let arcs = arc_body(&mut t)?;
                t.expect("}")?;
                core = Some(ctx(&t, Orientation::new(s.core().clone(), arcs))?);
            }
            "class" => {
                let name = t.name("a template name")?;
                let ti = s
                    .template_index(name)
                    .ok_or_else(|| Error::parse(line, format!("unknown template `{name}`")))?;
                let label = t.name("a class label")?;
                t.expect("copies")?;
                let copies = t.ext()?;
                t.expect("{")?;
                let arcs = arc_body(&mut t)?;
                t.expect("}")?;
                let orientation = ctx(
                    &t,
                    Orientation::new(s.templates()[ti].graph().clone(), arcs),
                )?;
                classes[ti].push(OrientedClass {
                    label: label.to_string(),
                    orientation,
                    copies,
                });
            }
            other => return Err(Error::parse(line, format!("unexpected `{other}`"))),
        }
    }
    let core = core.ok_or_else(|| t.err("missing `core` block"))?;
    let o = SymbolicOrientation { core, classes };
    ctx(&t, o.check(s))?;
    Ok(o)
}

pub fn write_symbolic(s: &StarRayless, o: &SymbolicOrientation) -> String {
    let mut out = String::from("core {\n");
    write_arc_lines(&mut out, o.core.arcs(), "  ");
    out.push_str("}\n");
    for (tpl, classes) in s.templates().iter().zip(&o.classes) {
        for c in classes {
            let _ = writeln!(
                out,
                "class {} {} copies {} {{",
                tpl.name(),
                c.label,
                c.copies
            );
            write_arc_lines(&mut out, c.orientation.arcs(), "  ");
            out.push_str("}\n");
        }
    }
    out
}

/// A decomposition of `base`; fragments keep their file order.
pub fn parse_decomposition(text: &str, base: &ExtMultigraph) -> Result<Decomposition> {
    let mut t = Tokens::new(text);
    let mut fragments = Vec::new();
    while !t.done() {
        let line = t.line();
        match t.next("`fragment`")? {
            "fragment" => {
                let name = t.name("a fragment name")?;
                t.expect("{")?;
                let g = graph_body(&mut t)?;
                t.expect("}")?;
                fragments.push((name.to_string(), g));
            }
            other => return Err(Error::parse(line, format!("unexpected `{other}`"))),
        }
    }
    let d = Decomposition::new(base.clone(), fragments);
    ctx(&t, d)
}

pub fn write_decomposition(d: &Decomposition) -> String {
    let mut out = String::new();
    for (name, g) in d.fragments() {
        let _ = writeln!(out, "fragment {name} {{");
        write_graph_lines(&mut out, g, "  ");
        out.push_str("}\n");
    }
    out
}

/// A path through `d`. Without `via`, each step uses the first fragment
/// holding its pair; without `slots`, slot 0.
pub fn parse_path(text: &str, d: &Decomposition) -> Result<PathWitness> {
    let mut vertices: Option<Vec<String>> = None;
    let mut via: Option<Vec<String>> = None;
    let mut slots: Option<Vec<u64>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut words = raw.split('#').next().unwrap_or("").split_whitespace();
        let Some(head) = words.next() else { continue };
        let rest: Vec<String> = words.map(str::to_string).collect();
        let slot = match head {
            "path" => &mut vertices,
            "via" => &mut via,
            "slots" => {
                if slots.is_some() {
                    return Err(Error::parse(line, "second `slots` line"));
                }
                let parsed = rest
                    .iter()
                    .map(|w| {
                        w.parse::<u64>()
                            .map_err(|_| Error::parse(line, format!("bad slot `{w}`")))
                    })
                    .collect::<Result<_>>()?;
                slots = Some(parsed);
                continue;
            }
            other => return Err(Error::parse(line, format!("unexpected `{other}`"))),
        };
        if slot.is_some() {
            return Err(Error::parse(line, format!("second `{head}` line")));
        }
        *slot = Some(rest);
    }
    let vertices = vertices.ok_or_else(|| Error::parse(1, "missing `path` line"))?;
    if vertices.is_empty() {
        return Err(Error::parse(1, "empty path"));
    }
    let n = vertices.len() - 1;
    let fragments: Vec<usize> = match via {
        Some(names) => {
            if names.len() != n {
                return Err(Error::parse(
                    1,
                    format!("{n} steps but {} fragments", names.len()),
                ));
            }
            names
                .iter()
                .map(|f| {
                    d.fragments()
                        .iter()
                        .position(|(name, _)| name == f)
                        .ok_or_else(|| Error::parse(1, format!("unknown fragment `{f}`")))
                })
                .collect::<Result<_>>()?
        }
        None => (0..n)
            .map(|i| {
                let (u, v) = (&vertices[i], &vertices[i + 1]);
                d.fragments()
                    .iter()
                    .position(|(_, f)| f.mult(u, v).is_positive())
                    .ok_or_else(|| Error::NotAPath(format!("no edge {u}-{v}")))
            })
            .collect::<Result<_>>()?,
    };
    let slots = slots.unwrap_or_else(|| vec![0; n]);
    if slots.len() != n {
        return Err(Error::parse(
            1,
            format!("{n} steps but {} slots", slots.len()),
        ));
    }
    let p = PathWitness {
        vertices,
        steps: fragments
            .into_iter()
            .zip(slots)
            .map(|(fragment, slot)| Step { fragment, slot })
            .collect(),
    };
    p.validate(d)?;
    Ok(p)
}

pub fn write_path(p: &PathWitness, d: &Decomposition) -> String {
    let names: Vec<&str> = p
        .steps
        .iter()
        .map(|s| d.fragments()[s.fragment].0.as_str())
        .collect();
    let slots: Vec<String> = p.steps.iter().map(|s| s.slot.to_string()).collect();
    format!(
        "path {}\nvia {}\nslots {}\n",
        p.vertices.join(" "),
        names.join(" "),
        slots.join(" ")
    )
}
