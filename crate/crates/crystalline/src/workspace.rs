//! The workspace document format: a line-oriented text grammar declaring
//! groups, actions, groupoids, and cocycles by name, followed by tasks.
//! Parsing produces positioned diagnostics; running a document executes
//! the tasks in order and never lets one failing task abort the rest.
//!
//! Grammar (one declaration per section, `#` comments):
//!
//! ```text
//! version = 1
//!
//! [group G]
//! builtin = Sym(3)          # or: generators: (0 1 2), (0 1)
//!
//! [action A]
//! group = G
//! points = 3
//! images: (0 1 2), (0 1)    # one image per generator, in order;
//!                           # or: trivial = true
//!
//! [groupoid Y]
//! delooping = G             # or: discrete = 3 | quotient = A
//!                           # or: product = Y1, Y2 | union = Y1, Y2
//!
//! [cocycle w]
//! group = G
//! modulus = 6               # defaults to |G|
//! degree = 2                # defaults to 2
//! values: 0, 1, 0, ...      # (|G|-1)^degree values, first slot most
//!                           # significant; or: trivial = true
//!                           # or: schur = nontrivial (first nontrivial class)
//!
//! [task]
//! schur G
//! cep-verify A
//! cohomology G degree=2 modulus=4
//! ```

use std::collections::HashMap;
use std::sync::Arc;

use crate::action::{
    fiber_check, homotopy_quotient, set_fixed_points, GroupAction,
};
use crate::anomaly::{
    alpha_regular_classes, anomalous_theories_as_sections, classify_anomalies,
    nontrivial_group_cocycle, projective_irreps, twisted_algebra, Anomaly,
};
use crate::cohomology::{
    cohomology_group, extension_from_cocycle, is_cocycle, schur_multiplier, Cochain, CoeffModule,
};
use crate::error::{Error, Result};
use crate::fibration::{
    constant_family_sections_are_functors, roundtrip_fibration, straighten,
};
use crate::group::{FiniteGroup, Perm};
use crate::groupoid::FiniteGroupoid;
use crate::rep::{cep_verify, eg_families_verify, enumerate_functors, irreducible_degrees, irreducible_reps_count};
use crate::report::{Report, Status};
use crate::Bounds;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDecl {
    Builtin(String),
    Generators(Vec<Perm>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionDecl {
    pub group: String,
    pub points: usize,
    /// None means the trivial action.
    pub images: Option<Vec<Perm>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupoidDecl {
    Discrete(usize),
    Delooping(String),
    Quotient(String),
    Product(String, String),
    Union(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleBody {
    Trivial,
    SchurNontrivial,
    Values(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleDecl {
    pub group: String,
    pub degree: usize,
    /// None defaults to the group order at resolution time.
    pub modulus: Option<u64>,
    pub body: CocycleBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskDecl {
    pub command: String,
    pub args: Vec<String>,
}

impl TaskDecl {
    pub fn echo(&self) -> String {
        let mut s = self.command.clone();
        for a in &self.args {
            s.push(' ');
            s.push_str(a);
        }
        s
    }
}

/// A parsed workspace document (unresolved named declarations plus tasks).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WorkspaceDoc {
    pub groups: Vec<(String, GroupDecl)>,
    pub actions: Vec<(String, ActionDecl)>,
    pub groupoids: Vec<(String, GroupoidDecl)>,
    pub cocycles: Vec<(String, CocycleDecl)>,
    pub tasks: Vec<TaskDecl>,
}

fn parse_err(line: usize, column: usize, message: impl ToString) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

/// Parses cycle notation such as `(0 1 2)(3 4)` into a permutation of the
/// given degree; `()` is the identity.
fn parse_cycles(token: &str, degree: usize, line: usize, column: usize) -> Result<Perm> {
    let mut perm: Perm = (0..degree).collect();
    let mut chars = token.chars().peekable();
    let mut saw_any = false;
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c != '(' {
            return Err(parse_err(line, column, format!("expected '(' in permutation, found '{c}'")));
        }
        chars.next();
        let mut body = String::new();
        loop {
            match chars.next() {
                Some(')') => break,
                Some(d) => body.push(d),
                None => return Err(parse_err(line, column, "unclosed cycle")),
            }
        }
        saw_any = true;
        let points: Vec<usize> = body
            .split_whitespace()
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| parse_err(line, column, format!("bad point '{w}'")))
            })
            .collect::<Result<_>>()?;
        for &p in &points {
            if p >= degree {
                return Err(parse_err(line, column, format!("point {p} out of range (degree {degree})")));
            }
        }
        for w in points.windows(2) {
            if perm[w[0]] != w[0] {
                return Err(parse_err(line, column, format!("point {} repeated in cycles", w[0])));
            }
        }
        if points.len() > 1 {
            for i in 0..points.len() {
                let from = points[i];
                let to = points[(i + 1) % points.len()];
                if perm[from] != from {
                    return Err(parse_err(line, column, format!("point {from} repeated in cycles")));
                }
                perm[from] = to;
            }
        }
    }
    if !saw_any {
        return Err(parse_err(line, column, "empty permutation token"));
    }
    Ok(perm)
}

/// Renders a permutation in the cycle notation accepted by the parser.
pub fn print_cycles(perm: &Perm) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut p = start;
        let mut first = true;
        while !seen[p] {
            seen[p] = true;
            if !first {
                out.push(' ');
            }
            first = false;
            out.push_str(&p.to_string());
            p = perm[p];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Highest point mentioned in a cycle-notation token, if any.
fn max_point(token: &str) -> Option<usize> {
    token
        .split(|c: char| !c.is_ascii_digit())
        .filter(|w| !w.is_empty())
        .filter_map(|w| w.parse::<usize>().ok())
        .max()
}

fn split_top_level_commas(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts.into_iter().filter(|p| !p.is_empty()).collect()
}

struct Section {
    kind: String,
    name: String,
    line: usize,
    /// (line number, key, value, is_list) entries.
    entries: Vec<(usize, String, String, bool)>,
    /// raw task lines for [task] sections
    raw: Vec<(usize, String)>,
}

pub fn parse(text: &str) -> Result<WorkspaceDoc> {
    let mut sections: Vec<Section> = Vec::new();
    let mut version_seen = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column = line.len() - line.trim_start().len() + 1;
        if !version_seen {
            let ok = trimmed
                .strip_prefix("version")
                .map(|r| r.trim_start().strip_prefix('=').map(|v| v.trim() == "1"))
                == Some(Some(true));
            if !ok {
                return Err(parse_err(lineno, column, "expected 'version = 1' header"));
            }
            version_seen = true;
            continue;
        }
        if let Some(head) = trimmed.strip_prefix('[') {
            let head = head
                .strip_suffix(']')
                .ok_or_else(|| parse_err(lineno, column, "unclosed section header"))?;
            let mut words = head.split_whitespace();
            let kind = words.next().unwrap_or("").to_string();
            let name = words.next().unwrap_or("").to_string();
            if words.next().is_some() {
                return Err(parse_err(lineno, column, "too many words in section header"));
            }
            match kind.as_str() {
                "group" | "action" | "groupoid" | "cocycle" => {
                    if name.is_empty() {
                        return Err(parse_err(lineno, column, format!("[{kind}] needs a name")));
                    }
                }
                "task" => {
                    if !name.is_empty() {
                        return Err(parse_err(lineno, column, "[task] takes no name"));
                    }
                }
                other => {
                    return Err(parse_err(lineno, column, format!("unknown section kind '{other}'")));
                }
            }
            sections.push(Section {
                kind,
                name,
                line: lineno,
                entries: Vec::new(),
                raw: Vec::new(),
            });
            continue;
        }
        let Some(section) = sections.last_mut() else {
            return Err(parse_err(lineno, column, "content before any section"));
        };
        if section.kind == "task" {
            section.raw.push((lineno, trimmed.to_string()));
            continue;
        }
        if let Some(eq) = trimmed.find('=').filter(|&e| {
            trimmed[..e].find(':').map(|c| e < c).unwrap_or(true)
        }) {
            let key = trimmed[..eq].trim().to_string();
            let value = trimmed[eq + 1..].trim().to_string();
            section.entries.push((lineno, key, value, false));
        } else if let Some(colon) = trimmed.find(':') {
            let key = trimmed[..colon].trim().to_string();
            let value = trimmed[colon + 1..].trim().to_string();
            section.entries.push((lineno, key, value, true));
        } else {
            return Err(parse_err(lineno, column, "expected 'key = value' or 'key: list'"));
        }
    }
    if !version_seen {
        return Err(parse_err(1, 1, "expected 'version = 1' header"));
    }

    let mut doc = WorkspaceDoc::default();
    let mut names: HashMap<String, &str> = HashMap::new();
    for s in &sections {
        if s.kind != "task" {
            if names.insert(s.name.clone(), "decl").is_some() {
                return Err(parse_err(s.line, 1, format!("duplicate name '{}'", s.name)));
            }
        }
        let get = |key: &str| -> Option<&(usize, String, String, bool)> {
            s.entries.iter().find(|(_, k, _, _)| k == key)
        };
        for (lineno, key, _, _) in &s.entries {
            let allowed: &[&str] = match s.kind.as_str() {
                "group" => &["builtin", "generators"],
                "action" => &["group", "points", "images", "trivial"],
                "groupoid" => &["discrete", "delooping", "quotient", "product", "union"],
                "cocycle" => &["group", "degree", "modulus", "values", "trivial", "schur"],
                _ => &[],
            };
            if !allowed.contains(&key.as_str()) {
                return Err(parse_err(*lineno, 1, format!("unknown key '{key}' in [{}]", s.kind)));
            }
        }
        match s.kind.as_str() {
            "group" => {
                let decl = if let Some((_, _, v, _)) = get("builtin") {
                    GroupDecl::Builtin(v.clone())
                } else if let Some((l, _, v, _)) = get("generators") {
                    let tokens = split_top_level_commas(v);
                    let degree = tokens
                        .iter()
                        .filter_map(|t| max_point(t))
                        .max()
                        .map(|m| m + 1)
                        .unwrap_or(1);
                    let perms = tokens
                        .iter()
                        .map(|t| parse_cycles(t, degree, *l, 1))
                        .collect::<Result<Vec<_>>>()?;
                    GroupDecl::Generators(perms)
                } else {
                    return Err(parse_err(s.line, 1, "group needs 'builtin' or 'generators'"));
                };
                doc.groups.push((s.name.clone(), decl));
            }
            "action" => {
                let group = get("group")
                    .map(|(_, _, v, _)| v.clone())
                    .ok_or_else(|| parse_err(s.line, 1, "action needs 'group'"))?;
                let (pl, _, pv, _) = get("points")
                    .ok_or_else(|| parse_err(s.line, 1, "action needs 'points'"))?;
                let points: usize = pv
                    .parse()
                    .map_err(|_| parse_err(*pl, 1, "points must be an integer"))?;
                let images = if let Some((l, _, v, _)) = get("images") {
                    Some(
                        split_top_level_commas(v)
                            .iter()
                            .map(|t| parse_cycles(t, points, *l, 1))
                            .collect::<Result<Vec<_>>>()?,
                    )
                } else if get("trivial").is_some() {
                    None
                } else {
                    return Err(parse_err(s.line, 1, "action needs 'images' or 'trivial'"));
                };
                doc.actions.push((
                    s.name.clone(),
                    ActionDecl {
                        group,
                        points,
                        images,
                    },
                ));
            }
            "groupoid" => {
                let two_names = |v: &str, l: usize| -> Result<(String, String)> {
                    let parts = split_top_level_commas(v);
                    if parts.len() != 2 {
                        return Err(parse_err(l, 1, "expected exactly two names"));
                    }
                    Ok((parts[0].to_string(), parts[1].to_string()))
                };
                let decl = if let Some((l, _, v, _)) = get("discrete") {
                    GroupoidDecl::Discrete(
                        v.parse()
                            .map_err(|_| parse_err(*l, 1, "discrete must be an integer"))?,
                    )
                } else if let Some((_, _, v, _)) = get("delooping") {
                    GroupoidDecl::Delooping(v.clone())
                } else if let Some((_, _, v, _)) = get("quotient") {
                    GroupoidDecl::Quotient(v.clone())
                } else if let Some((l, _, v, _)) = get("product") {
                    let (a, b) = two_names(v, *l)?;
                    GroupoidDecl::Product(a, b)
                } else if let Some((l, _, v, _)) = get("union") {
                    let (a, b) = two_names(v, *l)?;
                    GroupoidDecl::Union(a, b)
                } else {
                    return Err(parse_err(
                        s.line,
                        1,
                        "groupoid needs one of discrete/delooping/quotient/product/union",
                    ));
                };
                doc.groupoids.push((s.name.clone(), decl));
            }
            "cocycle" => {
                let group = get("group")
                    .map(|(_, _, v, _)| v.clone())
                    .ok_or_else(|| parse_err(s.line, 1, "cocycle needs 'group'"))?;
                let degree = match get("degree") {
                    Some((l, _, v, _)) => v
                        .parse()
                        .map_err(|_| parse_err(*l, 1, "degree must be an integer"))?,
                    None => 2,
                };
                let modulus = match get("modulus") {
                    Some((l, _, v, _)) => Some(
                        v.parse()
                            .map_err(|_| parse_err(*l, 1, "modulus must be an integer"))?,
                    ),
                    None => None,
                };
                let body = if let Some((l, _, v, _)) = get("values") {
                    let values = split_top_level_commas(v)
                        .iter()
                        .map(|t| {
                            t.parse::<i64>()
                                .map_err(|_| parse_err(*l, 1, format!("bad value '{t}'")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    CocycleBody::Values(values)
                } else if get("trivial").is_some() {
                    CocycleBody::Trivial
                } else if let Some((l, _, v, _)) = get("schur") {
                    if v != "nontrivial" {
                        return Err(parse_err(*l, 1, "schur only supports 'nontrivial'"));
                    }
                    CocycleBody::SchurNontrivial
                } else {
                    return Err(parse_err(s.line, 1, "cocycle needs values/trivial/schur"));
                };
                doc.cocycles.push((
                    s.name.clone(),
                    CocycleDecl {
                        group,
                        degree,
                        modulus,
                        body,
                    },
                ));
            }
            "task" => {
                for (lineno, raw) in &s.raw {
                    let mut words = raw.split_whitespace();
                    let command = words
                        .next()
                        .ok_or_else(|| parse_err(*lineno, 1, "empty task line"))?
                        .to_string();
                    doc.tasks.push(TaskDecl {
                        command,
                        args: words.map(|w| w.to_string()).collect(),
                    });
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(doc)
}

/// Formats a document in the grammar accepted by `parse`; reparsing the
/// result yields an equal structure.
pub fn format_doc(doc: &WorkspaceDoc) -> String {
    let mut out = String::from("version = 1\n");
    for (name, decl) in &doc.groups {
        out.push_str(&format!("\n[group {name}]\n"));
        match decl {
            GroupDecl::Builtin(b) => out.push_str(&format!("builtin = {b}\n")),
            GroupDecl::Generators(perms) => {
                let list: Vec<String> = perms.iter().map(print_cycles).collect();
                out.push_str(&format!("generators: {}\n", list.join(", ")));
            }
        }
    }
    for (name, decl) in &doc.actions {
        out.push_str(&format!("\n[action {name}]\n"));
        out.push_str(&format!("group = {}\n", decl.group));
        out.push_str(&format!("points = {}\n", decl.points));
        match &decl.images {
            Some(perms) => {
                let list: Vec<String> = perms.iter().map(print_cycles).collect();
                out.push_str(&format!("images: {}\n", list.join(", ")));
            }
            None => out.push_str("trivial = true\n"),
        }
    }
    for (name, decl) in &doc.groupoids {
        out.push_str(&format!("\n[groupoid {name}]\n"));
        match decl {
            GroupoidDecl::Discrete(n) => out.push_str(&format!("discrete = {n}\n")),
            GroupoidDecl::Delooping(g) => out.push_str(&format!("delooping = {g}\n")),
            GroupoidDecl::Quotient(a) => out.push_str(&format!("quotient = {a}\n")),
            GroupoidDecl::Product(a, b) => out.push_str(&format!("product = {a}, {b}\n")),
            GroupoidDecl::Union(a, b) => out.push_str(&format!("union = {a}, {b}\n")),
        }
    }
    for (name, decl) in &doc.cocycles {
        out.push_str(&format!("\n[cocycle {name}]\n"));
        out.push_str(&format!("group = {}\n", decl.group));
        out.push_str(&format!("degree = {}\n", decl.degree));
        if let Some(m) = decl.modulus {
            out.push_str(&format!("modulus = {m}\n"));
        }
        match &decl.body {
            CocycleBody::Trivial => out.push_str("trivial = true\n"),
            CocycleBody::SchurNontrivial => out.push_str("schur = nontrivial\n"),
            CocycleBody::Values(vs) => {
                let list: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("values: {}\n", list.join(", ")));
            }
        }
    }
    if !doc.tasks.is_empty() {
        out.push_str("\n[task]\n");
        for t in &doc.tasks {
            out.push_str(&t.echo());
            out.push('\n');
        }
    }
    out
}

/// Resolved named objects, built in declaration order; forward references
/// are rejected, which keeps the declaration graph acyclic.
pub struct Workspace {
    pub groups: HashMap<String, Arc<FiniteGroup>>,
    pub actions: HashMap<String, GroupAction>,
    pub groupoids: HashMap<String, Arc<FiniteGroupoid>>,
    pub cocycles: HashMap<String, Cochain>,
    pub tasks: Vec<TaskDecl>,
}

pub fn resolve(doc: &WorkspaceDoc, bounds: &Bounds) -> Result<Workspace> {
    let mut groups = HashMap::new();
    // for groups declared by generators: element indices of the declared
    // permutations, in declaration order (action images pair with these)
    let mut declared_gens: HashMap<String, Vec<usize>> = HashMap::new();
    for (name, decl) in &doc.groups {
        let g = match decl {
            GroupDecl::Builtin(b) => FiniteGroup::builtin(b)?,
            GroupDecl::Generators(perms) => {
                let degree = perms.iter().map(|p| p.len()).max().unwrap_or(1);
                let g = FiniteGroup::from_permutations(degree, perms, bounds.max_order)?;
                let indices = perms
                    .iter()
                    .map(|p| {
                        (0..g.order())
                            .find(|&a| g.perm_of(a) == Some(p))
                            .ok_or_else(|| Error::Invalid("generator lookup failed".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                declared_gens.insert(name.clone(), indices);
                g
            }
        };
        groups.insert(name.clone(), g);
    }
    let lookup_group = |groups: &HashMap<String, Arc<FiniteGroup>>, n: &str| {
        groups
            .get(n)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("unknown group '{n}'")))
    };
    let mut actions = HashMap::new();
    for (name, decl) in &doc.actions {
        let g = lookup_group(&groups, &decl.group)?;
        let a = match &decl.images {
            None => GroupAction::trivial(g, decl.points),
            Some(images) => {
                let gens = declared_gens
                    .get(&decl.group)
                    .cloned()
                    .unwrap_or_else(|| g.small_generating_set());
                if gens.len() != images.len() {
                    return Err(Error::BadAction(format!(
                        "action '{name}': {} images for {} generators",
                        images.len(),
                        gens.len()
                    )));
                }
                let pairs: Vec<(usize, Perm)> =
                    gens.into_iter().zip(images.iter().cloned()).collect();
                GroupAction::from_generator_images(g, decl.points, &pairs)?
            }
        };
        actions.insert(name.clone(), a);
    }
    let mut groupoids: HashMap<String, Arc<FiniteGroupoid>> = HashMap::new();
    for (name, decl) in &doc.groupoids {
        let lookup_y = |m: &HashMap<String, Arc<FiniteGroupoid>>, n: &str| {
            m.get(n)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("unknown groupoid '{n}' (declare before use)")))
        };
        let y = match decl {
            GroupoidDecl::Discrete(n) => FiniteGroupoid::discrete(*n),
            GroupoidDecl::Delooping(g) => {
                FiniteGroupoid::delooping(&*lookup_group(&groups, g)?)
            }
            GroupoidDecl::Quotient(a) => {
                let action = actions
                    .get(a)
                    .ok_or_else(|| Error::Invalid(format!("unknown action '{a}'")))?;
                homotopy_quotient(action)?.groupoid
            }
            GroupoidDecl::Product(a, b) => {
                FiniteGroupoid::product(&lookup_y(&groupoids, a)?, &lookup_y(&groupoids, b)?)?.0
            }
            GroupoidDecl::Union(a, b) => {
                FiniteGroupoid::disjoint_union(&lookup_y(&groupoids, a)?, &lookup_y(&groupoids, b)?)?.0
            }
        };
        groupoids.insert(name.clone(), y);
    }
    let mut cocycles = HashMap::new();
    for (name, decl) in &doc.cocycles {
        let g = lookup_group(&groups, &decl.group)?;
        let n = g.order() as u64;
        let modulus = decl.modulus.unwrap_or(n);
        let c = match &decl.body {
            CocycleBody::Trivial => {
                Cochain::zero(g.clone(), CoeffModule::zn(modulus), decl.degree)
            }
            CocycleBody::SchurNontrivial => {
                if decl.degree != 2 || modulus != n {
                    return Err(Error::Invalid(format!(
                        "cocycle '{name}': schur classes need degree 2 and modulus {n}"
                    )));
                }
                nontrivial_group_cocycle(&g, bounds.max_order)?.ok_or_else(|| {
                    Error::Invalid(format!(
                        "cocycle '{name}': the Schur multiplier of '{}' is trivial",
                        decl.group
                    ))
                })?
            }
            CocycleBody::Values(vs) => {
                let values = vs.iter().map(|&v| vec![v]).collect();
                Cochain::new(g.clone(), CoeffModule::zn(modulus), decl.degree, values)?
            }
        };
        if decl.degree == 2 && !is_cocycle(&c) {
            return Err(Error::NotCocycle(format!(
                "cocycle '{name}' fails the 2-cocycle identity"
            )));
        }
        cocycles.insert(name.clone(), c);
    }
    Ok(Workspace {
        groups,
        actions,
        groupoids,
        cocycles,
        tasks: doc.tasks.clone(),
    })
}

fn fmt_list<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

struct TaskArgs<'a> {
    positional: Vec<&'a str>,
    options: HashMap<&'a str, &'a str>,
}

fn split_args(args: &[String]) -> TaskArgs<'_> {
    let mut positional = Vec::new();
    let mut options = HashMap::new();
    for a in args {
        match a.split_once('=') {
            Some((k, v)) => {
                options.insert(k, v);
            }
            None => positional.push(a.as_str()),
        }
    }
    TaskArgs {
        positional,
        options,
    }
}

impl Workspace {
    fn group(&self, n: &str) -> Result<Arc<FiniteGroup>> {
        self.groups
            .get(n)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("unknown group '{n}'")))
    }
    fn action(&self, n: &str) -> Result<&GroupAction> {
        self.actions
            .get(n)
            .ok_or_else(|| Error::Invalid(format!("unknown action '{n}'")))
    }
    fn groupoid(&self, n: &str) -> Result<Arc<FiniteGroupoid>> {
        self.groupoids
            .get(n)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("unknown groupoid '{n}'")))
    }
    fn cocycle(&self, n: &str) -> Result<&Cochain> {
        self.cocycles
            .get(n)
            .ok_or_else(|| Error::Invalid(format!("unknown cocycle '{n}'")))
    }
}

fn need<'a>(p: &[&'a str], i: usize, what: &str) -> Result<&'a str> {
    p.get(i)
        .copied()
        .ok_or_else(|| Error::Invalid(format!("missing argument: {what}")))
}

fn run_task(ws: &Workspace, task: &TaskDecl, bounds: &Bounds, seed: u64) -> Result<Report> {
    let mut r = Report::new(&task.echo());
    let args = split_args(&task.args);
    let p = &args.positional;
    match task.command.as_str() {
        "quotient" => {
            let a = ws.action(need(p, 0, "action")?)?;
            let q = homotopy_quotient(a)?;
            r.push("objects", q.groupoid.n_objects());
            r.push("morphisms", q.groupoid.n_morphisms());
            r.push("components", q.groupoid.connected_components().len());
            r.push("orbits", a.orbits().len());
            let orders: Vec<usize> = q
                .groupoid
                .connected_components()
                .iter()
                .map(|c| q.groupoid.automorphism_group(c[0]).map(|(g, _)| g.order()))
                .collect::<Result<_>>()?;
            r.push("automorphism-orders", fmt_list(&orders));
            r.push_verdict("fiber-check", fiber_check(&q));
        }
        "fiber-check" => {
            let a = ws.action(need(p, 0, "action")?)?;
            let q = homotopy_quotient(a)?;
            r.push_verdict("fiber-check", fiber_check(&q));
        }
        "fixed-points" => {
            let a = ws.action(need(p, 0, "action")?)?;
            let (fp, literal) = set_fixed_points(a, bounds.max_enum)?;
            r.push("equivariant-classes", fp.classes.len());
            r.push("literal-fixed-points", fmt_list(&literal));
            r.push_verdict("counts-match", fp.classes.len() == literal.len());
        }
        "straighten" => {
            let a = ws.action(need(p, 0, "action")?)?;
            let q = homotopy_quotient(a)?;
            let fam = straighten(&q.projection)?;
            let sizes: Vec<usize> = fam.fibers.iter().map(|f| f.n_objects()).collect();
            r.push("base-objects", fam.base.n_objects());
            r.push("fiber-sizes", fmt_list(&sizes));
        }
        "unstraighten" => {
            let a = ws.action(need(p, 0, "action")?)?;
            let q = homotopy_quotient(a)?;
            r.push_verdict("roundtrip", roundtrip_fibration(&q.projection)?);
        }
        "sections" => {
            let base = ws.groupoid(need(p, 0, "base groupoid")?)?;
            let fiber = ws.groupoid(need(p, 1, "fiber groupoid")?)?;
            let (n_sections, n_functors) =
                constant_family_sections_are_functors(&base, &fiber, bounds.max_enum)?;
            r.push("sections", n_sections);
            r.push("functors", n_functors);
            r.push_verdict("bijective", n_sections == n_functors);
        }
        "functors" => {
            let c = ws.groupoid(need(p, 0, "source groupoid")?)?;
            let d = ws.groupoid(need(p, 1, "target groupoid")?)?;
            let cat = enumerate_functors(&c, &d, bounds.max_enum)?;
            r.push("functors", cat.functors.len());
            r.push("iso-classes", cat.iso_classes.len());
        }
        "irreps" => {
            let y = ws.groupoid(need(p, 0, "groupoid")?)?;
            r.push("irreducibles", irreducible_reps_count(&y)?);
        }
        "degrees" => {
            let g = ws.group(need(p, 0, "group")?)?;
            r.push("degrees", fmt_list(&irreducible_degrees(&g, seed)?));
        }
        "cep-verify" => {
            let a = ws.action(need(p, 0, "action")?)?;
            let target = match p.get(1) {
                Some(t) => Some(ws.groupoid(t)?),
                None => None,
            };
            let rep = cep_verify(a, target.as_ref(), bounds.max_enum)?;
            r.push("equivariant-count", rep.equivariant_count);
            r.push("quotient-count", rep.quotient_count);
            if let Some((over, plain)) = rep.finite_target {
                r.push("target-classes-over-base", over);
                r.push("target-classes-plain", plain);
            }
            r.push_verdict("verdict", rep.verdict);
        }
        "eg-families" => {
            let g = ws.group(need(p, 0, "group")?)?;
            let t = ws.groupoid(need(p, 1, "target groupoid")?)?;
            let rep = eg_families_verify(&g, &t, bounds.max_enum)?;
            r.push("equivariant-classes", rep.equivariant_classes);
            r.push("internal-symmetry-classes", rep.internal_symmetry_classes);
            r.push_verdict("verdict", rep.verdict);
        }
        "cohomology" => {
            let g = ws.group(need(p, 0, "group")?)?;
            let degree: usize = args
                .options
                .get("degree")
                .unwrap_or(&"2")
                .parse()
                .map_err(|_| Error::Invalid("bad degree".into()))?;
            let modulus: u64 = args
                .options
                .get("modulus")
                .unwrap_or(&"0")
                .parse()
                .map_err(|_| Error::Invalid("bad modulus".into()))?;
            let module = if modulus == 0 {
                CoeffModule::integers()
            } else {
                CoeffModule::zn(modulus)
            };
            let h = cohomology_group(&g, &module, degree, bounds.max_order)?;
            r.push("degree", degree);
            r.push(
                "coefficients",
                if modulus == 0 {
                    "Z".to_string()
                } else {
                    format!("Z/{modulus}")
                },
            );
            r.push("invariant-factors", fmt_list(&h.factors));
        }
        "schur" => {
            let g = ws.group(need(p, 0, "group")?)?;
            let s = schur_multiplier(&g, bounds.max_order)?;
            r.push("invariant-factors", fmt_list(&s.factors));
        }
        "extension" => {
            let c = ws.cocycle(need(p, 0, "cocycle")?)?;
            let ext = extension_from_cocycle(&c.group, &c.module, c)?;
            r.push("order", ext.group.order());
            r.push("abelian", ext.group.is_abelian());
            let exponent = (0..ext.group.order())
                .map(|a| ext.group.element_order(a))
                .max()
                .unwrap_or(1);
            r.push("exponent", exponent);
        }
        "classify-anomalies" => {
            let y = ws.groupoid(need(p, 0, "groupoid")?)?;
            let classes = classify_anomalies(&y, bounds.max_order)?;
            r.push("classes", classes.len());
            r.push(
                "nontrivial-classes",
                classes.iter().filter(|a| !a.is_trivial_cocycle()).count(),
            );
        }
        "alpha-regular" => {
            let g = ws.group(need(p, 0, "group")?)?;
            let c = ws.cocycle(need(p, 1, "cocycle")?)?;
            let reg = alpha_regular_classes(&g, c)?;
            r.push("regular-classes", reg.len());
            r.push("all-classes", g.conjugacy_classes().len());
        }
        "proj-irreps" => {
            let g = ws.group(need(p, 0, "group")?)?;
            let c = ws.cocycle(need(p, 1, "cocycle")?)?;
            let irreps = projective_irreps(&g, c, seed)?;
            let degrees: Vec<usize> = irreps.iter().map(|(d, _)| *d).collect();
            r.push("count", irreps.len());
            r.push("degrees", fmt_list(&degrees));
            r.push_verdict(
                "count-matches-regular-classes",
                irreps.len() == alpha_regular_classes(&g, c)?.len(),
            );
        }
        "twisted-algebra" => {
            let y = ws.groupoid(need(p, 0, "groupoid")?)?;
            let anomaly = match p.get(1) {
                Some(c) => Anomaly::from_cocycles(&y, vec![ws.cocycle(c)?.clone()])?,
                None => Anomaly::trivial(&y)?,
            };
            let alg = twisted_algebra(&anomaly, seed)?;
            r.push("dimension", alg.dim);
            r.push("blocks", alg.blocks);
            r.push("block-sizes", fmt_list(&alg.block_sizes));
            r.push_verdict("trace-form-nondegenerate", alg.trace_form_nondegenerate);
        }
        "sections-vs-projreps" => {
            let y = ws.groupoid(need(p, 0, "groupoid")?)?;
            let anomaly = match p.get(1) {
                Some(c) => Anomaly::from_cocycles(&y, vec![ws.cocycle(c)?.clone()])?,
                None => Anomaly::trivial(&y)?,
            };
            let dim: usize = args
                .options
                .get("dim")
                .unwrap_or(&"1")
                .parse()
                .map_err(|_| Error::Invalid("bad dim".into()))?;
            let dims = vec![dim; y.n_objects()];
            let rep = anomalous_theories_as_sections(&anomaly, &dims, seed)?;
            r.push("rep-classes", rep.total_rep_classes);
            r.push("section-classes", rep.total_section_classes);
            r.push_verdict("verdict", rep.verdict);
        }
        other => {
            return Err(Error::Invalid(format!("unknown task '{other}'")));
        }
    }
    Ok(r)
}

/// Executes the document's tasks in declaration order. Task failures are
/// captured in their reports; resolution failures are returned as errors.
pub fn run(doc: &WorkspaceDoc, bounds: &Bounds, seed: u64) -> Result<Vec<Report>> {
    let ws = resolve(doc, bounds)?;
    Ok(ws
        .tasks
        .iter()
        .map(|t| {
            run_task(&ws, t, bounds, seed).unwrap_or_else(|e| {
                let mut r = Report::new(&t.echo());
                r.status = Status::Error(e.to_string());
                r
            })
        })
        .collect())
}
