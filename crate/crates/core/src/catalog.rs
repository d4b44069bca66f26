//! The ADE catalog: resolution graphs, the presentations read off them, the
//! hand-simplified presentations, and the words for the distinguished central
//! element and its three neighbours.
//!
//! Vertex names follow the usual figures: branch vertices `b1, b2, …`, and
//! exceptional vertices `eK` numbered so that indices increase along every
//! path leaving the root (the first exceptional vertex). The order of the
//! vertex list *is* that numbering; generators and relation products follow
//! it.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpgroup::{Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// An ADE singularity type: `A_n` (n ≥ 0), `D_n` (n ≥ 4), `E_6`, `E_7`, `E_8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SingularityType {
    family: Family,
    index: u32,
}

impl SingularityType {
    pub fn new(family: Family, index: u32) -> Result<Self> {
        let ok = match family {
            Family::A => true,
            Family::D => index >= 4,
            Family::E => (6..=8).contains(&index),
        };
        if !ok {
            return Err(Error::InvalidType(format!("{family:?}{index}")));
        }
        Ok(Self { family, index })
    }

    pub fn a(index: u32) -> Self {
        Self::new(Family::A, index).unwrap()
    }

    pub fn d(index: u32) -> Result<Self> {
        Self::new(Family::D, index)
    }

    pub fn e(index: u32) -> Result<Self> {
        Self::new(Family::E, index)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Every type with index at most `max_index`, ordered A, D, E by index.
    pub fn all_up_to(max_index: u32) -> Vec<Self> {
        let a = (0..=max_index).map(Self::a);
        let d = (4..=max_index).map(|i| Self::d(i).unwrap());
        let e = (6..=max_index.min(8)).map(|i| Self::e(i).unwrap());
        a.chain(d).chain(e).collect()
    }

    /// A0 and A1 have no trivalent vertex; everything else does.
    pub fn has_trivalent_vertex(&self) -> bool {
        !(self.family == Family::A && self.index <= 1)
    }

    /// Number of branches, which is also the free rank of the abelianized
    /// local fundamental group.
    pub fn branch_count(&self) -> usize {
        match (self.family, self.index) {
            (Family::A, i) if i % 2 == 0 => 1,
            (Family::A, _) => 2,
            (Family::D, i) if i % 2 == 0 => 3,
            (Family::D, _) => 2,
            (Family::E, 7) => 2,
            (Family::E, _) => 1,
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.index)
    }
}

impl FromStr for SingularityType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let index = digits.parse().map_err(|_| bad())?;
        Self::new(family, index)
    }
}

impl TryFrom<String> for SingularityType {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SingularityType> for String {
    fn from(t: SingularityType) -> Self {
        t.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Branch,
    Exceptional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    pub kind: VertexKind,
    pub weight: i32,
}

/// Weighted dual tree of a minimal embedded resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(String, String)>,
}

impl ResolutionGraph {
    fn position(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    /// Adjacency lists by vertex position, each sorted by position.
    pub fn adjacency(&self) -> Result<Vec<Vec<usize>>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, b) in &self.edges {
            let (Some(i), Some(j)) = (self.position(a), self.position(b)) else {
                return Err(Error::MalformedGraph(format!(
                    "edge {a}-{b} names an unknown vertex"
                )));
            };
            if i == j {
                return Err(Error::MalformedGraph(format!("loop at {a}")));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(adj)
    }

    pub fn valency(&self, name: &str) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| a == name || b == name)
            .count()
    }

    pub fn branch_vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Branch)
    }

    pub fn exceptional_vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Exceptional)
    }

    pub fn is_tree(&self) -> bool {
        let Ok(adj) = self.adjacency() else {
            return false;
        };
        let n = self.vertices.len();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Checks the structural invariants: unique names, a tree, branch weights
    /// 0, exceptional weights negative, branch vertices only adjacent to
    /// exceptional ones, and the root-ordering of the exceptional vertices.
    pub fn validate(&self) -> Result<()> {
        let malformed = |m: String| Err(Error::MalformedGraph(m));
        let mut names = BTreeMap::new();
        for v in &self.vertices {
            if names.insert(v.name.as_str(), ()).is_some() {
                return malformed(format!("duplicate vertex {}", v.name));
            }
            match v.kind {
                VertexKind::Branch if v.weight != 0 => {
                    return malformed(format!("branch vertex {} has weight {}", v.name, v.weight))
                }
                VertexKind::Exceptional if v.weight >= 0 => {
                    return malformed(format!(
                        "exceptional vertex {} has non-negative weight {}",
                        v.name, v.weight
                    ))
                }
                _ => {}
            }
        }
        let adj = self.adjacency()?;
        if !self.is_tree() {
            return malformed("graph is not a tree".into());
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.kind == VertexKind::Branch
                && adj[i]
                    .iter()
                    .any(|&j| self.vertices[j].kind == VertexKind::Branch)
            {
                return malformed(format!("branch vertex {} meets another branch", v.name));
            }
        }
        if !self.is_root_ordered(&adj) {
            return malformed("exceptional vertices are not numbered outward from the root".into());
        }
        Ok(())
    }

    /// Along the path from the root to any exceptional vertex, list positions
    /// strictly increase.
    fn is_root_ordered(&self, adj: &[Vec<usize>]) -> bool {
        let exc = |i: usize| self.vertices[i].kind == VertexKind::Exceptional;
        let Some(root) = (0..self.vertices.len()).find(|&i| exc(i)) else {
            return true;
        };
        // BFS through exceptional vertices only: branch vertices are leaves
        // whenever exceptional vertices exist.
        let mut seen = vec![false; self.vertices.len()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if exc(w) && !seen[w] {
                    if w < v {
                        return false;
                    }
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        true
    }
}

struct GraphBuilder {
    graph: ResolutionGraph,
}

impl GraphBuilder {
    fn new() -> Self {
        Self {
            graph: ResolutionGraph {
                vertices: Vec::new(),
                edges: Vec::new(),
            },
        }
    }

    fn branch(mut self, i: u32) -> Self {
        self.graph.vertices.push(Vertex {
            name: format!("b{i}"),
            kind: VertexKind::Branch,
            weight: 0,
        });
        self
    }

    fn exceptional(mut self, i: u32, weight: i32) -> Self {
        self.graph.vertices.push(Vertex {
            name: format!("e{i}"),
            kind: VertexKind::Exceptional,
            weight,
        });
        self
    }

    fn edge(mut self, a: &str, b: &str) -> Self {
        self.graph.edges.push((a.to_string(), b.to_string()));
        self
    }

    /// Path `e{from} -- e{from+1} -- … -- e{to}`.
    fn chain(mut self, from: u32, to: u32) -> Self {
        for i in from..to {
            self = self.edge(&format!("e{i}"), &format!("e{}", i + 1));
        }
        self
    }

    fn build(self) -> ResolutionGraph {
        self.graph
    }
}

pub fn resolution_graph(t: SingularityType) -> ResolutionGraph {
    let k = t.index();
    match (t.family(), k) {
        (Family::A, 0) => GraphBuilder::new().branch(1).build(),
        // A_{2n+1}: e3 … e_{n+2} (−2) then e_{n+3} (−1) carrying b1, b2.
        (Family::A, _) if k % 2 == 1 => {
            let n = (k - 1) / 2;
            let top = n + 3;
            let mut g = GraphBuilder::new().branch(1).branch(2);
            for i in 3..top {
                g = g.exceptional(i, -2);
            }
            g.exceptional(top, -1)
                .chain(3, top)
                .edge("b1", &format!("e{top}"))
                .edge("b2", &format!("e{top}"))
                .build()
        }
        // A_{2n}: e2 … e_n (−2), e_{n+1} (−3), e_{n+2} (−1) carrying b1, e_{n+3} (−2).
        (Family::A, _) => {
            let n = k / 2;
            let mut g = GraphBuilder::new().branch(1);
            for i in 2..=n {
                g = g.exceptional(i, -2);
            }
            g.exceptional(n + 1, -3)
                .exceptional(n + 2, -1)
                .exceptional(n + 3, -2)
                .chain(2, n + 3)
                .edge("b1", &format!("e{}", n + 2))
                .build()
        }
        // D_{2n+2}: b1 -- e4 -- … -- e_{n+2} (−2) -- e_{n+3} (−1) carrying b2, b3.
        (Family::D, _) if k.is_multiple_of(2) => {
            let n = (k - 2) / 2;
            let top = n + 3;
            let mut g = GraphBuilder::new().branch(1).branch(2).branch(3);
            for i in 4..top {
                g = g.exceptional(i, -2);
            }
            g.exceptional(top, -1)
                .edge("b1", "e4")
                .chain(4, top)
                .edge("b2", &format!("e{top}"))
                .edge("b3", &format!("e{top}"))
                .build()
        }
        // D_{2n+3}: b1 -- e3 … e_{n+1} (−2) -- e_{n+2} (−3) -- e_{n+3} (−1) -- e_{n+4} (−2),
        // with b2 on e_{n+3}.
        (Family::D, _) => {
            let n = (k - 3) / 2;
            let mut g = GraphBuilder::new().branch(1).branch(2);
            for i in 3..=n + 1 {
                g = g.exceptional(i, -2);
            }
            g.exceptional(n + 2, -3)
                .exceptional(n + 3, -1)
                .exceptional(n + 4, -2)
                .edge("b1", "e3")
                .chain(3, n + 4)
                .edge("b2", &format!("e{}", n + 3))
                .build()
        }
        (Family::E, 6) => GraphBuilder::new()
            .branch(1)
            .exceptional(2, -4)
            .exceptional(3, -1)
            .exceptional(4, -2)
            .exceptional(5, -2)
            .chain(2, 5)
            .edge("b1", "e3")
            .build(),
        (Family::E, 7) => GraphBuilder::new()
            .branch(1)
            .branch(2)
            .exceptional(3, -3)
            .exceptional(4, -1)
            .exceptional(5, -2)
            .chain(3, 5)
            .edge("b2", "e4")
            .edge("e5", "b1")
            .build(),
        (Family::E, _) => GraphBuilder::new()
            .branch(1)
            .exceptional(2, -3)
            .exceptional(3, -2)
            .exceptional(4, -1)
            .exceptional(5, -3)
            .chain(2, 5)
            .edge("b1", "e4")
            .build(),
    }
}

/// Reads the presentation off a resolution graph: branch generators, then
/// exceptional ones; for each exceptional vertex `e` of weight `w`, the
/// relator `e^w · (adjacent branches) · (adjacent exceptionals)`; and a
/// commutator for every edge meeting an exceptional vertex.
pub fn mumford_presentation(g: &ResolutionGraph) -> Result<Presentation> {
    g.validate()?;
    let adj = g.adjacency()?;
    let order: Vec<usize> = g
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| v.kind == VertexKind::Branch)
        .chain(
            g.vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| v.kind == VertexKind::Exceptional),
        )
        .map(|(i, _)| i)
        .collect();
    let rank: BTreeMap<usize, usize> = order.iter().enumerate().map(|(r, &i)| (i, r)).collect();
    let name = |i: usize| Word::generator(g.vertices[i].name.clone());

    let mut relators = Vec::new();
    for &i in &order {
        let v = &g.vertices[i];
        if v.kind != VertexKind::Exceptional {
            continue;
        }
        let mut neighbours = adj[i].clone();
        neighbours.sort_by_key(|j| rank[j]);
        let relator = neighbours
            .iter()
            .fold(name(i).pow(i64::from(v.weight)), |w, &j| w.concat(&name(j)));
        relators.push(relator);
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (a, b) in &g.edges {
        let (i, j) = (g.position(a).unwrap(), g.position(b).unwrap());
        let (i, j) = if rank[&i] <= rank[&j] { (i, j) } else { (j, i) };
        if g.vertices[i].kind == VertexKind::Exceptional
            || g.vertices[j].kind == VertexKind::Exceptional
        {
            edges.push((i, j));
        }
    }
    edges.sort_by_key(|&(i, j)| (rank[&i], rank[&j]));
    relators.extend(
        edges
            .into_iter()
            .map(|(i, j)| Word::commutator(&name(i), &name(j))),
    );

    Presentation::new(
        order.iter().map(|&i| g.vertices[i].name.clone()).collect(),
        relators,
    )
}

/// The short presentations obtained by eliminating the chain generators.
pub fn simplified_presentation(t: SingularityType) -> Presentation {
    let k = t.index() as i64;
    let parse = |gens: &[&str], rels: &[String]| {
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        Presentation::parse(gens, &rels).expect("catalog presentation is well formed")
    };
    match (t.family(), k) {
        (Family::A, 0) => parse(&["b1"], &[]),
        // e3 = b1b2 eliminated: both commutators collapse to [b1, b2].
        (Family::A, 1) => parse(&["b1", "b2"], &["[b1, b2]".into()]),
        (Family::A, _) if k % 2 == 1 => {
            let n = (k - 1) / 2;
            parse(
                &["b1", "b2", "e3"],
                &[
                    "e3 = b1 b2".into(),
                    format!("[b1, e3^{}]", n + 1),
                    format!("[b2, e3^{}]", n + 1),
                ],
            )
        }
        (Family::A, _) => {
            let n = k / 2;
            parse(
                &["b1", "e2"],
                &[
                    format!("e2^{} = b1 e2^{n} b1", n + 1),
                    format!("[b1, e2^{}]", 2 * n + 1),
                ],
            )
        }
        (Family::D, _) if k % 2 == 0 => {
            let n = (k - 2) / 2;
            parse(
                &["b1", "b2", "b3"],
                &[
                    "[b1, b2 b3]".into(),
                    format!("[b2, b1 (b2 b3)^{n}]"),
                    format!("[b3, b1 (b2 b3)^{n}]"),
                ],
            )
        }
        (Family::D, _) => {
            // Solving the chain relations gives e_{n+2} = e3^n b1^(1-n) and
            // e_{n+3} = e3^(2n+1) b1^(1-2n), with e_{n+4} = e3^(n+1) b1^-n b2^-1.
            let n = (k - 3) / 2;
            let e = format!("e3^{} b1^{}", 2 * n + 1, 1 - 2 * n);
            parse(
                &["b1", "b2", "e3"],
                &[
                    format!("{e} = (e3^{} b1^{} b2^-1)^2", n + 1, -n),
                    "[e3, b1]".into(),
                    format!("[b2, {e}]"),
                ],
            )
        }
        (Family::E, 6) => parse(
            &["b1", "e2"],
            &["e2^3 = (b1 e2)^2 b1".into(), "[e2^4, b1]".into()],
        ),
        (Family::E, 7) => parse(
            &["b1", "b2", "e3"],
            &[
                "e3^2 = b1 b2 e3 b2".into(),
                "[b1, b2 e3]".into(),
                "[e3^3, b1]".into(),
                "[e3^3, b2]".into(),
            ],
        ),
        (Family::E, _) => parse(
            &["b1", "e2"],
            &["(e2^2 b1^-1)^2 = b1 e2^3".into(), "[e2^5, b1]".into()],
        ),
    }
}

/// The central element `e` of the last blow-up and the words of the three
/// vertices around it, in the order they appear in its vertex relation, so
/// that `γ₁γ₂γ₃ = e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinguishedWords {
    pub e_word: Word,
    /// `None` for A1, whose `−1` vertex has only the two branch neighbours.
    pub gamma_triple: Option<[Word; 3]>,
}

pub fn distinguished_words(t: SingularityType) -> Result<DistinguishedWords> {
    let w = |s: String| Word::parse(&s).expect("catalog word is well formed");
    let k = t.index() as i64;
    let (e, gamma) = match (t.family(), k) {
        (Family::A, 0) => return Err(Error::NoExceptionalCurve),
        (Family::A, 1) => {
            return Ok(DistinguishedWords {
                e_word: w("b1 b2".into()),
                gamma_triple: None,
            })
        }
        (Family::A, _) if k % 2 == 1 => {
            let n = (k - 1) / 2;
            (
                format!("(b1 b2)^{}", n + 1),
                ["b1".into(), "b2".into(), format!("(b1 b2)^{n}")],
            )
        }
        (Family::A, _) => {
            let n = k / 2;
            (
                format!("e2^{}", 2 * n + 1),
                ["b1".into(), format!("e2^{n}"), format!("b1 e2^{n}")],
            )
        }
        (Family::D, 4) => ("b1 b2 b3".into(), ["b1".into(), "b2".into(), "b3".into()]),
        (Family::D, _) if k % 2 == 0 => {
            let n = (k - 2) / 2;
            (
                format!("b1 (b2 b3)^{n}"),
                ["b2".into(), "b3".into(), format!("b1 (b2 b3)^{}", n - 1)],
            )
        }
        (Family::D, _) => {
            let n = (k - 3) / 2;
            (
                format!("e3^{} b1^{}", 2 * n + 1, 1 - 2 * n),
                [
                    "b2".into(),
                    format!("e3^{n} b1^{}", 1 - n),
                    format!("e3^{} b1^{} b2^-1", n + 1, -n),
                ],
            )
        }
        (Family::E, 6) => (
            "e2^4".into(),
            ["b1".into(), "e2".into(), "(b1 e2)^2".into()],
        ),
        (Family::E, 7) => ("e3^3".into(), ["b2".into(), "e3".into(), "b1 b2 e3".into()]),
        (Family::E, _) => (
            "e2^5".into(),
            ["b1".into(), "e2^3".into(), "e2^2 b1^-1".into()],
        ),
    };
    Ok(DistinguishedWords {
        e_word: w(e),
        gamma_triple: Some(gamma.map(w)),
    })
}

/// Weighted-graph isomorphism of two trees, via canonical encodings rooted at
/// their centres. Graphs that are not trees are compared as unequal unless
/// they are identical.
pub fn graphs_isomorphic(g1: &ResolutionGraph, g2: &ResolutionGraph) -> bool {
    match (canonical_encoding(g1), canonical_encoding(g2)) {
        (Some(a), Some(b)) => a == b,
        _ => g1 == g2,
    }
}

fn canonical_encoding(g: &ResolutionGraph) -> Option<String> {
    if !g.is_tree() {
        return None;
    }
    let adj = g.adjacency().ok()?;
    let label = |i: usize| {
        let v = &g.vertices[i];
        let kind = match v.kind {
            VertexKind::Branch => 'b',
            VertexKind::Exceptional => 'e',
        };
        format!("{kind}{}", v.weight)
    };
    fn encode(
        v: usize,
        parent: Option<usize>,
        adj: &[Vec<usize>],
        label: &dyn Fn(usize) -> String,
    ) -> String {
        let mut children: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| Some(w) != parent)
            .map(|&w| encode(w, Some(v), adj, label))
            .collect();
        children.sort();
        format!("{}({})", label(v), children.concat())
    }
    tree_centres(&adj)
        .into_iter()
        .map(|c| encode(c, None, &adj, &label))
        .min()
}

fn tree_centres(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= leaves.len();
        let mut next = Vec::new();
        for &leaf in &leaves {
            for &w in &adj[leaf] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        leaves = next;
    }
    leaves
}
