//! Simple undirected graphs on vertices `1..=n`, generators for the sparse
//! families with closed-form cut polytope volumes, and structural recognition
//! of those families.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Undirected simple graph. Vertices are `1..=n`; edges are stored as
/// `(i, j)` with `i < j`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, orienting each pair as `(min, max)` and sorting.
    /// Self-loops, duplicates and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        let mut out = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
            }
            let (i, j) = (a.min(b), a.max(b));
            if i < 1 || j > n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a},{b}) outside vertex range 1..={n}"
                )));
            }
            out.push((i, j));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "duplicate edge ({},{})",
                w[0].0, w[0].1
            )));
        }
        Ok(Graph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Position of edge `{i, j}` in the sorted edge list.
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edge_index(i, j).is_some()
    }

    /// Adjacency lists indexed by vertex label (index 0 unused).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(i, j)| i == v || j == v).count()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Parses the text format: a header line `n m` followed by `m` lines `i j`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty graph file"))?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (lno, line) in lines {
            if edges.len() == m {
                return Err(Error::parse(lno, "more edge lines than declared"));
            }
            edges.push(parse_pair(lno, line)?);
        }
        if edges.len() != m {
            return Err(Error::parse(
                hline,
                format!("declared {m} edges, found {}", edges.len()),
            ));
        }
        Graph::new(n, edges).map_err(|e| Error::parse(hline, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for (i, j) in &self.edges {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }
}

fn parse_pair(lno: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::parse(lno, "expected two integers"))?
            .parse::<usize>()
            .map_err(|e| Error::parse(lno, e.to_string()))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::parse(lno, "trailing tokens"));
    }
    Ok((a, b))
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(n={}, m={})", self.n, self.edges.len())
    }
}

/// Complete graph `K_n`.
pub fn make_complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("K_n needs n >= 2, got {n}")));
    }
    let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
    Graph::new(n, edges)
}

/// Cycle `C_n` with edges `(k, k+1)` and `(1, n)`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("C_n needs n >= 3, got {n}")));
    }
    Graph::new(n, (1..n).map(|k| (k, k + 1)).chain([(1, n)]))
}

pub fn make_path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("P_n needs n >= 2, got {n}")));
    }
    Graph::new(n, (1..n).map(|k| (k, k + 1)))
}

/// Star `S_n` on `n` vertices with center 1.
pub fn make_star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("S_n needs n >= 2, got {n}")));
    }
    Graph::new(n, (2..=n).map(|k| (1, k)))
}

/// Cactus built from the listed cycles and `tree_edges` pendant edges.
///
/// The first cycle occupies vertices `1..=n_1`. Each further cycle is glued
/// at the lowest-index vertex of degree 2, which keeps every cycle sharing
/// exactly one vertex with what came before. Pendant edges are then hung,
/// one new vertex each, from the lowest-index vertex of degree below 3.
pub fn make_cactus(cycles: &[usize], tree_edges: usize) -> Result<Graph> {
    if cycles.is_empty() && tree_edges == 0 {
        return Err(Error::InvalidArgument("empty cactus specification".into()));
    }
    if let Some(&bad) = cycles.iter().find(|&&c| c < 3) {
        return Err(Error::InvalidArgument(format!("cycle length {bad} < 3")));
    }
    let mut b = Builder::default();
    match cycles.split_first() {
        Some((&first, rest)) => {
            b.fresh_cycle(first);
            for &len in rest {
                let at = b
                    .lowest_with_degree(|d| d == 2)
                    .expect("a cycle always leaves a degree-2 vertex");
                b.attach_cycle(at, len);
            }
        }
        None => {
            b.n = 1;
            b.deg = vec![0, 0];
        }
    }
    for _ in 0..tree_edges {
        let at = b
            .lowest_with_degree(|d| d < 3)
            .expect("the newest leaf has degree 1");
        let v = b.add_vertex();
        b.add_edge(at, v);
    }
    b.finish()
}

/// Necklace: base cycle `1..=base` with one cycle of length `attached[i]`
/// glued at base vertex `i + 1`.
pub fn make_necklace(base: usize, attached: &[usize]) -> Result<Graph> {
    if base < 3 {
        return Err(Error::InvalidArgument(format!("necklace base {base} < 3")));
    }
    if attached.len() != base {
        return Err(Error::InvalidArgument(format!(
            "necklace needs {base} attached cycles, got {}",
            attached.len()
        )));
    }
    if let Some(&bad) = attached.iter().find(|&&c| c < 3) {
        return Err(Error::InvalidArgument(format!("cycle length {bad} < 3")));
    }
    let mut b = Builder::default();
    b.fresh_cycle(base);
    for (v, &len) in attached.iter().enumerate() {
        b.attach_cycle(v + 1, len);
    }
    b.finish()
}

/// Adds apex `n + 1` joined to every vertex.
pub fn suspension(g: &Graph) -> Graph {
    let apex = g.n + 1;
    let edges = g
        .edges
        .iter()
        .copied()
        .chain((1..=g.n).map(|i| (i, apex)));
    Graph::new(apex, edges).expect("suspension of a valid graph is valid")
}

/// Base graphs whose suspensions have known cut-polytope volumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuspensionKind {
    Star,
    Path,
    Cycle,
}

impl SuspensionKind {
    /// The base graph on `n` vertices.
    pub fn base(self, n: usize) -> Result<Graph> {
        match self {
            SuspensionKind::Star => make_star(n),
            SuspensionKind::Path => make_path(n),
            SuspensionKind::Cycle => make_cycle(n),
        }
    }

    /// Induced cycles of the suspension: one triangle per base edge, plus
    /// the rim when the base is a cycle of length at least 4.
    pub fn suspension_cycles(self, n: usize) -> Result<Vec<Vec<usize>>> {
        let g = self.base(n)?;
        let apex = n + 1;
        let mut cycles: Vec<Vec<usize>> = g.edges().iter().map(|&(i, j)| vec![i, j, apex]).collect();
        if self == SuspensionKind::Cycle {
            cycles.push((1..=n).collect());
        }
        Ok(cycles)
    }
}

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    deg: Vec<usize>,
}

impl Builder {
    fn add_vertex(&mut self) -> usize {
        if self.deg.is_empty() {
            self.deg.push(0);
        }
        self.n += 1;
        self.deg.push(0);
        self.n
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
        self.deg[a] += 1;
        self.deg[b] += 1;
    }

    fn fresh_cycle(&mut self, len: usize) {
        let first = self.add_vertex();
        self.attach_path_cycle(first, len);
    }

    fn attach_cycle(&mut self, at: usize, len: usize) {
        self.attach_path_cycle(at, len);
    }

    fn attach_path_cycle(&mut self, start: usize, len: usize) {
        let mut prev = start;
        for _ in 1..len {
            let v = self.add_vertex();
            self.add_edge(prev, v);
            prev = v;
        }
        self.add_edge(prev, start);
    }

    fn lowest_with_degree(&self, pred: impl Fn(usize) -> bool) -> Option<usize> {
        (1..=self.n).find(|&v| pred(self.deg[v]))
    }

    fn finish(self) -> Result<Graph> {
        Graph::new(self.n, self.edges)
    }
}

/// Structural family of a graph, with the data the volume formulas need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    /// Acyclic, possibly disconnected.
    Forest,
    /// A single cycle through every vertex.
    Cycle { len: usize },
    /// Connected, every block an edge or a cycle. Lengths sorted descending.
    Cactus { cycles: Vec<usize> },
    /// Base cycle with exactly one cycle glued at each base vertex.
    /// `attached` follows the base cycle from its lowest-labeled vertex
    /// towards the smaller of that vertex's two base neighbours.
    Necklace { base: usize, attached: Vec<usize> },
    Complete { n: usize },
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Forest,
    Cycle,
    Cactus,
    Necklace,
    Complete,
    Other,
}

impl FamilyTag {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilyTag::Forest => FamilyKind::Forest,
            FamilyTag::Cycle { .. } => FamilyKind::Cycle,
            FamilyTag::Cactus { .. } => FamilyKind::Cactus,
            FamilyTag::Necklace { .. } => FamilyKind::Necklace,
            FamilyTag::Complete { .. } => FamilyKind::Complete,
            FamilyTag::Other => FamilyKind::Other,
        }
    }

    /// All cycle lengths named by the witness.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        match self {
            FamilyTag::Cycle { len } => vec![*len],
            FamilyTag::Cactus { cycles } => cycles.clone(),
            FamilyTag::Necklace { base, attached } => {
                std::iter::once(*base).chain(attached.iter().copied()).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Whether the cycle inequalities of the blocks describe `Cut(G)`.
    pub fn is_sparse(&self) -> bool {
        matches!(
            self.kind(),
            FamilyKind::Forest | FamilyKind::Cycle | FamilyKind::Cactus | FamilyKind::Necklace
        )
    }
}

/// Biconnected blocks, each as a list of edges.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }

    fn dfs(s: &mut State<'_>, u: usize, parent: usize) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for &v in &s.adj[u] {
            if s.disc[v] == 0 {
                s.stack.push((u, v));
                dfs(s, v, u);
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push((e.0.min(e.1), e.0.max(e.1)));
                        if e == (u, v) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if v != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }

    let adj = g.adjacency();
    let mut s = State {
        adj: &adj,
        disc: vec![0; g.n + 1],
        low: vec![0; g.n + 1],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 1..=g.n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, 0);
        }
    }
    s.out
}

/// A cycle block as a closed vertex walk, starting at its lowest label and
/// heading to the smaller neighbour.
fn cycle_order(block: &[(usize, usize)]) -> Vec<usize> {
    let verts: BTreeSet<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    let start = *verts.iter().next().expect("non-empty block");
    let nbrs = |v: usize| -> Vec<usize> {
        let mut out: Vec<usize> = block
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    };
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = nbrs(start)[0];
    while cur != start {
        order.push(cur);
        let next = nbrs(cur).into_iter().find(|&w| w != prev).expect("cycle");
        prev = cur;
        cur = next;
    }
    order
}

fn is_cycle_block(block: &[(usize, usize)]) -> bool {
    let verts: BTreeSet<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    block.len() >= 3 && verts.len() == block.len() && {
        let mut deg = std::collections::HashMap::new();
        for &(a, b) in block {
            *deg.entry(a).or_insert(0) += 1;
            *deg.entry(b).or_insert(0) += 1;
        }
        deg.values().all(|&d| d == 2)
    }
}

/// Classifies `g`, most specific family first:
/// Forest, Cycle, Necklace, Cactus, Complete, Other.
/// So `K_2` is a Forest and `K_3` a Cycle.
pub fn classify(g: &Graph) -> FamilyTag {
    let bl = blocks(g);
    let cycle_blocks: Vec<&Vec<(usize, usize)>> =
        bl.iter().filter(|b| b.len() > 1).collect();
    if cycle_blocks.is_empty() {
        return FamilyTag::Forest;
    }
    let connected = g.is_connected();
    let cactus = connected && cycle_blocks.iter().all(|b| is_cycle_block(b));
    if cactus {
        if cycle_blocks.len() == 1 && cycle_blocks[0].len() == g.edge_count() {
            return FamilyTag::Cycle { len: g.edge_count() };
        }
        if let Some(tag) = necklace_witness(g, &cycle_blocks) {
            return tag;
        }
        let mut cycles: Vec<usize> = cycle_blocks.iter().map(|b| b.len()).collect();
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        return FamilyTag::Cactus { cycles };
    }
    if g.is_complete() {
        return FamilyTag::Complete { n: g.n };
    }
    FamilyTag::Other
}

fn necklace_witness(g: &Graph, cycles: &[&Vec<(usize, usize)>]) -> Option<FamilyTag> {
    // No bridges allowed: every edge lies on some cycle.
    let cycle_edges: usize = cycles.iter().map(|b| b.len()).sum();
    if cycle_edges != g.edge_count() {
        return None;
    }
    let vsets: Vec<BTreeSet<usize>> = cycles
        .iter()
        .map(|b| b.iter().flat_map(|&(a, c)| [a, c]).collect())
        .collect();
    let mut membership = vec![0usize; g.n + 1];
    for s in &vsets {
        for &v in s {
            membership[v] += 1;
        }
    }
    let shared = |s: &BTreeSet<usize>| s.iter().filter(|&&v| membership[v] > 1).count();
    let base_idx = (0..cycles.len()).find(|&k| {
        vsets[k].len() + 1 == cycles.len() && vsets[k].iter().all(|&v| membership[v] == 2)
    })?;
    for (k, s) in vsets.iter().enumerate() {
        if k == base_idx {
            continue;
        }
        if shared(s) != 1 || s.intersection(&vsets[base_idx]).count() != 1 {
            return None;
        }
    }
    let order = cycle_order(cycles[base_idx]);
    let mut attached = Vec::with_capacity(order.len());
    for v in &order {
        let k = (0..cycles.len()).find(|&k| k != base_idx && vsets[k].contains(v))?;
        attached.push(cycles[k].len());
    }
    Some(FamilyTag::Necklace {
        base: order.len(),
        attached,
    })
}

/// Induced (chordless) cycles of a sparse-family graph, as vertex walks.
/// For forests, cycles, cacti and necklaces these are exactly the cycle blocks.
pub fn induced_cycles(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let tag = classify(g);
    if !tag.is_sparse() {
        return Err(Error::UnsupportedFamily(format!(
            "{:?} graph: induced cycles are only enumerated for forests, cycles, cacti and necklaces",
            tag.kind()
        )));
    }
    Ok(blocks(g)
        .iter()
        .filter(|b| b.len() > 1)
        .map(|b| cycle_order(b))
        .collect())
}
