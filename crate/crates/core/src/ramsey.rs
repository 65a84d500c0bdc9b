//! Exact small 2-color Ramsey numbers with extremal coloring witnesses.
//!
//! `ramsey_number(F, G, cap)` finds the least n such that every 2-coloring
//! of the pairs of K_n yields a color-1 copy of F or a color-2 copy of G.
//! The search grows avoiding colorings one vertex at a time, pruning with
//! incremental mono-copy checks on each freshly colored pair and keeping
//! one canonical representative (lex-minimal color vector under vertex
//! permutations) per isomorphism class at each complete level. A level
//! with no avoiding colorings pins the value; the previous level supplies
//! the extremal witness.
//!
//! Colors are never interchanged: color 1 carries F, color 2 carries G.
//! A copy of a target with isolated vertices needs enough host vertices,
//! exactly like any other embedding.

use crate::berge::{first_copy, has_copy_through_edge};
use crate::graph::{Graph, GraphError};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RamseyError {
    #[error("patterns must have at least one vertex")]
    EmptyPattern,
    #[error("Ramsey number exceeds the search cap {cap}")]
    ExceedsCap {
        cap: usize,
        /// an avoiding coloring of K_cap, so R > cap
        witness_at_cap: TwoColoring,
    },
    #[error("coloring needs {expected} colored pairs, got {got}")]
    WrongPairCount { expected: usize, got: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    First,
    Second,
}

impl Color {
    pub fn index(self) -> u8 {
        match self {
            Color::First => 1,
            Color::Second => 2,
        }
    }
}

/// colex index of the pair {u, v}; pairs on the first m vertices occupy
/// the first C(m,2) slots
#[inline]
fn pair_index(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

/// A complete 2-coloring of the pairs of K_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColoring {
    n: usize,
    colors: Vec<Color>,
}

impl TwoColoring {
    pub fn uniform(n: usize, color: Color) -> Self {
        TwoColoring {
            n,
            colors: vec![color; n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds from a colex-ordered color vector of length C(n,2).
    pub fn from_colors(n: usize, colors: Vec<Color>) -> Result<Self, RamseyError> {
        let expected = n * n.saturating_sub(1) / 2;
        if colors.len() != expected {
            return Err(RamseyError::WrongPairCount {
                expected,
                got: colors.len(),
            });
        }
        Ok(TwoColoring { n, colors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, u: usize, v: usize) -> Color {
        let (u, v) = (u.min(v), u.max(v));
        self.colors[pair_index(u, v)]
    }

    pub fn set_color(&mut self, u: usize, v: usize, c: Color) {
        let (u, v) = (u.min(v), u.max(v));
        self.colors[pair_index(u, v)] = c;
    }

    /// The graph formed by the pairs of one color.
    pub fn color_graph(&self, c: Color) -> Graph {
        let mut edges = Vec::new();
        for v in 1..self.n {
            for u in 0..v {
                if self.colors[pair_index(u, v)] == c {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, &edges).expect("pairs are valid")
    }

    /// Same coloring with the two colors exchanged.
    pub fn swapped(&self) -> TwoColoring {
        TwoColoring {
            n: self.n,
            colors: self
                .colors
                .iter()
                .map(|c| match c {
                    Color::First => Color::Second,
                    Color::Second => Color::First,
                })
                .collect(),
        }
    }

    /// Text export: one `u v color` line per pair, colors 1 and 2.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let _ = writeln!(out, "{} {} {}", u, v, self.color(u, v).index());
            }
        }
        out
    }
}

/// A monochromatic copy found in a coloring, with its embedding map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoCopy {
    /// copy of the first pattern among color-1 pairs; `map[pattern v] = host`
    First(Vec<usize>),
    /// copy of the second pattern among color-2 pairs
    Second(Vec<usize>),
}

/// Searches the coloring for a color-1 copy of `f`, then a color-2 copy
/// of `g`.
pub fn mono_copy(coloring: &TwoColoring, f: &Graph, g: &Graph) -> Option<MonoCopy> {
    if let Some(map) = first_copy(&coloring.color_graph(Color::First), f) {
        return Some(MonoCopy::First(map));
    }
    if let Some(map) = first_copy(&coloring.color_graph(Color::Second), g) {
        return Some(MonoCopy::Second(map));
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamseyResult {
    pub value: usize,
    /// avoiding coloring of K_{value - 1}, canonical and deterministic
    pub witness: TwoColoring,
}

/// Exact R(F, G) for `cap`-bounded search.
///
/// Edgeless targets are present as soon as the vertices fit, which
/// settles those cases directly: R equals the vertex count of the
/// edgeless pattern (the smaller one if both are edgeless).
pub fn ramsey_number(f: &Graph, g: &Graph, cap: usize) -> Result<RamseyResult, RamseyError> {
    if f.n() == 0 || g.n() == 0 {
        return Err(RamseyError::EmptyPattern);
    }
    if f.edge_count() == 0 || g.edge_count() == 0 {
        return ramsey_degenerate(f, g, cap);
    }

    // level m holds one canonical representative per isomorphism class of
    // avoiding colorings of K_m; both patterns have edges, so K_1 avoids
    let mut level: BTreeSet<Vec<Color>> = BTreeSet::from([Vec::new()]);
    let mut m = 1;
    if cap == 0 {
        return Err(RamseyError::ExceedsCap {
            cap,
            witness_at_cap: TwoColoring::uniform(0, Color::First),
        });
    }
    loop {
        if m >= cap {
            let witness = lex_min_coloring(m, &level);
            return Err(RamseyError::ExceedsCap {
                cap,
                witness_at_cap: witness,
            });
        }
        let next = extend_level(&level, m, f, g);
        if next.is_empty() {
            let witness = lex_min_coloring(m, &level);
            return Ok(RamseyResult {
                value: m + 1,
                witness,
            });
        }
        level = next;
        m += 1;
    }
}

fn lex_min_coloring(m: usize, level: &BTreeSet<Vec<Color>>) -> TwoColoring {
    let colors = level.iter().next().expect("level nonempty").clone();
    TwoColoring::from_colors(m, colors).expect("level vectors are complete")
}

fn ramsey_degenerate(f: &Graph, g: &Graph, cap: usize) -> Result<RamseyResult, RamseyError> {
    let value = match (f.edge_count() == 0, g.edge_count() == 0) {
        (true, true) => f.n().min(g.n()),
        (true, false) => f.n(),
        (false, true) => g.n(),
        (false, false) => unreachable!("handled by the general path"),
    };
    // a uniform coloring in the color of the edgeless side avoids both
    // targets on fewer vertices than `value`
    let avoiding_color = if f.edge_count() == 0 {
        Color::First
    } else {
        Color::Second
    };
    if value > cap {
        return Err(RamseyError::ExceedsCap {
            cap,
            witness_at_cap: TwoColoring::uniform(cap, avoiding_color),
        });
    }
    Ok(RamseyResult {
        value,
        witness: TwoColoring::uniform(value.saturating_sub(1), avoiding_color),
    })
}

/// All avoiding colorings of K_{m+1} obtained by adding vertex `m` to the
/// level-m representatives, canonicalized and deduplicated.
fn extend_level(
    level: &BTreeSet<Vec<Color>>,
    m: usize,
    f: &Graph,
    g: &Graph,
) -> BTreeSet<Vec<Color>> {
    let mut next = BTreeSet::new();
    let base_len = m * (m - 1) / 2;
    for base in level {
        let mut colors = base.clone();
        colors.resize(base_len + m, Color::First);
        color_new_pairs(&mut colors, m, 0, f, g, &mut next);
    }
    next
}

fn color_new_pairs(
    colors: &mut Vec<Color>,
    m: usize,
    i: usize,
    f: &Graph,
    g: &Graph,
    out: &mut BTreeSet<Vec<Color>>,
) {
    if i == m {
        out.insert(canonical_form(colors, m + 1));
        return;
    }
    let slot = m * (m - 1) / 2 + i;
    for c in [Color::First, Color::Second] {
        colors[slot] = c;
        // a new mono copy must pass through the pair (i, m)
        let (pattern, host) = match c {
            Color::First => (f, partial_color_graph(colors, m + 1, i, Color::First)),
            Color::Second => (g, partial_color_graph(colors, m + 1, i, Color::Second)),
        };
        if !has_copy_through_edge(&host, pattern, i, m) {
            color_new_pairs(colors, m, i + 1, f, g, out);
        }
    }
}

/// Graph of one color class among the decided pairs: all pairs of K_m
/// plus the new pairs (0, m) ..= (i, m).
fn partial_color_graph(colors: &[Color], n: usize, i: usize, c: Color) -> Graph {
    let m = n - 1;
    let mut edges = Vec::new();
    for v in 1..m {
        for u in 0..v {
            if colors[pair_index(u, v)] == c {
                edges.push((u, v));
            }
        }
    }
    for u in 0..=i {
        if colors[pair_index(u, m)] == c {
            edges.push((u, m));
        }
    }
    Graph::from_edges(n, &edges).expect("pairs are valid")
}

/// Lexicographically minimal color vector over all vertex permutations.
/// Backtracks over partial permutations; a prefix already larger than the
/// best is abandoned.
fn canonical_form(colors: &[Color], m: usize) -> Vec<Color> {
    let mut best = colors.to_vec();
    let mut perm = vec![usize::MAX; m];
    let mut used = vec![false; m];
    let mut current = colors.to_vec();
    canon_rec(
        colors,
        m,
        0,
        &mut perm,
        &mut used,
        &mut current,
        true,
        &mut best,
    );
    best
}

#[allow(clippy::too_many_arguments)]
fn canon_rec(
    colors: &[Color],
    m: usize,
    k: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    current: &mut Vec<Color>,
    tight: bool,
    best: &mut Vec<Color>,
) {
    if k == m {
        // `tight` only drives pruning; the incumbent may have shrunk since
        // the branch diverged, so compare in full before replacing
        if current < best {
            best.clone_from(current);
        }
        return;
    }
    for old in 0..m {
        if used[old] {
            continue;
        }
        perm[k] = old;
        used[old] = true;
        // pairs (j, k) fill the contiguous colex slots C(k,2)..C(k+1,2)
        let start = k * (k.saturating_sub(1)) / 2;
        let mut branch_tight = tight;
        let mut worse = false;
        for j in 0..k {
            let (a, b) = (perm[j].min(old), perm[j].max(old));
            let value = colors[pair_index(a, b)];
            current[start + j] = value;
            if branch_tight {
                match value.cmp(&best[start + j]) {
                    std::cmp::Ordering::Less => branch_tight = false,
                    std::cmp::Ordering::Greater => {
                        worse = true;
                        break;
                    }
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        if !worse {
            canon_rec(colors, m, k + 1, perm, used, current, branch_tight, best);
        }
        used[old] = false;
        perm[k] = usize::MAX;
    }
}

/// Ramsey threshold for deleting edge `e` from `f`: R(F, F - e) with the
/// vertex set of F kept (deleting an edge may leave isolated vertices).
pub fn edge_size_threshold(
    f: &Graph,
    e: (usize, usize),
    cap: usize,
) -> Result<RamseyResult, RamseyError> {
    let reduced = f.minus_edge(e.0, e.1)?;
    ramsey_number(f, &reduced, cap)
}

/// Unpruned exhaustive check that every coloring of K_n has a mono copy.
/// Independent of the orderly search; intended for n with C(n,2) <= 30.
pub fn every_coloring_has_mono(f: &Graph, g: &Graph, n: usize) -> bool {
    let pairs = n * n.saturating_sub(1) / 2;
    assert!(pairs < 31, "exhaustive sweep limited to C(n,2) < 31");
    for bits in 0u64..(1u64 << pairs) {
        let colors: Vec<Color> = (0..pairs)
            .map(|i| {
                if bits >> i & 1 == 0 {
                    Color::First
                } else {
                    Color::Second
                }
            })
            .collect();
        let coloring = TwoColoring::from_colors(n, colors).expect("length matches");
        if mono_copy(&coloring, f, g).is_none() {
            return false;
        }
    }
    true
}
