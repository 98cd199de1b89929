//! McKay quiver of (G, V), the contraction quiver, connectivity, and DOT
//! export.

use std::fmt::Write as _;

use serde::Serialize;

use crate::group::{AbelianGroup, Character};

/// One arrow, labeled by a variable index (0-based internally, printed as
/// `x1..xn`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub var: usize,
}

/// The McKay quiver: one vertex per character in canonical order, and for
/// every vertex and variable one arrow `chi -> chi * wt(x_i)^{-1}`,
/// representing multiplication by `x_i` on the module summands.
#[derive(Debug, Clone, Serialize)]
pub struct McKayQuiver {
    pub vertices: Vec<Character>,
    pub arrows: Vec<Arrow>,
}

/// The contraction quiver: the McKay quiver with the trivial-character
/// vertex and its incident arrows removed.
#[derive(Debug, Clone, Serialize)]
pub struct ContractionQuiver {
    pub vertices: Vec<Character>,
    pub arrows: Vec<Arrow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Connectivity {
    /// No vertices at all (trivial group); vacuously connected.
    Empty,
    Connected,
    Disconnected,
}

pub fn build_mckay(group: &AbelianGroup) -> McKayQuiver {
    let vertices: Vec<Character> = group.characters().collect();
    let mut arrows = Vec::with_capacity(vertices.len() * group.n);
    for (s, chi) in vertices.iter().enumerate() {
        for i in 0..group.n {
            let target = group.char_sub(chi, group.var_weight(i));
            arrows.push(Arrow {
                source: s,
                target: group.char_index(&target),
                var: i,
            });
        }
    }
    McKayQuiver { vertices, arrows }
}

pub fn contraction(q: &McKayQuiver) -> ContractionQuiver {
    // The trivial character is the all-zero tuple, index 0 in canonical order.
    let vertices: Vec<Character> = q.vertices.iter().skip(1).cloned().collect();
    let arrows = q
        .arrows
        .iter()
        .filter(|a| a.source != 0 && a.target != 0)
        .map(|a| Arrow {
            source: a.source - 1,
            target: a.target - 1,
            var: a.var,
        })
        .collect();
    ContractionQuiver { vertices, arrows }
}

pub fn is_connected(q: &ContractionQuiver) -> Connectivity {
    let n = q.vertices.len();
    if n == 0 {
        return Connectivity::Empty;
    }
    let mut adj = vec![Vec::new(); n];
    for a in &q.arrows {
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
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
    if count == n {
        Connectivity::Connected
    } else {
        Connectivity::Disconnected
    }
}

fn char_label(c: &Character) -> String {
    let coords: Vec<String> = c.coords.iter().map(|x| x.to_string()).collect();
    format!("({})", coords.join(","))
}

fn dot_of(name: &str, vertices: &[Character], arrows: &[Arrow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    for (i, v) in vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{}\"];", char_label(v));
    }
    let mut sorted: Vec<&Arrow> = arrows.iter().collect();
    sorted.sort_by_key(|a| (a.source, a.var, a.target));
    for a in sorted {
        let _ = writeln!(
            out,
            "  v{} -> v{} [label=\"x{}\"];",
            a.source,
            a.target,
            a.var + 1
        );
    }
    out.push_str("}\n");
    out
}

impl McKayQuiver {
    pub fn to_dot(&self) -> String {
        dot_of("mckay", &self.vertices, &self.arrows)
    }
}

impl ContractionQuiver {
    pub fn to_dot(&self) -> String {
        dot_of("contraction", &self.vertices, &self.arrows)
    }
}
