// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Equitable proper edge colorings of bipartite graphs.
//!
//! A proper coloring with `k ≥ Δ` colors is first built (from a Latin square
//! for complete bipartite graphs, by alternating-path recoloring otherwise)
//! and then balanced: while two classes differ by more than one edge, an
//! alternating path of the two colors that starts and ends with the larger
//! color is swapped, moving one edge from the larger class to the smaller.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("{k} colors cannot properly color a graph of maximum degree {max_degree}")]
    TooFewColors { k: usize, max_degree: usize },
    #[error("edge ({0}, {1}) is outside the vertex range")]
    EdgeOutOfRange(usize, usize),
    #[error("edge ({0}, {1}) is listed twice")]
    DuplicateEdge(usize, usize),
}

/// A coloring of a subgraph of `K_{a,b}`. Left vertices are `0..a`, right
/// vertices `0..b`; colors are `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    a: usize,
    b: usize,
    k: usize,
    colors: Vec<Option<usize>>,
}

impl EdgeColoring {
    pub fn left(&self) -> usize {
        self.a
    }

    pub fn right(&self) -> usize {
        self.b
    }

    pub fn color_count(&self) -> usize {
        self.k
    }

    /// Color of edge `(i, j)`, `None` when the edge is not in the graph.
    pub fn color(&self, i: usize, j: usize) -> Option<usize> {
        self.colors[i * self.b + j]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.colors.iter().enumerate().filter_map(|(idx, c)| c.map(|c| (idx / self.b, idx % self.b, c)))
    }

    /// Edges of each color class, in row-major order.
    pub fn classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut classes = vec![Vec::new(); self.k];
        for (i, j, c) in self.edges() {
            classes[c].push((i, j));
        }
        classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for (_, _, c) in self.edges() {
            sizes[c] += 1;
        }
        sizes
    }

    /// No two edges sharing an endpoint have the same color.
    pub fn is_proper(&self) -> bool {
        let mut left = vec![false; self.a * self.k];
        let mut right = vec![false; self.b * self.k];
        for (i, j, c) in self.edges() {
            if c >= self.k
                || std::mem::replace(&mut left[i * self.k + c], true)
                || std::mem::replace(&mut right[j * self.k + c], true)
            {
                return false;
            }
        }
        true
    }

    /// Class sizes differ by at most one.
    pub fn is_equitable(&self) -> bool {
        let sizes = self.class_sizes();
        match (sizes.iter().min(), sizes.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo <= 1,
            _ => true,
        }
    }
}

/// Working state: for every vertex and color, the neighbour reached through
/// the edge of that color. Right vertex `j` is stored at index `a + j`.
struct Palette {
    a: usize,
    b: usize,
    k: usize,
    at: Vec<Option<usize>>,
}

impl Palette {
    fn new(a: usize, b: usize, k: usize) -> Self {
        Self { a, b, k, at: vec![None; (a + b) * k] }
    }

    fn get(&self, v: usize, c: usize) -> Option<usize> {
        self.at[v * self.k + c]
    }

    fn set(&mut self, u: usize, v: usize, c: usize) {
        self.at[u * self.k + c] = Some(v);
        self.at[v * self.k + c] = Some(u);
    }

    fn clear(&mut self, u: usize, v: usize, c: usize) {
        self.at[u * self.k + c] = None;
        self.at[v * self.k + c] = None;
    }

    fn free_color(&self, v: usize) -> Option<usize> {
        (0..self.k).find(|&c| self.get(v, c).is_none())
    }

    /// Walks the path alternating `first`, `second`, `first`, ... from `start`
    /// and returns its vertices.
    fn alternating_path(&self, start: usize, first: usize, second: usize) -> Vec<usize> {
        let mut path = vec![start];
        let mut colors = [first, second].into_iter().cycle();
        let mut cur = start;
        while let Some(next) = self.get(cur, colors.next().unwrap()) {
            if next == start {
                break;
            }
            path.push(next);
            cur = next;
        }
        path
    }

    /// Exchanges colors `x` and `y` along a path whose first edge has color `x`.
    fn swap_path(&mut self, path: &[usize], x: usize, y: usize) {
        let edges: Vec<(usize, usize, usize)> =
            path.windows(2).enumerate().map(|(idx, w)| (w[0], w[1], if idx % 2 == 0 { x } else { y })).collect();
        for &(u, v, c) in &edges {
            self.clear(u, v, c);
        }
        for &(u, v, c) in &edges {
            self.set(u, v, if c == x { y } else { x });
        }
    }

    /// König-style insertion of edge `(u, v)`; both endpoints must have a free color.
    fn insert(&mut self, u: usize, v: usize) {
        let alpha = self.free_color(u).expect("degree below k");
        if self.get(v, alpha).is_none() {
            self.set(u, v, alpha);
            return;
        }
        let beta = self.free_color(v).expect("degree below k");
        // v has an alpha edge but no beta edge; the alpha/beta path from v
        // cannot reach u in a bipartite graph, so flipping it frees alpha at v.
        let path = self.alternating_path(v, alpha, beta);
        self.swap_path(&path, alpha, beta);
        self.set(u, v, alpha);
    }

    fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for v in 0..self.a {
            for (c, size) in sizes.iter_mut().enumerate() {
                if self.get(v, c).is_some() {
                    *size += 1;
                }
            }
        }
        sizes
    }

    fn balance(&mut self) {
        let mut sizes = self.class_sizes();
        loop {
            let (big, &hi) = sizes.iter().enumerate().max_by_key(|&(c, s)| (*s, std::cmp::Reverse(c))).unwrap();
            let (small, &lo) = sizes.iter().enumerate().min_by_key(|&(c, s)| (*s, c)).unwrap();
            if hi <= lo + 1 {
                return;
            }
            // some big/small path component has one more `big` edge than
            // `small` edges; both of its ends miss `small`
            let path = (0..self.a + self.b)
                .filter(|&v| self.get(v, big).is_some() && self.get(v, small).is_none())
                .map(|v| self.alternating_path(v, big, small))
                .find(|p| p.len() % 2 == 0)
                .expect("an alternating path with surplus edges exists");
            self.swap_path(&path, big, small);
            sizes[big] -= 1;
            sizes[small] += 1;
        }
    }

    fn finish(self) -> EdgeColoring {
        let mut colors = vec![None; self.a * self.b];
        for i in 0..self.a {
            for c in 0..self.k {
                if let Some(v) = self.get(i, c) {
                    colors[i * self.b + (v - self.a)] = Some(c);
                }
            }
        }
        EdgeColoring { a: self.a, b: self.b, k: self.k, colors }
    }
}

/// Proper equitable coloring of the complete bipartite graph `K_{a,b}` with
/// exactly `k` color classes.
pub fn equitable_bipartite_coloring(a: usize, b: usize, k: usize) -> Result<EdgeColoring, ColoringError> {
    let width = a.max(b);
    if k < width {
        return Err(ColoringError::TooFewColors { k, max_degree: width });
    }
    let mut palette = Palette::new(a, b, k);
    for i in 0..a {
        for j in 0..b {
            palette.set(i, a + j, (i + j) % width);
        }
    }
    palette.balance();
    Ok(palette.finish())
}

/// Proper equitable coloring with `k` classes of the bipartite graph on
/// `0..a` × `0..b` with the given edges.
pub fn equitable_coloring_of(
    a: usize,
    b: usize,
    edges: &[(usize, usize)],
    k: usize,
) -> Result<EdgeColoring, ColoringError> {
    let mut left = vec![0usize; a];
    let mut right = vec![0usize; b];
    let mut seen = vec![false; a * b];
    for &(i, j) in edges {
        if i >= a || j >= b {
            return Err(ColoringError::EdgeOutOfRange(i, j));
        }
        if std::mem::replace(&mut seen[i * b + j], true) {
            return Err(ColoringError::DuplicateEdge(i, j));
        }
        left[i] += 1;
        right[j] += 1;
    }
    let max_degree = left.iter().chain(&right).copied().max().unwrap_or(0);
    if k < max_degree {
        return Err(ColoringError::TooFewColors { k, max_degree });
    }
    let mut palette = Palette::new(a, b, k);
    for &(i, j) in edges {
        palette.insert(i, a + j);
    }
    palette.balance();
    Ok(palette.finish())
}
