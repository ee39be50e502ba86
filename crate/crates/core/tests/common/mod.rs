#![allow(dead_code)]

use metricdim::Graph;
use rand::Rng;

const INF: u32 = u32::MAX / 4;

/// Floyd-Warshall over the edge list; independent of the BFS in the library.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn naive_resolves(d: &[Vec<u32>], w: &[usize]) -> bool {
    let reps: Vec<Vec<u32>> = (0..d.len()).map(|v| w.iter().map(|&l| d[v][l]).collect()).collect();
    let mut sorted = reps.clone();
    sorted.sort();
    sorted.dedup();
    sorted.len() == reps.len()
}

/// Smallest k such that some k-subset resolves, by increasing cardinality.
pub fn naive_metric_dimension(g: &Graph) -> usize {
    let d = floyd_warshall(g);
    let n = g.order();
    for k in 0..=n {
        let mut found = false;
        for_each_subset(n, k, |w| {
            if !found && naive_resolves(&d, w) {
                found = true;
            }
        });
        if found {
            return k;
        }
    }
    unreachable!("the full vertex set resolves")
}

pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), &mut f);
}

/// Random connected graph: a random spanning tree plus independent extra edges.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) && !edges.contains(&(u, v)) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges, None).unwrap()
}

/// Partitions of `n` into parts >= `min`, non-decreasing.
pub fn partitions(n: usize, min: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in min..=n {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Valid multi-cycle partitions of `n` (parts >= 2, connected host).
pub fn host_partitions(n: usize) -> Vec<Vec<usize>> {
    partitions(n, 2)
        .into_iter()
        .filter(|p| metricdim::FamilySpec::MultiCycle { parts: p.clone() }.validate().is_ok())
        .collect()
}
