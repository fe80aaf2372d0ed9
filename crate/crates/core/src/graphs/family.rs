use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Clique(usize),
    Biclique(usize, usize),
    Path(usize),
    /// The graphs `G_n` (n ≥ 3) whose proper subgraphs are all grid
    /// visibility graphs while `G_n` itself is not.
    Gn(usize),
    RandomTree { n: usize, max_degree: usize, seed: u64 },
}

fn bad(msg: &str) -> GraphError {
    GraphError::BadParameter(msg.to_string())
}

pub fn generate_family(spec: &Family) -> Result<Graph, GraphError> {
    match *spec {
        Family::Cycle(i) => {
            if i < 3 {
                return Err(bad("cycle needs at least 3 vertices"));
            }
            let edges: Vec<_> = (0..i).map(|k| (k, (k + 1) % i)).collect();
            Graph::from_edges(i, &edges)
        }
        Family::Clique(i) => {
            if i < 1 {
                return Err(bad("clique needs at least 1 vertex"));
            }
            let mut g = Graph::new(i);
            for u in 0..i {
                for v in u + 1..i {
                    g.add_edge(u, v)?;
                }
            }
            Ok(g)
        }
        Family::Biclique(a, b) => {
            if a < 1 || b < 1 {
                return Err(bad("biclique sides need at least 1 vertex"));
            }
            let mut g = Graph::new(a + b);
            for u in 0..a {
                for v in 0..b {
                    g.add_edge(u, a + v)?;
                }
            }
            Ok(g)
        }
        Family::Path(i) => {
            if i < 1 {
                return Err(bad("path needs at least 1 vertex"));
            }
            let edges: Vec<_> = (1..i).map(|k| (k - 1, k)).collect();
            Graph::from_edges(i, &edges)
        }
        Family::Gn(n) => gn(n),
        Family::RandomTree { n, max_degree, seed } => random_tree(n, max_degree, seed),
    }
}

/// Vertices `u_1..u_n` are `0..n`, `v_2..v_n` are `n..2n-1`, `w` is `2n-1`.
fn gn(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(bad("G_n needs n >= 3"));
    }
    let u = |i: usize| i - 1;
    let v = |i: usize| n + i - 2;
    let w = 2 * n - 1;
    let mut g = Graph::new(2 * n);
    for i in 1..=n {
        g.set_label(u(i), format!("u_{i}"));
    }
    for i in 2..=n {
        g.set_label(v(i), format!("v_{i}"));
    }
    g.set_label(w, "w");
    for i in 2..n {
        g.add_edge(u(i), u(i + 1))?;
        g.add_edge(v(i), v(i + 1))?;
        g.add_edge(u(i), v(i))?;
    }
    g.add_edge(u(1), u(2))?;
    g.add_edge(u(n), v(n))?;
    g.add_edge(u(1), w)?;
    g.add_edge(v(n), w)?;
    Ok(g)
}

/// Each new vertex attaches to a uniformly chosen earlier vertex that still
/// has spare degree.
fn random_tree(n: usize, max_degree: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(bad("tree needs at least 1 vertex"));
    }
    if n > 2 && max_degree < 2 {
        return Err(bad("trees with more than 2 vertices need max degree >= 2"));
    }
    if n == 2 && max_degree < 1 {
        return Err(bad("an edge needs max degree >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| g.degree(u) < max_degree).collect();
        let p = open[rng.random_range(0..open.len())];
        g.add_edge(p, v)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gn_sizes() {
        for n in 3..8 {
            let g = gn(n).unwrap();
            assert_eq!(g.n(), 2 * n);
            assert_eq!(g.edge_count(), 3 * n - 2);
        }
        assert_eq!(gn(3).unwrap().edge_count(), 7);
        assert!(gn(2).is_err());
    }

    #[test]
    fn basic_families() {
        assert_eq!(generate_family(&Family::Biclique(2, 3)).unwrap().edge_count(), 6);
        let c5 = generate_family(&Family::Cycle(5)).unwrap();
        assert!((0..5).all(|v| c5.degree(v) == 2));
        assert_eq!(generate_family(&Family::Clique(5)).unwrap().edge_count(), 10);
    }

    #[test]
    fn random_trees_respect_degree() {
        for seed in 0..50 {
            let t = random_tree(12, 3, seed).unwrap();
            assert!(t.is_tree());
            assert!(t.max_degree() <= 3);
        }
        assert_eq!(random_tree(9, 4, 7).unwrap(), random_tree(9, 4, 7).unwrap());
    }
}
