//! All graphs on few vertices, up to isomorphism, and two cograph tests.

use twinreduce_core::Graph;

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..n {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

/// One graph per isomorphism class on `n` vertices (`n ≤ 7`), each the
/// representative with the smallest edge mask.
pub fn nonisomorphic(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "enumeration is limited to 7 vertices");
    let pairs = pair_index(n);
    let m = pairs.len();
    let mut slot = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        slot[u][v] = i;
        slot[v][u] = i;
    }
    // image of every pair index under every permutation
    let maps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| slot[p[u]][p[v]]).collect())
        .collect();
    let mut seen = vec![false; 1 << m];
    let mut out = Vec::new();
    for mask in 0u64..1 << m {
        if seen[mask as usize] {
            continue;
        }
        for map in &maps {
            let mut img = 0u64;
            for (i, &j) in map.iter().enumerate() {
                img |= (mask >> i & 1) << j;
            }
            seen[img as usize] = true;
        }
        out.push(from_mask(n, &pairs, mask));
    }
    out
}

/// Brute force over all 4-sets: no induced `P4`.
pub fn is_p4_free(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let vs = [a, b, c, d];
                    let mut deg = [0; 4];
                    let mut m = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if g.has_edge(vs[i], vs[j]) {
                                deg[i] += 1;
                                deg[j] += 1;
                                m += 1;
                            }
                        }
                    }
                    deg.sort_unstable();
                    if m == 3 && deg == [1, 1, 2, 2] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Recursive test: a graph on two or more vertices is a cograph iff it or its
/// complement is disconnected and every piece is a cograph.
pub fn is_cograph(g: &Graph) -> bool {
    if g.n() <= 1 {
        return true;
    }
    let mut comps = g.components();
    if comps.len() == 1 {
        let c = g.complement();
        comps = c.components();
        if comps.len() == 1 {
            return false;
        }
    }
    comps.iter().all(|c| is_cograph(&g.induced(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| nonisomorphic(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        let connected = nonisomorphic(6).iter().filter(|g| g.is_connected()).count();
        assert_eq!(connected, 112);
    }

    #[test]
    fn cographs() {
        assert!(!is_p4_free(&Graph::path(4)));
        assert!(!is_cograph(&Graph::path(4)));
        assert!(is_cograph(&Graph::cycle(4)));
        assert!(!is_cograph(&Graph::cycle(5)));
        for g in nonisomorphic(5) {
            assert_eq!(is_cograph(&g), is_p4_free(&g));
        }
    }
}
