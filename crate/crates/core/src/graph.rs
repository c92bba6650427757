//! Small directed-graph utilities over adjacency lists.

use std::collections::VecDeque;

/// Strongly connected components of the subgraph induced by `alive`
/// (iterative Tarjan). Components come out in reverse topological order.
pub fn sccs(adj: &[Vec<u32>], alive: &[bool]) -> Vec<Vec<u32>> {
    let n = adj.len();
    const UNSEEN: u32 = u32::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0u32;
    let mut call: Vec<(u32, usize)> = Vec::new();

    for root in 0..n {
        if !alive[root] || index[root] != UNSEEN {
            continue;
        }
        call.push((root as u32, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root as u32);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            let v = v as usize;
            if let Some(&w) = adj[v].get(*i) {
                *i += 1;
                let w = w as usize;
                if !alive[w] {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    call.push((w as u32, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(u, _)) = call.last() {
                let u = u as usize;
                low[u] = low[u].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w as usize] = false;
                    comp.push(w);
                    if w as usize == v {
                        break;
                    }
                }
                out.push(comp);
            }
        }
    }
    out
}

/// A component carries a cycle: more than one node, or a self-loop.
pub fn nontrivial(adj: &[Vec<u32>], comp: &[u32]) -> bool {
    comp.len() > 1 || adj[comp[0] as usize].contains(&comp[0])
}

/// Nodes reachable from `sources` inside `alive`.
pub fn reachable(adj: &[Vec<u32>], alive: &[bool], sources: &[u32]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue: VecDeque<u32> = VecDeque::new();
    for &s in sources {
        if alive[s as usize] && !seen[s as usize] {
            seen[s as usize] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v as usize] {
            if alive[w as usize] && !seen[w as usize] {
                seen[w as usize] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Shortest path (as a node list, both ends included) from any source to
/// `target` inside `alive`. A path of length zero is allowed when
/// `nonempty` is false.
pub fn path(adj: &[Vec<u32>], alive: &[bool], sources: &[u32], target: u32, nonempty: bool) -> Option<Vec<u32>> {
    let n = adj.len();
    let mut pred = vec![u32::MAX; n];
    let mut seen = vec![false; n];
    let mut seed_src = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    if nonempty {
        // seed with successors of the sources so the target may equal a source
        for &s in sources {
            for &w in &adj[s as usize] {
                if alive[w as usize] && !seen[w as usize] {
                    seen[w as usize] = true;
                    seed_src[w as usize] = s;
                    queue.push_back(w);
                }
            }
        }
    } else {
        for &s in sources {
            if alive[s as usize] && !seen[s as usize] {
                seen[s as usize] = true;
                queue.push_back(s);
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        if v == target {
            let mut out = vec![v];
            let mut cur = v;
            while pred[cur as usize] != u32::MAX {
                cur = pred[cur as usize];
                out.push(cur);
            }
            if seed_src[cur as usize] != u32::MAX {
                out.push(seed_src[cur as usize]);
            }
            out.reverse();
            return Some(out);
        }
        for &w in &adj[v as usize] {
            if alive[w as usize] && !seen[w as usize] {
                seen[w as usize] = true;
                pred[w as usize] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// A closed walk from `comp[0]` back to itself visiting every node of the
/// strongly connected, nontrivial component `comp`. Returned without the
/// starting node, ending with it.
pub fn covering_cycle(adj: &[Vec<u32>], comp: &[u32]) -> Vec<u32> {
    let mut inside = vec![false; adj.len()];
    for &v in comp {
        inside[v as usize] = true;
    }
    let start = comp[0];
    let mut walk = Vec::new();
    let mut cur = start;
    for &t in comp.iter().skip(1).chain(std::iter::once(&start)) {
        let seg = path(adj, &inside, &[cur], t, t == cur).expect("component is strongly connected");
        walk.extend_from_slice(&seg[1..]);
        cur = t;
    }
    if walk.is_empty() {
        walk.push(start);
    }
    walk
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_components() {
        // 0 <-> 1 -> 2 (self loop), 3 isolated
        let adj = vec![vec![1], vec![0, 2], vec![2], vec![]];
        let mut comps = sccs(&adj, &[true; 4]);
        comps.iter_mut().for_each(|c| c.sort());
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1], vec![2], vec![3]]);
        assert!(nontrivial(&adj, &[2]));
        assert!(!nontrivial(&adj, &[3]));
    }

    #[test]
    fn covering_cycle_is_closed_and_complete() {
        let adj = vec![vec![1], vec![2], vec![0, 1]];
        let comp = vec![0, 1, 2];
        let walk = covering_cycle(&adj, &comp);
        assert_eq!(*walk.last().unwrap(), 0);
        let mut prev = 0;
        for &v in &walk {
            assert!(adj[prev as usize].contains(&v));
            prev = v;
        }
        for v in comp {
            assert!(walk.contains(&v));
        }
    }

    #[test]
    fn self_loop_cycle() {
        let adj = vec![vec![0]];
        assert_eq!(covering_cycle(&adj, &[0]), vec![0]);
        assert_eq!(path(&adj, &[true], &[0], 0, true), Some(vec![0, 0]));
    }
}
