use serde::Serialize;

use super::Tournament;

/// Strongly connected components `V_1, …, V_k` of a tournament.
///
/// Components are ordered losers first: for `x ∈ V_i`, `y ∈ V_j` with `i < j`
/// the arc is `y → x`. `V_1` is the sink of the condensation. Vertices inside
/// each component are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SccDecomposition {
    pub components: Vec<Vec<usize>>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Component index of every vertex.
    pub fn component_index(&self) -> Vec<usize> {
        let n = self.components.iter().map(Vec::len).sum();
        let mut index = vec![0; n];
        for (c, vertices) in self.components.iter().enumerate() {
            for &v in vertices {
                index[v] = c;
            }
        }
        index
    }
}

const UNVISITED: usize = usize::MAX;

/// Tarjan's algorithm, iterative so that large generated instances do not
/// exhaust the call stack. Tarjan emits components in reverse topological
/// order of the condensation, which is exactly the losers-first order.
pub fn scc_decompose(t: &Tournament) -> SccDecomposition {
    let n = t.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, 0));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            match t.adj.next_in_row(v, frame.1) {
                Some(w) => {
                    frame.1 = w + 1;
                    if index[w] == UNVISITED {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                }
                None => {
                    frames.pop();
                    if low[v] == index[v] {
                        let mut component = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w] = false;
                            component.push(w);
                            if w == v {
                                break;
                            }
                        }
                        component.sort_unstable();
                        components.push(component);
                    }
                    if let Some(parent) = frames.last() {
                        low[parent.0] = low[parent.0].min(low[v]);
                    }
                }
            }
        }
    }
    SccDecomposition { components }
}
