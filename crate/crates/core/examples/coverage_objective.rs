//! Maximum coverage on a small graph: evaluation, marginal gains, and the
//! incremental cover-count route.

use mt_submod::prelude::*;

fn main() {
    // 0 - 1 - 2 - 3 - 4, plus a pendant 5 on vertex 1
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]).unwrap();
    let f = CoverageObjective::from_graph(&g);
    for v in 0..6 {
        println!("N[{v}] = {:?}", f.closed_neighborhood(v));
    }

    let x = BitString::from_indices(6, [1]).unwrap();
    println!("f({x}) = {}", f.evaluate(&x).unwrap());
    for j in [0, 3, 4] {
        println!("gain of {j} on {x}: {}", f.marginal_gain(&x, j).unwrap());
    }

    let mut state = f.init_state(&x);
    f.insert(&mut state, 3);
    let y = BitString::from_indices(6, [1, 3]).unwrap();
    println!("incremental f({y}) = {}, recomputed = {}", f.state_value(&state), f.value(&y));
}
