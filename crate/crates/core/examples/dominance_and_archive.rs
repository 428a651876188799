//! Pareto dominance and the GSEMO archive update rule.

use mt_submod::prelude::*;

fn main() {
    let a = ObjectiveVector::new(3.0, vec![2]);
    let b = ObjectiveVector::new(2.0, vec![2]);
    let c = ObjectiveVector::new(3.0, vec![5]);
    println!("(3,-2) vs (2,-2): {:?}", dominance(&a, &b).unwrap());
    println!("(3,-2) vs (3,-2): {:?}", dominance(&a, &a).unwrap());
    println!("(3,-5) vs (2,-2): {:?}", dominance(&c, &b).unwrap());

    let mut archive = Population::new();
    let pt = |bits: u64| BitString::from_mask(6, bits);
    for (x, f, cost) in [(0b000001, 2.0, 1), (0b000011, 4.0, 2), (0b000010, 2.0, 1), (0b000111, 3.0, 3), (0b001000, 1.0, 0)] {
        let outcome = archive.add(pt(x), ObjectiveVector::new(f, vec![cost]));
        println!("offer {} f={f} c={cost}: {outcome:?}, archive size {}", pt(x), archive.len());
    }
    archive.check_invariants().unwrap();
    for m in archive.iter() {
        println!("  {} -> {:?}", m.x, m.fitness.values());
    }
}
