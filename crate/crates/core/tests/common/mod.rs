#![allow(dead_code)]

use sphdesign::{rat, GramMatrix, VectorSet};

/// Minimal vectors of A2 in the root basis.
pub fn hexagon() -> VectorSet {
    let g = GramMatrix::from_integers(&[[2, 1], [1, 2]]).unwrap();
    let v = vec![vec![1, 0], vec![0, 1], vec![1, -1], vec![-1, 0], vec![0, -1], vec![-1, 1]];
    VectorSet::new(g, rat(2, 1), v).unwrap()
}

/// `±e_i` in `Z^n`.
pub fn cross_polytope(n: usize) -> VectorSet {
    let mut v = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut e = vec![0; n];
            e[i] = s;
            v.push(e);
        }
    }
    VectorSet::new(GramMatrix::identity(n), rat(1, 1), v).unwrap()
}

pub fn octahedron() -> VectorSet {
    cross_polytope(3)
}
