use std::collections::BTreeSet;
use std::sync::Arc;

use gkm::curves::CurveLattice;
use gkm::graph::construct;

fn pairs_and_doubles(lat: &CurveLattice, beta: &[i64]) -> BTreeSet<Vec<u32>> {
    let m = lat.graph().num_edges();
    let mut out = BTreeSet::new();
    for a in 0..m {
        for b in a..m {
            let mut d = vec![0u32; m];
            d[a] += 1;
            d[b] += 1;
            if lat.class_of(&d) == beta {
                out.insert(d);
            }
        }
    }
    out
}

#[test]
fn conics_in_the_plane() {
    let lat = CurveLattice::new(Arc::new(construct::projective_space(2))).unwrap();
    let got: BTreeSet<Vec<u32>> = lat.effective_decompositions(&[2]).unwrap().into_iter().collect();
    assert_eq!(got.len(), 6);
    assert_eq!(got, pairs_and_doubles(&lat, &[2]));
}

#[test]
fn multiple_covers_of_the_line() {
    let lat = CurveLattice::new(Arc::new(construct::projective_space(1))).unwrap();
    for d in 0..6u32 {
        assert_eq!(lat.effective_decompositions(&[d as i64]).unwrap(), vec![vec![d]]);
    }
}

// Every edge of the product is an edge of one factor times a fixed point of the other,
// so (1,1) is hit by one edge from each of the 6·12 = 72 copies of each factor's edges.
#[test]
fn bidegree_one_one_on_grassmannian_square() {
    let g = construct::grassmannian(2, 4).unwrap();
    let lat = CurveLattice::new(Arc::new(construct::product(&g, &g))).unwrap();
    let got: BTreeSet<Vec<u32>> = lat.effective_decompositions(&[1, 1]).unwrap().into_iter().collect();
    let want = pairs_and_doubles(&lat, &[1, 1]);
    assert_eq!(want.len(), 72 * 72);
    assert_eq!(got, want);
}
