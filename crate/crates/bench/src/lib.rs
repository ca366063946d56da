//! Fixtures shared by the benchmarks.

use qpforge::families::{build_d, potential_d_on};
use qpforge::jacobian::default_degree_cap;
use qpforge::{compute_algebra, JacobianAlgebra, Potential, Quiver};

pub fn qp_d(s: usize) -> (Quiver, Potential) {
    let q = build_d(s).expect("s >= 2");
    let w = potential_d_on(&q);
    (q, w)
}

pub fn pi_d(s: usize) -> JacobianAlgebra {
    let (q, w) = qp_d(s);
    compute_algebra(&q, &w, default_degree_cap(s)).expect("finite dimensional")
}
