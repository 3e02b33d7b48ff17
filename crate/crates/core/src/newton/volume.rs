//! Exact volume of rational polytopes given by vertices (or any spanning point set).

use num_traits::{Signed, Zero};

use super::homogenized_facets;
use crate::linalg;
use crate::rat::{self, Rat};

/// `Vol_n(conv(points))`, exact. Lower-dimensional hulls have volume 0.
pub fn polytope_volume(points: &[Vec<Rat>]) -> Rat {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let Some(n) = pts.first().map(Vec::len) else {
        return Rat::zero();
    };
    if n == 1 {
        let lo = pts.iter().map(|p| &p[0]).min().unwrap();
        let hi = pts.iter().map(|p| &p[0]).max().unwrap();
        return hi - lo;
    }
    let lifted: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| std::iter::once(Rat::from_integer(1.into())).chain(p.iter().cloned()).collect())
        .collect();
    if linalg::rank(&lifted) < n + 1 {
        return Rat::zero();
    }
    let facets = homogenized_facets(&pts, &[]).expect("full-dimensional hull");
    let apex = &pts[0];
    let mut vol = Rat::zero();
    for (y0, y) in facets {
        let height = (&y0 + rat::dot(&y, apex)).abs();
        if height.is_zero() {
            continue;
        }
        let j = y.iter().position(|c| !c.is_zero()).expect("nonzero facet normal");
        let projected: Vec<Vec<Rat>> = pts
            .iter()
            .filter(|p| (&y0 + rat::dot(&y, p)).is_zero())
            .map(|p| p.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, c)| c.clone()).collect())
            .collect();
        vol += height * polytope_volume(&projected) / y[j].abs() / Rat::from_integer((n as i64).into());
    }
    vol
}
