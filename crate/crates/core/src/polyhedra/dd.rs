//! Double description: generators of a polyhedral cone `{z : Gz ≤ 0}`.
//!
//! The iteration starts from the whole space (every unit vector a line) and
//! intersects one half-space at a time. A constraint that is not identically
//! zero on the current lineality consumes a line; otherwise rays are split
//! by sign and adjacent positive/negative pairs are combined. Adjacency uses
//! the combinatorial test on zero sets, which is exact because the ray set
//! stays minimal.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{RVector, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ConeGenerators {
    /// basis of the lineality space
    pub lines: Vec<RVector>,
    /// extreme rays modulo the lineality space, primitive integer vectors
    pub rays: Vec<RVector>,
}

struct Ray {
    dir: RVector,
    zeros: FixedBitSet,
}

pub(crate) fn cone_generators(ambient: usize, constraints: &[RVector], budget: usize) -> Result<ConeGenerators> {
    let m = constraints.len();
    let mut lines: Vec<RVector> = (0..ambient).map(|i| RVector::unit(ambient, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (i, g) in constraints.iter().enumerate() {
        g.check_dim(ambient)?;
        if let Some(li) = lines.iter().position(|l| !g.dot(l).is_zero()) {
            let l = lines.swap_remove(li);
            let gl = g.dot(&l);
            for other in lines.iter_mut() {
                let s = g.dot(other);
                if !s.is_zero() {
                    *other = other.add_scaled(&(-s / &gl), &l).primitive();
                }
            }
            for r in rays.iter_mut() {
                let s = g.dot(&r.dir);
                if !s.is_zero() {
                    r.dir = r.dir.add_scaled(&(-s / &gl), &l).primitive();
                }
                r.zeros.insert(i);
            }
            let dir = if gl.is_positive() { -&l } else { l };
            let mut zeros = FixedBitSet::with_capacity(m);
            zeros.insert_range(..i);
            rays.push(Ray { dir: dir.primitive(), zeros });
            continue;
        }

        let signs: Vec<Rational> = rays.iter().map(|r| g.dot(&r.dir)).collect();
        if signs.iter().all(|s| !s.is_positive()) {
            for (r, s) in rays.iter_mut().zip(&signs) {
                if s.is_zero() {
                    r.zeros.insert(i);
                }
            }
            continue;
        }

        let pos: Vec<usize> = (0..rays.len()).filter(|&j| signs[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| signs[j].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                let blocked = (0..rays.len())
                    .any(|o| o != p && o != n && common.is_subset(&rays[o].zeros));
                if blocked {
                    continue;
                }
                // s_p · n − s_n · p lies on the new hyperplane with positive weights
                let dir = rays[n].dir.scale(&signs[p]).add_scaled(&-signs[n].clone(), &rays[p].dir).primitive();
                common.insert(i);
                next.push(Ray { dir, zeros: common });
                if next.len() + rays.len() + lines.len() > budget {
                    return Err(Error::DimensionTooLarge { dimension: ambient, budget });
                }
            }
        }
        for (j, mut r) in rays.into_iter().enumerate() {
            if signs[j].is_positive() {
                continue;
            }
            if signs[j].is_zero() {
                r.zeros.insert(i);
            }
            next.push(r);
        }
        rays = next;
        if rays.len() + lines.len() > budget {
            return Err(Error::DimensionTooLarge { dimension: ambient, budget });
        }
    }

    let mut seen = HashSet::new();
    let rays = rays.into_iter().map(|r| r.dir).filter(|d| !d.is_zero() && seen.insert(d.clone())).collect();
    Ok(ConeGenerators { lines, rays })
}
