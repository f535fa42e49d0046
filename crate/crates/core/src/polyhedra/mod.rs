//! Convex polyhedra in H- and V-representation.
//!
//! `{x : ⟨aᵢ, x⟩ ≤ bᵢ}` on one side, `conv(points) + cone(rays)` on the
//! other. Conversion between the two goes through the homogenized cone and
//! [`dd::cone_generators`]; lines of a V-representation are stored as a pair
//! of opposite rays.

mod dd;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, RVector, Rational};
use crate::lp::{maximize, solve_lp, LinearProgram, LpOutcome};

pub(crate) use dd::cone_generators;

/// Generator budget used when none is given explicitly.
pub const DEFAULT_DD_BUDGET: usize = 10_000;

/// `⟨normal, x⟩ ≤ offset`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub normal: RVector,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: RVector, offset: Rational) -> Self {
        HalfSpace { normal, offset }
    }

    pub fn contains(&self, x: &RVector) -> bool {
        self.normal.dot(x) <= self.offset
    }
}

/// `conv(points) + cone(rays)`
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Generators {
    pub points: Vec<RVector>,
    pub rays: Vec<RVector>,
}

impl Generators {
    pub fn new(points: Vec<RVector>, rays: Vec<RVector>) -> Self {
        Generators { points, rays }
    }

    /// Drops every point in the hull of the others plus the cone, and every
    /// ray in the cone of the other rays. Decided one generator at a time by
    /// LP feasibility.
    pub fn irredundant(&self) -> Result<Generators> {
        let mut rays = self.rays.iter().filter(|r| !r.is_zero()).cloned().collect::<Vec<_>>();
        let mut i = 0;
        while i < rays.len() {
            let others: Vec<RVector> = rays.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect();
            if in_cone(&others, &rays[i])? {
                rays.remove(i);
            } else {
                i += 1;
            }
        }
        let mut points = self.points.clone();
        let mut i = 0;
        while i < points.len() {
            let others: Vec<RVector> = points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            if !others.is_empty() && in_hull(&others, &rays, &points[i])? {
                points.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(Generators { points, rays })
    }
}

/// Whether `x ∈ cone(rays)`.
pub(crate) fn in_cone(rays: &[RVector], x: &RVector) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    if rays.is_empty() {
        return Ok(false);
    }
    let n = x.dim();
    let k = rays.len();
    let mut lp = LinearProgram::new(k);
    for j in 0..k {
        lp.ge(RVector::unit(k, j), Rational::zero());
    }
    for d in 0..n {
        lp.equals(rays.iter().map(|r| r[d].clone()).collect(), x[d].clone());
    }
    Ok(solve_lp(&lp)?.is_feasible())
}

/// Whether `x ∈ conv(points) + cone(rays)`.
pub(crate) fn in_hull(points: &[RVector], rays: &[RVector], x: &RVector) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    let n = x.dim();
    let k = points.len() + rays.len();
    let mut lp = LinearProgram::new(k);
    for j in 0..k {
        lp.ge(RVector::unit(k, j), Rational::zero());
    }
    lp.equals((0..k).map(|j| if j < points.len() { Rational::one() } else { Rational::zero() }).collect(), Rational::one());
    for d in 0..n {
        lp.equals(points.iter().chain(rays).map(|g| g[d].clone()).collect(), x[d].clone());
    }
    Ok(solve_lp(&lp)?.is_feasible())
}

/// A convex polyhedron carrying at least one representation. When both are
/// present they describe the same set.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    dim: usize,
    hrep: Option<Vec<HalfSpace>>,
    vrep: Option<Generators>,
}

impl Polyhedron {
    pub fn from_hrep(dim: usize, rows: Vec<HalfSpace>) -> Result<Self> {
        for r in &rows {
            r.normal.check_dim(dim)?;
        }
        Ok(Polyhedron { dim, hrep: Some(rows), vrep: None })
    }

    pub fn from_vrep(dim: usize, points: Vec<RVector>, rays: Vec<RVector>) -> Result<Self> {
        for g in points.iter().chain(&rays) {
            g.check_dim(dim)?;
        }
        Ok(Polyhedron { dim, hrep: None, vrep: Some(Generators { points, rays }) })
    }

    /// Both representations at once; rejected unless they describe the same
    /// set (mutual containment).
    pub fn from_reps(dim: usize, rows: Vec<HalfSpace>, generators: Generators) -> Result<Self> {
        let h = Polyhedron::from_hrep(dim, rows)?;
        let v = Polyhedron::from_vrep(dim, generators.points, generators.rays)?;
        if !h.contains(&v)? || !v.contains(&h)? {
            return Err(Error::InconsistentRepresentations);
        }
        Ok(Polyhedron { dim, hrep: h.hrep, vrep: v.vrep })
    }

    /// The polyhedral cone `cone(rays)`.
    pub fn cone(dim: usize, rays: Vec<RVector>) -> Result<Self> {
        Self::from_vrep(dim, vec![RVector::zeros(dim)], rays)
    }

    pub fn whole_space(dim: usize) -> Self {
        Polyhedron { dim, hrep: Some(Vec::new()), vrep: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hrep(&self) -> Option<&[HalfSpace]> {
        self.hrep.as_deref()
    }

    pub fn vrep(&self) -> Option<&Generators> {
        self.vrep.as_ref()
    }

    /// Fills in the missing representation. The V-representation returned
    /// is minimal: points are the minimal-face representatives (vertices when
    /// the set is pointed) and rays are extreme.
    pub fn dd_convert(&self) -> Result<Polyhedron> {
        self.dd_convert_with_budget(DEFAULT_DD_BUDGET)
    }

    pub fn dd_convert_with_budget(&self, budget: usize) -> Result<Polyhedron> {
        match (&self.hrep, &self.vrep) {
            (Some(_), Some(_)) => Ok(self.clone()),
            (Some(rows), None) => {
                let vrep = hrep_to_vrep(self.dim, rows, budget)?;
                Ok(Polyhedron { dim: self.dim, hrep: Some(rows.clone()), vrep: Some(vrep) })
            }
            (None, Some(g)) => {
                let hrep = vrep_to_hrep(self.dim, g, budget)?;
                Ok(Polyhedron { dim: self.dim, hrep: Some(hrep), vrep: Some(g.clone()) })
            }
            (None, None) => unreachable!("polyhedron without representation"),
        }
    }

    pub fn hrep_or_convert(&self, budget: usize) -> Result<Vec<HalfSpace>> {
        match &self.hrep {
            Some(h) => Ok(h.clone()),
            None => vrep_to_hrep(self.dim, self.vrep.as_ref().expect("some representation"), budget),
        }
    }

    pub fn vrep_or_convert(&self, budget: usize) -> Result<Generators> {
        match &self.vrep {
            Some(v) => Ok(v.clone()),
            None => hrep_to_vrep(self.dim, self.hrep.as_ref().expect("some representation"), budget),
        }
    }

    fn hrep_program(&self, rows: &[HalfSpace]) -> LinearProgram {
        let mut lp = LinearProgram::new(self.dim);
        for r in rows {
            lp.le(r.normal.clone(), r.offset.clone());
        }
        lp
    }

    pub fn is_empty(&self) -> Result<bool> {
        if let Some(v) = &self.vrep {
            return Ok(v.points.is_empty());
        }
        let lp = self.hrep_program(self.hrep.as_ref().expect("some representation"));
        Ok(!solve_lp(&lp)?.is_feasible())
    }

    pub fn contains_point(&self, x: &RVector) -> Result<bool> {
        x.check_dim(self.dim)?;
        if let Some(rows) = &self.hrep {
            return Ok(rows.iter().all(|r| r.contains(x)));
        }
        let v = self.vrep.as_ref().expect("some representation");
        in_hull(&v.points, &v.rays, x)
    }

    /// `sup ⟨c, x⟩` over the set; `None` when unbounded above.
    pub fn support(&self, c: &RVector) -> Result<Option<Rational>> {
        c.check_dim(self.dim)?;
        if let Some(v) = &self.vrep {
            if v.points.is_empty() {
                return Err(Error::EmptyPolyhedron);
            }
            if v.rays.iter().any(|r| c.dot(r).is_positive()) {
                return Ok(None);
            }
            return Ok(crate::exact::max_of(&v.points.iter().map(|p| c.dot(p)).collect::<Vec<_>>()));
        }
        let lp = self.hrep_program(self.hrep.as_ref().expect("some representation"));
        match maximize(&lp, c)? {
            LpOutcome::Optimal { value, .. } => Ok(Some(value)),
            LpOutcome::Unbounded => Ok(None),
            LpOutcome::Infeasible => Err(Error::EmptyPolyhedron),
        }
    }

    /// `{d : x + t·d ∈ P for all x ∈ P, t ≥ 0}`
    pub fn recession_cone(&self) -> Result<Polyhedron> {
        if self.is_empty()? {
            return Err(Error::EmptyPolyhedron);
        }
        if let Some(rows) = &self.hrep {
            let rows = rows.iter().map(|r| HalfSpace::new(r.normal.clone(), Rational::zero())).collect();
            return Polyhedron::from_hrep(self.dim, rows);
        }
        let v = self.vrep.as_ref().expect("some representation");
        Polyhedron::cone(self.dim, v.rays.clone())
    }

    /// Whether `inner ⊆ self`, by maximizing each row of `self` over `inner`.
    pub fn contains(&self, inner: &Polyhedron) -> Result<bool> {
        inner_dim_check(self, inner)?;
        if inner.is_empty()? {
            return Ok(true);
        }
        let rows = self.hrep_or_convert(DEFAULT_DD_BUDGET)?;
        for r in &rows {
            match inner.support(&r.normal)? {
                None => return Ok(false),
                Some(s) if s > r.offset => return Ok(false),
                Some(_) => {}
            }
        }
        Ok(true)
    }

    pub fn same_set(&self, other: &Polyhedron) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }
}

fn inner_dim_check(a: &Polyhedron, b: &Polyhedron) -> Result<()> {
    if a.dim == b.dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: a.dim, found: b.dim })
    }
}

pub fn dd_convert(p: &Polyhedron) -> Result<Polyhedron> {
    p.dd_convert()
}

pub fn recession_cone(p: &Polyhedron) -> Result<Polyhedron> {
    p.recession_cone()
}

pub fn polyhedron_contains(outer: &Polyhedron, inner: &Polyhedron) -> Result<bool> {
    outer.contains(inner)
}

fn hrep_to_vrep(dim: usize, rows: &[HalfSpace], budget: usize) -> Result<Generators> {
    // z = (x, λ): ⟨a, x⟩ − bλ ≤ 0 and λ ≥ 0, the latter processed first.
    let mut cons = vec![RVector::unit(dim + 1, dim).scale(&int(-1))];
    cons.extend(rows.iter().map(|r| r.normal.concat(&RVector::new(vec![-r.offset.clone()]))));
    let cone = cone_generators(dim + 1, &cons, budget)?;

    let mut points = Vec::new();
    let mut rays = Vec::new();
    for r in &cone.rays {
        let lambda = &r[dim];
        let x: RVector = r.coords()[..dim].iter().cloned().collect();
        if lambda.is_positive() {
            points.push(x.scale(&lambda.recip()));
        } else {
            rays.push(x);
        }
    }
    if points.is_empty() {
        return Ok(Generators::default());
    }
    for l in &cone.lines {
        debug_assert!(l[dim].is_zero());
        let x: RVector = l.coords()[..dim].iter().cloned().collect();
        rays.push(-&x);
        rays.push(x);
    }
    Ok(Generators { points, rays })
}

fn vrep_to_hrep(dim: usize, g: &Generators, budget: usize) -> Result<Vec<HalfSpace>> {
    if g.points.is_empty() {
        return Ok(vec![HalfSpace::new(RVector::zeros(dim), int(-1))]);
    }
    let one = RVector::new(vec![Rational::one()]);
    let zero = RVector::new(vec![Rational::zero()]);
    let gens: Vec<RVector> = g.points.iter().map(|p| p.concat(&one)).chain(g.rays.iter().map(|r| r.concat(&zero))).collect();
    // The polar cone's generators are the facets of cone(gens).
    let polar = cone_generators(dim + 1, &gens, budget)?;
    let split = |y: &RVector| -> (RVector, Rational) { (y.coords()[..dim].iter().cloned().collect(), -y[dim].clone()) };
    let mut rows = Vec::new();
    for y in &polar.rays {
        let (a, b) = split(y);
        if !a.is_zero() {
            rows.push(HalfSpace::new(a, b));
        }
    }
    for y in &polar.lines {
        let (a, b) = split(y);
        if !a.is_zero() {
            rows.push(HalfSpace::new(-&a, -b.clone()));
            rows.push(HalfSpace::new(a, b));
        }
    }
    Ok(rows)
}

/// Convenience constructor for `{x : ⟨a, x⟩ ≤ b}` rows from integer data.
pub fn hrep_from_ints(rows: &[(&[i64], i64)]) -> Result<Polyhedron> {
    let dim = rows.first().map_or(0, |r| r.0.len());
    Polyhedron::from_hrep(dim, rows.iter().map(|(a, b)| HalfSpace::new(RVector::from_ints(a), int(*b))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    fn sorted(mut r: Vec<RVector>) -> Vec<RVector> {
        r.sort();
        r
    }

    fn unit_square() -> Polyhedron {
        hrep_from_ints(&[(&[1, 0], 1), (&[-1, 0], 1), (&[0, 1], 1), (&[0, -1], 1)]).unwrap()
    }

    #[test]
    fn square_vertices() {
        let g = unit_square().dd_convert().unwrap().vrep().unwrap().clone();
        assert_eq!(sorted(g.points), vec![v(&[-1, -1]), v(&[-1, 1]), v(&[1, -1]), v(&[1, 1])]);
        assert!(g.rays.is_empty());
    }

    #[test]
    fn half_line() {
        let g = hrep_from_ints(&[(&[1], 1)]).unwrap().dd_convert().unwrap().vrep().unwrap().clone();
        assert_eq!(g.points, vec![v(&[1])]);
        assert_eq!(g.rays, vec![v(&[-1])]);
    }

    #[test]
    fn pointed_cone_in_the_plane() {
        let p = hrep_from_ints(&[(&[1, 0], 0), (&[0, 1], 0), (&[0, -1], 0)]).unwrap();
        let g = p.dd_convert().unwrap().vrep().unwrap().clone();
        assert_eq!(g.points, vec![v(&[0, 0])]);
        assert_eq!(g.rays, vec![v(&[-1, 0])]);
    }

    #[test]
    fn recession_cone_examples() {
        let rec = unit_square().recession_cone().unwrap();
        let g = rec.dd_convert().unwrap().vrep().unwrap().clone();
        assert!(g.rays.is_empty());

        let rec = hrep_from_ints(&[(&[1], 1)]).unwrap().recession_cone().unwrap();
        assert_eq!(rec.hrep().unwrap(), &[HalfSpace::new(v(&[1]), int(0))]);

        let ball = hrep_from_ints(&[(&[1, 0], 1), (&[0, 1], 1), (&[0, -1], 1)]).unwrap();
        let g = ball.recession_cone().unwrap().dd_convert().unwrap().vrep().unwrap().clone();
        assert_eq!(g.rays, vec![v(&[-1, 0])]);

        let empty = hrep_from_ints(&[(&[1], -1), (&[-1], -1)]).unwrap();
        assert!(matches!(empty.recession_cone(), Err(Error::EmptyPolyhedron)));
    }

    #[test]
    fn containment_examples() {
        let big = hrep_from_ints(&[(&[1, 0], 2), (&[-1, 0], 2), (&[0, 1], 2), (&[0, -1], 2)]).unwrap();
        assert!(big.contains(&unit_square()).unwrap());
        assert!(!unit_square().contains(&big).unwrap());

        let half = hrep_from_ints(&[(&[1], 1)]).unwrap();
        let segment = hrep_from_ints(&[(&[1], 1), (&[-1], 1)]).unwrap();
        assert!(!segment.contains(&half).unwrap());
        assert!(half.contains(&segment).unwrap());

        // ball of max{x⁺, |y|} inside the ball of max{|x|, |y|}: the ray escapes
        let ball = hrep_from_ints(&[(&[1, 0], 1), (&[0, 1], 1), (&[0, -1], 1)]).unwrap();
        assert!(!unit_square().contains(&ball).unwrap());
        assert!(!unit_square().contains_point(&v(&[-2, 0])).unwrap());
        assert!(ball.contains_point(&v(&[-2, 0])).unwrap());

        assert!(matches!(unit_square().contains(&half), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn vrep_to_hrep_roundtrip() {
        let tri = Polyhedron::from_vrep(2, vec![v(&[0, 0]), v(&[2, 0]), v(&[0, 2])], vec![]).unwrap();
        let full = tri.dd_convert().unwrap();
        assert_eq!(full.hrep().unwrap().len(), 3);
        assert!(full.contains_point(&v(&[1, 1])).unwrap());
        assert!(!full.contains_point(&v(&[2, 1])).unwrap());
    }

    #[test]
    fn lineality_becomes_opposite_rays() {
        let slab = hrep_from_ints(&[(&[1, 0], 1), (&[-1, 0], 1)]).unwrap();
        let g = slab.dd_convert().unwrap().vrep().unwrap().clone();
        assert_eq!(g.points.len(), 2);
        assert_eq!(sorted(g.rays.clone()), vec![v(&[0, -1]), v(&[0, 1])]);
        let back = Polyhedron::from_vrep(2, g.points, g.rays).unwrap();
        assert!(back.same_set(&slab).unwrap());
    }

    #[test]
    fn lower_dimensional_hull() {
        let seg = Polyhedron::from_vrep(2, vec![v(&[0, -1]), v(&[0, 1])], vec![]).unwrap();
        let rows = seg.hrep_or_convert(DEFAULT_DD_BUDGET).unwrap();
        let back = Polyhedron::from_hrep(2, rows).unwrap();
        assert!(back.same_set(&seg).unwrap());
        assert!(!back.contains_point(&v(&[1, 0])).unwrap());
    }

    #[test]
    fn inconsistent_reps_are_rejected() {
        let rows = unit_square().hrep().unwrap().to_vec();
        let wrong = Generators::new(vec![v(&[0, 0]), v(&[1, 1])], vec![]);
        assert!(matches!(Polyhedron::from_reps(2, rows.clone(), wrong), Err(Error::InconsistentRepresentations)));
        let right = Generators::new(vec![v(&[1, 1]), v(&[1, -1]), v(&[-1, 1]), v(&[-1, -1])], vec![]);
        assert!(Polyhedron::from_reps(2, rows, right).is_ok());
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let g = Generators::new(vec![v(&[0, 0]), v(&[2, 0]), v(&[1, 0]), v(&[0, 2])], vec![v(&[1, 0]), v(&[2, 0])]);
        let g = g.irredundant().unwrap();
        assert_eq!(g.rays.len(), 1);
        assert_eq!(sorted(g.points), vec![v(&[0, 0]), v(&[0, 2])]);
    }
}
