//! Random instances and brute-force oracles shared by the test suites.

use asymspace_core::exact::{frac, int, RMatrix, RVector, Rational, Subspace};
use asymspace_core::gauge::AsymmetricGauge;
use asymspace_core::lp::LinearProgram;
use asymspace_core::polyhedra::{Polyhedron, DEFAULT_DD_BUDGET};
use num_traits::{Signed, Zero};

pub use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng as TestRng;

pub fn rng(seed: u64) -> TestRng {
    TestRng::seed_from_u64(seed)
}

/// p/q with |p| ≤ 10 and 1 ≤ q ≤ 10.
pub fn small_rational(rng: &mut TestRng) -> Rational {
    frac(rng.gen_range(-10..=10), rng.gen_range(1..=10))
}

pub fn small_positive(rng: &mut TestRng) -> Rational {
    frac(rng.gen_range(1..=10), rng.gen_range(1..=10))
}

pub fn random_vector(rng: &mut TestRng, dim: usize) -> RVector {
    (0..dim).map(|_| small_rational(rng)).collect()
}

/// Like [`random_vector`], but zero with some probability so that points on
/// cones and subspaces come up.
pub fn random_point(rng: &mut TestRng, dim: usize) -> RVector {
    if rng.gen_bool(0.1) {
        RVector::zeros(dim)
    } else {
        random_vector(rng, dim)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaugeKind {
    /// A ∪ −A
    Symmetric,
    /// {0} ∪ A
    WithZero,
    /// A plus one functional placing 0 inside conv(A)
    Balanced,
    /// max of two smaller random gauges
    Product,
    /// q ∘ T for an invertible T
    Transformed,
}

pub const GAUGE_KINDS: [GaugeKind; 5] =
    [GaugeKind::Symmetric, GaugeKind::WithZero, GaugeKind::Balanced, GaugeKind::Product, GaugeKind::Transformed];

/// Functionals of a random valid gauge: dimension in 1..=max_dim, at most
/// `max_functionals` rows, entries p/q with |p|, q ≤ 10.
pub fn random_functionals(rng: &mut TestRng, dim: usize, max_functionals: usize, kind: GaugeKind) -> Vec<RVector> {
    let room = max_functionals.max(dim + 1);
    match kind {
        GaugeKind::Symmetric => {
            let k = rng.gen_range(1..=(room / 2).max(1));
            (0..k).flat_map(|_| {
                let a = random_vector(rng, dim);
                [a.clone(), -&a]
            }).collect()
        }
        GaugeKind::WithZero => {
            let k = rng.gen_range(dim..room);
            std::iter::once(RVector::zeros(dim)).chain((0..k).map(|_| random_vector(rng, dim))).collect()
        }
        GaugeKind::Balanced => {
            let k = rng.gen_range(dim..room);
            let mut rows: Vec<RVector> = (0..k).map(|_| random_vector(rng, dim)).collect();
            let mut sum = RVector::zeros(dim);
            for a in &rows {
                let w = frac(rng.gen_range(0..=3), rng.gen_range(1..=3));
                sum = sum.add_scaled(&w, a);
            }
            rows.push(-&sum);
            rows
        }
        GaugeKind::Product => {
            if dim == 1 {
                return random_functionals(rng, 1, max_functionals, GaugeKind::WithZero);
            }
            let d1 = rng.gen_range(1..dim);
            let d2 = dim - d1;
            let half = (room / 2).max(2);
            let sub = |rng: &mut TestRng, d: usize| {
                let kind = [GaugeKind::Symmetric, GaugeKind::WithZero, GaugeKind::Balanced][rng.gen_range(0..3)];
                random_functionals(rng, d, half.max(d + 1), kind)
            };
            let a = sub(rng, d1);
            let b = sub(rng, d2);
            a.iter().map(|f| f.padded(0, d2)).chain(b.iter().map(|f| f.padded(d1, 0))).collect()
        }
        GaugeKind::Transformed => {
            let base = random_functionals(rng, dim, max_functionals, GaugeKind::WithZero);
            let t = loop {
                let rows: Vec<RVector> = (0..dim)
                    .map(|_| (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect())
                    .collect();
                let m = RMatrix::new(dim, rows).expect("square");
                if m.rank() == dim {
                    break m;
                }
            };
            let tt = t.transpose();
            base.iter().map(|a| tt.apply(a).expect("square")).collect()
        }
    }
}

/// A random validated gauge given by functionals. Invalid draws are
/// rejected and redrawn.
pub fn random_gauge(rng: &mut TestRng, max_dim: usize, max_functionals: usize) -> AsymmetricGauge {
    loop {
        let dim = rng.gen_range(1..=max_dim);
        let kind = GAUGE_KINDS[rng.gen_range(0..GAUGE_KINDS.len())];
        let rows = random_functionals(rng, dim, max_functionals, kind);
        if rows.len() > max_functionals {
            continue;
        }
        if let Ok(g) = AsymmetricGauge::from_functionals(dim, rows) {
            return g;
        }
    }
}

/// A random subspace: zero, full, coordinate, or the span of random vectors.
pub fn random_subspace(rng: &mut TestRng, dim: usize) -> Subspace {
    match rng.gen_range(0..5) {
        0 => Subspace::zero(dim),
        1 => Subspace::full(dim),
        2 => {
            let coords: Vec<RVector> = (0..dim).filter(|_| rng.gen_bool(0.5)).map(|i| RVector::unit(dim, i)).collect();
            Subspace::span(dim, &coords).expect("dims agree")
        }
        _ => {
            let k = rng.gen_range(1..=dim);
            let vs: Vec<RVector> = (0..k).map(|_| random_vector(rng, dim)).collect();
            Subspace::span(dim, &vs).expect("dims agree")
        }
    }
}

/// A random element of the subspace.
pub fn random_member(rng: &mut TestRng, s: &Subspace) -> RVector {
    let mut x = RVector::zeros(s.ambient_dim());
    for b in s.basis() {
        x = x.add_scaled(&small_rational(rng), b);
    }
    x
}

/// A feasible bounded program: a box around the origin, extra random rows
/// satisfied by a random interior point, a random objective.
pub fn random_bounded_lp(rng: &mut TestRng, max_vars: usize, max_extra_rows: usize) -> LinearProgram {
    let n = rng.gen_range(1..=max_vars);
    let center = random_vector(rng, n);
    let mut lp = LinearProgram::new(n);
    for i in 0..n {
        let e = RVector::unit(n, i);
        lp.le(e.clone(), &center[i] + &small_positive(rng));
        lp.le(-&e, -&center[i] + small_positive(rng));
    }
    for _ in 0..rng.gen_range(0..=max_extra_rows) {
        let a = random_vector(rng, n);
        let slack = if rng.gen_bool(0.3) { Rational::zero() } else { small_positive(rng) };
        lp.le(a.clone(), a.dot(&center) + slack);
    }
    lp.set_objective(random_vector(rng, n));
    lp
}

/// All vertices of {x : ⟨aᵢ, x⟩ ≤ bᵢ} by solving every n × n subsystem.
pub fn brute_force_vertices(n: usize, rows: &[(RVector, Rational)]) -> Vec<RVector> {
    let mut out: Vec<RVector> = Vec::new();
    let mut pick = Vec::with_capacity(n);
    subsets(rows.len(), n, 0, &mut pick, &mut |idx| {
        let m = RMatrix::new(n, idx.iter().map(|&i| rows[i].0.clone()).collect()).expect("row lengths");
        let b: RVector = idx.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = m.solve(&b) {
            if rows.iter().all(|(a, c)| a.dot(&x) <= *c) && !out.contains(&x) {
                out.push(x);
            }
        }
    });
    out
}

fn subsets(len: usize, k: usize, start: usize, pick: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if pick.len() == k {
        visit(pick);
        return;
    }
    for i in start..len {
        pick.push(i);
        subsets(len, k, i + 1, pick, visit);
        pick.pop();
    }
}

/// Minimum of the objective over the vertices of a bounded inequality-only
/// program; `None` when it has no vertex.
pub fn brute_force_min(lp: &LinearProgram) -> Option<Rational> {
    brute_force_vertices(lp.vars(), lp.inequalities())
        .iter()
        .map(|x| lp.objective().dot(x))
        .min()
}

/// Floating point point of the unit ball, sampled by rejection in a box.
/// Returns an exact rational point with small denominators.
pub fn random_ball_point(rng: &mut TestRng, g: &AsymmetricGauge, scale: i64) -> RVector {
    loop {
        let x: RVector = (0..g.dim()).map(|_| frac(rng.gen_range(-10 * scale..=10 * scale), 10)).collect();
        if g.value(&x).map(|v| v <= int(1)).unwrap_or(false) {
            return x;
        }
    }
}

/// Random point of B_q[0,1]: a convex combination of the given vertices plus
/// a nonnegative combination of the rays.
pub fn random_combination(rng: &mut TestRng, points: &[RVector], rays: &[RVector]) -> RVector {
    let dim = points[0].dim();
    let weights: Vec<Rational> = points.iter().map(|_| frac(rng.gen_range(0..=10), 1)).collect();
    let total: Rational = weights.iter().cloned().fold(Rational::zero(), |a, b| a + b);
    let mut x = RVector::zeros(dim);
    if total.is_positive() {
        for (w, p) in weights.iter().zip(points) {
            x = x.add_scaled(&(w / &total), p);
        }
    } else {
        x = points[rng.gen_range(0..points.len())].clone();
    }
    for r in rays {
        if rng.gen_bool(0.5) {
            x = x.add_scaled(&small_positive(rng), r);
        }
    }
    x
}

/// Vertices of conv(±A) ∩ cone(A). By duality, min over t ∈ θ of qˢ(x − t)
/// is the largest value of ⟨φ, x⟩ over these points.
pub fn theta_distance_dual(g: &AsymmetricGauge) -> Vec<RVector> {
    let n = g.dim();
    let a = g.functionals().expect("polyhedral gauge");
    let pm: Vec<RVector> = a.iter().flat_map(|f| [f.clone(), -f]).collect();
    let mut rows = Polyhedron::from_vrep(n, pm, vec![]).unwrap().hrep_or_convert(DEFAULT_DD_BUDGET).unwrap();
    rows.extend(Polyhedron::cone(n, a).unwrap().hrep_or_convert(DEFAULT_DD_BUDGET).unwrap());
    let gens = Polyhedron::from_hrep(n, rows).unwrap().vrep_or_convert(DEFAULT_DD_BUDGET).unwrap();
    assert!(gens.rays.is_empty(), "the dual region is bounded");
    gens.points
}

/// Support function of the points at x.
pub fn support_of(points: &[RVector], x: &RVector) -> Rational {
    points.iter().map(|p| p.dot(x)).max().expect("nonempty")
}
