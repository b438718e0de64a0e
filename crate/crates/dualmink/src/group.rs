//! Finite subgroups of the orthogonal group O(n), built from generators.
//!
//! Groups are stored as the generator list plus the fully enumerated element
//! list (breadth-first product closure, deduplicated). All derived machinery
//! — orbits, the symmetric-commutant irreducibility test, fixed-point
//! spaces, hemisphere certificates, orbit inradii, and measure
//! symmetrization — lives here.

use crate::lp::hemisphere_witness_points;
use crate::measure::DiscreteMeasure;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use thiserror::Error;

/// Orthogonality tolerance for validating generators.
pub const EPS_ORTHO: f64 = 1e-10;
/// Deduplication tolerance for group elements and orbit points (max-norm).
pub const EPS_GROUP: f64 = 1e-9;
/// Relative singular-value threshold for rank decisions.
pub const EPS_RANK: f64 = 1e-8;
/// Slack for accepting a hemisphere certificate.
pub const EPS_HEMISPHERE: f64 = 1e-9;
/// Default cap on the enumerated group order.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("matrix is not orthogonal within tolerance (deviation {deviation:.3e})")]
    NotOrthogonal { deviation: f64 },
    #[error("group closure exceeded the cap of {cap} elements; the generated group is infinite or too large")]
    GroupTooLarge { cap: usize },
    #[error("unsupported dimension for builtin group: {0}")]
    UnsupportedDimension(String),
}

/// A real orthogonal matrix, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMatrix(DMatrix<f64>);

impl OrthogonalMatrix {
    /// Validates `M^T M = I` and `|det M| = 1` within [`EPS_ORTHO`].
    pub fn new(m: DMatrix<f64>) -> Result<Self, GroupError> {
        let n = m.nrows();
        if n == 0 || m.ncols() != n {
            return Err(GroupError::NotOrthogonal { deviation: f64::NAN });
        }
        let gram = m.transpose() * &m;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((gram[(i, j)] - target).abs());
            }
        }
        dev = dev.max((m.determinant().abs() - 1.0).abs());
        if dev > EPS_ORTHO {
            return Err(GroupError::NotOrthogonal { deviation: dev });
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

/// The orbit `Gv` of a unit vector under a finite group.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub base: DVector<f64>,
    pub points: Vec<DVector<f64>>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A finite subgroup of O(n): generators plus the enumerated element list.
///
/// The element list always starts with the identity and is closed under
/// products and inverses (finite closure of the generators).
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    dim: usize,
    generators: Vec<OrthogonalMatrix>,
    elements: Vec<DMatrix<f64>>,
}

fn max_norm_dist(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let mut d: f64 = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        d = d.max((x - y).abs());
        if d > EPS_GROUP {
            break;
        }
    }
    d
}

fn contains_matrix(list: &[DMatrix<f64>], m: &DMatrix<f64>) -> bool {
    list.iter().any(|e| max_norm_dist(e, m) <= EPS_GROUP)
}

impl FiniteGroup {
    /// Breadth-first product closure of the generators.
    ///
    /// Fails with [`GroupError::GroupTooLarge`] when the closure exceeds
    /// `cap` elements, which signals an infinite group (e.g. an irrational
    /// rotation) or one too large for dense enumeration.
    pub fn from_generators(
        generators: Vec<OrthogonalMatrix>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        assert!(cap >= 1, "order cap must be at least 1");
        let dim = generators
            .first()
            .map(OrthogonalMatrix::dim)
            .unwrap_or(1);
        for g in &generators {
            assert_eq!(g.dim(), dim, "generators must share a dimension");
        }
        let identity = DMatrix::<f64>::identity(dim, dim);
        let mut elements = vec![identity];
        let mut frontier = vec![0usize];
        while let Some(idx) = frontier.pop() {
            let base = elements[idx].clone();
            for g in &generators {
                let prod = &base * g.matrix();
                if !contains_matrix(&elements, &prod) {
                    if elements.len() >= cap {
                        return Err(GroupError::GroupTooLarge { cap });
                    }
                    elements.push(prod);
                    frontier.push(elements.len() - 1);
                }
            }
        }
        Ok(Self {
            dim,
            generators,
            elements,
        })
    }

    /// Construct one of the named groups.
    pub fn builtin(which: Builtin) -> Result<Self, GroupError> {
        builtin_group(which)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[OrthogonalMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[DMatrix<f64>] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// True iff the group is exactly `{I, -I}`.
    pub fn is_plus_minus_identity(&self) -> bool {
        self.elements.len() == 2 && self.contains_minus_identity()
    }

    /// All distinct images `gv`, deduplicated at [`EPS_GROUP`].
    pub fn orbit(&self, v: &DVector<f64>) -> Orbit {
        assert!(
            (v.norm() - 1.0).abs() <= 1e-7,
            "orbit base point must be a unit vector"
        );
        let mut points: Vec<DVector<f64>> = Vec::new();
        for g in &self.elements {
            let p = g * v;
            if !points
                .iter()
                .any(|q| (&p - q).amax() <= EPS_GROUP)
            {
                points.push(p);
            }
        }
        Orbit {
            base: v.clone(),
            points,
        }
    }

    /// Symmetric-commutant irreducibility test.
    ///
    /// Builds the linear system `{A symmetric : gA - Ag = 0 for every
    /// generator}` and returns true iff its solution space is exactly the
    /// scalar multiples of the identity (dimension 1).
    pub fn is_irreducible(&self) -> bool {
        let n = self.dim;
        let sym_dim = n * (n + 1) / 2;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|k| (k..n).map(move |l| (k, l)))
            .collect();
        let rows = self.generators.len() * n * n;
        if rows == 0 {
            return sym_dim == 1;
        }
        let mut c = DMatrix::<f64>::zeros(rows, sym_dim);
        for (gi, g) in self.generators.iter().enumerate() {
            let gm = g.matrix();
            for (col, &(k, l)) in pairs.iter().enumerate() {
                let mut s = DMatrix::<f64>::zeros(n, n);
                s[(k, l)] = 1.0;
                s[(l, k)] = 1.0;
                let comm = gm * &s - &s * gm;
                for i in 0..n {
                    for j in 0..n {
                        c[(gi * n * n + i * n + j, col)] = comm[(i, j)];
                    }
                }
            }
        }
        let rank = rank_of(&c);
        sym_dim - rank == 1
    }

    /// Dimension of the full (not necessarily symmetric) commutant of the
    /// generators; 1 for absolutely irreducible real representations.
    /// Diagnostic only.
    pub fn commutant_dimension(&self) -> usize {
        let n = self.dim;
        if self.generators.is_empty() {
            return n * n;
        }
        let rows = self.generators.len() * n * n;
        let mut c = DMatrix::<f64>::zeros(rows, n * n);
        for (gi, g) in self.generators.iter().enumerate() {
            let gm = g.matrix();
            for bk in 0..n {
                for bl in 0..n {
                    let mut s = DMatrix::<f64>::zeros(n, n);
                    s[(bk, bl)] = 1.0;
                    let comm = gm * &s - &s * gm;
                    for i in 0..n {
                        for j in 0..n {
                            c[(gi * n * n + i * n + j, bk * n + bl)] = comm[(i, j)];
                        }
                    }
                }
            }
        }
        n * n - rank_of(&c)
    }

    /// Orthonormal basis of the common fixed-point space of all elements.
    pub fn fixed_point_space(&self) -> Vec<DVector<f64>> {
        let n = self.dim;
        if self.generators.is_empty() {
            return (0..n)
                .map(|i| {
                    let mut e = DVector::zeros(n);
                    e[i] = 1.0;
                    e
                })
                .collect();
        }
        let mut stacked = DMatrix::<f64>::zeros(self.generators.len() * n, n);
        for (gi, g) in self.generators.iter().enumerate() {
            let diff = g.matrix() - DMatrix::<f64>::identity(n, n);
            stacked.view_mut((gi * n, 0), (n, n)).copy_from(&diff);
        }
        null_space(&stacked)
    }

    pub fn contains_minus_identity(&self) -> bool {
        let minus = -DMatrix::<f64>::identity(self.dim, self.dim);
        contains_matrix(&self.elements, &minus)
    }

    /// Finds a unit vector `u` with the orbit `Gv` contained in the closed
    /// hemisphere `{x : <x,u> >= 0}` (up to [`EPS_HEMISPHERE`]), or `None`
    /// when the origin is interior to the orbit's convex hull.
    ///
    /// The orbit mean is a fixed point of the group; when it is nonzero it
    /// is itself a strict witness and is returned directly. Otherwise the
    /// decision falls to the hemisphere linear program over the orbit.
    pub fn hemisphere_witness(&self, v: &DVector<f64>) -> Option<DVector<f64>> {
        let orbit = self.orbit(v);
        let mut mean = DVector::<f64>::zeros(self.dim);
        for p in &orbit.points {
            mean += p;
        }
        mean /= orbit.points.len() as f64;
        let norm = mean.norm();
        if norm > 1e-9 {
            return Some(mean / norm);
        }
        hemisphere_witness_points(&orbit.points, EPS_HEMISPHERE)
    }

    /// The largest `r` with `B(r)` contained in `conv(Gv)`; 0 when the
    /// origin is not interior to the hull.
    ///
    /// Exact hull geometry: edge distances in 2-D, facet plane distances in
    /// 3-D. Panics for n >= 4.
    pub fn orbit_inradius(&self, v: &DVector<f64>) -> f64 {
        let orbit = self.orbit(v);
        match self.dim {
            1 => {
                let has_pos = orbit.points.iter().any(|p| p[0] > 0.0);
                let has_neg = orbit.points.iter().any(|p| p[0] < 0.0);
                if has_pos && has_neg {
                    1.0
                } else {
                    0.0
                }
            }
            2 => polygon_inradius(&orbit.points),
            3 => hull3_inradius(&orbit.points),
            d => panic!("orbit_inradius supports dimensions 1-3, got {d}"),
        }
    }

    /// Group average `(1/|G|) sum_g g_* mu`, with atoms merged at
    /// [`EPS_GROUP`]. Total mass is preserved and the result is
    /// G-invariant: every direction of an orbit carries the same weight.
    pub fn symmetrize_measure(&self, mu: &DiscreteMeasure) -> DiscreteMeasure {
        let mut dirs: Vec<DVector<f64>> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        let mut assigned = vec![false; mu.atoms().len()];
        for i in 0..mu.atoms().len() {
            if assigned[i] {
                continue;
            }
            let orbit = self.orbit(&mu.atoms()[i].0);
            let mut total = 0.0;
            for (j, (u, w)) in mu.atoms().iter().enumerate() {
                if !assigned[j]
                    && orbit
                        .points
                        .iter()
                        .any(|p| (p - u).amax() <= EPS_GROUP)
                {
                    total += w;
                    assigned[j] = true;
                }
            }
            let share = total / orbit.points.len() as f64;
            for p in &orbit.points {
                dirs.push(p.clone());
                weights.push(share);
            }
        }
        DiscreteMeasure::new(dirs, weights).expect("symmetrized atoms stay valid")
    }
}

fn rank_of(m: &DMatrix<f64>) -> usize {
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > EPS_RANK * smax)
        .count()
}

/// Orthonormal basis of the null space of `m` (right singular vectors with
/// negligible singular values).
fn null_space(m: &DMatrix<f64>) -> Vec<DVector<f64>> {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("svd with v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let mut basis = Vec::new();
    for i in 0..svd.singular_values.len() {
        if smax == 0.0 || svd.singular_values[i] <= EPS_RANK * smax {
            basis.push(v_t.row(i).transpose());
        }
    }
    // Thin SVD yields min(rows, cols) singular values; a wide kernel beyond
    // that cannot happen here because the stacked matrices have >= n rows.
    debug_assert!(svd.singular_values.len() >= n.min(m.nrows()));
    basis
}

/// Inradius of the convex hull of points on the unit circle.
fn polygon_inradius(points: &[DVector<f64>]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let mut angles: Vec<f64> = points.iter().map(|p| p[1].atan2(p[0])).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut inradius = f64::INFINITY;
    for i in 0..angles.len() {
        let a = angles[i];
        let b = if i + 1 == angles.len() {
            angles[0] + two_pi
        } else {
            angles[i + 1]
        };
        let gap = b - a;
        if gap >= std::f64::consts::PI - 1e-12 {
            return 0.0;
        }
        // Distance from the origin to the chord between consecutive unit
        // vectors at angular gap `gap`.
        inradius = inradius.min((gap / 2.0).cos());
    }
    inradius.max(0.0)
}

/// Inradius of the convex hull of points on the unit sphere via brute-force
/// facet enumeration.
fn hull3_inradius(points: &[DVector<f64>]) -> f64 {
    let m = points.len();
    if m < 4 {
        return 0.0;
    }
    // Degenerate (affinely flat) point sets have empty interior.
    let mut centroid = DVector::<f64>::zeros(3);
    for p in points {
        centroid += p;
    }
    centroid /= m as f64;
    let mut centered = DMatrix::<f64>::zeros(m, 3);
    for (i, p) in points.iter().enumerate() {
        centered.row_mut(i).copy_from(&(p - &centroid).transpose());
    }
    if rank_of(&centered) < 3 {
        return 0.0;
    }

    let eps = 1e-9;
    let mut inradius = f64::INFINITY;
    let mut found_facet = false;
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                let ab = &points[j] - &points[i];
                let ac = &points[k] - &points[i];
                let mut normal = ab.cross(&ac);
                let len = normal.norm();
                if len < 1e-12 {
                    continue;
                }
                normal /= len;
                let d0 = normal.dot(&points[i]);
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for p in points {
                    let s = normal.dot(p) - d0;
                    lo = lo.min(s);
                    hi = hi.max(s);
                }
                let facet_dist = if hi <= eps {
                    d0 // all points on the negative side: outward normal
                } else if lo >= -eps {
                    -d0
                } else {
                    continue;
                };
                found_facet = true;
                if facet_dist <= eps {
                    return 0.0;
                }
                inradius = inradius.min(facet_dist);
            }
        }
    }
    if !found_facet {
        return 0.0;
    }
    inradius
}

/// Uniform random unit vector via normalized Gaussian coordinates.
pub fn random_unit_vector<R: Rng>(n: usize, rng: &mut R) -> DVector<f64> {
    loop {
        let mut v = DVector::<f64>::zeros(n);
        for i in 0..n {
            // Box-Muller transform.
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen();
            v[i] = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        }
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

/// Named group constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// Rotations of a regular m-gon in the plane; order m.
    Cyclic(u32),
    /// Full symmetry group of a regular m-gon in the plane; order 2m.
    Dihedral(u32),
    /// Symmetries of a regular n-simplex in R^n (isomorphic to S_{n+1}).
    SimplexSymmetry(u32),
    /// Rotation symmetries of a regular n-simplex (isomorphic to A_{n+1}).
    SimplexRotation(u32),
    /// Signed permutation matrices in R^n; order 2^n n!.
    Hyperoctahedral(u32),
    /// Rotation subgroup of the hyperoctahedral group; order 2^(n-1) n!.
    CubeRotation(u32),
    /// The two-element group {I, -I} in R^n.
    PlusMinusIdentity(u32),
    /// The trivial group {I} in R^n.
    Trivial(u32),
}

fn rotation2(theta: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()])
}

fn permutation_matrix(n: usize, sigma: &[usize]) -> DMatrix<f64> {
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (j, &i) in sigma.iter().enumerate() {
        m[(i, j)] = 1.0;
    }
    m
}

/// Orthonormal basis (columns) of the sum-zero hyperplane of R^{n+1}.
fn sum_zero_basis(n: usize) -> DMatrix<f64> {
    let mut b = DMatrix::<f64>::zeros(n + 1, n);
    for i in 1..=n {
        let scale = 1.0 / ((i * (i + 1)) as f64).sqrt();
        for r in 0..i {
            b[(r, i - 1)] = scale;
        }
        b[(i, i - 1)] = -(i as f64) * scale;
    }
    b
}

/// Restriction of a permutation of the simplex vertices to the sum-zero
/// hyperplane, expressed in an orthonormal basis.
fn simplex_rep(n: usize, sigma: &[usize]) -> Result<OrthogonalMatrix, GroupError> {
    let b = sum_zero_basis(n);
    let p = permutation_matrix(n + 1, sigma);
    OrthogonalMatrix::new(b.transpose() * p * b)
}

fn cycle(n: usize, items: &[usize]) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..n).collect();
    for w in 0..items.len() {
        sigma[items[w]] = items[(w + 1) % items.len()];
    }
    sigma
}

fn greedy_generators(
    dim: usize,
    elements: Vec<DMatrix<f64>>,
) -> Result<FiniteGroup, GroupError> {
    let mut gens: Vec<OrthogonalMatrix> = Vec::new();
    let mut group = FiniteGroup {
        dim,
        generators: Vec::new(),
        elements: vec![DMatrix::identity(dim, dim)],
    };
    for e in &elements {
        if !contains_matrix(&group.elements, e) {
            gens.push(OrthogonalMatrix::new(e.clone())?);
            group = FiniteGroup::from_generators(gens.clone(), elements.len())?;
            if group.order() == elements.len() {
                break;
            }
        }
    }
    Ok(group)
}

fn builtin_group(which: Builtin) -> Result<FiniteGroup, GroupError> {
    let cap = DEFAULT_ORDER_CAP;
    match which {
        Builtin::Cyclic(m) => {
            if m < 1 {
                return Err(GroupError::UnsupportedDimension("cyclic(m) needs m >= 1".into()));
            }
            let gen = rotation2(2.0 * std::f64::consts::PI / m as f64);
            FiniteGroup::from_generators(vec![OrthogonalMatrix::new(gen)?], cap)
        }
        Builtin::Dihedral(m) => {
            if m < 1 {
                return Err(GroupError::UnsupportedDimension("dihedral(m) needs m >= 1".into()));
            }
            let rot = rotation2(2.0 * std::f64::consts::PI / m as f64);
            let reflect = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
            FiniteGroup::from_generators(
                vec![OrthogonalMatrix::new(rot)?, OrthogonalMatrix::new(reflect)?],
                cap,
            )
        }
        Builtin::SimplexSymmetry(n) => {
            let n = n as usize;
            if n < 1 || factorial(n + 1) > cap {
                return Err(GroupError::UnsupportedDimension(format!(
                    "simplex_symmetry({n}) outside supported range"
                )));
            }
            let mut gens = vec![simplex_rep(n, &cycle(n + 1, &[0, 1]))?];
            if n >= 2 {
                let full: Vec<usize> = (0..=n).collect();
                gens.push(simplex_rep(n, &cycle(n + 1, &full))?);
            }
            FiniteGroup::from_generators(gens, cap)
        }
        Builtin::SimplexRotation(n) => {
            let n = n as usize;
            if n < 1 || factorial(n + 1) / 2 > cap {
                return Err(GroupError::UnsupportedDimension(format!(
                    "simplex_rotation({n}) outside supported range"
                )));
            }
            let k = n + 1;
            let mut gens = Vec::new();
            if k >= 3 {
                gens.push(simplex_rep(n, &cycle(k, &[0, 1, 2]))?);
                if k % 2 == 1 {
                    let full: Vec<usize> = (0..k).collect();
                    gens.push(simplex_rep(n, &cycle(k, &full))?);
                } else {
                    let tail: Vec<usize> = (1..k).collect();
                    gens.push(simplex_rep(n, &cycle(k, &tail))?);
                }
            }
            FiniteGroup::from_generators(gens, cap)
        }
        Builtin::Hyperoctahedral(n) => {
            let n = n as usize;
            if n < 1 || (1usize << n).saturating_mul(factorial(n)) > cap {
                return Err(GroupError::UnsupportedDimension(format!(
                    "hyperoctahedral({n}) outside supported range"
                )));
            }
            let mut gens = Vec::new();
            let mut flip = DMatrix::<f64>::identity(n, n);
            flip[(0, 0)] = -1.0;
            gens.push(OrthogonalMatrix::new(flip)?);
            if n >= 2 {
                gens.push(OrthogonalMatrix::new(permutation_matrix(n, &cycle(n, &[0, 1])))?);
                let full: Vec<usize> = (0..n).collect();
                gens.push(OrthogonalMatrix::new(permutation_matrix(n, &cycle(n, &full)))?);
            }
            FiniteGroup::from_generators(gens, cap)
        }
        Builtin::CubeRotation(n) => {
            let n = n as usize;
            if n < 1 || (1usize << n).saturating_mul(factorial(n)) / 2 > cap {
                return Err(GroupError::UnsupportedDimension(format!(
                    "cube_rotation({n}) outside supported range"
                )));
            }
            let hyper = builtin_group(Builtin::Hyperoctahedral(n as u32))?;
            let rotations: Vec<DMatrix<f64>> = hyper
                .elements
                .iter()
                .filter(|e| e.determinant() > 0.0)
                .cloned()
                .collect();
            greedy_generators(n, rotations)
        }
        Builtin::PlusMinusIdentity(n) => {
            let n = n as usize;
            if n < 1 {
                return Err(GroupError::UnsupportedDimension(
                    "plus_minus_identity(n) needs n >= 1".into(),
                ));
            }
            let minus = -DMatrix::<f64>::identity(n, n);
            FiniteGroup::from_generators(vec![OrthogonalMatrix::new(minus)?], cap)
        }
        Builtin::Trivial(n) => {
            let n = n as usize;
            if n < 1 {
                return Err(GroupError::UnsupportedDimension("trivial(n) needs n >= 1".into()));
            }
            Ok(FiniteGroup {
                dim: n,
                generators: Vec::new(),
                elements: vec![DMatrix::identity(n, n)],
            })
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product::<usize>().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        v
    }

    fn zrot3(m: u32) -> FiniteGroup {
        let t = 2.0 * std::f64::consts::PI / m as f64;
        let g = DMatrix::from_row_slice(
            3,
            3,
            &[t.cos(), -t.sin(), 0.0, t.sin(), t.cos(), 0.0, 0.0, 0.0, 1.0],
        );
        FiniteGroup::from_generators(vec![OrthogonalMatrix::new(g).unwrap()], 100).unwrap()
    }

    #[test]
    fn quarter_turn_generates_order_four() {
        let g = FiniteGroup::builtin(Builtin::Cyclic(4)).unwrap();
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn identity_alone_generates_trivial_group() {
        let id = OrthogonalMatrix::new(DMatrix::identity(2, 2)).unwrap();
        let g = FiniteGroup::from_generators(vec![id], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn rotation_and_reflection_generate_dihedral_three() {
        let rot = rotation2(2.0 * std::f64::consts::PI / 3.0);
        let reflect = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let g = FiniteGroup::from_generators(
            vec![
                OrthogonalMatrix::new(rot).unwrap(),
                OrthogonalMatrix::new(reflect).unwrap(),
            ],
            100,
        )
        .unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn irrational_rotation_hits_the_cap() {
        let rot = rotation2(1.0); // 1 radian: infinite cyclic closure
        let err = FiniteGroup::from_generators(vec![OrthogonalMatrix::new(rot).unwrap()], 50)
            .unwrap_err();
        assert!(matches!(err, GroupError::GroupTooLarge { cap: 50 }));
    }

    #[test]
    fn non_orthogonal_generator_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        assert!(matches!(
            OrthogonalMatrix::new(m),
            Err(GroupError::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn builtin_orders() {
        assert_eq!(FiniteGroup::builtin(Builtin::Cyclic(4)).unwrap().order(), 4);
        assert_eq!(FiniteGroup::builtin(Builtin::Dihedral(3)).unwrap().order(), 6);
        assert_eq!(
            FiniteGroup::builtin(Builtin::SimplexSymmetry(2)).unwrap().order(),
            6
        );
        assert_eq!(
            FiniteGroup::builtin(Builtin::SimplexSymmetry(3)).unwrap().order(),
            24
        );
        assert_eq!(
            FiniteGroup::builtin(Builtin::SimplexRotation(3)).unwrap().order(),
            12
        );
        assert_eq!(
            FiniteGroup::builtin(Builtin::Hyperoctahedral(3)).unwrap().order(),
            48
        );
        assert_eq!(
            FiniteGroup::builtin(Builtin::CubeRotation(3)).unwrap().order(),
            24
        );
        assert_eq!(
            FiniteGroup::builtin(Builtin::PlusMinusIdentity(5)).unwrap().order(),
            2
        );
        assert_eq!(FiniteGroup::builtin(Builtin::Trivial(3)).unwrap().order(), 1);
    }

    #[test]
    fn closure_under_products() {
        for which in [
            Builtin::Dihedral(3),
            Builtin::SimplexSymmetry(3),
            Builtin::CubeRotation(3),
        ] {
            let g = FiniteGroup::builtin(which).unwrap();
            for a in g.elements() {
                for b in g.elements() {
                    let prod = a * b;
                    assert!(
                        contains_matrix(g.elements(), &prod),
                        "{which:?} not closed under product"
                    );
                }
            }
        }
    }

    #[test]
    fn orbit_of_axis_under_quarter_turns() {
        let g = FiniteGroup::builtin(Builtin::Cyclic(4)).unwrap();
        let orbit = g.orbit(&e(2, 0));
        assert_eq!(orbit.len(), 4);
    }

    #[test]
    fn orbit_under_trivial_group_is_single_point() {
        let g = FiniteGroup::builtin(Builtin::Trivial(3)).unwrap();
        assert_eq!(g.orbit(&e(3, 2)).len(), 1);
    }

    #[test]
    fn dihedral_three_vertex_orbit_has_three_points() {
        let g = FiniteGroup::builtin(Builtin::Dihedral(3)).unwrap();
        let orbit = g.orbit(&e(2, 0));
        assert_eq!(orbit.len(), 3);
        let mut angles: Vec<f64> = orbit
            .points
            .iter()
            .map(|p| p[1].atan2(p[0]).to_degrees().rem_euclid(360.0))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in angles.iter().zip([0.0, 120.0, 240.0]) {
            assert!((got - want).abs() < 1e-6, "angles {angles:?}");
        }
    }

    #[test]
    fn orbit_sizes_divide_group_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for which in [Builtin::Dihedral(3), Builtin::SimplexSymmetry(3)] {
            let g = FiniteGroup::builtin(which).unwrap();
            for _ in 0..200 {
                let v = random_unit_vector(g.dim(), &mut rng);
                assert_eq!(g.order() % g.orbit(&v).len(), 0);
            }
        }
    }

    #[test]
    fn irreducibility_of_standard_examples() {
        assert!(!FiniteGroup::builtin(Builtin::PlusMinusIdentity(2))
            .unwrap()
            .is_irreducible());
        assert!(FiniteGroup::builtin(Builtin::Dihedral(3)).unwrap().is_irreducible());
        assert!(!zrot3(5).is_irreducible());
        assert!(FiniteGroup::builtin(Builtin::Cyclic(4)).unwrap().is_irreducible());
        assert!(FiniteGroup::builtin(Builtin::SimplexSymmetry(3))
            .unwrap()
            .is_irreducible());
        // O(1) subgroups are all irreducible.
        assert!(FiniteGroup::builtin(Builtin::Trivial(1)).unwrap().is_irreducible());
        assert!(!FiniteGroup::builtin(Builtin::Trivial(2)).unwrap().is_irreducible());
    }

    #[test]
    fn fixed_point_spaces() {
        let basis = zrot3(5).fixed_point_space();
        assert_eq!(basis.len(), 1);
        assert!((basis[0].abs() - e(3, 2)).norm() < 1e-9);

        assert_eq!(FiniteGroup::builtin(Builtin::Trivial(4)).unwrap().fixed_point_space().len(), 4);
        assert!(FiniteGroup::builtin(Builtin::SimplexSymmetry(3))
            .unwrap()
            .fixed_point_space()
            .is_empty());
    }

    #[test]
    fn minus_identity_membership() {
        assert!(FiniteGroup::builtin(Builtin::Cyclic(4)).unwrap().contains_minus_identity());
        assert!(!FiniteGroup::builtin(Builtin::Dihedral(3))
            .unwrap()
            .contains_minus_identity());
        assert!(FiniteGroup::builtin(Builtin::PlusMinusIdentity(3))
            .unwrap()
            .contains_minus_identity());
    }

    #[test]
    fn hemisphere_witness_cases() {
        let trivial = FiniteGroup::builtin(Builtin::Trivial(2)).unwrap();
        let w = trivial.hemisphere_witness(&e(2, 0)).unwrap();
        assert!((w - e(2, 0)).norm() < 1e-9);

        let d3 = FiniteGroup::builtin(Builtin::Dihedral(3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let v = random_unit_vector(2, &mut rng);
            assert!(d3.hemisphere_witness(&v).is_none());
        }

        let zr = zrot3(4);
        let w = zr.hemisphere_witness(&e(3, 2)).unwrap();
        assert!((w - e(3, 2)).norm() < 1e-9);
        // Equatorial orbit: a closed hemisphere still exists.
        let w = zr.hemisphere_witness(&e(3, 0)).unwrap();
        assert!(w[2].abs() > 1.0 - 1e-9);
    }

    #[test]
    fn orbit_inradius_values() {
        let c4 = FiniteGroup::builtin(Builtin::Cyclic(4)).unwrap();
        assert!((c4.orbit_inradius(&e(2, 0)) - 0.5f64.sqrt()).abs() < 1e-12);

        let pm = FiniteGroup::builtin(Builtin::PlusMinusIdentity(2)).unwrap();
        assert_eq!(pm.orbit_inradius(&e(2, 0)), 0.0);

        let d3 = FiniteGroup::builtin(Builtin::Dihedral(3)).unwrap();
        assert!((d3.orbit_inradius(&e(2, 0)) - 0.5).abs() < 1e-12);

        // Tetrahedron vertex orbit: inradius 1/3 of the unit circumradius.
        let s3 = FiniteGroup::builtin(Builtin::SimplexSymmetry(3)).unwrap();
        let v = {
            let mut v = DVector::zeros(3);
            // A vertex of the regular simplex expressed in the hyperplane basis.
            let b = sum_zero_basis(3);
            let mut e0 = DVector::zeros(4);
            e0[0] = 1.0;
            let proj = b.transpose() * e0;
            v.copy_from(&(&proj / proj.norm()));
            v
        };
        let r = s3.orbit_inradius(&v);
        assert!((r - 1.0 / 3.0).abs() < 1e-9, "tetrahedron inradius {r}");
    }

    #[test]
    fn symmetrize_splits_mass_over_orbit() {
        let g = FiniteGroup::builtin(Builtin::Cyclic(4)).unwrap();
        let mu = DiscreteMeasure::new(vec![e(2, 0)], vec![4.0]).unwrap();
        let sym = g.symmetrize_measure(&mu);
        assert_eq!(sym.atoms().len(), 4);
        for (_, w) in sym.atoms() {
            assert!((w - 1.0).abs() < 1e-12);
        }
        assert!((sym.total_mass() - mu.total_mass()).abs() < 1e-13);
    }

    #[test]
    fn symmetrize_is_idempotent() {
        let g = FiniteGroup::builtin(Builtin::Dihedral(3)).unwrap();
        let orbit = g.orbit(&e(2, 0));
        let mu = DiscreteMeasure::new(orbit.points.clone(), vec![2.0; orbit.len()]).unwrap();
        let once = g.symmetrize_measure(&mu);
        let twice = g.symmetrize_measure(&once);
        assert_eq!(once.atoms().len(), twice.atoms().len());
        assert!((once.total_mass() - twice.total_mass()).abs() < 1e-13);
        for (u, w) in once.atoms() {
            let (_, w2) = twice
                .atoms()
                .iter()
                .find(|(u2, _)| (u - u2).amax() < 1e-9)
                .unwrap();
            assert!((w - w2).abs() < 1e-12);
        }
    }

    #[test]
    fn trivial_symmetrization_keeps_atoms() {
        let g = FiniteGroup::builtin(Builtin::Trivial(2)).unwrap();
        let mu = DiscreteMeasure::new(vec![e(2, 0), e(2, 1)], vec![1.0, 2.5]).unwrap();
        let sym = g.symmetrize_measure(&mu);
        assert_eq!(sym.atoms().len(), 2);
        assert!((sym.total_mass() - 3.5).abs() < 1e-15);
    }

    #[test]
    fn irreducibility_invariant_under_conjugation() {
        let d3 = FiniteGroup::builtin(Builtin::Dihedral(3)).unwrap();
        let theta: f64 = 0.83;
        let q = rotation2(theta);
        let gens: Vec<OrthogonalMatrix> = d3
            .generators()
            .iter()
            .map(|g| OrthogonalMatrix::new(&q * g.matrix() * q.transpose()).unwrap())
            .collect();
        let conj = FiniteGroup::from_generators(gens, 100).unwrap();
        assert_eq!(conj.order(), 6);
        assert!(conj.is_irreducible());
    }
}
