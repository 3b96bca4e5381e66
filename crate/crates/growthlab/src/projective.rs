//! Projective spaces PF^n over the exact fields, the transformation group
//! acting on them (invertible matrices modulo scalars), frames, cross
//! ratios, and the embedding of line transformations as points and planes
//! of PF^3.
//!
//! Everything is canonically scaled: the first nonzero coordinate of a
//! point, hyperplane or matrix is 1, so equality of canonical forms decides
//! equality in the quotient.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{fmt_value, FieldSpec, Value};

/// Point of PF^n in homogeneous coordinates, canonically scaled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    field: FieldSpec,
    coords: Vec<Value>,
}

/// Invertible (n+1)×(n+1) matrix modulo scalars, canonically scaled;
/// row-major storage.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjMap {
    field: FieldSpec,
    dim: usize, // n of PF^n
    data: Vec<Value>,
}

/// Hyperplane of PF^n: canonical coefficient vector (a_1,…,a_{n+1}),
/// incidence being the exact dot-product-zero test.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjHyperplane {
    field: FieldSpec,
    coeffs: Vec<Value>,
}

fn canonical_scale(field: &FieldSpec, mut v: Vec<Value>) -> Result<Vec<Value>> {
    let lead = v.iter().find(|x| !x.is_zero()).cloned().ok_or(Error::DimMismatch)?;
    if lead != field.one() {
        let inv = field.inv(&lead)?;
        for x in v.iter_mut() {
            *x = field.mul(x, &inv);
        }
    }
    Ok(v)
}

impl ProjPoint {
    pub fn new(field: FieldSpec, coords: Vec<Value>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimMismatch);
        }
        let coords = canonical_scale(&field, coords)?;
        Ok(ProjPoint { field, coords })
    }

    pub fn from_ints(field: &FieldSpec, coords: &[i128]) -> Result<Self> {
        ProjPoint::new(field.clone(), coords.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Identify x ∈ F^n with [x, 1].
    pub fn embed_affine(field: &FieldSpec, x: &[Value]) -> Self {
        let mut coords = x.to_vec();
        coords.push(field.one());
        ProjPoint::new(field.clone(), coords).expect("last coordinate is 1")
    }

    /// Inverse of `embed_affine`; errors on points at infinity.
    pub fn to_affine(&self) -> Result<Vec<Value>> {
        let last = self.coords.last().unwrap();
        if last.is_zero() {
            return Err(Error::AtInfinity);
        }
        let inv = self.field.inv(last)?;
        Ok(self.coords[..self.coords.len() - 1]
            .iter()
            .map(|c| self.field.mul(c, &inv))
            .collect())
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords.last().unwrap().is_zero()
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coords(&self) -> &[Value] {
        &self.coords
    }

    /// The point ∞ = [1, 0] of PF¹.
    pub fn pf1_infinity(field: &FieldSpec) -> Self {
        ProjPoint { field: field.clone(), coords: vec![field.one(), field.zero()] }
    }

    /// The point [x, 1] of PF¹.
    pub fn pf1_affine(field: &FieldSpec, x: &Value) -> Self {
        ProjPoint::new(field.clone(), vec![x.clone(), field.one()]).expect("second coordinate 1")
    }

    /// Affine value of a PF¹ point, or None for ∞.
    pub fn pf1_value(&self) -> Option<Value> {
        assert_eq!(self.dim(), 1, "pf1_value is for PF^1 points");
        if self.coords[1].is_zero() {
            None
        } else {
            Some(self.field.div(&self.coords[0], &self.coords[1]).expect("nonzero denominator"))
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            fmt_value(c, f)?;
        }
        write!(f, "]")
    }
}

// -- exact dense linear algebra over a field ---------------------------------

pub(crate) struct Matrix {
    pub n: usize,
    pub data: Vec<Value>, // row-major n×n
}

impl Matrix {
    pub fn get(&self, i: usize, j: usize) -> &Value {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Value) {
        self.data[i * self.n + j] = v;
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Matrix {
        let mut data = vec![field.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = field.one();
        }
        Matrix { n, data }
    }

    pub fn mul(&self, field: &FieldSpec, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix { n, data: vec![field.zero(); n * n] };
        for i in 0..n {
            for j in 0..n {
                let mut acc = field.zero();
                for k in 0..n {
                    acc = field.add(&acc, &field.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn apply(&self, field: &FieldSpec, v: &[Value]) -> Vec<Value> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = field.zero();
                for k in 0..n {
                    acc = field.add(&acc, &field.mul(self.get(i, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    /// Gaussian elimination; returns None for a singular matrix.
    pub fn inverse(&self, field: &FieldSpec) -> Option<Matrix> {
        let n = self.n;
        let mut a = Matrix { n, data: self.data.clone() };
        let mut inv = Matrix::identity(field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let pinv = field.inv(a.get(col, col)).ok()?;
            for j in 0..n {
                let av = field.mul(a.get(col, j), &pinv);
                a.set(col, j, av);
                let iv = field.mul(inv.get(col, j), &pinv);
                inv.set(col, j, iv);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let av = field.sub(a.get(r, j), &field.mul(&factor, a.get(col, j)));
                    a.set(r, j, av);
                    let iv = field.sub(inv.get(r, j), &field.mul(&factor, inv.get(col, j)));
                    inv.set(r, j, iv);
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self, field: &FieldSpec) -> bool {
        Matrix { n: self.n, data: self.data.clone() }.inverse(field).is_some()
    }

    /// Solve M·x = b for x, if M is invertible.
    pub fn solve(&self, field: &FieldSpec, b: &[Value]) -> Option<Vec<Value>> {
        self.inverse(field).map(|inv| inv.apply(field, b))
    }
}

impl ProjMap {
    /// Build from a row-major (n+1)×(n+1) matrix acting on PF^n; errors on
    /// singular input.
    pub fn new(field: FieldSpec, dim: usize, data: Vec<Value>) -> Result<Self> {
        let n = dim + 1;
        if data.len() != n * n {
            return Err(Error::DimMismatch);
        }
        let m = Matrix { n, data: data.clone() };
        if !m.is_invertible(&field) {
            return Err(Error::MapDegenerate);
        }
        let data = canonical_scale(&field, data)?;
        Ok(ProjMap { field, dim, data })
    }

    pub fn from_ints(field: &FieldSpec, dim: usize, entries: &[i128]) -> Result<Self> {
        ProjMap::new(
            field.clone(),
            dim,
            entries.iter().map(|&c| field.from_int(c)).collect(),
        )
    }

    pub fn identity(field: &FieldSpec, dim: usize) -> Self {
        let m = Matrix::identity(field, dim + 1);
        ProjMap { field: field.clone(), dim, data: m.data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn entries(&self) -> &[Value] {
        &self.data
    }

    fn matrix(&self) -> Matrix {
        Matrix { n: self.dim + 1, data: self.data.clone() }
    }

    pub fn compose(&self, other: &ProjMap) -> Result<ProjMap> {
        if self.dim != other.dim || self.field != other.field {
            return Err(Error::DimMismatch);
        }
        let m = self.matrix().mul(&self.field, &other.matrix());
        ProjMap::new(self.field.clone(), self.dim, m.data)
    }

    pub fn inverse(&self) -> ProjMap {
        let inv = self.matrix().inverse(&self.field).expect("ProjMap is invertible");
        ProjMap::new(self.field.clone(), self.dim, inv.data).expect("inverse is invertible")
    }

    /// The image [T x] of a point.
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        if p.dim() != self.dim || p.field != self.field {
            return Err(Error::DimMismatch);
        }
        ProjPoint::new(self.field.clone(), self.matrix().apply(&self.field, &p.coords))
    }

    /// The image hyperplane h∘τ⁻¹, so that p ∈ h ⟺ τp ∈ image.
    pub fn apply_to_hyperplane(&self, h: &ProjHyperplane) -> Result<ProjHyperplane> {
        if h.coeffs.len() != self.dim + 1 || h.field != self.field {
            return Err(Error::DimMismatch);
        }
        let inv = self.matrix().inverse(&self.field).expect("invertible");
        // coefficients transform as the row vector aᵀ·M⁻¹
        let n = self.dim + 1;
        let coeffs: Vec<Value> = (0..n)
            .map(|j| {
                let mut acc = self.field.zero();
                for i in 0..n {
                    acc = self.field.add(&acc, &self.field.mul(&h.coeffs[i], inv.get(i, j)));
                }
                acc
            })
            .collect();
        ProjHyperplane::new(self.field.clone(), coeffs)
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim + 1;
        write!(f, "[")?;
        for i in 0..n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..n {
                if j > 0 {
                    write!(f, ",")?;
                }
                fmt_value(&self.data[i * n + j], f)?;
            }
        }
        write!(f, "]")
    }
}

impl ProjHyperplane {
    pub fn new(field: FieldSpec, coeffs: Vec<Value>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::DimMismatch);
        }
        let coeffs = canonical_scale(&field, coeffs)?;
        Ok(ProjHyperplane { field, coeffs })
    }

    pub fn from_ints(field: &FieldSpec, coeffs: &[i128]) -> Result<Self> {
        ProjHyperplane::new(field.clone(), coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact incidence test: Σ aᵢxᵢ = 0.
    pub fn contains(&self, p: &ProjPoint) -> Result<bool> {
        if p.coords.len() != self.coeffs.len() || p.field != self.field {
            return Err(Error::DimMismatch);
        }
        let mut acc = self.field.zero();
        for (a, x) in self.coeffs.iter().zip(&p.coords) {
            acc = self.field.add(&acc, &self.field.mul(a, x));
        }
        Ok(acc.is_zero())
    }
}

/// Checks the frame condition: n+2 points of PF^n with no n+1 of them in a
/// common hyperplane (equivalently every (n+1)-subset of coordinate vectors
/// is a basis).
pub fn is_frame(points: &[ProjPoint]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = points[0].dim();
    let n = dim + 1;
    if points.len() != n + 1 {
        return false;
    }
    let field = points[0].field.clone();
    if points.iter().any(|p| p.dim() != dim || p.field != field) {
        return false;
    }
    // all (n+1)-subsets: drop each point in turn
    for skip in 0..points.len() {
        let mut data = Vec::with_capacity(n * n);
        for (i, p) in points.iter().enumerate() {
            if i == skip {
                continue;
            }
            data.extend(p.coords.iter().cloned());
        }
        let m = Matrix { n, data };
        if !m.is_invertible(&field) {
            return false;
        }
    }
    true
}

/// A ProjMap sending the canonical frame (f_1,…,f_{n+1},f_*) to the given
/// frame, built by the basis-rescaling construction.
fn map_from_canonical(points: &[ProjPoint]) -> Result<ProjMap> {
    let field = points[0].field.clone();
    let dim = points[0].dim();
    let n = dim + 1;
    // columns t_1..t_{n+1}
    let mut cols = Matrix { n, data: vec![field.zero(); n * n] };
    for (j, p) in points.iter().take(n).enumerate() {
        for i in 0..n {
            cols.set(i, j, p.coords[i].clone());
        }
    }
    let lambda = cols.solve(&field, &points[n].coords).ok_or(Error::NotAFrame)?;
    if lambda.iter().any(|l| l.is_zero()) {
        return Err(Error::NotAFrame);
    }
    // T has columns λ_j t_j
    let mut t = Matrix { n, data: vec![field.zero(); n * n] };
    for j in 0..n {
        for i in 0..n {
            t.set(i, j, field.mul(&lambda[j], &points[j].coords[i]));
        }
    }
    ProjMap::new(field, dim, t.data)
}

/// The unique projective transformation sending frame P to frame Q,
/// verified on all n+2 points before returning.
pub fn frame_map(p: &[ProjPoint], q: &[ProjPoint]) -> Result<ProjMap> {
    if !is_frame(p) || !is_frame(q) {
        return Err(Error::NotAFrame);
    }
    if p[0].dim() != q[0].dim() || p[0].field != q[0].field {
        return Err(Error::DimMismatch);
    }
    let tp = map_from_canonical(p)?;
    let tq = map_from_canonical(q)?;
    let tau = tq.compose(&tp.inverse())?;
    for (a, b) in p.iter().zip(q) {
        if &tau.apply(a)? != b {
            return Err(Error::MapDegenerate);
        }
    }
    Ok(tau)
}

fn wedge(field: &FieldSpec, a: &ProjPoint, b: &ProjPoint) -> Value {
    // a₁b₂ − a₂b₁; zero exactly when [a] = [b]
    field.sub(
        &field.mul(&a.coords[0], &b.coords[1]),
        &field.mul(&a.coords[1], &b.coords[0]),
    )
}

/// Cross ratio of four points of PF¹, computed homogeneously as
/// [(a∧b)(c∧d), (b∧c)(a∧d)]. The first three points must be pairwise
/// distinct; this realizes all limit cases uniformly, e.g. X(a,b,c,c) = 0
/// and X(a,b,c,a) = ∞.
pub fn cross_ratio(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint, d: &ProjPoint) -> Result<ProjPoint> {
    for p in [a, b, c, d] {
        if p.dim() != 1 {
            return Err(Error::DimMismatch);
        }
    }
    if a == b || b == c || a == c {
        return Err(Error::DegenerateTriple);
    }
    let field = a.field.clone();
    let num = field.mul(&wedge(&field, a, b), &wedge(&field, c, d));
    let den = field.mul(&wedge(&field, b, c), &wedge(&field, a, d));
    ProjPoint::new(field, vec![num, den])
}

/// The map d ↦ X(a,b,c,d) as an element of the transformation group: the
/// homogeneous form of the matrix [[b−a, (a−b)c], [c−b, (b−c)a]].
pub fn tau_abc(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Result<ProjMap> {
    for p in [a, b, c] {
        if p.dim() != 1 {
            return Err(Error::DimMismatch);
        }
    }
    if a == b || b == c || a == c {
        return Err(Error::DegenerateTriple);
    }
    let field = a.field.clone();
    let wab = wedge(&field, a, b);
    let wbc = wedge(&field, b, c);
    let data = vec![
        field.neg(&field.mul(&wab, &c.coords[1])),
        field.mul(&wab, &c.coords[0]),
        field.neg(&field.mul(&wbc, &a.coords[1])),
        field.mul(&wbc, &a.coords[0]),
    ];
    ProjMap::new(field, 1, data)
}

/// Identify a line transformation [[p,q],[r,s]] with the point [p,q,r,s] of
/// PF³. The image always avoids the quadric ps = qr (checked).
pub fn psi_embed(tau: &ProjMap) -> ProjPoint {
    assert_eq!(tau.dim(), 1, "psi embeds PF^1 transformations");
    let field = tau.field.clone();
    let p = ProjPoint::new(field.clone(), tau.data.clone()).expect("matrix nonzero");
    debug_assert!(!on_quadric(&p), "invertible matrices avoid ps = qr");
    p
}

/// Does a PF³ point lie on the quadric ps = qr?
pub fn on_quadric(p: &ProjPoint) -> bool {
    let f = &p.field;
    let ps = f.mul(&p.coords[0], &p.coords[3]);
    let qr = f.mul(&p.coords[1], &p.coords[2]);
    ps == qr
}

/// The plane π_ab ⊆ PF³ of transformations sending a to b: the homogeneous
/// constraint (b₂a₁)p + (b₂a₂)q − (b₁a₁)r − (b₁a₂)s = 0.
pub fn plane_of_pair(a: &ProjPoint, b: &ProjPoint) -> ProjHyperplane {
    assert_eq!(a.dim(), 1);
    assert_eq!(b.dim(), 1);
    let f = a.field.clone();
    let coeffs = vec![
        f.mul(&b.coords[1], &a.coords[0]),
        f.mul(&b.coords[1], &a.coords[1]),
        f.neg(&f.mul(&b.coords[0], &a.coords[0])),
        f.neg(&f.mul(&b.coords[0], &a.coords[1])),
    ];
    ProjHyperplane::new(f, coeffs).expect("a, b nonzero")
}

/// Exact incidence count between points and hyperplanes, with the per-point
/// histogram m(p).
pub fn incidence_count_projective(
    points: &[ProjPoint],
    planes: &[ProjHyperplane],
) -> Result<(u128, Vec<u64>)> {
    let mut histogram = vec![0u64; points.len()];
    let mut total = 0u128;
    for (i, p) in points.iter().enumerate() {
        for h in planes {
            if h.contains(p)? {
                histogram[i] += 1;
                total += 1;
            }
        }
    }
    Ok((total, histogram))
}

/// All points of PF^n over a finite field, in canonical form.
pub fn enumerate_points(field: &FieldSpec, dim: usize) -> Vec<ProjPoint> {
    let q = field.order().expect("finite field required");
    let n = dim + 1;
    let mut out = Vec::new();
    for lead in 0..n {
        // coords: 0,…,0,1,free…
        let free = n - lead - 1;
        let mut count = 1u64;
        for _ in 0..free {
            count = count.saturating_mul(q);
        }
        for mut idx in 0..count {
            let mut coords = vec![field.zero(); n];
            coords[lead] = field.one();
            for c in coords.iter_mut().skip(lead + 1) {
                *c = Value::Finite(idx % q);
                idx /= q;
            }
            out.push(ProjPoint { field: field.clone(), coords });
        }
    }
    out
}

/// The whole transformation group of PF^n over a small finite field, each
/// element in canonical form.
pub fn enumerate_maps(field: &FieldSpec, dim: usize) -> Vec<ProjMap> {
    let q = field.order().expect("finite field required");
    let n = dim + 1;
    let cells = n * n;
    let total = (q as u128).pow(cells as u32);
    assert!(total <= 1 << 32, "group enumeration is for desk-scale fields");
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut data = Vec::with_capacity(cells);
        for _ in 0..cells {
            data.push(Value::Finite((idx % q as u128) as u64));
            idx /= q as u128;
        }
        let m = Matrix { n, data: data.clone() };
        if !m.is_invertible(field) {
            continue;
        }
        let canon = canonical_scale(field, data).expect("nonzero matrix");
        if seen.insert(canon.clone()) {
            out.push(ProjMap { field: field.clone(), dim, data: canon });
        }
    }
    out
}
