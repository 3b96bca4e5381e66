//! Affine incidence engine over the exact fields, the extremal grid and
//! Elekes/Bourgain-Garaev constructions, and the sum-product-configuration
//! pipeline: foci search, configuration extraction, and the projective
//! reduction to partial difference and ratio sets.

use std::collections::HashSet;

use num::{BigInt, BigUint};

use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::field::{fq::is_prime, FieldSpec, Value};
use crate::projective::{frame_map, ProjPoint};
use crate::set::{energy, pairwise_set, EnergyKind, FiniteSet, PairGraph, SetOp};

/// Point (x, y) of the affine plane; field-scoped by the instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePoint {
    pub x: Value,
    pub y: Value,
}

/// Line ax + by + c = 0 with (a,b) ≠ (0,0), first nonzero of (a,b,c)
/// scaled to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineLine {
    pub a: Value,
    pub b: Value,
    pub c: Value,
}

impl AffinePoint {
    pub fn new(x: Value, y: Value) -> Self {
        AffinePoint { x, y }
    }

    pub fn from_ints(field: &FieldSpec, x: i128, y: i128) -> Self {
        AffinePoint { x: field.from_int(x), y: field.from_int(y) }
    }
}

impl AffineLine {
    /// Canonicalize a coefficient triple.
    pub fn new(field: &FieldSpec, a: Value, b: Value, c: Value) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateModulus("(a,b) must be nonzero".into()));
        }
        let lead = if !a.is_zero() { a.clone() } else { b.clone() };
        let inv = field.inv(&lead)?;
        Ok(AffineLine {
            a: field.mul(&a, &inv),
            b: field.mul(&b, &inv),
            c: field.mul(&c, &inv),
        })
    }

    pub fn from_ints(field: &FieldSpec, a: i128, b: i128, c: i128) -> Result<Self> {
        AffineLine::new(field, field.from_int(a), field.from_int(b), field.from_int(c))
    }

    /// The line through two distinct points.
    pub fn through(field: &FieldSpec, p: &AffinePoint, q: &AffinePoint) -> Result<Self> {
        let a = field.sub(&p.y, &q.y);
        let b = field.sub(&q.x, &p.x);
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateTriple);
        }
        let c = field.sub(&field.mul(&p.x, &q.y), &field.mul(&q.x, &p.y));
        AffineLine::new(field, a, b, c)
    }

    /// `y = slope·x + intercept`.
    pub fn slope_intercept(field: &FieldSpec, slope: &Value, intercept: &Value) -> Self {
        AffineLine::new(field, slope.clone(), field.from_int(-1), intercept.clone())
            .expect("b = -1 is nonzero")
    }

    /// The vertical line x = x0.
    pub fn vertical(field: &FieldSpec, x0: &Value) -> Self {
        AffineLine::new(field, field.one(), field.zero(), field.neg(x0)).expect("a = 1")
    }

    pub fn contains(&self, field: &FieldSpec, p: &AffinePoint) -> bool {
        let v = field.add(
            &field.add(&field.mul(&self.a, &p.x), &field.mul(&self.b, &p.y)),
            &self.c,
        );
        v.is_zero()
    }

    /// Gradient as Some(λ) for non-vertical lines, None for vertical.
    pub fn gradient(&self, field: &FieldSpec) -> Option<Value> {
        if self.b.is_zero() {
            None
        } else {
            Some(field.neg(&field.div(&self.a, &self.b).expect("b nonzero")))
        }
    }
}

/// A point set, a line set, and the cached incidence count.
#[derive(Clone, Debug)]
pub struct IncidenceInstance {
    field: FieldSpec,
    points: Vec<AffinePoint>,
    lines: Vec<AffineLine>,
    cached: u128,
}

impl IncidenceInstance {
    pub fn new(field: FieldSpec, mut points: Vec<AffinePoint>, mut lines: Vec<AffineLine>) -> Self {
        points.sort();
        points.dedup();
        lines.sort();
        lines.dedup();
        let cached = count_incidences(&field, &points, &lines);
        IncidenceInstance { field, points, lines, cached }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    pub fn lines(&self) -> &[AffineLine] {
        &self.lines
    }

    pub fn incidence_count(&self) -> u128 {
        self.cached
    }

    /// Recompute the count from scratch (the cache-revalidation invariant).
    pub fn recount(&self) -> u128 {
        count_incidences(&self.field, &self.points, &self.lines)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vd = |v: &Value| crate::field::ValueDisplay(v).to_string();
        serde_json::json!({
            "field": self.field.to_string(),
            "points": self.points.iter().map(|p| vec![vd(&p.x), vd(&p.y)]).collect::<Vec<_>>(),
            "lines": self.lines.iter().map(|l| vec![vd(&l.a), vd(&l.b), vd(&l.c)]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let field = crate::field::parse_field(
            v.get("field").and_then(|f| f.as_str()).ok_or_else(|| Error::Parse("missing field".into()))?,
        )?;
        let get = |key: &str| -> Result<Vec<Vec<String>>> {
            let arr = v
                .get(key)
                .and_then(|a| a.as_array())
                .ok_or_else(|| Error::Parse(format!("missing {key}")))?;
            arr.iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::Parse("row must be array".into()))
                        .map(|r| {
                            r.iter()
                                .map(|x| x.as_str().unwrap_or_default().to_string())
                                .collect()
                        })
                })
                .collect()
        };
        let mut points = Vec::new();
        for row in get("points")? {
            if row.len() != 2 {
                return Err(Error::Parse("point must be [x,y]".into()));
            }
            points.push(AffinePoint::new(
                crate::field::parse_element(&field, &row[0])?.into_value(),
                crate::field::parse_element(&field, &row[1])?.into_value(),
            ));
        }
        let mut lines = Vec::new();
        for row in get("lines")? {
            if row.len() != 3 {
                return Err(Error::Parse("line must be [a,b,c]".into()));
            }
            lines.push(AffineLine::new(
                &field,
                crate::field::parse_element(&field, &row[0])?.into_value(),
                crate::field::parse_element(&field, &row[1])?.into_value(),
                crate::field::parse_element(&field, &row[2])?.into_value(),
            )?);
        }
        Ok(IncidenceInstance::new(field, points, lines))
    }
}

fn count_incidences(field: &FieldSpec, points: &[AffinePoint], lines: &[AffineLine]) -> u128 {
    let mut n = 0u128;
    for p in points {
        for l in lines {
            if l.contains(field, p) {
                n += 1;
            }
        }
    }
    n
}

/// I(P, L), counted with multiplicity.
pub fn incidence_count(field: &FieldSpec, points: &[AffinePoint], lines: &[AffineLine]) -> u128 {
    count_incidences(field, points, lines)
}

/// Per-point incidence degrees.
pub fn point_degrees(field: &FieldSpec, points: &[AffinePoint], lines: &[AffineLine]) -> Vec<usize> {
    points
        .iter()
        .map(|p| lines.iter().filter(|l| l.contains(field, p)).count())
        .collect()
}

/// Per-line richness (number of incident points).
pub fn line_richness(field: &FieldSpec, points: &[AffinePoint], lines: &[AffineLine]) -> Vec<usize> {
    lines
        .iter()
        .map(|l| points.iter().filter(|p| l.contains(field, p)).count())
        .collect()
}

/// The set L(P) of lines determined by pairs, with μ(l) per line.
pub fn lines_determined(
    field: &FieldSpec,
    points: &[AffinePoint],
) -> Result<Vec<(AffineLine, usize)>> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints);
    }
    let mut seen: HashSet<AffineLine> = HashSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            seen.insert(AffineLine::through(field, &points[i], &points[j])?);
        }
    }
    let mut out: Vec<(AffineLine, usize)> = seen
        .into_iter()
        .map(|l| {
            let mu = points.iter().filter(|p| l.contains(field, p)).count();
            (l, mu)
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RichSide {
    Points,
    Lines,
}

/// Keep the points (or lines) incident to at least I(P,L)/2|P| lines (or
/// I(P,L)/2|L| points); the kept side carries at least half the incidences.
pub fn rich_filter(
    field: &FieldSpec,
    points: &[AffinePoint],
    lines: &[AffineLine],
    side: RichSide,
) -> Result<(Vec<AffinePoint>, Vec<AffineLine>, u128)> {
    let total = count_incidences(field, points, lines);
    if total == 0 {
        return Err(Error::NoIncidences);
    }
    match side {
        RichSide::Points => {
            let degs = point_degrees(field, points, lines);
            // keep p with deg(p) * 2|P| >= I
            let kept: Vec<AffinePoint> = points
                .iter()
                .zip(&degs)
                .filter(|(_, &d)| d as u128 * 2 * points.len() as u128 >= total)
                .map(|(p, _)| p.clone())
                .collect();
            let sub = count_incidences(field, &kept, lines);
            debug_assert!(2 * sub >= total);
            Ok((kept, lines.to_vec(), sub))
        }
        RichSide::Lines => {
            let rich = line_richness(field, points, lines);
            let kept: Vec<AffineLine> = lines
                .iter()
                .zip(&rich)
                .filter(|(_, &r)| r as u128 * 2 * lines.len() as u128 >= total)
                .map(|(l, _)| l.clone())
                .collect();
            let sub = count_incidences(field, points, &kept);
            debug_assert!(2 * sub >= total);
            Ok((points.to_vec(), kept, sub))
        }
    }
}

/// The dyadic class [2^j, 2^{j+1}) with maximal total mass; ties go to the
/// smaller j. Returns (j, keys of the class, mass).
pub fn dyadic_classes<K: Clone + Ord>(values: &[(K, u64)]) -> Result<(u32, Vec<K>, u128)> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut classes: std::collections::BTreeMap<u32, (Vec<K>, u128)> = Default::default();
    for (k, v) in values {
        if *v == 0 {
            return Err(Error::PreconditionFailed("values must be positive".into()));
        }
        let j = 63 - v.leading_zeros();
        let entry = classes.entry(j).or_default();
        entry.0.push(k.clone());
        entry.1 += *v as u128;
    }
    let (j, (mut keys, mass)) = classes
        .into_iter()
        .max_by(|(j1, (_, m1)), (j2, (_, m2))| m1.cmp(m2).then(j2.cmp(j1)))
        .expect("nonempty");
    keys.sort();
    Ok((j, keys, mass))
}

fn icbrt(n: u64) -> Option<u64> {
    let mut r = (n as f64).cbrt().round() as u64;
    while r > 0 && r * r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) * (r + 1) <= n {
        r += 1;
    }
    if r * r * r == n {
        Some(r)
    } else {
        None
    }
}

/// The Θ(N^{4/3}) grid construction: P = [1,N^{1/3}]×[1,2N^{2/3}],
/// L = {y = rx + s}, each line meeting exactly N^{1/3} points.
pub fn extremal_grid(field: &FieldSpec, n_param: u64) -> Result<IncidenceInstance> {
    let n3 = icbrt(n_param).ok_or(Error::NotACube(n_param))?;
    match field {
        FieldSpec::Rational => {}
        FieldSpec::Prime(ctx) => {
            // require N < (p/2)^{3/2}, i.e. 8N² < p³
            let p = ctx.p() as u128;
            if 8 * (n_param as u128) * (n_param as u128) >= p * p * p {
                return Err(Error::FieldTooSmall);
            }
        }
        _ => return Err(Error::PreconditionFailed("grid lives over Q or F_p".into())),
    }
    let mut points = Vec::new();
    for x in 1..=n3 {
        for y in 1..=2 * n3 * n3 {
            points.push(AffinePoint::from_ints(field, x as i128, y as i128));
        }
    }
    let mut lines = Vec::new();
    for r in 1..=n3 {
        for s in 1..=n3 * n3 {
            lines.push(AffineLine::slope_intercept(
                field,
                &field.from_int(r as i128),
                &field.from_int(s as i128),
            ));
        }
    }
    Ok(IncidenceInstance::new(field.clone(), points, lines))
}

/// The Elekes configuration: P = (A+A)×(AA), L = {y = a(x−b)}. The witness
/// incidences (b+c, ac) give I ≥ |A|³ whenever the lines are distinct.
pub fn elekes_config(a_set: &FiniteSet) -> Result<(IncidenceInstance, Certificate)> {
    if a_set.is_empty() {
        return Err(Error::EmptyInput);
    }
    let field = a_set.field().clone();
    let sums = pairwise_set(a_set, a_set, SetOp::Sum)?;
    let prods = pairwise_set(a_set, a_set, SetOp::Prod)?;
    let mut points = Vec::new();
    for x in sums.values() {
        for y in prods.values() {
            points.push(AffinePoint::new(x.clone(), y.clone()));
        }
    }
    let mut lines = Vec::new();
    let mut witnesses = 0u128;
    for a in a_set.values() {
        for b in a_set.values() {
            // y = a(x−b): ax − y − ab = 0
            let l = AffineLine::new(
                &field,
                a.clone(),
                field.from_int(-1),
                field.neg(&field.mul(a, b)),
            )?;
            for c in a_set.values() {
                let w = AffinePoint::new(field.add(b, c), field.mul(a, c));
                debug_assert!(l.contains(&field, &w), "witness incidence");
                if l.contains(&field, &w) {
                    witnesses += 1;
                }
            }
            lines.push(l);
        }
    }
    let inst = IncidenceInstance::new(field, points, lines);
    let n = a_set.len();
    let mut cert = Certificate::new("elekes", format!("|A|={n}"));
    cert.quantity("|P|", inst.points.len())
        .quantity("|L|", inst.lines.len())
        .quantity("I", inst.incidence_count())
        .quantity("witnesses", witnesses)
        .bound_eq("witness count = |A|^3", BigInt::from(witnesses), BigInt::from(n).pow(3));
    if inst.lines.len() == n * n {
        cert.bound_ge("I >= |A|^3", BigInt::from(inst.incidence_count()), BigInt::from(n).pow(3));
    } else {
        // lines collapsed (0 ∈ A); the deduplicated count may fall short
        cert.monitor_ge("I >= |A|^3", BigInt::from(inst.incidence_count()), BigInt::from(n).pow(3));
    }
    Ok((inst, cert))
}

/// Scan all y for the maximal intersection of {g^n : n ≤ M} with
/// {y+j : j ≤ M}, M = ⌈√(pN)⌉; returns N elements of the best
/// intersection, whose sums and products both land in M-length
/// progressions.
pub fn bourgain_garaev_set(p: u64, n_size: u64) -> Result<(FiniteSet, Certificate)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n_size == 0 || n_size > p {
        return Err(Error::PreconditionFailed("need 1 <= N <= p".into()));
    }
    let field = FieldSpec::prime(p)?;
    let g = crate::field::fq::find_generator(p)?;
    // M = ceil(sqrt(pN))
    let target = (p as u128) * (n_size as u128);
    let mut m = (target as f64).sqrt() as u128;
    while m * m < target {
        m += 1;
    }
    while m > 0 && (m - 1) * (m - 1) >= target {
        m -= 1;
    }
    let m = (m as u64).min(p - 1);
    let mut is_power = vec![false; p as usize];
    let mut acc = 1u64;
    for _ in 1..=m {
        acc = crate::field::fq::mul_mod(acc, g, p);
        is_power[acc as usize] = true;
    }
    let mut best_y = 0u64;
    let mut best_count = 0u64;
    for y in 0..p {
        let mut count = 0u64;
        for j in 1..=m {
            let v = (y + j) % p;
            if is_power[v as usize] {
                count += 1;
            }
        }
        if count > best_count {
            best_count = count;
            best_y = y;
        }
    }
    let mut elems = Vec::new();
    for j in 1..=m {
        let v = (best_y + j) % p;
        if is_power[v as usize] {
            elems.push(Value::Finite(v));
            if elems.len() as u64 == n_size {
                break;
            }
        }
    }
    let a = FiniteSet::new(field, elems);
    let sums = pairwise_set(&a, &a, SetOp::Sum)?;
    let prods = pairwise_set(&a, &a, SetOp::Prod)?;
    let max_side = sums.len().max(prods.len());
    let mut cert = Certificate::new("bourgain-garaev", format!("p={p},N={n_size}"));
    cert.quantity("M", m)
        .quantity("y", best_y)
        .quantity("intersection", best_count)
        .quantity("|A|", a.len())
        .quantity("|A+A|", sums.len())
        .quantity("|AA|", prods.len())
        .bound_ge("intersection >= N", BigInt::from(best_count), BigInt::from(n_size))
        .bound_le("max(|A+A|,|AA|) <= 2M+1", BigInt::from(max_side), BigInt::from(2 * m + 1));
    Ok((a, cert))
}

/// A focus candidate: an affine point, or a point at infinity identified by
/// the common gradient of the lines through it (None = vertical).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Focus {
    Affine(AffinePoint),
    AtInfinity(Option<Value>),
}

/// Group P by direction from the focus: true iff the points sit on at most
/// K lines through it; the supporting lines are returned.
pub fn focus_check(
    field: &FieldSpec,
    points: &[AffinePoint],
    focus: &Focus,
    k: usize,
) -> Result<(bool, Vec<AffineLine>)> {
    let lines = supporting_lines(field, points, focus)?;
    Ok((lines.len() <= k, lines))
}

fn supporting_lines(
    field: &FieldSpec,
    points: &[AffinePoint],
    focus: &Focus,
) -> Result<Vec<AffineLine>> {
    let mut lines: HashSet<AffineLine> = HashSet::new();
    match focus {
        Focus::Affine(f) => {
            if points.contains(f) {
                return Err(Error::FocusInSet);
            }
            for p in points {
                lines.insert(AffineLine::through(field, f, p)?);
            }
        }
        Focus::AtInfinity(gradient) => {
            for p in points {
                let l = match gradient {
                    Some(lambda) => {
                        let intercept = field.sub(&p.y, &field.mul(lambda, &p.x));
                        AffineLine::slope_intercept(field, lambda, &intercept)
                    }
                    None => AffineLine::vertical(field, &p.x),
                };
                lines.insert(l);
            }
        }
    }
    let mut out: Vec<AffineLine> = lines.into_iter().collect();
    out.sort();
    Ok(out)
}

/// P_pL = {q ∈ P : q ≠ p, l_pq ∈ L}.
pub fn points_through_focus(
    field: &FieldSpec,
    points: &[AffinePoint],
    lines: &HashSet<AffineLine>,
    p: &AffinePoint,
) -> Result<Vec<AffinePoint>> {
    if !points.contains(p) {
        return Err(Error::NotInP);
    }
    let mut out = Vec::new();
    for q in points {
        if q == p {
            continue;
        }
        if lines.contains(&AffineLine::through(field, p, q)?) {
            out.push(q.clone());
        }
    }
    Ok(out)
}

/// The Θ(K) regularity gate: max degree ≤ factor · min degree.
pub fn regularity(degrees: &[usize], factor: usize) -> Result<(usize, usize)> {
    let min = degrees.iter().copied().min().unwrap_or(0);
    let max = degrees.iter().copied().max().unwrap_or(0);
    if min == 0 || max > factor * min {
        return Err(Error::RegularityViolated(factor as u64));
    }
    Ok((min, max))
}

/// Incidence lists for a point-line arrangement, the workhorse behind the
/// configuration pipeline. Over F_p the lists are built by solving each
/// line for its points, so construction is O(|L|·p) instead of O(|P||L|).
pub struct Arrangement {
    points: Vec<AffinePoint>,
    lines: Vec<AffineLine>,
    point_lines: Vec<Vec<u32>>,
    line_points: Vec<Vec<u32>>,
    total: u128,
}

impl Arrangement {
    pub fn build(field: &FieldSpec, points: &[AffinePoint], lines: &[AffineLine]) -> Self {
        let mut points = points.to_vec();
        points.sort();
        points.dedup();
        let mut lines = lines.to_vec();
        lines.sort();
        lines.dedup();
        let mut point_lines = vec![Vec::new(); points.len()];
        let mut line_points = vec![Vec::new(); lines.len()];
        let solve = field.order().is_some() && points.len() * lines.len() > 2_000_000;
        if solve {
            let index: std::collections::HashMap<&AffinePoint, u32> =
                points.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
            let q = field.order().unwrap();
            for (li, l) in lines.iter().enumerate() {
                if !l.b.is_zero() {
                    let binv = field.inv(&l.b).expect("nonzero");
                    for x in 0..q {
                        let xv = Value::Finite(x);
                        let y = field.mul(
                            &field.neg(&field.add(&l.c, &field.mul(&l.a, &xv))),
                            &binv,
                        );
                        if let Some(&pi) = index.get(&AffinePoint::new(xv, y)) {
                            point_lines[pi as usize].push(li as u32);
                            line_points[li].push(pi);
                        }
                    }
                } else {
                    let x = field.neg(&field.div(&l.c, &l.a).expect("a nonzero"));
                    for y in 0..q {
                        if let Some(&pi) = index.get(&AffinePoint::new(x.clone(), Value::Finite(y))) {
                            point_lines[pi as usize].push(li as u32);
                            line_points[li].push(pi);
                        }
                    }
                }
            }
        } else {
            for (pi, p) in points.iter().enumerate() {
                for (li, l) in lines.iter().enumerate() {
                    if l.contains(field, p) {
                        point_lines[pi].push(li as u32);
                        line_points[li].push(pi as u32);
                    }
                }
            }
        }
        for v in point_lines.iter_mut() {
            v.sort_unstable();
        }
        for v in line_points.iter_mut() {
            v.sort_unstable();
        }
        let total = line_points.iter().map(|v| v.len() as u128).sum();
        Arrangement { points, lines, point_lines, line_points, total }
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    pub fn lines(&self) -> &[AffineLine] {
        &self.lines
    }

    pub fn total_incidences(&self) -> u128 {
        self.total
    }

    pub fn degree(&self, pi: usize) -> usize {
        self.point_lines[pi].len()
    }

    pub fn richness(&self, li: usize) -> usize {
        self.line_points[li].len()
    }

    /// |P_pL|: lines through p pairwise share only p, so the counts of
    /// their other points add up exactly.
    pub fn ppl_size(&self, pi: usize) -> usize {
        self.point_lines[pi].iter().map(|&l| self.line_points[l as usize].len() - 1).sum()
    }

    /// Index set of P_pL.
    pub fn ppl_indices(&self, pi: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.ppl_size(pi));
        for &l in &self.point_lines[pi] {
            for &r in &self.line_points[l as usize] {
                if r as usize != pi {
                    out.push(r);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Result of the individual-foci pass: the rich subset P₁ and the realized
/// minimum of |P_pL| over it.
pub struct FocusSearch {
    pub p1: Vec<AffinePoint>,
    pub min_ppl: usize,
    pub cert: Certificate,
}

/// Indices of P₁ within an arrangement, restricted to a sub-point-set: two
/// rich-filter passes over (Q, L).
fn rich_pass_indices(arr: &Arrangement, q_flags: &[bool]) -> Result<Vec<usize>> {
    let q_size = q_flags.iter().filter(|&&f| f).count();
    if q_size == 0 {
        return Err(Error::NoIncidences);
    }
    // richness within Q
    let q_rich: Vec<usize> = arr
        .line_points
        .iter()
        .map(|pts| pts.iter().filter(|&&r| q_flags[r as usize]).count())
        .collect();
    let total: u128 = q_rich.iter().map(|&r| r as u128).sum();
    if total == 0 {
        return Err(Error::NoIncidences);
    }
    let nl = arr.lines.len() as u128;
    let l1: Vec<bool> = q_rich.iter().map(|&r| r as u128 * 2 * nl >= total).collect();
    let i1: u128 = q_rich
        .iter()
        .zip(&l1)
        .filter(|(_, &keep)| keep)
        .map(|(&r, _)| r as u128)
        .sum();
    let out: Vec<usize> = (0..arr.points.len())
        .filter(|&pi| {
            if !q_flags[pi] {
                return false;
            }
            let deg1 = arr.point_lines[pi].iter().filter(|&&l| l1[l as usize]).count();
            deg1 as u128 * 2 * q_size as u128 >= i1
        })
        .collect();
    Ok(out)
}

/// Two rich-filter passes produce P₁ ⊆ P, |P₁| ≥ |P|/4, whose every point
/// sees many points of P along lines of L.
pub fn find_focus(
    field: &FieldSpec,
    points: &[AffinePoint],
    lines: &[AffineLine],
) -> Result<FocusSearch> {
    let arr = Arrangement::build(field, points, lines);
    find_focus_arr(&arr)
}

fn find_focus_arr(arr: &Arrangement) -> Result<FocusSearch> {
    let degrees: Vec<usize> = (0..arr.points.len()).map(|i| arr.degree(i)).collect();
    let (kmin, kmax) = regularity(&degrees, 4)?;
    let all = vec![true; arr.points.len()];
    let p1_idx = rich_pass_indices(arr, &all)?;
    let min_ppl = p1_idx.iter().map(|&i| arr.ppl_size(i)).min().unwrap_or(0);
    let p1: Vec<AffinePoint> = p1_idx.iter().map(|&i| arr.points[i].clone()).collect();
    let mut cert = Certificate::new(
        "finding-individual-foci",
        format!("|P|={},|L|={}", arr.points.len(), arr.lines.len()),
    );
    cert.quantity("Kmin", kmin)
        .quantity("Kmax", kmax)
        .quantity("|P1|", p1.len())
        .quantity("minPpL", min_ppl)
        .bound_ge("4|P1| >= |P|", BigInt::from(4 * p1.len()), BigInt::from(arr.points.len()))
        .monitor_ge(
            "16 minPpL |L| >= K^2|P|",
            BigInt::from(16usize) * BigInt::from(min_ppl) * BigInt::from(arr.lines.len()),
            BigInt::from(kmin) * BigInt::from(kmin) * BigInt::from(arr.points.len()),
        );
    Ok(FocusSearch { p1, min_ppl, cert })
}

/// Two-step greedy: the best p₁ by |P_pL|, then the best p₂ inside P_{p₁L}
/// by intersection size.
pub fn find_paired_foci(
    field: &FieldSpec,
    points: &[AffinePoint],
    lines: &[AffineLine],
) -> Result<(AffinePoint, AffinePoint, Vec<AffinePoint>, Certificate)> {
    let arr = Arrangement::build(field, points, lines);
    let (i1, i2, inter_idx, cert) = paired_foci_arr(&arr)?;
    let inter = inter_idx.iter().map(|&i| arr.points[i as usize].clone()).collect();
    Ok((arr.points[i1].clone(), arr.points[i2].clone(), inter, cert))
}

fn paired_foci_arr(arr: &Arrangement) -> Result<(usize, usize, Vec<u32>, Certificate)> {
    let search_p1_idx = {
        let all = vec![true; arr.points.len()];
        rich_pass_indices(arr, &all)?
    };
    // degrees must pass the regularity gate first
    let degrees: Vec<usize> = (0..arr.points.len()).map(|i| arr.degree(i)).collect();
    let (kmin, _) = regularity(&degrees, 4)?;
    let mut best1: Option<(usize, usize)> = None;
    for &i in &search_p1_idx {
        let n = arr.ppl_size(i);
        if best1.map_or(true, |(bn, bi)| n > bn || (n == bn && i < bi)) {
            best1 = Some((n, i));
        }
    }
    let (_, p1_idx) = best1.ok_or(Error::NoIncidences)?;
    let ppl1 = arr.ppl_indices(p1_idx);
    let mut in_p1l = vec![false; arr.points.len()];
    for &r in &ppl1 {
        in_p1l[r as usize] = true;
    }
    let mut best2: Option<(usize, usize)> = None;
    for &q in &ppl1 {
        let q = q as usize;
        let mut n = 0usize;
        for &l in &arr.point_lines[q] {
            for &r in &arr.line_points[l as usize] {
                if r as usize != q && in_p1l[r as usize] {
                    n += 1;
                }
            }
        }
        if best2.map_or(true, |(bn, bq)| n > bn || (n == bn && q < bq)) {
            best2 = Some((n, q));
        }
    }
    let (n2, p2_idx) = best2.ok_or(Error::NoIncidences)?;
    let mut inter = Vec::with_capacity(n2);
    for &l in &arr.point_lines[p2_idx] {
        for &r in &arr.line_points[l as usize] {
            if r as usize != p2_idx && in_p1l[r as usize] {
                inter.push(r);
            }
        }
    }
    inter.sort_unstable();
    let mut cert = Certificate::new(
        "finding-paired-foci",
        format!("|P|={},|L|={}", arr.points.len(), arr.lines.len()),
    );
    cert.quantity("|Pp1L ∩ Pp2L|", n2).monitor_ge(
        "256 |Q| |L|^2 >= |P|K^4",
        BigInt::from(256usize) * BigInt::from(n2) * BigInt::from(arr.lines.len()).pow(2),
        BigInt::from(arr.points.len()) * BigInt::from(kmin).pow(4),
    );
    Ok((p1_idx, p2_idx, inter, cert))
}

/// Four foci on-and-off a base line, with the subset they focus.
#[derive(Clone, Debug)]
pub struct SPConfiguration {
    pub field: FieldSpec,
    pub points: Vec<AffinePoint>,
    pub foci: [AffinePoint; 4],
    pub base_line: AffineLine,
    pub k: usize,
}

impl SPConfiguration {
    /// Re-check every invariant: each focus is a K-focus for the subset,
    /// the base line carries p₂, p₃, p₄ but not p₁ and no subset point.
    pub fn validate(&self) -> Result<()> {
        for f in &self.foci {
            let (ok, _) =
                focus_check(&self.field, &self.points, &Focus::Affine(f.clone()), self.k)?;
            if !ok {
                return Err(Error::HypothesisFailed("focus property".into()));
            }
        }
        let bl = &self.base_line;
        if bl.contains(&self.field, &self.foci[0]) {
            return Err(Error::HypothesisFailed("base line through p1".into()));
        }
        for f in &self.foci[1..] {
            if !bl.contains(&self.field, f) {
                return Err(Error::HypothesisFailed("base line misses p2/p3/p4".into()));
            }
        }
        if self.points.iter().any(|p| bl.contains(&self.field, p)) {
            return Err(Error::HypothesisFailed("subset point on base line".into()));
        }
        Ok(())
    }
}

/// The full pipeline: hypothesis gates, paired foci, the second pigeonhole
/// along lines through p₂, base-line selection, and the exhaustive choice
/// of p₃, p₄ maximizing the final intersection.
pub fn find_sp_configuration(
    field: &FieldSpec,
    points: &[AffinePoint],
    lines: &[AffineLine],
) -> Result<SPConfiguration> {
    let arr = Arrangement::build(field, points, lines);
    let degrees: Vec<usize> = (0..arr.points().len()).map(|i| arr.degree(i)).collect();
    let (_, kmax) = regularity(&degrees, 4)
        .map_err(|_| Error::HypothesisFailed("theta-regularity".into()))?;
    let np = arr.points().len() as u128;
    let nl = arr.lines().len() as u128;
    // K >= |L|^{3/5}/|P|^{1/5}  ⇔  K^5 |P| >= |L|^3
    if BigInt::from(kmax).pow(5) * BigInt::from(np) < BigInt::from(nl).pow(3) {
        return Err(Error::HypothesisFailed("K-lower-bound".into()));
    }
    // line richness cap: max richness <= min(|P|K^8/|L|^4, |P|K^4/|L|^2)
    let max_rich = (0..arr.lines().len()).map(|l| arr.richness(l)).max().unwrap_or(0);
    let cap1 = BigInt::from(max_rich) * BigInt::from(nl).pow(4)
        <= BigInt::from(np) * BigInt::from(kmax).pow(8);
    let cap2 = BigInt::from(max_rich) * BigInt::from(nl).pow(2)
        <= BigInt::from(np) * BigInt::from(kmax).pow(4);
    if !cap1 || !cap2 {
        return Err(Error::HypothesisFailed("richness-cap".into()));
    }

    let (p1_idx, p2_idx, q_idx, _) = paired_foci_arr(&arr)?;
    if q_idx.len() < 2 {
        return Err(Error::HypothesisFailed("paired-intersection-too-small".into()));
    }
    let mut q_flags = vec![false; arr.points().len()];
    for &r in &q_idx {
        q_flags[r as usize] = true;
    }
    // rich pass inside Q
    let q1_idx = match rich_pass_indices(&arr, &q_flags) {
        Ok(v) => v,
        Err(Error::NoIncidences) => q_idx.iter().map(|&r| r as usize).collect(),
        Err(e) => return Err(e),
    };
    let mut q1_flags = vec![false; arr.points().len()];
    for &r in &q1_idx {
        q1_flags[r] = true;
    }
    // J: lines of L through p2 supporting Q1; Q1-count per such line
    let j: Vec<(u32, usize)> = arr.point_lines[p2_idx]
        .iter()
        .map(|&l| {
            let cnt = arr.line_points[l as usize]
                .iter()
                .filter(|&&r| q1_flags[r as usize])
                .count();
            (l, cnt)
        })
        .filter(|&(_, cnt)| cnt > 0)
        .collect();
    // J1: members incident to at least |Q1|/(2|J|) points of Q1
    let j1: Vec<u32> = j
        .iter()
        .filter(|&&(_, cnt)| cnt as u128 * 2 * j.len() as u128 >= q1_idx.len() as u128)
        .map(|&(l, _)| l)
        .collect();
    if j1.len() < 2 {
        return Err(Error::HypothesisFailed("J1-pigeonhole".into()));
    }
    // base line: smallest member of J1 avoiding p1 (lines are sorted, so
    // index order is canonical order)
    let p1_pt = arr.points()[p1_idx].clone();
    let lstar_idx = *j1
        .iter()
        .find(|&&l| !arr.lines()[l as usize].contains(field, &p1_pt))
        .ok_or_else(|| Error::HypothesisFailed("no base line avoiding p1".into()))?;
    let lstar = arr.lines()[lstar_idx as usize].clone();
    let candidates: Vec<usize> = arr.line_points[lstar_idx as usize]
        .iter()
        .map(|&r| r as usize)
        .filter(|&r| q1_flags[r])
        .collect();
    if candidates.len() < 2 {
        return Err(Error::HypothesisFailed("base-line-support".into()));
    }
    // Q_pL within the ambient Q, as an index set
    let q_focus = |p: usize| -> Vec<u32> {
        let mut out = Vec::new();
        for &l in &arr.point_lines[p] {
            for &r in &arr.line_points[l as usize] {
                if r as usize != p && q_flags[r as usize] {
                    out.push(r);
                }
            }
        }
        out
    };
    // exhaustive pair maximization of |Q_{p3 L} ∩ Q_{p4 L}|
    let mut best: Option<(usize, usize, usize, Vec<u32>)> = None;
    for (i, &p3) in candidates.iter().enumerate() {
        let mut in_q3 = vec![false; arr.points().len()];
        for r in q_focus(p3) {
            in_q3[r as usize] = true;
        }
        for &p4 in candidates.iter().skip(i + 1) {
            let inter: Vec<u32> =
                q_focus(p4).into_iter().filter(|&r| in_q3[r as usize]).collect();
            let better = match &best {
                None => true,
                Some((bn, b3, b4, _)) => {
                    inter.len() > *bn || (inter.len() == *bn && (p3, p4) < (*b3, *b4))
                }
            };
            if better {
                best = Some((inter.len(), p3, p4, inter));
            }
        }
    }
    let (_, p3_idx, p4_idx, inter) =
        best.ok_or_else(|| Error::HypothesisFailed("base-line-support".into()))?;
    let p2_pt = arr.points()[p2_idx].clone();
    let p3_pt = arr.points()[p3_idx].clone();
    let p4_pt = arr.points()[p4_idx].clone();
    // final subset: off the base line and away from the foci
    let subset: Vec<AffinePoint> = inter
        .into_iter()
        .map(|r| arr.points()[r as usize].clone())
        .filter(|r| !lstar.contains(field, r) && *r != p1_pt && *r != p2_pt)
        .collect();
    if subset.is_empty() {
        return Err(Error::HypothesisFailed("empty-configuration".into()));
    }
    // realized K: max supporting-line count over the four foci
    let mut k_real = 0usize;
    for f in [&p1_pt, &p2_pt, &p3_pt, &p4_pt] {
        let lines_f = supporting_lines(field, &subset, &Focus::Affine(f.clone()))?;
        k_real = k_real.max(lines_f.len());
    }
    let cfg = SPConfiguration {
        field: field.clone(),
        points: subset,
        foci: [p1_pt, p2_pt, p3_pt, p4_pt],
        base_line: lstar,
        k: k_real,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Smallest canonical projective point completing three non-collinear
/// points to a frame of PF².
fn fourth_frame_point(field: &FieldSpec, triple: &[ProjPoint; 3]) -> Result<ProjPoint> {
    let candidates: Vec<ProjPoint> = match field.order() {
        Some(_) => crate::projective::enumerate_points(field, 2),
        None => {
            // deterministic small rational points
            let mut v = Vec::new();
            for x in -3i128..=3 {
                for y in -3i128..=3 {
                    v.push(ProjPoint::from_ints(field, &[x, y, 1]).expect("affine point"));
                }
            }
            v
        }
    };
    for cand in candidates {
        let frame = [triple[0].clone(), triple[1].clone(), triple[2].clone(), cand.clone()];
        if crate::projective::is_frame(&frame) {
            return Ok(cand);
        }
    }
    Err(Error::MapDegenerate)
}

/// Projective reduction of a sum-product configuration: map p₁ → [0,0,1],
/// p₃ → [0,1,0], p₄ → [1,0,0]; the images of the subset become G ⊆ A×B and
/// the gradient normalization B′ = −λB turns the p₂-direction into plain
/// differences. All four ≤ K bounds and |G| = |points| are re-verified.
pub fn reduce_sp_configuration(
    cfg: &SPConfiguration,
) -> Result<(FiniteSet, FiniteSet, PairGraph, Certificate)> {
    cfg.validate()?;
    let field = &cfg.field;
    let to_proj = |p: &AffinePoint| ProjPoint::embed_affine(field, &[p.x.clone(), p.y.clone()]);
    let src_triple = [to_proj(&cfg.foci[0]), to_proj(&cfg.foci[2]), to_proj(&cfg.foci[3])];
    let dst_triple = [
        ProjPoint::from_ints(field, &[0, 0, 1])?,
        ProjPoint::from_ints(field, &[0, 1, 0])?,
        ProjPoint::from_ints(field, &[1, 0, 0])?,
    ];
    let src4 = fourth_frame_point(field, &src_triple)?;
    let dst4 = ProjPoint::from_ints(field, &[1, 1, 1])?;
    let src = [src_triple[0].clone(), src_triple[1].clone(), src_triple[2].clone(), src4];
    let dst = [dst_triple[0].clone(), dst_triple[1].clone(), dst_triple[2].clone(), dst4];
    let tau = frame_map(&src, &dst)?;

    // gradient of the p2 image: τ(p2) = [1, λ, 0]
    let p2_img = tau.apply(&to_proj(&cfg.foci[1]))?;
    if !p2_img.is_at_infinity() {
        return Err(Error::MapDegenerate);
    }
    let lambda = {
        let coords = p2_img.coords();
        if coords[0].is_zero() {
            return Err(Error::MapDegenerate); // would coincide with τ(p3)
        }
        field.div(&coords[1], &coords[0])?
    };
    if lambda.is_zero() {
        return Err(Error::MapDegenerate); // would coincide with τ(p4)
    }

    let mut pairs: Vec<(Value, Value)> = Vec::new();
    for p in &cfg.points {
        let img = tau.apply(&to_proj(p))?;
        let aff = img.to_affine().map_err(|_| Error::MapDegenerate)?;
        // gradient normalization: with b' = y/λ, the difference a − b' runs
        // over the ≤ K lines of the pencil through τ(p₂) = [1, λ, 0]
        let b = field.div(&aff[1], &lambda)?;
        pairs.push((aff[0].clone(), b));
    }
    let a_set = FiniteSet::new(field.clone(), pairs.iter().map(|(a, _)| a.clone()).collect());
    let b_set = FiniteSet::new(field.clone(), pairs.iter().map(|(_, b)| b.clone()).collect());
    let edges: Vec<(u32, u32)> = pairs
        .iter()
        .map(|(a, b)| {
            (
                a_set.index_of(a).expect("member") as u32,
                b_set.index_of(b).expect("member") as u32,
            )
        })
        .collect();
    let graph = PairGraph::new(a_set.clone(), b_set.clone(), edges)?;

    let diff = crate::set::partial_pairwise_set(&graph, SetOp::Diff)?;
    // ratio set skips zero divisors, matching A/B = A(B∖{0})⁻¹
    let ratio = {
        let mut vals = Vec::new();
        for &(i, j) in graph.edges() {
            let b = graph.right().value(j as usize);
            if b.is_zero() {
                continue;
            }
            vals.push(field.div(graph.left().value(i as usize), b)?);
        }
        FiniteSet::new(field.clone(), vals)
    };
    let k = cfg.k;
    let mut cert = Certificate::new(
        "sp-reduction",
        format!("|points|={},K={}", cfg.points.len(), k),
    );
    cert.quantity("|A|", a_set.len())
        .quantity("|B|", b_set.len())
        .quantity("|G|", graph.edge_count())
        .quantity("|A-G-B|", diff.len())
        .quantity("|A/G/B|", ratio.len())
        .quantity("lambda", crate::field::ValueDisplay(&lambda))
        .bound_eq("|G| = |points|", BigInt::from(graph.edge_count()), BigInt::from(cfg.points.len()))
        .bound_le("|A| <= K", BigInt::from(a_set.len()), BigInt::from(k))
        .bound_le("|B| <= K", BigInt::from(b_set.len()), BigInt::from(k))
        .bound_le("|A-G-B| <= K", BigInt::from(diff.len()), BigInt::from(k))
        .bound_le("|A/G/B| <= K", BigInt::from(ratio.len()), BigInt::from(k));
    Ok((a_set, b_set, graph, cert))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialSPVersion {
    V1,
    V2,
}

/// Exact big-integer evaluation of the partial sum-product inequalities
/// (monitor: the o(1) factors and implicit constants are dropped).
pub fn partial_sumproduct_check(g: &PairGraph, version: PartialSPVersion) -> Result<Certificate> {
    let p = match g.field() {
        FieldSpec::Prime(ctx) => ctx.p(),
        _ => return Err(Error::PreconditionFailed("F_p instance required".into())),
    };
    let sqrt_p = {
        let mut s = (p as f64).sqrt() as u64;
        while s * s < p {
            s += 1;
        }
        while s > 0 && (s - 1) * (s - 1) >= p {
            s -= 1;
        }
        s // ⌈√p⌉
    };
    let a = g.left().len();
    let b = g.right().len();
    let edges = g.edge_count();
    let diff = crate::set::partial_pairwise_set(g, SetOp::Diff)?.len();
    let ratio = {
        let field = g.field().clone();
        let mut vals = Vec::new();
        for &(i, j) in g.edges() {
            let bv = g.right().value(j as usize);
            if bv.is_zero() {
                continue;
            }
            vals.push(field.div(g.left().value(i as usize), bv)?);
        }
        FiniteSet::new(field, vals).len()
    };
    let (lemma, lhs, rhs) = match version {
        PartialSPVersion::V1 => {
            if a as u64 > sqrt_p {
                return Err(Error::PreconditionFailed("|A| <= ceil(sqrt p)".into()));
            }
            (
                "partial-sumproduct-v1",
                BigUint::from(edges).pow(55),
                BigUint::from(a).pow(36)
                    * BigUint::from(b).pow(37)
                    * BigUint::from(diff).pow(28)
                    * BigUint::from(ratio).pow(8),
            )
        }
        PartialSPVersion::V2 => {
            if edges as u64 > sqrt_p * b as u64 {
                return Err(Error::PreconditionFailed("|G| <= ceil(sqrt p)|B|".into()));
            }
            (
                "partial-sumproduct-v2",
                BigUint::from(edges).pow(67),
                BigUint::from(a).pow(44)
                    * BigUint::from(b).pow(45)
                    * BigUint::from(diff).pow(28)
                    * BigUint::from(ratio).pow(16),
            )
        }
    };
    let ratio_f = big_ratio(&lhs, &rhs);
    let mut cert = Certificate::new(lemma, format!("|A|={a},|B|={b},|G|={edges},p={p}"));
    cert.quantity("|A-G-B|", diff)
        .quantity("|A/G/B|", ratio)
        .quantity("lhs", &lhs)
        .quantity("rhs", &rhs)
        .quantity("ratio", format!("{ratio_f:.6}"));
    cert.monitor_le("lhs <= rhs (constants suppressed)", BigInt::from(lhs), BigInt::from(rhs));
    Ok(cert)
}

fn big_ratio(lhs: &BigUint, rhs: &BigUint) -> f64 {
    let l: f64 = lhs.to_string().parse().unwrap_or(f64::MAX);
    let r: f64 = rhs.to_string().parse().unwrap_or(f64::MAX);
    if r == 0.0 {
        f64::INFINITY
    } else {
        l / r
    }
}

/// E_×(A)⁴ against |A−A|⁷|A|⁴, exact sides, monitor semantics.
pub fn rudnev_check(a_set: &FiniteSet) -> Result<Certificate> {
    let p = match a_set.field() {
        FieldSpec::Prime(ctx) => ctx.p(),
        _ => return Err(Error::PreconditionFailed("F_p instance required".into())),
    };
    let mut sqrt_p = (p as f64).sqrt() as u64;
    while sqrt_p * sqrt_p < p {
        sqrt_p += 1;
    }
    if a_set.len() as u64 > sqrt_p {
        return Err(Error::PreconditionFailed("|A| <= ceil(sqrt p)".into()));
    }
    let emul = energy(a_set, a_set, EnergyKind::Multiplicative)?;
    let diff = pairwise_set(a_set, a_set, SetOp::Diff)?;
    let lhs = BigUint::from(emul).pow(4);
    let rhs = BigUint::from(diff.len()).pow(7) * BigUint::from(a_set.len()).pow(4);
    let ratio = big_ratio(&lhs, &rhs);
    let mut cert = Certificate::new("rudnev", format!("|A|={},p={}", a_set.len(), p));
    cert.quantity("Ex", emul)
        .quantity("|A-A|", diff.len())
        .quantity("lhs", &lhs)
        .quantity("rhs", &rhs)
        .quantity("ratio", format!("{ratio:.6}"));
    cert.monitor_le("Ex^4 <= |A-A|^7|A|^4 (constants suppressed)", BigInt::from(lhs), BigInt::from(rhs));
    Ok(cert)
}

/// The trivial incidence bound, checked exactly with squared comparisons,
/// plus the pair-uniqueness facts it rests on.
pub fn trivial_incidence_check(inst: &IncidenceInstance) -> Certificate {
    let field = inst.field();
    let points = inst.points();
    let lines = inst.lines();
    let total = inst.incidence_count();
    let np = points.len() as u128;
    let nl = lines.len() as u128;
    // I <= |P| + sqrt(|P|)|L|  ⇔  I <= |P| or (I-|P|)² <= |P||L|²
    let side1 = total <= np || {
        let d = total - np;
        BigInt::from(d) * BigInt::from(d) <= BigInt::from(np) * BigInt::from(nl) * BigInt::from(nl)
    };
    let side2 = total <= nl || {
        let d = total - nl;
        BigInt::from(d) * BigInt::from(d) <= BigInt::from(nl) * BigInt::from(np) * BigInt::from(np)
    };
    // two distinct lines share at most one point; two distinct points share
    // at most one line
    let mut pair_unique = true;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let common = points
                .iter()
                .filter(|p| lines[i].contains(field, p) && lines[j].contains(field, p))
                .count();
            if common > 1 {
                pair_unique = false;
            }
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let common = lines
                .iter()
                .filter(|l| l.contains(field, &points[i]) && l.contains(field, &points[j]))
                .count();
            if common > 1 {
                pair_unique = false;
            }
        }
    }
    let mut cert = Certificate::new(
        "trivial-incidence-bound",
        format!("|P|={},|L|={}", points.len(), lines.len()),
    );
    cert.quantity("I", total)
        .bound_eq("I <= |P|+sqrt(|P|)|L|", BigInt::from(side1 as u8), BigInt::from(1u8))
        .bound_eq("I <= |L|+sqrt(|L|)|P|", BigInt::from(side2 as u8), BigInt::from(1u8))
        .bound_eq("pair uniqueness", BigInt::from(pair_unique as u8), BigInt::from(1u8));
    cert
}

/// Szemerédi-Trotter monitor with C = 4 over exact-rational instances:
/// I ≤ 4(|P|^{2/3}|L|^{2/3} + |P| + |L|), checked by cubing.
pub fn szemeredi_trotter_monitor(inst: &IncidenceInstance) -> Certificate {
    let total = inst.incidence_count();
    let np = inst.points().len() as u128;
    let nl = inst.lines().len() as u128;
    // I - 4|P| - 4|L| <= 4 (|P||L|)^{2/3}  ⇔  cubed when lhs > 0
    let slack = BigInt::from(total) - BigInt::from(4 * np) - BigInt::from(4 * nl);
    let holds = if slack <= BigInt::from(0) {
        true
    } else {
        slack.pow(3) <= BigInt::from(64) * BigInt::from(np).pow(2) * BigInt::from(nl).pow(2)
    };
    let mut cert = Certificate::new(
        "szemeredi-trotter-monitor",
        format!("|P|={np},|L|={nl}"),
    );
    cert.quantity("I", total).quantity("C", 4u8).monitor_eq_flag(holds);
    cert
}

impl Certificate {
    fn monitor_eq_flag(&mut self, ok: bool) -> &mut Self {
        self.monitor_le("I <= C(|P|^2/3|L|^2/3+|P|+|L|)", BigInt::from(!ok as u8), BigInt::from(0u8));
        self
    }
}

/// Beck dichotomy in exact form: reports which side holds and the realized
/// constants C = |P|/maxμ and C′ = |P|²/|L(P)|.
pub fn beck_dichotomy(field: &FieldSpec, points: &[AffinePoint]) -> Result<Certificate> {
    let determined = lines_determined(field, points)?;
    let max_mu = determined.iter().map(|(_, mu)| *mu).max().unwrap_or(0);
    let count = determined.len();
    let mut cert = Certificate::new("beck-dichotomy", format!("|P|={}", points.len()));
    cert.quantity("maxMu", max_mu)
        .quantity("|L(P)|", count)
        .quantity("realizedC", format!("{:.4}", points.len() as f64 / max_mu.max(1) as f64))
        .quantity(
            "realizedCprime",
            format!("{:.4}", (points.len() * points.len()) as f64 / count.max(1) as f64),
        );
    Ok(cert)
}
