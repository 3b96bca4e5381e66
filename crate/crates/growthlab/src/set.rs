//! Finite-set algebra and energy computations: complete and partial sumsets
//! and product sets, iterated sumsets, multiplicity functions, and the
//! energy variants the rest of the crate leans on.
//!
//! Sets are stored strictly sorted under the canonical element order, so
//! membership is a binary search and equality is structural. Energies are
//! computed through multiplicity maps (Σ μ(x)²), never by quadruple
//! enumeration; the brute-force quadruple counts live in the tests as
//! independent oracles.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{fmt_value, parse_element, parse_field, FieldElement, FieldSpec, Value};

/// Per-operation enumeration budget, in elementary steps.
pub const ENUM_BUDGET: u128 = 100_000_000;

/// Pairwise set operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Sum,
    Diff,
    Prod,
    Ratio,
}

/// Which energy is being counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyKind {
    Additive,
    Multiplicative,
}

/// A finite set of field elements over a declared field, kept strictly
/// sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    field: FieldSpec,
    elems: Vec<Value>,
}

impl FiniteSet {
    pub fn new(field: FieldSpec, mut elems: Vec<Value>) -> Self {
        elems.sort();
        elems.dedup();
        FiniteSet { field, elems }
    }

    pub fn from_elements(elems: Vec<FieldElement>) -> Result<Self> {
        let field = elems.first().ok_or(Error::EmptyInput)?.field().clone();
        let mut vals = Vec::with_capacity(elems.len());
        for e in elems {
            if e.field() != &field {
                return Err(Error::FieldMismatch);
            }
            vals.push(e.into_value());
        }
        Ok(FiniteSet::new(field, vals))
    }

    pub fn from_ints(field: &FieldSpec, ints: &[i128]) -> Self {
        FiniteSet::new(field.clone(), ints.iter().map(|&n| field.from_int(n)).collect())
    }

    pub fn empty(field: FieldSpec) -> Self {
        FiniteSet { field, elems: vec![] }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.elems
    }

    pub fn value(&self, i: usize) -> &Value {
        &self.elems[i]
    }

    pub fn element(&self, i: usize) -> FieldElement {
        FieldElement::new(self.field.clone(), self.elems[i].clone())
    }

    pub fn iter_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.elems.iter().map(|v| FieldElement::new(self.field.clone(), v.clone()))
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.elems.binary_search(v).is_ok()
    }

    pub fn index_of(&self, v: &Value) -> Option<usize> {
        self.elems.binary_search(v).ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&self.field.zero())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut v = self.elems.clone();
        v.extend_from_slice(&other.elems);
        Ok(FiniteSet::new(self.field.clone(), v))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let v: Vec<Value> =
            self.elems.iter().filter(|x| other.contains(x)).cloned().collect();
        Ok(FiniteSet { field: self.field.clone(), elems: v })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let v: Vec<Value> =
            self.elems.iter().filter(|x| !other.contains(x)).cloned().collect();
        Ok(FiniteSet { field: self.field.clone(), elems: v })
    }

    pub fn without(&self, v: &Value) -> Self {
        FiniteSet {
            field: self.field.clone(),
            elems: self.elems.iter().filter(|x| *x != v).cloned().collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.field == other.field && self.elems.iter().all(|x| other.contains(x))
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.field)?;
        for (i, v) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            fmt_value(v, f)?;
        }
        write!(f, "}}")
    }
}

/// Parse a set literal such as `Fp(101){1,2,3}` or `Fq(t;2){1,t,t^2}`.
pub fn parse_set(s: &str) -> Result<FiniteSet> {
    let s = s.trim();
    let open = s.find('{').ok_or_else(|| Error::Parse(format!("missing {{ in set literal: {s}")))?;
    if !s.ends_with('}') {
        return Err(Error::Parse(format!("missing }} in set literal: {s}")));
    }
    let field = parse_field(&s[..open])?;
    let body = &s[open + 1..s.len() - 1];
    let mut vals = Vec::new();
    if !body.trim().is_empty() {
        // elements may contain '/' but not commas
        for part in body.split(',') {
            vals.push(parse_element(&field, part)?.into_value());
        }
    }
    Ok(FiniteSet::new(field, vals))
}

fn apply_op(field: &FieldSpec, a: &Value, b: &Value, op: SetOp) -> Result<Value> {
    Ok(match op {
        SetOp::Sum => field.add(a, b),
        SetOp::Diff => field.sub(a, b),
        SetOp::Prod => field.mul(a, b),
        SetOp::Ratio => field.div(a, b)?,
    })
}

fn budget_check(steps: u128) -> Result<()> {
    if steps > ENUM_BUDGET {
        return Err(Error::BudgetExceeded(steps));
    }
    Ok(())
}

/// The exact image set {a op b : a ∈ A, b ∈ B}. For `Ratio`, zero is
/// excluded from B, matching A/B = A(B∖{0})^{-1}.
pub fn pairwise_set(a: &FiniteSet, b: &FiniteSet, op: SetOp) -> Result<FiniteSet> {
    a.check_same(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let field = a.field.clone();
    let b_vals: Vec<&Value> = match op {
        SetOp::Ratio => {
            let vals: Vec<&Value> = b.elems.iter().filter(|v| !v.is_zero()).collect();
            if vals.is_empty() {
                return Err(Error::EmptyInput);
            }
            vals
        }
        _ => b.elems.iter().collect(),
    };
    budget_check(a.len() as u128 * b_vals.len() as u128)?;

    // bitset fast path for small prime fields under sum/diff/prod
    if let (FieldSpec::Prime(ctx), true) = (&field, !matches!(op, SetOp::Ratio)) {
        let p = ctx.p();
        if p <= 1 << 16 {
            let mut bits = vec![0u64; (p as usize + 63) / 64];
            for x in &a.elems {
                for y in &b_vals {
                    let v = apply_op(&field, x, y, op)?.as_finite();
                    bits[(v / 64) as usize] |= 1 << (v % 64);
                }
            }
            let mut out = Vec::new();
            for v in 0..p {
                if bits[(v / 64) as usize] >> (v % 64) & 1 == 1 {
                    out.push(Value::Finite(v));
                }
            }
            return Ok(FiniteSet { field, elems: out });
        }
    }

    let mut out = Vec::with_capacity(a.len() * b_vals.len());
    for x in &a.elems {
        for y in &b_vals {
            out.push(apply_op(&field, x, y, op)?);
        }
    }
    Ok(FiniteSet::new(field, out))
}

/// A subset G ⊆ A×B recording which pairs participate in a partial
/// operation; edges are index pairs into the sorted base sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairGraph {
    left: FiniteSet,
    right: FiniteSet,
    edges: Vec<(u32, u32)>,
}

impl PairGraph {
    pub fn new(left: FiniteSet, right: FiniteSet, mut edges: Vec<(u32, u32)>) -> Result<Self> {
        left.check_same(&right)?;
        edges.sort_unstable();
        edges.dedup();
        for &(i, j) in &edges {
            if i as usize >= left.len() || j as usize >= right.len() {
                return Err(Error::PreconditionFailed("edge index out of range".into()));
            }
        }
        Ok(PairGraph { left, right, edges })
    }

    pub fn complete(left: FiniteSet, right: FiniteSet) -> Result<Self> {
        left.check_same(&right)?;
        let mut edges = Vec::with_capacity(left.len() * right.len());
        for i in 0..left.len() as u32 {
            for j in 0..right.len() as u32 {
                edges.push((i, j));
            }
        }
        Ok(PairGraph { left, right, edges })
    }

    pub fn left(&self) -> &FiniteSet {
        &self.left
    }

    pub fn right(&self) -> &FiniteSet {
        &self.right
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn field(&self) -> &FieldSpec {
        self.left.field()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.left.len() * self.right.len()
    }

    /// B_G(a): the right-neighbourhood of the element with left index `i`.
    pub fn right_neighbors(&self, i: u32) -> Vec<u32> {
        self.edges.iter().filter(|&&(a, _)| a == i).map(|&(_, b)| b).collect()
    }

    /// A_G(b): the left-neighbourhood of the element with right index `j`.
    pub fn left_neighbors(&self, j: u32) -> Vec<u32> {
        self.edges.iter().filter(|&&(_, b)| b == j).map(|&(a, _)| a).collect()
    }

    /// Degrees of all left vertices.
    pub fn left_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.left.len()];
        for &(i, _) in &self.edges {
            deg[i as usize] += 1;
        }
        deg
    }

    /// Restrict to edges whose left endpoint is in `keep` (left indices).
    pub fn restrict_left(&self, keep: &[u32]) -> PairGraph {
        let mut flag = vec![false; self.left.len()];
        for &i in keep {
            flag[i as usize] = true;
        }
        PairGraph {
            left: self.left.clone(),
            right: self.right.clone(),
            edges: self.edges.iter().filter(|&&(i, _)| flag[i as usize]).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.field().to_string(),
            "A": self.left.values().iter().map(|v| crate::field::ValueDisplay(v).to_string()).collect::<Vec<_>>(),
            "B": self.right.values().iter().map(|v| crate::field::ValueDisplay(v).to_string()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(i, j)| vec![i, j]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let field = parse_field(
            v.get("field")
                .and_then(|f| f.as_str())
                .ok_or_else(|| Error::Parse("missing field".into()))?,
        )?;
        let parse_side = |key: &str| -> Result<FiniteSet> {
            let arr = v
                .get(key)
                .and_then(|a| a.as_array())
                .ok_or_else(|| Error::Parse(format!("missing {key}")))?;
            let mut vals = Vec::new();
            for e in arr {
                let s = e.as_str().ok_or_else(|| Error::Parse("element must be string".into()))?;
                vals.push(parse_element(&field, s)?.into_value());
            }
            Ok(FiniteSet::new(field.clone(), vals))
        };
        let left = parse_side("A")?;
        let right = parse_side("B")?;
        let edges_json = v
            .get("edges")
            .and_then(|a| a.as_array())
            .ok_or_else(|| Error::Parse("missing edges".into()))?;
        let mut edges = Vec::new();
        for e in edges_json {
            let pair = e.as_array().ok_or_else(|| Error::Parse("edge must be [i,j]".into()))?;
            if pair.len() != 2 {
                return Err(Error::Parse("edge must be [i,j]".into()));
            }
            let i = pair[0].as_u64().ok_or_else(|| Error::Parse("bad edge index".into()))?;
            let j = pair[1].as_u64().ok_or_else(|| Error::Parse("bad edge index".into()))?;
            edges.push((i as u32, j as u32));
        }
        PairGraph::new(left, right, edges)
    }
}

/// Mapping from a field element to a positive multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiplicityMap {
    counts: BTreeMap<Value, u64>,
}

impl MultiplicityMap {
    pub fn insert(&mut self, v: Value) {
        *self.counts.entry(v).or_insert(0) += 1;
    }

    pub fn get(&self, v: &Value) -> u64 {
        self.counts.get(v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Value, u64)> {
        self.counts.iter().map(|(v, &c)| (v, c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Σ μ(x)².
    pub fn sum_of_squares(&self) -> u128 {
        self.counts.values().map(|&c| c as u128 * c as u128).sum()
    }
}

fn op_of(kind: EnergyKind) -> SetOp {
    match kind {
        EnergyKind::Additive => SetOp::Sum,
        EnergyKind::Multiplicative => SetOp::Prod,
    }
}

/// {a op b : (a,b) ∈ G}.
pub fn partial_pairwise_set(g: &PairGraph, op: SetOp) -> Result<FiniteSet> {
    Ok(FiniteSet::new(g.field().clone(), partial_values(g, op)?))
}

fn partial_values(g: &PairGraph, op: SetOp) -> Result<Vec<Value>> {
    let field = g.field().clone();
    budget_check(g.edge_count() as u128)?;
    let mut out = Vec::with_capacity(g.edge_count());
    for &(i, j) in &g.edges {
        let b = g.right.value(j as usize);
        if matches!(op, SetOp::Ratio) && b.is_zero() {
            return Err(Error::ZeroDivisorEdge);
        }
        out.push(apply_op(&field, g.left.value(i as usize), b, op)?);
    }
    Ok(out)
}

/// μ_G for the chosen operation: multiplicity of each partial image value.
pub fn multiplicity(g: &PairGraph, op: SetOp) -> Result<MultiplicityMap> {
    let mut m = MultiplicityMap::default();
    for v in partial_values(g, op)? {
        m.insert(v);
    }
    Ok(m)
}

/// kA = A + … + A (k times).
pub fn iterated_sumset(a: &FiniteSet, k: u32) -> Result<FiniteSet> {
    if k == 0 {
        return Err(Error::PreconditionFailed("k must be >= 1".into()));
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut acc = a.clone();
    for _ in 1..k {
        acc = pairwise_set(&acc, a, SetOp::Sum)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranslateDilate {
    Translate,
    Dilate,
}

/// A+x or xA.
pub fn translate_dilate(a: &FiniteSet, x: &FieldElement, mode: TranslateDilate) -> Result<FiniteSet> {
    if a.field() != x.field() {
        return Err(Error::FieldMismatch);
    }
    let field = a.field().clone();
    match mode {
        TranslateDilate::Translate => Ok(FiniteSet::new(
            field.clone(),
            a.values().iter().map(|v| field.add(v, x.value())).collect(),
        )),
        TranslateDilate::Dilate => {
            if x.is_zero() {
                return Err(Error::ZeroDilation);
            }
            Ok(FiniteSet::new(
                field.clone(),
                a.values().iter().map(|v| field.mul(v, x.value())).collect(),
            ))
        }
    }
}

/// E_+(A,B) or E_×(A,B): the exact number of solutions to a∘b = a′∘b′,
/// computed as Σ μ(x)² over the complete multiplicity map.
pub fn energy(a: &FiniteSet, b: &FiniteSet, kind: EnergyKind) -> Result<u128> {
    a.check_same(b)?;
    budget_check(a.len() as u128 * b.len() as u128)?;
    let field = a.field().clone();
    let op = op_of(kind);
    let mut m = MultiplicityMap::default();
    for x in a.values() {
        for y in b.values() {
            m.insert(apply_op(&field, x, y, op)?);
        }
    }
    Ok(m.sum_of_squares())
}

/// Energy of a pair graph: solutions to a∘b = a′∘b′ with both pairs in G.
pub fn graph_energy(g: &PairGraph, kind: EnergyKind) -> Result<u128> {
    Ok(multiplicity(g, op_of(kind))?.sum_of_squares())
}

/// k-fold additive energy: total solutions of a₁+…+a_k = b₁+…+b_k, and the
/// count of non-trivial ones (a solution is trivial when at least 2k−1 of
/// the 2k terms occur with multiplicity ≥ 2 in the combined multiset).
pub fn kfold_energy(a: &FiniteSet, k: u32) -> Result<(u128, u128)> {
    if k < 2 {
        return Err(Error::PreconditionFailed("k must be >= 2".into()));
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = a.len() as u128;
    let tuples = n.checked_pow(k).ok_or(Error::BudgetExceeded(u128::MAX))?;
    budget_check(tuples.checked_mul(tuples).ok_or(Error::BudgetExceeded(u128::MAX))?)?;

    let field = a.field().clone();
    // enumerate all k-tuples, grouped by sum
    let mut groups: BTreeMap<Value, Vec<Vec<u32>>> = BTreeMap::new();
    let mut idx = vec![0u32; k as usize];
    loop {
        let mut s = field.zero();
        for &i in &idx {
            s = field.add(&s, a.value(i as usize));
        }
        groups.entry(s).or_default().push(idx.clone());
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                break;
            }
            idx[pos] += 1;
            if (idx[pos] as usize) < a.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if pos == idx.len() {
            break;
        }
    }

    let total: u128 = groups.values().map(|g| g.len() as u128 * g.len() as u128).sum();
    budget_check(total)?;

    let mut nontrivial = 0u128;
    let two_k = 2 * k as usize;
    for group in groups.values() {
        for t1 in group {
            for t2 in group {
                let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
                for &i in t1.iter().chain(t2.iter()) {
                    *mult.entry(i).or_insert(0) += 1;
                }
                let repeated: usize = mult.values().filter(|&&c| c >= 2).sum();
                if repeated < two_k - 1 {
                    nontrivial += 1;
                }
            }
        }
    }
    Ok((total, nontrivial))
}

/// R(A) = {(a−b)/(c−d) : a,b,c,d ∈ A, a ≠ b, c ≠ d}.
pub fn ratio_of_differences(a: &FiniteSet) -> Result<FiniteSet> {
    if a.len() < 2 {
        return Err(Error::TooSmall { need: 2, got: a.len() });
    }
    let field = a.field().clone();
    let mut diffs = Vec::new();
    for x in a.values() {
        for y in a.values() {
            if x != y {
                diffs.push(field.sub(x, y));
            }
        }
    }
    diffs.sort();
    diffs.dedup();
    budget_check(diffs.len() as u128 * diffs.len() as u128)?;
    let mut out = Vec::with_capacity(diffs.len() * diffs.len());
    for d1 in &diffs {
        for d2 in &diffs {
            out.push(field.div(d1, d2)?);
        }
    }
    Ok(FiniteSet::new(field, out))
}

/// E_+(A, ξA).
pub fn xi_energy(a: &FiniteSet, xi: &FieldElement) -> Result<u128> {
    let dilated = translate_dilate(a, xi, TranslateDilate::Dilate)?;
    energy(a, &dilated, EnergyKind::Additive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_field;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    /// Brute-force quadruple count: the independent oracle for `energy`.
    fn energy_oracle(a: &FiniteSet, b: &FiniteSet, kind: EnergyKind) -> u128 {
        let field = a.field().clone();
        let op = op_of(kind);
        let mut count = 0u128;
        for x in a.values() {
            for y in b.values() {
                for x2 in a.values() {
                    for y2 in b.values() {
                        if apply_op(&field, x, y, op).unwrap()
                            == apply_op(&field, x2, y2, op).unwrap()
                        {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn pairwise_examples() {
        let a = FiniteSet::from_ints(&q(), &[1, 2, 3]);
        let s = pairwise_set(&a, &a, SetOp::Sum).unwrap();
        assert_eq!(s, FiniteSet::from_ints(&q(), &[2, 3, 4, 5, 6]));

        let a5 = FiniteSet::from_ints(&fp(5), &[0, 1, 2]);
        let p = pairwise_set(&a5, &a5, SetOp::Prod).unwrap();
        assert_eq!(p, FiniteSet::from_ints(&fp(5), &[0, 1, 2, 4]));

        let a12 = FiniteSet::from_ints(&q(), &[1, 2]);
        let r = pairwise_set(&a12, &a12, SetOp::Ratio).unwrap();
        let expect = parse_set("Q{1/2,1,2}").unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn partial_examples() {
        let a = FiniteSet::from_ints(&q(), &[1, 2]);
        let g = PairGraph::complete(a.clone(), a.clone()).unwrap();
        assert_eq!(
            partial_pairwise_set(&g, SetOp::Sum).unwrap(),
            pairwise_set(&a, &a, SetOp::Sum).unwrap()
        );

        let single = PairGraph::new(a.clone(), a.clone(), vec![(0, 0)]).unwrap();
        assert_eq!(
            partial_pairwise_set(&single, SetOp::Sum).unwrap(),
            FiniteSet::from_ints(&q(), &[2])
        );

        let ab = FiniteSet::from_ints(&q(), &[0, 1]);
        let cross = PairGraph::new(ab.clone(), ab.clone(), vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            partial_pairwise_set(&cross, SetOp::Diff).unwrap(),
            FiniteSet::from_ints(&q(), &[-1, 1])
        );

        let withzero = PairGraph::complete(ab.clone(), ab).unwrap();
        assert_eq!(partial_pairwise_set(&withzero, SetOp::Ratio), Err(Error::ZeroDivisorEdge));
    }

    #[test]
    fn iterated_sumset_examples() {
        let a = FiniteSet::from_ints(&q(), &[0, 1]);
        assert_eq!(iterated_sumset(&a, 3).unwrap(), FiniteSet::from_ints(&q(), &[0, 1, 2, 3]));

        let ff = parse_field("Fq(t;2)").unwrap();
        let s = parse_set("Fq(t;2){1,t,t^2}").unwrap();
        let two = iterated_sumset(&s, 2).unwrap();
        assert_eq!(two, parse_set("Fq(t;2){0,1+t,1+t^2,t+t^2}").unwrap());
        assert_eq!(two.len(), 4);
        let _ = ff;

        let zero = FiniteSet::from_ints(&q(), &[0]);
        assert_eq!(iterated_sumset(&zero, 5).unwrap(), zero);
    }

    #[test]
    fn translate_dilate_examples() {
        let a = FiniteSet::from_ints(&q(), &[1, 2]);
        let three = FieldElement::from_int(&q(), 3);
        assert_eq!(
            translate_dilate(&a, &three, TranslateDilate::Translate).unwrap(),
            FiniteSet::from_ints(&q(), &[4, 5])
        );
        let f5 = fp(5);
        let a5 = FiniteSet::from_ints(&f5, &[1, 2]);
        let two = FieldElement::from_int(&f5, 2);
        assert_eq!(
            translate_dilate(&a5, &two, TranslateDilate::Dilate).unwrap(),
            FiniteSet::from_ints(&f5, &[2, 4])
        );
        let zero = FieldElement::from_int(&f5, 0);
        assert_eq!(
            translate_dilate(&a5, &zero, TranslateDilate::Dilate),
            Err(Error::ZeroDilation)
        );
    }

    #[test]
    fn multiplicity_examples() {
        let ab = FiniteSet::from_ints(&q(), &[0, 1]);
        let g = PairGraph::complete(ab.clone(), ab).unwrap();
        let m = multiplicity(&g, SetOp::Sum).unwrap();
        assert_eq!(m.get(&q().from_int(0)), 1);
        assert_eq!(m.get(&q().from_int(1)), 2);
        assert_eq!(m.get(&q().from_int(2)), 1);
        assert_eq!(m.total(), g.edge_count() as u64);

        let a = FiniteSet::from_ints(&q(), &[1, 2, 4]);
        let g = PairGraph::complete(a.clone(), a).unwrap();
        let m = multiplicity(&g, SetOp::Prod).unwrap();
        let expect: Vec<(i128, u64)> = vec![(1, 1), (2, 2), (4, 3), (8, 2), (16, 1)];
        for (v, c) in expect {
            assert_eq!(m.get(&q().from_int(v)), c);
        }
    }

    #[test]
    fn energy_examples_and_oracle() {
        let ab = FiniteSet::from_ints(&q(), &[0, 1]);
        assert_eq!(energy(&ab, &ab, EnergyKind::Additive).unwrap(), 6);

        let a = FiniteSet::from_ints(&q(), &[1, 2, 4]);
        assert_eq!(energy(&a, &a, EnergyKind::Multiplicative).unwrap(), 19);

        let s = FiniteSet::from_ints(&q(), &[7]);
        assert_eq!(energy(&s, &s, EnergyKind::Additive).unwrap(), 1);

        // cross-check both kinds against the quadruple oracle
        for kind in [EnergyKind::Additive, EnergyKind::Multiplicative] {
            let x = FiniteSet::from_ints(&fp(7), &[1, 2, 3, 5]);
            let y = FiniteSet::from_ints(&fp(7), &[0, 2, 6]);
            assert_eq!(energy(&x, &y, kind).unwrap(), energy_oracle(&x, &y, kind));
        }
    }

    #[test]
    fn graph_energy_examples() {
        let a = FiniteSet::from_ints(&q(), &[0, 1, 2]);
        let g = PairGraph::complete(a.clone(), a.clone()).unwrap();
        assert_eq!(
            graph_energy(&g, EnergyKind::Additive).unwrap(),
            energy(&a, &a, EnergyKind::Additive).unwrap()
        );

        let single = PairGraph::new(a.clone(), a.clone(), vec![(0, 1)]).unwrap();
        assert_eq!(graph_energy(&single, EnergyKind::Additive).unwrap(), 1);

        let diag = PairGraph::new(a.clone(), a, vec![(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(graph_energy(&diag, EnergyKind::Additive).unwrap(), 3);
    }

    #[test]
    fn kfold_examples() {
        let s = parse_set("Fq(t;2){1,t,t^2}").unwrap();
        assert_eq!(kfold_energy(&s, 2).unwrap(), (21, 0));

        let one = FiniteSet::from_ints(&q(), &[5]);
        assert_eq!(kfold_energy(&one, 2).unwrap(), (1, 0));

        let sidon = FiniteSet::from_ints(&q(), &[0, 1, 3]);
        assert_eq!(kfold_energy(&sidon, 2).unwrap(), (15, 0));
    }

    #[test]
    fn kfold_nontrivial_positive_case() {
        // {0,1,2,3} has 0+3 = 1+2: all four terms distinct, so 0 of the 4
        // terms repeat and the solution is non-trivial.
        let a = FiniteSet::from_ints(&q(), &[0, 1, 2, 3]);
        let (_, nontrivial) = kfold_energy(&a, 2).unwrap();
        assert!(nontrivial > 0);
    }

    #[test]
    fn ratio_of_differences_examples() {
        let a = FiniteSet::from_ints(&q(), &[0, 1]);
        assert_eq!(ratio_of_differences(&a).unwrap(), FiniteSet::from_ints(&q(), &[1, -1]));

        let a5 = FiniteSet::from_ints(&fp(5), &[0, 1]);
        assert_eq!(ratio_of_differences(&a5).unwrap(), FiniteSet::from_ints(&fp(5), &[1, 4]));

        let a013 = FiniteSet::from_ints(&q(), &[0, 1, 3]);
        let r = ratio_of_differences(&a013).unwrap();
        let expect = parse_set("Q{1,-1,2,-2,3,-3,1/2,-1/2,1/3,-1/3,2/3,-2/3,3/2,-3/2}").unwrap();
        assert_eq!(r, expect);

        let tiny = FiniteSet::from_ints(&q(), &[7]);
        assert!(matches!(ratio_of_differences(&tiny), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn xi_energy_examples() {
        let a = FiniteSet::from_ints(&q(), &[0, 1]);
        let one = FieldElement::from_int(&q(), 1);
        assert_eq!(xi_energy(&a, &one).unwrap(), 6);
        let two = FieldElement::from_int(&q(), 2);
        assert_eq!(xi_energy(&a, &two).unwrap(), 4);
        let single = FiniteSet::from_ints(&q(), &[3]);
        assert_eq!(xi_energy(&single, &two).unwrap(), 1);
    }

    #[test]
    fn pair_graph_json_roundtrip() {
        let a = FiniteSet::from_ints(&fp(7), &[1, 2, 3]);
        let b = FiniteSet::from_ints(&fp(7), &[0, 4]);
        let g = PairGraph::new(a, b, vec![(0, 1), (2, 0)]).unwrap();
        let j = g.to_json();
        let g2 = PairGraph::from_json(&j).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn set_literal_roundtrip() {
        let s = parse_set("Fp(101){1,2,3}").unwrap();
        assert_eq!(s.to_string(), "Fp(101){1,2,3}");
    }
}
