//! Ultrametric geometry of the function field F_q(t): the degree valuation,
//! balls and their trichotomy, nearest-neighbour balls, A-chains,
//! separability, and the sum-product certificate chain built from them.
//!
//! Valuations are integer exponents on the log_q scale, with a bottom
//! element for 0; no radius is ever a general rational.

use num::BigInt;

use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Value};
use crate::set::{iterated_sumset, kfold_energy, pairwise_set, FiniteSet, SetOp};

/// |x| = q^e with e the stored exponent; Bottom is the valuation of 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Bottom,
    Exp(i64),
}

impl Valuation {
    pub fn exponent(&self) -> Option<i64> {
        match self {
            Valuation::Bottom => None,
            Valuation::Exp(e) => Some(*e),
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Bottom => write!(f, "-inf"),
            Valuation::Exp(e) => write!(f, "{e}"),
        }
    }
}

fn expect_ff(field: &FieldSpec) -> Result<()> {
    match field {
        FieldSpec::FunctionField(_) => Ok(()),
        _ => Err(Error::PreconditionFailed("function-field element required".into())),
    }
}

/// deg(num) − deg(den), or Bottom for zero.
pub fn valuation(x: &FieldElement) -> Result<Valuation> {
    expect_ff(x.field())?;
    Ok(match x.value() {
        Value::FuncField(r) => match r.val_exponent() {
            Some(e) => Valuation::Exp(e),
            None => Valuation::Bottom,
        },
        _ => unreachable!("function-field value"),
    })
}

fn val_of_value(field: &FieldSpec, v: &Value) -> Valuation {
    match v {
        Value::FuncField(r) => match r.val_exponent() {
            Some(e) => Valuation::Exp(e),
            None => Valuation::Bottom,
        },
        _ => panic!("function-field value required, field {field}"),
    }
}

/// dist(x, y) = |x − y|.
pub fn dist(x: &FieldElement, y: &FieldElement) -> Result<Valuation> {
    expect_ff(x.field())?;
    let d = x.sub(y)?;
    valuation(&d)
}

fn dist_values(field: &FieldSpec, x: &Value, y: &Value) -> Valuation {
    val_of_value(field, &field.sub(x, y))
}

/// B(x, q^e) = {y : |x − y| ≤ q^e}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    field: FieldSpec,
    center: Value,
    radius: i64,
}

/// Outcome of comparing two balls as sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallRel {
    Disjoint,
    FirstInSecond,
    SecondInFirst,
    Equal,
}

impl Ball {
    pub fn new(center: FieldElement, radius_exponent: i64) -> Result<Self> {
        expect_ff(center.field())?;
        Ok(Ball { field: center.field().clone(), center: center.value().clone(), radius: radius_exponent })
    }

    fn from_value(field: &FieldSpec, center: &Value, radius: i64) -> Ball {
        Ball { field: field.clone(), center: center.clone(), radius }
    }

    pub fn center(&self) -> FieldElement {
        FieldElement::new(self.field.clone(), self.center.clone())
    }

    pub fn radius_exponent(&self) -> i64 {
        self.radius
    }

    pub fn member(&self, x: &FieldElement) -> Result<bool> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.member_value(x.value()))
    }

    fn member_value(&self, x: &Value) -> bool {
        dist_values(&self.field, x, &self.center) <= Valuation::Exp(self.radius)
    }

    /// Exact set relation between two balls; the non-archimedean trichotomy
    /// guarantees these are the only possibilities.
    pub fn relation(&self, other: &Ball) -> BallRel {
        let d = dist_values(&self.field, &self.center, &other.center);
        let r1 = Valuation::Exp(self.radius);
        let r2 = Valuation::Exp(other.radius);
        if d <= r1 && d <= r2 {
            match self.radius.cmp(&other.radius) {
                std::cmp::Ordering::Equal => BallRel::Equal,
                std::cmp::Ordering::Less => BallRel::FirstInSecond,
                std::cmp::Ordering::Greater => BallRel::SecondInFirst,
            }
        } else if d <= r2 {
            BallRel::FirstInSecond
        } else if d <= r1 {
            BallRel::SecondInFirst
        } else {
            BallRel::Disjoint
        }
    }

    /// Same point set (relation == Equal, or identical).
    pub fn same_set(&self, other: &Ball) -> bool {
        matches!(self.relation(other), BallRel::Equal)
    }

    /// Is self ⊆ other as sets?
    pub fn subset_of(&self, other: &Ball) -> bool {
        matches!(self.relation(other), BallRel::FirstInSecond | BallRel::Equal)
    }

    /// Translate: B + c.
    pub fn translate(&self, c: &Value) -> Ball {
        Ball { field: self.field.clone(), center: self.field.add(&self.center, c), radius: self.radius }
    }

    /// Dilate: d·B for d ≠ 0; the radius shifts by v(d).
    pub fn dilate(&self, d: &Value) -> Result<Ball> {
        let shift = match val_of_value(&self.field, d) {
            Valuation::Bottom => return Err(Error::ZeroDilation),
            Valuation::Exp(e) => e,
        };
        Ok(Ball {
            field: self.field.clone(),
            center: self.field.mul(&self.center, d),
            radius: self.radius + shift,
        })
    }
}

impl std::fmt::Display for Ball {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "B({}, q^{})", crate::field::ValueDisplay(&self.center), self.radius)
    }
}

/// r_A(a) = min over a′ ≠ a of |a − a′|, and B_A(a) = B(a, r_A(a)).
pub fn nearest_and_ball(a_set: &FiniteSet, a: &FieldElement) -> Result<(Valuation, Ball)> {
    expect_ff(a_set.field())?;
    if a_set.len() < 2 {
        return Err(Error::TooSmall { need: 2, got: a_set.len() });
    }
    if !a_set.contains(a.value()) {
        return Err(Error::NotInSet);
    }
    let field = a_set.field();
    let mut best: Option<Valuation> = None;
    for v in a_set.values() {
        if v == a.value() {
            continue;
        }
        let d = dist_values(field, v, a.value());
        if best.map_or(true, |b| d < b) {
            best = Some(d);
        }
    }
    let r = best.expect("|A| >= 2");
    let e = r.exponent().expect("distinct elements have nonzero difference");
    Ok((r, Ball::from_value(field, a.value(), e)))
}

// ---------------------------------------------------------------------------
// dendrogram
// ---------------------------------------------------------------------------

/// One node of the merge tree: a cluster of element indices realized as
/// A ∩ B for some ball, together with the merge radius (leaves carry none).
#[derive(Clone, Debug)]
pub struct DendroNode {
    pub members: Vec<usize>,
    pub radius: Option<i64>,
    pub children: Vec<usize>,
}

/// Single-linkage merge tree of a finite subset of F_q(t). In an
/// ultrametric the tree is exactly the laminar family of realized ball
/// intersections, with true multiway merges.
#[derive(Clone, Debug)]
pub struct Dendrogram {
    set: FiniteSet,
    pub nodes: Vec<DendroNode>,
    pub root: Option<usize>,
}

impl Dendrogram {
    pub fn build(set: &FiniteSet) -> Result<Self> {
        expect_ff(set.field())?;
        let n = set.len();
        let field = set.field();
        let mut nodes: Vec<DendroNode> = (0..n)
            .map(|i| DendroNode { members: vec![i], radius: None, children: vec![] })
            .collect();
        if n == 0 {
            return Ok(Dendrogram { set: set.clone(), nodes, root: None });
        }
        // active cluster per element, as node index
        let mut cluster: Vec<usize> = (0..n).collect();
        let mut dists: Vec<i64> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let d = dist_values(field, set.value(i), set.value(j));
                dists.push(d.exponent().expect("distinct elements"));
            }
        }
        dists.sort_unstable();
        dists.dedup();
        for e in dists {
            // group active clusters connected by a pair at distance <= e
            let mut active: Vec<usize> = cluster.clone();
            active.sort_unstable();
            active.dedup();
            if active.len() == 1 {
                break;
            }
            // union-find over active clusters
            let mut parent: std::collections::HashMap<usize, usize> =
                active.iter().map(|&c| (c, c)).collect();
            fn find(p: &mut std::collections::HashMap<usize, usize>, x: usize) -> usize {
                let mut r = x;
                while p[&r] != r {
                    r = p[&r];
                }
                let mut c = x;
                while p[&c] != r {
                    let nx = p[&c];
                    p.insert(c, r);
                    c = nx;
                }
                r
            }
            for i in 0..n {
                for j in i + 1..n {
                    if cluster[i] == cluster[j] {
                        continue;
                    }
                    let d = dist_values(field, set.value(i), set.value(j))
                        .exponent()
                        .expect("distinct");
                    if d <= e {
                        let (ri, rj) = (find(&mut parent, cluster[i]), find(&mut parent, cluster[j]));
                        if ri != rj {
                            parent.insert(ri, rj);
                        }
                    }
                }
            }
            // collect merge groups
            let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
            for &c in &active {
                let r = find(&mut parent, c);
                groups.entry(r).or_default().push(c);
            }
            for (_, members) in groups {
                if members.len() < 2 {
                    continue;
                }
                let mut all: Vec<usize> = members
                    .iter()
                    .flat_map(|&c| nodes[c].members.iter().copied())
                    .collect();
                all.sort_unstable();
                let id = nodes.len();
                nodes.push(DendroNode { members: all.clone(), radius: Some(e), children: members });
                for &m in &all {
                    cluster[m] = id;
                }
            }
        }
        let root = cluster[0];
        debug_assert!(cluster.iter().all(|&c| c == root));
        Ok(Dendrogram { set: set.clone(), nodes, root: Some(root) })
    }

    pub fn set(&self) -> &FiniteSet {
        &self.set
    }

    /// The cluster of indices realized by A ∩ B, if nonempty.
    pub fn cluster_of_ball(&self, ball: &Ball) -> Vec<usize> {
        (0..self.set.len())
            .filter(|&i| ball.member_value(self.set.value(i)))
            .collect()
    }

    /// Is this exact index set one of the tree's clusters (or empty)?
    pub fn is_cluster(&self, members: &[usize]) -> bool {
        members.is_empty() || self.nodes.iter().any(|n| n.members == members)
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn node_json(d: &Dendrogram, id: usize) -> serde_json::Value {
            let n = &d.nodes[id];
            serde_json::json!({
                "members": n.members.iter()
                    .map(|&i| crate::field::ValueDisplay(d.set.value(i)).to_string())
                    .collect::<Vec<_>>(),
                "radiusExponent": n.radius,
                "children": n.children.iter().map(|&c| node_json(d, c)).collect::<Vec<_>>(),
            })
        }
        match self.root {
            None => serde_json::json!(null),
            Some(r) => node_json(self, r),
        }
    }
}

/// Witness or refutation of separability.
#[derive(Clone, Debug)]
pub struct SeparabilityReport {
    pub separable: bool,
    /// ordering a_1, …, a_n with A ∩ B_j = {a_1..a_j}
    pub ordering: Option<Vec<FieldElement>>,
    pub balls: Option<Vec<Ball>>,
    /// members of the first merge node violating the caterpillar criterion
    pub violation: Option<Vec<FieldElement>>,
}

/// Decide separability via the dendrogram: A is separable iff every
/// internal node has exactly two children of which at least one is a leaf.
pub fn is_separable(set: &FiniteSet) -> Result<SeparabilityReport> {
    expect_ff(set.field())?;
    let n = set.len();
    if n <= 1 {
        let ordering: Vec<FieldElement> = set.iter_elements().collect();
        let balls = ordering
            .iter()
            .map(|a| Ball::new(a.clone(), 0).expect("ff element"))
            .collect();
        return Ok(SeparabilityReport {
            separable: true,
            ordering: Some(ordering),
            balls: Some(balls),
            violation: None,
        });
    }
    let dendro = Dendrogram::build(set)?;
    let root = dendro.root.expect("nonempty");
    // internal nodes sorted by radius make violations deterministic
    let mut internal_all: Vec<usize> =
        (0..dendro.nodes.len()).filter(|&id| dendro.nodes[id].radius.is_some()).collect();
    internal_all.sort_by_key(|&id| (dendro.nodes[id].radius.unwrap(), dendro.nodes[id].members.clone()));
    for &id in &internal_all {
        let node = &dendro.nodes[id];
        let leaves = node.children.iter().filter(|&&c| dendro.nodes[c].radius.is_none()).count();
        if node.children.len() != 2 || leaves == 0 {
            return Ok(SeparabilityReport {
                separable: false,
                ordering: None,
                balls: None,
                violation: Some(node.members.iter().map(|&i| set.element(i)).collect()),
            });
        }
    }
    // caterpillar: walk down the unique non-leaf child chain
    let mut chain = vec![root];
    loop {
        let id = *chain.last().unwrap();
        let next = dendro.nodes[id]
            .children
            .iter()
            .copied()
            .find(|&c| dendro.nodes[c].radius.is_some());
        match next {
            Some(c) => chain.push(c),
            None => break,
        }
    }
    chain.reverse(); // deepest first
    let deepest = chain[0];
    let mut order_idx: Vec<usize> = dendro.nodes[deepest]
        .children
        .iter()
        .map(|&c| dendro.nodes[c].members[0])
        .collect();
    order_idx.sort_unstable();
    for &id in &chain[1..] {
        let leaf = dendro.nodes[id]
            .children
            .iter()
            .copied()
            .find(|&c| dendro.nodes[c].radius.is_none())
            .expect("criterion guarantees a leaf child");
        order_idx.push(dendro.nodes[leaf].members[0]);
    }
    let a1 = order_idx[0];
    let mut balls = Vec::with_capacity(n);
    balls.push(Ball::from_value(
        set.field(),
        set.value(a1),
        dendro.nodes[deepest].radius.unwrap() - 1,
    ));
    for (j, &id) in chain.iter().enumerate() {
        let _ = j;
        balls.push(Ball::from_value(set.field(), set.value(a1), dendro.nodes[id].radius.unwrap()));
    }
    let ordering: Vec<FieldElement> = order_idx.iter().map(|&i| set.element(i)).collect();
    // verify the witness: A ∩ B_j = {a_1..a_j}
    for (j, ball) in balls.iter().enumerate() {
        let inside: Vec<usize> = (0..n).filter(|&i| ball.member_value(set.value(i))).collect();
        let mut expect: Vec<usize> = order_idx[..=j].to_vec();
        expect.sort_unstable();
        let mut got = inside;
        got.sort_unstable();
        debug_assert_eq!(got, expect, "separability witness must be exact");
        if got != expect {
            return Err(Error::NotSeparable);
        }
    }
    Ok(SeparabilityReport { separable: true, ordering: Some(ordering), balls: Some(balls), violation: None })
}

/// Brute-force separability over all orderings; the oracle guarding the
/// dendrogram criterion. Only for |A| ≤ 8.
pub fn is_separable_bruteforce(set: &FiniteSet) -> Result<bool> {
    expect_ff(set.field())?;
    if set.len() > 8 {
        return Err(Error::BudgetExceeded(set.len() as u128));
    }
    if set.len() <= 1 {
        return Ok(true);
    }
    let field = set.field().clone();
    let n = set.len();
    // prefix of indices is realizable iff the minimal ball around its first
    // element containing the prefix contains nothing else
    fn extend(field: &FieldSpec, set: &FiniteSet, prefix: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = set.len();
        if prefix.len() == n {
            return true;
        }
        for i in 0..n {
            if used[i] {
                continue;
            }
            prefix.push(i);
            used[i] = true;
            let ok = prefix_ok(field, set, prefix);
            if ok && extend(field, set, prefix, used) {
                return true;
            }
            prefix.pop();
            used[i] = false;
        }
        false
    }
    fn prefix_ok(field: &FieldSpec, set: &FiniteSet, prefix: &[usize]) -> bool {
        if prefix.len() <= 1 {
            return true;
        }
        let a1 = set.value(prefix[0]);
        let e = prefix[1..]
            .iter()
            .map(|&i| dist_values(field, set.value(i), a1).exponent().expect("distinct"))
            .max()
            .unwrap();
        let inside = (0..set.len())
            .filter(|&i| dist_values(field, set.value(i), a1) <= Valuation::Exp(e))
            .count();
        inside == prefix.len()
    }
    let mut prefix = Vec::new();
    let mut used = vec![false; n];
    Ok(extend(&field, set, &mut prefix, &mut used))
}

// ---------------------------------------------------------------------------
// chains
// ---------------------------------------------------------------------------

/// The inclusion structure of the nearest-neighbour balls B_A(·) and the
/// exact longest-chain values N(a).
#[derive(Clone, Debug)]
pub struct ChainPoset {
    set: FiniteSet,
    /// B_A(a) per element index
    pub balls: Vec<Ball>,
    /// groups of element indices with identical balls, ordered by radius
    pub groups: Vec<Vec<usize>>,
    /// parent group in the laminar inclusion forest
    pub parent: Vec<Option<usize>>,
    /// exact longest chain ending at each element
    pub n_of: Vec<usize>,
    /// longest chain value per group
    group_n: Vec<usize>,
}

pub fn chain_poset(set: &FiniteSet) -> Result<ChainPoset> {
    expect_ff(set.field())?;
    if set.len() < 2 {
        return Err(Error::TooSmall { need: 2, got: set.len() });
    }
    let n = set.len();
    let balls: Vec<Ball> = (0..n)
        .map(|i| nearest_and_ball(set, &set.element(i)).map(|(_, b)| b))
        .collect::<Result<_>>()?;
    // group by set-equality of balls
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match groups.iter_mut().find(|g| balls[g[0]].same_set(&balls[i])) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    // order groups by radius ascending (ties by first member) so parents
    // come after children
    groups.sort_by_key(|g| (balls[g[0]].radius_exponent(), g[0]));
    // parent: smallest strictly-containing group ball
    let mut parent: Vec<Option<usize>> = vec![None; groups.len()];
    for gi in 0..groups.len() {
        let mut best: Option<usize> = None;
        for gj in 0..groups.len() {
            if gi == gj {
                continue;
            }
            if matches!(balls[groups[gi][0]].relation(&balls[groups[gj][0]]), BallRel::FirstInSecond) {
                let better = match best {
                    None => true,
                    Some(b) => {
                        balls[groups[gj][0]].radius_exponent()
                            < balls[groups[b][0]].radius_exponent()
                    }
                };
                if better {
                    best = Some(gj);
                }
            }
        }
        parent[gi] = best;
    }
    // DP over the forest, children first (groups are radius-ascending)
    let mut group_n = vec![0usize; groups.len()];
    for gi in 0..groups.len() {
        let mut best_child = 0usize;
        for gj in 0..gi {
            if parent[gj] == Some(gi) {
                best_child = best_child.max(group_n[gj]);
            }
        }
        group_n[gi] = best_child + groups[gi].len();
    }
    let mut n_of = vec![0usize; n];
    for (gi, g) in groups.iter().enumerate() {
        for &i in g {
            n_of[i] = group_n[gi];
        }
    }
    Ok(ChainPoset { set: set.clone(), balls, groups, parent, n_of, group_n })
}

impl ChainPoset {
    /// Reconstruct one maximum chain as an element set.
    pub fn max_chain_elements(&self) -> Vec<usize> {
        let mut best = 0usize;
        for gi in 0..self.groups.len() {
            if self.group_n[gi] > self.group_n[best] {
                best = gi;
            }
        }
        // walk down: repeatedly pick the child with maximal N (ties to the
        // first group in order)
        let mut chain_groups = vec![best];
        loop {
            let top = *chain_groups.last().unwrap();
            let mut next: Option<usize> = None;
            for gj in 0..top {
                if self.parent[gj] == Some(top) {
                    let better = match next {
                        None => true,
                        Some(b) => self.group_n[gj] > self.group_n[b],
                    };
                    if better {
                        next = Some(gj);
                    }
                }
            }
            match next {
                Some(g) => chain_groups.push(g),
                None => break,
            }
        }
        let mut members: Vec<usize> =
            chain_groups.iter().flat_map(|&g| self.groups[g].iter().copied()).collect();
        members.sort_unstable();
        members
    }

    pub fn set(&self) -> &FiniteSet {
        &self.set
    }
}

/// Validate that C ⊆ A is an A-chain: all nearest-neighbour balls pairwise
/// comparable under inclusion.
pub fn is_a_chain(a_set: &FiniteSet, c: &FiniteSet) -> Result<bool> {
    if !c.is_subset_of(a_set) {
        return Ok(false);
    }
    if c.len() < 2 {
        return Ok(true);
    }
    let balls: Vec<Ball> = c
        .values()
        .iter()
        .map(|v| {
            nearest_and_ball(a_set, &FieldElement::new(a_set.field().clone(), v.clone()))
                .map(|(_, b)| b)
        })
        .collect::<Result<_>>()?;
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            if matches!(balls[i].relation(&balls[j]), BallRel::Disjoint) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact maximum A-chain via the poset DP, with the lemma's quantitative
/// expression kept as a monitored lower bound (constant 1, log₂).
pub fn max_chain(a_set: &FiniteSet) -> Result<(FiniteSet, Certificate)> {
    let poset = chain_poset(a_set)?;
    let chain_idx = poset.max_chain_elements();
    let chain = FiniteSet::new(
        a_set.field().clone(),
        chain_idx.iter().map(|&i| a_set.value(i).clone()).collect(),
    );
    let sum = pairwise_set(a_set, a_set, SetOp::Sum)?;
    let prod = pairwise_set(a_set, a_set, SetOp::Prod)?;
    let log = (usize::BITS - (a_set.len() - 1).leading_zeros()).max(1) as usize; // ceil(log2 |A|), at least 1
    let mut cert = Certificate::new("chains", format!("|A|={}", a_set.len()));
    cert.quantity("|chain|", chain.len())
        .quantity("|A+A|", sum.len())
        .quantity("|AA|", prod.len())
        .quantity("ceilLog2|A|", log)
        .monitor_ge(
            "|chain||A+A|^2|AA|^2 log^3|A| >= |A|^5",
            BigInt::from(chain.len())
                * BigInt::from(sum.len()).pow(2)
                * BigInt::from(prod.len()).pow(2)
                * BigInt::from(log).pow(3),
            BigInt::from(a_set.len()).pow(5),
        );
    debug_assert!(is_a_chain(a_set, &chain)?);
    Ok((chain, cert))
}

/// Extract a separable subset from an A-chain: one representative per
/// equal-ball class. Classes have at most q elements, so the output keeps
/// at least ⌈|C|/q⌉ elements, and strict nesting of the representative
/// balls makes it separable.
pub fn separable_from_chain(
    a_set: &FiniteSet,
    c: &FiniteSet,
) -> Result<(FiniteSet, Certificate)> {
    if !is_a_chain(a_set, c)? {
        return Err(Error::NotAChain);
    }
    let q = a_set.field().ff_base_order().ok_or(Error::FieldMismatch)?;
    let balls: Vec<Ball> = c
        .values()
        .iter()
        .map(|v| {
            nearest_and_ball(a_set, &FieldElement::new(a_set.field().clone(), v.clone()))
                .map(|(_, b)| b)
        })
        .collect::<Result<_>>()?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..c.len() {
        match classes.iter_mut().find(|cl| balls[cl[0]].same_set(&balls[i])) {
            Some(cl) => cl.push(i),
            None => classes.push(vec![i]),
        }
    }
    let max_class = classes.iter().map(|cl| cl.len()).max().unwrap_or(0);
    // one representative per class: the smallest element
    let mut reps: Vec<usize> = classes.iter().map(|cl| cl[0]).collect();
    reps.sort_by_key(|&i| balls[i].radius_exponent());
    // strict nesting of representative balls
    let mut strict = true;
    for w in reps.windows(2) {
        if !matches!(balls[w[0]].relation(&balls[w[1]]), BallRel::FirstInSecond) {
            strict = false;
        }
    }
    let out = FiniteSet::new(
        c.field().clone(),
        reps.iter().map(|&i| c.value(i).clone()).collect(),
    );
    let separable = is_separable(&out)?.separable;
    let mut cert = Certificate::new(
        "strict",
        format!("|C|={},q={}", c.len(), q),
    );
    cert.quantity("|C|", c.len())
        .quantity("|S|", out.len())
        .quantity("classes", classes.len())
        .quantity("maxClassSize", max_class)
        .bound_le("class size <= q", BigInt::from(max_class), BigInt::from(q))
        .bound_ge(
            "|S|q >= |C|",
            BigInt::from(out.len()) * BigInt::from(q),
            BigInt::from(c.len()),
        )
        .bound_eq("strict nesting", BigInt::from(strict as u8), BigInt::from(1))
        .bound_eq("output separable", BigInt::from(separable as u8), BigInt::from(1));
    Ok((out, cert))
}

/// Certify the growth of a separable set: the k-fold energy has no
/// non-trivial solutions, so |kS| ≥ |S|^{2k}/E_k(S) exactly.
pub fn separable_growth_check(s: &FiniteSet, k: u32) -> Result<Certificate> {
    let report = is_separable(s)?;
    if !report.separable {
        return Err(Error::NotSeparable);
    }
    let (total, nontrivial) = kfold_energy(s, k)?;
    let ks = iterated_sumset(s, k)?;
    let mut cert = Certificate::new(
        "separable-growth",
        format!("|S|={},k={}", s.len(), k),
    );
    cert.quantity("Ek", total)
        .quantity("nontrivial", nontrivial)
        .quantity("|kS|", ks.len())
        .bound_eq("nontrivial = 0", BigInt::from(nontrivial), BigInt::from(0u8))
        .bound_ge(
            "|kS| Ek >= |S|^2k",
            BigInt::from(ks.len()) * BigInt::from(total),
            BigInt::from(s.len()).pow(2 * k),
        );
    Ok(cert)
}

/// The sum-product certificate chain: max chain → separable subset → growth
/// check at k = 2 → Plünnecke, ending with the monitored ratio
/// |A+A|³|AA|²/|A|⁶.
pub fn ff_sumproduct_certificate(a_set: &FiniteSet) -> Result<Certificate> {
    if a_set.len() < 2 {
        return Err(Error::TooSmall { need: 2, got: a_set.len() });
    }
    let (chain, chain_cert) = max_chain(a_set)?;
    let (sep, sep_cert) = separable_from_chain(a_set, &chain)?;
    let growth_cert = separable_growth_check(&sep, 2)?;
    let plun_cert = crate::calculus::plunnecke_check(a_set, a_set, 2)?;
    let sum = pairwise_set(a_set, a_set, SetOp::Sum)?;
    let prod = pairwise_set(a_set, a_set, SetOp::Prod)?;

    let mut cert = Certificate::new("ff-sumproduct", format!("|A|={}", a_set.len()));
    cert.quantity("|A|", a_set.len())
        .quantity("|A+A|", sum.len())
        .quantity("|AA|", prod.len())
        .quantity("|chain|", chain.len())
        .quantity("|S|", sep.len())
        .quantity("E2(S)", growth_cert.quantities["Ek"].clone())
        .quantity("|2S|", growth_cert.quantities["|kS|"].clone());
    for sub in [&chain_cert, &sep_cert, &growth_cert, &plun_cert] {
        cert.bound_eq(
            &format!("{} holds", sub.lemma),
            BigInt::from(sub.holds as u8),
            BigInt::from(1u8),
        );
    }
    // monitored headline ratio: |A+A|^3 |AA|^2 vs |A|^6 (the o(1) and the
    // q-dependent constant are suppressed)
    let lhs = BigInt::from(sum.len()).pow(3) * BigInt::from(prod.len()).pow(2);
    let rhs = BigInt::from(a_set.len()).pow(6);
    let ratio = {
        let l: f64 = lhs.to_string().parse().unwrap_or(f64::MAX);
        let r: f64 = rhs.to_string().parse().unwrap_or(f64::MAX);
        l / r
    };
    cert.quantity("ratio", format!("{ratio:.6}"));
    cert.monitor_ge("|A+A|^3|AA|^2 >= |A|^6", lhs, rhs);
    Ok(cert)
}

/// Exact audit of the good-quadruple count for one dyadic class: Q and the
/// two proof-side quantities 2^j|A_j||A|² and 2^{2j}|A+A|²|AA|²/|A_j|².
pub fn good_quadruple_audit(a_set: &FiniteSet, j: u32) -> Result<Certificate> {
    if a_set.len() > 24 {
        return Err(Error::BudgetExceeded(a_set.len() as u128));
    }
    if a_set.len() < 2 {
        return Err(Error::TooSmall { need: 2, got: a_set.len() });
    }
    let field = a_set.field().clone();
    let poset = chain_poset(a_set)?;
    let n = a_set.len();
    let zero = field.zero();
    let has_zero = a_set.contains(&zero);
    let aj: Vec<usize> = (0..n)
        .filter(|&i| {
            let v = poset.n_of[i] as u128;
            v >= (1u128 << j) && v < (1u128 << (j + 1))
        })
        .collect();
    let sum = pairwise_set(a_set, a_set, SetOp::Sum)?;
    let prod = pairwise_set(a_set, a_set, SetOp::Prod)?;

    let mut cert = Certificate::new(
        "good-quadruples",
        format!("|A|={},j={},zeroInA={}", n, j, has_zero),
    );
    cert.quantity("|Aj|", aj.len()).quantity("j", j).quantity("zeroInA", has_zero);
    if aj.is_empty() {
        cert.quantity("Q", 0u8);
        cert.bound_eq("Q = 0 on empty class", BigInt::from(0u8), BigInt::from(0u8));
        return Ok(cert);
    }

    // additively good (a, c): |(A+A) ∩ (B_A(a)+c)|·|Aj| <= 2^{j+3}|A+A|
    // multiplicatively good (a, d): |(AA) ∩ (d·B_A(a))|·|Aj| <= 2^{j+3}|AA|
    let bound_add = BigInt::from(1u128 << (j + 3)) * BigInt::from(sum.len());
    let bound_mul = BigInt::from(1u128 << (j + 3)) * BigInt::from(prod.len());
    let mut add_good = vec![vec![false; n]; n]; // [a][c]
    let mut mul_good = vec![vec![false; n]; n]; // [a][d]
    for (ai, &i) in aj.iter().enumerate() {
        let _ = ai;
        let ball = &poset.balls[i];
        for cidx in 0..n {
            let shifted = ball.translate(a_set.value(cidx));
            let count = sum.values().iter().filter(|v| shifted.member_value(v)).count();
            add_good[i][cidx] = BigInt::from(count) * BigInt::from(aj.len()) <= bound_add;
        }
        for didx in 0..n {
            if a_set.value(didx).is_zero() {
                continue; // the proof restricts to d ∈ A∖{0}
            }
            let dilated = ball.dilate(a_set.value(didx))?;
            let count = prod.values().iter().filter(|v| dilated.member_value(v)).count();
            mul_good[i][didx] = BigInt::from(count) * BigInt::from(aj.len()) <= bound_mul;
        }
    }
    // b ∈ B_A(a) ∩ A per a ∈ A_j
    let mut binball: Vec<Vec<usize>> = vec![vec![]; n];
    for &i in &aj {
        binball[i] = (0..n).filter(|&bidx| poset.balls[i].member_value(a_set.value(bidx))).collect();
    }
    let mut q_count: u128 = 0;
    for &i in &aj {
        let bs = binball[i].len() as u128;
        for cidx in 0..n {
            if !add_good[i][cidx] {
                continue;
            }
            for didx in 0..n {
                if a_set.value(didx).is_zero() || !mul_good[i][didx] {
                    continue;
                }
                q_count += bs;
            }
        }
    }
    let lower = BigInt::from(1u128 << j) * BigInt::from(aj.len()) * BigInt::from(n).pow(2);
    // upper side: 2^{2j}|A+A|²|AA|²/|A_j|², reported cross-multiplied
    let upper_num = BigInt::from(1u128 << (2 * j))
        * BigInt::from(sum.len()).pow(2)
        * BigInt::from(prod.len()).pow(2);
    cert.quantity("Q", q_count)
        .quantity("2^j|Aj||A|^2", &lower)
        .quantity("2^2j|A+A|^2|AA|^2/|Aj|^2", format!("{}/{}", upper_num, BigInt::from(aj.len()).pow(2)))
        .monitor_ge("Q >= 2^j|Aj||A|^2 (up to constants)", BigInt::from(q_count), lower)
        .monitor_le(
            "Q|Aj|^2 <= 2^{2j+4}|A+A|^2|AA|^2",
            BigInt::from(q_count) * BigInt::from(aj.len()).pow(2),
            upper_num * BigInt::from(16u8),
        );
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_element, parse_field};
    use crate::set::parse_set;

    fn ff2() -> FieldSpec {
        parse_field("Fq(t;2)").unwrap()
    }

    fn el(f: &FieldSpec, s: &str) -> FieldElement {
        parse_element(f, s).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let f = ff2();
        assert_eq!(valuation(&el(&f, "t^2+1")).unwrap(), Valuation::Exp(2));
        assert_eq!(valuation(&el(&f, "1/t")).unwrap(), Valuation::Exp(-1));
        assert_eq!(valuation(&el(&f, "0")).unwrap(), Valuation::Bottom);
        assert_eq!(dist(&el(&f, "t^2+t"), &el(&f, "t^2")).unwrap(), Valuation::Exp(1));
    }

    #[test]
    fn ball_examples() {
        let f = ff2();
        // same radius, shared member: equal
        let b1 = Ball::new(el(&f, "0"), 1).unwrap();
        let b2 = Ball::new(el(&f, "t"), 1).unwrap();
        assert_eq!(b1.relation(&b2), BallRel::Equal);
        // dist(0, t^2) = q^2 > both radii: disjoint
        let b3 = Ball::new(el(&f, "0"), 0).unwrap();
        let b4 = Ball::new(el(&f, "t^2"), 1).unwrap();
        assert_eq!(b3.relation(&b4), BallRel::Disjoint);
        // B(0, 2) contains B(t^2, 1)
        let b5 = Ball::new(el(&f, "0"), 2).unwrap();
        assert_eq!(b4.relation(&b5), BallRel::FirstInSecond);
        assert_eq!(b5.relation(&b4), BallRel::SecondInFirst);
        assert!(b5.member(&el(&f, "t^2+t")).unwrap());
        assert!(!b3.member(&el(&f, "t^2")).unwrap());
    }

    #[test]
    fn ultrametric_and_trichotomy_exhaustive() {
        // all polynomials of degree <= 2 over F_2: 8 elements
        let f = ff2();
        let elems: Vec<FieldElement> = ["0", "1", "t", "t+1", "t^2", "t^2+1", "t^2+t", "t^2+t+1"]
            .iter()
            .map(|s| el(&f, s))
            .collect();
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    let dxz = dist(x, z).unwrap();
                    let dxy = dist(x, y).unwrap();
                    let dyz = dist(y, z).unwrap();
                    assert!(dxz <= dxy.max(dyz), "ultrametric inequality");
                    if dxy != dyz {
                        assert_eq!(dxz, dxy.max(dyz), "equality when the two differ");
                    }
                }
            }
        }
        // trichotomy over all ball pairs with radii in -1..=3
        for x in &elems {
            for y in &elems {
                for r1 in -1..=3i64 {
                    for r2 in -1..=3i64 {
                        let b1 = Ball::new(x.clone(), r1).unwrap();
                        let b2 = Ball::new(y.clone(), r2).unwrap();
                        let rel = b1.relation(&b2);
                        // spot-verify the classification on the sample set
                        let members =
                            |b: &Ball| -> Vec<bool> { elems.iter().map(|e| b.member(e).unwrap()).collect() };
                        let (m1, m2) = (members(&b1), members(&b2));
                        let inter: Vec<bool> = m1.iter().zip(&m2).map(|(a, b)| *a && *b).collect();
                        match rel {
                            BallRel::Disjoint => assert!(!inter.iter().any(|&x| x)),
                            BallRel::Equal => assert_eq!(m1, m2),
                            BallRel::FirstInSecond => {
                                assert!(m1.iter().zip(&m2).all(|(a, b)| !*a || *b))
                            }
                            BallRel::SecondInFirst => {
                                assert!(m2.iter().zip(&m1).all(|(a, b)| !*a || *b))
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nearest_and_ball_examples() {
        let f = ff2();
        let a = parse_set("Fq(t;2){1,t,t^2}").unwrap();
        let (r, _) = nearest_and_ball(&a, &el(&f, "1")).unwrap();
        assert_eq!(r, Valuation::Exp(1));
        let ab = parse_set("Fq(t;2){0,1}").unwrap();
        let (r, _) = nearest_and_ball(&ab, &el(&f, "0")).unwrap();
        assert_eq!(r, Valuation::Exp(0));
        assert!(matches!(
            nearest_and_ball(&ab, &el(&f, "t^2")),
            Err(Error::NotInSet)
        ));
    }

    #[test]
    fn dendrogram_nodes_and_completeness() {
        let a = parse_set("Fq(t;2){0,1,t,t+1}").unwrap();
        let d = Dendrogram::build(&a).unwrap();
        // two radius-0 merges and one radius-1 root
        let internal: Vec<&DendroNode> = d.nodes.iter().filter(|n| n.radius.is_some()).collect();
        assert_eq!(internal.len(), 3);
        let radii: Vec<i64> = internal.iter().map(|n| n.radius.unwrap()).collect();
        assert_eq!(radii.iter().filter(|&&r| r == 0).count(), 2);
        assert_eq!(radii.iter().filter(|&&r| r == 1).count(), 1);
        // children of each node sit pairwise at exactly the node radius
        for node in &internal {
            for (xi, &c1) in node.children.iter().enumerate() {
                for &c2 in node.children.iter().skip(xi + 1) {
                    for &m1 in &d.nodes[c1].members {
                        for &m2 in &d.nodes[c2].members {
                            let dd = dist(&a.element(m1), &a.element(m2)).unwrap();
                            assert_eq!(dd, Valuation::Exp(node.radius.unwrap()));
                        }
                    }
                }
            }
        }
        // ball probes land on clusters or the empty set
        let f = ff2();
        for center in ["0", "1", "t", "t+1", "t^2", "t^2+t"] {
            for r in -1..=2i64 {
                let ball = Ball::new(el(&f, center), r).unwrap();
                let cluster = d.cluster_of_ball(&ball);
                assert!(d.is_cluster(&cluster), "A∩B must be a dendrogram cluster");
            }
        }
    }

    #[test]
    fn separability_examples() {
        let caterpillar = parse_set("Fq(t;2){1,t,t^2}").unwrap();
        let rep = is_separable(&caterpillar).unwrap();
        assert!(rep.separable);
        let names: Vec<String> = rep.ordering.unwrap().iter().map(|e| e.to_string()).collect();
        assert_eq!(names, vec!["1", "t", "t^2"]);
        let radii: Vec<i64> = rep.balls.unwrap().iter().map(|b| b.radius_exponent()).collect();
        assert_eq!(radii, vec![0, 1, 2]);

        let blocked = parse_set("Fq(t;2){0,1,t,t+1}").unwrap();
        let rep = is_separable(&blocked).unwrap();
        assert!(!rep.separable);
        assert!(rep.violation.is_some());

        let pair = parse_set("Fq(t;2){0,t}").unwrap();
        assert!(is_separable(&pair).unwrap().separable);
        let single = parse_set("Fq(t;2){t^2}").unwrap();
        assert!(is_separable(&single).unwrap().separable);
    }

    #[test]
    fn separability_matches_bruteforce_small() {
        let f3 = parse_field("Fq(t;3)").unwrap();
        // a deterministic little family over F_3(t)
        let polys = ["0", "1", "2", "t", "t+1", "2t", "t^2", "t^2+t", "2t^2+1", "t^2+2t+1"];
        let mut sets = Vec::new();
        for mask in 1u32..(1 << polys.len()) {
            if mask.count_ones() < 2 || mask.count_ones() > 5 || mask % 7 != 1 {
                continue;
            }
            let vals: Vec<Value> = (0..polys.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| el(&f3, polys[i]).into_value())
                .collect();
            sets.push(FiniteSet::new(f3.clone(), vals));
        }
        assert!(sets.len() > 20);
        for s in sets {
            let fast = is_separable(&s).unwrap().separable;
            let slow = is_separable_bruteforce(&s).unwrap();
            assert_eq!(fast, slow, "disagreement on {s}");
        }
    }

    #[test]
    fn chain_poset_t_powers() {
        let a = parse_set("Fq(t;2){1,t,t^2,t^3,t^4}").unwrap();
        let poset = chain_poset(&a).unwrap();
        // B_A(1) = B_A(t); all balls nested: the whole set is a chain
        let max_n = poset.n_of.iter().copied().max().unwrap();
        assert_eq!(max_n, a.len());
        let (chain, cert) = max_chain(&a).unwrap();
        assert_eq!(chain, a);
        assert!(cert.holds);

        // equal pairwise distances: all balls equal, N = |A|
        let flat = parse_set("Fq(t;2){0,1}").unwrap();
        let poset = chain_poset(&flat).unwrap();
        assert_eq!(poset.n_of, vec![2, 2]);
    }

    #[test]
    fn separable_from_chain_examples() {
        let a = parse_set("Fq(t;2){1,t,t^2,t^3}").unwrap();
        let (chain, _) = max_chain(&a).unwrap();
        assert_eq!(chain.len(), 4);
        let (sep, cert) = separable_from_chain(&a, &chain).unwrap();
        assert!(cert.holds, "{cert:?}");
        // class {1, t} collapses to one representative
        assert_eq!(sep.len(), 3);
        assert!(is_separable(&sep).unwrap().separable);
        // q * |S| >= |C|
        assert!(2 * sep.len() >= chain.len());

        let not_chain = parse_set("Fq(t;2){0,1,t,t+1}").unwrap();
        assert_eq!(
            separable_from_chain(&not_chain, &not_chain).unwrap_err(),
            Error::NotAChain
        );
    }

    #[test]
    fn separable_growth_examples() {
        let s = parse_set("Fq(t;2){1,t,t^2}").unwrap();
        let cert = separable_growth_check(&s, 2).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.quantities["Ek"], "21");
        assert_eq!(cert.quantities["nontrivial"], "0");
        assert_eq!(cert.quantities["|kS|"], "4");

        let pair = parse_set("Fq(t;2){0,t}").unwrap();
        for k in 2..=3 {
            let cert = separable_growth_check(&pair, k).unwrap();
            assert!(cert.holds);
            assert_eq!(cert.quantities["nontrivial"], "0");
        }

        let blocked = parse_set("Fq(t;2){0,1,t,t+1}").unwrap();
        assert_eq!(separable_growth_check(&blocked, 2).unwrap_err(), Error::NotSeparable);
    }

    #[test]
    fn ff_sumproduct_examples() {
        let a = parse_set("Fq(t;2){1,t,t^2,t^3,t^4,t^5}").unwrap();
        let cert = ff_sumproduct_certificate(&a).unwrap();
        assert!(cert.holds, "{cert:?}");
        assert_eq!(cert.quantities["|chain|"], "6");

        let ap = parse_set("Fq(t;2){0,1,t,t+1,t^2,t^2+1}").unwrap();
        let cert = ff_sumproduct_certificate(&ap).unwrap();
        assert!(cert.holds);

        let pair = parse_set("Fq(t;2){0,t}").unwrap();
        let cert = ff_sumproduct_certificate(&pair).unwrap();
        assert!(cert.holds);
    }

    #[test]
    fn good_quadruple_audit_examples() {
        let pair = parse_set("Fq(t;2){0,t}").unwrap();
        let cert = good_quadruple_audit(&pair, 1).unwrap();
        assert!(cert.holds);

        let a = parse_set("Fq(t;2){1,t,t^2,t^3,t^4}").unwrap();
        // the t-powers family has N values up to |A|; audit the top class
        let poset = chain_poset(&a).unwrap();
        let top = poset.n_of.iter().copied().max().unwrap();
        let j = (usize::BITS - 1 - top.leading_zeros()) as u32;
        let cert = good_quadruple_audit(&a, j).unwrap();
        assert!(cert.holds);
        assert_ne!(cert.quantities["Q"], "0");

        // empty class
        let cert = good_quadruple_audit(&a, 20).unwrap();
        assert_eq!(cert.quantities["Q"], "0");
    }
}
