//! The sumset-calculus toolbox as executable algorithms: triangle-type
//! inequality certificates, minimal-ratio subset extraction and its
//! consequences, BSG-type extractions from partial sumsets, and the four
//! covering procedures. Every ≪/≫ conclusion is certified with an explicit
//! constant extracted from the corresponding proof, so "holds up to
//! constants" becomes a checkable statement.

use num::BigInt;

use crate::cert::{Certificate, CoverCertificate, CoverDirection, Eps, ExtractionCertificate};
use crate::error::{Error, Result};
use crate::field::{FieldElement, Value};
use crate::set::{pairwise_set, partial_pairwise_set, FiniteSet, PairGraph, SetOp};

fn bi(x: usize) -> BigInt {
    BigInt::from(x)
}

fn bpow(x: usize, k: u32) -> BigInt {
    bi(x).pow(k)
}

/// |A−B|·|C| ≤ |A−C|·|B−C|, checked as an exact integer inequality.
pub fn ruzsa_triangle_check(a: &FiniteSet, b: &FiniteSet, c: &FiniteSet) -> Result<Certificate> {
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ab = pairwise_set(a, b, SetOp::Diff)?;
    let ac = pairwise_set(a, c, SetOp::Diff)?;
    let bc = pairwise_set(b, c, SetOp::Diff)?;
    let mut cert = Certificate::new(
        "ruzsa-triangle",
        format!("|A|={},|B|={},|C|={}", a.len(), b.len(), c.len()),
    );
    cert.quantity("|A-B|", ab.len())
        .quantity("|A-C|", ac.len())
        .quantity("|B-C|", bc.len())
        .quantity("|C|", c.len())
        .bound_le("|A-B||C| <= |A-C||B-C|", bi(ab.len()) * bi(c.len()), bi(ac.len()) * bi(bc.len()));
    Ok(cert)
}

/// Exhaustive minimal-ratio subset: the A′ ⊆ A minimizing |A′+B|/|A′|.
/// Ties break to larger |A′|, then to the lexicographically smallest
/// element list.
pub fn petridis_min_ratio_subset(a: &FiniteSet, b: &FiniteSet) -> Result<ExtractionCertificate> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if a.len() > 20 {
        return Err(Error::SubsetBudgetExceeded(a.len()));
    }
    let n = a.len();
    let mut best: Option<(usize, usize, Vec<Value>)> = None; // (|S+B|, |S|, elems)
    for mask in 1u32..(1u32 << n) {
        let vals: Vec<Value> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| a.value(i).clone())
            .collect();
        let s = FiniteSet::new(a.field().clone(), vals.clone());
        let sb = pairwise_set(&s, b, SetOp::Sum)?;
        let cand = (sb.len(), s.len(), s.values().to_vec());
        let better = match &best {
            None => true,
            Some((bn, bd, belems)) => {
                // cand ratio < best ratio ⇔ cand.0 * bd < bn * cand.1
                let lhs = cand.0 * bd;
                let rhs = bn * cand.1;
                lhs < rhs
                    || (lhs == rhs
                        && (cand.1 > *bd || (cand.1 == *bd && cand.2 < *belems)))
            }
        };
        if better {
            best = Some(cand);
        }
    }
    let (kn, kd, elems) = best.expect("nonempty subset exists");
    let subset = FiniteSet::new(a.field().clone(), elems);
    let mut cert = Certificate::new(
        "petridis-min-ratio",
        format!("|A|={},|B|={}", a.len(), b.len()),
    );
    cert.quantity("|A'|", kd)
        .quantity("|A'+B|", kn)
        .quantity("K", format!("{kn}/{kd}"))
        // minimality against the whole set: K <= |A+B|/|A|
        .bound_le(
            "K <= |A+B|/|A|",
            bi(kn) * bi(a.len()),
            bi(pairwise_set(a, b, SetOp::Sum)?.len()) * bi(kd),
        );
    Ok(ExtractionCertificate { subset, cert })
}

/// |A′+kB| ≤ |A′| |A+B|^k / |A|^k and |kB| ≤ |A+B|^k/|A|^{k−1}, verified
/// through the minimal-ratio subset as exact integer inequalities.
pub fn plunnecke_check(a: &FiniteSet, b: &FiniteSet, k: u32) -> Result<Certificate> {
    if !(1..=4).contains(&k) {
        return Err(Error::PreconditionFailed("k must be in [1,4]".into()));
    }
    let extraction = petridis_min_ratio_subset(a, b)?;
    let aprime = &extraction.subset;
    let ab = pairwise_set(a, b, SetOp::Sum)?;
    // A' + kB
    let mut acc = aprime.clone();
    for _ in 0..k {
        acc = pairwise_set(&acc, b, SetOp::Sum)?;
    }
    let kb = crate::set::iterated_sumset(b, k)?;
    let mut cert = Certificate::new(
        "plunnecke",
        format!("|A|={},|B|={},k={}", a.len(), b.len(), k),
    );
    cert.quantity("|A'|", aprime.len())
        .quantity("|A+B|", ab.len())
        .quantity("|A'+kB|", acc.len())
        .quantity("|kB|", kb.len())
        .bound_le(
            "|A'+kB||A|^k <= |A'||A+B|^k",
            bi(acc.len()) * bpow(a.len(), k),
            bi(aprime.len()) * bpow(ab.len(), k),
        )
        .bound_le(
            "|kB||A|^(k-1) <= |A+B|^k",
            bi(kb.len()) * bpow(a.len(), k - 1),
            bpow(ab.len(), k),
        );
    Ok(cert)
}

/// The recursive peeling behind the half-set refinement: disjoint minimal-
/// ratio pieces are peeled until their union reaches |A|/2, so that
/// |A′+kB| ≤ 2^k |A+B|^k / |A|^{k−1} with |A′| ≥ |A|/2.
pub fn katz_shen_subset(a: &FiniteSet, b: &FiniteSet, k: u32) -> Result<ExtractionCertificate> {
    if !(1..=4).contains(&k) {
        return Err(Error::PreconditionFailed("k must be in [1,4]".into()));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if a.len() > 20 {
        return Err(Error::SubsetBudgetExceeded(a.len()));
    }
    let ab = pairwise_set(a, b, SetOp::Sum)?;
    let mut remaining = a.clone();
    let mut union = FiniteSet::empty(a.field().clone());
    let mut pieces = 0usize;
    let mut cert = Certificate::new(
        "katz-shen",
        format!("|A|={},|B|={},k={}", a.len(), b.len(), k),
    );
    while 2 * union.len() < a.len() {
        let piece = petridis_min_ratio_subset(&remaining, b)?;
        // per-piece Plünnecke bound relative to the current remainder
        let mut piece_kb = piece.subset.clone();
        for _ in 0..k {
            piece_kb = pairwise_set(&piece_kb, b, SetOp::Sum)?;
        }
        let rem_b = pairwise_set(&remaining, b, SetOp::Sum)?;
        cert.bound_le(
            &format!("piece{pieces}: |Ai+kB||A*|^k <= |Ai||A*+B|^k"),
            bi(piece_kb.len()) * bpow(remaining.len(), k),
            bi(piece.subset.len()) * bpow(rem_b.len(), k),
        );
        // pieces are disjoint by construction: each is carved from the
        // remainder of the previous ones
        debug_assert!(union.intersect(&piece.subset).unwrap().is_empty());
        union = union.union(&piece.subset)?;
        remaining = remaining.minus(&piece.subset)?;
        pieces += 1;
    }
    let mut union_kb = union.clone();
    for _ in 0..k {
        union_kb = pairwise_set(&union_kb, b, SetOp::Sum)?;
    }
    cert.quantity("pieces", pieces)
        .quantity("|A'|", union.len())
        .quantity("|A'+kB|", union_kb.len())
        .bound_ge("2|A'| >= |A|", bi(2 * union.len()), bi(a.len()))
        .bound_le(
            "|A'+kB||A|^(k-1) <= 2^k|A+B|^k",
            bi(union_kb.len()) * bpow(a.len(), k - 1),
            bi(1usize << k) * bpow(ab.len(), k),
        );
    Ok(ExtractionCertificate { subset: union, cert })
}

/// |B_G(a₁) ∩ B_G(a₂)|, the joint G-degree.
pub fn joint_degree(g: &PairGraph, a1: &FieldElement, a2: &FieldElement) -> Result<usize> {
    let i1 = g.left().index_of(a1.value()).ok_or(Error::NotInLeftSet)?;
    let i2 = g.left().index_of(a2.value()).ok_or(Error::NotInLeftSet)?;
    Ok(joint_degree_idx(&neighbor_table(g), i1, i2))
}

fn neighbor_table(g: &PairGraph) -> Vec<Vec<u32>> {
    let mut t = vec![Vec::new(); g.left().len()];
    for &(i, j) in g.edges() {
        t[i as usize].push(j);
    }
    for row in t.iter_mut() {
        row.sort_unstable();
    }
    t
}

fn joint_degree_idx(table: &[Vec<u32>], i1: usize, i2: usize) -> usize {
    let (a, b) = (&table[i1], &table[i2]);
    let mut x = 0;
    let mut y = 0;
    let mut count = 0;
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                x += 1;
                y += 1;
            }
        }
    }
    count
}

/// Minimum pairwise joint degree over ordered pairs of the index set
/// (diagonal included: the joint degree of (a,a) is deg a).
fn min_joint_degree(table: &[Vec<u32>], indices: &[usize]) -> usize {
    let mut min = usize::MAX;
    for &i in indices {
        for &j in indices {
            min = min.min(joint_degree_idx(table, i, j));
        }
    }
    if min == usize::MAX {
        0
    } else {
        min
    }
}

/// Dense-regime BSG extraction: keep the left vertices of G-degree at least
/// (1−√ε)|B|; any two of them share (1−2√ε)|B| right-neighbours, which
/// bounds the complete difference set of the kept part.
pub fn bsg_dense(g: &PairGraph, eps: Eps) -> Result<ExtractionCertificate> {
    if !eps.below(1, 4) {
        return Err(Error::BadEpsilon("(0,1/4)"));
    }
    let (sn, sd) = eps.sqrt()?;
    let a = g.left();
    let b = g.right();
    // |G| >= (1-ε)|A||B|
    if (g.edge_count() as u128) * (eps.den as u128)
        < (eps.den - eps.num) as u128 * (a.len() as u128) * (b.len() as u128)
    {
        return Err(Error::DensityTooLow);
    }
    let table = neighbor_table(g);
    // degree*sd >= (sd-sn)*|B|
    let kept: Vec<usize> = (0..a.len())
        .filter(|&i| table[i].len() as u128 * sd as u128 >= (sd - sn) as u128 * b.len() as u128)
        .collect();
    let subset = FiniteSet::new(
        a.field().clone(),
        kept.iter().map(|&i| a.value(i).clone()).collect(),
    );
    let jd_min = min_joint_degree(&table, &kept);
    let diff = pairwise_set(&subset, &subset, SetOp::Diff)?;
    let partial_diff = partial_pairwise_set(g, SetOp::Diff)?;

    let mut cert = Certificate::new(
        "bsg-dense",
        format!("|A|={},|B|={},|G|={},eps={}", a.len(), b.len(), g.edge_count(), eps),
    );
    cert.quantity("|A'|", subset.len())
        .quantity("minJointDegree", jd_min)
        .quantity("|A'-A'|", diff.len())
        .quantity("|A-G-B|", partial_diff.len())
        .bound_ge(
            "|A'|sd >= (sd-sn)|A|",
            bi(subset.len()) * bi(sd as usize),
            bi(a.len()) * bi((sd - sn) as usize),
        )
        .bound_ge(
            "jointDegree*sd >= (sd-2sn)|B|",
            bi(jd_min) * bi(sd as usize),
            bi(b.len()) * bi(sd.saturating_sub(2 * sn) as usize),
        )
        .bound_le(
            "|A'-A'|*K <= |A-G-B|^2",
            bi(diff.len()) * bi(jd_min),
            bi(partial_diff.len()) * bi(partial_diff.len()),
        )
        .bound_le(
            "|A'-A'|(sd-2sn)|B| <= sd|A-G-B|^2",
            bi(diff.len()) * bi(sd.saturating_sub(2 * sn) as usize) * bi(b.len()),
            bi(sd as usize) * bi(partial_diff.len()) * bi(partial_diff.len()),
        );
    Ok(ExtractionCertificate { subset, cert })
}

/// Outcome of the pigeonhole refinement step shared by the sparse-regime
/// extractions: a popular left-neighbourhood A₁ = A_G(b), the set H of
/// high-joint-degree pairs restricted to it, and the realized thresholds.
struct RefineOutcome {
    a1_indices: Vec<usize>,
    /// ordered pairs (i, j) of left indices inside A₁ whose joint G-degree
    /// passes the threshold
    h1: Vec<(usize, usize)>,
    /// realized minimum joint G-degree over H₁
    h1_min_joint: usize,
}

/// The pigeonhole of the refinement lemma: H is the set of pairs with joint
/// degree at least ε|G|²/(2|A|²|B|), and some b ∈ B has
/// |A_G(b)|² − |(A_G(b)×A_G(b))∖H|/ε ≥ |G|²/(2|B|²).
fn bsg_refine(g: &PairGraph, eps: Eps) -> Result<RefineOutcome> {
    let a = g.left();
    let b = g.right();
    if g.edge_count() == 0 {
        return Err(Error::NoWitness);
    }
    let table = neighbor_table(g);
    let gsq = bi(g.edge_count()) * bi(g.edge_count());
    // joint(i,j) * 2*eden*|A|^2*|B| >= enum*|G|^2
    let thresh_l = |jd: usize| bi(jd) * bi(2) * bi(eps.den as usize) * bpow(a.len(), 2) * bi(b.len());
    let thresh_r = bi(eps.num as usize) * gsq.clone();
    let in_h = |i: usize, j: usize, table: &[Vec<u32>]| -> bool {
        thresh_l(joint_degree_idx(table, i, j)) >= thresh_r
    };
    // scan b for the witness maximizing |A_G(b)|² − miss/ε (score kept as
    // the rational pair (|A_G(b)|²ε − miss, ε))
    let mut best: Option<(BigInt, usize)> = None;
    for j in 0..b.len() {
        let members: Vec<usize> = (0..a.len())
            .filter(|&i| table[i].binary_search(&(j as u32)).is_ok())
            .collect();
        if members.is_empty() {
            continue;
        }
        let mut miss = 0usize;
        for &i1 in &members {
            for &i2 in &members {
                if !in_h(i1, i2, &table) {
                    miss += 1;
                }
            }
        }
        // score numerator over denominator eden: |M|²·enum − miss·eden
        let score = bi(members.len()) * bi(members.len()) * bi(eps.num as usize)
            - bi(miss) * bi(eps.den as usize);
        if best.as_ref().map_or(true, |(s, _)| score > *s) {
            best = Some((score, j));
        }
    }
    let (score, jstar) = best.ok_or(Error::NoWitness)?;
    // witness condition: |A_G(b)|² − miss/ε >= |G|²/(2|B|²), i.e.
    // score * 2|B|² >= enum * |G|²
    if score * bi(2) * bpow(b.len(), 2) < bi(eps.num as usize) * gsq {
        return Err(Error::NoWitness);
    }
    let a1_indices: Vec<usize> = (0..a.len())
        .filter(|&i| table[i].binary_search(&(jstar as u32)).is_ok())
        .collect();
    let mut h1 = Vec::new();
    let mut h1_min_joint = usize::MAX;
    for &i1 in &a1_indices {
        for &i2 in &a1_indices {
            if in_h(i1, i2, &table) {
                h1.push((i1, i2));
                h1_min_joint = h1_min_joint.min(joint_degree_idx(&table, i1, i2));
            }
        }
    }
    if h1.is_empty() {
        return Err(Error::NoWitness);
    }
    Ok(RefineOutcome { a1_indices, h1, h1_min_joint: h1_min_joint.min(usize::MAX - 1) })
}

fn values_of(set: &FiniteSet, idx: &[usize]) -> Vec<Value> {
    idx.iter().map(|&i| set.value(i).clone()).collect()
}

/// Partial image over explicit index pairs of one ground set.
fn partial_over_pairs(
    set: &FiniteSet,
    pairs: &[(usize, usize)],
    op: SetOp,
) -> Result<FiniteSet> {
    let field = set.field().clone();
    let mut out = Vec::with_capacity(pairs.len());
    for &(i, j) in pairs {
        let x = set.value(i);
        let y = set.value(j);
        let v = match op {
            SetOp::Sum => field.add(x, y),
            SetOp::Diff => field.sub(x, y),
            SetOp::Prod => field.mul(x, y),
            SetOp::Ratio => {
                if y.is_zero() {
                    continue; // ratio sets exclude zero divisors by definition
                }
                field.div(x, y)?
            }
        };
        out.push(v);
    }
    Ok(FiniteSet::new(field, out))
}

/// Sparse-regime BSG extraction, following the constructive proof: the
/// pigeonholed witness b gives A′ = A_G(b), and a second dense-regime pass
/// inside A′ produces A″ whose complete difference set is bounded against
/// |A|⁴|B|³|A −^G B|⁴/|G|⁵ with the explicit constant 8/(ε²(1−2√ε)).
pub fn bsg_sparse(g: &PairGraph, eps: Eps) -> Result<ExtractionCertificate> {
    let (sn, sd) = eps.sqrt()?;
    let a = g.left();
    let b = g.right();
    let refine = bsg_refine(g, eps)?;
    let a1 = FiniteSet::new(a.field().clone(), values_of(a, &refine.a1_indices));
    let d1 = partial_over_pairs(a, &refine.h1, SetOp::Diff)?;
    let partial_diff = partial_pairwise_set(g, SetOp::Diff)?;

    // dense pass on H₁ viewed as a graph on A₁×A₁
    let pos_of: std::collections::HashMap<usize, usize> = refine
        .a1_indices
        .iter()
        .enumerate()
        .map(|(pos, &i)| (i, pos))
        .collect();
    let h_edges: Vec<(u32, u32)> = refine
        .h1
        .iter()
        .map(|&(i, j)| (pos_of[&i] as u32, pos_of[&j] as u32))
        .collect();
    let h_graph = PairGraph::new(a1.clone(), a1.clone(), h_edges)?;
    let h_table = neighbor_table(&h_graph);
    let kept: Vec<usize> = (0..a1.len())
        .filter(|&i| h_table[i].len() as u128 * sd as u128 >= (sd - sn) as u128 * a1.len() as u128)
        .collect();
    let subset = FiniteSet::new(a1.field().clone(), values_of(&a1, &kept));
    let k_min = min_joint_degree(&h_table, &kept);
    let final_diff = pairwise_set(&subset, &subset, SetOp::Diff)?;

    let mut cert = Certificate::new(
        "bsg-sparse",
        format!("|A|={},|B|={},|G|={},eps={}", a.len(), b.len(), g.edge_count(), eps),
    );
    cert.quantity("|A1|", a1.len())
        .quantity("|H1|", refine.h1.len())
        .quantity("h1MinJointDegree", refine.h1_min_joint)
        .quantity("|A1-H-A1|", d1.len())
        .quantity("|A''|", subset.len())
        .quantity("|A''-A''|", final_diff.len())
        .quantity("|A-G-B|", partial_diff.len())
        .quantity("finalConstant", format!("8/(eps^2(1-2sqrt(eps)))"))
        // |A1| >= |G|/(2|B|)
        .bound_ge("2|A1||B| >= |G|", bi(2 * a1.len()) * bi(b.len()), bi(g.edge_count()))
        // |H1| >= (1-ε)|A1|²
        .bound_ge(
            "|H1|eden >= (eden-enum)|A1|^2",
            bi(refine.h1.len()) * bi(eps.den as usize),
            bi((eps.den - eps.num) as usize) * bpow(a1.len(), 2),
        )
        // bsgsufficient, first application
        .bound_le(
            "|A1-H-A1|*K <= |A-G-B|^2",
            bi(d1.len()) * bi(refine.h1_min_joint),
            bpow(partial_diff.len(), 2),
        )
        // bsgsufficient, second application
        .bound_le(
            "|A''-A''|*K' <= |A1-H-A1|^2",
            bi(final_diff.len()) * bi(k_min),
            bpow(d1.len(), 2),
        );
    // final chain with explicit constant:
    // |A''-A''| ε²(1-2√ε) |G|^5 <= 8 |A|^4 |B|^3 |A-G-B|^4
    let lhs = bi(final_diff.len())
        * bpow(eps.num as usize, 2)
        * bi(sd.saturating_sub(2 * sn) as usize)
        * bpow(g.edge_count(), 5);
    let rhs = bi(8)
        * bpow(eps.den as usize, 2)
        * bi(sd as usize)
        * bpow(a.len(), 4)
        * bpow(b.len(), 3)
        * bpow(partial_diff.len(), 4);
    cert.bound_le("|A''-A''| <= 8/(eps^2(1-2sqrt(eps))) |A|^4|B|^3|A-G-B|^4/|G|^5", lhs, rhs);
    Ok(ExtractionCertificate { subset, cert })
}

/// Simultaneous additive and multiplicative BSG extraction for
/// sum-products. Requires 0 ∉ B; edges with left element 0 are dropped so
/// the multiplicative side is well defined throughout. Records the five
/// instance quantities and evaluates the three conclusions with the proof's
/// ε-dependent constants.
pub fn bsg_sumproduct(g: &PairGraph) -> Result<ExtractionCertificate> {
    let eps = Eps::sixteenth();
    let (sn, sd) = eps.sqrt()?;
    if g.right().contains_zero() {
        return Err(Error::ZeroInRight);
    }
    // drop edges with a = 0 (the ratio set convention A/B = A(B∖{0})⁻¹ is
    // about the right side; zeros on the left break A′/A′, so they are
    // excluded from the extraction ground set)
    let zero_free: Vec<u32> = (0..g.left().len() as u32)
        .filter(|&i| !g.left().value(i as usize).is_zero())
        .collect();
    let g = g.restrict_left(&zero_free);
    let a = g.left();
    let b = g.right();

    let refine = bsg_refine(&g, eps)?;
    let a1 = FiniteSet::new(a.field().clone(), values_of(a, &refine.a1_indices));
    let d1_diff = partial_over_pairs(a, &refine.h1, SetOp::Diff)?;
    let d1_ratio = partial_over_pairs(a, &refine.h1, SetOp::Ratio)?;
    let g_diff = partial_pairwise_set(&g, SetOp::Diff)?;
    let g_ratio = partial_pairwise_set(&g, SetOp::Ratio)?;

    let pos_of: std::collections::HashMap<usize, usize> = refine
        .a1_indices
        .iter()
        .enumerate()
        .map(|(pos, &i)| (i, pos))
        .collect();
    let h_edges: Vec<(u32, u32)> = refine
        .h1
        .iter()
        .map(|&(i, j)| (pos_of[&i] as u32, pos_of[&j] as u32))
        .collect();
    let h_graph = PairGraph::new(a1.clone(), a1.clone(), h_edges)?;
    let h_table = neighbor_table(&h_graph);
    let kept: Vec<usize> = (0..a1.len())
        .filter(|&i| h_table[i].len() as u128 * sd as u128 >= (sd - sn) as u128 * a1.len() as u128)
        .collect();
    let subset = FiniteSet::new(a1.field().clone(), values_of(&a1, &kept));

    let diff = pairwise_set(&subset, &subset, SetOp::Diff)?;
    let ratio = pairwise_set(&subset, &subset, SetOp::Ratio)?;
    let e_mul = crate::set::energy(&subset, &subset, crate::set::EnergyKind::Multiplicative)?;

    // H' = H₁ ∩ (A''×A''), and the exact Cauchy-Schwarz lower bound on E×
    let kept_flag: Vec<bool> = {
        let mut f = vec![false; a1.len()];
        for &i in &kept {
            f[i] = true;
        }
        f
    };
    let hprime: Vec<(usize, usize)> = h_graph
        .edges()
        .iter()
        .filter(|&&(i, j)| kept_flag[i as usize] && kept_flag[j as usize])
        .map(|&(i, j)| (i as usize, j as usize))
        .collect();
    let hprime_ratio = partial_over_pairs(&a1, &hprime, SetOp::Ratio)?;

    let mut cert = Certificate::new(
        "bsg-sumproduct",
        format!("|A|={},|B|={},|G|={}", a.len(), b.len(), g.edge_count()),
    );
    cert.quantity("|A'-A'|", diff.len())
        .quantity("|A'/A'|", ratio.len())
        .quantity("ExA'", e_mul)
        .quantity("|A-G-B|", g_diff.len())
        .quantity("|A/G/B|", g_ratio.len())
        .quantity("|A'|", subset.len())
        .quantity("|A1|", a1.len())
        .quantity("|H'|", hprime.len());

    // exact Cauchy-Schwarz route: E×(A') >= |H'|² / |A' /H'/ A'|
    cert.bound_ge(
        "ExA'|A'/H'/A'| >= |H'|^2",
        BigInt::from(e_mul) * bi(hprime_ratio.len().max(1)),
        bpow(hprime.len(), 2),
    );
    // the two bsgsufficient routes, exact
    cert.bound_le(
        "|A1-H-A1|*K <= |A-G-B|^2",
        bi(d1_diff.len()) * bi(refine.h1_min_joint),
        bpow(g_diff.len(), 2),
    );
    cert.bound_le(
        "|A1/H/A1|*K <= |A/G/B|^2",
        bi(d1_ratio.len()) * bi(refine.h1_min_joint),
        bpow(g_ratio.len(), 2),
    );
    // conclusions 1 and 2 with explicit constant 8/(ε²(1−2√ε))
    let cst = |img: usize, partial: usize| {
        (
            bi(img)
                * bpow(eps.num as usize, 2)
                * bi(sd.saturating_sub(2 * sn) as usize)
                * bpow(g.edge_count(), 5),
            bi(8)
                * bpow(eps.den as usize, 2)
                * bi(sd as usize)
                * bpow(a.len(), 4)
                * bpow(b.len(), 3)
                * bpow(partial, 4),
        )
    };
    let (l1, r1) = cst(diff.len(), g_diff.len());
    cert.bound_le("|A'-A'| <= C(eps)|A|^4|B|^3|A-G-B|^4/|G|^5", l1, r1);
    let (l2, r2) = cst(ratio.len(), g_ratio.len());
    cert.bound_le("|A'/A'| <= C(eps)|A|^4|B|^3|A/G/B|^4/|G|^5", l2, r2);
    // conclusion 3 with explicit constant (1-2√ε)²ε/2:
    // E× * 2 eden sd² |A|²|B||A/G/B|² >= (sd-2sn)² enum |G|²|A'|⁴
    cert.bound_ge(
        "ExA' >= (1-2sqrt(eps))^2 eps/2 |G|^2|A'|^4/(|A|^2|B||A/G/B|^2)",
        BigInt::from(e_mul)
            * bi(2)
            * bi(eps.den as usize)
            * bpow(sd as usize, 2)
            * bpow(a.len(), 2)
            * bi(b.len())
            * bpow(g_ratio.len(), 2),
        bpow(sd.saturating_sub(2 * sn) as usize, 2)
            * bi(eps.num as usize)
            * bpow(g.edge_count(), 2)
            * bpow(subset.len(), 4),
    );
    Ok(ExtractionCertificate { subset, cert })
}

fn check_cover(
    field: &crate::field::FieldSpec,
    covered: &FiniteSet,
    centers: &[Value],
    transland: &FiniteSet,
    direction: CoverDirection,
) -> bool {
    covered.values().iter().all(|x| {
        centers.iter().any(|c| {
            // x ∈ c + T (PlusB / DifferenceSet) or x ∈ c − T (MinusB)
            let shifted = field.sub(x, c);
            match direction {
                CoverDirection::PlusB | CoverDirection::DifferenceSet => transland.contains(&shifted),
                CoverDirection::MinusB => transland.contains(&field.neg(&shifted)),
            }
        })
    })
}

/// Covering of all of A by translates of B−B. A greedy max-coverage pass
/// runs first; if it overshoots the ⌈|A−B|/|B|⌉ budget, the maximal
/// disjoint-family selection from the covering lemma's proof replaces it
/// (that construction meets the budget unconditionally).
pub fn cover_ruzsa(a: &FiniteSet, b: &FiniteSet) -> Result<CoverCertificate> {
    if b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let field = a.field().clone();
    let diff_b = pairwise_set(b, b, SetOp::Diff)?;
    let ab = pairwise_set(a, b, SetOp::Diff).map(|s| s.len()).unwrap_or(0);
    let budget = if a.is_empty() { 0 } else { (ab + b.len() - 1) / b.len() };

    // greedy max-coverage
    let mut centers: Vec<Value> = Vec::new();
    let mut residual: Vec<Value> = a.values().to_vec();
    while !residual.is_empty() {
        let mut best: Option<(usize, &Value)> = None;
        for c in a.values() {
            let cov = residual.iter().filter(|x| diff_b.contains(&field.sub(x, c))).count();
            if best.map_or(true, |(bc, bv)| cov > bc || (cov == bc && c < bv)) {
                best = Some((cov, c));
            }
        }
        let (cov, c) = best.expect("candidate exists");
        if cov == 0 {
            break; // cannot happen: c = x covers x since 0 ∈ B−B
        }
        centers.push(c.clone());
        residual.retain(|x| !diff_b.contains(&field.sub(x, c)));
    }

    let mut method = "greedy-max-coverage";
    if centers.len() > budget || !residual.is_empty() {
        // maximal disjoint family: keep a ∈ A whenever a−B is disjoint from
        // every kept a_i−B, i.e. a−a_i ∉ B−B
        method = "disjoint-family";
        centers.clear();
        for x in a.values() {
            if centers.iter().all(|c| !diff_b.contains(&field.sub(x, c))) {
                centers.push(x.clone());
            }
        }
    }

    let ok = check_cover(&field, a, &centers, &diff_b, CoverDirection::DifferenceSet);
    let mut cert = Certificate::new("ruzsa-cover", format!("|A|={},|B|={}", a.len(), b.len()));
    cert.quantity("centers", centers.len())
        .quantity("|A-B|", ab)
        .quantity("method", method)
        .bound_le("centers <= ceil(|A-B|/|B|)", bi(centers.len()), bi(budget))
        .bound_eq("coverage is exact", bi(ok as usize), bi(1));
    Ok(CoverCertificate {
        centers,
        covered: a.clone(),
        transland: diff_b,
        direction: CoverDirection::DifferenceSet,
        cert,
    })
}

/// Energy-greedy covering of (1−ε)|A| by translates of B: repeatedly pick
/// the translate (a−b)+B with maximal residual coverage.
pub fn cover_shen(a: &FiniteSet, b: &FiniteSet, eps: Eps) -> Result<CoverCertificate> {
    if b.is_empty() {
        return Err(Error::EmptyInput);
    }
    let field = a.field().clone();
    let ab = pairwise_set(a, b, SetOp::Diff).map(|s| s.len()).unwrap_or(0);
    let mut centers: Vec<Value> = Vec::new();
    let mut covered: Vec<Value> = Vec::new();
    let mut residual: Vec<Value> = a.values().to_vec();
    // stop once covered*eden >= (eden-enum)*|A|
    let target_met = |cov: usize| {
        cov as u128 * eps.den as u128 >= (eps.den - eps.num) as u128 * a.len() as u128
    };
    while !target_met(covered.len()) {
        let mut best: Option<(usize, Value)> = None;
        for x in &residual {
            for y in b.values() {
                let offset = field.sub(x, y);
                let cov = residual
                    .iter()
                    .filter(|r| b.contains(&field.sub(r, &offset)))
                    .count();
                if best.as_ref().map_or(true, |(bc, bv)| cov > *bc || (cov == *bc && offset < *bv)) {
                    best = Some((cov, offset));
                }
            }
        }
        let (_, offset) = best.ok_or(Error::NoWitness)?;
        centers.push(offset.clone());
        let (newly, rest): (Vec<Value>, Vec<Value>) =
            residual.into_iter().partition(|r| b.contains(&field.sub(r, &offset)));
        covered.extend(newly);
        residual = rest;
    }
    let covered = FiniteSet::new(field.clone(), covered);
    let ok = check_cover(&field, &covered, &centers, b, CoverDirection::PlusB);
    // provable step bound: ⌈log2(1/ε)⌉ · ⌈|A−B|/|B|⌉
    let halvings = eps.ceil_log2_inverse() as usize;
    let per = (ab + b.len() - 1) / b.len();
    let mut cert = Certificate::new(
        "shen-cover",
        format!("|A|={},|B|={},eps={}", a.len(), b.len(), eps),
    );
    cert.quantity("centers", centers.len())
        .quantity("covered", covered.len())
        .quantity("coverageTarget", format!("(1-{eps})|A|"))
        .bound_ge(
            "covered*eden >= (eden-enum)|A|",
            bi(covered.len()) * bi(eps.den as usize),
            bi((eps.den - eps.num) as usize) * bi(a.len()),
        )
        .bound_le("centers <= ceil(log2(1/eps))ceil(|A-B|/|B|)", bi(centers.len()), bi(halvings.max(1) * per.max(1)))
        .bound_eq("coverage is exact", bi(ok as usize), bi(1));
    Ok(CoverCertificate { centers, covered, transland: b.clone(), direction: CoverDirection::PlusB, cert })
}

fn cover_variation1_side(
    g: &PairGraph,
    eps: Eps,
    minus: bool,
) -> Result<CoverCertificate> {
    let (sn, sd) = eps.sqrt()?;
    let a = g.left();
    let b = g.right();
    let field = a.field().clone();
    let table = neighbor_table(g);
    // A₁: degree ≥ (1−√ε)|B|
    let a1: Vec<usize> = (0..a.len())
        .filter(|&i| table[i].len() as u128 * sd as u128 >= (sd - sn) as u128 * b.len() as u128)
        .collect();
    let a1_set = FiniteSet::new(field.clone(), values_of(a, &a1));
    let partial_diff = partial_pairwise_set(g, SetOp::Diff)?;

    let mut centers: Vec<Value> = Vec::new();
    let mut covered: Vec<Value> = Vec::new();
    let mut residual: Vec<Value> = a1_set.values().to_vec();
    // stop once residual ≤ √ε |A₁|
    let stop = |res: usize| res as u128 * sd as u128 <= sn as u128 * a1_set.len() as u128;
    while !stop(residual.len()) {
        let mut best: Option<(usize, Value)> = None;
        for x in &residual {
            for y in b.values() {
                // translate (x−y)+B covers r with r−(x−y) ∈ B; the −B cover
                // uses (x+y)−B, covering r with (x+y)−r ∈ B
                let offset =
                    if minus { field.add(x, y) } else { field.sub(x, y) };
                let cov = residual
                    .iter()
                    .filter(|r| {
                        let d = if minus { field.sub(&offset, r) } else { field.sub(r, &offset) };
                        b.contains(&d)
                    })
                    .count();
                if best.as_ref().map_or(true, |(bc, bv)| cov > *bc || (cov == *bc && offset < *bv)) {
                    best = Some((cov, offset));
                }
            }
        }
        let (cov, offset) = best.ok_or(Error::NoWitness)?;
        if cov == 0 {
            break;
        }
        centers.push(offset.clone());
        let (newly, rest): (Vec<Value>, Vec<Value>) = residual.into_iter().partition(|r| {
            let d = if minus { field.sub(&offset, r) } else { field.sub(r, &offset) };
            b.contains(&d)
        });
        covered.extend(newly);
        residual = rest;
    }
    let covered = FiniteSet::new(field.clone(), covered);
    let dir = if minus { CoverDirection::MinusB } else { CoverDirection::PlusB };
    let ok = check_cover(&field, &covered, &centers, b, dir);
    // steps per halving: ⌈sd²|A−^G B| / ((sd−sn)²|B|)⌉, halvings: ⌈log2(sd/sn)⌉
    let per = {
        let num = sd as u128 * sd as u128 * partial_diff.len() as u128;
        let den = (sd - sn) as u128 * (sd - sn) as u128 * b.len() as u128;
        ((num + den - 1) / den) as usize
    };
    let halvings = {
        let mut k = 0usize;
        let mut pow = 1u128;
        while pow * (sn as u128) < sd as u128 {
            pow *= 2;
            k += 1;
        }
        k.max(1)
    };
    let mut cert = Certificate::new(
        "shen-variation-1",
        format!("|A|={},|B|={},|G|={},eps={},dir={}", a.len(), b.len(), g.edge_count(), eps, dir),
    );
    cert.quantity("centers", centers.len())
        .quantity("covered", covered.len())
        .quantity("|A1|", a1_set.len())
        .quantity("|A-G-B|", partial_diff.len())
        .quantity("C(eps)", format!("{halvings}*{sd}^2/({sd}-{sn})^2"))
        .bound_ge(
            "covered*sd >= (sd-2sn)|A|",
            bi(covered.len()) * bi(sd as usize),
            bi(sd.saturating_sub(2 * sn) as usize) * bi(a.len()),
        )
        .bound_le(
            "centers <= C(eps)|A-G-B|/|B|",
            bi(centers.len()),
            bi(halvings * per.max(1)),
        )
        .bound_eq("coverage is exact", bi(ok as usize), bi(1));
    Ok(CoverCertificate { centers, covered, transland: b.clone(), direction: dir, cert })
}

/// Dense-graph covering: most of A is covered by few translates of B, and
/// also by few translates of −B.
pub fn cover_variation1(g: &PairGraph, eps: Eps) -> Result<(CoverCertificate, CoverCertificate)> {
    if !eps.below(1, 4) {
        return Err(Error::BadEpsilon("(0,1/4)"));
    }
    let a = g.left();
    let b = g.right();
    if (g.edge_count() as u128) * (eps.den as u128)
        < (eps.den - eps.num) as u128 * (a.len() as u128) * (b.len() as u128)
    {
        return Err(Error::DensityTooLow);
    }
    Ok((cover_variation1_side(g, eps, false)?, cover_variation1_side(g, eps, true)?))
}

/// Edge-space covering: repeatedly pick a_* ∈ A whose translate a_*−B
/// accounts for the most residual edge-differences, until at most ε|G|
/// edges remain unaccounted. Returns the accounted subgraph G′ and the
/// certificate that A −^{G′} B sits inside the union of the translates.
pub fn cover_variation2(g: &PairGraph, eps: Eps) -> Result<(PairGraph, CoverCertificate)> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyInput);
    }
    let a = g.left();
    let b = g.right();
    let field = a.field().clone();
    let partial_diff = partial_pairwise_set(g, SetOp::Diff)?;

    let mut residual: Vec<(u32, u32)> = g.edges().to_vec();
    let mut accounted: Vec<(u32, u32)> = Vec::new();
    let mut centers: Vec<Value> = Vec::new();
    // stop when residual*eden <= enum*|G|
    let stop =
        |res: usize| res as u128 * eps.den as u128 <= eps.num as u128 * g.edge_count() as u128;
    while !stop(residual.len()) {
        let mut best: Option<(usize, &Value)> = None;
        for astar in a.values() {
            // edge (i,j) accounted iff a_i − b_j ∈ a_* − B ⟺ a_*−a_i+b_j ∈ B
            let cov = residual
                .iter()
                .filter(|&&(i, j)| {
                    let v = field.add(
                        &field.sub(astar, a.value(i as usize)),
                        b.value(j as usize),
                    );
                    b.contains(&v)
                })
                .count();
            if best.map_or(true, |(bc, bv)| cov > bc || (cov == bc && astar < bv)) {
                best = Some((cov, astar));
            }
        }
        let (cov, astar) = best.ok_or(Error::NoWitness)?;
        if cov == 0 {
            break; // defensive; a_* = a_i always accounts for (i, j)
        }
        let astar = astar.clone();
        centers.push(astar.clone());
        let (newly, rest): (Vec<(u32, u32)>, Vec<(u32, u32)>) =
            residual.into_iter().partition(|&(i, j)| {
                let v = field
                    .add(&field.sub(&astar, a.value(i as usize)), b.value(j as usize));
                b.contains(&v)
            });
        accounted.extend(newly);
        residual = rest;
    }
    let gprime = PairGraph::new(a.clone(), b.clone(), accounted)?;
    let gprime_diff = partial_pairwise_set(&gprime, SetOp::Diff)?;
    let ok = check_cover(&field, &gprime_diff, &centers, b, CoverDirection::MinusB);
    let per = {
        let num = eps.den as u128 * partial_diff.len() as u128 * a.len() as u128;
        let den = eps.num as u128 * g.edge_count() as u128;
        ((num + den - 1) / den) as usize
    };
    let halvings = eps.ceil_log2_inverse() as usize;
    let mut cert = Certificate::new(
        "shen-variation-2",
        format!("|A|={},|B|={},|G|={},eps={}", a.len(), b.len(), g.edge_count(), eps),
    );
    cert.quantity("centers", centers.len())
        .quantity("|G'|", gprime.edge_count())
        .quantity("|A-G-B|", partial_diff.len())
        .quantity("|A-G'-B|", gprime_diff.len())
        .bound_ge(
            "|G'|eden >= (eden-enum)|G|",
            bi(gprime.edge_count()) * bi(eps.den as usize),
            bi((eps.den - eps.num) as usize) * bi(g.edge_count()),
        )
        .bound_le(
            "centers <= C(eps)|A-G-B||A|/|G|",
            bi(centers.len()),
            bi(halvings.max(1) * per.max(1)),
        )
        .bound_eq("A-G'-B inside union of a*-B", bi(ok as usize), bi(1));
    Ok((gprime, CoverCertificate {
        centers,
        covered: gprime_diff,
        transland: b.clone(),
        direction: CoverDirection::MinusB,
        cert,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn qset(ints: &[i128]) -> FiniteSet {
        FiniteSet::from_ints(&q(), ints)
    }

    #[test]
    fn ruzsa_triangle_examples() {
        let cert = ruzsa_triangle_check(&qset(&[0, 1]), &qset(&[0, 2]), &qset(&[0, 1])).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.quantities["|A-B|"], "4");
        let b = cert.bound("|A-B||C| <= |A-C||B-C|").unwrap();
        assert_eq!((b.lhs.as_str(), b.rhs.as_str()), ("8", "12"));

        let s = qset(&[7]);
        let cert = ruzsa_triangle_check(&s, &s, &s).unwrap();
        assert!(cert.holds);

        let ap = qset(&[0, 1, 2, 3, 4]);
        let cert = ruzsa_triangle_check(&ap, &ap, &ap).unwrap();
        let b = cert.bound("|A-B||C| <= |A-C||B-C|").unwrap();
        assert_eq!((b.lhs.as_str(), b.rhs.as_str()), ("45", "81"));
    }

    #[test]
    fn petridis_examples() {
        let a = qset(&[0, 1, 2, 10]);
        let b = qset(&[0, 1]);
        let ex = petridis_min_ratio_subset(&a, &b).unwrap();
        assert_eq!(ex.subset, qset(&[0, 1, 2]));
        assert_eq!(ex.cert.quantities["K"], "4/3");

        let z = qset(&[0]);
        let ex = petridis_min_ratio_subset(&z, &z).unwrap();
        assert_eq!(ex.subset, z);
        assert_eq!(ex.cert.quantities["K"], "1/1");

        let ap = qset(&[0, 1, 2, 3, 4]);
        let ex = petridis_min_ratio_subset(&ap, &ap).unwrap();
        assert_eq!(ex.subset, ap);
        assert_eq!(ex.cert.quantities["K"], "9/5");
    }

    #[test]
    fn petridis_single_element_b() {
        // |S+B| = |S| for singleton B: every subset has ratio 1, ties break
        // to the largest subset
        let a = qset(&[3, 5, 9]);
        let b = qset(&[1]);
        let ex = petridis_min_ratio_subset(&a, &b).unwrap();
        assert_eq!(ex.subset, a);
    }

    #[test]
    fn plunnecke_examples() {
        let ab = qset(&[0, 1]);
        let cert = plunnecke_check(&ab, &ab, 2).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.quantities["|kB|"], "3");

        let cert = plunnecke_check(&ab, &ab, 1).unwrap();
        assert!(cert.holds);

        let a = qset(&[0, 1, 3]);
        let cert = plunnecke_check(&a, &a, 2).unwrap();
        assert!(cert.holds);
        assert_eq!(cert.quantities["|kB|"], "6");
        assert!(plunnecke_check(&a, &a, 5).is_err());
    }

    #[test]
    fn petridis_plsuffice2_property() {
        // |A'+B+C| <= K|A'+C| for arbitrary C
        let a = qset(&[0, 1, 2, 10]);
        let b = qset(&[0, 1]);
        let ex = petridis_min_ratio_subset(&a, &b).unwrap();
        let ap = &ex.subset;
        let apb = pairwise_set(ap, &b, SetOp::Sum).unwrap();
        for c in [qset(&[0, 5]), qset(&[1, 2, 7]), qset(&[-3, 0, 4, 11])] {
            let lhs = pairwise_set(&apb, &c, SetOp::Sum).unwrap().len();
            let apc = pairwise_set(ap, &c, SetOp::Sum).unwrap().len();
            // lhs <= (|A'+B|/|A'|)·|A'+C| cross-multiplied
            assert!(lhs * ap.len() <= apb.len() * apc);
        }
    }

    #[test]
    fn katz_shen_examples() {
        let ab = qset(&[0, 1]);
        let ex = katz_shen_subset(&ab, &ab, 2).unwrap();
        assert!(ex.cert.holds);
        assert!(2 * ex.subset.len() >= 2);

        let a = qset(&[0, 1, 2, 3]);
        let b = qset(&[0, 1]);
        let ex = katz_shen_subset(&a, &b, 2).unwrap();
        assert!(ex.cert.holds);
        assert!(2 * ex.subset.len() >= a.len());
        assert!(ex.subset.is_subset_of(&a));
    }

    #[test]
    fn joint_degree_examples() {
        let ab = qset(&[0, 1]);
        let complete = PairGraph::complete(ab.clone(), ab.clone()).unwrap();
        let e0 = FieldElement::from_int(&q(), 0);
        let e1 = FieldElement::from_int(&q(), 1);
        assert_eq!(joint_degree(&complete, &e0, &e1).unwrap(), 2);

        let empty = PairGraph::new(ab.clone(), ab.clone(), vec![]).unwrap();
        assert_eq!(joint_degree(&empty, &e0, &e1).unwrap(), 0);

        let g = PairGraph::new(ab.clone(), ab.clone(), vec![(0, 0), (1, 0), (1, 1)]).unwrap();
        assert_eq!(joint_degree(&g, &e0, &e1).unwrap(), 1);

        let e9 = FieldElement::from_int(&q(), 9);
        assert_eq!(joint_degree(&g, &e9, &e1), Err(Error::NotInLeftSet));
    }

    #[test]
    fn bsg_dense_examples() {
        let a = qset(&[0, 1, 2, 3]);
        let complete = PairGraph::complete(a.clone(), a.clone()).unwrap();
        let ex = bsg_dense(&complete, Eps::sixteenth()).unwrap();
        assert_eq!(ex.subset, a);
        assert!(ex.cert.holds);

        // drop one edge from 4×4: the point of degree 3 still passes the
        // (1-1/4)·4 = 3 threshold
        let mut edges: Vec<(u32, u32)> = complete.edges().to_vec();
        edges.pop();
        let g = PairGraph::new(a.clone(), a.clone(), edges).unwrap();
        let ex = bsg_dense(&g, Eps::sixteenth()).unwrap();
        assert_eq!(ex.subset, a);
        assert!(ex.cert.holds);

        // below the density threshold
        let sparse = PairGraph::new(a.clone(), a.clone(), vec![(0, 0)]).unwrap();
        assert_eq!(bsg_dense(&sparse, Eps::sixteenth()).unwrap_err(), Error::DensityTooLow);
    }

    #[test]
    fn bsg_sparse_examples() {
        let a = qset(&[0, 1, 2, 3]);
        let complete = PairGraph::complete(a.clone(), a.clone()).unwrap();
        let ex = bsg_sparse(&complete, Eps::sixteenth()).unwrap();
        assert_eq!(ex.subset, a);
        assert!(ex.cert.holds);

        // perfect matching on 4×4
        let matching = PairGraph::new(a.clone(), a.clone(), (0..4).map(|i| (i, i)).collect()).unwrap();
        let ex = bsg_sparse(&matching, Eps::sixteenth()).unwrap();
        assert!(ex.cert.holds);
        assert_eq!(ex.subset.len(), 1);

        let single = PairGraph::new(a.clone(), a.clone(), vec![(2, 1)]).unwrap();
        let ex = bsg_sparse(&single, Eps::sixteenth()).unwrap();
        assert!(ex.cert.holds);
        assert_eq!(ex.subset.len(), 1);
        assert_eq!(
            pairwise_set(&ex.subset, &ex.subset, SetOp::Diff).unwrap().len(),
            1
        );
    }

    #[test]
    fn bsg_sumproduct_examples() {
        let gp = qset(&[1, 2, 4]);
        let complete = PairGraph::complete(gp.clone(), gp.clone()).unwrap();
        let ex = bsg_sumproduct(&complete).unwrap();
        assert!(ex.cert.holds);

        let ap = qset(&[1, 2, 3]);
        let complete = PairGraph::complete(ap.clone(), ap.clone()).unwrap();
        let ex = bsg_sumproduct(&complete).unwrap();
        assert!(ex.cert.holds);

        let s = qset(&[5]);
        let complete = PairGraph::complete(s.clone(), s.clone()).unwrap();
        let ex = bsg_sumproduct(&complete).unwrap();
        assert!(ex.cert.holds);
        assert_eq!(ex.cert.quantities["|A'-A'|"], "1");
        assert_eq!(ex.cert.quantities["|A'/A'|"], "1");
        assert_eq!(ex.cert.quantities["ExA'"], "1");

        let withzero = qset(&[0, 1]);
        let g = PairGraph::complete(withzero.clone(), withzero).unwrap();
        assert_eq!(bsg_sumproduct(&g).unwrap_err(), Error::ZeroInRight);
    }

    #[test]
    fn cover_ruzsa_examples() {
        let a = qset(&[0, 1, 2, 3]);
        let b = qset(&[0, 1]);
        let cover = cover_ruzsa(&a, &b).unwrap();
        assert!(cover.cert.holds);
        assert_eq!(cover.centers.len(), 2);

        // A ⊆ B: one center suffices
        let a2 = qset(&[0, 1]);
        let b2 = qset(&[0, 1, 2]);
        let cover = cover_ruzsa(&a2, &b2).unwrap();
        assert!(cover.cert.holds);
        assert_eq!(cover.centers.len(), 1);
        assert_eq!(cover.centers[0], q().from_int(0));

        let single = qset(&[9]);
        let cover = cover_ruzsa(&single, &b).unwrap();
        assert!(cover.cert.holds);
        assert_eq!(cover.centers.len(), 1);
    }

    #[test]
    fn cover_shen_examples() {
        let a = qset(&[0, 1, 2, 3, 4, 5, 6, 7]);
        let b = qset(&[0, 1]);
        let cover = cover_shen(&a, &b, Eps::new(1, 4).unwrap()).unwrap();
        assert!(cover.cert.holds);
        assert!(cover.centers.len() <= 4);
        assert!(cover.covered.len() >= 6);

        // A = B: a single translate covers everything
        let cover = cover_shen(&b, &b, Eps::new(1, 4).unwrap()).unwrap();
        assert!(cover.cert.holds);
        assert_eq!(cover.centers.len(), 1);

        // ε near 1: nearly vacuous target
        let cover = cover_shen(&a, &b, Eps::new(9, 10).unwrap()).unwrap();
        assert!(cover.cert.holds);
        assert!(cover.centers.len() <= 1);
    }

    #[test]
    fn cover_variation1_examples() {
        let b = qset(&[0, 1, 2]);
        let g = PairGraph::complete(b.clone(), b.clone()).unwrap();
        let (plus, minus) = cover_variation1(&g, Eps::sixteenth()).unwrap();
        assert!(plus.cert.holds);
        assert!(minus.cert.holds);
        assert_eq!(plus.centers.len(), 1);

        let a = qset(&[0, 1, 2, 3, 4, 5]);
        let g = PairGraph::complete(a.clone(), b.clone()).unwrap();
        let (plus, minus) = cover_variation1(&g, Eps::sixteenth()).unwrap();
        assert!(plus.cert.holds, "{:?}", plus.cert);
        assert!(minus.cert.holds);

        let sparse = PairGraph::new(a.clone(), b.clone(), vec![(0, 0)]).unwrap();
        assert_eq!(cover_variation1(&sparse, Eps::sixteenth()).unwrap_err(), Error::DensityTooLow);
    }

    #[test]
    fn cover_variation2_examples() {
        let ab = qset(&[0, 1]);
        let g = PairGraph::complete(ab.clone(), ab.clone()).unwrap();
        let (gp, cover) = cover_variation2(&g, Eps::new(1, 2).unwrap()).unwrap();
        assert!(cover.cert.holds);
        assert!(cover.centers.len() <= 2);
        assert!(gp.edge_count() >= 2);

        let z = qset(&[0]);
        let g1 = PairGraph::complete(z.clone(), z.clone()).unwrap();
        let (gp, cover) = cover_variation2(&g1, Eps::new(1, 2).unwrap()).unwrap();
        assert!(cover.cert.holds);
        assert_eq!(cover.centers.len(), 1);
        assert_eq!(gp.edge_count(), 1);

        let a = qset(&[0, 1, 2]);
        let single = PairGraph::new(a.clone(), a.clone(), vec![(1, 2)]).unwrap();
        let (gp, cover) = cover_variation2(&single, Eps::new(1, 2).unwrap()).unwrap();
        assert!(cover.cert.holds);
        assert_eq!(gp.edge_count(), 1);
        assert_eq!(cover.centers.len(), 1);
    }
}
