//! The gluing calculus for primitive embeddings.
//!
//! A primitive embedding `M -> L` with orthogonal complement `N` is certified
//! by a gluing subgroup `H` of `M#` together with an anti-isometry `gamma`
//! onto a subgroup of `N#` (an isometry into `N(-1)#`). The graph of `gamma`
//! is an isotropic subgroup `Gamma` of `M# (+) N#` and `L# = Gamma-perp /
//! Gamma`. Everything here works inside the finite forms, so all searches are
//! exhaustive below [`crate::finite::BRUTE_FORCE_CUTOFF`].

use crate::finite::{
    disc_presentation, discriminant_form, forms_isometric, length, rmod1, rmod2,
    FiniteQuadraticForm, Rat, BRUTE_FORCE_CUTOFF,
};
use crate::lattice::{direct_sum_all, make_named, twist, Lattice, LatticeVector, Signature};
use crate::mat;
use crate::{Error, Result};
use num::{BigInt, Signed, Zero};
use std::collections::{BTreeSet, HashMap, HashSet};

/// A gluing subgroup `H` of `M#` with its image under the gluing isometry,
/// both recorded through generator coordinates in the cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingData {
    pub m_gens: Vec<Vec<u64>>,
    pub n_gens: Vec<Vec<u64>>,
    pub h: u64,
}

impl GluingData {
    pub fn trivial() -> Self {
        GluingData { m_gens: vec![], n_gens: vec![], h: 1 }
    }
}

/// A pair of complements with a gluing certifying their primitive embedding
/// into a lattice with discriminant form `ambient_disc`.
#[derive(Debug, Clone)]
pub struct EmbeddingCertificate {
    pub m: Lattice,
    pub n: Lattice,
    pub ambient_disc: FiniteQuadraticForm,
    pub gluing: GluingData,
}

impl EmbeddingCertificate {
    /// Validates the determinant relation and `Gamma-perp/Gamma ~ ambient`.
    pub fn new(
        m: Lattice,
        n: Lattice,
        ambient_disc: FiniteQuadraticForm,
        gluing: GluingData,
    ) -> Result<Self> {
        let h2 = BigInt::from(gluing.h) * BigInt::from(gluing.h);
        let lhs = h2 * BigInt::from(ambient_disc.group_order());
        let rhs = m.determinant_abs() * n.determinant_abs();
        if lhs != rhs {
            return Err(Error::Precondition(format!(
                "h^2 |det L| = {lhs} but |det M det N| = {rhs}"
            )));
        }
        let fm = discriminant_form(&m);
        let fnn = discriminant_form(&n);
        if !graph_quotient_matches(&fm, &fnn, &gluing, &ambient_disc)? {
            return Err(Error::Precondition(
                "gluing graph quotient is not isometric to the ambient form".into(),
            ));
        }
        Ok(EmbeddingCertificate { m, n, ambient_disc, gluing })
    }
}

/// All gluings `(H, gamma)` of the pair `(m, n)` whose graph quotient is
/// isometric to `ambient_disc`. The list is raw: every subgroup-isometry
/// pair is reported once, with no identification under isometries of `m`
/// or `n`. An empty list means no primitive embedding has these complements.
pub fn enumerate_gluings(
    m: &Lattice,
    n: &Lattice,
    ambient_disc: &FiniteQuadraticForm,
) -> Result<Vec<GluingData>> {
    let fm = discriminant_form(m);
    let fnn = discriminant_form(n);
    if fm.group_order() > BRUTE_FORCE_CUTOFF || fnn.group_order() > BRUTE_FORCE_CUTOFF {
        return Err(Error::UndecidedByBruteForce(format!(
            "discriminant orders {} and {} exceed cutoff {}",
            fm.group_order(),
            fnn.group_order(),
            BRUTE_FORCE_CUTOFF
        )));
    }
    let target = BigInt::from(ambient_disc.group_order());
    let product = BigInt::from(fm.group_order()) * BigInt::from(fnn.group_order());
    // h^2 |det L| = |det M det N| must have an integer solution
    if (&product % &target) != BigInt::zero() {
        return Ok(vec![]);
    }
    let h2 = &product / &target;
    let h = match h2.sqrt() {
        r if &r * &r == h2 => match num::ToPrimitive::to_u64(&r) {
            Some(v) => v,
            None => return Ok(vec![]),
        },
        _ => return Ok(vec![]),
    };

    let mut out = Vec::new();
    for sub in subgroups_of_order(&fm, h) {
        let (gens, coeffs) = generating_set(&fm, &sub);
        let n_elems = fnn.elements();
        let mut images: Vec<Vec<u64>> = Vec::new();
        enumerate_isometries(
            &fm,
            &fnn,
            &gens,
            &coeffs,
            &sub,
            &n_elems,
            &mut images,
            &mut |gens, imgs| {
                let g = GluingData {
                    m_gens: gens.to_vec(),
                    n_gens: imgs.to_vec(),
                    h,
                };
                if graph_quotient_matches(&fm, &fnn, &g, ambient_disc).unwrap_or(false) {
                    out.push(g);
                }
            },
        );
    }
    Ok(out)
}

/// The divisibility `(v, L)` of `v` in the ambient lattice certified by `g`:
/// the largest `d` with `v/d` in the dual of `m` and orthogonal, under the
/// discriminant pairing, to every generator of the gluing subgroup.
pub fn divisibility_in_ambient(m: &Lattice, v: &LatticeVector, g: &GluingData) -> Result<u64> {
    let pres = disc_presentation(m);
    let div_m = m.divisibility(v)?;
    let gram = mat::from_i64(m.gram());
    let gram_v: Vec<BigInt> = (0..m.rank())
        .map(|i| {
            (0..m.rank())
                .map(|j| &gram[i][j] * BigInt::from(v.0[j]))
                .sum()
        })
        .collect();
    let mut best = 1;
    let mut d = div_m;
    'outer: loop {
        if div_m % d == 0 {
            let class = pres.class_of_dual_scaled(&gram_v, d);
            let orthogonal = g
                .m_gens
                .iter()
                .all(|h| pres.form.b_of(&class, h) == Rat::zero());
            if orthogonal {
                best = d;
                break 'outer;
            }
        }
        d -= 1;
        if d == 0 {
            break;
        }
    }
    Ok(best)
}

/// True iff `|det n| = |ambient_det * det m|`; in that case every vector of
/// `m` has ambient divisibility 1.
pub fn div_one_shortcut(m: &Lattice, n: &Lattice, ambient_det: i64) -> bool {
    n.determinant_abs() == BigInt::from(ambient_det).abs() * m.determinant_abs()
}

/// The discriminant form any orthogonal complement of `m` inside an even
/// unimodular lattice must carry: the same group with negated q-values.
pub fn unimodular_complement_disc(m: &Lattice) -> FiniteQuadraticForm {
    discriminant_form(m).negated()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingAnswer {
    Embeds(String),
    DoesNotEmbed(String),
    Undecided(String),
}

/// Primitive embedding of `m` into the even unimodular lattice of signature
/// `target_sig`: decided by the sufficient rank/length condition or by
/// exhibiting an explicit complement from the named-lattice table.
pub fn embedding_exists_in_unimodular(
    m: &Lattice,
    target_sig: Signature,
) -> Result<EmbeddingAnswer> {
    let excess = target_sig.pos as i64 - target_sig.neg as i64;
    if excess.rem_euclid(8) != 0 {
        return Err(Error::NonUnimodularTarget(target_sig.pos, target_sig.neg));
    }
    let sig = m.signature();
    if sig.pos > target_sig.pos || sig.neg > target_sig.neg {
        return Ok(EmbeddingAnswer::DoesNotEmbed(format!(
            "signature {sig} does not fit componentwise in {target_sig}"
        )));
    }
    let comp = Signature {
        pos: target_sig.pos - sig.pos,
        neg: target_sig.neg - sig.neg,
    };
    let comp_rank = comp.pos + comp.neg;
    let lm = length(&discriminant_form(m));
    if comp_rank < lm {
        return Ok(EmbeddingAnswer::DoesNotEmbed(format!(
            "complement rank {comp_rank} is below the discriminant length {lm}"
        )));
    }
    if comp_rank >= lm + 2 {
        return Ok(EmbeddingAnswer::Embeds(format!(
            "complement rank {comp_rank} >= length {lm} + 2"
        )));
    }
    // boundary: look for an explicit complement with the negated form
    let want = unimodular_complement_disc(m);
    if want.group_order() > BRUTE_FORCE_CUTOFF {
        return Ok(EmbeddingAnswer::Undecided(
            "discriminant too large for the explicit-complement search".into(),
        ));
    }
    for cand in complement_candidates(comp_rank) {
        if cand.signature() != comp {
            continue;
        }
        if forms_isometric(&discriminant_form(&cand), &want)? {
            return Ok(EmbeddingAnswer::Embeds(format!(
                "explicit complement {}",
                cand.label().unwrap_or("found")
            )));
        }
    }
    Ok(EmbeddingAnswer::Undecided(
        "no explicit complement found at this rank".into(),
    ))
}

fn complement_candidates(rank: usize) -> Vec<Lattice> {
    let mut blocks = vec![make_named("U", None).unwrap()];
    blocks.push(twist(&blocks[0], 2).unwrap());
    for m in [2i64, -2, 4, -4, 6, -6, 10, -10, 14, -14] {
        blocks.push(make_named("rank1", Some(m)).unwrap());
    }
    for name in ["h5", "K7"] {
        let l = make_named(name, None).unwrap();
        blocks.push(twist(&l, -1).unwrap());
        blocks.push(l);
    }
    for n in [2i64, 4] {
        let l = make_named(if n == 2 { "A" } else { "D" }, Some(n)).unwrap();
        blocks.push(twist(&l, -1).unwrap());
        blocks.push(l);
    }
    let e8 = make_named("E", Some(8)).unwrap();
    blocks.push(twist(&e8, -1).unwrap());
    blocks.push(e8);
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<Lattice>, usize)> = vec![(0, vec![], 0)];
    while let Some((i, parts, r)) = stack.pop() {
        if r == rank && !parts.is_empty() {
            out.push(direct_sum_all(&parts));
            continue;
        }
        if i >= blocks.len() || r > rank {
            continue;
        }
        stack.push((i + 1, parts.clone(), r));
        if r + blocks[i].rank() <= rank {
            let mut next = parts;
            next.push(blocks[i].clone());
            stack.push((i, next, r + blocks[i].rank()));
        }
    }
    out
}

// ---- finite-group machinery -------------------------------------------------

fn closure(f: &FiniteQuadraticForm, seed: &BTreeSet<Vec<u64>>) -> BTreeSet<Vec<u64>> {
    let mut set = seed.clone();
    set.insert(vec![0; f.generator_count()]);
    loop {
        let mut grew = false;
        let items: Vec<_> = set.iter().cloned().collect();
        for x in &items {
            for y in &items {
                let s = f.add(x, y);
                if set.insert(s) {
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

/// All subgroups of the given order, each as a sorted element list.
fn subgroups_of_order(f: &FiniteQuadraticForm, h: u64) -> Vec<Vec<Vec<u64>>> {
    let zero: BTreeSet<Vec<u64>> = [vec![0; f.generator_count()]].into_iter().collect();
    if f.group_order() % h != 0 {
        return vec![];
    }
    let elems = f.elements();
    let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::new();
    let mut found: BTreeSet<Vec<Vec<u64>>> = BTreeSet::new();
    let mut stack = vec![zero];
    while let Some(s) = stack.pop() {
        let key: Vec<Vec<u64>> = s.iter().cloned().collect();
        if !seen.insert(key.clone()) {
            continue;
        }
        if s.len() as u64 == h {
            found.insert(key);
            continue;
        }
        if (s.len() as u64) < h {
            for g in &elems {
                if s.contains(g) {
                    continue;
                }
                let mut seed = s.clone();
                seed.insert(g.clone());
                let t = closure(f, &seed);
                let tl = t.len() as u64;
                if tl <= h && h % tl == 0 {
                    stack.push(t);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// A generating sequence for the subgroup plus, for each subgroup element,
/// its coefficient vector with respect to that sequence.
fn generating_set(
    f: &FiniteQuadraticForm,
    sub: &[Vec<u64>],
) -> (Vec<Vec<u64>>, HashMap<Vec<u64>, Vec<u64>>) {
    let zero = vec![0u64; f.generator_count()];
    let mut gens: Vec<Vec<u64>> = Vec::new();
    let mut coeffs: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
    coeffs.insert(zero.clone(), vec![]);
    for e in sub {
        if coeffs.contains_key(e) {
            continue;
        }
        // span the new generator against what we have
        gens.push(e.clone());
        let order = f.element_order(e);
        let old: Vec<(Vec<u64>, Vec<u64>)> =
            coeffs.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for (elem, c) in old {
            let mut acc = elem.clone();
            for k in 1..order {
                acc = f.add(&acc, e);
                let mut cc = c.clone();
                cc.resize(gens.len() - 1, 0);
                cc.push(k);
                coeffs.entry(acc.clone()).or_insert(cc);
            }
        }
        for c in coeffs.values_mut() {
            c.resize(gens.len(), 0);
        }
    }
    (gens, coeffs)
}

/// Depth-first enumeration of isometries `H -> N(-1)#`, i.e. maps with
/// `q_N(gamma x) = -q_M(x)` and `b_N = -b_M`, reported via `emit`.
#[allow(clippy::too_many_arguments)]
fn enumerate_isometries(
    fm: &FiniteQuadraticForm,
    fnn: &FiniteQuadraticForm,
    gens: &[Vec<u64>],
    coeffs: &HashMap<Vec<u64>, Vec<u64>>,
    sub: &[Vec<u64>],
    n_elems: &[Vec<u64>],
    images: &mut Vec<Vec<u64>>,
    emit: &mut impl FnMut(&[Vec<u64>], &[Vec<u64>]),
) {
    let i = images.len();
    if i == gens.len() {
        if full_map_is_anti_isometry(fm, fnn, gens, coeffs, sub, images) {
            emit(gens, images);
        }
        return;
    }
    for y in n_elems {
        if fnn.element_order(y) != fm.element_order(&gens[i]) {
            continue;
        }
        if fnn.q_of(y) != rmod2(-fm.q_of(&gens[i])) {
            continue;
        }
        let mut ok = true;
        for j in 0..i {
            if fnn.b_of(&images[j], y) != rmod1(-fm.b_of(&gens[j], &gens[i])) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        images.push(y.clone());
        enumerate_isometries(fm, fnn, gens, coeffs, sub, n_elems, images, emit);
        images.pop();
    }
}

fn apply_map(
    fnn: &FiniteQuadraticForm,
    images: &[Vec<u64>],
    coeff: &[u64],
) -> Vec<u64> {
    let mut acc = vec![0u64; fnn.generator_count()];
    for (i, &c) in coeff.iter().enumerate() {
        for _ in 0..c {
            acc = fnn.add(&acc, &images[i]);
        }
    }
    acc
}

fn full_map_is_anti_isometry(
    fm: &FiniteQuadraticForm,
    fnn: &FiniteQuadraticForm,
    _gens: &[Vec<u64>],
    coeffs: &HashMap<Vec<u64>, Vec<u64>>,
    sub: &[Vec<u64>],
    images: &[Vec<u64>],
) -> bool {
    let mut seen = HashSet::new();
    for x in sub {
        let y = apply_map(fnn, images, &coeffs[x]);
        if fnn.q_of(&y) != rmod2(-fm.q_of(x)) {
            return false;
        }
        if !seen.insert(y) {
            return false;
        }
    }
    true
}

/// Checks `Gamma-perp / Gamma ~ ambient` for the graph of the gluing.
fn graph_quotient_matches(
    fm: &FiniteQuadraticForm,
    fnn: &FiniteQuadraticForm,
    g: &GluingData,
    ambient: &FiniteQuadraticForm,
) -> Result<bool> {
    let sum = fm.orthogonal_sum(fnn);
    let graph_gens: Vec<Vec<u64>> = g
        .m_gens
        .iter()
        .zip(&g.n_gens)
        .map(|(a, b)| a.iter().chain(b).copied().collect())
        .collect();
    // the full graph subgroup
    let graph = closure(&sum, &graph_gens.iter().cloned().collect());
    if graph.len() as u64 != g.h {
        return Ok(false);
    }
    let perp: Vec<Vec<u64>> = sum
        .elements()
        .into_iter()
        .filter(|x| graph_gens.iter().all(|h| sum.b_of(x, h) == Rat::zero()))
        .collect();
    let expected = BigInt::from(ambient.group_order());
    if BigInt::from(perp.len() as u64) != expected * BigInt::from(g.h) {
        return Ok(false);
    }
    // canonical coset representatives
    let canon = |x: &Vec<u64>| -> Vec<u64> {
        graph.iter().map(|t| sum.add(x, t)).min().unwrap()
    };
    let mut reps: BTreeSet<Vec<u64>> = BTreeSet::new();
    for x in &perp {
        reps.insert(canon(x));
    }
    let reps: Vec<Vec<u64>> = reps.into_iter().collect();
    let index: HashMap<Vec<u64>, usize> =
        reps.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let zero_rep = canon(&vec![0u64; sum.generator_count()]);

    let quot_order = |x: &Vec<u64>| -> u64 {
        let mut acc = x.clone();
        let mut k = 1u64;
        while canon(&acc) != zero_rep {
            acc = sum.add(&acc, x);
            k += 1;
        }
        k
    };

    if reps.len() as u64 != ambient.group_order() {
        return Ok(false);
    }
    // fingerprints
    let mut fp_q: Vec<(u64, Rat)> = reps.iter().map(|x| (quot_order(x), sum.q_of(x))).collect();
    fp_q.sort();
    let mut fp_a: Vec<(u64, Rat)> = ambient
        .elements()
        .iter()
        .map(|e| (ambient.element_order(e), ambient.q_of(e)))
        .collect();
    fp_a.sort();
    if fp_q != fp_a {
        return Ok(false);
    }

    // exhaustive isometry search from ambient generators into the quotient
    let k = ambient.generator_count();
    let mut images: Vec<usize> = Vec::new();
    fn assign(
        ambient: &FiniteQuadraticForm,
        sum: &FiniteQuadraticForm,
        reps: &[Vec<u64>],
        index: &HashMap<Vec<u64>, usize>,
        canon: &impl Fn(&Vec<u64>) -> Vec<u64>,
        quot_order: &impl Fn(&Vec<u64>) -> u64,
        images: &mut Vec<usize>,
        k: usize,
    ) -> bool {
        let i = images.len();
        if i == k {
            // extend linearly over the whole ambient group and check q
            let mut seen = HashSet::new();
            for c in ambient.elements() {
                let mut acc = vec![0u64; sum.generator_count()];
                for (t, &ct) in c.iter().enumerate() {
                    for _ in 0..ct {
                        acc = sum.add(&acc, &reps[images[t]]);
                    }
                }
                let rep = canon(&acc);
                if sum.q_of(&rep) != ambient.q_of(&c) {
                    return false;
                }
                if !seen.insert(rep) {
                    return false;
                }
            }
            return true;
        }
        for (idx, r) in reps.iter().enumerate() {
            if ambient.orders[i] % quot_order(r) != 0 {
                continue;
            }
            if sum.q_of(r) != rmod2(ambient.qvals[i]) {
                continue;
            }
            let mut ok = true;
            for j in 0..i {
                if rmod1(sum.b_of(&reps[images[j]], r)) != rmod1(ambient.bform[j][i]) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            images.push(idx);
            if assign(ambient, sum, reps, index, canon, quot_order, images, k) {
                return true;
            }
            images.pop();
        }
        false
    }
    Ok(assign(
        ambient,
        &sum,
        &reps,
        &index,
        &canon,
        &quot_order,
        &mut images,
        k,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::discriminant_form;
    use crate::lattice::{direct_sum, direct_sum_all, make_named, twist};

    fn rank1(m: i64) -> Lattice {
        make_named("rank1", Some(m)).unwrap()
    }

    fn u() -> Lattice {
        make_named("U", None).unwrap()
    }

    fn og6_disc() -> FiniteQuadraticForm {
        discriminant_form(&make_named("OG6", None).unwrap())
    }

    #[test]
    fn glue_m2_p2_into_u() {
        let m = rank1(-2);
        let n = rank1(2);
        let trivial = FiniteQuadraticForm::trivial();
        let gluings = enumerate_gluings(&m, &n, &trivial).unwrap();
        assert_eq!(gluings.len(), 1);
        assert_eq!(gluings[0].h, 2);
        assert_eq!(gluings[0].m_gens, vec![vec![1]]);
        let cert = EmbeddingCertificate::new(m, n, trivial, gluings[0].clone());
        assert!(cert.is_ok());
    }

    #[test]
    fn glue_row12_pair() {
        // invariant U + [2] + [-2]^3 against coinvariant [2] + [-2]
        let m = direct_sum_all(&[u(), rank1(2), rank1(-2), rank1(-2), rank1(-2)]);
        let n = direct_sum(&rank1(2), &rank1(-2));
        let gluings = enumerate_gluings(&m, &n, &og6_disc()).unwrap();
        assert!(!gluings.is_empty());
        for g in &gluings {
            assert_eq!(g.h, 4);
        }
    }

    #[test]
    fn glue_row1_pair() {
        let m = rank1(2);
        let n = direct_sum_all(&[u(), u(), rank1(-2), rank1(-2), rank1(-2)]);
        let gluings = enumerate_gluings(&m, &n, &og6_disc()).unwrap();
        assert!(!gluings.is_empty());
        for g in &gluings {
            assert_eq!(g.h, 2);
        }
    }

    #[test]
    fn ambient_divisibility_examples() {
        // [-2] glued into U: the generator has divisibility 1 upstairs
        let m = rank1(-2);
        let n = rank1(2);
        let gluings = enumerate_gluings(&m, &n, &FiniteQuadraticForm::trivial()).unwrap();
        let v = LatticeVector::new(vec![1]);
        assert_eq!(m.divisibility(&v).unwrap(), 2);
        assert_eq!(divisibility_in_ambient(&m, &v, &gluings[0]).unwrap(), 1);

        // trivial self-gluing of OG6: ambient divisibility equals (v, M)
        let og6 = make_named("OG6", None).unwrap();
        let s1 = LatticeVector::new(vec![0, 0, 0, 0, 0, 0, 1, 0]);
        assert_eq!(
            divisibility_in_ambient(&og6, &s1, &GluingData::trivial()).unwrap(),
            2
        );
    }

    #[test]
    fn ambient_divides_local() {
        let m = direct_sum_all(&[u(), rank1(2), rank1(-2), rank1(-2), rank1(-2)]);
        let n = direct_sum(&rank1(2), &rank1(-2));
        let gluings = enumerate_gluings(&m, &n, &og6_disc()).unwrap();
        for v in m.vectors_of_norm(-2, 2) {
            let dm = m.divisibility(&v).unwrap();
            for g in &gluings {
                let da = divisibility_in_ambient(&m, &v, g).unwrap();
                assert_eq!(dm % da, 0, "(v,L) must divide (v,M)");
            }
        }
    }

    #[test]
    fn shortcut_examples() {
        let m = rank1(2);
        let n = direct_sum_all(&[u(), u(), rank1(-2), rank1(-2), rank1(-2)]);
        assert!(div_one_shortcut(&m, &n, 4));
        let m2 = direct_sum_all(&[u(), rank1(2), rank1(-2), rank1(-2), rank1(-2)]);
        let n2 = direct_sum(&rank1(2), &rank1(-2));
        assert!(!div_one_shortcut(&m2, &n2, 4));
        assert!(div_one_shortcut(&u(), &u(), 1));
    }

    #[test]
    fn complement_disc_examples() {
        let f = unimodular_complement_disc(&rank1(-2));
        assert_eq!(f.orders, vec![2]);
        assert_eq!(f.qvals, vec![Rat::new(1, 2)]);
        let m = direct_sum_all(&[u(), u(), rank1(-2)]);
        let f2 = unimodular_complement_disc(&m);
        assert_eq!(f2.orders, vec![2]);
        assert_eq!(f2.qvals, vec![Rat::new(1, 2)]);
        let k7 = direct_sum_all(&[u(), u(), make_named("K7", None).unwrap()]);
        let f3 = unimodular_complement_disc(&k7);
        assert_eq!(f3.orders, vec![7]);
    }

    #[test]
    fn unimodular_embedding_examples() {
        let m = direct_sum_all(&[u(), u(), u(), rank1(-2)]);
        let mukai_sig = Signature { pos: 4, neg: 4 };
        assert!(matches!(
            embedding_exists_in_unimodular(&m, mukai_sig).unwrap(),
            EmbeddingAnswer::Embeds(_)
        ));

        let too_positive = direct_sum_all(&[
            u(), u(), u(), u(),
            twist(&rank1(-2), -1).unwrap(),
        ]);
        assert_eq!(too_positive.signature(), Signature { pos: 5, neg: 4 });
        assert!(matches!(
            embedding_exists_in_unimodular(&too_positive, mukai_sig).unwrap(),
            EmbeddingAnswer::DoesNotEmbed(_)
        ));

        let og6 = make_named("OG6", None).unwrap();
        assert!(matches!(
            embedding_exists_in_unimodular(&og6, Signature { pos: 5, neg: 5 }).unwrap(),
            EmbeddingAnswer::Embeds(_)
        ));

        assert!(embedding_exists_in_unimodular(&og6, Signature { pos: 5, neg: 4 }).is_err());
    }
}
