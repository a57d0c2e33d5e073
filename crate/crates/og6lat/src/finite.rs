//! Discriminant groups and finite quadratic forms.
//!
//! The discriminant group of an even lattice is computed through the Smith
//! normal form of its Gram matrix; the induced Q/2Z quadratic form and Q/Z
//! bilinear pairing are evaluated exactly on dual-basis generators. Isometry
//! of small forms is decided by exhaustive search over generator images.

use crate::lattice::{Lattice, Signature};
use crate::mat::{self, Mi};
use crate::{Error, Result};
use num::rational::Ratio;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Exact rational used for q-values (mod 2Z) and b-values (mod Z).
pub type Rat = Ratio<i64>;

/// Order beyond which finite-form questions are reported as undecided.
pub const BRUTE_FORCE_CUTOFF: u64 = 256;

/// `u * m * v = d` with unimodular `u`, `v` and a diagonal divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub d: Mi,
    pub u: Mi,
    pub v: Mi,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.len()).map(|i| self.d[i][i].clone()).collect()
    }
}

/// Smith normal form of a square integer matrix.
pub fn smith(m: &[Vec<i64>]) -> SmithDecomposition {
    let big = mat::from_i64(m);
    let (u, d, v) = mat::smith_raw(&big);
    SmithDecomposition { d, u, v }
}

/// A finite quadratic form on a finite abelian group presented by cyclic
/// generators: `orders[i] > 1`, `qvals[i] = q(g_i)` reduced into `[0,2)`,
/// `bform[i][j] = b(g_i, g_j)` reduced into `[0,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    pub orders: Vec<u64>,
    pub qvals: Vec<Rat>,
    pub bform: Vec<Vec<Rat>>,
}

pub fn rmod2(x: Rat) -> Rat {
    let two = Rat::from_integer(2);
    let mut y = x - (x / two).floor() * two;
    if y < Rat::zero() {
        y += two;
    }
    y
}

pub fn rmod1(x: Rat) -> Rat {
    let mut y = x - x.floor();
    if y < Rat::zero() {
        y += Rat::one();
    }
    y
}

impl FiniteQuadraticForm {
    pub fn trivial() -> Self {
        FiniteQuadraticForm { orders: vec![], qvals: vec![], bform: vec![] }
    }

    pub fn group_order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    /// q of the element with generator coordinates `c`.
    pub fn q_of(&self, c: &[u64]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..c.len() {
            let ci = c[i] as i64;
            acc += Rat::from_integer(ci * ci) * self.qvals[i];
            for j in i + 1..c.len() {
                let cj = c[j] as i64;
                acc += Rat::from_integer(2 * ci * cj) * self.bform[i][j];
            }
        }
        rmod2(acc)
    }

    /// b of two elements given by generator coordinates.
    pub fn b_of(&self, x: &[u64], y: &[u64]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..x.len() {
            for j in 0..y.len() {
                acc += Rat::from_integer(x[i] as i64 * y[j] as i64) * self.bform[i][j];
            }
        }
        rmod1(acc)
    }

    pub fn reduce(&self, c: &[i64]) -> Vec<u64> {
        c.iter()
            .zip(&self.orders)
            .map(|(&x, &n)| x.rem_euclid(n as i64) as u64)
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        let mut o = 1u64;
        for (&c, &n) in x.iter().zip(&self.orders) {
            let k = n / gcd_u(n, c);
            o = o / gcd_u(o, k) * k;
        }
        o
    }

    /// All elements as coordinate tuples (including zero).
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &n in &self.orders {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for stem in &out {
                for c in 0..n {
                    let mut s = stem.clone();
                    s.push(c);
                    next.push(s);
                }
            }
            out = next;
        }
        out
    }

    /// The form with negated q-values (the discriminant form of `L(-1)`).
    pub fn negated(&self) -> Self {
        FiniteQuadraticForm {
            orders: self.orders.clone(),
            qvals: self.qvals.iter().map(|&q| rmod2(-q)).collect(),
            bform: self
                .bform
                .iter()
                .map(|row| row.iter().map(|&b| rmod1(-b)).collect())
                .collect(),
        }
    }

    /// Orthogonal direct sum of two forms.
    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let k = self.generator_count();
        let m = other.generator_count();
        let mut bform = vec![vec![Rat::zero(); k + m]; k + m];
        for i in 0..k {
            for j in 0..k {
                bform[i][j] = self.bform[i][j];
            }
        }
        for i in 0..m {
            for j in 0..m {
                bform[k + i][k + j] = other.bform[i][j];
            }
        }
        FiniteQuadraticForm {
            orders: self.orders.iter().chain(&other.orders).copied().collect(),
            qvals: self.qvals.iter().chain(&other.qvals).copied().collect(),
            bform,
        }
    }

    /// Multiset of `(element order, q)` over the whole group; a cheap
    /// isometry invariant used to prune the search.
    fn fingerprint(&self) -> Vec<(u64, Rat)> {
        let mut fp: Vec<(u64, Rat)> = self
            .elements()
            .iter()
            .map(|e| (self.element_order(e), self.q_of(e)))
            .collect();
        fp.sort();
        fp
    }
}

fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

/// Internal presentation of `L# = L°/L` tying generators back to the lattice:
/// generator `i` is the class of the rational column `dual_gens[i]`, and
/// `class_of_dual` maps elements of `L°` to generator coordinates.
#[derive(Debug, Clone)]
pub(crate) struct DiscPresentation {
    pub form: FiniteQuadraticForm,
    u: Mi,
    all_orders: Vec<BigInt>,
    kept: Vec<usize>,
    pub dual_gens: Vec<Vec<BigRational>>,
}

impl DiscPresentation {
    /// Coordinates of the class of `v/d` where `v` is integral and `d`
    /// divides every entry of `gram * v` (so `v/d` lies in the dual).
    pub fn class_of_dual_scaled(&self, gram_v: &[BigInt], d: u64) -> Vec<u64> {
        let dd = BigInt::from(d);
        let scaled: Vec<BigInt> = gram_v.iter().map(|x| x / &dd).collect();
        let n = self.u.len();
        let mut coords = Vec::new();
        for (pos, &i) in self.kept.iter().enumerate() {
            let _ = pos;
            let mut acc = BigInt::zero();
            for j in 0..n {
                acc += &self.u[i][j] * &scaled[j];
            }
            let m = &self.all_orders[i];
            let mut r = acc % m;
            if r.is_negative() {
                r += m;
            }
            coords.push(r.to_u64().expect("small order"));
        }
        coords
    }
}

pub(crate) fn disc_presentation(l: &Lattice) -> DiscPresentation {
    let n = l.rank();
    let gram = mat::from_i64(l.gram());
    let (u, d, _v) = mat::smith_raw(&gram);
    let u_inv = mat::inverse_unimodular(&u);
    let mut kept = Vec::new();
    let mut all_orders = Vec::new();
    for i in 0..n {
        all_orders.push(d[i][i].clone());
        if d[i][i] > BigInt::one() {
            kept.push(i);
        }
    }
    // dual generator i solves gram * x = u_inv e_i
    let rhs: Mi = (0..n)
        .map(|r| kept.iter().map(|&i| u_inv[r][i].clone()).collect())
        .collect();
    let dual_gens: Vec<Vec<BigRational>> = if kept.is_empty() {
        vec![]
    } else {
        let sol = mat::solve_many(&gram, &rhs);
        (0..kept.len())
            .map(|c| (0..n).map(|r| sol[r][c].clone()).collect())
            .collect()
    };
    let orders: Vec<u64> = kept
        .iter()
        .map(|&i| d[i][i].to_u64().expect("order fits in u64"))
        .collect();
    let pair = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                let g = BigRational::from(BigInt::from(l.gram()[i][j]));
                acc += &x[i] * g * &y[j];
            }
        }
        acc
    };
    let to_rat = |x: &BigRational| -> Rat {
        Rat::new(
            x.numer().to_i64().expect("small numerator"),
            x.denom().to_i64().expect("small denominator"),
        )
    };
    let qvals: Vec<Rat> = dual_gens
        .iter()
        .map(|g| rmod2(to_rat(&pair(g, g))))
        .collect();
    let k = kept.len();
    let mut bform = vec![vec![Rat::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            bform[i][j] = rmod1(to_rat(&pair(&dual_gens[i], &dual_gens[j])));
        }
    }
    DiscPresentation {
        form: FiniteQuadraticForm { orders, qvals, bform },
        u,
        all_orders,
        kept,
        dual_gens,
    }
}

/// Discriminant form of an even nondegenerate lattice. Generators are the
/// Smith-normal-form dual classes of order > 1.
pub fn discriminant_form(l: &Lattice) -> FiniteQuadraticForm {
    disc_presentation(l).form
}

/// Minimal number of generators of the discriminant group.
pub fn length(f: &FiniteQuadraticForm) -> usize {
    f.generator_count()
}

/// True iff every cyclic factor has order exactly `p`; unimodular lattices
/// count as p-elementary for every p.
pub fn is_p_elementary(f: &FiniteQuadraticForm, p: u64) -> bool {
    f.orders.iter().all(|&n| n == p)
}

/// 0 iff every q-value lies in Z mod 2Z, else 1. Defined for 2-elementary
/// forms only.
pub fn delta_invariant(f: &FiniteQuadraticForm) -> Result<u8> {
    if !is_p_elementary(f, 2) {
        return Err(Error::NotTwoElementary);
    }
    let integral = f.qvals.iter().all(|q| q.is_integer());
    Ok(if integral { 0 } else { 1 })
}

/// Legendre symbol `chi_p(a)` for odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i8 {
    let p = p as i64;
    let mut a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut result: i64 = 1;
    let mut e = (p - 1) / 2;
    let mut base = a;
    a = 1;
    let _ = a;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// Square class of a p-elementary form for odd `p`: the Legendre symbol of
/// `det(p * B)` where `B` is the bilinear matrix on generators.
pub fn square_class_odd(f: &FiniteQuadraticForm, p: u64) -> i8 {
    let a = f.generator_count();
    if a == 0 {
        return 1;
    }
    let pi = p as i64;
    let s: Vec<Vec<i64>> = f
        .bform
        .iter()
        .map(|row| {
            row.iter()
                .map(|b| {
                    let scaled = *b * Rat::from_integer(pi);
                    assert!(scaled.is_integer(), "not p-elementary");
                    scaled.to_integer().rem_euclid(pi)
                })
                .collect()
        })
        .collect();
    let det = det_mod_p(&s, pi);
    legendre(det, p)
}

fn det_mod_p(m: &[Vec<i64>], p: i64) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let mut det: i64 = 1;
    for c in 0..n {
        let piv = match (c..n).find(|&i| a[i][c] % p != 0) {
            Some(i) => i,
            None => return 0,
        };
        if piv != c {
            a.swap(c, piv);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = mod_inverse(a[c][c], p);
        for i in c + 1..n {
            let f = a[i][c] * inv % p;
            for j in c..n {
                a[i][j] = (a[i][j] - f * a[c][j]).rem_euclid(p);
            }
        }
    }
    det.rem_euclid(p)
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let mut result: i64 = 1;
    let mut e = p - 2;
    let mut base = a.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Genus invariants of a p-elementary even lattice: signature, length, and
/// delta (p = 2) or the determinant square class (odd p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryInvariants {
    pub p: u64,
    pub t_plus: usize,
    pub t_minus: usize,
    pub a: usize,
    pub datum: ParityDatum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityDatum {
    /// p = 2: 0 iff all q-values are integral.
    Delta(u8),
    /// odd p: Legendre class of `det(p * B)`.
    SquareClass(i8),
}

impl ElementaryInvariants {
    pub fn rank(&self) -> usize {
        self.t_plus + self.t_minus
    }

    pub fn signature_excess(&self) -> i64 {
        self.t_plus as i64 - self.t_minus as i64
    }

    /// Reads the invariants off a p-elementary form with the given signature.
    pub fn from_form(p: u64, sig: Signature, f: &FiniteQuadraticForm) -> Result<Self> {
        if !is_p_elementary(f, p) {
            return Err(Error::NotPElementary(p));
        }
        let datum = if p == 2 {
            ParityDatum::Delta(delta_invariant(f)?)
        } else {
            ParityDatum::SquareClass(square_class_odd(f, p))
        };
        Ok(ElementaryInvariants {
            p,
            t_plus: sig.pos,
            t_minus: sig.neg,
            a: length(f),
            datum,
        })
    }
}

/// True iff a group isomorphism matching q and b exists; decided by
/// exhaustive search over generator images. Orders above
/// [`BRUTE_FORCE_CUTOFF`] are reported as undecided.
pub fn forms_isometric(f: &FiniteQuadraticForm, g: &FiniteQuadraticForm) -> Result<bool> {
    if f.group_order() > BRUTE_FORCE_CUTOFF || g.group_order() > BRUTE_FORCE_CUTOFF {
        return Err(Error::UndecidedByBruteForce(format!(
            "group orders {} and {} exceed cutoff {}",
            f.group_order(),
            g.group_order(),
            BRUTE_FORCE_CUTOFF
        )));
    }
    if f.group_order() != g.group_order() {
        return Ok(false);
    }
    if f.fingerprint() != g.fingerprint() {
        return Ok(false);
    }
    let targets = g.elements();
    let mut images: Vec<Vec<u64>> = Vec::new();
    Ok(assign(f, g, &targets, &mut images))
}

fn assign(
    f: &FiniteQuadraticForm,
    g: &FiniteQuadraticForm,
    targets: &[Vec<u64>],
    images: &mut Vec<Vec<u64>>,
) -> bool {
    let i = images.len();
    if i == f.generator_count() {
        return is_linear_isometry(f, g, images);
    }
    for y in targets {
        if f.orders[i] % g.element_order(y) != 0 {
            continue;
        }
        if g.q_of(y) != rmod2(f.qvals[i]) {
            continue;
        }
        let mut ok = true;
        for j in 0..i {
            if g.b_of(&images[j], y) != rmod1(f.bform[j][i]) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        images.push(y.clone());
        if assign(f, g, targets, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn is_linear_isometry(
    f: &FiniteQuadraticForm,
    g: &FiniteQuadraticForm,
    images: &[Vec<u64>],
) -> bool {
    let mut seen = std::collections::HashSet::new();
    for c in f.elements() {
        let mut y = vec![0u64; g.generator_count()];
        for (i, &ci) in c.iter().enumerate() {
            for _ in 0..ci {
                y = g.add(&y, &images[i]);
            }
        }
        if g.q_of(&y) != f.q_of(&c) {
            return false;
        }
        if !seen.insert(y) {
            return false;
        }
    }
    seen.len() as u64 == g.group_order()
}

/// Same signature and isometric discriminant forms.
pub fn same_genus(a: &Lattice, b: &Lattice) -> Result<bool> {
    if a.signature() != b.signature() {
        return Ok(false);
    }
    forms_isometric(&discriminant_form(a), &discriminant_form(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{direct_sum, make_named, twist};
    use num::BigInt;

    fn named(n: &str) -> Lattice {
        make_named(n, None).unwrap()
    }

    fn rank1(m: i64) -> Lattice {
        make_named("rank1", Some(m)).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn smith_examples() {
        let id = smith(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(id.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
        let u = smith(named("U").gram());
        assert_eq!(u.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
        let og6 = smith(named("OG6").gram());
        let diag: Vec<i64> = og6.diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(diag, vec![1, 1, 1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn discriminant_examples() {
        let f = discriminant_form(&rank1(-2));
        assert_eq!(f.orders, vec![2]);
        assert_eq!(f.qvals, vec![r(3, 2)]);

        let og6 = discriminant_form(&named("OG6"));
        assert_eq!(og6.orders, vec![2, 2]);
        assert_eq!(og6.qvals, vec![r(3, 2), r(3, 2)]);
        assert_eq!(og6.bform[0][1], Rat::zero());

        let u2 = discriminant_form(&twist(&named("U"), 2).unwrap());
        assert_eq!(u2.orders, vec![2, 2]);
        assert_eq!(u2.qvals, vec![Rat::zero(), Rat::zero()]);
        assert_eq!(u2.bform[0][1], r(1, 2));
    }

    #[test]
    fn group_order_equals_det_on_builtins() {
        let table = vec![
            named("U"),
            twist(&named("U"), 2).unwrap(),
            make_named("A", Some(2)).unwrap(),
            make_named("D", Some(4)).unwrap(),
            make_named("E", Some(6)).unwrap(),
            make_named("E", Some(7)).unwrap(),
            make_named("E", Some(8)).unwrap(),
            rank1(2),
            rank1(-2),
            rank1(6),
            rank1(-10),
            rank1(14),
            named("h5"),
            named("K7"),
            named("OG6"),
            named("Mukai"),
            named("L10"),
        ];
        for l in table {
            let f = discriminant_form(&l);
            assert_eq!(
                BigInt::from(f.group_order()),
                l.determinant_abs(),
                "{:?}",
                l.label()
            );
            // q(x+y) - q(x) - q(y) = 2 b(x,y) mod 2Z on all generator pairs
            let k = f.generator_count();
            for i in 0..k {
                let mut ei = vec![0u64; k];
                ei[i] = 1;
                for j in 0..k {
                    let mut ej = vec![0u64; k];
                    ej[j] = 1;
                    let sum = f.add(&ei, &ej);
                    let lhs = rmod2(f.q_of(&sum) - f.q_of(&ei) - f.q_of(&ej));
                    let rhs = rmod2(Rat::from_integer(2) * f.b_of(&ei, &ej));
                    assert_eq!(lhs, rhs, "{:?} i={i} j={j}", l.label());
                }
                // n * b(g_i, .) = 0 mod 1 for order-n generators
                for j in 0..k {
                    let v = rmod1(Rat::from_integer(f.orders[i] as i64) * f.bform[i][j]);
                    assert_eq!(v, Rat::zero());
                }
            }
        }
    }

    #[test]
    fn length_examples() {
        assert_eq!(length(&FiniteQuadraticForm::trivial()), 0);
        assert_eq!(length(&discriminant_form(&named("OG6"))), 2);
        let l = direct_sum(&direct_sum(&named("U"), &rank1(-2)), &direct_sum(&rank1(-2), &rank1(2)));
        assert_eq!(length(&discriminant_form(&l)), 3);
    }

    #[test]
    fn p_elementary_examples() {
        assert!(is_p_elementary(&discriminant_form(&named("OG6")), 2));
        assert!(is_p_elementary(&discriminant_form(&make_named("A", Some(2)).unwrap()), 3));
        assert!(!is_p_elementary(&discriminant_form(&named("h5")), 2));
        assert!(is_p_elementary(&discriminant_form(&named("h5")), 5));
        // unimodular counts for every p
        assert!(is_p_elementary(&discriminant_form(&named("U")), 2));
        assert!(is_p_elementary(&discriminant_form(&named("U")), 7));
    }

    #[test]
    fn delta_examples() {
        let u2 = twist(&named("U"), 2).unwrap();
        assert_eq!(delta_invariant(&discriminant_form(&u2)).unwrap(), 0);
        assert_eq!(delta_invariant(&discriminant_form(&rank1(-2))).unwrap(), 1);
        let pm = direct_sum(&rank1(2), &rank1(-2));
        assert_eq!(delta_invariant(&discriminant_form(&pm)).unwrap(), 1);
        assert!(delta_invariant(&discriminant_form(&named("h5"))).is_err());
    }

    #[test]
    fn isometry_examples() {
        let q_m2 = discriminant_form(&rank1(-2));
        assert!(forms_isometric(&q_m2, &q_m2).unwrap());

        let u2 = discriminant_form(&twist(&named("U"), 2).unwrap());
        let p22 = discriminant_form(&direct_sum(&rank1(2), &rank1(2)));
        assert!(!forms_isometric(&u2, &p22).unwrap());

        let og6 = discriminant_form(&named("OG6"));
        let m2m2 = discriminant_form(&direct_sum(&rank1(-2), &rank1(-2)));
        assert!(forms_isometric(&og6, &m2m2).unwrap());

        let big = discriminant_form(&twist(&make_named("E", Some(8)).unwrap(), 3).unwrap());
        assert!(matches!(
            forms_isometric(&big, &big),
            Err(Error::UndecidedByBruteForce(_))
        ));
    }

    #[test]
    fn isometry_respects_sum_decomposition() {
        let cases = vec![
            (named("U"), rank1(-2)),
            (rank1(2), rank1(-2)),
            (twist(&named("U"), 2).unwrap(), rank1(2)),
            (make_named("A", Some(2)).unwrap(), rank1(-2)),
        ];
        for (a, b) in cases {
            let sum = discriminant_form(&direct_sum(&a, &b));
            let parts = discriminant_form(&a).orthogonal_sum(&discriminant_form(&b));
            assert!(forms_isometric(&sum, &parts).unwrap());
        }
    }

    #[test]
    fn isometry_is_equivalence_on_corpus() {
        let forms: Vec<FiniteQuadraticForm> = vec![
            discriminant_form(&rank1(2)),
            discriminant_form(&rank1(-2)),
            discriminant_form(&twist(&named("U"), 2).unwrap()),
            discriminant_form(&named("OG6")),
            discriminant_form(&direct_sum(&rank1(-2), &rank1(-2))),
            discriminant_form(&make_named("A", Some(2)).unwrap()),
        ];
        for f in &forms {
            assert!(forms_isometric(f, f).unwrap());
        }
        for f in &forms {
            for g in &forms {
                assert_eq!(
                    forms_isometric(f, g).unwrap(),
                    forms_isometric(g, f).unwrap()
                );
            }
        }
        // spot-check transitivity through the OG6 = [-2] + [-2] chain
        let a = &forms[3];
        let b = &forms[4];
        for h in &forms {
            if forms_isometric(a, h).unwrap() {
                assert!(forms_isometric(b, h).unwrap());
            }
        }
    }

    #[test]
    fn genus_examples() {
        assert!(same_genus(&named("U"), &named("U")).unwrap());
        let pm = direct_sum(&rank1(2), &rank1(-2));
        let u2 = twist(&named("U"), 2).unwrap();
        assert!(!same_genus(&pm, &u2).unwrap());
        let l = direct_sum_all3(&named("U"), &named("U"), &named("U"));
        let l = direct_sum(&l, &rank1(-2));
        assert!(same_genus(&l, &l).unwrap());
    }

    fn direct_sum_all3(a: &Lattice, b: &Lattice, c: &Lattice) -> Lattice {
        direct_sum(&direct_sum(a, b), c)
    }

    #[test]
    fn square_classes() {
        // A2 negative definite: q(g) = 4/3, p*b = [1], chi_3(1) = 1
        let a2 = make_named("A", Some(2)).unwrap();
        assert_eq!(square_class_odd(&discriminant_form(&a2), 3), 1);
        let a2pos = twist(&a2, -1).unwrap();
        assert_eq!(square_class_odd(&discriminant_form(&a2pos), 3), -1);
        // U(3): p*B has det -1, chi_3(-1) = -1
        let u3 = twist(&named("U"), 3).unwrap();
        assert_eq!(square_class_odd(&discriminant_form(&u3), 3), -1);
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(-1, 5), 1);
        assert_eq!(legendre(-1, 7), -1);
    }
}
