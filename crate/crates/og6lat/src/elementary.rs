//! Existence and U-splitting tests for even p-elementary lattices from genus
//! invariants, double-checked by a block-sum construction oracle.
//!
//! For p = 2 the existence test applies the standard congruence conditions on
//! (t+, t-, a, delta). For odd p it combines the parity of the rank, the
//! Milgram signature of the discriminant form (through the square class of
//! det(p B)) and, when a equals the rank, the determinant square-class match.

use crate::finite::{
    delta_invariant, discriminant_form, is_p_elementary, legendre, length, square_class_odd,
    ElementaryInvariants, ParityDatum,
};
use crate::lattice::{direct_sum_all, make_named, twist, Lattice, Signature};

/// A query against the p-elementary genus: invariants to be realized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryGenusQuery {
    pub inv: ElementaryInvariants,
}

impl ElementaryGenusQuery {
    pub fn new(inv: ElementaryInvariants) -> Self {
        ElementaryGenusQuery { inv }
    }

    pub fn signature(&self) -> Signature {
        Signature { pos: self.inv.t_plus, neg: self.inv.t_minus }
    }
}

/// True iff an even p-elementary lattice with the queried invariants exists.
pub fn exists_elementary(q: &ElementaryGenusQuery) -> bool {
    let inv = &q.inv;
    let r = inv.rank() as i64;
    let a = inv.a as i64;
    let sigma = inv.signature_excess();
    if a < 0 || a > r {
        return false;
    }
    match inv.datum {
        ParityDatum::Delta(delta) => {
            debug_assert_eq!(inv.p, 2);
            let delta = delta != 0;
            if (r + a) % 2 != 0 {
                return false;
            }
            if !delta && sigma.rem_euclid(4) != 0 {
                return false;
            }
            if a == 0 && (delta || sigma.rem_euclid(8) != 0) {
                return false;
            }
            if a == 1 && !(sigma.rem_euclid(8) == 1 || sigma.rem_euclid(8) == 7) {
                return false;
            }
            if a == 2 && sigma.rem_euclid(8) == 4 && delta {
                return false;
            }
            if !delta && a == r && sigma.rem_euclid(8) != 0 {
                return false;
            }
            true
        }
        ParityDatum::SquareClass(chi_s) => {
            let p = inv.p;
            if r % 2 != 0 {
                // even lattices of odd determinant have even rank
                return false;
            }
            if a == 0 {
                return chi_s == 1 && sigma.rem_euclid(8) == 0;
            }
            // Milgram: signature of the form mod 8, from the square class of
            // the diagonalized q = (+) 2 alpha_i / p with prod alpha_i = d
            let chi_d = chi_s * pow_sign(legendre(2, p), a as u32);
            let form_sig = if p % 4 == 1 {
                if chi_d == 1 { 0 } else { 4 }
            } else if chi_d == 1 {
                (2 * a).rem_euclid(8)
            } else {
                (2 * a + 4).rem_euclid(8)
            };
            if sigma.rem_euclid(8) != form_sig {
                return false;
            }
            if a == r {
                // no unimodular p-adic part: det sign must match the class
                let want = if inv.t_minus % 2 == 0 { 1 } else { legendre(-1, p) };
                if chi_s != want {
                    return false;
                }
            }
            true
        }
    }
}

fn pow_sign(s: i8, e: u32) -> i8 {
    if e % 2 == 0 {
        1
    } else {
        s
    }
}

/// True iff the queried lattice contains U as a direct summand: both signs of
/// the signature must have room, and removing (1,1) must leave a realizable
/// genus with the same discriminant form.
pub fn splits_off_u(q: &ElementaryGenusQuery) -> bool {
    let inv = &q.inv;
    if inv.t_plus < 1 || inv.t_minus < 1 {
        return false;
    }
    let reduced = ElementaryGenusQuery::new(ElementaryInvariants {
        p: inv.p,
        t_plus: inv.t_plus - 1,
        t_minus: inv.t_minus - 1,
        a: inv.a,
        datum: inv.datum,
    });
    exists_elementary(&reduced)
}

fn blocks_for(p: u64) -> Vec<Lattice> {
    let u = make_named("U", None).unwrap();
    let mut blocks = vec![u.clone(), twist(&u, p as i64).unwrap()];
    if p == 2 {
        for m in [2i64, -2] {
            blocks.push(make_named("rank1", Some(m)).unwrap());
        }
        let d4 = make_named("D", Some(4)).unwrap();
        blocks.push(twist(&d4, -1).unwrap());
        blocks.push(d4);
    } else {
        for m in [2 * p as i64, -2 * (p as i64)] {
            blocks.push(make_named("rank1", Some(m)).unwrap());
        }
        let a = make_named("A", Some(p as i64 - 1)).unwrap();
        blocks.push(twist(&a, -1).unwrap());
        blocks.push(a);
        if p == 5 {
            let h5 = make_named("h5", None).unwrap();
            blocks.push(twist(&h5, -1).unwrap());
            blocks.push(h5);
        }
        if p == 7 {
            let k7 = make_named("K7", None).unwrap();
            blocks.push(twist(&k7, -1).unwrap());
            blocks.push(k7);
        }
    }
    let e8 = make_named("E", Some(8)).unwrap();
    blocks.push(twist(&e8, -1).unwrap());
    blocks.push(e8);
    blocks
}

/// Brute-force oracle: a direct sum of standard blocks realizing the queried
/// invariants, or `None` when no combination matches. The first witness in
/// canonical multiset order wins.
pub fn construct_witness(q: &ElementaryGenusQuery, max_rank: usize) -> Option<Lattice> {
    assert!(max_rank <= 10, "oracle is a desk-scale tool");
    let inv = &q.inv;
    let r = inv.rank();
    if r > max_rank {
        return None;
    }
    if r == 0 {
        return if inv.a == 0 && datum_trivial(&inv.datum) {
            Some(Lattice::zero())
        } else {
            None
        };
    }
    let target = q.signature();
    let blocks = blocks_for(inv.p);
    let sigs: Vec<Signature> = blocks.iter().map(|b| b.signature()).collect();

    fn dfs(
        blocks: &[Lattice],
        sigs: &[Signature],
        i: usize,
        pos: usize,
        neg: usize,
        target: Signature,
        parts: &mut Vec<Lattice>,
        inv: &ElementaryInvariants,
    ) -> Option<Lattice> {
        if pos == target.pos && neg == target.neg {
            let cand = direct_sum_all(parts);
            let f = discriminant_form(&cand);
            if is_p_elementary(&f, inv.p) && length(&f) == inv.a && datum_matches(&f, inv) {
                return Some(cand);
            }
            return None;
        }
        if i >= blocks.len() {
            return None;
        }
        // take block i (staying at i allows repetition), then skip it
        if pos + sigs[i].pos <= target.pos && neg + sigs[i].neg <= target.neg {
            parts.push(blocks[i].clone());
            if let Some(w) = dfs(
                blocks,
                sigs,
                i,
                pos + sigs[i].pos,
                neg + sigs[i].neg,
                target,
                parts,
                inv,
            ) {
                return Some(w);
            }
            parts.pop();
        }
        dfs(blocks, sigs, i + 1, pos, neg, target, parts, inv)
    }

    let mut parts = Vec::new();
    dfs(&blocks, &sigs, 0, 0, 0, target, &mut parts, inv)
}

fn datum_trivial(d: &ParityDatum) -> bool {
    matches!(d, ParityDatum::Delta(0) | ParityDatum::SquareClass(1))
}

fn datum_matches(f: &crate::finite::FiniteQuadraticForm, inv: &ElementaryInvariants) -> bool {
    match inv.datum {
        ParityDatum::Delta(delta) => delta_invariant(f).map(|d| d == delta).unwrap_or(false),
        ParityDatum::SquareClass(chi) => square_class_odd(f, inv.p) == chi,
    }
}
