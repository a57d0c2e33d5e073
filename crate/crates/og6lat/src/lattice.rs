//! Even nondegenerate integer lattices with exact arithmetic: construction
//! from named Gram matrices, direct sums, twists, determinants, signatures,
//! vector pairings and divisibility.

use crate::mat;
use crate::{Error, Result};
use num::{BigInt, BigRational, Signed, Zero};

/// An even nondegenerate lattice, stored as its Gram matrix in a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    label: Option<String>,
}

/// Integer coordinate vector in the fixed basis of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector(pub Vec<i64>);

/// Counts of positive and negative squares of the real quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.pos, self.neg)
    }
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|&c| c * k).collect())
    }
}

impl Lattice {
    /// Validates symmetry, even diagonal and nondegeneracy.
    pub fn new(gram: Vec<Vec<i64>>, label: Option<String>) -> Result<Self> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::NotSymmetric);
            }
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
            if gram[i][i] % 2 != 0 {
                return Err(Error::OddDiagonal(gram[i][i]));
            }
        }
        if n > 0 && mat::bareiss_det(&mat::from_i64(&gram)).is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { gram, label })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The rank-0 lattice (empty Gram matrix, determinant 1).
    pub fn zero() -> Self {
        Lattice { gram: vec![], label: Some("0".into()) }
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        mat::bareiss_det(&mat::from_i64(&self.gram))
    }

    pub fn determinant_abs(&self) -> BigInt {
        self.determinant().abs()
    }

    /// Signature by symmetric congruence diagonalization over the rationals.
    /// When every remaining diagonal entry vanishes, a hyperbolic 2x2 block is
    /// cleared and contributes (1,1). No floating point is involved.
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from(BigInt::from(self.gram[i][j])))
                    .collect()
            })
            .collect();
        let mut alive: Vec<usize> = (0..n).collect();
        let mut pos = 0usize;
        let mut neg = 0usize;
        while !alive.is_empty() {
            if let Some(&p) = alive.iter().find(|&&i| !a[i][i].is_zero()) {
                if a[p][p].is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
                alive.retain(|&i| i != p);
                for &i in alive.clone().iter() {
                    if !a[i][p].is_zero() {
                        let f = &a[i][p] / &a[p][p];
                        for &j in alive.iter() {
                            let s = &f * &a[p][j];
                            a[i][j] = &a[i][j] - &s;
                        }
                        a[i][p] = BigRational::zero();
                    }
                }
                for &j in alive.iter() {
                    a[p][j] = BigRational::zero();
                }
            } else {
                // all diagonal entries vanish on the live block
                let mut found = None;
                'outer: for (x, &i) in alive.iter().enumerate() {
                    for &j in alive.iter().skip(x + 1) {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let (p, q) = found.expect("degenerate block in signature");
                pos += 1;
                neg += 1;
                let c = a[p][q].clone();
                alive.retain(|&i| i != p && i != q);
                for &i in alive.clone().iter() {
                    let fp = &a[i][q] / &c;
                    let fq = &a[i][p] / &c;
                    if !fp.is_zero() || !fq.is_zero() {
                        for &j in alive.iter() {
                            let s = &fp * &a[p][j] + &fq * &a[q][j];
                            a[i][j] = &a[i][j] - &s;
                        }
                    }
                }
                for (x, &i) in alive.clone().iter().enumerate() {
                    let _ = x;
                    a[p][i] = BigRational::zero();
                    a[q][i] = BigRational::zero();
                    a[i][p] = BigRational::zero();
                    a[i][q] = BigRational::zero();
                }
            }
        }
        Signature { pos, neg }
    }

    /// `v^T gram w`.
    pub fn inner(&self, v: &LatticeVector, w: &LatticeVector) -> Result<i64> {
        let n = self.rank();
        if v.0.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.0.len() });
        }
        if w.0.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: w.0.len() });
        }
        let mut acc: i128 = 0;
        for i in 0..n {
            for j in 0..n {
                acc += v.0[i] as i128 * self.gram[i][j] as i128 * w.0[j] as i128;
            }
        }
        Ok(i64::try_from(acc).expect("pairing overflow"))
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<i64> {
        self.inner(v, v)
    }

    /// `(v, L) = gcd { v . v' | v' in L }`, the gcd of the entries of `gram v`.
    pub fn divisibility(&self, v: &LatticeVector) -> Result<u64> {
        if v.0.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: v.0.len() });
        }
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut g: u64 = 0;
        for i in 0..self.rank() {
            let mut acc: i128 = 0;
            for j in 0..self.rank() {
                acc += self.gram[i][j] as i128 * v.0[j] as i128;
            }
            g = gcd_u(g, acc.unsigned_abs() as u64);
        }
        debug_assert!(g > 0, "nondegenerate form has no isotropic kernel");
        Ok(g)
    }

    /// All vectors `v` with coefficients in `[-bound, bound]` and `v^2 = n`,
    /// deduplicated up to sign (first nonzero coordinate positive), in
    /// lexicographic order.
    pub fn vectors_of_norm(&self, n: i64, bound: u32) -> Vec<LatticeVector> {
        assert!(bound >= 1, "bound must be positive");
        let r = self.rank();
        let b = bound as i64;
        let mut out = Vec::new();
        let mut coords = vec![-b; r];
        if r == 0 {
            return out;
        }
        loop {
            let v = LatticeVector(coords.clone());
            if !v.is_zero() {
                let canonical = coords.iter().find(|&&c| c != 0).map_or(false, |&c| c > 0);
                if canonical && self.norm(&v).expect("rank matches") == n {
                    out.push(v);
                }
            }
            let mut i = r;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if coords[i] < b {
                    coords[i] += 1;
                    for c in coords.iter_mut().skip(i + 1) {
                        *c = -b;
                    }
                    break;
                }
            }
        }
    }
}

fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

/// Block-diagonal direct sum; rank adds and determinants multiply.
pub fn direct_sum(a: &Lattice, b: &Lattice) -> Lattice {
    let n = a.rank();
    let m = b.rank();
    let mut gram = vec![vec![0i64; n + m]; n + m];
    for i in 0..n {
        gram[i][..n].copy_from_slice(&a.gram[i]);
    }
    for i in 0..m {
        gram[n + i][n..].copy_from_slice(&b.gram[i]);
    }
    let label = match (a.label(), b.label()) {
        (Some(x), Some(y)) => Some(format!("{x} + {y}")),
        _ => None,
    };
    Lattice { gram, label }
}

pub fn direct_sum_all(parts: &[Lattice]) -> Lattice {
    let mut acc = Lattice::zero();
    for p in parts {
        acc = direct_sum(&acc, p);
    }
    if acc.rank() > 0 && acc.label.as_deref() == Some("0") {
        acc.label = None;
    }
    acc
}

/// Scales the form entrywise by `n != 0`; evenness is preserved.
pub fn twist(l: &Lattice, n: i64) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::ZeroTwist);
    }
    let gram = l
        .gram
        .iter()
        .map(|row| row.iter().map(|&x| x * n).collect())
        .collect();
    let label = l.label().map(|s| format!("{s}({n})"));
    Ok(Lattice { gram, label })
}

fn neg_cartan(adj: &[(usize, usize)], rank: usize) -> Vec<Vec<i64>> {
    let mut gram = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        gram[i][i] = -2;
    }
    for &(i, j) in adj {
        gram[i][j] = 1;
        gram[j][i] = 1;
    }
    gram
}

/// The rank-2 lattice of signature (1,1) and determinant -5 pinned by the
/// witness-enumeration regression test in `tests/derived_pins.rs`.
pub const H5_GRAM: [[i64; 2]; 2] = [[-2, -3], [-3, -2]];
/// The rank-2 negative definite lattice of determinant 7, pinned likewise.
pub const K7_GRAM: [[i64; 2]; 2] = [[-4, -3], [-3, -4]];

/// Standard Gram matrices by name. ADE names are negative definite; the
/// positive forms are obtained with `twist(.., -1)`.
///
/// Names: `U` (optional integer scales the form), `A`/`D`/`E` (rank
/// parameter), `rank1` ([m] with even m), `h5`, `K7`, `OG6`, `Mukai`, `L10`.
pub fn make_named(name: &str, param: Option<i64>) -> Result<Lattice> {
    let no_param = |name: &str| -> Result<()> {
        if param.is_some() {
            Err(Error::BadParameter {
                name: name.to_string(),
                detail: "takes no parameter".into(),
            })
        } else {
            Ok(())
        }
    };
    match name {
        "U" => {
            let u = Lattice::new(vec![vec![0, 1], vec![1, 0]], Some("U".into()))?;
            match param {
                None => Ok(u),
                Some(0) => Err(Error::BadParameter { name: "U".into(), detail: "U(0) is degenerate".into() }),
                Some(n) => Ok(twist(&u, n)?),
            }
        }
        "A" => {
            let n = require_param(name, param)?;
            if n < 1 {
                return Err(Error::BadParameter { name: "A".into(), detail: "rank must be >= 1".into() });
            }
            let n = n as usize;
            let adj: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
            Lattice::new(neg_cartan(&adj, n), Some(format!("A({n})")))
        }
        "D" => {
            let n = require_param(name, param)?;
            if n < 4 {
                return Err(Error::BadParameter { name: "D".into(), detail: "rank must be >= 4".into() });
            }
            let n = n as usize;
            // chain 0-1-...-(n-2) with the last node attached to n-3
            let mut adj: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
            adj.push((n - 3, n - 1));
            Lattice::new(neg_cartan(&adj, n), Some(format!("D({n})")))
        }
        "E" => {
            let n = require_param(name, param)?;
            if !(6..=8).contains(&n) {
                return Err(Error::BadParameter { name: "E".into(), detail: "rank must be 6, 7 or 8".into() });
            }
            let n = n as usize;
            // chain 0-1-...-(n-2) with the branch node n-1 attached to node 2
            let mut adj: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
            adj.push((2, n - 1));
            Lattice::new(neg_cartan(&adj, n), Some(format!("E({n})")))
        }
        "rank1" => {
            let m = require_param(name, param)?;
            if m % 2 != 0 {
                return Err(Error::OddDiagonal(m));
            }
            if m == 0 {
                return Err(Error::Degenerate);
            }
            Lattice::new(vec![vec![m]], Some(format!("[{m}]")))
        }
        "h5" => {
            no_param(name)?;
            Lattice::new(H5_GRAM.iter().map(|r| r.to_vec()).collect(), Some("h5".into()))
        }
        "K7" => {
            no_param(name)?;
            Lattice::new(K7_GRAM.iter().map(|r| r.to_vec()).collect(), Some("K7".into()))
        }
        "OG6" => {
            no_param(name)?;
            let u = make_named("U", None)?;
            let m2 = make_named("rank1", Some(-2))?;
            Ok(direct_sum_all(&[u.clone(), u.clone(), u, m2.clone(), m2])
                .with_label("OG6"))
        }
        // Even cohomology of an abelian surface with the Mukai pairing
        // (r1,l1,s1).(r2,l2,s2) = l1 l2 - r1 s2 - r2 s1, in the coordinate
        // order (r, l1..l6, s); isometric to U^4.
        "Mukai" => {
            no_param(name)?;
            let mut gram = vec![vec![0i64; 8]; 8];
            let u = [[0i64, 1], [1, 0]];
            for b in 0..3 {
                for i in 0..2 {
                    for j in 0..2 {
                        gram[1 + 2 * b + i][1 + 2 * b + j] = u[i][j];
                    }
                }
            }
            gram[0][7] = -1;
            gram[7][0] = -1;
            Lattice::new(gram, Some("Mukai".into()))
        }
        "L10" => {
            no_param(name)?;
            let u = make_named("U", None)?;
            Ok(direct_sum_all(&[u.clone(), u.clone(), u.clone(), u.clone(), u])
                .with_label("L10"))
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

fn require_param(name: &str, param: Option<i64>) -> Result<i64> {
    param.ok_or_else(|| Error::BadParameter {
        name: name.to_string(),
        detail: "missing parameter".into(),
    })
}
