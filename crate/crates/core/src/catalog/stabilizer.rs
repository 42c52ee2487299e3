//! Generation of the 60 two-qubit stabilizer states.
//!
//! The two-qubit Pauli group modulo phases has 15 nontrivial elements,
//! identified with nonzero symplectic vectors `(x1, z1, x2, z2)` over F2.
//! Two elements commute exactly when the symplectic form
//! `x1 z1' + z1 x1' + x2 z2' + z2 x2'` vanishes; the 15 maximal abelian
//! subgroups each consist of the identity plus a commuting triple
//! `{P, Q, PQ}`. For every subgroup and every sign pattern `(s, t)` the
//! operator `(I + sP)(I + tQ) / 4` is a rank-one projector, and its first
//! nonzero column is the corresponding stabilizer state. All arithmetic is
//! exact, so the resulting rays are exact eigenvectors, not approximations.

use super::{lex_cmp_rays, CatalogError, Ray, VectorSet};
use crate::scalar::ExactScalar;

type Matrix = Vec<Vec<ExactScalar>>;

fn pauli_1q(which: usize) -> Matrix {
    let o = ExactScalar::zero;
    let l = ExactScalar::one;
    match which {
        // I
        0 => vec![vec![l(), o()], vec![o(), l()]],
        // X
        1 => vec![vec![o(), l()], vec![l(), o()]],
        // Y
        2 => vec![
            vec![o(), ExactScalar::int_i(-1)],
            vec![ExactScalar::i(), o()],
        ],
        // Z
        3 => vec![vec![l(), o()], vec![o(), ExactScalar::from_int(-1)]],
        _ => unreachable!(),
    }
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac) = (a.len(), a[0].len());
    let (br, bc) = (b.len(), b[0].len());
    let mut out = vec![vec![ExactScalar::zero(); ac * bc]; ar * br];
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![ExactScalar::zero(); n]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = &out[i][j] + &(aik * &b[k][j]);
            }
        }
    }
    out
}

fn identity(n: usize) -> Matrix {
    let mut m = vec![vec![ExactScalar::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ExactScalar::one();
    }
    m
}

/// `I + s * P` for `s = +-1`.
fn one_plus(p: &Matrix, s: i64) -> Matrix {
    let n = p.len();
    let mut m = identity(n);
    let sign = ExactScalar::from_int(s);
    for i in 0..n {
        for j in 0..n {
            m[i][j] = &m[i][j] + &(&sign * &p[i][j]);
        }
    }
    m
}

/// Symplectic encoding of the Pauli with single-qubit labels `(a, b)`,
/// where labels follow `pauli_1q`: 0=I, 1=X, 2=Y, 3=Z.
fn symplectic(a: usize, b: usize) -> u8 {
    let xz = |w: usize| -> u8 {
        match w {
            0 => 0b00,
            1 => 0b10, // X
            2 => 0b11, // Y
            3 => 0b01, // Z
            _ => unreachable!(),
        }
    };
    xz(a) << 2 | xz(b)
}

fn commutes(p: u8, q: u8) -> bool {
    let form = |u: u8, v: u8| -> u8 {
        // One qubit: x z' + z x' over F2.
        let (x1, z1) = (u >> 1 & 1, u & 1);
        let (x2, z2) = (v >> 1 & 1, v & 1);
        x1 & z2 ^ z1 & x2
    };
    (form(p >> 2, q >> 2) ^ form(p & 0b11, q & 0b11)) == 0
}

/// Generates the 60 two-qubit stabilizer states as exact rays in
/// dimension 4, sorted lexicographically.
///
/// Every canonical ray entry is verified to lie in `{0, +-1, +-i}`, the
/// known coefficient alphabet of stabilizer states.
pub fn generate_stabilizer_rays() -> Result<VectorSet, CatalogError> {
    // Nontrivial Paulis in a fixed order: label pairs (a, b) != (I, I).
    let labels: Vec<(usize, usize)> = (0..4)
        .flat_map(|a| (0..4).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .collect();
    let matrices: Vec<Matrix> = labels
        .iter()
        .map(|&(a, b)| kron(&pauli_1q(a), &pauli_1q(b)))
        .collect();
    let sympl: Vec<u8> = labels.iter().map(|&(a, b)| symplectic(a, b)).collect();

    // Maximal abelian subgroups as symplectic triples {p, q, p ^ q},
    // deduplicated by their sorted element sets.
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut seen: Vec<[u8; 3]> = Vec::new();
    for i in 0..15 {
        for j in i + 1..15 {
            if !commutes(sympl[i], sympl[j]) {
                continue;
            }
            let mut key = [sympl[i], sympl[j], sympl[i] ^ sympl[j]];
            key.sort_unstable();
            if !seen.contains(&key) {
                seen.push(key);
                groups.push((i, j));
            }
        }
    }
    assert_eq!(
        groups.len(),
        15,
        "two-qubit Pauli group has 15 maximal abelian subgroups"
    );

    let mut rays: Vec<Ray> = Vec::with_capacity(60);
    for &(i, j) in &groups {
        for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let m = mat_mul(&one_plus(&matrices[i], s), &one_plus(&matrices[j], t));
            let col = (0..4)
                .find(|&c| (0..4).any(|r| !m[r][c].is_zero()))
                .expect("rank-one projector has a nonzero column");
            let ray: Ray = (0..4).map(|r| m[r][col].clone()).collect();
            let ray = super::canonicalize_ray(ray).expect("projector column is nonzero");
            for entry in &ray {
                assert!(
                    is_stabilizer_entry(entry),
                    "stabilizer ray entry {entry} outside {{0, +-1, +-i}}"
                );
            }
            rays.push(ray);
        }
    }
    rays.sort_by(lex_cmp_rays);
    VectorSet::new("stabilizer2q", 4, rays)
}

fn is_stabilizer_entry(c: &ExactScalar) -> bool {
    c.is_zero()
        || *c == ExactScalar::one()
        || *c == ExactScalar::from_int(-1)
        || *c == ExactScalar::i()
        || *c == ExactScalar::int_i(-1)
}
