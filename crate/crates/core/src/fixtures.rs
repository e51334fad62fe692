//! Small named algebras, quivers and relation sets used by the tests, the
//! command-line tool and the documentation examples.

use std::sync::Arc;

use rand::Rng;

use crate::dg::{compute_hodge, transfer, AInfinityStructure, DgAlgebra, DgaBuilder};
use crate::error::Result;
use crate::field::Field;
use crate::matrix::Matrix;

/// Basis of an exterior algebra on `k` degree-one generators: subsets as
/// bitmasks, ordered by size and then lexicographically.
fn exterior_subsets(k: usize) -> Vec<u32> {
    let mut subsets: Vec<u32> = (0..(1u32 << k)).collect();
    subsets.sort_by_key(|&s| {
        let mut bits: Vec<u32> = (0..k as u32).filter(|b| s & (1 << b) != 0).collect();
        bits.insert(0, s.count_ones());
        bits
    });
    subsets
}

/// Exterior algebra `Λ(gens)` on degree-one generators with the differential
/// prescribed on generators (as integer combinations of basis names) and
/// extended by the Leibniz rule. Basis names concatenate generator names;
/// the unit is called `1`.
pub fn exterior_algebra<F: Field>(gens: &[&str], d_on_gens: &[(&str, &[(&str, i64)])]) -> Result<DgAlgebra<F>> {
    let k = gens.len();
    let subsets = exterior_subsets(k);
    let n = subsets.len();
    let name = |s: u32| -> String {
        if s == 0 {
            "1".into()
        } else {
            (0..k).filter(|b| s & (1 << b) != 0).map(|b| gens[b]).collect()
        }
    };
    let names: Vec<String> = subsets.iter().map(|&s| name(s)).collect();
    let degrees: Vec<i32> = subsets.iter().map(|s| s.count_ones() as i32).collect();
    let pos = |s: u32| subsets.iter().position(|&t| t == s).expect("subset");

    let mut product = vec![vec![F::zero(); n]; n * n];
    for (i, &s) in subsets.iter().enumerate() {
        for (j, &t) in subsets.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            let mut inversions = 0;
            for a in 0..k {
                for b in 0..a {
                    if s & (1 << a) != 0 && t & (1 << b) != 0 {
                        inversions += 1;
                    }
                }
            }
            product[i * n + j][pos(s | t)] = if inversions % 2 == 0 { F::one() } else { -F::one() };
        }
    }
    let mut unit = vec![F::zero(); n];
    unit[0] = F::one();
    let skeleton = DgAlgebra::new(names.clone(), degrees.clone(), Matrix::zeros(n, n), product.clone(), Some(unit.clone()))?;

    let mut d_gen: Vec<Vec<F>> = vec![vec![F::zero(); n]; k];
    for (g, terms) in d_on_gens {
        let gi = gens
            .iter()
            .position(|x| x == g)
            .ok_or_else(|| crate::Error::InvalidDga(format!("unknown generator `{g}`")))?;
        for (target, c) in terms.iter() {
            let t = names
                .iter()
                .position(|x| x == target)
                .ok_or_else(|| crate::Error::InvalidDga(format!("unknown basis element `{target}`")))?;
            d_gen[gi][t] += &F::from_i64(*c);
        }
    }
    let mut differential = Matrix::zeros(n, n);
    for (col, &s) in subsets.iter().enumerate() {
        let bits: Vec<usize> = (0..k).filter(|b| s & (1 << b) != 0).collect();
        let mut total = vec![F::zero(); n];
        for (j, &b) in bits.iter().enumerate() {
            let before: u32 = bits[..j].iter().map(|&x| 1u32 << x).sum();
            let after: u32 = bits[j + 1..].iter().map(|&x| 1u32 << x).sum();
            let left = skeleton.basis_vector(pos(before));
            let right = skeleton.basis_vector(pos(after));
            let term = skeleton.mul(&skeleton.mul(&left, &d_gen[b]), &right);
            let c = if j % 2 == 0 { F::one() } else { -F::one() };
            crate::matrix::vec_add_scaled(&mut total, &c, &term);
        }
        for (row, x) in total.into_iter().enumerate() {
            differential[(row, col)] = x;
        }
    }
    DgAlgebra::new(names, degrees, differential, product, Some(unit))
}

/// `Λ(x, y, z)` with `dz = xy`; its transferred `m_3` carries the Massey product.
pub fn massey_dga<F: Field>() -> DgAlgebra<F> {
    exterior_algebra(&["x", "y", "z"], &[("z", &[("xy", 1)])]).expect("valid fixture")
}

/// `Λ(x1, x2, x3)` with zero differential, the Ext-algebra of a point on a
/// Calabi–Yau threefold.
pub fn cy3_exterior<F: Field>() -> DgAlgebra<F> {
    exterior_algebra(&["x1", "x2", "x3"], &[]).expect("valid fixture")
}

/// `Λ(x, y, z)` with `dz = a·xy + b·xz + c·yz` for random `a, b, c`, followed
/// by a random degree-preserving change of basis fixing the unit.
pub fn random_exterior_dga<F: Field, R: Rng + ?Sized>(rng: &mut R) -> DgAlgebra<F> {
    let coeffs: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
    let base: DgAlgebra<F> = exterior_algebra(
        &["x", "y", "z"],
        &[("z", &[("xy", coeffs[0]), ("xz", coeffs[1]), ("yz", coeffs[2])])],
    )
    .expect("valid fixture");
    let n = base.dim();
    let g = loop {
        let mut g = Matrix::identity(n);
        for r in 1..n {
            for c in 1..n {
                if base.degree(r) == base.degree(c) {
                    g[(r, c)] = F::sample(rng, 3);
                }
            }
        }
        if g.is_invertible() {
            break g;
        }
    };
    base.change_basis(&g).expect("degree-preserving")
}

/// Ext-algebra of three spherical objects whose Ext-quiver is the oriented
/// 3-cycle `a: 1 → 2`, `b: 2 → 3`, `c: 3 → 1`, with Serre-dual degree-two
/// classes and degree-three classes dual to the idempotents.
pub fn three_cycle_cy3<F: Field>() -> DgAlgebra<F> {
    let one = F::one;
    let mut b = DgaBuilder::new().vertices(3);
    for (v, (i, w)) in [("1", "w1"), ("2", "w2"), ("3", "w3")].iter().enumerate() {
        b = b.basis_in_block(&format!("id{i}"), 0, (v, v)).basis_in_block(w, 3, (v, v));
    }
    b = b
        .basis_in_block("a", 1, (0, 1))
        .basis_in_block("b", 1, (1, 2))
        .basis_in_block("c", 1, (2, 0))
        .basis_in_block("a*", 2, (1, 0))
        .basis_in_block("b*", 2, (2, 1))
        .basis_in_block("c*", 2, (0, 2));
    let elements = [
        ("id1", (0, 0)),
        ("w1", (0, 0)),
        ("id2", (1, 1)),
        ("w2", (1, 1)),
        ("id3", (2, 2)),
        ("w3", (2, 2)),
        ("a", (0, 1)),
        ("b", (1, 2)),
        ("c", (2, 0)),
        ("a*", (1, 0)),
        ("b*", (2, 1)),
        ("c*", (0, 2)),
    ];
    let ids = ["id1", "id2", "id3"];
    for (x, (s, t)) in elements {
        b = b.product(ids[s], x, x, one());
        if !ids.contains(&x) {
            b = b.product(x, ids[t], x, one());
        }
    }
    let products = [
        ("a", "b", "c*"),
        ("b", "c", "a*"),
        ("c", "a", "b*"),
        ("a", "a*", "w1"),
        ("a*", "a", "w2"),
        ("b", "b*", "w2"),
        ("b*", "b", "w3"),
        ("c", "c*", "w3"),
        ("c*", "c", "w1"),
    ];
    for (x, y, z) in products {
        b = b.product(x, y, z, one());
    }
    b.unit(&[("id1", one()), ("id2", one()), ("id3", one())]).build().expect("valid fixture")
}

/// The formal structure on `Λ(x1, x2, x3)` with an extra cyclic product
/// `m₃(x1, x1, x1) = c · x2x3`, for products up to `max_arity ≥ 3`.
pub fn cy3_with_cubic_term<F: Field>(c: F, max_arity: usize) -> AInfinityStructure<F> {
    let h = compute_hodge(Arc::new(cy3_exterior::<F>()));
    let mut ainf = transfer(&h, max_arity.max(3)).expect("arity at least two").minimal;
    let basis = ainf.basis().clone();
    let x1 = basis.index("x1").expect("generator");
    let x2x3 = basis.index("x2x3").expect("basis element");
    let mut v = vec![F::zero(); basis.dim()];
    v[x2x3] = c;
    ainf.m_mut(3).expect("arity three").set(vec![x1, x1, x1], v);
    ainf
}

/// Minimal model of a dg-algebra with products up to `max_arity`.
pub fn minimal_model<F: Field>(a: DgAlgebra<F>, max_arity: usize) -> AInfinityStructure<F> {
    let h = compute_hodge(Arc::new(a));
    transfer(&h, max_arity).expect("arity at least two").minimal
}
