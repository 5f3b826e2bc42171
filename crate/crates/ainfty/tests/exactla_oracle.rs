use ainfty::exactla::{
    rank_kernel_image, rank_kernel_image_with, solve, Backend, Field, PrimeField, Rationals, SparseMatrix, SparseVec,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Plain row-reduction over Q on a dense integer matrix, written without the library.
fn dense_rank_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let (nr, nc) = (m.len(), if m.is_empty() { 0 } else { m[0].len() });
    let mut rank = 0;
    for c in 0..nc {
        let Some(p) = (rank..nr).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..nr {
            if r != rank && !m[r][c].is_zero() {
                let t = &m[r][c] / &m[rank][c];
                for k in 0..nc {
                    let v = &m[rank][k] * &t;
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

// Elementary divisors of an integer matrix by Smith normal form.
fn smith_divisors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let nr = m.len();
    let nc = if nr == 0 { 0 } else { m[0].len() };
    let mut divs = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !m[i][j].is_zero() && best.map_or(true, |(a, b)| m[i][j].abs() < m[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, j)) = best else { break };
        m.swap(t, i);
        for row in m.iter_mut() {
            row.swap(t, j);
        }
        let mut clean = true;
        for i in t + 1..nr {
            let q = &m[i][t] / &m[t][t];
            for k in t..nc {
                let v = &m[t][k] * &q;
                m[i][k] -= v;
            }
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..nc {
            let q = &m[t][j] / &m[t][t];
            for k in t..nr {
                let v = &m[k][t] * &q;
                m[k][j] -= v;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility of the rest
        let mut bad = None;
        for i in t + 1..nr {
            for j in t + 1..nc {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    bad = Some(i);
                }
            }
        }
        if let Some(i) = bad {
            for k in t..nc {
                let v = m[i][k].clone();
                m[t][k] += v;
            }
            continue;
        }
        divs.push(m[t][t].abs());
        t += 1;
    }
    divs
}

fn random_int_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, density: f64) -> Vec<Vec<i64>> {
    (0..r)
        .map(|_| (0..c).map(|_| if rng.gen_bool(density) { rng.gen_range(-4..=4) } else { 0 }).collect())
        .collect()
}

fn to_matrix<F: Field>(f: &F, rows: &[Vec<i64>]) -> SparseMatrix<F::Elem> {
    let nc = rows.first().map_or(0, |r| r.len());
    let t = rows
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)))
        .map(|(i, j, v)| (i, j, f.from_i64(v)));
    SparseMatrix::from_triplets(f, rows.len(), nc, t).unwrap()
}

#[test]
fn random_6x4_rank_over_q_matches_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let rows = random_int_matrix(&mut rng, 6, 4, 0.4);
        let m = to_matrix(&Rationals, &rows);
        assert_eq!(rank_kernel_image(&Rationals, &m).rank, dense_rank_q(&rows));
    }
}

#[test]
fn consistent_system_over_f7_has_zero_residual() {
    let f = PrimeField::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let rows = random_int_matrix(&mut rng, 5, 7, 0.3);
        let m = to_matrix(&f, &rows);
        let x0 = SparseVec::from_terms(&f, (0..7).map(|i| (i, f.from_i64(rng.gen_range(0..7)))));
        let b = m.mul_vec(&f, &x0);
        let x = solve(&f, &m, &b).unwrap();
        assert_eq!(m.mul_vec(&f, &x), b);
    }
}

#[test]
fn fp_and_q_ranks_agree_without_p_torsion() {
    let p = 7u64;
    let f = PrimeField::new(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..80 {
        let rows = random_int_matrix(&mut rng, 4, 5, 0.5);
        let divs = smith_divisors(&rows);
        assert_eq!(divs.len(), dense_rank_q(&rows));
        let torsion_free = divs.iter().all(|d| !(d % BigInt::from(p)).is_zero());
        let rq = rank_kernel_image(&Rationals, &to_matrix(&Rationals, &rows)).rank;
        let rp = rank_kernel_image(&f, &to_matrix(&f, &rows)).rank;
        if torsion_free {
            assert_eq!(rq, rp);
            checked += 1;
        } else {
            assert!(rp < rq);
        }
    }
    assert!(checked > 40);
}

#[test]
fn decompositions_are_deterministic() {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let rows = random_int_matrix(&mut rng, 8, 8, 0.2);
    let m = to_matrix(&f, &rows);
    let a = rank_kernel_image(&f, &m);
    let b = rank_kernel_image(&f, &m);
    assert_eq!(a.kernel, b.kernel);
    assert_eq!(a.image, b.image);
}

proptest! {
    #[test]
    fn kernel_and_image_are_exact(seed in 0u64..10_000, r in 1usize..7, c in 1usize..7) {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = random_int_matrix(&mut rng, r, c, 0.35);
        let m = to_matrix(&f, &rows);
        for backend in [Backend::Sparse, Backend::Dense] {
            let d = rank_kernel_image_with(&f, &m, backend);
            prop_assert_eq!(d.rank + d.kernel.len(), c);
            for k in &d.kernel {
                prop_assert!(m.mul_vec(&f, k).is_zero());
            }
            for v in &d.image {
                let x = d.solve(v).unwrap();
                prop_assert_eq!(&m.mul_vec(&f, &x), v);
            }
        }
        let s = rank_kernel_image_with(&f, &m, Backend::Sparse);
        let dn = rank_kernel_image_with(&f, &m, Backend::Dense);
        prop_assert_eq!(s.rank, dn.rank);
    }
}
