use num_rational::BigRational;
use num_traits::Zero;

use super::*;
use crate::duplicial::constant_object;

const Q: Field = Field::Rationals;

/// Rank by plain dense elimination over the rationals.
fn oracle_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let lead = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let k = &m[r][c] / &lead;
                for j in 0..cols {
                    let delta = &k * &m[rank][j];
                    m[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Tsygan bicomplex of the constant cyclic object `k`, written out by hand:
/// on row `q`, `b = [q even]`, `b′ = [q odd]`, `1 − (−1)^q t = 2[q odd]`,
/// `N = (q + 1)[q even]`.
fn oracle_hc_field(up_to: usize) -> Vec<usize> {
    let int = |n: i64| BigRational::from_integer(n.into());
    let entry = |col: usize, q: usize, tcol: usize, tq: usize| -> BigRational {
        if tcol == col && tq + 1 == q {
            return match (col % 2, q % 2) {
                (0, 0) => int(1),
                (0, _) => int(0),
                (_, 1) => int(-1),
                _ => int(0),
            };
        }
        if tcol + 1 == col && tq == q {
            return match (col % 2, q % 2) {
                (1, 1) => int(2),
                (1, _) => int(0),
                (_, 0) => int(q as i64 + 1),
                _ => int(0),
            };
        }
        BigRational::zero()
    };
    let diff = |n: usize| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|tcol| (0..=n).map(|col| entry(col, n - col, tcol, n - 1 - tcol)).collect())
            .collect()
    };
    let ranks: Vec<usize> = (1..=up_to + 1).map(|n| oracle_rank(diff(n))).collect();
    (0..=up_to)
        .map(|n| n + 1 - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect()
}

#[test]
fn hc_of_field_is_periodic() {
    let d = constant_object(Q, 5);
    let table = hc_table(&d, 4).unwrap();
    assert_eq!(table.dims, vec![1, 0, 1, 0, 1]);
    assert_eq!(table.dims, oracle_hc_field(4));
    assert!(!table.invariant_part);
    assert_eq!(table.to_string(), "1 0 1 0 1");
}

#[test]
fn hh_of_field() {
    let d = constant_object(Q, 4);
    assert_eq!(hh_table(&d, 3).unwrap().dims, vec![1, 0, 0, 0]);
    let c = hochschild_complex(&d).unwrap();
    assert!(c.differential(1).is_zero());
    assert!(c.differential(2).is_identity());
}

#[test]
fn insufficient_range() {
    let d = constant_object(Q, 2);
    assert!(matches!(hh_table(&d, 2), Err(Error::Range(_))));
    assert!(matches!(hc_table(&d, 2), Err(Error::Range(_))));
    assert_eq!(hc_table(&d, 0).unwrap().dims, vec![1]);
}

#[test]
fn small_characteristic_is_refused() {
    let d = constant_object(Field::prime(3).unwrap(), 4);
    assert!(matches!(cyclic_bicomplex(&d, 4), Err(Error::Domain(_))));
    let d = constant_object(Field::prime(7).unwrap(), 5);
    assert_eq!(hc_table(&d, 4).unwrap().dims, vec![1, 0, 1, 0, 1]);
}

#[test]
fn non_cyclic_input_is_refused() {
    let d = constant_object(Q, 2);
    let minus = d
        .map_operators((0..=2).map(|n| d.space(n).clone()).collect(), |m, from, to| {
            Ok(if from == to { m.scale(&Q.int(-1)) } else { m.clone() })
        })
        .unwrap();
    assert!(matches!(cyclic_bicomplex(&minus, 2), Err(Error::Cyclicity(0))));
}
