use super::algebra::{Algebra, Coalgebra, HopfAlgebra};
use crate::error::{domain_err, Result};
use crate::exactla::{Field, LinMap, Space};

/// The one-dimensional algebra `k`.
pub fn field_algebra(field: Field) -> Algebra {
    let k = Space::unit();
    Algebra::from_products(field, &k, |_, _| vec![(0, field.one())], vec![(0, field.one())])
        .expect("k is an algebra")
}

/// The trivial Hopf algebra `k`.
pub fn field_hopf(field: Field) -> HopfAlgebra {
    let a = field_algebra(field);
    HopfAlgebra::new(&a, &Coalgebra::trivial(field), &a.id()).expect("k is a Hopf algebra")
}

/// The group algebra of a finite group given by its multiplication table,
/// with group-like comultiplication and `S(g) = g⁻¹`.
pub fn group_algebra(field: Field, name: &str, labels: &[&str], table: &[Vec<usize>]) -> Result<HopfAlgebra> {
    let n = labels.len();
    if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return domain_err(format!("group table must be {n}x{n} with entries below {n}"));
    }
    let Some(e) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
        return domain_err("group table has no identity");
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return domain_err(format!(
                        "group table is not associative at ({}, {}, {})",
                        labels[x], labels[y], labels[z]
                    ));
                }
            }
        }
    }
    let mut inverse = vec![0; n];
    for x in 0..n {
        match (0..n).find(|&y| table[x][y] == e && table[y][x] == e) {
            Some(y) => inverse[x] = y,
            None => return domain_err(format!("{} has no inverse", labels[x])),
        }
    }
    let carrier = Space::new(name, labels.iter().map(|s| s.to_string()).collect())?;
    let algebra = Algebra::from_products(field, &carrier, |i, j| vec![(table[i][j], field.one())], vec![(e, field.one())])?;
    let coalgebra = Coalgebra::group_like(field, &carrier);
    let antipode = LinMap::from_basis_map(field, &carrier, &carrier, |g| inverse[g]);
    HopfAlgebra::new(&algebra, &coalgebra, &antipode)
}

/// `k C_n` with basis `e, g, g2, …`.
pub fn cyclic_group(field: Field, n: usize) -> HopfAlgebra {
    let labels: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    group_algebra(field, &format!("C{n}"), &refs, &table).expect("cyclic group")
}

/// `k S_3` on the permutations of three letters in one-line notation.
pub fn symmetric_group3(field: Field) -> HopfAlgebra {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let labels = ["e", "s12", "s23", "s13", "c123", "c132"];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
    let table: Vec<Vec<usize>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let (p, q) = (perms[i], perms[j]);
                    index([p[q[0]], p[q[1]], p[q[2]]])
                })
                .collect()
        })
        .collect();
    group_algebra(field, "S3", &labels, &table).expect("symmetric group")
}

/// `k[x]/(xⁿ)` with basis `1, x, x2, …`.
pub fn truncated_poly(field: Field, n: usize) -> Result<Algebra> {
    if n == 0 {
        return domain_err("truncated polynomial algebra needs n >= 1");
    }
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x{i}"),
        })
        .collect();
    let carrier = Space::new(&format!("k[x]/x{n}"), labels)?;
    Algebra::from_products(
        field,
        &carrier,
        |i, j| if i + j < n { vec![(i + j, field.one())] } else { Vec::new() },
        vec![(0, field.one())],
    )
}

/// `n × n` matrices with basis `E11, E12, …` (row-major).
pub fn matrix_algebra(field: Field, n: usize) -> Result<Algebra> {
    if n == 0 {
        return domain_err("matrix algebra needs n >= 1");
    }
    let labels = (0..n * n)
        .map(|k| format!("E{}{}", k / n + 1, k % n + 1))
        .collect();
    let carrier = Space::new(&format!("M{n}"), labels)?;
    Algebra::from_products(
        field,
        &carrier,
        |a, b| {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            if j == k {
                vec![(i * n + l, field.one())]
            } else {
                Vec::new()
            }
        },
        (0..n).map(|i| (i * n + i, field.one())).collect(),
    )
}
