//! Exact scalars, spaces, and sparse-backed linear maps.

mod echelon;
mod field;
mod linmap;
mod space;

pub use echelon::{Echelon, Rref, SparseVec};
pub use field::{Field, Scalar};
pub use linmap::{densify, normalize, LinMap};
pub use space::Space;

/// `V / span(W)` with its canonical projection and a section.
///
/// The quotient basis is the set of standard basis vectors of `V` that are
/// not pivots of the reduced spanning set; the section sends each quotient
/// basis vector back to that representative.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub space: Space,
    pub projection: LinMap,
    pub section: LinMap,
}

pub fn quotient(field: Field, v: &Space, w: &[SparseVec]) -> Quotient {
    let mut ech = Echelon::new(field, v.dim());
    for x in w {
        ech.insert(x);
    }
    quotient_from_rref(field, v, ech.into_rref())
}

pub fn quotient_from_rref(field: Field, v: &Space, rref: Rref) -> Quotient {
    let free = rref.free_cols().to_vec();
    let mut position = vec![usize::MAX; v.dim()];
    for (i, &j) in free.iter().enumerate() {
        position[j] = i;
    }
    let labels: Vec<String> = free.iter().map(|&j| format!("[{}]", v.label(j))).collect();
    let space = Space::new(&format!("{}/~", v.name()), labels)
        .unwrap_or_else(|_| Space::indexed(&format!("{}/~", v.name()), free.len()));
    let projection = LinMap::from_fn(field, v, &space, |c| {
        if position[c] != usize::MAX {
            vec![(position[c], field.one())]
        } else {
            rref.reduce(&[(c, field.one())])
                .into_iter()
                .map(|(j, x)| (position[j], x))
                .collect()
        }
    });
    let section = LinMap::from_basis_map(field, &space, v, |i| free[i]);
    Quotient {
        space,
        projection,
        section,
    }
}
