use crate::error::{Error, Result};
use crate::field::{Elem, GaloisField};
use crate::projective::{ProjectiveSpace, Subspace};

use super::LineSet;

/// `(1, t, t^2, ..., t^d)`.
pub fn moment_point(space: &ProjectiveSpace, t: Elem) -> Vec<Elem> {
    let f = space.field();
    (0..space.n()).map(|i| f.pow(t, i as u64)).collect()
}

/// `(0, 1, 2t, ..., d t^(d-1))` with integer coefficients mapped into the field.
fn moment_derivative(space: &ProjectiveSpace, t: Elem) -> Vec<Elem> {
    let f = space.field();
    (0..space.n())
        .map(|i| if i == 0 { Elem::ZERO } else { f.mul(f.from_int(i as i64), f.pow(t, i as u64 - 1)) })
        .collect()
}

/// Tangent of the moment curve at the affine point with parameter `t`.
pub fn moment_tangent(space: &ProjectiveSpace, t: Elem) -> Subspace {
    space
        .line(&moment_point(space, t), &moment_derivative(space, t))
        .expect("a(t) starts with 1 and its derivative with 0")
}

/// Tangent at the point `(0, ..., 0, 1)`: the line through `e_{d-1}` and `e_d`.
/// Never part of the constructed families.
pub fn tangent_at_infinity(space: &ProjectiveSpace) -> Subspace {
    let n = space.n();
    let mut a = vec![Elem::ZERO; n];
    let mut b = vec![Elem::ZERO; n];
    a[n - 2] = Elem::ONE;
    b[n - 1] = Elem::ONE;
    space.line(&a, &b).expect("distinct unit vectors")
}

/// Raw coordinates `(j - i) t^(i+j-1)` in lexicographic pair order.
pub fn tangent_pluecker_closed_form(space: &ProjectiveSpace, t: Elem) -> Vec<Elem> {
    let f = space.field();
    crate::pluecker::pairs(space.n())
        .map(|(i, j)| f.mul(f.from_int(j as i64 - i as i64), f.pow(t, (i + j - 1) as u64)))
        .collect()
}

/// An injection `{0, ..., d} -> GF(q)` with `φ(0) = 0` and `φ(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Injection {
    values: Vec<Elem>,
}

impl Injection {
    pub fn new(f: &GaloisField, values: Vec<Elem>) -> Result<Self> {
        if values.len() < 2 || values[0] != Elem::ZERO || values[1] != Elem::ONE {
            return Err(Error::InvalidParameter("injection must start with 0, 1".into()));
        }
        if values.iter().any(|v| v.0 >= f.order()) {
            return Err(Error::InvalidParameter("injection value outside the field".into()));
        }
        let mut sorted = values.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != values.len() {
            return Err(Error::InvalidParameter("injection values must be distinct".into()));
        }
        Ok(Injection { values })
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn get(&self, k: usize) -> Elem {
        self.values[k]
    }
}

/// `k mod p` when the characteristic exceeds d, otherwise 0, 1 and then the
/// earliest unused elements in enumeration order.
pub fn default_injection(space: &ProjectiveSpace) -> Result<Injection> {
    let f = space.field();
    let d = space.dim();
    if (f.order() as usize) <= d {
        return Err(Error::InvalidParameter(format!(
            "GF({}) has too few elements for an injection of {{0..{d}}}",
            f.order()
        )));
    }
    let values = if f.characteristic() as usize > d {
        (0..=d).map(|k| f.from_int(k as i64)).collect()
    } else {
        let mut values = vec![Elem::ZERO, Elem::ONE];
        values.extend(f.elements().skip(2).take(d - 1));
        values
    };
    Injection::new(f, values)
}

fn diverted_direction(space: &ProjectiveSpace, t: Elem, phi: &Injection) -> Vec<Elem> {
    let f = space.field();
    (0..space.n())
        .map(|j| if j == 0 { Elem::ZERO } else { f.mul(phi.get(j), f.pow(t, j as u64 - 1)) })
        .collect()
}

fn check_injection(space: &ProjectiveSpace, phi: &Injection) -> Result<()> {
    if phi.values.len() != space.n() {
        return Err(Error::DimensionMismatch { expected: space.n(), found: phi.values.len() });
    }
    Ok(())
}

/// The line through `a(t)` and `b(t) = (0, 1, φ(2) t, ..., φ(d) t^(d-1))`.
pub fn diverted_tangent(space: &ProjectiveSpace, t: Elem, phi: &Injection) -> Result<Subspace> {
    check_injection(space, phi)?;
    space.line(&moment_point(space, t), &diverted_direction(space, t, phi))
}

/// Raw coordinates `(φ(j) - φ(i)) t^(i+j-1)`.
pub fn diverted_pluecker_closed_form(space: &ProjectiveSpace, t: Elem, phi: &Injection) -> Vec<Elem> {
    let f = space.field();
    crate::pluecker::pairs(space.n())
        .map(|(i, j)| f.mul(f.sub(phi.get(j), phi.get(i)), f.pow(t, (i + j - 1) as u64)))
        .collect()
}

/// Diverted tangents at the first `count` field elements.
pub fn higgledy_family(space: &ProjectiveSpace, count: usize, phi: &Injection) -> Result<LineSet> {
    let f = space.field();
    if count > f.order() as usize {
        return Err(Error::InvalidParameter(format!(
            "{count} lines requested but GF({}) has only {} parameters",
            f.order(),
            f.order()
        )));
    }
    let ts: Vec<Elem> = f.elements().take(count).collect();
    let lines = ts.iter().map(|&t| diverted_tangent(space, t, phi)).collect::<Result<Vec<_>>>()?;
    LineSet::new(space, "diverted-tangents", lines)?.with_t_values(ts)
}
