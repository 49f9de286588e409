//! Small configurations in the plane and in three-space.

use crate::error::{Error, Result};
use crate::field::{Elem, GaloisField};
use crate::projective::{ProjectiveSpace, Subspace, DEFAULT_BUDGET};

use super::LineSet;

fn unit(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; n];
    v[i] = Elem::ONE;
    v
}

fn require_dim(space: &ProjectiveSpace, d: usize) -> Result<()> {
    if space.dim() != d {
        return Err(Error::InvalidParameter(format!("construction needs PG({d},q), got PG({},q)", space.dim())));
    }
    Ok(())
}

/// The coordinate lines `x_0 = 0`, `x_1 = 0`, `x_2 = 0`.
pub fn plane_triangle(space: &ProjectiveSpace) -> Result<LineSet> {
    require_dim(space, 2)?;
    let lines = (0..3)
        .map(|i| space.cut_out(&[unit(3, i)]).map(|s| s.expect("hyperplane")))
        .collect::<Result<Vec<_>>>()?;
    LineSet::new(space, "triangle", lines)
}

/// Three lines of the Fano plane through `(1,0,0)`.
pub fn fano_concurrent() -> Result<LineSet> {
    let space = ProjectiveSpace::new(2, GaloisField::new(2, 1)?)?;
    let e = |i| unit(3, i);
    let lines = vec![
        space.line(&e(0), &e(1))?,
        space.line(&e(0), &e(2))?,
        space.line(&e(0), &[Elem::ZERO, Elem::ONE, Elem::ONE])?,
    ];
    LineSet::new(&space, "fano-concurrent", lines)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pg3Variant {
    /// Three lines of one ruling of `x_0 x_3 = x_1 x_2`.
    ThreeRuling,
    /// The ruling lines plus a line missing the quadric.
    PlusExterior,
    /// The ruling lines plus two lines meeting the quadric with no common opposite line.
    PlusTwoSecants,
}

fn on_quadric(f: &GaloisField, v: &[Elem]) -> bool {
    f.mul(v[0], v[3]) == f.mul(v[1], v[2])
}

/// Points of the hyperbolic quadric `x_0 x_3 = x_1 x_2`.
pub fn quadric_points(space: &ProjectiveSpace) -> Result<Vec<Subspace>> {
    require_dim(space, 3)?;
    let f = space.field();
    Ok(space.points().filter(|p| on_quadric(f, &p.rows()[0])).collect())
}

/// Ruling line with parameter `(a : b)`: span of `(a,0,b,0)` and `(0,a,0,b)`.
fn ruling_line(space: &ProjectiveSpace, a: Elem, b: Elem) -> Result<Subspace> {
    let z = Elem::ZERO;
    space.line(&[a, z, b, z], &[z, a, z, b])
}

/// Opposite ruling line with parameter `(c : d)`: span of `(c,d,0,0)` and `(0,0,c,d)`.
fn opposite_line(space: &ProjectiveSpace, c: Elem, d: Elem) -> Result<Subspace> {
    let z = Elem::ZERO;
    space.line(&[c, d, z, z], &[z, z, c, d])
}

fn opposite_ruling(space: &ProjectiveSpace) -> Result<Vec<Subspace>> {
    let f = space.field();
    let mut out = vec![opposite_line(space, Elem::ZERO, Elem::ONE)?];
    for d in f.elements() {
        out.push(opposite_line(space, Elem::ONE, d)?);
    }
    Ok(out)
}

pub fn pg3_examples(space: &ProjectiveSpace, variant: Pg3Variant) -> Result<LineSet> {
    require_dim(space, 3)?;
    let f = space.field();
    let (one, zero) = (Elem::ONE, Elem::ZERO);
    // ruling parameters 0, 1, infinity
    let mut lines = vec![ruling_line(space, one, zero)?, ruling_line(space, one, one)?, ruling_line(space, zero, one)?];
    let meets_quadric = |l: &Subspace| space.points_on(l).iter().any(|p| on_quadric(f, &p.rows()[0]));
    let inside_quadric = |l: &Subspace| space.points_on(l).iter().all(|p| on_quadric(f, &p.rows()[0]));
    let name = match variant {
        Pg3Variant::ThreeRuling => "pg3-three-ruling",
        Pg3Variant::PlusExterior => {
            let ext = space
                .lines(DEFAULT_BUDGET)?
                .find(|l| !meets_quadric(l))
                .ok_or_else(|| Error::SearchExhausted(format!("a line exterior to the quadric over GF({})", f.order())))?;
            lines.push(ext);
            "pg3-plus-exterior"
        }
        Pg3Variant::PlusTwoSecants => {
            let opposite = opposite_ruling(space)?;
            let candidates: Vec<(Subspace, Vec<bool>)> = space
                .lines(DEFAULT_BUDGET)?
                .filter(|l| meets_quadric(l) && !inside_quadric(l))
                .map(|l| {
                    let hits = opposite.iter().map(|o| space.meet(&l, o).map(|m| m.is_some())).collect::<Result<Vec<_>>>();
                    hits.map(|h| (l, h))
                })
                .collect::<Result<_>>()?;
            let pair = candidates.iter().enumerate().find_map(|(i, (l4, h4))| {
                candidates[i + 1..]
                    .iter()
                    .find(|(_, h5)| !h4.iter().zip(h5).any(|(&a, &b)| a && b))
                    .map(|(l5, _)| (l4.clone(), l5.clone()))
            });
            let (l4, l5) = pair.ok_or_else(|| {
                Error::SearchExhausted(format!("two quadric-meeting lines with no common opposite line over GF({})", f.order()))
            })?;
            lines.push(l4);
            lines.push(l5);
            "pg3-plus-two-secants"
        }
    };
    LineSet::new(space, name, lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(d: usize, q: &str) -> ProjectiveSpace {
        ProjectiveSpace::new(d, GaloisField::parse(q).unwrap()).unwrap()
    }

    #[test]
    fn triangle_lines_pairwise_meet_in_distinct_points() {
        let s = pg(2, "3");
        let t = plane_triangle(&s).unwrap();
        let l = t.lines();
        let p01 = s.meet(&l[0], &l[1]).unwrap().unwrap();
        let p02 = s.meet(&l[0], &l[2]).unwrap().unwrap();
        let p12 = s.meet(&l[1], &l[2]).unwrap().unwrap();
        assert!(p01 != p02 && p01 != p12 && p02 != p12);
        let common = s.meet(&p01, &l[2]).unwrap();
        assert!(common.is_none());
        assert!(plane_triangle(&pg(3, "3")).is_err());
    }

    #[test]
    fn fano_lines_share_a_point() {
        let t = fano_concurrent().unwrap();
        let s = pg(2, "2");
        let p = s.point(&[Elem::ONE, Elem::ZERO, Elem::ZERO]).unwrap();
        for l in t.lines() {
            assert!(p.is_contained_in(s.field(), l));
        }
    }

    #[test]
    fn quadric_size_and_rulings() {
        for q in ["2", "3", "4", "5"] {
            let s = pg(3, q);
            let qq = s.q() as usize;
            assert_eq!(quadric_points(&s).unwrap().len(), (qq + 1) * (qq + 1));
            let three = pg3_examples(&s, Pg3Variant::ThreeRuling).unwrap();
            let l = three.lines();
            for i in 0..3 {
                for j in i + 1..3 {
                    assert!(s.meet(&l[i], &l[j]).unwrap().is_none());
                }
            }
            for o in opposite_ruling(&s).unwrap() {
                for r in l {
                    assert!(s.meet(&o, r).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn exterior_line_over_gf3() {
        let s = pg(3, "3");
        let ex = pg3_examples(&s, Pg3Variant::PlusExterior).unwrap();
        assert_eq!(ex.len(), 4);
        let quad = quadric_points(&s).unwrap();
        assert_eq!(quad.len(), 16);
        for p in &quad {
            assert!(!p.is_contained_in(s.field(), &ex.lines()[3]));
        }
    }

    #[test]
    fn two_secants_have_no_common_opposite_line() {
        let s = pg(3, "3");
        let ex = pg3_examples(&s, Pg3Variant::PlusTwoSecants).unwrap();
        assert_eq!(ex.len(), 5);
        for o in opposite_ruling(&s).unwrap() {
            let a = s.meet(&o, &ex.lines()[3]).unwrap().is_some();
            let b = s.meet(&o, &ex.lines()[4]).unwrap().is_some();
            assert!(!(a && b));
        }
    }
}
