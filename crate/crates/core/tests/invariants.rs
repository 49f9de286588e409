use higgledy::linalg;
use higgledy::pluecker::{codim2_to_pluecker, line_to_pluecker, pairing, plucker_relations_hold, pluecker_decompose};
use higgledy::report::LineSetDoc;
use higgledy::verification::{wronskian_degree_check, WronskianMode};
use higgledy::{Elem, GaloisField, LineSet, ProjectiveSpace};
use proptest::prelude::*;

const ORDERS: [&str; 10] = ["2", "3", "4", "5", "7", "8", "9", "16", "25", "27"];

fn field() -> impl Strategy<Value = GaloisField> {
    prop::sample::select(&ORDERS[..]).prop_map(|s| GaloisField::parse(s).unwrap())
}

fn elems(f: &GaloisField, n: usize) -> impl Strategy<Value = Vec<Elem>> {
    prop::collection::vec((0..f.order()).prop_map(Elem), n)
}

fn field_and_matrix(rows: usize, cols: usize) -> impl Strategy<Value = (GaloisField, Vec<Vec<Elem>>)> {
    field().prop_flat_map(move |f| {
        let m = prop::collection::vec(elems(&f, cols), rows);
        (Just(f), m)
    })
}

fn space_and_lines(q: &'static str, dim: usize, count: usize) -> impl Strategy<Value = (ProjectiveSpace, Vec<Vec<Vec<Elem>>>)> {
    let s = ProjectiveSpace::new(dim, GaloisField::parse(q).unwrap()).unwrap();
    let f = s.field().clone();
    (Just(s), prop::collection::vec(prop::collection::vec(elems(&f, dim + 1), 2), count))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, v) in field_and_matrix(1, 3)) {
        let (a, b, c) = (v[0][0], v[0][1], v[0][2]);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem(0));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.from_int(1));
            prop_assert_eq!(f.pow(a, f.order() as u64 - 1), f.from_int(1));
        }
    }

    #[test]
    fn rref_ignores_row_operations((f, m) in field_and_matrix(3, 5), i in 0usize..3, j in 0usize..3, c in 1u32..1000) {
        let mut a = m.clone();
        let reference = linalg::rref_in_place(&f, &mut a);
        let c = Elem(c % (f.order() - 1) + 1);
        let mut b = m;
        if i != j {
            let src = b[j].clone();
            for (x, y) in b[i].iter_mut().zip(&src) {
                *x = f.mul_add(*x, c, *y);
            }
        } else {
            b[i] = b[i].iter().map(|&x| f.mul(x, c)).collect();
        }
        b.swap(0, 2);
        prop_assert_eq!(linalg::rref_in_place(&f, &mut b), reference);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn pluecker_round_trip((s, ls) in space_and_lines("9", 4, 1)) {
        if let Ok(l) = s.line(&ls[0][0], &ls[0][1]) {
            let p = line_to_pluecker(&s, &l).unwrap();
            prop_assert!(plucker_relations_hold(s.field(), &p));
            prop_assert_eq!(pluecker_decompose(&s, &p).unwrap(), l);
        }
    }

    #[test]
    fn pairing_detects_incidence((s, ls) in space_and_lines("5", 3, 2)) {
        let (Ok(h), Ok(l)) = (s.line(&ls[0][0], &ls[0][1]), s.line(&ls[1][0], &ls[1][1])) else {
            return Ok(());
        };
        let ph = codim2_to_pluecker(&s, &h).unwrap();
        let pl = line_to_pluecker(&s, &l).unwrap();
        let meets = s.meet(&h, &l).unwrap().is_some();
        prop_assert_eq!(pairing(s.field(), &ph, &pl).unwrap().is_zero(), meets);
    }

    #[test]
    fn line_set_document_round_trips((s, ls) in space_and_lines("8", 3, 4)) {
        let mut lines = Vec::new();
        for pair in &ls {
            if let Ok(l) = s.line(&pair[0], &pair[1]) {
                if !lines.contains(&l) {
                    lines.push(l);
                }
            }
        }
        let set = LineSet::new(&s, "random", lines).unwrap();
        let json = serde_json::to_string(&LineSetDoc::new(&s, &set)).unwrap();
        let (s2, set2) = serde_json::from_str::<LineSetDoc>(&json).unwrap().to_line_set().unwrap();
        prop_assert_eq!(s2.q(), s.q());
        prop_assert_eq!(set2.lines(), set.lines());
    }

    #[test]
    fn wronskian_degree_within_bound(basis in prop::collection::vec(elems(&GaloisField::new(13, 1).unwrap(), 5), 3)) {
        let f = GaloisField::new(13, 1).unwrap();
        prop_assume!(linalg::rank(&f, &basis) == 3);
        for mode in [WronskianMode::Frs, WronskianMode::Mult] {
            let r = wronskian_degree_check(&f, &basis, mode, 4, 3).unwrap();
            prop_assert!(r.bound_holds);
            prop_assert!(r.holds(), "{:?}", r);
        }
    }
}
