use projline::coordinatization::verify_uniqueness;
use projline::scalar::{Field, NumField};
use projline::*;

#[test]
fn model_to_iso_through_json() {
    let line = PrimeLine::new(PrimeField::new(7).unwrap());
    let t =
        CandidateTable::from_json(&CandidateTable::from_model(&line).unwrap().to_json()).unwrap();
    assert!(validate_structure(&t, 3).passed());
    assert!(check_axioms(&t, &Axiom::ALL, 3).passed());

    let base = t.object_id("3:1").unwrap();
    let ft = FieldTable::from_json(&build_field(&t, base).unwrap().to_json()).unwrap();
    assert!(verify_field(&ft, 3).passed());
    assert!(matches!(
        classify_prime(&ft),
        Ok(Classification::Prime { p: 7, .. })
    ));

    let frame = Frame::parse(&t, "6:1,2:1,1:0").unwrap();
    let iso = coordinatize(&t, &ft, frame).unwrap();
    assert!(verify_iso(&t, &iso, 3).passed());
    assert!(verify_uniqueness(&t, &ft, frame).unwrap().passed());
    assert_eq!(iso.object_map[frame.f0].to_string(), "0:1");
}

#[test]
fn const_modulus_line_matches_runtime() {
    let fixed: ConstPrimeLine<11> = ProjectiveLine::new(NumField::new());
    let runtime = PrimeLine::new(PrimeField::new(11).unwrap());
    let a = fixed.points().unwrap();
    let b = runtime.points().unwrap();
    for quad in [[0, 1, 2, 3], [11, 4, 7, 9], [5, 11, 0, 10]] {
        let x = fixed
            .cross_ratio(&a[quad[0]], &a[quad[1]], &a[quad[2]], &a[quad[3]])
            .unwrap();
        let y = runtime
            .cross_ratio(&b[quad[0]], &b[quad[1]], &b[quad[2]], &b[quad[3]])
            .unwrap();
        assert_eq!(x.to_string(), y.to_string());
    }
}

#[test]
fn rational_line_has_no_table() {
    let q = RationalLine::new(Rationals::new());
    assert!(q.points().is_err());
    let [a, b, c] = q.standard_frame();
    let d = q.affine(q.field().parse("-1/2").unwrap());
    assert_eq!(
        q.tri_rapport(&a, &c, &d, &b, &a, &c).unwrap().to_string(),
        "-3"
    );
}
