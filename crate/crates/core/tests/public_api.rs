use sefe_cplanar::io::{
    clustered_to_json, instance_to_json, parse_clustered, parse_instance, to_pretty,
};
use sefe_cplanar::{
    certify, compute_regions, extract_order, place_vertices_flat, place_vertices_nonflat,
    ptbe_to_sefe, random_instance, reduce, roundtrip, sefe_to_ptbe, solve, verify_cplanarity,
    verify_planarity, CPlanarDrawing, GadgetMap, Page, Shape, SolveOptions, Variant,
};

#[test]
fn files_roundtrip_through_json() {
    let inst = random_instance(7, 3, 3, 5, Shape::RandomTree);
    assert_eq!(parse_instance(&instance_to_json(&inst)).unwrap(), inst);
    for variant in [Variant::NonFlat, Variant::Flat] {
        let (c, gm) = reduce(&inst, variant).unwrap();
        assert_eq!(parse_clustered(&clustered_to_json(&c)).unwrap(), c);
        let back: GadgetMap = serde_json::from_str(&to_pretty(&gm)).unwrap();
        assert_eq!(back, gm);
    }
}

#[test]
fn drawing_survives_serialization_and_still_verifies() {
    for seed in 0..20 {
        let inst = random_instance(6, 2, 2, seed, Shape::RandomTree);
        let Some(w) = solve(&inst, SolveOptions::default()).unwrap().witness else {
            continue;
        };
        let (c, gm) = reduce(&inst, Variant::NonFlat).unwrap();
        let xy = place_vertices_nonflat(&c, &gm, &w).unwrap();
        let cpd = CPlanarDrawing::new(xy.clone(), compute_regions(&xy, &c));
        let back: CPlanarDrawing = serde_json::from_str(&to_pretty(&cpd)).unwrap();
        assert_eq!(back, cpd);
        assert!(verify_planarity(&back.coords, &c.graph).is_empty());
        assert!(verify_cplanarity(&back, &c).is_empty());
        let o = extract_order(&back, &gm).unwrap();
        assert!(certify(&inst, &o).unwrap().accepted);

        let (cf, gmf) = reduce(&inst, Variant::Flat).unwrap();
        let flat = place_vertices_flat(&cf, &gmf, &w).unwrap();
        assert_eq!(extract_order(&flat, &gmf).unwrap(), o);
    }
}

#[test]
fn sefe_form_converts_both_ways() {
    let inst = random_instance(6, 3, 2, 9, Shape::RandomTree);
    let sefe = ptbe_to_sefe(&inst).unwrap();
    let back = sefe_to_ptbe(&sefe).unwrap();
    assert_eq!(back.page(Page::One), inst.page(Page::One));
    assert_eq!(back.page(Page::Two), inst.page(Page::Two));
    assert_eq!(back.leaf_count(), inst.leaf_count());
}

#[test]
fn roundtrip_report_is_consistent_for_yes_and_no() {
    let mut seen = (false, false);
    for seed in 0..40 {
        let inst = random_instance(6, 5, 5, seed, Shape::RandomTree);
        let r = roundtrip(&inst, Variant::Flat, SolveOptions::default()).unwrap();
        assert!(r.report.consistent, "{:?}", r.report.stages);
        if r.report.decision {
            seen.0 = true;
        } else {
            seen.1 = true;
        }
    }
    assert!(seen.0 && seen.1);
}
