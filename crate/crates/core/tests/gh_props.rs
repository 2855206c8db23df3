use nncurv::approx::{nearest_preimage, Correspondence, LemmaKind};
use nncurv::gh::{distortion, gh_approx_check, prokhorov_distance, DiscreteMeasure};
use nncurv::intrinsic::{MetricSample, Site, SpaceKind};
use nncurv::Vec3;
use proptest::prelude::*;

fn plane(pts: &[(f64, f64)]) -> MetricSample {
    let sites: Vec<Site> = pts
        .iter()
        .map(|&(x, y)| Site::at(Vec3::new(x, y, 0.0)))
        .collect();
    let n = sites.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] = (sites[i].pos - sites[j].pos).norm();
        }
    }
    MetricSample::new(SpaceKind::DiscFlat, 0, sites, d).unwrap()
}

fn points(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n)
}

fn measure(n: usize) -> impl Strategy<Value = DiscreteMeasure> {
    prop::collection::vec((0..n, 0.05..1.0f64), 1..5).prop_map(move |atoms| {
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        DiscreteMeasure::new(atoms.into_iter().map(|(i, m)| (i, m / total)).collect(), n).unwrap()
    })
}

fn corr(a: &MetricSample, b: &MetricSample, f: Vec<usize>) -> Correspondence {
    let g = nearest_preimage(b, &f);
    Correspondence::new(LemmaKind::Composed, a.clone(), b.clone(), f, g, false).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prokhorov_is_a_metric(p in points(6), mu in measure(6), nu in measure(6), la in measure(6)) {
        let s = plane(&p);
        let mn = prokhorov_distance(&s, &mu, &nu).unwrap();
        let nm = prokhorov_distance(&s, &nu, &mu).unwrap();
        let ml = prokhorov_distance(&s, &mu, &la).unwrap();
        let ln = prokhorov_distance(&s, &la, &nu).unwrap();
        prop_assert!((mn - nm).abs() <= 1e-8);
        prop_assert!(mn <= ml + ln + 1e-8);
        prop_assert!(mn <= 1.0 + 1e-9);
        prop_assert!(prokhorov_distance(&s, &mu, &mu).unwrap() <= 1e-12);
    }

    #[test]
    fn composition_subadditive(
        pa in points(7), pb in points(6), pc in points(5),
        f1 in prop::collection::vec(0..6usize, 7), f2 in prop::collection::vec(0..5usize, 6),
    ) {
        let (a, b, c) = (plane(&pa), plane(&pb), plane(&pc));
        let composed: Vec<usize> = f1.iter().map(|&i| f2[i]).collect();
        let d1 = distortion(&corr(&a, &b, f1)).0;
        let d2 = distortion(&corr(&b, &c, f2)).0;
        let d12 = distortion(&corr(&a, &c, composed)).0;
        prop_assert!(d12 <= d1 + d2 + 1e-12);
    }

    #[test]
    fn approx_check_monotone(pa in points(6), pb in points(6), f in prop::collection::vec(0..6usize, 6), eps in 0.0..3.0f64, more in 0.0..1.0f64) {
        let c = corr(&plane(&pa), &plane(&pb), f);
        if gh_approx_check(&c, eps).passes {
            prop_assert!(gh_approx_check(&c, eps + more).passes);
        }
    }
}
