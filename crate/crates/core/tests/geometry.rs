use sprout_core::canon::isomorphic;
use sprout_core::fixtures;
use sprout_core::geometry::{attractor_points, detect_intersections, dist, extract_sprout, PlanarIfs};

fn systems() -> Vec<(PlanarIfs, sprout_core::Sprout)> {
    vec![
        (PlanarIfs::parse(fixtures::INTERVAL_IFS).unwrap(), fixtures::interval2()),
        (PlanarIfs::parse(fixtures::VICSEK_IFS).unwrap(), fixtures::vicsek5()),
    ]
}

#[test]
fn extraction_round_trips() {
    for (ifs, hand) in systems() {
        let result = extract_sprout(&ifs, 10, 1e-9).unwrap();
        assert!(isomorphic(&result.sprout, &hand).is_some());
    }
}

#[test]
fn permuted_maps_give_the_same_sprout() {
    let ifs = PlanarIfs::parse(fixtures::VICSEK_IFS).unwrap();
    let mut maps = ifs.maps().to_vec();
    maps.rotate_left(2);
    let permuted = PlanarIfs::new(maps).unwrap();
    let result = extract_sprout(&permuted, 10, 1e-9).unwrap();
    assert!(isomorphic(&result.sprout, &fixtures::vicsek5()).is_some());
}

#[test]
fn contacts_agree_with_their_addresses() {
    let tol = 1e-9;
    for (ifs, _) in systems() {
        let table = detect_intersections(&ifs, 10, tol);
        let result = extract_sprout(&ifs, 10, tol).unwrap();
        for (i, j, x) in table.contacts() {
            let rec = result
                .points
                .iter()
                .filter(|p| p.critical)
                .min_by(|a, b| dist([a.x, a.y], x).total_cmp(&dist([b.x, b.y], x)))
                .unwrap();
            let firsts: Vec<u32> = rec.addresses.iter().map(|a| a.symbol(0)).collect();
            assert!(firsts.contains(&(i as u32)) && firsts.contains(&(j as u32)));
            for a in &rec.addresses {
                assert!(dist(ifs.evaluate(a), x) <= 10.0 * tol, "{a} vs {x:?}");
            }
        }
    }
}

#[test]
fn clouds_are_nested() {
    for (ifs, _) in systems() {
        let (_, radius) = ifs.invariant_ball();
        for depth in 1..5 {
            let coarse = attractor_points(&ifs, depth).unwrap();
            let fine = attractor_points(&ifs, depth + 1).unwrap();
            let slack = ifs.max_ratio().powi(depth as i32) * 2.0 * radius + 1e-12;
            for p in fine {
                let near = coarse.iter().map(|&q| dist(p, q)).fold(f64::INFINITY, f64::min);
                assert!(near <= slack);
            }
        }
    }
}
