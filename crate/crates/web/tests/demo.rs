use gcorr_web::{chernoff_curve_impl, h_heatmap_impl, main_theorem_impl, membership_grid_impl, parse_shape};

#[test]
fn shapes_parse() {
    assert!(parse_shape("ball 1").unwrap().contains(&[0.7, 0.7]).unwrap());
    assert!(!parse_shape("box 1 0.2").unwrap().contains(&[0.5, 0.3]).unwrap());
    let e = parse_shape("ellipse 2 0.5 90").unwrap();
    assert!(e.contains(&[0.0, 1.9]).unwrap());
    assert!(!e.contains(&[1.9, 0.0]).unwrap());
    for bad in ["", "torus 1", "ball", "box 1", "ball x", "ball -1"] {
        assert!(parse_shape(bad).is_err(), "{bad}");
    }
}

#[test]
fn chernoff_curve_dominates() {
    let c = chernoff_curve_impl(5, 20).unwrap();
    assert_eq!(c.len(), 60);
    assert!(c.chunks(3).all(|t| t[1] <= t[2]));
    assert_eq!(c[57], 1.0);
}

#[test]
fn grid_marks_both_sets() {
    let g = membership_grid_impl("ball 1", "box 0.5 2", 8, 2.0).unwrap();
    assert_eq!(g.len(), 64);
    assert!(g.contains(&3) && g.contains(&2) && g.contains(&0));
    // symmetric under the point reflection of the grid
    assert!((0..64).all(|i| g[i] == g[63 - i]));
}

#[test]
fn main_theorem_in_the_plane() {
    let pi6 = std::f64::consts::FRAC_PI_6;
    let r = main_theorem_impl("ellipse 1.2 0.5 30", "ball 0.8", pi6, pi6, 20_000, 3).unwrap();
    assert_ne!(r.verdict(), "violated");
    assert!(r.lhs_low <= r.lhs && r.lhs <= r.lhs_high);
    assert!(main_theorem_impl("ball 1", "ball 1", 2.0, pi6, 1000, 0).is_err());
}

#[test]
fn heatmap_peaks_at_the_centre() {
    let pi4 = std::f64::consts::FRAC_PI_4;
    let h = h_heatmap_impl("ball 1", "box 1 0.6", pi4, pi4, 5, 1.0, 4000, 1).unwrap();
    assert_eq!(h.len(), 25);
    let centre = h[12];
    assert!(h.iter().all(|v| *v <= centre + 0.02));
    assert_eq!(h[0], h[24]);
}
