use hcyclic_web::{detect_json, rotate_json, shuffled_sample, spectrum_json};

#[test]
fn spectrum_lists_match_in_length() {
    for seed in 0..20 {
        let v = spectrum_json(3, 4, seed).unwrap();
        let n = v["n"].as_u64().unwrap() as usize;
        assert_eq!(v["predicted"].as_array().unwrap().len(), n);
        assert_eq!(v["direct"].as_array().unwrap().len(), n);
    }
    assert!(spectrum_json(0, 3, 1).is_err());
    assert!(spectrum_json(3, 99, 1).is_err());
}

#[test]
fn detect_finds_three_classes_after_shuffle() {
    for seed in 0..10 {
        let v = detect_json(&shuffled_sample(seed), 1e-9).unwrap();
        assert_eq!(v["cyclic_index"], 3);
        let classes = v["partitions"]["3"].as_array().unwrap();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.as_array().unwrap().len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 2, 3]);
    }
    assert!(detect_json("[1, 2", 1e-9).is_err());
}

#[test]
fn rotation_residual_is_small() {
    for k in -3..6 {
        let v = rotate_json(4, 3, k, 11).unwrap();
        assert!(v["residual"].as_f64().unwrap() < 1e-9);
    }
}
