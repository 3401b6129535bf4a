use linearr_wasm::{burau_json, monodromy_text, parse_word, scene};

#[test]
fn scene_of_c_plus() {
    let v = scene("C", "+").unwrap();
    // M1 is the line at infinity and the quintuple point [0:1:0] lies on it
    assert_eq!(v["lines"].as_array().unwrap().len(), 9);
    let points = v["points"].as_array().unwrap();
    assert!(points.iter().all(|p| p["lines"].as_array().unwrap().len() <= 3));
    assert!(!points.is_empty());
    assert!(scene("X", "+").is_err());
    assert!(scene("C", "0").is_err());
}

#[test]
fn scene_of_h_has_the_extra_line() {
    let v = scene("h", "-").unwrap();
    assert_eq!(v["lines"].as_array().unwrap().len(), 10);
}

#[test]
fn monodromy_lists_four_braids() {
    let text = monodromy_text("C", "+").unwrap();
    assert!(text.starts_with("strands: (L1,L3,L2,L4,L5)"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("x=")).count(), 4);
    assert!(text.contains("wiring diagram"));
}

#[test]
fn burau_of_identity_and_generator() {
    let id = burau_json("", 2).unwrap();
    assert_eq!(id["order"], 1);
    assert_eq!(id["det"], 1);
    let s = burau_json("1", 2).unwrap();
    assert_eq!(s["det"], 3);
    assert_eq!(s["pure"], false);
    let s2 = burau_json("1, 1", 2).unwrap();
    assert_eq!(s2["det"], 4);
    assert_eq!(s2["pure"], true);
    assert!(burau_json("1 x", 2).is_err());
    assert!(burau_json("5", 2).is_err());
    assert!(burau_json("1", 0).is_err());
}

#[test]
fn parse_word_accepts_commas_and_spaces() {
    assert_eq!(parse_word("1,-2  3").unwrap().letters(), &[1, -2, 3]);
}
