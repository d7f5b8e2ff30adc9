//! Recipe-level checks mirroring the documented examples.

#[allow(dead_code)]
#[path = "../src/recipes.rs"]
mod recipes;

use recipes::{construct_report, gr_report, Recipe};

#[test]
fn tower_recipe_reports_layers_and_mu() {
    let r = Recipe::EMinusTower { chi: 2, n: 3, p: 5 };
    let doc = construct_report::<5>(&r).unwrap();
    assert_eq!(doc["socle_layers"].as_array().unwrap().len(), 4);
    assert_eq!(doc["uniserial"], serde_json::json!(true));
    let g = gr_report::<5>(&r).unwrap();
    assert_eq!(g["mu"], serde_json::json!(0));
    assert_eq!(g["category_C"]["annihilating_J_power"], serde_json::json!(1));
}

#[test]
fn expected_graded_recipe_mu_four() {
    // two α-adjacent pairs: {χ, χα⁻¹, χα³, χα²} at p = 5
    let r = Recipe::ExpectedGraded {
        weights: vec![2, 2 - 4, 2 + 12, 2 + 8],
        p: 5,
    };
    let g = gr_report::<5>(&r).unwrap();
    assert_eq!(g["mu"], serde_json::json!(4));
    assert_eq!(g["pure"], serde_json::json!(true));
}

#[test]
fn induced_recipe_socle_line() {
    let r = Recipe::Induced { chi: 1, p: 5 };
    let doc = construct_report::<5>(&r).unwrap();
    let layers = doc["socle_layers"].as_array().unwrap();
    assert_eq!(layers[0]["dim"], serde_json::json!(1));
    assert_eq!(doc["dim"], serde_json::json!(25));
}

#[test]
fn recipe_json_round_trip() {
    let text = r#"{ "construct": "e_minus_tower", "chi": 2, "n": 3, "p": 5 }"#;
    let r: Recipe = serde_json::from_str(text).unwrap();
    assert!(matches!(r, Recipe::EMinusTower { chi: 2, n: 3, p: 5 }));
    let back = serde_json::to_string(&r).unwrap();
    let again: Recipe = serde_json::from_str(&back).unwrap();
    assert!(matches!(again, Recipe::EMinusTower { chi: 2, n: 3, p: 5 }));
}
