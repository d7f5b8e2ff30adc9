//! Recipe files: JSON descriptions of representations and graded modules,
//! with socle-diagram and multiplicity reports.

use qmodrep_core::constructions::{e_minus, e_plus, e_tower, induced_rep, rep_v, rep_w};
use qmodrep_core::error::Error;
use qmodrep_core::graded_a::{expand_std, expected_graded};
use qmodrep_core::grlambda::{graded_module, j_filtration_multiplicity};
use qmodrep_core::grouprep::{char_rep, Character, SmoothRep};
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "construct", rename_all = "snake_case")]
pub enum Recipe {
    Character { chi: i64, p: u64 },
    EMinus { chi: i64, p: u64 },
    EPlus { chi: i64, p: u64 },
    EMinusTower { chi: i64, n: u64, p: u64 },
    EPlusTower { chi: i64, n: u64, p: u64 },
    Induced { chi: i64, p: u64 },
    W { chi: i64, p: u64 },
    V { chi: i64, p: u64 },
    ExpectedGraded { weights: Vec<i64>, p: u64 },
}

impl Recipe {
    pub fn p(&self) -> u64 {
        match self {
            Recipe::Character { p, .. }
            | Recipe::EMinus { p, .. }
            | Recipe::EPlus { p, .. }
            | Recipe::EMinusTower { p, .. }
            | Recipe::EPlusTower { p, .. }
            | Recipe::Induced { p, .. }
            | Recipe::W { p, .. }
            | Recipe::V { p, .. }
            | Recipe::ExpectedGraded { p, .. } => *p,
        }
    }
}

fn build_rep<const P: u64>(recipe: &Recipe) -> Result<SmoothRep<P>, Error> {
    Ok(match recipe {
        Recipe::Character { chi, .. } => char_rep(&Character::<P>::new(*chi)),
        Recipe::EMinus { chi, .. } => e_minus(&Character::<P>::new(*chi)),
        Recipe::EPlus { chi, .. } => e_plus(&Character::<P>::new(*chi)),
        Recipe::EMinusTower { chi, n, .. } => e_tower(false, &Character::<P>::new(*chi), *n)?,
        Recipe::EPlusTower { chi, n, .. } => e_tower(true, &Character::<P>::new(*chi), *n)?,
        Recipe::Induced { chi, .. } => induced_rep(&Character::<P>::new(*chi)).rep,
        Recipe::W { chi, .. } => rep_w(&Character::<P>::new(*chi)),
        Recipe::V { chi, .. } => rep_v(&Character::<P>::new(*chi)).rep,
        Recipe::ExpectedGraded { .. } => {
            return Err(Error::BadRecipe(
                "expected_graded is a graded-module recipe; use the gr command".into(),
            ))
        }
    })
}

/// Socle diagram and layer data for a constructed representation.
pub fn construct_report<const P: u64>(recipe: &Recipe) -> Result<serde_json::Value, Error> {
    let rep = build_rep::<P>(recipe)?;
    let layers = rep.socle_layers();
    let mut diagram = String::new();
    for (i, l) in layers.iter().enumerate() {
        let chars: Vec<String> = l.chars.iter().map(|a| format!("xi^{a}")).collect();
        diagram.push_str(&format!("layer {i}: dim {}: {}\n", l.dim, chars.join(" + ")));
    }
    Ok(json!({
        "dim": rep.dim,
        "level": rep.level,
        "socle_layers": layers,
        "diagram": diagram,
        "uniserial": layers.iter().all(|l| l.dim == 1),
    }))
}

/// Graded-module report: pieces, μ, and category-𝒞 membership.
pub fn gr_report<const P: u64>(recipe: &Recipe) -> Result<serde_json::Value, Error> {
    match recipe {
        Recipe::ExpectedGraded { weights, .. } => {
            let ws: Vec<Character<P>> = weights.iter().map(|&a| Character::new(a)).collect();
            let pres = expected_graded(&ws)?;
            let m = expand_std(&pres);
            let (m0, m1) = m.multiplicity()?;
            Ok(json!({
                "hilbert": m.dims,
                "m_p0": m0,
                "m_p1": m1,
                "mu": m0 + m1,
                "pure": m.is_pure(),
            }))
        }
        _ => {
            let rep = build_rep::<P>(recipe)?;
            let g = graded_module(&rep).pad_to(12);
            let f = j_filtration_multiplicity(&g, 8)?;
            Ok(json!({
                "gr_dims": g.dims,
                "characters": g.chars,
                "m_p0": f.m_p0,
                "m_p1": f.m_p1,
                "mu": f.mu,
                "category_C": { "annihilating_J_power": f.n_j },
            }))
        }
    }
}

pub fn run_recipe(path: &str, graded: bool) -> Result<serde_json::Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadRecipe(format!("{path}: {e}")))?;
    let recipe: Recipe = serde_json::from_str(&text)
        .map_err(|e| Error::BadRecipe(format!("{path}: {e}")))?;
    match recipe.p() {
        5 => {
            if graded {
                gr_report::<5>(&recipe)
            } else {
                construct_report::<5>(&recipe)
            }
        }
        7 => {
            if graded {
                gr_report::<7>(&recipe)
            } else {
                construct_report::<7>(&recipe)
            }
        }
        11 => {
            if graded {
                gr_report::<11>(&recipe)
            } else {
                construct_report::<11>(&recipe)
            }
        }
        13 => {
            if graded {
                gr_report::<13>(&recipe)
            } else {
                construct_report::<13>(&recipe)
            }
        }
        p => Err(Error::UnsupportedPrime(p)),
    }
}
