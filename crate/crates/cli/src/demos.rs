//! Fixed demonstrations of two facts about real algebraic sets, each with
//! the outcome it must produce.

use knotrep_algebra::{
    check_dimension_lemma, image_closure_demo, parse_ideal_text, parse_polynomial, Budget, Ideal, PolynomialMap,
};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct DemoResult {
    pub name: &'static str,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

fn ideal(text: &str) -> Ideal {
    parse_ideal_text(text).expect("demo ideal parses")
}

fn generators_text(i: &Ideal) -> String {
    let body: Vec<String> = i.generators().iter().map(|g| g.to_string_with(i.names(), i.order())).collect();
    format!("({})", body.join(", "))
}

fn image(map: &[&str], source: &str, budget: &Budget) -> String {
    let src = ideal(source);
    let coords = map.iter().map(|m| parse_polynomial(m, src.names()).expect("demo map parses")).collect();
    let phi = PolynomialMap::new(src.nvars(), coords).expect("demo map is well formed");
    match image_closure_demo(&phi, &src, budget) {
        Ok(i) => generators_text(&i),
        Err(e) => format!("error: {e}"),
    }
}

fn lemma(ix: &str, iy: &str, irreducible: bool, budget: &Budget) -> String {
    match check_dimension_lemma(&ideal(ix), &ideal(iy), irreducible, budget) {
        Ok(r) => format!("dims {} vs {}: {}", r.dim_x, r.dim_y, r.message()),
        Err(e) => format!("error: {e}"),
    }
}

fn case(name: &'static str, expected: &str, observed: String) -> DemoResult {
    DemoResult { name, expected: expected.to_string(), ok: observed == expected, observed }
}

pub fn run_demos(budget: &Budget) -> Vec<DemoResult> {
    let hyperbola = "vars: x y\nx*y - 1\n";
    let projection = match ideal(hyperbola).eliminate(&[1], budget) {
        Ok(i) => generators_text(&i),
        Err(e) => format!("error: {e}"),
    };
    let circle = ideal("vars: x y\nx^2 + y^2\n");
    let circle_dim = match circle.dimension_report(budget) {
        Ok(r) => format!("dim {} caveat {}", r.dimension, r.real_radical_caveat),
        Err(e) => format!("error: {e}"),
    };
    vec![
        case("hyperbola projected to x (elimination)", "()", projection),
        case("closure of the image of (x,y) -> x on xy = 1", "()", image(&["x"], hyperbola, budget)),
        case("closure of the image of (x,y) -> x - y on xy = 1", "()", image(&["x - y"], hyperbola, budget)),
        case("closure of the identity image of x = 0", "(y0)", image(&["x"], "vars: x\nx\n", budget)),
        case(
            "xy = 1 containing the point (1, 1)",
            "dims 1 vs 0: proper subset, dimensions differ",
            lemma(hyperbola, "vars: x y\nx*y - 1\nx - 1\n", true, budget),
        ),
        case(
            "xy = 1 inside itself",
            "dims 1 vs 1: dimensions equal, sets equal",
            lemma(hyperbola, hyperbola, true, budget),
        ),
        case(
            "xy = 0 asserted irreducible, containing x = 0",
            "dims 1 vs 1: irreducibility assertion violated",
            lemma("vars: x y\nx*y\n", "vars: x y\nx\n", true, budget),
        ),
        case("x^2 + y^2 = 0 over the rationals", "dim 1 caveat true", circle_dim),
    ]
}
