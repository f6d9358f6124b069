use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn render_pascal() {
    let v = parse(sdr_wasm::render("builtin:pascal", 4));
    assert_eq!(v["rows"][3], serde_json::json!(["1", "3", "3", "1"]));
}

#[test]
fn check_reports_cells_on_failure() {
    let v = parse(sdr_wasm::check("builtin:pascal", 5, 10));
    assert_eq!(v["verdict"], "pass");
    assert!(v["cells"].as_array().unwrap().is_empty());

    let v = parse(sdr_wasm::check("builtin:aerated", 4, 10));
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["violations_total"], 18);
    let cells = v["cells"].as_array().unwrap();
    assert!(!cells.is_empty());
    assert!(cells.iter().all(|c| c[1].as_u64() <= c[0].as_u64() && c[0].as_u64() < Some(10)));

    let v = parse(sdr_wasm::check("file-free:nope", 3, 5));
    assert!(v["error"].as_str().unwrap().starts_with("triangle:"));
}

#[test]
fn minor_of_aerated_breaks_order_three() {
    let m = parse(sdr_wasm::minor("builtin:aerated", 2, 8));
    let rows = m["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0], serde_json::json!(["1"]));
}

#[test]
fn row_cap() {
    let v = parse(sdr_wasm::render("builtin:pascal", 41));
    assert!(v["error"].as_str().unwrap().starts_with("rows:"));
}
