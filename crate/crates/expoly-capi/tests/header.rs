//! Keeps the handwritten header in sync with the exported surface.

const HEADER: &str = include_str!("../include/expoly.h");

const EXPORTED: &[&str] = &[
    "expoly_last_error_message",
    "expoly_context_new",
    "expoly_context_free",
    "expoly_parse",
    "expoly_print",
    "expoly_expr_free",
    "expoly_string_free",
    "expoly_add",
    "expoly_sub",
    "expoly_mul",
    "expoly_differentiate",
    "expoly_order",
    "expoly_evaluate",
    "expoly_characteristic_leading",
    "expoly_are_dual",
    "expoly_are_strongly_dual",
    "expoly_is_second_order_solution",
];

#[test]
fn header_declares_every_export() {
    for name in EXPORTED {
        assert!(HEADER.contains(&format!("{name}(")), "{name} missing from expoly.h");
    }
}

#[test]
fn header_declares_every_status_code() {
    for code in ["EXPOLY_OK", "EXPOLY_ERR_SYNTAX", "EXPOLY_ERR_MATH", "EXPOLY_ERR_INVALID", "EXPOLY_ERR_NULL"] {
        assert!(HEADER.contains(&format!("#define {code} ")), "{code} missing from expoly.h");
    }
}
