//! C ABI over the expoly library: opaque handles, integer status codes and
//! a thread-local last-error message. The matching declarations live in
//! `include/expoly.h`, which is maintained by hand and checked against the
//! exported symbols by the test suite.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};

use expoly::textio::{parse_expoly, print_expoly};
use expoly::{duality, growth, ode, Error, ExpPoly, ScalarContext};
use num_complex::Complex64;

pub const EXPOLY_OK: c_int = 0;
pub const EXPOLY_ERR_SYNTAX: c_int = 1;
pub const EXPOLY_ERR_MATH: c_int = 2;
pub const EXPOLY_ERR_INVALID: c_int = 3;
pub const EXPOLY_ERR_NULL: c_int = 4;

/// Opaque scalar-field context handle.
pub struct ExpolyContext(ScalarContext);
/// Opaque expression handle.
pub struct ExpolyExpr(ExpPoly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let clean: String = msg.chars().filter(|c| *c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap());
}

fn code_for(e: &Error) -> c_int {
    match e {
        Error::Syntax { .. } => EXPOLY_ERR_SYNTAX,
        Error::InvalidParameter(_) | Error::RadicandMismatch { .. } => EXPOLY_ERR_INVALID,
        _ => EXPOLY_ERR_MATH,
    }
}

fn fail(e: &Error) -> c_int {
    set_error(&e.to_string());
    code_for(e)
}

fn null_arg(what: &str) -> c_int {
    set_error(&format!("null argument: {what}"));
    EXPOLY_ERR_NULL
}

macro_rules! non_null {
    ($p:ident) => {
        match unsafe { $p.as_ref() } {
            Some(r) => r,
            None => return null_arg(stringify!($p)),
        }
    };
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn expoly_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn expoly_context_new(radicand: u64, out: *mut *mut ExpolyContext) -> c_int {
    if out.is_null() {
        return null_arg("out");
    }
    match ScalarContext::new(radicand) {
        Ok(ctx) => {
            unsafe { *out = Box::into_raw(Box::new(ExpolyContext(ctx))) };
            EXPOLY_OK
        }
        Err(e) => fail(&e),
    }
}

#[no_mangle]
pub extern "C" fn expoly_context_free(ctx: *mut ExpolyContext) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

#[no_mangle]
pub extern "C" fn expoly_expr_free(expr: *mut ExpolyExpr) {
    if !expr.is_null() {
        drop(unsafe { Box::from_raw(expr) });
    }
}

#[no_mangle]
pub extern "C" fn expoly_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[no_mangle]
pub extern "C" fn expoly_parse(
    ctx: *const ExpolyContext,
    text: *const c_char,
    out: *mut *mut ExpolyExpr,
) -> c_int {
    let ctx = non_null!(ctx);
    if out.is_null() {
        return null_arg("out");
    }
    if text.is_null() {
        return null_arg("text");
    }
    let text = match unsafe { CStr::from_ptr(text) }.to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("text is not valid UTF-8");
            return EXPOLY_ERR_SYNTAX;
        }
    };
    match parse_expoly(text, &ctx.0) {
        Ok(f) => {
            unsafe { *out = Box::into_raw(Box::new(ExpolyExpr(f))) };
            EXPOLY_OK
        }
        Err(e) => fail(&e),
    }
}

#[no_mangle]
pub extern "C" fn expoly_print(expr: *const ExpolyExpr, out: *mut *mut c_char) -> c_int {
    let expr = non_null!(expr);
    if out.is_null() {
        return null_arg("out");
    }
    let printed = print_expoly(&expr.0);
    unsafe { *out = CString::new(printed).unwrap().into_raw() };
    EXPOLY_OK
}

fn binary_op(
    a: *const ExpolyExpr,
    b: *const ExpolyExpr,
    out: *mut *mut ExpolyExpr,
    op: impl Fn(&ExpPoly, &ExpPoly) -> ExpPoly,
) -> c_int {
    let a = non_null!(a);
    let b = non_null!(b);
    if out.is_null() {
        return null_arg("out");
    }
    if a.0.radicand() != b.0.radicand() {
        set_error("operands come from different scalar fields");
        return EXPOLY_ERR_INVALID;
    }
    unsafe { *out = Box::into_raw(Box::new(ExpolyExpr(op(&a.0, &b.0)))) };
    EXPOLY_OK
}

#[no_mangle]
pub extern "C" fn expoly_add(
    a: *const ExpolyExpr,
    b: *const ExpolyExpr,
    out: *mut *mut ExpolyExpr,
) -> c_int {
    binary_op(a, b, out, |x, y| x.add(y))
}

#[no_mangle]
pub extern "C" fn expoly_sub(
    a: *const ExpolyExpr,
    b: *const ExpolyExpr,
    out: *mut *mut ExpolyExpr,
) -> c_int {
    binary_op(a, b, out, |x, y| x.sub(y))
}

#[no_mangle]
pub extern "C" fn expoly_mul(
    a: *const ExpolyExpr,
    b: *const ExpolyExpr,
    out: *mut *mut ExpolyExpr,
) -> c_int {
    binary_op(a, b, out, |x, y| x.mul(y))
}

#[no_mangle]
pub extern "C" fn expoly_differentiate(
    expr: *const ExpolyExpr,
    out: *mut *mut ExpolyExpr,
) -> c_int {
    let expr = non_null!(expr);
    if out.is_null() {
        return null_arg("out");
    }
    unsafe { *out = Box::into_raw(Box::new(ExpolyExpr(expr.0.differentiate()))) };
    EXPOLY_OK
}

#[no_mangle]
pub extern "C" fn expoly_order(expr: *const ExpolyExpr, out: *mut usize) -> c_int {
    let expr = non_null!(expr);
    if out.is_null() {
        return null_arg("out");
    }
    unsafe { *out = expr.0.order() };
    EXPOLY_OK
}

#[no_mangle]
pub extern "C" fn expoly_evaluate(
    expr: *const ExpolyExpr,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> c_int {
    let expr = non_null!(expr);
    if out_re.is_null() || out_im.is_null() {
        return null_arg("out");
    }
    let v = expr.0.evaluate(Complex64::new(re, im));
    unsafe {
        *out_re = v.re;
        *out_im = v.im;
    }
    EXPOLY_OK
}

/// Leading coefficient of T(r, f): on success `*leading * r^q` is the
/// asymptotic; `*degenerate_log_degree` is -1 unless f is a polynomial, in
/// which case T grows like that degree times log r.
#[no_mangle]
pub extern "C" fn expoly_characteristic_leading(
    expr: *const ExpolyExpr,
    leading: *mut f64,
    degenerate_log_degree: *mut i64,
) -> c_int {
    let expr = non_null!(expr);
    if leading.is_null() || degenerate_log_degree.is_null() {
        return null_arg("out");
    }
    let g = growth::characteristic_asymptotic(&expr.0);
    unsafe {
        *leading = g.leading;
        *degenerate_log_degree = g.degenerate_log.map(|d| d as i64).unwrap_or(-1);
    }
    EXPOLY_OK
}

#[no_mangle]
pub extern "C" fn expoly_are_dual(
    f: *const ExpolyExpr,
    g: *const ExpolyExpr,
    out: *mut c_int,
) -> c_int {
    let f = non_null!(f);
    let g = non_null!(g);
    if out.is_null() {
        return null_arg("out");
    }
    match duality::are_dual(&f.0, &g.0) {
        Ok(v) => {
            unsafe { *out = v as c_int };
            EXPOLY_OK
        }
        Err(e) => fail(&e),
    }
}

#[no_mangle]
pub extern "C" fn expoly_are_strongly_dual(
    f: *const ExpolyExpr,
    g: *const ExpolyExpr,
    out: *mut c_int,
) -> c_int {
    let f = non_null!(f);
    let g = non_null!(g);
    if out.is_null() {
        return null_arg("out");
    }
    match duality::are_strongly_dual(&f.0, &g.0) {
        Ok(v) => {
            unsafe { *out = v as c_int };
            EXPOLY_OK
        }
        Err(e) => fail(&e),
    }
}

/// Check f'' + a f' + b f = 0 exactly; `*out` is 1 when f solves it.
#[no_mangle]
pub extern "C" fn expoly_is_second_order_solution(
    a: *const ExpolyExpr,
    b: *const ExpolyExpr,
    f: *const ExpolyExpr,
    out: *mut c_int,
) -> c_int {
    let a = non_null!(a);
    let b = non_null!(b);
    let f = non_null!(f);
    if out.is_null() {
        return null_arg("out");
    }
    let eq = ode::LinearODE::second_order(a.0.clone(), b.0.clone());
    match eq.is_solution(&f.0) {
        Ok(v) => {
            unsafe { *out = v as c_int };
            EXPOLY_OK
        }
        Err(e) => fail(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn make(ctx: *const ExpolyContext, s: &str) -> *mut ExpolyExpr {
        let text = CString::new(s).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(expoly_parse(ctx, text.as_ptr(), &mut out), EXPOLY_OK);
        out
    }

    #[test]
    fn round_trip_and_arithmetic() {
        let mut ctx = ptr::null_mut();
        assert_eq!(expoly_context_new(1, &mut ctx), EXPOLY_OK);
        let f = make(ctx, "1 + exp(z)");
        let g = make(ctx, "exp(z)");
        let mut sum = ptr::null_mut();
        assert_eq!(expoly_add(f, g, &mut sum), EXPOLY_OK);
        let mut printed = ptr::null_mut();
        assert_eq!(expoly_print(sum, &mut printed), EXPOLY_OK);
        let s = unsafe { CStr::from_ptr(printed) }.to_str().unwrap().to_string();
        assert_eq!(s, "1 + 2*exp(z)");
        expoly_string_free(printed);
        let mut order = 0usize;
        assert_eq!(expoly_order(sum, &mut order), EXPOLY_OK);
        assert_eq!(order, 1);
        expoly_expr_free(f);
        expoly_expr_free(g);
        expoly_expr_free(sum);
        expoly_context_free(ctx);
    }

    #[test]
    fn syntax_error_reports_code_and_message() {
        let mut ctx = ptr::null_mut();
        assert_eq!(expoly_context_new(1, &mut ctx), EXPOLY_OK);
        let text = CString::new("exp(q)").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(expoly_parse(ctx, text.as_ptr(), &mut out), EXPOLY_ERR_SYNTAX);
        let msg = unsafe { CStr::from_ptr(expoly_last_error_message()) }.to_str().unwrap();
        assert!(msg.contains("syntax"), "message was {msg}");
        expoly_context_free(ctx);
    }

    #[test]
    fn null_arguments_are_rejected() {
        let mut out = ptr::null_mut();
        assert_eq!(expoly_parse(ptr::null(), ptr::null(), &mut out), EXPOLY_ERR_NULL);
        assert_eq!(expoly_context_new(1, ptr::null_mut()), EXPOLY_ERR_NULL);
    }

    #[test]
    fn duality_and_verification() {
        let mut ctx = ptr::null_mut();
        assert_eq!(expoly_context_new(1, &mut ctx), EXPOLY_OK);
        let f = make(ctx, "1 + z*exp(z) + 2*exp(3*z)");
        let g = make(ctx, "1 - exp(-z)");
        let mut flag = 0;
        assert_eq!(expoly_are_strongly_dual(f, g, &mut flag), EXPOLY_OK);
        assert_eq!(flag, 1);

        let a = make(ctx, "exp(-z)");
        let b = make(ctx, "-4");
        let sol = make(ctx, "1 + 4*exp(z) + 6*exp(2*z)");
        assert_eq!(expoly_is_second_order_solution(a, b, sol, &mut flag), EXPOLY_OK);
        assert_eq!(flag, 1);

        let mut leading = 0.0;
        let mut degen = 0i64;
        assert_eq!(expoly_characteristic_leading(sol, &mut leading, &mut degen), EXPOLY_OK);
        assert!((leading - 2.0 / std::f64::consts::PI).abs() < 1e-9);
        assert_eq!(degen, -1);

        for p in [f, g, a, b, sol] {
            expoly_expr_free(p);
        }
        expoly_context_free(ctx);
    }
}
