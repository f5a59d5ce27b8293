//! Frequency sets, convex hulls of conjugated frequencies, and the
//! leading-order asymptotics of the Nevanlinna functions T, m and N.
//!
//! Growth results are leading-coefficient only: a value means
//! `leading * r^q + o(r^q)`, or `d * log r` for polynomial inputs.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::QScalar;
use crate::symcore::ExpPoly;

/// Conjugated band frequencies of a transcendental exponential polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencySet {
    pub points: Vec<QScalar>,
    /// true iff the order-< q part F0 is not identically zero
    pub includes_zero: bool,
}

impl FrequencySet {
    /// Hull input including zero per the includes_zero rule.
    fn hull_points(&self) -> Vec<Complex64> {
        let mut pts: Vec<Complex64> = self.points.iter().map(|w| w.to_complex_float()).collect();
        if self.includes_zero {
            pts.push(Complex64::new(0.0, 0.0));
        }
        pts
    }

    /// Hull input with zero always adjoined (the set W_f^0).
    fn hull_points_with_zero(&self) -> Vec<Complex64> {
        let mut pts: Vec<Complex64> = self.points.iter().map(|w| w.to_complex_float()).collect();
        pts.push(Complex64::new(0.0, 0.0));
        pts
    }
}

/// Convex hull of a planar point set with its circumference. A segment
/// counts its length twice (closed traversal); a point has circumference 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Hull {
    pub vertices: Vec<Complex64>,
    pub circumference: f64,
}

/// `leading * r^q + o(r^q)`; `degenerate_log = Some(d)` means `d * log r`
/// for polynomial inputs (then leading = 0).
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthAsymptotic {
    pub q: usize,
    pub leading: f64,
    pub degenerate_log: Option<usize>,
}

pub fn frequency_set(f: &ExpPoly) -> Result<FrequencySet> {
    let view = f.normalize()?;
    let points = view.frequencies().iter().map(|w| w.conj()).collect();
    Ok(FrequencySet { points, includes_zero: !view.f0().is_zero() })
}

/// Andrew monotone chain; returns counterclockwise vertices.
pub fn hull(points: &[Complex64]) -> Hull {
    assert!(!points.is_empty(), "hull of an empty set");
    let mut pts: Vec<(f64, f64)> = points.iter().map(|p| (p.re, p.im)).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() == 1 {
        return Hull { vertices: vec![Complex64::new(pts[0].0, pts[0].1)], circumference: 0.0 };
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let mut vertices: Vec<(f64, f64)> = lower;
    vertices.extend(upper);
    if vertices.len() < 2 {
        // collinear input: monotone chain collapses to the two extremes
        vertices = vec![pts[0], *pts.last().unwrap()];
    }
    let n = vertices.len();
    let mut circumference = 0.0;
    for i in 0..n {
        let (x0, y0) = vertices[i];
        let (x1, y1) = vertices[(i + 1) % n];
        circumference += ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt();
    }
    Hull {
        vertices: vertices.into_iter().map(|(x, y)| Complex64::new(x, y)).collect(),
        circumference,
    }
}

/// T(r,f) = C(co(W_f^0)) r^q / (2 pi) + o(r^q) for transcendental f;
/// d log r for a polynomial of degree d.
pub fn characteristic_asymptotic(f: &ExpPoly) -> GrowthAsymptotic {
    match frequency_set(f) {
        Ok(ws) => GrowthAsymptotic {
            q: f.order(),
            leading: hull(&ws.hull_points_with_zero()).circumference / (2.0 * PI),
            degenerate_log: None,
        },
        Err(_) => {
            let d = f.as_poly().and_then(|p| p.degree()).unwrap_or(0);
            GrowthAsymptotic { q: 0, leading: 0.0, degenerate_log: Some(d) }
        }
    }
}

/// m(r, f/g) = (C(co(W_h)) - C(co(W_g))) r^q / (2 pi) + o(r^q), with
/// W_h the union of the band frequencies of f and g (zero included when
/// either slow part survives). The denominator may be a nonzero constant,
/// in which case this reduces to the characteristic of f.
pub fn proximity_quotient_asymptotic(f: &ExpPoly, g: &ExpPoly) -> Result<GrowthAsymptotic> {
    let fs = frequency_set(f)?;
    if !g.is_transcendental() {
        match g.as_constant() {
            Some(c) if !c.is_zero() => return Ok(characteristic_asymptotic(f)),
            _ => return Err(Error::NotTranscendental),
        }
    }
    let gs = frequency_set(g)?;
    let qf = f.order();
    let qg = g.order();
    if qf != qg {
        return Err(Error::OrderMismatch(qf, qg));
    }
    let mut union = fs.points.clone();
    for w in &gs.points {
        if !union.contains(w) {
            union.push(w.clone());
        }
    }
    let wh = FrequencySet { points: union, includes_zero: fs.includes_zero || gs.includes_zero };
    let leading =
        (hull(&wh.hull_points()).circumference - hull(&gs.hull_points()).circumference) / (2.0 * PI);
    Ok(GrowthAsymptotic { q: qf, leading: leading.max(0.0), degenerate_log: None })
}

/// N(r,0,f) = C(co(W_f)) r^q / (2 pi) + o(r^q), with zero in W_f only
/// when F0 is not identically zero.
pub fn zero_counting_asymptotic(f: &ExpPoly) -> Result<GrowthAsymptotic> {
    let ws = frequency_set(f)?;
    Ok(GrowthAsymptotic {
        q: f.order(),
        leading: hull(&ws.hull_points()).circumference / (2.0 * PI),
        degenerate_log: None,
    })
}
