//! Integration contours as polylines.

use crate::cplx::{abs, dist};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use rug::{Complex, Float};

/// Ordered polyline of waypoints; `closed` paths implicitly join the last
/// waypoint back to the first (no repeated endpoint).
#[derive(Clone, Debug)]
pub struct Path {
    points: Vec<Complex>,
    closed: bool,
}

impl Path {
    pub fn new(points: Vec<Complex>, closed: bool) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Parse("path needs at least two waypoints".into()));
        }
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Parse("consecutive waypoints must be distinct".into()));
            }
        }
        if closed && points.first() == points.last() {
            return Err(Error::Parse("closed path must not repeat its endpoint".into()));
        }
        Ok(Path { points, closed })
    }

    pub fn open(points: Vec<Complex>) -> Result<Self> {
        Self::new(points, false)
    }

    pub fn closed(points: Vec<Complex>) -> Result<Self> {
        Self::new(points, true)
    }

    pub fn from_f64(points: &[(f64, f64)], closed: bool, ctx: &Ctx) -> Result<Self> {
        Self::new(points.iter().map(|&(re, im)| ctx.c(re, im)).collect(), closed)
    }

    pub fn points(&self) -> &[Complex] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> &Complex {
        &self.points[0]
    }

    pub fn last(&self) -> &Complex {
        self.points.last().unwrap()
    }

    /// Straight segments making up the polyline.
    pub fn segments(&self) -> Vec<(Complex, Complex)> {
        let mut segs: Vec<(Complex, Complex)> = self
            .points
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        if self.closed {
            segs.push((self.points.last().unwrap().clone(), self.points[0].clone()));
        }
        segs
    }

    pub fn arclength(&self, ctx: &Ctx) -> Float {
        let mut total = ctx.zero();
        for (a, b) in self.segments() {
            total += dist(&a, &b);
        }
        total
    }

    /// Minimum distance from `p` to the polyline.
    pub fn distance_to(&self, p: &Complex, ctx: &Ctx) -> Float {
        let mut best: Option<Float> = None;
        for (a, b) in self.segments() {
            let d = crate::cplx::dist_point_segment(p, &a, &b, ctx);
            best = Some(match best {
                None => d,
                Some(cur) => {
                    if d < cur {
                        d
                    } else {
                        cur
                    }
                }
            });
        }
        best.unwrap()
    }

    /// Capsule-shaped closed loop around the segment [a, b] at the given
    /// clearance, oriented counterclockwise. End caps are polygonal arcs.
    pub fn capsule(a: &Complex, b: &Complex, clearance: &Float, ctx: &Ctx) -> Result<Path> {
        let dir = Complex::with_val(ctx.prec(), b - a);
        let len = abs(&dir);
        let t_hat = Complex::with_val(ctx.prec(), &dir / &len);
        let n_hat = Complex::with_val(ctx.prec(), &t_hat * ctx.i()); // left normal
        let m_hat = Complex::with_val(ctx.prec(), &n_hat * ctx.f(-1)); // right normal
        let cap_steps = 6usize;
        let pi = ctx.pi();
        // counterclockwise: right side a->b, half-turn around b through +t,
        // left side b->a, half-turn around a through -t
        let mut pts: Vec<Complex> = Vec::new();
        pts.push(Complex::with_val(ctx.prec(), a + Complex::with_val(ctx.prec(), &m_hat * clearance)));
        pts.push(Complex::with_val(ctx.prec(), b + Complex::with_val(ctx.prec(), &m_hat * clearance)));
        for k in 1..cap_steps {
            let ang = Float::with_val(ctx.prec(), &pi * k as u32) / cap_steps as u32;
            let rot = Complex::with_val(ctx.prec(), (ctx.zero(), ang)).exp();
            let v = Complex::with_val(ctx.prec(), &m_hat * rot * clearance);
            pts.push(Complex::with_val(ctx.prec(), b + v));
        }
        pts.push(Complex::with_val(ctx.prec(), b + Complex::with_val(ctx.prec(), &n_hat * clearance)));
        pts.push(Complex::with_val(ctx.prec(), a + Complex::with_val(ctx.prec(), &n_hat * clearance)));
        for k in 1..cap_steps {
            let ang = Float::with_val(ctx.prec(), &pi * k as u32) / cap_steps as u32;
            let rot = Complex::with_val(ctx.prec(), (ctx.zero(), ang)).exp();
            let v = Complex::with_val(ctx.prec(), &n_hat * rot * clearance);
            pts.push(Complex::with_val(ctx.prec(), a + v));
        }
        Path::closed(pts)
    }
}
