use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::PlaneError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point { x: a[0], y: a[1] }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn checked(x: f64, y: f64) -> Result<Self, PlaneError> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(PlaneError::NonFinite)
        }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Rotated a quarter turn counterclockwise.
    pub fn perp(self) -> Point {
        Point { x: -self.y, y: self.x }
    }

    pub fn unit(self) -> Point {
        self * (1.0 / self.norm())
    }

    pub fn from_angle(theta: f64) -> Point {
        Point { x: theta.cos(), y: theta.sin() }
    }

    pub fn rotate_about(self, center: Point, theta: f64) -> Point {
        let d = self - center;
        let (s, c) = theta.sin_cos();
        center + Point { x: c * d.x - s * d.y, y: s * d.x + c * d.y }
    }

    /// Mirror image across the line through `a` and `b`.
    pub fn reflect(self, a: Point, b: Point) -> Point {
        let u = (b - a).unit();
        let d = self - a;
        a + u * (2.0 * d.dot(u)) - d
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point { x: self.x + o.x, y: self.y + o.y }
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point { x: self.x - o.x, y: self.y - o.y }
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point { x: self.x * s, y: self.y * s }
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point { x: -self.x, y: -self.y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self, PlaneError> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(PlaneError::NonFinite);
        }
        Ok(Circle { center, radius })
    }
}

/// Oriented line through `point` with unit `direction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub point: Point,
    pub direction: Point,
}

impl Line {
    pub fn through(a: Point, b: Point) -> Line {
        Line { point: a, direction: (b - a).unit() }
    }

    /// Positive on the left of the direction.
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.direction.cross(p - self.point)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Intersection {
    None,
    Tangent(Point),
    /// The point left of the center line `c1 -> c2` comes first.
    Two(Point, Point),
}

/// Intersection of two circles; tangency is detected within `tol` relative
/// to the radii.
pub fn circle_intersection(c1: &Circle, c2: &Circle, tol: f64) -> Result<Intersection, PlaneError> {
    let delta = c2.center - c1.center;
    let d = delta.norm();
    let scale = 1f64.max(c1.radius).max(c2.radius);
    if d <= tol * scale {
        return Err(PlaneError::CoincidentCenters);
    }
    let u = delta * (1.0 / d);
    let a = (c1.radius * c1.radius - c2.radius * c2.radius + d * d) / (2.0 * d);
    let h2 = c1.radius * c1.radius - a * a;
    let base = c1.center + u * a;
    if h2.abs() <= tol * scale * scale {
        return Ok(Intersection::Tangent(base));
    }
    if h2 < 0.0 {
        return Ok(Intersection::None);
    }
    let off = u.perp() * h2.sqrt();
    Ok(Intersection::Two(base + off, base - off))
}

/// Recovers a point from its distances to three noncollinear probes.
pub fn trilaterate(probes: [Point; 3], distances: [f64; 3], tol: f64) -> Result<Point, PlaneError> {
    let [p1, p2, p3] = probes;
    let a = p2 - p1;
    let b = p3 - p1;
    let det = a.cross(b);
    if det.abs() <= tol * a.norm() * b.norm() || a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(PlaneError::Collinear);
    }
    let [d1, d2, d3] = distances;
    // in coordinates centred at p1: 2 a.x = |a|^2 - d2^2 + d1^2, same for b
    let ra = 0.5 * (a.dot(a) - d2 * d2 + d1 * d1);
    let rb = 0.5 * (b.dot(b) - d3 * d3 + d1 * d1);
    let mut x = Point { x: (ra * b.y - rb * a.y) / det, y: (a.x * rb - b.x * ra) / det } + p1;

    // Gauss-Newton on the three range residuals
    for _ in 0..3 {
        let mut jtj = [[0.0f64; 2]; 2];
        let mut jtr = [0.0f64; 2];
        for (p, d) in probes.iter().zip(distances) {
            let diff = x - *p;
            let r = diff.norm();
            if r == 0.0 {
                continue;
            }
            let g = diff * (1.0 / r);
            let res = r - d;
            jtj[0][0] += g.x * g.x;
            jtj[0][1] += g.x * g.y;
            jtj[1][1] += g.y * g.y;
            jtr[0] += g.x * res;
            jtr[1] += g.y * res;
        }
        let det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[0][1];
        if det.abs() < 1e-300 {
            break;
        }
        let dx = (jtj[1][1] * jtr[0] - jtj[0][1] * jtr[1]) / det;
        let dy = (jtj[0][0] * jtr[1] - jtj[0][1] * jtr[0]) / det;
        x = x - Point { x: dx, y: dy };
    }
    let scale = distances.iter().fold(1f64, |m, &d| m.max(d));
    let residual = probes.iter().zip(distances).map(|(p, d)| (x.dist(*p) - d).abs()).fold(0.0, f64::max);
    if residual > tol * scale * 1e3 {
        return Err(PlaneError::Inconsistent(residual));
    }
    Ok(x)
}

/// Arc of `circle` over the counterclockwise angle interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub circle: Circle,
    pub start: f64,
    pub end: f64,
}

/// Where the robber can be, as tracked by the plane strategies.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Everything,
    Circle(Circle),
    Point(Point),
    /// Finitely many candidate points.
    Points(Vec<Point>),
    Annulus {
        center: Point,
        inner: f64,
        outer: f64,
    },
    ArcSet(Vec<Arc>),
    /// `region` restricted to the left side of `line`.
    HalfPlaneConstrained {
        region: Box<Region>,
        line: Line,
    },
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Everything => write!(f, "everything"),
            Region::Circle(c) => write!(f, "circle(center={}, r={:.6})", c.center, c.radius),
            Region::Point(p) => write!(f, "point{p}"),
            Region::Points(ps) => {
                let s: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "points[{}]", s.join(", "))
            }
            Region::Annulus { center, inner, outer } => {
                write!(f, "annulus(center={center}, inner={inner:.6}, outer={outer:.6})")
            }
            Region::ArcSet(arcs) => {
                let s: Vec<String> = arcs
                    .iter()
                    .map(|a| {
                        format!(
                            "arc(center={}, r={:.6}, [{:.9}, {:.9}])",
                            a.circle.center, a.circle.radius, a.start, a.end
                        )
                    })
                    .collect();
                write!(f, "arc-set[{}]", s.join(", "))
            }
            Region::HalfPlaneConstrained { region, line } => {
                write!(f, "half-plane-constrained({region}, line through {} dir {})", line.point, line.direction)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(x: f64, y: f64, r: f64) -> Circle {
        Circle::new(Point::new(x, y), r).unwrap()
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(
            circle_intersection(&c(0.0, 0.0, 5.0), &c(6.0, 0.0, 5.0), 1e-9).unwrap(),
            Intersection::Two(Point::new(3.0, 4.0), Point::new(3.0, -4.0))
        );
        assert_eq!(
            circle_intersection(&c(0.0, 0.0, 1.0), &c(2.0, 0.0, 1.0), 1e-9).unwrap(),
            Intersection::Tangent(Point::new(1.0, 0.0))
        );
        assert_eq!(circle_intersection(&c(0.0, 0.0, 1.0), &c(5.0, 0.0, 1.0), 1e-9).unwrap(), Intersection::None);
        assert!(matches!(
            circle_intersection(&c(1.0, 1.0, 1.0), &c(1.0, 1.0, 2.0), 1e-9),
            Err(PlaneError::CoincidentCenters)
        ));
    }

    #[test]
    fn trilaterate_examples() {
        let probes = [Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(0.0, 4.0)];
        let p = trilaterate(probes, [5.0, 17f64.sqrt(), 3.0], 1e-9).unwrap();
        assert!(p.dist(Point::new(3.0, 4.0)) < 1e-12);
        let line = [Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(2.0, 2.0)];
        assert!(matches!(trilaterate(line, [1.0, 1.0, 1.0], 1e-9), Err(PlaneError::Collinear)));
        assert!(matches!(trilaterate(probes, [1.0, 1.0, 1.0], 1e-9), Err(PlaneError::Inconsistent(_))));
    }

    #[test]
    fn reflection_keeps_distances_to_the_axis() {
        let a = Point::new(1.0, 2.0);
        let b = Point::new(4.0, -1.0);
        let p = Point::new(0.3, 0.7);
        let q = p.reflect(a, b);
        assert!((q.dist(a) - p.dist(a)).abs() < 1e-12);
        assert!((q.dist(b) - p.dist(b)).abs() < 1e-12);
        assert!(q.dist(p) > 0.1);
    }

    #[test]
    fn region_descriptors() {
        let r = Region::Annulus { center: Point::ORIGIN, inner: 1.0, outer: 3.0 };
        assert!(r.to_string().starts_with("annulus("));
        assert_eq!(Region::Everything.to_string(), "everything");
    }

    proptest! {
        #[test]
        fn intersections_lie_on_both_circles(
            x1 in -50.0..50.0f64, y1 in -50.0..50.0f64, x2 in -50.0..50.0f64, y2 in -50.0..50.0f64,
            px in -50.0..50.0f64, py in -50.0..50.0f64,
        ) {
            let p = Point::new(px, py);
            let a = c(x1, y1, p.dist(Point::new(x1, y1)));
            let b = c(x2, y2, p.dist(Point::new(x2, y2)));
            prop_assume!(a.center.dist(b.center) > 1e-3);
            let pts = match circle_intersection(&a, &b, 1e-9).unwrap() {
                Intersection::None => vec![],
                Intersection::Tangent(q) => vec![q],
                Intersection::Two(q, r) => vec![q, r],
            };
            for q in pts {
                let scale = a.radius.max(b.radius).max(1.0);
                prop_assert!((q.dist(a.center) - a.radius).abs() <= 1e-9 * scale * 10.0);
                prop_assert!((q.dist(b.center) - b.radius).abs() <= 1e-9 * scale * 10.0);
            }
        }
    }
}
