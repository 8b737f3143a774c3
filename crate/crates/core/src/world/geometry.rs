use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

/// Rectangle centered at a pose, aligned with its heading.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedRect {
    pub center: [f64; 2],
    pub heading: f64,
    pub half_length: f64,
    pub half_width: f64,
}

impl OrientedRect {
    pub fn new(pose: Pose, length: f64, width: f64) -> Self {
        Self {
            center: [pose.x, pose.y],
            heading: pose.heading,
            half_length: 0.5 * length,
            half_width: 0.5 * width,
        }
    }

    /// Grows the rectangle by `margin` on every side.
    pub fn inflated(&self, margin: f64) -> Self {
        Self {
            half_length: self.half_length + margin,
            half_width: self.half_width + margin,
            ..*self
        }
    }

    fn axes(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.heading.sin_cos();
        [[c, s], [-s, c]]
    }

    pub fn corners(&self) -> [[f64; 2]; 4] {
        let [u, w] = self.axes();
        let (l, h) = (self.half_length, self.half_width);
        let [cx, cy] = self.center;
        [
            [cx + u[0] * l + w[0] * h, cy + u[1] * l + w[1] * h],
            [cx - u[0] * l + w[0] * h, cy - u[1] * l + w[1] * h],
            [cx - u[0] * l - w[0] * h, cy - u[1] * l - w[1] * h],
            [cx + u[0] * l - w[0] * h, cy + u[1] * l - w[1] * h],
        ]
    }

    fn projected_radius(&self, axis: [f64; 2]) -> f64 {
        let [u, w] = self.axes();
        self.half_length * dot(u, axis).abs() + self.half_width * dot(w, axis).abs()
    }

    /// Separating-axis test. Touching edges count as overlap.
    pub fn overlaps(&self, other: &OrientedRect) -> bool {
        let delta = [other.center[0] - self.center[0], other.center[1] - self.center[1]];
        let [a0, a1] = self.axes();
        let [b0, b1] = other.axes();
        for axis in [a0, a1, b0, b1] {
            let dist = dot(delta, axis).abs();
            if dist > self.projected_radius(axis) + other.projected_radius(axis) {
                return false;
            }
        }
        true
    }
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}
