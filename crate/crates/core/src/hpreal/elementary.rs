use super::{ExtReal, LN2, PI};

fn taylor_expm1(r: ExtReal) -> ExtReal {
    // |r| < 4e-4; 12 terms leave < 1e-40
    let mut term = r;
    let mut sum = r;
    for i in 2..=12 {
        term = term * r / (i as f64);
        sum += term;
    }
    sum
}

impl ExtReal {
    pub fn exp(self) -> ExtReal {
        if self.hi() > 709.0 {
            return ExtReal::from_f64(f64::INFINITY);
        }
        if self.hi() < -745.0 {
            return ExtReal::ZERO;
        }
        if self.is_zero() {
            return ExtReal::ONE;
        }
        let m = (self.hi() / std::f64::consts::LN_2).round();
        let r = (self - LN2 * m).ldexp(-10);
        let mut s = taylor_expm1(r);
        for _ in 0..10 {
            // (1+s)^2 - 1
            s = s * 2.0 + s.sqr();
        }
        (s + 1.0).ldexp(m as i32)
    }

    /// Natural logarithm; NaN for non-positive input.
    pub fn ln(self) -> ExtReal {
        if self.hi() <= 0.0 {
            return ExtReal::NAN;
        }
        if self == ExtReal::ONE {
            return ExtReal::ZERO;
        }
        let mut y = ExtReal::from_f64(self.hi().ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - 1.0;
        }
        y
    }

    /// `self^p` for positive `self`; integer exponents use repeated squaring.
    pub fn powf(self, p: ExtReal) -> ExtReal {
        if let Some(n) = p.to_integer() {
            if n.abs() <= 4096 {
                return self.powi(n as i32);
            }
        }
        (p * self.ln()).exp()
    }

    pub fn sin_cos(self) -> (ExtReal, ExtReal) {
        let half_pi = PI * 0.5;
        let j = (self / half_pi).round();
        let t = self - half_pi * j;
        let (s, c) = sin_cos_taylor(t);
        let q = j.to_integer().unwrap_or(0).rem_euclid(4);
        match q {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> ExtReal {
        self.sin_cos().0
    }

    pub fn cos(self) -> ExtReal {
        self.sin_cos().1
    }

    /// `sin(πx)/(πx)`, equal to 1 at 0.
    pub fn sinc_pi(self) -> ExtReal {
        if self.is_zero() {
            return ExtReal::ONE;
        }
        let px = PI * self;
        px.sin() / px
    }
}

fn sin_cos_taylor(t: ExtReal) -> (ExtReal, ExtReal) {
    // |t| <= π/4; terms through t^33/33! are below 1e-38
    let t2 = t.sqr();
    let mut sin = ExtReal::ZERO;
    let mut cos = ExtReal::ZERO;
    for n in (0..=16u32).rev() {
        let a = (2 * n + 2) as f64 * (2 * n + 3) as f64;
        let b = (2 * n + 1) as f64 * (2 * n + 2) as f64;
        sin = ExtReal::ONE - t2 * sin / a;
        cos = ExtReal::ONE - t2 * cos / b;
    }
    (t * sin, cos)
}
