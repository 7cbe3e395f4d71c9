use std::fmt;

/// An exact nonnegative rational, kept unreduced.
///
/// Report ratios are rendered from integers rather than floats so that
/// identical inputs always produce identical output bytes.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    /// Creates `num / den`. Panics if `den` is zero.
    pub fn new(num: u64, den: u64) -> Ratio {
        assert!(den > 0, "ratio denominator must be positive");
        Ratio { num, den }
    }

    pub fn zero() -> Ratio {
        Ratio { num: 0, den: 1 }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Renders with exactly nine decimal places, rounding half to even.
    pub fn to_decimal_string(&self) -> String {
        const SCALE: u128 = 1_000_000_000;
        let whole = self.num / self.den;
        let rem = (self.num % self.den) as u128;
        let den = self.den as u128;
        let scaled = rem * SCALE;
        let mut frac = scaled / den;
        let tail = scaled % den;
        match (tail * 2).cmp(&den) {
            std::cmp::Ordering::Greater => frac += 1,
            std::cmp::Ordering::Equal if frac % 2 == 1 => frac += 1,
            _ => {}
        }
        let (whole, frac) = if frac == SCALE {
            (whole + 1, 0)
        } else {
            (whole, frac)
        };
        format!("{whole}.{frac:09}")
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Ratio) -> bool {
        self.num as u128 * other.den as u128 == other.num as u128 * self.den as u128
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Ratio) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Ratio) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_nine_places() {
        assert_eq!(Ratio::new(9, 10).to_decimal_string(), "0.900000000");
        assert_eq!(Ratio::new(2, 3).to_decimal_string(), "0.666666667");
        assert_eq!(Ratio::new(1, 1).to_decimal_string(), "1.000000000");
        assert_eq!(Ratio::new(0, 7).to_decimal_string(), "0.000000000");
    }

    #[test]
    fn rounds_half_to_even() {
        // 1/2_000_000_000 scales to exactly 0.5 ulp at nine places.
        assert_eq!(
            Ratio::new(1, 2_000_000_000).to_decimal_string(),
            "0.000000000"
        );
        assert_eq!(
            Ratio::new(3, 2_000_000_000).to_decimal_string(),
            "0.000000002"
        );
    }

    #[test]
    fn carry_propagates_to_whole_part() {
        assert_eq!(
            Ratio::new(1_999_999_999, 2_000_000_000).to_decimal_string(),
            "1.000000000"
        );
    }

    #[test]
    fn compares_cross_multiplied() {
        assert_eq!(Ratio::new(1, 2), Ratio::new(2, 4));
        assert!(Ratio::new(1, 3) < Ratio::new(1, 2));
    }
}
