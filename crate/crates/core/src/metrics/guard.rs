/// Handling of a zero denominator whose numerator is non-zero.
/// (A `0/0` term always contributes 0.)
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroDenominator {
    TermIsZero,
    EpsilonSubstitute,
}

/// Handling of `c * ln(a)` with `a <= 0` and `c != 0`.
/// (A term with zero coefficient always contributes 0.)
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogNonPositive {
    TermIsZero,
    EpsilonSubstitute,
}

/// Rules that keep every kernel finite on finite inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuardPolicy {
    pub zero_denominator: ZeroDenominator,
    pub log_nonpositive: LogNonPositive,
    pub epsilon: f64,
}

impl GuardPolicy {
    pub const DEFAULT: Self = Self {
        zero_denominator: ZeroDenominator::EpsilonSubstitute,
        log_nonpositive: LogNonPositive::EpsilonSubstitute,
        epsilon: 1e-12,
    };

    #[inline]
    pub fn div(&self, num: f64, den: f64) -> f64 {
        if den != 0.0 {
            num / den
        } else if num == 0.0 {
            0.0
        } else {
            match self.zero_denominator {
                ZeroDenominator::TermIsZero => 0.0,
                ZeroDenominator::EpsilonSubstitute => num / self.epsilon,
            }
        }
    }

    /// `coef * ln(arg)`, with `0 * ln(anything) = 0`.
    #[inline]
    pub fn xlog(&self, coef: f64, arg: f64) -> f64 {
        if coef == 0.0 {
            0.0
        } else if arg > 0.0 {
            coef * arg.ln()
        } else {
            match self.log_nonpositive {
                LogNonPositive::TermIsZero => 0.0,
                LogNonPositive::EpsilonSubstitute => coef * self.epsilon.ln(),
            }
        }
    }

    /// `ln(arg)` for a strictly positive argument, guarded otherwise.
    /// `None` means the enclosing term should be dropped.
    #[inline]
    pub fn ln(&self, arg: f64) -> Option<f64> {
        if arg > 0.0 {
            Some(arg.ln())
        } else {
            match self.log_nonpositive {
                LogNonPositive::TermIsZero => None,
                LogNonPositive::EpsilonSubstitute => Some(self.epsilon.ln()),
            }
        }
    }
}

impl Default for GuardPolicy {
    fn default() -> Self {
        Self::DEFAULT
    }
}
