#pragma once

// Numeric building blocks: stable one-minus-exponential, the inverse normal
// CDF, and a log-domain scalar for products that would underflow a double.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace drakelim {

// 1 - e^(-x) without cancellation; for x near 0 the result is ~x.
inline double one_minus_exp_neg(double x) {
    return -std::expm1(-x);
}

// Inverse of the standard normal CDF (Wichura's PPND16 rational
// approximations, accurate to full double precision over (0,1)).
// Boundary convention: p == 0 -> -inf, p == 1 -> +inf.
inline double inverse_normal_cdf(double p) {
    if (std::isnan(p) || p < 0.0 || p > 1.0) {
        throw std::domain_error("inverse_normal_cdf: p must lie in [0, 1]");
    }
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        // central region, rational in r = 0.425^2 - q^2 shifted
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }

    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -z : z;
}

// Standard normal CDF, used as the independent check for the inverse above.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

// Non-negative scalar carried as its natural logarithm. Zero maps to
// ln = -inf; the linear view is exponentiated only on demand, so values far
// below the double underflow threshold remain exact in log space.
class LogScalar {
public:
    LogScalar() = default;

    static LogScalar from_linear(double value) {
        if (std::isnan(value) || value < 0.0) {
            throw std::domain_error("LogScalar: value must be non-negative");
        }
        return LogScalar{std::log(value)};  // log(0) == -inf
    }

    static LogScalar from_ln(double ln_value) { return LogScalar{ln_value}; }

    double ln() const { return ln_; }
    double log10() const { return ln_ / std::numbers::ln10; }
    double linear() const { return std::exp(ln_); }  // underflows to 0 past ~1e-308
    bool is_zero() const { return std::isinf(ln_) && ln_ < 0.0; }

    LogScalar& operator*=(const LogScalar& other) {
        ln_ += other.ln_;
        return *this;
    }
    friend LogScalar operator*(LogScalar a, const LogScalar& b) { return a *= b; }
    friend bool operator==(const LogScalar& a, const LogScalar& b) { return a.ln_ == b.ln_; }

private:
    explicit LogScalar(double ln_value) : ln_(ln_value) {}
    double ln_ = -std::numeric_limits<double>::infinity();
};

}  // namespace drakelim
