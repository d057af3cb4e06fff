#include "solprop/scaled_real.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace solprop {

namespace {

// ln2 split so that k*LN2_HI rounding error is recoverable with an fma.
constexpr double LN2_HI = 6.93147180369123816490e-01;
constexpr double LN2_LO = 1.90821492927058770002e-10;
constexpr double INV_LN2 = 1.44269504088896338700;

constexpr std::int64_t EXP_CLAMP = 1 << 30;

} // namespace

void ScaledReal::normalize() {
    if (mant_ == 0.0) {
        exp_ = 0;
        return;
    }
    int e = 0;
    double m = std::frexp(mant_, &e); // |m| in [0.5,1)
    mant_ = 2.0 * m;                  // |mant_| in [1,2)
    exp_ += e - 1;
}

ScaledReal ScaledReal::from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("ScaledReal: non-finite input");
    return ScaledReal(v, 0);
}

double ScaledReal::log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::fabs(mant_)) + static_cast<double>(exp_) * (LN2_HI + LN2_LO);
}

double ScaledReal::to_double() const {
    if (is_zero()) return 0.0;
    if (exp_ > 1024) throw std::range_error("ScaledReal::to_double: overflow (2^" + std::to_string(exp_) + ")");
    if (exp_ < -1100) return 0.0;
    return std::ldexp(mant_, static_cast<int>(exp_));
}

ScaledReal ScaledReal::operator-() const { return ScaledReal(-mant_, exp_); }

ScaledReal& ScaledReal::operator*=(const ScaledReal& rhs) {
    if (is_zero() || rhs.is_zero()) {
        mant_ = 0.0;
        exp_ = 0;
        return *this;
    }
    mant_ *= rhs.mant_;
    exp_ += rhs.exp_;
    normalize();
    return *this;
}

ScaledReal& ScaledReal::operator/=(const ScaledReal& rhs) {
    if (rhs.is_zero()) throw std::domain_error("ScaledReal: division by zero");
    if (is_zero()) return *this;
    mant_ /= rhs.mant_;
    exp_ -= rhs.exp_;
    normalize();
    return *this;
}

ScaledReal& ScaledReal::operator+=(const ScaledReal& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) {
        *this = rhs;
        return *this;
    }
    std::int64_t d = rhs.exp_ - exp_;
    if (d > 80) { // |this| negligible
        *this = rhs;
        return *this;
    }
    if (d < -80) return *this;
    mant_ += std::ldexp(rhs.mant_, static_cast<int>(d));
    normalize();
    return *this;
}

ScaledReal& ScaledReal::operator-=(const ScaledReal& rhs) { return *this += -rhs; }

bool ScaledReal::abs_less(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero()) return !b.is_zero();
    if (b.is_zero()) return false;
    if (a.exp_ != b.exp_) return a.exp_ < b.exp_;
    return std::fabs(a.mant_) < std::fabs(b.mant_);
}

ScaledReal scaled_exp(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("scaled_exp: non-finite input");
    double kd = std::nearbyint(x * INV_LN2);
    if (std::fabs(kd) >= static_cast<double>(EXP_CLAMP))
        throw std::range_error("scaled_exp: exponent out of supported range");
    auto k = static_cast<std::int64_t>(kd);
    // r = x - k*ln2, carried out so the large cancellation is exact.
    double p = kd * LN2_HI;
    double perr = std::fma(kd, LN2_HI, -p);
    double r = ((x - p) - perr) - kd * LN2_LO;
    ScaledReal out = ScaledReal::from_double(std::exp(r));
    out.exp_ += k;
    out.normalize();
    return out;
}

ScaledReal scaled_cosh(double x) {
    if (std::fabs(x) <= 1.0) return ScaledReal::from_double(std::cosh(x));
    ScaledReal s = scaled_exp(x) + scaled_exp(-x);
    return s * ScaledReal::from_double(0.5);
}

ScaledReal scaled_sinh(double x) {
    if (std::fabs(x) <= 1.0) return ScaledReal::from_double(std::sinh(x));
    ScaledReal s = scaled_exp(x) - scaled_exp(-x);
    return s * ScaledReal::from_double(0.5);
}

void ScaledComplex::normalize() {
    double m = std::abs(mant_);
    if (m == 0.0) {
        mant_ = {0.0, 0.0};
        exp_ = 0;
        return;
    }
    int e = 0;
    (void)std::frexp(m, &e);
    mant_ = std::complex<double>(std::ldexp(mant_.real(), -(e - 1)), std::ldexp(mant_.imag(), -(e - 1)));
    exp_ += e - 1;
}

ScaledComplex ScaledComplex::from_complex(const std::complex<double>& v) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument("ScaledComplex: non-finite input");
    return ScaledComplex(v, 0);
}

ScaledComplex ScaledComplex::from_scaled_real(const ScaledReal& v) {
    ScaledComplex out;
    out.mant_ = {v.mantissa(), 0.0};
    out.exp_ = v.exponent();
    return out;
}

std::complex<double> ScaledComplex::to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    if (exp_ > 1020) throw std::range_error("ScaledComplex::to_complex: overflow (2^" + std::to_string(exp_) + ")");
    if (exp_ < -1100) return {0.0, 0.0};
    int e = static_cast<int>(exp_);
    return {std::ldexp(mant_.real(), e), std::ldexp(mant_.imag(), e)};
}

ScaledComplex ScaledComplex::operator-() const {
    ScaledComplex out = *this;
    out.mant_ = -out.mant_;
    return out;
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& rhs) {
    if (is_zero() || rhs.is_zero()) {
        mant_ = {0.0, 0.0};
        exp_ = 0;
        return *this;
    }
    mant_ *= rhs.mant_;
    exp_ += rhs.exp_;
    normalize();
    return *this;
}

ScaledComplex& ScaledComplex::operator*=(const ScaledReal& rhs) {
    if (is_zero() || rhs.is_zero()) {
        mant_ = {0.0, 0.0};
        exp_ = 0;
        return *this;
    }
    mant_ *= rhs.mantissa();
    exp_ += rhs.exponent();
    normalize();
    return *this;
}

ScaledComplex& ScaledComplex::operator*=(double rhs) {
    if (!std::isfinite(rhs)) throw std::invalid_argument("ScaledComplex: non-finite factor");
    mant_ *= rhs;
    normalize();
    return *this;
}

ScaledComplex& ScaledComplex::operator+=(const ScaledComplex& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) {
        *this = rhs;
        return *this;
    }
    std::int64_t d = rhs.exp_ - exp_;
    if (d > 80) {
        *this = rhs;
        return *this;
    }
    if (d < -80) return *this;
    int di = static_cast<int>(d);
    mant_ += std::complex<double>(std::ldexp(rhs.mant_.real(), di), std::ldexp(rhs.mant_.imag(), di));
    normalize();
    return *this;
}

ScaledComplex& ScaledComplex::operator-=(const ScaledComplex& rhs) { return *this += -rhs; }

ScaledComplex scaled_cexp(const std::complex<double>& w) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        throw std::invalid_argument("scaled_cexp: non-finite input");
    ScaledReal mag = scaled_exp(w.real());
    ScaledComplex out;
    out.mant_ = mag.mantissa() * std::complex<double>(std::cos(w.imag()), std::sin(w.imag()));
    out.exp_ = mag.exponent();
    out.normalize();
    return out;
}

} // namespace solprop
