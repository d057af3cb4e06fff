#ifndef SOLPROP_SCALED_REAL_HPP
#define SOLPROP_SCALED_REAL_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace solprop {

// Signed magnitude with a wide base-2 exponent: value = mantissa * 2^exponent,
// |mantissa| in [1,2) unless the value is zero.  Keeps Wronskian entries and
// their products representable far beyond double range; ratios are formed by
// exponent subtraction before any conversion back to double.
class ScaledReal {
public:
    ScaledReal() = default; // zero

    static ScaledReal from_double(double v);
    static ScaledReal one() { return ScaledReal(1.0, 0); }

    double mantissa() const { return mant_; }
    std::int64_t exponent() const { return exp_; }
    bool is_zero() const { return mant_ == 0.0; }
    int sign() const { return mant_ > 0.0 ? 1 : (mant_ < 0.0 ? -1 : 0); }

    // Natural log of |value|; -inf for zero.
    double log_abs() const;

    // Throws std::range_error if the value exceeds double range.
    // Underflow is flushed to zero.
    double to_double() const;

    ScaledReal operator-() const;
    ScaledReal& operator*=(const ScaledReal& rhs);
    ScaledReal& operator/=(const ScaledReal& rhs);
    ScaledReal& operator+=(const ScaledReal& rhs);
    ScaledReal& operator-=(const ScaledReal& rhs);

    friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) { return a *= b; }
    friend ScaledReal operator/(ScaledReal a, const ScaledReal& b) { return a /= b; }
    friend ScaledReal operator+(ScaledReal a, const ScaledReal& b) { return a += b; }
    friend ScaledReal operator-(ScaledReal a, const ScaledReal& b) { return a -= b; }

    // |a| < |b|, used for pivot selection.
    static bool abs_less(const ScaledReal& a, const ScaledReal& b);

private:
    ScaledReal(double m, std::int64_t e) : mant_(m), exp_(e) { normalize(); }
    void normalize();

    double mant_ = 0.0;
    std::int64_t exp_ = 0;

    friend ScaledReal scaled_exp(double x);
};

// e^x as a ScaledReal, valid for |x| far beyond double exp range.
ScaledReal scaled_exp(double x);
ScaledReal scaled_cosh(double x);
ScaledReal scaled_sinh(double x);

// Complex analogue: value = mantissa * 2^exponent with |mantissa| in [1,2).
class ScaledComplex {
public:
    ScaledComplex() = default; // zero

    static ScaledComplex from_complex(const std::complex<double>& v);
    static ScaledComplex from_scaled_real(const ScaledReal& v);

    std::complex<double> mantissa() const { return mant_; }
    std::int64_t exponent() const { return exp_; }
    bool is_zero() const { return mant_ == std::complex<double>(0.0, 0.0); }

    // Throws std::range_error on overflow; underflow flushes to zero.
    std::complex<double> to_complex() const;

    ScaledComplex operator-() const;
    ScaledComplex& operator*=(const ScaledComplex& rhs);
    ScaledComplex& operator*=(const ScaledReal& rhs);
    ScaledComplex& operator*=(double rhs);
    ScaledComplex& operator+=(const ScaledComplex& rhs);
    ScaledComplex& operator-=(const ScaledComplex& rhs);

    friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
    friend ScaledComplex operator*(ScaledComplex a, const ScaledReal& b) { return a *= b; }
    friend ScaledComplex operator*(ScaledComplex a, double b) { return a *= b; }
    friend ScaledComplex operator*(double a, ScaledComplex b) { return b *= a; }
    friend ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) { return a += b; }
    friend ScaledComplex operator-(ScaledComplex a, const ScaledComplex& b) { return a -= b; }

private:
    ScaledComplex(std::complex<double> m, std::int64_t e) : mant_(m), exp_(e) { normalize(); }
    void normalize();

    std::complex<double> mant_{0.0, 0.0};
    std::int64_t exp_ = 0;

    friend ScaledComplex scaled_cexp(const std::complex<double>& w);
};

// e^w as a ScaledComplex; Re w may be far beyond double exp range.
ScaledComplex scaled_cexp(const std::complex<double>& w);

} // namespace solprop

#endif
