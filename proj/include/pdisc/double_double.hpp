#ifndef PDISC_DOUBLE_DOUBLE_HPP
#define PDISC_DOUBLE_DOUBLE_HPP

#include <cmath>
#include <cstdint>

namespace pdisc {

/// Unevaluated double-double (~31 significant digits). Only the operations
/// the partial-fraction kernel route needs: +, -, *, /, integer powers of
/// complex values. Dekker/Knuth error-free transforms, products via FMA.
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    DoubleDouble() = default;
    constexpr DoubleDouble(double h, double l = 0.0) : hi(h), lo(l) {}

    double value() const { return hi + lo; }

    static DoubleDouble two_sum(double a, double b) {
        const double s = a + b;
        const double bb = s - a;
        const double err = (a - (s - bb)) + (b - bb);
        return {s, err};
    }

    static DoubleDouble two_prod(double a, double b) {
        const double p = a * b;
        return {p, std::fma(a, b, -p)};
    }

    static DoubleDouble renorm(double h, double l) {
        const double s = h + l;
        return {s, l - (s - h)};
    }

    DoubleDouble operator+(const DoubleDouble& b) const {
        DoubleDouble s = two_sum(hi, b.hi);
        return renorm(s.hi, s.lo + lo + b.lo);
    }

    DoubleDouble operator-(const DoubleDouble& b) const {
        DoubleDouble s = two_sum(hi, -b.hi);
        return renorm(s.hi, s.lo + lo - b.lo);
    }

    DoubleDouble operator*(const DoubleDouble& b) const {
        DoubleDouble p = two_prod(hi, b.hi);
        return renorm(p.hi, p.lo + hi * b.lo + lo * b.hi);
    }

    DoubleDouble operator/(const DoubleDouble& b) const {
        const double q1 = hi / b.hi;
        DoubleDouble r = *this - b * DoubleDouble(q1);
        const double q2 = r.hi / b.hi;
        r = r - b * DoubleDouble(q2);
        const double q3 = r.hi / b.hi;
        return renorm(q1, q2 + q3);
    }

    DoubleDouble operator-() const { return {-hi, -lo}; }
};

/// pi to double-double precision.
inline constexpr DoubleDouble dd_pi{3.141592653589793116,
                                    1.2246467991473531772e-16};

struct DDComplex {
    DoubleDouble re, im;

    DDComplex operator+(const DDComplex& b) const { return {re + b.re, im + b.im}; }
    DDComplex operator-(const DDComplex& b) const { return {re - b.re, im - b.im}; }

    DDComplex operator*(const DDComplex& b) const {
        return {re * b.re - im * b.im, re * b.im + im * b.re};
    }

    DDComplex operator*(const DoubleDouble& s) const { return {re * s, im * s}; }

    DDComplex conj() const { return {re, -im}; }

    DoubleDouble norm_sq() const { return re * re + im * im; }

    DDComplex operator/(const DDComplex& b) const {
        const DoubleDouble n = b.norm_sq();
        const DDComplex c = *this * b.conj();
        return {c.re / n, c.im / n};
    }

    /// z^n by binary exponentiation, n >= 0. Underflows saturate to zero,
    /// which is the correct limit for the |z| < 1 uses here.
    static DDComplex powi(DDComplex z, std::int64_t n) {
        DDComplex r{{1.0}, {0.0}};
        while (n > 0) {
            if (n & 1) r = r * z;
            z = z * z;
            n >>= 1;
        }
        return r;
    }
};

}  // namespace pdisc

#endif
