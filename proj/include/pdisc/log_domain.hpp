#ifndef PDISC_LOG_DOMAIN_HPP
#define PDISC_LOG_DOMAIN_HPP

#include <cmath>
#include <cstdint>
#include <span>

namespace pdisc {

/// Signed log-domain real: carries sign in {-1,0,+1} and log|value|.
/// The carrier for quantities whose magnitude exceeds double range
/// (factorial ratios, e^{-u} powers, huge prefactors).
struct LogMagnitude {
    int sign = 0;          // 0 encodes exact zero; log_abs ignored then
    double log_abs = 0.0;

    static LogMagnitude zero() { return {0, 0.0}; }

    static LogMagnitude from_log(int s, double la) {
        if (s == 0) return zero();
        return {s > 0 ? +1 : -1, la};
    }

    static LogMagnitude from_linear(double v) {
        if (v == 0.0) return zero();
        return {v > 0.0 ? +1 : -1, std::log(std::fabs(v))};
    }

    bool is_zero() const { return sign == 0; }

    /// Round-trips to relative 1e-14 whenever the value is representable;
    /// under/overflows saturate to 0 / +-inf.
    double to_linear() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_abs);
    }

    LogMagnitude operator*(const LogMagnitude& o) const {
        if (sign == 0 || o.sign == 0) return zero();
        return {sign * o.sign, log_abs + o.log_abs};
    }

    LogMagnitude operator/(const LogMagnitude& o) const {
        return {sign * o.sign, log_abs - o.log_abs};
    }

    LogMagnitude abs() const { return {sign == 0 ? 0 : 1, log_abs}; }
};

/// base^p in log domain. Negative bases need integer p (sign follows
/// parity); zero^p = 0 for p > 0.
LogMagnitude signed_log_pow(const LogMagnitude& base, double p);

/// Streaming signed log-domain sum with running-max rescaling and
/// compensated (Kahan) accumulation of the rescaled mantissa.
///
/// Invariant: result = sum_mantissa * e^{scale_log}. Rescaling happens
/// only when a term's log_abs exceeds scale_log, so for series fed in
/// ascending order the mantissa stays in [~1e-320, n].
class LogSum {
public:
    void add(const LogMagnitude& t) {
        if (t.sign == 0) return;
        ++count_;
        if (t.log_abs > scale_log_) {
            const double f = std::exp(scale_log_ - t.log_abs);
            sum_ *= f;
            comp_ *= f;
            scale_log_ = t.log_abs;
        }
        kahan_add(t.sign * std::exp(t.log_abs - scale_log_));
    }

    /// Mantissa-scale add for callers that already factored out the peak.
    void add_scaled(double mantissa) {
        ++count_;
        kahan_add(mantissa);
    }

    void set_scale(double scale_log) { scale_log_ = scale_log; }
    double scale_log() const { return scale_log_; }
    double mantissa() const { return sum_; }
    std::int64_t count() const { return count_; }

    LogMagnitude result() const {
        const double s = sum_ + comp_;
        if (s == 0.0 || count_ == 0) return LogMagnitude::zero();
        return LogMagnitude::from_log(s > 0 ? +1 : -1,
                                      scale_log_ + std::log(std::fabs(s)));
    }

private:
    // Neumaier compensation: comp_ carries the low-order bits lost by
    // sum_, added back once in result().
    void kahan_add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double scale_log_ = -1e308;
    double sum_ = 0.0;
    double comp_ = 0.0;
    std::int64_t count_ = 0;
};

/// Sum of a finite stream of signed log-domain terms. Empty -> exact zero.
LogMagnitude logsum_accumulate(std::span<const LogMagnitude> terms);

}  // namespace pdisc

#endif
