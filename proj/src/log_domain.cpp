#include "pdisc/log_domain.hpp"

#include <cmath>
#include <stdexcept>

namespace pdisc {

LogMagnitude signed_log_pow(const LogMagnitude& base, double p) {
    if (base.sign == 0) {
        if (p <= 0.0) throw std::domain_error("signed_log_pow: 0^p with p <= 0");
        return LogMagnitude::zero();
    }
    int s = +1;
    if (base.sign < 0) {
        if (p != std::floor(p))
            throw std::domain_error(
                "signed_log_pow: negative base needs integer exponent");
        s = (std::fmod(std::fabs(p), 2.0) < 0.5) ? +1 : -1;
    }
    return LogMagnitude::from_log(s, p * base.log_abs);
}

LogMagnitude logsum_accumulate(std::span<const LogMagnitude> terms) {
    LogSum acc;
    for (const auto& t : terms) acc.add(t);
    return acc.result();
}

}  // namespace pdisc
