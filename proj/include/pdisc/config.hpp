#ifndef PDISC_CONFIG_HPP
#define PDISC_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "pdisc/log_domain.hpp"

namespace pdisc {

enum class Method { Auto, DirectSeries, PartialFraction, GaussianApprox };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::DirectSeries: return "series";
        case Method::PartialFraction: return "partial-fraction";
        case Method::GaussianApprox: return "gaussian-approx";
    }
    return "?";
}

/// Evaluation method plus truncation policy shared by every series route.
struct SeriesConfig {
    Method method = Method::Auto;
    double rel_tol = 1e-12;
    std::int64_t max_terms = 10'000'000;
    // Auto switches to PartialFraction once the series peak index
    // l* = (p-1)/u exceeds this.
    double auto_switch_ratio = 1e5;

    void validate() const {
        if (!(rel_tol > 0.0) || rel_tol > 1e-3)
            throw std::domain_error("SeriesConfig: rel_tol must be in (0, 1e-3]");
        if (max_terms < 10)
            throw std::domain_error("SeriesConfig: max_terms must be >= 10");
    }
};

/// A computed density with evaluation diagnostics. tail_bound is the
/// certified relative bound on everything dropped or rounded away.
struct DensityValue {
    LogMagnitude value;
    Method method_used = Method::DirectSeries;
    std::int64_t terms_used = 0;
    double tail_bound = 0.0;

    double linear() const { return value.to_linear(); }
};

struct truncation_failure : std::runtime_error {
    explicit truncation_failure(const std::string& what)
        : std::runtime_error(what) {}
};

struct accuracy_cap : std::runtime_error {
    explicit accuracy_cap(const std::string& what) : std::runtime_error(what) {}
};

struct bump_not_separated : std::runtime_error {
    explicit bump_not_separated(const std::string& what)
        : std::runtime_error(what) {}
};

struct invalid_stabilizer : std::runtime_error {
    explicit invalid_stabilizer(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace pdisc

#endif
