#ifndef SPIDERWEB_ERRORS_HPP
#define SPIDERWEB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spiderweb {

// A curve or point landed on a zero of f (or z = 0 with p0 >= 1).
struct zero_factor_error : std::runtime_error {
    explicit zero_factor_error(const std::string& what) : std::runtime_error(what) {}
};

// Minimum modulus requested exactly at a zero radius.
struct at_zero_error : std::runtime_error {
    explicit at_zero_error(const std::string& what) : std::runtime_error(what) {}
};

// The zero family's tail sum diverges; no finite truncation exists.
struct tail_not_summable_error : std::runtime_error {
    explicit tail_not_summable_error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation or iteration left the range where the truncation is usable.
struct out_of_validity_error : std::runtime_error {
    explicit out_of_validity_error(const std::string& what) : std::runtime_error(what) {}
};

struct range_too_small_error : std::runtime_error {
    explicit range_too_small_error(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive bisection exceeded its depth cap; the curve passes too near a zero.
struct refinement_limit_error : std::runtime_error {
    explicit refinement_limit_error(const std::string& what) : std::runtime_error(what) {}
};

struct not_crossing_error : std::runtime_error {
    explicit not_crossing_error(const std::string& what) : std::runtime_error(what) {}
};

struct empty_level_set_error : std::runtime_error {
    explicit empty_level_set_error(const std::string& what) : std::runtime_error(what) {}
};

// A lemma hypothesis failed on a sampled circle (e.g. circle minima not vanishing).
struct hypothesis_unmet_error : std::runtime_error {
    explicit hypothesis_unmet_error(const std::string& what) : std::runtime_error(what) {}
};

// A theorem hypothesis failed at a specific curve sample.
struct hypothesis_violated_error : std::runtime_error {
    explicit hypothesis_violated_error(const std::string& what) : std::runtime_error(what) {}
};

struct precondition_failed_error : std::runtime_error {
    explicit precondition_failed_error(const std::string& what) : std::runtime_error(what) {}
};

// Cascade step left the usable radius range; carries the step index in the message.
struct validity_exceeded_error : std::runtime_error {
    explicit validity_exceeded_error(const std::string& what) : std::runtime_error(what) {}
};

struct window_too_small_error : std::runtime_error {
    explicit window_too_small_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spiderweb

#endif  // SPIDERWEB_ERRORS_HPP
