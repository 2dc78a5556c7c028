#ifndef SPIDERWEB_FUNCTION_IO_HPP
#define SPIDERWEB_FUNCTION_IO_HPP

#include <string>

#include "spiderweb/entire_product.hpp"

namespace spiderweb {

// Function-definition file format (JSON):
// {
//   "c": 1.0, "p0": 0,
//   "family": {"kind": "explicit"|"power"|"cosh_sqrt"|"sinh_sqrt_over_sqrt",
//              "alpha": 1.0, "q": 3.0, "zeros": [{"a": 1.0, "p": 1}, ...]},
//   "truncation": {"max_log_radius": 10.0, "tol": 1e-10}
// }
EntireProductFunction load_function(const std::string& path);
EntireProductFunction parse_function(const std::string& json_text);
std::string function_to_json(double c, int p0, const ZeroFamily& family,
                             double max_log_radius, double tol);

}  // namespace spiderweb

#endif  // SPIDERWEB_FUNCTION_IO_HPP
