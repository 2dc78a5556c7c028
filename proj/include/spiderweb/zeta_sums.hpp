#ifndef SPIDERWEB_ZETA_SUMS_HPP
#define SPIDERWEB_ZETA_SUMS_HPP

namespace spiderweb::zeta_sums {

// log of sum_{k>=0} (q+k)^(-s) for s > 1, q > 0.
//
// Direct summation of the first block plus an Euler-Maclaurin closure, with
// q^(-s) factored out so the result stays representable for s up to ~300 and
// q up to ~1e300 (the raw sum underflows long before that).
double log_hurwitz_tail(double s, double q);

// sum_{k>=0} (q+k)^(-s); underflows to 0 when log_hurwitz_tail < -745.
double hurwitz_tail(double s, double q);

// log(e^x - e^y) for x > y.
double log_diff_exp(double x, double y);

}  // namespace spiderweb::zeta_sums

#endif  // SPIDERWEB_ZETA_SUMS_HPP
