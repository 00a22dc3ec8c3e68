#ifndef NETTEST_NORMAL_HPP
#define NETTEST_NORMAL_HPP

namespace nettest {

// Standard normal CDF, via erfc.
double normal_cdf(double x);

// Upper tail P(Z > x), accurate far into the tail.
double normal_sf(double x);

// Inverse CDF on (0, 1). Acklam's rational approximation polished with one
// Halley step against the erfc-based CDF; absolute error well below 1e-8.
double normal_quantile(double p);

}  // namespace nettest

#endif
