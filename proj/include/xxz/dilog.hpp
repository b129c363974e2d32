#ifndef XXZ_DILOG_HPP
#define XXZ_DILOG_HPP

#include <complex>

namespace xxz {

// Complex dilogarithm Li2(z) = sum_{k>=1} z^k / k^2, continued to the cut
// plane C \ [1, +inf).
std::complex<double> dilog(std::complex<double> z);

// Clausen function Cl2(theta) = Im Li2(e^{i theta}).
double clausen2(double theta);

}  // namespace xxz

#endif
