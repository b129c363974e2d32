#ifndef XXZ_ERRORS_HPP
#define XXZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xxz {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Discrete Fredholm operator is numerically singular (bad interval or
// too few nodes).
struct SingularSystem : Error {
  using Error::Error;
};

// Magnetic Fermi boundary q(D) diverges: D = 1/2 in the gapless or
// isotropic regime.  Callers must switch to the closed-form q = infinity
// machinery.
struct UnboundedBoundary : Error {
  using Error::Error;
};

struct FieldOutOfRange : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct InvalidSpec : Error {
  using Error::Error;
};

struct OutOfRange : Error {
  using Error::Error;
};

struct ContourTooClose : Error {
  using Error::Error;
};

struct ZeroDensity : Error {
  using Error::Error;
};

}  // namespace xxz

#endif
