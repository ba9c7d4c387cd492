#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ik {

using Cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Error hierarchy; the C API maps these to status codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateParams : Error {
  using Error::Error;
};

struct NearSingular : Error {
  NearSingular(const std::string& which, Cplx arg)
      : Error("near-singular denominator in " + which + " at argument (" +
              std::to_string(arg.real()) + ", " + std::to_string(arg.imag()) +
              ")") {}
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct NonzeroInhomogeneity : Error {
  using Error::Error;
};

struct SingularTransfer : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  double best_residual;
  explicit NoConvergence(double r)
      : Error("Bethe solver failed to converge, best residual " +
              std::to_string(r)),
        best_residual(r) {}
};

struct SizeGuard : Error {
  using Error::Error;
};

struct ConfigParse : Error {
  using Error::Error;
};

}  // namespace ik
