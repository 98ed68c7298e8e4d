#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhgeom {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using PointList = std::vector<Vector>;

/// Relative tolerance for exact-path geometric decisions.
inline constexpr double kGeomEps = 1e-9;
/// Absolute tolerance for numerical inequality tests (concavity, clamps, verdicts).
inline constexpr double kNumEps = 1e-7;
inline constexpr int kMaxDim = 8;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem or operation precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(what);
}

inline void require_precondition(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

inline Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

inline Vector unit_vector(int n, int axis) {
  Vector v = Vector::Zero(n);
  v[axis] = 1.0;
  return v;
}

}  // namespace hhgeom
