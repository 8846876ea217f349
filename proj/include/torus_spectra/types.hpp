#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace torus {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using IVec2 = Eigen::Vector2i;
using IMat2 = Eigen::Matrix<std::int64_t, 2, 2>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonUnimodularError : Error {
  using Error::Error;
};
struct DegenerateBasisError : Error {
  using Error::Error;
};
struct RadiusTooLargeError : Error {
  using Error::Error;
};
struct BadParameterError : Error {
  using Error::Error;
};
struct NotDualVectorError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct StepTooSmallError : Error {
  using Error::Error;
};
struct MonotonicityViolatedError : Error {
  MonotonicityViolatedError(const std::string& msg, int step) : Error(msg), step_index(step) {}
  int step_index;
};
struct NonFiniteIntegrandError : Error {
  NonFiniteIntegrandError(const std::string& msg, Vec2 where) : Error(msg), point(where) {}
  Vec2 point;
};
struct AreaOutOfRangeError : Error {
  using Error::Error;
};
struct DegenerateRegionError : Error {
  using Error::Error;
};
struct DuplicateSitesError : Error {
  using Error::Error;
};
struct OriginOutsideError : Error {
  using Error::Error;
};

}  // namespace torus
