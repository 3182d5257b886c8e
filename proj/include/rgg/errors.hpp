#pragma once

#include <stdexcept>
#include <string>

namespace rgg {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Torus geometry is only handled for features shorter than 1/4 of the period.
struct TorusRadiusTooLarge : Error {
  explicit TorusRadiusTooLarge(const std::string& what = "torus requires r < 1/4")
      : Error(what) {}
};

struct KTooLarge : Error {
  explicit KTooLarge(const std::string& what) : Error(what) {}
};

struct RadiusTooLargeForGrid : Error {
  explicit RadiusTooLargeForGrid(const std::string& what) : Error(what) {}
};

struct NonMonotoneProperty : Error {
  explicit NonMonotoneProperty(const std::string& what) : Error(what) {}
};

struct BracketNotFound : Error {
  explicit BracketNotFound(const std::string& what) : Error(what) {}
};

struct InsufficientPoints : Error {
  explicit InsufficientPoints(const std::string& what) : Error(what) {}
};

struct UnknownRateExceeded : Error {
  explicit UnknownRateExceeded(const std::string& what) : Error(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& what) : Error(what) {}
};

}  // namespace rgg
