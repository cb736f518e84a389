#pragma once

#include <stdexcept>
#include <string>

namespace kruskal {

// Bad argument value (B < 2, p outside (0,1), N < B, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Experiment configuration that cannot be run as given.
class InvalidConfig : public std::invalid_argument {
 public:
  explicit InvalidConfig(const std::string& what) : std::invalid_argument(what) {}
};

// The requested computation needs a bounded card distribution.
class UnsupportedModel : public std::invalid_argument {
 public:
  explicit UnsupportedModel(const std::string& what) : std::invalid_argument(what) {}
};

// Distributions or matrices whose state spaces do not line up.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// Chain has more than one closed class, so the stationary law is not unique.
class NoUniqueStationary : public NumericalFailure {
 public:
  explicit NoUniqueStationary(const std::string& what) : NumericalFailure(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kruskal
