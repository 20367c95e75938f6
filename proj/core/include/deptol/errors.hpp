#pragma once

#include <stdexcept>
#include <string>

namespace deptol {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class TooFewPoints : public Error {
 public:
  explicit TooFewPoints(const std::string& what) : Error(what) {}
};

class DegenerateSample : public Error {
 public:
  explicit DegenerateSample(const std::string& what) : Error(what) {}
};

class SupportViolation : public Error {
 public:
  explicit SupportViolation(const std::string& what) : Error(what) {}
};

class Infeasible : public Error {
 public:
  explicit Infeasible(const std::string& what) : Error(what) {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what) : Error(what) {}
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& what) : Error(what) {}
};

class DegeneratePolygon : public Error {
 public:
  explicit DegeneratePolygon(const std::string& what) : Error(what) {}
};

}  // namespace deptol
