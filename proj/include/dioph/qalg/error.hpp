#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

// Root of every error the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace qalg {

class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};

class DegreeLimitExceeded : public Error {
 public:
  DegreeLimitExceeded(int degree, int limit)
      : Error("degree " + std::to_string(degree) + " exceeds factorization cap " +
              std::to_string(limit)) {}
};

class PoleAt : public Error {
 public:
  explicit PoleAt(const std::string& where) : Error("pole at " + where), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

class PoleOfComposition : public Error {
 public:
  explicit PoleOfComposition(const std::string& where)
      : Error("constant inner function hits a pole of the outer function at " + where) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

}  // namespace qalg
}  // namespace dioph
