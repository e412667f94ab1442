#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conesurf {

enum class ErrorKind {
  Domain,         // argument outside its admissible range
  Degenerate,     // coincident or otherwise degenerate input
  NotHyperbolic,  // angle sum forces a spherical or Euclidean triangle
  NonRealizable,  // Gram data of the wrong signature
  Marginal,       // Gram data within the eigenvalue threshold of degeneracy
  Inadmissible,   // Gauss-Bonnet area not positive
  Topology,       // pants decomposition fails the counting or type rules
  Word,           // curve word is not a valid closed path on the decomposition
  NonGeodesic,    // holonomy is elliptic or parabolic
  Convergence,    // optimizer did not reach the stationarity tolerance
  Format,         // malformed input document
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::NotHyperbolic: return "not-hyperbolic";
    case ErrorKind::NonRealizable: return "non-realizable";
    case ErrorKind::Marginal: return "marginal";
    case ErrorKind::Inadmissible: return "inadmissible";
    case ErrorKind::Topology: return "topology";
    case ErrorKind::Word: return "word";
    case ErrorKind::NonGeodesic: return "non-geodesic";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Format: return "format";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Carries the non-positive Gauss-Bonnet value that caused the rejection.
class InadmissibleError : public Error {
 public:
  InadmissibleError(double value, const std::string& what)
      : Error(ErrorKind::Inadmissible, what), value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(double residual, const std::string& what)
      : Error(ErrorKind::Convergence, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class TopologyError : public Error {
 public:
  explicit TopologyError(std::vector<std::string> issues)
      : Error(ErrorKind::Topology, join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> issues_;
};

/// Malformed input; `pointer` is a JSON pointer to the offending value.
class FormatError : public Error {
 public:
  FormatError(std::string pointer, const std::string& what)
      : Error(ErrorKind::Format, (pointer.empty() ? std::string("/") : pointer) + ": " + what),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace conesurf
