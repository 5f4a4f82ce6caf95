#pragma once

#include <stdexcept>
#include <string>

namespace growthlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct StrategyMismatch : Error {
  using Error::Error;
};

struct TrivialWord : Error {
  using Error::Error;
};

struct Unexplored : Error {
  using Error::Error;
};

// BFS node budget hit; carries the largest radius whose layer completed.
struct BudgetExceeded : Error {
  int completed_radius;
  explicit BudgetExceeded(int radius, const std::string& what)
      : Error(what), completed_radius(radius) {}
};

struct WindowTooSmall : Error {
  using Error::Error;
};

struct NotAdmissible : Error {
  using Error::Error;
};

struct AxiomViolation : Error {
  using Error::Error;
};

struct OrderInconsistent : Error {
  using Error::Error;
};

struct MissedAxis : Error {
  using Error::Error;
};

struct NoTripleFound : Error {
  using Error::Error;
};

struct InjectivityFailed : Error {
  std::string lhs, rhs;
  InjectivityFailed(std::string a, std::string b, const std::string& what)
      : Error(what), lhs(std::move(a)), rhs(std::move(b)) {}
};

struct InsufficientData : Error {
  using Error::Error;
};

struct NoDeepPoint : Error {
  using Error::Error;
};

}  // namespace growthlab
