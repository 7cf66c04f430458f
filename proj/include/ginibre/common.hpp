#pragma once

#include <stdexcept>
#include <string>

namespace ginibre {

enum class EnsembleKind { GinOE, GinUE, GinSE };

inline int beta_of(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::GinOE: return 1;
    case EnsembleKind::GinUE: return 2;
    case EnsembleKind::GinSE: return 4;
  }
  return 0;
}

inline const char* name_of(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::GinOE: return "ginoe";
    case EnsembleKind::GinUE: return "ginue";
    case EnsembleKind::GinSE: return "ginse";
  }
  return "?";
}

EnsembleKind parse_ensemble(const std::string& s);

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// carries the best value reached so callers can still report it
struct ToleranceNotMet : std::runtime_error {
  double value, err_est;
  ToleranceNotMet(const std::string& what, double v, double e)
      : std::runtime_error(what), value(v), err_est(e) {}
};

struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace ginibre

namespace ginibre {

struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InsufficientSamples : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PairingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ginibre
