#pragma once

#include <stdexcept>
#include <string>

namespace qsphere {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

struct Unsupported : std::logic_error {
  using std::logic_error::logic_error;
};

struct NotAPerfectRadicand : std::domain_error {
  using std::domain_error::domain_error;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RewriteBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a constructed object fails one of its defining identities.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotTraceClass : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnpairedRadical : std::logic_error {
  using std::logic_error::logic_error;
};

struct NonIntegerIndex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResidualTranscendental : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace qsphere
