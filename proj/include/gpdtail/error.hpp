#pragma once

#include <stdexcept>
#include <string>

namespace gpdtail {

// Invalid distribution or estimator parameter (sigma <= 0, xi <= 0, k out of range, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the support of a function (x < mu, prob outside [0, 1)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Sample does not satisfy an estimator's data requirements.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The estimating equations have no finite solution for this sample.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gpdtail
