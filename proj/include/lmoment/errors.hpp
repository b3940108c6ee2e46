#ifndef LMOMENT_ERRORS_HPP
#define LMOMENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lmoment {

/// Base class of every computational failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An index or size is outside the configured range (table too small, cap exceeded).
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A requested accuracy cannot be reached within the configured resource caps.
/// `best_achieved` carries the best error bound that was reachable.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, double best_achieved)
      : Error(what), best_achieved_(best_achieved) {}
  double best_achieved() const noexcept { return best_achieved_; }

 private:
  double best_achieved_;
};

/// Division by a leading coefficient indistinguishable from zero.
class SingularityError : public Error {
 public:
  using Error::Error;
};

}  // namespace lmoment

#endif  // LMOMENT_ERRORS_HPP
