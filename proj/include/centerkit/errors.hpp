#pragma once

#include <stdexcept>
#include <string>

namespace centerkit {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeBoundExceeded : public Error { public: using Error::Error; };
class NewtonDiverged : public Error { public: using Error::Error; };
class NotNormalizable : public Error { public: using Error::Error; };
/// Raised when b30 == 1, where the quotient reduction divides by zero.
class SingularReduction : public Error { public: using Error::Error; };
class NotCenterType : public Error { public: using Error::Error; };
class ShiftNotRational : public Error { public: using Error::Error; };
class StepUnderflow : public Error { public: using Error::Error; };
class NoReturn : public Error { public: using Error::Error; };
class NotHamiltonian : public Error { public: using Error::Error; };
class DegenerateLinear : public Error { public: using Error::Error; };
class PreconditionViolation : public Error { public: using Error::Error; };

}  // namespace centerkit
