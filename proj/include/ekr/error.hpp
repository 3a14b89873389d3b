#pragma once

#include <stdexcept>
#include <string>

namespace ekr {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A count or search space exceeds the 64-bit range or a configured cap.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

/// The tau machinery needs k <= n; callers should transpose first.
class UseTranspose : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ekr
