#pragma once

#include <stdexcept>
#include <string>

namespace ioconf {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model, regex or suite text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Two operands disagree on their alphabets, or a literal is outside one.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with parameters outside its domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace ioconf
