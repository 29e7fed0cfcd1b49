#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace picturecalc {

  //! Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! Malformed text input; carries the 0-based offset of the offending token.
  class ParseError : public Error {
   public:
    ParseError(std::string const& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)),
          _position(position) {}

    [[nodiscard]] std::size_t position() const noexcept {
      return _position;
    }

   private:
    std::size_t _position;
  };

  //! Operands whose boundary words, signatures or group specs disagree.
  class MismatchError : public Error {
   public:
    using Error::Error;
  };

  //! A diagram (or other structure) whose combinatorial data is inconsistent.
  class InvalidDiagram : public Error {
   public:
    using Error::Error;
  };

}  // namespace picturecalc
