#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tamlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TAMLAB_DEFINE_ERROR(Name)       \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

TAMLAB_DEFINE_ERROR(OccupiedPosition);
TAMLAB_DEFINE_ERROR(UnknownTileType);
TAMLAB_DEFINE_ERROR(InvalidSystem);
TAMLAB_DEFINE_ERROR(IllegalAttachment);
TAMLAB_DEFINE_ERROR(SeedOutsideWindow);
TAMLAB_DEFINE_ERROR(BudgetExceeded);
TAMLAB_DEFINE_ERROR(WrongTemperature);
TAMLAB_DEFINE_ERROR(InvalidRepetition);
TAMLAB_DEFINE_ERROR(DegenerateRange);
TAMLAB_DEFINE_ERROR(ProbeTooNarrow);
TAMLAB_DEFINE_ERROR(SearchSpaceExceeded);
TAMLAB_DEFINE_ERROR(WindowNotNested);
TAMLAB_DEFINE_ERROR(NegativeWindow);
TAMLAB_DEFINE_ERROR(TrivialFractal);

#undef TAMLAB_DEFINE_ERROR

/// Malformed input text. line is 1-based; 0 when no single line is to blame.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tamlab
