#pragma once

#include <stdexcept>
#include <string>

namespace sols {

/// Base class for all domain errors raised by the library.
///
/// Every error carries a stable machine-readable code alongside the human
/// message; the CLI maps input/domain errors to exit code 2 and failed
/// assertions to exit code 1.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), m_code(std::move(code)) {}

  const std::string& code() const { return m_code; }

private:
  std::string m_code;
};

#define SOLS_DEFINE_ERROR(NAME)                                        \
  class NAME : public Error {                                          \
  public:                                                              \
    explicit NAME(const std::string& what) : Error(#NAME, what) {}     \
  }

SOLS_DEFINE_ERROR(ParseError);
SOLS_DEFINE_ERROR(InvalidGram);
SOLS_DEFINE_ERROR(SplittingMismatch);
SOLS_DEFINE_ERROR(BadSplitting);
SOLS_DEFINE_ERROR(NotSolvable);
SOLS_DEFINE_ERROR(NotNilpotent);
SOLS_DEFINE_ERROR(ZeroBracket);
SOLS_DEFINE_ERROR(NotNilsoliton);
SOLS_DEFINE_ERROR(NotSymmetric);
SOLS_DEFINE_ERROR(NotCommuting);
SOLS_DEFINE_ERROR(NotDerivation);
SOLS_DEFINE_ERROR(DegenerateMetric);
SOLS_DEFINE_ERROR(PreconditionFailed);
SOLS_DEFINE_ERROR(GateFailed);
SOLS_DEFINE_ERROR(MaxIterExceeded);
SOLS_DEFINE_ERROR(ParamOutOfRange);
SOLS_DEFINE_ERROR(UnsupportedEntry);

#undef SOLS_DEFINE_ERROR

}  // namespace sols
