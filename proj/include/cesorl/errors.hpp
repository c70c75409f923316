#ifndef CESORL_ERRORS_HPP
#define CESORL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cesorl {

enum class ErrorCode {
  PARSE,
  PRECONDITION,
  TRIVIAL_SPACE,
  DELTA2_REQUIRED,
  NOT_APPLICABLE,
  NO_FINITE_SCALING,
  UNDECIDABLE,
  SAI_TOO_SMALL,
  NO_K1,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::PARSE: return "PARSE";
    case ErrorCode::PRECONDITION: return "PRECONDITION";
    case ErrorCode::TRIVIAL_SPACE: return "TRIVIAL_SPACE";
    case ErrorCode::DELTA2_REQUIRED: return "DELTA2_REQUIRED";
    case ErrorCode::NOT_APPLICABLE: return "NOT_APPLICABLE";
    case ErrorCode::NO_FINITE_SCALING: return "NO_FINITE_SCALING";
    case ErrorCode::UNDECIDABLE: return "UNDECIDABLE";
    case ErrorCode::SAI_TOO_SMALL: return "SAI_TOO_SMALL";
    case ErrorCode::NO_K1: return "NO_K1";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cesorl

#endif
