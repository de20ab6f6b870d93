#pragma once
#include <stdexcept>
#include <string>

namespace cgmv {

// exit code 2: invalid input or config; exit code 3: numerical failure in a module
struct Error : std::runtime_error {
  int exit_code;
  Error(const std::string& what, int code) : std::runtime_error(what), exit_code(code) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(w, 2) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& w) : Error(w, 3) {}
};

#define CGMV_DEF_ERR(Name, Base)                                        \
  struct Name : Base {                                                  \
    explicit Name(const std::string& w) : Base(std::string(#Name ": ") + w) {} \
  }

CGMV_DEF_ERR(NotUnitary, ConfigError);
CGMV_DEF_ERR(ZeroDiagonal, ConfigError);
CGMV_DEF_ERR(NotPaperClass, ConfigError);
CGMV_DEF_ERR(ModulusOutOfRange, ConfigError);
CGMV_DEF_ERR(BadModulus, ConfigError);
CGMV_DEF_ERR(SizeTooSmall, ConfigError);
CGMV_DEF_ERR(LengthMismatch, ConfigError);
CGMV_DEF_ERR(NotNormalized, ConfigError);
CGMV_DEF_ERR(ZeroArgument, ConfigError);
CGMV_DEF_ERR(InsideDiskViolation, ConfigError);

CGMV_DEF_ERR(AOutOfRange, NumericalError);
CGMV_DEF_ERR(BOutOfRange, NumericalError);
CGMV_DEF_ERR(TruncationTooSmall, NumericalError);
CGMV_DEF_ERR(TruncationOverflow, NumericalError);
CGMV_DEF_ERR(NoConvergence, NumericalError);

#undef CGMV_DEF_ERR

}  // namespace cgmv
