#ifndef BSZ_ERRORS_HPP
#define BSZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bsz {

// Base of every error raised by the library. `kind()` is a stable
// machine-readable tag that the CLI copies into its error objects.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

struct ContextMismatch : Error {
  explicit ContextMismatch(const std::string& what) : Error("context_mismatch", what) {}
};

struct UnknownVariable : Error {
  explicit UnknownVariable(const std::string& name)
      : Error("unknown_variable", "unknown variable '" + name + "'") {}
};

struct NotDivisible : Error {
  explicit NotDivisible(const std::string& what) : Error("not_divisible", what) {}
};

struct IrrationalRootResidue : Error {
  explicit IrrationalRootResidue(const std::string& what)
      : Error("irrational_root_residue", what) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse_error", what) {}
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what) : Error("budget_exceeded", what) {}
};

}  // namespace bsz

#endif  // BSZ_ERRORS_HPP
