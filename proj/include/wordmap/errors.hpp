#pragma once

#include <stdexcept>
#include <string>

namespace wordmap {

/// Base class for every error raised by the library.  The `code()` string is
/// stable and is what the CLI prints in structured output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct NotPrime : Error {
  explicit NotPrime(const std::string& w) : Error("not_prime", w) {}
};
struct NotPrimePower : Error {
  explicit NotPrimePower(const std::string& w) : Error("not_prime_power", w) {}
};
struct SizeLimitExceeded : Error {
  explicit SizeLimitExceeded(const std::string& w) : Error("size_limit_exceeded", w) {}
};
struct ContextMismatch : Error {
  ContextMismatch() : Error("context_mismatch", "field elements from different contexts") {}
};
struct ZeroElement : Error {
  explicit ZeroElement(const std::string& w) : Error("zero_element", w) {}
};
struct NotInGroup : Error {
  explicit NotInGroup(const std::string& w) : Error("not_in_group", w) {}
};
struct SymbolicSizeExceeded : Error {
  explicit SymbolicSizeExceeded(const std::string& w) : Error("symbolic_size_exceeded", w) {}
};
struct NonPositiveWord : Error {
  explicit NonPositiveWord(const std::string& w) : Error("non_positive_word", w) {}
};
struct InvalidTarget : Error {
  explicit InvalidTarget(const std::string& w) : Error("invalid_target", w) {}
};
struct EvenQ : Error {
  explicit EvenQ(const std::string& w) : Error("even_q", w) {}
};
struct Degenerate : Error {
  explicit Degenerate(const std::string& w) : Error("degenerate", w) {}
};
struct OrderNotRealized : Error {
  explicit OrderNotRealized(const std::string& w) : Error("order_not_realized", w) {}
};
struct BadOrders : Error {
  explicit BadOrders(const std::string& w) : Error("bad_orders", w) {}
};
struct DifferentClasses : Error {
  explicit DifferentClasses(const std::string& w) : Error("different_classes", w) {}
};
struct NotInImage : Error {
  explicit NotInImage(const std::string& reason) : Error("not_in_image", reason) {}
};

}  // namespace wordmap
