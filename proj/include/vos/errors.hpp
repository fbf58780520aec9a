#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vos {

// Input violates an operation's mathematical precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A result would be too large to materialize, or an input exceeds the
// enumeration scale an operation supports. Carries the exact size when known,
// either as a plain count or as an exponent h meaning 2^h.
class SizeError : public std::length_error {
 public:
  SizeError(const std::string& what, std::uint64_t count, bool count_is_log2 = false)
      : std::length_error(what), count_(count), count_is_log2_(count_is_log2) {}

  std::uint64_t count() const noexcept { return count_; }
  bool count_is_log2() const noexcept { return count_is_log2_; }

 private:
  std::uint64_t count_;
  bool count_is_log2_;
};

}  // namespace vos
