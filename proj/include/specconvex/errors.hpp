#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace specconvex {

/// Malformed or inconsistent input: dimension mismatch, schema violation,
/// out-of-range parameter.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An instance is too large for the configured cap. Carries the size the
/// instance would have had so callers can still report the formula value.
class CapExceeded : public std::length_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t requested, std::uint64_t cap)
      : std::length_error(what), requested_(requested), cap_(cap) {}

  std::uint64_t requested() const { return requested_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

/// Default bound on the order of any single matrix a builder materializes.
inline constexpr std::uint64_t kDefaultOrderCap = 20000;

/// Default bound on the number of numerical chains a stream will visit.
inline constexpr std::uint64_t kDefaultChainCap = 10'000'000;

}  // namespace specconvex
