#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <variant>

namespace scvar {

enum class ErrorCode {
  InvalidArgument,
  HierarchyDisabled,
  GuardLanguageViolation,
  UnknownFlag,
  DomainTooLarge,
  ScopeTooLarge,
  ConflictingStereotype,
  IncomparableUniverses,
  UnknownConstraint,
  UnknownLeaf,
  UnknownState,
  IncompatibleVariants,
  Io,
};

struct Error {
  ErrorCode code = ErrorCode::InvalidArgument;
  std::string message;
};

std::string to_string(ErrorCode code);

/// Value-or-error carrier used by all operations whose failure is an
/// expected, reportable outcome rather than a programming error.
template <typename T, typename E = Error>
class Result {
 public:
  Result(T value) : data_(std::in_place_index<0>, std::move(value)) {}
  Result(E error) : data_(std::in_place_index<1>, std::move(error)) {}

  bool ok() const { return data_.index() == 0; }
  explicit operator bool() const { return ok(); }

  T& value() {
    assert(ok());
    return std::get<0>(data_);
  }
  const T& value() const {
    assert(ok());
    return std::get<0>(data_);
  }
  const E& error() const {
    assert(!ok());
    return std::get<1>(data_);
  }

 private:
  std::variant<T, E> data_;
};

}  // namespace scvar
