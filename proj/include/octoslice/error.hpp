#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace octoslice {

enum class ErrorKind {
  DivisionByZero,
  NotImaginary,
  NotSkew,
  NotAComplexStructure,
  DomainError,
  RealPoint,
  NotAZero,
  ZeroFunction,
  EmptyBox,
  DegeneratePoint,
  ExceptionalDirection,
  NoSquareRoot,
  Antipode,
  NotOnSphere,
  WingPresent,
  NonConvergence,
  DegenerateSphereUnsupported,
  NotLowerable,
  SyntaxError,
  UnknownToken,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Character range [begin, end) into the offending input text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::optional<Span> span = std::nullopt)
      : std::runtime_error(message), kind_(kind), span_(span) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<Span>& span() const noexcept { return span_; }

 private:
  ErrorKind kind_;
  std::optional<Span> span_;
};

}  // namespace octoslice
