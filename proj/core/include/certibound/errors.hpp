#ifndef CERTIBOUND_ERRORS_HPP
#define CERTIBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace certibound {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZeroInterval : Error {
  explicit DivisionByZeroInterval(const std::string& what = "interval division by an interval containing 0")
      : Error(what) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(what) {}
};

struct MissingOrder : Error {
  explicit MissingOrder(const std::string& what) : Error(what) {}
};

struct SingularDomain : Error {
  explicit SingularDomain(const std::string& what) : Error(what) {}
};

struct UnsupportedKernel : Error {
  explicit UnsupportedKernel(const std::string& what) : Error(what) {}
};

struct DegenerateDen : Error {
  explicit DegenerateDen(const std::string& what) : Error(what) {}
};

struct ExponentOutOfRange : Error {
  explicit ExponentOutOfRange(const std::string& what) : Error(what) {}
};

struct BranchDomainError : Error {
  explicit BranchDomainError(const std::string& what) : Error(what) {}
};

struct CaseMismatch : Error {
  explicit CaseMismatch(const std::string& what) : Error(what) {}
};

struct NonEquispaced : Error {
  explicit NonEquispaced(const std::string& what) : Error(what) {}
};

struct NodePositionMismatch : Error {
  explicit NodePositionMismatch(const std::string& what) : Error(what) {}
};

struct InsufficientVanishing : Error {
  explicit InsufficientVanishing(const std::string& what) : Error(what) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct OrderTooHigh : Error {
  explicit OrderTooHigh(const std::string& what) : Error(what) {}
};

struct SharedCoordinateMismatch : Error {
  explicit SharedCoordinateMismatch(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

struct CheckFailure : Error {
  explicit CheckFailure(const std::string& what) : Error(what) {}
};

}  // namespace certibound

#endif
