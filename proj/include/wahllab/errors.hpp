#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wahllab {

// Failure categories, doubling as CLI process exit codes.  The library throws
// typed exceptions; the driver maps them to a status without string matching.
enum class ErrorKind {
  Config = 2,    // bad flags, malformed input, out-of-range parameters
  Curve = 3,     // singular point, point off the curve, unusable model data
  Order = 4,     // truncation order too small for the requested computation
  Internal = 5,  // invariant violated mid-computation: always a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define WAHLLAB_ERROR_TYPE(Name, Kind)                               \
  struct Name : Error {                                              \
    explicit Name(std::string m) : Error(ErrorKind::Kind, std::move(m)) {} \
  }

// Curve / point problems (exit 3).
WAHLLAB_ERROR_TYPE(SingularPoint, Curve);
WAHLLAB_ERROR_TYPE(NotOnCurve, Curve);
WAHLLAB_ERROR_TYPE(BranchPointNotSupported, Curve);
WAHLLAB_ERROR_TYPE(GenusTooSmall, Curve);
WAHLLAB_ERROR_TYPE(DegenerateModel, Curve);      // dependent local frames etc.
WAHLLAB_ERROR_TYPE(ZeroConstantTerm, Curve);     // reciprocal of a jet vanishing at the point
WAHLLAB_ERROR_TYPE(UncertifiedPoint, Curve);     // genericity certificate required but absent
WAHLLAB_ERROR_TYPE(HyperellipticExcluded, Curve);  // statement assumes non-hyperelliptic

// Truncation-order problems (exit 4).
WAHLLAB_ERROR_TYPE(InsufficientOrder, Order);    // model order below what the op needs
WAHLLAB_ERROR_TYPE(OrderExhausted, Order);       // derivative count exceeds available jet order

// Caller errors (exit 2).
WAHLLAB_ERROR_TYPE(ConfigError, Config);
WAHLLAB_ERROR_TYPE(ParseError, Config);
WAHLLAB_ERROR_TYPE(OutOfRange, Config);
WAHLLAB_ERROR_TYPE(NotInKernel, Config);         // quadric not in the kernel the op assumes
WAHLLAB_ERROR_TYPE(LevelUndetermined, Config);   // zero quadric has no level
WAHLLAB_ERROR_TYPE(IncompleteFiltration, Config);
WAHLLAB_ERROR_TYPE(DenominatorDivisiblePrime, Config);  // all modular retries exhausted

// Bugs (exit 5).
WAHLLAB_ERROR_TYPE(InternalInconsistency, Internal);

#undef WAHLLAB_ERROR_TYPE

inline void internal_check(bool ok, const char* what) {
  if (!ok) throw InternalInconsistency(what);
}

}  // namespace wahllab
