#ifndef ISINGTREE_ERRORS_HPP
#define ISINGTREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace isingtree {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tree construction and queries.
struct SelfLoop : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct CycleDetected : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct MissingEdgeWeight : Error { using Error::Error; };
struct NotAnEdge : Error { using Error::Error; };
struct RootHasNoParent : Error { using Error::Error; };

// Model parameters and probability queries.
struct DomainError : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };

// Transforms and probability vectors.
struct LengthNotPowerOfTwo : Error { using Error::Error; };
struct ToleranceExceeded : Error { using Error::Error; };
struct TruncationTooSevere : Error { using Error::Error; };

// Parameterization conversions.
struct NotAnIsingModel : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };

// Poisson approximation.
struct NotCommonQ : Error { using Error::Error; };
struct AlphaOutOfRange : Error { using Error::Error; };

// Sampling.
struct NotSymmetricModel : Error { using Error::Error; };

// Model files.
struct ParseError : Error { using Error::Error; };

}  // namespace isingtree

#endif  // ISINGTREE_ERRORS_HPP
