#pragma once

#include <stdexcept>
#include <string>

namespace qcval {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QCVAL_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

/// Malformed input or violated precondition.
QCVAL_DEFINE_ERROR(InvalidArgument);
QCVAL_DEFINE_ERROR(UnsupportedShapeDimension);
QCVAL_DEFINE_ERROR(IllConditionedFit);
QCVAL_DEFINE_ERROR(UnsupportedPair);
QCVAL_DEFINE_ERROR(NotConvexUnion);
QCVAL_DEFINE_ERROR(NonPositiveLevel);
QCVAL_DEFINE_ERROR(InadmissibleSpec);
QCVAL_DEFINE_ERROR(NonFinite);
QCVAL_DEFINE_ERROR(UnsupportedRepresentation);
QCVAL_DEFINE_ERROR(UnboundedSupport);
QCVAL_DEFINE_ERROR(PhiVanishesNearZero);
QCVAL_DEFINE_ERROR(IllConditionedSystem);
QCVAL_DEFINE_ERROR(RankDeficientSample);
/// Radial profiles must be discretized before lattice operations.
QCVAL_DEFINE_ERROR(RequiresDiscretization);

#undef QCVAL_DEFINE_ERROR

}  // namespace qcval
