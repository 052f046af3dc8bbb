#pragma once

#include <stdexcept>
#include <string>

namespace markov_atlas {

/// Base class for every domain error raised by the library. The CLI maps
/// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define MARKOV_ATLAS_DEFINE_ERROR(Name)                              \
  class Name : public Error {                                        \
   public:                                                           \
    using Error::Error;                                              \
    const char* kind() const noexcept override { return #Name; }     \
  }

MARKOV_ATLAS_DEFINE_ERROR(ParseError);
MARKOV_ATLAS_DEFINE_ERROR(GroundSetMismatch);
MARKOV_ATLAS_DEFINE_ERROR(NotSeriesParallel);
MARKOV_ATLAS_DEFINE_ERROR(NoSuchPoles);
MARKOV_ATLAS_DEFINE_ERROR(NotK4MinorFree);
MARKOV_ATLAS_DEFINE_ERROR(PreconditionViolated);
MARKOV_ATLAS_DEFINE_ERROR(ResourceLimitExceeded);
MARKOV_ATLAS_DEFINE_ERROR(InvalidTriangulation);
MARKOV_ATLAS_DEFINE_ERROR(NotColorable);
MARKOV_ATLAS_DEFINE_ERROR(NotInKernel);
MARKOV_ATLAS_DEFINE_ERROR(InternalError);

#undef MARKOV_ATLAS_DEFINE_ERROR

}  // namespace markov_atlas
