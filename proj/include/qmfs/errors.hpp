#pragma once

#include <stdexcept>
#include <string>

namespace qmfs {

// Base for all library errors. `name()` is the stable identifier the CLI
// prints on the diagnostic stream.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define QMFS_ERROR_TYPE(NAME)                                            \
  class NAME : public Error {                                            \
   public:                                                               \
    explicit NAME(const std::string& what) : Error(#NAME, what) {}       \
  }

QMFS_ERROR_TYPE(ZeroDivisorError);
QMFS_ERROR_TYPE(SingularPointError);
QMFS_ERROR_TYPE(WaveNumberError);
QMFS_ERROR_TYPE(UnsupportedSurfaceError);
QMFS_ERROR_TYPE(ScaleError);
QMFS_ERROR_TYPE(ChiralSingularityError);
QMFS_ERROR_TYPE(BranchError);
QMFS_ERROR_TYPE(NonVectorialError);
QMFS_ERROR_TYPE(TangentialityError);
QMFS_ERROR_TYPE(NodeSourceCollisionError);
QMFS_ERROR_TYPE(SingularSystemError);
QMFS_ERROR_TYPE(QuadratureError);
QMFS_ERROR_TYPE(ConfigError);

#undef QMFS_ERROR_TYPE

}  // namespace qmfs
