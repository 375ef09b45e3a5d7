#pragma once

#include <stdexcept>
#include <string>

namespace rqframes {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RQFRAMES_DEFINE_ERROR(Name)                              \
  class Name : public error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : error(what) {}      \
  }

RQFRAMES_DEFINE_ERROR(division_by_zero);
RQFRAMES_DEFINE_ERROR(non_finite);
RQFRAMES_DEFINE_ERROR(dimension_mismatch);
RQFRAMES_DEFINE_ERROR(singular_matrix);
RQFRAMES_DEFINE_ERROR(not_self_adjoint);
RQFRAMES_DEFINE_ERROR(no_convergence);
RQFRAMES_DEFINE_ERROR(ambient_mismatch);
RQFRAMES_DEFINE_ERROR(shape_mismatch);
RQFRAMES_DEFINE_ERROR(invalid_family);
RQFRAMES_DEFINE_ERROR(not_a_frame);
RQFRAMES_DEFINE_ERROR(not_a_riesz_family);
RQFRAMES_DEFINE_ERROR(gap_too_large);
RQFRAMES_DEFINE_ERROR(invalid_config);
RQFRAMES_DEFINE_ERROR(generation_exhausted);
RQFRAMES_DEFINE_ERROR(parse_error);

#undef RQFRAMES_DEFINE_ERROR

}  // namespace rqframes
