#pragma once

#include <stdexcept>
#include <string>

namespace posalg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define POSALG_DEFINE_ERROR(Name)        \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

POSALG_DEFINE_ERROR(CycleError);
POSALG_DEFINE_ERROR(UnknownLabel);
POSALG_DEFINE_ERROR(DuplicateLabel);
POSALG_DEFINE_ERROR(PosetTooLarge);
POSALG_DEFINE_ERROR(PosetMismatch);
POSALG_DEFINE_ERROR(NotInCone);
POSALG_DEFINE_ERROR(NotLowerSet);
POSALG_DEFINE_ERROR(EmptyPoset);
POSALG_DEFINE_ERROR(NotAnIdeal);
POSALG_DEFINE_ERROR(NotUpperSet);
POSALG_DEFINE_ERROR(NTooSmall);
POSALG_DEFINE_ERROR(IndexMismatch);
POSALG_DEFINE_ERROR(NotPosMorphism);
POSALG_DEFINE_ERROR(NotInjective);
POSALG_DEFINE_ERROR(NotGraphMorphism);
POSALG_DEFINE_ERROR(NotInSubalgebra);
POSALG_DEFINE_ERROR(SearchBudgetExceeded);
POSALG_DEFINE_ERROR(SchemaError);

#undef POSALG_DEFINE_ERROR

}  // namespace posalg
