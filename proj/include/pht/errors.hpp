#pragma once

#include <stdexcept>
#include <string>

namespace pht {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PHT_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& what) : Error(what) {}  \
    }

// general
PHT_DEFINE_ERROR(InvalidParameter);

// linalg
PHT_DEFINE_ERROR(NonFinite);
PHT_DEFINE_ERROR(DimensionMismatch);
PHT_DEFINE_ERROR(DefectiveMatrix);
PHT_DEFINE_ERROR(UnpairableEigenvalue);
PHT_DEFINE_ERROR(NoConvergence);

// pseudo
PHT_DEFINE_ERROR(NotHermitian);
PHT_DEFINE_ERROR(MetricAsymmetry);

// models
PHT_DEFINE_ERROR(ExceptionalPoint);
PHT_DEFINE_ERROR(DimensionBudget);
PHT_DEFINE_ERROR(UnsupportedM);

// response
PHT_DEFINE_ERROR(DivergentTransform);
PHT_DEFINE_ERROR(InsufficientSpan);

// phasemap
PHT_DEFINE_ERROR(NoBoundary);

#undef PHT_DEFINE_ERROR

}  // namespace pht
