#pragma once

#include <stdexcept>
#include <string>

namespace geomforge {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define GEOMFORGE_DEFINE_ERROR(NAME)                                   \
    struct NAME : Error {                                              \
        explicit NAME(const std::string& what) : Error(#NAME ": " + what) {} \
    }

GEOMFORGE_DEFINE_ERROR(UnsupportedOrder);
GEOMFORGE_DEFINE_ERROR(DimensionMismatch);
GEOMFORGE_DEFINE_ERROR(UnsupportedClassification);
GEOMFORGE_DEFINE_ERROR(InvalidParameter);
GEOMFORGE_DEFINE_ERROR(DistanceNotTwo);
GEOMFORGE_DEFINE_ERROR(DiameterExceedsTwo);
GEOMFORGE_DEFINE_ERROR(BadPartition);
GEOMFORGE_DEFINE_ERROR(CapExceeded);
GEOMFORGE_DEFINE_ERROR(NotAutomorphisms);
GEOMFORGE_DEFINE_ERROR(NotGeneralizedPolygon);
GEOMFORGE_DEFINE_ERROR(Infeasible);
GEOMFORGE_DEFINE_ERROR(ConstantsMismatch);
GEOMFORGE_DEFINE_ERROR(PreconditionViolated);
GEOMFORGE_DEFINE_ERROR(NotFound);
GEOMFORGE_DEFINE_ERROR(DisconnectedResult);
GEOMFORGE_DEFINE_ERROR(BoundExceeded);
GEOMFORGE_DEFINE_ERROR(UnknownKind);
GEOMFORGE_DEFINE_ERROR(UnknownClaim);
GEOMFORGE_DEFINE_ERROR(IoError);

#undef GEOMFORGE_DEFINE_ERROR

} // namespace geomforge
