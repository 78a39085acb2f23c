#pragma once

#include <stdexcept>
#include <string>

namespace rtheta {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& msg = "matrix is not positive definite")
        : Error(msg) {}
};

struct DegenerateBasis : Error {
    explicit DegenerateBasis(const std::string& msg = "lattice basis is numerically degenerate")
        : Error(msg) {}
};

struct EllipsoidTooLarge : Error {
    explicit EllipsoidTooLarge(const std::string& msg = "ellipsoid point count exceeds cap")
        : Error(msg) {}
};

struct UnsupportedArgument : Error {
    explicit UnsupportedArgument(const std::string& msg = "unsupported argument")
        : Error(msg) {}
};

struct InvalidRadius : Error {
    explicit InvalidRadius(const std::string& msg = "invalid radius") : Error(msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg = "iteration failed to converge")
        : Error(msg) {}
};

struct SingularTransform : Error {
    explicit SingularTransform(const std::string& msg = "transform is singular")
        : Error(msg) {}
};

struct DerivOrderExceeded : Error {
    explicit DerivOrderExceeded(const std::string& msg = "derivative order exceeds context limit")
        : Error(msg) {}
};

}  // namespace rtheta
