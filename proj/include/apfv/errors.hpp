#ifndef APFV_ERRORS_HPP
#define APFV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace apfv {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// solve_constrained / generalized inverse
struct SingularSystem : SolverError {
    using SolverError::SolverError;
};
struct IncompatibleRHS : SolverError {
    using SolverError::SolverError;
};

// model / domain
struct ModelInvalid : SolverError {
    using SolverError::SolverError;
};
struct OutOfDomain : SolverError {
    using SolverError::SolverError;
};
struct NonPositive : SolverError {
    using SolverError::SolverError;
};
struct EntropyUnavailable : SolverError {
    using SolverError::SolverError;
};
struct InadmissiblePerturbation : SolverError {
    using SolverError::SolverError;
};
struct NotLinearRegime : SolverError {
    using SolverError::SolverError;
};
struct ConstraintViolated : SolverError {
    using SolverError::SolverError;
};

// schemes
struct CFLViolation : SolverError {
    using SolverError::SolverError;
};
struct InadmissibleResult : SolverError {
    using SolverError::SolverError;
};
struct DegenerateState : SolverError {
    using SolverError::SolverError;
};
struct SingularAlpha : SolverError {
    using SolverError::SolverError;
};
struct SingularM : SolverError {
    using SolverError::SolverError;
};
struct SingularT : SolverError {
    using SolverError::SolverError;
};
struct SingularSigma : SolverError {
    using SolverError::SolverError;
};
struct StabilityViolation : SolverError {
    using SolverError::SolverError;
};

// harness
struct ConfigError : SolverError {
    using SolverError::SolverError;
};
struct GridMismatch : SolverError {
    using SolverError::SolverError;
};

} // namespace apfv

#endif
