#pragma once

#include <stdexcept>
#include <string>

namespace epifront {

struct InvalidParam : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NegativeArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FrontOvershoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularResolvent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SubcriticalModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoBracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SandwichViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoContraction : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentMonotonicity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateRegime : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingLstar : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace epifront
