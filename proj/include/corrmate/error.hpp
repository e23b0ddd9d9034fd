#pragma once

#include <stdexcept>
#include <string>

namespace corrmate {

// Every failure raised by the library carries a stable name that the CLI
// prints on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define CORRMATE_ERROR(Name)                                               \
    struct Name : Error {                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}     \
    }

CORRMATE_ERROR(DegenerateConstraint);
CORRMATE_ERROR(NoParabolicSolution);
CORRMATE_ERROR(PoleOnCircle);
CORRMATE_ERROR(InvalidMap);
CORRMATE_ERROR(NotACovering);
CORRMATE_ERROR(NotMarkovWithinBudget);
CORRMATE_ERROR(TooFewBreakpoints);
CORRMATE_ERROR(NotInFamilyF);
CORRMATE_ERROR(NotHyperbolic);
CORRMATE_ERROR(SolveFailure);
CORRMATE_ERROR(NotExpansive);
CORRMATE_ERROR(DegreeMismatch);
CORRMATE_ERROR(RootSolverStall);
CORRMATE_ERROR(DivisionResidue);
CORRMATE_ERROR(InterpolationIllConditioned);
CORRMATE_ERROR(NoCommonRoot);
CORRMATE_ERROR(AmbiguousComponents);
CORRMATE_ERROR(UnivalenceFailure);
CORRMATE_ERROR(ConfigError);

#undef CORRMATE_ERROR

}  // namespace corrmate
