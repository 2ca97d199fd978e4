#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbifrob {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ORBIFROB_DECLARE_ERROR(Name)                   \
    class Name : public Error {                        \
    public:                                            \
        explicit Name(const std::string& what)         \
            : Error(std::string(#Name ": ") + what) {} \
    }

ORBIFROB_DECLARE_ERROR(SingularMatrix);
ORBIFROB_DECLARE_ERROR(DegenerateForm);
ORBIFROB_DECLARE_ERROR(ShapeMismatch);
ORBIFROB_DECLARE_ERROR(ParentMismatch);
ORBIFROB_DECLARE_ERROR(DivisionByZero);
ORBIFROB_DECLARE_ERROR(NotIsolated);
ORBIFROB_DECLARE_ERROR(SizeMismatch);
ORBIFROB_DECLARE_ERROR(NotAJointOrbit);
ORBIFROB_DECLARE_ERROR(InvalidArgument);
ORBIFROB_DECLARE_ERROR(GroupMismatch);
ORBIFROB_DECLARE_ERROR(InvalidCocycle);
ORBIFROB_DECLARE_ERROR(BadUnitScaling);
ORBIFROB_DECLARE_ERROR(NotNormalizable);
ORBIFROB_DECLARE_ERROR(NotCyclic);
ORBIFROB_DECLARE_ERROR(BaseNotEligible);
ORBIFROB_DECLARE_ERROR(FeasibilityRefused);

#undef ORBIFROB_DECLARE_ERROR

/// Malformed input text. Carries the 1-based line (0 when unknown) and the
/// offending field path.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::string field = {})
        : Error(format(what, line, field)), line_(line), field_(std::move(field)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& what, std::size_t line, const std::string& field) {
        std::string out = "ParseError";
        if (line != 0) out += " at line " + std::to_string(line);
        if (!field.empty()) out += " (field " + field + ")";
        return out + ": " + what;
    }

    std::size_t line_;
    std::string field_;
};

}  // namespace orbifrob
