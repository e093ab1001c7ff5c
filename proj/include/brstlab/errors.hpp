#pragma once

#include <stdexcept>
#include <string>

namespace brstlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define BRSTLAB_ERROR(Name)                 \
    struct Name : Error {                   \
        using Error::Error;                 \
    }

BRSTLAB_ERROR(ImageNotInKernel);
BRSTLAB_ERROR(UnknownGenerator);
BRSTLAB_ERROR(InvalidSpec);
BRSTLAB_ERROR(MissingAntifield);
BRSTLAB_ERROR(CMEViolated);
BRSTLAB_ERROR(NotAFermion);
BRSTLAB_ERROR(InhomogeneousDifferential);
BRSTLAB_ERROR(MissingBlock);
BRSTLAB_ERROR(NotARepresentation);
BRSTLAB_ERROR(ConditionsViolated);
BRSTLAB_ERROR(SemanticError);
BRSTLAB_ERROR(UsageError);

#undef BRSTLAB_ERROR

// Parse failure with a 1-based source position and the tokens that would have been accepted.
struct SyntaxError : Error {
    SyntaxError(std::size_t line, std::size_t column, std::string found, std::string expected)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": found " +
                found + ", expected " + expected),
          line(line), column(column), expected(std::move(expected)) {}
    std::size_t line;
    std::size_t column;
    std::string expected;
};

}  // namespace brstlab
