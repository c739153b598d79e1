#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace segstd {

// Root of the library's error hierarchy. Everything thrown deliberately by
// segstd derives from this; std::invalid_argument is reserved for violated
// call preconditions (bad settings, negative masses, malformed scenarios).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- table / statistic domain errors ----------------------------------------

// Two or more cells of a 2x2 table are zero, so the odds ratio is 0/0.
struct DegenerateTable : Error {
    using Error::Error;
};

// A sex column has zero total mass; shares within that sex are undefined.
struct EmptySexGroup : Error {
    using Error::Error;
};

// A marginal (row or column total) needed by the statistic is zero.
struct DegenerateMarginal : Error {
    using Error::Error;
};

// -- standardization errors --------------------------------------------------

// A zero row/column of the table faces a positive target share, or a
// positive row/column faces a zero target: no scaling can bridge that.
struct InfeasibleTarget : Error {
    using Error::Error;
};

// NotConverged lives in ipf.hpp; it carries the partial fit.

// -- decomposition errors ----------------------------------------------------

// The log-form decomposition needs every cell strictly positive.
struct NonPositiveCell : Error {
    using Error::Error;
};

// The log-form decomposition needs both dissimilarity indices positive.
struct NonPositiveId : Error {
    using Error::Error;
};

// -- pipeline errors ----------------------------------------------------------

// A CSV line failed to parse; `line` is 1-based and counts the header.
struct MalformedRecord : Error {
    std::size_t line;
    MalformedRecord(std::size_t line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Every record of a population was removed by the sample filters.
struct EmptyAfterFilters : Error {
    using Error::Error;
};

// Two covariate rows share the same (country, year) key.
struct DuplicateCovariate : Error {
    using Error::Error;
};

// The regression design matrix is numerically singular.
struct RankDeficient : Error {
    using Error::Error;
};

// Fewer observations than the regression needs.
struct TooFewPoints : Error {
    using Error::Error;
};

// A simulation spec asks for an impossible population.
struct InfeasibleSpec : Error {
    using Error::Error;
};

}  // namespace segstd
