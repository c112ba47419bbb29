#pragma once

#include <stdexcept>
#include <string>

namespace modemflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// topology
struct InvalidDimensionError : Error { using Error::Error; };
struct InvalidCapacityError : Error { using Error::Error; };

// pathgen
struct NoPathFoundError : Error { using Error::Error; };
struct UnknownEdgeError : Error { using Error::Error; };

// lp
struct EmptyPathSetError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };

// queuesim
struct RoutingMismatchError : Error { using Error::Error; };
struct InvalidScenarioError : Error { using Error::Error; };

// metrics
struct InsufficientSamplesError : Error { using Error::Error; };
struct UnstableQueueError : Error { using Error::Error; };

// config / file parsing; carries a 1-based line number when known
struct ParseError : Error {
    explicit ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_number(line) {}
    int line_number;
};

}  // namespace modemflow
