#pragma once

#include <stdexcept>
#include <string>

namespace flexshare {

/// Offered load meets or exceeds the service capability; the queue diverges.
class UnstableQueueError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input (scenario file, catalog entry, argument) failed validation.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solver failed to converge. Distinct from a certified infeasibility.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A required VNF has no admissible VM at graph-building time.
class InsufficientResourcesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive search would exceed its configured combination cap.
class EnumerationLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace flexshare
