#ifndef CYCLESIM_ERRORS_H
#define CYCLESIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace cyclesim {

/// Edge set that is not a single Hamiltonian cycle over the expected vertices.
class NotACycle : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Post-selection onto an outcome that no term of the state carries.
class ZeroProbability : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Register or term count beyond what the simulator is configured to hold.
class CapacityExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operands whose register widths (vertex count, ancilla width, aux bit) disagree.
class WidthMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed user input (weight files, serialized states).
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace cyclesim

#endif
