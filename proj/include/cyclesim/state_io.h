#ifndef CYCLESIM_STATE_IO_H
#define CYCLESIM_STATE_IO_H

#include <nlohmann/json.hpp>

#include "cyclesim/builder.h"
#include "cyclesim/qstate.h"

namespace cyclesim {

using Json = nlohmann::ordered_json;

/// {"n", "level", "ancilla_width", "terms": [{"path", "ancilla", "aux"?, "c"}], "norm_sq"}
/// Bit strings put position 1 leftmost; terms follow the state's label order.
Json state_to_json(const SparseState &s);
SparseState state_from_json(const Json &j);

/// [{"m", "p", "expected_repetitions", "terms_before", "terms_after"}, ...]
Json ledger_to_json(const ProbabilityLedger &ledger);

}  // namespace cyclesim

#endif
