// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>

#include "adascale/pdas.hpp"

namespace adascale {

/// Header: iter,gap,alpha,primal_obj,dual_obj,r_primal,r_dual,r_comp,millis
std::string trace_to_csv(std::span<const TraceRecord> trace);

/// JSON array with one object per record, including the fallback flag.
std::string trace_to_json(std::span<const TraceRecord> trace);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace adascale
