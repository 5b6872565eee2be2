// SPDX-License-Identifier: Apache-2.0
#include "adascale/trace_io.hpp"

#include <array>
#include <charconv>
#include <json.hpp>

namespace adascale {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string trace_to_csv(std::span<const TraceRecord> trace) {
  std::string out = "iter,gap,alpha,primal_obj,dual_obj,r_primal,r_dual,r_comp,millis\n";
  for (const auto& r : trace) {
    out += std::to_string(r.iter);
    for (double v : {r.gap, r.alpha, r.primal_obj, r.dual_obj, r.r_primal, r.r_dual, r.r_comp,
                     r.millis}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string trace_to_json(std::span<const TraceRecord> trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : trace) {
    arr.push_back({{"iter", r.iter},
                   {"gap", r.gap},
                   {"alpha", r.alpha},
                   {"primal_obj", r.primal_obj},
                   {"dual_obj", r.dual_obj},
                   {"r_primal", r.r_primal},
                   {"r_dual", r.r_dual},
                   {"r_comp", r.r_comp},
                   {"millis", r.millis},
                   {"fallback", r.fallback}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace adascale
