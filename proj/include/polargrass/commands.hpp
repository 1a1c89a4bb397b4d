#pragma once

// Verb dispatch shared by the CLI and the report suite.
//
// Every verb takes a JSON object and returns a report
//   {"verb", "options", "inputs", "outputs", "residuals", "pass"}
// with "error": {"name", "message"} added when a domain error stops the
// computation. ParseError propagates to the caller.

#include <cstdint>
#include <string>
#include <vector>

#include "polargrass/io.hpp"

namespace polargrass {

struct RunOptions {
  Tolerances tol;
  std::uint64_t seed = 0;
  bool seed_given = false;  // --seed or POLARGRASS_SEED overrides the config seed
  Index cutoff = 32;
  Index quadrature = 0;     // 0 selects 16 × cutoff

  Index effective_quadrature() const { return quadrature > 0 ? quadrature : 16 * cutoff; }
  json to_json() const;
};

const std::vector<std::string>& verb_names();
bool is_verb(const std::string& verb);

/// Never throws polargrass::Error; throws ParseError for malformed input.
json run_verb(const std::string& verb, const json& input, const RunOptions& opts);

/// Combines several input documents. A document carrying a form or complex
/// structure "kind" tag fills the g, omega or J slot; other objects are
/// merged key by key. Duplicate keys are a ParseError.
json merge_inputs(const std::vector<json>& docs);

}  // namespace polargrass
