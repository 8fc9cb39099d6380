#pragma once

#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "desco/multicast.hpp"

namespace desco {

/// Parameters that rebuild a code deterministically.
struct CodeSpec {
  std::string kind = "desco";  // desco, ccsco, iasco, expanded
  int b1 = 1;
  int t1 = 2;
  int alpha = 2;
  std::optional<int> b2;     // ccsco; default alpha*b1
  std::optional<int> t2;     // ccsco; default alpha*t1
  std::optional<int> shift;  // iasco; default the smallest certified shift
  int field_bits = 8;
};

struct BuiltCode {
  CodeSpec spec;  // with defaults resolved
  std::unique_ptr<MulticastCode> code;
};

/// Throws ParameterError for bad parameters or an unknown kind and
/// ConstructionError when no certified code exists.
BuiltCode build_code(const CodeSpec& spec);

/// Parameters, contracts, rate and every component's coefficient table.
nlohmann::json describe(const BuiltCode& built);

/// Rebuilds from a descriptor and checks the stored coefficient tables,
/// if any, against the rebuilt code.
BuiltCode code_from_json(const nlohmann::json& j);

}  // namespace desco
