// JSON (de)serialization of specs and auxiliary inputs. Schema errors raise
// ParseError; semantic violations raise InvariantViolation with a field path.
#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "parnode/parabolic.hpp"
#include "parnode/semistability.hpp"
#include "parnode/verlinde.hpp"

namespace parnode {

using Json = nlohmann::json;

// Parse + validate a spec document. With enforce_balance the balance identity
// becomes a load-time invariant (the default for every consumer except the
// verdict-valued `check` path).
DegenerationSpec parse_spec(const Json& j, bool enforce_balance);
DegenerationSpec load_spec(const std::string& path, bool enforce_balance = true);

// Inverse of parse_spec on valid specs (field-for-field identity).
Json serialize_spec(const DegenerationSpec& spec);

// Input document of the certify subcommand: the spec plus ambient numerics
// and a finite list of subobject profiles; generalized mode when the ambient
// carries a node-quotient dimension.
struct CertifyInput {
    DegenerationSpec spec;
    SheafNumerics ambient;
    std::optional<long long> ambient_dim_q;
    std::vector<SubobjectProfile> profiles;
};
CertifyInput load_certify_input(const std::string& path);

// Input document of the dim subcommand.
DimQuery load_dim_query(const std::string& path);

// Input document of the local-model subcommand: {"n": ..., "q": ...}.
struct LocalModelRequest {
    long long n = 1;
    long long q = 2;
};
LocalModelRequest load_local_model_request(const std::string& path);

// Reads a whole file; ParseError when unreadable or not valid JSON.
Json load_json_file(const std::string& path);

}  // namespace parnode
