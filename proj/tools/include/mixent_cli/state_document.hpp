#pragma once

// JSON state files. A document is an object with a "kind" field and a
// kind-specific payload; complex numbers are [re, im] pairs.
//
//   {"kind": "pure",     "amplitudes": [[re, im] x 4]}
//   {"kind": "ensemble", "members": [{"weight": p, "amplitudes": [...]}, ...]}
//   {"kind": "rank2",    "subspace": "parallel" | "antiparallel",
//                        "members": [{"weight", "c1", "c2", "phase"}, ...]}
//   {"kind": "rank4",    "parallel": [members], "antiparallel": [members]}
//   {"kind": "dense",    "matrix": [[[re, im] x 4] x 4]}

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "mixent/states.hpp"

namespace mixent::cli {

using AnyState = std::variant<PureState, Ensemble, StructuredRank2, StructuredRank4, DensityMatrix>;

/// Syntax or schema problem in a state document (CLI exit code 2). Invariant
/// violations of well-formed documents surface as mixent::Error instead.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AnyState parse_state_document(std::string_view text);
AnyState load_state_file(const std::filesystem::path& path);

/// Pretty-printed JSON with shortest round-trip doubles.
std::string serialize(const AnyState& value);

std::string_view kind_name(const AnyState& value);

/// The omega = 0 density matrix described by the document.
DensityMatrix density_of(const AnyState& value);

}  // namespace mixent::cli
